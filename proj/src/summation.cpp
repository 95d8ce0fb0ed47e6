#include "waterman/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waterman/quadrature.hpp"
#include "waterman/util.hpp"

namespace waterman {

FourierData::FourierData(std::vector<std::complex<double>> coeffs)
    : K_(static_cast<int>((coeffs.size() - 1) / 2)), c_(std::move(coeffs)) {
    if (c_.empty() || c_.size() % 2 == 0)
        throw std::domain_error("FourierData: coefficient count must be odd (c_{-K}..c_K)");
}

FourierData FourierData::from_coefficients(std::vector<std::complex<double>> coeffs) {
    return FourierData(std::move(coeffs));
}

FourierData FourierData::from_cosine_sine(const std::vector<double>& a,
                                          const std::vector<double>& b) {
    if (a.empty() || b.size() != a.size())
        throw std::domain_error("FourierData: need a[0..K] and b[0..K]");
    const int K = static_cast<int>(a.size()) - 1;
    std::vector<std::complex<double>> c(2 * K + 1);
    c[K] = std::complex<double>(0.5 * a[0], 0.0);
    for (int j = 1; j <= K; ++j) {
        c[K + j] = std::complex<double>(0.5 * a[j], -0.5 * b[j]);
        c[K - j] = std::conj(c[K + j]);
    }
    return FourierData(std::move(c));
}

namespace {

std::vector<std::complex<double>> trapezoid_coeffs(const Func1& f, int n_max,
                                                   std::size_t samples) {
    // c_k = (1/2pi) int f e^{-ikt} dt ~ (1/M) sum f(t_j) e^{-ik t_j}
    std::vector<std::complex<double>> c(2 * n_max + 1, 0.0);
    std::vector<double> fv(samples);
    for (std::size_t j = 0; j < samples; ++j)
        fv[j] = f(-kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples));
    for (int k = -n_max; k <= n_max; ++k) {
        KahanSum re, im;
        for (std::size_t j = 0; j < samples; ++j) {
            const double ang = -k * (-kPi + 2.0 * kPi * static_cast<double>(j) / samples);
            re += fv[j] * std::cos(ang);
            im += fv[j] * std::sin(ang);
        }
        c[k + n_max] = std::complex<double>(re.value(), im.value()) / static_cast<double>(samples);
    }
    return c;
}

}  // namespace

FourierData FourierData::from_function(const Func1& f, int n_max,
                                       const std::vector<double>& breakpoints,
                                       std::size_t samples) {
    if (n_max < 0) throw std::domain_error("FourierData: n_max >= 0 required");

    if (breakpoints.empty()) {
        auto c = trapezoid_coeffs(f, n_max, samples);
        auto c_half = trapezoid_coeffs(f, n_max, samples / 2);
        double err = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, std::abs(c[i] - c_half[i]));
        FourierData fd(std::move(c));
        fd.coeff_err_ = err;
        return fd;
    }

    // Piecewise-smooth handle: per-piece Gauss panels, oscillation-capped
    // against the highest requested mode.
    std::vector<std::complex<double>> c(2 * n_max + 1, 0.0);
    PanelPlan plan;
    plan.max_width = n_max > 0 ? 6.0 / n_max : kPi / 4.0;
    std::vector<double> cuts = breakpoints;
    cuts.push_back(-kPi);
    cuts.push_back(kPi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (int k = -n_max; k <= n_max; ++k) {
        KahanSum re, im;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            if (!(cuts[p] < cuts[p + 1])) continue;
            auto re_fn = [&f, k](double t) { return f(t) * std::cos(-k * t); };
            auto im_fn = [&f, k](double t) { return f(t) * std::sin(-k * t); };
            re += integrate_panels(re_fn, cuts[p], cuts[p + 1], 1e-11, plan).value;
            im += integrate_panels(im_fn, cuts[p], cuts[p + 1], 1e-11, plan).value;
        }
        c[k + n_max] = std::complex<double>(re.value(), im.value()) / (2.0 * kPi);
    }
    return FourierData(std::move(c));
}

FourierData FourierData::from_atoms(const std::vector<TrigAtom>& atoms, int n_max) {
    std::vector<double> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
    for (const auto& atom : atoms) a[0] += atom_mass(atom) / kPi;
    for (int j = 1; j <= n_max; ++j) {
        KahanSum ca, cb;
        for (const auto& atom : atoms) {
            ca += atom_cosine_moment(atom, j);
            cb += atom_sine_moment(atom, j);
        }
        a[j] = ca.value() / kPi;
        b[j] = cb.value() / kPi;
    }
    return from_cosine_sine(a, b);
}

std::complex<double> FourierData::coeff(int k) const {
    if (std::abs(k) > K_) throw std::domain_error("FourierData::coeff: |k| <= n_max required");
    return c_[k + K_];
}

double FourierData::partial_sum(int k, double x) const {
    if (k < 0 || k > K_) throw std::domain_error("FourierData::partial_sum: 0 <= k <= n_max");
    KahanSum s;
    s += c_[K_].real();
    for (int j = 1; j <= k; ++j) {
        const auto cj = c_[K_ + j];
        s += 2.0 * (cj.real() * std::cos(j * x) - cj.imag() * std::sin(j * x));
    }
    return s.value();
}

FourierData FourierData::zero_padded(int new_n_max) const {
    if (new_n_max < K_) throw std::domain_error("zero_padded: new order below current one");
    std::vector<std::complex<double>> c(2 * new_n_max + 1, 0.0);
    for (int k = -K_; k <= K_; ++k) c[k + new_n_max] = c_[k + K_];
    FourierData out(std::move(c));
    out.coeff_err_ = coeff_err_;
    return out;
}

double FourierData::conjugate_symmetry_defect() const {
    double d = 0.0;
    for (int j = 1; j <= K_; ++j) d = std::max(d, std::abs(c_[K_ - j] - std::conj(c_[K_ + j])));
    return d;
}

double cesaro_mean_series(const std::vector<double>& terms, int n, double alpha) {
    if (n < 0 || terms.size() < static_cast<std::size_t>(n) + 1)
        throw std::domain_error("cesaro_mean_series: terms u_0..u_n required");
    if (!(alpha > -1.0)) throw std::domain_error("cesaro_mean_series: alpha > -1 required");
    const auto A = cesaro_coefficient_table(alpha, static_cast<std::size_t>(n));
    KahanSum s;
    for (int k = 0; k <= n; ++k) s += A[n - k] / A[n] * terms[k];
    return s.value();
}

double cesaro_mean_1d(const FourierData& f, const CesaroTable& table, int n, double x) {
    if (n < 0 || static_cast<std::size_t>(n) > table.n_cap())
        throw std::domain_error("cesaro_mean_1d: n out of table range");
    if (n > f.n_max())
        throw std::domain_error("cesaro_mean_1d: coefficients missing beyond n_max");
    KahanSum s;
    s += f.coeff(0).real();
    for (int j = 1; j <= n; ++j) {
        const auto cj = f.coeff(j);
        const double w = table.cosine_weight(static_cast<std::size_t>(n), static_cast<std::size_t>(j));
        s += w * 2.0 * (cj.real() * std::cos(j * x) - cj.imag() * std::sin(j * x));
    }
    return s.value();
}

double cesaro_mean_1d(const FourierData& f, int n, double alpha, double x) {
    CesaroTable table(alpha, static_cast<std::size_t>(std::max(n, 1)));
    return cesaro_mean_1d(f, table, n, x);
}

double cesaro_mean_1d_quadrature(const Func1& f, int n, double alpha, double x, double tol,
                                 const std::vector<double>& f_breakpoints) {
    if (n < 1) throw std::domain_error("cesaro_mean_1d_quadrature: n >= 1 required");
    CesaroTable table(alpha, static_cast<std::size_t>(n));
    PanelPlan plan;
    plan.singularity = 0.0;
    plan.min_width = 1.0 / (8.0 * n);
    plan.max_width = 6.0 / (n + 0.5 * (1.0 + alpha));
    for (double bp : f_breakpoints) {
        // shift breakpoints of t -> f(x+t), fold into [-pi, pi)
        double t = bp - x;
        while (t < -kPi) t += 2.0 * kPi;
        while (t >= kPi) t -= 2.0 * kPi;
        plan.breakpoints.push_back(t);
    }
    auto integrand = [&](double t) {
        double u = x + t;
        while (u < -kPi) u += 2.0 * kPi;
        while (u >= kPi) u -= 2.0 * kPi;
        return f(u) * kernel_value(table, static_cast<std::size_t>(n), t);
    };
    return integrate_panels(integrand, -kPi, kPi, tol, plan).value / kPi;
}

double cesaro_mean_atoms(const CesaroTable& table, std::size_t n,
                         const std::vector<TrigAtom>& atoms) {
    if (n < 1 || n > table.n_cap())
        throw std::domain_error("cesaro_mean_atoms: n out of table range");
    KahanSum s;
    for (const auto& a : atoms) s += 0.5 * atom_mass(a);
    for (std::size_t j = 1; j <= n; ++j) {
        double mom = 0.0;
        for (const auto& a : atoms) mom += atom_cosine_moment(a, static_cast<long long>(j));
        s += table.cosine_weight(n, j) * mom;
    }
    return s.value() / kPi;
}

MultiFourierData MultiFourierData::tensor(std::vector<int> n_max,
                                          std::vector<std::complex<double>> c) {
    std::size_t expect = 1;
    for (int k : n_max) {
        if (k < 0) throw std::domain_error("MultiFourierData: n_max >= 0");
        expect *= static_cast<std::size_t>(2 * k + 1);
    }
    if (c.size() != expect) throw std::domain_error("MultiFourierData: tensor size mismatch");
    MultiFourierData d;
    d.n_max_ = std::move(n_max);
    d.c_ = std::move(c);
    return d;
}

MultiFourierData MultiFourierData::separable(std::vector<FourierData> axes) {
    if (axes.empty()) throw std::domain_error("MultiFourierData: no axes");
    MultiFourierData d;
    for (const auto& ax : axes) d.n_max_.push_back(ax.n_max());
    d.axes_ = std::move(axes);
    return d;
}

MultiFourierData MultiFourierData::tensor_from_function(const FuncM& f, std::vector<int> n_max,
                                                        std::size_t samples_per_axis) {
    const std::size_t m = n_max.size();
    if (m == 0) throw std::domain_error("MultiFourierData: dimension 0");
    const std::size_t M = samples_per_axis;
    std::size_t grid_count = 1;
    for (std::size_t j = 0; j < m; ++j) grid_count *= M;

    // Stage 0: sample f on the tensor grid.
    std::vector<std::complex<double>> data(grid_count);
    std::vector<double> x(m);
    for (std::size_t flat = 0; flat < grid_count; ++flat) {
        std::size_t rem = flat;
        for (std::size_t j = m; j-- > 0;) {
            x[j] = -kPi + 2.0 * kPi * static_cast<double>(rem % M) / static_cast<double>(M);
            rem /= M;
        }
        data[flat] = f(x);
    }

    // Stage j: DFT along axis j (sizes M -> 2K_j + 1).
    std::vector<std::size_t> shape(m, M);
    for (std::size_t axis = 0; axis < m; ++axis) {
        const int K = n_max[axis];
        const std::size_t out_sz = static_cast<std::size_t>(2 * K + 1);
        std::size_t inner = 1;
        for (std::size_t j = axis + 1; j < m; ++j) inner *= shape[j];
        std::size_t outer = 1;
        for (std::size_t j = 0; j < axis; ++j) outer *= shape[j];

        std::vector<std::complex<double>> next(outer * out_sz * inner);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t i = 0; i < inner; ++i)
                for (int k = -K; k <= K; ++k) {
                    std::complex<double> acc = 0.0;
                    for (std::size_t j = 0; j < M; ++j) {
                        const double t = -kPi + 2.0 * kPi * static_cast<double>(j) / M;
                        const double ang = -k * t;
                        acc += data[(o * M + j) * inner + i] *
                               std::complex<double>(std::cos(ang), std::sin(ang));
                    }
                    next[(o * out_sz + static_cast<std::size_t>(k + K)) * inner + i] =
                        acc / static_cast<double>(M);
                }
        data = std::move(next);
        shape[axis] = out_sz;
    }
    return tensor(std::move(n_max), std::move(data));
}

std::size_t MultiFourierData::dims() const { return n_max_.size(); }

std::complex<double> MultiFourierData::coeff(const std::vector<int>& k) const {
    if (k.size() != dims()) throw std::domain_error("MultiFourierData::coeff: bad index arity");
    if (is_separable()) {
        std::complex<double> c = 1.0;
        for (std::size_t j = 0; j < k.size(); ++j) c *= axes_[j].coeff(k[j]);
        return c;
    }
    std::size_t flat = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (std::abs(k[j]) > n_max_[j])
            throw std::domain_error("MultiFourierData::coeff: index out of range");
        flat = flat * static_cast<std::size_t>(2 * n_max_[j] + 1) +
               static_cast<std::size_t>(k[j] + n_max_[j]);
    }
    return c_[flat];
}

double cesaro_mean_multi(const MultiFourierData& f, const std::vector<int>& nvec,
                         const CesaroOrder& order, const std::vector<double>& x) {
    const std::size_t m = f.dims();
    if (nvec.size() != m || order.dims() != m || x.size() != m)
        throw std::domain_error("cesaro_mean_multi: dimension mismatch");
    for (std::size_t j = 0; j < m; ++j) {
        if (nvec[j] < 1) throw std::domain_error("cesaro_mean_multi: n_j >= 1 required");
        if (nvec[j] > f.n_max()[j])
            throw std::domain_error("cesaro_mean_multi: coefficients missing beyond n_max");
    }

    if (f.is_separable()) {
        double prod = 1.0;
        for (std::size_t j = 0; j < m; ++j)
            prod *= cesaro_mean_1d(f.axes()[j], nvec[j], order.alphas[j], x[j]);
        return prod;
    }

    std::vector<std::vector<double>> w(m);
    for (std::size_t j = 0; j < m; ++j) {
        CesaroTable table(order.alphas[j], static_cast<std::size_t>(nvec[j]));
        w[j].resize(static_cast<std::size_t>(nvec[j]) + 1);
        for (int l = 0; l <= nvec[j]; ++l)
            w[j][l] = table.cosine_weight(static_cast<std::size_t>(nvec[j]),
                                          static_cast<std::size_t>(l));
    }

    KahanSum s;
    std::vector<int> k(m, 0);
    std::function<void(std::size_t, std::complex<double>, double)> rec =
        [&](std::size_t j, std::complex<double> phase_c, double weight) {
            if (j == m) {
                s += (f.coeff(k) * phase_c).real() * weight;
                return;
            }
            for (int kj = -nvec[j]; kj <= nvec[j]; ++kj) {
                k[j] = kj;
                const double ang = kj * x[j];
                rec(j + 1, phase_c * std::complex<double>(std::cos(ang), std::sin(ang)),
                    weight * w[j][static_cast<std::size_t>(std::abs(kj))]);
            }
        };
    rec(0, 1.0, 1.0);
    return s.value();
}

PringsheimReport pringsheim_probe(const MultiFourierData& f, const CesaroOrder& order,
                                  const std::vector<double>& x,
                                  const std::vector<std::vector<int>>& schedule) {
    PringsheimReport rep;
    for (const auto& nvec : schedule)
        rep.rows.push_back({nvec, cesaro_mean_multi(f, nvec, order, x)});
    if (!rep.rows.empty()) {
        const std::size_t tail_start = rep.rows.size() / 2;
        double lo = rep.rows[tail_start].mean, hi = lo;
        for (std::size_t i = tail_start; i < rep.rows.size(); ++i) {
            lo = std::min(lo, rep.rows[i].mean);
            hi = std::max(hi, rep.rows[i].mean);
        }
        rep.tail_oscillation = hi - lo;
    }
    return rep;
}

double fstar(const std::vector<double>& limits) {
    const std::size_t n = limits.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::domain_error("fstar: need 2^m one-sided limits");
    KahanSum s;
    for (double v : limits) s += v;
    return s.value() / static_cast<double>(n);
}

OscillatoryBoundCheck oscillatory_integral_bound(const Func1& f, const LambdaSequence& seq,
                                                 double a, double b, const Func1& s, double A,
                                                 double C_test, double V_f, double sup_f,
                                                 const std::vector<double>& f_breakpoints,
                                                 double tol) {
    if (!(a < b)) throw std::domain_error("oscillatory_integral_bound: a < b required");
    const double kappa = (b - a) / kPi;
    if (!(A >= 2.0 / kappa))
        throw std::domain_error("oscillatory_integral_bound: A >= 2/kappa required");

    // Antiperiodicity and boundedness of the modulator, checked on samples.
    for (int i = 0; i < 64; ++i) {
        const double t = -kPi + 2.0 * kPi * i / 64.0;
        if (std::abs(s(t)) > 1.0 + 1e-12)
            throw std::domain_error("oscillatory_integral_bound: |s| <= 1 violated");
        if (std::abs(s(t + kPi) + s(t)) > 1e-8)
            throw std::domain_error("oscillatory_integral_bound: s(t+pi) = -s(t) violated");
    }

    PanelPlan plan;
    plan.max_width = 6.0 / A;
    plan.breakpoints = f_breakpoints;
    auto integrand = [&f, &s, A](double t) { return f(t) * s(A * t); };
    const double lhs = std::abs(integrate_panels(integrand, a, b, tol, plan).value);

    OscillatoryBoundCheck res;
    res.kappa = kappa;
    res.lambda_index = static_cast<std::size_t>(std::floor(kappa * A)) - 1;
    res.lhs = lhs;
    res.rhs = C_test * (V_f / seq.partial_sum(res.lambda_index) + sup_f / A);
    res.ok = lhs <= res.rhs;
    return res;
}

double sawtooth_jump(double x) {
    while (x < -kPi) x += 2.0 * kPi;
    while (x > kPi) x -= 2.0 * kPi;
    if (x == 0.0) return 0.0;
    const double sign = x > 0.0 ? 1.0 : -1.0;
    return sign * (1.0 - std::abs(x) / kPi);
}

FourierData sawtooth_jump_data(int n_max) {
    std::vector<double> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
    for (int j = 1; j <= n_max; ++j) b[j] = 2.0 / (kPi * j);
    return FourierData::from_cosine_sine(a, b);
}

}  // namespace waterman
