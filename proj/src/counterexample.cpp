#include "waterman/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <stdexcept>

#include <json.hpp>

#include "waterman/summation.hpp"
#include "waterman/util.hpp"

namespace waterman {

namespace {

double integral_inv_power(double beta) {
    // int_1^3 t^{-beta} dt, beta in (0, 1)
    return (std::pow(3.0, 1.0 - beta) - 1.0) / (1.0 - beta);
}

double rho_value(int m, double beta1) {
    return integral_inv_power(beta1) / (2.0 * kPi * std::pow(4.0, m));
}

class TableCache {
public:
    const CesaroTable& get(double alpha, std::size_t n_needed) {
        auto it = cache_.find(alpha);
        if (it == cache_.end() || it->second->n_cap() < n_needed) {
            std::size_t cap = std::max<std::size_t>(n_needed, 64);
            if (it != cache_.end()) cap = std::max(cap, 2 * it->second->n_cap());
            cache_[alpha] = std::make_shared<CesaroTable>(alpha, cap);
        }
        return *cache_[alpha];
    }

private:
    std::map<double, std::shared_ptr<CesaroTable>> cache_;
};

// Descending-j evaluation of the same certificate sum; used as a
// floating-point independence probe against cesaro_mean_atoms.
double sigma_atoms_descending(const CesaroTable& table, std::size_t n,
                              const std::vector<TrigAtom>& atoms) {
    double s = 0.0;
    for (std::size_t j = n; j >= 1; --j) {
        double mom = 0.0;
        for (const auto& a : atoms) mom += atom_cosine_moment(a, static_cast<long long>(j));
        s += table.cosine_weight(n, j) * mom;
    }
    for (const auto& a : atoms) s += 0.5 * atom_mass(a);
    return s / kPi;
}

std::vector<long long> geometric_schedule(long long lo, long long hi) {
    std::vector<long long> out;
    double v = static_cast<double>(lo);
    while (v <= static_cast<double>(hi)) {
        const auto n = static_cast<long long>(std::llround(v));
        if (out.empty() || out.back() != n) out.push_back(n);
        v *= std::sqrt(2.0);
    }
    return out;
}

double sigma_psi_at(TableCache& tables, const DiagonalSpec& spec, const StageParams& st,
                    std::size_t n) {
    double prod = 1.0;
    for (int axis = 0; axis < spec.m; ++axis) {
        const CesaroTable& tb = tables.get(spec.alphas[axis], n);
        prod *= cesaro_mean_atoms(tb, n, stage_axis_atoms(st, axis, spec.alphas[0]));
    }
    return prod;
}

double sigma_g_at(TableCache& tables, const DiagonalSpec& spec, std::size_t upto_stage,
                  std::size_t n) {
    KahanSum s;
    for (std::size_t k = 0; k + 1 < upto_stage; ++k)
        s += sigma_psi_at(tables, spec, spec.stages[k], n);
    return s.value();
}

void require(bool cond, const char* name) {
    if (!cond) throw ThresholdError(std::string("threshold violated: ") + name);
}

}  // namespace

std::vector<double> DiagonalSpec::betas() const {
    std::vector<double> b;
    for (double a : alphas) b.push_back(a + 1.0);
    return b;
}

namespace {
constexpr long double kPiL = 3.14159265358979323846264338327950288L;
}

std::pair<double, double> stage_window(long long N, double alpha1) {
    if (N < 10) throw std::domain_error("stage_window: N >= 10 required");
    // Zeros at t = (l + alpha/2) pi / nu. Extended precision keeps the
    // rounded endpoints within half an ulp of the exact zeros even when
    // the phase nu*t is of order 10^6.
    const long double nu = static_cast<long double>(N) + 0.5L * (1.0L + static_cast<long double>(alpha1));
    const long double half_alpha = 0.5L * static_cast<long double>(alpha1);
    const auto l_min = static_cast<long long>(std::ceil(static_cast<double>(nu / kPiL - half_alpha) - 1e-12));
    const auto l_max = static_cast<long long>(std::floor(static_cast<double>(3.0L * nu / kPiL - half_alpha) + 1e-12));
    const long double a = (static_cast<long double>(l_min) + half_alpha) * kPiL / nu;
    const long double b = (static_cast<long double>(l_max) + half_alpha) * kPiL / nu;
    return {static_cast<double>(a), static_cast<double>(b)};
}

/// |nu t - pi alpha_1/2| distance to the nearest multiple of pi, with the
/// phase evaluated in extended precision from N and alpha_1 directly.
double stage_window_phase_residual(long long N, double alpha1, double t) {
    const long double nu = static_cast<long double>(N) + 0.5L * (1.0L + static_cast<long double>(alpha1));
    const long double phase = nu * static_cast<long double>(t) -
                              0.5L * kPiL * static_cast<long double>(alpha1);
    const long double l = std::round(static_cast<double>(phase / kPiL));
    return static_cast<double>(std::abs(phase - l * kPiL));
}

WindowedSineAtom stage_oscillation(long long N, double alpha1) {
    const auto [a, b] = stage_window(N, alpha1);
    const double nu = static_cast<double>(N) + 0.5 * (1.0 + alpha1);
    return WindowedSineAtom{a, b, nu, 0.5 * kPi * alpha1, cesaro_coeff(N, alpha1)};
}

std::vector<TrigAtom> stage_axis_atoms(const StageParams& st, int axis, double alpha1) {
    if (axis == 0)
        return {TrigAtom{WindowedSineAtom{st.a, st.b, st.nu[0], 0.5 * kPi * alpha1, st.amp}}};
    return tent_atoms(st.c[axis - 1], st.d[axis - 1]);
}

DiagonalSpec build_diagonal(const BuildOptions& opts) {
    if (opts.m < 3) throw std::domain_error("build_diagonal: m >= 3 required");
    if (static_cast<int>(opts.alphas.size()) != opts.m)
        throw std::domain_error("build_diagonal: need one alpha per axis");
    for (double a : opts.alphas)
        if (!(a > -1.0 && a < 0.0))
            throw std::domain_error("build_diagonal: every alpha_j must lie in (-1, 0)");
    if (opts.depth < 1) throw std::domain_error("build_diagonal: depth >= 1 required");

    double beta_sum = 0.0;
    for (double a : opts.alphas) beta_sum += a + 1.0;
    const double beta1 = opts.alphas[0] + 1.0;
    if (!(beta_sum - beta1 > 1.0))
        throw std::domain_error(
            "build_diagonal: growth condition fails: (sum beta_j) - beta_1 = " +
            format_real(beta_sum - beta1) + " <= 1");

    DiagonalSpec spec;
    spec.m = opts.m;
    spec.alphas = opts.alphas;
    spec.cap = opts.cap;
    spec.rho = rho_value(opts.m, beta1);
    spec.bound = estimate_kernel_bound(opts.alphas[0], 16, 1024, 16, 512);

    TableCache tables;
    const double rho = spec.rho;

    auto make_nu = [&](long long N) {
        std::vector<double> nu;
        for (double a : spec.alphas) nu.push_back(static_cast<double>(N) + 0.5 * (1.0 + a));
        return nu;
    };

    auto fill_certificates = [&](StageParams& st) {
        const auto n = static_cast<std::size_t>(st.N);
        const CesaroTable& tb1 = tables.get(spec.alphas[0], n);
        st.sigma_f = cesaro_mean_atoms(tb1, n, stage_axis_atoms(st, 0, spec.alphas[0]));
        st.sigma_h.clear();
        st.delta_integral.clear();
        st.bump_integral.clear();
        double prod = st.sigma_f;
        for (int j = 2; j <= spec.m; ++j) {
            const CesaroTable& tbj = tables.get(spec.alphas[j - 1], n);
            const double sh = cesaro_mean_atoms(tbj, n, stage_axis_atoms(st, j - 1, spec.alphas[0]));
            st.sigma_h.push_back(sh);
            prod *= sh;
            st.delta_integral.push_back(kernel_integral_exact(tbj, n, 0.0, st.delta[j - 2]));
            st.bump_integral.push_back(kernel_integral_exact(tbj, n, st.c[j - 2], st.d[j - 2]));
        }
        st.sigma_psi = prod;
        st.sigma_g = sigma_g_at(tables, spec, static_cast<std::size_t>(st.k), n);
    };

    // Stage 1: the fixed seed.
    {
        StageParams st;
        st.k = 1;
        st.N = 10;
        st.nu = make_nu(10);
        const auto osc = stage_oscillation(10, spec.alphas[0]);
        st.a = osc.lo;
        st.b = osc.hi;
        st.amp = osc.amp;
        st.c.assign(spec.m - 1, 0.25);
        st.d.assign(spec.m - 1, 0.5);
        st.delta.assign(spec.m - 1, 0.5);
        st.M.assign(spec.m, 0);
        fill_certificates(st);
        spec.stages.push_back(std::move(st));
    }

    for (int s = 2; s <= opts.depth; ++s) {
        const StageParams& prev = spec.stages.back();
        StageParams st;
        st.k = s;

        st.delta.resize(spec.m - 1);
        for (int j = 0; j < spec.m - 1; ++j)
            st.delta[j] = std::min({0.5 * prev.delta[j], prev.c[j],
                                    1.0 / (4.0 * static_cast<double>(prev.N))});

        // M[0]: the g-mean falls below rho/4 from here on (sampled check).
        st.M.assign(spec.m, 0);
        const auto schedule = geometric_schedule(16, spec.cap);
        {
            bool found = false;
            for (long long n0 : schedule) {
                if (std::abs(sigma_g_at(tables, spec, static_cast<std::size_t>(s),
                                        static_cast<std::size_t>(n0))) >= 0.25 * rho)
                    continue;
                bool window_ok = true;
                for (int i = 0; i < 16 && window_ok; ++i) {
                    const auto n = static_cast<std::size_t>(std::llround(
                        n0 * std::pow(4.0, static_cast<double>(i) / 15.0)));
                    window_ok = std::abs(sigma_g_at(tables, spec, static_cast<std::size_t>(s), n)) <
                                0.25 * rho;
                }
                if (window_ok) {
                    st.M[0] = n0;
                    st.m_g_samples = 16;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw ThresholdError("threshold violated: no n under cap with |sigma(g_s, 0)| < rho/4");
        }

        // M[j]: (1/pi) int_0^{delta_j} K_n > 5/12 from here on (sampled check).
        for (int j = 2; j <= spec.m; ++j) {
            bool found = false;
            for (long long n0 : schedule) {
                const CesaroTable& tb = tables.get(spec.alphas[j - 1], static_cast<std::size_t>(n0));
                if (!(kernel_integral_exact(tb, static_cast<std::size_t>(n0), 0.0,
                                            st.delta[j - 2]) > 5.0 / 12.0))
                    continue;
                bool window_ok = true;
                for (int i = 0; i < 16 && window_ok; ++i) {
                    const auto n = static_cast<std::size_t>(std::llround(
                        n0 * std::pow(4.0, static_cast<double>(i) / 15.0)));
                    const CesaroTable& tbw = tables.get(spec.alphas[j - 1], n);
                    window_ok = kernel_integral_exact(tbw, n, 0.0, st.delta[j - 2]) > 5.0 / 12.0;
                }
                if (window_ok) {
                    st.M[j - 1] = n0;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw ThresholdError(
                    "threshold violated: window integral 5/12 unreachable under cap (axis " +
                    std::to_string(j) + ")");
        }

        // Growth condition on N_s.
        const double target = std::min(1.0 / (8.0 * spec.bound.B_hat), 0.5);
        const double growth_min =
            static_cast<double>(prev.N) * std::pow(target, 1.0 / spec.alphas[0]);
        long long N = std::max<long long>(static_cast<long long>(std::ceil(growth_min)) + 1,
                                          *std::max_element(st.M.begin(), st.M.end()) + 1);
        if (N > spec.cap)
            throw ThresholdError("threshold violated: growth condition needs N_" +
                                 std::to_string(s) + " = " + std::to_string(N) + " > cap " +
                                 std::to_string(spec.cap));

        // Re-check the scanned conditions at N itself; walk up if needed.
        for (;;) {
            const auto n = static_cast<std::size_t>(N);
            bool ok = std::abs(sigma_g_at(tables, spec, static_cast<std::size_t>(s), n)) <
                      0.25 * rho;
            for (int j = 2; j <= spec.m && ok; ++j) {
                const CesaroTable& tb = tables.get(spec.alphas[j - 1], n);
                ok = kernel_integral_exact(tb, n, 0.0, st.delta[j - 2]) > 5.0 / 12.0;
            }
            if (ok) break;
            N = static_cast<long long>(std::llround(N * std::sqrt(2.0)));
            if (N > spec.cap)
                throw ThresholdError("threshold violated: stage conditions unstable under cap");
        }

        st.N = N;
        st.nu = make_nu(N);
        const auto osc = stage_oscillation(N, spec.alphas[0]);
        st.a = osc.lo;
        st.b = osc.hi;
        st.amp = osc.amp;

        // Tent supports: shrink toward the first-lobe end until both the
        // bump-integral and the tent-mean certificates hold.
        st.c.resize(spec.m - 1);
        st.d.resize(spec.m - 1);
        for (int j = 2; j <= spec.m; ++j) {
            const double nu_j = st.nu[j - 1];
            const double t1 = (kPi + 0.5 * kPi * spec.alphas[j - 1]) / nu_j;
            const auto n = static_cast<std::size_t>(N);
            const CesaroTable& tb = tables.get(spec.alphas[j - 1], n);
            double d = 0.99 * st.delta[j - 2];
            bool ok = false;
            for (int attempt = 0; attempt < 20; ++attempt) {
                const double c = 0.05 * d;
                const double bump = kernel_integral_exact(tb, n, c, d);
                const double sh = cesaro_mean_atoms(tb, n, tent_atoms(c, d));
                if (bump > 1.0 / 3.0 && sh > 0.25) {
                    st.c[j - 2] = c;
                    st.d[j - 2] = d;
                    ok = true;
                    break;
                }
                d = t1 + 0.5 * (d - t1);
            }
            if (!ok)
                throw ThresholdError("threshold violated: tent mean 1/4 unreachable (axis " +
                                     std::to_string(j) + ")");
        }

        fill_certificates(st);
        require(st.sigma_f > std::pow(4.0, spec.m) * rho / 2.0, "sigma(f_s, 0) > 4^m rho/2");
        require(std::abs(st.sigma_psi) > rho, "|sigma(psi_s, 0)| > rho");
        spec.stages.push_back(std::move(st));
    }

    return spec;
}

StageCheck verify_stage(const DiagonalSpec& spec, int s) {
    if (s < 1 || s > static_cast<int>(spec.stages.size()))
        throw std::domain_error("verify_stage: stage out of range");
    const StageParams& st = spec.stages[static_cast<std::size_t>(s - 1)];
    const int m = spec.m;
    const double rho = rho_value(m, spec.alphas[0] + 1.0);
    TableCache tables;

    StageCheck chk;
    chk.stage = s;
    auto fail = [&chk](const std::string& name) {
        chk.ok = false;
        chk.failures.push_back(name);
    };

    if (std::abs(rho - spec.rho) > 1e-10) fail("rho recomputation within 1e-10");

    // Window legality.
    {
        const auto [a, b] = stage_window(st.N, spec.alphas[0]);
        if (std::abs(a - st.a) > 1e-12 || std::abs(b - st.b) > 1e-12)
            fail("window zeros match stage parameters");
        if (!(st.a >= 1.0 - 1e-12 && st.b <= 3.0 + 1e-12 && st.a < st.b))
            fail("[a, b] inside [1, 3]");
        // The stored endpoints are correctly rounded zeros; the admissible
        // phase residual grows with nu ulp(t) once nu t passes ~10^4.
        const double nu = st.nu[0];
        const double tol_a = std::max(1e-10, 2.0 * nu * (std::nextafter(st.a, 1e300) - st.a));
        const double tol_b = std::max(1e-10, 2.0 * nu * (std::nextafter(st.b, 1e300) - st.b));
        if (stage_window_phase_residual(st.N, spec.alphas[0], st.a) > tol_a ||
            stage_window_phase_residual(st.N, spec.alphas[0], st.b) > tol_b)
            fail("sin vanishes at window ends");
    }

    bool geometry_ok = true;
    for (int j = 0; j < m - 1; ++j) {
        // The fixed seed stage has d = delta; strict containment is an
        // inductive-step property.
        const bool inside = s >= 2 ? st.d[j] < st.delta[j] : st.d[j] <= st.delta[j];
        if (!(st.c[j] > 0.0 && st.c[j] < st.d[j] && inside)) {
            fail("[c, d] inside (0, delta)");
            geometry_ok = false;
        }
    }
    if (!geometry_ok) return chk;  // recomputation needs well-formed tents

    if (s >= 2) {
        const StageParams& prev = spec.stages[static_cast<std::size_t>(s - 2)];
        for (int j = 0; j < m - 1; ++j) {
            const double expect = std::min(
                {0.5 * prev.delta[j], prev.c[j], 1.0 / (4.0 * static_cast<double>(prev.N))});
            if (st.delta[j] != expect) fail("delta recursion exact on stored values");
            if (!(st.d[j] < prev.c[j])) fail("stage supports disjoint on trailing axes");
        }
        const double target = std::min(1.0 / (8.0 * spec.bound.B_hat), 0.5);
        if (!(std::pow(static_cast<double>(st.N) / static_cast<double>(prev.N),
                       spec.alphas[0]) < target))
            fail("growth condition (N_s/N_{s-1})^alpha_1 < min{1/(8B), 1/2}");
    }

    // Recompute certificates.
    const auto n = static_cast<std::size_t>(st.N);
    double drift = 0.0, rev_drift = 0.0;
    {
        const CesaroTable& tb1 = tables.get(spec.alphas[0], n);
        const auto atoms_f = stage_axis_atoms(st, 0, spec.alphas[0]);
        chk.sigma_f = cesaro_mean_atoms(tb1, n, atoms_f);
        rev_drift = std::max(rev_drift,
                             std::abs(chk.sigma_f - sigma_atoms_descending(tb1, n, atoms_f)));
        drift = std::max(drift, std::abs(chk.sigma_f - st.sigma_f));

        double prod = chk.sigma_f;
        for (int j = 2; j <= m; ++j) {
            const CesaroTable& tbj = tables.get(spec.alphas[j - 1], n);
            const auto atoms_h = stage_axis_atoms(st, j - 1, spec.alphas[0]);
            const double sh = cesaro_mean_atoms(tbj, n, atoms_h);
            chk.sigma_h.push_back(sh);
            rev_drift = std::max(rev_drift,
                                 std::abs(sh - sigma_atoms_descending(tbj, n, atoms_h)));
            drift = std::max(drift, std::abs(sh - st.sigma_h[j - 2]));
            prod *= sh;
            chk.delta_integral.push_back(kernel_integral_exact(tbj, n, 0.0, st.delta[j - 2]));
            chk.bump_integral.push_back(kernel_integral_exact(tbj, n, st.c[j - 2], st.d[j - 2]));
            drift = std::max(drift, std::abs(chk.delta_integral.back() - st.delta_integral[j - 2]));
            drift = std::max(drift, std::abs(chk.bump_integral.back() - st.bump_integral[j - 2]));
        }
        chk.sigma_psi = prod;
        drift = std::max(drift, std::abs(chk.sigma_psi - st.sigma_psi));
        chk.sigma_g = sigma_g_at(tables, spec, static_cast<std::size_t>(s), n);
        drift = std::max(drift, std::abs(chk.sigma_g - st.sigma_g));
    }
    chk.max_recompute_drift = drift;
    chk.reversed_sum_drift = rev_drift;
    if (drift > 1e-6) fail("stored certificates reproduce within 1e-6");
    if (rev_drift > 1e-9) fail("summation-order independence within 1e-9");

    if (s >= 2) {
        if (!(chk.sigma_f > std::pow(4.0, m) * rho / 2.0)) fail("sigma(f_s, 0) > 4^m rho/2");
        for (int j = 0; j < m - 1; ++j) {
            if (!(chk.sigma_h[j] > 0.25)) fail("tent mean > 1/4 (axis " + std::to_string(j + 2) + ")");
            if (!(chk.delta_integral[j] > 5.0 / 12.0))
                fail("window integral > 5/12 (axis " + std::to_string(j + 2) + ")");
            if (!(chk.bump_integral[j] > 1.0 / 3.0))
                fail("bump integral > 1/3 (axis " + std::to_string(j + 2) + ")");
        }
        if (!(std::abs(chk.sigma_psi) > rho)) fail("|sigma(psi_s, 0)| > rho");
        if (!(std::abs(chk.sigma_g) < 0.25 * rho)) fail("|sigma(g_s, 0)| < rho/4");
    }

    // Far tents: k > s within the built depth.
    for (int k = s + 1; k <= static_cast<int>(spec.stages.size()); ++k) {
        const StageParams& far = spec.stages[static_cast<std::size_t>(k - 1)];
        for (int j = 2; j <= m; ++j) {
            const CesaroTable& tbj = tables.get(spec.alphas[j - 1], n);
            const double sh = cesaro_mean_atoms(tbj, n, stage_axis_atoms(far, j - 1, spec.alphas[0]));
            const double bound = 2.0 / kPi * static_cast<double>(st.N) * far.delta[j - 2];
            chk.far_tent_bound_gap.push_back(bound - std::abs(sh));
            if (!(std::abs(sh) <= bound))
                fail("far tent bound |sigma(h_k^j, 0)| <= (2/pi) N_s delta_k^j");
        }
    }

    // Assembled mean against rho/2 minus the truncation allowance.
    {
        KahanSum acc;
        for (const auto& stage : spec.stages) acc += sigma_psi_at(tables, spec, stage, n);
        chk.assembled_sigma = acc.value();
        const int S = static_cast<int>(spec.stages.size());
        const double q = std::pow(0.5, m - 1);
        chk.truncation_allowance =
            (rho / 8.0) * std::pow(0.5, static_cast<double>(m - 1) * (S - s)) / (1.0 - q);
        const double needed = 0.5 * rho - chk.truncation_allowance;
        chk.final_gap = std::abs(chk.assembled_sigma) - needed;
        if (s >= 2 && !(std::abs(chk.assembled_sigma) >= needed))
            fail("final chain |sigma(f, 0)| >= rho/2 - truncation allowance");
    }

    return chk;
}

FuncM assemble_diagonal(const DiagonalSpec& spec) {
    // ladiv precondition for the trailing axes (power sequences n^{beta_j}).
    {
        std::vector<LambdaSequence> tails;
        for (int j = 2; j <= spec.m; ++j)
            tails.push_back(LambdaSequence::power(spec.alphas[j - 1] + 1.0));
        if (!check_reciprocal_product(tails).convergent)
            throw std::domain_error("assemble_diagonal: trailing-axis weight product diverges");
    }
    // Support disjointness across stages (trailing axes march toward 0).
    for (std::size_t k = 1; k < spec.stages.size(); ++k)
        for (int j = 0; j < spec.m - 1; ++j)
            if (!(spec.stages[k].d[j] < spec.stages[k - 1].c[j]))
                throw std::logic_error("assemble_diagonal: overlapping stage supports");

    struct StageAtoms {
        std::vector<std::vector<TrigAtom>> per_axis;
    };
    auto stages = std::make_shared<std::vector<StageAtoms>>();
    for (const auto& st : spec.stages) {
        StageAtoms sa;
        for (int axis = 0; axis < spec.m; ++axis) sa.per_axis.push_back(stage_axis_atoms(st, axis, spec.alphas[0]));
        stages->push_back(std::move(sa));
    }
    const int m = spec.m;
    return [stages, m](const std::vector<double>& x) -> double {
        if (static_cast<int>(x.size()) != m)
            throw std::domain_error("assembled diagonal: wrong arity");
        double sum = 0.0;
        for (const auto& sa : *stages) {
            double prod = 1.0;
            for (int axis = 0; axis < m && prod != 0.0; ++axis)
                prod *= eval_atoms(sa.per_axis[axis], x[axis]);
            sum += prod;
        }
        return sum;
    };
}

double max_on_unit_cube(const DiagonalSpec& spec, int points_per_axis) {
    auto f = assemble_diagonal(spec);
    const int m = spec.m;
    std::vector<double> x(m);
    std::size_t count = 1;
    for (int j = 0; j < m; ++j) count *= static_cast<std::size_t>(points_per_axis);
    double worst = 0.0;
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rem = flat;
        for (int j = 0; j < m; ++j) {
            x[j] = -1.0 + 2.0 * static_cast<double>(rem % points_per_axis) /
                              static_cast<double>(points_per_axis - 1);
            rem /= static_cast<std::size_t>(points_per_axis);
        }
        worst = std::max(worst, std::abs(f(x)));
    }
    return worst;
}

namespace {

using nlohmann::json;

json real(double x) { return json(format_real(x)); }

double parse_real(const json& j) {
    if (j.is_string()) return std::strtod(j.get<std::string>().c_str(), nullptr);
    return j.get<double>();
}

json real_array(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(real(x));
    return arr;
}

std::vector<double> parse_real_array(const json& arr) {
    std::vector<double> v;
    for (const auto& j : arr) v.push_back(parse_real(j));
    return v;
}

}  // namespace

std::string diagonal_to_json(const DiagonalSpec& spec) {
    json root;
    root["format"] = "waterman-diagonal-1";
    root["m"] = spec.m;
    root["cap"] = spec.cap;
    root["alphas"] = real_array(spec.alphas);
    root["rho"] = real(spec.rho);
    root["bound"] = {
        {"alpha", real(spec.bound.alpha)},       {"B_hat", real(spec.bound.B_hat)},
        {"max_quotient", real(spec.bound.max_quotient)}, {"argmax_t", real(spec.bound.argmax_t)},
        {"argmax_n", spec.bound.argmax_n},       {"sample_grid", spec.bound.sample_grid},
    };
    root["stages"] = json::array();
    for (const auto& st : spec.stages) {
        json s;
        s["k"] = st.k;
        s["N"] = st.N;
        s["nu"] = real_array(st.nu);
        s["a"] = real(st.a);
        s["b"] = real(st.b);
        s["amp"] = real(st.amp);
        s["c"] = real_array(st.c);
        s["d"] = real_array(st.d);
        s["delta"] = real_array(st.delta);
        s["M"] = st.M;
        s["m_g_samples"] = st.m_g_samples;
        s["sigma_f"] = real(st.sigma_f);
        s["sigma_h"] = real_array(st.sigma_h);
        s["sigma_psi"] = real(st.sigma_psi);
        s["sigma_g"] = real(st.sigma_g);
        s["delta_integral"] = real_array(st.delta_integral);
        s["bump_integral"] = real_array(st.bump_integral);
        root["stages"].push_back(std::move(s));
    }
    return root.dump(2) + "\n";
}

DiagonalSpec diagonal_from_json(const std::string& text) {
    const json root = json::parse(text);
    if (root.value("format", "") != "waterman-diagonal-1")
        throw std::domain_error("diagonal_from_json: unknown format tag");
    DiagonalSpec spec;
    spec.m = root.at("m").get<int>();
    spec.cap = root.at("cap").get<long long>();
    spec.alphas = parse_real_array(root.at("alphas"));
    spec.rho = parse_real(root.at("rho"));
    const auto& b = root.at("bound");
    spec.bound.alpha = parse_real(b.at("alpha"));
    spec.bound.B_hat = parse_real(b.at("B_hat"));
    spec.bound.max_quotient = parse_real(b.at("max_quotient"));
    spec.bound.argmax_t = parse_real(b.at("argmax_t"));
    spec.bound.argmax_n = b.at("argmax_n").get<std::size_t>();
    spec.bound.sample_grid = b.at("sample_grid").get<std::string>();
    for (const auto& s : root.at("stages")) {
        StageParams st;
        st.k = s.at("k").get<int>();
        st.N = s.at("N").get<long long>();
        st.nu = parse_real_array(s.at("nu"));
        st.a = parse_real(s.at("a"));
        st.b = parse_real(s.at("b"));
        st.amp = parse_real(s.at("amp"));
        st.c = parse_real_array(s.at("c"));
        st.d = parse_real_array(s.at("d"));
        st.delta = parse_real_array(s.at("delta"));
        st.M = s.at("M").get<std::vector<long long>>();
        st.m_g_samples = s.at("m_g_samples").get<int>();
        st.sigma_f = parse_real(s.at("sigma_f"));
        st.sigma_h = parse_real_array(s.at("sigma_h"));
        st.sigma_psi = parse_real(s.at("sigma_psi"));
        st.sigma_g = parse_real(s.at("sigma_g"));
        st.delta_integral = parse_real_array(s.at("delta_integral"));
        st.bump_integral = parse_real_array(s.at("bump_integral"));
        spec.stages.push_back(std::move(st));
    }
    return spec;
}

}  // namespace waterman
