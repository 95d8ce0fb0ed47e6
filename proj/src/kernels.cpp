#include "waterman/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waterman/quadrature.hpp"
#include "waterman/sequences.hpp"
#include "waterman/util.hpp"

namespace waterman {

namespace {
constexpr double kTinyT = 1e-12;
// Rotation recurrences for sin((k+1/2)t) resync against libm this often.
constexpr std::size_t kResync = 512;
}  // namespace

CesaroTable::CesaroTable(double alpha, std::size_t n_cap) : alpha_(alpha) {
    if (!(alpha > -1.0)) throw std::domain_error("CesaroTable: alpha > -1 required");
    a_ = cesaro_coefficient_table(alpha, n_cap);
    w_ = cesaro_coefficient_table(alpha - 1.0, n_cap);
}

double dirichlet_kernel(long long k, double t) {
    if (k < 0) throw std::domain_error("dirichlet_kernel: k >= 0 required");
    const double kk = static_cast<double>(k);
    if (std::abs(t) < kTinyT) {
        // Three-term Taylor of 1/2 + sum_{j<=k} cos(jt).
        const double s2 = kk * (kk + 1.0) * (2.0 * kk + 1.0) / 6.0;
        const double s4 = kk * (kk + 1.0) * (2.0 * kk + 1.0) * (3.0 * kk * kk + 3.0 * kk - 1.0) / 30.0;
        const double t2 = t * t;
        return (kk + 0.5) - 0.5 * s2 * t2 + s4 * t2 * t2 / 24.0;
    }
    return std::sin((kk + 0.5) * t) / (2.0 * std::sin(0.5 * t));
}

double kernel_value(const CesaroTable& table, std::size_t n, double t) {
    if (n < 1 || n > table.n_cap()) throw std::domain_error("kernel_value: n out of table range");
    t = std::abs(t);

    if (t < kTinyT) {
        KahanSum s;
        for (std::size_t k = 0; k <= n; ++k) s += table.Aw(n - k) * dirichlet_kernel(k, t);
        return s.value() / table.A(n);
    }

    const double s1 = std::sin(t);
    const double c1 = std::cos(t);
    double sk = std::sin(0.5 * t);  // sin((k+1/2)t) at k = 0
    double ck = std::cos(0.5 * t);
    KahanSum s;
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0 && k % kResync == 0) {
            const double ang = (static_cast<double>(k) + 0.5) * t;
            sk = std::sin(ang);
            ck = std::cos(ang);
        }
        s += table.Aw(n - k) * sk;
        const double sn = sk * c1 + ck * s1;
        ck = ck * c1 - sk * s1;
        sk = sn;
    }
    return s.value() / (table.A(n) * 2.0 * std::sin(0.5 * t));
}

double kernel_main_term(const CesaroTable& table, std::size_t n, double t) {
    t = std::abs(t);
    if (t < kTinyT)
        throw std::domain_error("kernel_main_term: singular at t = 0");
    const double alpha = table.alpha();
    const double phase = (static_cast<double>(n) + 0.5 + 0.5 * alpha) * t - 0.5 * kPi * alpha;
    return std::sin(phase) / (table.A(n) * std::pow(2.0 * std::sin(0.5 * t), alpha + 1.0));
}

KernelEval kernel_eval(const CesaroTable& table, std::size_t n, double t) {
    KernelEval e;
    e.n = static_cast<int>(n);
    e.alpha = table.alpha();
    e.t = t;
    e.value = kernel_value(table, n, t);
    if (std::abs(t) >= kTinyT) {
        e.main_term = kernel_main_term(table, n, t);
        e.remainder = e.value - *e.main_term;
    }
    return e;
}

double kernel_integral_exact(const CesaroTable& table, std::size_t n, double c, double d) {
    if (n < 1 || n > table.n_cap())
        throw std::domain_error("kernel_integral_exact: n out of table range");
    if (!(c < d)) throw std::domain_error("kernel_integral_exact: c < d required");

    const double sc1 = std::sin(c), cc1 = std::cos(c);
    const double sd1 = std::sin(d), cd1 = std::cos(d);
    double scj = sc1, ccj = cc1, sdj = sd1, cdj = cd1;  // sin/cos of j*c, j*d
    KahanSum s;
    s += 0.5 * (d - c);
    for (std::size_t j = 1; j <= n; ++j) {
        if (j > 1 && j % kResync == 0) {
            scj = std::sin(j * c);
            ccj = std::cos(j * c);
            sdj = std::sin(j * d);
            cdj = std::cos(j * d);
        }
        s += table.cosine_weight(n, j) * (sdj - scj) / static_cast<double>(j);
        const double sc_n = scj * cc1 + ccj * sc1;
        ccj = ccj * cc1 - scj * sc1;
        scj = sc_n;
        const double sd_n = sdj * cd1 + cdj * sd1;
        cdj = cdj * cd1 - sdj * sd1;
        sdj = sd_n;
    }
    return s.value() / kPi;
}

double kernel_peak(std::size_t n, double alpha) {
    return static_cast<double>(n) / (alpha + 1.0) + 0.5;
}

CesaroKernel::CesaroKernel(int n, double alpha)
    : n_(static_cast<std::size_t>(n)), table_(alpha, static_cast<std::size_t>(n)) {
    if (n < 1) throw std::domain_error("CesaroKernel: n >= 1 required");
}

EmpiricalKernelBound estimate_kernel_bound(double alpha, std::size_t n_min, std::size_t n_max,
                                           std::size_t n_count, std::size_t t_count) {
    if (!(alpha > -1.0) || alpha > 0.0)
        throw std::domain_error("estimate_kernel_bound: alpha in (-1, 0] required");
    if (n_min < 10) throw std::domain_error("estimate_kernel_bound: sampled n >= 10 required");
    if (n_count == 0 || t_count == 0 || n_max < n_min)
        throw std::domain_error("estimate_kernel_bound: empty sample grid");

    std::vector<std::size_t> ns;
    for (std::size_t i = 0; i < n_count; ++i) {
        const double f = n_count == 1 ? 0.0 : static_cast<double>(i) / (n_count - 1);
        const auto n = static_cast<std::size_t>(
            std::llround(std::exp(std::log(static_cast<double>(n_min)) +
                                  f * (std::log(static_cast<double>(n_max)) -
                                       std::log(static_cast<double>(n_min))))));
        if (ns.empty() || ns.back() != n) ns.push_back(n);
    }

    struct Best {
        double q = 0.0;
        double t = 0.0;
        std::size_t n = 0;
    };
    std::vector<Best> best(ns.size());

    parallel_chunks(ns.size(), [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const std::size_t n = ns[i];
            CesaroTable table(alpha, n);
            const double t_lo = 1.0 / (4.0 * static_cast<double>(n));
            const double lg_lo = std::log(t_lo), lg_hi = std::log(kPi);
            Best b;
            for (std::size_t j = 0; j < t_count; ++j) {
                const double f = t_count == 1 ? 0.0 : static_cast<double>(j) / (t_count - 1);
                const double t = std::exp(lg_lo + f * (lg_hi - lg_lo));
                const double q = std::abs(kernel_value(table, n, t)) *
                                 std::pow(static_cast<double>(n), alpha) *
                                 std::pow(t, alpha + 1.0);
                if (q > b.q) b = {q, t, n};
            }
            best[i] = b;
        }
    });

    Best top;
    for (const auto& b : best)
        if (b.q > top.q) top = b;

    EmpiricalKernelBound res;
    res.alpha = alpha;
    res.max_quotient = top.q;
    res.B_hat = 2.0 * top.q;
    res.argmax_t = top.t;
    res.argmax_n = top.n;
    res.sample_grid = "n log-spaced " + std::to_string(n_min) + ".." + std::to_string(n_max) +
                      " (" + std::to_string(ns.size()) + " values), t " + std::to_string(t_count) +
                      " log-spaced in [1/(4n), pi]";
    return res;
}

double kernel_integral(std::size_t n, double alpha, double a, double b, double tol) {
    if (n < 1) throw std::domain_error("kernel_integral: n >= 1 required");
    if (!(a < b) || a < -kPi - 1e-12 || b > kPi + 1e-12)
        throw std::domain_error("kernel_integral: -pi <= a < b <= pi required");
    CesaroTable table(alpha, n);
    PanelPlan plan;
    plan.singularity = 0.0;
    plan.min_width = 1.0 / (8.0 * static_cast<double>(n));
    plan.max_width = 6.0 / (static_cast<double>(n) + 0.5 * (1.0 + alpha));
    auto fn = [&table, n](double t) { return kernel_value(table, n, t); };
    return integrate_panels(fn, a, b, tol, plan).value / kPi;
}

}  // namespace waterman
