#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace waterman {

/// Prefix tables of Cesaro binomial coefficients for one order alpha:
/// A_l^alpha (mean weights) and A_l^{alpha-1} (kernel weights), l = 0..n_cap.
/// Read-only after construction; safe to share across threads.
class CesaroTable {
public:
    CesaroTable(double alpha, std::size_t n_cap);

    double alpha() const { return alpha_; }
    std::size_t n_cap() const { return a_.size() - 1; }

    double A(std::size_t l) const { return a_[l]; }    // A_l^alpha
    double Aw(std::size_t l) const { return w_[l]; }   // A_l^{alpha-1}

    /// A_{n-j}^alpha / A_n^alpha, the cosine-expansion weight of cos(jt)
    /// in K_n^alpha; equals the coefficient multiplier of the (C,alpha) mean.
    double cosine_weight(std::size_t n, std::size_t j) const { return a_[n - j] / a_[n]; }

private:
    double alpha_;
    std::vector<double> a_;
    std::vector<double> w_;
};

/// One kernel evaluation. main_term/remainder are absent for |t| < 1e-12
/// where the closed-form split is singular.
struct KernelEval {
    int n = 0;
    double alpha = 0.0;
    double t = 0.0;
    double value = 0.0;
    std::optional<double> main_term;
    std::optional<double> remainder;
};

/// Dirichlet kernel D_k(t) = sin((k+1/2)t) / (2 sin(t/2)), D_k(0) = k+1/2.
/// |t| < 1e-12 is routed to a three-term Taylor evaluation.
double dirichlet_kernel(long long k, double t);

/// K_n^alpha(t) = (1/A_n^alpha) sum_{k=0}^n A_{n-k}^{alpha-1} D_k(t),
/// summed in ascending k. Even in t by construction (evaluated at |t|).
double kernel_value(const CesaroTable& table, std::size_t n, double t);

/// Singular closed-form main term K_n^{alpha,*}(t), t != 0.
double kernel_main_term(const CesaroTable& table, std::size_t n, double t);

KernelEval kernel_eval(const CesaroTable& table, std::size_t n, double t);

/// Exact (1/pi) integral of K_n^alpha over [c, d] via the cosine-sum
/// antiderivative; no quadrature error beyond rounding.
double kernel_integral_exact(const CesaroTable& table, std::size_t n, double c, double d);

/// Peak of |K_n^alpha|, attained at t = 0: n/(alpha+1) + 1/2 exactly.
double kernel_peak(std::size_t n, double alpha);

/// Convenience wrapper owning its coefficient table.
class CesaroKernel {
public:
    CesaroKernel(int n, double alpha);

    int order_n() const { return n_; }
    double alpha() const { return table_.alpha(); }
    const CesaroTable& table() const { return table_; }

    double value(double t) const { return kernel_value(table_, n_, t); }
    double main_term(double t) const { return kernel_main_term(table_, n_, t); }
    KernelEval eval(double t) const { return kernel_eval(table_, n_, t); }
    double integral_exact(double c, double d) const {
        return kernel_integral_exact(table_, n_, c, d);
    }

private:
    std::size_t n_;
    CesaroTable table_;
};

/// Empirical estimate of B(alpha) in |K_n^alpha(t)| <= B n^{-alpha} |t|^{-(alpha+1)}:
/// twice the max of |K_n(t)| n^alpha |t|^{alpha+1} over a deterministic grid.
struct EmpiricalKernelBound {
    double alpha = 0.0;
    double B_hat = 0.0;
    double max_quotient = 0.0;  // B_hat / 2
    double argmax_t = 0.0;
    std::size_t argmax_n = 0;
    std::string sample_grid;
};

/// Samples n log-spaced in [n_min, n_max] (n_count values) and, per n,
/// t_count log-spaced t in [1/(4n), pi]. alpha in (-1, 0].
EmpiricalKernelBound estimate_kernel_bound(double alpha, std::size_t n_min, std::size_t n_max,
                                           std::size_t n_count = 16, std::size_t t_count = 512);

/// (1/pi) integral of K_n^alpha over [a, b] by graded panel quadrature
/// (composite Gauss-Legendre, geometric grading toward 0 down to width
/// 1/(8n), oscillation-capped panels). Absolute error target tol.
double kernel_integral(std::size_t n, double alpha, double a, double b, double tol);

}  // namespace waterman
