#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace waterman {

/// Nondecreasing positive weight sequence lambda_n with divergent
/// reciprocal sum. Harmonic is lambda_n = n, Power(beta) is lambda_n = n^beta
/// with beta in (0,1], Explicit carries a finite list of weights.
class LambdaSequence {
public:
    enum class Kind { Harmonic, Power, Explicit };

    static LambdaSequence harmonic();
    static LambdaSequence power(double beta);
    static LambdaSequence explicit_weights(std::vector<double> weights);

    Kind kind() const { return kind_; }
    double beta() const { return beta_; }

    /// lambda_k, 1-based. Explicit sequences throw past their last entry.
    double weight(std::size_t k) const;

    /// Lambda(N) = sum_{k=1}^N 1/lambda_k. Strictly increasing in N.
    double partial_sum(std::size_t N) const;

    /// True when divergence of sum 1/lambda_k is known analytically
    /// (Harmonic and Power kinds). Explicit data cannot certify it.
    bool divergence_guaranteed() const { return kind_ != Kind::Explicit; }

    /// Largest valid index for Explicit kind; empty otherwise.
    std::optional<std::size_t> max_index() const;

    std::string describe() const;

private:
    LambdaSequence(Kind kind, double beta, std::vector<double> weights);

    Kind kind_;
    double beta_ = 1.0;  // exponent for Power; 1 for Harmonic
    std::vector<double> weights_;
};

/// Cesaro order vector alpha = (alpha_1,...,alpha_m), each alpha_j > -1.
struct CesaroOrder {
    explicit CesaroOrder(std::vector<double> alphas_in);

    std::vector<double> alphas;

    std::size_t dims() const { return alphas.size(); }
    double beta(std::size_t j) const { return alphas.at(j) + 1.0; }
    std::vector<double> betas() const;
};

/// A_n^alpha by the multiplicative recurrence A_0 = 1,
/// A_n = A_{n-1} (n + alpha) / n. Requires alpha > -1.
double cesaro_coeff(long long n, double alpha);

/// Prefix table A_l^a for l = 0..n_max. Accepts a > -2 so the kernel
/// weight exponent alpha - 1 can be tabulated as well.
std::vector<double> cesaro_coefficient_table(double a, std::size_t n_max);

/// Convergence verdict for sum_k 1/(lambda^2_k ... lambda^m_k) over the
/// trailing axes of a multi-axis weight family.
struct ReciprocalProductReport {
    bool convergent = false;
    bool rigorous = false;           // analytic p-series rule applied
    double exponent_sum = 0.0;       // sum of beta_j over supplied axes (if analytic)
    std::vector<double> partial_sums;
    std::string rule;
};

/// Decides the cross-axis reciprocal-product series. Power/Harmonic axes
/// use the p-series rule (convergent iff exponent sum > 1); any Explicit
/// axis demotes the verdict to a non-rigorous heuristic over partial sums.
ReciprocalProductReport check_reciprocal_product(const std::vector<LambdaSequence>& tail_axes);

}  // namespace waterman
