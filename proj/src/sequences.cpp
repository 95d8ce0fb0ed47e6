#include "waterman/sequences.hpp"

#include <cmath>
#include <stdexcept>

#include "waterman/util.hpp"

namespace waterman {

LambdaSequence::LambdaSequence(Kind kind, double beta, std::vector<double> weights)
    : kind_(kind), beta_(beta), weights_(std::move(weights)) {}

LambdaSequence LambdaSequence::harmonic() { return LambdaSequence(Kind::Harmonic, 1.0, {}); }

LambdaSequence LambdaSequence::power(double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw std::domain_error("LambdaSequence::power: beta must lie in (0, 1]");
    return LambdaSequence(Kind::Power, beta, {});
}

LambdaSequence LambdaSequence::explicit_weights(std::vector<double> weights) {
    if (weights.empty()) throw std::domain_error("LambdaSequence: empty weight list");
    double prev = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::domain_error("LambdaSequence: weights must be positive");
        if (w < prev) throw std::domain_error("LambdaSequence: weights must be nondecreasing");
        prev = w;
    }
    return LambdaSequence(Kind::Explicit, 0.0, std::move(weights));
}

double LambdaSequence::weight(std::size_t k) const {
    if (k < 1) throw std::domain_error("LambdaSequence::weight: index is 1-based");
    switch (kind_) {
        case Kind::Harmonic:
            return static_cast<double>(k);
        case Kind::Power:
            return std::pow(static_cast<double>(k), beta_);
        case Kind::Explicit:
            if (k > weights_.size())
                throw std::domain_error("LambdaSequence::weight: index past explicit data");
            return weights_[k - 1];
    }
    throw std::logic_error("unreachable");
}

double LambdaSequence::partial_sum(std::size_t N) const {
    if (N < 1) throw std::domain_error("LambdaSequence::partial_sum: N >= 1 required");
    KahanSum s;
    for (std::size_t k = 1; k <= N; ++k) s += 1.0 / weight(k);
    return s.value();
}

std::optional<std::size_t> LambdaSequence::max_index() const {
    if (kind_ == Kind::Explicit) return weights_.size();
    return std::nullopt;
}

std::string LambdaSequence::describe() const {
    switch (kind_) {
        case Kind::Harmonic:
            return "harmonic";
        case Kind::Power:
            return "power:" + format_real(beta_);
        case Kind::Explicit:
            return "explicit[" + std::to_string(weights_.size()) + "]";
    }
    return "?";
}

CesaroOrder::CesaroOrder(std::vector<double> alphas_in) : alphas(std::move(alphas_in)) {
    if (alphas.empty()) throw std::domain_error("CesaroOrder: at least one order required");
    for (double a : alphas)
        if (!(a > -1.0)) throw std::domain_error("CesaroOrder: every alpha_j must exceed -1");
}

std::vector<double> CesaroOrder::betas() const {
    std::vector<double> b;
    b.reserve(alphas.size());
    for (double a : alphas) b.push_back(a + 1.0);
    return b;
}

double cesaro_coeff(long long n, double alpha) {
    if (n < 0) throw std::domain_error("cesaro_coeff: n >= 0 required");
    if (!(alpha > -1.0)) throw std::domain_error("cesaro_coeff: alpha > -1 required");
    double a = 1.0;
    for (long long k = 1; k <= n; ++k)
        a = a * (static_cast<double>(k) + alpha) / static_cast<double>(k);
    return a;
}

std::vector<double> cesaro_coefficient_table(double a, std::size_t n_max) {
    if (!(a > -2.0)) throw std::domain_error("cesaro_coefficient_table: exponent > -2 required");
    std::vector<double> t(n_max + 1);
    t[0] = 1.0;
    for (std::size_t l = 1; l <= n_max; ++l)
        t[l] = t[l - 1] * (static_cast<double>(l) + a) / static_cast<double>(l);
    return t;
}

ReciprocalProductReport check_reciprocal_product(const std::vector<LambdaSequence>& tail_axes) {
    if (tail_axes.empty())
        throw std::domain_error("check_reciprocal_product: at least one trailing axis required");

    ReciprocalProductReport rep;

    bool analytic = true;
    double exponent_sum = 0.0;
    std::size_t trace_len = 4096;
    for (const auto& seq : tail_axes) {
        if (seq.kind() == LambdaSequence::Kind::Explicit) {
            analytic = false;
            trace_len = std::min(trace_len, *seq.max_index());
        } else {
            exponent_sum += seq.beta();
        }
    }

    KahanSum s;
    rep.partial_sums.reserve(trace_len);
    for (std::size_t k = 1; k <= trace_len; ++k) {
        double denom = 1.0;
        for (const auto& seq : tail_axes) denom *= seq.weight(k);
        s += 1.0 / denom;
        if ((k & (k - 1)) == 0 || k == trace_len) rep.partial_sums.push_back(s.value());
    }

    if (analytic) {
        rep.rigorous = true;
        rep.exponent_sum = exponent_sum;
        rep.convergent = exponent_sum > 1.0;
        rep.rule = "p-series: exponent sum " + format_real(exponent_sum) +
                   (rep.convergent ? " > 1" : " <= 1");
        return rep;
    }

    // Heuristic for explicit data: dyadic block sums decaying geometrically.
    rep.rigorous = false;
    double ratio = 1.0;
    if (rep.partial_sums.size() >= 3) {
        const std::size_t sz = rep.partial_sums.size();
        const double inc1 = rep.partial_sums[sz - 1] - rep.partial_sums[sz - 2];
        const double inc0 = rep.partial_sums[sz - 2] - rep.partial_sums[sz - 3];
        ratio = inc0 > 0.0 ? inc1 / inc0 : 0.0;
    }
    rep.convergent = ratio < 0.95;
    rep.rule = "heuristic (non-rigorous): dyadic block ratio " + format_real(ratio);
    return rep;
}

}  // namespace waterman
