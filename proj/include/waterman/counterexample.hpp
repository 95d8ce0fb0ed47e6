#pragma once

#include <string>
#include <vector>

#include "waterman/atoms.hpp"
#include "waterman/kernels.hpp"
#include "waterman/sequences.hpp"
#include "waterman/variation.hpp"

namespace waterman {

/// Parameters and stored certificates of one stage of the diagonal
/// construction. Axis 1 carries the windowed oscillation, axes 2..m the
/// tent factors.
struct StageParams {
    int k = 0;          // 1-based stage index
    long long N = 0;    // N_k
    std::vector<double> nu;  // per axis: N_k + (1 + alpha_j)/2
    double a = 0.0;     // smallest zero of the stage sinusoid in [1, 3]
    double b = 0.0;     // largest zero in [1, 3]
    double amp = 0.0;   // A_{N_k}^{alpha_1}

    // Per trailing axis j = 2..m (index j-2):
    std::vector<double> c, d, delta;

    // Thresholds: M[0] bounds the g-mean condition, M[j-1] the axis-j
    // window-integral condition.
    std::vector<long long> M;
    int m_g_samples = 0;  // sampled verification count for M[0] (not exhaustive)

    // Certificates measured at n = N_k:
    double sigma_f = 0.0;               // sigma^{alpha_1}(f_k, 0)
    std::vector<double> sigma_h;        // sigma^{alpha_j}(h_k^j, 0)
    double sigma_psi = 0.0;             // product over axes
    double sigma_g = 0.0;               // sigma^{aaa}(g_k, 0), g_k = sum_{i<k} psi_i
    std::vector<double> delta_integral;  // (1/pi) int_0^{delta_j} K_{N_k}^{alpha_j}
    std::vector<double> bump_integral;   // (1/pi) int_{c_j}^{d_j} K_{N_k}^{alpha_j}
};

/// Full parameter record of the construction plus numerical certificates.
struct DiagonalSpec {
    int m = 3;
    std::vector<double> alphas;
    double rho = 0.0;
    long long cap = 1LL << 20;
    EmpiricalKernelBound bound;  // consumed by the growth condition
    std::vector<StageParams> stages;

    std::vector<double> betas() const;
};

/// Zeros of sin(nu t - pi alpha_1 / 2) bracketing the window: the smallest
/// zero >= 1 and the largest <= 3.
std::pair<double, double> stage_window(long long N, double alpha1);

/// The stage oscillation A_N^{alpha_1} sin(nu t - pi alpha_1/2) restricted
/// to its window (continuous: the window ends at zeros).
WindowedSineAtom stage_oscillation(long long N, double alpha1);

struct BuildOptions {
    int m = 3;
    std::vector<double> alphas{-0.3, -0.3, -0.3};
    int depth = 2;
    long long cap = 1LL << 20;
};

/// Runs the inductive construction to the requested depth. Throws
/// std::domain_error when the order vector violates the cross-axis growth
/// condition, ThresholdError when a threshold cannot be met under the cap.
DiagonalSpec build_diagonal(const BuildOptions& opts);

/// Recomputed certificates and named inequality checks for stage s.
struct StageCheck {
    int stage = 0;
    bool ok = true;
    std::vector<std::string> failures;

    double sigma_f = 0.0;
    std::vector<double> sigma_h;
    double sigma_psi = 0.0;
    double sigma_g = 0.0;
    std::vector<double> delta_integral;
    std::vector<double> bump_integral;
    std::vector<double> far_tent_bound_gap;  // (2/pi) N_s delta_k^j - |sigma(h_k^j)|, k > s

    double assembled_sigma = 0.0;      // sigma_{N_s}^{aaa}(sum_k psi_k, 0)
    double truncation_allowance = 0.0;  // geometric tail for unbuilt stages
    double final_gap = 0.0;             // |assembled| - (rho/2 - allowance)

    double max_recompute_drift = 0.0;   // vs stored certificates
    double reversed_sum_drift = 0.0;    // ascending vs descending summation
};

/// Recomputes every stage-s certificate from the stored parameters and
/// evaluates the inequality chain. Thresholds apply to stages s >= 2 (the
/// first stage is the fixed seed).
StageCheck verify_stage(const DiagonalSpec& spec, int s);

/// Evaluator for the assembled function sum_k f_k(x^1) prod_j h_k^j(x^j).
/// Checks support disjointness across stages at construction.
FuncM assemble_diagonal(const DiagonalSpec& spec);

/// Max |f| over a uniform (points)^m grid on [-1, 1]^m; the assembled
/// function vanishes there identically.
double max_on_unit_cube(const DiagonalSpec& spec, int points_per_axis = 17);

/// Atoms of the axis factors of stage k (axis 0 = oscillation, else tent).
std::vector<TrigAtom> stage_axis_atoms(const StageParams& st, int axis, double alpha1);

/// Distance of nu t - pi alpha_1/2 to the nearest multiple of pi, with the
/// phase accumulated in extended precision. At the window ends this is the
/// rounding residual of the stored zero, at most ~nu ulp(t)/2.
double stage_window_phase_residual(long long N, double alpha1, double t);

std::string diagonal_to_json(const DiagonalSpec& spec);
DiagonalSpec diagonal_from_json(const std::string& text);

}  // namespace waterman
