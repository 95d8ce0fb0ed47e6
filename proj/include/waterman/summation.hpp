#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "waterman/atoms.hpp"
#include "waterman/kernels.hpp"
#include "waterman/sequences.hpp"
#include "waterman/variation.hpp"

namespace waterman {

/// Fourier coefficients c_k, |k| <= n_max, of a 2pi-periodic function.
class FourierData {
public:
    /// coeffs laid out as c_{-K}..c_{K}; size fixes K.
    static FourierData from_coefficients(std::vector<std::complex<double>> coeffs);

    /// Real trigonometric form: a[j], j = 0..K and b[j], j = 1..K
    /// (b[0] is ignored); f = a0/2 + sum a_j cos(jx) + b_j sin(jx).
    static FourierData from_cosine_sine(const std::vector<double>& a,
                                        const std::vector<double>& b);

    /// Trapezoidal coefficients on `samples` points (spectrally accurate for
    /// smooth f); handles with declared breakpoints get per-piece panels.
    static FourierData from_function(const Func1& f, int n_max,
                                     const std::vector<double>& breakpoints = {},
                                     std::size_t samples = 8192);

    /// Exact coefficients of a piecewise-trigonometric atom sum.
    static FourierData from_atoms(const std::vector<TrigAtom>& atoms, int n_max);

    int n_max() const { return K_; }
    std::complex<double> coeff(int k) const;
    double partial_sum(int k, double x) const;  // S_k(f, x)

    /// Same data declared complete to a higher order (trigonometric
    /// polynomials have exact zeros beyond their degree).
    FourierData zero_padded(int new_n_max) const;

    /// max_k |c_{-k} - conj(c_k)|; should vanish for real-valued data.
    double conjugate_symmetry_defect() const;

    /// Difference against a coarser sample count (set by from_function).
    double coefficient_error_estimate() const { return coeff_err_; }

private:
    explicit FourierData(std::vector<std::complex<double>> coeffs);
    int K_;
    std::vector<std::complex<double>> c_;  // index k + K_
    double coeff_err_ = 0.0;
};

/// (C,alpha) mean of a numerical series with terms u_0..u_n:
/// sum_k (A_{n-k}^alpha / A_n^alpha) u_k.
double cesaro_mean_series(const std::vector<double>& terms, int n, double alpha);

/// (C,alpha) mean of the Fourier series at x, computed from coefficients
/// weighted by A_{n-|k|}^alpha / A_n^alpha (the weighted-partial-sum
/// pathway, summed in closed form).
double cesaro_mean_1d(const FourierData& f, int n, double alpha, double x);

/// Same via the coefficient table (no re-tabulation per call).
double cesaro_mean_1d(const FourierData& f, const CesaroTable& table, int n, double x);

/// Independent pathway: sigma_n^alpha(f, x) = (1/pi) int f(x+t) K_n^alpha(t) dt
/// by graded panel quadrature of the kernel.
double cesaro_mean_1d_quadrature(const Func1& f, int n, double alpha, double x, double tol,
                                 const std::vector<double>& f_breakpoints = {});

/// sigma_n^alpha(f, 0) for an atom sum, via exact trigonometric moments.
double cesaro_mean_atoms(const CesaroTable& table, std::size_t n,
                         const std::vector<TrigAtom>& atoms);

/// Rectangular multidimensional Fourier data: either a dense coefficient
/// tensor or a separable product of per-axis 1-D data.
class MultiFourierData {
public:
    static MultiFourierData tensor(std::vector<int> n_max, std::vector<std::complex<double>> c);
    static MultiFourierData separable(std::vector<FourierData> axes);
    static MultiFourierData tensor_from_function(const FuncM& f, std::vector<int> n_max,
                                                 std::size_t samples_per_axis = 256);

    bool is_separable() const { return !axes_.empty(); }
    std::size_t dims() const;
    const std::vector<int>& n_max() const { return n_max_; }
    const std::vector<FourierData>& axes() const { return axes_; }
    std::complex<double> coeff(const std::vector<int>& k) const;

private:
    MultiFourierData() = default;
    std::vector<int> n_max_;
    std::vector<std::complex<double>> c_;  // dense tensor, row-major
    std::vector<FourierData> axes_;        // separable representation
};

/// Rectangular (C,alpha-vector) mean at x.
double cesaro_mean_multi(const MultiFourierData& f, const std::vector<int>& nvec,
                         const CesaroOrder& order, const std::vector<double>& x);

struct PringsheimRow {
    std::vector<int> nvec;
    double mean = 0.0;
};

struct PringsheimReport {
    std::vector<PringsheimRow> rows;
    /// max - min of the means over the tail half of the schedule
    double tail_oscillation = 0.0;
};

PringsheimReport pringsheim_probe(const MultiFourierData& f, const CesaroOrder& order,
                                  const std::vector<double>& x,
                                  const std::vector<std::vector<int>>& schedule);

/// Average of the 2^m one-sided limits at a regular point.
double fstar(const std::vector<double>& limits);

struct OscillatoryBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
    double kappa = 0.0;
    std::size_t lambda_index = 0;  // floor(kappa * A) - 1
};

/// Checks |int_a^b f(t) s(At) dt| <= C_test (V_f / Lambda(floor(kA)-1) + sup_f / A)
/// for an antiperiodic modulator s (s(t+pi) = -s(t), |s| <= 1, verified on
/// samples). V_f and sup_f are supplied by the caller.
OscillatoryBoundCheck oscillatory_integral_bound(const Func1& f, const LambdaSequence& seq,
                                                 double a, double b, const Func1& s, double A,
                                                 double C_test, double V_f, double sup_f,
                                                 const std::vector<double>& f_breakpoints = {},
                                                 double tol = 1e-9);

/// The fixed jump test function sign(x)(1 - |x|/pi): a sawtooth with a
/// regular point at 0 and f*(0) = 0. Coefficients are known exactly.
double sawtooth_jump(double x);
FourierData sawtooth_jump_data(int n_max);

}  // namespace waterman
