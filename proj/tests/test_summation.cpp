#include <stdexcept>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <doctest.h>

#include "waterman/summation.hpp"
#include "waterman/util.hpp"
#include "waterman/variation.hpp"

using namespace waterman;

namespace {

// Reference evaluation straight from the definition: weighted partial sums
// S_k with A^{alpha-1} weights. Quadratic cost, used only at small n.
double mean_from_partial_sums(const FourierData& f, int n, double alpha, double x) {
    const auto a = cesaro_coefficient_table(alpha, static_cast<std::size_t>(n));
    const auto w = cesaro_coefficient_table(alpha - 1.0, static_cast<std::size_t>(n));
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += w[n - k] * f.partial_sum(k, x);
    return s / a[n];
}

FourierData random_trig_poly(std::mt19937& rng, int deg) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(deg + 1), b(deg + 1);
    for (int j = 0; j <= deg; ++j) {
        a[j] = u(rng);
        b[j] = u(rng);
    }
    b[0] = 0.0;
    // padded: a polynomial's higher coefficients are exactly zero
    return FourierData::from_cosine_sine(a, b).zero_padded(256);
}

Func1 trig_poly_eval(const FourierData& f) {
    return [f](double x) { return f.partial_sum(f.n_max(), x); };
}

}  // namespace

TEST_CASE("cesaro mean of a raw series") {
    // a one-term series is reproduced for every order
    for (double alpha : {-0.5, 0.0, 1.0, 2.0})
        CHECK(cesaro_mean_series({1.0, 0.0, 0.0, 0.0}, 3, alpha) == doctest::Approx(1.0));
    // (C,0) is the plain partial sum
    CHECK(cesaro_mean_series({1.0, 2.0, 3.0}, 2, 0.0) == doctest::Approx(6.0));
    // (C,1) of (1,1,1) averages the partial sums: (1+2+3)/3
    CHECK(cesaro_mean_series({1.0, 1.0, 1.0}, 2, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(cesaro_mean_series({1.0}, 3, 0.0), std::domain_error);
}

TEST_CASE("constant function is reproduced exactly") {
    const auto one = FourierData::from_cosine_sine({2.0}, {0.0}).zero_padded(50);  // a0/2 = 1
    for (double alpha : {-0.9, -0.5, 0.0})
        for (int n : {1, 5, 50})
            CHECK(cesaro_mean_1d(one, n, alpha, 0.37) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cos x: partial sums reproduce, negative order overshoots") {
    const auto cosx = FourierData::from_cosine_sine({0.0, 1.0}, {0.0, 0.0}).zero_padded(2);
    for (double x : {0.0, 0.4, 2.0}) {
        CHECK(cesaro_mean_1d(cosx, 1, 0.0, x) == doctest::Approx(std::cos(x)).epsilon(1e-14));
        // n = 2, alpha = -1/2: weight A_1^{-1/2}/A_2^{-1/2} = (1/2)/(3/8) = 4/3
        CHECK(cesaro_mean_1d(cosx, 2, -0.5, x) ==
              doctest::Approx(4.0 / 3.0 * std::cos(x)).epsilon(1e-14));
    }
    // cross-check by kernel quadrature
    const Func1 f = [](double t) { return std::cos(t); };
    CHECK(cesaro_mean_1d_quadrature(f, 2, -0.5, 0.4, 1e-9) ==
          doctest::Approx(4.0 / 3.0 * std::cos(0.4)).epsilon(1e-8));
}

TEST_CASE("closed-form coefficient route equals the partial-sum definition") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 5; ++rep) {
        const auto f = random_trig_poly(rng, 12);
        for (double alpha : {-0.7, -0.2, 0.5})
            for (int n : {3, 12, 25})
                CHECK(cesaro_mean_1d(f, n, alpha, 0.3) ==
                      doctest::Approx(mean_from_partial_sums(f, n, alpha, 0.3)).epsilon(1e-11));
    }
}

TEST_CASE("pathway agreement on random trigonometric polynomials") {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        const auto poly = random_trig_poly(rng, 16);
        const auto f = trig_poly_eval(poly);
        for (double alpha : {-0.5, 0.0})
            for (int n : {8, 32}) {
                const double by_coeff = cesaro_mean_1d(poly, n, alpha, 0.9);
                const double by_quad = cesaro_mean_1d_quadrature(f, n, alpha, 0.9, 1e-8);
                CHECK(std::abs(by_coeff - by_quad) <= 1e-6);
            }
    }
}

TEST_CASE("linearity of the mean") {
    std::mt19937 rng(3);
    const auto f = random_trig_poly(rng, 10);
    const auto g = random_trig_poly(rng, 10);
    std::vector<std::complex<double>> mix;
    for (int k = -10; k <= 10; ++k) mix.push_back(2.5 * f.coeff(k) - 1.25 * g.coeff(k));
    const auto h = FourierData::from_coefficients(std::move(mix));
    const double direct = cesaro_mean_1d(h, 8, -0.4, 1.1);
    const double split = 2.5 * cesaro_mean_1d(f, 8, -0.4, 1.1) - 1.25 * cesaro_mean_1d(g, 8, -0.4, 1.1);
    CHECK(direct == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("(C,0) means equal rectangular partial sums") {
    std::mt19937 rng(13);
    const auto f = random_trig_poly(rng, 20);
    for (int n : {0, 5, 20})
        CHECK(cesaro_mean_1d(f, n, 0.0, -0.7) ==
              doctest::Approx(f.partial_sum(n, -0.7)).epsilon(1e-13));
}

TEST_CASE("numeric coefficients: smooth trapezoid and piecewise panels") {
    // smooth: recovers a trig polynomial to rounding
    const auto exact = FourierData::from_cosine_sine({0.1, 0.0, 1.0}, {0.0, 0.0, -0.5});
    const auto f = trig_poly_eval(exact);
    const auto numeric = FourierData::from_function(f, 6);
    for (int k = -6; k <= 6; ++k)
        CHECK(std::abs(numeric.coeff(k) - (std::abs(k) <= 2 ? exact.coeff(k) : 0.0)) < 1e-12);
    CHECK(numeric.conjugate_symmetry_defect() < 1e-10);
    CHECK(numeric.coefficient_error_estimate() < 1e-10);

    // breakpoint path: sawtooth sine coefficients are 2/(pi j)
    const auto saw = FourierData::from_function([](double t) { return sawtooth_jump(t); }, 16, {0.0});
    for (int j = 1; j <= 16; ++j) {
        CHECK(std::abs(saw.coeff(j).imag() - (-1.0 / (kPi * j))) < 1e-9);  // c_j = -i b_j / 2
        CHECK(std::abs(saw.coeff(j).real()) < 1e-9);
    }
}

TEST_CASE("atom coefficients match numerical integration") {
    const auto atoms = tent_atoms(0.25, 0.5);
    const auto exact = FourierData::from_atoms(atoms, 12);
    const auto numeric = FourierData::from_function(
        [&atoms](double t) { return eval_atoms(atoms, t); }, 12, {0.25, 0.375, 0.5});
    for (int k = -12; k <= 12; ++k) CHECK(std::abs(exact.coeff(k) - numeric.coeff(k)) < 1e-9);
}

TEST_CASE("atom mean at zero equals the coefficient route") {
    const auto atoms = tent_atoms(0.25, 0.5);
    CesaroTable table(-0.3, 64);
    const auto data = FourierData::from_atoms(atoms, 64);
    CHECK(cesaro_mean_atoms(table, 64, atoms) ==
          doctest::Approx(cesaro_mean_1d(data, table, 64, 0.0)).epsilon(1e-12));
}

TEST_CASE("multidimensional means: separable data factorize") {
    const auto u = FourierData::from_cosine_sine({0.4, 1.0}, {0.0, 0.0}).zero_padded(4);
    const auto v = FourierData::from_cosine_sine({1.0, 0.0, 0.3}, {0.0, 0.0, 0.2}).zero_padded(4);
    const auto sep = MultiFourierData::separable({u, v});
    const CesaroOrder order({-0.3, -0.5});
    const std::vector<double> x{0.3, -1.0};
    const double lhs = cesaro_mean_multi(sep, {4, 4}, order, x);
    const double rhs =
        cesaro_mean_1d(u, 4, -0.3, 0.3) * cesaro_mean_1d(v, 4, -0.5, -1.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // dense tensor of the same product agrees with the separable route
    const FuncM prod = [&](const std::vector<double>& p) {
        return u.partial_sum(1, p[0]) * v.partial_sum(2, p[1]);
    };
    const auto tensor = MultiFourierData::tensor_from_function(prod, {4, 4}, 64);
    CHECK(cesaro_mean_multi(tensor, {4, 4}, order, x) == doctest::Approx(lhs).epsilon(1e-8));
}

TEST_CASE("multidimensional mean of the constant is 1") {
    std::vector<FourierData> axes(3, FourierData::from_cosine_sine({2.0}, {0.0}).zero_padded(4));
    const auto one = MultiFourierData::separable(std::move(axes));
    CHECK(cesaro_mean_multi(one, {2, 3, 4}, CesaroOrder({-0.3, -0.3, -0.3}), {0.0, 0.0, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("localization for smooth data vanishing near the point") {
    // smooth bump supported on [1, 3] in each axis; zero near the origin
    const Func1 bump = [](double t) {
        const double u = (t - 2.0);
        if (std::abs(u) >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - u * u));
    };
    const auto axis_data = FourierData::from_function(bump, 64);
    const CesaroOrder order({-0.3, -0.3, -0.3});
    std::vector<double> mags;
    for (int n : {16, 32, 64}) {
        const double mean_1d = cesaro_mean_1d(axis_data, n, -0.3, 0.0);
        mags.push_back(std::abs(mean_1d * mean_1d * mean_1d));  // separable cube
    }
    CHECK(mags[2] < mags[0]);
    CHECK(mags[2] < 1e-4);
}

TEST_CASE("pringsheim probe: trig polynomial locks at (C,0)") {
    const auto poly = FourierData::from_cosine_sine({0.2, 0.5, 0.0, 0.0, -0.3},
                                                    {0.0, 0.0, 0.1, 0.0, 0.0})
                          .zero_padded(64);
    const auto data = MultiFourierData::separable({poly, poly});
    const CesaroOrder order({0.0, 0.0});
    std::vector<std::vector<int>> schedule;
    for (int n = 4; n <= 64; n *= 2) schedule.push_back({n, n});
    const auto rep = pringsheim_probe(data, order, {0.5, 0.5}, schedule);
    CHECK(rep.rows.size() == 5);
    CHECK(rep.tail_oscillation <= 1e-12);

    // anisotropic schedule on a constant: all entries exactly 1
    std::vector<FourierData> axes(2, FourierData::from_cosine_sine({2.0}, {0.0}).zero_padded(256));
    const auto one = MultiFourierData::separable(std::move(axes));
    std::vector<std::vector<int>> aniso;
    for (int n = 2; n <= 256; n *= 4) aniso.push_back({n, 2});
    const auto rep1 = pringsheim_probe(one, order, {0.0, 0.0}, aniso);
    for (const auto& row : rep1.rows) CHECK(row.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep1.tail_oscillation <= 1e-12);
}

TEST_CASE("fstar averages the one-sided limits") {
    CHECK(fstar({3.25}) == 3.25);
    CHECK(fstar({0.0, 1.0}) == 0.5);
    CHECK(fstar({0.0, 0.0, 0.0, 4.0}) == 1.0);
    CHECK(fstar({2.0, 2.0, 2.0, 2.0}) == 2.0);
    CHECK_THROWS_AS(fstar({1.0, 2.0, 3.0}), std::domain_error);
    CHECK_THROWS_AS(fstar({}), std::domain_error);
}

TEST_CASE("oscillatory integral bound: basics") {
    const auto seq = LambdaSequence::harmonic();
    const Func1 zero = [](double) { return 0.0; };
    const Func1 sine = [](double t) { return std::sin(t); };
    auto r = oscillatory_integral_bound(zero, seq, 0.0, kPi, sine, 8.0, 1.0, 0.0, 0.0);
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.ok);

    // f == 1: the integral decays like 1/A, matching the sup term
    const Func1 one = [](double) { return 1.0; };
    r = oscillatory_integral_bound(one, seq, 0.0, kPi, sine, 8.5, 2.5, 0.0, 1.0);
    CHECK(r.lhs == doctest::Approx((1.0 - std::cos(8.5 * kPi)) / 8.5).epsilon(1e-7));
    CHECK(r.ok);
    CHECK(r.kappa == doctest::Approx(1.0));
    CHECK(r.lambda_index == 7);
}

TEST_CASE("oscillatory integral bound: modulator contract is enforced") {
    const auto seq = LambdaSequence::harmonic();
    const Func1 f = [](double t) { return t; };
    const Func1 not_antiperiodic = [](double t) { return std::sin(2.0 * t); };
    CHECK_THROWS_AS(
        oscillatory_integral_bound(f, seq, 0.0, kPi, not_antiperiodic, 8.0, 1.0, kPi, kPi),
        std::domain_error);
    const Func1 too_big = [](double t) { return 1.5 * std::sin(t); };
    CHECK_THROWS_AS(oscillatory_integral_bound(f, seq, 0.0, kPi, too_big, 8.0, 1.0, kPi, kPi),
                    std::domain_error);
    const Func1 sine = [](double t) { return std::sin(t); };
    CHECK_THROWS_AS(oscillatory_integral_bound(f, seq, 0.0, kPi, sine, 1.0, 1.0, kPi, kPi),
                    std::domain_error);
}

TEST_CASE("oscillatory integral sweep stays bounded for f(t) = t") {
    const auto seq = LambdaSequence::harmonic();
    const Func1 f = [](double t) { return t; };
    const Func1 sine = [](double t) { return std::sin(t); };
    double q_small = 0.0, q_large = 0.0;
    for (double A : {4.0, 8.0, 16.0, 64.0, 128.0, 256.0}) {
        const auto r = oscillatory_integral_bound(f, seq, 0.0, kPi, sine, A, 1.0, kPi, kPi);
        const double q = r.lhs / r.rhs;
        if (A <= 16.0) q_small = std::max(q_small, q);
        if (A >= 64.0) q_large = std::max(q_large, q);
    }
    CHECK(q_small > 0.0);
    CHECK(q_large <= 2.0 * q_small);
}

TEST_CASE("sawtooth jump: odd symmetry makes every mean at 0 exact") {
    const auto data = sawtooth_jump_data(512);
    CHECK(fstar({sawtooth_jump(1e-9), sawtooth_jump(-1e-9)}) ==
          doctest::Approx(0.0).epsilon(1e-8));
    for (int n : {8, 64, 512}) CHECK(cesaro_mean_1d(data, n, -0.5, 0.0) == 0.0);

    // at a continuity point the means do converge with a visible error decay
    const double x = 1.0;
    const double err_lo = std::abs(cesaro_mean_1d(data, 8, -0.5, x) - sawtooth_jump(x));
    const double err_hi = std::abs(cesaro_mean_1d(data, 512, -0.5, x) - sawtooth_jump(x));
    CHECK(err_hi < err_lo);
    CHECK(err_hi < 0.05);
}
