#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "waterman/counterexample.hpp"
#include "waterman/kernels.hpp"
#include "waterman/sequences.hpp"
#include "waterman/summation.hpp"
#include "waterman/util.hpp"
#include "waterman/variation.hpp"

namespace py = pybind11;
using namespace waterman;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Waterman-variation and Cesaro-summability toolkit";
    m.attr("__version__") = kToolkitVersion;

    py::register_exception<QuadratureError>(m, "QuadratureError");
    py::register_exception<ThresholdError>(m, "ThresholdError");

    py::class_<LambdaSequence>(m, "LambdaSequence")
        .def_static("harmonic", &LambdaSequence::harmonic)
        .def_static("power", &LambdaSequence::power, py::arg("beta"))
        .def_static("explicit_weights", &LambdaSequence::explicit_weights, py::arg("weights"))
        .def("weight", &LambdaSequence::weight, py::arg("k"))
        .def("partial_sum", &LambdaSequence::partial_sum, py::arg("N"))
        .def("divergence_guaranteed", &LambdaSequence::divergence_guaranteed)
        .def("__repr__", [](const LambdaSequence& s) { return "LambdaSequence(" + s.describe() + ")"; });

    m.def("cesaro_coeff", &cesaro_coeff, py::arg("n"), py::arg("alpha"),
          "A_n^alpha by the multiplicative recurrence");

    m.def(
        "check_reciprocal_product",
        [](const std::vector<LambdaSequence>& axes) {
            const auto r = check_reciprocal_product(axes);
            return py::make_tuple(r.convergent, r.rigorous, r.rule);
        },
        py::arg("tail_axes"), "(convergent, rigorous, rule) for sum 1/(lambda^2...lambda^m)");

    m.def("dirichlet", &dirichlet_kernel, py::arg("k"), py::arg("t"));

    py::class_<KernelEval>(m, "KernelEval")
        .def_readonly("n", &KernelEval::n)
        .def_readonly("alpha", &KernelEval::alpha)
        .def_readonly("t", &KernelEval::t)
        .def_readonly("value", &KernelEval::value)
        .def_readonly("main_term", &KernelEval::main_term)
        .def_readonly("remainder", &KernelEval::remainder);

    m.def(
        "cesaro_kernel",
        [](int n, double alpha, double t) {
            CesaroKernel k(n, alpha);
            return k.eval(t);
        },
        py::arg("n"), py::arg("alpha"), py::arg("t"));

    m.def("kernel_integral", &kernel_integral, py::arg("n"), py::arg("alpha"), py::arg("a"),
          py::arg("b"), py::arg("tol") = 1e-8);

    m.def(
        "estimate_kernel_bound",
        [](double alpha, std::size_t n_min, std::size_t n_max, std::size_t n_count,
           std::size_t t_count) {
            const auto e = estimate_kernel_bound(alpha, n_min, n_max, n_count, t_count);
            py::dict d;
            d["alpha"] = e.alpha;
            d["B_hat"] = e.B_hat;
            d["max_quotient"] = e.max_quotient;
            d["argmax_n"] = e.argmax_n;
            d["argmax_t"] = e.argmax_t;
            d["sample_grid"] = e.sample_grid;
            return d;
        },
        py::arg("alpha"), py::arg("n_min") = 16, py::arg("n_max") = 1024, py::arg("n_count") = 16,
        py::arg("t_count") = 512);

    m.def("cesaro_mean_series", &cesaro_mean_series, py::arg("terms"), py::arg("n"),
          py::arg("alpha"));

    py::class_<FourierData>(m, "FourierData")
        .def_static("from_coefficients", &FourierData::from_coefficients, py::arg("coeffs"))
        .def_static("from_cosine_sine", &FourierData::from_cosine_sine, py::arg("a"), py::arg("b"))
        .def_static(
            "from_function",
            [](const std::function<double(double)>& f, int n_max,
               const std::vector<double>& breakpoints) {
                return FourierData::from_function(f, n_max, breakpoints);
            },
            py::arg("f"), py::arg("n_max"), py::arg("breakpoints") = std::vector<double>{})
        .def("zero_padded", &FourierData::zero_padded, py::arg("n_max"))
        .def("coeff", &FourierData::coeff, py::arg("k"))
        .def("partial_sum", &FourierData::partial_sum, py::arg("k"), py::arg("x"))
        .def_property_readonly("n_max", &FourierData::n_max)
        .def(
            "mean",
            [](const FourierData& f, int n, double alpha, double x) {
                return cesaro_mean_1d(f, n, alpha, x);
            },
            py::arg("n"), py::arg("alpha"), py::arg("x"),
            "(C,alpha) mean of the Fourier series at x");

    m.def(
        "cesaro_mean_quadrature",
        [](const std::function<double(double)>& f, int n, double alpha, double x, double tol) {
            return cesaro_mean_1d_quadrature(f, n, alpha, x, tol);
        },
        py::arg("f"), py::arg("n"), py::arg("alpha"), py::arg("x"), py::arg("tol") = 1e-8,
        "independent kernel-quadrature pathway");

    m.def("fstar", &fstar, py::arg("limits"), "average of the 2^m one-sided limits");

    m.def("sawtooth_jump", &sawtooth_jump, py::arg("x"));

    m.def(
        "symmetric_difference",
        [](const std::function<double(const std::vector<double>&)>& f,
           const std::vector<double>& lo, const std::vector<double>& hi) {
            BoxInterval box;
            for (std::size_t j = 0; j < lo.size(); ++j) box.axes.push_back({lo[j], hi[j]});
            return symmetric_difference(f, box);
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"));

    m.def(
        "variation_1d",
        [](const std::function<double(double)>& f, const LambdaSequence& seq, double base_lo,
           double base_hi, const std::vector<double>& grid, int max_intervals) {
            SearchBudget budget;
            budget.max_intervals = static_cast<std::size_t>(max_intervals);
            const auto r = variation_1d(f, seq, {base_lo, base_hi}, grid, budget);
            std::vector<std::pair<double, double>> witness;
            for (const auto& iv : r.witness[0].intervals) witness.emplace_back(iv.lo, iv.hi);
            return py::make_tuple(r.value, r.exact, witness);
        },
        py::arg("f"), py::arg("seq"), py::arg("base_lo"), py::arg("base_hi"), py::arg("grid"),
        py::arg("max_intervals") = 4,
        "(value, exact, witness) of the grid-restricted variation search");

    m.def(
        "build_diagonal",
        [](int m_dims, const std::vector<double>& alphas, int depth, long long cap) {
            BuildOptions opts;
            opts.m = m_dims;
            opts.alphas = alphas;
            opts.depth = depth;
            opts.cap = cap;
            return diagonal_to_json(build_diagonal(opts));
        },
        py::arg("m") = 3, py::arg("alphas") = std::vector<double>{-0.3, -0.3, -0.3},
        py::arg("depth") = 2, py::arg("cap") = (1LL << 20),
        "runs the inductive construction; returns the spec as JSON");

    m.def(
        "verify_diagonal",
        [](const std::string& json_text, int stage) {
            const auto spec = diagonal_from_json(json_text);
            const auto chk = verify_stage(spec, stage);
            py::dict d;
            d["ok"] = chk.ok;
            d["failures"] = chk.failures;
            d["sigma_f"] = chk.sigma_f;
            d["sigma_h"] = chk.sigma_h;
            d["sigma_psi"] = chk.sigma_psi;
            d["sigma_g"] = chk.sigma_g;
            d["assembled_sigma"] = chk.assembled_sigma;
            d["truncation_allowance"] = chk.truncation_allowance;
            d["final_gap"] = chk.final_gap;
            return d;
        },
        py::arg("json_text"), py::arg("stage"),
        "recomputes the certificates of one stage from a serialized spec");
}
