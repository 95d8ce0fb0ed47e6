#include "waterman/atoms.hpp"

#include <cmath>
#include <stdexcept>

namespace waterman {

namespace {

// int_a^b sin(w t - phase) dt, stable as w -> 0.
double int_sin(double w, double phase, double a, double b) {
    if (std::abs(w) < 1e-9) return std::sin(-phase) * (b - a);
    return (std::cos(w * a - phase) - std::cos(w * b - phase)) / w;
}

// int_a^b cos(w t - phase) dt, stable as w -> 0.
double int_cos(double w, double phase, double a, double b) {
    if (std::abs(w) < 1e-9) return std::cos(phase) * (b - a);
    return (std::sin(w * b - phase) - std::sin(w * a - phase)) / w;
}

}  // namespace

double atom_eval(const TrigAtom& atom, double t) {
    // half-open support [lo, hi): adjacent pieces meeting at a point sum
    // to a single contribution there (tent peak evaluates to 1)
    return std::visit(
        [t](const auto& a) -> double {
            using T = std::decay_t<decltype(a)>;
            if (t < a.lo || t >= a.hi) return 0.0;
            if constexpr (std::is_same_v<T, IndicatorAtom>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, RampAtom>) {
                return a.y_lo + (a.y_hi - a.y_lo) * (t - a.lo) / (a.hi - a.lo);
            } else {
                return a.amp * std::sin(a.freq * t - a.phase);
            }
        },
        atom);
}

double atom_support_lo(const TrigAtom& atom) {
    return std::visit([](const auto& a) { return a.lo; }, atom);
}

double atom_support_hi(const TrigAtom& atom) {
    return std::visit([](const auto& a) { return a.hi; }, atom);
}

double atom_mass(const TrigAtom& atom) {
    return std::visit(
        [](const auto& a) -> double {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, IndicatorAtom>) {
                return a.hi - a.lo;
            } else if constexpr (std::is_same_v<T, RampAtom>) {
                return 0.5 * (a.y_lo + a.y_hi) * (a.hi - a.lo);
            } else {
                return a.amp * int_sin(a.freq, a.phase, a.lo, a.hi);
            }
        },
        atom);
}

double atom_cosine_moment(const TrigAtom& atom, long long j) {
    if (j < 1) throw std::domain_error("atom_cosine_moment: j >= 1 required");
    const double dj = static_cast<double>(j);
    return std::visit(
        [dj](const auto& a) -> double {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, IndicatorAtom>) {
                return (std::sin(dj * a.hi) - std::sin(dj * a.lo)) / dj;
            } else if constexpr (std::is_same_v<T, RampAtom>) {
                const double slope = (a.y_hi - a.y_lo) / (a.hi - a.lo);
                return (a.y_hi * std::sin(dj * a.hi) - a.y_lo * std::sin(dj * a.lo)) / dj +
                       slope * (std::cos(dj * a.hi) - std::cos(dj * a.lo)) / (dj * dj);
            } else {
                // product-to-sum: sin(u)cos(v) = (sin(u+v) + sin(u-v)) / 2
                return 0.5 * a.amp *
                       (int_sin(a.freq + dj, a.phase, a.lo, a.hi) +
                        int_sin(a.freq - dj, a.phase, a.lo, a.hi));
            }
        },
        atom);
}

double atom_sine_moment(const TrigAtom& atom, long long j) {
    if (j < 1) throw std::domain_error("atom_sine_moment: j >= 1 required");
    const double dj = static_cast<double>(j);
    return std::visit(
        [dj](const auto& a) -> double {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, IndicatorAtom>) {
                return (std::cos(dj * a.lo) - std::cos(dj * a.hi)) / dj;
            } else if constexpr (std::is_same_v<T, RampAtom>) {
                const double slope = (a.y_hi - a.y_lo) / (a.hi - a.lo);
                return (a.y_lo * std::cos(dj * a.lo) - a.y_hi * std::cos(dj * a.hi)) / dj +
                       slope * (std::sin(dj * a.hi) - std::sin(dj * a.lo)) / (dj * dj);
            } else {
                // sin(u)sin(v) = (cos(u-v) - cos(u+v)) / 2
                return 0.5 * a.amp *
                       (int_cos(a.freq - dj, a.phase, a.lo, a.hi) -
                        int_cos(a.freq + dj, a.phase, a.lo, a.hi));
            }
        },
        atom);
}

std::vector<TrigAtom> tent_atoms(double c, double d) {
    if (!(0.0 < c && c < d)) throw std::domain_error("tent: 0 < c < d required");
    const double mid = 0.5 * (c + d);
    return {RampAtom{c, mid, 0.0, 1.0}, RampAtom{mid, d, 1.0, 0.0}};
}

double eval_atoms(const std::vector<TrigAtom>& atoms, double t) {
    double v = 0.0;
    for (const auto& a : atoms) v += atom_eval(a, t);
    return v;
}

}  // namespace waterman
