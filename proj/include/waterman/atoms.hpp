#pragma once

#include <variant>
#include <vector>

namespace waterman {

/// Building blocks with closed-form trigonometric moments. All are
/// supported on a subinterval of (-pi, pi) and vanish outside it.

struct IndicatorAtom {
    double lo, hi;
};

/// Linear segment: y(lo) = y_lo, y(hi) = y_hi, zero outside (lo, hi).
struct RampAtom {
    double lo, hi;
    double y_lo, y_hi;
};

/// amp * sin(freq * t - phase) on (lo, hi), zero outside.
struct WindowedSineAtom {
    double lo, hi;
    double freq, phase, amp;
};

using TrigAtom = std::variant<IndicatorAtom, RampAtom, WindowedSineAtom>;

double atom_eval(const TrigAtom& atom, double t);
double atom_support_lo(const TrigAtom& atom);
double atom_support_hi(const TrigAtom& atom);

/// integral of atom(t) dt over its support.
double atom_mass(const TrigAtom& atom);

/// integral of atom(t) cos(j t) dt, j >= 1.
double atom_cosine_moment(const TrigAtom& atom, long long j);

/// integral of atom(t) sin(j t) dt, j >= 1.
double atom_sine_moment(const TrigAtom& atom, long long j);

/// Symmetric tent: 0 at c and d, 1 at the midpoint, linear in between.
std::vector<TrigAtom> tent_atoms(double c, double d);

double eval_atoms(const std::vector<TrigAtom>& atoms, double t);

}  // namespace waterman
