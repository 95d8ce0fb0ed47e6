#pragma once

#include <functional>
#include <map>
#include <vector>

#include "waterman/sequences.hpp"

namespace waterman {

/// Open interval (lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Axis-parallel box of open intervals.
struct BoxInterval {
    std::vector<Interval> axes;
    std::size_t dims() const { return axes.size(); }
};

using Func1 = std::function<double(double)>;
using FuncM = std::function<double(const std::vector<double>&)>;

/// m-fold alternating corner sum over the box: the all-upper corner enters
/// with +, each lower coordinate flips the sign.
double symmetric_difference(const FuncM& f, const BoxInterval& box);

/// Ordered system of pairwise disjoint open intervals on one axis.
/// Position k pairs with weight lambda_{k+1} (plus any tail shift).
struct IntervalSystem {
    int axis = 0;
    std::vector<Interval> intervals;
};

struct VariationResult {
    double value = 0.0;
    std::vector<IntervalSystem> witness;           // one system per target axis
    std::vector<std::vector<double>> contributions;  // per-interval |f(I)| info
    bool exact = false;                             // exhaustive over the grid
};

struct SearchBudget {
    std::size_t max_intervals = 4;
    std::size_t exhaustive_grid_limit = 14;
    std::size_t exhaustive_interval_limit = 4;
    /// Candidate endpoints at most this many grid steps apart (0 = all pairs).
    std::size_t candidate_span_limit = 0;
    int local_search_rounds = 64;
};

/// Grid-restricted lower bound of the 1-D Lambda-variation of f over base.
/// Weight assignment is sorted: largest |f(I)| pairs with smallest lambda.
/// weight_shift n replaces lambda_k by lambda_{k+n} (tail variation).
VariationResult variation_1d(const Func1& f, const LambdaSequence& seq, Interval base,
                             std::vector<double> grid, const SearchBudget& budget = {},
                             std::size_t weight_shift = 0);

/// Multi-axis variation request: target axes gamma with their weight
/// sequences and endpoint grids; remaining axes are fixed to section values
/// (the result maximizes over all listed section combinations).
struct MultiVariationSpec {
    std::vector<int> gamma;                       // 0-based target axes, ascending
    std::vector<LambdaSequence> seqs;             // per gamma axis
    std::vector<std::vector<double>> grids;       // per gamma axis
    std::vector<int> fixed_axes;                  // complement of gamma, ascending
    std::vector<std::vector<double>> sections;    // candidate values per fixed axis
    std::vector<std::size_t> weight_shifts;       // per gamma axis; empty = all zero
};

VariationResult variation_multi(const FuncM& f, std::size_t m, const MultiVariationSpec& spec,
                                const SearchBudget& budget = {});

struct TotalVariationResult {
    std::map<std::vector<int>, VariationResult> by_subset;
    double total = 0.0;
};

/// Sum of subset variations over all nonempty gamma (2^m - 1 of them).
/// Fixed axes are maximized over their own grids.
TotalVariationResult total_variation(const FuncM& f, std::size_t m,
                                     const std::vector<LambdaSequence>& seqs,
                                     const BoxInterval& box,
                                     const std::vector<std::vector<double>>& grids,
                                     const SearchBudget& budget = {});

/// Tail-shifted 1-D variations: entry (n, value) recomputes the search with
/// interval k paired to lambda_{k+n}. Numerical probe for continuity in
/// variation.
std::vector<std::pair<std::size_t, double>> tail_variation_probe(
    const Func1& f, const LambdaSequence& seq, Interval base, const std::vector<double>& grid,
    const std::vector<std::size_t>& n_list, const SearchBudget& budget = {});

/// Value of a fixed interval system under sorted weight pairing; shared by
/// the search and by recomputation from witnesses.
double system_value_sorted(const std::vector<double>& deltas, const LambdaSequence& seq,
                           std::size_t weight_shift = 0);

}  // namespace waterman
