#include "waterman/variation.hpp"
#include <set>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "waterman/util.hpp"

namespace waterman {

namespace {

constexpr double kDeltaFloor = 1e-14;  // |f(I)| below this wastes a weight slot

struct Candidate {
    Interval iv;
    double delta = 0.0;
};

bool interval_less(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
}

bool witness_less(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].lo != b[i].lo) return a[i].lo < b[i].lo;
        if (a[i].hi != b[i].hi) return a[i].hi < b[i].hi;
    }
    return a.size() < b.size();
}

std::vector<double> clean_grid(std::vector<double> grid, const Interval& base) {
    if (grid.empty()) throw std::domain_error("variation: empty grid");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < base.lo - 1e-12 || grid.back() > base.hi + 1e-12)
        throw std::domain_error("variation: grid points outside base interval");
    return grid;
}

std::vector<Candidate> build_candidates(const Func1& f, const std::vector<double>& grid,
                                        std::size_t span_limit) {
    std::vector<double> fv(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) fv[i] = f(grid[i]);
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const std::size_t j_hi =
            span_limit == 0 ? grid.size() - 1 : std::min(grid.size() - 1, i + span_limit);
        for (std::size_t j = i + 1; j <= j_hi; ++j) {
            const double d = std::abs(fv[j] - fv[i]);
            if (d > kDeltaFloor) cands.push_back({{grid[i], grid[j]}, d});
        }
    }
    return cands;
}

struct Scored {
    double value = 0.0;
    std::vector<Interval> intervals;  // in weight-pairing order (desc |delta|)
    std::vector<double> deltas;
};

// Sorts a system into weight-pairing order and evaluates it.
Scored score_system(std::vector<Candidate> sys, const LambdaSequence& seq, std::size_t shift) {
    std::stable_sort(sys.begin(), sys.end(), [](const Candidate& a, const Candidate& b) {
        if (a.delta != b.delta) return a.delta > b.delta;
        return interval_less(a.iv, b.iv);
    });
    Scored s;
    s.deltas.reserve(sys.size());
    s.intervals.reserve(sys.size());
    for (const auto& c : sys) {
        s.deltas.push_back(c.delta);
        s.intervals.push_back(c.iv);
    }
    s.value = system_value_sorted(s.deltas, seq, shift);
    return s;
}

void consider(const Scored& cand, Scored& best) {
    if (cand.value > best.value ||
        (cand.value == best.value && witness_less(cand.intervals, best.intervals)))
        best = cand;
}

// Exhaustive enumeration of disjoint systems drawn from candidates
// (sorted by position); every node of the recursion is a system.
void enumerate_systems(const std::vector<Candidate>& cands, std::size_t start, double last_end,
                       std::vector<Candidate>& current, std::size_t max_intervals,
                       const LambdaSequence& seq, std::size_t shift, Scored& best) {
    if (!current.empty()) consider(score_system(current, seq, shift), best);
    if (current.size() >= max_intervals) return;
    for (std::size_t i = start; i < cands.size(); ++i) {
        if (cands[i].iv.lo < last_end) continue;  // open intervals may share endpoints
        current.push_back(cands[i]);
        enumerate_systems(cands, i + 1, cands[i].iv.hi, current, max_intervals, seq, shift, best);
        current.pop_back();
    }
}

bool overlaps(const Interval& a, const Interval& b) { return a.lo < b.hi && b.lo < a.hi; }

Scored greedy_with_local_search(std::vector<Candidate> cands, const LambdaSequence& seq,
                                std::size_t shift, const SearchBudget& budget) {
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.delta != b.delta) return a.delta > b.delta;
        return interval_less(a.iv, b.iv);
    });

    std::vector<Candidate> chosen;
    std::set<std::pair<double, double>> occupied;  // accepted intervals by lo
    auto disjoint_from_chosen = [&occupied](const Interval& iv) {
        auto it = occupied.lower_bound({iv.lo, -1e300});
        if (it != occupied.end() && it->first < iv.hi) return false;
        if (it != occupied.begin()) {
            --it;
            if (it->second > iv.lo) return false;
        }
        return true;
    };
    for (const auto& c : cands) {
        if (chosen.size() >= budget.max_intervals) break;
        if (disjoint_from_chosen(c.iv)) {
            chosen.push_back(c);
            occupied.emplace(c.iv.lo, c.iv.hi);
        }
    }
    Scored best = score_system(chosen, seq, shift);

    // Local search: force each of the strongest rejected candidates in,
    // dropping whatever overlaps, and keep strict improvements.
    const std::size_t probe_limit = std::min<std::size_t>(cands.size(), 512);
    for (int round = 0; round < budget.local_search_rounds; ++round) {
        bool improved = false;
        for (std::size_t i = 0; i < probe_limit; ++i) {
            const auto& c = cands[i];
            std::vector<Candidate> trial;
            trial.reserve(chosen.size() + 1);
            bool present = false;
            for (const auto& s : chosen) {
                if (s.iv.lo == c.iv.lo && s.iv.hi == c.iv.hi) present = true;
                if (!overlaps(c.iv, s.iv)) trial.push_back(s);
            }
            if (present) continue;
            trial.push_back(c);
            if (trial.size() > budget.max_intervals) {
                // The forced candidate displaced nothing; drop the weakest.
                std::stable_sort(trial.begin(), trial.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     if (a.delta != b.delta) return a.delta > b.delta;
                                     return interval_less(a.iv, b.iv);
                                 });
                trial.resize(budget.max_intervals);
            }
            // Refill from the top of the candidate list.
            for (const auto& r : cands) {
                if (trial.size() >= budget.max_intervals) break;
                bool ok = true;
                for (const auto& s : trial)
                    if (overlaps(r.iv, s.iv)) {
                        ok = false;
                        break;
                    }
                if (ok) trial.push_back(r);
            }
            Scored sc = score_system(trial, seq, shift);
            if (sc.value > best.value + 1e-15) {
                best = sc;
                chosen = trial;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return best;
}

}  // namespace

double system_value_sorted(const std::vector<double>& deltas, const LambdaSequence& seq,
                           std::size_t weight_shift) {
    // deltas must arrive sorted descending; ranks ascend with lambda.
    double v = 0.0;
    for (std::size_t r = 0; r < deltas.size(); ++r)
        v += deltas[r] / seq.weight(r + 1 + weight_shift);
    return v;
}

double symmetric_difference(const FuncM& f, const BoxInterval& box) {
    const std::size_t m = box.dims();
    if (m == 0) throw std::domain_error("symmetric_difference: empty box");
    for (const auto& ax : box.axes)
        if (!(ax.lo < ax.hi)) throw std::domain_error("symmetric_difference: degenerate axis");
    double sum = 0.0;
    std::vector<double> x(m);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        int lower = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (std::size_t{1} << j)) {
                x[j] = box.axes[j].lo;
                ++lower;
            } else {
                x[j] = box.axes[j].hi;
            }
        }
        sum += (lower % 2 == 0 ? 1.0 : -1.0) * f(x);
    }
    return sum;
}

VariationResult variation_1d(const Func1& f, const LambdaSequence& seq, Interval base,
                             std::vector<double> grid, const SearchBudget& budget,
                             std::size_t weight_shift) {
    if (budget.max_intervals < 1) throw std::domain_error("variation_1d: max_intervals >= 1");
    grid = clean_grid(std::move(grid), base);
    auto cands = build_candidates(f, grid, budget.candidate_span_limit);

    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return interval_less(a.iv, b.iv); });

    VariationResult res;
    Scored best;
    const bool exhaustive = grid.size() <= budget.exhaustive_grid_limit &&
                            budget.max_intervals <= budget.exhaustive_interval_limit;
    if (exhaustive) {
        std::vector<Candidate> current;
        enumerate_systems(cands, 0, -1e300, current, budget.max_intervals, seq, weight_shift, best);
        res.exact = true;
    } else {
        best = greedy_with_local_search(std::move(cands), seq, weight_shift, budget);
        res.exact = false;
    }

    res.value = best.value;
    res.witness.push_back(IntervalSystem{0, best.intervals});
    res.contributions.push_back(best.deltas);
    return res;
}

namespace {

// All disjoint systems of at most max_n intervals on one axis grid,
// intervals listed in ascending position order.
void axis_systems(const std::vector<double>& grid, std::size_t max_n,
                  std::vector<std::vector<Interval>>& out) {
    std::vector<Interval> cands;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) cands.push_back({grid[i], grid[j]});
    std::sort(cands.begin(), cands.end(), interval_less);
    std::vector<Interval> cur;
    std::function<void(std::size_t, double)> rec = [&](std::size_t start, double last_end) {
        if (!cur.empty()) out.push_back(cur);
        if (cur.size() >= max_n) return;
        for (std::size_t i = start; i < cands.size(); ++i) {
            if (cands[i].lo < last_end) continue;
            cur.push_back(cands[i]);
            rec(i + 1, cands[i].hi);
            cur.pop_back();
        }
    };
    rec(0, -1e300);
}

struct MultiEvalContext {
    const FuncM* f;
    std::size_t m;
    const MultiVariationSpec* spec;
    std::vector<double> section;  // one value per fixed axis
};

// |f(I^gamma, x^xi)| over every index tuple of the given systems.
std::vector<double> box_deltas(const MultiEvalContext& ctx,
                               const std::vector<std::vector<Interval>>& systems,
                               std::vector<std::size_t>& shape) {
    const auto& spec = *ctx.spec;
    shape.clear();
    std::size_t count = 1;
    for (const auto& s : systems) {
        shape.push_back(s.size());
        count *= s.size();
    }
    std::vector<double> deltas(count);
    std::vector<std::size_t> idx(systems.size(), 0);
    std::vector<double> x(ctx.m);
    for (std::size_t j = 0; j < spec.fixed_axes.size(); ++j)
        x[spec.fixed_axes[j]] = ctx.section[j];
    const std::size_t p = systems.size();
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rem = flat;
        for (std::size_t j = p; j-- > 0;) {
            idx[j] = rem % shape[j];
            rem /= shape[j];
        }
        // alternating corner sum over the gamma axes only
        double sum = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
            int lower = 0;
            for (std::size_t j = 0; j < p; ++j) {
                const Interval& iv = systems[j][idx[j]];
                if (mask & (std::size_t{1} << j)) {
                    x[spec.gamma[j]] = iv.lo;
                    ++lower;
                } else {
                    x[spec.gamma[j]] = iv.hi;
                }
            }
            sum += (lower % 2 == 0 ? 1.0 : -1.0) * (*ctx.f)(x);
        }
        deltas[flat] = std::abs(sum);
    }
    return deltas;
}

double eval_perm_assignment(const std::vector<double>& deltas,
                            const std::vector<std::size_t>& shape,
                            const std::vector<std::vector<std::size_t>>& rank,  // per axis: pos -> rank
                            const MultiVariationSpec& spec) {
    const std::size_t p = shape.size();
    double total = 0.0;
    std::vector<std::size_t> idx(p, 0);
    for (std::size_t flat = 0; flat < deltas.size(); ++flat) {
        std::size_t rem = flat;
        for (std::size_t j = p; j-- > 0;) {
            idx[j] = rem % shape[j];
            rem /= shape[j];
        }
        if (deltas[flat] <= kDeltaFloor) continue;
        double w = 1.0;
        for (std::size_t j = 0; j < p; ++j) {
            const std::size_t shift = spec.weight_shifts.empty() ? 0 : spec.weight_shifts[j];
            w *= spec.seqs[j].weight(rank[j][idx[j]] + 1 + shift);
        }
        total += deltas[flat] / w;
    }
    return total;
}

// Best weight order for fixed systems: exhaustive over per-axis
// permutations up to 6 intervals, else marginal-difference heuristic.
double best_ordering_value(const std::vector<double>& deltas, const std::vector<std::size_t>& shape,
                           const MultiVariationSpec& spec,
                           std::vector<std::vector<std::size_t>>* best_rank_out) {
    const std::size_t p = shape.size();
    std::vector<std::vector<std::size_t>> rank(p);
    bool exhaustive = true;
    for (std::size_t j = 0; j < p; ++j) {
        rank[j].resize(shape[j]);
        std::iota(rank[j].begin(), rank[j].end(), 0);
        if (shape[j] > 6) exhaustive = false;
    }

    if (!exhaustive) {
        // order each axis by its maximal marginal |f(I)|, descending
        for (std::size_t j = 0; j < p; ++j) {
            std::vector<double> marginal(shape[j], 0.0);
            std::vector<std::size_t> idx(p, 0);
            for (std::size_t flat = 0; flat < deltas.size(); ++flat) {
                std::size_t rem = flat;
                for (std::size_t q = p; q-- > 0;) {
                    idx[q] = rem % shape[q];
                    rem /= shape[q];
                }
                marginal[idx[j]] = std::max(marginal[idx[j]], deltas[flat]);
            }
            std::vector<std::size_t> order(shape[j]);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&marginal](std::size_t a, std::size_t b) {
                return marginal[a] > marginal[b];
            });
            for (std::size_t r = 0; r < order.size(); ++r) rank[j][order[r]] = r;
        }
        const double v = eval_perm_assignment(deltas, shape, rank, spec);
        if (best_rank_out) *best_rank_out = rank;
        return v;
    }

    double best = -1.0;
    std::vector<std::vector<std::size_t>> best_rank = rank;
    std::vector<std::vector<std::size_t>> perms(p);
    for (std::size_t j = 0; j < p; ++j) {
        perms[j].resize(shape[j]);
        std::iota(perms[j].begin(), perms[j].end(), 0);
    }
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == p) {
            const double v = eval_perm_assignment(deltas, shape, perms, spec);
            if (v > best) {
                best = v;
                best_rank = perms;
            }
            return;
        }
        std::sort(perms[j].begin(), perms[j].end());
        do {
            rec(j + 1);
        } while (std::next_permutation(perms[j].begin(), perms[j].end()));
    };
    rec(0);
    if (best_rank_out) *best_rank_out = best_rank;
    return best;
}

}  // namespace

VariationResult variation_multi(const FuncM& f, std::size_t m, const MultiVariationSpec& spec,
                                const SearchBudget& budget) {
    if (spec.gamma.empty()) throw std::domain_error("variation_multi: gamma must be nonempty");
    if (spec.gamma.size() != spec.seqs.size() || spec.gamma.size() != spec.grids.size())
        throw std::domain_error("variation_multi: per-axis data size mismatch");
    if (spec.fixed_axes.size() != spec.sections.size())
        throw std::domain_error("variation_multi: sections size mismatch");
    for (const auto& s : spec.sections)
        if (s.empty()) throw std::domain_error("variation_multi: empty section grid");

    const std::size_t p = spec.gamma.size();
    std::vector<std::vector<std::vector<Interval>>> per_axis(p);
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> g = spec.grids[j];
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        if (g.size() < 2) throw std::domain_error("variation_multi: grid needs >= 2 points");
        axis_systems(g, budget.max_intervals, per_axis[j]);
    }

    // All section combinations.
    std::vector<std::vector<double>> section_combos;
    {
        std::vector<double> cur(spec.fixed_axes.size());
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == spec.fixed_axes.size()) {
                section_combos.push_back(cur);
                return;
            }
            for (double v : spec.sections[j]) {
                cur[j] = v;
                rec(j + 1);
            }
        };
        rec(0);
    }

    VariationResult res;
    res.exact = true;
    for (std::size_t j = 0; j < p; ++j)
        if (spec.grids[j].size() > budget.exhaustive_grid_limit) res.exact = false;

    double best_value = 0.0;
    std::vector<std::vector<Interval>> best_systems(p);
    std::vector<std::vector<std::size_t>> best_rank;
    std::vector<double> best_deltas;
    std::vector<std::size_t> best_shape;

    for (const auto& section : section_combos) {
        MultiEvalContext ctx{&f, m, &spec, section};
        // Cartesian product over per-axis systems.
        std::vector<std::size_t> pick(p, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == p) {
                std::vector<std::vector<Interval>> systems(p);
                for (std::size_t q = 0; q < p; ++q) systems[q] = per_axis[q][pick[q]];
                std::vector<std::size_t> shape;
                const auto deltas = box_deltas(ctx, systems, shape);
                std::vector<std::vector<std::size_t>> rank;
                const double v = best_ordering_value(deltas, shape, spec, &rank);
                if (v > best_value) {
                    best_value = v;
                    best_systems = systems;
                    best_rank = rank;
                    best_deltas = deltas;
                    best_shape = shape;
                }
                return;
            }
            for (std::size_t i = 0; i < per_axis[j].size(); ++i) {
                pick[j] = i;
                rec(j + 1);
            }
        };
        rec(0);
    }

    res.value = best_value;
    for (std::size_t j = 0; j < p; ++j) {
        IntervalSystem sys;
        sys.axis = spec.gamma[j];
        // report intervals in weight order (rank 0 first)
        sys.intervals.resize(best_systems[j].size());
        std::vector<double> contrib(best_systems[j].size(), 0.0);
        for (std::size_t pos = 0; pos < best_systems[j].size(); ++pos)
            sys.intervals[best_rank.empty() ? pos : best_rank[j][pos]] = best_systems[j][pos];
        if (!best_deltas.empty()) {
            std::vector<std::size_t> idx(p, 0);
            for (std::size_t flat = 0; flat < best_deltas.size(); ++flat) {
                std::size_t rem = flat;
                for (std::size_t q = p; q-- > 0;) {
                    idx[q] = rem % best_shape[q];
                    rem /= best_shape[q];
                }
                const std::size_t r = best_rank.empty() ? idx[j] : best_rank[j][idx[j]];
                contrib[r] = std::max(contrib[r], best_deltas[flat]);
            }
        }
        res.witness.push_back(std::move(sys));
        res.contributions.push_back(std::move(contrib));
    }
    return res;
}

TotalVariationResult total_variation(const FuncM& f, std::size_t m,
                                     const std::vector<LambdaSequence>& seqs,
                                     const BoxInterval& box,
                                     const std::vector<std::vector<double>>& grids,
                                     const SearchBudget& budget) {
    if (seqs.size() != m || grids.size() != m || box.dims() != m)
        throw std::domain_error("total_variation: per-axis data size mismatch");
    if (m > 3) throw std::domain_error("total_variation: m <= 3 for the exhaustive subset sweep");

    TotalVariationResult out;
    KahanSum total;
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        MultiVariationSpec spec;
        for (std::size_t j = 0; j < m; ++j) {
            if (mask & (std::size_t{1} << j)) {
                spec.gamma.push_back(static_cast<int>(j));
                spec.seqs.push_back(seqs[j]);
                spec.grids.push_back(grids[j]);
            } else {
                spec.fixed_axes.push_back(static_cast<int>(j));
                spec.sections.push_back(grids[j]);
            }
        }
        auto r = variation_multi(f, m, spec, budget);
        total += r.value;
        out.by_subset.emplace(spec.gamma, std::move(r));
    }
    out.total = total.value();
    return out;
}

std::vector<std::pair<std::size_t, double>> tail_variation_probe(
    const Func1& f, const LambdaSequence& seq, Interval base, const std::vector<double>& grid,
    const std::vector<std::size_t>& n_list, const SearchBudget& budget) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::domain_error("tail_variation_probe: n_list must increase");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(n_list.size());
    for (std::size_t n : n_list)
        out.emplace_back(n, variation_1d(f, seq, base, grid, budget, n).value);
    return out;
}

}  // namespace waterman
