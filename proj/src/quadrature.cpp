#include "waterman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "waterman/util.hpp"

namespace waterman {
namespace {

// 10-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[5] = {0.14887433898163121, 0.43339539412924719, 0.67940956829902441,
                              0.86506336668898451, 0.97390652851717172};
constexpr double kWeights[5] = {0.29552422471475287, 0.26926671930999635, 0.21908636251598204,
                                0.14945134915058059, 0.066671344308688138};

double gl10(const std::function<double(double)>& fn, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    KahanSum s;
    for (int i = 0; i < 5; ++i) {
        const double dx = half * kNodes[i];
        s += kWeights[i] * (fn(mid - dx) + fn(mid + dx));
    }
    return s.value() * half;
}

struct Panel {
    double a, b;
    double coarse;  // gl10 over [a, b]
    double fine;    // gl10 over halves, summed
    double err;     // |fine - coarse|
};

Panel make_panel(const std::function<double(double)>& fn, double a, double b) {
    Panel p;
    p.a = a;
    p.b = b;
    p.coarse = gl10(fn, a, b);
    const double mid = 0.5 * (a + b);
    p.fine = gl10(fn, a, mid) + gl10(fn, mid, b);
    p.err = std::abs(p.fine - p.coarse);
    return p;
}

// Edges of panels covering [lo, hi], graded with ratio 1/2 toward `toward`
// (one endpoint of the range) until min_width is reached.
void graded_edges(double lo, double hi, double toward, double min_width,
                  std::vector<double>& edges) {
    edges.push_back(lo);
    const double len = hi - lo;
    if (len <= min_width) {
        edges.push_back(hi);
        return;
    }
    // Distances from `toward`, halving down to min_width.
    std::vector<double> dist;
    double d = len;
    while (d > min_width * 1.5) {
        d *= 0.5;
        dist.push_back(d);
    }
    if (toward <= lo) {
        for (auto it = dist.rbegin(); it != dist.rend(); ++it) edges.push_back(toward + *it);
    } else {
        for (double v : dist) edges.push_back(toward - v);
    }
    edges.push_back(hi);
}

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)>& fn, double a, double b,
                                  double tol, const PanelPlan& plan) {
    if (!(a < b)) throw std::domain_error("integrate_panels: a < b required");
    if (!(tol > 0.0)) throw std::domain_error("integrate_panels: tol > 0 required");

    std::vector<double> cuts{a, b};
    for (double c : plan.breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    if (plan.singularity && *plan.singularity > a && *plan.singularity < b)
        cuts.push_back(*plan.singularity);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Lay out panel edges: grade toward the singularity inside the segments
    // adjacent to it, then enforce the oscillation width cap everywhere.
    std::vector<double> edges;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        std::vector<double> seg;
        if (plan.singularity && (*plan.singularity == lo || *plan.singularity == hi)) {
            graded_edges(lo, hi, *plan.singularity, plan.min_width, seg);
        } else {
            seg = {lo, hi};
        }
        for (std::size_t j = 0; j + 1 < seg.size(); ++j) {
            const double w = seg[j + 1] - seg[j];
            int split = 1;
            if (plan.max_width > 0.0 && w > plan.max_width)
                split = static_cast<int>(std::ceil(w / plan.max_width));
            for (int k = 0; k < split; ++k) edges.push_back(seg[j] + w * k / split);
        }
    }
    edges.push_back(b);

    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
    KahanSum total, toterr;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = make_panel(fn, edges[i], edges[i + 1]);
        total += p.fine;
        toterr += p.err;
        heap.push(p);
    }

    const int max_refinements = 4000;
    int it = 0;
    while (toterr.value() > tol && it < max_refinements && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        total += -worst.fine;
        toterr += -worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& half : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            Panel p = make_panel(fn, half.first, half.second);
            total += p.fine;
            toterr += p.err;
            heap.push(p);
        }
        ++it;
    }

    QuadratureResult res;
    res.value = total.value();
    res.error_estimate = toterr.value();
    res.panels = static_cast<int>(heap.size());
    if (res.error_estimate > tol)
        throw QuadratureError("quadrature did not reach tol=" + format_real(tol) +
                                  " (achieved " + format_real(res.error_estimate) + ")",
                              res.error_estimate);
    return res;
}

}  // namespace waterman
