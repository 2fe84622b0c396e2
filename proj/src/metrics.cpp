#include "moco/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace moco {

namespace {

using Point = std::vector<double>;

void check_spec(const NormalizationSpec& spec) {
    if (spec.ideal.empty() || spec.ideal.size() != spec.reference.size()) {
        throw std::invalid_argument("hypervolume: ideal/reference dimension mismatch");
    }
    for (std::size_t i = 0; i < spec.ideal.size(); ++i) {
        if (!(spec.reference[i] > spec.ideal[i])) {
            throw std::invalid_argument("hypervolume: reference must exceed ideal in every objective");
        }
    }
}

// Normalize into reference coordinates, drop points at/beyond the reference,
// clamp below the ideal.
std::vector<Point> normalize_front(const std::vector<Point>& front, const NormalizationSpec& spec) {
    const std::size_t m = spec.ideal.size();
    std::vector<Point> out;
    out.reserve(front.size());
    for (const auto& f : front) {
        if (f.size() != m) throw std::invalid_argument("hypervolume: front point dimension mismatch");
        Point p(m);
        bool keep = true;
        for (std::size_t i = 0; i < m; ++i) {
            p[i] = (f[i] - spec.ideal[i]) / (spec.reference[i] - spec.ideal[i]);
            if (p[i] >= 1.0) {
                keep = false;
                break;
            }
            if (p[i] < 0.0) p[i] = 0.0;
        }
        if (keep) out.push_back(std::move(p));
    }
    return out;
}

bool weakly_dominates(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

// Keep only minimal elements (first occurrence wins for duplicates).
std::vector<Point> pareto_filter(std::vector<Point> pts) {
    std::vector<Point> kept;
    for (auto& p : pts) {
        bool dominated = false;
        for (const auto& q : kept) {
            if (weakly_dominates(q, p)) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::erase_if(kept, [&](const Point& q) { return weakly_dominates(p, q); });
        kept.push_back(std::move(p));
    }
    return kept;
}

double inclusive_volume(const Point& p) {
    double v = 1.0;
    for (double x : p) v *= 1.0 - x;
    return v;
}

// Area dominated by a 2-D nondominated set below the (1,1) reference.
double sweep_2d(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a[0] < b[0]; });
    double area = 0.0;
    double prev_y = 1.0;
    for (const auto& p : pts) {
        area += (1.0 - p[0]) * (prev_y - p[1]);
        prev_y = p[1];
    }
    return area;
}

// WFG-style recursion: the volume of a union of boxes is peeled off one point
// at a time, subtracting the part of each box already covered by the points
// after it ("limit set"). Nondominated filtering keeps limit sets small.
double union_volume(std::vector<Point> pts) {
    if (pts.empty()) return 0.0;
    if (pts.size() == 1) return inclusive_volume(pts[0]);
    if (pts[0].size() == 2) return sweep_2d(std::move(pts));

    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.back() > b.back(); });
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Point> limited;
        limited.reserve(pts.size() - i - 1);
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Point q(pts[i].size());
            for (std::size_t k = 0; k < q.size(); ++k) q[k] = std::max(pts[i][k], pts[j][k]);
            limited.push_back(std::move(q));
        }
        total += inclusive_volume(pts[i]) - union_volume(pareto_filter(std::move(limited)));
    }
    return total;
}

}  // namespace

double hypervolume(const std::vector<ObjectiveVector>& front, const NormalizationSpec& spec) {
    check_spec(spec);
    if (front.empty()) return 0.0;
    auto pts = pareto_filter(normalize_front(front, spec));
    if (pts.empty()) return 0.0;
    return union_volume(std::move(pts));
}

HypervolumeEstimate hypervolume_monte_carlo(const std::vector<ObjectiveVector>& front,
                                            const NormalizationSpec& spec, std::size_t samples,
                                            std::uint64_t seed) {
    check_spec(spec);
    if (samples == 0) throw std::invalid_argument("hypervolume_monte_carlo: need samples > 0");
    auto pts = pareto_filter(normalize_front(front, spec));
    if (pts.empty()) return {0.0, 0.0};

    const std::size_t m = spec.ideal.size();
    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };

    std::size_t hits = 0;
    std::vector<double> u(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i) u[i] = unit();
        for (const auto& p : pts) {
            if (weakly_dominates(p, u)) {
                ++hits;
                break;
            }
        }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    return {p, se};
}

double igd(const std::vector<ObjectiveVector>& front, const std::vector<ObjectiveVector>& reference_set) {
    if (reference_set.empty()) throw std::invalid_argument("igd: empty reference set");
    if (front.empty()) return std::numeric_limits<double>::infinity();

    double total = 0.0;
    for (const auto& r : reference_set) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : front) {
            if (f.size() != r.size()) throw std::invalid_argument("igd: dimension mismatch");
            double d2 = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double diff = f[i] - r[i];
                d2 += diff * diff;
            }
            best = std::min(best, d2);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference_set.size());
}

}  // namespace moco
