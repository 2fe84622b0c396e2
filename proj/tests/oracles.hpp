// Test-only oracles, kept independent of the production code paths they check.
#ifndef MOCO_TESTS_ORACLES_HPP
#define MOCO_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "moco/cone_order.hpp"
#include "moco/ranking.hpp"

namespace moco::testing {

// O(n^2 m) front extraction: precompute the full dominance relation, then
// repeatedly peel the minimal set.
inline FrontPartition brute_force_sort(const std::vector<ObjectiveVector>& points,
                                       const ConeOrder& order) {
    const std::size_t n = points.size();
    std::vector<std::vector<bool>> dominates(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && order.classify(points[i], points[j]) == DominanceRelation::Dominates) {
                dominates[i][j] = true;
            }
        }
    }

    FrontPartition part;
    part.rank_of.assign(n, 0);
    std::vector<bool> assigned(n, false);
    std::size_t remaining = n;
    std::size_t level = 0;
    while (remaining > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i]) continue;
            bool minimal = true;
            for (std::size_t j = 0; j < n && minimal; ++j) {
                if (!assigned[j] && dominates[j][i]) minimal = false;
            }
            if (minimal) front.push_back(i);
        }
        if (front.empty()) throw std::logic_error("brute_force_sort: relation has no minimal element");
        for (std::size_t i : front) {
            assigned[i] = true;
            part.rank_of[i] = level;
        }
        remaining -= front.size();
        part.fronts.push_back(std::move(front));
        ++level;
    }
    return part;
}

// Gauss-Jordan with partial pivoting, row-major square input.
inline std::vector<double> gauss_inverse(std::vector<double> a, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (std::abs(a[piv * n + col]) < 1e-14) throw std::runtime_error("gauss_inverse: singular");
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(inv[piv * n + k], inv[col * n + k]);
        }
        const double d = a[col * n + col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col * n + k] /= d;
            inv[col * n + k] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r * n + col];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                a[r * n + k] -= f * a[col * n + k];
                inv[r * n + k] -= f * inv[col * n + k];
            }
        }
    }
    return inv;
}

class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + unit() * (hi - lo); }
    std::size_t below(std::size_t n) {
        const auto v = static_cast<std::size_t>(unit() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }
    ObjectiveVector vector(std::size_t m, double lo = 0.0, double hi = 1.0) {
        ObjectiveVector v(m);
        for (double& x : v) x = range(lo, hi);
        return v;
    }
    std::vector<ObjectiveVector> point_set(std::size_t n, std::size_t m, double lo = 0.0,
                                           double hi = 1.0) {
        std::vector<ObjectiveVector> pts;
        pts.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pts.push_back(vector(m, lo, hi));
        return pts;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace moco::testing

#endif  // MOCO_TESTS_ORACLES_HPP
