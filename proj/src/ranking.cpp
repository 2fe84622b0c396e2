#include "moco/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace moco {

FrontPartition nondominated_sort(const std::vector<ObjectiveVector>& points, const ConeOrder& order) {
    const std::size_t n = points.size();
    const std::size_t m = order.objective_count();
    if (n == 0) throw std::invalid_argument("nondominated_sort: empty point set");
    for (const auto& p : points) {
        if (p.size() != m) {
            throw std::invalid_argument("nondominated_sort: point dimension " +
                                        std::to_string(p.size()) + " does not match order dimension " +
                                        std::to_string(m));
        }
        for (double v : p) {
            if (!std::isfinite(v)) throw std::invalid_argument("nondominated_sort: non-finite objective");
        }
    }

    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dom_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            switch (order.compare(points[i], points[j])) {
                case DominanceRelation::Dominates:
                    dominated[i].push_back(j);
                    ++dom_count[j];
                    break;
                case DominanceRelation::DominatedBy:
                    dominated[j].push_back(i);
                    ++dom_count[i];
                    break;
                default:
                    break;
            }
        }
    }

    FrontPartition out;
    out.rank_of.assign(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (dom_count[i] == 0) current.push_back(i);
    }
    std::size_t level = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            out.rank_of[i] = level;
            for (std::size_t j : dominated[i]) {
                if (--dom_count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        out.fronts.push_back(std::move(current));
        current = std::move(next);
        ++level;
    }
    return out;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    if (n == 0) throw std::invalid_argument("crowding_distance: empty front");
    const double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) return std::vector<double>(n, inf);

    const std::size_t m = front[0].size();
    std::vector<double> dist(n, 0.0);
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (front[a][k] != front[b][k]) return front[a][k] < front[b][k];
            return a < b;
        });
        const double range = front[idx[n - 1]][k] - front[idx[0]][k];
        if (range <= 0.0) continue;
        dist[idx[0]] = inf;
        dist[idx[n - 1]] = inf;
        for (std::size_t r = 1; r + 1 < n; ++r) {
            if (dist[idx[r]] == inf) continue;
            dist[idx[r]] += (front[idx[r + 1]][k] - front[idx[r - 1]][k]) / range;
        }
    }
    return dist;
}

OrderSelector::OrderSelector(std::size_t m, double rotation_angle)
    : pareto_(m, 0.0), rotated_(m, rotation_angle) {}

OrderSelector::Selection OrderSelector::select(const std::vector<ObjectiveVector>& population) const {
    Selection sel{&pareto_, false, nondominated_sort(population, pareto_)};
    if (sel.pareto_partition.fronts.size() == 1) {
        sel.order = &rotated_;
        sel.rotated = true;
    }
    return sel;
}

const ConeOrder& OrderSelector::select_order(const std::vector<ObjectiveVector>& population) const {
    return *select(population).order;
}

}  // namespace moco
