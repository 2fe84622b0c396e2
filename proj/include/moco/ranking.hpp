#ifndef MOCO_RANKING_HPP
#define MOCO_RANKING_HPP

#include <cstddef>
#include <vector>

#include "moco/cone_order.hpp"

namespace moco {

/// A population split into nondomination levels. fronts[0] holds the indices
/// of the nondominated points; every member of fronts[k>0] is dominated by at
/// least one member of fronts[k-1] and by nobody in fronts[k] or deeper.
struct FrontPartition {
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> rank_of;
};

/// Fast non-dominated sorting generalized over an arbitrary cone order.
/// Deterministic for a fixed input ordering: fronts list indices ascending.
/// Throws std::invalid_argument on an empty input or dimension mismatch.
FrontPartition nondominated_sort(const std::vector<ObjectiveVector>& points, const ConeOrder& order);

/// NSGA-II cuboid crowding distance for one front, computed in raw objective
/// space. Per-objective boundary points get +infinity; interior points sum
/// range-normalized neighbor gaps; zero-range objectives contribute 0.
std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front);

/// Per-generation choice between the Pareto order and a rotated cone:
/// the rotated cone is used exactly when the current population forms a
/// single Pareto front (all solutions mutually non-dominated), otherwise the
/// Pareto order keeps layering the population. Both orders are built once.
class OrderSelector {
public:
    /// Default rotation angle is 15 degrees.
    explicit OrderSelector(std::size_t m, double rotation_angle = 0.26179938779914943654);

    struct Selection {
        const ConeOrder* order;
        bool rotated;
        FrontPartition pareto_partition;  // reusable when the Pareto order was chosen
    };

    Selection select(const std::vector<ObjectiveVector>& population) const;

    /// Convenience form of select() returning only the chosen order.
    const ConeOrder& select_order(const std::vector<ObjectiveVector>& population) const;

    const ConeOrder& pareto_order() const { return pareto_; }
    const ConeOrder& rotated_order() const { return rotated_; }
    double rotation_angle() const { return rotated_.angle(); }

private:
    ConeOrder pareto_;
    ConeOrder rotated_;
};

inline const ConeOrder& select_order(const std::vector<ObjectiveVector>& population,
                                     const OrderSelector& selector) {
    return selector.select_order(population);
}

}  // namespace moco

#endif  // MOCO_RANKING_HPP
