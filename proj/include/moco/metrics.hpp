#ifndef MOCO_METRICS_HPP
#define MOCO_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moco/cone_order.hpp"

namespace moco {

/// Anchors for hypervolume normalization. Objectives are mapped to
/// (f - ideal) / (reference - ideal) so the reference point sits at
/// (1, ..., 1), and hypervolume values land in [0, 1].
struct NormalizationSpec {
    ObjectiveVector ideal;
    ObjectiveVector reference;
};

/// Exact normalized hypervolume of the region dominated by `front` inside
/// the box [ideal, reference].
///
/// Points with any normalized coordinate >= 1 (at or beyond the reference)
/// are discarded entirely; coordinates below the ideal are clamped to it so
/// the result stays in [0, 1]. The union of the remaining boxes [f', 1] is
/// measured with a WFG-style inclusion/exclusion sweep, practical for
/// m <= 8 and fronts of a few hundred points. Empty front -> 0.
double hypervolume(const std::vector<ObjectiveVector>& front, const NormalizationSpec& spec);

struct HypervolumeEstimate {
    double value;
    double standard_error;
};

/// Monte-Carlo cross-check of hypervolume() under the same normalization and
/// discard convention. Samples uniformly in the unit box.
HypervolumeEstimate hypervolume_monte_carlo(const std::vector<ObjectiveVector>& front,
                                            const NormalizationSpec& spec,
                                            std::size_t samples = 1000000,
                                            std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// Inverted generational distance: mean over reference points of the minimum
/// Euclidean distance to the front, in raw objective space. An empty front
/// yields +infinity (sentinel for "no feasible approximation").
/// Throws std::invalid_argument on an empty reference set.
double igd(const std::vector<ObjectiveVector>& front, const std::vector<ObjectiveVector>& reference_set);

}  // namespace moco

#endif  // MOCO_METRICS_HPP
