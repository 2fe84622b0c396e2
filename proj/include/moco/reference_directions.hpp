#ifndef MOCO_REFERENCE_DIRECTIONS_HPP
#define MOCO_REFERENCE_DIRECTIONS_HPP

#include <cstddef>
#include <vector>

namespace moco {

/// Das-Dennis simplex lattice: all m-dimensional weight vectors with
/// components that are multiples of 1/p and sum to 1. Count is
/// C(m - 1 + p, m - 1); order is deterministic (lexicographic).
std::vector<std::vector<double>> das_dennis_weights(std::size_t m, unsigned p);

/// Boundary + inside layer construction for many objectives: the inner layer
/// is shrunk halfway towards the simplex centroid (w/2 + 1/(2m)).
std::vector<std::vector<double>> two_layer_weights(std::size_t m, unsigned p_outer, unsigned p_inner);

/// Direction sets sized near a population of 100, following common practice:
/// single layer up to five objectives, two layers beyond.
std::vector<std::vector<double>> default_reference_directions(std::size_t m);

}  // namespace moco

#endif  // MOCO_REFERENCE_DIRECTIONS_HPP
