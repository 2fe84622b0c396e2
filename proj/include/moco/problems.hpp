#ifndef MOCO_PROBLEMS_HPP
#define MOCO_PROBLEMS_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moco/cone_order.hpp"

namespace moco {

/// A benchmark problem: evaluator, box bounds, hypervolume reference point
/// and (when available) a generator of true-front samples or a path to an
/// externally supplied reference set. Instances are immutable after
/// construction and evaluators are pure, so they can be shared across
/// threads and runs.
struct ProblemDefinition {
    std::string name;
    std::size_t m = 0;  // objectives
    std::size_t d = 0;  // decision variables
    std::vector<std::pair<double, double>> bounds;
    std::function<ObjectiveVector(std::span<const double>)> evaluate;
    ObjectiveVector hv_reference;
    std::function<std::vector<ObjectiveVector>(std::size_t)> front_sampler;  // may be empty
    std::filesystem::path reference_set_path;                                // may be empty
    // IGD reference comes from the merged nondominated union across an
    // experiment's runs instead of the sampler (dtlz2_convex).
    bool igd_from_merged_runs = false;

    /// Evaluation budget NE = max{100000, 10000 * D}.
    long default_budget() const {
        const long by_dim = 10000L * static_cast<long>(d);
        return by_dim > 100000L ? by_dim : 100000L;
    }
};

/// DTLZ1 with 5 distance variables (d = m + 4); linear true front
/// sum(f) = 0.5. HV reference (0.6, ..., 0.6).
ProblemDefinition dtlz1(std::size_t m);

/// DTLZ2 with 10 distance variables (d = m + 9); concave true front
/// sum(f^2) = 1. HV reference (1.1, ..., 1.1).
ProblemDefinition dtlz2(std::size_t m);

/// DTLZ2 with every objective decreased by 3.5, giving a convex front.
/// HV reference (5, ..., 5).
ProblemDefinition dtlz2_convex(std::size_t m);

/// Rotated/scaled 5-objective DTLZ2 instance from the CEC-2009 many-objective
/// suite (d = 30). The fixed 30x30 rotation matrix and per-variable scaling
/// are read from data_dir/uf11_rotation.dat and data_dir/uf11_lambda.dat.
/// HV reference (2.2, ..., 2.2).
ProblemDefinition uf11(const std::filesystem::path& data_dir);

/// 5-objective WFG1 instance from the CEC-2009 many-objective suite
/// (d = 30, 8 position + 22 distance parameters). HV reference (11, ..., 11).
ProblemDefinition uf13(const std::filesystem::path& data_dir);

/// Lookup by id ("dtlz1", "dtlz2", "dtlz2_convex", "uf11", "uf13").
/// UF problems are fixed at five objectives; other values of m are rejected.
ProblemDefinition make_problem(const std::string& id, std::size_t m,
                               const std::filesystem::path& data_dir = "data");

/// Whitespace-separated numeric text, one matrix row per line. Lines starting
/// with '#' are ignored. Errors name the offending file.
std::vector<std::vector<double>> load_matrix(const std::filesystem::path& file);

/// Reference set: one objective vector per line, m columns.
std::vector<ObjectiveVector> load_reference_set(const std::filesystem::path& file, std::size_t m);

}  // namespace moco

#endif  // MOCO_PROBLEMS_HPP
