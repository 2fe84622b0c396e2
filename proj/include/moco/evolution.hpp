#ifndef MOCO_EVOLUTION_HPP
#define MOCO_EVOLUTION_HPP

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moco/problems.hpp"
#include "moco/ranking.hpp"

namespace moco {

enum class Algorithm { Nsga2, Dimoea, Nsga3 };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Run parameters. Variation defaults follow common framework conventions:
/// SBX rate 1.0 with distribution index 15, polynomial mutation rate 1/d
/// (pm_rate < 0 selects it) with distribution index 20.
struct AlgorithmConfig {
    Algorithm algorithm = Algorithm::Nsga2;
    int population_size = 100;
    double rotation_angle = 0.26179938779914943654;  // 15 degrees
    long budget = 100000;
    double sbx_eta = 15.0;
    double sbx_rate = 1.0;
    double pm_eta = 20.0;
    double pm_rate = -1.0;
    std::uint64_t seed = 0;
};

struct Individual {
    std::vector<double> x;
    ObjectiveVector f;
    std::size_t rank = 0;
    double diversity = 0.0;
};

/// Deterministic uniform source. The [0,1) draw uses the top 53 bits of a
/// mt19937_64 step so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n) {
        const auto v = static_cast<std::size_t>(unit() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

/// Simulated binary crossover, bounded variant: offspring stay inside the
/// box without post-hoc clamping distortion. rate gates the whole pair;
/// each variable then recombines with probability 1/2. Identical parents
/// (or a failed rate draw) yield exact copies.
std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    std::span<const double> p1, std::span<const double> p2,
    std::span<const std::pair<double, double>> bounds, double eta, double rate, Rng& rng);

/// Bounded polynomial mutation applied per variable with probability rate.
std::vector<double> polynomial_mutation(std::span<const double> x,
                                        std::span<const std::pair<double, double>> bounds,
                                        double eta, double rate, Rng& rng);

/// Indices of `front` kept when reducing it to `keep` members by crowding
/// distance (largest kept, ties by lower index). Ascending order.
std::vector<std::size_t> crowding_truncate(const std::vector<ObjectiveVector>& front, std::size_t keep);

/// Diversity-indicator truncation: greedily discards the member whose
/// removal maximizes the geometric mean of nearest-neighbor gaps in
/// objective space; per-objective extremes are protected. Ascending order.
std::vector<std::size_t> gap_truncate(const std::vector<ObjectiveVector>& front, std::size_t keep);

/// Reference-direction survival: keeps whole fronts, then fills the
/// remainder from the critical front by niche-count balancing after
/// ideal/intercept normalization. Returns `capacity` pool indices.
std::vector<std::size_t> nsga3_select(const std::vector<ObjectiveVector>& pool,
                                      const FrontPartition& partition, std::size_t capacity,
                                      const std::vector<std::vector<double>>& directions, Rng& rng);

/// One run of one algorithm; single-owner, no shared mutable state.
struct EvolutionState {
    std::vector<Individual> population;
    long evaluations = 0;
    long generation = 0;
    std::vector<int> front_counts;  // per generation, under the order chosen that generation
    Rng rng{0};
    std::vector<std::vector<double>> reference_directions;  // NSGA-III only
};

/// Uniform random population within bounds, evaluated (costs population_size
/// evaluations from the budget).
EvolutionState initialize_state(const ProblemDefinition& problem, const AlgorithmConfig& config);

/// Advances one generation: picks the dominance order for this iteration,
/// ranks the population under it, breeds population_size offspring and keeps
/// the best half of the combined pool under the same order. Returns false
/// (and does nothing) once another generation would exceed the budget.
bool run_generation(EvolutionState& state, const ProblemDefinition& problem,
                    const OrderSelector& selector, const AlgorithmConfig& config);

void run_to_budget(EvolutionState& state, const ProblemDefinition& problem,
                   const OrderSelector& selector, const AlgorithmConfig& config);

}  // namespace moco

#endif  // MOCO_EVOLUTION_HPP
