#ifndef MOCO_HARNESS_HPP
#define MOCO_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "moco/evolution.hpp"
#include "moco/metrics.hpp"
#include "moco/problems.hpp"

namespace moco {

enum class BudgetMode { Full, Half, Custom };

/// One experiment: a problem, one algorithm, a list of rotation angles and a
/// number of independent runs per angle. Every run r uses seed_base + r so
/// the same seeds recur across angles (and across algorithms when the same
/// seed_base is reused).
struct ExperimentConfig {
    std::string problem_id = "dtlz2";
    std::size_t objectives = 4;
    Algorithm algorithm = Algorithm::Nsga2;
    std::vector<double> angles_deg = {0.0, 30.0, 20.0, 15.0, 10.0, 6.0, 3.0};
    int runs = 15;
    BudgetMode budget_mode = BudgetMode::Full;
    long custom_budget = 0;
    int population_size = 100;
    std::uint64_t seed_base = 1000;
    std::filesystem::path output_dir;  // empty: keep records in memory only
    std::filesystem::path data_dir = "data";
    unsigned threads = 0;  // 0: hardware concurrency

    long resolve_budget(const ProblemDefinition& problem) const;
};

/// Everything needed to audit one run. Run files persist all of this except
/// wall_seconds (kept in the experiment index) so that re-running a
/// configuration reproduces the files byte for byte.
struct RunRecord {
    std::string problem;
    std::size_t m = 0;
    std::size_t d = 0;
    Algorithm algorithm = Algorithm::Nsga2;
    double angle_deg = 0.0;
    int population = 0;
    long budget = 0;
    std::uint64_t seed = 0;
    long evaluations = 0;
    long generations = 0;
    double hv = 0.0;
    double igd = 0.0;
    bool igd_defined = false;
    double wall_seconds = 0.0;
    std::vector<int> front_counts;
    std::vector<ObjectiveVector> front_objectives;
    std::vector<std::vector<double>> front_decisions;
};

/// Runs the full angle x run grid (in a worker pool), computes HV/IGD for
/// every final front and, when output_dir is set, persists one record file
/// per run plus an index.json. Angles whose cone cannot be built (singular
/// generator matrix) are skipped and listed in the index.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

void save_run_record(const RunRecord& record, const std::filesystem::path& file);
RunRecord load_run_record(const std::filesystem::path& file);

/// All run records persisted under an experiment directory, ordered by
/// (algorithm, angle, seed).
std::vector<RunRecord> load_experiment(const std::filesystem::path& dir);

struct SummaryRow {
    Algorithm algorithm;
    double angle_deg;
    int runs;
    double hv_mean, hv_std;
    double igd_mean, igd_std;
    int hv_rank;  // 1 = best mean HV within the algorithm, ties to lower angle
};

/// Mean and sample standard deviation per (algorithm, angle), plus the
/// per-algorithm hypervolume ranking.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string summary_markdown(const std::vector<SummaryRow>& rows);

/// CSV of (generation, front_count) for layer-dynamics plots. Counts are
/// recorded once per generation (one generation = population_size
/// evaluations), stated in the header.
void emit_layer_series(const RunRecord& record, std::ostream& out);

/// Declarative form of the CLI flags (JSON object; keys: problem, objectives,
/// algorithm, angles, runs, half_budget, budget, population, seed_base, out,
/// data_dir, threads).
ExperimentConfig experiment_config_from_json(const std::string& text);

/// The reference set run_experiment used for IGD: an explicit file when the
/// problem ships one, the analytic front sampler otherwise, and for fronts
/// without either (dtlz2_convex) the merged nondominated union across the
/// experiment's runs, persisted as reference_set.dat.
std::vector<ObjectiveVector> igd_reference_set(const ProblemDefinition& problem,
                                               const std::vector<RunRecord>& records);

}  // namespace moco

#endif  // MOCO_HARNESS_HPP
