#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "moco/harness.hpp"

using namespace moco;

namespace {

const std::filesystem::path kDataDir = std::filesystem::path(MOCO_SOURCE_DIR) / "data";

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.problem_id = "dtlz2";
    cfg.objectives = 3;
    cfg.algorithm = Algorithm::Nsga2;
    cfg.angles_deg = {0.0, 15.0};
    cfg.runs = 2;
    cfg.budget_mode = BudgetMode::Custom;
    cfg.custom_budget = 1200;
    cfg.population_size = 20;
    cfg.seed_base = 77;
    cfg.data_dir = kDataDir;
    cfg.threads = 2;
    return cfg;
}

}  // namespace

TEST_CASE("budget resolution: full, half, custom") {
    ExperimentConfig cfg;
    cfg.problem_id = "dtlz2";
    cfg.objectives = 8;
    const auto problem = make_problem(cfg.problem_id, cfg.objectives, kDataDir);
    CHECK(cfg.resolve_budget(problem) == 170000);
    cfg.budget_mode = BudgetMode::Half;
    CHECK(cfg.resolve_budget(problem) == 85000);
    cfg.budget_mode = BudgetMode::Custom;
    cfg.custom_budget = 42000;
    CHECK(cfg.resolve_budget(problem) == 42000);
}

TEST_CASE("a full-budget experiment yields one record per (angle, run) at the table NE") {
    ExperimentConfig cfg;
    cfg.problem_id = "dtlz2";
    cfg.objectives = 4;
    cfg.algorithm = Algorithm::Nsga2;
    cfg.angles_deg = {0.0, 15.0};
    cfg.runs = 2;
    cfg.seed_base = 7;
    cfg.data_dir = kDataDir;
    cfg.threads = 2;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 4);
    for (const auto& rec : records) {
        CHECK(rec.budget == 130000);
        CHECK(rec.evaluations == 130000);
        CHECK(rec.generations == 1299);
        CHECK(rec.front_counts.size() == 1299);
        CHECK(rec.hv > 0.0);
        CHECK(rec.igd_defined);
    }
    // same seed across angles
    CHECK(records[0].seed == records[2].seed);
    CHECK(records[1].seed == records[3].seed);
}

TEST_CASE("re-running an experiment reproduces the persisted records byte for byte") {
    auto cfg = small_config();
    const auto dir1 = fresh_dir("moco_det_1");
    const auto dir2 = fresh_dir("moco_det_2");
    cfg.output_dir = dir1;
    run_experiment(cfg);
    cfg.output_dir = dir2;
    cfg.threads = 1;  // thread count must not matter
    run_experiment(cfg);

    int compared = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir1)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("run_", 0) != 0) continue;
        CHECK(slurp(entry.path()) == slurp(dir2 / name));
        ++compared;
    }
    CHECK(compared == 4);
}

TEST_CASE("stored metrics are recomputable from the persisted front bit-identically") {
    auto cfg = small_config();
    const auto dir = fresh_dir("moco_recompute");
    cfg.output_dir = dir;
    const auto records = run_experiment(cfg);
    const auto problem = make_problem(cfg.problem_id, cfg.objectives, kDataDir);
    const NormalizationSpec spec{ObjectiveVector(problem.m, 0.0), problem.hv_reference};
    const auto reference = igd_reference_set(problem, records);

    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().filename().string().rfind("run_", 0) != 0) continue;
        const auto rec = load_run_record(entry.path());
        CHECK(hypervolume(rec.front_objectives, spec) == rec.hv);
        CHECK(igd(rec.front_objectives, reference) == rec.igd);
        // the stored decisions re-evaluate to the stored objectives
        for (std::size_t i = 0; i < rec.front_objectives.size(); ++i) {
            CHECK(problem.evaluate(rec.front_decisions[i]) == rec.front_objectives[i]);
        }
    }
}

TEST_CASE("summaries recomputed from persisted records match the live summaries exactly") {
    auto cfg = small_config();
    const auto dir = fresh_dir("moco_summaries");
    cfg.output_dir = dir;
    const auto live = summarize(run_experiment(cfg));
    const auto reloaded = summarize(load_experiment(dir));
    REQUIRE(live.size() == reloaded.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
        CHECK(live[i].angle_deg == reloaded[i].angle_deg);
        CHECK(live[i].hv_mean == reloaded[i].hv_mean);
        CHECK(live[i].hv_std == reloaded[i].hv_std);
        CHECK(live[i].igd_mean == reloaded[i].igd_mean);
        CHECK(live[i].hv_rank == reloaded[i].hv_rank);
    }
}

TEST_CASE("summary statistics and ranking rules") {
    auto mk = [](double angle, double hv, std::uint64_t seed) {
        RunRecord r;
        r.algorithm = Algorithm::Nsga2;
        r.angle_deg = angle;
        r.hv = hv;
        r.igd = 0.5;
        r.igd_defined = true;
        r.seed = seed;
        return r;
    };

    SUBCASE("mean and sample std") {
        const auto rows = summarize({mk(0, 0.4, 1), mk(0, 0.6, 2)});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].hv_mean == doctest::Approx(0.5));
        CHECK(rows[0].hv_std == doctest::Approx(0.1414213562).epsilon(1e-8));
    }

    SUBCASE("ties rank the lower angle first, ranks are a permutation") {
        std::vector<RunRecord> records;
        const double angles[7] = {0, 30, 20, 15, 10, 6, 3};
        const double hvs[7] = {0.1, 0.2, 0.5, 0.9, 0.5, 0.3, 0.25};
        for (int i = 0; i < 7; ++i) records.push_back(mk(angles[i], hvs[i], 1));
        const auto rows = summarize(records);
        REQUIRE(rows.size() == 7);
        std::vector<int> ranks;
        for (const auto& r : rows) ranks.push_back(r.hv_rank);
        std::vector<int> sorted = ranks;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
        // angle 15 wins; the 0.5 tie goes to angle 10 over angle 20
        for (const auto& r : rows) {
            if (r.angle_deg == 15.0) CHECK(r.hv_rank == 1);
            if (r.angle_deg == 10.0) CHECK(r.hv_rank == 2);
            if (r.angle_deg == 20.0) CHECK(r.hv_rank == 3);
        }
    }

    SUBCASE("csv and markdown render one row per angle") {
        const auto rows = summarize({mk(0, 0.4, 1), mk(15, 0.6, 1)});
        const auto csv = summary_csv(rows);
        CHECK(csv.find("algorithm,angle_deg,runs,hv_mean") != std::string::npos);
        CHECK(csv.find("nsga2,0,") != std::string::npos);
        CHECK(csv.find("nsga2,15,") != std::string::npos);
        const auto md = summary_markdown(rows);
        CHECK(md.find("| nsga2 | 15 |") != std::string::npos);
    }
}

TEST_CASE("layer series emission") {
    RunRecord rec;
    rec.problem = "dtlz1";
    rec.m = 8;
    rec.algorithm = Algorithm::Nsga2;
    rec.angle_deg = 20.0;
    rec.population = 100;
    rec.seed = 3;
    rec.front_counts = {4, 1, 2};
    std::ostringstream out;
    emit_layer_series(rec, out);
    const auto text = out.str();
    CHECK(text.find("generation,front_count\n0,4\n1,1\n2,2\n") != std::string::npos);
    CHECK(text.find("one generation = 100 evaluations") != std::string::npos);
}

TEST_CASE("singular angles are skipped and recorded in the index") {
    ExperimentConfig cfg;
    cfg.problem_id = "dtlz1";
    cfg.objectives = 4;  // 30 degrees is singular at m = 4
    cfg.angles_deg = {0.0, 30.0};
    cfg.runs = 1;
    cfg.budget_mode = BudgetMode::Custom;
    cfg.custom_budget = 500;
    cfg.population_size = 10;
    cfg.data_dir = kDataDir;
    cfg.threads = 1;
    const auto dir = fresh_dir("moco_singular");
    cfg.output_dir = dir;
    const auto records = run_experiment(cfg);
    CHECK(records.size() == 1);
    CHECK(records[0].angle_deg == 0.0);
    const auto index = slurp(dir / "index.json");
    CHECK(index.find("skipped_angles") != std::string::npos);
    CHECK(index.find("singular") != std::string::npos);
}

TEST_CASE("dtlz2_convex gets its IGD reference from the merged run fronts") {
    ExperimentConfig cfg = small_config();
    cfg.problem_id = "dtlz2_convex";
    const auto dir = fresh_dir("moco_convex");
    cfg.output_dir = dir;
    const auto records = run_experiment(cfg);
    for (const auto& rec : records) CHECK(rec.igd_defined);
    CHECK(std::filesystem::exists(dir / "reference_set.dat"));
    const auto problem = make_problem("dtlz2_convex", 3, kDataDir);
    const auto merged = igd_reference_set(problem, records);
    CHECK(!merged.empty());
    // merged set is mutually nondominated
    for (std::size_t i = 0; i < merged.size(); ++i) {
        for (std::size_t j = i + 1; j < merged.size(); ++j) {
            CHECK(pareto_classify(merged[i], merged[j]) == DominanceRelation::Incomparable);
        }
    }
}

TEST_CASE("uf problems take their IGD reference from the shipped files") {
    const auto problem = make_problem("uf13", 5, kDataDir);
    const auto reference = igd_reference_set(problem, {});
    CHECK(reference.size() == 2000);

    ExperimentConfig cfg = small_config();
    cfg.problem_id = "uf13";
    cfg.objectives = 5;
    cfg.angles_deg = {15.0};
    cfg.runs = 1;
    cfg.custom_budget = 600;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].igd_defined);
    CHECK(records[0].igd > 0.0);
    CHECK(std::isfinite(records[0].igd));
}

TEST_CASE("a degenerate 30-degree run drives every point out of the reference box") {
    // the order reverses along the identity direction at m = 8, so the
    // population diverges and the hypervolume collapses to exactly zero
    auto cfg = small_config();
    cfg.problem_id = "dtlz2";
    cfg.objectives = 8;
    cfg.angles_deg = {30.0};
    cfg.runs = 1;
    cfg.custom_budget = 5000;
    cfg.population_size = 100;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].hv == 0.0);
}

TEST_CASE("run record round-trip preserves every field") {
    auto cfg = small_config();
    cfg.angles_deg = {10.0};
    cfg.runs = 1;
    const auto records = run_experiment(cfg);
    REQUIRE(records.size() == 1);
    const auto tmp = fresh_dir("moco_roundtrip") / "rec.txt";
    save_run_record(records[0], tmp);
    const auto rec = load_run_record(tmp);
    CHECK(rec.problem == records[0].problem);
    CHECK(rec.m == records[0].m);
    CHECK(rec.d == records[0].d);
    CHECK(rec.angle_deg == records[0].angle_deg);
    CHECK(rec.seed == records[0].seed);
    CHECK(rec.budget == records[0].budget);
    CHECK(rec.evaluations == records[0].evaluations);
    CHECK(rec.hv == records[0].hv);
    CHECK(rec.igd == records[0].igd);
    CHECK(rec.front_counts == records[0].front_counts);
    CHECK(rec.front_objectives == records[0].front_objectives);
    CHECK(rec.front_decisions == records[0].front_decisions);
}

TEST_CASE("declarative json config mirrors the flags") {
    const auto cfg = experiment_config_from_json(R"({
        "problem": "dtlz1",
        "objectives": 6,
        "algorithm": "nsga3",
        "angles": [0, 15],
        "runs": 3,
        "budget": 5000,
        "population": 50,
        "seed_base": 99,
        "out": "/tmp/x",
        "threads": 2
    })");
    CHECK(cfg.problem_id == "dtlz1");
    CHECK(cfg.objectives == 6);
    CHECK(cfg.algorithm == Algorithm::Nsga3);
    CHECK(cfg.angles_deg == std::vector<double>{0.0, 15.0});
    CHECK(cfg.runs == 3);
    CHECK(cfg.budget_mode == BudgetMode::Custom);
    CHECK(cfg.custom_budget == 5000);
    CHECK(cfg.population_size == 50);
    CHECK(cfg.seed_base == 99);
    CHECK(cfg.output_dir == std::filesystem::path("/tmp/x"));
    CHECK(cfg.threads == 2);
}

TEST_CASE("invalid configurations are rejected") {
    auto cfg = small_config();
    cfg.angles_deg = {50.0};
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.runs = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.problem_id = "nope";
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}
