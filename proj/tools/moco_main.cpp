// moco: benchmark harness for many-objective evolutionary algorithms with
// rotated-cone dominance. Subcommands: run, summarize, layers, refset.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moco/harness.hpp"

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> parse_angle_list(const std::string& text) {
    std::vector<double> angles;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) angles.push_back(std::stod(item));
    }
    if (angles.empty()) throw CLI::ValidationError("--angles", "no angles given");
    return angles;
}

int cmd_run(const std::string& config_file, const std::string& problem, std::size_t objectives,
            const std::string& algorithm, const std::string& angles, int runs, long budget,
            int population, std::uint64_t seed_base, const std::string& out_dir,
            const std::string& data_dir, unsigned threads, const CLI::App* cmd) {
    moco::ExperimentConfig cfg;
    if (!config_file.empty()) cfg = moco::experiment_config_from_json(read_file(config_file));

    auto given = [&](const std::string& flag) { return cmd->count(flag) > 0; };
    if (given("--problem")) cfg.problem_id = problem;
    if (given("--objectives")) cfg.objectives = objectives;
    if (given("--algorithm")) cfg.algorithm = moco::parse_algorithm(algorithm);
    if (given("--angles")) cfg.angles_deg = parse_angle_list(angles);
    if (given("--runs")) cfg.runs = runs;
    if (given("--half-budget")) cfg.budget_mode = moco::BudgetMode::Half;
    if (given("--budget")) {
        cfg.budget_mode = moco::BudgetMode::Custom;
        cfg.custom_budget = budget;
    }
    if (given("--pop")) cfg.population_size = population;
    if (given("--seed-base")) cfg.seed_base = seed_base;
    if (given("--out")) cfg.output_dir = out_dir;
    if (given("--data-dir")) cfg.data_dir = data_dir;
    if (given("--threads")) cfg.threads = threads;

    const auto records = moco::run_experiment(cfg);
    const auto rows = moco::summarize(records);
    std::cout << moco::summary_markdown(rows);
    if (!cfg.output_dir.empty()) {
        std::cout << "\nwrote " << records.size() << " run records to " << cfg.output_dir.string()
                  << '\n';
    }
    return 0;
}

int cmd_summarize(const std::string& in_dir, const std::string& format, const std::string& out_file) {
    const auto records = moco::load_experiment(in_dir);
    if (records.empty()) {
        std::cerr << "no run records found in " << in_dir << '\n';
        return 1;
    }
    const auto rows = moco::summarize(records);
    const std::string text = format == "md" ? moco::summary_markdown(rows) : moco::summary_csv(rows);
    if (out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_file);
        out << text;
        if (!out) {
            std::cerr << "cannot write " << out_file << '\n';
            return 1;
        }
    }
    return 0;
}

int cmd_layers(const std::string& record_file, const std::string& out_file) {
    const auto record = moco::load_run_record(record_file);
    if (out_file.empty()) {
        moco::emit_layer_series(record, std::cout);
    } else {
        std::ofstream out(out_file);
        moco::emit_layer_series(record, out);
        if (!out) {
            std::cerr << "cannot write " << out_file << '\n';
            return 1;
        }
    }
    return 0;
}

int cmd_refset(const std::string& problem, std::size_t points, const std::string& out_file,
               const std::string& data_dir) {
    const auto def = moco::make_problem(problem, 0, data_dir);
    if (!def.front_sampler) {
        std::cerr << problem << " has no front sampler\n";
        return 1;
    }
    const auto front = def.front_sampler(points);
    std::ofstream out(out_file);
    if (!out) {
        std::cerr << "cannot write " << out_file << '\n';
        return 1;
    }
    out << "# " << def.name << " front sample, " << front.size() << " points\n";
    char buf[40];
    for (const auto& f : front) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", f[i]);
            out << (i ? " " : "") << buf;
        }
        out << '\n';
    }
    std::cout << "wrote " << front.size() << " reference points to " << out_file << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"many-objective evolutionary optimization with rotated-cone dominance"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run an experiment (angle grid x seeded runs)");
    std::string config_file, problem = "dtlz2", algorithm = "nsga2", angles = "0,30,20,15,10,6,3";
    std::string out_dir, data_dir = "data";
    std::size_t objectives = 4;
    int runs = 15, population = 100;
    bool half_budget = false;
    long budget = 0;
    std::uint64_t seed_base = 1000;
    unsigned threads = 0;
    run->add_option("--config", config_file, "JSON config file mirroring the flags");
    run->add_option("--problem", problem, "dtlz1|dtlz2|dtlz2_convex|uf11|uf13");
    run->add_option("--objectives", objectives, "objective count (UF problems are fixed at 5)");
    run->add_option("--algorithm", algorithm, "nsga2|dimoea|nsga3");
    run->add_option("--angles", angles, "comma-separated rotation angles in degrees");
    run->add_option("--runs", runs, "independent runs per angle");
    run->add_flag("--half-budget", half_budget, "use half the standard evaluation budget");
    run->add_option("--budget", budget, "explicit evaluation budget (overrides full/half)");
    run->add_option("--pop", population, "population size");
    run->add_option("--seed-base", seed_base, "seed for run 0; run r uses seed-base + r");
    run->add_option("--out", out_dir, "directory for run records and index.json");
    run->add_option("--data-dir", data_dir, "directory with problem data files");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");

    // summarize
    auto* sum = app.add_subcommand("summarize", "tabulate persisted run records");
    std::string sum_in, sum_format = "csv", sum_out;
    sum->add_option("--in", sum_in, "experiment directory")->required();
    sum->add_option("--format", sum_format, "csv|md")->check(CLI::IsMember({"csv", "md"}));
    sum->add_option("--out", sum_out, "output file (default: stdout)");

    // layers
    auto* lay = app.add_subcommand("layers", "emit per-generation front counts as CSV");
    std::string lay_in, lay_out;
    lay->add_option("--in", lay_in, "run record file")->required();
    lay->add_option("--out", lay_out, "output file (default: stdout)");

    // refset
    auto* ref = app.add_subcommand("refset", "sample a problem's true front to a reference-set file");
    std::string ref_problem, ref_out, ref_data = "data";
    std::size_t ref_points = 2000;
    ref->add_option("--problem", ref_problem, "problem id")->required();
    ref->add_option("--points", ref_points, "number of points");
    ref->add_option("--out", ref_out, "output file")->required();
    ref->add_option("--data-dir", ref_data, "directory with problem data files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_file, problem, objectives, algorithm, angles, runs, budget,
                           population, seed_base, out_dir, data_dir, threads, run);
        }
        if (sum->parsed()) return cmd_summarize(sum_in, sum_format, sum_out);
        if (lay->parsed()) return cmd_layers(lay_in, lay_out);
        if (ref->parsed()) return cmd_refset(ref_problem, ref_points, ref_out, ref_data);
    } catch (const std::exception& e) {
        std::cerr << "moco: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
