#include "moco/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace moco {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_angle(double deg) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", deg);
    return buf;
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::vector<ObjectiveVector> pareto_front_of(const std::vector<Individual>& pop,
                                             std::vector<std::vector<double>>* decisions) {
    std::vector<ObjectiveVector> front;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pop.size() && !dominated; ++j) {
            if (j == i) continue;
            const auto rel = pareto_classify(pop[j].f, pop[i].f);
            if (rel == DominanceRelation::Dominates ||
                (rel == DominanceRelation::Equal && j < i)) {
                dominated = true;  // duplicates: keep the first occurrence
            }
        }
        if (!dominated) {
            front.push_back(pop[i].f);
            if (decisions) decisions->push_back(pop[i].x);
        }
    }
    return front;
}

std::vector<ObjectiveVector> merge_nondominated(const std::vector<RunRecord>& records) {
    std::vector<ObjectiveVector> merged;
    for (const auto& rec : records) {
        for (const auto& f : rec.front_objectives) {
            bool dominated = false;
            for (const auto& g : merged) {
                const auto rel = pareto_classify(g, f);
                if (rel == DominanceRelation::Dominates || rel == DominanceRelation::Equal) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            std::erase_if(merged, [&](const ObjectiveVector& g) {
                return pareto_classify(f, g) == DominanceRelation::Dominates;
            });
            merged.push_back(f);
        }
    }
    return merged;
}

void write_vector_lines(std::ostream& out, const std::vector<std::vector<double>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << fmt_double(row[i]);
        }
        out << '\n';
    }
}

}  // namespace

long ExperimentConfig::resolve_budget(const ProblemDefinition& problem) const {
    switch (budget_mode) {
        case BudgetMode::Full: return problem.default_budget();
        case BudgetMode::Half: return problem.default_budget() / 2;
        case BudgetMode::Custom:
            if (custom_budget < population_size) {
                throw std::invalid_argument("custom budget is below one population");
            }
            return custom_budget;
    }
    return problem.default_budget();
}

std::vector<ObjectiveVector> igd_reference_set(const ProblemDefinition& problem,
                                               const std::vector<RunRecord>& records) {
    if (!problem.reference_set_path.empty()) {
        return load_reference_set(problem.reference_set_path, problem.m);
    }
    if (problem.igd_from_merged_runs) return merge_nondominated(records);
    if (problem.front_sampler) return problem.front_sampler(5000);
    return {};
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    if (config.runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (config.population_size < 2) throw std::invalid_argument("population_size must be >= 2");
    for (double a : config.angles_deg) {
        if (!(a >= 0.0) || a >= 45.0) {
            throw std::invalid_argument("angles must lie in [0, 45) degrees");
        }
    }

    const ProblemDefinition problem = make_problem(config.problem_id, config.objectives, config.data_dir);
    const long budget = config.resolve_budget(problem);

    // Angles whose generator matrix cannot be inverted are reported, not fatal.
    std::vector<double> usable_angles;
    std::vector<std::pair<double, std::string>> skipped;
    for (double a : config.angles_deg) {
        try {
            ConeOrder probe(problem.m, deg_to_rad(a));
            usable_angles.push_back(a);
        } catch (const SingularConeError& e) {
            std::fprintf(stderr, "moco: skipping angle %g deg: %s\n", a, e.what());
            skipped.emplace_back(a, e.what());
        }
    }

    struct Task {
        double angle_deg;
        int run_idx;
    };
    std::vector<Task> tasks;
    for (double a : usable_angles) {
        for (int r = 0; r < config.runs; ++r) tasks.push_back({a, r});
    }

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            try {
                const Task& task = tasks[t];
                AlgorithmConfig run_cfg;
                run_cfg.algorithm = config.algorithm;
                run_cfg.population_size = config.population_size;
                run_cfg.rotation_angle = deg_to_rad(task.angle_deg);
                run_cfg.budget = budget;
                run_cfg.seed = config.seed_base + static_cast<std::uint64_t>(task.run_idx);

                OrderSelector selector(problem.m, run_cfg.rotation_angle);
                const auto t0 = std::chrono::steady_clock::now();
                EvolutionState state = initialize_state(problem, run_cfg);
                run_to_budget(state, problem, selector, run_cfg);
                const auto t1 = std::chrono::steady_clock::now();

                RunRecord rec;
                rec.problem = problem.name;
                rec.m = problem.m;
                rec.d = problem.d;
                rec.algorithm = config.algorithm;
                rec.angle_deg = task.angle_deg;
                rec.population = config.population_size;
                rec.budget = budget;
                rec.seed = run_cfg.seed;
                rec.evaluations = state.evaluations;
                rec.generations = state.generation;
                rec.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
                rec.front_counts = state.front_counts;
                rec.front_objectives = pareto_front_of(state.population, &rec.front_decisions);
                records[t] = std::move(rec);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    unsigned nthreads = config.threads ? config.threads : std::thread::hardware_concurrency();
    nthreads = std::max(1u, std::min<unsigned>(nthreads, tasks.size() ? tasks.size() : 1));
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);

    // Metrics pass (sequential): HV against the problem's reference box,
    // IGD against the problem's reference set.
    const NormalizationSpec hv_spec{ObjectiveVector(problem.m, 0.0), problem.hv_reference};
    const auto reference_set = igd_reference_set(problem, records);
    for (auto& rec : records) {
        rec.hv = hypervolume(rec.front_objectives, hv_spec);
        rec.igd_defined = !reference_set.empty();
        rec.igd = rec.igd_defined ? igd(rec.front_objectives, reference_set)
                                  : std::numeric_limits<double>::quiet_NaN();
    }

    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        nlohmann::json index;
        index["problem"] = problem.name;
        index["objectives"] = problem.m;
        index["decision_vars"] = problem.d;
        index["algorithm"] = algorithm_name(config.algorithm);
        index["population"] = config.population_size;
        index["budget"] = budget;
        index["runs"] = config.runs;
        index["seed_base"] = config.seed_base;
        index["angles_deg"] = usable_angles;
        for (const auto& [angle, why] : skipped) {
            index["skipped_angles"].push_back({{"angle_deg", angle}, {"reason", why}});
        }
        if (problem.igd_from_merged_runs && !reference_set.empty()) {
            std::ofstream ref(config.output_dir / "reference_set.dat");
            ref << "# merged nondominated union across all runs of this experiment\n";
            write_vector_lines(ref, reference_set);
            index["reference_set"] = "reference_set.dat";
        } else if (!problem.reference_set_path.empty()) {
            index["reference_set"] = problem.reference_set_path.string();
        }

        for (std::size_t t = 0; t < tasks.size(); ++t) {
            const std::string name =
                "run_a" + fmt_angle(tasks[t].angle_deg) + "_r" + std::to_string(tasks[t].run_idx) + ".txt";
            save_run_record(records[t], config.output_dir / name);
            index["runs_index"].push_back({{"file", name},
                                           {"angle_deg", tasks[t].angle_deg},
                                           {"run", tasks[t].run_idx},
                                           {"seed", records[t].seed},
                                           {"hv", records[t].hv},
                                           {"igd", records[t].igd_defined ? records[t].igd : -1.0},
                                           {"evaluations", records[t].evaluations},
                                           {"wall_seconds", records[t].wall_seconds}});
        }
        std::ofstream out(config.output_dir / "index.json");
        out << index.dump(2) << '\n';
    }
    return records;
}

void save_run_record(const RunRecord& record, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write run record " + file.string());
    out << "# moco run record\n";
    out << "problem " << record.problem << '\n';
    out << "objectives " << record.m << '\n';
    out << "decision_vars " << record.d << '\n';
    out << "algorithm " << algorithm_name(record.algorithm) << '\n';
    out << "angle_deg " << fmt_double(record.angle_deg) << '\n';
    out << "population " << record.population << '\n';
    out << "budget " << record.budget << '\n';
    out << "seed " << record.seed << '\n';
    out << "evaluations " << record.evaluations << '\n';
    out << "generations " << record.generations << '\n';
    out << "hv " << fmt_double(record.hv) << '\n';
    out << "igd_defined " << (record.igd_defined ? 1 : 0) << '\n';
    // streams cannot read back "nan", so an undefined IGD is stored as 0
    out << "igd " << fmt_double(record.igd_defined ? record.igd : 0.0) << '\n';
    out << "layer_counts";
    for (int c : record.front_counts) out << ' ' << c;
    out << '\n';
    out << "front_size " << record.front_objectives.size() << '\n';
    out << "front_objectives\n";
    write_vector_lines(out, record.front_objectives);
    out << "front_decisions\n";
    write_vector_lines(out, record.front_decisions);
    if (!out) throw std::runtime_error("failed writing run record " + file.string());
}

namespace {

std::vector<double> parse_doubles(const std::string& line) {
    std::vector<double> out;
    std::istringstream ss(line);
    double v;
    while (ss >> v) out.push_back(v);
    return out;
}

}  // namespace

RunRecord load_run_record(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open run record " + file.string());
    RunRecord rec;
    std::string line;
    std::size_t front_size = 0;
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("corrupt run record " + file.string() + ": " + why);
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "problem") {
            ss >> rec.problem;
        } else if (key == "objectives") {
            ss >> rec.m;
        } else if (key == "decision_vars") {
            ss >> rec.d;
        } else if (key == "algorithm") {
            std::string name;
            ss >> name;
            rec.algorithm = parse_algorithm(name);
        } else if (key == "angle_deg") {
            ss >> rec.angle_deg;
        } else if (key == "population") {
            ss >> rec.population;
        } else if (key == "budget") {
            ss >> rec.budget;
        } else if (key == "seed") {
            ss >> rec.seed;
        } else if (key == "evaluations") {
            ss >> rec.evaluations;
        } else if (key == "generations") {
            ss >> rec.generations;
        } else if (key == "hv") {
            ss >> rec.hv;
        } else if (key == "igd_defined") {
            int flag = 0;
            ss >> flag;
            rec.igd_defined = flag != 0;
        } else if (key == "igd") {
            ss >> rec.igd;
        } else if (key == "layer_counts") {
            int c;
            while (ss >> c) rec.front_counts.push_back(c);
        } else if (key == "front_size") {
            ss >> front_size;
        } else if (key == "front_objectives") {
            for (std::size_t i = 0; i < front_size; ++i) {
                if (!std::getline(in, line)) fail("truncated front_objectives");
                auto row = parse_doubles(line);
                if (row.size() != rec.m) fail("front point with wrong dimension");
                rec.front_objectives.push_back(std::move(row));
            }
        } else if (key == "front_decisions") {
            for (std::size_t i = 0; i < front_size; ++i) {
                if (!std::getline(in, line)) fail("truncated front_decisions");
                auto row = parse_doubles(line);
                if (row.size() != rec.d) fail("decision vector with wrong dimension");
                rec.front_decisions.push_back(std::move(row));
            }
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (rec.front_objectives.size() != front_size) fail("front_size mismatch");
    if (!rec.igd_defined) rec.igd = std::numeric_limits<double>::quiet_NaN();
    return rec;
}

std::vector<RunRecord> load_experiment(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("run_", 0) == 0 && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::vector<RunRecord> records;
    records.reserve(files.size());
    for (const auto& f : files) records.push_back(load_run_record(f));
    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
        if (a.angle_deg != b.angle_deg) return a.angle_deg < b.angle_deg;
        return a.seed < b.seed;
    });
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    std::vector<RunRecord const*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(), [](const RunRecord* a, const RunRecord* b) {
        if (a->algorithm != b->algorithm) return a->algorithm < b->algorithm;
        if (a->angle_deg != b->angle_deg) return a->angle_deg < b->angle_deg;
        return a->seed < b->seed;
    });

    std::vector<SummaryRow> rows;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j]->algorithm == sorted[i]->algorithm &&
               sorted[j]->angle_deg == sorted[i]->angle_deg) {
            ++j;
        }
        const auto n = static_cast<double>(j - i);
        double hv_sum = 0.0, igd_sum = 0.0;
        long igd_n = 0;
        for (std::size_t k = i; k < j; ++k) {
            hv_sum += sorted[k]->hv;
            if (sorted[k]->igd_defined && std::isfinite(sorted[k]->igd)) {
                igd_sum += sorted[k]->igd;
                ++igd_n;
            }
        }
        const double hv_mean = hv_sum / n;
        const double igd_mean = igd_n ? igd_sum / static_cast<double>(igd_n)
                                      : std::numeric_limits<double>::quiet_NaN();
        double hv_var = 0.0, igd_var = 0.0;
        for (std::size_t k = i; k < j; ++k) {
            hv_var += (sorted[k]->hv - hv_mean) * (sorted[k]->hv - hv_mean);
            if (sorted[k]->igd_defined && std::isfinite(sorted[k]->igd)) {
                igd_var += (sorted[k]->igd - igd_mean) * (sorted[k]->igd - igd_mean);
            }
        }
        SummaryRow row;
        row.algorithm = sorted[i]->algorithm;
        row.angle_deg = sorted[i]->angle_deg;
        row.runs = static_cast<int>(j - i);
        row.hv_mean = hv_mean;
        row.hv_std = (j - i) > 1 ? std::sqrt(hv_var / (n - 1.0)) : 0.0;
        row.igd_mean = igd_mean;
        row.igd_std = igd_n > 1 ? std::sqrt(igd_var / static_cast<double>(igd_n - 1)) : 0.0;
        row.hv_rank = 0;
        rows.push_back(row);
        i = j;
    }

    // Hypervolume ranking within each algorithm, ties to the lower angle.
    for (std::size_t lo = 0; lo < rows.size();) {
        std::size_t hi = lo;
        while (hi < rows.size() && rows[hi].algorithm == rows[lo].algorithm) ++hi;
        std::vector<std::size_t> order;
        for (std::size_t k = lo; k < hi; ++k) order.push_back(k);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (rows[a].hv_mean != rows[b].hv_mean) return rows[a].hv_mean > rows[b].hv_mean;
            return rows[a].angle_deg < rows[b].angle_deg;
        });
        for (std::size_t r = 0; r < order.size(); ++r) rows[order[r]].hv_rank = static_cast<int>(r + 1);
        lo = hi;
    }
    return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "algorithm,angle_deg,runs,hv_mean,hv_std,igd_mean,igd_std,hv_rank\n";
    for (const auto& r : rows) {
        out << algorithm_name(r.algorithm) << ',' << fmt_angle(r.angle_deg) << ',' << r.runs << ','
            << fmt_double(r.hv_mean) << ',' << fmt_double(r.hv_std) << ',' << fmt_double(r.igd_mean)
            << ',' << fmt_double(r.igd_std) << ',' << r.hv_rank << '\n';
    }
    return out.str();
}

std::string summary_markdown(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    char buf[64];
    out << "| algorithm | angle (deg) | runs | mean HV | std HV | mean IGD | std IGD | HV rank |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        out << "| " << algorithm_name(r.algorithm) << " | " << fmt_angle(r.angle_deg) << " | " << r.runs;
        std::snprintf(buf, sizeof buf, " | %.4f | %.4f | %.4f | %.4f", r.hv_mean, r.hv_std, r.igd_mean,
                      r.igd_std);
        out << buf << " | " << r.hv_rank << " |\n";
    }
    return out.str();
}

void emit_layer_series(const RunRecord& record, std::ostream& out) {
    out << "# front counts for " << record.problem << " m=" << record.m << ", "
        << algorithm_name(record.algorithm) << ", angle " << fmt_angle(record.angle_deg)
        << " deg, seed " << record.seed << '\n';
    out << "# one row per generation; one generation = " << record.population << " evaluations\n";
    out << "generation,front_count\n";
    for (std::size_t g = 0; g < record.front_counts.size(); ++g) {
        out << g << ',' << record.front_counts[g] << '\n';
    }
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    if (j.contains("problem")) cfg.problem_id = j["problem"].get<std::string>();
    if (j.contains("objectives")) cfg.objectives = j["objectives"].get<std::size_t>();
    if (j.contains("algorithm")) cfg.algorithm = parse_algorithm(j["algorithm"].get<std::string>());
    if (j.contains("angles")) cfg.angles_deg = j["angles"].get<std::vector<double>>();
    if (j.contains("runs")) cfg.runs = j["runs"].get<int>();
    if (j.contains("half_budget") && j["half_budget"].get<bool>()) cfg.budget_mode = BudgetMode::Half;
    if (j.contains("budget")) {
        cfg.budget_mode = BudgetMode::Custom;
        cfg.custom_budget = j["budget"].get<long>();
    }
    if (j.contains("population")) cfg.population_size = j["population"].get<int>();
    if (j.contains("seed_base")) cfg.seed_base = j["seed_base"].get<std::uint64_t>();
    if (j.contains("out")) cfg.output_dir = j["out"].get<std::string>();
    if (j.contains("data_dir")) cfg.data_dir = j["data_dir"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
    return cfg;
}

}  // namespace moco
