#include "moco/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "moco/reference_directions.hpp"

namespace moco {

namespace {

constexpr double kVarEps = 1e-14;
const double kInf = std::numeric_limits<double>::infinity();

double clamp_to(double v, const std::pair<double, double>& b) {
    return std::clamp(v, b.first, b.second);
}

std::vector<ObjectiveVector> objectives_of(const std::vector<Individual>& pop) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.f);
    return objs;
}

double euclidean(const ObjectiveVector& a, const ObjectiveVector& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        d2 += t * t;
    }
    return std::sqrt(d2);
}

// Nearest-neighbor distance of every front member, +inf for a singleton.
std::vector<double> nearest_gaps(const std::vector<ObjectiveVector>& front) {
    const std::size_t n = front.size();
    std::vector<double> gap(n, kInf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean(front[i], front[j]);
            gap[i] = std::min(gap[i], d);
            gap[j] = std::min(gap[j], d);
        }
    }
    return gap;
}

double sbx_spread(double u, double eta, double beta_bound) {
    const double alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
    if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
}

}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Nsga2: return "nsga2";
        case Algorithm::Dimoea: return "dimoea";
        case Algorithm::Nsga3: return "nsga3";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "nsga2") return Algorithm::Nsga2;
    if (name == "dimoea") return Algorithm::Dimoea;
    if (name == "nsga3") return Algorithm::Nsga3;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    std::span<const double> p1, std::span<const double> p2,
    std::span<const std::pair<double, double>> bounds, double eta, double rate, Rng& rng) {
    if (p1.size() != p2.size() || p1.size() != bounds.size()) {
        throw std::invalid_argument("sbx_crossover: mismatched lengths");
    }
    std::vector<double> c1(p1.begin(), p1.end());
    std::vector<double> c2(p2.begin(), p2.end());
    if (rng.unit() > rate) return {std::move(c1), std::move(c2)};

    for (std::size_t j = 0; j < p1.size(); ++j) {
        if (rng.unit() > 0.5) continue;
        const double a = p1[j];
        const double b = p2[j];
        if (std::fabs(a - b) <= kVarEps) continue;
        const double y1 = std::min(a, b);
        const double y2 = std::max(a, b);
        const double yl = bounds[j].first;
        const double yu = bounds[j].second;
        const double u = rng.unit();

        double betaq = sbx_spread(u, eta, 1.0 + 2.0 * (y1 - yl) / (y2 - y1));
        double v1 = clamp_to(0.5 * ((y1 + y2) - betaq * (y2 - y1)), bounds[j]);
        betaq = sbx_spread(u, eta, 1.0 + 2.0 * (yu - y2) / (y2 - y1));
        double v2 = clamp_to(0.5 * ((y1 + y2) + betaq * (y2 - y1)), bounds[j]);

        if (rng.unit() <= 0.5) std::swap(v1, v2);
        c1[j] = v1;
        c2[j] = v2;
    }
    return {std::move(c1), std::move(c2)};
}

std::vector<double> polynomial_mutation(std::span<const double> x,
                                        std::span<const std::pair<double, double>> bounds,
                                        double eta, double rate, Rng& rng) {
    if (x.size() != bounds.size()) throw std::invalid_argument("polynomial_mutation: mismatched lengths");
    std::vector<double> y(x.begin(), x.end());
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (rng.unit() > rate) continue;
        const double yl = bounds[j].first;
        const double yu = bounds[j].second;
        const double range = yu - yl;
        if (range <= 0.0) continue;
        const double u = rng.unit();
        const double mut_pow = 1.0 / (eta + 1.0);
        double deltaq;
        if (u < 0.5) {
            const double delta1 = (y[j] - yl) / range;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
            deltaq = std::pow(val, mut_pow) - 1.0;
        } else {
            const double delta2 = (yu - y[j]) / range;
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, mut_pow);
        }
        y[j] = clamp_to(y[j] + deltaq * range, bounds[j]);
    }
    return y;
}

std::vector<std::size_t> crowding_truncate(const std::vector<ObjectiveVector>& front, std::size_t keep) {
    const std::size_t n = front.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (keep >= n) return idx;
    const auto cd = crowding_distance(front);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (cd[a] != cd[b]) return cd[a] > cd[b];
        return a < b;
    });
    idx.resize(keep);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::size_t> gap_truncate(const std::vector<ObjectiveVector>& front, std::size_t keep) {
    const std::size_t n = front.size();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (keep >= n) return all;
    if (keep == 0) return {};

    const std::size_t m = front[0].size();
    std::vector<bool> protected_(n, false);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (front[i][k] < front[best][k]) best = i;
        }
        protected_[best] = true;
    }

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            dist[i][j] = dist[j][i] = euclidean(front[i], front[j]);
        }
    }

    std::vector<bool> alive(n, true);
    std::size_t alive_count = n;
    std::vector<std::size_t> nn1(n), nn2(n);
    std::vector<double> nn1d(n), nn2d(n);

    auto refresh_neighbors = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            double d1 = kInf, d2 = kInf;
            std::size_t i1 = i, i2 = i;
            for (std::size_t j = 0; j < n; ++j) {
                if (!alive[j] || j == i) continue;
                const double d = dist[i][j];
                if (d < d1) {
                    d2 = d1;
                    i2 = i1;
                    d1 = d;
                    i1 = j;
                } else if (d < d2) {
                    d2 = d;
                    i2 = j;
                }
            }
            nn1[i] = i1;
            nn2[i] = i2;
            nn1d[i] = d1;
            nn2d[i] = d2;
        }
    };

    auto log_gap = [](double d) { return std::log(std::max(d, 1e-300)); };

    while (alive_count > keep) {
        refresh_neighbors();
        // Removing i costs i's own gap and bumps everyone whose nearest
        // neighbor was i onto their second-nearest, so the log-space score
        // sum(log gap_j | j != i, i removed) decomposes as
        // total - log(gap_i) + delta_i. The 1/(count-1) geometric-mean
        // exponent is shared by all candidates and can be dropped.
        double total_log = 0.0;
        std::vector<double> delta(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (!alive[j]) continue;
            total_log += log_gap(nn1d[j]);
            delta[nn1[j]] += log_gap(nn2d[j]) - log_gap(nn1d[j]);
        }
        double best_score = -kInf;
        std::size_t victim = n;
        bool candidates_seen = false;
        for (int pass = 0; pass < 2 && !candidates_seen; ++pass) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!alive[i]) continue;
                if (pass == 0 && protected_[i]) continue;
                candidates_seen = true;
                const double score = total_log - log_gap(nn1d[i]) + delta[i];
                if (score > best_score) {
                    best_score = score;
                    victim = i;
                }
            }
        }
        alive[victim] = false;
        --alive_count;
    }

    std::vector<std::size_t> kept;
    kept.reserve(keep);
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) kept.push_back(i);
    }
    return kept;
}

std::vector<std::size_t> nsga3_select(const std::vector<ObjectiveVector>& pool,
                                      const FrontPartition& partition, std::size_t capacity,
                                      const std::vector<std::vector<double>>& directions, Rng& rng) {
    if (capacity > pool.size()) throw std::invalid_argument("nsga3_select: capacity exceeds pool");
    const std::size_t m = pool.empty() ? 0 : pool[0].size();

    std::vector<std::size_t> chosen;
    std::vector<std::size_t> considered;  // members of the fronts that fit plus the critical front
    std::size_t critical = 0;
    for (std::size_t fi = 0; fi < partition.fronts.size(); ++fi) {
        const auto& front = partition.fronts[fi];
        considered.insert(considered.end(), front.begin(), front.end());
        if (chosen.size() + front.size() <= capacity) {
            chosen.insert(chosen.end(), front.begin(), front.end());
            if (chosen.size() == capacity) return chosen;
        } else {
            critical = fi;
            break;
        }
    }

    // Normalize over every considered member: translate by the ideal point,
    // divide by intercepts of the hyperplane through the extreme points.
    std::vector<double> ideal(m, kInf);
    for (std::size_t idx : considered) {
        for (std::size_t k = 0; k < m; ++k) ideal[k] = std::min(ideal[k], pool[idx][k]);
    }
    std::vector<std::vector<double>> translated(considered.size(), std::vector<double>(m));
    for (std::size_t r = 0; r < considered.size(); ++r) {
        for (std::size_t k = 0; k < m; ++k) translated[r][k] = pool[considered[r]][k] - ideal[k];
    }

    std::vector<std::size_t> extreme(m);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = kInf;
        std::size_t arg = 0;
        for (std::size_t r = 0; r < considered.size(); ++r) {
            double asf = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                asf = std::max(asf, translated[r][k] / (k == axis ? 1.0 : 1e-6));
            }
            if (asf < best) {
                best = asf;
                arg = r;
            }
        }
        extreme[axis] = arg;
    }

    // Gaussian elimination for the intercepts; fall back to per-objective
    // maxima when the extreme points are degenerate.
    std::vector<double> intercepts(m, 0.0);
    {
        std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 1.0));
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t k = 0; k < m; ++k) a[r][k] = translated[extreme[r]][k];
        }
        bool ok = true;
        for (std::size_t col = 0; col < m && ok; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < m; ++r) {
                if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
            }
            if (std::fabs(a[piv][col]) < 1e-12) {
                ok = false;
                break;
            }
            std::swap(a[piv], a[col]);
            for (std::size_t r = 0; r < m; ++r) {
                if (r == col) continue;
                const double factor = a[r][col] / a[col][col];
                for (std::size_t k = col; k <= m; ++k) a[r][k] -= factor * a[col][k];
            }
        }
        if (ok) {
            for (std::size_t k = 0; k < m; ++k) {
                const double coef = a[k][m] / a[k][k];
                if (!(coef > 1e-10) || !std::isfinite(coef)) {
                    ok = false;
                    break;
                }
                intercepts[k] = 1.0 / coef;
            }
        }
        if (!ok) {
            for (std::size_t k = 0; k < m; ++k) {
                double mx = 0.0;
                for (const auto& t : translated) mx = std::max(mx, t[k]);
                intercepts[k] = mx > 1e-12 ? mx : 1.0;
            }
        }
    }
    for (auto& t : translated) {
        for (std::size_t k = 0; k < m; ++k) t[k] /= intercepts[k];
    }

    // Associate by perpendicular distance to each direction ray.
    std::vector<double> dir_norm2(directions.size(), 0.0);
    for (std::size_t w = 0; w < directions.size(); ++w) {
        for (double v : directions[w]) dir_norm2[w] += v * v;
    }
    std::vector<std::size_t> assoc(considered.size(), 0);
    std::vector<double> assoc_dist(considered.size(), 0.0);
    for (std::size_t r = 0; r < considered.size(); ++r) {
        double best = kInf;
        std::size_t arg = 0;
        for (std::size_t w = 0; w < directions.size(); ++w) {
            double dot = 0.0;
            for (std::size_t k = 0; k < m; ++k) dot += translated[r][k] * directions[w][k];
            const double proj = dot / dir_norm2[w];
            double d2 = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                const double t = translated[r][k] - proj * directions[w][k];
                d2 += t * t;
            }
            if (d2 < best) {
                best = d2;
                arg = w;
            }
        }
        assoc[r] = arg;
        assoc_dist[r] = std::sqrt(best);
    }

    std::vector<std::size_t> row_of(pool.size(), 0);
    for (std::size_t r = 0; r < considered.size(); ++r) row_of[considered[r]] = r;

    std::vector<long> niche(directions.size(), 0);
    for (std::size_t idx : chosen) ++niche[assoc[row_of[idx]]];

    std::vector<std::vector<std::size_t>> candidates(directions.size());
    for (std::size_t idx : partition.fronts[critical]) {
        candidates[assoc[row_of[idx]]].push_back(idx);
    }

    while (chosen.size() < capacity) {
        long min_count = std::numeric_limits<long>::max();
        for (std::size_t w = 0; w < directions.size(); ++w) {
            if (!candidates[w].empty()) min_count = std::min(min_count, niche[w]);
        }
        std::vector<std::size_t> tied;
        for (std::size_t w = 0; w < directions.size(); ++w) {
            if (!candidates[w].empty() && niche[w] == min_count) tied.push_back(w);
        }
        const std::size_t dir = tied[tied.size() == 1 ? 0 : rng.below(tied.size())];
        auto& cands = candidates[dir];
        std::size_t pick_pos;
        if (niche[dir] == 0) {
            pick_pos = 0;
            for (std::size_t c = 1; c < cands.size(); ++c) {
                if (assoc_dist[row_of[cands[c]]] < assoc_dist[row_of[cands[pick_pos]]]) pick_pos = c;
            }
        } else {
            pick_pos = cands.size() == 1 ? 0 : rng.below(cands.size());
        }
        chosen.push_back(cands[pick_pos]);
        cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(pick_pos));
        ++niche[dir];
    }
    return chosen;
}

EvolutionState initialize_state(const ProblemDefinition& problem, const AlgorithmConfig& config) {
    if (config.population_size <= 1) throw std::invalid_argument("population_size must exceed 1");
    if (config.budget < config.population_size) {
        throw std::invalid_argument("budget must cover at least the initial population");
    }

    EvolutionState state;
    state.rng = Rng(config.seed);
    state.population.reserve(static_cast<std::size_t>(config.population_size));
    for (int i = 0; i < config.population_size; ++i) {
        Individual ind;
        ind.x.resize(problem.d);
        for (std::size_t j = 0; j < problem.d; ++j) {
            const auto& b = problem.bounds[j];
            ind.x[j] = b.first + state.rng.unit() * (b.second - b.first);
        }
        ind.f = problem.evaluate(ind.x);
        state.population.push_back(std::move(ind));
    }
    state.evaluations = config.population_size;
    if (config.algorithm == Algorithm::Nsga3) {
        state.reference_directions = default_reference_directions(problem.m);
    }
    return state;
}

namespace {

void assign_rank_and_diversity(std::vector<Individual>& pop, const FrontPartition& part,
                               Algorithm algorithm) {
    for (const auto& front : part.fronts) {
        std::vector<ObjectiveVector> objs;
        objs.reserve(front.size());
        for (std::size_t idx : front) objs.push_back(pop[idx].f);

        std::vector<double> div;
        switch (algorithm) {
            case Algorithm::Nsga2: div = crowding_distance(objs); break;
            case Algorithm::Dimoea: div = nearest_gaps(objs); break;
            case Algorithm::Nsga3: div.assign(front.size(), 0.0); break;
        }
        for (std::size_t r = 0; r < front.size(); ++r) {
            pop[front[r]].rank = part.rank_of[front[r]];
            pop[front[r]].diversity = div[r];
        }
    }
}

std::size_t tournament(const std::vector<Individual>& pop, Rng& rng) {
    const std::size_t a = rng.below(pop.size());
    const std::size_t b = rng.below(pop.size());
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].diversity != pop[b].diversity) return pop[a].diversity > pop[b].diversity ? a : b;
    return a;
}

}  // namespace

bool run_generation(EvolutionState& state, const ProblemDefinition& problem,
                    const OrderSelector& selector, const AlgorithmConfig& config) {
    const auto n = static_cast<std::size_t>(config.population_size);
    if (state.evaluations + static_cast<long>(n) > config.budget) return false;

    // Order choice for this iteration, then ranks under that order.
    auto objs = objectives_of(state.population);
    auto sel = selector.select(objs);
    const ConeOrder& order = *sel.order;
    FrontPartition part =
        sel.rotated ? nondominated_sort(objs, order) : std::move(sel.pareto_partition);
    state.front_counts.push_back(static_cast<int>(part.fronts.size()));
    assign_rank_and_diversity(state.population, part, config.algorithm);

    const double pm_rate =
        config.pm_rate >= 0.0 ? config.pm_rate : 1.0 / static_cast<double>(problem.d);

    std::vector<Individual> offspring;
    offspring.reserve(n);
    while (offspring.size() < n) {
        std::size_t pa, pb;
        if (config.algorithm == Algorithm::Nsga3) {
            // reference-point survival provides the pressure; parents are
            // drawn uniformly
            pa = state.rng.below(n);
            pb = state.rng.below(n);
        } else {
            pa = tournament(state.population, state.rng);
            pb = tournament(state.population, state.rng);
        }
        auto children = sbx_crossover(state.population[pa].x, state.population[pb].x,
                                      problem.bounds, config.sbx_eta, config.sbx_rate, state.rng);
        for (auto* cx : {&children.first, &children.second}) {
            if (offspring.size() == n) break;
            Individual child;
            child.x = polynomial_mutation(*cx, problem.bounds, config.pm_eta, pm_rate, state.rng);
            child.f = problem.evaluate(child.x);
            offspring.push_back(std::move(child));
        }
    }
    state.evaluations += static_cast<long>(n);

    std::vector<Individual> pool = std::move(state.population);
    pool.insert(pool.end(), std::make_move_iterator(offspring.begin()),
                std::make_move_iterator(offspring.end()));
    auto pool_objs = objectives_of(pool);
    FrontPartition pool_part = nondominated_sort(pool_objs, order);

    std::vector<std::size_t> survivors;
    if (config.algorithm == Algorithm::Nsga3) {
        survivors = nsga3_select(pool_objs, pool_part, n, state.reference_directions, state.rng);
    } else {
        survivors.reserve(n);
        for (const auto& front : pool_part.fronts) {
            if (survivors.size() + front.size() <= n) {
                survivors.insert(survivors.end(), front.begin(), front.end());
                if (survivors.size() == n) break;
            } else {
                std::vector<ObjectiveVector> critical;
                critical.reserve(front.size());
                for (std::size_t idx : front) critical.push_back(pool_objs[idx]);
                const auto keep = config.algorithm == Algorithm::Dimoea
                                      ? gap_truncate(critical, n - survivors.size())
                                      : crowding_truncate(critical, n - survivors.size());
                for (std::size_t local : keep) survivors.push_back(front[local]);
                break;
            }
        }
    }

    state.population.clear();
    state.population.reserve(n);
    for (std::size_t idx : survivors) {
        pool[idx].rank = pool_part.rank_of[idx];
        state.population.push_back(std::move(pool[idx]));
    }
    ++state.generation;
    return true;
}

void run_to_budget(EvolutionState& state, const ProblemDefinition& problem,
                   const OrderSelector& selector, const AlgorithmConfig& config) {
    while (run_generation(state, problem, selector, config)) {
    }
}

}  // namespace moco
