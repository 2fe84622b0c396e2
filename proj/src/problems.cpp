#include "moco/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "moco/reference_directions.hpp"

namespace moco {

namespace {

constexpr double kPi = std::numbers::pi;

ObjectiveVector dtlz1_objectives(std::span<const double> x, std::size_t m) {
    const std::size_t d = x.size();
    const std::size_t k = d - m + 1;
    double g = 0.0;
    for (std::size_t i = d - k; i < d; ++i) {
        const double t = x[i] - 0.5;
        g += t * t - std::cos(20.0 * kPi * t);
    }
    g = 100.0 * (static_cast<double>(k) + g);

    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 0.5 * (1.0 + g);
        for (std::size_t j = 0; j + i + 1 < m; ++j) v *= x[j];
        if (i > 0) v *= 1.0 - x[m - 1 - i];
        f[i] = v;
    }
    return f;
}

ObjectiveVector dtlz2_objectives(std::span<const double> x, std::size_t m) {
    const std::size_t d = x.size();
    const std::size_t k = d - m + 1;
    double g = 0.0;
    for (std::size_t i = d - k; i < d; ++i) {
        const double t = x[i] - 0.5;
        g += t * t;
    }

    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double v = 1.0 + g;
        for (std::size_t j = 0; j + i + 1 < m; ++j) v *= std::cos(x[j] * kPi / 2.0);
        if (i > 0) v *= std::sin(x[m - 1 - i] * kPi / 2.0);
        f[i] = v;
    }
    return f;
}

// Smallest Das-Dennis division p whose lattice has at least n points.
unsigned lattice_division_for(std::size_t m, std::size_t n) {
    for (unsigned p = 1;; ++p) {
        double count = 1.0;  // C(m-1+p, m-1)
        for (unsigned i = 1; i < m; ++i) {
            count *= static_cast<double>(p + i) / static_cast<double>(i);
        }
        if (count + 0.5 >= static_cast<double>(n)) return p;
    }
}

// Evenly strided subset of size n (assumes pts.size() >= n).
std::vector<ObjectiveVector> strided_subset(std::vector<ObjectiveVector> pts, std::size_t n) {
    if (pts.size() <= n) return pts;
    std::vector<ObjectiveVector> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::move(pts[i * pts.size() / n]));
    }
    return out;
}

std::vector<ObjectiveVector> simplex_front(std::size_t m, std::size_t n, double scale) {
    auto pts = das_dennis_weights(m, lattice_division_for(m, n));
    for (auto& w : pts) {
        for (double& v : w) v *= scale;
    }
    return strided_subset(std::move(pts), n);
}

std::vector<ObjectiveVector> sphere_front(std::size_t m, std::size_t n, double shift) {
    auto pts = das_dennis_weights(m, lattice_division_for(m, n));
    for (auto& w : pts) {
        double norm = 0.0;
        for (double v : w) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : w) v = v / norm + shift;
    }
    return strided_subset(std::move(pts), n);
}

std::vector<std::pair<double, double>> unit_bounds(std::size_t d) {
    return std::vector<std::pair<double, double>>(d, {0.0, 1.0});
}

// ---- WFG1 transformation chain (five objectives, k position parameters) ----

double correct_to_01(double v) {
    if (v < 0.0 && v > -1e-10) return 0.0;
    if (v > 1.0 && v < 1.0 + 1e-10) return 1.0;
    return v;
}

double shift_linear(double y, double a) {
    return correct_to_01(std::fabs(y - a) / std::fabs(std::floor(a - y) + a));
}

double bias_flat(double y, double a, double b, double c) {
    const double v = a + std::min(0.0, std::floor(y - b)) * a * (b - y) / b -
                     std::min(0.0, std::floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c);
    return correct_to_01(v);
}

double weighted_sum(std::span<const double> ys, std::span<const double> ws) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        num += ws[i] * ys[i];
        den += ws[i];
    }
    return correct_to_01(num / den);
}

ObjectiveVector wfg1_objectives(std::span<const double> z, std::size_t m, std::size_t k) {
    const std::size_t n = z.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = z[i] / (2.0 * static_cast<double>(i + 1));

    for (std::size_t i = k; i < n; ++i) y[i] = shift_linear(y[i], 0.35);
    for (std::size_t i = k; i < n; ++i) y[i] = bias_flat(y[i], 0.8, 0.75, 0.85);
    for (std::size_t i = 0; i < n; ++i) y[i] = correct_to_01(std::pow(y[i], 0.02));

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 2.0 * static_cast<double>(i + 1);

    std::vector<double> t(m);
    const std::size_t group = k / (m - 1);
    for (std::size_t j = 0; j < m - 1; ++j) {
        const std::size_t lo = j * group;
        t[j] = weighted_sum(std::span(y).subspan(lo, group), std::span(w).subspan(lo, group));
    }
    t[m - 1] = weighted_sum(std::span(y).subspan(k, n - k), std::span(w).subspan(k, n - k));

    // Degeneracy constants are all 1 for WFG1, so the underlying parameters
    // coincide with t.
    const std::vector<double>& u = t;

    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double h;
        if (i + 1 < m) {
            h = 1.0;
            for (std::size_t j = 0; j + i + 2 <= m; ++j) h *= 1.0 - std::cos(u[j] * kPi / 2.0);
            if (i > 0) h *= 1.0 - std::sin(u[m - 1 - i] * kPi / 2.0);
        } else {
            // mixed shape, alpha = 1, A = 5
            h = 1.0 - u[0] - std::cos(10.0 * kPi * u[0] + kPi / 2.0) / (10.0 * kPi);
        }
        f[i] = u[m - 1] + 2.0 * static_cast<double>(i + 1) * h;
    }
    return f;
}

// ---- rotated DTLZ2 evaluation (CEC-2009 extended instance) ----

ObjectiveVector rotated_dtlz2_objectives(std::span<const double> x, std::size_t m,
                                         const std::vector<std::vector<double>>& rotation,
                                         const std::vector<double>& lambda) {
    const std::size_t n = x.size();
    std::vector<double> zz(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j < n; ++j) z += rotation[i][j] * x[j];
        if (z >= 0.0 && z <= 1.0) {
            zz[i] = z;
            p[i] = 0.0;
        } else if (z < 0.0) {
            zz[i] = -lambda[i] * z;
            p[i] = -z;
        } else {
            zz[i] = 1.0 - lambda[i] * (z - 1.0);
            p[i] = z - 1.0;
        }
    }

    // Distance variables occupy the last n - m + 1 slots; out-of-bounds
    // violations accumulate into a per-objective penalty.
    double g = 0.0;
    std::vector<double> psum(m, 0.0);
    for (std::size_t i = m - 1; i < n; ++i) {
        const double t = zz[i] - 0.5;
        g += t * t;
        for (std::size_t j = 0; j < m; ++j) psum[j] = std::hypot(psum[j], p[i]);
    }

    ObjectiveVector f(m);
    for (std::size_t i = 0; i < m; ++i) {
        double ff = 1.0 + g;
        for (std::size_t j = 0; j + i + 1 < m; ++j) {
            ff *= std::cos(zz[j] * kPi / 2.0);
            psum[i] = std::hypot(psum[i], p[j]);
        }
        if (i > 0) {
            ff *= std::sin(zz[m - 1 - i] * kPi / 2.0);
            psum[i] = std::hypot(psum[i], p[m - 1 - i]);
        }
        f[i] = 2.0 / (1.0 + std::exp(-psum[i])) * (ff + 1.0);
    }
    return f;
}

void require_objectives(std::size_t m) {
    if (m < 2) throw std::invalid_argument("problem needs at least 2 objectives");
}

}  // namespace

ProblemDefinition dtlz1(std::size_t m) {
    require_objectives(m);
    ProblemDefinition p;
    p.name = "dtlz1";
    p.m = m;
    p.d = m + 4;  // k = 5 distance variables
    p.bounds = unit_bounds(p.d);
    p.evaluate = [m](std::span<const double> x) { return dtlz1_objectives(x, m); };
    p.hv_reference.assign(m, 0.6);
    p.front_sampler = [m](std::size_t n) { return simplex_front(m, n, 0.5); };
    return p;
}

ProblemDefinition dtlz2(std::size_t m) {
    require_objectives(m);
    ProblemDefinition p;
    p.name = "dtlz2";
    p.m = m;
    p.d = m + 9;  // k = 10 distance variables
    p.bounds = unit_bounds(p.d);
    p.evaluate = [m](std::span<const double> x) { return dtlz2_objectives(x, m); };
    p.hv_reference.assign(m, 1.1);
    p.front_sampler = [m](std::size_t n) { return sphere_front(m, n, 0.0); };
    return p;
}

ProblemDefinition dtlz2_convex(std::size_t m) {
    require_objectives(m);
    ProblemDefinition p = dtlz2(m);
    p.name = "dtlz2_convex";
    p.evaluate = [m](std::span<const double> x) {
        ObjectiveVector f = dtlz2_objectives(x, m);
        for (double& v : f) v -= 3.5;
        return f;
    };
    p.hv_reference.assign(m, 5.0);
    p.front_sampler = [m](std::size_t n) { return sphere_front(m, n, -3.5); };
    p.igd_from_merged_runs = true;
    return p;
}

ProblemDefinition uf11(const std::filesystem::path& data_dir) {
    constexpr std::size_t m = 5;
    constexpr std::size_t d = 30;

    const auto rotation_file = data_dir / "uf11_rotation.dat";
    const auto lambda_file = data_dir / "uf11_lambda.dat";
    auto rotation = load_matrix(rotation_file);
    if (rotation.size() != d) {
        throw std::runtime_error("uf11: expected " + std::to_string(d) + " rotation rows in " +
                                 rotation_file.string() + ", got " + std::to_string(rotation.size()));
    }
    for (const auto& row : rotation) {
        if (row.size() != d) {
            throw std::runtime_error("uf11: ragged rotation matrix in " + rotation_file.string());
        }
    }
    auto lambda_rows = load_matrix(lambda_file);
    std::vector<double> lambda;
    for (const auto& row : lambda_rows) lambda.insert(lambda.end(), row.begin(), row.end());
    if (lambda.size() != d) {
        throw std::runtime_error("uf11: expected " + std::to_string(d) + " scaling values in " +
                                 lambda_file.string() + ", got " + std::to_string(lambda.size()));
    }

    ProblemDefinition p;
    p.name = "uf11";
    p.m = m;
    p.d = d;
    p.bounds = unit_bounds(d);
    p.evaluate = [rotation = std::move(rotation), lambda = std::move(lambda)](std::span<const double> x) {
        return rotated_dtlz2_objectives(x, m, rotation, lambda);
    };
    p.hv_reference.assign(m, 2.2);
    // Feasible optima have zero repair penalty, so the front is the DTLZ2
    // sphere shifted by +1.
    p.front_sampler = [](std::size_t n) { return sphere_front(m, n, 1.0); };
    const auto ref = data_dir / "uf11_reference_front.dat";
    if (std::filesystem::exists(ref)) p.reference_set_path = ref;
    return p;
}

ProblemDefinition uf13(const std::filesystem::path& data_dir) {
    constexpr std::size_t m = 5;
    constexpr std::size_t d = 30;
    constexpr std::size_t k = 8;  // position parameters; divisible by m - 1

    ProblemDefinition p;
    p.name = "uf13";
    p.m = m;
    p.d = d;
    p.bounds.reserve(d);
    for (std::size_t i = 0; i < d; ++i) p.bounds.push_back({0.0, 2.0 * static_cast<double>(i + 1)});
    p.evaluate = [](std::span<const double> x) { return wfg1_objectives(x, m, k); };
    p.hv_reference.assign(m, 11.0);
    // Optimal solutions: distance parameters at 0.35 of their range, position
    // parameters biased by the inverse of the polynomial transformation.
    auto evaluate = p.evaluate;
    p.front_sampler = [evaluate](std::size_t n) {
        std::mt19937_64 rng(0x5f3759df);
        auto unit = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
        std::vector<ObjectiveVector> front;
        front.reserve(n);
        std::vector<double> x(d);
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t i = 0; i < k; ++i) {
                x[i] = std::pow(unit(), 50.0) * 2.0 * static_cast<double>(i + 1);
            }
            for (std::size_t i = k; i < d; ++i) x[i] = 0.35 * 2.0 * static_cast<double>(i + 1);
            front.push_back(evaluate(x));
        }
        return front;
    };
    const auto ref = data_dir / "uf13_reference_front.dat";
    if (std::filesystem::exists(ref)) p.reference_set_path = ref;
    return p;
}

ProblemDefinition make_problem(const std::string& id, std::size_t m,
                               const std::filesystem::path& data_dir) {
    if (id == "dtlz1") return dtlz1(m);
    if (id == "dtlz2") return dtlz2(m);
    if (id == "dtlz2_convex") return dtlz2_convex(m);
    if (id == "uf11" || id == "uf13") {
        if (m != 0 && m != 5) {
            throw std::invalid_argument(id + " is a five-objective problem (got m = " +
                                        std::to_string(m) + ")");
        }
        return id == "uf11" ? uf11(data_dir) : uf13(data_dir);
    }
    throw std::invalid_argument("unknown problem id '" + id + "'");
}

std::vector<std::vector<double>> load_matrix(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open data file " + file.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (!ss.eof()) {
            throw std::runtime_error("corrupt numeric data at " + file.string() + ":" +
                                     std::to_string(lineno));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("no data rows in " + file.string());
    return rows;
}

std::vector<ObjectiveVector> load_reference_set(const std::filesystem::path& file, std::size_t m) {
    auto rows = load_matrix(file);
    for (const auto& row : rows) {
        if (row.size() != m) {
            throw std::runtime_error("reference set " + file.string() + " has a row with " +
                                     std::to_string(row.size()) + " columns, expected " +
                                     std::to_string(m));
        }
    }
    return rows;
}

}  // namespace moco
