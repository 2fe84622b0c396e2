#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moco/metrics.hpp"
#include "oracles.hpp"

using namespace moco;
using moco::testing::TestRng;

namespace {

NormalizationSpec unit_spec(std::size_t m) {
    return {ObjectiveVector(m, 0.0), ObjectiveVector(m, 1.0)};
}

}  // namespace

TEST_CASE("two-point 2-D example by inclusion-exclusion") {
    const std::vector<ObjectiveVector> front{{0.25, 0.75}, {0.75, 0.25}};
    // 0.1875 + 0.1875 - 0.0625
    CHECK(hypervolume(front, unit_spec(2)) == doctest::Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("degenerate fronts") {
    CHECK(hypervolume({}, unit_spec(3)) == 0.0);
    CHECK(hypervolume({{1.0, 1.0, 1.0}}, unit_spec(3)) == 0.0);  // at the reference
    CHECK(hypervolume({{2.0, 0.1}}, unit_spec(2)) == 0.0);       // beyond it
    // below the ideal: clamped, dominates the whole box
    CHECK(hypervolume({{-3.0, -3.0}}, unit_spec(2)) == doctest::Approx(1.0));
}

TEST_CASE("normalization uses ideal and reference anchors") {
    const NormalizationSpec spec{{0.0, 0.0}, {2.0, 4.0}};
    // normalized point (0.5, 0.5)
    CHECK(hypervolume({{1.0, 2.0}}, spec) == doctest::Approx(0.25));
    CHECK_THROWS_AS(hypervolume({{0.5, 0.5}}, NormalizationSpec{{0.0, 0.0}, {1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("dominated and duplicate points do not change the hypervolume") {
    TestRng rng(31);
    for (std::size_t m : {2, 3, 5}) {
        auto front = rng.point_set(20, m, 0.1, 0.9);
        const double base = hypervolume(front, unit_spec(m));
        auto augmented = front;
        augmented.push_back(front[3]);  // duplicate
        ObjectiveVector dominated = front[5];
        for (double& v : dominated) v = std::min(0.99, v + 0.005);
        augmented.push_back(dominated);
        CHECK(hypervolume(augmented, unit_spec(m)) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("adding a point never decreases the hypervolume") {
    TestRng rng(32);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t m = 2 + rng.below(5);
        auto front = rng.point_set(15, m);
        const double before = hypervolume(front, unit_spec(m));
        front.push_back(rng.vector(m));
        CHECK(hypervolume(front, unit_spec(m)) >= before - 1e-12);
    }
}

TEST_CASE("3-D hand example cross-checked against an inclusion-exclusion oracle") {
    // three boxes; exact union volume via inclusion-exclusion over pair/triple maxima
    const std::vector<ObjectiveVector> front{{0.2, 0.6, 0.5}, {0.6, 0.2, 0.55}, {0.5, 0.5, 0.1}};
    auto vol = [](const ObjectiveVector& p) {
        return (1 - p[0]) * (1 - p[1]) * (1 - p[2]);
    };
    auto cup = [](const ObjectiveVector& a, const ObjectiveVector& b) {
        ObjectiveVector u(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) u[i] = std::max(a[i], b[i]);
        return u;
    };
    const double expected = vol(front[0]) + vol(front[1]) + vol(front[2]) -
                            vol(cup(front[0], front[1])) - vol(cup(front[0], front[2])) -
                            vol(cup(front[1], front[2])) + vol(cup(cup(front[0], front[1]), front[2]));
    CHECK(hypervolume(front, unit_spec(3)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("exact hypervolume agrees with the Monte-Carlo estimator") {
    TestRng rng(33);
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t m = 2 + rng.below(5);
        const std::size_t n = 1 + rng.below(30);
        const auto front = rng.point_set(n, m);
        const double exact = hypervolume(front, unit_spec(m));
        const auto mc = hypervolume_monte_carlo(front, unit_spec(m), 100000, 900 + rep);
        CHECK(std::fabs(exact - mc.value) <= 3.0 * std::max(mc.standard_error, 1e-9));
    }
}

TEST_CASE("igd worked examples") {
    const std::vector<ObjectiveVector> ref{{0, 1}, {1, 0}};
    CHECK(igd(ref, ref) == doctest::Approx(0.0));
    CHECK(igd({{0, 0}}, ref) == doctest::Approx(1.0));
    CHECK(std::isinf(igd({}, ref)));
    CHECK_THROWS_AS(igd(ref, {}), std::invalid_argument);
}

TEST_CASE("igd is permutation invariant and scales linearly") {
    TestRng rng(34);
    const auto front = rng.point_set(25, 3);
    const auto ref = rng.point_set(40, 3);
    const double base = igd(front, ref);

    auto front_shuffled = front;
    std::reverse(front_shuffled.begin(), front_shuffled.end());
    auto ref_shuffled = ref;
    std::rotate(ref_shuffled.begin(), ref_shuffled.begin() + 17, ref_shuffled.end());
    CHECK(igd(front_shuffled, ref_shuffled) == doctest::Approx(base).epsilon(1e-12));

    auto scale = [](std::vector<ObjectiveVector> pts, double s) {
        for (auto& p : pts) {
            for (double& v : p) v *= s;
        }
        return pts;
    };
    CHECK(igd(scale(front, 2.5), scale(ref, 2.5)) == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("igd equals the brute-force double loop") {
    TestRng rng(35);
    const auto front = rng.point_set(15, 4);
    const auto ref = rng.point_set(25, 4);
    double total = 0.0;
    for (const auto& r : ref) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : front) {
            double d = 0.0;
            for (std::size_t i = 0; i < 4; ++i) d += (f[i] - r[i]) * (f[i] - r[i]);
            best = std::min(best, std::sqrt(d));
        }
        total += best;
    }
    CHECK(igd(front, ref) == doctest::Approx(total / 25.0).epsilon(1e-12));
}
