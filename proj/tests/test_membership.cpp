#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cobweb/core.hpp"
#include "cobweb/membership.hpp"

using namespace cobweb;

namespace {

Grid unit_cells_0_4() { return build_grid_bounds(0.0, 4.0, 4, SigmaPolicy::cell_width()); }

}  // namespace

TEST_CASE("gaussian kernel at reference points") {
    CHECK(gaussian_membership(3.0, 3.0, 0.7) == 1.0);
    CHECK(gaussian_membership(0.0, 1.0, 1.0) == doctest::Approx(0.6065306597126334).epsilon(1e-14));
    CHECK(gaussian_membership(0.0, 2.0, 1.0) == doctest::Approx(0.1353352832366127).epsilon(1e-14));
    CHECK(gaussian_membership(0.0, 3.0, 1.0) ==
          doctest::Approx(0.011108996538242306).epsilon(1e-14));
}

TEST_CASE("gaussian kernel symmetry and translation invariance") {
    CHECK(gaussian_membership(2.0, -2.0, 1.0) == gaussian_membership(-2.0, 2.0, 1.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> v(-50.0, 50.0);
    std::uniform_real_distribution<double> s(0.1, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = v(rng), c = v(rng), sigma = s(rng), shift = v(rng);
        CHECK(gaussian_membership(a, c, sigma) == gaussian_membership(c, a, sigma));
        CHECK(std::abs(gaussian_membership(a + shift, c + shift, sigma) -
                       gaussian_membership(a, c, sigma)) <= 1e-12);
    }
}

TEST_CASE("gaussian kernel stays within (0, 1] and decreases with distance") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> v(-20.0, 20.0);
    std::uniform_real_distribution<double> s(0.1, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double c = v(rng), sigma = s(rng);
        const double near = gaussian_membership(c + 0.5 * sigma, c, sigma);
        const double far = gaussian_membership(c + 2.0 * sigma, c, sigma);
        CHECK(near > 0.0);
        CHECK(near <= 1.0);
        CHECK(far < near);
    }
}

TEST_CASE("gaussian kernel change is bounded by the analytic slope limit") {
    // The kernel's steepest slope is exp(-1/2)/sigma, so any two responses
    // can differ by at most that times the input distance.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> v(-10.0, 10.0);
    std::uniform_real_distribution<double> s(0.2, 4.0);
    std::uniform_real_distribution<double> step(1e-3, 0.5);
    for (int i = 0; i < 10000; ++i) {
        const double c = v(rng), sigma = s(rng);
        const double a = v(rng);
        const double b = a + step(rng);
        const double bound = std::exp(-0.5) / sigma * (b - a);
        CHECK(std::abs(gaussian_membership(a, c, sigma) - gaussian_membership(b, c, sigma)) <=
              bound);
    }
}

TEST_CASE("gaussian kernel matches a high-precision evaluation") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> v(-30.0, 30.0);
    std::uniform_real_distribution<double> s(0.05, 8.0);
    for (int i = 0; i < 10000; ++i) {
        const double a = v(rng), c = v(rng), sigma = s(rng);
        const long double z = (static_cast<long double>(a) - c) / sigma;
        const long double reference = std::exp(-0.5L * z * z);
        CHECK(std::abs(gaussian_membership(a, c, sigma) - static_cast<double>(reference)) <=
              1e-12);
    }
}

TEST_CASE("gaussian kernel rejects bad inputs") {
    CHECK_THROWS_AS(gaussian_membership(0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_membership(0.0, 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_membership(0.0, 0.0, std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian_membership(std::numeric_limits<double>::infinity(), 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian_membership(0.0, std::numeric_limits<double>::quiet_NaN(), 1.0),
                    std::invalid_argument);
}

TEST_CASE("rectangular cells are half-open with edge clamping") {
    const Grid g = unit_cells_0_4();  // cells [0,1) [1,2) [2,3) [3,4], centers 0.5..3.5
    CHECK(rectangular_node(1.49, g) == 1);
    CHECK(rectangular_node(1.51, g) == 1);
    CHECK(rectangular_node(2.01, g) == 2);
    CHECK(rectangular_node(-7.0, g) == 0);
    CHECK(rectangular_node(0.0, g) == 0);
    CHECK(rectangular_node(1.0, g) == 1);   // interior boundary joins the upper cell
    CHECK(rectangular_node(0.999999, g) == 0);
    CHECK(rectangular_node(4.0, g) == 3);   // top edge closes the last cell
    CHECK(rectangular_node(100.0, g) == 3);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(rectangular_node(g.centers[i], g) == i);
}

TEST_CASE("rectangular node on a degenerate grid is always the first") {
    const Grid g = build_grid_bounds(5.0, 5.0, 3, SigmaPolicy::cell_width());
    CHECK(rectangular_node(5.0, g) == 0);
    CHECK(rectangular_node(-1.0, g) == 0);
    CHECK(rectangular_node(9.0, g) == 0);
}

TEST_CASE("rectangular node rejects bad inputs") {
    const Grid g = unit_cells_0_4();
    CHECK_THROWS_AS(rectangular_node(std::numeric_limits<double>::quiet_NaN(), g),
                    std::invalid_argument);
    CHECK_THROWS_AS(rectangular_node(1.0, Grid{}), std::invalid_argument);
}

TEST_CASE("membership vectors: one-hot indicator vs graded responses") {
    const Grid g = unit_cells_0_4();

    const auto rect = membership_vector(1.49, g, MembershipKind::Rectangular);
    REQUIRE(rect.size() == 4);
    double sum = 0.0;
    for (double x : rect) sum += x;
    CHECK(sum == 1.0);
    CHECK(rect[1] == 1.0);

    const auto fuzzy = membership_vector(1.49, g, MembershipKind::Gaussian);
    REQUIRE(fuzzy.size() == 4);
    for (std::size_t i = 0; i < fuzzy.size(); ++i) {
        CHECK(fuzzy[i] > 0.0);
        CHECK(fuzzy[i] <= 1.0);
        CHECK(fuzzy[i] == gaussian_membership(1.49, g.centers[i], g.sigma));
    }
}

TEST_CASE("graded responses at a node's own center") {
    // Centers -1.5 -0.5 0.5 1.5 with unit sigma: the response pattern at the
    // first center is {1, exp(-0.5), exp(-2), exp(-4.5)}.
    Grid g = build_grid_bounds(-2.0, 2.0, 4, SigmaPolicy::fixed_value(1.0));
    const auto f = membership_vector(-1.5, g, MembershipKind::Gaussian);
    REQUIRE(f.size() == 4);
    CHECK(f[0] == 1.0);
    CHECK(f[1] == doctest::Approx(0.6065306597126334).epsilon(1e-14));
    CHECK(f[2] == doctest::Approx(0.1353352832366127).epsilon(1e-14));
    CHECK(f[3] == doctest::Approx(0.011108996538242306).epsilon(1e-14));
}

TEST_CASE("degenerate grid gives full graded membership everywhere it matches") {
    const Grid g = build_grid_bounds(5.0, 5.0, 3, SigmaPolicy::cell_width());
    const auto f = membership_vector(5.0, g, MembershipKind::Gaussian);
    for (double x : f) CHECK(x == 1.0);
}

TEST_CASE("accumulate_membership is the sum of membership vectors") {
    const Grid g = unit_cells_0_4();
    std::vector<double> acc(4, 0.0);
    const std::vector<double> values{0.2, 1.7, 3.9, 2.5};
    for (double a : values) accumulate_membership(a, g, MembershipKind::Gaussian, acc);

    std::vector<double> expected(4, 0.0);
    for (double a : values) {
        const auto f = membership_vector(a, g, MembershipKind::Gaussian);
        for (std::size_t i = 0; i < f.size(); ++i) expected[i] += f[i];
    }
    for (std::size_t i = 0; i < 4; ++i) CHECK(acc[i] == doctest::Approx(expected[i]).epsilon(1e-15));

    std::vector<double> wrong(3, 0.0);
    CHECK_THROWS_AS(accumulate_membership(1.0, g, MembershipKind::Gaussian, wrong),
                    std::invalid_argument);
}

TEST_CASE("membership kind names") {
    CHECK(to_string(MembershipKind::Rectangular) == "rect");
    CHECK(to_string(MembershipKind::Gaussian) == "fuzzy");
}
