#include <doctest.h>

#include "property_checks.hpp"

using namespace mcda::props;

namespace {

void require_ok(const CheckResult& r, int min_cases) {
    INFO(r.detail);
    CHECK(r.ok);
    CHECK(r.cases >= min_cases);
}

}  // namespace

TEST_CASE("ranking methods are permutation equivariant") { require_ok(permutation_equivariance(100, 11), 100); }

TEST_CASE("weighting methods land on the simplex") { require_ok(weight_simplex(100, 12), 100); }

TEST_CASE("Kendall tau-b matches pair enumeration") { require_ok(kendall_exhaustive(5, 13), 1000); }

TEST_CASE("BWM matches the simplex grid oracle") { require_ok(bwm_grid(50, 14), 50); }

TEST_CASE("additive and multiplicative methods respect dominance") { require_ok(dominance(100, 15), 100); }

TEST_CASE("PROMETHEE II net flows balance") { require_ok(net_flow_balance(100, 16), 100); }

TEST_CASE("the enumeration oracle itself") {
    CHECK(kendall_oracle({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(kendall_oracle({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(bwm_deviation({0.5, 0.25, 0.25}, {1, 2, 2}, {2, 1, 1}) == doctest::Approx(0.0));
}
