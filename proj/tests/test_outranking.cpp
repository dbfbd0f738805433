#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mcda/outranking.hpp"
#include "test_support.hpp"

using namespace mcda;
using doctest::Approx;

namespace {

MethodSpec shipped(const std::string& id) { return testing::shipped_spec("table4.spec", id); }

std::vector<PreferenceKind> usual(const DecisionProblem& p) { return {p.n_criteria(), PreferenceKind::Usual}; }

// Shipped specs may give one function for all criteria.
std::vector<PreferenceKind> functions(const MethodSpec& spec, const DecisionProblem& p) {
    return spec.functions.size() == 1 ? std::vector<PreferenceKind>(p.n_criteria(), spec.functions[0]) : spec.functions;
}

}  // namespace

TEST_CASE("preference functions") {
    CHECK(preference(PreferenceKind::Usual, 0.0, 0, 0, 0) == 0.0);
    CHECK(preference(PreferenceKind::Usual, 0.1, 0, 0, 0) == 1.0);
    CHECK(preference(PreferenceKind::Usual, -3.0, 0, 0, 0) == 0.0);
    CHECK(preference(PreferenceKind::UShape, 1.0, 1.0, 0, 0) == 0.0);
    CHECK(preference(PreferenceKind::UShape, 1.5, 1.0, 0, 0) == 1.0);
    CHECK(preference(PreferenceKind::VShape, 1.0, 0, 4.0, 0) == Approx(0.25));
    CHECK(preference(PreferenceKind::VShape, 5.0, 0, 4.0, 0) == 1.0);
    CHECK(preference(PreferenceKind::Level, 0.5, 1.0, 2.0, 0) == 0.0);
    CHECK(preference(PreferenceKind::Level, 1.5, 1.0, 2.0, 0) == Approx(0.5));
    CHECK(preference(PreferenceKind::Level, 2.5, 1.0, 2.0, 0) == 1.0);
    CHECK(preference(PreferenceKind::Linear, 1.5, 1.0, 3.0, 0) == Approx(0.25));
    CHECK(preference(PreferenceKind::Gaussian, 2.0, 0, 0, 2.0) == Approx(1.0 - std::exp(-0.5)));
    CHECK(parse_preference("v_shape") == PreferenceKind::VShape);
    CHECK_THROWS_AS(parse_preference("cubic"), Error);
}

TEST_CASE("PROMETHEE II reproduces the published row") {
    CHECK(run_ranking(shipped("promethee_ii"), testing::case1()).ranks == RankVector{7, 6, 1, 4, 2, 3, 5});
}

TEST_CASE("PROMETHEE II on unanimous and chain instances") {
    const auto two = testing::problem_from("alternative,c1,c2\ndirection,max,min\nweights,0.5,0.5\nx,5,1\ny,4,2\n");
    const auto r2 = promethee_ii(two, {}, usual(two));
    CHECK(r2.ranking.scores[0] == Approx(1.0));
    CHECK(r2.ranking.scores[1] == Approx(-1.0));
    CHECK(r2.ranking.ranks == RankVector{1, 2});

    const auto chain = testing::problem_from("alternative,c\ndirection,max\nweights,1\na,3\nb,2\nc,1\n");
    const auto r3 = promethee_ii(chain, {}, usual(chain));
    CHECK(r3.ranking.scores[0] == Approx(1.0));
    CHECK(r3.ranking.scores[1] == Approx(0.0));
    CHECK(r3.ranking.scores[2] == Approx(-1.0));
    CHECK(r3.phi_plus[0] == Approx(1.0));
    CHECK(r3.phi_minus[2] == Approx(1.0));
}

TEST_CASE("PROMETHEE IV reproduces the published row") {
    CHECK(run_ranking(shipped("promethee_iv"), testing::case1()).ranks == RankVector{6, 7, 1, 3, 4, 2, 5});
}

TEST_CASE("PROMETHEE IV single and identical rows") {
    const auto one = testing::problem_from("alternative,c\ndirection,max\nweights,1\nx,1\n");
    CHECK(promethee_iv(one, {}, usual(one)).ranking.ranks == RankVector{1});
    const auto same = testing::problem_from("alternative,c1,c2\ndirection,max,min\nweights,0.3,0.7\nx,2,3\ny,2,3\nz,2,3\n");
    const auto r = promethee_iv(same, {}, usual(same));
    for (double f : r.ranking.scores) CHECK(f == Approx(0.0));
    CHECK(r.ranking.ranks == RankVector{1, 1, 1});
}

TEST_CASE("thresholds must fit the criteria") {
    const auto& p = testing::case1();
    Thresholds t;
    t.q = {1, 2};
    CHECK_THROWS_AS(promethee_ii(p, t, {p.n_criteria(), PreferenceKind::Linear}), MethodError);
}

TEST_CASE("EC PROMETHEE with the shipped parameters") {
    const auto spec = shipped("ec_promethee");
    const auto r = ec_promethee(testing::case1(), spec.thresholds, functions(spec, testing::case1()), spec.ec);
    CHECK(r.ranking.ranks == RankVector{5, 7, 1, 3, 2, 4, 6});
    for (const auto& freq : r.frequency) CHECK(std::accumulate(freq.begin(), freq.end(), 0) == spec.ec.iterations);
    CHECK(r.modal_rank[2] == 1);
}

TEST_CASE("EC PROMETHEE with one iteration is PROMETHEE II under the sampled weights") {
    auto spec = shipped("ec_promethee");
    spec.ec.iterations = 1;
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 12345ULL}) {
        spec.ec.seed = seed;
        const auto ec = ec_promethee(testing::case1(), spec.thresholds, functions(spec, testing::case1()), spec.ec);
        const auto w = ec_sample_weights(spec.ec, 0);
        const auto direct = promethee_ii(testing::case1().with_weights(w), spec.thresholds, functions(spec, testing::case1()));
        CHECK(ec.ranking.ranks == direct.ranking.ranks);
    }
}

TEST_CASE("EC PROMETHEE keeps a dominant alternative first for every seed") {
    const auto p = testing::problem_from("alternative,c1,c2,c3\ndirection,max,min,max\nweights,0.3,0.3,0.4\n"
                                         "x,9,1,5\ny,4,6,2\n");
    EcConfig cfg;
    cfg.custom_set = {0.2, 0.5, 0.9};
    cfg.iterations = 3;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        cfg.seed = seed;
        const auto r = ec_promethee(p, {}, usual(p), cfg);
        REQUIRE(r.ranking.ranks == RankVector{1, 2});
    }
}

TEST_CASE("EC weight draws stay in range and on the simplex") {
    EcConfig cfg;
    cfg.custom_set = {0.5, 0.2, 0.8, 0.0};
    for (int it = 0; it < 200; ++it) {
        const auto w = ec_sample_weights(cfg, it);
        CHECK(std::accumulate(w.begin(), w.end(), 0.0) == Approx(1.0));
        CHECK(w[3] == 0.0);
    }
    CHECK(ec_sample_weights(cfg, 5) == ec_sample_weights(cfg, 5));
    CHECK(ec_sample_weights(cfg, 5) != ec_sample_weights(cfg, 6));
}

TEST_CASE("EC configuration errors") {
    const auto& p = testing::case1();
    EcConfig cfg;
    cfg.custom_set = {0.5, 0.5};
    CHECK_THROWS_AS(ec_promethee(p, {}, usual(p), cfg), MethodError);
    cfg.custom_set.assign(7, 0.5);
    cfg.iterations = 0;
    CHECK_THROWS_AS(ec_promethee(p, {}, usual(p), cfg), MethodError);
}
