#include <doctest.h>

#include <filesystem>
#include <limits>

#include "test_support.hpp"

using namespace mcda;
using doctest::Approx;

namespace {

const Vector kRao{6, 7, 1, 3, 2, 4, 5};
const Vector kManshadi{5, 7, 1, 4, 2, 3, 6};
const Vector kCodas{4, 2, 1, 6, 3, 5, 7};

const ComparisonTable& published4() {
    static const auto t = read_table(testing::data("published_table4.csv"));
    return t;
}
const ComparisonTable& published7() {
    static const auto t = read_table(testing::data("published_table7.csv"));
    return t;
}

std::size_t index_of(const CorrelationMatrix& m, const std::string& label) {
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        if (m.labels[i] == label) return i;
    throw std::runtime_error("no label " + label);
}

double at(const CorrelationMatrix& m, const std::string& a, const std::string& b) {
    return m.values[index_of(m, a)][index_of(m, b)].value();
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + needle.size())) ++n;
    return n;
}

std::vector<LabeledRow> externals(std::initializer_list<const char*> files, TableKind kind) {
    std::vector<LabeledRow> out;
    for (const char* f : files)
        for (auto& r : read_external(testing::data(f), kind)) out.push_back(std::move(r));
    return out;
}

ComparisonTable two_rows(Vector a, Vector b, TableKind kind = TableKind::Weights) {
    ComparisonTable t;
    t.kind = kind;
    for (std::size_t j = 0; j < a.size(); ++j) t.columns.push_back("c" + std::to_string(j + 1));
    t.add_row("A", std::move(a), false);
    t.add_row("B", std::move(b), false);
    return t;
}

}  // namespace

TEST_CASE("Kendall tau-b spot values") {
    CHECK(std::abs(*kendall_tau(kRao, kManshadi) - 0.809524) <= 1e-6);
    CHECK(std::abs(*kendall_tau(kRao, kCodas) - 0.142857) <= 1e-6);
    CHECK(*kendall_tau(kCodas, kCodas) == Approx(1.0));
    CHECK(*kendall_tau({1, 2, 3}, {3, 2, 1}) == Approx(-1.0));
}

TEST_CASE("Kendall tau-b handles ties and degenerate input") {
    // 4 concordant, 0 discordant, one tied pair in each vector: 4 / sqrt(5 * 5).
    CHECK(*kendall_tau({1, 1, 3, 4}, {1, 2, 2, 4}) == Approx(4.0 / 5.0));
    CHECK_FALSE(kendall_tau({1, 1, 1}, {1, 2, 3}).has_value());
    CHECK_THROWS_AS(kendall_tau({1, 2}, {1, 2, 3}), DataError);
    CHECK_THROWS_AS(kendall_tau({1}, {1}), DataError);
}

TEST_CASE("Pearson") {
    const Vector v{0.1, 0.4, 0.2, 0.3};
    CHECK(*pearson(v, v) == Approx(1.0));
    Vector affine;
    for (double x : v) affine.push_back(3 * x - 2);
    CHECK(*pearson(v, affine) == Approx(1.0));
    CHECK(*pearson({1, 2, 3}, {3, 2, 1}) == Approx(-1.0));
    CHECK_FALSE(pearson({2, 2, 2}, {1, 2, 3}).has_value());
}

TEST_CASE("Pearson spot values on the published weight rows") {
    const auto& t = published7();
    const auto m = correlation_matrix(t, Coefficient::Pearson);
    CHECK(std::abs(at(m, "Bottero et al. (2015)", "CILOS") + 0.76) <= 0.05);
    CHECK(std::abs(at(m, "Entropy", "IDOCRIW") - 0.83) <= 0.05);
    CHECK(std::abs(at(m, "CRITIC", "Rodrigues et al. (2021)") + 0.66) <= 0.05);
}

TEST_CASE("Pearson CILOS-MEREC published value" * doctest::may_fail()) {
    const auto& t = published7();
    CHECK(std::abs(*pearson(testing::row_of(t, "CILOS"), testing::row_of(t, "MEREC")) - 0.85) <= 0.05);
}

TEST_CASE("Kendall matrix over the published ranks: CODAS-VIKOR is the least congruent pair") {
    const auto m = correlation_matrix(published4(), Coefficient::KendallTauB);
    REQUIRE(m.labels.size() == 33);
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        for (std::size_t j = 0; j < m.labels.size(); ++j) {
            if (i == j) continue;
            CHECK(m.values[i][j].value() == Approx(m.values[j][i].value()));
            lo = std::min(lo, *m.values[i][j]);
        }
    CHECK(std::abs(lo - 0.05) <= 0.01);
    CHECK(at(m, "CODAS", "VIKOR") == Approx(lo));
    for (std::size_t i = 0; i < m.labels.size(); ++i) CHECK(*m.values[i][i] == 1.0);
}

TEST_CASE("correlation matrix edge cases") {
    const auto same = correlation_matrix(two_rows({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}), Coefficient::Pearson);
    for (const auto& row : same.values)
        for (const auto& v : row) CHECK(*v == Approx(1.0));

    ComparisonTable single;
    single.kind = TableKind::Ranks;
    single.columns = {"a", "b"};
    single.add_row("only", {1, 2}, false);
    CHECK_THROWS_WITH_AS(correlation_matrix(single, Coefficient::KendallTauB),
                         doctest::Contains("fewer than 2 rows"), DataError);

    std::vector<std::string> warnings;
    correlation_matrix(two_rows({0.2, 0.8}, {0.5, 0.5}), Coefficient::KendallTauB, &warnings);
    CHECK_FALSE(warnings.empty());
}

TEST_CASE("heatmap export") {
    testing::TempDir dir;
    SUBCASE("identity") {
        CorrelationMatrix m;
        m.labels = {"X", "Y"};
        m.values = {{1.0, 0.0}, {0.0, 1.0}};
        const auto files = export_heatmap(m, dir.file("id"));
        REQUIRE(files.size() == 2);
        const auto svg = testing::slurp(dir.file("id.svg"));
        CHECK(count(svg, "class=\"cell\"") == 4);
        CHECK(count(svg, ">1.00</text>") == 2);
        CHECK(count(svg, ">0.00</text>") == 2);
        std::istringstream in(testing::slurp(dir.file("id.csv")));
        const auto back = parse_correlation_csv(in);
        CHECK(back.labels == m.labels);
        CHECK(*back.values[0][0] == 1.0);
    }
    SUBCASE("undefined cell") {
        const auto m = correlation_matrix(two_rows({0.1, 0.2, 0.7}, {0.3, 0.3, 0.3}), Coefficient::Pearson);
        CHECK_FALSE(m.values[0][1].has_value());
        export_heatmap(m, dir.file("na"));
        const auto csv = testing::slurp(dir.file("na.csv"));
        CHECK(csv.find("NA") != std::string::npos);
        const auto svg = testing::slurp(dir.file("na.svg"));
        CHECK(count(svg, "class=\"cell na\"") >= 2);
        CHECK(svg.find("url(#na-hatch)") != std::string::npos);
    }
    SUBCASE("full rank comparison") {
        const auto m = correlation_matrix(published4(), Coefficient::KendallTauB);
        export_heatmap(m, dir.file("fig"));
        std::istringstream in(testing::slurp(dir.file("fig.csv")));
        const auto back = parse_correlation_csv(in);
        CHECK(back.labels.size() == 33);
        CHECK(back.coefficient == Coefficient::KendallTauB);
        CHECK(count(testing::slurp(dir.file("fig.svg")), "<rect class=\"cell") == 33 * 33);
    }
}

TEST_CASE("comparison of every shipped ranking method") {
    const auto sf = load_spec(testing::data("table4.spec"));
    REQUIRE(sf.methods.size() == 31);
    const auto t = build_comparison(testing::case1(), sf.methods,
                                    externals({"rao.csv", "manshadi.csv"}, TableKind::Ranks));
    CHECK(t.kind == TableKind::Ranks);
    CHECK(t.size() == 33);
    CHECK(t.diagnostics.empty());
    int exact = 0;
    for (std::size_t i = 0; i < t.size(); ++i) exact += t.rows[i] == testing::row_of(published4(), t.labels[i]);
    CHECK(exact == 31);
    CHECK(t.labels.front() == "ARAS");
    CHECK(t.external.back());
}

TEST_CASE("comparison with one spec") {
    const auto t = build_comparison(testing::case1(), {make_spec("topsis")});
    REQUIRE(t.size() == 1);
    CHECK(t.rows[0] == Vector{5, 6, 1, 4, 2, 3, 7});
    CHECK_THROWS_AS(build_comparison(testing::case1(), {}), UsageError);
    CHECK_THROWS_AS(build_comparison(testing::case1(), {make_spec("topsis"), make_spec("entropy")}), UsageError);
}

TEST_CASE("comparison of the weighting methods") {
    const auto sf = load_spec(testing::data("table7.spec"));
    const auto t = build_comparison(testing::case2(), sf.methods,
                                    externals({"bottero.csv", "rodrigues.csv"}, TableKind::Weights));
    CHECK(t.kind == TableKind::Weights);
    CHECK(t.size() == 8);
    for (const auto& label : {"Entropy", "IDOCRIW", "MEREC"}) {
        const auto got = testing::row_of(t, label), want = testing::row_of(published7(), label);
        for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(got[j] - want[j]) <= 0.01);
    }
}

TEST_CASE("a failing method becomes a diagnostic") {
    auto spotis = make_spec("spotis");
    spotis.params.spotis_smin.assign(7, 1e6);
    spotis.params.spotis_smax.assign(7, 2e6);
    const auto t = build_comparison(testing::case1(), {make_spec("topsis"), spotis});
    CHECK(t.size() == 1);
    REQUIRE(t.diagnostics.size() == 1);
    CHECK(t.diagnostics[0].label == "SPOTIS");
    CHECK(t.diagnostics[0].exit_code == 3);
    CHECK(format_table(t).find("# error,SPOTIS,") != std::string::npos);
}

TEST_CASE("tables survive a write/parse round trip") {
    ComparisonTable t;
    t.kind = TableKind::Weights;
    t.columns = {"c1", "c2"};
    t.add_row("Entropy", {0.25, 0.75}, false);
    t.add_row("Ref, quoted", {0.5, 0.5}, true);
    t.metadata.push_back("params Entropy: none");
    std::istringstream in(format_table(t));
    const auto back = parse_table(in);
    CHECK(back.kind == TableKind::Weights);
    CHECK(back.labels == t.labels);
    CHECK(back.rows == t.rows);
    CHECK(back.external == std::vector<bool>{false, true});

    CHECK_THROWS_AS(t.add_row("Entropy", {0.5, 0.5}, false), DataError);
    CHECK_THROWS_AS(t.add_row("Short", {1.0}, false), DataError);
    ComparisonTable r;
    r.columns = {"a", "b"};
    CHECK_THROWS_AS(r.add_row("bad", {1, 3}, false), DataError);
}

TEST_CASE("coefficient names") {
    CHECK(parse_coefficient("kendall") == Coefficient::KendallTauB);
    CHECK(parse_coefficient("tau") == Coefficient::KendallTauB);
    CHECK(parse_coefficient("pearson") == Coefficient::Pearson);
    CHECK_THROWS_AS(parse_coefficient("spearman"), UsageError);
}
