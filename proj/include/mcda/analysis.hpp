#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mcda/aggregation.hpp"
#include "mcda/core.hpp"
#include "mcda/method_spec.hpp"

namespace mcda {

enum class TableKind { Ranks, Weights };
enum class Coefficient { KendallTauB, Pearson };

std::string to_string(TableKind k);
std::string to_string(Coefficient c);
Coefficient parse_coefficient(const std::string& token);

struct LabeledRow {
    std::string label;
    Vector values;
};

struct Diagnostic {
    std::string label;
    std::string message;
    int exit_code = 3;  // category of the underlying error
};

struct ComparisonTable {
    TableKind kind = TableKind::Ranks;
    std::vector<std::string> columns;  // alternatives or criteria
    std::vector<std::string> labels;
    Matrix rows;
    std::vector<bool> external;
    std::vector<Diagnostic> diagnostics;  // methods that produced no row
    std::vector<std::string> metadata;    // free-form `key=value` comment lines

    std::size_t size() const { return rows.size(); }
    void add_row(const std::string& label, Vector values, bool is_external);
};

// Evaluates every spec (concurrently) and appends the external rows.
// A failing method becomes a diagnostic instead of aborting the table.
ComparisonTable build_comparison(const DecisionProblem& problem, const std::vector<MethodSpec>& specs,
                                 const std::vector<LabeledRow>& external = {});

void write_table(std::ostream& out, const ComparisonTable& table);
std::string format_table(const ComparisonTable& table);
ComparisonTable parse_table(std::istream& in, const std::string& source = "<stream>");
ComparisonTable read_table(const std::string& path);

// External rows loaded from a table file; `kind` must match when given.
std::vector<LabeledRow> read_external(const std::string& path, std::optional<TableKind> kind = std::nullopt);

RankTable to_rank_table(const ComparisonTable& table);

// Undefined values (ties everywhere, constant vectors) come back as nullopt.
std::optional<double> kendall_tau(const Vector& a, const Vector& b);
std::optional<double> pearson(const Vector& a, const Vector& b);

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> values;
    Coefficient coefficient = Coefficient::KendallTauB;
};

CorrelationMatrix correlation_matrix(const ComparisonTable& table, Coefficient coefficient,
                                     std::vector<std::string>* warnings = nullptr);

std::string correlation_csv(const CorrelationMatrix& m);
std::string heatmap_svg(const CorrelationMatrix& m);
CorrelationMatrix parse_correlation_csv(std::istream& in);

// Writes `<stem>.csv` and `<stem>.svg`; returns the two paths.
std::vector<std::string> export_heatmap(const CorrelationMatrix& m, const std::string& stem);

}  // namespace mcda
