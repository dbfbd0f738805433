#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcda {

// Error categories map one-to-one onto CLI exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 3; }
};
class UsageError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 1; }
};
class DataError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};
class MethodError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};
class NetworkError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

enum class Direction { Max, Min };

Direction parse_direction(const std::string& token);
const char* to_string(Direction d);

struct Criterion {
    std::string name;
    Direction direction = Direction::Max;
    std::optional<double> weight;
};

using Vector = std::vector<double>;
using Matrix = std::vector<Vector>;
using RankVector = std::vector<int>;

inline constexpr double kTieTolerance = 1e-12;

class DecisionProblem {
public:
    DecisionProblem() = default;
    // Validates and renormalizes weights; throws DataError on violations.
    DecisionProblem(std::vector<std::string> alternatives, std::vector<Criterion> criteria, Matrix matrix);

    const std::vector<std::string>& alternatives() const { return alternatives_; }
    const std::vector<Criterion>& criteria() const { return criteria_; }
    const Matrix& matrix() const { return matrix_; }

    std::size_t n_alternatives() const { return alternatives_.size(); }
    std::size_t n_criteria() const { return criteria_.size(); }

    bool has_weights() const;
    // Throws MethodError when any criterion lacks a weight.
    Vector weights() const;
    std::vector<Direction> directions() const;

    DecisionProblem with_weights(const Vector& w) const;
    DecisionProblem permuted_rows(const std::vector<std::size_t>& order) const;

private:
    std::vector<std::string> alternatives_;
    std::vector<Criterion> criteria_;
    Matrix matrix_;
};

struct ScoreRanking {
    Vector scores;
    bool higher_is_better = true;
    RankVector ranks;
    std::vector<std::string> notes;  // advisory diagnostics and metadata
};

RankVector scores_to_ranks(const Vector& scores, bool higher_is_better);
ScoreRanking make_ranking(Vector scores, bool higher_is_better);

// Checks the competition-ranking invariants of a rank vector.
bool is_valid_rank_vector(const RankVector& r);

enum class Normalization { MinMax, Sum, Vector, MaxLinear };

Matrix normalize(const Matrix& m, const std::vector<Direction>& dirs, Normalization scheme);

DecisionProblem load_problem(const std::string& path);
DecisionProblem load_problem_csv(std::istream& in);
DecisionProblem load_problem_json(const std::string& text);

// Small helpers shared by the method modules.
Vector column(const Matrix& m, std::size_t j);
Matrix transpose(const Matrix& m);
double parse_double(const std::string& cell, const std::string& context);
std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);
std::string lower(std::string s);

// Writes via a sibling temp file and rename so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mcda
