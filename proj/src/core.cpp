#include "mcda/core.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace mcda {

Direction parse_direction(const std::string& token) {
    const std::string t = lower(trim(token));
    if (t == "max") return Direction::Max;
    if (t == "min") return Direction::Min;
    throw DataError("unknown direction token '" + token + "'");
}

const char* to_string(Direction d) { return d == Direction::Max ? "max" : "min"; }

DecisionProblem::DecisionProblem(std::vector<std::string> alternatives, std::vector<Criterion> criteria,
                                 Matrix matrix)
    : alternatives_(std::move(alternatives)), criteria_(std::move(criteria)), matrix_(std::move(matrix)) {
    if (alternatives_.empty()) throw DataError("problem has no alternatives");
    if (criteria_.empty()) throw DataError("problem has no criteria");
    if (matrix_.size() != alternatives_.size())
        throw DataError("dimension mismatch: " + std::to_string(matrix_.size()) + " rows for " +
                        std::to_string(alternatives_.size()) + " alternatives");
    for (std::size_t i = 0; i < matrix_.size(); ++i) {
        if (matrix_[i].size() != criteria_.size())
            throw DataError("dimension mismatch in row " + alternatives_[i] + ": " +
                            std::to_string(matrix_[i].size()) + " cells for " + std::to_string(criteria_.size()) +
                            " criteria");
        for (double v : matrix_[i])
            if (!std::isfinite(v)) throw DataError("non-finite value in row " + alternatives_[i]);
    }
    std::size_t weighted = 0;
    for (const auto& c : criteria_) {
        if (!c.weight) continue;
        ++weighted;
        if (!std::isfinite(*c.weight)) throw DataError("non-finite weight for " + c.name);
        if (*c.weight < 0) throw DataError("negative weight for " + c.name);
    }
    if (weighted == criteria_.size()) {
        double total = 0;
        for (const auto& c : criteria_) total += *c.weight;
        if (total <= 0) throw DataError("weights sum to zero");
        if (std::abs(total - 1.0) > 1e-6)
            for (auto& c : criteria_) c.weight = *c.weight / total;
    }
}

bool DecisionProblem::has_weights() const {
    return std::all_of(criteria_.begin(), criteria_.end(), [](const Criterion& c) { return c.weight.has_value(); });
}

Vector DecisionProblem::weights() const {
    if (!has_weights()) throw MethodError("criterion weights are required");
    Vector w;
    for (const auto& c : criteria_) w.push_back(*c.weight);
    return w;
}

std::vector<Direction> DecisionProblem::directions() const {
    std::vector<Direction> d;
    for (const auto& c : criteria_) d.push_back(c.direction);
    return d;
}

DecisionProblem DecisionProblem::with_weights(const Vector& w) const {
    if (w.size() != criteria_.size()) throw DataError("weight vector length does not match criteria");
    auto crit = criteria_;
    for (std::size_t j = 0; j < w.size(); ++j) crit[j].weight = w[j];
    return DecisionProblem(alternatives_, std::move(crit), matrix_);
}

DecisionProblem DecisionProblem::permuted_rows(const std::vector<std::size_t>& order) const {
    std::vector<std::string> alts;
    Matrix m;
    for (auto i : order) {
        alts.push_back(alternatives_.at(i));
        m.push_back(matrix_.at(i));
    }
    return DecisionProblem(std::move(alts), criteria_, std::move(m));
}

RankVector scores_to_ranks(const Vector& scores, bool higher_is_better) {
    const std::size_t n = scores.size();
    RankVector r(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(scores[i])) throw MethodError("non-finite score");
        for (std::size_t k = 0; k < n; ++k) {
            const double diff = higher_is_better ? scores[k] - scores[i] : scores[i] - scores[k];
            if (diff > kTieTolerance) ++r[i];
        }
    }
    return r;
}

ScoreRanking make_ranking(Vector scores, bool higher_is_better) {
    ScoreRanking s;
    s.ranks = scores_to_ranks(scores, higher_is_better);
    s.scores = std::move(scores);
    s.higher_is_better = higher_is_better;
    return s;
}

bool is_valid_rank_vector(const RankVector& r) {
    const int n = static_cast<int>(r.size());
    if (n == 0) return false;
    std::vector<int> count(n + 2, 0);
    for (int v : r) {
        if (v < 1 || v > n) return false;
        ++count[v];
    }
    if (count[1] == 0) return false;
    int expected = 1;
    while (expected <= n) {
        if (count[expected] == 0) return false;
        for (int k = expected + 1; k < expected + count[expected]; ++k)
            if (count[k] != 0) return false;
        expected += count[expected];
    }
    return true;
}

Vector column(const Matrix& m, std::size_t j) {
    Vector c;
    c.reserve(m.size());
    for (const auto& row : m) c.push_back(row[j]);
    return c;
}

Matrix transpose(const Matrix& m) {
    if (m.empty()) return {};
    Matrix t(m[0].size(), Vector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

Matrix normalize(const Matrix& m, const std::vector<Direction>& dirs, Normalization scheme) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    if (dirs.size() != cols) throw DataError("direction count does not match matrix columns");
    Matrix out = m;
    for (std::size_t j = 0; j < cols; ++j) {
        const Vector c = column(m, j);
        const bool is_min = dirs[j] == Direction::Min;
        const auto [lo_it, hi_it] = std::minmax_element(c.begin(), c.end());
        const double lo = *lo_it, hi = *hi_it;
        switch (scheme) {
        case Normalization::MinMax: {
            if (hi - lo <= 0) throw MethodError("constant column " + std::to_string(j + 1) + " cannot be min-max normalized");
            for (std::size_t i = 0; i < m.size(); ++i)
                out[i][j] = is_min ? (hi - c[i]) / (hi - lo) : (c[i] - lo) / (hi - lo);
            break;
        }
        case Normalization::Sum: {
            if (is_min) {
                double s = 0;
                for (double v : c) {
                    if (v == 0) throw MethodError("zero entry in column " + std::to_string(j + 1) + " under reciprocal sum normalization");
                    s += 1.0 / v;
                }
                for (std::size_t i = 0; i < m.size(); ++i) out[i][j] = (1.0 / c[i]) / s;
            } else {
                const double s = std::accumulate(c.begin(), c.end(), 0.0);
                if (s == 0) throw MethodError("column " + std::to_string(j + 1) + " sums to zero");
                for (std::size_t i = 0; i < m.size(); ++i) out[i][j] = c[i] / s;
            }
            break;
        }
        case Normalization::Vector: {
            double s = 0;
            for (double v : c) s += v * v;
            if (s == 0) throw MethodError("all-zero column " + std::to_string(j + 1));
            s = std::sqrt(s);
            for (std::size_t i = 0; i < m.size(); ++i) out[i][j] = c[i] / s;
            break;
        }
        case Normalization::MaxLinear: {
            if (is_min) {
                for (std::size_t i = 0; i < m.size(); ++i) {
                    if (c[i] == 0) throw MethodError("zero entry in MIN column " + std::to_string(j + 1));
                    out[i][j] = lo / c[i];
                }
            } else {
                if (hi == 0) throw MethodError("column " + std::to_string(j + 1) + " has zero maximum");
                for (std::size_t i = 0; i < m.size(); ++i) out[i][j] = c[i] / hi;
            }
            break;
        }
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

double parse_double(const std::string& cell, const std::string& context) {
    const std::string t = trim(cell);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw DataError("non-numeric cell '" + cell + "' (" + context + ")");
    }
    if (used != t.size() || !std::isfinite(v)) throw DataError("non-numeric cell '" + cell + "' (" + context + ")");
    return v;
}

DecisionProblem load_problem_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        rows.push_back(split(t, ','));
    }
    if (rows.size() < 3) throw DataError("problem CSV needs a name row, a direction row and at least one alternative");

    // The leading cell of the header rows is a label column and may be empty.
    auto header = rows[0];
    auto dirs = rows[1];
    if (header.empty() || dirs.size() != header.size()) throw DataError("direction row length does not match header");
    const std::size_t ncrit = header.size() - 1;
    std::vector<Criterion> criteria(ncrit);
    for (std::size_t j = 0; j < ncrit; ++j) {
        criteria[j].name = header[j + 1];
        criteria[j].direction = parse_direction(dirs[j + 1]);
    }
    std::size_t r = 2;
    if (lower(rows[r][0]) == "weights") {
        if (rows[r].size() != header.size()) throw DataError("weights row length does not match header");
        for (std::size_t j = 0; j < ncrit; ++j) criteria[j].weight = parse_double(rows[r][j + 1], "weight of " + criteria[j].name);
        ++r;
    }
    std::vector<std::string> alts;
    Matrix m;
    for (; r < rows.size(); ++r) {
        if (rows[r].size() != header.size())
            throw DataError("dimension mismatch in row '" + rows[r][0] + "'");
        alts.push_back(rows[r][0]);
        Vector row;
        for (std::size_t j = 0; j < ncrit; ++j) row.push_back(parse_double(rows[r][j + 1], rows[r][0] + "/" + criteria[j].name));
        m.push_back(std::move(row));
    }
    return DecisionProblem(std::move(alts), std::move(criteria), std::move(m));
}

DecisionProblem load_problem_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed problem file: ") + e.what());
    }
    try {
        std::vector<std::string> alts = doc.at("alternatives").get<std::vector<std::string>>();
        std::vector<Criterion> criteria;
        for (const auto& c : doc.at("criteria")) {
            Criterion cr;
            cr.name = c.at("name").get<std::string>();
            cr.direction = parse_direction(c.at("direction").get<std::string>());
            if (c.contains("weight") && !c["weight"].is_null()) {
                if (!c["weight"].is_number()) throw DataError("non-numeric weight for " + cr.name);
                cr.weight = c["weight"].get<double>();
            }
            criteria.push_back(cr);
        }
        Matrix m;
        for (const auto& row : doc.at("matrix")) {
            Vector v;
            for (const auto& cell : row) {
                if (!cell.is_number()) throw DataError("non-numeric cell in matrix");
                v.push_back(cell.get<double>());
            }
            m.push_back(std::move(v));
        }
        return DecisionProblem(std::move(alts), std::move(criteria), std::move(m));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid problem file: ") + e.what());
    }
}

DecisionProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open problem file " + path);
    const bool json = path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".json";
    if (json) {
        std::stringstream ss;
        ss << in.rdbuf();
        return load_problem_json(ss.str());
    }
    return load_problem_csv(in);
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path() && !fs::is_directory(target.parent_path()))
        throw DataError("output directory does not exist: " + target.parent_path().string());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + path);
        out << content;
        out.flush();
        if (!out) throw DataError("cannot write " + path);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DataError("cannot write " + path);
    }
}

}  // namespace mcda
