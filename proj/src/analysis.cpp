#include "mcda/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace mcda {

namespace {

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    std::string s = buf;
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);  // no "-0.00"
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw DataError("unterminated quote in '" + line + "'");
    cells.push_back(trim(cur));
    return cells;
}

bool rank_like(const Vector& v) {
    RankVector r;
    for (double x : v) {
        if (x != std::floor(x)) return false;
        r.push_back(static_cast<int>(x));
    }
    return is_valid_rank_vector(r);
}

std::string format_value(TableKind kind, double v) {
    return kind == TableKind::Ranks ? fmt(v, "%.0f") : fmt(v, "%.10g");
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Rgb {
    double r, g, b;
};

// red (negative) -> yellow -> yellow-green (zero) -> blue (positive)
Rgb heat_colour(double v) {
    static const std::pair<double, Rgb> stops[] = {
        {-1.0, {178, 24, 43}}, {-0.4, {253, 219, 99}}, {0.0, {186, 228, 124}}, {1.0, {33, 102, 172}}};
    v = std::clamp(v, -1.0, 1.0);
    for (std::size_t i = 1; i < std::size(stops); ++i) {
        if (v <= stops[i].first) {
            const auto& [x0, c0] = stops[i - 1];
            const auto& [x1, c1] = stops[i];
            const double t = (v - x0) / (x1 - x0);
            return {c0.r + t * (c1.r - c0.r), c0.g + t * (c1.g - c0.g), c0.b + t * (c1.b - c0.b)};
        }
    }
    return stops[std::size(stops) - 1].second;
}

std::string hex(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(c.r)),
                  static_cast<int>(std::lround(c.g)), static_cast<int>(std::lround(c.b)));
    return buf;
}

}  // namespace

std::string to_string(TableKind k) { return k == TableKind::Ranks ? "ranks" : "weights"; }

std::string to_string(Coefficient c) { return c == Coefficient::KendallTauB ? "kendall" : "pearson"; }

Coefficient parse_coefficient(const std::string& token) {
    const std::string t = lower(trim(token));
    if (t == "kendall" || t == "kendall_tau" || t == "kendall_tau_b" || t == "tau") return Coefficient::KendallTauB;
    if (t == "pearson") return Coefficient::Pearson;
    throw UsageError("unknown correlation coefficient '" + token + "' (expected kendall or pearson)");
}

void ComparisonTable::add_row(const std::string& label, Vector values, bool is_external) {
    if (label.empty()) throw DataError("table row without a label");
    if (std::find(labels.begin(), labels.end(), label) != labels.end())
        throw DataError("duplicate row label '" + label + "'");
    if (values.size() != columns.size())
        throw DataError("row '" + label + "' has " + std::to_string(values.size()) + " values, expected " +
                        std::to_string(columns.size()));
    if (kind == TableKind::Ranks && !rank_like(values))
        throw DataError("row '" + label + "' is not a valid rank vector");
    labels.push_back(label);
    rows.push_back(std::move(values));
    external.push_back(is_external);
}

ComparisonTable build_comparison(const DecisionProblem& problem, const std::vector<MethodSpec>& specs,
                                 const std::vector<LabeledRow>& external) {
    if (specs.empty()) throw UsageError("empty method list");
    const bool weights = is_weighting(specs.front());
    for (const auto& s : specs)
        if (is_weighting(s) != weights)
            throw UsageError("cannot mix ranking and weighting methods in one table ('" + s.id + "')");

    ComparisonTable t;
    t.kind = weights ? TableKind::Weights : TableKind::Ranks;
    if (weights) {
        for (const auto& c : problem.criteria()) t.columns.push_back(c.name);
    } else {
        t.columns = problem.alternatives();
    }

    struct Outcome {
        Vector values;
        std::vector<std::string> notes;
        std::string error;
        int code = 3;
    };
    std::vector<std::future<Outcome>> jobs;
    jobs.reserve(specs.size());
    for (const auto& spec : specs) {
        jobs.push_back(std::async(std::launch::async, [&problem, &spec, weights]() {
            Outcome o;
            try {
                if (weights) {
                    WeightVector w = run_weighting(spec, problem);
                    o.values = w.weights;
                    o.notes = w.warnings;
                } else {
                    ScoreRanking r = run_ranking(spec, problem);
                    o.values.assign(r.ranks.begin(), r.ranks.end());
                    o.notes = r.notes;
                }
            } catch (const Error& e) {
                o.error = e.what();
                o.code = e.exit_code();
            } catch (const std::exception& e) {
                o.error = e.what();
            }
            return o;
        }));
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        Outcome o = jobs[i].get();
        const std::string& label = specs[i].label;
        std::string params;
        for (const auto& d : describe(specs[i]))
            if (d.rfind("method=", 0) != 0) params += (params.empty() ? "" : " ") + d;
        if (!params.empty()) t.metadata.push_back("params " + label + ": " + params);
        for (const auto& n : o.notes) t.metadata.push_back("note " + label + ": " + n);
        if (!o.error.empty()) {
            t.diagnostics.push_back({label, o.error, o.code});
            continue;
        }
        t.add_row(label, std::move(o.values), false);
    }
    for (const auto& e : external) t.add_row(e.label, e.values, true);
    return t;
}

void write_table(std::ostream& out, const ComparisonTable& table) {
    out << "# kind=" << to_string(table.kind) << '\n';
    for (const auto& m : table.metadata) out << "# " << m << '\n';
    for (std::size_t r = 0; r < table.size(); ++r)
        if (table.external[r]) out << "# external=" << table.labels[r] << '\n';
    out << "label";
    for (const auto& c : table.columns) out << ',' << csv_field(c);
    out << '\n';
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << csv_field(table.labels[r]);
        for (double v : table.rows[r]) out << ',' << format_value(table.kind, v);
        out << '\n';
    }
    for (const auto& d : table.diagnostics) out << "# error," << csv_field(d.label) << ',' << csv_field(d.message) << '\n';
}

std::string format_table(const ComparisonTable& table) {
    std::ostringstream os;
    write_table(os, table);
    return os.str();
}

ComparisonTable parse_table(std::istream& in, const std::string& source) {
    ComparisonTable t;
    std::optional<TableKind> kind;
    std::set<std::string> external_labels;
    std::vector<LabeledRow> pending;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const std::string body = trim(s.substr(1));
            if (body.rfind("kind=", 0) == 0) {
                const std::string k = lower(trim(body.substr(5)));
                if (k == "ranks") kind = TableKind::Ranks;
                else if (k == "weights") kind = TableKind::Weights;
                else throw DataError(where() + "unknown table kind '" + k + "'");
            } else if (body.rfind("external=", 0) == 0) {
                external_labels.insert(trim(body.substr(9)));
            } else if (body.rfind("error,", 0) == 0) {
                auto cells = csv_split(body.substr(6));
                if (cells.size() < 2) throw DataError(where() + "malformed error line");
                t.diagnostics.push_back({cells[0], cells[1], 3});
            } else if (!body.empty()) {
                t.metadata.push_back(body);
            }
            continue;
        }
        auto cells = csv_split(s);
        if (!have_header) {
            if (lower(cells[0]) != "label") throw DataError(where() + "expected a header row starting with 'label'");
            t.columns.assign(cells.begin() + 1, cells.end());
            if (t.columns.empty()) throw DataError(where() + "table has no value columns");
            have_header = true;
            continue;
        }
        if (cells.size() != t.columns.size() + 1)
            throw DataError(where() + "expected " + std::to_string(t.columns.size() + 1) + " cells, found " +
                            std::to_string(cells.size()));
        LabeledRow row{cells[0], {}};
        for (std::size_t j = 1; j < cells.size(); ++j) row.values.push_back(parse_double(cells[j], where() + row.label));
        pending.push_back(std::move(row));
    }
    if (!have_header) throw DataError(source + ": table has no header row");
    if (!kind) {
        const bool ranks = !pending.empty() && std::all_of(pending.begin(), pending.end(),
                                                           [](const LabeledRow& r) { return rank_like(r.values); });
        kind = ranks ? TableKind::Ranks : TableKind::Weights;
    }
    t.kind = *kind;
    for (auto& r : pending) {
        const bool ext = external_labels.count(r.label) > 0;
        t.add_row(r.label, std::move(r.values), ext);
    }
    return t;
}

ComparisonTable read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return parse_table(in, path);
}

std::vector<LabeledRow> read_external(const std::string& path, std::optional<TableKind> kind) {
    const ComparisonTable t = read_table(path);
    if (kind && t.kind != *kind)
        throw DataError(path + " holds " + to_string(t.kind) + ", expected " + to_string(*kind));
    std::vector<LabeledRow> out;
    for (std::size_t r = 0; r < t.size(); ++r) out.push_back({t.labels[r], t.rows[r]});
    return out;
}

RankTable to_rank_table(const ComparisonTable& table) {
    if (table.kind != TableKind::Ranks) throw DataError("consensus needs a rank table");
    RankTable rt;
    rt.labels = table.labels;
    for (const auto& row : table.rows) {
        RankVector r;
        for (double v : row) r.push_back(static_cast<int>(std::lround(v)));
        rt.rows.push_back(std::move(r));
    }
    return rt;
}

std::optional<double> kendall_tau(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DataError("kendall_tau: length mismatch");
    if (a.size() < 2) throw DataError("kendall_tau: fewer than 2 observations");
    auto sign = [](double d) { return d > kTieTolerance ? 1 : (d < -kTieTolerance ? -1 : 0); };
    long long concordant = 0, discordant = 0, tied_a = 0, tied_b = 0, pairs = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            ++pairs;
            const int sa = sign(a[i] - a[j]), sb = sign(b[i] - b[j]);
            if (sa == 0) ++tied_a;
            if (sb == 0) ++tied_b;
            if (sa * sb > 0) ++concordant;
            else if (sa * sb < 0) ++discordant;
        }
    const double denom = std::sqrt(static_cast<double>(pairs - tied_a) * static_cast<double>(pairs - tied_b));
    if (denom == 0.0) return std::nullopt;
    return std::clamp(static_cast<double>(concordant - discordant) / denom, -1.0, 1.0);
}

std::optional<double> pearson(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DataError("pearson: length mismatch");
    if (a.size() < 2) throw DataError("pearson: fewer than 2 observations");
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    const double scale_a = std::max(std::abs(ma), 1.0), scale_b = std::max(std::abs(mb), 1.0);
    if (saa <= 1e-24 * scale_a * scale_a * n || sbb <= 1e-24 * scale_b * scale_b * n) return std::nullopt;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const ComparisonTable& table, Coefficient coefficient,
                                     std::vector<std::string>* warnings) {
    if (table.size() < 2)
        throw DataError("cannot correlate a table with fewer than 2 rows (found " + std::to_string(table.size()) + ")");
    const bool expected = (table.kind == TableKind::Ranks) == (coefficient == Coefficient::KendallTauB);
    if (!expected && warnings)
        warnings->push_back("using " + to_string(coefficient) + " on a " + to_string(table.kind) + " table");
    CorrelationMatrix m;
    m.labels = table.labels;
    m.coefficient = coefficient;
    const std::size_t k = table.size();
    m.values.assign(k, std::vector<std::optional<double>>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            std::optional<double> v = coefficient == Coefficient::KendallTauB ? kendall_tau(table.rows[i], table.rows[j])
                                                                              : pearson(table.rows[i], table.rows[j]);
            if (i == j && v) v = 1.0;
            m.values[i][j] = m.values[j][i] = v;
        }
    return m;
}

std::string correlation_csv(const CorrelationMatrix& m) {
    std::ostringstream os;
    os << "# coefficient=" << to_string(m.coefficient) << '\n';
    os << "label";
    for (const auto& l : m.labels) os << ',' << csv_field(l);
    os << '\n';
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        os << csv_field(m.labels[i]);
        for (const auto& v : m.values[i]) os << ',' << (v ? fmt(*v, "%.6f") : "NA");
        os << '\n';
    }
    return os.str();
}

CorrelationMatrix parse_correlation_csv(std::istream& in) {
    CorrelationMatrix m;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string s = trim(line);
        if (s.empty()) continue;
        if (s[0] == '#') {
            const std::string body = trim(s.substr(1));
            if (body.rfind("coefficient=", 0) == 0) m.coefficient = parse_coefficient(body.substr(12));
            continue;
        }
        auto cells = csv_split(s);
        if (!header) {
            if (lower(cells[0]) != "label") throw DataError("correlation matrix: expected a 'label' header row");
            m.labels.assign(cells.begin() + 1, cells.end());
            header = true;
            continue;
        }
        if (cells.size() != m.labels.size() + 1) throw DataError("correlation matrix: ragged row '" + cells[0] + "'");
        if (m.values.size() >= m.labels.size() || cells[0] != m.labels[m.values.size()])
            throw DataError("correlation matrix: row '" + cells[0] + "' does not match the header order");
        std::vector<std::optional<double>> row;
        for (std::size_t j = 1; j < cells.size(); ++j) {
            if (cells[j] == "NA") row.push_back(std::nullopt);
            else row.push_back(parse_double(cells[j], "correlation matrix"));
        }
        m.values.push_back(std::move(row));
    }
    if (!header || m.values.size() != m.labels.size()) throw DataError("correlation matrix: not square");
    return m;
}

std::string heatmap_svg(const CorrelationMatrix& m) {
    const std::size_t k = m.labels.size();
    std::size_t longest = 0;
    for (const auto& l : m.labels) longest = std::max(longest, l.size());
    const int cell = 38;
    const int margin = 16 + static_cast<int>(longest) * 7;
    const int top = margin + 24;
    const int width = margin + static_cast<int>(k) * cell + 20;
    const int height = top + static_cast<int>(k) * cell + 20;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\">\n";
    os << "<defs><pattern id=\"na-hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">"
          "<rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
          "<path d=\"M0,6 L6,0\" stroke=\"#888888\" stroke-width=\"1\"/></pattern></defs>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"16\" font-size=\"13\">" << xml_escape(to_string(m.coefficient))
       << " correlation</text>\n";
    for (std::size_t j = 0; j < k; ++j) {
        const int x = margin + static_cast<int>(j) * cell + cell / 2;
        os << "<text transform=\"translate(" << x << "," << top - 6 << ") rotate(-60)\">" << xml_escape(m.labels[j])
           << "</text>\n";
    }
    for (std::size_t i = 0; i < k; ++i) {
        const int y = top + static_cast<int>(i) * cell;
        os << "<text x=\"" << margin - 6 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"end\">"
           << xml_escape(m.labels[i]) << "</text>\n";
        for (std::size_t j = 0; j < k; ++j) {
            const int x = margin + static_cast<int>(j) * cell;
            const auto& v = m.values[i][j];
            os << "<rect class=\"" << (v ? "cell" : "cell na") << "\" x=\"" << x << "\" y=\"" << y << "\" width=\""
               << cell << "\" height=\"" << cell << "\" fill=\"" << (v ? hex(heat_colour(*v)) : "url(#na-hatch)")
               << "\" stroke=\"#ffffff\"/>\n";
            const std::string text = v ? fmt(*v, "%.2f") : "NA";
            const bool dark = v && std::abs(*v) > 0.6;
            os << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4 << "\" text-anchor=\"middle\" fill=\""
               << (dark ? "#ffffff" : "#000000") << "\">" << text << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::vector<std::string> export_heatmap(const CorrelationMatrix& m, const std::string& stem) {
    const std::string csv = stem + ".csv", svg = stem + ".svg";
    write_file_atomic(csv, correlation_csv(m));
    write_file_atomic(svg, heatmap_svg(m));
    return {csv, svg};
}

}  // namespace mcda
