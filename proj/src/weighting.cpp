#include "mcda/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "mcda/lp.hpp"

namespace mcda {

namespace {

struct Info {
    WeightingMethod id;
    const char* token;
    const char* name;
};

const Info kMethods[] = {
    {WeightingMethod::Bwm, "bwm", "BWM"},         {WeightingMethod::Cilos, "cilos", "CILOS"},
    {WeightingMethod::Critic, "critic", "CRITIC"}, {WeightingMethod::Entropy, "entropy", "Entropy"},
    {WeightingMethod::Idocriw, "idocriw", "IDOCRIW"}, {WeightingMethod::Merec, "merec", "MEREC"},
};

WeightVector make(Vector w, const std::string& source) {
    WeightVector v;
    v.weights = std::move(w);
    v.source = source;
    return v;
}

WeightVector uniform(std::size_t m, const std::string& source, const std::string& warning) {
    WeightVector v = make(Vector(m, 1.0 / static_cast<double>(m)), source);
    if (!warning.empty()) v.warnings.push_back(warning);
    return v;
}

Vector normalized(Vector w) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
    return w;
}

void require_nonnegative(const Matrix& x, const char* method) {
    for (const auto& row : x)
        for (double v : row)
            if (v < 0) throw MethodError(std::string(method) + " requires nonnegative performance values");
}

// Zero entries become kZeroFloor so ratio transforms stay finite.
Matrix floored(const Matrix& x) {
    Matrix out = x;
    for (auto& row : out)
        for (auto& v : row)
            if (v == 0) v = kZeroFloor;
    return out;
}

// MIN columns become min/x; MAX columns are kept.
Matrix fold_min_ratio(const Matrix& x, const std::vector<Direction>& d) {
    Matrix out = x;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] != Direction::Min) continue;
        const Vector c = column(x, j);
        const double lo = *std::min_element(c.begin(), c.end());
        for (std::size_t i = 0; i < x.size(); ++i) out[i][j] = lo / x[i][j];
    }
    return out;
}

// Shannon divergence 1 - e_j per column of a column-stochastic matrix.
Vector entropy_divergence(const Matrix& p, double log_norm) {
    const std::size_t m = p.empty() ? 0 : p[0].size();
    Vector d(m);
    for (std::size_t j = 0; j < m; ++j) {
        double h = 0;
        for (const auto& row : p)
            if (row[j] > 0) h += row[j] * std::log(row[j]);
        d[j] = 1.0 - (-h / log_norm);
    }
    return d;
}

// Solves F q = 0, sum(q) = 1; nullopt when the solution is not unique.
std::optional<Vector> stationary(const Matrix& f) {
    const std::size_t m = f.size();
    // The columns of F sum to zero, so the last row is redundant and is
    // replaced by the normalization constraint.
    Matrix aug(m, Vector(m + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug[i][j] = (i + 1 == m) ? 1.0 : f[i][j];
        aug[i][m] = (i + 1 == m) ? 1.0 : 0.0;
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r)
            if (std::abs(aug[r][c]) > std::abs(aug[piv][c])) piv = r;
        if (std::abs(aug[piv][c]) < 1e-14) return std::nullopt;
        std::swap(aug[piv], aug[c]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c) continue;
            const double fct = aug[r][c] / aug[c][c];
            for (std::size_t k = c; k <= m; ++k) aug[r][k] -= fct * aug[c][k];
        }
    }
    Vector q(m);
    for (std::size_t i = 0; i < m; ++i) q[i] = aug[i][m] / aug[i][i];
    return q;
}

// CILOS impact-loss weights of a positive, direction-folded matrix.
Vector cilos_solve(const Matrix& positive, std::vector<std::string>* warnings = nullptr) {
    const std::size_t n = positive.size(), m = positive[0].size();
    Matrix x = positive;
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(x, j);
        const double s = std::accumulate(c.begin(), c.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) x[i][j] /= s;
    }
    Matrix a(m, Vector(m));
    for (std::size_t k = 0; k < m; ++k) {
        const Vector c = column(x, k);
        const auto row = static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
        a[k] = x[row];
    }
    Matrix f(m, Vector(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        double colsum = 0;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            f[k][j] = (a[j][j] - a[k][j]) / a[j][j];
            colsum += f[k][j];
        }
        f[j][j] = -colsum;
    }
    std::optional<Vector> q = stationary(f);
    if (!q) {
        // Reducible loss structure (e.g. one alternative best on every
        // criterion): add a uniform jump rate so the balance system has a
        // unique solution, the limit of which is symmetric across classes.
        double scale = 1.0;
        for (const auto& row : f)
            for (double v : row) scale = std::max(scale, std::abs(v));
        const double eps = 1e-6 * scale;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) f[i][j] += eps * (1.0 / static_cast<double>(m) - (i == j ? 1.0 : 0.0));
        q = stationary(f);
        if (!q) throw MethodError("CILOS impact-loss system is singular");
        if (warnings) warnings->push_back("CILOS impact-loss system is reducible; solved with a uniform jump rate");
    }
    for (auto& v : *q) {
        if (v < -1e-9) throw MethodError("CILOS system has no nonnegative solution");
        v = std::max(0.0, v);
    }
    return normalized(*q);
}

double pearson_raw(const Vector& a, const Vector& b) {
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace

const std::vector<WeightingMethod>& all_weighting_methods() {
    static const std::vector<WeightingMethod> all = [] {
        std::vector<WeightingMethod> v;
        for (const auto& i : kMethods) v.push_back(i.id);
        return v;
    }();
    return all;
}

std::string token(WeightingMethod m) {
    for (const auto& i : kMethods)
        if (i.id == m) return i.token;
    return "";
}

std::string display_name(WeightingMethod m) {
    for (const auto& i : kMethods)
        if (i.id == m) return i.name;
    return "";
}

std::optional<WeightingMethod> parse_weighting_method(const std::string& t) {
    const std::string key = lower(trim(t));
    for (const auto& i : kMethods)
        if (key == i.token) return i.id;
    return std::nullopt;
}

WeightVector entropy_weights(const DecisionProblem& problem) {
    const std::size_t n = problem.n_alternatives(), m = problem.n_criteria();
    if (m == 1) return make({1.0}, "Entropy");
    require_nonnegative(problem.matrix(), "Entropy");
    if (n == 1) return uniform(m, "Entropy", "single alternative: entropy is degenerate, using uniform weights");
    const Matrix p = normalize(problem.matrix(), problem.directions(), Normalization::Sum);
    const Vector d = entropy_divergence(p, std::log(static_cast<double>(n)));
    const double total = std::accumulate(d.begin(), d.end(), 0.0);
    if (total <= 1e-15) return uniform(m, "Entropy", "all columns are uniform, using uniform weights");
    Vector w(m);
    for (std::size_t j = 0; j < m; ++j) w[j] = std::max(0.0, d[j]) / total;
    return make(normalized(w), "Entropy");
}

WeightVector critic_weights(const DecisionProblem& problem) {
    const std::size_t n = problem.n_alternatives(), m = problem.n_criteria();
    if (m == 1) return make({1.0}, "CRITIC");
    if (n < 2) throw MethodError("CRITIC needs at least two alternatives");
    const Matrix r = normalize(problem.matrix(), problem.directions(), Normalization::MinMax);
    std::vector<Vector> cols(m);
    Vector sd(m);
    for (std::size_t j = 0; j < m; ++j) {
        cols[j] = column(r, j);
        const double mean = std::accumulate(cols[j].begin(), cols[j].end(), 0.0) / static_cast<double>(n);
        double ss = 0;
        for (double v : cols[j]) ss += (v - mean) * (v - mean);
        sd[j] = std::sqrt(ss / static_cast<double>(n - 1));
    }
    Vector info(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double conflict = 0;
        for (std::size_t k = 0; k < m; ++k) conflict += 1.0 - (j == k ? 1.0 : pearson_raw(cols[j], cols[k]));
        info[j] = sd[j] * conflict;
    }
    const double total = std::accumulate(info.begin(), info.end(), 0.0);
    if (!(total > 0)) return uniform(m, "CRITIC", "criteria are perfectly correlated, using uniform weights");
    return make(normalized(info), "CRITIC");
}

WeightVector cilos_weights(const DecisionProblem& problem) {
    const std::size_t m = problem.n_criteria();
    if (m == 1) return make({1.0}, "CILOS");
    require_nonnegative(problem.matrix(), "CILOS");
    const Matrix x = fold_min_ratio(floored(problem.matrix()), problem.directions());
    std::vector<std::string> warnings;
    WeightVector out = make(cilos_solve(x, &warnings), "CILOS");
    out.warnings = warnings;
    return out;
}

WeightVector idocriw_weights(const DecisionProblem& problem, const IdocriwOptions& options) {
    const std::size_t m = problem.n_criteria();
    if (m == 1) return make({1.0}, "IDOCRIW");
    require_nonnegative(problem.matrix(), "IDOCRIW");
    // Entropy component: raw column-sum shares, normalized by ln(#criteria).
    const Matrix raw = floored(problem.matrix());
    const Matrix p = normalize(raw, std::vector<Direction>(m, Direction::Max), Normalization::Sum);
    Vector w = normalized(entropy_divergence(p, std::log(static_cast<double>(m))));
    WeightVector out = make({}, "IDOCRIW");
    if (options.apply_cilos_correction) {
        const Vector q = cilos_solve(fold_min_ratio(raw, problem.directions()), &out.warnings);
        for (std::size_t j = 0; j < m; ++j) w[j] *= q[j];
        w = normalized(w);
    }
    for (double v : w)
        if (v < 0) out.warnings.push_back("negative entropy component clipped to zero");
    for (auto& v : w) v = std::max(0.0, v);
    out.weights = normalized(w);
    return out;
}

WeightVector merec_weights(const DecisionProblem& problem) {
    const std::size_t n = problem.n_alternatives(), m = problem.n_criteria();
    if (m == 1) return make({1.0}, "MEREC");
    require_nonnegative(problem.matrix(), "MEREC");
    const Matrix x = floored(problem.matrix());
    const auto d = problem.directions();
    Matrix nx = x;
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(x, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        for (std::size_t i = 0; i < n; ++i) nx[i][j] = d[j] == Direction::Max ? lo / c[i] : c[i] / hi;
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    Vector s(n, 0.0);
    Matrix logs(n, Vector(m));
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0;
        for (std::size_t j = 0; j < m; ++j) {
            logs[i][j] = std::abs(std::log(nx[i][j]));
            total += logs[i][j];
        }
        s[i] = std::log(1.0 + inv_m * total);
    }
    Vector e(m, 0.0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            double total = 0;
            for (std::size_t k = 0; k < m; ++k)
                if (k != j) total += logs[i][k];
            e[j] += std::abs(std::log(1.0 + inv_m * total) - s[i]);
        }
    const double total = std::accumulate(e.begin(), e.end(), 0.0);
    if (!(total > 0)) return uniform(m, "MEREC", "no criterion has a removal effect, using uniform weights");
    return make(normalized(e), "MEREC");
}

double bwm_max_deviation(const Vector& w, const BwmComparisons& c) {
    const auto best = static_cast<std::size_t>(std::find(c.mic.begin(), c.mic.end(), 1) - c.mic.begin());
    const auto worst = static_cast<std::size_t>(std::find(c.lic.begin(), c.lic.end(), 1) - c.lic.begin());
    double dev = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        dev = std::max(dev, std::abs(w[best] - c.mic[j] * w[j]));
        dev = std::max(dev, std::abs(w[j] - c.lic[j] * w[worst]));
    }
    return dev;
}

BwmResult bwm_weights(std::size_t n, const BwmComparisons& c) {
    if (n == 0) throw MethodError("BWM needs at least one criterion");
    if (c.mic.size() != n || c.lic.size() != n)
        throw MethodError("BWM comparison vectors must have one entry per criterion");
    for (std::size_t j = 0; j < n; ++j)
        if (c.mic[j] < 1 || c.lic[j] < 1) throw MethodError("BWM comparison values must be >= 1");
    const auto best_it = std::find(c.mic.begin(), c.mic.end(), 1);
    const auto worst_it = std::find(c.lic.begin(), c.lic.end(), 1);
    if (best_it == c.mic.end()) throw MethodError("best-to-others vector has no entry equal to 1");
    if (worst_it == c.lic.end()) throw MethodError("others-to-worst vector has no entry equal to 1");
    BwmResult res;
    res.best = static_cast<std::size_t>(best_it - c.mic.begin());
    res.worst = static_cast<std::size_t>(worst_it - c.lic.begin());

    // Variables: w_0..w_{n-1}, xi. Minimize xi.
    LinearProgram lp;
    lp.c.assign(n + 1, 0.0);
    lp.c[n] = 1.0;
    auto add_abs = [&](std::size_t a, double ka, std::size_t b, double kb) {
        // |ka w_a - kb w_b| <= xi
        Vector row(n + 1, 0.0);
        row[a] += ka;
        row[b] -= kb;
        row[n] = -1.0;
        lp.a_ub.push_back(row);
        lp.b_ub.push_back(0.0);
        for (std::size_t k = 0; k < n; ++k) row[k] = -row[k];
        lp.a_ub.push_back(row);
        lp.b_ub.push_back(0.0);
    };
    for (std::size_t j = 0; j < n; ++j) {
        if (j != res.best) add_abs(res.best, 1.0, j, c.mic[j]);
        if (j != res.worst) add_abs(j, 1.0, res.worst, c.lic[j]);
    }
    Vector ones(n + 1, 1.0);
    ones[n] = 0.0;
    lp.a_eq.push_back(ones);
    lp.b_eq.push_back(1.0);
    const LpSolution sol = solve_lp(lp);
    Vector w(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    for (auto& v : w) v = std::max(0.0, v);
    res.weights = make(normalized(w), "BWM");
    res.xi = sol.x[n];
    return res;
}

}  // namespace mcda
