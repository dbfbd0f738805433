#include "mcda/outranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace mcda {

PreferenceKind parse_preference(const std::string& token) {
    const std::string t = lower(trim(token));
    if (t == "usual" || t == "t1") return PreferenceKind::Usual;
    if (t == "u-shape" || t == "u_shape" || t == "ushape" || t == "t2") return PreferenceKind::UShape;
    if (t == "v-shape" || t == "v_shape" || t == "vshape" || t == "t3") return PreferenceKind::VShape;
    if (t == "level" || t == "t4") return PreferenceKind::Level;
    if (t == "linear" || t == "t5") return PreferenceKind::Linear;
    if (t == "gaussian" || t == "t6") return PreferenceKind::Gaussian;
    throw MethodError("unknown preference function '" + token + "'");
}

std::string to_string(PreferenceKind k) {
    switch (k) {
    case PreferenceKind::Usual: return "usual";
    case PreferenceKind::UShape: return "u-shape";
    case PreferenceKind::VShape: return "v-shape";
    case PreferenceKind::Level: return "level";
    case PreferenceKind::Linear: return "linear";
    case PreferenceKind::Gaussian: return "gaussian";
    }
    return "usual";
}

double preference(PreferenceKind kind, double d, double q, double p, double s) {
    if (d <= 0) return 0.0;
    switch (kind) {
    case PreferenceKind::Usual: return 1.0;
    case PreferenceKind::UShape: return d > q ? 1.0 : 0.0;
    case PreferenceKind::VShape: return d > p ? 1.0 : (p > 0 ? d / p : 1.0);
    case PreferenceKind::Level:
        if (d > p) return 1.0;
        return d > q ? 0.5 : 0.0;
    case PreferenceKind::Linear:
        if (d > p) return 1.0;
        if (d <= q) return 0.0;
        return (d - q) / (p - q);
    case PreferenceKind::Gaussian: return 1.0 - std::exp(-(d * d) / (2.0 * s * s));
    }
    return 0.0;
}

namespace {

void validate(const DecisionProblem& problem, const Thresholds& t, const std::vector<PreferenceKind>& f) {
    const std::size_t m = problem.n_criteria();
    if (f.size() != m) throw MethodError("need one preference function per criterion");
    auto check_len = [&](const Vector& v, const char* name, bool needed) {
        if (v.empty() && !needed) return;
        if (v.size() != m) throw MethodError(std::string("threshold ") + name + " needs one value per criterion");
    };
    bool need_qp = false, need_s = false;
    for (auto k : f) {
        if (k == PreferenceKind::Gaussian) need_s = true;
        else if (k != PreferenceKind::Usual) need_qp = true;
    }
    check_len(t.q, "q", need_qp);
    check_len(t.p, "p", need_qp);
    check_len(t.s, "s", need_s);
    for (std::size_t j = 0; j < m; ++j) {
        if (!t.q.empty() && !t.p.empty()) {
            if (!std::isfinite(t.q[j]) || !std::isfinite(t.p[j]) || t.q[j] < 0 || t.p[j] < t.q[j])
                throw MethodError("invalid thresholds for criterion " + problem.criteria()[j].name + ": need 0 <= q <= p");
            if (f[j] == PreferenceKind::Linear && t.p[j] == t.q[j] && t.p[j] > 0)
                throw MethodError("linear preference needs p > q for " + problem.criteria()[j].name);
        }
        if (!t.s.empty() && (!(t.s[j] > 0) || !std::isfinite(t.s[j])) && f[j] == PreferenceKind::Gaussian)
            throw MethodError("gaussian shape s must be > 0 for " + problem.criteria()[j].name);
    }
}

double at(const Vector& v, std::size_t j) { return v.empty() ? 0.0 : v[j]; }

using DegreeFn = double (*)(PreferenceKind, double, double, double, double);

double integrated_preference(PreferenceKind kind, double d, double q, double p, double s) {
    if (d <= 0) return 0.0;
    const double h = d / kQuadratureIntervals;
    double area = 0.5 * (preference(kind, 0.0, q, p, s) + preference(kind, d, q, p, s));
    for (int k = 1; k < kQuadratureIntervals; ++k) area += preference(kind, h * k, q, p, s);
    return area * h;
}

// Per-criterion pairwise degree matrices, independent of weights.
std::vector<Matrix> pairwise_degrees(const DecisionProblem& problem, const Thresholds& t,
                                     const std::vector<PreferenceKind>& f, DegreeFn fn) {
    const std::size_t n = problem.n_alternatives(), m = problem.n_criteria();
    const Matrix& x = problem.matrix();
    std::vector<Matrix> deg(m, Matrix(n, Vector(n, 0.0)));
    for (std::size_t j = 0; j < m; ++j) {
        const bool is_max = problem.criteria()[j].direction == Direction::Max;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                const double d = is_max ? x[a][j] - x[b][j] : x[b][j] - x[a][j];
                deg[j][a][b] = fn(f[j], d, at(t.q, j), at(t.p, j), at(t.s, j));
            }
    }
    return deg;
}

PrometheeResult flows(const std::vector<Matrix>& deg, const Vector& w) {
    const std::size_t m = deg.size(), n = deg.empty() ? 0 : deg[0].size();
    const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(wsum > 0)) throw MethodError("weights must have a positive sum");
    PrometheeResult r;
    r.phi_plus.assign(n, 0.0);
    r.phi_minus.assign(n, 0.0);
    if (n == 1) {
        r.ranking = make_ranking({0.0}, true);
        return r;
    }
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            double pi = 0;
            for (std::size_t j = 0; j < m; ++j) pi += w[j] * deg[j][a][b];
            pi /= wsum;
            r.phi_plus[a] += pi * scale;
            r.phi_minus[b] += pi * scale;
        }
    Vector net(n);
    for (std::size_t a = 0; a < n; ++a) net[a] = r.phi_plus[a] - r.phi_minus[a];
    r.ranking = make_ranking(net, true);
    return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

PrometheeResult promethee_ii(const DecisionProblem& problem, const Thresholds& t,
                             const std::vector<PreferenceKind>& functions) {
    validate(problem, t, functions);
    return flows(pairwise_degrees(problem, t, functions, &preference), problem.weights());
}

PrometheeResult promethee_iv(const DecisionProblem& problem, const Thresholds& t,
                             const std::vector<PreferenceKind>& functions) {
    validate(problem, t, functions);
    return flows(pairwise_degrees(problem, t, functions, &integrated_preference), problem.weights());
}

Vector ec_sample_weights(const EcConfig& config, int iteration) {
    std::mt19937_64 gen(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(iteration))));
    Vector w(config.custom_set.size());
    double total = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double c = config.custom_set[j];
        const double lo = std::max(0.0, c - 0.5 * c), hi = std::min(1.0, c + 0.5 * c);
        w[j] = lo + (hi - lo) * unit_double(gen);
        total += w[j];
    }
    if (!(total > 0)) throw MethodError("sampled EC weights sum to zero; custom set must have a positive entry");
    for (auto& v : w) v /= total;
    return w;
}

EcResult ec_promethee(const DecisionProblem& problem, const Thresholds& t,
                      const std::vector<PreferenceKind>& functions, const EcConfig& config) {
    validate(problem, t, functions);
    const std::size_t n = problem.n_alternatives(), m = problem.n_criteria();
    if (config.iterations < 1) throw MethodError("ec.iterations must be >= 1");
    if (config.custom_set.size() != m) throw MethodError("ec.custom_set needs one anchor per criterion");
    for (double c : config.custom_set)
        if (!(c >= 0 && c <= 1)) throw MethodError("ec.custom_set entries must lie in [0,1]");

    const auto deg = pairwise_degrees(problem, t, functions, &preference);
    EcResult res;
    res.frequency.assign(n, std::vector<int>(n, 0));
    res.mean_rank.assign(n, 0.0);
    for (int it = 0; it < config.iterations; ++it) {
        const auto r = flows(deg, ec_sample_weights(config, it)).ranking.ranks;
        for (std::size_t a = 0; a < n; ++a) {
            ++res.frequency[a][r[a] - 1];
            res.mean_rank[a] += r[a];
        }
    }
    for (auto& v : res.mean_rank) v /= config.iterations;
    res.modal_rank.assign(n, 1);
    res.multimodal.assign(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        const auto& fr = res.frequency[a];
        const int best = *std::max_element(fr.begin(), fr.end());
        res.modal_rank[a] = static_cast<int>(std::find(fr.begin(), fr.end(), best) - fr.begin()) + 1;
        res.multimodal[a] = std::count(fr.begin(), fr.end(), best) > 1;
    }
    res.ranking = make_ranking(res.mean_rank, false);
    return res;
}

}  // namespace mcda
