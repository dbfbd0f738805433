#include "mcda/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcda {

namespace {

struct MethodInfo {
    ScoringMethod id;
    const char* token;
    const char* name;
};

const MethodInfo kMethods[] = {
    {ScoringMethod::Aras, "aras", "ARAS"},          {ScoringMethod::Cocoso, "cocoso", "CoCoSo"},
    {ScoringMethod::Codas, "codas", "CODAS"},       {ScoringMethod::Copras, "copras", "COPRAS"},
    {ScoringMethod::Cradis, "cradis", "CRADIS"},    {ScoringMethod::Edas, "edas", "EDAS"},
    {ScoringMethod::Gra, "gra", "GRA"},             {ScoringMethod::Mabac, "mabac", "MABAC"},
    {ScoringMethod::Macbeth, "macbeth", "MACBETH"}, {ScoringMethod::Mairca, "mairca", "MAIRCA"},
    {ScoringMethod::Marcos, "marcos", "MARCOS"},    {ScoringMethod::Maut, "maut", "MAUT"},
    {ScoringMethod::Moora, "moora", "MOORA"},       {ScoringMethod::Moosra, "moosra", "MOOSRA"},
    {ScoringMethod::Multimoora, "multimoora", "MULTIMOORA"},
    {ScoringMethod::Ocra, "ocra", "OCRA"},          {ScoringMethod::Oreste, "oreste", "ORESTE"},
    {ScoringMethod::Piv, "piv", "PIV"},             {ScoringMethod::Psi, "psi", "PSI"},
    {ScoringMethod::Rov, "rov", "ROV"},             {ScoringMethod::Saw, "saw", "SAW"},
    {ScoringMethod::Spotis, "spotis", "SPOTIS"},    {ScoringMethod::Todim, "todim", "TODIM"},
    {ScoringMethod::Topsis, "topsis", "TOPSIS"},    {ScoringMethod::Vikor, "vikor", "VIKOR"},
    {ScoringMethod::Wsm, "wsm", "WSM"},             {ScoringMethod::Wpm, "wpm", "WPM"},
    {ScoringMethod::Waspas, "waspas", "WASPAS"},
};

const MethodInfo& info(ScoringMethod m) {
    for (const auto& i : kMethods)
        if (i.id == m) return i;
    throw MethodError("unknown scoring method");
}

using Dirs = std::vector<Direction>;

bool is_max(Direction d) { return d == Direction::Max; }

// Average ranks (1 = smallest) with ties sharing the mean position.
Vector average_ranks(const Vector& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    Vector r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t k = i;
        while (k + 1 < n && v[idx[k + 1]] == v[idx[i]]) ++k;
        const double mean = (static_cast<double>(i) + static_cast<double>(k)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= k; ++t) r[idx[t]] = mean;
        i = k + 1;
    }
    return r;
}

ScoreRanking aras(const Matrix& x0, const Dirs& d, const Vector& w) {
    Matrix x = x0;
    const std::size_t n = x.size(), m = d.size();
    Vector best(m), denom(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!is_max(d[j]))
            for (std::size_t i = 0; i < n; ++i) {
                if (x[i][j] == 0) throw MethodError("ARAS requires nonzero values in MIN columns");
                x[i][j] = 1.0 / x[i][j];
            }
        const Vector c = column(x, j);
        best[j] = *std::max_element(c.begin(), c.end());
        denom[j] = best[j] + std::accumulate(c.begin(), c.end(), 0.0);
        if (denom[j] == 0) throw MethodError("ARAS column sums to zero");
    }
    double s0 = 0;
    for (std::size_t j = 0; j < m; ++j) s0 += w[j] * best[j] / denom[j];
    Vector k(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) k[i] += w[j] * x[i][j] / denom[j];
    for (auto& v : k) v /= s0;
    return make_ranking(k, true);
}

ScoreRanking cocoso(const Matrix& x, const Dirs& d, const Vector& w, double l) {
    const Matrix r = normalize(x, d, Normalization::MinMax);
    const std::size_t n = x.size();
    Vector s(n, 0.0), p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            s[i] += w[j] * r[i][j];
            p[i] += std::pow(r[i][j], w[j]);
        }
    // Shift so the relative-significance ratios stay finite.
    if (*std::min_element(s.begin(), s.end()) == 0)
        for (auto& v : s) v += 1;
    if (*std::min_element(p.begin(), p.end()) == 0)
        for (auto& v : p) v += 1;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += s[i] + p[i];
    const double smin = *std::min_element(s.begin(), s.end()), pmin = *std::min_element(p.begin(), p.end());
    const double smax = *std::max_element(s.begin(), s.end()), pmax = *std::max_element(p.begin(), p.end());
    Vector k(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ka = (s[i] + p[i]) / total;
        const double kb = s[i] / smin + p[i] / pmin;
        const double kc = (l * s[i] + (1 - l) * p[i]) / (l * smax + (1 - l) * pmax);
        k[i] = std::cbrt(ka * kb * kc) + (ka + kb + kc) / 3.0;
    }
    return make_ranking(k, true);
}

ScoreRanking codas(const Matrix& x, const Dirs& d, const Vector& w, double lambda) {
    Matrix v = normalize(x, d, Normalization::MaxLinear);
    const std::size_t n = x.size(), m = d.size();
    for (auto& row : v)
        for (std::size_t j = 0; j < m; ++j) row[j] *= w[j];
    Vector neg(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(v, j);
        neg[j] = *std::min_element(c.begin(), c.end());
    }
    Vector e(n, 0.0), t(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double diff = v[i][j] - neg[j];
            e[i] += diff * diff;
            t[i] += std::abs(diff);
        }
        e[i] = std::sqrt(e[i]);
    }
    Vector h(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double de = e[i] - e[k];
            h[i] += de + lambda * de * (t[i] - t[k]);
        }
    return make_ranking(h, true);
}

ScoreRanking copras(const Matrix& x, const Dirs& d, const Vector& w) {
    const std::size_t n = x.size(), m = d.size();
    Matrix v = normalize(x, Dirs(m, Direction::Max), Normalization::Sum);
    Vector sp(n, 0.0), sm(n, 0.0);
    bool any_min = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double val = v[i][j] * w[j];
            if (is_max(d[j])) sp[i] += val;
            else {
                sm[i] += val;
                any_min = true;
            }
        }
    Vector q = sp;
    if (any_min) {
        const double smin = *std::min_element(sm.begin(), sm.end());
        if (smin <= 0) throw MethodError("COPRAS requires positive cost sums");
        const double ssum = std::accumulate(sm.begin(), sm.end(), 0.0);
        double sdiv = 0;
        for (double s : sm) sdiv += smin / s;
        for (std::size_t i = 0; i < n; ++i) q[i] = sp[i] + smin * ssum / (sm[i] * sdiv);
    }
    return make_ranking(q, true);
}

ScoreRanking cradis(const Matrix& x, const Dirs& d, const Vector& w) {
    // Deviation form: benefit columns min/x, cost columns x/max, then
    // deviations against the global extremes of the weighted matrix.
    const std::size_t n = x.size(), m = d.size();
    Matrix v = x;
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(x, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (is_max(d[j])) {
                if (x[i][j] == 0) throw MethodError("CRADIS requires nonzero values in MAX columns");
                v[i][j] = lo / x[i][j];
            } else {
                if (hi == 0) throw MethodError("CRADIS column has zero maximum");
                v[i][j] = x[i][j] / hi;
            }
            v[i][j] *= w[j];
        }
    }
    double gmax = -INFINITY, gmin = INFINITY;
    for (const auto& row : v)
        for (double val : row) {
            gmax = std::max(gmax, val);
            gmin = std::min(gmin, val);
        }
    double so_plus = 0, so_minus = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(v, j);
        const double cmax = *std::max_element(c.begin(), c.end());
        so_plus += gmax - cmax;
        so_minus += cmax - gmin;
    }
    Vector q(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sp = 1e-16, sm = 0;
        for (double val : v[i]) {
            sp += gmax - val;
            sm += val - gmin;
        }
        q[i] = (so_plus / sp + sm / so_minus) / 2.0;
    }
    return make_ranking(q, false);
}

ScoreRanking edas(const Matrix& x, const Dirs& d, const Vector& w) {
    const std::size_t n = x.size(), m = d.size();
    Vector sp(n, 0.0), sn(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(x, j);
        const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(n);
        if (mean == 0) throw MethodError("EDAS requires nonzero column means");
        for (std::size_t i = 0; i < n; ++i) {
            double diff = (c[i] - mean) / mean;
            if (!is_max(d[j])) diff = -diff;
            sp[i] += w[j] * std::max(0.0, diff);
            sn[i] += w[j] * std::max(0.0, -diff);
        }
    }
    const double spmax = *std::max_element(sp.begin(), sp.end());
    const double snmax = *std::max_element(sn.begin(), sn.end());
    Vector a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double nsp = spmax > 0 ? sp[i] / spmax : 0.0;
        const double nsn = snmax > 0 ? 1.0 - sn[i] / snmax : 1.0;
        a[i] = 0.5 * (nsp + nsn);
    }
    return make_ranking(a, true);
}

ScoreRanking gra(const Matrix& x, const Dirs& d, const Vector& w, double eps) {
    const Matrix r = normalize(x, d, Normalization::MinMax);
    Vector g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) g[i] += w[j] * eps / ((1.0 - r[i][j]) + eps);
    return make_ranking(g, true);
}

ScoreRanking mabac(const Matrix& x, const Dirs& d) {
    // Unweighted border-approximation form: v = (1 + t)/n against the
    // geometric mean of each column.
    const std::size_t n = x.size(), m = d.size();
    const Matrix t = normalize(x, d, Normalization::MinMax);
    Matrix v(n, Vector(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) v[i][j] = (1.0 + t[i][j]) / static_cast<double>(n);
    Vector s(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double g = 1.0;
        for (std::size_t i = 0; i < n; ++i) g *= std::pow(v[i][j], 1.0 / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) s[i] += v[i][j] - g;
    }
    return make_ranking(s, true);
}

ScoreRanking macbeth(const Matrix& x, const Dirs& d, const Vector& w) {
    const Matrix r = normalize(x, d, Normalization::MinMax);
    Vector s(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) s[i] += w[j] * r[i][j];
    return make_ranking(s, true);
}

ScoreRanking mairca(const Matrix& x, const Dirs& d, const Vector& w) {
    const std::size_t n = x.size();
    const Matrix t = normalize(x, d, Normalization::MinMax);
    Vector g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double tp = w[j] / static_cast<double>(n);
            g[i] += tp - tp * t[i][j];
        }
    return make_ranking(g, false);
}

ScoreRanking marcos(const Matrix& x, const Dirs& d, const Vector& w) {
    const std::size_t n = x.size(), m = d.size();
    Vector s(n, 0.0);
    double s_best = 0, s_worst = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(x, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        if (is_max(d[j])) {
            if (hi == 0) throw MethodError("MARCOS column has zero maximum");
            for (std::size_t i = 0; i < n; ++i) s[i] += w[j] * c[i] / hi;
            s_worst += w[j] * lo / hi;
        } else {
            if (lo == 0) throw MethodError("MARCOS requires nonzero values in MIN columns");
            for (std::size_t i = 0; i < n; ++i) s[i] += w[j] * lo / c[i];
            s_worst += w[j] * lo / hi;
        }
        s_best += w[j];
    }
    Vector f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double kn = s[i] / s_worst, kp = s[i] / s_best;
        const double fn = kp / (kp + kn), fp = kn / (kp + kn);
        f[i] = (kp + kn) / (1.0 + (1.0 - fp) / fp + (1.0 - fn) / fn);
    }
    return make_ranking(f, true);
}

double utility(UtilityKind kind, double x, double step) {
    switch (kind) {
    case UtilityKind::Exponential: return (std::exp(x) - 1.0) / (std::exp(1.0) - 1.0);
    case UtilityKind::Step: return std::ceil(x / step) * step;
    case UtilityKind::Linear: return x;
    }
    return x;
}

ScoreRanking maut(const Matrix& x, const Dirs& d, const Vector& w, const ScoringParams& p) {
    const Matrix r = normalize(x, d, Normalization::MinMax);
    Vector s(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            const UtilityKind k = is_max(d[j]) ? p.maut_max_utility : p.maut_min_utility;
            s[i] += w[j] * utility(k, r[i][j], p.maut_step_size);
        }
    return make_ranking(s, true);
}

// Weighted vector-normalized matrix shared by the MOORA family and PIV.
Matrix weighted_vector(const Matrix& x, const Dirs& d, const Vector& w) {
    Matrix v = normalize(x, d, Normalization::Vector);
    for (auto& row : v)
        for (std::size_t j = 0; j < d.size(); ++j) row[j] *= w[j];
    return v;
}

ScoreRanking moora(const Matrix& x, const Dirs& d, const Vector& w) {
    const Matrix v = weighted_vector(x, d, w);
    Vector y(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) y[i] += is_max(d[j]) ? v[i][j] : -v[i][j];
    return make_ranking(y, true);
}

ScoreRanking moosra(const Matrix& x, const Dirs& d, const Vector& w) {
    if (std::none_of(d.begin(), d.end(), [](Direction k) { return k == Direction::Min; }))
        throw MethodError("MOOSRA requires at least one MIN criterion");
    const Matrix v = weighted_vector(x, d, w);
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double sp = 0, sm = 0;
        for (std::size_t j = 0; j < d.size(); ++j) (is_max(d[j]) ? sp : sm) += v[i][j];
        if (sm == 0) throw MethodError("MOOSRA cost sum is zero for " + std::to_string(i + 1));
        y[i] = sp / sm;
    }
    return make_ranking(y, true);
}

ScoreRanking ocra(const Matrix& x, const Dirs& d, const Vector& w) {
    const std::size_t n = x.size();
    Vector in(n, 0.0), out(n, 0.0);
    for (std::size_t j = 0; j < d.size(); ++j) {
        const Vector c = column(x, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        if (lo == 0) throw MethodError("OCRA requires a nonzero column minimum");
        for (std::size_t i = 0; i < n; ++i) {
            if (is_max(d[j])) out[i] += w[j] * (c[i] - lo) / lo;
            else in[i] += w[j] * (hi - c[i]) / lo;
        }
    }
    const double omin = *std::min_element(out.begin(), out.end());
    const double imin = *std::min_element(in.begin(), in.end());
    Vector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = (in[i] - imin) + (out[i] - omin);
    const double rmin = *std::min_element(r.begin(), r.end());
    for (auto& v : r) v -= rmin;
    return make_ranking(r, true);
}

ScoreRanking oreste(const Matrix& x, const Dirs& d, const Vector& w, double alpha) {
    const std::size_t n = x.size(), m = d.size();
    Vector neg_w(m);
    for (std::size_t j = 0; j < m; ++j) neg_w[j] = -w[j];
    const Vector rw = average_ranks(neg_w);
    Matrix rc(n, Vector(m));
    for (std::size_t j = 0; j < m; ++j) {
        Vector c = column(x, j);
        if (is_max(d[j]))
            for (auto& v : c) v = -v;
        const Vector r = average_ranks(c);
        for (std::size_t i = 0; i < n; ++i) rc[i][j] = r[i];
    }
    Vector dist;
    dist.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) dist.push_back(alpha * rc[i][j] + (1 - alpha) * rw[j]);
    const Vector global = average_ranks(dist);
    Vector total(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) total[i] += global[i * m + j];
    return make_ranking(total, false);
}

ScoreRanking piv(const Matrix& x, const Dirs& d, const Vector& w) {
    const Matrix v = weighted_vector(x, d, w);
    Vector s(x.size(), 0.0);
    for (std::size_t j = 0; j < d.size(); ++j) {
        const Vector c = column(v, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] += is_max(d[j]) ? hi - c[i] : c[i] - lo;
    }
    return make_ranking(s, false);
}

ScoreRanking psi(const Matrix& x, const Dirs& d) {
    const std::size_t n = x.size(), m = d.size();
    const Matrix v = normalize(x, d, Normalization::MaxLinear);
    Vector phi(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(v, j);
        const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(n);
        double pv = 0;
        for (double val : c) pv += (val - mean) * (val - mean);
        phi[j] = 1.0 - pv;
    }
    const double total = std::accumulate(phi.begin(), phi.end(), 0.0);
    if (total == 0) throw MethodError("PSI preference deviations cancel out");
    Vector idx(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) idx[i] += v[i][j] * phi[j] / total;
    return make_ranking(idx, true);
}

ScoreRanking rov(const Matrix& x, const Dirs& d, const Vector& w) {
    return macbeth(x, d, w);
}

ScoreRanking saw(const Matrix& x, const Dirs& d, const Vector& w) {
    const Matrix v = normalize(x, d, Normalization::MaxLinear);
    Vector s(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) s[i] += w[j] * v[i][j];
    return make_ranking(s, true);
}

ScoreRanking spotis(const Matrix& x, const Dirs& d, const Vector& w, const ScoringParams& p) {
    Vector lo = p.spotis_smin, hi = p.spotis_smax;
    std::vector<std::string> notes;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const Vector c = column(x, j);
        const double cmin = *std::min_element(c.begin(), c.end());
        const double cmax = *std::max_element(c.begin(), c.end());
        if (cmin < lo[j] || cmax > hi[j]) {
            lo[j] = std::min(lo[j], cmin);
            hi[j] = std::max(hi[j], cmax);
            notes.push_back("spotis bounds of criterion " + std::to_string(j + 1) + " widened to the data range");
        }
    }
    Vector s(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double ideal = is_max(d[j]) ? hi[j] : lo[j];
            s[i] += w[j] * std::abs(x[i][j] - ideal) / (hi[j] - lo[j]);
        }
    auto r = make_ranking(s, false);
    r.notes = std::move(notes);
    return r;
}

ScoreRanking todim(const Matrix& x, const Dirs& d, const Vector& w0, double teta) {
    const std::size_t n = x.size(), m = d.size();
    const Matrix v = normalize(x, d, Normalization::Sum);
    const double wmax = *std::max_element(w0.begin(), w0.end());
    if (wmax <= 0) throw MethodError("TODIM requires a positive weight");
    Vector w(m);
    for (std::size_t j = 0; j < m; ++j) w[j] = w0[j] / wmax;
    const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
    Vector r(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) continue;
            for (std::size_t j = 0; j < m; ++j) {
                const double delta = v[i][j] - v[k][j];
                if (delta > 0) r[i] += std::sqrt(w[j] * delta / wsum);
                else if (delta < 0) {
                    if (w[j] == 0) continue;
                    r[i] += -(1.0 / teta) * std::sqrt(wsum * (-delta) / w[j]);
                }
            }
        }
    const double lo = *std::min_element(r.begin(), r.end());
    const double hi = *std::max_element(r.begin(), r.end());
    if (hi > lo)
        for (auto& val : r) val = (val - lo) / (hi - lo);
    else
        std::fill(r.begin(), r.end(), 0.0);
    return make_ranking(r, true);
}

ScoreRanking topsis(const Matrix& x, const Dirs& d, const Vector& w) {
    const std::size_t n = x.size(), m = d.size();
    const Matrix v = weighted_vector(x, d, w);
    Vector pos(m), neg(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(v, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        pos[j] = is_max(d[j]) ? hi : lo;
        neg[j] = is_max(d[j]) ? lo : hi;
    }
    Vector cc(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dp = 0, dn = 0;
        for (std::size_t j = 0; j < m; ++j) {
            dp += (v[i][j] - pos[j]) * (v[i][j] - pos[j]);
            dn += (v[i][j] - neg[j]) * (v[i][j] - neg[j]);
        }
        dp = std::sqrt(dp);
        dn = std::sqrt(dn);
        cc[i] = (dp + dn) > 0 ? dn / (dp + dn) : 0.0;
    }
    return make_ranking(cc, true);
}

// 1 + min-max normalization used by the WSM/WPM/WASPAS family.
Matrix shifted_minmax(const Matrix& x, const Dirs& d) {
    Matrix r = normalize(x, d, Normalization::MinMax);
    for (auto& row : r)
        for (auto& v : row) v += 1.0;
    return r;
}

Vector wsm_scores(const Matrix& r, const Vector& w) {
    Vector s(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) s[i] += w[j] * r[i][j];
    return s;
}

Vector wpm_scores(const Matrix& r, const Vector& w) {
    Vector s(r.size(), 1.0);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) s[i] *= std::pow(r[i][j], w[j]);
    return s;
}

bool uses_weights(ScoringMethod m) {
    return m != ScoringMethod::Mabac && m != ScoringMethod::Psi && m != ScoringMethod::Multimoora;
}

}  // namespace

const std::vector<ScoringMethod>& all_scoring_methods() {
    static const std::vector<ScoringMethod> all = [] {
        std::vector<ScoringMethod> v;
        for (const auto& i : kMethods) v.push_back(i.id);
        return v;
    }();
    return all;
}

std::string token(ScoringMethod m) { return info(m).token; }
std::string display_name(ScoringMethod m) { return info(m).name; }

std::optional<ScoringMethod> parse_scoring_method(const std::string& t) {
    const std::string key = lower(trim(t));
    for (const auto& i : kMethods)
        if (key == i.token) return i.id;
    return std::nullopt;
}

UtilityKind parse_utility_kind(const std::string& t) {
    const std::string key = lower(trim(t));
    if (key == "exponential" || key == "exp") return UtilityKind::Exponential;
    if (key == "step") return UtilityKind::Step;
    if (key == "linear") return UtilityKind::Linear;
    throw MethodError("unknown utility function '" + t + "'");
}

void validate_params(ScoringMethod method, const ScoringParams& p, const DecisionProblem& problem) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    switch (method) {
    case ScoringMethod::Cocoso:
        if (!in_unit(p.cocoso_l)) throw MethodError("cocoso.l must lie in [0,1]");
        break;
    case ScoringMethod::Codas:
        if (!(p.codas_lambda >= 0)) throw MethodError("codas.lambda must be >= 0");
        break;
    case ScoringMethod::Gra:
        if (!(p.gra_epsilon > 0 && p.gra_epsilon <= 1)) throw MethodError("gra.epsilon must lie in (0,1]");
        break;
    case ScoringMethod::Oreste:
        if (!in_unit(p.oreste_alpha)) throw MethodError("oreste.alpha must lie in [0,1]");
        break;
    case ScoringMethod::Todim:
        if (!(p.todim_teta > 0)) throw MethodError("todim.teta must be > 0");
        break;
    case ScoringMethod::Vikor:
        if (!in_unit(p.vikor_v)) throw MethodError("vikor.v must lie in [0,1]");
        break;
    case ScoringMethod::Maut:
        if (!(p.maut_step_size > 0)) throw MethodError("maut.step_size must be > 0");
        break;
    case ScoringMethod::Spotis: {
        const std::size_t m = problem.n_criteria();
        if (p.spotis_smin.size() != m || p.spotis_smax.size() != m)
            throw MethodError("spotis.smin and spotis.smax need one bound per criterion");
        for (std::size_t j = 0; j < m; ++j) {
            if (!(p.spotis_smin[j] < p.spotis_smax[j]))
                throw MethodError("spotis bounds for " + problem.criteria()[j].name + " need smin < smax");
            if (p.spotis_expand_bounds) continue;
            for (std::size_t i = 0; i < problem.n_alternatives(); ++i) {
                const double v = problem.matrix()[i][j];
                if (v < p.spotis_smin[j] || v > p.spotis_smax[j])
                    throw MethodError("SPOTIS value " + std::to_string(v) + " of " + problem.alternatives()[i] +
                                      " lies outside [smin, smax] for " + problem.criteria()[j].name);
            }
        }
        break;
    }
    default: break;
    }
}

VikorResult vikor_details(const DecisionProblem& problem, double v) {
    const Matrix& x = problem.matrix();
    const auto d = problem.directions();
    const Vector w = problem.weights();
    const std::size_t n = x.size(), m = d.size();
    VikorResult res;
    res.s.assign(n, 0.0);
    res.r.assign(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(x, j);
        const double lo = *std::min_element(c.begin(), c.end());
        const double hi = *std::max_element(c.begin(), c.end());
        const double best = is_max(d[j]) ? hi : lo;
        for (std::size_t i = 0; i < n; ++i) {
            const double term = hi > lo ? w[j] * std::abs(best - c[i]) / (hi - lo) : 0.0;
            res.s[i] += term;
            res.r[i] = std::max(res.r[i], term);
        }
    }
    const auto [s_lo, s_hi] = std::minmax_element(res.s.begin(), res.s.end());
    const auto [r_lo, r_hi] = std::minmax_element(res.r.begin(), res.r.end());
    res.q.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double qs = *s_hi > *s_lo ? (res.s[i] - *s_lo) / (*s_hi - *s_lo) : 0.0;
        const double qr = *r_hi > *r_lo ? (res.r[i] - *r_lo) / (*r_hi - *r_lo) : 0.0;
        res.q[i] = v * qs + (1 - v) * qr;
    }
    res.ranking = make_ranking(res.q, false);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return res.q[a] < res.q[b]; });
    const std::size_t first = order[0];
    if (n == 1) {
        res.acceptable_advantage = res.acceptable_stability = true;
        res.compromise_set = {first};
        return res;
    }
    const double dq = 1.0 / static_cast<double>(n - 1);
    res.acceptable_advantage = res.q[order[1]] - res.q[first] >= dq;
    const auto s_rank = scores_to_ranks(res.s, false);
    const auto r_rank = scores_to_ranks(res.r, false);
    res.acceptable_stability = s_rank[first] == 1 || r_rank[first] == 1;
    if (res.acceptable_advantage && res.acceptable_stability) {
        res.compromise_set = {first};
    } else if (!res.acceptable_advantage) {
        for (auto i : order)
            if (res.q[i] - res.q[first] < dq) res.compromise_set.push_back(i);
    } else {
        res.compromise_set = {first, order[1]};
    }
    return res;
}

MultimooraResult rank_multimoora(const DecisionProblem& problem) {
    const Matrix& x = problem.matrix();
    const auto d = problem.directions();
    const std::size_t n = x.size(), m = d.size();
    MultimooraResult res;
    if (n == 1) {
        res.ratio_system = res.reference_point = res.full_multiplicative = res.final = make_ranking({1.0}, true);
        return res;
    }
    const Matrix v = normalize(x, d, Normalization::Vector);

    Vector y1(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) y1[i] += is_max(d[j]) ? v[i][j] : -v[i][j];
    res.ratio_system = make_ranking(y1, true);

    Vector ref(m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector c = column(v, j);
        ref[j] = is_max(d[j]) ? *std::max_element(c.begin(), c.end()) : *std::min_element(c.begin(), c.end());
    }
    Vector y2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) y2[i] = std::max(y2[i], std::abs(v[i][j] - ref[j]));
    res.reference_point = make_ranking(y2, false);

    Vector y3(n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (is_max(d[j])) y3[i] *= x[i][j];
            else {
                if (x[i][j] == 0) throw MethodError("MULTIMOORA requires nonzero values in MIN columns");
                y3[i] /= x[i][j];
            }
        }
    res.full_multiplicative = make_ranking(y3, true);

    // Dominance: i beats k when it ranks strictly better in a majority of
    // the three subordinate rankings.
    const RankVector* sub[3] = {&res.ratio_system.ranks, &res.reference_point.ranks, &res.full_multiplicative.ranks};
    Vector wins(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) continue;
            int better = 0;
            for (const auto* r : sub)
                if ((*r)[i] < (*r)[k]) ++better;
            if (better >= 2) wins[i] += 1.0;
        }
    res.final = make_ranking(wins, true);
    return res;
}

ScoreRanking rank_scoring(ScoringMethod method, const DecisionProblem& problem, const ScoringParams& params) {
    validate_params(method, params, problem);
    Vector w;
    if (uses_weights(method)) w = problem.weights();
    if (problem.n_alternatives() == 1) return make_ranking({1.0}, true);

    const Matrix& x = problem.matrix();
    const auto d = problem.directions();
    switch (method) {
    case ScoringMethod::Aras: return aras(x, d, w);
    case ScoringMethod::Cocoso: return cocoso(x, d, w, params.cocoso_l);
    case ScoringMethod::Codas: return codas(x, d, w, params.codas_lambda);
    case ScoringMethod::Copras: return copras(x, d, w);
    case ScoringMethod::Cradis: return cradis(x, d, w);
    case ScoringMethod::Edas: return edas(x, d, w);
    case ScoringMethod::Gra: return gra(x, d, w, params.gra_epsilon);
    case ScoringMethod::Mabac: return mabac(x, d);
    case ScoringMethod::Macbeth: return macbeth(x, d, w);
    case ScoringMethod::Mairca: return mairca(x, d, w);
    case ScoringMethod::Marcos: return marcos(x, d, w);
    case ScoringMethod::Maut: return maut(x, d, w, params);
    case ScoringMethod::Moora: return moora(x, d, w);
    case ScoringMethod::Moosra: return moosra(x, d, w);
    case ScoringMethod::Multimoora: return rank_multimoora(problem).final;
    case ScoringMethod::Ocra: return ocra(x, d, w);
    case ScoringMethod::Oreste: return oreste(x, d, w, params.oreste_alpha);
    case ScoringMethod::Piv: return piv(x, d, w);
    case ScoringMethod::Psi: return psi(x, d);
    case ScoringMethod::Rov: return rov(x, d, w);
    case ScoringMethod::Saw: return saw(x, d, w);
    case ScoringMethod::Spotis: return spotis(x, d, w, params);
    case ScoringMethod::Todim: return todim(x, d, w, params.todim_teta);
    case ScoringMethod::Topsis: return topsis(x, d, w);
    case ScoringMethod::Vikor: {
        const VikorResult v = vikor_details(problem, params.vikor_v);
        ScoreRanking r = v.ranking;
        r.notes.push_back(std::string("acceptable_advantage=") + (v.acceptable_advantage ? "true" : "false"));
        r.notes.push_back(std::string("acceptable_stability=") + (v.acceptable_stability ? "true" : "false"));
        std::string set = "compromise_set=";
        for (std::size_t k = 0; k < v.compromise_set.size(); ++k)
            set += (k ? " " : "") + problem.alternatives()[v.compromise_set[k]];
        r.notes.push_back(set);
        return r;
    }
    case ScoringMethod::Wsm: return make_ranking(wsm_scores(shifted_minmax(x, d), w), true);
    case ScoringMethod::Wpm: return make_ranking(wpm_scores(shifted_minmax(x, d), w), true);
    case ScoringMethod::Waspas: {
        const Matrix r = shifted_minmax(x, d);
        const Vector a = wsm_scores(r, w), b = wpm_scores(r, w);
        Vector s(a.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.5 * a[i] + 0.5 * b[i];
        return make_ranking(s, true);
    }
    }
    throw MethodError("unhandled scoring method");
}

}  // namespace mcda
