#include "mcda/lp.hpp"

#include <cmath>

namespace mcda {

namespace {

constexpr double kEps = 1e-11;

struct Tableau {
    Matrix a;
    Vector b;
    std::vector<std::size_t> basis;
};

void pivot(Tableau& t, std::size_t row, std::size_t col) {
    const double p = t.a[row][col];
    for (auto& v : t.a[row]) v /= p;
    t.b[row] /= p;
    for (std::size_t i = 0; i < t.a.size(); ++i) {
        if (i == row) continue;
        const double f = t.a[i][col];
        if (f == 0) continue;
        for (std::size_t j = 0; j < t.a[i].size(); ++j) t.a[i][j] -= f * t.a[row][j];
        t.b[i] -= f * t.b[row];
    }
    t.basis[row] = col;
}

// Returns false when the objective is unbounded below.
bool optimize(Tableau& t, const Vector& cost, std::size_t allowed_cols) {
    const std::size_t m = t.a.size();
    for (int guard = 0; guard < 100000; ++guard) {
        std::size_t entering = allowed_cols;
        for (std::size_t j = 0; j < allowed_cols; ++j) {
            double d = cost[j];
            for (std::size_t i = 0; i < m; ++i) d -= cost[t.basis[i]] * t.a[i][j];
            if (d < -kEps) {
                entering = j;
                break;
            }
        }
        if (entering == allowed_cols) return true;
        std::size_t leaving = m;
        double best = INFINITY;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.a[i][entering] <= kEps) continue;
            const double ratio = t.b[i] / t.a[i][entering];
            const bool tie = leaving < m && std::abs(ratio - best) <= kEps;
            if ((!tie && ratio < best) || (tie && t.basis[i] < t.basis[leaving])) {
                best = ratio;
                leaving = i;
            }
        }
        if (leaving == m) return false;
        pivot(t, leaving, entering);
    }
    throw MethodError("simplex iteration limit reached");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.c.size();
    const std::size_t mu = lp.a_ub.size(), me = lp.a_eq.size();
    if (lp.b_ub.size() != mu || lp.b_eq.size() != me) throw MethodError("LP right-hand side size mismatch");
    const std::size_t m = mu + me;
    const std::size_t slack0 = n, art0 = n + mu;

    // Every row gets an artificial column; rows whose slack can start in
    // the basis never use theirs.
    const std::size_t cols = n + mu + m;
    Tableau t;
    t.a.assign(m, Vector(cols, 0.0));
    t.b.assign(m, 0.0);
    t.basis.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const bool ub = i < mu;
        const Vector& row = ub ? lp.a_ub[i] : lp.a_eq[i - mu];
        if (row.size() != n) throw MethodError("LP constraint width mismatch");
        double rhs = ub ? lp.b_ub[i] : lp.b_eq[i - mu];
        const double sign = rhs < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * row[j];
        if (ub) t.a[i][slack0 + i] = sign;
        t.b[i] = sign * rhs;
        t.a[i][art0 + i] = 1.0;
        t.basis[i] = (ub && sign > 0) ? slack0 + i : art0 + i;
    }

    Vector phase1(cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = 1.0;
    optimize(t, phase1, cols);
    double infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] >= art0) infeas += t.b[i];
    if (infeas > 1e-9) throw MethodError("linear program is infeasible");

    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < art0) continue;
        for (std::size_t j = 0; j < art0; ++j)
            if (std::abs(t.a[i][j]) > kEps) {
                pivot(t, i, j);
                break;
            }
    }

    Vector phase2(cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.c[j];
    if (!optimize(t, phase2, art0)) throw MethodError("linear program is unbounded");

    LpSolution sol;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.b[i];
    for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];
    return sol;
}

}  // namespace mcda
