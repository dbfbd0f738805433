#pragma once

#include "mcda/core.hpp"

namespace mcda {

// minimize c.x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0
struct LinearProgram {
    Vector c;
    Matrix a_ub;
    Vector b_ub;
    Matrix a_eq;
    Vector b_eq;
};

struct LpSolution {
    Vector x;
    double objective = 0.0;
};

// Dense two-phase simplex with Bland's rule. Throws MethodError when the
// program is infeasible or unbounded.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace mcda
