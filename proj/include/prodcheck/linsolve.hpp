/* linsolve.hpp -- exact rational linear algebra: fraction-free elimination and
 * a small simplex for nonnegative feasibility / lexicographic minimization. */

#ifndef PRODCHECK_LINSOLVE_HPP_
#define PRODCHECK_LINSOLVE_HPP_

#include <optional>
#include <vector>

#include "prodcheck/rational.hpp"

namespace prodcheck {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves the square system A v = rhs exactly (Bareiss fraction-free
/// elimination over the integers after clearing denominators row-wise).
/// Returns nullopt when A is singular.
std::optional<std::vector<Rational>> solve_linear_system(const Matrix& a,
                                                         const std::vector<Rational>& rhs);

struct LpResult {
    bool feasible = false;
    std::vector<Rational> point; // when feasible: the lexicographically minimal solution
};

/// Feasibility of { v >= 0, A v = rhs } and, when feasible, the solution that
/// minimizes v_0, then v_1, ... (exact rational simplex, Bland's rule). When
/// the feasible set has a componentwise-least element this returns exactly it.
LpResult lexmin_nonnegative_solution(const Matrix& a, const std::vector<Rational>& rhs);

} // namespace prodcheck

#endif // PRODCHECK_LINSOLVE_HPP_
