#ifndef RPI_LP_HPP
#define RPI_LP_HPP

#include <limits>

#include "rpi/matrix.hpp"

namespace rpi {

/// Feasibility tolerance shared by every LP-backed decision.
inline constexpr double kFeasTol = 1e-9;

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

/// optimize objective . x over {x : H x <= b}, x unrestricted in sign.
struct LpProblem {
    Vec objective;        // length = H.cols()
    Matrix H;             // l x p
    Vec b;                // length l
    bool maximize = true;
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Vec optimizer;        // populated when Optimal
    double value = 0.0;   // populated when Optimal
};

/// Two-phase dense simplex with Bland's anti-cycling rule; at most 10,000
/// pivots, reported as LpStatus::IterationLimit when exhausted.
LpOutcome lp_solve(const LpProblem& p);

/// Maximize obj over {x : H x <= b}, stopping early once the running value
/// provably exceeds `cutoff`. The early value is a witness, not the optimum.
LpOutcome lp_max(const Vec& obj, const Matrix& H, const Vec& b,
                 double cutoff = std::numeric_limits<double>::infinity());

/// True iff {x : H x <= b} admits a point within kFeasTol.
bool is_feasible(const Matrix& H, const Vec& b);

/// True iff row i is implied by the remaining rows. Requires the system
/// without row i to be feasible; an unbounded certificate counts as
/// not redundant. Iteration-limit failures propagate as exceptions.
bool is_redundant(const Matrix& H, const Vec& b, std::size_t i);

}  // namespace rpi

#endif
