#ifndef RPI_INVARIANT_HPP
#define RPI_INVARIANT_HPP

#include <string>

#include "rpi/sets.hpp"

namespace rpi {

/// x(k+1) = A x(k) + E d(k) with state set X and nominal disturbance set D,
/// the leading r states forming the controllable part.
struct SystemSpec {
    Matrix A;
    Matrix E;
    std::size_t r = 0;
    HPolytope X;    // normalized C-set form
    SupportSet D;
    std::string label;

    std::size_t n() const { return A.rows(); }
    std::size_t m() const { return E.cols(); }
    Matrix a11() const { return A.block(0, r, 0, r); }
    Matrix e1() const { return E.block(0, r, 0, E.cols()); }
    StructureReport structure(double tol = kDefaultTol) const {
        return verify_structure(A, E, r, tol);
    }
};

/// k-step forward reachable set from the origin, kept as a Minkowski
/// aggregate of the terms alpha * A^j E D, j = 0..k-1. Consumers only ever
/// need its support values; no explicit hull is formed.
SupportSet reach_aggregate(const SystemSpec& sys, double alpha, std::size_t k);

struct SState {
    HPolytope set;
    std::size_t k = 0;
    bool empty = false;
};

/// One backward-iteration step: intersects the current safe set with the
/// pulled-back shrunken state set at horizon k+1. Emptiness is a value, not
/// an error.
SState s_step(const SystemSpec& sys, double alpha, const SState& state);

/// Non-recursive construction of the k-step safe set by stacking every
/// horizon block at once; serves as an independent oracle for s_step.
/// The result is reduced when feasible and carries an explicit
/// infeasibility witness otherwise.
HPolytope s_direct(const SystemSpec& sys, double alpha, std::size_t k);

enum class MrpiStatus { Determined, Empty, Undetermined };

struct MrpiOutcome {
    MrpiStatus status = MrpiStatus::Undetermined;
    HPolytope set;      // fixed point when Determined, last iterate when Undetermined
    std::size_t k = 0;  // witness step
};

/// Iterates the safe-set recursion until a fixed point (checked by mutual
/// containment), emptiness, or k_max. A fixed point certifies the maximal
/// invariant set; k_max is a legitimate outcome at the critical scaling.
MrpiOutcome mrpi(const SystemSpec& sys, double alpha, std::size_t k_max = 500);

enum class TransitionDiagnosis {
    ConsistentNonempty,
    ConsistentEmpty,
    Inconclusive,  // alpha inside the certified uncertainty band, or iteration ran out
    Mismatch,
};

const char* to_string(TransitionDiagnosis d);
const char* to_string(MrpiStatus s);

/// Cross-validates the emptiness transition against a certified critical
/// scaling bracket [alpha_lb, alpha_ub].
TransitionDiagnosis mrpi_empty_iff(const SystemSpec& sys, double alpha, double alpha_lb,
                                   double alpha_ub, std::size_t k_max = 500);

struct ContinuityReport {
    double delta = 0.0;
    bool max_set_nested = false;            // bumped-scaling invariant set sits inside
    bool max_set_within_inflation = false;  // (1+eps) inflation recovers the original
    bool reach_nested = false;              // reach supports are monotone in the scaling
    bool reach_within_inflation = false;    // and grow by at most the (1+eps) factor
    bool ok() const {
        return max_set_nested && max_set_within_inflation && reach_nested &&
               reach_within_inflation;
    }
};

/// Picks the scaling increment delta = eps * min(alpha, (lb - alpha)/(1+eps))
/// and verifies both sandwich inclusions. Requires alpha < alpha_lb.
ContinuityReport continuity_check(const SystemSpec& sys, double alpha, double eps,
                                  double alpha_lb, std::size_t k_max = 500);

/// True iff some facet of the normalized x is attained by p within tol.
bool boundary_contact(const HPolytope& p, const HPolytope& x, double tol = 1e-7);

/// One step of the controlled-invariance recursion in two dimensions,
/// carried through vertex representations.
HPolytope mci_step_2d(const SystemSpec& sys, double alpha, const HPolytope& q_k);

}  // namespace rpi

#endif
