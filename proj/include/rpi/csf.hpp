#ifndef RPI_CSF_HPP
#define RPI_CSF_HPP

#include <optional>

#include "rpi/invariant.hpp"

namespace rpi {

struct CsfConfig {
    double eps = 1e-4;        // target relative gap between the bounds
    std::size_t n_max = 10000;  // cap on the contraction-horizon search
    std::size_t k_cap = 64;     // cap on the scaled-identity power search
};

enum class CsfMethod { Algorithm1, NilpotentExact };

struct CsfResult {
    std::size_t M = 0;
    std::size_t N = 0;
    std::size_t k = 0;  // M * N
    double alpha_lb = 0.0;
    double alpha_ub = 0.0;
    double eps = 0.0;
    CsfMethod method = CsfMethod::Algorithm1;
};

/// Smallest M in [1, r] whose M-step reachability matrix of (A11, E1) has
/// full rank; exists by the controllability requirement.
std::size_t select_M(const SystemSpec& sys, double tol = kDefaultTol);

/// The controllable-space disturbance footprint over one M-block, kept both
/// as an exact support oracle and as a normalized facet form.
struct WSet {
    SupportSet aggregate;
    HPolytope facets;
};

WSet build_W(const SystemSpec& sys, std::size_t M);

/// Smallest N with the M-block power mapping W into eta * W, checked one
/// facet support per row; throws with the spectral radius as diagnostic when
/// n_max is exhausted.
std::size_t find_N(const SystemSpec& sys, std::size_t M, const WSet& w, double eta,
                   std::size_t n_max);

/// Reduced-space critical-scaling overestimate: min over sliced state-set
/// rows of the reciprocal accumulated support sums over N blocks.
double alpha_bar(const SystemSpec& sys, std::size_t M, std::size_t N);

/// Full-space variant summing k horizons over the raw state-set rows; equals
/// alpha_bar at k = M * N and doubles as its cross-check.
double alpha_bar_direct(const SystemSpec& sys, std::size_t k);

/// Certified two-sided approximation of the critical scaling with relative
/// gap eps.
CsfResult csf_approx(const SystemSpec& sys, const CsfConfig& cfg = {});

/// Exact critical scaling when some power A^k equals eta * I with
/// eta in [0, 1); absent otherwise.
std::optional<double> csf_exact_nilpotent(const SystemSpec& sys, std::size_t k_cap = 64);

}  // namespace rpi

#endif
