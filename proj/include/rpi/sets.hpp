#ifndef RPI_SETS_HPP
#define RPI_SETS_HPP

#include <memory>
#include <variant>
#include <vector>

#include "rpi/lp.hpp"
#include "rpi/matrix.hpp"

namespace rpi {

// ---------------------------------------------------------------------------
// Support-function representations. Every variant contains the origin, so
// support values are nonnegative and exactly computable:
//   Box        sum_i |v_i| hw_i
//   Zonotope   sum_g |v . g|
//   VPolytope  max_vert v . x
//   Aggregate  sum over terms of scale * support(base, v * map)
// ---------------------------------------------------------------------------

struct Box {
    Vec half_widths;
};

struct Zonotope {
    std::vector<Vec> generators;
};

struct VPolytope {
    std::vector<Vec> vertices;  // hull must contain the origin
};

class SupportSet;

struct AggregateTerm {
    Matrix map;    // outer_dim x base_dim
    double scale = 1.0;
    std::shared_ptr<const SupportSet> base;
};

struct MinkowskiAggregate {
    std::size_t dim = 0;
    std::vector<AggregateTerm> terms;  // empty list encodes {0}
};

class SupportSet {
public:
    using Value = std::variant<Box, Zonotope, VPolytope, MinkowskiAggregate>;

    explicit SupportSet(Box b);
    explicit SupportSet(Zonotope z);
    explicit SupportSet(VPolytope v);
    explicit SupportSet(MinkowskiAggregate a);

    std::size_t dim() const { return dim_; }
    const Value& value() const { return value_; }

private:
    Value value_;
    std::size_t dim_ = 0;
};

/// factor * base, factor > 0.
struct ScaledSet {
    SupportSet base;
    double factor = 1.0;
};

double support(const SupportSet& s, const Vec& direction);
double support(const ScaledSet& s, const Vec& direction);

/// LP-backed check that the origin lies in the hull of a VPolytope; used to
/// validate externally supplied vertex sets.
bool hull_contains_origin(const VPolytope& v);

// ---------------------------------------------------------------------------
// Halfspace representation {x : H x <= b}. `normalized` marks the C-set form
// b = 1 (origin strictly inside). Derived sets (Pontryagin offsets,
// preimages) keep raw offsets; emptiness stays decidable through is_empty.
// ---------------------------------------------------------------------------

struct HPolytope {
    Matrix H;
    Vec b;
    bool normalized = false;

    std::size_t dim() const { return H.cols(); }
    std::size_t facets() const { return H.rows(); }
};

/// Validates b > 0 row-wise and rescales to b = 1. Rows of zero normal are
/// rejected. Throws std::invalid_argument when the input is not a C-set form.
HPolytope normalize_cset(const Matrix& H, const Vec& b);

/// {beta x : x in p} for beta > 0.
HPolytope scale(const HPolytope& p, double beta);

struct SupportOutcome {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
};

/// sup of direction . x over p, solved as an LP. Unbounded and empty inputs
/// are reported through the status, not as errors.
SupportOutcome support(const HPolytope& p, const Vec& direction);

/// Same H, offsets b_i - h_s(H_i). May produce non-positive offsets; the
/// possibly-empty result is intentional and resolved lazily via is_empty.
HPolytope pontryagin_diff(const HPolytope& p, const SupportSet& s);
HPolytope pontryagin_diff(const HPolytope& p, const ScaledSet& s);

/// {x : m x in p}. Rows whose normal vanishes under the map are dropped when
/// trivially satisfied; a vanished row with offset < -tol is kept as an
/// explicit infeasibility witness.
HPolytope preimage(const HPolytope& p, const Matrix& m);

HPolytope intersect(const HPolytope& p, const HPolytope& q);

/// Drops every row that is implied by the others. Requires a feasible input;
/// idempotent.
HPolytope reduce(const HPolytope& p);

bool is_empty(const HPolytope& p);

/// Outer containment: every row of `outer` bounds `inner` within tol.
bool contains(const HPolytope& outer, const HPolytope& inner, double tol = 1e-7);

/// Largest factor alpha with alpha * s inside the normalized polytope p;
/// +infinity when s = {0}.
double max_scaling(const SupportSet& s, const HPolytope& p);

/// Slice {x1 in R^r : (x1, 0) in p}: leading r columns of every row, rows
/// with vanished normals dropped, then reduced. Returns p itself when r = n.
HPolytope project_controllable(const HPolytope& p, std::size_t r);

/// Exact normalized facet form of a Box/Zonotope/VPolytope.
/// dim 1: interval from two support values; dim 2: generator-normal facets or
/// hull edges; dim 3 supports boxes only. Anything else throws.
HPolytope zonotope_facets(const SupportSet& shape, std::size_t dim);

/// Incremental assembly of state-set H-reps from interval, range and gain
/// rows; `normalized()` validates the C-set property at the end.
class CsetBuilder {
public:
    explicit CsetBuilder(std::size_t dim) : dim_(dim) {}

    CsetBuilder& box(const Vec& half_widths);
    CsetBuilder& range(const Vec& c, double lo, double hi);  // lo <= c.x <= hi
    CsetBuilder& gain(const Vec& k, double bound);           // |k.x| <= bound
    CsetBuilder& raw(const Vec& row, double offset);

    HPolytope normalized() const;

private:
    std::size_t dim_;
    std::vector<Vec> rows_;
    Vec offsets_;
};

}  // namespace rpi

#endif
