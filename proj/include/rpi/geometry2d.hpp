#ifndef RPI_GEOMETRY2D_HPP
#define RPI_GEOMETRY2D_HPP

#include <vector>

#include "rpi/sets.hpp"

namespace rpi {

/// Convex hull of a 2-D point cloud (monotone chain), counter-clockwise,
/// collinear triples removed. Fewer than three distinct points come back as
/// the point/segment they span.
VPolytope hull_2d(const std::vector<Vec>& points);

/// Hull of all pairwise vertex sums.
VPolytope minkowski_v_2d(const VPolytope& a, const VPolytope& b);

/// Vertices of a bounded nonempty 2-D polytope: rows are reduced, sorted by
/// normal angle and adjacent pairs intersected. Throws when the input is
/// unbounded or lower-dimensional.
VPolytope h_to_v_2d(const HPolytope& p);

/// Facets from the edges of a counter-clockwise polygon, normalized to
/// offset one. The origin must be strictly inside.
HPolytope v_to_h_2d(const VPolytope& v);

/// Exact vertex cloud of a 1-D or 2-D support set (hull of the returned
/// points equals the set). Zonotopes enumerate sign patterns, aggregates sum
/// per-term clouds; generator counts beyond 16 are rejected.
std::vector<Vec> support_set_vertices(const SupportSet& s);

}  // namespace rpi

#endif
