#include "rpi/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpi {

namespace {

double cross(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double cloud_scale(const std::vector<Vec>& pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max({s, std::abs(p[0]), std::abs(p[1])});
    return s;
}

}  // namespace

VPolytope hull_2d(const std::vector<Vec>& points) {
    for (const auto& p : points)
        if (p.size() != 2) throw std::invalid_argument("hull_2d: points must be 2-D");
    std::vector<Vec> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    const double eps = 1e-12 * cloud_scale(pts);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](const Vec& a, const Vec& b) {
                              return std::abs(a[0] - b[0]) <= eps && std::abs(a[1] - b[1]) <= eps;
                          }),
              pts.end());
    if (pts.empty()) throw std::invalid_argument("hull_2d: empty point set");
    if (pts.size() <= 2) return VPolytope{pts};

    const double area_eps = eps * cloud_scale(pts);
    std::vector<Vec> lower, upper;
    for (const auto& p : pts) {
        while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= area_eps)
            lower.pop_back();
        lower.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= area_eps)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return VPolytope{lower};
}

VPolytope minkowski_v_2d(const VPolytope& a, const VPolytope& b) {
    std::vector<Vec> sums;
    sums.reserve(a.vertices.size() * b.vertices.size());
    for (const auto& p : a.vertices)
        for (const auto& q : b.vertices) sums.push_back(Vec{p[0] + q[0], p[1] + q[1]});
    return hull_2d(sums);
}

VPolytope h_to_v_2d(const HPolytope& p) {
    if (p.dim() != 2) throw std::invalid_argument("h_to_v_2d: polytope must be 2-D");
    const HPolytope r = reduce(p);
    if (r.facets() < 3)
        throw std::invalid_argument("h_to_v_2d: polytope is unbounded or lower-dimensional");

    std::vector<std::size_t> order(r.facets());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::atan2(r.H(i, 1), r.H(i, 0)) < std::atan2(r.H(j, 1), r.H(j, 0));
    });

    std::vector<Vec> verts;
    for (std::size_t t = 0; t < order.size(); ++t) {
        const std::size_t i = order[t];
        const std::size_t j = order[(t + 1) % order.size()];
        const double a11 = r.H(i, 0), a12 = r.H(i, 1);
        const double a21 = r.H(j, 0), a22 = r.H(j, 1);
        const double det = a11 * a22 - a12 * a21;
        const double scale = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
        if (std::abs(det) <= 1e-12 * scale * scale)
            throw std::invalid_argument("h_to_v_2d: adjacent facets are parallel (unbounded set)");
        verts.push_back(Vec{(r.b[i] * a22 - a12 * r.b[j]) / det,
                            (a11 * r.b[j] - r.b[i] * a21) / det});
    }
    return hull_2d(verts);
}

HPolytope v_to_h_2d(const VPolytope& v) {
    const VPolytope h = hull_2d(v.vertices);
    const std::size_t n = h.vertices.size();
    if (n < 3)
        throw std::invalid_argument("v_to_h_2d: needs a full-dimensional polygon");
    Matrix H(n, 2);
    Vec b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& p = h.vertices[i];
        const Vec& q = h.vertices[(i + 1) % n];
        const double dx = q[0] - p[0];
        const double dy = q[1] - p[1];
        const double len = std::hypot(dx, dy);
        // outward normal of a counter-clockwise edge
        H(i, 0) = dy / len;
        H(i, 1) = -dx / len;
        b[i] = H(i, 0) * p[0] + H(i, 1) * p[1];
        if (!(b[i] > 0.0))
            throw std::invalid_argument("v_to_h_2d: origin is not strictly inside");
    }
    return normalize_cset(H, b);
}

namespace {

void append_mapped(std::vector<Vec>& out, const std::vector<Vec>& pts, const Matrix& map,
                   double scale) {
    for (const auto& p : pts) {
        Vec q = map * p;
        for (auto& x : q) x *= scale;
        out.push_back(std::move(q));
    }
}

std::vector<Vec> fold_sum(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty()) return b;
    std::vector<Vec> out;
    out.reserve(a.size() * b.size());
    for (const auto& p : a)
        for (const auto& q : b) {
            Vec s(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
            out.push_back(std::move(s));
        }
    return out;
}

std::vector<Vec> prune_hull(std::vector<Vec> pts) {
    if (pts.empty()) return pts;
    if (pts.front().size() == 1) {
        double lo = pts.front()[0], hi = lo;
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return {Vec{lo}, Vec{hi}};
    }
    if (pts.size() <= 4) return pts;
    return hull_2d(pts).vertices;
}

}  // namespace

std::vector<Vec> support_set_vertices(const SupportSet& s) {
    if (s.dim() > 2)
        throw std::invalid_argument("support_set_vertices: supported in 1-D and 2-D only");
    return std::visit(
        [&](const auto& shape) -> std::vector<Vec> {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Box>) {
                if (shape.half_widths.size() == 1)
                    return {Vec{-shape.half_widths[0]}, Vec{shape.half_widths[0]}};
                std::vector<Vec> out;
                for (double sx : {-1.0, 1.0})
                    for (double sy : {-1.0, 1.0})
                        out.push_back(Vec{sx * shape.half_widths[0], sy * shape.half_widths[1]});
                return out;
            } else if constexpr (std::is_same_v<T, Zonotope>) {
                const std::size_t L = shape.generators.size();
                if (L > 16)
                    throw std::invalid_argument("support_set_vertices: too many generators");
                const std::size_t d = shape.generators.front().size();
                std::vector<Vec> out;
                for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
                    Vec p(d, 0.0);
                    for (std::size_t g = 0; g < L; ++g) {
                        const double sgn = (mask >> g) & 1 ? 1.0 : -1.0;
                        for (std::size_t i = 0; i < d; ++i) p[i] += sgn * shape.generators[g][i];
                    }
                    out.push_back(std::move(p));
                }
                return prune_hull(std::move(out));
            } else if constexpr (std::is_same_v<T, VPolytope>) {
                return shape.vertices;
            } else {
                std::vector<Vec> acc;
                for (const auto& t : shape.terms) {
                    std::vector<Vec> img;
                    append_mapped(img, support_set_vertices(*t.base), t.map, t.scale);
                    acc = fold_sum(acc, img);
                    acc = prune_hull(std::move(acc));
                }
                if (acc.empty()) acc.push_back(Vec(s.dim(), 0.0));
                return acc;
            }
        },
        s.value());
}

}  // namespace rpi
