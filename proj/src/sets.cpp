#include "rpi/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpi/geometry2d.hpp"

namespace rpi {

namespace {

constexpr double kZeroRowTol = 1e-12;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::size_t variant_dim(const SupportSet::Value& v) {
    if (const auto* b = std::get_if<Box>(&v)) return b->half_widths.size();
    if (const auto* z = std::get_if<Zonotope>(&v)) {
        require(!z->generators.empty(), "Zonotope: needs at least one generator");
        const std::size_t d = z->generators.front().size();
        for (const auto& g : z->generators)
            require(g.size() == d, "Zonotope: generator dimensions differ");
        return d;
    }
    if (const auto* p = std::get_if<VPolytope>(&v)) {
        require(!p->vertices.empty(), "VPolytope: needs at least one vertex");
        const std::size_t d = p->vertices.front().size();
        for (const auto& x : p->vertices)
            require(x.size() == d, "VPolytope: vertex dimensions differ");
        return d;
    }
    const auto& a = std::get<MinkowskiAggregate>(v);
    for (const auto& t : a.terms) {
        require(t.base != nullptr, "MinkowskiAggregate: null base");
        require(t.map.rows() == a.dim, "MinkowskiAggregate: term map rows mismatch");
        require(t.map.cols() == t.base->dim(), "MinkowskiAggregate: term map cols mismatch");
        require(t.scale > 0.0, "MinkowskiAggregate: term scale must be positive");
    }
    return a.dim;
}

}  // namespace

SupportSet::SupportSet(Box b) : value_(std::move(b)) { dim_ = variant_dim(value_); }
SupportSet::SupportSet(Zonotope z) : value_(std::move(z)) { dim_ = variant_dim(value_); }
SupportSet::SupportSet(VPolytope v) : value_(std::move(v)) { dim_ = variant_dim(value_); }
SupportSet::SupportSet(MinkowskiAggregate a) : value_(std::move(a)) { dim_ = variant_dim(value_); }

double support(const SupportSet& s, const Vec& v) {
    require(v.size() == s.dim(), "support: direction dimension mismatch");
    return std::visit(
        [&](const auto& shape) -> double {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Box>) {
                double out = 0.0;
                for (std::size_t i = 0; i < v.size(); ++i)
                    out += std::abs(v[i]) * shape.half_widths[i];
                return out;
            } else if constexpr (std::is_same_v<T, Zonotope>) {
                double out = 0.0;
                for (const auto& g : shape.generators) out += std::abs(dot(v, g));
                return out;
            } else if constexpr (std::is_same_v<T, VPolytope>) {
                double out = -std::numeric_limits<double>::infinity();
                for (const auto& x : shape.vertices) out = std::max(out, dot(v, x));
                return out;
            } else {
                double out = 0.0;
                for (const auto& t : shape.terms)
                    out += t.scale * support(*t.base, row_times(v, t.map));
                return out;
            }
        },
        s.value());
}

double support(const ScaledSet& s, const Vec& v) { return s.factor * support(s.base, v); }

bool hull_contains_origin(const VPolytope& v) {
    // lambda >= 0, sum lambda = 1, V^T lambda = 0, written as inequalities.
    const std::size_t k = v.vertices.size();
    const std::size_t d = v.vertices.front().size();
    Matrix H(k + 2 + 2 * d, k);
    Vec b(H.rows(), 0.0);
    for (std::size_t j = 0; j < k; ++j) H(j, j) = -1.0;
    for (std::size_t j = 0; j < k; ++j) {
        H(k, j) = 1.0;
        H(k + 1, j) = -1.0;
    }
    b[k] = 1.0;
    b[k + 1] = -1.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            H(k + 2 + 2 * i, j) = v.vertices[j][i];
            H(k + 3 + 2 * i, j) = -v.vertices[j][i];
        }
    }
    return is_feasible(H, b);
}

HPolytope normalize_cset(const Matrix& H, const Vec& b) {
    require(H.rows() == b.size(), "normalize_cset: row count mismatch");
    require(H.rows() >= 1, "normalize_cset: needs at least one row");
    HPolytope out;
    out.H = Matrix(H.rows(), H.cols());
    out.b.assign(H.rows(), 1.0);
    for (std::size_t i = 0; i < H.rows(); ++i) {
        if (!(b[i] > 0.0))
            throw std::invalid_argument("normalize_cset: offset must be positive (origin interior)");
        double rownorm = 0.0;
        for (std::size_t j = 0; j < H.cols(); ++j) rownorm = std::max(rownorm, std::abs(H(i, j)));
        if (rownorm <= kZeroRowTol)
            throw std::invalid_argument("normalize_cset: zero row");
        for (std::size_t j = 0; j < H.cols(); ++j) out.H(i, j) = H(i, j) / b[i];
    }
    out.normalized = true;
    return out;
}

HPolytope scale(const HPolytope& p, double beta) {
    require(beta > 0.0, "scale: factor must be positive");
    HPolytope out = p;
    for (auto& x : out.b) x *= beta;
    out.normalized = p.normalized && beta == 1.0;
    return out;
}

SupportOutcome support(const HPolytope& p, const Vec& v) {
    require(v.size() == p.dim(), "support: direction dimension mismatch");
    const LpOutcome out = lp_max(v, p.H, p.b);
    SupportOutcome res;
    res.status = out.status;
    if (out.status == LpStatus::Optimal)
        res.value = out.value;
    else if (out.status == LpStatus::Unbounded)
        res.value = std::numeric_limits<double>::infinity();
    else
        res.value = -std::numeric_limits<double>::infinity();
    return res;
}

namespace {

template <typename SetLike>
HPolytope pontryagin_impl(const HPolytope& p, const SetLike& s) {
    HPolytope out = p;
    for (std::size_t i = 0; i < p.facets(); ++i) out.b[i] = p.b[i] - support(s, p.H.row(i));
    out.normalized = false;
    return out;
}

}  // namespace

HPolytope pontryagin_diff(const HPolytope& p, const SupportSet& s) {
    return pontryagin_impl(p, s);
}

HPolytope pontryagin_diff(const HPolytope& p, const ScaledSet& s) {
    return pontryagin_impl(p, s);
}

HPolytope preimage(const HPolytope& p, const Matrix& m) {
    require(m.rows() == p.dim(), "preimage: map rows must match set dimension");
    std::vector<Vec> rows;
    Vec offs;
    for (std::size_t i = 0; i < p.facets(); ++i) {
        Vec row = row_times(p.H.row(i), m);
        if (max_abs(row) <= kZeroRowTol) {
            if (p.b[i] >= -kFeasTol) continue;  // 0 <= b_i holds, row carries nothing
            // 0 <= b_i < 0: keep as an explicit infeasibility witness
        }
        rows.push_back(std::move(row));
        offs.push_back(p.b[i]);
    }
    HPolytope out;
    out.H = Matrix(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.H(i, j) = rows[i][j];
    out.b = std::move(offs);
    out.normalized = false;
    return out;
}

HPolytope intersect(const HPolytope& p, const HPolytope& q) {
    require(p.dim() == q.dim(), "intersect: dimension mismatch");
    HPolytope out;
    out.H = Matrix(p.facets() + q.facets(), p.dim());
    out.b.resize(p.facets() + q.facets());
    for (std::size_t i = 0; i < p.facets(); ++i) {
        for (std::size_t j = 0; j < p.dim(); ++j) out.H(i, j) = p.H(i, j);
        out.b[i] = p.b[i];
    }
    for (std::size_t i = 0; i < q.facets(); ++i) {
        for (std::size_t j = 0; j < q.dim(); ++j) out.H(p.facets() + i, j) = q.H(i, j);
        out.b[p.facets() + i] = q.b[i];
    }
    out.normalized = p.normalized && q.normalized;
    return out;
}

HPolytope reduce(const HPolytope& p) {
    if (!is_feasible(p.H, p.b)) throw std::invalid_argument("reduce: infeasible polytope");
    std::vector<std::size_t> keep(p.facets());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;

    std::size_t idx = 0;
    while (idx < keep.size() && keep.size() > 1) {
        Matrix H(keep.size(), p.dim());
        Vec b(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            for (std::size_t j = 0; j < p.dim(); ++j) H(i, j) = p.H(keep[i], j);
            b[i] = p.b[keep[i]];
        }
        if (is_redundant(H, b, idx))
            keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(idx));
        else
            ++idx;
    }

    HPolytope out;
    out.H = Matrix(keep.size(), p.dim());
    out.b.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < p.dim(); ++j) out.H(i, j) = p.H(keep[i], j);
        out.b[i] = p.b[keep[i]];
    }
    out.normalized = p.normalized;
    return out;
}

bool is_empty(const HPolytope& p) { return !is_feasible(p.H, p.b); }

bool contains(const HPolytope& outer, const HPolytope& inner, double tol) {
    require(outer.dim() == inner.dim(), "contains: dimension mismatch");
    for (std::size_t i = 0; i < outer.facets(); ++i) {
        const LpOutcome out = lp_max(outer.H.row(i), inner.H, inner.b, outer.b[i] + tol);
        if (out.status == LpStatus::Infeasible) return true;  // empty inner
        if (out.status != LpStatus::Optimal) return false;
        if (out.value > outer.b[i] + tol) return false;
    }
    return true;
}

double max_scaling(const SupportSet& s, const HPolytope& p) {
    require(p.normalized, "max_scaling: polytope must be in normalized C-set form");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.facets(); ++i) {
        const double h = support(s, p.H.row(i));
        if (h > kZeroRowTol) best = std::min(best, p.b[i] / h);
    }
    return best;
}

HPolytope project_controllable(const HPolytope& p, std::size_t r) {
    require(r >= 1 && r <= p.dim(), "project_controllable: r out of range");
    if (r == p.dim()) return p;
    std::vector<Vec> rows;
    Vec offs;
    for (std::size_t i = 0; i < p.facets(); ++i) {
        Vec head(r);
        for (std::size_t j = 0; j < r; ++j) head[j] = p.H(i, j);
        if (max_abs(head) <= kZeroRowTol) continue;  // 0 <= b_i with b_i > 0
        rows.push_back(std::move(head));
        offs.push_back(p.b[i]);
    }
    HPolytope out;
    out.H = Matrix(rows.size(), r);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) out.H(i, j) = rows[i][j];
    out.b = std::move(offs);
    out.normalized = p.normalized;
    return reduce(out);
}

namespace {

HPolytope interval_facets(const SupportSet& s) {
    const double hi = support(s, Vec{1.0});
    const double lo = support(s, Vec{-1.0});
    if (hi <= kZeroRowTol || lo <= kZeroRowTol)
        throw std::invalid_argument("zonotope_facets: degenerate interval");
    return normalize_cset(Matrix{{1.0}, {-1.0}}, Vec{hi, lo});
}

HPolytope zonotope_facets_2d(const SupportSet& s, const std::vector<Vec>& generators) {
    std::vector<Vec> normals;
    for (const auto& g : generators) {
        const double len = std::hypot(g[0], g[1]);
        if (len <= kZeroRowTol) continue;
        Vec n{-g[1] / len, g[0] / len};
        bool dup = false;
        for (const auto& m : normals)
            if (std::abs(n[0] * m[1] - n[1] * m[0]) <= 1e-12) dup = true;
        if (!dup) normals.push_back(std::move(n));
    }
    if (normals.size() < 2)
        throw std::invalid_argument("zonotope_facets: zonotope is not full-dimensional");
    Matrix H(2 * normals.size(), 2);
    Vec b(2 * normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
        const double h = support(s, normals[i]);
        const double hneg = support(s, Vec{-normals[i][0], -normals[i][1]});
        if (h <= kZeroRowTol || hneg <= kZeroRowTol)
            throw std::invalid_argument("zonotope_facets: zonotope is not full-dimensional");
        H(2 * i, 0) = normals[i][0];
        H(2 * i, 1) = normals[i][1];
        b[2 * i] = h;
        H(2 * i + 1, 0) = -normals[i][0];
        H(2 * i + 1, 1) = -normals[i][1];
        b[2 * i + 1] = hneg;
    }
    return normalize_cset(H, b);
}

}  // namespace

HPolytope zonotope_facets(const SupportSet& shape, std::size_t dim) {
    require(dim == shape.dim(), "zonotope_facets: dimension mismatch");
    if (dim == 1) {
        if (std::holds_alternative<MinkowskiAggregate>(shape.value()))
            throw std::invalid_argument("zonotope_facets: aggregate inputs unsupported");
        return interval_facets(shape);
    }
    if (dim == 2) {
        if (const auto* b = std::get_if<Box>(&shape.value())) {
            std::vector<Vec> gens{{b->half_widths[0], 0.0}, {0.0, b->half_widths[1]}};
            return zonotope_facets_2d(shape, gens);
        }
        if (const auto* z = std::get_if<Zonotope>(&shape.value()))
            return zonotope_facets_2d(shape, z->generators);
        if (const auto* v = std::get_if<VPolytope>(&shape.value()))
            return v_to_h_2d(hull_2d(v->vertices));
        throw std::invalid_argument("zonotope_facets: aggregate inputs unsupported");
    }
    if (dim == 3) {
        if (const auto* b = std::get_if<Box>(&shape.value())) {
            Matrix H(6, 3);
            Vec off(6);
            for (std::size_t i = 0; i < 3; ++i) {
                if (b->half_widths[i] <= kZeroRowTol)
                    throw std::invalid_argument("zonotope_facets: degenerate box");
                H(2 * i, i) = 1.0;
                off[2 * i] = b->half_widths[i];
                H(2 * i + 1, i) = -1.0;
                off[2 * i + 1] = b->half_widths[i];
            }
            return normalize_cset(H, off);
        }
        throw std::invalid_argument("zonotope_facets: only boxes are supported in dimension 3");
    }
    throw std::invalid_argument("zonotope_facets: dimension must be 1, 2 or 3");
}

}  // namespace rpi
