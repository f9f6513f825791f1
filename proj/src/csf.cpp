#include "rpi/csf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rpi/geometry2d.hpp"

namespace rpi {

namespace {

constexpr double kZeroSumTol = 1e-14;

std::vector<std::pair<Matrix, double>> block_maps(const SystemSpec& sys, std::size_t M) {
    const Matrix a11 = sys.a11();
    const Matrix e1 = sys.e1();
    std::vector<std::pair<Matrix, double>> maps;
    Matrix power = Matrix::identity(sys.r);
    for (std::size_t k = 0; k < M; ++k) {
        maps.emplace_back(power * e1, 1.0);
        power = power * a11;
    }
    return maps;
}

// Flattens the aggregate into a concrete shape that zonotope_facets accepts.
SupportSet flatten_for_facets(const SupportSet& agg, const SupportSet& d,
                              const std::vector<std::pair<Matrix, double>>& maps,
                              std::size_t r) {
    if (r == 1) {
        const double hi = support(agg, Vec{1.0});
        const double lo = support(agg, Vec{-1.0});
        return SupportSet(VPolytope{{Vec{-lo}, Vec{hi}}});
    }
    const bool zonotopal = std::holds_alternative<Box>(d.value()) ||
                           std::holds_alternative<Zonotope>(d.value());
    if (zonotopal) {
        std::vector<Vec> gens;
        const auto base_gens = [&]() -> std::vector<Vec> {
            if (const auto* b = std::get_if<Box>(&d.value())) {
                std::vector<Vec> g;
                for (std::size_t i = 0; i < b->half_widths.size(); ++i) {
                    Vec e(b->half_widths.size(), 0.0);
                    e[i] = b->half_widths[i];
                    g.push_back(std::move(e));
                }
                return g;
            }
            return std::get<Zonotope>(d.value()).generators;
        }();
        for (const auto& [map, sc] : maps) {
            for (const auto& g : base_gens) {
                Vec mapped = map * g;
                for (auto& x : mapped) x *= sc;
                gens.push_back(std::move(mapped));
            }
        }
        // an axis-aligned zonotope collapses to a box, the only shape with a
        // 3-D facet path
        bool axis_aligned = true;
        for (const auto& g : gens) {
            std::size_t nz = 0;
            for (double x : g)
                if (std::abs(x) > 1e-12) ++nz;
            if (nz > 1) axis_aligned = false;
        }
        if (axis_aligned) {
            Vec hw(r, 0.0);
            for (const auto& g : gens)
                for (std::size_t i = 0; i < r; ++i) hw[i] += std::abs(g[i]);
            return SupportSet(Box{hw});
        }
        return SupportSet(Zonotope{gens});
    }
    if (r == 2) {
        std::vector<Vec> cloud;
        for (const auto& [map, sc] : maps) {
            std::vector<Vec> img;
            for (const auto& v : support_set_vertices(d)) {
                Vec mapped = map * v;
                for (auto& x : mapped) x *= sc;
                img.push_back(std::move(mapped));
            }
            if (cloud.empty()) {
                cloud = std::move(img);
            } else {
                std::vector<Vec> sums;
                for (const auto& p : cloud)
                    for (const auto& q : img)
                        sums.push_back(Vec{p[0] + q[0], p[1] + q[1]});
                cloud = hull_2d(sums).vertices;
            }
        }
        return SupportSet(VPolytope{cloud});
    }
    throw std::invalid_argument("build_W: facet enumeration unsupported for this shape and r");
}

}  // namespace

std::size_t select_M(const SystemSpec& sys, double tol) {
    const Matrix a11 = sys.a11();
    const Matrix e1 = sys.e1();
    const std::size_t r = sys.r;
    Matrix gamma(r, 0);
    Matrix power = Matrix::identity(r);
    for (std::size_t M = 1; M <= r; ++M) {
        const Matrix term = power * e1;
        Matrix next(r, M * sys.m());
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < (M - 1) * sys.m(); ++j) next(i, j) = gamma(i, j);
            for (std::size_t j = 0; j < sys.m(); ++j) next(i, (M - 1) * sys.m() + j) = term(i, j);
        }
        gamma = std::move(next);
        if (rank(gamma, tol) == r) return M;
        power = power * a11;
    }
    throw std::runtime_error("select_M: reachability matrix never reaches full rank");
}

WSet build_W(const SystemSpec& sys, std::size_t M) {
    const auto maps = block_maps(sys, M);
    MinkowskiAggregate agg;
    agg.dim = sys.r;
    auto base = std::make_shared<SupportSet>(sys.D);
    for (const auto& [map, sc] : maps) agg.terms.push_back(AggregateTerm{map, sc, base});

    WSet out{SupportSet(std::move(agg)), {}};
    const SupportSet flat = flatten_for_facets(out.aggregate, sys.D, maps, sys.r);
    out.facets = zonotope_facets(flat, sys.r);
    return out;
}

std::size_t find_N(const SystemSpec& sys, std::size_t M, const WSet& w, double eta,
                   std::size_t n_max) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("find_N: eta must be in (0,1)");
    const Matrix lambda = mat_pow(sys.a11(), M);
    Matrix power = lambda;
    for (std::size_t N = 1; N <= n_max; ++N) {
        bool ok = true;
        for (std::size_t i = 0; i < w.facets.facets() && ok; ++i) {
            const double h = support(w.aggregate, row_times(w.facets.H.row(i), power));
            if (h > eta + 1e-12) ok = false;
        }
        if (ok) return N;
        power = power * lambda;
    }
    std::ostringstream os;
    os << "find_N: horizon cap " << n_max << " exhausted; spectral radius of the "
       << "controllable block is " << eigen_magnitudes(sys.a11()).spectral_radius;
    throw std::runtime_error(os.str());
}

double alpha_bar(const SystemSpec& sys, std::size_t M, std::size_t N) {
    const WSet w = build_W(sys, M);
    const HPolytope sliced = project_controllable(sys.X, sys.r);
    const Matrix lambda = mat_pow(sys.a11(), M);

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sliced.facets(); ++i) {
        double sum = 0.0;
        Vec dir = sliced.H.row(i);
        for (std::size_t j = 0; j < N; ++j) {
            sum += support(w.aggregate, dir);
            dir = row_times(dir, lambda);
        }
        if (sum > kZeroSumTol) best = std::min(best, sliced.b[i] / sum);
    }
    if (!std::isfinite(best))
        throw std::runtime_error(
            "alpha_bar: disturbance is invisible to every sliced state-set row");
    return best;
}

double alpha_bar_direct(const SystemSpec& sys, std::size_t k) {
    if (k < 1) throw std::invalid_argument("alpha_bar_direct: k must be at least 1");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sys.X.facets(); ++i) {
        double sum = 0.0;
        Vec dir = sys.X.H.row(i);
        for (std::size_t j = 0; j < k; ++j) {
            sum += support(sys.D, row_times(dir, sys.E));
            dir = row_times(dir, sys.A);
        }
        if (sum > kZeroSumTol) best = std::min(best, sys.X.b[i] / sum);
    }
    return best;
}

CsfResult csf_approx(const SystemSpec& sys, const CsfConfig& cfg) {
    if (!(cfg.eps > 0.0)) throw std::invalid_argument("csf_approx: eps must be positive");
    const StructureReport sr = sys.structure();
    if (!sr.rpi_ok())
        throw std::invalid_argument("csf_approx: system fails the required structure: " +
                                    sr.describe());

    CsfResult out;
    out.eps = cfg.eps;
    out.M = select_M(sys);
    const WSet w = build_W(sys, out.M);
    const double eta = cfg.eps / (1.0 + cfg.eps);
    out.N = find_N(sys, out.M, w, eta, cfg.n_max);
    out.k = out.M * out.N;
    out.alpha_ub = alpha_bar(sys, out.M, out.N);
    out.alpha_lb = out.alpha_ub / (1.0 + cfg.eps);
    out.method = CsfMethod::Algorithm1;
    return out;
}

std::optional<double> csf_exact_nilpotent(const SystemSpec& sys, std::size_t k_cap) {
    const std::size_t n = sys.n();
    Matrix power = sys.A;
    for (std::size_t k = 1; k <= k_cap; ++k) {
        double eta = 0.0;
        for (std::size_t i = 0; i < n; ++i) eta += power(i, i);
        eta /= static_cast<double>(n);
        bool scaled_identity = true;
        for (std::size_t i = 0; i < n && scaled_identity; ++i)
            for (std::size_t j = 0; j < n && scaled_identity; ++j) {
                const double want = i == j ? eta : 0.0;
                if (std::abs(power(i, j) - want) > 1e-10) scaled_identity = false;
            }
        if (scaled_identity && eta >= -1e-10 && eta < 1.0 - 1e-10) {
            const double clamped = std::max(eta, 0.0);
            return (1.0 - clamped) * alpha_bar_direct(sys, k);
        }
        power = power * sys.A;
    }
    return std::nullopt;
}

}  // namespace rpi
