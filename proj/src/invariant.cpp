#include "rpi/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpi/geometry2d.hpp"

namespace rpi {

namespace {

constexpr double kZeroRowTol = 1e-12;

std::shared_ptr<const SupportSet> shared_base(const SupportSet& d) {
    return std::make_shared<SupportSet>(d);
}

// Rows H_x A^{pow} with offsets 1 - alpha * sums_i, following the preimage
// conventions for vanished rows. Returns false when a vanished row witnesses
// infeasibility.
bool horizon_block(const HPolytope& X, const Matrix& a_pow, double alpha, const Vec& sums,
                   std::vector<Vec>& rows, Vec& offs) {
    for (std::size_t i = 0; i < X.facets(); ++i) {
        Vec row = row_times(X.H.row(i), a_pow);
        const double off = X.b[i] - alpha * sums[i];
        if (max_abs(row) <= kZeroRowTol) {
            if (off < -kFeasTol) return false;
            continue;
        }
        rows.push_back(std::move(row));
        offs.push_back(off);
    }
    return true;
}

HPolytope from_rows(const std::vector<Vec>& rows, const Vec& offs, std::size_t dim) {
    HPolytope out;
    out.H = Matrix(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) out.H(i, j) = rows[i][j];
    out.b = offs;
    return out;
}

// Accumulates sum_{j<k} h_D(H_i A^j E) per state-set row, advancing one
// horizon at a time.
class ReachRows {
public:
    explicit ReachRows(const SystemSpec& sys)
        : sys_(sys), power_(Matrix::identity(sys.n())), sums_(sys.X.facets(), 0.0) {}

    void advance() {
        for (std::size_t i = 0; i < sys_.X.facets(); ++i)
            sums_[i] += support(sys_.D, row_times(row_times(sys_.X.H.row(i), power_), sys_.E));
        power_ = power_ * sys_.A;
        ++k_;
    }

    const Vec& sums() const { return sums_; }
    const Matrix& power() const { return power_; }  // A^k after k advances
    std::size_t k() const { return k_; }

private:
    const SystemSpec& sys_;
    Matrix power_;
    Vec sums_;
    std::size_t k_ = 0;
};

}  // namespace

SupportSet reach_aggregate(const SystemSpec& sys, double alpha, std::size_t k) {
    if (!(alpha > 0.0)) throw std::invalid_argument("reach_aggregate: alpha must be positive");
    MinkowskiAggregate agg;
    agg.dim = sys.n();
    auto base = shared_base(sys.D);
    Matrix power = Matrix::identity(sys.n());
    for (std::size_t j = 0; j < k; ++j) {
        agg.terms.push_back(AggregateTerm{power * sys.E, alpha, base});
        power = power * sys.A;
    }
    return SupportSet(std::move(agg));
}

SState s_step(const SystemSpec& sys, double alpha, const SState& state) {
    if (state.empty) return state;
    SState next;
    next.k = state.k + 1;

    ReachRows acc(sys);
    for (std::size_t j = 0; j < next.k; ++j) acc.advance();
    // acc.sums() now holds the reach supports at horizon k+1, acc.power() = A^{k+1}

    std::vector<Vec> rows;
    Vec offs;
    if (!horizon_block(sys.X, acc.power(), alpha, acc.sums(), rows, offs)) {
        next.empty = true;
        next.set = state.set;
        return next;
    }
    const HPolytope stacked = intersect(state.set, from_rows(rows, offs, sys.n()));
    if (is_empty(stacked)) {
        next.empty = true;
        next.set = stacked;
        return next;
    }
    next.set = reduce(stacked);
    return next;
}

HPolytope s_direct(const SystemSpec& sys, double alpha, std::size_t k) {
    std::vector<Vec> rows;
    Vec offs;
    for (std::size_t i = 0; i < sys.X.facets(); ++i) {
        rows.push_back(sys.X.H.row(i));
        offs.push_back(sys.X.b[i]);
    }
    ReachRows acc(sys);
    bool witness_empty = false;
    for (std::size_t j = 1; j <= k; ++j) {
        acc.advance();
        if (!horizon_block(sys.X, acc.power(), alpha, acc.sums(), rows, offs)) {
            witness_empty = true;
            rows.push_back(Vec(sys.n(), 0.0));
            offs.push_back(-1.0);
            break;
        }
    }
    HPolytope out = from_rows(rows, offs, sys.n());
    out.normalized = false;
    if (!witness_empty && is_feasible(out.H, out.b)) return reduce(out);
    return out;
}

MrpiOutcome mrpi(const SystemSpec& sys, double alpha, std::size_t k_max) {
    if (!(alpha > 0.0)) throw std::invalid_argument("mrpi: alpha must be positive");
    if (k_max < 1) throw std::invalid_argument("mrpi: k_max must be at least 1");

    MrpiOutcome out;
    HPolytope current = reduce(sys.X);
    ReachRows acc(sys);

    for (std::size_t k = 0; k < k_max; ++k) {
        acc.advance();
        std::vector<Vec> rows;
        Vec offs;
        if (!horizon_block(sys.X, acc.power(), alpha, acc.sums(), rows, offs)) {
            out.status = MrpiStatus::Empty;
            out.k = k + 1;
            return out;
        }
        const HPolytope stacked = intersect(current, from_rows(rows, offs, sys.n()));
        if (is_empty(stacked)) {
            out.status = MrpiStatus::Empty;
            out.k = k + 1;
            return out;
        }
        HPolytope next = reduce(stacked);
        if (contains(next, current, kFeasTol) && contains(current, next, kFeasTol)) {
            out.status = MrpiStatus::Determined;
            out.set = std::move(next);
            out.k = k;
            return out;
        }
        current = std::move(next);
    }
    out.status = MrpiStatus::Undetermined;
    out.set = std::move(current);
    out.k = k_max;
    return out;
}

const char* to_string(MrpiStatus s) {
    switch (s) {
        case MrpiStatus::Determined: return "determined";
        case MrpiStatus::Empty: return "empty";
        case MrpiStatus::Undetermined: return "undetermined";
    }
    return "?";
}

const char* to_string(TransitionDiagnosis d) {
    switch (d) {
        case TransitionDiagnosis::ConsistentNonempty: return "consistent-nonempty";
        case TransitionDiagnosis::ConsistentEmpty: return "consistent-empty";
        case TransitionDiagnosis::Inconclusive: return "inconclusive";
        case TransitionDiagnosis::Mismatch: return "mismatch";
    }
    return "?";
}

TransitionDiagnosis mrpi_empty_iff(const SystemSpec& sys, double alpha, double alpha_lb,
                                   double alpha_ub, std::size_t k_max) {
    if (alpha >= alpha_lb && alpha <= alpha_ub) return TransitionDiagnosis::Inconclusive;
    const MrpiOutcome out = mrpi(sys, alpha, k_max);
    if (out.status == MrpiStatus::Undetermined) return TransitionDiagnosis::Inconclusive;
    const bool empty = out.status == MrpiStatus::Empty;
    if (alpha < alpha_lb) return empty ? TransitionDiagnosis::Mismatch
                                       : TransitionDiagnosis::ConsistentNonempty;
    return empty ? TransitionDiagnosis::ConsistentEmpty : TransitionDiagnosis::Mismatch;
}

ContinuityReport continuity_check(const SystemSpec& sys, double alpha, double eps,
                                  double alpha_lb, std::size_t k_max) {
    if (!(alpha < alpha_lb))
        throw std::invalid_argument("continuity_check: alpha must lie below the certified bound");
    if (!(eps > 0.0)) throw std::invalid_argument("continuity_check: eps must be positive");

    ContinuityReport rep;
    rep.delta = eps * std::min(alpha, (alpha_lb - alpha) / (1.0 + eps));

    const MrpiOutcome at_alpha = mrpi(sys, alpha, k_max);
    const MrpiOutcome at_bumped = mrpi(sys, alpha + rep.delta, k_max);
    if (at_alpha.status == MrpiStatus::Determined && at_bumped.status == MrpiStatus::Determined) {
        rep.max_set_nested = contains(at_alpha.set, at_bumped.set);
        rep.max_set_within_inflation =
            contains(scale(at_bumped.set, 1.0 + eps), at_alpha.set);
    }

    // Reach-set side: supports scale linearly in alpha, so nesting and the
    // (1+eps) cap reduce to per-direction inequalities on a long-horizon proxy.
    const std::size_t proxy = 120;
    const SupportSet r_alpha = reach_aggregate(sys, alpha, proxy);
    const SupportSet r_bumped = reach_aggregate(sys, alpha + rep.delta, proxy);
    rep.reach_nested = true;
    rep.reach_within_inflation = true;
    for (std::size_t i = 0; i < sys.X.facets(); ++i) {
        const Vec dir = sys.X.H.row(i);
        const double s0 = support(r_alpha, dir);
        const double s1 = support(r_bumped, dir);
        if (s0 > s1 + kFeasTol) rep.reach_nested = false;
        if (s1 > (1.0 + eps) * s0 + kFeasTol) rep.reach_within_inflation = false;
    }
    return rep;
}

bool boundary_contact(const HPolytope& p, const HPolytope& x, double tol) {
    if (p.dim() != x.dim()) throw std::invalid_argument("boundary_contact: dimension mismatch");
    for (std::size_t i = 0; i < x.facets(); ++i) {
        const SupportOutcome s = support(p, x.H.row(i));
        if (s.status == LpStatus::Optimal && std::abs(s.value - x.b[i]) <= tol) return true;
    }
    return false;
}

HPolytope mci_step_2d(const SystemSpec& sys, double alpha, const HPolytope& q_k) {
    if (sys.n() != 2 || q_k.dim() != 2)
        throw std::invalid_argument("mci_step_2d: requires a 2-D system");
    if (!(alpha > 0.0)) throw std::invalid_argument("mci_step_2d: alpha must be positive");

    // vertices of -E D^alpha
    std::vector<Vec> input_verts;
    for (const auto& d : support_set_vertices(sys.D)) {
        Vec v = sys.E * d;
        for (auto& x : v) x *= -alpha;
        input_verts.push_back(std::move(v));
    }

    const VPolytope q_verts = h_to_v_2d(q_k);
    const VPolytope summed = minkowski_v_2d(q_verts, VPolytope{input_verts});
    const HPolytope pulled = preimage(v_to_h_2d(summed), sys.A);
    return reduce(intersect(pulled, sys.X));
}

}  // namespace rpi
