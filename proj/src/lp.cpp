#include "rpi/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rpi {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 10000;

// Dense tableau over columns [u(p), w(p), slack(l), artificial(a)], x = u - w.
// Rows with negative offsets are sign-flipped and receive an artificial;
// the rest start with their slack basic, so pure-inequality systems around
// the origin skip phase one entirely.
class Tableau {
public:
    Tableau(const Matrix& H, const Vec& b) : p_(H.cols()), l_(H.rows()) {
        art_begin_ = 2 * p_ + l_;
        std::size_t n_art = 0;
        for (std::size_t i = 0; i < l_; ++i)
            if (b[i] < 0.0) ++n_art;
        ncols_ = art_begin_ + n_art;
        rows_.assign(l_, Vec(ncols_, 0.0));
        rhs_.assign(l_, 0.0);
        basis_.resize(l_);
        std::size_t art = art_begin_;
        for (std::size_t i = 0; i < l_; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < p_; ++j) {
                const double h = sign * H(i, j);
                rows_[i][j] = h;
                rows_[i][p_ + j] = -h;
            }
            rows_[i][2 * p_ + i] = sign;
            rhs_[i] = sign * b[i];
            if (sign < 0.0) {
                rows_[i][art] = 1.0;
                basis_[i] = art++;
            } else {
                basis_[i] = 2 * p_ + i;
            }
        }
        has_artificials_ = art > art_begin_;
    }

    // Phase one; returns false on iteration limit.
    bool phase_one(LpStatus& status) {
        status = LpStatus::Optimal;
        if (!has_artificials_) return true;
        Vec cost(ncols_, 0.0);
        for (std::size_t j = art_begin_; j < ncols_; ++j) cost[j] = 1.0;
        const LpStatus st = run(cost, ncols_, std::numeric_limits<double>::infinity());
        if (st == LpStatus::IterationLimit) {
            status = st;
            return false;
        }
        double infeas = 0.0;
        for (std::size_t i = 0; i < l_; ++i)
            if (basis_[i] >= art_begin_) infeas += rhs_[i];
        if (infeas > kFeasTol) {
            status = LpStatus::Infeasible;
            return false;
        }
        // Pivot leftover artificials out; rows reduced to 0 = 0 are dropped.
        for (std::size_t i = 0; i < l_;) {
            if (basis_[i] < art_begin_) {
                ++i;
                continue;
            }
            std::size_t col = art_begin_;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (std::abs(rows_[i][j]) > 1e-9) {
                    col = j;
                    break;
                }
            }
            if (col < art_begin_) {
                pivot(i, col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                --l_;
            }
        }
        return true;
    }

    // Phase two: maximize c.(u - w). cutoff, when finite, stops the sweep as
    // soon as the running objective provably exceeds it.
    LpStatus phase_two(const Vec& c, double cutoff) {
        Vec cost(ncols_, 0.0);
        for (std::size_t j = 0; j < p_; ++j) {
            cost[j] = -c[j];
            cost[p_ + j] = c[j];
        }
        return run(cost, art_begin_, cutoff);
    }

    Vec solution() const {
        Vec x(p_, 0.0);
        for (std::size_t i = 0; i < l_; ++i) {
            if (basis_[i] < p_)
                x[basis_[i]] += rhs_[i];
            else if (basis_[i] < 2 * p_)
                x[basis_[i] - p_] -= rhs_[i];
        }
        return x;
    }

    double objective_reached = 0.0;  // maximization value at the last run() exit

private:
    void pivot(std::size_t r, std::size_t c) {
        const double pv = rows_[r][c];
        for (auto& x : rows_[r]) x /= pv;
        rhs_[r] /= pv;
        rows_[r][c] = 1.0;
        for (std::size_t i = 0; i < l_; ++i) {
            if (i == r) continue;
            const double f = rows_[i][c];
            if (std::abs(f) < kPivotTol) continue;
            for (std::size_t j = 0; j < ncols_; ++j) rows_[i][j] -= f * rows_[r][j];
            rows_[i][c] = 0.0;
            rhs_[i] -= f * rhs_[r];
        }
        basis_[r] = c;
        ++pivots_;
    }

    // Minimize cost . z with Bland's rule, columns [0, allowed) eligible.
    LpStatus run(const Vec& cost, std::size_t allowed, double cutoff) {
        Vec red(allowed);
        while (true) {
            double z = 0.0;
            for (std::size_t i = 0; i < l_; ++i) z += cost[basis_[i]] * rhs_[i];
            objective_reached = -z;
            if (objective_reached > cutoff) return LpStatus::Optimal;
            if (pivots_ >= kMaxPivots) return LpStatus::IterationLimit;

            for (std::size_t j = 0; j < allowed; ++j) red[j] = cost[j];
            for (std::size_t i = 0; i < l_; ++i) {
                const double cb = cost[basis_[i]];
                if (cb == 0.0) continue;
                const Vec& row = rows_[i];
                for (std::size_t j = 0; j < allowed; ++j) red[j] -= cb * row[j];
            }
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (red[j] < -kFeasTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed) return LpStatus::Optimal;

            std::size_t leave = l_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < l_; ++i) {
                if (rows_[i][enter] > kPivotTol) {
                    const double ratio = rhs_[i] / rows_[i][enter];
                    if (ratio < best - kPivotTol ||
                        (ratio < best + kPivotTol && (leave == l_ || basis_[i] < basis_[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == l_) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }

    std::size_t p_, l_, ncols_ = 0, art_begin_ = 0;
    std::vector<Vec> rows_;
    Vec rhs_;
    std::vector<std::size_t> basis_;
    bool has_artificials_ = false;
    int pivots_ = 0;
};

LpOutcome solve_max(const Vec& c, const Matrix& H, const Vec& b, double cutoff) {
    LpOutcome out;
    if (H.rows() == 0) {
        if (max_abs(c) <= kFeasTol) {
            out.status = LpStatus::Optimal;
            out.optimizer.assign(H.cols(), 0.0);
            out.value = 0.0;
        } else {
            out.status = LpStatus::Unbounded;
        }
        return out;
    }
    Tableau t(H, b);
    LpStatus st;
    if (!t.phase_one(st)) {
        out.status = st;
        return out;
    }
    st = t.phase_two(c, cutoff);
    if (st != LpStatus::Optimal) {
        out.status = st;
        return out;
    }
    out.status = LpStatus::Optimal;
    out.optimizer = t.solution();
    out.value = dot(c, out.optimizer);
    return out;
}

}  // namespace

LpOutcome lp_max(const Vec& obj, const Matrix& H, const Vec& b, double cutoff) {
    if (obj.size() != H.cols()) throw std::invalid_argument("lp_max: objective length");
    if (b.size() != H.rows()) throw std::invalid_argument("lp_max: offset length");
    return solve_max(obj, H, b, cutoff);
}

LpOutcome lp_solve(const LpProblem& prob) {
    const std::size_t p = prob.H.cols();
    if (prob.objective.size() != p) throw std::invalid_argument("lp_solve: objective length");
    if (prob.b.size() != prob.H.rows()) throw std::invalid_argument("lp_solve: offset length");
    for (double x : prob.objective)
        if (!std::isfinite(x)) throw std::invalid_argument("lp_solve: non-finite objective");

    Vec c = prob.objective;
    if (!prob.maximize)
        for (auto& x : c) x = -x;
    LpOutcome out = solve_max(c, prob.H, prob.b, std::numeric_limits<double>::infinity());
    if (out.status == LpStatus::Optimal && !prob.maximize) out.value = -out.value;
    return out;
}

bool is_feasible(const Matrix& H, const Vec& b) {
    const LpOutcome out = solve_max(Vec(H.cols(), 0.0), H, b, 0.0);
    if (out.status == LpStatus::IterationLimit)
        throw std::runtime_error("is_feasible: pivot limit exceeded");
    return out.status == LpStatus::Optimal;
}

bool is_redundant(const Matrix& H, const Vec& b, std::size_t i) {
    if (i >= H.rows()) throw std::invalid_argument("is_redundant: row index out of range");
    Matrix Hr(H.rows() - 1, H.cols());
    Vec br(H.rows() - 1);
    std::size_t k = 0;
    for (std::size_t r = 0; r < H.rows(); ++r) {
        if (r == i) continue;
        for (std::size_t j = 0; j < H.cols(); ++j) Hr(k, j) = H(r, j);
        br[k] = b[r];
        ++k;
    }
    // Early exit is sound: the sweep only stops above the cutoff when the
    // objective already witnesses max > b_i + tol.
    const LpOutcome out = solve_max(H.row(i), Hr, br, b[i] + kFeasTol);
    switch (out.status) {
        case LpStatus::Optimal: return out.value <= b[i] + kFeasTol;
        case LpStatus::Unbounded: return false;
        case LpStatus::Infeasible:
            throw std::runtime_error("is_redundant: remaining system infeasible");
        case LpStatus::IterationLimit:
            throw std::runtime_error("is_redundant: pivot limit exceeded");
    }
    return false;
}

}  // namespace rpi
