#include "rpi/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace rpi {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void require_finite(const Vec& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(data_.size() == rows_ * cols_, "Matrix: entry count does not match shape");
    require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, "Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Vec Matrix::row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec Matrix::col(std::size_t j) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    require(r1 <= rows_ && c1 <= cols_ && r0 <= r1 && c0 <= c1, "Matrix::block: bad range");
    Matrix out(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) out(i - r0, j - c0) = (*this)(i, j);
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matrix product: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.same_shape(b), "matrix sum: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.same_shape(b), "matrix difference: shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
    return out;
}

Vec operator*(const Matrix& a, const Vec& x) {
    require(a.cols() == x.size(), "matrix-vector product: dimension mismatch");
    Vec out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
    return out;
}

Vec row_times(const Vec& v, const Matrix& m) {
    require(v.size() == m.rows(), "row-vector product: dimension mismatch");
    Vec out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * m(i, j);
    }
    return out;
}

double dot(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

Matrix mat_pow(const Matrix& a, std::size_t j) {
    require(a.rows() == a.cols(), "mat_pow: matrix must be square");
    Matrix out = Matrix::identity(a.rows());
    for (std::size_t i = 0; i < j; ++i) out = out * a;
    return out;
}

std::size_t rank(const Matrix& a, double tol) {
    require(tol > 0.0, "rank: tol must be positive");
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Matrix m = a;
    const double scale = m.max_abs();
    if (scale == 0.0) return 0;
    const double threshold = tol * scale;
    std::size_t rk = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        for (std::size_t i = row + 1; i < m.rows(); ++i)
            if (std::abs(m(i, col)) > std::abs(m(pivot, col))) pivot = i;
        if (std::abs(m(pivot, col)) <= threshold) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
        for (std::size_t i = row + 1; i < m.rows(); ++i) {
            const double f = m(i, col) / m(row, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        ++rk;
        ++row;
    }
    return rk;
}

namespace {

// Characteristic polynomial coefficients c of p(x) = x^n + c[0] x^{n-1} + ... + c[n-1],
// via the trace recursion on the auxiliary matrix sequence.
Vec char_poly(const Matrix& a) {
    const std::size_t n = a.rows();
    Vec c(n, 0.0);
    Matrix m = a;
    for (std::size_t k = 1; k <= n; ++k) {
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
        c[k - 1] = -tr / static_cast<double>(k);
        if (k == n) break;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[k - 1];
        m = a * m;
    }
    return c;
}

// All roots of a monic polynomial by simultaneous (Weierstrass) iteration.
// Zero roots are deflated exactly first so nilpotent cases come out clean.
std::vector<std::complex<double>> poly_roots(Vec coeffs) {
    using C = std::complex<double>;
    std::vector<C> roots;
    const double tiny = 1e-300;
    while (!coeffs.empty() && std::abs(coeffs.back()) < tiny) {
        roots.emplace_back(0.0, 0.0);
        coeffs.pop_back();
    }
    const std::size_t n = coeffs.size();
    if (n == 0) return roots;
    if (n == 1) {
        roots.emplace_back(-coeffs[0], 0.0);
        return roots;
    }

    double radius = 0.0;
    for (double ci : coeffs) radius = std::max(radius, std::abs(ci));
    radius = 1.0 + radius;

    std::vector<C> z(n);
    const C seed(0.4, 0.9);
    C p(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        p *= seed;
        z[i] = radius * p / std::abs(p);
    }

    auto eval = [&](const C& x) {
        C v(1.0, 0.0);
        for (double ci : coeffs) v = v * x + ci;
        return v;
    };

    double best_residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 500; ++iter) {
        double residual = 0.0;
        double step = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            C denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (std::abs(denom) < tiny) denom = C(tiny, 0.0);
            const C pv = eval(z[i]);
            const C dz = pv / denom;
            z[i] -= dz;
            residual = std::max(residual, std::abs(pv));
            step = std::max(step, std::abs(dz));
        }
        best_residual = std::min(best_residual, residual);
        if (residual < 1e-12 || step < 1e-14 * (1.0 + radius)) {
            roots.insert(roots.end(), z.begin(), z.end());
            return roots;
        }
    }
    std::ostringstream os;
    os << "eigenvalue iteration did not converge (best residual " << best_residual << ")";
    throw std::runtime_error(os.str());
}

}  // namespace

StabilityReport eigen_magnitudes(const Matrix& a, double tol) {
    require(a.rows() == a.cols(), "eigen_magnitudes: matrix must be square");
    require(a.rows() <= 8, "eigen_magnitudes: supported up to 8x8");
    StabilityReport rep;
    if (a.rows() == 0) {
        rep.strictly_stable = true;
        rep.stable = true;
        return rep;
    }
    const auto roots = poly_roots(char_poly(a));
    rep.eigenvalue_magnitudes.reserve(roots.size());
    for (const auto& z : roots) rep.eigenvalue_magnitudes.push_back(std::abs(z));
    std::sort(rep.eigenvalue_magnitudes.begin(), rep.eigenvalue_magnitudes.end());
    rep.spectral_radius = rep.eigenvalue_magnitudes.back();
    rep.strictly_stable = rep.spectral_radius < 1.0 - tol;
    rep.stable = rep.spectral_radius <= 1.0 + tol;
    return rep;
}

StructureReport verify_structure(const Matrix& a, const Matrix& e, std::size_t r, double tol) {
    require(a.rows() == a.cols(), "verify_structure: A must be square");
    require(e.rows() == a.rows(), "verify_structure: E row count must match A");
    require(r >= 1 && r <= a.rows(), "verify_structure: r out of range");

    const std::size_t n = a.rows();
    StructureReport rep;

    double off = 0.0;
    for (std::size_t i = r; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) off = std::max(off, std::abs(a(i, j)));
        for (std::size_t j = 0; j < e.cols(); ++j) off = std::max(off, std::abs(e(i, j)));
    }
    rep.block_zeros = off <= tol;

    const Matrix a11 = a.block(0, r, 0, r);
    const Matrix e1 = e.block(0, r, 0, e.cols());

    // reachability matrix [E1, A11 E1, ..., A11^{r-1} E1]
    Matrix gamma(r, r * e.cols());
    Matrix term = e1;
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < e.cols(); ++j) gamma(i, k * e.cols() + j) = term(i, j);
        term = a11 * term;
    }
    rep.controllable = rank(gamma, tol) == r;

    const StabilityReport s11 = eigen_magnitudes(a11, tol);
    rep.a11_spectral_radius = s11.spectral_radius;
    rep.a11_strictly_stable = s11.strictly_stable;

    if (r < n) {
        const StabilityReport s22 = eigen_magnitudes(a.block(r, n, r, n), tol);
        rep.a22_spectral_radius = s22.spectral_radius;
        rep.a22_strictly_stable = s22.strictly_stable;
        rep.a22_stable = s22.stable;
    } else {
        rep.a22_strictly_stable = true;
        rep.a22_stable = true;
    }
    return rep;
}

std::string StructureReport::describe() const {
    std::ostringstream os;
    os << "block_zeros=" << (block_zeros ? "pass" : "fail")
       << " controllable=" << (controllable ? "pass" : "fail")
       << " a11_strictly_stable=" << (a11_strictly_stable ? "pass" : "fail")
       << " (rho=" << a11_spectral_radius << ")"
       << " a22_strictly_stable=" << (a22_strictly_stable ? "pass" : "fail")
       << " (rho=" << a22_spectral_radius << ")";
    return os.str();
}

}  // namespace rpi
