#ifndef RPI_MATRIX_HPP
#define RPI_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace rpi {

using Vec = std::vector<double>;

// Default tolerance for rank, structure and stability decisions.
inline constexpr double kDefaultTol = 1e-9;

/// Dense real matrix, row-major. All entries must stay finite.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, Vec entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const Vec& entries() const { return data_; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;

    /// Contiguous sub-matrix, rows [r0,r1) and columns [c0,c1).
    Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Matrix acting on a column vector.
Vec operator*(const Matrix& a, const Vec& x);

/// Row vector acting on a matrix from the left (v^T M).
Vec row_times(const Vec& v, const Matrix& m);

double dot(const Vec& a, const Vec& b);
double max_abs(const Vec& v);

Matrix mat_mul(const Matrix& a, const Matrix& b);

/// a^j with a^0 = I; a must be square.
Matrix mat_pow(const Matrix& a, std::size_t j);

/// Numerical rank via Gaussian elimination with partial pivoting. Pivots
/// below tol times the largest initial pivot count as zero.
std::size_t rank(const Matrix& a, double tol = kDefaultTol);

struct StabilityReport {
    double spectral_radius = 0.0;
    Vec eigenvalue_magnitudes;
    bool strictly_stable = false;  // all |lambda| < 1 - tol
    bool stable = false;           // all |lambda| <= 1 + tol
};

/// Eigenvalue magnitudes of a small square matrix (rows <= 8), computed from
/// the characteristic polynomial with a simultaneous root iteration.
/// Throws std::runtime_error if the root finder fails to converge to
/// residual < 1e-12 within 500 sweeps.
StabilityReport eigen_magnitudes(const Matrix& a, double tol = kDefaultTol);

struct StructureReport {
    bool block_zeros = false;    // coupling blocks below the controllable part vanish
    bool controllable = false;   // r-step reachability matrix of (A11, E1) has rank r
    bool a11_strictly_stable = false;
    bool a22_strictly_stable = false;
    bool a22_stable = false;
    double a11_spectral_radius = 0.0;
    double a22_spectral_radius = 0.0;

    bool rpi_ok() const {
        return block_zeros && controllable && a11_strictly_stable && a22_strictly_stable;
    }
    bool mci_ok() const { return block_zeros && controllable && a22_stable; }
    std::string describe() const;
};

/// Validates the staircase structure of (A, E) with controllable leading
/// block of size r, plus stability of both diagonal blocks.
StructureReport verify_structure(const Matrix& a, const Matrix& e, std::size_t r,
                                 double tol = kDefaultTol);

}  // namespace rpi

#endif
