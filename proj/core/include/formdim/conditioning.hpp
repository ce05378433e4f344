#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "formdim/errors.hpp"

namespace formdim {

/// Dense row-major matrix, sized for the synthetic saddle-point studies
/// (N <= 200).
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    Mat transposed() const;
    static Mat identity(int n);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Mat matmul(const Mat& a, const Mat& b);

/// LU factorization with partial pivoting.
class Lu {
public:
    explicit Lu(Mat a);

    bool singular() const { return singular_; }
    /// log |det|; throws Error when singular.
    double log_abs_det() const;
    /// Solve A X = B for X.
    Mat solve(const Mat& b) const;

private:
    Mat lu_;
    std::vector<int> piv_;
    bool singular_ = false;
};

/// Singular values by one-sided Jacobi orthogonalization of the columns,
/// returned sorted ascending. Accurate for the small dense matrices used
/// here; convergence when every column pair satisfies
/// |a_i . a_j| <= 1e-14 ||a_i|| ||a_j||.
std::vector<double> singular_values(Mat a);

/// Blocks of the saddle-point matrix [[A, eu B^T], [eu B, 0]]. A must be
/// invertible and B full row rank with m < n.
struct SaddleBlocks {
    Mat A; // n x n
    Mat B; // m x n

    int n() const { return A.rows(); }
    int m() const { return B.rows(); }

    /// Check the invariants (rank via pivot/singular-value thresholds).
    void validate() const;
};

/// Assemble the (n+m) x (n+m) matrix [[A, eu B^T], [eu B, 0]].
Mat assemble_saddle(const SaddleBlocks& blocks, double eu);

/// 2-norm condition number sigma_max / sigma_min via the Jacobi SVD.
/// A sigma_min below machine scale relative to sigma_max reports +infinity.
double cond2(const Mat& mat);

/// Residual of the determinant identity
///   log |det K(eu)| = 2 m log(eu) + log C0,
/// with C0 = |det A  det(B A^-1 B^T)|; both sides computed independently by
/// LU determinants. A small residual confirms the identity.
double det_identity_residual(const SaddleBlocks& blocks, double eu);

/// Condition number per grid point; the grid must be positive and sorted
/// ascending.
std::vector<std::pair<double, double>> bound_experiment(const SaddleBlocks& blocks,
                                                        const std::vector<double>& eu_grid);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

// Deterministic generators (fixed seeds reproduce bit-identical matrices).

/// i.i.d. standard normal entries via Box-Muller over a seeded mt19937_64.
Mat random_gaussian(int rows, int cols, std::uint64_t seed);

/// SPD matrix G^T G + n I with Gaussian G: mildly conditioned.
Mat make_spd_gram(int n, std::uint64_t seed);

/// SPD matrix Q diag(spectrum) Q^T with a seeded random orthogonal Q and a
/// log-spaced spectrum in [lambda_min, lambda_max]: controlled spread.
Mat make_spd_spectrum(int n, double lambda_min, double lambda_max, std::uint64_t seed);

/// Saddle blocks with the given A recipe and a scaled Gaussian B
/// (rank-checked).
SaddleBlocks make_saddle_blocks(Mat a, int m, double b_scale, std::uint64_t seed);

} // namespace formdim
