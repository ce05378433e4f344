#include "formdim/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace formdim {

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw Error("matmul dimension mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (int j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

Lu::Lu(Mat a) : lu_(std::move(a)) {
    const int n = lu_.rows();
    if (n != lu_.cols())
        throw Error("LU of a non-square matrix");
    piv_.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (std::fabs(lu_(i, k)) > best) {
                best = std::fabs(lu_(i, k));
                p = i;
            }
        }
        piv_[static_cast<std::size_t>(k)] = p;
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        if (p != k)
            for (int j = 0; j < n; ++j)
                std::swap(lu_(k, j), lu_(p, j));
        for (int i = k + 1; i < n; ++i) {
            lu_(i, k) /= lu_(k, k);
            const double f = lu_(i, k);
            if (f == 0.0)
                continue;
            for (int j = k + 1; j < n; ++j)
                lu_(i, j) -= f * lu_(k, j);
        }
    }
}

double Lu::log_abs_det() const {
    if (singular_)
        throw Error("determinant of a singular matrix");
    double s = 0.0;
    for (int i = 0; i < lu_.rows(); ++i)
        s += std::log(std::fabs(lu_(i, i)));
    return s;
}

Mat Lu::solve(const Mat& b) const {
    if (singular_)
        throw Error("solve with a singular matrix");
    const int n = lu_.rows();
    if (b.rows() != n)
        throw Error("solve dimension mismatch");
    Mat x = b;
    for (int k = 0; k < n; ++k) {
        const int p = piv_[static_cast<std::size_t>(k)];
        if (p != k)
            for (int j = 0; j < x.cols(); ++j)
                std::swap(x(k, j), x(p, j));
    }
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            const double f = lu_(i, k);
            if (f == 0.0)
                continue;
            for (int j = 0; j < x.cols(); ++j)
                x(i, j) -= f * x(k, j);
        }
    for (int k = n - 1; k >= 0; --k) {
        for (int j = 0; j < x.cols(); ++j)
            x(k, j) /= lu_(k, k);
        for (int i = 0; i < k; ++i) {
            const double f = lu_(i, k);
            if (f == 0.0)
                continue;
            for (int j = 0; j < x.cols(); ++j)
                x(i, j) -= f * x(k, j);
        }
    }
    return x;
}

std::vector<double> singular_values(Mat a) {
    const int rows = a.rows();
    const int cols = a.cols();
    const double tol = 1e-14;
    const int max_sweeps = 60;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (int i = 0; i < cols - 1; ++i) {
            for (int j = i + 1; j < cols; ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int k = 0; k < rows; ++k) {
                    alpha += a(k, i) * a(k, i);
                    beta += a(k, j) * a(k, j);
                    gamma += a(k, i) * a(k, j);
                }
                if (alpha == 0.0 || beta == 0.0)
                    continue;
                if (std::fabs(gamma) <= tol * std::sqrt(alpha * beta))
                    continue;
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int k = 0; k < rows; ++k) {
                    const double vi = a(k, i);
                    const double vj = a(k, j);
                    a(k, i) = c * vi - s * vj;
                    a(k, j) = s * vi + c * vj;
                }
            }
        }
        if (converged)
            break;
    }

    std::vector<double> sigma(static_cast<std::size_t>(cols));
    for (int j = 0; j < cols; ++j) {
        double s = 0.0;
        for (int k = 0; k < rows; ++k)
            s += a(k, j) * a(k, j);
        sigma[static_cast<std::size_t>(j)] = std::sqrt(s);
    }
    std::sort(sigma.begin(), sigma.end());
    return sigma;
}

void SaddleBlocks::validate() const {
    if (A.rows() != A.cols())
        throw Error("saddle block A must be square");
    if (B.cols() != A.rows())
        throw Error("saddle block B must have n columns");
    if (B.rows() >= A.rows())
        throw Error("saddle block B must have m < n rows");
    if (Lu(A).singular())
        throw Error("saddle block A is singular");
    if (B.rows() > 0) {
        const auto sigma = singular_values(B.transposed());
        const double smax = sigma.back();
        // the m columns of B^T must all be independent
        if (smax == 0.0 || sigma.front() <= smax * 1e-12 * B.cols())
            throw Error("saddle block B is rank deficient");
    }
}

Mat assemble_saddle(const SaddleBlocks& blocks, double eu) {
    const int n = blocks.n();
    const int m = blocks.m();
    Mat k(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            k(i, j) = blocks.A(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            k(n + i, j) = eu * blocks.B(i, j);
            k(j, n + i) = eu * blocks.B(i, j);
        }
    return k;
}

double cond2(const Mat& mat) {
    if (mat.rows() != mat.cols())
        throw Error("cond2 of a non-square matrix");
    const auto sigma = singular_values(mat);
    const double smax = sigma.back();
    if (smax == 0.0)
        throw Error("cond2 of the zero matrix");
    const double threshold = smax * mat.rows() * std::numeric_limits<double>::epsilon();
    if (sigma.front() < threshold)
        return std::numeric_limits<double>::infinity();
    return smax / sigma.front();
}

double det_identity_residual(const SaddleBlocks& blocks, double eu) {
    const int m = blocks.m();
    const Lu lu_a(blocks.A);
    if (lu_a.singular())
        throw Error("saddle block A is singular");

    const double log_det_k = Lu(assemble_saddle(blocks, eu)).log_abs_det();
    double log_c0 = lu_a.log_abs_det();
    if (m > 0) {
        const Mat x = lu_a.solve(blocks.B.transposed()); // A^-1 B^T
        log_c0 += Lu(matmul(blocks.B, x)).log_abs_det();
    }
    return std::fabs(log_det_k - (2.0 * m * std::log(eu) + log_c0));
}

std::vector<std::pair<double, double>> bound_experiment(const SaddleBlocks& blocks,
                                                        const std::vector<double>& eu_grid) {
    for (std::size_t i = 0; i < eu_grid.size(); ++i) {
        if (eu_grid[i] <= 0.0)
            throw Error("eu grid entries must be positive");
        if (i > 0 && eu_grid[i] < eu_grid[i - 1])
            throw Error("eu grid must be sorted ascending");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(eu_grid.size());
    for (double eu : eu_grid)
        out.emplace_back(eu, cond2(assemble_saddle(blocks, eu)));
    return out;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(points.size());
    for (const auto& [x, y] : points) {
        const double lx = std::log(x);
        const double ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

// Deterministic standard normals: Box-Muller over explicit 53-bit uniforms,
// independent of any library distribution implementation.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;

    double uniform_open() {
        // (0, 1]: never zero, so log() is safe
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }
};

} // namespace

Mat random_gaussian(int rows, int cols, std::uint64_t seed) {
    NormalSource src(seed);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = src.next();
    return m;
}

Mat make_spd_gram(int n, std::uint64_t seed) {
    const Mat g = random_gaussian(n, n, seed);
    Mat a = matmul(g.transposed(), g);
    for (int i = 0; i < n; ++i)
        a(i, i) += n;
    return a;
}

Mat make_spd_spectrum(int n, double lambda_min, double lambda_max, std::uint64_t seed) {
    // orthogonal Q by modified Gram-Schmidt on a Gaussian matrix
    Mat q = random_gaussian(n, n, seed);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            double dotp = 0.0;
            for (int i = 0; i < n; ++i)
                dotp += q(i, k) * q(i, j);
            for (int i = 0; i < n; ++i)
                q(i, j) -= dotp * q(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i)
            norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i)
            q(i, j) /= norm;
    }

    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        lambda[static_cast<std::size_t>(i)] =
            lambda_min * std::pow(lambda_max / lambda_min, t);
    }

    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += q(i, k) * lambda[static_cast<std::size_t>(k)] * q(j, k);
            a(i, j) = s;
        }
    // exact symmetry
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

SaddleBlocks make_saddle_blocks(Mat a, int m, double b_scale, std::uint64_t seed) {
    SaddleBlocks blocks;
    const int n = a.rows();
    blocks.A = std::move(a);
    blocks.B = random_gaussian(m, n, seed + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            blocks.B(i, j) *= b_scale;
    blocks.validate();
    return blocks;
}

} // namespace formdim
