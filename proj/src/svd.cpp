#include "so/svd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "so/errors.hpp"
#include "so/log.hpp"

namespace so {

namespace {

// Seeded standard-normal generator: splitmix64 + Box-Muller, so the sampled
// matrix does not depend on the standard library's distribution internals.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : state_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Shrink to the numerical rank so trailing noise-level singular triplets
// never reach callers.
SvdFactors clamp_factors(const Eigen::MatrixXd& u, const Eigen::VectorXd& sigma,
                         const Eigen::MatrixXd& v, int requested_k,
                         Eigen::Index max_dim) {
    const double tol = sigma.size() == 0
                           ? 0.0
                           : static_cast<double>(max_dim) *
                                 std::numeric_limits<double>::epsilon() *
                                 sigma(0);
    int rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol) ++rank;
    int k = std::min(requested_k, rank);
    if (k == 0)
        throw ValidationError("truncated SVD rank is zero after clamping");
    SvdFactors f;
    f.u = u.leftCols(k);
    f.sigma = sigma.head(k);
    f.v = v.leftCols(k);
    f.k = k;
    f.requested_k = requested_k;
    return f;
}

SvdFactors dense_svd(const Eigen::SparseMatrix<double>& a, int k) {
    const Eigen::MatrixXd dense(a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    return clamp_factors(svd.matrixU(), svd.singularValues(), svd.matrixV(), k,
                         std::max(a.rows(), a.cols()));
}

// Randomized subspace iteration (range finder + power iterations), iterated
// until the singular value estimates stabilize.
SvdFactors randomized_svd(const Eigen::SparseMatrix<double>& a, int k,
                          std::uint64_t seed, const SvdOptions& opt) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    const Eigen::Index minmn = std::min(m, n);
    const Eigen::Index l = std::min<Eigen::Index>(minmn, k + opt.oversample);

    GaussianSource gauss(seed ^ 0x5DEECE66DULL);
    Eigen::MatrixXd omega(n, l);
    for (Eigen::Index j = 0; j < l; ++j)
        for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = gauss();

    const auto orthonormalize = [](Eigen::MatrixXd& q) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
        q = qr.householderQ() * Eigen::MatrixXd::Identity(q.rows(), q.cols());
    };

    Eigen::MatrixXd q = a * omega;
    orthonormalize(q);

    Eigen::VectorXd prev_sigma;
    Eigen::JacobiSVD<Eigen::MatrixXd> small_svd;
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        Eigen::MatrixXd z = a.transpose() * q;
        orthonormalize(z);
        q = a * z;
        orthonormalize(q);

        Eigen::MatrixXd b = q.transpose() * a;
        small_svd.compute(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd sigma = small_svd.singularValues();
        if (prev_sigma.size() == sigma.size()) {
            const double denom = std::max(sigma(0), 1e-300);
            if ((sigma - prev_sigma).cwiseAbs().maxCoeff() / denom <
                opt.convergence_tol) {
                prev_sigma = sigma;
                break;
            }
        }
        prev_sigma = sigma;
    }

    Eigen::MatrixXd b = q.transpose() * a;
    small_svd.compute(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::MatrixXd u = q * small_svd.matrixU();
    return clamp_factors(u, small_svd.singularValues(), small_svd.matrixV(), k,
                         std::max(m, n));
}

}  // namespace

SvdFactors truncated_svd(const Eigen::SparseMatrix<double>& a, int k,
                         std::uint64_t seed, const SvdOptions& options) {
    if (k < 1) throw ValidationError("truncated SVD requires k >= 1");
    if (a.rows() == 0 || a.cols() == 0)
        throw ValidationError("truncated SVD of an empty matrix");

    const auto minmn = std::min(a.rows(), a.cols());
    SvdOptions::Path path = options.path;
    if (path == SvdOptions::Path::automatic)
        path = minmn <= options.dense_cutoff ? SvdOptions::Path::dense
                                             : SvdOptions::Path::randomized;
    if (path == SvdOptions::Path::dense) {
        log::debug("truncated_svd: dense path, ", a.rows(), "x", a.cols());
        return dense_svd(a, k);
    }
    log::debug("truncated_svd: randomized path, ", a.rows(), "x", a.cols(),
               ", k=", k);
    return randomized_svd(a, k, seed, options);
}

double reconstruction_error(const Eigen::SparseMatrix<double>& a,
                            const SvdFactors& factors) {
    Eigen::MatrixXd diff(a);
    diff.noalias() -= factors.u * factors.sigma.asDiagonal() * factors.v.transpose();
    return diff.norm();
}

}  // namespace so
