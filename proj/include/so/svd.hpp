#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>

namespace so {

struct SvdOptions {
    enum class Path { automatic, dense, randomized };

    Path path = Path::automatic;
    // automatic: exact dense decomposition when min(rows, cols) fits,
    // randomized subspace iteration otherwise.
    int dense_cutoff = 512;
    int oversample = 10;
    int max_iterations = 200;
    double convergence_tol = 1e-13;  // relative change of singular values
};

// Rank-k truncated factors with sigma non-increasing and positive: k is
// clamped to the numerical rank, never an error unless it reaches zero.
struct SvdFactors {
    Eigen::MatrixXd u;      // rows x k, orthonormal columns
    Eigen::VectorXd sigma;  // k singular values, non-increasing
    Eigen::MatrixXd v;      // cols x k, orthonormal columns
    int k = 0;              // after clamping
    int requested_k = 0;
};

// Best rank-k approximation factors of a sparse matrix.  Deterministic for
// a fixed seed (the seed only matters on the randomized path).  Throws
// ValidationError if k < 1 or the matrix is empty/zero.
SvdFactors truncated_svd(const Eigen::SparseMatrix<double>& a, int k,
                         std::uint64_t seed, const SvdOptions& options = {});

// ||A - U S V^T||_F, densifying A; intended for tests and diagnostics on
// desk-sized matrices.
double reconstruction_error(const Eigen::SparseMatrix<double>& a,
                            const SvdFactors& factors);

}  // namespace so
