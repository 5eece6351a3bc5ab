#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinchain {

/// Which rows of the eigenvector matrix the QL sweep accumulates.
///
/// Only the end rows enter the end-to-end propagator, and accumulating two
/// rows instead of N turns the O(N^3) eigenvector update into O(N^2).
enum class EigenvectorRows { none, ends, all };

struct TridiagonalEigen {
  /// Ascending eigenvalues.
  std::vector<double> values;
  /// rows() x n: row r is the tracked site (sites 0 and n-1 for `ends`, all
  /// sites for `all`), column k the k-th eigenvector. Columns are normalized
  /// so the first-site component is nonnegative.
  Eigen::MatrixXd vectors;
};

/// Implicit QL with Wilkinson-type shifts for a real symmetric tridiagonal
/// matrix (tql2 lineage). `offdiag[i]` couples sites i and i+1.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal,
                                   std::span<const double> offdiag,
                                   EigenvectorRows rows);

/// Eigenvalues of the zero-diagonal tridiagonal matrix with the given
/// off-diagonal, ascending.
std::vector<double> zero_diagonal_eigenvalues(std::span<const double> offdiag);

}  // namespace spinchain
