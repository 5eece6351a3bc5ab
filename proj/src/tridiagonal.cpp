#include "spinchain/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spinchain {

namespace {

constexpr int kMaxSweepsPerEigenvalue = 60;

// Row-major accumulator for the tracked rows of the orthogonal transform.
class RowAccumulator {
 public:
  RowAccumulator(std::size_t n, EigenvectorRows rows) : n_(n) {
    switch (rows) {
      case EigenvectorRows::none:
        break;
      case EigenvectorRows::ends:
        sites_ = n == 1 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{0, n - 1};
        break;
      case EigenvectorRows::all:
        sites_.resize(n);
        std::iota(sites_.begin(), sites_.end(), std::size_t{0});
        break;
    }
    data_.assign(sites_.size() * n_, 0.0);
    for (std::size_t r = 0; r < sites_.size(); ++r) data_[r * n_ + sites_[r]] = 1.0;
  }

  // Z <- Z * G where G rotates columns (i, i+1).
  void rotate(std::size_t i, double c, double s) {
    for (std::size_t r = 0; r < sites_.size(); ++r) {
      double* row = &data_[r * n_];
      const double h = row[i + 1];
      row[i + 1] = s * row[i] + c * h;
      row[i] = c * row[i] - s * h;
    }
  }

  std::size_t rows() const { return sites_.size(); }
  double at(std::size_t r, std::size_t col) const { return data_[r * n_ + col]; }

 private:
  std::size_t n_;
  std::vector<std::size_t> sites_;
  std::vector<double> data_;
};

}  // namespace

TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal,
                                   std::span<const double> offdiag,
                                   EigenvectorRows rows) {
  const std::size_t n = diagonal.size();
  if (n == 0 || offdiag.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal_eigen: off-diagonal must have n-1 entries");
  }

  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  RowAccumulator z(n, rows);

  const double eps = std::numeric_limits<double>::epsilon();
  double shift_total = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxSweepsPerEigenvalue) {
          throw std::runtime_error("tridiagonal_eigen: QL iteration did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift_total += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::sqrt(p * p + e[ii] * e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          z.rotate(ii, c, s);
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += shift_total;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.resize(n);
  out.vectors.resize(static_cast<Eigen::Index>(z.rows()), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = d[src];
    if (z.rows() == 0) continue;
    const double sign = z.at(0, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < z.rows(); ++r) {
      out.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = sign * z.at(r, src);
    }
  }
  return out;
}

std::vector<double> zero_diagonal_eigenvalues(std::span<const double> offdiag) {
  const std::vector<double> zeros(offdiag.size() + 1, 0.0);
  return tridiagonal_eigen(zeros, offdiag, EigenvectorRows::none).values;
}

}  // namespace spinchain
