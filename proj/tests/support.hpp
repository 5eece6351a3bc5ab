#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace testing {

// Small deterministic generator for property tests (xoshiro256**).
class Gen {
 public:
  explicit Gen(std::uint64_t seed) {
    for (auto& w : s_) {
      seed += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = seed;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      w = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  std::vector<double> vector(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

inline Eigen::MatrixXd dense_chain(std::span<const double> couplings) {
  const auto n = static_cast<Eigen::Index>(couplings.size()) + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = h(i + 1, i) = couplings[static_cast<std::size_t>(i)];
  }
  return h;
}

inline std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// <N| exp(-iHt) |1> from a dense LAPACK-style eigendecomposition.
inline std::complex<double> dense_end_amplitude(std::span<const double> couplings, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_chain(couplings));
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::Index n = v.rows();
  std::complex<double> sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sum += v(n - 1, k) * v(0, k) * std::polar(1.0, -es.eigenvalues()(k) * t);
  }
  return sum;
}

// Integrates i dc/dt = H c from c = e_1 with classical RK4; no eigensolver involved.
inline std::vector<std::complex<double>> rk4_evolve(std::span<const double> couplings, double t,
                                                    int steps) {
  const std::size_t n = couplings.size() + 1;
  using Vec = std::vector<std::complex<double>>;
  auto deriv = [&](const Vec& c) {
    Vec d(n);
    const std::complex<double> mi(0.0, -1.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> hc = 0.0;
      if (i > 0) hc += couplings[i - 1] * c[i - 1];
      if (i + 1 < n) hc += couplings[i] * c[i + 1];
      d[i] = mi * hc;
    }
    return d;
  };
  Vec c(n, 0.0);
  c[0] = 1.0;
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = deriv(c);
    Vec tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
    const Vec k2 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
    const Vec k3 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + h * k3[i];
    const Vec k4 = deriv(tmp);
    for (std::size_t i = 0; i < n; ++i) c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return c;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
