#include "spinchain/chain_profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "spinchain/errors.hpp"
#include "spinchain/tridiagonal.hpp"

namespace spinchain {

namespace {

constexpr double kReconstructionTolerance = 1e-10;

std::string shortest_repr(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

CouplingProfile::CouplingProfile(std::vector<double> couplings, ProfileKind kind, double alpha)
    : couplings_(std::move(couplings)), kind_(kind), alpha_(alpha) {
  if (couplings_.empty()) {
    throw InvalidLengthError("coupling profile needs at least two sites");
  }
  for (double j : couplings_) {
    if (!std::isfinite(j)) throw DomainError("coupling profile contains a non-finite coupling");
  }
}

double CouplingProfile::j_max() const {
  return *std::max_element(couplings_.begin(), couplings_.end());
}

double CouplingProfile::j_min() const {
  return *std::min_element(couplings_.begin(), couplings_.end());
}

double CouplingProfile::mirror_asymmetry() const {
  double worst = 0.0;
  const std::size_t m = couplings_.size();
  for (std::size_t i = 0; i < m; ++i) {
    worst = std::max(worst, std::abs(couplings_[i] - couplings_[m - 1 - i]));
  }
  return worst;
}

std::string CouplingProfile::kind_tag() const {
  switch (kind_) {
    case ProfileKind::homogeneous:
      return "homogeneous";
    case ProfileKind::alpha_boundary:
      return "alpha_boundary(" + shortest_repr(alpha_) + ")";
    case ProfileKind::pst_linear:
      return "pst_linear";
    case ProfileKind::pst_quadratic:
      return "pst_quadratic";
    case ProfileKind::custom:
      break;
  }
  return "custom";
}

CouplingProfile CouplingProfile::scaled(double factor) const {
  std::vector<double> out(couplings_);
  for (double& j : out) j *= factor;
  return CouplingProfile(std::move(out), kind_, alpha_);
}

CouplingProfile CouplingProfile::with_couplings(std::vector<double> couplings,
                                                ProfileKind kind) const {
  return CouplingProfile(std::move(couplings), kind, alpha_);
}

SpectrumTarget::SpectrumTarget(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.size() < 2) throw InvalidLengthError("spectrum target needs at least two levels");
  const double scale = std::max(1.0, max_abs(energies_));
  const std::size_t n = energies_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(energies_[k])) throw DomainError("spectrum target has non-finite energy");
    if (k + 1 < n && !(energies_[k] < energies_[k + 1])) {
      throw DomainError("spectrum target must be strictly increasing (simple eigenvalues)");
    }
    if (std::abs(energies_[k] + energies_[n - 1 - k]) > 1e-12 * scale) {
      throw DomainError("spectrum target must be antisymmetric about zero");
    }
  }
}

SpectrumTarget SpectrumTarget::scaled(double factor) const {
  std::vector<double> out(energies_);
  for (double& e : out) e *= factor;
  return SpectrumTarget(std::move(out));
}

CouplingProfile homogeneous_profile(int n) {
  if (n < 2) throw InvalidLengthError("homogeneous chain needs n >= 2");
  return CouplingProfile(std::vector<double>(static_cast<std::size_t>(n - 1), 1.0),
                         ProfileKind::homogeneous);
}

CouplingProfile alpha_boundary_profile(int n, double alpha) {
  if (n < 3) throw InvalidLengthError("boundary-controlled chain needs n >= 3");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  std::vector<double> j(static_cast<std::size_t>(n - 1), 1.0);
  j.front() = alpha;
  j.back() = alpha;
  return CouplingProfile(std::move(j), ProfileKind::alpha_boundary, alpha);
}

SpectrumTarget power_law_spectrum(int n, int m) {
  if (n < 2) throw InvalidLengthError("power-law spectrum needs n >= 2");
  if (m < 1) throw DomainError("power-law exponent must be a positive integer");
  // Work with the integer 2k so half-integer k stays exact for even n.
  const double denom = std::pow(2.0, m);
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(n));
  for (int two_k = -(n - 1); two_k <= n - 1; two_k += 2) {
    double mag = 1.0;
    for (int p = 0; p < m; ++p) mag *= std::abs(two_k);
    mag /= denom;
    e.push_back(two_k < 0 ? -mag : mag);
  }
  return SpectrumTarget(std::move(e));
}

CouplingProfile pst_linear_profile(int n) {
  if (n < 2) throw InvalidLengthError("linear PST chain needs n >= 2");
  std::vector<double> j(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    j[static_cast<std::size_t>(i - 1)] = std::sqrt(static_cast<double>(i) * (n - i));
  }
  const double jmax = *std::max_element(j.begin(), j.end());
  for (double& x : j) x /= jmax;
  return CouplingProfile(std::move(j), ProfileKind::pst_linear);
}

std::vector<double> JacobiReconstruction::raw_couplings() const {
  std::vector<double> out(profile.couplings().begin(), profile.couplings().end());
  for (double& j : out) j *= scale;
  return out;
}

namespace inverse {

std::vector<double> persymmetric_weights(std::span<const double> energies) {
  const std::size_t n = energies.size();
  std::vector<double> log_w(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) s -= std::log(std::abs(energies[k] - energies[j]));
    }
    log_w[k] = s;
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::exp(log_w[k] - top);
    total += w[k];
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> lanczos_couplings(std::span<const double> energies,
                                      std::span<const double> weights) {
  const auto n = static_cast<Eigen::Index>(energies.size());
  const Eigen::Map<const Eigen::VectorXd> lambda(energies.data(), n);
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index k = 0; k < n; ++k) q(k, 0) = std::sqrt(weights[static_cast<std::size_t>(k)]);
  q.col(0).normalize();

  std::vector<double> beta;
  beta.reserve(static_cast<std::size_t>(n - 1));
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    Eigen::VectorXd v = lambda.cwiseProduct(q.col(j));
    if (j > 0) v -= beta.back() * q.col(j - 1);
    // Twice-is-enough Gram-Schmidt against the whole basis; this also removes
    // the (vanishing) diagonal term.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeff = q.leftCols(j + 1).transpose() * v;
      v -= q.leftCols(j + 1) * coeff;
    }
    const double b = v.norm();
    if (!(b > 0.0)) {
      throw ReconstructionError("Lanczos recurrence broke down at step " + std::to_string(j + 1),
                                1.0);
    }
    beta.push_back(b);
    q.col(j + 1) = v / b;
  }
  return beta;
}

double relative_spectrum_error(std::span<const double> couplings,
                               std::span<const double> energies) {
  const std::vector<double> forward = zero_diagonal_eigenvalues(couplings);
  const double scale = max_abs(energies);
  double worst = 0.0;
  for (std::size_t k = 0; k < forward.size(); ++k) {
    worst = std::max(worst, std::abs(forward[k] - energies[k]));
  }
  return worst / scale;
}

std::vector<double> newton_refine(std::span<const double> energies, std::vector<double> start,
                                  int max_iterations) {
  const int n = static_cast<int>(energies.size());
  const int half = n / 2;  // independent couplings == positive eigenvalues
  const double escale = max_abs(energies);

  auto expand = [n](const Eigen::VectorXd& x) {
    std::vector<double> j(static_cast<std::size_t>(n - 1));
    for (int i = 1; i < n; ++i) j[static_cast<std::size_t>(i - 1)] = x(std::min(i, n - i) - 1);
    return j;
  };
  auto residual_of = [&](const std::vector<double>& ev) {
    Eigen::VectorXd r(half);
    for (int k = 0; k < half; ++k) r(k) = ev[static_cast<std::size_t>(n - half + k)] - energies[static_cast<std::size_t>(n - half + k)];
    return r;
  };

  Eigen::VectorXd x(half);
  for (int j = 0; j < half; ++j) {
    x(j) = 0.5 * (std::abs(start[static_cast<std::size_t>(j)]) +
                  std::abs(start[static_cast<std::size_t>(n - 2 - j)]));
  }
  const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);

  for (int it = 0; it < max_iterations; ++it) {
    const std::vector<double> j = expand(x);
    const TridiagonalEigen eig = tridiagonal_eigen(zeros, j, EigenvectorRows::all);
    Eigen::VectorXd r = residual_of(eig.values);
    const double rnorm = r.norm();
    if (r.cwiseAbs().maxCoeff() <= 1e-15 * escale) break;

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(half, half);
    for (int k = 0; k < half; ++k) {
      const int col = n - half + k;
      for (int i = 1; i < n; ++i) {
        jac(k, std::min(i, n - i) - 1) += 2.0 * eig.vectors(i - 1, col) * eig.vectors(i, col);
      }
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(-r);

    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const Eigen::VectorXd trial = x + t * step;
      const Eigen::VectorXd rt = residual_of(zero_diagonal_eigenvalues(expand(trial)));
      if (rt.norm() < rnorm) {
        x = trial;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  std::vector<double> out = expand(x);
  for (double& v : out) v = std::abs(v);
  return out;
}

}  // namespace inverse

JacobiReconstruction solve_persymmetric_jacobi(const SpectrumTarget& target) {
  const std::span<const double> e = target.energies();
  const int n = target.n_sites();

  const std::vector<double> weights = inverse::persymmetric_weights(e);
  const std::vector<double> beta = inverse::lanczos_couplings(e, weights);

  // The recurrence is most accurate where it starts; take the leading half and
  // mirror it so the result is symmetric bit for bit.
  std::vector<double> raw(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    raw[static_cast<std::size_t>(i - 1)] = beta[static_cast<std::size_t>(std::min(i, n - i) - 1)];
  }

  ReconstructionMethod method = ReconstructionMethod::lanczos;
  double residual = inverse::relative_spectrum_error(raw, e);
  if (!(residual <= kReconstructionTolerance)) {
    raw = inverse::newton_refine(e, raw);
    residual = inverse::relative_spectrum_error(raw, e);
    method = ReconstructionMethod::newton;
  }
  if (!(residual <= kReconstructionTolerance)) {
    throw ReconstructionError("persymmetric Jacobi reconstruction failed, residual " +
                                  std::to_string(residual),
                              residual);
  }
  for (double j : raw) {
    if (!(j > 0.0)) throw ReconstructionError("reconstruction produced a vanishing coupling", residual);
  }

  const double scale = *std::max_element(raw.begin(), raw.end());
  for (double& j : raw) j /= scale;
  return JacobiReconstruction{CouplingProfile(std::move(raw), ProfileKind::custom), scale,
                              residual, method};
}

CouplingProfile pst_quadratic_profile(int n) {
  if (n < 2) throw InvalidLengthError("quadratic PST chain needs n >= 2");
  const JacobiReconstruction rec = solve_persymmetric_jacobi(power_law_spectrum(n, 2));
  std::vector<double> j(rec.profile.couplings().begin(), rec.profile.couplings().end());
  return CouplingProfile(std::move(j), ProfileKind::pst_quadratic);
}

}  // namespace spinchain
