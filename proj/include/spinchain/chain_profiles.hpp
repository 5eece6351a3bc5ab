#pragma once

#include <span>
#include <string>
#include <vector>

namespace spinchain {

enum class ProfileKind { homogeneous, alpha_boundary, pst_linear, pst_quadratic, custom };

/// Nearest-neighbour couplings J_1..J_{N-1} of an XX chain, in units of J_max.
///
/// The constructor only checks shape and finiteness; perturbed profiles may
/// carry non-positive couplings.
class CouplingProfile {
 public:
  CouplingProfile(std::vector<double> couplings, ProfileKind kind, double alpha = 1.0);

  int n_sites() const { return static_cast<int>(couplings_.size()) + 1; }
  std::span<const double> couplings() const { return couplings_; }
  /// 1-based coupling index, J_i couples sites i and i+1.
  double coupling(int i) const { return couplings_.at(static_cast<std::size_t>(i - 1)); }
  ProfileKind kind() const { return kind_; }
  /// Boundary parameter; meaningful for alpha_boundary only.
  double alpha() const { return alpha_; }

  double j_max() const;
  double j_min() const;
  /// Largest |J_i - J_{N-i}|.
  double mirror_asymmetry() const;

  /// "homogeneous", "alpha_boundary(<alpha>)", "pst_linear", "pst_quadratic", "custom".
  std::string kind_tag() const;

  CouplingProfile scaled(double factor) const;
  CouplingProfile with_couplings(std::vector<double> couplings, ProfileKind kind) const;

  friend bool operator==(const CouplingProfile&, const CouplingProfile&) = default;

 private:
  std::vector<double> couplings_;
  ProfileKind kind_;
  double alpha_;
};

/// Simple single-excitation spectrum, antisymmetric about zero.
class SpectrumTarget {
 public:
  explicit SpectrumTarget(std::vector<double> energies);

  int n_sites() const { return static_cast<int>(energies_.size()); }
  std::span<const double> energies() const { return energies_; }
  SpectrumTarget scaled(double factor) const;

 private:
  std::vector<double> energies_;
};

CouplingProfile homogeneous_profile(int n);
CouplingProfile alpha_boundary_profile(int n, double alpha);

/// sgn(k)|k|^m for k = -(N-1)/2 .. (N-1)/2, ascending.
SpectrumTarget power_law_spectrum(int n, int m);

/// Closed-form equally spaced chain, J_i proportional to sqrt(i(N-i)).
CouplingProfile pst_linear_profile(int n);

enum class ReconstructionMethod { lanczos, newton };

struct JacobiReconstruction {
  /// Normalized to max coupling 1.
  CouplingProfile profile;
  /// Pre-normalization coupling scale: raw couplings = scale * profile couplings,
  /// and the profile's spectrum is target / scale.
  double scale;
  /// max_k |E_k(reconstructed) - E_k(target)| / max_k |E_k(target)|.
  double residual;
  ReconstructionMethod method;

  std::vector<double> raw_couplings() const;
};

/// Zero-diagonal mirror-symmetric Jacobi matrix with the target spectrum.
/// Throws ReconstructionError when the forward check exceeds 1e-10 even after
/// Newton refinement.
JacobiReconstruction solve_persymmetric_jacobi(const SpectrumTarget& target);

CouplingProfile pst_quadratic_profile(int n);

/// Exposed building blocks of the inverse solver.
namespace inverse {

/// Normalized first-site weights a_{k,1}^2 of the persymmetric Jacobi matrix
/// with these eigenvalues: proportional to 1 / |prod_{j!=k} (E_k - E_j)|.
std::vector<double> persymmetric_weights(std::span<const double> energies);

/// Three-term-recurrence reconstruction of the couplings from eigenvalues and
/// first-site weights (Lanczos on diag(E) with full reorthogonalization).
/// Returns the raw N-1 off-diagonal entries.
std::vector<double> lanczos_couplings(std::span<const double> energies,
                                      std::span<const double> weights);

/// Damped Newton iteration on the independent half of a mirror-symmetric
/// coupling vector, matching the positive half of the spectrum. Returns the
/// refined raw couplings.
std::vector<double> newton_refine(std::span<const double> energies,
                                  std::vector<double> start, int max_iterations = 100);

double relative_spectrum_error(std::span<const double> couplings,
                               std::span<const double> energies);

}  // namespace inverse

}  // namespace spinchain
