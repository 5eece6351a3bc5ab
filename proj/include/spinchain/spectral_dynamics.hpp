#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/chain_profiles.hpp"

namespace spinchain {

enum class Eigenvectors { ends, full };

/// Single-excitation eigendata of an XX chain (hbar = 1, energies in J_max).
struct SpectralData {
  std::vector<double> energies;          ///< ascending
  std::vector<double> first_components;  ///< a_{k,1} >= 0
  std::vector<double> end_components;    ///< a_{k,N}
  /// Full eigenvector matrix, (site i, state k), when requested.
  std::optional<Eigen::MatrixXd> vectors;

  int n_sites() const { return static_cast<int>(energies.size()); }
  /// P_{k,1} = a_{k,1}^2.
  std::vector<double> first_site_probabilities() const;
};

SpectralData diagonalize(const CouplingProfile& profile, Eigenvectors mode = Eigenvectors::ends);

/// f_N(t) = |sum_k a_{k,1} a_{k,N} exp(-i E_k t)|. Valid for any chain.
double transfer_amplitude(const SpectralData& spec, double t);

/// Mirror-symmetric double sum over (-1)^{k+s} P_{k,1} P_{s,1} exp(-i(E_k-E_s)t).
/// It equals f_N(t)^2 on unperturbed mirror-symmetric chains and is not
/// meaningful otherwise.
double mirror_double_sum(const SpectralData& spec, double t);

/// f_N on the uniform grid t0 + j*dt, j < count. Uses phasor recursion with
/// periodic resynchronisation, so cost is O(N) multiplies per sample.
std::vector<double> transfer_amplitude_grid(const SpectralData& spec, double t0, double dt,
                                            std::size_t count);

/// Bloch-sphere averaged fidelity with cos(gamma) = 1: F = f/3 + f^2/6 + 1/2.
double averaged_fidelity(double f);

/// c_i(t) = <i| exp(-iHt) |1>, i = 1..N, by eigenbasis resummation.
std::vector<std::complex<double>> site_amplitudes(const CouplingProfile& profile, double t);

struct TransferCurve {
  std::vector<double> times;
  std::vector<double> amplitudes;
  std::vector<double> fidelities;
};

TransferCurve fidelity_curve(const CouplingProfile& profile, std::span<const double> times);

}  // namespace spinchain
