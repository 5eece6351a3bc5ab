#include "spinchain/spectral_dynamics.hpp"

#include <cmath>

#include "spinchain/errors.hpp"
#include "spinchain/tridiagonal.hpp"

namespace spinchain {

namespace {

constexpr std::size_t kResyncInterval = 512;

}  // namespace

std::vector<double> SpectralData::first_site_probabilities() const {
  std::vector<double> p(first_components.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = first_components[k] * first_components[k];
  return p;
}

SpectralData diagonalize(const CouplingProfile& profile, Eigenvectors mode) {
  const std::size_t n = static_cast<std::size_t>(profile.n_sites());
  const std::vector<double> zeros(n, 0.0);
  const EigenvectorRows rows =
      mode == Eigenvectors::full ? EigenvectorRows::all : EigenvectorRows::ends;
  TridiagonalEigen eig = tridiagonal_eigen(zeros, profile.couplings(), rows);

  SpectralData out;
  out.energies = std::move(eig.values);
  const Eigen::Index last = eig.vectors.rows() - 1;
  out.first_components.resize(n);
  out.end_components.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    out.first_components[k] = eig.vectors(0, col);
    out.end_components[k] = eig.vectors(last, col);
  }
  if (mode == Eigenvectors::full) out.vectors = std::move(eig.vectors);
  return out;
}

double transfer_amplitude(const SpectralData& spec, double t) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < spec.energies.size(); ++k) {
    const double w = spec.first_components[k] * spec.end_components[k];
    const double phase = spec.energies[k] * t;
    re += w * std::cos(phase);
    im -= w * std::sin(phase);
  }
  return std::hypot(re, im);
}

double mirror_double_sum(const SpectralData& spec, double t) {
  const std::vector<double> p = spec.first_site_probabilities();
  std::complex<double> total{0.0, 0.0};
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t s = 0; s < p.size(); ++s) {
      const double sign = ((k + s) % 2 == 0) ? 1.0 : -1.0;
      total += sign * p[k] * p[s] *
               std::polar(1.0, -(spec.energies[k] - spec.energies[s]) * t);
    }
  }
  return std::abs(total);
}

std::vector<double> transfer_amplitude_grid(const SpectralData& spec, double t0, double dt,
                                            std::size_t count) {
  const std::size_t n = spec.energies.size();
  std::vector<double> weight(n);
  std::vector<std::complex<double>> step(n), phasor(n);
  for (std::size_t k = 0; k < n; ++k) {
    weight[k] = spec.first_components[k] * spec.end_components[k];
    step[k] = std::polar(1.0, -spec.energies[k] * dt);
  }

  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (j % kResyncInterval == 0) {
      const double t = t0 + static_cast<double>(j) * dt;
      for (std::size_t k = 0; k < n; ++k) phasor[k] = std::polar(1.0, -spec.energies[k] * t);
    }
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      re += weight[k] * phasor[k].real();
      im += weight[k] * phasor[k].imag();
      phasor[k] *= step[k];
    }
    out[j] = std::hypot(re, im);
  }
  return out;
}

double averaged_fidelity(double f) {
  if (!(f >= 0.0 && f <= 1.0 + 1e-9)) {
    throw DomainError("transfer amplitude outside [0, 1]");
  }
  f = std::min(f, 1.0);
  return f / 3.0 + f * f / 6.0 + 0.5;
}

std::vector<std::complex<double>> site_amplitudes(const CouplingProfile& profile, double t) {
  const SpectralData spec = diagonalize(profile, Eigenvectors::full);
  const Eigen::MatrixXd& a = *spec.vectors;
  const auto n = a.rows();
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n), {0.0, 0.0});
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::complex<double> phase =
        std::polar(1.0, -spec.energies[static_cast<std::size_t>(k)] * t);
    for (Eigen::Index i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] += a(i, k) * a(0, k) * phase;
    }
  }
  return c;
}

TransferCurve fidelity_curve(const CouplingProfile& profile, std::span<const double> times) {
  if (times.empty()) throw DomainError("fidelity curve needs at least one time");
  const SpectralData spec = diagonalize(profile);
  TransferCurve curve;
  curve.times.assign(times.begin(), times.end());
  curve.amplitudes.reserve(times.size());
  curve.fidelities.reserve(times.size());
  for (double t : times) {
    const double f = transfer_amplitude(spec, t);
    curve.amplitudes.push_back(f);
    curve.fidelities.push_back(averaged_fidelity(f));
  }
  return curve;
}

}  // namespace spinchain
