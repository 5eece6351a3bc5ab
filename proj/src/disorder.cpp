#include "spinchain/disorder.hpp"

#include <cmath>

#include "spinchain/errors.hpp"
#include "spinchain/parallel.hpp"
#include "spinchain/philox.hpp"
#include "spinchain/spectral_dynamics.hpp"

namespace spinchain {

std::string to_string(DisorderModel model) {
  return model == DisorderModel::rsd ? "RSD" : "ASD";
}

DisorderModel parse_disorder_model(const std::string& text) {
  if (text == "rsd" || text == "RSD") return DisorderModel::rsd;
  if (text == "asd" || text == "ASD") return DisorderModel::asd;
  throw DomainError("unknown disorder model '" + text + "' (expected rsd or asd)");
}

CouplingRange DisorderSpec::range_for(int n_sites) const {
  if (perturbed_range) {
    const CouplingRange r = *perturbed_range;
    if (r.first < 1 || r.last > n_sites - 1) {
      throw DomainError("perturbed range must lie within couplings 1..N-1");
    }
    return r;
  }
  return CouplingRange{2, n_sites - 2};
}

double disorder_draw(const DisorderSpec& spec, std::uint64_t realization, int coupling_index) {
  const double u = keyed_uniform(spec.master_seed, realization,
                                 static_cast<std::uint32_t>(coupling_index));
  return spec.epsilon * (2.0 * u - 1.0);
}

CouplingProfile perturb(const CouplingProfile& profile, const DisorderSpec& spec,
                        std::uint64_t realization) {
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
    throw DomainError("disorder strength must be finite and nonnegative");
  }
  const CouplingRange range = spec.range_for(profile.n_sites());
  const double jmax = profile.j_max();
  std::vector<double> j(profile.couplings().begin(), profile.couplings().end());
  for (int i = range.first; i <= range.last; ++i) {
    const double delta = disorder_draw(spec, realization, i);
    double& ji = j[static_cast<std::size_t>(i - 1)];
    ji += (spec.model == DisorderModel::rsd ? ji : jmax) * delta;
  }
  return profile.with_couplings(std::move(j), ProfileKind::custom);
}

EnsembleResult ensemble_fidelity(const CouplingProfile& profile, const DisorderSpec& spec,
                                 double tau, int n_realizations, EnsembleOptions options) {
  if (!(tau > 0.0)) throw DomainError("readout time must be positive");
  if (n_realizations < 1) throw DomainError("need at least one disorder realization");

  const auto count = static_cast<std::size_t>(n_realizations);
  std::vector<double> amp(count), fid(count);
  parallel_for(count, options.threads, [&](std::size_t r) {
    const SpectralData spec_r = diagonalize(perturb(profile, spec, r));
    amp[r] = std::min(transfer_amplitude(spec_r, tau), 1.0);
    fid[r] = averaged_fidelity(amp[r]);
  });

  EnsembleResult out;
  out.n_realizations = n_realizations;
  double sum_f = 0.0, sum_F = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    sum_f += amp[r];
    sum_F += fid[r];
  }
  out.mean_f = sum_f / static_cast<double>(count);
  out.mean_F = sum_F / static_cast<double>(count);
  if (count > 1) {
    double ss = 0.0;
    for (double x : fid) ss += (x - out.mean_F) * (x - out.mean_F);
    out.stderr_F = std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count));
  }
  if (options.keep_samples) out.per_realization_F = std::move(fid);
  return out;
}

}  // namespace spinchain
