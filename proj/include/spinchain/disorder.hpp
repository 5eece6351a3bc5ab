#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinchain/chain_profiles.hpp"

namespace spinchain {

/// rsd: Delta J_i = J_i delta_i.  asd: Delta J_i = J_max delta_i.
enum class DisorderModel { rsd, asd };

std::string to_string(DisorderModel model);
DisorderModel parse_disorder_model(const std::string& text);

/// Inclusive, 1-based range of coupling indices that receive disorder.
struct CouplingRange {
  int first;
  int last;
};

struct DisorderSpec {
  DisorderModel model = DisorderModel::rsd;
  double epsilon = 0.0;
  /// Defaults to the channel couplings 2..N-2; the boundary couplings stay ideal.
  std::optional<CouplingRange> perturbed_range;
  std::uint64_t master_seed = 0;

  CouplingRange range_for(int n_sites) const;
};

/// delta_i, uniform on [-epsilon, epsilon), for one (realization, coupling index).
double disorder_draw(const DisorderSpec& spec, std::uint64_t realization, int coupling_index);

/// One static-disorder realization of an unperturbed profile. Tagged custom.
CouplingProfile perturb(const CouplingProfile& profile, const DisorderSpec& spec,
                        std::uint64_t realization);

struct EnsembleResult {
  int n_realizations = 0;
  double mean_F = 0.0;
  double stderr_F = 0.0;
  double mean_f = 0.0;
  std::vector<double> per_realization_F;
};

struct EnsembleOptions {
  int threads = 1;
  bool keep_samples = false;
};

/// Disorder-averaged fidelity at the fixed readout time tau. Realizations
/// 0..n-1 are evaluated independently and reduced in index order, so the
/// result does not depend on the thread count.
EnsembleResult ensemble_fidelity(const CouplingProfile& profile, const DisorderSpec& spec,
                                 double tau, int n_realizations, EnsembleOptions options = {});

}  // namespace spinchain
