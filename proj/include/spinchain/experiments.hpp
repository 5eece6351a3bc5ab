#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinchain/chain_profiles.hpp"
#include "spinchain/disorder.hpp"

namespace spinchain {

enum class SystemTag { pst_linear, pst_quadratic, alpha_opt, alpha_weak, homogeneous };
enum class Parity { any, odd, even };

std::string to_string(Parity parity);
Parity parity_of(int n);

/// A chain family plus the chain lengths it is evaluated at.
struct SystemKind {
  SystemTag tag = SystemTag::pst_linear;
  /// Boundary coupling for alpha_weak.
  double alpha = 0.0;
  Parity parity = Parity::any;

  /// Row label, without parity: pst_linear, pst_quadratic, alpha_opt,
  /// alpha_weak(<alpha>), homogeneous.
  std::string label() const;
  bool admits(int n) const;

  friend bool operator==(const SystemKind&, const SystemKind&) = default;
};

/// Parses a label, optionally suffixed with ":odd" / ":even". Dashes are
/// accepted in place of underscores, and "alpha_weak" alone means alpha 0.01.
SystemKind parse_system_kind(const std::string& text);

struct TransferPeak {
  double tau;
  double fidelity;
};

/// Dominant first-arrival peak of F(t) in [0.5, 1.5] * estimate: dense
/// sampling at step min(0.05, estimate / 2000) followed by golden-section
/// refinement around the best sample.
TransferPeak transfer_time(const CouplingProfile& profile, double estimate);

/// Closed-form transfer time of each family, in units of 1/J_max.
double analytic_tau_estimate(const SystemKind& system, int n);

struct AlphaOptimum {
  double alpha;
  double tau;
  double fidelity;
};

/// Boundary coupling maximizing the ballistic first-arrival fidelity (window
/// around t = N/2): grid over (0, 1] at step 0.02, then golden section to 1e-4.
AlphaOptimum optimize_alpha(int n);

enum class AlphaOptPolicy { reoptimize, formula };

struct PreparedSystem {
  CouplingProfile profile;
  double tau;
  double fidelity;
};

/// Unperturbed profile of a family at length n and its readout time.
PreparedSystem prepare_system(const SystemKind& system, int n,
                              AlphaOptPolicy policy = AlphaOptPolicy::reoptimize);

struct SweepRow {
  std::string system;
  int n = 0;
  double epsilon = 0.0;
  DisorderModel model = DisorderModel::rsd;
  double tau = 0.0;
  double mean_F = 0.0;
  double stderr_F = 0.0;
  int n_realizations = 0;
  std::uint64_t master_seed = 0;
};

struct CellFailure {
  std::string system;
  int n = 0;
  double epsilon = 0.0;
  DisorderModel model = DisorderModel::rsd;
  std::string message;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<CellFailure> failures;

  bool complete() const { return failures.empty(); }
  const SweepRow* find(const std::string& system, int n, double epsilon,
                       DisorderModel model) const;
};

struct SweepConfig {
  std::vector<SystemKind> systems;
  std::vector<int> n_values;
  std::vector<double> epsilons;
  std::vector<DisorderModel> models;
  int n_realizations = 500;
  std::uint64_t master_seed = 0;
  int threads = 1;
  AlphaOptPolicy alpha_policy = AlphaOptPolicy::reoptimize;
};

/// Disorder stream seed of one (system, N) column. RSD and ASD share it, so
/// the two models coincide exactly on chains with uniform channel couplings.
std::uint64_t column_seed(std::uint64_t master_seed, const std::string& system, int n);

/// Per-cell failures are recorded in the table rather than thrown.
SweepTable run_sweep(const SweepConfig& config);

/// n values 'first..last' in steps; ascending.
std::vector<int> n_range(int first, int last, int step);
/// `count` log-spaced values over [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

struct ContourPoint {
  int n;
  double epsilon;
};

struct ContourPoints {
  std::vector<ContourPoint> points;
  /// Chain lengths whose fidelity column never brackets the level.
  std::vector<int> skipped;
};

/// Per N, the disorder strength where mean_F crosses `level`, by linear
/// interpolation in log epsilon between the bracketing grid points. Throws
/// InsufficientDataError when fewer than three lengths bracket the level.
ContourPoints extract_contour(const SweepTable& table, const SystemKind& system,
                              DisorderModel model, double level);

struct PowerLawFit {
  double beta;
  double constant;
  double r_squared;
};

/// Least squares of log N against log epsilon; N epsilon^beta = constant.
PowerLawFit fit_power_law(std::span<const ContourPoint> points);

struct ContourFit {
  std::string system;
  Parity parity = Parity::any;
  DisorderModel model = DisorderModel::rsd;
  double level = 0.0;
  ContourPoints contour;
  PowerLawFit fit{};
};

ContourFit contour_fit(const SweepTable& table, const SystemKind& system, DisorderModel model,
                       double level);

/// First disorder strength (log-interpolated) where mean_F of system_a at
/// n_a and system_b at n_b change order; nullopt when they never do.
std::optional<double> find_crossover(const SweepTable& table, const SystemKind& system_a,
                                     int n_a, const SystemKind& system_b, int n_b,
                                     DisorderModel model);

inline std::optional<double> find_crossover(const SweepTable& table, const SystemKind& system_a,
                                            const SystemKind& system_b, int n,
                                            DisorderModel model) {
  return find_crossover(table, system_a, n, system_b, n, model);
}

}  // namespace spinchain
