#include "spinchain/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

#include "spinchain/errors.hpp"
#include "spinchain/parallel.hpp"
#include "spinchain/philox.hpp"
#include "spinchain/spectral_dynamics.hpp"

namespace spinchain {

namespace {

constexpr double kGoldenRatio = 1.6180339887498949;
constexpr double kDefaultWeakAlpha = 0.01;
constexpr double kAlphaGridStep = 0.02;
constexpr double kAlphaTolerance = 1e-4;
constexpr int kMaxWindowAdvances = 4;

std::string shortest_repr(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Golden-section search for the maximum of a unimodal f on [a, b].
template <class Fn>
std::pair<double, double> golden_maximize(Fn&& f, double a, double b, double tol) {
  double c = b - (b - a) / kGoldenRatio;
  double d = a + (b - a) / kGoldenRatio;
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) / kGoldenRatio;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) / kGoldenRatio;
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

double first_arrival_fidelity(int n, double alpha) {
  try {
    return transfer_time(alpha_boundary_profile(n, alpha), 0.5 * n).fidelity;
  } catch (const SearchFailedError&) {
    return 0.5;
  }
}

}  // namespace

std::string to_string(Parity parity) {
  switch (parity) {
    case Parity::odd:
      return "odd";
    case Parity::even:
      return "even";
    case Parity::any:
      break;
  }
  return "any";
}

Parity parity_of(int n) { return n % 2 == 0 ? Parity::even : Parity::odd; }

std::string SystemKind::label() const {
  switch (tag) {
    case SystemTag::pst_linear:
      return "pst_linear";
    case SystemTag::pst_quadratic:
      return "pst_quadratic";
    case SystemTag::alpha_opt:
      return "alpha_opt";
    case SystemTag::alpha_weak:
      return "alpha_weak(" + shortest_repr(alpha) + ")";
    case SystemTag::homogeneous:
      break;
  }
  return "homogeneous";
}

bool SystemKind::admits(int n) const { return parity == Parity::any || parity == parity_of(n); }

SystemKind parse_system_kind(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), '-', '_');
  SystemKind kind;
  if (const auto colon = s.rfind(':'); colon != std::string::npos) {
    const std::string suffix = s.substr(colon + 1);
    if (suffix == "odd") {
      kind.parity = Parity::odd;
    } else if (suffix == "even") {
      kind.parity = Parity::even;
    } else if (suffix != "any") {
      throw DomainError("unknown parity policy '" + suffix + "'");
    }
    s.resize(colon);
  }
  if (s == "pst_linear") {
    kind.tag = SystemTag::pst_linear;
  } else if (s == "pst_quadratic") {
    kind.tag = SystemTag::pst_quadratic;
  } else if (s == "alpha_opt") {
    kind.tag = SystemTag::alpha_opt;
  } else if (s == "homogeneous") {
    kind.tag = SystemTag::homogeneous;
  } else if (s == "alpha_weak") {
    kind.tag = SystemTag::alpha_weak;
    kind.alpha = kDefaultWeakAlpha;
  } else if (s.starts_with("alpha_weak(") && s.ends_with(")")) {
    kind.tag = SystemTag::alpha_weak;
    const std::string num = s.substr(11, s.size() - 12);
    const auto res = std::from_chars(num.data(), num.data() + num.size(), kind.alpha);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
      throw DomainError("cannot parse boundary coupling in '" + text + "'");
    }
    if (!(kind.alpha > 0.0 && kind.alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
  } else {
    throw DomainError("unknown system kind '" + text + "'");
  }
  return kind;
}

TransferPeak transfer_time(const CouplingProfile& profile, double estimate) {
  if (!(estimate > 0.0)) throw DomainError("transfer time estimate must be positive");
  const double t0 = 0.5 * estimate;
  const double dt = std::min(0.05, estimate / 2000.0);
  const auto count = static_cast<std::size_t>(std::floor(estimate / dt)) + 1;

  const SpectralData spec = diagonalize(profile);
  const std::vector<double> f = transfer_amplitude_grid(spec, t0, dt, count);
  const auto best = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  const double f_best = std::min(f[best], 1.0);
  if (averaged_fidelity(f_best) <= 0.5 + 1e-6) {
    throw SearchFailedError("no fidelity maximum above 1/2 in the search window");
  }
  if (best == 0 || best + 1 == count) {
    throw SearchFailedError("fidelity maximum lies on the search window boundary");
  }

  const double lo = t0 + static_cast<double>(best - 1) * dt;
  const double hi = t0 + static_cast<double>(best + 1) * dt;
  auto amp = [&](double t) { return transfer_amplitude(spec, t); };
  auto [t_peak, f_peak] = golden_maximize(amp, lo, hi, 1e-10 * std::max(1.0, estimate));
  if (f_peak < f[best]) {
    t_peak = t0 + static_cast<double>(best) * dt;
    f_peak = f[best];
  }
  return TransferPeak{t_peak, averaged_fidelity(std::min(f_peak, 1.0))};
}

double analytic_tau_estimate(const SystemKind& system, int n) {
  using std::numbers::pi;
  if (n < 2) throw DomainError("chain length must be at least 2");
  switch (system.tag) {
    case SystemTag::pst_linear:
      return pi * n / 4.0;
    case SystemTag::pst_quadratic:
      return pi * n * static_cast<double>(n) / 8.0;
    case SystemTag::alpha_opt:
    case SystemTag::homogeneous:
      return n / 2.0;
    case SystemTag::alpha_weak: {
      const double a = system.alpha;
      if (!(a > 0.0 && a <= 1.0)) throw DomainError("alpha_weak needs alpha in (0, 1]");
      return n % 2 == 1 ? pi * std::sqrt(static_cast<double>(n)) / (2.0 * a)
                        : pi / (2.0 * a * a);
    }
  }
  throw DomainError("no transfer time estimate for this system");
}

AlphaOptimum optimize_alpha(int n) {
  if (n < 4) throw DomainError("alpha optimization needs n >= 4");
  const int steps = static_cast<int>(std::lround(1.0 / kAlphaGridStep));
  double best_alpha = 1.0, best_f = -1.0;
  for (int i = 1; i <= steps; ++i) {
    const double a = kAlphaGridStep * i;
    const double f = first_arrival_fidelity(n, a);
    if (f > best_f) {
      best_f = f;
      best_alpha = a;
    }
  }
  const double lo = std::max(kAlphaGridStep / 2.0, best_alpha - kAlphaGridStep);
  const double hi = std::min(1.0, best_alpha + kAlphaGridStep);
  auto [a_ref, f_ref] = golden_maximize([n](double a) { return first_arrival_fidelity(n, a); },
                                        lo, hi, kAlphaTolerance);
  if (f_ref < best_f) a_ref = best_alpha;
  const TransferPeak peak = transfer_time(alpha_boundary_profile(n, a_ref), 0.5 * n);
  return AlphaOptimum{a_ref, peak.tau, peak.fidelity};
}

namespace {

// The window is advanced while the dominant maximum sits on its right edge,
// which happens for chains whose first arrival comes later than the closed
// form suggests (quadratic spectra at even N are not strictly PST).
TransferPeak advancing_transfer_time(const CouplingProfile& profile, double estimate) {
  for (int attempt = 0;; ++attempt) {
    try {
      return transfer_time(profile, estimate);
    } catch (const SearchFailedError&) {
      if (attempt == kMaxWindowAdvances) throw;
      const SpectralData spec = diagonalize(profile);
      const double right = transfer_amplitude(spec, 1.5 * estimate);
      const double inner = transfer_amplitude(spec, 1.5 * estimate - std::min(0.05, estimate / 2000.0));
      if (!(right > inner)) throw;
      estimate *= 1.5;
    }
  }
}

}  // namespace

PreparedSystem prepare_system(const SystemKind& system, int n, AlphaOptPolicy policy) {
  switch (system.tag) {
    case SystemTag::pst_linear: {
      CouplingProfile p = pst_linear_profile(n);
      const TransferPeak peak = transfer_time(p, analytic_tau_estimate(system, n));
      return PreparedSystem{std::move(p), peak.tau, peak.fidelity};
    }
    case SystemTag::pst_quadratic: {
      CouplingProfile p = pst_quadratic_profile(n);
      const TransferPeak peak = advancing_transfer_time(p, analytic_tau_estimate(system, n));
      return PreparedSystem{std::move(p), peak.tau, peak.fidelity};
    }
    case SystemTag::homogeneous: {
      CouplingProfile p = homogeneous_profile(n);
      const TransferPeak peak = transfer_time(p, analytic_tau_estimate(system, n));
      return PreparedSystem{std::move(p), peak.tau, peak.fidelity};
    }
    case SystemTag::alpha_weak: {
      CouplingProfile p = alpha_boundary_profile(n, system.alpha);
      const TransferPeak peak = transfer_time(p, analytic_tau_estimate(system, n));
      return PreparedSystem{std::move(p), peak.tau, peak.fidelity};
    }
    case SystemTag::alpha_opt: {
      if (policy == AlphaOptPolicy::formula) {
        CouplingProfile p = alpha_boundary_profile(n, std::pow(static_cast<double>(n), -1.0 / 6.0));
        const TransferPeak peak = transfer_time(p, analytic_tau_estimate(system, n));
        return PreparedSystem{std::move(p), peak.tau, peak.fidelity};
      }
      const AlphaOptimum opt = optimize_alpha(n);
      return PreparedSystem{alpha_boundary_profile(n, opt.alpha), opt.tau, opt.fidelity};
    }
  }
  throw DomainError("unknown system kind");
}

const SweepRow* SweepTable::find(const std::string& system, int n, double epsilon,
                                 DisorderModel model) const {
  for (const SweepRow& r : rows) {
    if (r.system == system && r.n == n && r.epsilon == epsilon && r.model == model) return &r;
  }
  return nullptr;
}

std::uint64_t column_seed(std::uint64_t master_seed, const std::string& system, int n) {
  return mix64(master_seed ^ mix64(fnv1a(system) ^ mix64(static_cast<std::uint64_t>(n))));
}

std::vector<int> n_range(int first, int last, int step) {
  if (step <= 0 || last < first) throw DomainError("invalid chain length range");
  std::vector<int> out;
  for (int n = first; n <= last; n += step) out.push_back(n);
  return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi >= lo) || count < 1) throw DomainError("invalid log grid");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

SweepTable run_sweep(const SweepConfig& config) {
  if (config.systems.empty() || config.n_values.empty() || config.epsilons.empty() ||
      config.models.empty()) {
    throw DomainError("sweep grids must be nonempty");
  }
  if (config.n_realizations < 1) throw DomainError("need at least one disorder realization");

  std::vector<int> ns = config.n_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<double> eps = config.epsilons;
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  std::vector<DisorderModel> models;
  for (DisorderModel m : config.models) {
    if (std::find(models.begin(), models.end(), m) == models.end()) models.push_back(m);
  }

  struct Column {
    SystemKind system;
    std::string label;
    int n;
    std::optional<PreparedSystem> prepared;
    std::string error;
  };
  std::vector<Column> columns;
  for (const SystemKind& s : config.systems) {
    const std::string label = s.label();
    for (int n : ns) {
      if (!s.admits(n)) continue;
      const bool duplicate = std::any_of(columns.begin(), columns.end(), [&](const Column& c) {
        return c.label == label && c.n == n;
      });
      if (!duplicate) columns.push_back(Column{s, label, n, std::nullopt, {}});
    }
  }

  parallel_for(columns.size(), config.threads, [&](std::size_t i) {
    Column& c = columns[i];
    try {
      c.prepared = prepare_system(c.system, c.n, config.alpha_policy);
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });

  struct Cell {
    std::size_t column;
    DisorderModel model;
    double epsilon;
    std::optional<EnsembleResult> result;
    std::string error;
  };
  std::vector<Cell> cells;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (DisorderModel m : models) {
      for (double e : eps) cells.push_back(Cell{c, m, e, std::nullopt, {}});
    }
  }

  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    Cell& cell = cells[i];
    const Column& col = columns[cell.column];
    if (!col.prepared) {
      cell.error = col.error;
      return;
    }
    try {
      DisorderSpec spec;
      spec.model = cell.model;
      spec.epsilon = cell.epsilon;
      spec.master_seed = column_seed(config.master_seed, col.label, col.n);
      cell.result = ensemble_fidelity(col.prepared->profile, spec, col.prepared->tau,
                                      config.n_realizations);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  SweepTable table;
  for (const Cell& cell : cells) {
    const Column& col = columns[cell.column];
    if (cell.result) {
      table.rows.push_back(SweepRow{col.label, col.n, cell.epsilon, cell.model, col.prepared->tau,
                                    cell.result->mean_F, cell.result->stderr_F,
                                    cell.result->n_realizations, config.master_seed});
    } else {
      table.failures.push_back(CellFailure{col.label, col.n, cell.epsilon, cell.model, cell.error});
    }
  }
  return table;
}

ContourPoints extract_contour(const SweepTable& table, const SystemKind& system,
                              DisorderModel model, double level) {
  const std::string label = system.label();
  std::map<int, std::vector<std::pair<double, double>>> columns;
  for (const SweepRow& r : table.rows) {
    if (r.system != label || r.model != model || !system.admits(r.n)) continue;
    if (r.epsilon > 0.0) columns[r.n].emplace_back(r.epsilon, r.mean_F);
  }

  ContourPoints out;
  for (auto& [n, column] : columns) {
    std::sort(column.begin(), column.end());
    std::optional<double> crossing;
    if (!column.empty() && column.front().second >= level) {
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        const auto [e0, f0] = column[i];
        const auto [e1, f1] = column[i + 1];
        if (f0 >= level && f1 < level) {
          const double x0 = std::log(e0), x1 = std::log(e1);
          crossing = std::exp(x0 + (level - f0) * (x1 - x0) / (f1 - f0));
          break;
        }
      }
    }
    if (crossing) {
      out.points.push_back(ContourPoint{n, *crossing});
    } else {
      out.skipped.push_back(n);
    }
  }
  if (out.points.size() < 3) {
    throw InsufficientDataError("only " + std::to_string(out.points.size()) +
                                " chain lengths bracket the fidelity level for " + label);
  }
  return out;
}

PowerLawFit fit_power_law(std::span<const ContourPoint> points) {
  if (points.size() < 3) throw FitError("power-law fit needs at least three points");
  const auto m = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const ContourPoint& p : points) {
    if (!(p.n > 0 && p.epsilon > 0.0)) throw FitError("power-law fit needs positive data");
    mx += std::log(p.epsilon);
    my += std::log(static_cast<double>(p.n));
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const ContourPoint& p : points) {
    const double dx = std::log(p.epsilon) - mx;
    const double dy = std::log(static_cast<double>(p.n)) - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 1e-24) || !(syy > 1e-24)) {
    throw FitError("power-law fit input is degenerate in one variable");
  }
  const double beta = -sxy / sxx;
  return PowerLawFit{beta, std::exp(my + beta * mx), sxy * sxy / (sxx * syy)};
}

ContourFit contour_fit(const SweepTable& table, const SystemKind& system, DisorderModel model,
                       double level) {
  ContourFit out;
  out.system = system.label();
  out.parity = system.parity;
  out.model = model;
  out.level = level;
  out.contour = extract_contour(table, system, model, level);
  out.fit = fit_power_law(out.contour.points);
  return out;
}

std::optional<double> find_crossover(const SweepTable& table, const SystemKind& system_a,
                                     int n_a, const SystemKind& system_b, int n_b,
                                     DisorderModel model) {
  const std::string la = system_a.label(), lb = system_b.label();
  std::map<double, double> fa, fb;
  for (const SweepRow& r : table.rows) {
    if (r.model != model || !(r.epsilon > 0.0)) continue;
    if (r.system == la && r.n == n_a) fa[r.epsilon] = r.mean_F;
    if (r.system == lb && r.n == n_b) fb[r.epsilon] = r.mean_F;
  }

  std::optional<std::pair<double, double>> last;  // (log eps, difference) with nonzero sign
  for (const auto& [e, f] : fa) {
    const auto it = fb.find(e);
    if (it == fb.end()) continue;
    const double d = f - it->second;
    if (d == 0.0) continue;
    const double x = std::log(e);
    if (last && (last->second > 0.0) != (d > 0.0)) {
      const auto [x0, d0] = *last;
      return std::exp(x0 + d0 / (d0 - d) * (x - x0));
    }
    last = std::pair{x, d};
  }
  return std::nullopt;
}

}  // namespace spinchain
