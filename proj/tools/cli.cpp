#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinchain/chain_profiles.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/experiments.hpp"
#include "spinchain/io.hpp"
#include "spinchain/parallel.hpp"
#include "spinchain/spectral_dynamics.hpp"

namespace spinchain::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;
constexpr double kFig4Level = 0.9;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw Error("failed writing '" + path + "'");
}

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SPINCHAIN_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("SPINCHAIN_SEED is not an unsigned integer");
  }
  return kDefaultSeed;
}

std::string canonical_system(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

struct BuiltProfile {
  CouplingProfile profile;
  double tau_estimate;
};

BuiltProfile build_profile(const std::string& system_arg, int n, std::optional<double> alpha,
                           bool alpha_formula) {
  if (n <= 0) throw UsageError("--n is required and must be positive");
  const std::string system = canonical_system(system_arg);
  if (system == "alpha") {
    if (!alpha) throw UsageError("--system alpha needs --alpha");
    return {alpha_boundary_profile(n, *alpha), n / 2.0};
  }
  if (system == "alpha-weak") {
    SystemKind kind{SystemTag::alpha_weak, alpha.value_or(0.01)};
    return {alpha_boundary_profile(n, kind.alpha), analytic_tau_estimate(kind, n)};
  }
  if (system == "alpha-opt") {
    const double a = alpha_formula ? std::pow(static_cast<double>(n), -1.0 / 6.0)
                                   : optimize_alpha(n).alpha;
    return {alpha_boundary_profile(n, a), n / 2.0};
  }
  const SystemKind kind = parse_system_kind(system);
  const double est = analytic_tau_estimate(kind, n);
  switch (kind.tag) {
    case SystemTag::pst_linear:
      return {pst_linear_profile(n), est};
    case SystemTag::pst_quadratic:
      return {pst_quadratic_profile(n), est};
    case SystemTag::homogeneous:
      return {homogeneous_profile(n), est};
    default:
      break;
  }
  throw UsageError("unknown --system '" + system_arg + "'");
}

std::string spectrum_summary(const CouplingProfile& profile) {
  const SpectralData spec = diagonalize(profile);
  double min_gap = std::numeric_limits<double>::infinity(), max_gap = 0.0;
  for (std::size_t k = 1; k < spec.energies.size(); ++k) {
    const double g = spec.energies[k] - spec.energies[k - 1];
    min_gap = std::min(min_gap, g);
    max_gap = std::max(max_gap, g);
  }
  std::ostringstream ss;
  ss << "N=" << profile.n_sites() << " couplings=" << profile.couplings().size()
     << " kind=" << profile.kind_tag()
     << " J_max/J_min=" << io::format_number(profile.j_max() / profile.j_min(), 12)
     << " min_gap=" << io::format_number(min_gap, 12)
     << " max_gap=" << io::format_number(max_gap, 12) << '\n';
  return ss.str();
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw UsageError("time grid is empty (--t-points must be >= 1)");
  if (!(hi >= lo)) throw UsageError("--t-max must not be smaller than --t-min");
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return t;
}

std::string curve_json(const TransferCurve& c) {
  nlohmann::json j = {{"t", c.times}, {"f", c.amplitudes}, {"F", c.fidelities}};
  return j.dump(2) + "\n";
}

std::string strip_csv(const std::string& path) {
  return path.ends_with(".csv") ? path.substr(0, path.size() - 4) : path;
}

// Sweep grids of the figure presets.
SweepConfig preset_sweep(const std::string& name) {
  const std::vector<double> eps = log_grid(1e-3, 0.3, 25);
  std::vector<int> both = n_range(50, 200, 10);
  const std::vector<int> odd = n_range(51, 201, 10);
  both.insert(both.end(), odd.begin(), odd.end());
  const std::vector<DisorderModel> rsd_asd{DisorderModel::rsd, DisorderModel::asd};

  SweepConfig c;
  c.epsilons = eps;
  if (name == "fig2a") {
    c.systems = {parse_system_kind("pst_linear"), parse_system_kind("alpha_opt")};
    c.n_values = {200};
    c.models = rsd_asd;
  } else if (name == "fig2bcd") {
    c.systems = {parse_system_kind("pst_linear"), parse_system_kind("alpha_opt")};
    c.n_values = n_range(50, 200, 10);
    c.models = rsd_asd;
  } else if (name == "fig3ab") {
    c.systems = {parse_system_kind("pst_quadratic"), parse_system_kind("alpha_weak(0.01)")};
    c.n_values = {200, 201};
    c.models = rsd_asd;
  } else if (name == "fig3cd") {
    c.systems = {parse_system_kind("alpha_weak(0.01)"), parse_system_kind("pst_quadratic:odd")};
    c.n_values = both;
    c.models = rsd_asd;
  } else if (name == "fig4") {
    c.systems = {parse_system_kind("pst_linear:even"), parse_system_kind("alpha_opt:even"),
                 parse_system_kind("pst_quadratic"), parse_system_kind("alpha_weak(0.01)")};
    c.n_values = both;
    c.models = {DisorderModel::rsd};
  } else {
    throw UsageError("unknown sweep preset '" + name +
                     "' (expected fig2a, fig2bcd, fig3ab, fig3cd or fig4)");
  }
  return c;
}

std::vector<SystemKind> fig4_contour_systems() {
  return {parse_system_kind("pst_linear:even"),     parse_system_kind("alpha_opt:even"),
          parse_system_kind("pst_quadratic:odd"),   parse_system_kind("pst_quadratic:even"),
          parse_system_kind("alpha_weak(0.01):odd"), parse_system_kind("alpha_weak(0.01):even")};
}

SweepTable load_table(const std::string& path) {
  if (path.empty()) throw UsageError("--table is required");
  std::istringstream in(slurp(path));
  return io::read_sweep_csv(in);
}

std::string sweep_json(const SweepTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& r : table.rows) {
    rows.push_back({{"system", r.system},
                    {"parity", to_string(parity_of(r.n))},
                    {"N", r.n},
                    {"epsilon", r.epsilon},
                    {"model", to_string(r.model)},
                    {"tau", r.tau},
                    {"mean_F", r.mean_F},
                    {"stderr_F", r.stderr_F},
                    {"n_real", r.n_realizations},
                    {"master_seed", r.master_seed}});
  }
  nlohmann::json j = {{"complete", table.complete()}, {"rows", rows}};
  return j.dump(2) + "\n";
}

std::vector<int> parse_n_range(const std::string& spec) {
  int a = 0, b = 0, step = 1;
  char c1 = 0, c2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> a >> c1 >> b) || c1 != ':') throw UsageError("--n-range expects first:last[:step]");
  if (ss >> c2 >> step) {
    if (c2 != ':') throw UsageError("--n-range expects first:last[:step]");
  }
  return n_range(a, b, step);
}

std::vector<double> parse_epsilon_grid(const std::string& spec) {
  double lo = 0, hi = 0;
  int count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream ss(spec);
  if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':') {
    throw UsageError("--epsilon-grid expects lo:hi:count (log-spaced)");
  }
  return log_grid(lo, hi, count);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum state transfer through engineered and boundary-controlled XX chains", "spinchain"};
  app.require_subcommand(1);

  bool alpha_formula = false;

  // profile
  std::string p_system, p_out;
  int p_n = 0;
  std::optional<double> p_alpha;
  auto* profile_cmd = app.add_subcommand("profile", "Build a coupling profile and summarize its spectrum");
  profile_cmd->add_option("--system", p_system, "homogeneous|alpha|alpha-opt|alpha-weak|pst-linear|pst-quadratic")->required();
  profile_cmd->add_option("--n", p_n, "Chain length")->required();
  profile_cmd->add_option("--alpha", p_alpha, "Boundary coupling");
  profile_cmd->add_option("--out", p_out, "Profile record path (default: stdout)");
  profile_cmd->add_flag("--alpha-formula", alpha_formula, "Use N^(-1/6) instead of re-optimizing alpha_opt");

  // spectrum
  std::string s_system, s_out, s_preset;
  int s_n = 0;
  std::optional<double> s_alpha;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Export energies and first-site weights");
  spectrum_cmd->add_option("--system", s_system, "System kind");
  spectrum_cmd->add_option("--n", s_n, "Chain length");
  spectrum_cmd->add_option("--alpha", s_alpha, "Boundary coupling");
  spectrum_cmd->add_option("--out", s_out, "CSV path (default: stdout)");
  spectrum_cmd->add_option("--preset", s_preset, "fig1");
  spectrum_cmd->add_flag("--alpha-formula", alpha_formula, "Use N^(-1/6) for alpha-opt");

  // evolve
  std::string e_system, e_out, e_preset, e_format = "csv";
  int e_n = 0, e_points = 1001;
  std::optional<double> e_alpha, e_tmax;
  double e_tmin = 0.0;
  auto* evolve_cmd = app.add_subcommand("evolve", "Write the fidelity curve F(t) of an unperturbed chain");
  evolve_cmd->add_option("--system", e_system, "System kind");
  evolve_cmd->add_option("--n", e_n, "Chain length");
  evolve_cmd->add_option("--alpha", e_alpha, "Boundary coupling");
  evolve_cmd->add_option("--t-min", e_tmin, "First time");
  evolve_cmd->add_option("--t-max", e_tmax, "Last time (default: twice the transfer-time estimate)");
  evolve_cmd->add_option("--t-points", e_points, "Number of time samples");
  evolve_cmd->add_option("--out", e_out, "Output path (default: stdout)");
  evolve_cmd->add_option("--format", e_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  evolve_cmd->add_option("--preset", e_preset, "fig1");
  evolve_cmd->add_flag("--alpha-formula", alpha_formula, "Use N^(-1/6) for alpha-opt");

  // sweep
  std::vector<std::string> w_systems, w_models;
  std::vector<int> w_n;
  std::vector<double> w_eps;
  std::string w_nrange, w_epsgrid, w_out, w_preset, w_format = "csv";
  int w_realizations = 500, w_threads = default_thread_count();
  std::optional<std::uint64_t> w_seed;
  bool w_no_timestamp = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "Disorder-averaged fidelity over (system, N, epsilon, model)");
  sweep_cmd->add_option("--system", w_systems, "System kind, optionally :odd/:even (repeatable)");
  sweep_cmd->add_option("--n", w_n, "Chain lengths (repeatable)");
  sweep_cmd->add_option("--n-range", w_nrange, "first:last[:step]");
  sweep_cmd->add_option("--epsilon", w_eps, "Disorder strengths (repeatable)");
  sweep_cmd->add_option("--epsilon-grid", w_epsgrid, "lo:hi:count, log-spaced");
  sweep_cmd->add_option("--model", w_models, "rsd|asd (repeatable)");
  sweep_cmd->add_option("--realizations", w_realizations, "Disorder realizations per cell");
  sweep_cmd->add_option("--seed", w_seed, "Master seed (fallback: SPINCHAIN_SEED)");
  sweep_cmd->add_option("--threads", w_threads, "Worker threads");
  sweep_cmd->add_option("--out", w_out, "Output path (default: stdout)");
  sweep_cmd->add_option("--format", w_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--preset", w_preset, "fig2a|fig2bcd|fig3ab|fig3cd|fig4");
  sweep_cmd->add_flag("--no-timestamp", w_no_timestamp, "Omit the generated-at comment line");
  sweep_cmd->add_flag("--alpha-formula", alpha_formula, "Use N^(-1/6) for alpha_opt");

  // contour
  std::string c_table, c_system, c_model = "rsd", c_out, c_preset;
  double c_level = kFig4Level;
  auto* contour_cmd = app.add_subcommand("contour", "Iso-fidelity contour and power-law fit from a sweep table");
  contour_cmd->add_option("--table", c_table, "Sweep CSV")->required();
  contour_cmd->add_option("--system", c_system, "System kind with optional :odd/:even");
  contour_cmd->add_option("--model", c_model, "rsd|asd");
  contour_cmd->add_option("--level", c_level, "Fidelity level");
  contour_cmd->add_option("--out", c_out, "JSON path (default: stdout)");
  contour_cmd->add_option("--preset", c_preset, "fig4");

  // crossover
  std::string x_table, x_sys_a, x_sys_b, x_model = "rsd", x_out;
  int x_na = 0;
  std::optional<int> x_nb;
  auto* crossover_cmd = app.add_subcommand("crossover", "Disorder strength where two fidelity curves cross");
  crossover_cmd->add_option("--table", x_table, "Sweep CSV")->required();
  crossover_cmd->add_option("--system-a", x_sys_a, "First system")->required();
  crossover_cmd->add_option("--system-b", x_sys_b, "Second system")->required();
  crossover_cmd->add_option("--n", x_na, "Chain length of system a")->required();
  crossover_cmd->add_option("--n-b", x_nb, "Chain length of system b (default: --n)");
  crossover_cmd->add_option("--model", x_model, "rsd|asd");
  crossover_cmd->add_option("--out", x_out, "JSON path");

  // fit
  std::string f_contour, f_out;
  auto* fit_cmd = app.add_subcommand("fit", "Fit N eps^beta = const to contour points");
  fit_cmd->add_option("--contour", f_contour, "Contour JSON")->required();
  fit_cmd->add_option("--out", f_out, "JSON path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*profile_cmd) {
      const BuiltProfile built = build_profile(p_system, p_n, p_alpha, alpha_formula);
      std::ostringstream record;
      io::write_profile_record(record, built.profile);
      emit(p_out, record.str(), out);
      out << spectrum_summary(built.profile);
      return 0;
    }

    if (*spectrum_cmd) {
      std::ostringstream csv;
      if (s_preset == "fig1") {
        io::write_spectrum_csv(csv, "pst_linear", diagonalize(pst_linear_profile(200)));
        const double a = alpha_formula ? std::pow(200.0, -1.0 / 6.0) : optimize_alpha(200).alpha;
        io::write_spectrum_csv(csv, "alpha_opt", diagonalize(alpha_boundary_profile(200, a)), false);
      } else if (!s_preset.empty()) {
        throw UsageError("unknown spectrum preset '" + s_preset + "' (expected fig1)");
      } else {
        if (s_system.empty()) throw UsageError("--system is required");
        const BuiltProfile built = build_profile(s_system, s_n, s_alpha, alpha_formula);
        io::write_spectrum_csv(csv, canonical_system(s_system), diagonalize(built.profile));
      }
      emit(s_out, csv.str(), out);
      return 0;
    }

    if (*evolve_cmd) {
      auto render = [&](const TransferCurve& curve) {
        std::ostringstream ss;
        if (e_format == "json") {
          ss << curve_json(curve);
        } else {
          io::write_curve_csv(ss, curve);
        }
        return ss.str();
      };
      if (e_preset == "fig1") {
        if (e_out.empty()) throw UsageError("--preset fig1 needs --out (used as a file stem)");
        const double t_max = e_tmax.value_or(3.0 * std::numbers::pi * 200 / 4.0);
        const std::vector<double> times = linspace(e_tmin, t_max, e_points);
        const double a = alpha_formula ? std::pow(200.0, -1.0 / 6.0) : optimize_alpha(200).alpha;
        const std::string stem = strip_csv(e_out);
        const std::string ext = e_format == "json" ? ".json" : ".csv";
        emit(stem + "_pst_linear" + ext, render(fidelity_curve(pst_linear_profile(200), times)), out);
        emit(stem + "_alpha_opt" + ext, render(fidelity_curve(alpha_boundary_profile(200, a), times)), out);
        return 0;
      }
      if (!e_preset.empty()) throw UsageError("unknown evolve preset '" + e_preset + "' (expected fig1)");
      if (e_system.empty()) throw UsageError("--system is required");
      const BuiltProfile built = build_profile(e_system, e_n, e_alpha, alpha_formula);
      const std::vector<double> times =
          linspace(e_tmin, e_tmax.value_or(2.0 * built.tau_estimate), e_points);
      emit(e_out, render(fidelity_curve(built.profile, times)), out);
      return 0;
    }

    if (*sweep_cmd) {
      SweepConfig config;
      if (!w_preset.empty()) config = preset_sweep(w_preset);
      if (!w_systems.empty()) {
        config.systems.clear();
        for (const std::string& s : w_systems) config.systems.push_back(parse_system_kind(s));
      }
      if (!w_n.empty() || !w_nrange.empty()) {
        config.n_values = w_n;
        if (!w_nrange.empty()) {
          const std::vector<int> r = parse_n_range(w_nrange);
          config.n_values.insert(config.n_values.end(), r.begin(), r.end());
        }
      }
      if (!w_eps.empty() || !w_epsgrid.empty()) {
        config.epsilons = w_eps;
        if (!w_epsgrid.empty()) {
          const std::vector<double> g = parse_epsilon_grid(w_epsgrid);
          config.epsilons.insert(config.epsilons.end(), g.begin(), g.end());
        }
      }
      if (!w_models.empty()) {
        config.models.clear();
        for (const std::string& m : w_models) config.models.push_back(parse_disorder_model(m));
      }
      if (config.models.empty()) config.models = {DisorderModel::rsd};
      if (config.systems.empty()) throw UsageError("--system or --preset is required");
      if (config.n_values.empty()) throw UsageError("--n, --n-range or --preset is required");
      if (config.epsilons.empty()) throw UsageError("--epsilon, --epsilon-grid or --preset is required");
      if (w_realizations < 1) throw UsageError("--realizations must be >= 1");
      for (double e : config.epsilons) {
        if (!(e >= 0.0)) throw UsageError("disorder strengths must be nonnegative");
      }
      config.n_realizations = w_realizations;
      config.master_seed = resolve_seed(w_seed);
      config.threads = std::max(1, w_threads);
      config.alpha_policy = alpha_formula ? AlphaOptPolicy::formula : AlphaOptPolicy::reoptimize;

      const SweepTable table = run_sweep(config);
      std::ostringstream ss;
      if (w_format == "json") {
        ss << sweep_json(table);
      } else {
        io::CsvPreamble pre;
        if (!w_no_timestamp) pre.timestamp = utc_timestamp();
        io::write_sweep_csv(ss, table, pre);
      }
      emit(w_out, ss.str(), out);
      std::ostream& log = w_out.empty() ? err : out;
      log << "sweep: " << table.rows.size() << " rows, " << table.failures.size()
          << " failed cells, master_seed=" << config.master_seed << '\n';
      for (const CellFailure& f : table.failures) {
        err << "cell failed: " << f.system << " N=" << f.n << " eps=" << f.epsilon << ' '
            << to_string(f.model) << ": " << f.message << '\n';
      }
      return table.complete() ? 0 : 1;
    }

    if (*contour_cmd) {
      const SweepTable table = load_table(c_table);
      const DisorderModel model = parse_disorder_model(c_model);
      if (c_preset == "fig4") {
        nlohmann::json all = nlohmann::json::array();
        bool ok = true;
        for (const SystemKind& s : fig4_contour_systems()) {
          try {
            const ContourFit fit = contour_fit(table, s, DisorderModel::rsd, kFig4Level);
            all.push_back(io::to_json(fit));
            out << s.label() << ':' << to_string(s.parity)
                << " beta=" << io::format_number(fit.fit.beta, 6)
                << " const=" << io::format_number(fit.fit.constant, 6)
                << " r2=" << io::format_number(fit.fit.r_squared, 6) << '\n';
          } catch (const Error& e) {
            ok = false;
            all.push_back({{"system", s.label()}, {"parity", to_string(s.parity)}, {"error", e.what()}});
            err << s.label() << ':' << to_string(s.parity) << ": " << e.what() << '\n';
          }
        }
        emit(c_out, all.dump(2) + "\n", out);
        return ok ? 0 : 1;
      }
      if (!c_preset.empty()) throw UsageError("unknown contour preset '" + c_preset + "' (expected fig4)");
      if (c_system.empty()) throw UsageError("--system or --preset is required");
      const ContourFit fit = contour_fit(table, parse_system_kind(c_system), model, c_level);
      emit(c_out, io::to_json(fit).dump(2) + "\n", out);
      if (!c_out.empty()) {
        out << "beta=" << io::format_number(fit.fit.beta, 6)
            << " const=" << io::format_number(fit.fit.constant, 6)
            << " r2=" << io::format_number(fit.fit.r_squared, 6) << '\n';
      }
      return 0;
    }

    if (*crossover_cmd) {
      const SweepTable table = load_table(x_table);
      const SystemKind a = parse_system_kind(x_sys_a), b = parse_system_kind(x_sys_b);
      const int nb = x_nb.value_or(x_na);
      const std::optional<double> cross =
          find_crossover(table, a, x_na, b, nb, parse_disorder_model(x_model));
      out << "epsilon_cross=" << (cross ? io::format_number(*cross, 12) : std::string("none"))
          << '\n';
      if (!x_out.empty()) {
        nlohmann::json j = {{"system_a", a.label()}, {"n_a", x_na},     {"system_b", b.label()},
                            {"n_b", nb},             {"model", x_model}};
        j["epsilon_cross"] = cross ? nlohmann::json(*cross) : nlohmann::json(nullptr);
        emit(x_out, j.dump(2) + "\n", out);
      }
      return 0;
    }

    if (*fit_cmd) {
      const nlohmann::json j = nlohmann::json::parse(slurp(f_contour));
      const std::vector<ContourPoint> points = io::contour_points_from_json(j);
      const PowerLawFit fit = fit_power_law(points);
      out << "beta=" << io::format_number(fit.beta, 6)
          << " const=" << io::format_number(fit.constant, 6)
          << " r2=" << io::format_number(fit.r_squared, 6) << '\n';
      if (!f_out.empty()) emit(f_out, io::to_json(fit).dump(2) + "\n", out);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ReconstructionError& e) {
    err << "error: " << e.what() << " (residual " << e.residual() << ")\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace spinchain::cli
