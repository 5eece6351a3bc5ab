#include "spinchain/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "spinchain/errors.hpp"

namespace spinchain::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_field(const std::string& text, std::size_t line, const char* column) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError("line " + std::to_string(line) + ", column " + column + ": cannot parse '" +
                     text + "'");
  }
  return value;
}

ProfileKind parse_kind_tag(const std::string& tag, double& alpha) {
  alpha = 1.0;
  if (tag == "homogeneous") return ProfileKind::homogeneous;
  if (tag == "pst_linear") return ProfileKind::pst_linear;
  if (tag == "pst_quadratic") return ProfileKind::pst_quadratic;
  if (tag == "custom") return ProfileKind::custom;
  const std::string prefix = "alpha_boundary(";
  if (tag.starts_with(prefix) && tag.ends_with(")")) {
    alpha = parse_field<double>(tag.substr(prefix.size(), tag.size() - prefix.size() - 1), 3,
                                "kind");
    return ProfileKind::alpha_boundary;
  }
  throw ParseError("line 3: unknown profile kind '" + tag + "'");
}

}  // namespace

std::string format_number(double x, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

void write_profile_record(std::ostream& out, const CouplingProfile& profile) {
  out << profile.n_sites() << '\n';
  bool first = true;
  for (double j : profile.couplings()) {
    if (!first) out << ' ';
    out << format_number(j, 17);
    first = false;
  }
  out << '\n' << profile.kind_tag() << '\n';
}

CouplingProfile read_profile_record(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1: missing chain length");
  const int n = parse_field<int>(line, 1, "N");
  if (!std::getline(in, line)) throw ParseError("line 2: missing couplings");
  std::vector<double> j;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) j.push_back(parse_field<double>(tok, 2, "couplings"));
  if (static_cast<int>(j.size()) != n - 1) {
    throw ParseError("line 2: expected " + std::to_string(n - 1) + " couplings, found " +
                     std::to_string(j.size()));
  }
  if (!std::getline(in, line)) throw ParseError("line 3: missing kind tag");
  double alpha = 1.0;
  const ProfileKind kind = parse_kind_tag(line, alpha);
  return CouplingProfile(std::move(j), kind, alpha);
}

void write_curve_csv(std::ostream& out, const TransferCurve& curve) {
  out << "t,f,F\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    out << format_number(curve.times[i], 12) << ',' << format_number(curve.amplitudes[i], 12)
        << ',' << format_number(curve.fidelities[i], 12) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::string& system, const SpectralData& spec,
                        bool header) {
  if (header) out << "system,N,k,E,P_k1\n";
  const std::vector<double> p = spec.first_site_probabilities();
  for (std::size_t k = 0; k < p.size(); ++k) {
    out << system << ',' << spec.n_sites() << ',' << k + 1 << ','
        << format_number(spec.energies[k], 12) << ',' << format_number(p[k], 12) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepTable& table, const CsvPreamble& preamble) {
  if (preamble.timestamp) out << "# generated " << *preamble.timestamp << '\n';
  if (!table.complete()) {
    out << "# complete=false failures=" << table.failures.size() << '\n';
  }
  out << kSweepHeader << '\n';
  for (const SweepRow& r : table.rows) {
    out << r.system << ',' << to_string(parity_of(r.n)) << ',' << r.n << ','
        << format_number(r.epsilon, 12) << ',' << to_string(r.model) << ','
        << format_number(r.tau, 12) << ',' << format_number(r.mean_F, 12) << ','
        << format_number(r.stderr_F, 12) << ',' << r.n_realizations << ',' << r.master_seed
        << '\n';
  }
}

SweepTable read_sweep_csv(std::istream& in) {
  static const char* const kColumns[] = {"system", "parity", "N",        "epsilon", "model",
                                         "tau",    "mean_F", "stderr_F", "n_real",  "master_seed"};
  SweepTable table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (line != kSweepHeader) {
        throw ParseError("line " + std::to_string(lineno) + ": expected sweep header '" +
                         kSweepHeader + "'");
      }
      have_header = true;
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 10) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 10 columns, found " +
                       std::to_string(f.size()));
    }
    SweepRow r;
    r.system = f[0];
    r.n = parse_field<int>(f[2], lineno, kColumns[2]);
    if (f[1] != to_string(parity_of(r.n))) {
      throw ParseError("line " + std::to_string(lineno) + ", column parity: '" + f[1] +
                       "' does not match N");
    }
    r.epsilon = parse_field<double>(f[3], lineno, kColumns[3]);
    try {
      r.model = parse_disorder_model(f[4]);
    } catch (const DomainError&) {
      throw ParseError("line " + std::to_string(lineno) + ", column model: '" + f[4] + "'");
    }
    r.tau = parse_field<double>(f[5], lineno, kColumns[5]);
    r.mean_F = parse_field<double>(f[6], lineno, kColumns[6]);
    r.stderr_F = parse_field<double>(f[7], lineno, kColumns[7]);
    r.n_realizations = parse_field<int>(f[8], lineno, kColumns[8]);
    r.master_seed = parse_field<std::uint64_t>(f[9], lineno, kColumns[9]);
    table.rows.push_back(std::move(r));
  }
  if (!have_header) throw ParseError("sweep table is empty (no header line)");
  return table;
}

nlohmann::json to_json(const PowerLawFit& fit) {
  return {{"beta", fit.beta}, {"const", fit.constant}, {"r_squared", fit.r_squared}};
}

nlohmann::json to_json(const ContourFit& fit) {
  nlohmann::json points = nlohmann::json::array();
  for (const ContourPoint& p : fit.contour.points) points.push_back({p.n, p.epsilon});
  return {{"system", fit.system},
          {"parity", to_string(fit.parity)},
          {"model", to_string(fit.model)},
          {"level", fit.level},
          {"points", points},
          {"skipped_N", fit.contour.skipped},
          {"beta", fit.fit.beta},
          {"const", fit.fit.constant},
          {"r_squared", fit.fit.r_squared}};
}

std::vector<ContourPoint> contour_points_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw ParseError("contour JSON lacks a 'points' array");
  }
  std::vector<ContourPoint> out;
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 2) throw ParseError("contour point must be [N, epsilon]");
    out.push_back(ContourPoint{p[0].get<int>(), p[1].get<double>()});
  }
  return out;
}

}  // namespace spinchain::io
