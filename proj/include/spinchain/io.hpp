#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "spinchain/chain_profiles.hpp"
#include "spinchain/experiments.hpp"
#include "spinchain/spectral_dynamics.hpp"

namespace spinchain::io {

/// Locale-independent formatting with `digits` significant digits
/// (printf %.<digits>g semantics).
std::string format_number(double x, int digits);

/// Three lines: N; couplings with 17 significant digits; kind tag.
void write_profile_record(std::ostream& out, const CouplingProfile& profile);
CouplingProfile read_profile_record(std::istream& in);

/// Header `t,f,F`, 12 significant digits.
void write_curve_csv(std::ostream& out, const TransferCurve& curve);

/// Header `system,N,k,E,P_k1`, one row per eigenstate.
void write_spectrum_csv(std::ostream& out, const std::string& system, const SpectralData& spec,
                        bool header = true);

inline constexpr const char* kSweepHeader =
    "system,parity,N,epsilon,model,tau,mean_F,stderr_F,n_real,master_seed";

struct CsvPreamble {
  /// Written as `# generated <timestamp>` when present.
  std::optional<std::string> timestamp;
};

/// Comment lines start with '#'. Incomplete tables carry a
/// `# complete=false failures=<k>` line before the header.
void write_sweep_csv(std::ostream& out, const SweepTable& table, const CsvPreamble& preamble = {});
/// Throws ParseError naming the offending line and column.
SweepTable read_sweep_csv(std::istream& in);

nlohmann::json to_json(const ContourFit& fit);
nlohmann::json to_json(const PowerLawFit& fit);
/// Accepts either a ContourFit object or a bare {"points": [[N, eps], ...]}.
std::vector<ContourPoint> contour_points_from_json(const nlohmann::json& j);

}  // namespace spinchain::io
