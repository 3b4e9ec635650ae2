#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mmee/config.hpp"
#include "mmee/errors.hpp"

namespace mmee {

inline constexpr const char* kVersion = "1.0.0";

/// Resolved run configuration: system + PA + where the inputs came from.
struct RunConfig {
  SystemConfig sys;
  PaSpec pa;
  std::string profile_path;
  std::string output_dir = ".";
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& value, int lineno) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("line " + std::to_string(lineno) + ": bad numeric value for '" + key +
                       "': " + value);
  }
}

}  // namespace detail

/// Flat `key = value` config. Unknown keys are errors; '#' starts a
/// comment. Units are fixed per key (see README); noise accepts either
/// noise_dbm or total_noise_w.
inline RunConfig parse_config_text(std::istream& in, const std::string& origin = "<config>") {
  RunConfig rc;
  bool u_given = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(origin + " line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto num = [&] { return detail::parse_double(key, value, lineno); };

    if (key == "bandwidth_hz") rc.sys.bandwidth_hz = num();
    else if (key == "coherence_time_s") rc.sys.coherence_time_s = num();
    else if (key == "coherence_bw_hz") rc.sys.coherence_bw_hz = num();
    else if (key == "coherence_block") { rc.sys.coherence_block = num(); u_given = true; }
    else if (key == "noise_dbm") rc.sys.total_noise_w = dbm_to_watts(num());
    else if (key == "total_noise_w") rc.sys.total_noise_w = num();
    else if (key == "downlink_power_w") rc.sys.downlink_power_w = num();
    else if (key == "pilot_overhead_mode") {
      if (value == "current-users") rc.sys.pilot_overhead_mode = PilotOverheadMode::CurrentUsers;
      else if (value == "fixed-max-users")
        rc.sys.pilot_overhead_mode = PilotOverheadMode::FixedMaxUsers;
      else
        throw config_error(origin + " line " + std::to_string(lineno) +
                           ": pilot_overhead_mode must be current-users or fixed-max-users");
    }
    else if (key == "max_users") rc.sys.max_users = static_cast<int>(num());
    else if (key == "p_syn_w") rc.sys.p_syn_w = num();
    else if (key == "p_bs_w") rc.sys.p_bs_w = num();
    else if (key == "p_oth_w") rc.sys.p_oth_w = num();
    else if (key == "p_cod_w_per_gbps") rc.sys.p_cod_w_per_gbps = num();
    else if (key == "p_dec_w_per_gbps") rc.sys.p_dec_w_per_gbps = num();
    else if (key == "l_bs_flops_per_w") rc.sys.l_bs_flops_per_w = num();
    else if (key == "d_max_m") rc.sys.d_max_m = num();
    else if (key == "d_min_m") rc.sys.d_min_m = num();
    else if (key == "grid_size") rc.sys.grid_size = static_cast<int>(num());
    else if (key == "seed") rc.sys.seed = static_cast<unsigned long long>(num());
    else if (key == "k_scan_max") rc.sys.k_scan_max = static_cast<int>(num());
    else if (key == "blocking_target") rc.sys.blocking_target = num();
    else if (key == "sigma_t_bits") rc.sys.sigma_t_bits = num();
    else if (key == "pa_family") rc.pa.family = pa_family_from_string(value);
    else if (key == "p_max_pa_w") rc.pa.p_max_pa_w = num();
    else if (key == "eta") rc.pa.eta = num();
    else if (key == "alpha") rc.pa.alpha = num();
    else if (key == "headroom_db") rc.pa.headroom_db = num();
    else if (key == "profile_path") rc.profile_path = value;
    else if (key == "output_dir") rc.output_dir = value;
    else
      throw config_error(origin + " line " + std::to_string(lineno) + ": unknown key '" + key +
                         "'");
  }
  if (!u_given) rc.sys.coherence_block = rc.sys.coherence_bw_hz * rc.sys.coherence_time_s;
  rc.sys.validate();
  rc.pa.validate();
  return rc;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  return parse_config_text(in, path);
}

/// Canonical key=value dump; valid as a config file, so a manifest can be
/// fed back to reproduce a run.
inline std::string serialize_config(const RunConfig& rc) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "bandwidth_hz = " << rc.sys.bandwidth_hz << "\n"
     << "coherence_time_s = " << rc.sys.coherence_time_s << "\n"
     << "coherence_bw_hz = " << rc.sys.coherence_bw_hz << "\n"
     << "coherence_block = " << rc.sys.coherence_block << "\n"
     << "total_noise_w = " << rc.sys.total_noise_w << "\n"
     << "downlink_power_w = " << rc.sys.downlink_power_w << "\n"
     << "pilot_overhead_mode = "
     << (rc.sys.pilot_overhead_mode == PilotOverheadMode::CurrentUsers ? "current-users"
                                                                       : "fixed-max-users")
     << "\n"
     << "max_users = " << rc.sys.max_users << "\n"
     << "p_syn_w = " << rc.sys.p_syn_w << "\n"
     << "p_bs_w = " << rc.sys.p_bs_w << "\n"
     << "p_oth_w = " << rc.sys.p_oth_w << "\n"
     << "p_cod_w_per_gbps = " << rc.sys.p_cod_w_per_gbps << "\n"
     << "p_dec_w_per_gbps = " << rc.sys.p_dec_w_per_gbps << "\n"
     << "l_bs_flops_per_w = " << rc.sys.l_bs_flops_per_w << "\n"
     << "d_max_m = " << rc.sys.d_max_m << "\n"
     << "d_min_m = " << rc.sys.d_min_m << "\n"
     << "grid_size = " << rc.sys.grid_size << "\n"
     << "seed = " << rc.sys.seed << "\n"
     << "k_scan_max = " << rc.sys.k_scan_max << "\n"
     << "blocking_target = " << rc.sys.blocking_target << "\n"
     << "sigma_t_bits = " << rc.sys.sigma_t_bits << "\n"
     << "pa_family = " << to_string(rc.pa.family) << "\n"
     << "p_max_pa_w = " << rc.pa.p_max_pa_w << "\n"
     << "eta = " << rc.pa.eta << "\n"
     << "alpha = " << rc.pa.alpha << "\n"
     << "headroom_db = " << rc.pa.headroom_db << "\n";
  if (!rc.profile_path.empty()) os << "profile_path = " << rc.profile_path << "\n";
  os << "output_dir = " << rc.output_dir << "\n";
  return os.str();
}

/// FNV-1a over the canonical config text.
inline std::string config_hash(const RunConfig& rc) {
  const std::string text = serialize_config(rc);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// Manifest = provenance comments + the full resolved config. The file is
/// itself a loadable config.
inline void write_manifest(const std::string& path, const RunConfig& rc,
                           const std::string& command) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write manifest: " + path);
  out << "# mmee run manifest\n"
      << "# version: " << kVersion << "\n"
      << "# command: " << command << "\n"
      << "# config_hash: " << config_hash(rc) << "\n"
      << serialize_config(rc);
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw config_error("cannot write CSV: " + path);
    out_ << std::setprecision(17);
    for (std::size_t i = 0; i < header.size(); ++i)
      out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
  }

  template <typename... Ts>
  void row(const Ts&... vals) {
    bool first = true;
    ((out_ << (first ? "" : ",") << vals, first = false), ...);
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace mmee
