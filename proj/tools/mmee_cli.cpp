// Command-line frontend: computes coupling statistics, EE sweeps, the
// global optimum, queue distributions, PA dimensioning reports and the
// adaptive-vs-fixed baseline comparison. Every subcommand writes CSV
// plus a run manifest that can be fed back as a config file.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mmee/mmee.hpp"

namespace fs = std::filesystem;
using namespace mmee;

namespace {

RunConfig load_run_config(const std::string& config_path) {
  if (config_path.empty()) {
    RunConfig rc;
    rc.sys.validate();
    rc.pa.validate();
    return rc;
  }
  return load_config(config_path);
}

std::string coupling_cache_key(const RunConfig& rc) {
  RunConfig key;
  key.sys.d_max_m = rc.sys.d_max_m;
  key.sys.d_min_m = rc.sys.d_min_m;
  key.sys.grid_size = rc.sys.grid_size;
  key.sys.seed = rc.sys.seed;
  key.sys.downlink_power_w = rc.sys.downlink_power_w;
  return config_hash(key);
}

/// Coupling is the only expensive stage; cache it per (layout, grid,
/// seed, power) in the output directory.
CouplingStats get_coupling(const RunConfig& rc) {
  const fs::path cache = fs::path(rc.output_dir) / ("coupling_" + coupling_cache_key(rc) + ".txt");
  if (fs::exists(cache)) {
    std::ifstream in(cache);
    CouplingStats cs;
    if (in >> cs.lambda_cc >> cs.interference_sum) return cs;
  }
  const auto layout = build_layout(rc.sys.d_max_m, rc.sys.d_min_m);
  const auto grid = sample_grid(layout, rc.sys.grid_size, rc.sys.seed);
  const auto cs = coupling_stats(layout, grid, rc.sys.downlink_power_w);
  std::ofstream out(cache);
  out << std::setprecision(17) << cs.lambda_cc << " " << cs.interference_sum << "\n";
  return cs;
}

DailyProfile get_profile(const RunConfig& rc, const std::string& cli_path) {
  const std::string path = cli_path.empty() ? rc.profile_path : cli_path;
  if (path.empty()) throw config_error("no daily profile given (use --profile or profile_path)");
  return load_profile(path);
}

void emit_manifest(const RunConfig& rc, const std::string& subcommand) {
  write_manifest((fs::path(rc.output_dir) / (subcommand + "_manifest.txt")).string(), rc,
                 subcommand);
}

/// "8dB" labels mean p_max = (P_c/20)*10^(dB/10); plain numbers are watts.
double parse_pmax_label(const RunConfig& rc, const std::string& label) {
  constexpr double ref_antennas = 20.0;
  if (label.size() > 2 && label.substr(label.size() - 2) == "dB") {
    const double db = std::stod(label.substr(0, label.size() - 2));
    return rc.sys.downlink_power_w / ref_antennas * std::pow(10.0, db / 10.0);
  }
  return std::stod(label);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int run_coupling(const RunConfig& rc, bool export_grid) {
  const auto layout = build_layout(rc.sys.d_max_m, rc.sys.d_min_m);
  const auto grid = sample_grid(layout, rc.sys.grid_size, rc.sys.seed);
  const auto cs = coupling_stats(layout, grid, rc.sys.downlink_power_w);
  {
    std::ofstream out(fs::path(rc.output_dir) / ("coupling_" + coupling_cache_key(rc) + ".txt"));
    out << std::setprecision(17) << cs.lambda_cc << " " << cs.interference_sum << "\n";
  }
  CsvWriter csv((fs::path(rc.output_dir) / "coupling.csv").string(),
                {"lambda_cc", "interference_sum_w"});
  csv.row(cs.lambda_cc, cs.interference_sum);
  if (export_grid) {
    CsvWriter g((fs::path(rc.output_dir) / "coupling_grid.csv").string(),
                {"x_m", "y_m", "serving_gain", "interference_ratio_sum"});
    for (const auto& p : grid.points) {
      const double g0 = pathloss(std::hypot(p.x, p.y));
      double ratio_sum = 0.0;
      for (std::size_t d = 1; d < layout.cell_centers.size(); ++d)
        ratio_sum += pathloss(min_image_distance(layout, p, layout.cell_centers[d])) / g0;
      g.row(p.x, p.y, g0, ratio_sum);
    }
  }
  emit_manifest(rc, "coupling");
  std::cout << "lambda_cc = " << cs.lambda_cc
            << "\ninterference_sum_w = " << cs.interference_sum << "\n";
  return 0;
}

int run_ee_sweep(const RunConfig& rc, const std::string& pmax_list, int k_max) {
  const auto cs = get_coupling(rc);
  CsvWriter csv((fs::path(rc.output_dir) / "ee_sweep.csv").string(),
                {"K", "p_max_pa_label", "M_opt", "EE_bits_per_joule"});
  for (const auto& label : split_csv_list(pmax_list)) {
    if (label == "variable") {
      for (const auto& pt : variable_headroom_curve(rc.sys, rc.pa, cs, 1, k_max))
        csv.row(pt.users, label, pt.antennas, pt.ee);
      continue;
    }
    PaSpec pa = rc.pa;
    pa.p_max_pa_w = parse_pmax_label(rc, label);
    for (int k = 1; k <= k_max; ++k) {
      const int m = optimal_antennas(rc.sys, pa, cs, k, 3000);
      csv.row(k, label, m, energy_efficiency(rc.sys, pa, cs, m, k));
    }
  }
  emit_manifest(rc, "ee_sweep");
  return 0;
}

int run_global_opt(const RunConfig& rc, bool fixed_pmax) {
  const auto cs = get_coupling(rc);
  const auto opt = global_optimum(rc.sys, rc.pa, cs, rc.sys.k_scan_max, !fixed_pmax);
  CsvWriter csv((fs::path(rc.output_dir) / "global_opt.csv").string(),
                {"K", "M_opt", "EE_bits_per_joule"});
  for (const auto& pt : opt.curve) csv.row(pt.users, pt.antennas, pt.ee);
  emit_manifest(rc, "global_opt");
  std::cout << "M_gOpt = " << opt.m_gopt << "\nK_gOpt = " << opt.k_gopt
            << "\nEE_bits_per_joule = " << opt.ee << "\n";
  return 0;
}

int run_queue(const RunConfig& rc, const std::string& loads_list) {
  const auto cs = get_coupling(rc);
  const auto opt = global_optimum(rc.sys, rc.pa, cs, rc.sys.k_scan_max, true);
  const auto table = build_table(rc.sys, rc.pa, cs, opt.k_gopt);
  QueueInputs q;
  q.m = table.m;
  q.sigma_t_bits = rc.sys.sigma_t_bits;
  for (int n = 1; n <= table.m; ++n) q.rates_bps.push_back(table.rows[n].rate_bps);
  const double lambda_max = solve_lambda_max(q, rc.sys.blocking_target);
  CsvWriter csv((fs::path(rc.output_dir) / "queue.csv").string(), {"load", "n_users", "pi"});
  for (const auto& label : split_csv_list(loads_list)) {
    const double load = std::stod(label);
    q.lambda_per_s = load * lambda_max;
    const auto dist = queue_distribution(q);
    for (int n = 0; n <= q.m; ++n) csv.row(load, n, dist.pi[n]);
  }
  emit_manifest(rc, "queue");
  std::cout << "m = " << q.m << "\nlambda_max_per_s = " << lambda_max << "\n";
  return 0;
}

DimensioningReport dimension(const RunConfig& rc, const CouplingStats& cs,
                             const DailyProfile& profile, PaFamily family, GlobalOptimum* opt_out) {
  PaSpec proto = rc.pa;
  proto.family = family;
  const auto opt = global_optimum(rc.sys, proto, cs, rc.sys.k_scan_max, true);
  if (opt_out) *opt_out = opt;
  return dimension_pa(rc.sys, proto, cs, profile, opt);
}

int run_dimension(const RunConfig& rc, const std::string& family_str,
                  const std::string& profile_path) {
  const auto cs = get_coupling(rc);
  const auto profile = get_profile(rc, profile_path);
  const PaFamily family = pa_family_from_string(family_str);
  const auto report = dimension(rc, cs, profile, family, nullptr);
  CsvWriter csv((fs::path(rc.output_dir) / "dimension.csv").string(),
                {"p_max_pa_w", "min_active_antennas", "weighted_ee_bits_per_joule", "profile_name",
                 "pa_family"});
  for (const auto& c : report.candidates)
    csv.row(c.p_max_pa_w, c.min_active_antennas, c.weighted_ee, profile.name, family_str);
  emit_manifest(rc, "dimension");
  std::cout << "M_gOpt = " << report.m_gopt << "\nK_gOpt = " << report.k_gopt
            << "\nbest_p_max_pa_w = " << report.best_p_max_pa_w
            << "\nbest_weighted_ee = " << report.best_weighted_ee << "\n";
  return 0;
}

int run_compare_baseline(const RunConfig& rc, const std::string& family_str,
                         const std::string& profile_path) {
  const auto cs = get_coupling(rc);
  const auto profile = get_profile(rc, profile_path);
  const PaFamily family = pa_family_from_string(family_str);
  GlobalOptimum opt;
  const auto report = dimension(rc, cs, profile, family, &opt);
  PaSpec best = rc.pa;
  best.family = family;
  best.p_max_pa_w = report.best_p_max_pa_w;
  const auto cmp = baseline_comparison(rc.sys, best, cs, profile, opt.k_gopt, opt.m_gopt);
  CsvWriter csv((fs::path(rc.output_dir) / "compare_baseline.csv").string(),
                {"n_users", "ee_adaptive_bits_per_joule", "ee_fixed_bits_per_joule"});
  for (int n = 0; n <= opt.k_gopt; ++n)
    csv.row(n, cmp.adaptive_table.rows[n].ee, cmp.fixed_table.rows[n].ee);
  emit_manifest(rc, "compare_baseline");
  std::cout << "p_max_pa_w = " << report.best_p_max_pa_w
            << "\nadaptive_weighted_ee = " << cmp.adaptive_weighted_ee
            << "\nfixed_weighted_ee = " << cmp.fixed_weighted_ee
            << "\ngain_percent = " << cmp.gain_percent << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Load-adaptive massive MIMO energy-efficiency pipeline"};
  app.fallthrough();  // allow --config/--output-dir after the subcommand
  app.require_subcommand(1);

  std::string config_path, output_dir = ".", profile_path;
  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--output-dir", output_dir, "directory for CSV/manifest outputs");

  auto* sc_coupling = app.add_subcommand("coupling", "compute and cache coupling statistics");
  bool export_grid = false;
  sc_coupling->add_flag("--export-grid", export_grid, "also write per-point grid CSV");

  auto* sc_sweep = app.add_subcommand("ee-sweep", "per-K optimal antennas and EE curves");
  std::string pmax_list = "variable,21dB,8dB,1dB";
  int k_max = 150;
  sc_sweep->add_option("--pmax", pmax_list, "comma list: 'variable', dB labels or watts");
  sc_sweep->add_option("--k-max", k_max, "largest user count in the sweep");

  auto* sc_gopt = app.add_subcommand("global-opt", "global EE maximizer (M_gOpt, K_gOpt)");
  bool fixed_pmax = false;
  sc_gopt->add_flag("--fixed-pmax", fixed_pmax, "use the configured p_max_pa_w instead of variable headroom");

  auto* sc_queue = app.add_subcommand("queue", "user-state distributions at given loads");
  std::string loads_list = "0.5,1.0";
  sc_queue->add_option("--loads", loads_list, "comma list of load fractions");

  auto* sc_dim = app.add_subcommand("dimension", "PA dimensioning report over all candidates");
  std::string family = "etpa";
  sc_dim->add_option("--family", family, "PA family: etpa or tpa");
  sc_dim->add_option("--profile", profile_path, "daily load profile file (24 lines)");

  auto* sc_cmp = app.add_subcommand("compare-baseline", "adaptive vs fixed-M_gOpt comparison");
  sc_cmp->add_option("--family", family, "PA family: etpa or tpa");
  sc_cmp->add_option("--profile", profile_path, "daily load profile file (24 lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message / help text
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig rc = load_run_config(config_path);
    if (output_dir != ".") rc.output_dir = output_dir;
    fs::create_directories(rc.output_dir);
    if (sc_coupling->parsed()) return run_coupling(rc, export_grid);
    if (sc_sweep->parsed()) return run_ee_sweep(rc, pmax_list, k_max);
    if (sc_gopt->parsed()) return run_global_opt(rc, fixed_pmax);
    if (sc_queue->parsed()) return run_queue(rc, loads_list);
    if (sc_dim->parsed()) return run_dimension(rc, family, profile_path);
    if (sc_cmp->parsed()) return run_compare_baseline(rc, family, profile_path);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
