// ionload command-line interface: single-point rates, parameter scans,
// per-pulse probability calculators, Monte Carlo runs, preset tables, and
// a self-check of the internal oracles.
//
// Exit codes: 0 success, 1 validation/config error, 2 numerical
// non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ionload/bloch.hpp"
#include "ionload/constants.hpp"
#include "ionload/errors.hpp"
#include "ionload/flux.hpp"
#include "ionload/physics.hpp"
#include "ionload/presets.hpp"
#include "ionload/scan.hpp"
#include "ionload/units.hpp"

namespace {

namespace k = ionload::constants;
using ionload::units::GHz;
using ionload::units::MHz;
using ionload::units::cm2;
using ionload::units::nm;
using ionload::units::ns;
using ionload::units::pJ;
using ionload::units::per_cm3;
using ionload::units::ps;
using ionload::units::um;

struct PointFlags {
  std::string species = "cd";
  double energy_pJ = 60.0;
  double duration_ps = 1.0;
  double rep_rate_MHz = 80.0;
  double lambda_nm = 0.0;  // 0 = species resonance
  double waist_um = 25.0;
  double length_um = 100.0;
  std::string trap;
  double pressure_torr = 1e-11;
  double density_per_cm3 = 0.0;  // overrides pressure when set
  double temperature_K = 293.0;
  std::string method = "analytic";
  long samples = 200000;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

void add_point_flags(CLI::App* cmd, PointFlags& f) {
  cmd->add_option("--species", f.species, "species preset key (default cd)");
  cmd->add_option("--energy", f.energy_pJ, "pulse energy in pJ");
  cmd->add_option("--duration", f.duration_ps, "pulse duration in ps");
  cmd->add_option("--rep-rate", f.rep_rate_MHz, "repetition rate in MHz");
  cmd->add_option("--lambda", f.lambda_nm, "laser wavelength in nm");
  cmd->add_option("--waist", f.waist_um, "beam waist (1/e field) in um");
  cmd->add_option("--length", f.length_um, "overlap length in um");
  cmd->add_option("--trap", f.trap, "trap preset key (sets overlap length)");
  cmd->add_option("--pressure", f.pressure_torr, "vapor pressure in torr");
  cmd->add_option("--density", f.density_per_cm3, "vapor density in cm^-3");
  cmd->add_option("--temperature", f.temperature_K, "vapor temperature in K");
  cmd->add_option("--method", f.method, "analytic | quadrature | monte_carlo");
  cmd->add_option("--samples", f.samples, "Monte Carlo trajectory count");
  cmd->add_option("--seed", f.seed, "Monte Carlo seed (required for MC)");
}

ionload::scan::ScanConfig config_from_flags(const PointFlags& f) {
  ionload::scan::ScanConfig cfg;
  cfg.species = ionload::find_species(f.species);
  cfg.laser.energy = f.energy_pJ * pJ;
  cfg.laser.duration = f.duration_ps * ps;
  if (!(f.rep_rate_MHz > 0.0))
    throw ionload::ValidationError("rep rate must be positive");
  cfg.laser.period = 1.0 / (f.rep_rate_MHz * MHz);
  cfg.laser.lambda_center =
      f.lambda_nm > 0.0 ? f.lambda_nm * nm : cfg.species.lambda_sp;
  cfg.beam.waist = f.waist_um * um;
  cfg.beam.overlap_length =
      f.trap.empty() ? f.length_um * um
                     : ionload::find_trap(f.trap).representative_size_m();
  cfg.vapor = f.density_per_cm3 > 0.0
                  ? ionload::Vapor::from_density(f.density_per_cm3 * per_cm3,
                                                 f.temperature_K,
                                                 cfg.species.mass)
                  : ionload::Vapor::from_pressure(
                        f.pressure_torr * k::torr, f.temperature_K,
                        cfg.species.mass);
  if (f.method == "analytic") cfg.method = ionload::flux::Method::analytic;
  else if (f.method == "quadrature") cfg.method = ionload::flux::Method::quadrature;
  else if (f.method == "monte_carlo") cfg.method = ionload::flux::Method::monte_carlo;
  else throw ionload::ValidationError("unknown method '" + f.method + "'");
  cfg.mc_samples = f.samples;
  cfg.mc_seed = f.seed;
  cfg.n_threads = f.threads;
  cfg.validate();
  return cfg;
}

void print_point(const ionload::scan::ScanConfig& cfg,
                 const ionload::scan::ScanRow& row, const std::string& format) {
  if (format == "json") {
    nlohmann::json out;
    out["species"] = cfg.species.name;
    out["p0"] = row.p0;
    out["flux_per_m2_s"] = row.flux;
    out["rate_per_s"] = row.rate;
    out["efficiency"] = row.efficiency;
    if (row.std_error) out["stderr"] = *row.std_error;
    nlohmann::json warn = nlohmann::json::array();
    for (const auto w : row.warnings) warn.push_back(ionload::warning_code(w));
    out["warnings"] = warn;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << ionload::scan::report(cfg, {row});
  }
}

int run_check() {
  using namespace ionload;
  int failures = 0;
  const auto check = [&failures](const char* name, bool ok, double got,
                                 double want) {
    std::printf("[%s] %-34s got %.6g  reference %.6g\n", ok ? "PASS" : "FAIL",
                name, got, want);
    if (!ok) ++failures;
  };

  // Bloch oracle: closed form vs ODE at theta = pi, x = 0.01.
  {
    const auto p = bloch::PulseParams::from_dimensionless(k::pi, 0.01, 0.0,
                                                          1e-6, 5e6);
    const double ode = bloch::integrate_bloch(p, 1).samples.back().pi_ion;
    const double closed = bloch::p_ion_closed(p);
    check("bloch ode vs closed form", std::abs(closed - ode) / ode < 1e-5,
          closed, ode);
  }
  // Angular constant vs the exact reduction sqrt(pi) erf(2).
  {
    const double a = flux::angular_constant(1e-6);
    const double exact = std::sqrt(k::pi) * std::erf(2.0);
    check("angular constant", std::abs(a - exact) < 1e-5, a, exact);
  }
  // Flux triangle at Cd defaults (weak regime).
  {
    const Species cd = find_species("cd");
    const Vapor vapor = Vapor::from_pressure(1e-11 * k::torr, 293.0, cd.mass);
    const flux::LoadingVolume vol{25 * um, 100 * um};
    const double period = 12.5 * ns;
    const PulsedLaser laser{228.9 * nm, 60 * pJ, 1 * ps, period};
    const BeamGeometry beam{vol.waist, vol.length};
    const double p0 = bloch::p_ion_focus(laser, beam, cd);
    const auto analytic = flux::flux_analytic(vapor, vol, p0, period);
    const auto quadr = flux::flux_quadrature(vapor, vol, p0, period);
    flux::MonteCarloOptions mc;
    mc.n_samples = 100000;
    mc.seed = 7;
    const auto carlo = flux::flux_monte_carlo(vapor, vol, p0, period, mc);
    check("analytic vs quadrature (0.5%)",
          std::abs(quadr.flux / analytic.flux - 1.0) < 5e-3, quadr.flux,
          analytic.flux);
    check("monte carlo vs quadrature (3 sigma)",
          std::abs(carlo.flux - quadr.flux) < 3.0 * carlo.std_error,
          carlo.flux, quadr.flux);
  }
  std::printf("%s\n", failures == 0 ? "all checks passed" : "CHECK FAILURES");
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulsed-photoionization ion trap loading calculator"};
  app.require_subcommand(1);
  std::string format = "text";
  int threads = 0;
  app.add_option("--format", format, "text | csv | json")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  // rate: single-point evaluation
  PointFlags rate_flags;
  CLI::App* rate = app.add_subcommand("rate", "single-point loading estimate");
  add_point_flags(rate, rate_flags);

  // scan
  std::string scan_config_path, scan_out_path;
  CLI::App* scan_cmd = app.add_subcommand("scan", "run a parameter scan");
  scan_cmd->add_option("--config", scan_config_path, "config file")->required();
  scan_cmd->add_option("--out", scan_out_path, "output CSV path");

  // bloch: per-pulse probability calculators
  double b_theta = 1.0, b_x = 1e-3, b_cw = 0.0, b_gamma_tau = 1e-3,
         b_period_over_tau = 5e4;
  bool b_ode = false;
  int b_pulses = 1;
  CLI::App* bloch_cmd =
      app.add_subcommand("bloch", "per-pulse ionization probability");
  bloch_cmd->add_option("--theta", b_theta, "Rabi angle (rad)");
  bloch_cmd->add_option("--x", b_x, "Gamma tau / 2");
  bloch_cmd->add_option("--gamma-cw-ratio", b_cw, "Gamma_cw / gamma");
  bloch_cmd->add_option("--gamma-tau", b_gamma_tau, "gamma * tau");
  bloch_cmd->add_option("--period-over-tau", b_period_over_tau, "T / tau");
  bloch_cmd->add_flag("--ode", b_ode, "also integrate the Bloch equations");
  bloch_cmd->add_option("--pulses", b_pulses, "pulse count for --ode");

  // mc
  PointFlags mc_flags;
  mc_flags.method = "monte_carlo";
  CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo flux estimate");
  add_point_flags(mc_cmd, mc_flags);

  // presets
  std::string presets_what = "species";
  bool presets_csv_flag = false;
  CLI::App* presets_cmd = app.add_subcommand("presets", "built-in tables");
  presets_cmd->add_option("what", presets_what, "species | traps");
  presets_cmd->add_flag("--csv", presets_csv_flag, "emit CSV");

  CLI::App* check_cmd =
      app.add_subcommand("check", "run the internal oracle triangle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rate->parsed()) {
      rate_flags.threads = threads;
      const auto cfg = config_from_flags(rate_flags);
      const auto row = ionload::scan::evaluate_point(cfg);
      if (format == "csv")
        std::cout << ionload::scan::to_csv({row},
                                           ionload::scan::Axis::pulse_energy);
      else
        print_point(cfg, row, format);
    } else if (scan_cmd->parsed()) {
      std::ifstream is(scan_config_path);
      if (!is)
        throw ionload::ValidationError("cannot read config '" +
                                       scan_config_path + "'");
      std::stringstream buffer;
      buffer << is.rdbuf();
      auto cfg = ionload::scan::parse_config(buffer.str());
      if (threads != 0) cfg.n_threads = threads;
      if (!cfg.axis)
        throw ionload::ValidationError("config has no scan block");
      const auto rows = ionload::scan::run_scan(cfg);
      if (!scan_out_path.empty()) {
        ionload::scan::write_csv(rows, cfg.axis->axis, scan_out_path);
        std::cout << ionload::scan::report(cfg, rows);
        std::cout << "wrote " << rows.size() << " rows to " << scan_out_path
                  << "\n";
      } else if (format == "json") {
        std::cout << ionload::scan::to_json(rows, cfg.axis->axis);
      } else {
        std::cout << ionload::scan::to_csv(rows, cfg.axis->axis);
      }
    } else if (bloch_cmd->parsed()) {
      const auto p = ionload::bloch::PulseParams::from_dimensionless(
          b_theta, b_x, b_cw, b_gamma_tau, b_period_over_tau);
      const auto weak = ionload::bloch::p_ion_weak(b_theta, b_x);
      nlohmann::json out;
      out["theta"] = b_theta;
      out["x"] = b_x;
      out["gamma_cw_ratio"] = b_cw;
      out["p_weak_bracket"] = weak.bracket;
      out["p_weak_quadratic"] = weak.quadratic;
      out["p_simplified"] = ionload::bloch::p_ion_simplified(p);
      out["p_closed"] = ionload::bloch::p_ion_closed(p);
      nlohmann::json warn = nlohmann::json::array();
      for (const auto w : ionload::bloch::validity_warnings(p))
        warn.push_back(ionload::warning_code(w));
      out["warnings"] = warn;
      if (b_ode) {
        const auto run = ionload::bloch::integrate_bloch(p, b_pulses);
        out["p_ode"] = run.samples.back().pi_ion;
        out["ode_conservation_error"] = run.max_conservation_error;
      }
      if (format == "json") {
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& [key, value] : out.items())
          std::cout << key << " = " << value.dump() << "\n";
      }
    } else if (mc_cmd->parsed()) {
      mc_flags.threads = threads;
      const auto cfg = config_from_flags(mc_flags);
      const auto row = ionload::scan::evaluate_point(cfg);
      print_point(cfg, row, format);
    } else if (presets_cmd->parsed()) {
      if (presets_what == "species") {
        if (presets_csv_flag || format == "csv") {
          std::cout << ionload::species_csv();
        } else {
          for (const auto& s : ionload::species_presets())
            std::printf("%-3s lambda_sp %6.1f nm  lambda_ion %5.1f nm  "
                        "gamma/2pi %5.1f MHz  mass %8.3f u%s\n",
                        s.name.c_str(), s.lambda_sp / nm, s.lambda_ion / nm,
                        s.gamma / (2 * k::pi * MHz), s.mass / k::amu,
                        ionload::two_photon_feasible(s) ? "" :
                        "  (2-photon infeasible)");
        }
      } else if (presets_what == "traps") {
        if (presets_csv_flag || format == "csv") {
          std::cout << ionload::traps_csv();
        } else {
          for (const auto& t : ionload::trap_presets())
            std::printf("%-14s %-26s L %3.0f-%3.0f um  depth %4.2f-%4.2f eV  "
                        "rf %4.1f MHz\n",
                        t.key.c_str(), t.description.c_str(), t.size_um.first,
                        t.size_um.second, t.depth_eV.first, t.depth_eV.second,
                        t.rf_drive_MHz);
        }
      } else {
        throw ionload::ValidationError("presets: expected 'species' or 'traps'");
      }
    } else if (check_cmd->parsed()) {
      return run_check();
    }
  } catch (const ionload::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ionload::ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
