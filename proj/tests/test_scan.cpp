#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "ionload/constants.hpp"
#include "ionload/fit.hpp"
#include "ionload/scan.hpp"
#include "ionload/units.hpp"

using namespace ionload;
using namespace ionload::scan;
namespace k = ionload::constants;
using doctest::Approx;

namespace {

std::string cd_config(const std::string& extra = "") {
  return "# Cd defaults\n"
         "species.preset = cd\n"
         "laser.energy = 60 pJ\n"
         "laser.duration = 1 ps\n"
         "laser.rep_rate = 80 MHz\n"
         "beam.waist = 25 um\n"
         "beam.length = 100 um\n"
         "vapor.pressure = 1e-11 torr\n"
         "vapor.temperature = 293 K\n" +
         extra;
}

std::vector<double> column(const std::vector<ScanRow>& rows, int which) {
  std::vector<double> out;
  for (const auto& r : rows)
    out.push_back(which == 0 ? r.axis_value : which == 1 ? r.rate : r.p0);
  return out;
}

}  // namespace

TEST_CASE("config parsing: units convert at the boundary") {
  const auto cfg = parse_config(cd_config());
  CHECK(cfg.laser.energy == Approx(6.0e-11));
  CHECK(cfg.laser.duration == Approx(1e-12));
  CHECK(cfg.laser.period == Approx(12.5e-9));
  CHECK(cfg.beam.waist == Approx(25e-6));
  CHECK(cfg.vapor.density / units::per_cm3 == Approx(3.2957e5).epsilon(1e-4));
  CHECK(cfg.species.name == "Cd");
  CHECK(cfg.method == flux::Method::analytic);
}

TEST_CASE("config parsing: trap preset sets the overlap length") {
  std::string text = cd_config();
  const auto pos = text.find("beam.length = 100 um\n");
  text.replace(pos, std::string("beam.length = 100 um\n").size(),
               "trap.preset = gaas_chip\n");
  const auto cfg = parse_config(text);
  CHECK(cfg.beam.overlap_length == Approx(60e-6));
}

TEST_CASE("config parsing: errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_config(cd_config("laser.energgy = 3 pJ\n")),
                       doctest::Contains("unknown key"), ConfigError);
  try {
    parse_config(cd_config("laser.energgy = 3 pJ\n"));
  } catch (const ConfigError& e) {
    CHECK(e.line() == 10);
  }
  // unit mismatch
  CHECK_THROWS_WITH_AS(parse_config(cd_config("cw.intensity = 3 pJ\n"
                                              "cw.lambda = 214.5 nm\n"
                                              "cw.sigma = 1e-16 cm^2\n")),
                       doctest::Contains("not a valid intensity"), ConfigError);
  // missing unit
  std::string no_unit = cd_config();
  no_unit.replace(no_unit.find("laser.energy = 60 pJ"),
                  std::string("laser.energy = 60 pJ").size(),
                  "laser.energy = 60");
  CHECK_THROWS_WITH_AS(parse_config(no_unit), doctest::Contains("needs a energy"),
                       ConfigError);
  // missing required key
  std::string missing = cd_config();
  missing.erase(missing.find("vapor.temperature = 293 K\n"),
                std::string("vapor.temperature = 293 K\n").size());
  CHECK_THROWS_WITH_AS(parse_config(missing),
                       doctest::Contains("vapor.temperature"), ConfigError);
  // duplicates and exclusive pairs
  CHECK_THROWS_WITH_AS(parse_config(cd_config("laser.energy = 3 pJ\n")),
                       doctest::Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(cd_config("laser.period = 12.5 ns\n")),
                       doctest::Contains("not both"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(cd_config("vapor.density = 3e5 cm^-3\n")),
                       doctest::Contains("not both"), ConfigError);
  // malformed line
  CHECK_THROWS_AS(parse_config(cd_config("what is this\n")), ConfigError);
  // monte carlo without a seed is an error
  CHECK_THROWS_WITH_AS(
      parse_config(cd_config("run.method = monte_carlo\nmc.samples = 20000\n")),
      doctest::Contains("mc.seed"), ConfigError);
}

TEST_CASE("config parsing: inline species") {
  const std::string text =
      "species.name = MySpecies\n"
      "species.lambda_sp = 228.9 nm\n"
      "species.lambda_ion = 138 nm\n"
      "species.gamma = 91 MHz\n"
      "species.sigma_pi = 1e-16 cm^2\n"
      "species.mass = 112.414 u\n"
      "laser.energy = 60 pJ\n"
      "laser.duration = 1 ps\n"
      "laser.period = 12.5 ns\n"
      "beam.waist = 25 um\n"
      "beam.length = 100 um\n"
      "vapor.density = 3e5 cm^-3\n"
      "vapor.temperature = 293 K\n";
  const auto cfg = parse_config(text);
  CHECK(cfg.species.name == "MySpecies");
  CHECK(cfg.species.gamma == Approx(2 * k::pi * 91e6));
  CHECK(cfg.vapor.density == Approx(3e11));
}

TEST_CASE("energy scan: row count, ordering, quadratic slope") {
  const auto cfg = parse_config(cd_config("scan.axis = pulse_energy\n"
                                          "scan.min = 5 pJ\n"
                                          "scan.max = 60 pJ\n"
                                          "scan.points = 12\n"
                                          "scan.spacing = linear\n"));
  const auto rows = run_scan(cfg);
  REQUIRE(rows.size() == 12);
  CHECK(rows.front().axis_value == Approx(5e-12));
  CHECK(rows.back().axis_value == Approx(60e-12));
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].axis_value > rows[i - 1].axis_value);
  const auto fit = fit::fit_power_law(column(rows, 0), column(rows, 1));
  CHECK(fit.exponent == Approx(2.0).epsilon(1e-9));
  CHECK(fit.r_squared == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("detuning scan reproduces the pulse spectrum width") {
  const auto cfg = parse_config(cd_config("scan.axis = detuning\n"
                                          "scan.min = -1200 GHz\n"
                                          "scan.max = 1200 GHz\n"
                                          "scan.points = 41\n"));
  ScanConfig tuned = cfg;
  tuned.laser.duration = 1.1e-12;
  const auto rows = run_scan(tuned);
  REQUIRE(rows.size() == 41);
  const auto peak = fit::fit_gaussian_fwhm(column(rows, 0), column(rows, 1));
  const double expected_fwhm = k::gaussian_tbp / 1.1e-12;
  CHECK(peak.fwhm == Approx(expected_fwhm).epsilon(1e-6));
  CHECK(peak.center == Approx(0.0).epsilon(1e-6));
  CHECK(expected_fwhm == Approx(400e9).epsilon(0.01));
}

TEST_CASE("zero-density vapor scans to all-zero rates") {
  auto cfg = parse_config(cd_config("scan.axis = pulse_energy\n"
                                    "scan.min = 5 pJ\n"
                                    "scan.max = 60 pJ\n"
                                    "scan.points = 5\n"));
  cfg.vapor.density = 0.0;
  for (const auto& row : run_scan(cfg)) {
    CHECK(row.flux == 0.0);
    CHECK(row.rate == 0.0);
  }
}

TEST_CASE("other axes vary the right knob") {
  // waist: rate ~ rho^2 * P0(rho) ~ rho^-2 in the weak regime
  const auto waist_cfg = parse_config(cd_config("scan.axis = waist\n"
                                                "scan.min = 20 um\n"
                                                "scan.max = 40 um\n"
                                                "scan.points = 5\n"
                                                "scan.spacing = log\n"));
  const auto waist_rows = run_scan(waist_cfg);
  const auto wf = fit::fit_power_law(column(waist_rows, 0), column(waist_rows, 1));
  CHECK(wf.exponent == Approx(-2.0).epsilon(1e-9));
  // duration: rate ~ tau
  const auto dur_cfg = parse_config(cd_config("scan.axis = duration\n"
                                              "scan.min = 0.1 ps\n"
                                              "scan.max = 2 ps\n"
                                              "scan.points = 6\n"));
  const auto dur_rows = run_scan(dur_cfg);
  const auto df = fit::fit_power_law(column(dur_rows, 0), column(dur_rows, 1));
  CHECK(df.exponent == Approx(1.0).epsilon(1e-9));
  // overlap length: rate ~ L, flux independent
  const auto len_cfg = parse_config(cd_config("scan.axis = overlap_length\n"
                                              "scan.min = 60 um\n"
                                              "scan.max = 700 um\n"
                                              "scan.points = 5\n"));
  const auto len_rows = run_scan(len_cfg);
  CHECK(len_rows.front().flux == Approx(len_rows.back().flux).epsilon(1e-12));
  const auto lf = fit::fit_power_law(column(len_rows, 0), column(len_rows, 1));
  CHECK(lf.exponent == Approx(1.0).epsilon(1e-9));
  // density axis overrides the vapor density
  const auto den_cfg = parse_config(cd_config("scan.axis = density\n"
                                              "scan.min = 1e5 cm^-3\n"
                                              "scan.max = 1e6 cm^-3\n"
                                              "scan.points = 4\n"
                                              "scan.spacing = log\n"));
  const auto den_rows = run_scan(den_cfg);
  const auto nf = fit::fit_power_law(column(den_rows, 0), column(den_rows, 1));
  CHECK(nf.exponent == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scans are byte-deterministic, monte carlo included") {
  const auto cfg = parse_config(cd_config("run.method = monte_carlo\n"
                                          "mc.samples = 10000\n"
                                          "mc.seed = 42\n"
                                          "scan.axis = pulse_energy\n"
                                          "scan.min = 20 pJ\n"
                                          "scan.max = 60 pJ\n"
                                          "scan.points = 3\n"));
  const auto rows1 = run_scan(cfg);
  auto cfg2 = cfg;
  cfg2.n_threads = 3;
  const auto rows2 = run_scan(cfg2);
  CHECK(to_csv(rows1, Axis::pulse_energy) == to_csv(rows2, Axis::pulse_energy));
  for (const auto& r : rows1) {
    REQUIRE(r.std_error.has_value());
    CHECK(*r.std_error > 0.0);
  }
}

TEST_CASE("csv emission and round trip") {
  const auto cfg = parse_config(cd_config("scan.axis = pulse_energy\n"
                                          "scan.min = 5 pJ\n"
                                          "scan.max = 60 pJ\n"
                                          "scan.points = 7\n"));
  const auto rows = run_scan(cfg);
  const std::string csv = to_csv(rows, Axis::pulse_energy);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "pulse_energy_pJ,p0,flux_per_m2_s,rate_per_s,efficiency,stderr,warnings");
  std::string line;
  std::size_t i = 0;
  while (std::getline(is, line)) {
    REQUIRE(i < rows.size());
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 6);
    CHECK(std::stod(cells[0]) ==
          Approx(rows[i].axis_value / units::pJ).epsilon(1e-11));
    CHECK(std::stod(cells[1]) == Approx(rows[i].p0).epsilon(1e-11));
    CHECK(std::stod(cells[2]) == Approx(rows[i].flux).epsilon(1e-11));
    CHECK(std::stod(cells[3]) == Approx(rows[i].rate).epsilon(1e-11));
    CHECK(cells[5].empty());  // stderr blank for the analytic method
    ++i;
  }
  CHECK(i == rows.size());

  // empty scan: header only
  CHECK(to_csv({}, Axis::detuning) ==
        "detuning_GHz,p0,flux_per_m2_s,rate_per_s,efficiency,stderr,warnings\n");
}

TEST_CASE("json emission carries the same fields") {
  const auto cfg = parse_config(cd_config("scan.axis = pulse_energy\n"
                                          "scan.min = 5 pJ\n"
                                          "scan.max = 10 pJ\n"
                                          "scan.points = 2\n"));
  const auto rows = run_scan(cfg);
  const std::string js = to_json(rows, Axis::pulse_energy);
  CHECK(js.find("\"pulse_energy_pJ\"") != std::string::npos);
  CHECK(js.find("\"rate_per_s\"") != std::string::npos);
  CHECK(js.find("\"warnings\"") != std::string::npos);
}

TEST_CASE("single-point report quotes the Cd-defaults rate") {
  const auto cfg = parse_config(cd_config());
  const auto row = evaluate_point(cfg);
  CHECK(row.rate == Approx(57.38).epsilon(1e-3));
  CHECK(row.rate > 20.0);
  CHECK(row.rate < 80.0);
  const std::string rep = report(cfg, {row});
  CHECK(rep.find("rate 57.3") != std::string::npos);
  CHECK(rep.find("warnings:") != std::string::npos);
  CHECK(rep.find("scaling: R ~ 124") != std::string::npos);  // ~1245 coefficient
}

TEST_CASE("power-law fit") {
  std::vector<double> x, y2, y3;
  for (int i = 1; i <= 9; ++i) {
    const double v = 0.5 * i;
    x.push_back(v);
    y2.push_back(3.7 * v * v);
    y3.push_back(0.2 * v * v * v);
  }
  const auto f2 = fit::fit_power_law(x, y2);
  CHECK(f2.exponent == Approx(2.0).epsilon(1e-9));
  CHECK(f2.prefactor == Approx(3.7).epsilon(1e-9));
  const auto f3 = fit::fit_power_law(x, y3);
  CHECK(f3.exponent == Approx(3.0).epsilon(1e-9));
  std::vector<double> bad = y2;
  bad[3] = -1.0;
  CHECK_THROWS_AS(fit::fit_power_law(x, bad), ValidationError);
  CHECK_THROWS_AS(fit::fit_power_law({1.0, 2.0}, {1.0, 4.0}), ValidationError);
}

TEST_CASE("gaussian fit") {
  std::vector<double> x, y;
  const double mu = 3.2, s = 1.7, a = 5.5;
  for (int i = 0; i < 25; ++i) {
    const double v = -5.0 + 0.6 * i;
    x.push_back(v);
    y.push_back(a * std::exp(-0.5 * (v - mu) * (v - mu) / (s * s)));
  }
  const auto fit = fit::fit_gaussian_fwhm(x, y);
  CHECK(fit.center == Approx(mu).epsilon(1e-6));
  CHECK(fit.peak == Approx(a).epsilon(1e-6));
  CHECK(fit.fwhm == Approx(k::fwhm_sigma_ratio * s).epsilon(1e-6));

  std::vector<double> flat(x.size(), 2.0);
  CHECK_THROWS_AS(fit::fit_gaussian_fwhm(x, flat), ConvergenceError);
  CHECK_THROWS_AS(fit::fit_gaussian_fwhm({1, 2, 3}, {1, 2, 3}), ValidationError);
}

TEST_CASE("scan config validation") {
  CHECK_THROWS_WITH_AS(parse_config(cd_config("scan.axis = pulse_energy\n"
                                              "scan.min = 60 pJ\n"
                                              "scan.max = 5 pJ\n"
                                              "scan.points = 5\n")),
                       doctest::Contains("min must be <"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(cd_config("scan.axis = pulse_energy\n"
                                              "scan.min = 5 pJ\n"
                                              "scan.max = 60 pJ\n"
                                              "scan.points = 1\n")),
                       doctest::Contains("points"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(cd_config("scan.axis = detuning\n"
                                              "scan.min = -5 GHz\n"
                                              "scan.max = 5 GHz\n"
                                              "scan.points = 5\n"
                                              "scan.spacing = log\n")),
                       doctest::Contains("log spacing"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(cd_config("scan.axis = frequency\n"
                                              "scan.min = 1 GHz\n"
                                              "scan.max = 2 GHz\n"
                                              "scan.points = 5\n")),
                       doctest::Contains("unknown scan axis"), ConfigError);
}
