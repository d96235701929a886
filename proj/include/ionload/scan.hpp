#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ionload/flux.hpp"
#include "ionload/types.hpp"

// Config ingestion, the parameter-scan engine, and CSV/report emission.
namespace ionload::scan {

enum class Axis {
  detuning,        // Hz offset from resonance; weights P0 by the pulse spectrum
  pulse_energy,    // J
  waist,           // m
  overlap_length,  // m
  duration,        // s
  density,         // m^-3
};
const char* axis_name(Axis a);          // config token
const char* axis_column_name(Axis a);   // unit-suffixed CSV header
double axis_to_display(Axis a, double si);  // SI -> CSV display unit

enum class Spacing { linear, log };

struct ScanAxisSpec {
  Axis axis = Axis::pulse_energy;
  double min = 0.0;  // SI
  double max = 0.0;  // SI
  int points = 0;
  Spacing spacing = Spacing::linear;
};

struct ScanConfig {
  Species species;
  PulsedLaser laser;
  std::optional<CwLaser> cw;
  BeamGeometry beam;
  Vapor vapor;
  flux::Method method = flux::Method::analytic;
  std::optional<ScanAxisSpec> axis;  // absent for single-point "rate" use
  long mc_samples = 0;
  std::optional<std::uint64_t> mc_seed;
  int n_threads = 0;

  void validate() const;
};

struct ScanRow {
  double axis_value = 0.0;  // SI
  double p0 = 0.0;
  double flux = 0.0;        // m^-2 s^-1
  double rate = 0.0;        // 1/s
  double efficiency = 0.0;
  std::optional<double> std_error;  // monte_carlo only
  std::vector<Warning> warnings;
};

// Parses the line-oriented "section.key = value unit" format (see README
// for the full key list). Unknown keys, bad units, and missing required
// keys raise ConfigError with the offending line number.
ScanConfig parse_config(const std::string& text);

// Evaluates one point with the config's method at its current parameters.
ScanRow evaluate_point(const ScanConfig& config);

// Runs the configured scan; rows come back in axis order. Row-level
// warnings never abort the scan. Deterministic for a fixed config: row i
// of a Monte Carlo scan uses stream seed mix(seed, i).
std::vector<ScanRow> run_scan(const ScanConfig& config);

// CSV with unit-suffixed header, RFC 4180 quoting, 12 significant digits.
std::string to_csv(const std::vector<ScanRow>& rows, Axis axis);
std::string to_json(const std::vector<ScanRow>& rows, Axis axis);
void write_csv(const std::vector<ScanRow>& rows, Axis axis,
               const std::string& path);

// Plain-text summary: inputs, derived single-atom quantities, results,
// warnings, and the engineering-form coefficients for the configured
// species and geometry.
std::string report(const ScanConfig& config, const std::vector<ScanRow>& rows);

}  // namespace ionload::scan
