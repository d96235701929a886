#include "ionload/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ionload/bloch.hpp"
#include "ionload/constants.hpp"
#include "ionload/physics.hpp"
#include "ionload/presets.hpp"
#include "ionload/rng.hpp"
#include "ionload/units.hpp"

namespace ionload::scan {

namespace k = constants;
using units::Dim;

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::detuning: return "detuning";
    case Axis::pulse_energy: return "pulse_energy";
    case Axis::waist: return "waist";
    case Axis::overlap_length: return "overlap_length";
    case Axis::duration: return "duration";
    case Axis::density: return "density";
  }
  return "unknown";
}

const char* axis_column_name(Axis a) {
  switch (a) {
    case Axis::detuning: return "detuning_GHz";
    case Axis::pulse_energy: return "pulse_energy_pJ";
    case Axis::waist: return "waist_um";
    case Axis::overlap_length: return "overlap_length_um";
    case Axis::duration: return "duration_ps";
    case Axis::density: return "density_per_cm3";
  }
  return "axis";
}

double axis_to_display(Axis a, double si) {
  switch (a) {
    case Axis::detuning: return si / units::GHz;
    case Axis::pulse_energy: return si / units::pJ;
    case Axis::waist: return si / units::um;
    case Axis::overlap_length: return si / units::um;
    case Axis::duration: return si / units::ps;
    case Axis::density: return si / units::per_cm3;
  }
  return si;
}

namespace {

Dim axis_dim(Axis a) {
  switch (a) {
    case Axis::detuning: return Dim::Frequency;
    case Axis::pulse_energy: return Dim::Energy;
    case Axis::waist: return Dim::Length;
    case Axis::overlap_length: return Dim::Length;
    case Axis::duration: return Dim::Time;
    case Axis::density: return Dim::NumberDensity;
  }
  return Dim::Dimensionless;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct RawEntry {
  int line;
  std::string value;  // first token
  std::string unit;   // optional second token
};

// key -> expected dimension; token-valued keys are listed separately.
const std::map<std::string, Dim>& numeric_keys() {
  static const std::map<std::string, Dim> keys = {
      {"species.lambda_sp", Dim::Length},
      {"species.lambda_ion", Dim::Length},
      {"species.gamma", Dim::Frequency},  // gamma/2pi, as commonly quoted
      {"species.sigma_pi", Dim::Area},
      {"species.mass", Dim::Mass},
      {"laser.lambda", Dim::Length},
      {"laser.energy", Dim::Energy},
      {"laser.duration", Dim::Time},
      {"laser.period", Dim::Time},
      {"laser.rep_rate", Dim::Frequency},
      {"cw.intensity", Dim::Intensity},
      {"cw.lambda", Dim::Length},
      {"cw.sigma", Dim::Area},
      {"beam.waist", Dim::Length},
      {"beam.length", Dim::Length},
      {"vapor.pressure", Dim::Pressure},
      {"vapor.density", Dim::NumberDensity},
      {"vapor.temperature", Dim::Temperature},
      {"scan.points", Dim::Dimensionless},
      {"scan.min", Dim::Dimensionless},  // dimension fixed by scan.axis
      {"scan.max", Dim::Dimensionless},
      {"mc.samples", Dim::Dimensionless},
      {"mc.seed", Dim::Dimensionless},
      {"run.threads", Dim::Dimensionless},
  };
  return keys;
}

bool is_token_key(const std::string& key) {
  static const std::map<std::string, int> keys = {
      {"species.preset", 0}, {"species.name", 0}, {"trap.preset", 0},
      {"scan.axis", 0},      {"scan.spacing", 0}, {"run.method", 0},
  };
  return keys.count(key) > 0;
}

double parse_number(const RawEntry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(e.line, "expected a number, got '" + e.value + "'");
  }
}

double require_si(const std::string& key, const RawEntry& e, Dim dim) {
  const double v = parse_number(e);
  const auto si = units::to_si(v, e.unit, dim);
  if (!si) {
    if (e.unit.empty())
      throw ConfigError(e.line, key + " needs a " +
                                    std::string(units::dim_name(dim)) + " unit");
    throw ConfigError(e.line, "'" + e.unit + "' is not a valid " +
                                  units::dim_name(dim) + " unit for " + key);
  }
  return *si;
}

class Entries {
 public:
  void add(int line, const std::string& key, RawEntry entry) {
    if (map_.count(key))
      throw ConfigError(line, "duplicate key '" + key + "'");
    map_.emplace(key, std::move(entry));
  }
  const RawEntry* find(const std::string& key) const {
    const auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }
  bool has(const std::string& key) const { return map_.count(key) > 0; }
  const std::map<std::string, RawEntry>& all() const { return map_; }

 private:
  std::map<std::string, RawEntry> map_;
};

}  // namespace

void ScanConfig::validate() const {
  species.validate();
  laser.validate();
  if (cw) cw->validate();
  beam.validate();
  vapor.validate();
  if (axis) {
    if (axis->points < 2) throw ValidationError("scan: points must be >= 2");
    if (!(axis->min < axis->max)) throw ValidationError("scan: min must be < max");
    if (axis->spacing == Spacing::log && !(axis->min > 0.0))
      throw ValidationError("scan: log spacing needs a positive min");
  }
  if (method == flux::Method::monte_carlo) {
    if (mc_samples < 10'000)
      throw ValidationError("monte_carlo method needs mc.samples >= 1e4");
    if (!mc_seed)
      throw ValidationError("monte_carlo method needs an explicit mc.seed");
  }
}

ScanConfig parse_config(const std::string& text) {
  Entries entries;
  std::istringstream is(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(is, raw_line)) {
    ++line_no;
    const auto hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected 'section.key = value [unit]'");
    const std::string key = trim(line.substr(0, eq));
    const std::string rhs = trim(line.substr(eq + 1));
    if (key.empty() || key.find('.') == std::string::npos)
      throw ConfigError(line_no, "key must look like 'section.key'");
    if (!numeric_keys().count(key) && !is_token_key(key))
      throw ConfigError(line_no, "unknown key '" + key + "'");
    std::istringstream rs(rhs);
    RawEntry entry;
    entry.line = line_no;
    rs >> entry.value >> entry.unit;
    std::string extra;
    if (rs >> extra)
      throw ConfigError(line_no, "too many tokens after '=' ");
    if (entry.value.empty())
      throw ConfigError(line_no, "missing value for '" + key + "'");
    entries.add(line_no, key, std::move(entry));
  }

  ScanConfig cfg;

  // species: preset first, inline fields override
  if (const auto* e = entries.find("species.preset")) {
    cfg.species = find_species(e->value);
  } else if (!entries.has("species.lambda_sp")) {
    throw ConfigError(0, "missing species.preset or inline species block");
  } else {
    cfg.species.name = "custom";
  }
  if (const auto* e = entries.find("species.name")) cfg.species.name = e->value;
  if (const auto* e = entries.find("species.lambda_sp"))
    cfg.species.lambda_sp = require_si("species.lambda_sp", *e, Dim::Length);
  if (const auto* e = entries.find("species.lambda_ion"))
    cfg.species.lambda_ion = require_si("species.lambda_ion", *e, Dim::Length);
  if (const auto* e = entries.find("species.gamma"))
    cfg.species.gamma =
        2.0 * k::pi * require_si("species.gamma", *e, Dim::Frequency);
  if (const auto* e = entries.find("species.sigma_pi"))
    cfg.species.sigma_pi = require_si("species.sigma_pi", *e, Dim::Area);
  if (const auto* e = entries.find("species.mass"))
    cfg.species.mass = require_si("species.mass", *e, Dim::Mass);

  // laser
  const auto* energy = entries.find("laser.energy");
  const auto* duration = entries.find("laser.duration");
  if (!energy) throw ConfigError(0, "missing required key laser.energy");
  if (!duration) throw ConfigError(0, "missing required key laser.duration");
  cfg.laser.energy = require_si("laser.energy", *energy, Dim::Energy);
  cfg.laser.duration = require_si("laser.duration", *duration, Dim::Time);
  cfg.laser.lambda_center =
      entries.has("laser.lambda")
          ? require_si("laser.lambda", *entries.find("laser.lambda"), Dim::Length)
          : cfg.species.lambda_sp;
  const auto* period = entries.find("laser.period");
  const auto* rep = entries.find("laser.rep_rate");
  if (period && rep)
    throw ConfigError(rep->line, "give laser.period or laser.rep_rate, not both");
  if (period) {
    cfg.laser.period = require_si("laser.period", *period, Dim::Time);
  } else if (rep) {
    const double f = require_si("laser.rep_rate", *rep, Dim::Frequency);
    if (!(f > 0.0)) throw ConfigError(rep->line, "rep_rate must be positive");
    cfg.laser.period = 1.0 / f;
  } else {
    throw ConfigError(0, "missing laser.period or laser.rep_rate");
  }

  // cw (optional, all-or-nothing)
  if (entries.has("cw.intensity") || entries.has("cw.lambda") ||
      entries.has("cw.sigma")) {
    if (!entries.has("cw.intensity") || !entries.has("cw.lambda") ||
        !entries.has("cw.sigma"))
      throw ConfigError(0, "cw block needs intensity, lambda, and sigma");
    CwLaser cw;
    cw.intensity =
        require_si("cw.intensity", *entries.find("cw.intensity"), Dim::Intensity);
    cw.lambda = require_si("cw.lambda", *entries.find("cw.lambda"), Dim::Length);
    cw.sigma_cw = require_si("cw.sigma", *entries.find("cw.sigma"), Dim::Area);
    cfg.cw = cw;
  }

  // beam + trap
  const auto* waist = entries.find("beam.waist");
  if (!waist) throw ConfigError(0, "missing required key beam.waist");
  cfg.beam.waist = require_si("beam.waist", *waist, Dim::Length);
  const auto* blen = entries.find("beam.length");
  const auto* trap = entries.find("trap.preset");
  if (blen && trap)
    throw ConfigError(trap->line, "give beam.length or trap.preset, not both");
  if (blen) {
    cfg.beam.overlap_length = require_si("beam.length", *blen, Dim::Length);
  } else if (trap) {
    cfg.beam.overlap_length = find_trap(trap->value).representative_size_m();
  } else {
    throw ConfigError(0, "missing beam.length or trap.preset");
  }

  // vapor
  const auto* temp = entries.find("vapor.temperature");
  if (!temp) throw ConfigError(0, "missing required key vapor.temperature");
  const double temperature =
      require_si("vapor.temperature", *temp, Dim::Temperature);
  const auto* dens = entries.find("vapor.density");
  const auto* pres = entries.find("vapor.pressure");
  if (dens && pres)
    throw ConfigError(pres->line, "give vapor.density or vapor.pressure, not both");
  if (dens) {
    cfg.vapor = Vapor::from_density(
        require_si("vapor.density", *dens, Dim::NumberDensity), temperature,
        cfg.species.mass);
  } else if (pres) {
    cfg.vapor = Vapor::from_pressure(
        require_si("vapor.pressure", *pres, Dim::Pressure), temperature,
        cfg.species.mass);
  } else {
    throw ConfigError(0, "missing vapor.density or vapor.pressure");
  }

  // method
  if (const auto* e = entries.find("run.method")) {
    const std::string m = lower(e->value);
    if (m == "analytic") cfg.method = flux::Method::analytic;
    else if (m == "quadrature") cfg.method = flux::Method::quadrature;
    else if (m == "monte_carlo") cfg.method = flux::Method::monte_carlo;
    else throw ConfigError(e->line, "unknown method '" + e->value + "'");
  }
  if (const auto* e = entries.find("run.threads"))
    cfg.n_threads = static_cast<int>(parse_number(*e));

  // scan block (optional as a whole, but all-or-nothing)
  const auto* axis = entries.find("scan.axis");
  if (axis || entries.has("scan.min") || entries.has("scan.max") ||
      entries.has("scan.points")) {
    if (!axis) throw ConfigError(0, "scan block needs scan.axis");
    ScanAxisSpec spec;
    const std::string a = lower(axis->value);
    bool found = false;
    for (const Axis cand : {Axis::detuning, Axis::pulse_energy, Axis::waist,
                            Axis::overlap_length, Axis::duration, Axis::density}) {
      if (a == axis_name(cand)) {
        spec.axis = cand;
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError(axis->line, "unknown scan axis '" + a + "'");
    const auto* mn = entries.find("scan.min");
    const auto* mx = entries.find("scan.max");
    const auto* np = entries.find("scan.points");
    if (!mn || !mx || !np)
      throw ConfigError(axis->line, "scan block needs min, max, and points");
    const Dim dim = axis_dim(spec.axis);
    spec.min = require_si("scan.min", *mn, dim);
    spec.max = require_si("scan.max", *mx, dim);
    spec.points = static_cast<int>(parse_number(*np));
    if (const auto* sp = entries.find("scan.spacing")) {
      const std::string s = lower(sp->value);
      if (s == "linear") spec.spacing = Spacing::linear;
      else if (s == "log") spec.spacing = Spacing::log;
      else throw ConfigError(sp->line, "spacing must be linear or log");
    }
    cfg.axis = spec;
  }

  // mc block
  if (const auto* e = entries.find("mc.samples"))
    cfg.mc_samples = static_cast<long>(parse_number(*e));
  if (const auto* e = entries.find("mc.seed"))
    cfg.mc_seed = static_cast<std::uint64_t>(parse_number(*e));

  try {
    cfg.validate();
  } catch (const ValidationError& err) {
    throw ConfigError(0, err.what());
  }
  return cfg;
}

namespace {

// One scan point: apply the axis value, derive P0, evaluate the flux.
ScanRow eval_at(const ScanConfig& cfg, const std::optional<Axis>& axis,
                double axis_value, std::uint64_t row_seed) {
  PulsedLaser laser = cfg.laser;
  BeamGeometry beam = cfg.beam;
  Vapor vapor = cfg.vapor;
  double detuning = 0.0;
  if (axis) {
    switch (*axis) {
      case Axis::detuning: detuning = axis_value; break;
      case Axis::pulse_energy: laser.energy = axis_value; break;
      case Axis::waist: beam.waist = axis_value; break;
      case Axis::overlap_length: beam.overlap_length = axis_value; break;
      case Axis::duration: laser.duration = axis_value; break;
      case Axis::density: vapor.density = axis_value; break;
    }
  }
  laser.validate();
  beam.validate();
  vapor.validate();

  ScanRow row;
  row.axis_value = axis_value;
  double p0 = bloch::p_ion_focus(laser, beam, cfg.species, &row.warnings);
  if (axis && *axis == Axis::detuning)
    p0 *= bloch::spectral_weight(detuning, laser.duration);
  row.p0 = p0;

  // Closed-form validity flags for this point's pulse parameters.
  {
    bloch::PulseParams pp;
    pp.gamma = cfg.species.gamma;
    pp.tau = laser.duration;
    pp.period = laser.period;
    const double intensity = peak_intensity(laser, beam);
    pp.g = cfg.species.gamma *
           std::sqrt(intensity / (2.0 * saturation_intensity(cfg.species)));
    pp.Gamma = ionization_rate(intensity, cfg.species.sigma_pi, laser.lambda_center);
    if (cfg.cw)
      pp.Gamma_cw =
          ionization_rate(cfg.cw->intensity, cfg.cw->sigma_cw, cfg.cw->lambda);
    for (const Warning w : bloch::validity_warnings(pp)) row.warnings.push_back(w);
  }
  for (const Warning w : beam_warnings(beam, laser.lambda_center))
    row.warnings.push_back(w);

  flux::LoadingVolume volume{beam.waist, beam.overlap_length};
  flux::MonteCarloOptions mc;
  mc.n_samples = cfg.mc_samples;
  mc.seed = row_seed;
  mc.n_threads = cfg.n_threads;
  const flux::FluxResult r =
      flux::evaluate(vapor, volume, p0, laser.period, cfg.method, mc);
  row.flux = r.flux;
  row.rate = r.rate;
  row.efficiency = r.efficiency;
  if (cfg.method == flux::Method::monte_carlo) row.std_error = r.std_error;
  for (const Warning w : r.warnings) row.warnings.push_back(w);
  // de-duplicate, preserving first occurrence
  std::vector<Warning> unique;
  for (const Warning w : row.warnings)
    if (std::find(unique.begin(), unique.end(), w) == unique.end())
      unique.push_back(w);
  row.warnings = std::move(unique);
  return row;
}

std::uint64_t row_seed(const ScanConfig& cfg, int index) {
  const std::uint64_t base = cfg.mc_seed.value_or(0);
  return rng::mix64(base + rng::golden * static_cast<std::uint64_t>(index + 1));
}

}  // namespace

ScanRow evaluate_point(const ScanConfig& config) {
  config.validate();
  return eval_at(config, std::nullopt, 0.0, row_seed(config, 0));
}

std::vector<ScanRow> run_scan(const ScanConfig& config) {
  config.validate();
  if (!config.axis) throw ValidationError("run_scan: config has no scan block");
  const ScanAxisSpec& spec = *config.axis;
  std::vector<double> values(spec.points);
  for (int i = 0; i < spec.points; ++i) {
    const double t = static_cast<double>(i) / (spec.points - 1);
    values[i] = spec.spacing == Spacing::linear
                    ? spec.min + t * (spec.max - spec.min)
                    : spec.min * std::pow(spec.max / spec.min, t);
  }

  std::vector<ScanRow> rows(spec.points);
  const bool parallel_points =
      config.method != flux::Method::monte_carlo && config.n_threads != 1;
  int n_threads = config.n_threads > 0
                      ? config.n_threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (!parallel_points || n_threads < 2 || spec.points < 4) {
    for (int i = 0; i < spec.points; ++i)
      rows[i] = eval_at(config, spec.axis, values[i], row_seed(config, i));
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_threads);
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t]() {
        try {
          for (int i = next.fetch_add(1); i < spec.points;
               i = next.fetch_add(1))
            rows[i] = eval_at(config, spec.axis, values[i], row_seed(config, i));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return rows;
}

namespace {

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const std::vector<ScanRow>& rows, Axis axis) {
  std::string out = std::string(axis_column_name(axis)) +
                    ",p0,flux_per_m2_s,rate_per_s,efficiency,stderr,warnings\n";
  for (const auto& r : rows) {
    out += format_sig(axis_to_display(axis, r.axis_value));
    out += ',' + format_sig(r.p0);
    out += ',' + format_sig(r.flux);
    out += ',' + format_sig(r.rate);
    out += ',' + format_sig(r.efficiency);
    out += ',';
    if (r.std_error) out += format_sig(*r.std_error);
    out += ',' + csv_quote(join_warning_codes(r.warnings));
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<ScanRow>& rows, Axis axis) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row[axis_column_name(axis)] = axis_to_display(axis, r.axis_value);
    row["p0"] = r.p0;
    row["flux_per_m2_s"] = r.flux;
    row["rate_per_s"] = r.rate;
    row["efficiency"] = r.efficiency;
    if (r.std_error) row["stderr"] = *r.std_error;
    else row["stderr"] = nullptr;
    nlohmann::json warn = nlohmann::json::array();
    for (const Warning w : r.warnings) warn.push_back(warning_code(w));
    row["warnings"] = warn;
    arr.push_back(row);
  }
  return arr.dump(2) + "\n";
}

void write_csv(const std::vector<ScanRow>& rows, Axis axis,
               const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open output file '" + path + "'");
  os << to_csv(rows, axis);
  if (!os) throw ValidationError("failed writing output file '" + path + "'");
}

std::string report(const ScanConfig& config, const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os.precision(4);
  const Species& s = config.species;
  const PulsedLaser& l = config.laser;
  const double vbar = config.vapor.mean_speed();
  const double isat = saturation_intensity(s);
  const double ipeak = peak_intensity(l, config.beam);
  const double theta = rabi_angle(l, config.beam, s);
  const double gam_pi = ionization_rate(ipeak, s.sigma_pi, l.lambda_center);

  os << "ionload report\n";
  os << "species: " << s.name << "  lambda_sp " << s.lambda_sp / units::nm
     << " nm, lambda_ion " << s.lambda_ion / units::nm << " nm, gamma/2pi "
     << s.gamma / (2.0 * k::pi * units::MHz) << " MHz, sigma "
     << s.sigma_pi / units::cm2 << " cm^2, mass " << s.mass / k::amu << " u\n";
  os << "laser:   " << l.energy / units::pJ << " pJ, " << l.duration / units::ps
     << " ps pulses at " << l.lambda_center / units::nm << " nm, period "
     << l.period / units::ns << " ns (" << l.rep_rate() / units::MHz
     << " MHz)\n";
  if (config.cw) {
    const double gcw =
        ionization_rate(config.cw->intensity, config.cw->sigma_cw, config.cw->lambda);
    os << "cw:      " << config.cw->intensity / units::W_per_cm2
       << " W/cm^2 at " << config.cw->lambda / units::nm
       << " nm, Gamma_cw " << gcw << " 1/s (neglected in rate estimates)\n";
  }
  os << "beam:    waist " << config.beam.waist / units::um << " um, overlap "
     << config.beam.overlap_length / units::um << " um\n";
  os << "vapor:   n0 " << config.vapor.density / units::per_cm3
     << " cm^-3, T " << config.vapor.temperature << " K, vbar " << vbar
     << " m/s, vbar*T " << vbar * l.period / units::um << " um\n";
  os << "derived: I_sat " << isat / units::W_per_cm2 << " W/cm^2, I_peak "
     << ipeak << " W/m^2, theta " << theta << " rad, Gamma " << gam_pi
     << " 1/s\n";

  // Engineering forms: R = C_R E^2 (L/rho^2)(tau/T), eta = C_eta E^2 tau/rho^3
  // with E in pJ, lengths in um, tau in ps (coefficients for this species
  // and vapor).
  {
    PulsedLaser unit_laser = l;
    unit_laser.energy = units::pJ;
    unit_laser.duration = units::ps;
    unit_laser.period = l.period;
    BeamGeometry unit_beam{units::um, units::um};
    const double p0_unit = bloch::p_ion_focus(unit_laser, unit_beam, s);
    const double c_rate = k::pi * config.vapor.density * p0_unit * 1e-6 / 4.0;
    const double c_eta = p0_unit * units::um / (2.0 * vbar * l.period);
    os << "scaling: R ~ " << c_rate
       << " * E^2 (L/rho^2) (tau/T) 1/s   [E pJ, L,rho um]\n";
    os << "         eta ~ " << c_eta
       << " * E^2 tau / rho^3             [E pJ, tau ps, rho um]\n";
  }

  os << "method:  " << flux::method_name(config.method) << "\n";
  if (rows.size() == 1) {
    const ScanRow& r = rows.front();
    os << "results: P0 " << r.p0 << ", flux " << r.flux << " m^-2 s^-1, rate "
       << r.rate << " 1/s, efficiency " << r.efficiency;
    if (r.std_error) os << ", stderr " << *r.std_error << " m^-2 s^-1";
    os << "\n";
    os << "warnings: "
       << (r.warnings.empty() ? std::string("none")
                              : join_warning_codes(r.warnings))
       << "\n";
  } else if (config.axis) {
    os << "scan:    " << axis_name(config.axis->axis) << ", " << rows.size()
       << " points in ["
       << axis_to_display(config.axis->axis, config.axis->min) << ", "
       << axis_to_display(config.axis->axis, config.axis->max) << "] "
       << axis_column_name(config.axis->axis) << " units\n";
    std::vector<Warning> seen;
    for (const auto& r : rows)
      for (const Warning w : r.warnings)
        if (std::find(seen.begin(), seen.end(), w) == seen.end())
          seen.push_back(w);
    os << "warnings: "
       << (seen.empty() ? std::string("none") : join_warning_codes(seen))
       << "\n";
  }
  return os.str();
}

}  // namespace ionload::scan
