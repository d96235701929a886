#include "ionload/presets.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ionload/constants.hpp"
#include "ionload/units.hpp"

namespace ionload {

namespace {

constexpr double two_pi = 2.0 * constants::pi;
constexpr double sigma_default = 1e-16 * units::cm2;  // order-of-magnitude

Species make_species(const char* name, double lambda_sp_nm, double lambda_ion_nm,
                     double gamma_over_2pi_MHz, double mass_u) {
  return Species{name,
                 lambda_sp_nm * units::nm,
                 lambda_ion_nm * units::nm,
                 two_pi * gamma_over_2pi_MHz * units::MHz,
                 sigma_default,
                 mass_u * constants::amu};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

const std::vector<Species>& species_presets() {
  // Wavelengths: 1S0 -> 1P1 and 1S0 -> continuum. Masses are standard
  // atomic weights. Only the Cd linewidth (91 MHz) is a measured input;
  // the others are nominal 100 MHz placeholders.
  static const std::vector<Species> table = {
      make_species("Be", 234.9, 133.0, 100.0, 9.0121831),
      make_species("Mg", 285.3, 162.0, 100.0, 24.305),
      make_species("Ca", 272.2, 203.0, 100.0, 40.078),
      make_species("Sr", 293.0, 218.0, 100.0, 87.62),
      make_species("Ba", 350.2, 238.0, 100.0, 137.327),
      make_species("Zn", 213.9, 132.0, 100.0, 65.38),
      make_species("Cd", 228.9, 138.0, 91.0, 112.414),
      make_species("Hg", 185.0, 119.0, 100.0, 200.592),
      make_species("Yb", 398.9, 198.0, 100.0, 173.045),
  };
  return table;
}

const std::vector<TrapPreset>& trap_presets() {
  using R = TrapPreset::Range;
  static const std::vector<TrapPreset> table = {
      {"ring_fork", "ring/fork quadrupole", R{0.8, 0.8}, R{500, 500}, 50.0,
       {R{0.5, 0.5}, R{0.75, 0.75}, R{1.25, 1.25}}},
      {"three_layer", "three-layer linear", R{0.2, 5.0}, R{300, 300}, 47.0,
       {R{0.6, 4.0}, R{8.1, 8.1}, R{8.3, 8.3}}},
      {"gaas_chip", "GaAs chip linear", R{0.08, 0.13}, R{60, 60}, 16.0,
       {R{0.8, 1.0}, R{3.3, 3.3}, R{4.3, 4.3}}},
      {"double_needle", "double-needle quadrupole", R{0.02, 5.0}, R{45, 500},
       29.0, {R{0.5, 10.0}, R{0.25, 5.0}, R{0.25, 5.0}}},
      {"four_rod", "four-rod linear", R{0.5, 2.0}, R{700, 700}, 36.0,
       {R{0.25, 0.70}, R{0.90, 0.90}, R{0.91, 0.91}}},
  };
  return table;
}

const Species& find_species(const std::string& key) {
  const std::string k = lower(key);
  for (const auto& s : species_presets())
    if (lower(s.name) == k) return s;
  std::string valid;
  for (const auto& s : species_presets()) valid += lower(s.name) + " ";
  throw ValidationError("unknown species '" + key + "' (valid: " + valid + ")");
}

const TrapPreset& find_trap(const std::string& key) {
  const std::string k = lower(key);
  for (const auto& t : trap_presets())
    if (t.key == k) return t;
  std::string valid;
  for (const auto& t : trap_presets()) valid += t.key + " ";
  throw ValidationError("unknown trap preset '" + key + "' (valid: " + valid + ")");
}

std::string species_csv() {
  std::ostringstream os;
  os.precision(12);
  os << "name,lambda_sp_nm,lambda_ion_nm,gamma_over_2pi_MHz,sigma_pi_cm2,mass_u\n";
  for (const auto& s : species_presets()) {
    os << s.name << ',' << s.lambda_sp / units::nm << ','
       << s.lambda_ion / units::nm << ',' << s.gamma / (two_pi * units::MHz)
       << ',' << s.sigma_pi / units::cm2 << ',' << s.mass / constants::amu
       << '\n';
  }
  return os.str();
}

std::string traps_csv() {
  std::ostringstream os;
  os.precision(12);
  os << "key,description,depth_min_eV,depth_max_eV,size_min_um,size_max_um,"
        "rf_drive_MHz,nu_x_min_MHz,nu_x_max_MHz,nu_y_min_MHz,nu_y_max_MHz,"
        "nu_z_min_MHz,nu_z_max_MHz\n";
  for (const auto& t : trap_presets()) {
    os << t.key << ",\"" << t.description << "\"," << t.depth_eV.first << ','
       << t.depth_eV.second << ',' << t.size_um.first << ',' << t.size_um.second
       << ',' << t.rf_drive_MHz;
    for (const auto& nu : t.secular_MHz) os << ',' << nu.first << ',' << nu.second;
    os << '\n';
  }
  return os.str();
}

}  // namespace ionload
