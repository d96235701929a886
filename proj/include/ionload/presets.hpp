#pragma once

#include <string>
#include <vector>

#include "ionload/types.hpp"

namespace ionload {

// The nine two-valence-electron species commonly loaded in rf traps, with
// their 1S0->1P1 and ionization-threshold wavelengths. Wavelengths and the
// Cd linewidth are measured values; linewidths for the other species are
// nominal 100 MHz placeholders and sigma_pi is the order-of-magnitude
// 1e-16 cm^2 estimate throughout — override for quantitative work.
const std::vector<Species>& species_presets();

// The five trap geometries used for pulsed photoionization loading.
const std::vector<TrapPreset>& trap_presets();

// Lookup by case-insensitive key ("cd", "gaas_chip", ...). Throws
// ValidationError with the list of valid keys on a miss.
const Species& find_species(const std::string& key);
const TrapPreset& find_trap(const std::string& key);

// CSV export of the preset tables, one row per entry, unit-suffixed headers.
std::string species_csv();
std::string traps_csv();

}  // namespace ionload
