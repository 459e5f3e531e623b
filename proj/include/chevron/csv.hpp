#pragma once

#include <string>
#include <vector>

#include "chevron/energy.hpp"

namespace chevron {

// Doubles are rendered with 17 significant digits so values round-trip.
std::string format_double(double v);

void write_energy_csv(const std::string& path, const std::vector<EnergyRecord>& records);

// Strict parser; throws naming the offending 1-based line.
std::vector<EnergyRecord> read_energy_csv(const std::string& path);

}  // namespace chevron
