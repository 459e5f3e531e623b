#pragma once

#include <string>

#include "chevron/field.hpp"

namespace chevron {

// Binary state snapshot, little-endian:
//   magic "CHEV1", u32 version (= 1), u32 nx, u32 ny, f64 Lx, f64 Ly, f64 t,
//   then phi as nx*ny f64 row-major, then A as nx*ny (re, im) f64 pairs
//   row-major.
void write_snapshot(const std::string& path, const SimState& s);

// Throws on wrong magic or version, truncation, or non-finite payload.
SimState read_snapshot(const std::string& path);

}  // namespace chevron
