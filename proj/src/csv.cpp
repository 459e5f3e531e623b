#include "chevron/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chevron {

namespace {

constexpr const char* kHeader = "t,normA_sq,normPhi_sq,gradA_sq,gradPhi_sq,l4A,lyapunov,bound";
constexpr int kColumns = 8;

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& why) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_energy_csv(const std::string& path, const std::vector<EnergyRecord>& records) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("energy csv: cannot open '" + path + "' for writing");
  os << kHeader << '\n';
  for (const EnergyRecord& r : records) {
    os << format_double(r.t) << ',' << format_double(r.normA_sq) << ',' << format_double(r.normPhi_sq)
       << ',' << format_double(r.gradA_sq) << ',' << format_double(r.gradPhi_sq) << ','
       << format_double(r.l4A) << ',' << format_double(r.lyapunov) << ',' << format_double(r.bound)
       << '\n';
  }
  os.flush();
  if (!os) throw std::runtime_error("energy csv: write to '" + path + "' failed");
}

std::vector<EnergyRecord> read_energy_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("energy csv: cannot open '" + path + "'");

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) fail(path, 1, "empty file, expected header");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) fail(path, lineno, "bad header, expected '" + std::string(kHeader) + "'");

  std::vector<EnergyRecord> out;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    double vals[kColumns];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < kColumns; ++c) {
      if (c > 0) {
        if (p >= end || *p != ',') fail(path, lineno, "expected " + std::to_string(kColumns) + " columns");
        ++p;
      }
      auto [next, ec] = std::from_chars(p, end, vals[c]);
      if (ec != std::errc{}) fail(path, lineno, "column " + std::to_string(c + 1) + " is not a number");
      p = next;
    }
    if (p != end) fail(path, lineno, "trailing characters after column " + std::to_string(kColumns));

    EnergyRecord r;
    r.t = vals[0];
    r.normA_sq = vals[1];
    r.normPhi_sq = vals[2];
    r.gradA_sq = vals[3];
    r.gradPhi_sq = vals[4];
    r.l4A = vals[5];
    r.lyapunov = vals[6];
    r.bound = vals[7];
    out.push_back(r);
  }
  return out;
}

}  // namespace chevron
