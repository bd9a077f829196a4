#include "hmhd/ledger.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>

#include "hmhd/errors.hpp"

namespace hmhd {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void EnergyLedger::write_csv(std::ostream& os) const {
  os << kCsvHeader << '\n';
  for (const auto& r : rows_) {
    os << fmt(r.t) << ',' << fmt(r.e_u) << ',' << fmt(r.e_b) << ',' << fmt(r.dissipation)
       << ',' << fmt(r.hs_u) << ',' << fmt(r.hs_b) << ',' << fmt(r.div_u) << ','
       << fmt(r.div_b) << ',' << fmt(r.hall_flux) << ',' << fmt(r.balance_residual) << '\n';
  }
}

EnergyLedger EnergyLedger::read_csv(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line)) throw IoError(name + ": empty ledger file");
  if (line != kCsvHeader) throw IoError(name + ": unexpected ledger header '" + line + "'");
  EnergyLedger ledger;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    double v[10];
    for (int i = 0; i < 10; ++i) {
      if (!std::getline(cells, cell, ',')) {
        throw IoError(name + ":" + std::to_string(lineno) + ": expected 10 columns");
      }
      // stod rejects subnormal results as out of range even though the writer
      // emits them verbatim, so parse with strtod and keep anything finite.
      // No conversion, trailing garbage, overflow, inf and nan all fail.
      const char* first = cell.c_str();
      char* last = nullptr;
      const double parsed = std::strtod(first, &last);
      if (last == first || *last != '\0' || !std::isfinite(parsed)) {
        throw IoError(name + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      v[i] = parsed;
    }
    ledger.append(LedgerRow{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]});
  }
  return ledger;
}

}  // namespace hmhd
