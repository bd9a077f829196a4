#include "hmhd/plotdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hmhd/errors.hpp"
#include "hmhd/ledger.hpp"

namespace hmhd {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("plot-data: cannot open " + path.string() + " for writing");
  return os;
}

void emit_from_ledger(std::ifstream& is, const std::string& name, const fs::path& outdir) {
  is.clear();
  is.seekg(0);
  const EnergyLedger ledger = EnergyLedger::read_csv(is, name);
  {
    auto os = open_out(outdir / "energy_vs_t.dat");
    os << "# t E_u E_B E_total balance_residual\n";
    for (const LedgerRow& r : ledger.rows()) {
      os << fmt17(r.t) << ' ' << fmt17(r.e_u) << ' ' << fmt17(r.e_b) << ' '
         << fmt17(r.e_u + r.e_b) << ' ' << fmt17(r.balance_residual) << '\n';
    }
  }
  {
    auto os = open_out(outdir / "hsigma_vs_t.dat");
    os << "# t Hs_u Hs_B Hs_combined\n";
    for (const LedgerRow& r : ledger.rows()) {
      os << fmt17(r.t) << ' ' << fmt17(r.hs_u) << ' ' << fmt17(r.hs_b) << ' '
         << fmt17(std::hypot(r.hs_u, r.hs_b)) << '\n';
    }
  }
}

// The caller has already consumed and matched the header line.
void emit_from_sweep_report(std::ifstream& is, const std::string& name,
                            const fs::path& outdir) {
  std::string line;
  std::map<double, double> group;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    double v[6];
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(cells, cell, ',')) {
        throw IoError(name + ":" + std::to_string(lineno) + ": expected 6 columns");
      }
      try {
        v[i] = std::stod(cell);
      } catch (const std::exception&) {
        throw IoError(name + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    auto [it, inserted] = group.try_emplace(v[0], v[5]);
    if (!inserted) it->second = std::max(it->second, v[5]);
  }
  auto os = open_out(outdir / "cauchy_vs_cutoff.dat");
  os << "# min_cutoff max_combined_difference\n";
  for (const auto& [cutoff, worst] : group) {
    os << fmt17(cutoff) << ' ' << fmt17(worst) << '\n';
  }
}

}  // namespace

void emit_plotdata(const fs::path& input, const fs::path& outdir) {
  std::ifstream is(input);
  if (!is) throw IoError("plot-data: cannot open " + input.string());
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) throw IoError("plot-data: cannot create " + outdir.string());

  std::string header;
  if (!std::getline(is, header)) throw IoError("plot-data: " + input.string() + " is empty");
  if (header == EnergyLedger::kCsvHeader) {
    emit_from_ledger(is, input.string(), outdir);
  } else if (header == "pair_small,pair_large,t,du,dB,combined") {
    emit_from_sweep_report(is, input.string(), outdir);
  } else {
    throw IoError("plot-data: " + input.string() + " has an unrecognized header");
  }
}

}  // namespace hmhd
