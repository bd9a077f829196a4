#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

namespace hmhd {

// One sampled row of the energy accounting. Energies are E = (1/2)||.||^2;
// D is the instantaneous dissipation ||Lambda^alpha B||^2; balance_residual
// is |E_u + E_B + integrated D - E(0)|, the defect of the exact balance law.
struct LedgerRow {
  double t = 0.0;
  double e_u = 0.0;
  double e_b = 0.0;
  double dissipation = 0.0;
  double hs_u = 0.0;
  double hs_b = 0.0;
  double div_u = 0.0;
  double div_b = 0.0;
  double hall_flux = 0.0;
  double balance_residual = 0.0;
};

class EnergyLedger {
 public:
  static constexpr const char* kCsvHeader =
      "t,E_u,E_B,D,Hs_u,Hs_B,div_u,div_B,hall_flux,balance_residual";

  void append(const LedgerRow& row) { rows_.push_back(row); }
  const std::vector<LedgerRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  // Doubles serialized with %.17g, so values survive a round-trip exactly
  // and reruns produce byte-identical files.
  void write_csv(std::ostream& os) const;
  static EnergyLedger read_csv(std::istream& is, const std::string& name);

 private:
  std::vector<LedgerRow> rows_;
};

using LedgerSink = std::function<void(const LedgerRow&)>;

}  // namespace hmhd
