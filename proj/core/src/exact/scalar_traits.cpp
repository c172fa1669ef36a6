#include "locaut/exact/scalar_traits.hpp"

#include <string>

#include "locaut/error.hpp"

namespace locaut {

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::QR: return "QR";
    case Regime::QC: return "QC";
    case Regime::C64: return "C64";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "QR") return Regime::QR;
  if (text == "QC") return Regime::QC;
  if (text == "C64") return Regime::C64;
  throw Error(ErrorCode::FileFormat, "unknown regime '" + std::string(text) + "'");
}

}  // namespace locaut
