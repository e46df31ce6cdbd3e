#pragma once

namespace dwp {

/// Pressure closure p(rho).
struct StateLaw {
  enum class Kind { pressureless, linear, radiation };

  Kind kind = Kind::pressureless;
  double kappa = 0.0;    // linear: p = kappa * rho
  double c_light = 1.0;  // radiation: p = c^2 rho / 3

  static StateLaw pressureless() { return {}; }
  static StateLaw linear(double kappa);
  static StateLaw radiation(double c_light);

  double pressure(double rho) const noexcept {
    switch (kind) {
      case Kind::pressureless: return 0.0;
      case Kind::linear: return kappa * rho;
      case Kind::radiation: return c_light * c_light * rho / 3.0;
    }
    return 0.0;
  }

  bool operator==(const StateLaw&) const = default;
};

}  // namespace dwp
