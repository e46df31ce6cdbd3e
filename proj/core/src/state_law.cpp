#include "dwp/state_law.hpp"

#include <cmath>

#include "dwp/errors.hpp"

namespace dwp {

StateLaw StateLaw::linear(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorKind::parameter, "state law kappa must be >= 0");
  }
  StateLaw law;
  law.kind = Kind::linear;
  law.kappa = kappa;
  return law;
}

StateLaw StateLaw::radiation(double c_light) {
  if (!(c_light > 0.0) || !std::isfinite(c_light)) {
    throw Error(ErrorKind::parameter, "speed of light must be > 0");
  }
  StateLaw law;
  law.kind = Kind::radiation;
  law.c_light = c_light;
  return law;
}

}  // namespace dwp
