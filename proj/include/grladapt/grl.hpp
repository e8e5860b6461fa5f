#ifndef GRLADAPT_GRL_HPP_
#define GRLADAPT_GRL_HPP_

#include <algorithm>
#include <string>

#include "grladapt/errors.hpp"
#include "grladapt/matrix.hpp"

namespace grladapt {

// Gradient reversal: identity on the forward pass, -lambda_effective on the
// backward pass. The scaling is a single multiply per coefficient, so the
// backward contract (-lambda * g, exact) holds bit-for-bit.
struct GrlNode {
  double lambda_effective = 0.0;
};

inline Matrix grl_forward(const Matrix& x) { return x; }

inline Matrix grl_backward(const Matrix& g, double lambda_effective) {
  if (!(lambda_effective >= 0.0)) {
    throw ConfigError("grl_backward: lambda_effective must be >= 0, got " +
                      std::to_string(lambda_effective));
  }
  return (-lambda_effective) * g;
}

// Epoch ramp for the reversal coefficient: min(epoch/10, 1) * lambda_base,
// with 0-based epochs so the first epoch uses 0.
inline double lambda_schedule(long epoch, double lambda_base) {
  if (epoch < 0) throw ConfigError("lambda_schedule: epoch must be >= 0");
  return std::min(static_cast<double>(epoch) / 10.0, 1.0) * lambda_base;
}

}  // namespace grladapt

#endif  // GRLADAPT_GRL_HPP_
