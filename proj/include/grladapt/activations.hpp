#ifndef GRLADAPT_ACTIVATIONS_HPP_
#define GRLADAPT_ACTIVATIONS_HPP_

#include <string>

#include "grladapt/errors.hpp"
#include "grladapt/matrix.hpp"

namespace grladapt {

enum class Activation { identity, sigmoid, leaky_relu, softmax };

inline const char* to_string(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::sigmoid: return "sigmoid";
    case Activation::leaky_relu: return "leaky_relu";
    case Activation::softmax: return "softmax";
  }
  return "?";
}

inline Activation activation_from_string(const std::string& s) {
  if (s == "identity") return Activation::identity;
  if (s == "sigmoid") return Activation::sigmoid;
  if (s == "leaky_relu") return Activation::leaky_relu;
  if (s == "softmax") return Activation::softmax;
  throw ConfigError("unknown activation '" + s + "'");
}

// Exponent arguments are clamped to +-500; the clamp is invisible at the
// 1e-12 level but keeps exp() out of overflow territory.
inline constexpr double kExpClamp = 500.0;

template <typename Derived>
Matrix sigmoid(const Eigen::MatrixBase<Derived>& x) {
  return (1.0 / (1.0 + (-x.array().min(kExpClamp).max(-kExpClamp)).exp())).matrix();
}

template <typename Derived>
Matrix leaky_relu(const Eigen::MatrixBase<Derived>& x, double slope) {
  if (!(slope > 0.0 && slope < 1.0)) {
    throw ConfigError("leaky_relu slope must lie in (0,1), got " + std::to_string(slope));
  }
  return x.array().max(x.array() * slope).matrix();
}

// Row-wise softmax with max-subtraction; every row sums to 1.
template <typename Derived>
Matrix softmax_rows(const Eigen::MatrixBase<Derived>& x) {
  Matrix out = x;
  for (Index i = 0; i < out.rows(); ++i) {
    auto row = out.row(i).array();
    row -= row.maxCoeff();
    row = row.exp();
    row /= row.sum();
  }
  return out;
}

}  // namespace grladapt

#endif  // GRLADAPT_ACTIVATIONS_HPP_
