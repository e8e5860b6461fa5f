#ifndef GRLADAPT_LAYERS_HPP_
#define GRLADAPT_LAYERS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "grladapt/activations.hpp"
#include "grladapt/matrix.hpp"
#include "grladapt/rng.hpp"

namespace grladapt {

inline constexpr double kDefaultLeakySlope = 0.01;

struct LayerSpec {
  Index input_dim = 0;
  Index output_dim = 0;
  Activation activation = Activation::identity;
  double leaky_slope = kDefaultLeakySlope;

  void validate() const;
};

// One fully connected layer: out = act(in * weights + bias).
struct DenseLayer {
  LayerSpec spec;
  Matrix weights;   // input_dim x output_dim
  RowVector bias;   // 1 x output_dim

  Index parameter_count() const { return weights.size() + bias.size(); }
};

// Glorot-uniform init, uniform in +-sqrt(6/(fan_in+fan_out)), zero bias.
DenseLayer init_layer(const LayerSpec& spec, Rng& rng);

Matrix affine_forward(const Matrix& input, const Matrix& weights, const RowVector& bias);

struct LayerCache {
  Matrix input;
  Matrix pre_activation;
  Matrix output;
};

struct LayerGrads {
  Matrix weight_grad;
  RowVector bias_grad;
  Matrix input_grad;
};

using LayerView = std::span<const DenseLayer>;

// Forward through a stack. When `caches` is given it receives one entry per
// layer holding the exact activations the matching backward pass needs.
Matrix stack_forward(LayerView layers, const Matrix& input, std::vector<LayerCache>* caches = nullptr);

// Analytic gradients of a scalar loss w.r.t. every weight, bias and the stack
// input, given dLoss/d(stack output). Throws StateError when the cache does
// not match the stack or the upstream shape.
std::vector<LayerGrads> stack_backward(LayerView layers, const std::vector<LayerCache>& caches,
                                       const Matrix& upstream_grad);

Index stack_parameter_count(LayerView layers);

bool stacks_bitwise_equal(LayerView a, LayerView b);

}  // namespace grladapt

#endif  // GRLADAPT_LAYERS_HPP_
