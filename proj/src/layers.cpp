#include "grladapt/layers.hpp"

#include <cmath>
#include <string>

#include "grladapt/errors.hpp"

namespace grladapt {

void LayerSpec::validate() const {
  if (input_dim < 1 || output_dim < 1) {
    throw ConfigError("layer dims must be >= 1, got " + std::to_string(input_dim) + "x" +
                      std::to_string(output_dim));
  }
  if (activation == Activation::leaky_relu && !(leaky_slope > 0.0 && leaky_slope < 1.0)) {
    throw ConfigError("leaky_relu slope must lie in (0,1), got " + std::to_string(leaky_slope));
  }
}

DenseLayer init_layer(const LayerSpec& spec, Rng& rng) {
  spec.validate();
  const double bound = std::sqrt(6.0 / static_cast<double>(spec.input_dim + spec.output_dim));
  std::uniform_real_distribution<double> dist(-bound, bound);
  DenseLayer layer;
  layer.spec = spec;
  layer.weights.resize(spec.input_dim, spec.output_dim);
  for (Index i = 0; i < spec.input_dim; ++i) {
    for (Index j = 0; j < spec.output_dim; ++j) {
      layer.weights(i, j) = dist(rng);
    }
  }
  layer.bias = RowVector::Zero(spec.output_dim);
  return layer;
}

Matrix affine_forward(const Matrix& input, const Matrix& weights, const RowVector& bias) {
  if (input.cols() != weights.rows()) {
    throw DimensionError("affine_forward: input " + shape_str(input) + " incompatible with weights " +
                         shape_str(weights));
  }
  if (bias.cols() != weights.cols()) {
    throw DimensionError("affine_forward: bias 1x" + std::to_string(bias.cols()) +
                         " incompatible with weights " + shape_str(weights));
  }
  return (input * weights).rowwise() + bias;
}

namespace {

Matrix apply_activation(const LayerSpec& spec, const Matrix& z) {
  switch (spec.activation) {
    case Activation::identity: return z;
    case Activation::sigmoid: return sigmoid(z);
    case Activation::leaky_relu: return leaky_relu(z, spec.leaky_slope);
    case Activation::softmax: return softmax_rows(z);
  }
  throw ConfigError("unhandled activation");
}

// dLoss/dz from dLoss/da and the cached forward values.
Matrix activation_backward(const LayerSpec& spec, const LayerCache& cache, const Matrix& grad_out) {
  switch (spec.activation) {
    case Activation::identity:
      return grad_out;
    case Activation::sigmoid:
      return (grad_out.array() * cache.output.array() * (1.0 - cache.output.array())).matrix();
    case Activation::leaky_relu:
      // Derivative at exactly 0 takes the positive-side value 1.
      return (grad_out.array() *
              (cache.pre_activation.array() >= 0.0).select(1.0, spec.leaky_slope))
          .matrix();
    case Activation::softmax: {
      // Row-wise Jacobian-vector product: dz_j = p_j * (g_j - sum_k g_k p_k).
      Matrix dz(grad_out.rows(), grad_out.cols());
      for (Index i = 0; i < grad_out.rows(); ++i) {
        const double dot = grad_out.row(i).dot(cache.output.row(i));
        dz.row(i) = cache.output.row(i).array() * (grad_out.row(i).array() - dot);
      }
      return dz;
    }
  }
  throw ConfigError("unhandled activation");
}

}  // namespace

Matrix stack_forward(LayerView layers, const Matrix& input, std::vector<LayerCache>* caches) {
  if (caches) {
    caches->clear();
    caches->reserve(layers.size());
  }
  Matrix x = input;
  for (const DenseLayer& layer : layers) {
    Matrix z = affine_forward(x, layer.weights, layer.bias);
    Matrix a = apply_activation(layer.spec, z);
    if (caches) {
      caches->push_back(LayerCache{std::move(x), std::move(z), a});
    }
    x = std::move(a);
  }
  if (x.size() > 0) ensure_finite(x, "stack_forward output");
  return x;
}

std::vector<LayerGrads> stack_backward(LayerView layers, const std::vector<LayerCache>& caches,
                                       const Matrix& upstream_grad) {
  if (caches.size() != layers.size()) {
    throw StateError("stack_backward: cache holds " + std::to_string(caches.size()) +
                     " layers, stack has " + std::to_string(layers.size()));
  }
  if (!layers.empty()) {
    const LayerCache& last = caches.back();
    if (upstream_grad.rows() != last.output.rows() || upstream_grad.cols() != last.output.cols()) {
      throw StateError("stack_backward: upstream grad " + shape_str(upstream_grad) +
                       " does not match cached output " + shape_str(last.output));
    }
  }
  std::vector<LayerGrads> grads(layers.size());
  Matrix grad_out = upstream_grad;
  for (std::size_t li = layers.size(); li-- > 0;) {
    const DenseLayer& layer = layers[li];
    const LayerCache& cache = caches[li];
    if (cache.input.cols() != layer.spec.input_dim) {
      throw StateError("stack_backward: cache layer " + std::to_string(li) + " input dim " +
                       std::to_string(cache.input.cols()) + " does not match spec " +
                       std::to_string(layer.spec.input_dim));
    }
    Matrix dz = activation_backward(layer.spec, cache, grad_out);
    grads[li].weight_grad = cache.input.transpose() * dz;
    grads[li].bias_grad = dz.colwise().sum();
    grads[li].input_grad = dz * layer.weights.transpose();
    grad_out = grads[li].input_grad;
  }
  return grads;
}

Index stack_parameter_count(LayerView layers) {
  Index n = 0;
  for (const DenseLayer& layer : layers) n += layer.parameter_count();
  return n;
}

bool stacks_bitwise_equal(LayerView a, LayerView b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!bitwise_equal(a[i].weights, b[i].weights)) return false;
    if (!bitwise_equal(a[i].bias, b[i].bias)) return false;
  }
  return true;
}

}  // namespace grladapt
