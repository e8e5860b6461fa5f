#include "grladapt/network.hpp"

#include <string>

#include "grladapt/errors.hpp"
#include "grladapt/grl.hpp"

namespace grladapt {

Index NetworkParams::feature_dim() const {
  if (feature_layer_index < 1) throw StateError("feature layer index not set");
  return main[static_cast<std::size_t>(feature_layer_index) - 1].spec.output_dim;
}

LayerView NetworkParams::shared_layers() const {
  const auto f = static_cast<std::size_t>(feature_layer_index);
  return LayerView(main.data(), f);
}

LayerView NetworkParams::class_head_layers() const {
  const auto f = static_cast<std::size_t>(feature_layer_index);
  return LayerView(main.data() + f, main.size() - f);
}

Index NetworkParams::parameter_count() const {
  return stack_parameter_count(main) + stack_parameter_count(domain_head);
}

void NetworkParams::validate() const {
  if (main.empty()) throw ConfigError("network has no layers");
  for (std::size_t i = 0; i + 1 < main.size(); ++i) {
    if (main[i].spec.output_dim != main[i + 1].spec.input_dim) {
      throw ConfigError("main stack dimension mismatch at layer " + std::to_string(i));
    }
    if (main[i].spec.activation == Activation::softmax) {
      throw ConfigError("softmax allowed only as the terminal activation of a head");
    }
  }
  if (main.back().spec.activation != Activation::softmax) {
    throw ConfigError("class head must end in softmax");
  }
  if (feature_layer_index < 0 || feature_layer_index > hidden_layer_count()) {
    throw ConfigError("feature layer index " + std::to_string(feature_layer_index) +
                      " outside [0, " + std::to_string(hidden_layer_count()) + "]");
  }
  if (!domain_head.empty()) {
    if (feature_layer_index < 1) throw StateError("domain head present but partition not set");
    if (domain_head.front().spec.input_dim != feature_dim()) {
      throw ConfigError("domain head input dim does not match feature layer output");
    }
    for (std::size_t i = 0; i + 1 < domain_head.size(); ++i) {
      if (domain_head[i].spec.output_dim != domain_head[i + 1].spec.input_dim) {
        throw ConfigError("domain head dimension mismatch at layer " + std::to_string(i));
      }
    }
    if (domain_head.back().spec.activation != Activation::softmax ||
        domain_head.back().spec.output_dim != 2) {
      throw ConfigError("domain head must end in a 2-way softmax");
    }
  }
}

NetworkParams build_main_network(Index n_input, Index n_classes, std::span<const Index> hidden_widths,
                                 std::uint64_t seed) {
  if (hidden_widths.empty()) throw ConfigError("hidden layer list must not be empty");
  if (n_input < 1 || n_classes < 1) throw ConfigError("n_input and n_classes must be >= 1");
  Rng rng = make_rng(seed);
  NetworkParams net;
  Index in = n_input;
  for (Index width : hidden_widths) {
    net.main.push_back(init_layer(LayerSpec{in, width, Activation::sigmoid}, rng));
    in = width;
  }
  net.main.push_back(init_layer(LayerSpec{in, n_classes, Activation::softmax}, rng));
  net.validate();
  return net;
}

NetworkParams attach_domain_head(NetworkParams net, int f, std::span<const Index> widths, double slope,
                                 std::uint64_t seed) {
  if (net.has_domain_head()) throw StateError("domain head already attached");
  if (f < 1 || f > net.hidden_layer_count()) {
    throw ConfigError("feature layer index " + std::to_string(f) + " outside [1, " +
                      std::to_string(net.hidden_layer_count()) + "]");
  }
  net.feature_layer_index = f;
  Rng rng = make_rng(seed);
  Index in = net.feature_dim();
  for (Index width : widths) {
    net.domain_head.push_back(init_layer(LayerSpec{in, width, Activation::leaky_relu, slope}, rng));
    in = width;
  }
  net.domain_head.push_back(init_layer(LayerSpec{in, 2, Activation::softmax}, rng));
  net.validate();
  return net;
}

NetworkParams remove_domain_head(NetworkParams net) {
  net.domain_head.clear();
  return net;
}

Matrix class_forward(const NetworkParams& net, const Matrix& input) {
  return stack_forward(net.main, input);
}

Matrix domain_forward(const NetworkParams& net, const Matrix& input) {
  if (!net.has_domain_head()) throw StateError("domain head absent");
  Matrix features = stack_forward(net.shared_layers(), input);
  return stack_forward(net.domain_head, grl_forward(features));
}

bool networks_bitwise_equal(const NetworkParams& a, const NetworkParams& b) {
  return a.feature_layer_index == b.feature_layer_index && stacks_bitwise_equal(a.main, b.main) &&
         stacks_bitwise_equal(a.domain_head, b.domain_head);
}

}  // namespace grladapt
