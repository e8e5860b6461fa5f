#ifndef GRLADAPT_NETWORK_HPP_
#define GRLADAPT_NETWORK_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "grladapt/layers.hpp"

namespace grladapt {

// The partitioned network. `main` holds the hidden layers plus the softmax
// output of the class path; `feature_layer_index` (f) splits it into the
// shared feature stack main[0..f) and the class head main[f..). The domain
// head, when attached, reads the shared output through a gradient reversal
// node. f == 0 means the partition is not set (no head ever attached).
struct NetworkParams {
  std::vector<DenseLayer> main;
  std::vector<DenseLayer> domain_head;
  int feature_layer_index = 0;

  bool has_domain_head() const { return !domain_head.empty(); }
  Index hidden_layer_count() const { return static_cast<Index>(main.size()) - 1; }
  Index input_dim() const { return main.front().spec.input_dim; }
  Index n_classes() const { return main.back().spec.output_dim; }
  Index feature_dim() const;

  LayerView shared_layers() const;
  LayerView class_head_layers() const;

  Index parameter_count() const;
  void validate() const;
};

// Sigmoid hidden layers of the given widths plus a softmax output.
NetworkParams build_main_network(Index n_input, Index n_classes, std::span<const Index> hidden_widths,
                                 std::uint64_t seed);

// Attach the 2-way domain discriminator (leaky-ReLU hidden layers, softmax
// out) at the output of hidden layer f (1-based), recording the partition.
NetworkParams attach_domain_head(NetworkParams net, int f, std::span<const Index> widths, double slope,
                                 std::uint64_t seed);

NetworkParams remove_domain_head(NetworkParams net);

// Class-path forward (shared stack + class head); the domain head never
// affects this path.
Matrix class_forward(const NetworkParams& net, const Matrix& input);

// Domain-path forward: shared stack, gradient-reversal identity, domain head.
Matrix domain_forward(const NetworkParams& net, const Matrix& input);

bool networks_bitwise_equal(const NetworkParams& a, const NetworkParams& b);

}  // namespace grladapt

#endif  // GRLADAPT_NETWORK_HPP_
