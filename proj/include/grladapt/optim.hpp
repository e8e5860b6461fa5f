#ifndef GRLADAPT_OPTIM_HPP_
#define GRLADAPT_OPTIM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grladapt/matrix.hpp"

namespace grladapt {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon_hat = 1e-8;

  void validate() const;
};

// One parameter tensor plus its gradient, tagged for error messages.
struct ParamGrad {
  Matrix* param = nullptr;
  const Matrix* grad = nullptr;
  std::string name;
};

// Standard Adam with bias correction. Moment slots are keyed by position in
// the apply() list, which therefore must be stable across steps.
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {});

  // One optimization step over all groups; step_count increments by exactly 1.
  void apply(std::span<ParamGrad> groups);

  long step_count() const { return step_count_; }
  double learning_rate() const { return cfg_.learning_rate; }
  void set_learning_rate(double lr) { cfg_.learning_rate = lr; }
  const AdamConfig& config() const { return cfg_; }

 private:
  struct Slot {
    Matrix first_moment;
    Matrix second_moment;
  };
  AdamConfig cfg_;
  long step_count_ = 0;
  std::vector<Slot> slots_;
};

struct NewBobConfig {
  double halving_factor = 0.5;
  // Relative improvement of the validation metric below which halving starts.
  double improvement_threshold = 0.005;

  void validate() const;
};

// Validation-driven learning-rate policy: when relative improvement over the
// best metric falls below the threshold the rate is halved; a second
// sub-threshold epoch while ramping signals stop.
class NewBob {
 public:
  NewBob(double initial_lr, NewBobConfig cfg = {});

  struct Step {
    double learning_rate;
    bool stop;
  };

  // `valid_metric` is higher-is-better (frame accuracy).
  Step step(double valid_metric);

  double current_lr() const { return current_lr_; }
  bool ramping() const { return ramping_; }
  double best_valid_metric() const { return best_; }

 private:
  NewBobConfig cfg_;
  double current_lr_;
  bool ramping_ = false;
  double best_;
};

}  // namespace grladapt

#endif  // GRLADAPT_OPTIM_HPP_
