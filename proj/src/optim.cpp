#include "grladapt/optim.hpp"

#include <cmath>
#include <limits>

#include "grladapt/errors.hpp"

namespace grladapt {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("adam: learning_rate must be > 0");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw ConfigError("adam: beta1 must lie in (0,1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("adam: beta2 must lie in (0,1)");
  if (!(epsilon_hat > 0.0)) throw ConfigError("adam: epsilon_hat must be > 0");
}

Adam::Adam(AdamConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void Adam::apply(std::span<ParamGrad> groups) {
  if (slots_.empty()) {
    slots_.resize(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      slots_[i].first_moment = Matrix::Zero(groups[i].param->rows(), groups[i].param->cols());
      slots_[i].second_moment = Matrix::Zero(groups[i].param->rows(), groups[i].param->cols());
    }
  }
  if (slots_.size() != groups.size()) {
    throw StateError("adam: group count changed between steps (" + std::to_string(slots_.size()) +
                     " -> " + std::to_string(groups.size()) + ")");
  }
  ++step_count_;
  const double t = static_cast<double>(step_count_);
  const double corr1 = 1.0 - std::pow(cfg_.beta1, t);
  const double corr2 = 1.0 - std::pow(cfg_.beta2, t);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    ParamGrad& g = groups[i];
    if (g.grad->rows() != g.param->rows() || g.grad->cols() != g.param->cols()) {
      throw DimensionError("adam: grad " + shape_str(*g.grad) + " does not match param " +
                           shape_str(*g.param) + " for " + g.name);
    }
    if (!g.grad->allFinite()) {
      throw NumericError("adam: non-finite gradient for " + g.name);
    }
    Slot& slot = slots_[i];
    slot.first_moment = cfg_.beta1 * slot.first_moment + (1.0 - cfg_.beta1) * (*g.grad);
    slot.second_moment =
        cfg_.beta2 * slot.second_moment + (1.0 - cfg_.beta2) * g.grad->cwiseProduct(*g.grad);
    const Matrix m_hat = slot.first_moment / corr1;
    const Matrix v_hat = slot.second_moment / corr2;
    g.param->array() -=
        cfg_.learning_rate * m_hat.array() / (v_hat.array().sqrt() + cfg_.epsilon_hat);
  }
}

void NewBobConfig::validate() const {
  if (!(halving_factor > 0.0 && halving_factor < 1.0)) {
    throw ConfigError("new-bob: halving_factor must lie in (0,1)");
  }
  if (!(improvement_threshold > 0.0)) {
    throw ConfigError("new-bob: improvement_threshold must be > 0");
  }
}

NewBob::NewBob(double initial_lr, NewBobConfig cfg)
    : cfg_(cfg), current_lr_(initial_lr), best_(-std::numeric_limits<double>::infinity()) {
  cfg_.validate();
  if (!(initial_lr > 0.0)) throw ConfigError("new-bob: initial learning rate must be > 0");
}

NewBob::Step NewBob::step(double valid_metric) {
  if (!std::isfinite(valid_metric)) throw NumericError("new-bob: non-finite validation metric");
  bool stop = false;
  const double improvement =
      std::isinf(best_) ? std::numeric_limits<double>::infinity()
                        : (valid_metric - best_) / std::max(std::abs(best_), 1e-12);
  if (improvement < cfg_.improvement_threshold) {
    current_lr_ *= cfg_.halving_factor;
    if (ramping_) {
      stop = true;
    } else {
      ramping_ = true;
    }
  }
  if (valid_metric > best_) best_ = valid_metric;
  return Step{current_lr_, stop};
}

}  // namespace grladapt
