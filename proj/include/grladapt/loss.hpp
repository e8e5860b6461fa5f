#ifndef GRLADAPT_LOSS_HPP_
#define GRLADAPT_LOSS_HPP_

#include <cmath>
#include <span>
#include <string>

#include "grladapt/errors.hpp"
#include "grladapt/matrix.hpp"

namespace grladapt {

namespace detail {
inline void check_labels(const Matrix& probs, std::span<const int> labels) {
  if (probs.rows() != static_cast<Index>(labels.size())) {
    throw DataError("probs rows (" + std::to_string(probs.rows()) + ") != labels length (" +
                    std::to_string(labels.size()) + ")");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= probs.cols()) {
      throw DataError("label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                      " out of range for " + std::to_string(probs.cols()) + " classes");
    }
  }
}
// log() guarded against exact-zero probabilities produced by softmax underflow.
inline double safe_log(double p) { return std::log(p < 1e-300 ? 1e-300 : p); }
}  // namespace detail

// Mean negative log-likelihood of the true class. Empty input gives 0.
inline double cross_entropy_loss(const Matrix& probs, std::span<const int> labels) {
  detail::check_labels(probs, labels);
  if (labels.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    total -= detail::safe_log(probs(static_cast<Index>(i), labels[i]));
  }
  return total / static_cast<double>(labels.size());
}

// dL/dprobs for the mean cross-entropy above.
inline Matrix cross_entropy_grad(const Matrix& probs, std::span<const int> labels) {
  detail::check_labels(probs, labels);
  Matrix g = Matrix::Zero(probs.rows(), probs.cols());
  if (labels.empty()) return g;
  const double inv_n = 1.0 / static_cast<double>(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Index r = static_cast<Index>(i);
    g(r, labels[i]) = -inv_n / probs(r, labels[i]);
  }
  return g;
}

// Per-row-weighted negative log-likelihood: sum_i w_i * (-log p_i). Used for
// the two-domain loss, whose source and target terms carry their own 1/N.
inline double weighted_cross_entropy_loss(const Matrix& probs, std::span<const int> labels,
                                          std::span<const double> weights) {
  detail::check_labels(probs, labels);
  if (labels.size() != weights.size()) {
    throw DataError("weights length != labels length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    total -= weights[i] * detail::safe_log(probs(static_cast<Index>(i), labels[i]));
  }
  return total;
}

inline Matrix weighted_cross_entropy_grad(const Matrix& probs, std::span<const int> labels,
                                          std::span<const double> weights) {
  detail::check_labels(probs, labels);
  Matrix g = Matrix::Zero(probs.rows(), probs.cols());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Index r = static_cast<Index>(i);
    g(r, labels[i]) = -weights[i] / probs(r, labels[i]);
  }
  return g;
}

// Fraction of rows whose argmax matches the label (first maximum on ties).
inline double accuracy(const Matrix& probs, std::span<const int> labels) {
  detail::check_labels(probs, labels);
  if (labels.empty()) throw DataError("accuracy over empty dataset");
  Index correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Index pred = 0;
    probs.row(static_cast<Index>(i)).maxCoeff(&pred);
    if (pred == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

}  // namespace grladapt

#endif  // GRLADAPT_LOSS_HPP_
