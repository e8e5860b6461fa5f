#ifndef GRLADAPT_GRADCHECK_HPP_
#define GRLADAPT_GRADCHECK_HPP_

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "grladapt/errors.hpp"
#include "grladapt/matrix.hpp"

namespace grladapt {

// Central-difference gradient estimate, (L(p+h) - L(p-h)) / (2h) per entry.
// `loss` must re-read the parameters on every call; it is evaluated twice up
// front to catch non-deterministic closures.
inline std::vector<Matrix> finite_diff_grad(const std::function<double()>& loss,
                                            std::span<Matrix*> params, double h) {
  if (!(h > 0.0)) throw ConfigError("finite_diff_grad: h must be > 0");
  const double l0 = loss();
  const double l1 = loss();
  if (!(l0 == l1)) {
    throw OracleError("finite_diff_grad: loss closure is not deterministic");
  }
  std::vector<Matrix> grads;
  grads.reserve(params.size());
  for (Matrix* p : params) {
    Matrix g(p->rows(), p->cols());
    for (Index i = 0; i < p->size(); ++i) {
      const double saved = p->data()[i];
      p->data()[i] = saved + h;
      const double lp = loss();
      p->data()[i] = saved - h;
      const double lm = loss();
      p->data()[i] = saved;
      g.data()[i] = (lp - lm) / (2.0 * h);
    }
    grads.push_back(std::move(g));
  }
  return grads;
}

// max_i |a_i - b_i| / max(|b_i|, floor); the comparison metric used by the
// gradient checks.
inline double max_relative_error(const Matrix& a, const Matrix& b, double floor = 1e-8) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_relative_error: " + shape_str(a) + " vs " + shape_str(b));
  }
  double worst = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double denom = std::max(std::abs(b.data()[i]), floor);
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]) / denom);
  }
  return worst;
}

}  // namespace grladapt

#endif  // GRLADAPT_GRADCHECK_HPP_
