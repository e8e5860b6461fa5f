#ifndef GRLADAPT_MATRIX_HPP_
#define GRLADAPT_MATRIX_HPP_

#include <Eigen/Dense>
#include <cstring>
#include <string>

#include "grladapt/errors.hpp"

namespace grladapt {

// Row = sample, column = feature/unit. Double precision throughout.
using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void ensure_finite(const Eigen::Ref<const Matrix>& m, const std::string& what) {
  if (!m.allFinite()) {
    throw NumericError("non-finite values in " + what);
  }
}

inline bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace grladapt

#endif  // GRLADAPT_MATRIX_HPP_
