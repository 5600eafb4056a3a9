#pragma once

// Small dense helpers shared by the structured modules.

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twofold/error.hpp"
#include "twofold/series.hpp"

namespace twofold {

/// Matrices with a 2-norm condition number above this are treated as singular.
inline constexpr double kSingularCondition = 1e12;

inline Eigen::VectorXd singular_values(const CMat& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::BDCSVD<CMat>(a).singularValues();
}

inline double max_singular_value(const CMat& a) {
  const auto s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

inline double min_singular_value(const CMat& a) {
  const auto s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

inline double condition_number(const CMat& a) {
  const auto s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smin;
}

/// Inverse of a small square matrix; throws SingularError naming `what`.
inline CMat checked_inverse(const CMat& a, const std::string& what) {
  if (a.rows() != a.cols()) throw DimensionError(what + " is not square");
  const double cond = condition_number(a);
  if (!(cond <= kSingularCondition)) {
    throw SingularError(what + " is singular (condition number " + std::to_string(cond) + ")");
  }
  return a.partialPivLu().inverse();
}

inline CMat hermitian_part(const CMat& a) { return (a + a.adjoint()) / 2.0; }

/// Smallest eigenvalue of the Hermitian part of `a`.
inline double min_hermitian_eigenvalue(const CMat& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Stacks equally wide blocks vertically.
inline CMat stack_blocks(const std::vector<CMat>& blocks) {
  if (blocks.empty()) return CMat();
  Index rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks.front().cols()) throw DimensionError("stack_blocks: ragged block widths");
    rows += b.rows();
  }
  CMat out(rows, blocks.front().cols());
  Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

/// Splits a tall matrix into blocks of `block_rows` rows each.
inline std::vector<CMat> split_blocks(const CMat& m, Index block_rows) {
  if (block_rows <= 0 || m.rows() % block_rows != 0) {
    throw DimensionError("split_blocks: row count is not a multiple of the block size");
  }
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(m.rows() / block_rows));
  for (Index r = 0; r < m.rows(); r += block_rows) out.push_back(m.middleRows(r, block_rows));
  return out;
}

}  // namespace twofold
