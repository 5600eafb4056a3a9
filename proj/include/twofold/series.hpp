#pragma once

// Finitely supported matrix Laurent polynomials: sum_k f_k z^k with complex
// matrix coefficients. This is the concrete stand-in for Wiener-class symbols.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>
#include <string>

#include <Eigen/Dense>

#include "twofold/error.hpp"

namespace twofold {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Coefficients whose largest entry magnitude falls below this are dropped.
inline constexpr double kCanonicalDropTol = 1e-14;

/// Support classes of the Wiener algebra.
///   Plus:      degrees >= 0        Minus:     degrees <= 0
///   PlusZero:  degrees >= 1        MinusZero: degrees <= -1
///   Diag:      degree 0 only       Full:      everything
enum class SubspaceTag { Full, Plus, Minus, PlusZero, MinusZero, Diag };

constexpr bool degree_in(SubspaceTag tag, int k) {
  switch (tag) {
    case SubspaceTag::Full: return true;
    case SubspaceTag::Plus: return k >= 0;
    case SubspaceTag::Minus: return k <= 0;
    case SubspaceTag::PlusZero: return k >= 1;
    case SubspaceTag::MinusZero: return k <= -1;
    case SubspaceTag::Diag: return k == 0;
  }
  return false;
}

/// The tag obtained by applying f -> f* to every member of `tag`.
constexpr SubspaceTag adjoint_tag(SubspaceTag tag) {
  switch (tag) {
    case SubspaceTag::Plus: return SubspaceTag::Minus;
    case SubspaceTag::Minus: return SubspaceTag::Plus;
    case SubspaceTag::PlusZero: return SubspaceTag::MinusZero;
    case SubspaceTag::MinusZero: return SubspaceTag::PlusZero;
    default: return tag;
  }
}

inline const char* to_string(SubspaceTag tag) {
  switch (tag) {
    case SubspaceTag::Full: return "full";
    case SubspaceTag::Plus: return "plus";
    case SubspaceTag::Minus: return "minus";
    case SubspaceTag::PlusZero: return "plus_zero";
    case SubspaceTag::MinusZero: return "minus_zero";
    case SubspaceTag::Diag: return "diag";
  }
  return "?";
}

inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

class LaurentPoly {
 public:
  using Coefficients = std::map<int, CMat>;

  LaurentPoly() : LaurentPoly(1, 1) {}
  LaurentPoly(Index rows, Index cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionError("LaurentPoly: negative shape");
  }
  LaurentPoly(Index rows, Index cols, Coefficients coeffs) : LaurentPoly(rows, cols) {
    for (auto& [k, c] : coeffs) {
      if (c.rows() != rows || c.cols() != cols) {
        throw DimensionError("LaurentPoly: coefficient at degree " + std::to_string(k) + " has shape " +
                             std::to_string(c.rows()) + "x" + std::to_string(c.cols()) + ", expected " +
                             std::to_string(rows) + "x" + std::to_string(cols));
      }
      if (!c.allFinite()) throw Error("LaurentPoly: non-finite coefficient at degree " + std::to_string(k));
      if (twofold::max_abs(c) >= kCanonicalDropTol) coeffs_.emplace(k, std::move(c));
    }
  }

  static LaurentPoly constant(const CMat& c) { return monomial(c, 0); }
  static LaurentPoly identity(Index n) { return constant(CMat::Identity(n, n)); }
  static LaurentPoly monomial(const CMat& c, int degree) {
    return LaurentPoly(c.rows(), c.cols(), Coefficients{{degree, c}});
  }
  /// Scalar lambda^degree; degree +1 is the shift symbol, -1 its adjoint.
  static LaurentPoly lambda_power(int degree) { return monomial(CMat::Identity(1, 1), degree); }
  static LaurentPoly scalar(const std::map<int, Complex>& coeffs) {
    Coefficients c;
    for (const auto& [k, v] : coeffs) c.emplace(k, CMat::Constant(1, 1, v));
    return LaurentPoly(1, 1, std::move(c));
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest stored degree; 0 for the zero polynomial.
  int lo() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  /// Highest stored degree; 0 for the zero polynomial.
  int hi() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  const Coefficients& coefficients() const { return coeffs_; }

  CMat coeff(int k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? CMat::Zero(rows_, cols_) : it->second;
  }

  /// Largest entry magnitude over all coefficients.
  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, c] : coeffs_) m = std::max(m, twofold::max_abs(c));
    return m;
  }

  bool in_subspace(SubspaceTag tag, double tol = 0.0) const {
    for (const auto& [k, c] : coeffs_) {
      if (!degree_in(tag, k) && twofold::max_abs(c) > tol) return false;
    }
    return true;
  }

  /// Scalar polynomial formed from entry (i, j) of every coefficient.
  LaurentPoly entry(Index i, Index j) const {
    Coefficients c;
    for (const auto& [k, m] : coeffs_) c.emplace(k, CMat::Constant(1, 1, m(i, j)));
    return LaurentPoly(1, 1, std::move(c));
  }

  /// Exact equality: same shape, same support, bitwise equal coefficients.
  friend bool operator==(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.rows_ != g.rows_ || f.cols_ != g.cols_ || f.coeffs_.size() != g.coeffs_.size()) return false;
    auto it = g.coeffs_.begin();
    for (const auto& [k, c] : f.coeffs_) {
      if (it->first != k || !(it->second == c)) return false;
      ++it;
    }
    return true;
  }

 private:
  Index rows_;
  Index cols_;
  Coefficients coeffs_;
};

/// max(|lo|, |hi|) + 1, or 0 for the zero polynomial: the number of window
/// blocks, counted from degree 0, that the symbol can reach.
inline int support_extent(const LaurentPoly& f) {
  if (f.is_zero()) return 0;
  return std::max(std::abs(f.lo()), std::abs(f.hi())) + 1;
}

namespace detail {

inline void require_same_shape(const LaurentPoly& f, const LaurentPoly& g, const char* op) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(f.rows()) + "x" +
                         std::to_string(f.cols()) + " vs " + std::to_string(g.rows()) + "x" +
                         std::to_string(g.cols()));
  }
}

}  // namespace detail

inline LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) {
  detail::require_same_shape(f, g, "add");
  auto c = f.coefficients();
  for (const auto& [k, m] : g.coefficients()) {
    auto [it, inserted] = c.emplace(k, m);
    if (!inserted) it->second += m;
  }
  return LaurentPoly(f.rows(), f.cols(), std::move(c));
}

inline LaurentPoly operator*(Complex s, const LaurentPoly& f) {
  auto c = f.coefficients();
  for (auto& [k, m] : c) m *= s;
  return LaurentPoly(f.rows(), f.cols(), std::move(c));
}

inline LaurentPoly operator-(const LaurentPoly& f) { return Complex(-1.0) * f; }
inline LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) { return f + (-g); }

/// Largest entry of f - g over all degrees, computed before canonical
/// dropping, so differences below the drop tolerance still show.
inline double max_abs_diff(const LaurentPoly& f, const LaurentPoly& g) {
  detail::require_same_shape(f, g, "max_abs_diff");
  double m = 0.0;
  for (const auto& [k, c] : f.coefficients()) m = std::max(m, max_abs(c - g.coeff(k)));
  for (const auto& [k, c] : g.coefficients()) {
    if (!f.coefficients().count(k)) m = std::max(m, max_abs(c));
  }
  return m;
}

/// Convolution: (f g)_k = sum_j f_j g_{k-j}.
inline LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.cols() != g.rows()) {
    throw DimensionError("mul: inner dimensions differ (" + std::to_string(f.cols()) + " vs " +
                         std::to_string(g.rows()) + ")");
  }
  LaurentPoly::Coefficients c;
  for (const auto& [i, fi] : f.coefficients()) {
    for (const auto& [j, gj] : g.coefficients()) {
      auto [it, inserted] = c.try_emplace(i + j, CMat::Zero(f.rows(), g.cols()));
      it->second.noalias() += fi * gj;
    }
  }
  return LaurentPoly(f.rows(), g.cols(), std::move(c));
}

inline LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return mul(f, g); }

inline LaurentPoly operator*(const LaurentPoly& f, const CMat& right) {
  return mul(f, LaurentPoly::constant(right));
}
inline LaurentPoly operator*(const CMat& left, const LaurentPoly& f) {
  return mul(LaurentPoly::constant(left), f);
}

/// (f*)_j = (f_{-j})^H.
inline LaurentPoly adjoint(const LaurentPoly& f) {
  LaurentPoly::Coefficients c;
  for (const auto& [k, m] : f.coefficients()) c.emplace(-k, m.adjoint());
  return LaurentPoly(f.cols(), f.rows(), std::move(c));
}

/// Keeps exactly the coefficients whose degree lies in `tag`.
inline LaurentPoly project(const LaurentPoly& f, SubspaceTag tag) {
  LaurentPoly::Coefficients c;
  for (const auto& [k, m] : f.coefficients()) {
    if (degree_in(tag, k)) c.emplace(k, m);
  }
  return LaurentPoly(f.rows(), f.cols(), std::move(c));
}

/// lambda^k f.
inline LaurentPoly shifted(const LaurentPoly& f, int k) {
  LaurentPoly::Coefficients c;
  for (const auto& [j, m] : f.coefficients()) c.emplace(j + k, m);
  return LaurentPoly(f.rows(), f.cols(), std::move(c));
}

inline CMat eval(const LaurentPoly& f, Complex z) {
  if (z == Complex(0.0) && f.lo() < 0) {
    throw SingularError("eval: negative powers present, cannot evaluate at z = 0");
  }
  CMat out = CMat::Zero(f.rows(), f.cols());
  for (const auto& [k, m] : f.coefficients()) out += std::pow(z, k) * m;
  return out;
}

/// Scalar determinant polynomial, computed by evaluating at scaled roots of
/// unity and interpolating with an inverse DFT. Support lies in
/// [n*lo, n*hi] with n = f.rows().
inline LaurentPoly det(const LaurentPoly& f) {
  if (f.rows() != f.cols()) throw DimensionError("det: polynomial is not square");
  const Index n = f.rows();
  if (n == 0) return LaurentPoly::constant(CMat::Identity(1, 1));
  if (f.is_zero()) return LaurentPoly(1, 1);
  const int lo = f.lo();
  const int span = f.hi() - lo;
  const int points = static_cast<int>(n) * span + 1;

  std::vector<Complex> nodes(points), values(points);
  for (int k = 0; k < points; ++k) {
    nodes[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    CMat shifted_value = CMat::Zero(n, n);
    for (const auto& [j, m] : f.coefficients()) shifted_value += std::pow(nodes[k], j - lo) * m;
    values[k] = shifted_value.determinant();
  }

  std::map<int, Complex> out;
  for (int r = 0; r < points; ++r) {
    Complex acc = 0.0;
    for (int k = 0; k < points; ++k) acc += values[k] * std::conj(std::pow(nodes[k], r));
    out.emplace(r + static_cast<int>(n) * lo, acc / static_cast<double>(points));
  }
  return LaurentPoly::scalar(out);
}

/// Laplace-expansion determinant for sizes up to 3; cross-check for det().
inline LaurentPoly det_cofactor(const LaurentPoly& f) {
  if (f.rows() != f.cols()) throw DimensionError("det_cofactor: polynomial is not square");
  auto e = [&](Index i, Index j) { return f.entry(i, j); };
  switch (f.rows()) {
    case 0: return LaurentPoly::constant(CMat::Identity(1, 1));
    case 1: return e(0, 0);
    case 2: return e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0);
    case 3:
      return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
             e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
             e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    default: throw DimensionError("det_cofactor: only sizes up to 3 are supported");
  }
}

}  // namespace twofold
