#pragma once

#include <algorithm>
#include <string>

#include "twofold/error.hpp"
#include "twofold/linalg.hpp"
#include "twofold/series.hpp"

namespace twofold {

/// The inverse problem's input {alpha, beta, gamma, delta}:
///   alpha in W+^{p x p}, beta in W+^{p x q}, gamma in W-^{q x p}, delta in W-^{q x q}.
class DataSet {
 public:
  DataSet(LaurentPoly alpha, LaurentPoly beta, LaurentPoly gamma, LaurentPoly delta)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)), delta_(std::move(delta)) {
    const Index p = alpha_.rows(), q = delta_.rows();
    auto shape = [](const LaurentPoly& f, Index r, Index c, const char* name) {
      if (f.rows() != r || f.cols() != c) {
        throw DimensionError(std::string(name) + " must be " + std::to_string(r) + "x" + std::to_string(c) +
                             ", got " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()));
      }
    };
    shape(alpha_, p, p, "alpha");
    shape(beta_, p, q, "beta");
    shape(gamma_, q, p, "gamma");
    shape(delta_, q, q, "delta");
    auto tag = [](const LaurentPoly& f, SubspaceTag t, const char* name) {
      if (!f.in_subspace(t)) {
        throw PreconditionError(std::string(name) + " must lie in W_" + to_string(t) + " (support [" +
                                std::to_string(f.lo()) + ", " + std::to_string(f.hi()) + "])");
      }
    };
    tag(alpha_, SubspaceTag::Plus, "alpha");
    tag(beta_, SubspaceTag::Plus, "beta");
    tag(gamma_, SubspaceTag::Minus, "gamma");
    tag(delta_, SubspaceTag::Minus, "delta");
  }

  /// {e_p, 0, 0, e_q}: the data set belonging to g = 0.
  static DataSet trivial(Index p, Index q) {
    return DataSet(LaurentPoly::identity(p), LaurentPoly(p, q), LaurentPoly(q, p), LaurentPoly::identity(q));
  }

  const LaurentPoly& alpha() const { return alpha_; }
  const LaurentPoly& beta() const { return beta_; }
  const LaurentPoly& gamma() const { return gamma_; }
  const LaurentPoly& delta() const { return delta_; }
  Index p() const { return alpha_.rows(); }
  Index q() const { return delta_.rows(); }
  CMat a0() const { return alpha_.coeff(0); }
  CMat d0() const { return delta_.coeff(0); }

  /// Smallest m with alpha, beta of degree <= m and gamma, delta of degree >= -m.
  int degree() const {
    return std::max({alpha_.is_zero() ? 0 : alpha_.hi(), beta_.is_zero() ? 0 : beta_.hi(),
                     gamma_.is_zero() ? 0 : -gamma_.lo(), delta_.is_zero() ? 0 : -delta_.lo()});
  }

  /// Largest support extent over the four symbols.
  int extent() const {
    return std::max({support_extent(alpha_), support_extent(beta_), support_extent(gamma_),
                     support_extent(delta_)});
  }

 private:
  LaurentPoly alpha_, beta_, gamma_, delta_;
};

/// The three residual symbols
///   alpha* alpha - gamma* gamma - a0,  delta* delta - beta* beta - d0,
///   alpha* beta - gamma* delta,
/// which all vanish for solvable data.
struct IdentityResiduals {
  LaurentPoly first, second, third;

  double first_norm() const { return first.max_abs(); }
  double second_norm() const { return second.max_abs(); }
  double third_norm() const { return third.max_abs(); }
  double max_norm() const { return std::max({first_norm(), second_norm(), third_norm()}); }
};

inline IdentityResiduals identity_residuals(const DataSet& data) {
  const auto& al = data.alpha();
  const auto& be = data.beta();
  const auto& ga = data.gamma();
  const auto& de = data.delta();
  return {adjoint(al) * al - adjoint(ga) * ga - LaurentPoly::constant(data.a0()),
          adjoint(de) * de - adjoint(be) * be - LaurentPoly::constant(data.d0()),
          adjoint(al) * be - adjoint(ga) * de};
}

/// The dual triple
///   alpha a0^{-1} alpha* - beta d0^{-1} beta* - e_p,
///   delta d0^{-1} delta* - gamma a0^{-1} gamma* - e_q,
///   alpha a0^{-1} gamma* - beta d0^{-1} delta*.
/// Requires invertible a0, d0.
inline IdentityResiduals dual_identity_residuals(const DataSet& data) {
  const CMat a0i = checked_inverse(data.a0(), "a0");
  const CMat d0i = checked_inverse(data.d0(), "d0");
  const auto& al = data.alpha();
  const auto& be = data.beta();
  const auto& ga = data.gamma();
  const auto& de = data.delta();
  return {al * a0i * adjoint(al) - be * d0i * adjoint(be) - LaurentPoly::identity(data.p()),
          de * d0i * adjoint(de) - ga * a0i * adjoint(ga) - LaurentPoly::identity(data.q()),
          al * a0i * adjoint(ga) - be * d0i * adjoint(de)};
}

}  // namespace twofold
