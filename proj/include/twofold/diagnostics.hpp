#pragma once

// Residual checks on a data set and a candidate solution g. The checks that
// need a solver or the big operators live in structure_checks.hpp.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "twofold/dataset.hpp"
#include "twofold/report.hpp"
#include "twofold/structured_ops.hpp"

namespace twofold {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultCircleBand = 1e-8;
/// Leading polynomial coefficients below this (relative to the largest one)
/// are deflated before forming the companion matrix.
inline constexpr double kRootDeflationTol = 1e-13;

/// The three identities, hermitian-ness of a0 and d0, and the dual triple.
inline CheckReport check_identities(const DataSet& data, double tol = kDefaultTol) {
  CheckReport r;
  const auto res = identity_residuals(data);
  r.add("alpha*alpha - gamma*gamma = a0", res.first_norm(), tol);
  r.add("delta*delta - beta*beta = d0", res.second_norm(), tol);
  r.add("alpha*beta = gamma*delta", res.third_norm(), tol);
  const CMat a0 = data.a0(), d0 = data.d0();
  r.add("a0 hermitian", max_abs(a0 - a0.adjoint()), tol);
  r.add("d0 hermitian", max_abs(d0 - d0.adjoint()), tol);
  try {
    const auto dual = dual_identity_residuals(data);
    r.add("alpha a0^-1 alpha* - beta d0^-1 beta* = I", dual.first_norm(), tol);
    r.add("delta d0^-1 delta* - gamma a0^-1 gamma* = I", dual.second_norm(), tol);
    r.add("alpha a0^-1 gamma* = beta d0^-1 delta*", dual.third_norm(), tol);
  } catch (const SingularError& e) {
    for (const char* name : {"alpha a0^-1 alpha* - beta d0^-1 beta* = I", "delta d0^-1 delta* - gamma a0^-1 gamma* = I",
                             "alpha a0^-1 gamma* = beta d0^-1 delta*"}) {
      r.add_inconclusive(name, 0.0, tol, e.what());
    }
  }
  return r;
}

/// The four inclusion residuals: the max coefficient magnitude of the part of
/// each symbol that must vanish when g solves the problem.
inline CheckReport verify_solution(const DataSet& data, const LaurentPoly& g, double tol = kDefaultTol) {
  if (g.rows() != data.p() || g.cols() != data.q()) throw DimensionError("verify_solution: g has the wrong shape");
  const LaurentPoly gs = adjoint(g);
  const auto& al = data.alpha();
  const auto& be = data.beta();
  const auto& ga = data.gamma();
  const auto& de = data.delta();
  CheckReport r;
  r.add("alpha + g gamma - e_p in W-,0",
        project(al + g * ga - LaurentPoly::identity(data.p()), SubspaceTag::Plus).max_abs(), tol);
  r.add("g* alpha + gamma in W+,0", project(gs * al + ga, SubspaceTag::Minus).max_abs(), tol);
  r.add("delta + g* beta - e_q in W+,0",
        project(de + gs * be - LaurentPoly::identity(data.q()), SubspaceTag::Minus).max_abs(), tol);
  r.add("g delta + beta in W-,0", project(g * de + be, SubspaceTag::Plus).max_abs(), tol);
  return r;
}

/// Roots of sum_k coeffs[k] x^k via companion-matrix eigenvalues. Vanishing
/// low-order coefficients contribute exact roots at 0.
inline std::vector<Complex> polynomial_roots(std::vector<Complex> coeffs) {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw DegenerateError("polynomial_roots: polynomial is identically zero");
  const double cut = kRootDeflationTol * scale;
  while (!coeffs.empty() && std::abs(coeffs.back()) < cut) coeffs.pop_back();

  std::vector<Complex> roots;
  std::size_t low = 0;
  while (low < coeffs.size() && std::abs(coeffs[low]) < cut) {
    roots.emplace_back(0.0);
    ++low;
  }
  const Index degree = static_cast<Index>(coeffs.size() - low) - 1;
  if (degree <= 0) return roots;

  CMat companion = CMat::Zero(degree, degree);
  companion.bottomLeftCorner(degree - 1, degree - 1).setIdentity();
  const Complex lead = coeffs.back();
  for (Index k = 0; k < degree; ++k) companion(k, degree - 1) = -coeffs[low + k] / lead;
  Eigen::ComplexEigenSolver<CMat> es(companion, false);
  for (Index k = 0; k < degree; ++k) roots.push_back(es.eigenvalues()(k));
  return roots;
}

namespace detail {

/// Adds one zero-location entry: every root must satisfy |x| > 1 + band.
/// value = max 1/|root| (0 without roots), threshold = 1/(1 + band).
inline void add_outside_disk_entry(CheckReport& r, const std::string& name, const std::vector<Complex>& roots,
                                   double band) {
  double worst = 0.0;
  double min_modulus = std::numeric_limits<double>::infinity();
  bool inside = false, near = false;
  for (const auto& z : roots) {
    const double mod = std::abs(z);
    min_modulus = std::min(min_modulus, mod);
    worst = std::max(worst, mod == 0.0 ? std::numeric_limits<double>::max() : 1.0 / mod);
    if (mod < 1.0 - band) inside = true;
    else if (std::abs(mod - 1.0) <= band) near = true;
  }
  std::ostringstream detail;
  detail.precision(17);
  detail << roots.size() << " roots";
  if (!roots.empty()) detail << ", min modulus " << min_modulus;
  const double threshold = 1.0 / (1.0 + band);
  if (inside) {
    r.add(name, worst, threshold, detail.str());
  } else if (near) {
    r.add_inconclusive(name, worst, threshold, detail.str() + " (root within the circle band)");
  } else {
    r.add(name, worst, threshold, detail.str());
  }
}

}  // namespace detail

/// det alpha must have no zeros in |lambda| <= 1, det delta none in
/// |lambda| >= 1 (checked in mu = 1/lambda). Roots within `band` of the unit
/// circle are reported inconclusive.
inline CheckReport check_zero_locations(const DataSet& data, double band = kDefaultCircleBand) {
  const LaurentPoly da = det(data.alpha());
  const LaurentPoly dd = det(data.delta());
  if (da.is_zero()) throw DegenerateError("det alpha vanishes identically");
  if (dd.is_zero()) throw DegenerateError("det delta vanishes identically");

  std::vector<Complex> ca(static_cast<std::size_t>(da.hi()) + 1);
  for (const auto& [k, c] : da.coefficients()) ca[static_cast<std::size_t>(k)] = c(0, 0);
  std::vector<Complex> cd(static_cast<std::size_t>(-dd.lo()) + 1);
  for (const auto& [k, c] : dd.coefficients()) cd[static_cast<std::size_t>(-k)] = c(0, 0);

  CheckReport r;
  detail::add_outside_disk_entry(r, "det alpha zero-free in |lambda| <= 1", polynomial_roots(ca), band);
  detail::add_outside_disk_entry(r, "det delta zero-free in |lambda| >= 1", polynomial_roots(cd), band);
  return r;
}

/// Operator norm of H_{+,g} for polynomial g: the largest singular value of
/// the (m+1) x (m+1) block corner, outside of which H_{+,g} vanishes.
inline double hankel_norm(const LaurentPoly& g) {
  if (!g.in_subspace(SubspaceTag::Plus)) throw PreconditionError("hankel_norm: g must lie in W_plus");
  if (g.is_zero()) return 0.0;
  return max_singular_value(hankel_plus(g, g.hi() + 1));
}

/// Positive definiteness of the hermitian part of m, relative to its norm.
inline void add_positive_definite_entry(CheckReport& r, const std::string& name, const CMat& m) {
  const double lmin = min_hermitian_eigenvalue(m);
  const double scale = std::max(max_singular_value(m), std::numeric_limits<double>::min());
  std::ostringstream detail;
  detail.precision(17);
  detail << "smallest eigenvalue " << lmin;
  r.add(name, -lmin, -1e-12 * scale, detail.str());
}

}  // namespace twofold
