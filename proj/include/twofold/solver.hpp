#pragma once

// Three routes from a data set to g: the exact polynomial formulas, the
// truncated operator solve, and the factorization projections.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "twofold/dataset.hpp"
#include "twofold/diagnostics.hpp"
#include "twofold/inversion.hpp"

namespace twofold {

enum class Orientation { Lower, Upper };

/// Solves a block triangular Toeplitz system.
///   Lower: L(i, j) = t_{i-j} for i >= j (forward recursion).
///   Upper: U(i, j) = t_{j-i} for j >= i (back substitution).
/// `t` holds t_0, t_1, ...; missing trailing blocks are zero.
inline std::vector<CMat> tri_toeplitz_solve(std::span<const CMat> t, std::span<const CMat> rhs,
                                            Orientation orientation) {
  if (t.empty()) throw DimensionError("tri_toeplitz_solve: no diagonal block");
  const CMat& t0 = t[0];
  if (t0.rows() != t0.cols()) throw DimensionError("tri_toeplitz_solve: diagonal block is not square");
  for (const auto& b : t) {
    if (b.rows() != t0.rows() || b.cols() != t0.cols()) throw DimensionError("tri_toeplitz_solve: ragged blocks");
  }
  for (const auto& r : rhs) {
    if (r.rows() != t0.rows() || r.cols() != rhs.front().cols()) {
      throw DimensionError("tri_toeplitz_solve: right-hand side block has the wrong shape");
    }
  }
  const CMat inv0 = checked_inverse(t0, "diagonal block t_0");
  const std::size_t n = rhs.size();
  const std::size_t len = t.size();
  std::vector<CMat> x(n);
  CMat acc;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = orientation == Orientation::Lower ? step : n - 1 - step;
    acc = rhs[i];
    for (std::size_t k = 1; k < len && k <= step; ++k) {
      const std::size_t j = orientation == Orientation::Lower ? i - k : i + k;
      acc.noalias() -= t[k] * x[j];
    }
    x[i].noalias() = inv0 * acc;
  }
  return x;
}

enum class SolveMethod { Polynomial, Truncated, Factorization };

inline const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Polynomial: return "poly";
    case SolveMethod::Truncated: return "truncated";
    case SolveMethod::Factorization: return "factorization";
  }
  return "?";
}

enum class SolveStatus { Accepted, Flagged, Refused };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Accepted: return "accepted";
    case SolveStatus::Flagged: return "flagged";
    case SolveStatus::Refused: return "refused";
  }
  return "?";
}

struct SolveReport {
  SolveMethod method = SolveMethod::Polynomial;
  SolveStatus status = SolveStatus::Refused;
  std::string reason;
  /// The returned solution; the zero p x q polynomial when refused.
  LaurentPoly g;
  std::array<double, 3> residual_identities{};
  std::array<double, 4> residual_inclusions{};
  std::optional<double> cross_method_gap;
  std::optional<LaurentPoly> phi;
  /// Every g computed along the way, keyed by route ("b_side", "c_side", ...).
  std::map<std::string, LaurentPoly> candidates;
  /// Method-specific numbers (singular values, tail mass, ...).
  std::map<std::string, double> metrics;

  bool accepted() const { return status == SolveStatus::Accepted; }
  bool refused() const { return status == SolveStatus::Refused; }
  bool operator==(const SolveReport&) const = default;
};

inline constexpr double kRefusalFactor = 100.0;

namespace detail {

inline const char* identity_name(int k) {
  static const char* names[] = {"alpha*alpha - gamma*gamma = a0", "delta*delta - beta*beta = d0",
                                "alpha*beta = gamma*delta"};
  return names[k];
}

/// Fills residual_identities and applies the refusal policy. Returns false
/// when the solve must stop.
inline bool screen_identities(const DataSet& data, double tol, SolveReport& rep) {
  const auto res = identity_residuals(data);
  rep.residual_identities = {res.first_norm(), res.second_norm(), res.third_norm()};
  rep.g = LaurentPoly(data.p(), data.q());
  int worst = 0;
  for (int k = 1; k < 3; ++k) {
    if (rep.residual_identities[k] > rep.residual_identities[worst]) worst = k;
  }
  const double r = rep.residual_identities[worst];
  std::ostringstream msg;
  msg.precision(17);
  msg << "identity '" << identity_name(worst) << "' residual " << r;
  if (!(r <= kRefusalFactor * tol)) {
    rep.status = SolveStatus::Refused;
    rep.reason = msg.str() + " exceeds " + std::to_string(kRefusalFactor) + " x tolerance";
    return false;
  }
  if (r > tol) {
    rep.status = SolveStatus::Flagged;
    rep.reason = msg.str() + " exceeds tolerance";
  } else {
    rep.status = SolveStatus::Accepted;
  }
  return true;
}

/// Fills residual_inclusions for rep.g and downgrades an accepted status when
/// they exceed the tolerance.
inline void finish(const DataSet& data, double tol, SolveReport& rep) {
  const CheckReport inc = verify_solution(data, rep.g, tol);
  for (std::size_t k = 0; k < 4; ++k) rep.residual_inclusions[k] = inc.entries[k].value;
  if (inc.any_fail() && rep.status == SolveStatus::Accepted) {
    rep.status = SolveStatus::Flagged;
    for (const auto& e : inc.entries) {
      if (e.verdict == Verdict::Fail) {
        rep.reason = "inclusion '" + e.name + "' residual exceeds tolerance";
        break;
      }
    }
  }
}

inline LaurentPoly from_blocks(const std::vector<CMat>& blocks, Index rows, Index cols, int first_degree = 0,
                               int step = 1) {
  LaurentPoly::Coefficients c;
  for (std::size_t k = 0; k < blocks.size(); ++k) c.emplace(first_degree + step * static_cast<int>(k), blocks[k]);
  return LaurentPoly(rows, cols, std::move(c));
}

inline double gap(const LaurentPoly& a, const LaurentPoly& b) { return max_abs_diff(a, b); }

}  // namespace detail

/// phi = sum_j phi_j lambda^{-j} with delta + phi beta - e_q in W+,0, built
/// from the last row of the inverse of the lower triangular d*-system and the
/// b*-matrix. Throws PreconditionError when the second identity fails beyond
/// the refusal level.
inline LaurentPoly solve_dual_phi(const DataSet& data, double tol = kDefaultTol) {
  const double second = identity_residuals(data).second_norm();
  if (!(second <= kRefusalFactor * tol)) {
    throw PreconditionError("solve_dual_phi: delta*delta - beta*beta = d0 fails (residual " + std::to_string(second) +
                            ")");
  }
  const int m = data.degree();
  const Index p = data.p(), q = data.q();
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  // L(i, j) = d_{-(i-j)}^*; the last row of L^{-1} is the adjoint of
  // y = (L^*)^{-1} e_last, and L^* is upper Toeplitz with t_k = d_{-k}.
  std::vector<CMat> t(n), rhs(n, CMat::Zero(q, q));
  for (std::size_t k = 0; k < n; ++k) t[k] = data.delta().coeff(-static_cast<int>(k));
  rhs.back().setIdentity();
  const auto y = tri_toeplitz_solve(t, rhs, Orientation::Upper);
  // phi_j = -sum_{i >= j} y_i^* b^*_{m-(i-j)}
  LaurentPoly::Coefficients c;
  for (std::size_t j = 0; j < n; ++j) {
    CMat acc = CMat::Zero(q, p);
    for (std::size_t i = j; i < n; ++i) {
      acc -= y[i].adjoint() * data.beta().coeff(m - static_cast<int>(i - j)).adjoint();
    }
    c.emplace(-static_cast<int>(j), std::move(acc));
  }
  return LaurentPoly(q, p, std::move(c));
}

/// Exact formulas for polynomial data of degree m. Returns the c-side g and
/// reports the gap to the b-side g.
inline SolveReport solve_polynomial(const DataSet& data, double tol = kDefaultTol) {
  SolveReport rep;
  rep.method = SolveMethod::Polynomial;
  checked_inverse(data.a0(), "a0");
  checked_inverse(data.d0(), "d0");
  if (!detail::screen_identities(data, tol, rep)) return rep;

  const int m = data.degree();
  const Index p = data.p(), q = data.q();
  const std::size_t n = static_cast<std::size_t>(m) + 1;

  // b-side: e = T_{-,delta}^{-1} (0, ..., 0, I)^T, g = -H e with
  // H(i, j) = b_{m+i-j} for j >= i.
  std::vector<CMat> td(n), unit(n, CMat::Zero(q, q));
  for (std::size_t k = 0; k < n; ++k) td[k] = data.delta().coeff(-static_cast<int>(k));
  unit.back().setIdentity();
  const auto e = tri_toeplitz_solve(td, unit, Orientation::Upper);
  std::vector<CMat> gb(n);
  for (std::size_t i = 0; i < n; ++i) {
    gb[i] = CMat::Zero(p, q);
    for (std::size_t j = i; j < n; ++j) gb[i] -= data.beta().coeff(m + static_cast<int>(i) - static_cast<int>(j)) * e[j];
  }

  // c-side: upper Toeplitz with first row a_0^*, ..., a_m^* against
  // (c_0^*, c_{-1}^*, ..., c_{-m}^*).
  std::vector<CMat> ta(n), cs(n);
  for (std::size_t k = 0; k < n; ++k) {
    ta[k] = data.alpha().coeff(static_cast<int>(k)).adjoint();
    cs[k] = data.gamma().coeff(-static_cast<int>(k)).adjoint();
  }
  auto gc = tri_toeplitz_solve(ta, cs, Orientation::Upper);
  for (auto& b : gc) b = -b;

  const LaurentPoly g_b = detail::from_blocks(gb, p, q);
  const LaurentPoly g_c = detail::from_blocks(gc, p, q);
  rep.candidates.emplace("b_side", g_b);
  rep.candidates.emplace("c_side", g_c);
  rep.cross_method_gap = detail::gap(g_b, g_c);
  rep.metrics["b_c_gap"] = *rep.cross_method_gap;
  rep.g = g_c;

  rep.phi = solve_dual_phi(data, tol);
  rep.metrics["phi_gap"] = detail::gap(adjoint(*rep.phi), rep.g);
  detail::finish(data, tol, rep);
  return rep;
}

/// The default window for degree-m polynomial data.
inline int default_order(const DataSet& data) { return 4 * data.degree() + 4; }

/// g = -F(M11^{-1} b) and g* = -F(M22^{-1} c) on an N-block window.
inline SolveReport solve_truncated(const DataSet& data, int blocks, double tol = kDefaultTol) {
  if (blocks < 1) throw DimensionError("solve_truncated: window must have at least one block");
  SolveReport rep;
  rep.method = SolveMethod::Truncated;
  const BigOp M = build_M(data, blocks);
  if (!detail::screen_identities(data, tol, rep)) return rep;

  const int N = blocks;
  const Index p = data.p(), q = data.q();
  const CMat m11 = M.pp(), m12 = M.pq(), m22 = M.qq();

  double tail = 0.0;
  for (const auto* f : {&data.alpha(), &data.beta(), &data.gamma(), &data.delta()}) {
    for (const auto& [k, c] : f->coefficients()) {
      if (std::abs(k) >= N) tail += max_abs(c);
    }
  }
  rep.metrics["tail_mass"] = tail;

  const double s11 = min_singular_value(m11), s22 = min_singular_value(m22);
  const double t11 = tol * static_cast<double>(m11.rows()), t22 = tol * static_cast<double>(m22.rows());
  rep.metrics["sigma_min_M11"] = s11;
  rep.metrics["sigma_min_M22"] = s22;
  rep.metrics["d2_threshold_M11"] = t11;
  rep.metrics["d2_threshold_M22"] = t22;
  if (!(s11 > t11) || !(s22 > t22)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "injectivity of " << (!(s11 > t11) ? "M11" : "M22") << " fails: smallest singular value "
        << (!(s11 > t11) ? s11 : s22) << " <= " << (!(s11 > t11) ? t11 : t22);
    rep.status = SolveStatus::Refused;
    rep.reason = msg.str();
    return rep;
  }

  std::vector<CMat> bcol(N), ccol(N);
  for (int k = 0; k < N; ++k) {
    bcol[k] = data.beta().coeff(k);
    ccol[k] = data.gamma().coeff(block_index(Side::Minus, k, N));
  }
  const auto lu11 = m11.partialPivLu();
  const auto lu22 = m22.partialPivLu();
  const auto h = split_blocks(-lu11.solve(stack_blocks(bcol)), p);
  const auto hs = split_blocks(-lu22.solve(stack_blocks(ccol)), q);

  LaurentPoly::Coefficients c1, c2;
  for (int k = 0; k < N; ++k) {
    c1.emplace(k, h[k]);
    // hs at position N-1-k carries (g^*)_{-k} = g_k^*.
    c2.emplace(k, hs[N - 1 - k].adjoint());
  }
  const LaurentPoly g1(p, q, std::move(c1)), g2(p, q, std::move(c2));
  rep.candidates.emplace("from_M11", g1);
  rep.candidates.emplace("from_M22", g2);
  rep.cross_method_gap = detail::gap(g1, g2);
  rep.metrics["g_gstar_gap"] = *rep.cross_method_gap;

  // -M11^{-1} M12 should be H_{+,g}: constant along block anti-diagonals.
  const CMat hk = -lu11.solve(m12);
  double deviation = 0.0;
  for (int s = 0; s <= 2 * N - 2; ++s) {
    CMat mean = CMat::Zero(p, q);
    int count = 0;
    for (int i = 0; i < N; ++i) {
      const int pos = s - i;  // j = -pos, column position N-1-pos
      if (pos < 0 || pos >= N) continue;
      mean += hk.block(i * p, (N - 1 - pos) * q, p, q);
      ++count;
    }
    mean /= static_cast<double>(count);
    for (int i = 0; i < N; ++i) {
      const int pos = s - i;
      if (pos < 0 || pos >= N) continue;
      deviation = std::max(deviation, max_abs(hk.block(i * p, (N - 1 - pos) * q, p, q) - mean));
    }
  }
  rep.metrics["hankel_deviation"] = deviation;

  rep.g = g1;
  detail::finish(data, tol, rep);
  return rep;
}

/// g1 = -(alpha^{-*} gamma^*)_+ and g2 = -(beta delta^{-1})_+, each available
/// only when the matching determinant has its zeros in the right region.
inline SolveReport solve_factorization(const DataSet& data, double tol = kDefaultTol,
                                       double band = kDefaultCircleBand) {
  SolveReport rep;
  rep.method = SolveMethod::Factorization;
  if (!detail::screen_identities(data, tol, rep)) return rep;

  const CheckReport zeros = check_zero_locations(data, band);
  const bool path1 = zeros.entries[0].verdict == Verdict::Pass;
  const bool path2 = zeros.entries[1].verdict == Verdict::Pass;
  rep.metrics["path1_available"] = path1 ? 1.0 : 0.0;
  rep.metrics["path2_available"] = path2 ? 1.0 : 0.0;
  if (!path1 && !path2) {
    rep.status = SolveStatus::Refused;
    rep.reason = "no factorization path available: " + zeros.entries[0].detail + "; " + zeros.entries[1].detail;
    return rep;
  }

  const int m = data.degree();
  const Index p = data.p(), q = data.q();
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  std::optional<LaurentPoly> g1, g2;
  if (path1) {
    // u = alpha^{-1} as a power series in lambda, through degree m.
    std::vector<CMat> ta(n), unit(n, CMat::Zero(p, p));
    for (std::size_t k = 0; k < n; ++k) ta[k] = data.alpha().coeff(static_cast<int>(k));
    unit[0].setIdentity();
    const auto u = tri_toeplitz_solve(ta, unit, Orientation::Lower);
    std::vector<CMat> blocks(n);
    for (std::size_t j = 0; j < n; ++j) {
      blocks[j] = CMat::Zero(p, q);
      for (std::size_t k = 0; j + k < n; ++k) {
        blocks[j] -= u[k].adjoint() * data.gamma().coeff(-static_cast<int>(j + k)).adjoint();
      }
    }
    g1 = detail::from_blocks(blocks, p, q);
    rep.candidates.emplace("g1", *g1);
  }
  if (path2) {
    // v = delta^{-1} as a power series in lambda^{-1}, through degree -m.
    std::vector<CMat> td(n), unit(n, CMat::Zero(q, q));
    for (std::size_t k = 0; k < n; ++k) td[k] = data.delta().coeff(-static_cast<int>(k));
    unit[0].setIdentity();
    const auto v = tri_toeplitz_solve(td, unit, Orientation::Lower);
    std::vector<CMat> blocks(n);
    for (std::size_t j = 0; j < n; ++j) {
      blocks[j] = CMat::Zero(p, q);
      for (std::size_t k = 0; j + k < n; ++k) blocks[j] -= data.beta().coeff(static_cast<int>(j + k)) * v[k];
    }
    g2 = detail::from_blocks(blocks, p, q);
    rep.candidates.emplace("g2", *g2);
  }
  if (g1 && g2) {
    rep.cross_method_gap = detail::gap(*g1, *g2);
    rep.metrics["g1_g2_gap"] = *rep.cross_method_gap;
  }
  rep.g = g1 ? *g1 : *g2;
  detail::finish(data, tol, rep);
  return rep;
}

}  // namespace twofold
