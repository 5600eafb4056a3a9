#pragma once

// Composite checks: the strict-contraction conditions and the Omega / Omega_1
// block identities. These call into the solver and the big operators.

#include <limits>
#include <optional>
#include <string>

#include "twofold/diagnostics.hpp"
#include "twofold/inversion.hpp"
#include "twofold/solver.hpp"

namespace twofold {

/// (i) a0, d0 positive definite; (ii) the identities; (iii) zero locations.
/// When the data admit a solution, adds hankel_norm(g) < 1 and the link
/// "contraction implies positive a0, d0".
inline CheckReport check_strict_contraction(const DataSet& data, double tol = kDefaultTol,
                                            double band = kDefaultCircleBand) {
  CheckReport r;
  add_positive_definite_entry(r, "a0 positive definite", data.a0());
  add_positive_definite_entry(r, "d0 positive definite", data.d0());
  const auto res = identity_residuals(data);
  r.add("alpha*alpha - gamma*gamma = a0", res.first_norm(), tol);
  r.add("delta*delta - beta*beta = d0", res.second_norm(), tol);
  r.add("alpha*beta = gamma*delta", res.third_norm(), tol);
  try {
    r.append(check_zero_locations(data, band));
  } catch (const DegenerateError& e) {
    r.add("det alpha zero-free in |lambda| <= 1", std::numeric_limits<double>::infinity(), 1.0 / (1.0 + band), e.what());
    r.add("det delta zero-free in |lambda| >= 1", std::numeric_limits<double>::infinity(), 1.0 / (1.0 + band), e.what());
  }

  const bool pd = r.passed("a0 positive definite") && r.passed("d0 positive definite");
  std::optional<SolveReport> sol;
  std::string why = "no accepted solution";
  try {
    sol = solve_polynomial(data, tol);
    if (!sol->accepted()) why = sol->reason;
  } catch (const Error& e) {
    why = e.what();
  }
  if (sol && sol->accepted()) {
    const double hn = hankel_norm(sol->g);
    r.add("hankel_norm(g) < 1", hn, 1.0 - 1e-12);
    r.add("contraction implies a0, d0 positive definite", (hn < 1.0 && !pd) ? 1.0 : 0.0, 0.0);
  } else {
    r.add_inconclusive("hankel_norm(g) < 1", 0.0, 1.0 - 1e-12, why);
    r.add_inconclusive("contraction implies a0, d0 positive definite", 0.0, 0.0, why);
  }
  return r;
}

/// Schur extractions from Omega^{-1}, the two partitions of Omega through
/// Omega_1, the two congruences to diag(a0, Omega_1) / diag(Omega_1, d0), and
/// the positivity links with hankel_norm(g).
inline CheckReport check_appendix_structure(const DataSet& data, const LaurentPoly& g, int blocks,
                                            double tol = kDefaultTol) {
  if (g.rows() != data.p() || g.cols() != data.q()) throw DimensionError("check_appendix_structure: shape mismatch");
  const int N = blocks;
  const Index p = data.p(), q = data.q();
  const int m = std::max(data.degree(), g.is_zero() ? 0 : g.hi());
  const bool ok = N >= m + 1 && N >= 2;
  const std::string note = "window " + std::to_string(N) + ", corner " + std::to_string(m + 1);

  CheckReport r;
  const BigOp omega = build_omega(g, N);
  const Index np = omega.plus_dim(), nq = omega.minus_dim(), dim = np + nq;

  // (a) Schur extractions.
  const auto lu = omega.dense.fullPivLu();
  if (lu.isInvertible()) {
    const CMat inv = lu.inverse();
    r.add_if(ok, "Schur extraction a0", max_abs(inv.topLeftCorner(p, p) - data.a0()), tol, note);
    r.add_if(ok, "Schur extraction d0", max_abs(inv.bottomRightCorner(q, q) - data.d0()), tol, note);
  } else {
    r.add_inconclusive("Schur extraction a0", 0.0, tol, "Omega is singular on the window");
    r.add_inconclusive("Schur extraction d0", 0.0, tol, "Omega is singular on the window");
  }

  // Omega with its first p rows/cols removed is Omega_1 on (N-1, N) blocks;
  // with its last q rows/cols removed it is Omega_1 on (N, N-1) blocks.
  const BigOp om1_first = build_omega1(g, N - 1, N);
  const BigOp om1_last = build_omega1(g, N, N - 1);
  r.add_if(N >= 2, "partition drop first block",
           max_abs(omega.dense.bottomRightCorner(dim - p, dim - p) - om1_first.dense), tol);
  r.add_if(N >= 2, "partition drop last block", max_abs(omega.dense.topLeftCorner(dim - q, dim - q) - om1_last.dense),
           tol);

  // (b) Congruences. X = (a_1, ..., a_{N-1}; c_{-N+1}, ..., c_0),
  // Y = (b_0, ..., b_{N-1}; d_{-N+1}, ..., d_{-1}).
  {
    CMat x(dim - p, p);
    for (int k = 1; k < N; ++k) x.middleRows((k - 1) * p, p) = data.alpha().coeff(k);
    for (int c = 0; c < N; ++c) x.middleRows(np - p + c * q, q) = data.gamma().coeff(block_index(Side::Minus, c, N));
    CMat left = CMat::Zero(dim, dim), right = CMat::Zero(dim, dim), target = CMat::Zero(dim, dim);
    left.topLeftCorner(p, p) = data.a0();
    left.topRightCorner(p, dim - p) = x.adjoint();
    left.bottomRightCorner(dim - p, dim - p).setIdentity();
    right.topLeftCorner(p, p) = data.a0();
    right.bottomLeftCorner(dim - p, p) = x;
    right.bottomRightCorner(dim - p, dim - p).setIdentity();
    target.topLeftCorner(p, p) = data.a0();
    target.bottomRightCorner(dim - p, dim - p) = om1_first.dense;
    r.add_if(ok, "congruence to diag(a0, Omega1)", max_abs(left * omega.dense * right - target), tol, note);
  }
  {
    CMat y(dim - q, q);
    for (int k = 0; k < N; ++k) y.middleRows(k * p, p) = data.beta().coeff(k);
    for (int c = 0; c + 1 < N; ++c) y.middleRows(np + c * q, q) = data.delta().coeff(block_index(Side::Minus, c, N));
    CMat left = CMat::Zero(dim, dim), right = CMat::Zero(dim, dim), target = CMat::Zero(dim, dim);
    left.topLeftCorner(dim - q, dim - q).setIdentity();
    left.bottomLeftCorner(q, dim - q) = y.adjoint();
    left.bottomRightCorner(q, q) = data.d0();
    right.topLeftCorner(dim - q, dim - q).setIdentity();
    right.topRightCorner(dim - q, q) = y;
    right.bottomRightCorner(q, q) = data.d0();
    target.topLeftCorner(dim - q, dim - q) = om1_last.dense;
    target.bottomRightCorner(q, q) = data.d0();
    r.add_if(ok, "congruence to diag(Omega1, d0)", max_abs(left * omega.dense * right - target), tol, note);
  }

  // (c), (d) positivity.
  const double hn = hankel_norm(g);
  const double lmin_omega = min_hermitian_eigenvalue(omega.dense);
  const double lmin_omega1 = min_hermitian_eigenvalue(om1_first.dense);
  r.add_if(hn < 1.0, "Omega1 positive", -lmin_omega1, -1e-12,
           "hankel norm " + std::to_string(hn) + ", smallest eigenvalue " + std::to_string(lmin_omega1));
  r.add("Omega positive iff contraction", ((lmin_omega > 0.0) == (hn < 1.0)) ? 0.0 : 1.0, 0.0,
        "smallest eigenvalue " + std::to_string(lmin_omega) + ", hankel norm " + std::to_string(hn));
  r.add_if(N >= m + 1, "lambda_min(Omega) = 1 - hankel_norm(g)", std::abs(lmin_omega - (1.0 - hn)), tol, note);
  return r;
}

}  // namespace twofold
