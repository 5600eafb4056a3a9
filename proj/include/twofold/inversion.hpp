#pragma once

// The operator Omega = [I, H_{+,g}; H_{-,g*}, I] and its explicit inverse
// M = [M11, M12; M21, M22] assembled from the data set, on finite windows.

#include <string>

#include "twofold/dataset.hpp"
#include "twofold/report.hpp"
#include "twofold/structured_ops.hpp"

namespace twofold {

enum class BigOpLabel { Omega, M, Omega1 };

inline const char* to_string(BigOpLabel l) {
  switch (l) {
    case BigOpLabel::Omega: return "omega";
    case BigOpLabel::M: return "M";
    case BigOpLabel::Omega1: return "omega1";
  }
  return "?";
}

/// 2x2 block operator on l2+(C^p) (+) l2-(C^q), truncated to
/// `plus_blocks` and `minus_blocks` blocks respectively.
struct BigOp {
  BigOpLabel label = BigOpLabel::Omega;
  Index p = 0, q = 0;
  int plus_blocks = 0, minus_blocks = 0;
  CMat dense;

  Index plus_dim() const { return plus_blocks * p; }
  Index minus_dim() const { return minus_blocks * q; }

  auto pp() const { return dense.topLeftCorner(plus_dim(), plus_dim()); }
  auto pq() const { return dense.topRightCorner(plus_dim(), minus_dim()); }
  auto qp() const { return dense.bottomLeftCorner(minus_dim(), plus_dim()); }
  auto qq() const { return dense.bottomRightCorner(minus_dim(), minus_dim()); }

  static BigOp assemble(BigOpLabel label, Index p, Index q, int plus_blocks, int minus_blocks, const CMat& pp,
                        const CMat& pq, const CMat& qp, const CMat& qq) {
    BigOp op{label, p, q, plus_blocks, minus_blocks, {}};
    const Index np = op.plus_dim(), nq = op.minus_dim();
    if (pp.rows() != np || pp.cols() != np || pq.rows() != np || pq.cols() != nq || qp.rows() != nq ||
        qp.cols() != np || qq.rows() != nq || qq.cols() != nq) {
      throw DimensionError("BigOp: inconsistent block shapes");
    }
    op.dense.resize(np + nq, np + nq);
    op.dense << pp, pq, qp, qq;
    return op;
  }
};

/// Omega(g) on an N-block window.
inline BigOp build_omega(const LaurentPoly& g, int blocks) {
  if (!g.in_subspace(SubspaceTag::Plus)) throw PreconditionError("build_omega: g must lie in W_plus");
  const Index p = g.rows(), q = g.cols();
  return BigOp::assemble(BigOpLabel::Omega, p, q, blocks, blocks, CMat::Identity(blocks * p, blocks * p),
                         hankel_plus(g, blocks), hankel_minus(adjoint(g), blocks),
                         CMat::Identity(blocks * q, blocks * q));
}

/// Omega_1 = [I, G1; G1*, I] with G1 = S_+^* H_{+,g}, truncated to
/// `plus_blocks` x `minus_blocks`.
inline BigOp build_omega1(const LaurentPoly& g, int plus_blocks, int minus_blocks) {
  const Index p = g.rows(), q = g.cols();
  CMat g1 = CMat::Zero(plus_blocks * p, minus_blocks * q);
  for (int i = 0; i < plus_blocks; ++i) {
    for (int c = 0; c < minus_blocks; ++c) {
      const int j = block_index(Side::Minus, c, minus_blocks);
      g1.block(i * p, c * q, p, q) = g.coeff(i - j + 1);
    }
  }
  return BigOp::assemble(BigOpLabel::Omega1, p, q, plus_blocks, minus_blocks,
                         CMat::Identity(plus_blocks * p, plus_blocks * p), g1, g1.adjoint(),
                         CMat::Identity(minus_blocks * q, minus_blocks * q));
}

enum class MVariant {
  Primary,    ///< with explicit shift factors S_{+,p}, S_{-,q}
  Alternate,  ///< shifts absorbed into the symbols (l beta, l delta, l^* alpha, l^* gamma)
};

/// Assembles M from the data. Throws SingularError when a0 or d0 is singular.
inline BigOp build_M(const DataSet& data, int blocks, MVariant variant = MVariant::Alternate) {
  const int N = blocks;
  const Index p = data.p(), q = data.q();
  const CMat da = delta(checked_inverse(data.a0(), "a0"), N);
  const CMat dd = delta(checked_inverse(data.d0(), "d0"), N);
  const auto& al = data.alpha();
  const auto& be = data.beta();
  const auto& ga = data.gamma();
  const auto& de = data.delta();

  const CMat ta = toeplitz_plus(al, N);
  const CMat tdm = toeplitz_minus(de, N);
  CMat m11, m12, m21, m22;
  if (variant == MVariant::Primary) {
    const CMat sp = shift_plus(p, N), sq = shift_minus(q, N);
    const CMat tb = toeplitz_plus(be, N);
    const CMat tcm = toeplitz_minus(ga, N);
    m11 = ta * da * ta.adjoint() - sp * tb * dd * tb.adjoint() * sp.adjoint();
    m21 = hankel_minus(ga, N) * da * ta.adjoint() - sq.adjoint() * hankel_minus(de, N) * dd * tb.adjoint() * sp.adjoint();
    m12 = hankel_plus(be, N) * dd * tdm.adjoint() - sp.adjoint() * hankel_plus(al, N) * da * tcm.adjoint() * sq.adjoint();
    m22 = tdm * dd * tdm.adjoint() - sq * tcm * da * tcm.adjoint() * sq.adjoint();
  } else {
    const CMat tlb = toeplitz_plus(shifted(be, 1), N);
    const CMat tlcm = toeplitz_minus(shifted(ga, -1), N);
    m11 = ta * da * ta.adjoint() - tlb * dd * tlb.adjoint();
    m21 = hankel_minus(ga, N) * da * ta.adjoint() - hankel_minus(shifted(de, 1), N) * dd * tlb.adjoint();
    m12 = hankel_plus(be, N) * dd * tdm.adjoint() - hankel_plus(shifted(al, -1), N) * da * tlcm.adjoint();
    m22 = tdm * dd * tdm.adjoint() - tlcm * da * tlcm.adjoint();
  }
  return BigOp::assemble(BigOpLabel::M, p, q, N, N, m11, m12, m21, m22);
}

/// Window margin on which M(data) Omega(g) = I is exact.
inline int inverse_margin(const DataSet& data, const LaurentPoly& g, int blocks) {
  return window_margin(blocks, support_extent(g) + data.extent());
}

namespace detail {

/// Restriction of a BigOp-shaped matrix to the exact sub-window.
inline double big_window_residual(const CMat& diff, Index p, Index q, int blocks, int margin) {
  const Index np = blocks * p;
  return std::max({window_residual(diff.topLeftCorner(np, np), Side::Plus, p, Side::Plus, p, blocks, margin),
                   window_residual(diff.topRightCorner(np, diff.cols() - np), Side::Plus, p, Side::Minus, q, blocks,
                                   margin),
                   window_residual(diff.bottomLeftCorner(diff.rows() - np, np), Side::Minus, q, Side::Plus, p,
                                   blocks, margin),
                   window_residual(diff.bottomRightCorner(diff.rows() - np, diff.cols() - np), Side::Minus, q,
                                   Side::Minus, q, blocks, margin)});
}

}  // namespace detail

/// Max-abs of (M Omega - I) and (Omega M - I) on the exact sub-window.
inline CheckReport verify_inverse(const BigOp& omega, const BigOp& m, int margin, double tol = 1e-10) {
  if (omega.dense.rows() != m.dense.rows() || omega.p != m.p || omega.q != m.q ||
      omega.plus_blocks != m.plus_blocks || omega.plus_blocks != omega.minus_blocks) {
    throw DimensionError("verify_inverse: operator shapes differ");
  }
  const int N = omega.plus_blocks;
  const CMat id = CMat::Identity(omega.dense.rows(), omega.dense.cols());
  const bool ok = margin > 0;
  CheckReport r;
  r.add_if(ok, "M*Omega-I", detail::big_window_residual(m.dense * omega.dense - id, m.p, m.q, N, margin), tol,
           "margin " + std::to_string(margin));
  r.add_if(ok, "Omega*M-I", detail::big_window_residual(omega.dense * m.dense - id, m.p, m.q, N, margin), tol,
           "margin " + std::to_string(margin));
  return r;
}

/// Executable form of the operator identities satisfied by M when the data
/// obey the three identities (see dataset.hpp).
inline CheckReport check_lemma_suite(const DataSet& data, int blocks, double tol = 1e-10) {
  const int N = blocks;
  const Index p = data.p(), q = data.q();
  const int margin = window_margin(N, 2 * data.extent() + 1);
  const bool ok = margin > 0;
  CheckReport r;

  const double d1 = identity_residuals(data).max_norm();
  r.add("precondition: identities", d1, tol);
  const bool pre = d1 <= tol;

  const auto& al = data.alpha();
  const auto& be = data.beta();
  const auto& ga = data.gamma();
  const auto& de = data.delta();
  const LaurentPoly als = adjoint(al), bes = adjoint(be), gas = adjoint(ga), des = adjoint(de);
  const LaurentPoly ls_al = shifted(al, -1), ls_ga = shifted(ga, -1);

  auto add = [&](const std::string& name, double value, double threshold = -1) {
    r.add_if(ok && pre, name, value, threshold < 0 ? tol : threshold, "margin " + std::to_string(margin));
  };

  // Toeplitz-Hankel intertwining blocks.
  const CMat t_als = toeplitz_plus(als, N), t_lbs = toeplitz_plus(shifted(bes, -1), N);
  const CMat h_lal = hankel_plus(ls_al, N), h_be = hankel_plus(be, N);
  const CMat h_gas = hankel_plus(gas, N), h_lds = hankel_plus(shifted(des, -1), N);
  const CMat t_lga = toeplitz_minus(ls_ga, N), t_de = toeplitz_minus(de, N);
  add("THHT(1,1)", window_residual(t_als * h_lal - h_gas * t_lga, Side::Plus, p, Side::Minus, p, N, margin));
  add("THHT(1,2)", window_residual(t_als * h_be - h_gas * t_de, Side::Plus, p, Side::Minus, q, N, margin));
  add("THHT(2,1)", window_residual(t_lbs * h_lal - h_lds * t_lga, Side::Plus, q, Side::Minus, p, N, margin));
  add("THHT(2,2)", window_residual(t_lbs * h_be - h_lds * t_de, Side::Plus, q, Side::Minus, q, N, margin));
  {
    CMat left_t(N * (p + q), N * p), right_h(N * p, N * (p + q)), left_h(N * (p + q), N * q),
        right_t(N * q, N * (p + q));
    left_t << t_als, t_lbs;
    right_h << h_lal, h_be;
    left_h << h_gas, h_lds;
    right_t << t_lga, t_de;
    const CMat diff = left_t * shift_plus(p, N).adjoint() * right_h - left_h * shift_minus(q, N) * right_t;
    double res = 0.0;
    for (int bi = 0; bi < 2; ++bi) {
      for (int bj = 0; bj < 2; ++bj) {
        const Index rb = bi == 0 ? p : q, cb = bj == 0 ? p : q;
        const Index r0 = bi == 0 ? 0 : N * p, c0 = bj == 0 ? 0 : N * p;
        res = std::max(res, window_residual(diff.block(r0, c0, N * rb, N * cb), Side::Plus, rb, Side::Minus, cb, N,
                                            margin));
      }
    }
    add("THHT shifted", res);
  }

  BigOp m;
  try {
    m = build_M(data, N);
  } catch (const SingularError& e) {
    r.add_inconclusive("build M", 0.0, 0.0, e.what());
    return r;
  }
  const CMat m11 = m.pp(), m12 = m.pq(), m21 = m.qp(), m22 = m.qq();

  // Unit columns: M11 e+ = a, M12 e- = b, M21 e+ = c, M22 e- = d.
  auto plus_column = [&](const LaurentPoly& f) {
    CMat col(N * f.rows(), f.cols());
    for (int i = 0; i < N; ++i) col.middleRows(i * f.rows(), f.rows()) = f.coeff(i);
    return col;
  };
  auto minus_column = [&](const LaurentPoly& f) {
    CMat col(N * f.rows(), f.cols());
    for (int pos = 0; pos < N; ++pos) col.middleRows(pos * f.rows(), f.rows()) = f.coeff(block_index(Side::Minus, pos, N));
    return col;
  };
  add("M11 e+ = a", max_abs(m11.leftCols(p) - plus_column(al)));
  add("M12 e- = b", max_abs(m12.rightCols(q) - plus_column(be)));
  add("M21 e+ = c", max_abs(m21.leftCols(p) - minus_column(ga)));
  add("M22 e- = d", max_abs(m22.rightCols(q) - minus_column(de)));

  add("M12* = M21", max_abs(m12.adjoint() - m21));
  r.add("M11 hermitian", max_abs(m11 - m11.adjoint()), 1e-12);
  r.add("M22 hermitian", max_abs(m22 - m22.adjoint()), 1e-12);

  const BigOp mp = build_M(data, N, MVariant::Primary);
  add("primary vs alternate", detail::big_window_residual(mp.dense - m.dense, p, q, N, margin));

  // Hankel forms of the four blocks.
  const CMat da = delta(checked_inverse(data.a0(), "a0"), N);
  const CMat dd = delta(checked_inverse(data.d0(), "d0"), N);
  const CMat h_lde = hankel_minus(shifted(de, 1), N), h_ga = hankel_minus(ga, N);
  const CMat f11 = CMat::Identity(N * p, N * p) - h_lal * da * h_lal.adjoint() + h_be * dd * h_be.adjoint();
  const CMat f21 = t_de * dd * h_be.adjoint() - t_lga * da * h_lal.adjoint();
  const CMat f12 = toeplitz_plus(al, N) * da * h_ga.adjoint() - toeplitz_plus(shifted(be, 1), N) * dd * h_lde.adjoint();
  const CMat f22 = CMat::Identity(N * q, N * q) - h_lde * dd * h_lde.adjoint() + h_ga * da * h_ga.adjoint();
  add("M11 hankel form", window_residual(f11 - m11, Side::Plus, p, Side::Plus, p, N, margin));
  add("M21 hankel form", window_residual(f21 - m21, Side::Minus, q, Side::Plus, p, N, margin));
  add("M12 hankel form", window_residual(f12 - m12, Side::Plus, p, Side::Minus, q, N, margin));
  add("M22 hankel form", window_residual(f22 - m22, Side::Minus, q, Side::Minus, q, N, margin));

  // M J M = diag(M11, -M22).
  CMat j = CMat::Identity(m.dense.rows(), m.dense.cols());
  j.bottomRightCorner(N * q, N * q) *= -1.0;
  CMat target = CMat::Zero(m.dense.rows(), m.dense.cols());
  target.topLeftCorner(N * p, N * p) = m11;
  target.bottomRightCorner(N * q, N * q) = -m22;
  add("MJM = diag(M11,-M22)", detail::big_window_residual(m.dense * j * m.dense - target, p, q, N, margin));

  add("M11 S+* M12 = M12 S- M22",
      window_residual(m11 * shift_plus(p, N).adjoint() * m12 - m12 * shift_minus(q, N) * m22, Side::Plus, p,
                      Side::Minus, q, N, margin));
  return r;
}

}  // namespace twofold
