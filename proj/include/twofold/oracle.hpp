#pragma once

// Forward problem: data set from g via the finite corner systems, plus a
// brute-force least-squares recovery used as an independent check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/QR>

#include "twofold/dataset.hpp"
#include "twofold/diagnostics.hpp"
#include "twofold/structured_ops.hpp"

namespace twofold {

struct Fixture {
  LaurentPoly g;
  DataSet data;
  std::string note;
  /// Max of the three identity residuals and of the four inclusion residuals.
  double identity_residual = 0.0;
  double inclusion_residual = 0.0;
};

/// Synthesized data must satisfy both residual families to this level.
inline constexpr double kFixtureTol = 1e-10;

namespace detail {

/// K = [I, G_m; G_m^*, I] with G_m the (m+1)-block corner of H_{+,g}.
inline CMat corner_operator(const LaurentPoly& g, int n) {
  const CMat gm = hankel_plus(g, n);
  const Index np = gm.rows(), nq = gm.cols();
  CMat k(np + nq, np + nq);
  k << CMat::Identity(np, np), gm, gm.adjoint(), CMat::Identity(nq, nq);
  return k;
}

}  // namespace detail

/// The unique data set for which g solves the problem. Throws SynthesisError
/// when the corner operator is singular.
inline Fixture synthesize_data(const LaurentPoly& g) {
  if (!g.in_subspace(SubspaceTag::Plus)) throw PreconditionError("synthesize_data: g must lie in W_plus");
  const int m = g.is_zero() ? 0 : g.hi();
  const int n = m + 1;
  const Index p = g.rows(), q = g.cols();
  const Index np = n * p;
  const CMat k = detail::corner_operator(g, n);
  const double cond = condition_number(k);
  if (!(cond <= kSingularCondition)) {
    throw SynthesisError("synthesize_data: corner operator is singular (condition number " + std::to_string(cond) +
                         ")");
  }
  CMat rhs = CMat::Zero(k.rows(), p + q);
  rhs.topLeftCorner(p, p).setIdentity();
  rhs.bottomRightCorner(q, q).setIdentity();
  const CMat sol = k.partialPivLu().solve(rhs);

  LaurentPoly::Coefficients a, b, c, d;
  for (int i = 0; i < n; ++i) {
    a.emplace(i, sol.block(i * p, 0, p, p));
    b.emplace(i, sol.block(i * p, p, p, q));
    const int j = block_index(Side::Minus, i, n);
    c.emplace(j, sol.block(np + i * q, 0, q, p));
    d.emplace(j, sol.block(np + i * q, p, q, q));
  }
  Fixture f{g,
            DataSet(LaurentPoly(p, p, std::move(a)), LaurentPoly(p, q, std::move(b)), LaurentPoly(q, p, std::move(c)),
                    LaurentPoly(q, q, std::move(d))),
            "synthesized from g of degree " + std::to_string(m),
            0.0,
            0.0};
  f.identity_residual = identity_residuals(f.data).max_norm();
  f.inclusion_residual = verify_solution(f.data, g).max_value();
  if (!(f.identity_residual <= kFixtureTol) || !(f.inclusion_residual <= kFixtureTol)) {
    throw SynthesisError("synthesize_data: residuals too large (identities " + std::to_string(f.identity_residual) +
                         ", inclusions " + std::to_string(f.inclusion_residual) + ")");
  }
  return f;
}

struct BruteResult {
  LaurentPoly g;
  /// Spread among corner entries that must coincide, plus the size of the
  /// entries that must vanish.
  double hankel_defect = 0.0;
  /// Max-abs residual of the corner equations at the returned unknowns.
  double equation_residual = 0.0;
  /// True when the corner equations alone did not determine G_m and the
  /// Hankel pattern had to be imposed.
  bool under_determined = false;
  Index rank = 0;
  Index unknowns = 0;
};

/// Treats every entry of the corner matrix G_m as an unknown, imposes both
/// corner systems in least squares and reads g off the anti-diagonals.
inline BruteResult brute_recover_g(const DataSet& data) {
  checked_inverse(data.a0(), "a0");
  checked_inverse(data.d0(), "d0");
  const int m = data.degree();
  const int n = m + 1;
  const Index p = data.p(), q = data.q();
  const Index np = n * p, nq = n * q, w = p + q;

  // Columns [a, b] on the l2+ corner and [c, d] on the l2- corner.
  CMat ab(np, w), cd(nq, w);
  for (int i = 0; i < n; ++i) {
    ab.block(i * p, 0, p, p) = data.alpha().coeff(i);
    ab.block(i * p, p, p, q) = data.beta().coeff(i);
    const int j = block_index(Side::Minus, i, n);
    cd.block(i * q, 0, q, p) = data.gamma().coeff(j);
    cd.block(i * q, p, q, q) = data.delta().coeff(j);
  }
  // G cd = [e+ - a, -b] and ab^* G = [-c, e- - d]^*.
  CMat r1 = -ab;
  r1.topLeftCorner(p, p) += CMat::Identity(p, p);
  CMat r2 = -cd;
  r2.bottomRightCorner(q, q) += CMat::Identity(q, q);
  const CMat r2s = r2.adjoint();

  // vec(X C) = (C^T kron I) vec X, vec(A^* X) = (I kron A^*) vec X.
  const Index unknowns = np * nq;
  const Index rows1 = np * w, rows2 = w * nq;
  CMat sys = CMat::Zero(rows1 + rows2, unknowns);
  CMat rhs(rows1 + rows2, 1);
  const CMat abs = ab.adjoint();
  for (Index col = 0; col < w; ++col) {
    for (Index k = 0; k < nq; ++k) {
      sys.block(col * np, k * np, np, np) += cd(k, col) * CMat::Identity(np, np);
    }
    rhs.middleRows(col * np, np) = r1.col(col);
  }
  for (Index k = 0; k < nq; ++k) {
    sys.block(rows1 + k * w, k * np, w, np) = abs;
    rhs.middleRows(rows1 + k * w, w) = r2s.col(k);
  }

  BruteResult out;
  out.unknowns = unknowns;
  Eigen::CompleteOrthogonalDecomposition<CMat> cod(sys);
  out.rank = cod.rank();
  CMat x;
  if (out.rank < unknowns) {
    out.under_determined = true;
    // Hankel pattern: block (i, c) equals block (i+1, c+1); blocks below the
    // anti-diagonal band (i > c) vanish.
    std::vector<std::pair<Index, Index>> ties;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < n; ++c) {
        if (i > c) ties.emplace_back(i * n + c, -1);
        else if (i + 1 < n && c + 1 < n) ties.emplace_back(i * n + c, (i + 1) * n + (c + 1));
      }
    }
    const Index extra = static_cast<Index>(ties.size()) * p * q;
    CMat big = CMat::Zero(sys.rows() + extra, unknowns);
    big.topRows(sys.rows()) = sys;
    CMat big_rhs = CMat::Zero(sys.rows() + extra, 1);
    big_rhs.topRows(sys.rows()) = rhs;
    Index row = sys.rows();
    auto var = [&](int i, int c, Index r, Index s) { return (c * q + s) * np + (i * p + r); };
    for (const auto& [first, second] : ties) {
      const int i1 = static_cast<int>(first / n), c1 = static_cast<int>(first % n);
      for (Index r = 0; r < p; ++r) {
        for (Index s = 0; s < q; ++s, ++row) {
          big(row, var(i1, c1, r, s)) = 1.0;
          if (second >= 0) {
            const int i2 = static_cast<int>(second / n), c2 = static_cast<int>(second % n);
            big(row, var(i2, c2, r, s)) = -1.0;
          }
        }
      }
    }
    Eigen::CompleteOrthogonalDecomposition<CMat> cod2(big);
    x = cod2.solve(big_rhs);
  } else {
    x = cod.solve(rhs);
  }
  out.equation_residual = max_abs(sys * x - rhs);

  const CMat gm = x.reshaped(np, nq);
  LaurentPoly::Coefficients coeffs;
  double defect = 0.0;
  for (int s = 0; s <= 2 * m; ++s) {
    CMat mean = CMat::Zero(p, q);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      const int c = i - s + m;  // column position of index j = i - s
      if (c < 0 || c >= n) continue;
      mean += gm.block(i * p, c * q, p, q);
      ++count;
    }
    mean /= static_cast<double>(count);
    for (int i = 0; i < n; ++i) {
      const int c = i - s + m;
      if (c < 0 || c >= n) continue;
      defect = std::max(defect, max_abs(gm.block(i * p, c * q, p, q) - mean));
    }
    if (s <= m) coeffs.emplace(s, mean);
    else defect = std::max(defect, max_abs(mean));
  }
  out.hankel_defect = defect;
  out.g = LaurentPoly(p, q, std::move(coeffs));
  return out;
}

/// Complex-Gaussian g of degree m, rescaled so hankel_norm(g) = target_norm,
/// and its synthesized data. Deterministic given the seed.
inline Fixture random_fixture(Index p, Index q, int m, double target_norm, std::uint64_t seed) {
  if (p < 1 || q < 1 || m < 0) throw DimensionError("random_fixture: need p, q >= 1 and m >= 0");
  if (!(target_norm >= 0.0 && target_norm < 1.0)) throw PreconditionError("random_fixture: target norm must be in [0, 1)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  LaurentPoly::Coefficients c;
  for (int k = 0; k <= m; ++k) {
    CMat block(p, q);
    for (Index i = 0; i < p; ++i) {
      for (Index j = 0; j < q; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        block(i, j) = Complex(re, im);
      }
    }
    c.emplace(k, std::move(block));
  }
  LaurentPoly g(p, q, std::move(c));
  if (target_norm == 0.0) {
    g = LaurentPoly(p, q);
  } else {
    g = Complex(target_norm / hankel_norm(g)) * g;
  }
  Fixture f = synthesize_data(g);
  f.note = "random fixture p=" + std::to_string(p) + " q=" + std::to_string(q) + " m=" + std::to_string(m) +
           " norm=" + std::to_string(target_norm) + " seed=" + std::to_string(seed);
  return f;
}

}  // namespace twofold
