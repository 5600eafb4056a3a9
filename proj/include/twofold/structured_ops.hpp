#pragma once

// Truncated block Toeplitz / Hankel / shift matrices over N-block windows.
//
// Window layout (fixed for every module):
//   l2+ windows hold blocks with indices 0, 1, ..., N-1 (top to bottom),
//   l2- windows hold blocks with indices -N+1, ..., -1, 0 (top to bottom).
// Every Toeplitz and Hankel operator has block (i, j) = r_{i-j}, where i and
// j are the indices (not positions) of the target and source blocks.

#include <string>
#include <vector>

#include "twofold/linalg.hpp"
#include "twofold/report.hpp"
#include "twofold/series.hpp"

namespace twofold {

enum class OpKind { ToeplitzPlus, ToeplitzMinus, HankelPlus, HankelMinus, DiagDelta, ShiftPlus, ShiftMinus };

inline const char* to_string(OpKind k) {
  switch (k) {
    case OpKind::ToeplitzPlus: return "toeplitz_plus";
    case OpKind::ToeplitzMinus: return "toeplitz_minus";
    case OpKind::HankelPlus: return "hankel_plus";
    case OpKind::HankelMinus: return "hankel_minus";
    case OpKind::DiagDelta: return "diag_delta";
    case OpKind::ShiftPlus: return "shift_plus";
    case OpKind::ShiftMinus: return "shift_minus";
  }
  return "?";
}

/// Which one-sided sequence space a window belongs to.
enum class Side { Plus, Minus };

/// Block index carried by window position `pos`.
constexpr int block_index(Side side, int pos, int blocks) { return side == Side::Plus ? pos : pos - (blocks - 1); }

struct Window {
  int blocks = 0;
  /// Number of blocks (from the degree-0 end) on which truncated identities
  /// are exact. Zero means "no exact region".
  int margin = 0;
};

inline int window_margin(int blocks, int used_extent) { return std::max(0, blocks - used_extent); }

struct StructuredOp {
  OpKind kind;
  LaurentPoly symbol;
  Window window;
  CMat dense;
};

namespace detail {

/// Dense block matrix with block (r, c) = coeff(index(r) - index(c)).
inline CMat fill_by_index_difference(const LaurentPoly& symbol, Side row_side, Side col_side, int blocks) {
  const Index n = symbol.rows(), m = symbol.cols();
  CMat out = CMat::Zero(blocks * n, blocks * m);
  for (const auto& [k, c] : symbol.coefficients()) {
    for (int r = 0; r < blocks; ++r) {
      // index(r) - index(col) = k  =>  index(col) = index(r) - k
      const int col_index = block_index(row_side, r, blocks) - k;
      const int col = col_side == Side::Plus ? col_index : col_index + blocks - 1;
      if (col < 0 || col >= blocks) continue;
      out.block(r * n, col * m, n, m) = c;
    }
  }
  return out;
}

inline void require_blocks(int blocks) {
  if (blocks < 1) throw DimensionError("structured operator needs at least one block");
}

}  // namespace detail

/// T_{+,rho}: l2+(cols) -> l2+(rows).
inline CMat toeplitz_plus(const LaurentPoly& symbol, int blocks) {
  detail::require_blocks(blocks);
  return detail::fill_by_index_difference(symbol, Side::Plus, Side::Plus, blocks);
}
/// T_{-,rho}: l2-(cols) -> l2-(rows).
inline CMat toeplitz_minus(const LaurentPoly& symbol, int blocks) {
  detail::require_blocks(blocks);
  return detail::fill_by_index_difference(symbol, Side::Minus, Side::Minus, blocks);
}
/// H_{+,rho}: l2-(cols) -> l2+(rows).
inline CMat hankel_plus(const LaurentPoly& symbol, int blocks) {
  detail::require_blocks(blocks);
  return detail::fill_by_index_difference(symbol, Side::Plus, Side::Minus, blocks);
}
/// H_{-,rho}: l2+(cols) -> l2-(rows).
inline CMat hankel_minus(const LaurentPoly& symbol, int blocks) {
  detail::require_blocks(blocks);
  return detail::fill_by_index_difference(symbol, Side::Minus, Side::Plus, blocks);
}

inline CMat delta(const CMat& r0, int blocks) {
  detail::require_blocks(blocks);
  CMat out = CMat::Zero(blocks * r0.rows(), blocks * r0.cols());
  for (int b = 0; b < blocks; ++b) out.block(b * r0.rows(), b * r0.cols(), r0.rows(), r0.cols()) = r0;
  return out;
}

/// Forward shift on l2+: (S y)_k = y_{k-1}.
inline CMat shift_plus(Index n, int blocks) {
  detail::require_blocks(blocks);
  CMat out = CMat::Zero(blocks * n, blocks * n);
  for (int b = 1; b < blocks; ++b) out.block(b * n, (b - 1) * n, n, n).setIdentity();
  return out;
}

/// Forward shift on l2-: (S x)_k = x_{k+1} for k < 0, and 0 at k = 0.
inline CMat shift_minus(Index n, int blocks) {
  detail::require_blocks(blocks);
  CMat out = CMat::Zero(blocks * n, blocks * n);
  for (int b = 0; b + 1 < blocks; ++b) out.block(b * n, (b + 1) * n, n, n).setIdentity();
  return out;
}

/// Builds the truncated operator of the given kind. For DiagDelta the symbol
/// must be constant; for the shifts only its (square) block size is used.
inline StructuredOp build(OpKind kind, const LaurentPoly& symbol, int blocks) {
  detail::require_blocks(blocks);
  StructuredOp op{kind, symbol, {blocks, window_margin(blocks, support_extent(symbol))}, {}};
  switch (kind) {
    case OpKind::ToeplitzPlus: op.dense = toeplitz_plus(symbol, blocks); break;
    case OpKind::ToeplitzMinus: op.dense = toeplitz_minus(symbol, blocks); break;
    case OpKind::HankelPlus: op.dense = hankel_plus(symbol, blocks); break;
    case OpKind::HankelMinus: op.dense = hankel_minus(symbol, blocks); break;
    case OpKind::DiagDelta:
      if (!symbol.in_subspace(SubspaceTag::Diag)) throw DimensionError("DiagDelta needs a constant symbol");
      op.dense = delta(symbol.coeff(0), blocks);
      op.window.margin = blocks;
      break;
    case OpKind::ShiftPlus:
    case OpKind::ShiftMinus:
      if (symbol.rows() != symbol.cols()) throw DimensionError("shift operators need a square block size");
      op.dense = kind == OpKind::ShiftPlus ? shift_plus(symbol.rows(), blocks) : shift_minus(symbol.rows(), blocks);
      op.window.margin = blocks - 1;
      break;
  }
  return op;
}

inline StructuredOp build_delta(const CMat& r0, int blocks) {
  return build(OpKind::DiagDelta, LaurentPoly::constant(r0), blocks);
}

/// Block matrix-vector product. Each input block must have the operator's
/// block column width; all blocks share the same number of columns.
inline std::vector<CMat> apply_column(const StructuredOp& op, const std::vector<CMat>& v) {
  const int blocks = op.window.blocks;
  if (static_cast<int>(v.size()) != blocks) {
    throw DimensionError("apply_column: expected " + std::to_string(blocks) + " blocks, got " +
                         std::to_string(v.size()));
  }
  const Index in_rows = op.dense.cols() / blocks;
  for (const auto& b : v) {
    if (b.rows() != in_rows) throw DimensionError("apply_column: block height does not match the operator");
  }
  return split_blocks(op.dense * stack_blocks(v), op.dense.rows() / blocks);
}

/// Max |entry| of `diff` over the exact sub-window: the first `margin`
/// blocks of an l2+ side, the last `margin` blocks of an l2- side.
inline double window_residual(const CMat& diff, Side row_side, Index row_block, Side col_side, Index col_block,
                              int blocks, int margin) {
  if (margin <= 0) return 0.0;
  margin = std::min(margin, blocks);
  const Index r0 = row_side == Side::Plus ? 0 : (blocks - margin) * row_block;
  const Index c0 = col_side == Side::Plus ? 0 : (blocks - margin) * col_block;
  return max_abs(diff.block(r0, c0, margin * row_block, margin * col_block));
}

/// Checks the four product rules for the truncated Toeplitz/Hankel calculus
/// and the two Hankel shift relations on the exact sub-window.
inline CheckReport check_product_rules(const LaurentPoly& rho, const LaurentPoly& phi, int blocks,
                                       double tol = 1e-12) {
  if (rho.cols() != phi.rows()) throw DimensionError("check_product_rules: symbols do not compose");
  const int margin = window_margin(blocks, support_extent(rho) + support_extent(phi));
  const bool ok = margin > 0;
  const Index n = rho.rows(), k = phi.cols();
  const LaurentPoly prod = rho * phi;
  const LaurentPoly l_rho = shifted(rho, 1), ls_rho = shifted(rho, -1);
  const LaurentPoly l_phi = shifted(phi, 1), ls_phi = shifted(phi, -1);
  const int N = blocks;

  CheckReport r;
  const CMat t_plus = toeplitz_plus(prod, N) - toeplitz_plus(rho, N) * toeplitz_plus(phi, N) -
                      hankel_plus(ls_rho, N) * hankel_minus(l_phi, N);
  r.add_if(ok, "toeplitz_plus_product", window_residual(t_plus, Side::Plus, n, Side::Plus, k, N, margin), tol);

  const CMat h_plus = hankel_plus(shifted(prod, -1), N) - hankel_plus(ls_rho, N) * toeplitz_minus(phi, N) -
                      toeplitz_plus(rho, N) * hankel_plus(ls_phi, N);
  r.add_if(ok, "hankel_plus_product", window_residual(h_plus, Side::Plus, n, Side::Minus, k, N, margin), tol);

  const CMat h_minus = hankel_minus(shifted(prod, 1), N) - toeplitz_minus(rho, N) * hankel_minus(l_phi, N) -
                       hankel_minus(l_rho, N) * toeplitz_plus(phi, N);
  r.add_if(ok, "hankel_minus_product", window_residual(h_minus, Side::Minus, n, Side::Plus, k, N, margin), tol);

  const CMat t_minus = toeplitz_minus(prod, N) - toeplitz_minus(rho, N) * toeplitz_minus(phi, N) -
                       hankel_minus(l_rho, N) * hankel_plus(ls_phi, N);
  r.add_if(ok, "toeplitz_minus_product", window_residual(t_minus, Side::Minus, n, Side::Minus, k, N, margin), tol);

  // S_-^* H_{-,rho} = H_{-,l rho} and S_+^* H_{+,rho} = H_{+,l^* rho}.
  const Index m = rho.cols();
  const int shift_margin = window_margin(N, support_extent(rho) + 1);
  const CMat s_minus = shift_minus(n, N).adjoint() * hankel_minus(rho, N) - hankel_minus(l_rho, N);
  r.add_if(shift_margin > 0, "hankel_minus_shift",
           window_residual(s_minus, Side::Minus, n, Side::Plus, m, N, shift_margin), tol);
  const CMat s_plus = shift_plus(n, N).adjoint() * hankel_plus(rho, N) - hankel_plus(ls_rho, N);
  r.add_if(shift_margin > 0, "hankel_plus_shift",
           window_residual(s_plus, Side::Plus, n, Side::Minus, m, N, shift_margin), tol);
  return r;
}

}  // namespace twofold
