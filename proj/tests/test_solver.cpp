// Solvers, residual checks and the forward-problem oracle.

#include <gtest/gtest.h>

#include <random>

#include "twofold/oracle.hpp"
#include "twofold/structure_checks.hpp"

using namespace twofold;

namespace {

constexpr double kThird = 1.0 / 3.0;

DataSet degree0_fixture() {
  return DataSet(LaurentPoly::scalar({{0, 4 * kThird}}), LaurentPoly::scalar({{0, -2 * kThird}}),
                 LaurentPoly::scalar({{0, -2 * kThird}}), LaurentPoly::scalar({{0, 4 * kThird}}));
}

DataSet degree1_fixture() {
  return DataSet(LaurentPoly::scalar({{0, 4 * kThird}}), LaurentPoly::scalar({{1, -2 * kThird}}),
                 LaurentPoly::scalar({{-1, -2 * kThird}}), LaurentPoly::scalar({{0, 4 * kThird}}));
}

const LaurentPoly kHalf = LaurentPoly::scalar({{0, 0.5}});
const LaurentPoly kHalfLambda = LaurentPoly::scalar({{1, 0.5}});

std::vector<CMat> random_blocks(std::mt19937_64& rng, std::size_t n, Index rows, Index cols) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<CMat> out(n);
  for (auto& b : out) {
    b.resize(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) b(i, j) = Complex(d(rng), d(rng));
    }
  }
  return out;
}

CMat dense_triangular(const std::vector<CMat>& t, std::size_t n, Orientation o) {
  const Index b = t[0].rows();
  CMat m = CMat::Zero(static_cast<Index>(n) * b, static_cast<Index>(n) * b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool lower = i >= j;
      const std::size_t k = lower ? i - j : j - i;
      if ((o == Orientation::Lower) != lower && i != j) continue;
      if (k < t.size()) m.block(static_cast<Index>(i) * b, static_cast<Index>(j) * b, b, b) = t[k];
    }
  }
  return m;
}

void expect_all_routes_recover(const Fixture& f, double tol) {
  const SolveReport poly = solve_polynomial(f.data);
  const SolveReport trunc = solve_truncated(f.data, default_order(f.data));
  const SolveReport fact = solve_factorization(f.data);
  EXPECT_TRUE(poly.accepted()) << poly.reason;
  EXPECT_TRUE(trunc.accepted()) << trunc.reason;
  EXPECT_TRUE(fact.accepted()) << fact.reason;
  EXPECT_LE(max_abs_diff(poly.g, f.g), tol);
  EXPECT_LE(max_abs_diff(trunc.g, f.g), tol);
  for (const auto& [name, g] : fact.candidates) EXPECT_LE(max_abs_diff(g, f.g), tol) << name;
}

}  // namespace

// ------------------------------------------------------ tri_toeplitz_solve

TEST(TriToeplitz, ScalarDiagonal) {
  const std::vector<CMat> t = {CMat::Constant(1, 1, 4 * kThird)};
  const std::vector<CMat> rhs = {CMat::Constant(1, 1, 1.0)};
  const auto x = tri_toeplitz_solve(t, rhs, Orientation::Lower);
  EXPECT_NEAR(std::abs(x[0](0, 0) - 0.75), 0.0, 1e-16);
}

TEST(TriToeplitz, IdentityDiagonalReturnsRhs) {
  std::mt19937_64 rng(1);
  const auto rhs = random_blocks(rng, 5, 2, 3);
  const std::vector<CMat> t = {CMat::Identity(2, 2)};
  EXPECT_EQ(tri_toeplitz_solve(t, rhs, Orientation::Lower), rhs);
  EXPECT_EQ(tri_toeplitz_solve(t, rhs, Orientation::Upper), rhs);
}

TEST(TriToeplitz, MatchesDenseLu) {
  std::mt19937_64 rng(2);
  for (auto o : {Orientation::Lower, Orientation::Upper}) {
    auto t = random_blocks(rng, 4, 2, 2);
    t[0] += 4.0 * CMat::Identity(2, 2);
    const auto rhs = random_blocks(rng, 4, 2, 1);
    const auto x = tri_toeplitz_solve(t, rhs, o);
    const CMat y = dense_triangular(t, 4, o).partialPivLu().solve(stack_blocks(rhs));
    EXPECT_LE(max_abs(stack_blocks(x) - y), 1e-11);
  }
}

TEST(TriToeplitz, ShortDefiningSequence) {
  std::mt19937_64 rng(3);
  auto t = random_blocks(rng, 2, 3, 3);
  t[0] += 5.0 * CMat::Identity(3, 3);
  const auto rhs = random_blocks(rng, 6, 3, 2);
  const auto x = tri_toeplitz_solve(t, rhs, Orientation::Upper);
  const CMat y = dense_triangular(t, 6, Orientation::Upper).partialPivLu().solve(stack_blocks(rhs));
  EXPECT_LE(max_abs(stack_blocks(x) - y), 1e-12);
}

TEST(TriToeplitz, Errors) {
  const std::vector<CMat> singular = {CMat::Zero(2, 2)};
  const std::vector<CMat> rhs = {CMat::Identity(2, 2)};
  try {
    tri_toeplitz_solve(singular, rhs, Orientation::Lower);
    FAIL() << "expected SingularError";
  } catch (const SingularError& e) {
    EXPECT_NE(std::string(e.what()).find("t_0"), std::string::npos);
  }
  const std::vector<CMat> bad_rhs = {CMat::Identity(3, 1)};
  EXPECT_THROW(tri_toeplitz_solve(rhs, bad_rhs, Orientation::Lower), DimensionError);
}

// --------------------------------------------------------- solve_polynomial

TEST(SolvePolynomial, TrivialData) {
  const SolveReport r = solve_polynomial(DataSet::trivial(2, 3));
  EXPECT_TRUE(r.accepted());
  EXPECT_TRUE(r.g.is_zero());
  EXPECT_EQ(r.g.rows(), 2);
  EXPECT_EQ(r.g.cols(), 3);
}

TEST(SolvePolynomial, Degree0FixtureBothSides) {
  const SolveReport r = solve_polynomial(degree0_fixture());
  EXPECT_TRUE(r.accepted());
  EXPECT_LE(max_abs_diff(r.candidates.at("b_side"), kHalf), 1e-15);
  EXPECT_LE(max_abs_diff(r.candidates.at("c_side"), kHalf), 1e-15);
  EXPECT_LE(*r.cross_method_gap, 1e-15);
  for (double v : r.residual_inclusions) EXPECT_LE(v, 1e-15);
}

TEST(SolvePolynomial, Degree1FixtureBothSides) {
  const SolveReport r = solve_polynomial(degree1_fixture());
  EXPECT_TRUE(r.accepted());
  EXPECT_LE(max_abs_diff(r.candidates.at("b_side"), kHalfLambda), 1e-15);
  EXPECT_LE(max_abs_diff(r.g, kHalfLambda), 1e-15);
}

TEST(SolvePolynomial, RefusesAndFlags) {
  const DataSet base = degree1_fixture();
  auto with_a0_shift = [&](double eps) {
    return DataSet(base.alpha() + LaurentPoly::scalar({{0, eps}}), base.beta(), base.gamma(), base.delta());
  };
  const SolveReport refused = solve_polynomial(with_a0_shift(1e-3));
  EXPECT_TRUE(refused.refused());
  EXPECT_NE(refused.reason.find("alpha*alpha - gamma*gamma = a0"), std::string::npos);
  EXPECT_TRUE(refused.g.is_zero());

  const SolveReport flagged = solve_polynomial(with_a0_shift(1e-9));
  EXPECT_EQ(flagged.status, SolveStatus::Flagged);

  const DataSet singular(LaurentPoly::scalar({{1, 1.0}}), LaurentPoly(1, 1), LaurentPoly(1, 1),
                         LaurentPoly::identity(1));
  EXPECT_THROW(solve_polynomial(singular), SingularError);
}

TEST(SolvePolynomial, ThirdIdentityDrivesTheSideGap) {
  const Fixture f = random_fixture(2, 2, 3, 0.6, 21);
  for (double eps : {1e-3, 1e-5}) {
    CMat e = CMat::Zero(2, 2);
    e(0, 0) = eps;
    // A phase on beta keeps beta* beta, so only the third identity breaks.
    const Complex phase = std::polar(1.0, eps);
    const DataSet d(f.data.alpha(), phase * f.data.beta(), f.data.gamma(), f.data.delta());
    const auto res = identity_residuals(d);
    EXPECT_LE(res.second_norm(), 1e-12);
    EXPECT_GT(res.third_norm(), 0.0);
    const SolveReport r = solve_polynomial(d, 1.0);  // loose tolerance to get past the refusal
    EXPECT_GE(*r.cross_method_gap, res.third_norm() / 10);
  }
}

// ---------------------------------------------------------- solve_dual_phi

TEST(SolveDualPhi, Examples) {
  EXPECT_TRUE(solve_dual_phi(DataSet::trivial(1, 2)).is_zero());
  EXPECT_LE(max_abs_diff(solve_dual_phi(degree0_fixture()), kHalf), 1e-15);
  EXPECT_LE(max_abs_diff(solve_dual_phi(degree1_fixture()), LaurentPoly::scalar({{-1, 0.5}})), 1e-15);
}

TEST(SolveDualPhi, SatisfiesItsInclusionAndMatchesG) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Fixture f = random_fixture(1 + seed % 3, 1 + (seed / 3) % 3, static_cast<int>(seed % 6), 0.8, seed);
    const LaurentPoly phi = solve_dual_phi(f.data);
    EXPECT_TRUE(phi.in_subspace(SubspaceTag::Minus));
    const LaurentPoly incl = f.data.delta() + phi * f.data.beta() - LaurentPoly::identity(f.data.q());
    EXPECT_LE(project(incl, SubspaceTag::Minus).max_abs(), 1e-10);
    EXPECT_LE(max_abs_diff(adjoint(phi), f.g), 1e-10);
  }
}

TEST(SolveDualPhi, Preconditions) {
  const DataSet base = degree1_fixture();
  const DataSet bad(base.alpha(), base.beta(), base.gamma(), base.delta() + LaurentPoly::scalar({{-1, 0.1}}));
  EXPECT_THROW(solve_dual_phi(bad), PreconditionError);
}

// ---------------------------------------------------------- solve_truncated

TEST(SolveTruncated, TrivialData) {
  const SolveReport r = solve_truncated(DataSet::trivial(2, 2), 5);
  EXPECT_TRUE(r.accepted());
  EXPECT_TRUE(r.g.is_zero());
  EXPECT_NEAR(r.metrics.at("sigma_min_M11"), 1.0, 1e-15);
  EXPECT_NEAR(r.metrics.at("sigma_min_M22"), 1.0, 1e-15);
}

TEST(SolveTruncated, Degree0Fixture) {
  const SolveReport r = solve_truncated(degree0_fixture(), 6);
  EXPECT_TRUE(r.accepted());
  EXPECT_LE(max_abs_diff(r.g, kHalf), 1e-12);
  EXPECT_LE(*r.cross_method_gap, 1e-12);
  EXPECT_LE(r.metrics.at("hankel_deviation"), 1e-12);
}

TEST(SolveTruncated, MatchesPolynomialOnDegree4) {
  const Fixture f = random_fixture(2, 3, 4, 0.75, 31);
  const SolveReport t = solve_truncated(f.data, 24);
  const SolveReport p = solve_polynomial(f.data);
  EXPECT_TRUE(t.accepted());
  EXPECT_LE(max_abs_diff(t.g, p.g), 1e-9);
  EXPECT_LE(t.metrics.at("hankel_deviation"), 1e-9);
  EXPECT_EQ(t.metrics.at("tail_mass"), 0.0);
}

TEST(SolveTruncated, ReportsTailMassForShortWindows) {
  const Fixture f = random_fixture(1, 1, 4, 0.5, 32);
  const SolveReport t = solve_truncated(f.data, 3);
  EXPECT_GT(t.metrics.at("tail_mass"), 0.0);
}

TEST(SolveTruncated, RefusesBelowTheInjectivityThreshold) {
  // sigma_min(M11) = 1 on trivial data; the threshold tol x rows exceeds it.
  const SolveReport r = solve_truncated(DataSet::trivial(1, 1), 4, 1.0);
  EXPECT_TRUE(r.refused());
  EXPECT_NE(r.reason.find("M11"), std::string::npos);
  EXPECT_EQ(r.metrics.at("d2_threshold_M11"), 4.0);
}

// ------------------------------------------------------ solve_factorization

TEST(SolveFactorization, Examples) {
  const SolveReport t = solve_factorization(DataSet::trivial(1, 1));
  EXPECT_TRUE(t.accepted());
  EXPECT_TRUE(t.candidates.at("g1").is_zero());
  EXPECT_TRUE(t.candidates.at("g2").is_zero());

  const SolveReport d0 = solve_factorization(degree0_fixture());
  EXPECT_LE(max_abs_diff(d0.candidates.at("g1"), kHalf), 1e-15);
  EXPECT_LE(max_abs_diff(d0.candidates.at("g2"), kHalf), 1e-15);

  const SolveReport d1 = solve_factorization(degree1_fixture());
  EXPECT_LE(max_abs_diff(d1.candidates.at("g1"), kHalfLambda), 1e-15);
  EXPECT_LE(*d1.cross_method_gap, 1e-15);
}

TEST(SolveFactorization, UnavailablePathsAreNotFatal) {
  // alpha = 1 - 2 lambda has a zero at 1/2; path 1 is unavailable.
  const DataSet d(LaurentPoly::scalar({{0, 1.0}, {1, -2.0}}), LaurentPoly(1, 1), LaurentPoly(1, 1),
                  LaurentPoly::identity(1));
  const SolveReport r = solve_factorization(d, 1e6);
  EXPECT_EQ(r.metrics.at("path1_available"), 0.0);
  EXPECT_EQ(r.metrics.at("path2_available"), 1.0);
  EXPECT_FALSE(r.candidates.count("g1"));
  EXPECT_TRUE(r.candidates.count("g2"));
}

// ------------------------------------------------------------- properties

TEST(SolverProperty, MethodAgreementOnRandomFixtures) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Fixture f = random_fixture(1 + seed % 3, 1 + (seed / 3) % 3, static_cast<int>(seed % 7), 0.9, 400 + seed);
    expect_all_routes_recover(f, 1e-8);
  }
}

TEST(SolverProperty, DegreeBound) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Fixture f = random_fixture(2, 1, static_cast<int>(seed), 0.6, 500 + seed);
    const SolveReport t = solve_truncated(f.data, default_order(f.data));
    for (const auto& [k, c] : t.g.coefficients()) {
      if (k > f.data.degree()) EXPECT_LE(max_abs(c), 1e-12) << "degree " << k;
    }
  }
}

TEST(SolverProperty, PerturbingTheSolutionRaisesInclusionResiduals) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> d(0.0, 1.0);
  const Fixture f = random_fixture(2, 2, 3, 0.7, 600);
  const double base = verify_solution(f.data, f.g).max_value();
  for (int trial = 0; trial < 10; ++trial) {
    LaurentPoly::Coefficients c;
    for (int k = 0; k <= 3; ++k) c.emplace(k, random_blocks(rng, 1, 2, 2)[0] * 1e-6);
    const LaurentPoly perturbed = f.g + LaurentPoly(2, 2, c);
    EXPECT_GT(verify_solution(f.data, perturbed).max_value(), base);
  }
}

// ------------------------------------------------------------- diagnostics

TEST(CheckIdentities, Examples) {
  const CheckReport t = check_identities(DataSet::trivial(2, 2));
  EXPECT_TRUE(t.all_pass());
  EXPECT_EQ(t.max_value(), 0.0);

  const CheckReport d1 = check_identities(degree1_fixture());
  EXPECT_TRUE(d1.all_pass());
  EXPECT_LE(d1.max_value(), 1e-13);

  const DataSet base = degree1_fixture();
  const DataSet shifted(base.alpha() + LaurentPoly::scalar({{0, 1e-3}}), base.beta(), base.gamma(), base.delta());
  const CheckReport p = check_identities(shifted);
  EXPECT_NEAR(p.value("alpha*alpha - gamma*gamma = a0"), 1e-3 * (8 * kThird - 1) + 1e-6, 1e-12);
  EXPECT_EQ(p.value("delta*delta - beta*beta = d0"), 0.0);
}

TEST(ZeroLocations, Examples) {
  EXPECT_TRUE(check_zero_locations(DataSet::trivial(2, 2)).all_pass());
  const DataSet root_half(LaurentPoly::scalar({{0, 1.0}, {1, -2.0}}), LaurentPoly(1, 1), LaurentPoly(1, 1),
                          LaurentPoly::identity(1));
  const CheckReport r = check_zero_locations(root_half);
  EXPECT_EQ(r.entries[0].verdict, Verdict::Fail);
  EXPECT_NEAR(r.entries[0].value, 2.0, 1e-14);
  EXPECT_EQ(r.entries[1].verdict, Verdict::Pass);
  EXPECT_TRUE(check_zero_locations(degree0_fixture()).all_pass());
}

TEST(ZeroLocations, CircleBandAndDegenerate) {
  const DataSet on_circle(LaurentPoly::scalar({{0, 1.0}, {1, -1.0}}), LaurentPoly(1, 1), LaurentPoly(1, 1),
                          LaurentPoly::identity(1));
  EXPECT_EQ(check_zero_locations(on_circle).entries[0].verdict, Verdict::Inconclusive);
  // delta = 1 - 2 lambda^{-1}: mu-root at 1/2, i.e. a zero at |lambda| = 2.
  const DataSet outside(LaurentPoly::identity(1), LaurentPoly(1, 1), LaurentPoly(1, 1),
                        LaurentPoly::scalar({{0, 1.0}, {-1, -2.0}}));
  EXPECT_EQ(check_zero_locations(outside).entries[1].verdict, Verdict::Fail);
  CMat rank1 = CMat::Ones(2, 2);
  const DataSet degenerate(LaurentPoly::constant(rank1), LaurentPoly(2, 1), LaurentPoly(1, 2),
                           LaurentPoly::identity(1));
  EXPECT_THROW(check_zero_locations(degenerate), DegenerateError);
}

TEST(PolynomialRoots, CompanionMatrix) {
  // (x - 2)(x - 3) x^2 with a negligible leading term.
  const auto roots = polynomial_roots({0.0, 0.0, 6.0, -5.0, 1.0, 1e-16});
  ASSERT_EQ(roots.size(), 4u);
  std::vector<double> mods;
  for (const auto& z : roots) mods.push_back(std::abs(z));
  std::sort(mods.begin(), mods.end());
  EXPECT_EQ(mods[0], 0.0);
  EXPECT_EQ(mods[1], 0.0);
  EXPECT_NEAR(mods[2], 2.0, 1e-12);
  EXPECT_NEAR(mods[3], 3.0, 1e-12);
  EXPECT_THROW(polynomial_roots({0.0, 0.0}), DegenerateError);
}

TEST(HankelNorm, Examples) {
  EXPECT_EQ(hankel_norm(LaurentPoly(2, 2)), 0.0);
  EXPECT_NEAR(hankel_norm(LaurentPoly::scalar({{0, Complex(0.3, 0.4)}})), 0.5, 1e-15);
  EXPECT_NEAR(hankel_norm(kHalfLambda), 0.5, 1e-15);
  EXPECT_THROW(hankel_norm(LaurentPoly::lambda_power(-1)), PreconditionError);
}

TEST(StrictContraction, Examples) {
  const CheckReport t = check_strict_contraction(DataSet::trivial(1, 1));
  EXPECT_TRUE(t.all_pass());
  EXPECT_EQ(t.value("hankel_norm(g) < 1"), 0.0);

  const CheckReport d1 = check_strict_contraction(degree1_fixture());
  EXPECT_TRUE(d1.all_pass());
  EXPECT_NEAR(d1.value("hankel_norm(g) < 1"), 0.5, 1e-15);

  const Fixture f = random_fixture(2, 2, 3, 0.99, 700);
  EXPECT_TRUE(check_strict_contraction(f.data).all_pass());
}

TEST(StrictContraction, FailsOffTheContractiveRegion) {
  // g = 2: corner [1, 2; 2, 1] is invertible but indefinite.
  const Fixture f = synthesize_data(LaurentPoly::scalar({{0, 2.0}}));
  const CheckReport r = check_strict_contraction(f.data);
  EXPECT_TRUE(r.any_fail());
  EXPECT_FALSE(r.passed("a0 positive definite"));
  EXPECT_FALSE(r.passed("hankel_norm(g) < 1"));
}

TEST(VerifySolution, Examples) {
  const CheckReport t = verify_solution(DataSet::trivial(2, 1), LaurentPoly(2, 1));
  EXPECT_TRUE(t.all_pass());
  EXPECT_EQ(t.max_value(), 0.0);

  const CheckReport d1 = verify_solution(degree1_fixture(), kHalfLambda);
  EXPECT_EQ(d1.entries.size(), 4u);
  EXPECT_LE(d1.max_value(), 1e-12);

  const CheckReport off = verify_solution(degree1_fixture(), kHalfLambda + LaurentPoly::scalar({{0, 0.1}}));
  EXPECT_GE(off.max_value(), 0.05);
  EXPECT_THROW(verify_solution(degree1_fixture(), LaurentPoly(2, 1)), DimensionError);
}

TEST(AppendixStructure, Examples) {
  const CheckReport z = check_appendix_structure(DataSet::trivial(1, 1), LaurentPoly(1, 1), 4);
  EXPECT_TRUE(z.all_pass());
  EXPECT_EQ(z.value("Schur extraction a0"), 0.0);

  const CheckReport d0 = check_appendix_structure(degree0_fixture(), kHalf, 4);
  EXPECT_TRUE(d0.all_pass());
  EXPECT_LE(d0.value("Schur extraction a0"), 1e-15);
  EXPECT_LE(d0.value("Schur extraction d0"), 1e-15);

  const CheckReport d1 = check_appendix_structure(degree1_fixture(), kHalfLambda, 8);
  EXPECT_TRUE(d1.all_pass());
  EXPECT_LE(d1.value("congruence to diag(a0, Omega1)"), 1e-11);
  EXPECT_LE(d1.value("congruence to diag(Omega1, d0)"), 1e-11);
}

TEST(AppendixStructure, ContractionAndPositivity) {
  // Off the contractive region Omega is indefinite and the equivalence still holds.
  const Fixture f = synthesize_data(LaurentPoly::scalar({{0, 2.0}}));
  const CheckReport r = check_appendix_structure(f.data, f.g, 4);
  EXPECT_TRUE(r.passed("Omega positive iff contraction"));
  EXPECT_EQ(r.find("Omega1 positive")->verdict, Verdict::Inconclusive);

  const CheckReport small = check_appendix_structure(degree1_fixture(), kHalfLambda, 1);
  EXPECT_TRUE(small.any(Verdict::Inconclusive));
}

TEST(DiagnosticsProperty, SynthesizedDataPassesEverything) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Fixture f = random_fixture(1 + seed % 3, 1 + (seed / 3) % 3, static_cast<int>(seed % 5), 0.95, 800 + seed);
    EXPECT_TRUE(check_identities(f.data).all_pass());
    EXPECT_TRUE(verify_solution(f.data, f.g).all_pass());
    EXPECT_TRUE(check_strict_contraction(f.data).all_pass());
    const CheckReport a = check_appendix_structure(f.data, f.g, default_order(f.data));
    EXPECT_TRUE(a.all_pass());
    EXPECT_LE(a.value("Schur extraction a0"), 1e-10);
  }
}

// ------------------------------------------------------------------ oracle

TEST(Synthesize, Examples) {
  const Fixture z = synthesize_data(LaurentPoly(2, 3));
  EXPECT_EQ(z.data.alpha(), LaurentPoly::identity(2));
  EXPECT_TRUE(z.data.beta().is_zero());
  EXPECT_TRUE(z.data.gamma().is_zero());
  EXPECT_EQ(z.data.delta(), LaurentPoly::identity(3));

  const Fixture h = synthesize_data(kHalf);
  EXPECT_LE(max_abs_diff(h.data.alpha(), LaurentPoly::scalar({{0, 4 * kThird}})), 1e-15);
  EXPECT_LE(max_abs_diff(h.data.beta(), LaurentPoly::scalar({{0, -2 * kThird}})), 1e-15);
  EXPECT_LE(max_abs_diff(h.data.gamma(), LaurentPoly::scalar({{0, -2 * kThird}})), 1e-15);
  EXPECT_LE(max_abs_diff(h.data.delta(), LaurentPoly::scalar({{0, 4 * kThird}})), 1e-15);

  const Fixture l = synthesize_data(kHalfLambda);
  const DataSet want = degree1_fixture();
  EXPECT_LE(max_abs_diff(l.data.alpha(), want.alpha()), 1e-15);
  EXPECT_LE(max_abs_diff(l.data.beta(), want.beta()), 1e-15);
  EXPECT_LE(max_abs_diff(l.data.gamma(), want.gamma()), 1e-15);
  EXPECT_LE(max_abs_diff(l.data.delta(), want.delta()), 1e-15);
}

TEST(Synthesize, SingularCorner) {
  // g = 1: the corner [1, 1; 1, 1] is singular.
  EXPECT_THROW(synthesize_data(LaurentPoly::scalar({{0, 1.0}})), SynthesisError);
  EXPECT_THROW(synthesize_data(LaurentPoly::lambda_power(-1)), PreconditionError);
}

TEST(BruteRecover, Examples) {
  const BruteResult t = brute_recover_g(DataSet::trivial(1, 1));
  EXPECT_TRUE(t.g.is_zero());
  EXPECT_EQ(t.hankel_defect, 0.0);

  const BruteResult h = brute_recover_g(degree0_fixture());
  EXPECT_LE(max_abs_diff(h.g, kHalf), 1e-15);
  EXPECT_LE(h.hankel_defect, 1e-15);

  const BruteResult l = brute_recover_g(degree1_fixture());
  EXPECT_LE(max_abs_diff(l.g, kHalfLambda), 1e-12);
  EXPECT_LE(l.hankel_defect, 1e-12);
}

TEST(BruteRecover, AgreesWithGeneratingG) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Fixture f = random_fixture(1 + seed % 2, 1 + (seed / 2) % 2, static_cast<int>(seed % 4), 0.8, 900 + seed);
    const BruteResult b = brute_recover_g(f.data);
    EXPECT_LE(max_abs_diff(b.g, f.g), 1e-9);
    EXPECT_LE(b.hankel_defect, 1e-10);
    EXPECT_LE(b.equation_residual, 1e-10);
  }
}

TEST(BruteRecover, RankReportIsConsistent) {
  const Fixture f = random_fixture(1, 1, 5, 0.5, 950);
  const BruteResult b = brute_recover_g(f.data);
  EXPECT_EQ(b.under_determined, b.rank < b.unknowns);
  EXPECT_LE(max_abs_diff(b.g, f.g), 1e-9);
}

TEST(RandomFixture, Contract) {
  const Fixture z = random_fixture(2, 2, 3, 0.0, 1);
  EXPECT_TRUE(z.g.is_zero());
  const Fixture a = random_fixture(2, 3, 4, 0.9, 12345);
  const Fixture b = random_fixture(2, 3, 4, 0.9, 12345);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.data.alpha(), b.data.alpha());
  EXPECT_NEAR(hankel_norm(a.g), 0.9, 1e-12);
  EXPECT_LE(a.identity_residual, 1e-10);
  EXPECT_LE(a.inclusion_residual, 1e-10);
  EXPECT_LE(a.data.degree(), 4);
  EXPECT_THROW(random_fixture(1, 1, 2, 1.0, 1), PreconditionError);
}
