#include "dposet/rcf.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dposet;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntVector vec(std::initializer_list<long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

IntPoly lin(long root) { return IntPoly::linear_root(root); }

RCFDecomposition base(const IntMatrix& a) {
  auto r = rcf_base_case(a);
  if (auto* f = std::get_if<SearchFailure>(&r)) throw std::runtime_error(f->reason);
  return std::get<RCFDecomposition>(r);
}

RCFDecomposition chain_to(const Poset& p, int n, int l) {
  RCFDecomposition dec = base(p.du_matrix(0));
  for (int k = 0; k < n; ++k) {
    if (k + 1 <= l) {
      dec = base(p.du_matrix(k + 1));
      continue;
    }
    auto step = induction_step(p, k, dec);
    if (auto* o = std::get_if<Obstruction>(&step)) throw std::runtime_error(o->detail);
    dec = std::get<RCFDecomposition>(step);
  }
  return dec;
}

}  // namespace

TEST(Decomposition, KrylovAndVerify) {
  const auto a = mat({{2, 1}, {1, 2}});
  const auto dec = make_decomposition(a, {vec({1, 0})}, {lin(1) * lin(3)});
  EXPECT_EQ(dec.basis, mat({{1, 2}, {0, 1}}));
  EXPECT_TRUE(verify_rcf(dec));
  EXPECT_EQ(inverse_unimodular(dec.basis) * a * dec.basis, mat({{0, -3}, {1, 4}}));
  EXPECT_EQ(apply_poly(lin(1) * lin(3), a, vec({1, 0})), vec({0, 0}));
  EXPECT_EQ(krylov(a, vec({1, 0}), 3), mat({{1, 2, 5}, {0, 1, 4}}));
}

TEST(Decomposition, VerifyRejectsBadInput) {
  const auto a = mat({{2, 1}, {1, 2}});
  // basis of determinant 2
  const auto det2 = make_decomposition(a, {vec({1, 1})}, {lin(1) * lin(3)});
  EXPECT_FALSE(verify_rcf(det2));
  // divisibility chain in the wrong order
  const IntMatrix d = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 3}});
  auto shuffled = make_decomposition(d, {vec({0, 1, 1}), vec({1, 0, 0})},
                                     {lin(1) * lin(3), lin(1)});
  EXPECT_FALSE(verify_rcf(shuffled));
  EXPECT_TRUE(rcf_defect(shuffled).has_value());
  // annihilator that does not kill its generator
  auto wrong = make_decomposition(a, {vec({1, 0})}, {lin(1) * lin(2)});
  EXPECT_FALSE(verify_rcf(wrong));
  // non-monic annihilator
  auto nonmonic = make_decomposition(mat({{4}}), {vec({1})}, {IntPoly::from_values({-4, 2})});
  EXPECT_FALSE(verify_rcf(nonmonic));
}

TEST(BaseCase, Examples) {
  const auto one = base(mat({{5}}));
  EXPECT_EQ(one.basis, mat({{1}}));
  EXPECT_EQ(one.annihilators, (std::vector<IntPoly>{lin(5)}));

  const auto two = base(mat({{2, 1}, {1, 2}}));
  EXPECT_TRUE(verify_rcf(two));
  EXPECT_EQ(two.annihilators, (std::vector<IntPoly>{IntPoly::from_values({3, -4, 1})}));
  // (1,0) is a cyclic vector with unimodular Krylov basis {(1,0),(2,1)}
  EXPECT_TRUE(verify_rcf(make_decomposition(mat({{2, 1}, {1, 2}}), {vec({1, 0})},
                                            two.annihilators)));

  const auto three = base(mat({{3, 1}, {1, 3}}));
  EXPECT_TRUE(verify_rcf(three));
  EXPECT_EQ(three.annihilators, (std::vector<IntPoly>{IntPoly::from_values({8, -6, 1})}));
  EXPECT_TRUE(verify_rcf(make_decomposition(mat({{3, 1}, {1, 3}}), {vec({1, 0})},
                                            three.annihilators)));
  const auto k = make_decomposition(mat({{3, 1}, {1, 3}}), {vec({1, 0})}, three.annihilators);
  EXPECT_EQ(k.basis, mat({{1, 3}, {0, 1}}));
}

TEST(BaseCase, NoRcfForDiagonalWithNonPrincipalIdeal) {
  // diag(1, 3): (x - 1, x - 3) is not principal so no integral RCF exists
  BaseCaseOptions opt;
  opt.random_draws = 200;
  opt.node_cap = 5000;
  auto r = rcf_base_case(mat({{1, 0}, {0, 3}}), opt);
  EXPECT_TRUE(std::holds_alternative<SearchFailure>(r));
}

TEST(BaseCase, RecoversRandomConjugatesOfBlockCompanions) {
  std::mt19937_64 rng(41);
  int found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const long r1 = std::uniform_int_distribution<int>(-3, 3)(rng);
    const long r2 = std::uniform_int_distribution<int>(-3, 3)(rng);
    std::vector<IntPoly> chain = trial % 2 ? std::vector<IntPoly>{lin(r1), lin(r1) * lin(r2)}
                                           : std::vector<IntPoly>{lin(r1) * lin(r2) * lin(r1)};
    const auto b = block_companion(chain);
    const auto u = oracle::random_unimodular(rng, b.rows(), 8, 2);
    const IntMatrix a = u * b * inverse_unimodular(u);
    auto r = rcf_base_case(a);
    if (!std::holds_alternative<RCFDecomposition>(r)) continue;
    ++found;
    const auto& dec = std::get<RCFDecomposition>(r);
    EXPECT_TRUE(verify_rcf(dec));
    EXPECT_EQ(dec.annihilators, chain);
    EXPECT_EQ(dec.op, a);
  }
  EXPECT_EQ(found, 40);
}

TEST(RationalInvariantFactors, FromJordanStructure) {
  const auto f = rational_invariant_factors(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 3}}));
  ASSERT_TRUE(f);
  EXPECT_EQ(*f, (std::vector<IntPoly>{lin(1), lin(1) * lin(3)}));
  const auto j = rational_invariant_factors(mat({{2, 1}, {0, 2}}));
  ASSERT_TRUE(j);
  EXPECT_EQ(*j, (std::vector<IntPoly>{lin(2) * lin(2)}));
  EXPECT_FALSE(rational_invariant_factors(mat({{0, -1}, {1, 0}})));  // spectrum +-i
}

TEST(Lift, YoungRankTwo) {
  Poset y(young_spec());
  const auto dec = make_decomposition(y.du_matrix(2), {vec({1, 0})}, {lin(1) * lin(3)});
  const auto lifts = lift_generators(y, 2, dec);
  ASSERT_EQ(lifts.size(), 1u);
  EXPECT_EQ(y.down_matrix(3) * lifts[0], vec({1, 0}));
  // (1,0,0) is one valid lift; any two differ by a kernel element
  const IntVector diff = lifts[0] - vec({1, 0, 0});
  EXPECT_TRUE((y.down_matrix(3) * diff).isZero());
}

TEST(Lift, EigenGeneratorsUseTheUpMap) {
  Poset y(young_spec());
  const auto dec = chain_to(y, 4, 2);
  const auto lifts = lift_generators(y, 4, dec);
  for (std::size_t i = 0; i < dec.generators.size(); ++i) {
    EXPECT_EQ(y.down_matrix(5) * lifts[i], dec.generators[i]);
    if (dec.annihilators[i] == lin(1)) EXPECT_EQ(lifts[i], y.up_matrix(4) * dec.generators[i]);
  }
}

TEST(InductionState, YoungRankTwo) {
  Poset y(young_spec());
  const auto dec = make_decomposition(y.du_matrix(2), {vec({1, 0})}, {lin(1) * lin(3)});
  auto state = build_induction_state(y, 2, dec, lift_generators(y, 2, dec));
  EXPECT_EQ(state.kernel.cols(), 1);
  EXPECT_EQ(state.epsilon, 0);
  for (std::size_t i = 0; i < state.generators.size(); ++i)
    EXPECT_TRUE((state.down * state.khat(i)).isZero());
  // omega' together with the kernel is a basis
  IntMatrix beta(state.omega_prime.rows(), state.omega_prime.cols() + state.kernel.cols());
  beta << state.omega_prime, state.kernel;
  EXPECT_TRUE(is_basis(beta));
}

TEST(InductionState, PivotsBecomeUnitAndZeroRowsCounted) {
  for (const char* s : {"young", "yf", "young^2"}) {
    Poset p(parse_spec(s));
    const int l = p.r() == 1 ? 2 : 1;
    for (int n = l; n <= l + 3; ++n) {
      const auto dec = chain_to(p, n, l);
      auto state = build_induction_state(p, n, dec, lift_generators(p, n, dec));
      const auto m = static_cast<Eigen::Index>(state.order.size());
      // rows beyond the pivot block are zero after triangularization
      EXPECT_EQ(state.kernel.cols(), static_cast<Eigen::Index>(p.delta(n + 1)) + 0 * m);
      ASSERT_FALSE(pivot_fix(state)) << s << " " << n;
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
          EXPECT_EQ(state.coords(i, j), i == j ? 1 : 0) << s << " " << n;
      for (Eigen::Index i = m; i < state.coords.rows(); ++i)
        EXPECT_TRUE(state.coords.row(i).isZero());
      // tweaked lifts still lift the generators
      for (std::size_t i = 0; i < state.lifts.size(); ++i)
        EXPECT_EQ(state.down * state.lifts[i], state.generators[i]);
    }
  }
}

TEST(InductionStep, SmallYoungSteps) {
  Poset y(young_spec());
  const auto d0 = base(y.du_matrix(0));
  auto s1 = induction_step(y, 0, d0);
  ASSERT_TRUE(std::holds_alternative<RCFDecomposition>(s1));
  const auto& d1 = std::get<RCFDecomposition>(s1);
  EXPECT_EQ(d1.annihilators, (std::vector<IntPoly>{lin(2)}));
  EXPECT_TRUE(verify_rcf(d1));

  const auto d2 = base(y.du_matrix(2));
  auto s3 = induction_step(y, 2, d2);
  ASSERT_TRUE(std::holds_alternative<RCFDecomposition>(s3));
  const auto& d3 = std::get<RCFDecomposition>(s3);
  EXPECT_EQ(d3.annihilators, (std::vector<IntPoly>{lin(1) * lin(2) * lin(4)}));
  EXPECT_TRUE(verify_rcf(d3));
  EXPECT_EQ(d3.op, y.du_matrix(3));
}

TEST(InductionStep, AnnihilatorsMatchPredictionAlongChains) {
  for (const char* s : {"young", "yf", "young*yf", "z(3)"}) {
    Poset p(parse_spec(s));
    const int l = p.r() == 1 ? 2 : 1;
    const int n_max = p.r() == 1 ? 7 : 4;
    RCFDecomposition dec = chain_to(p, l, l);
    for (int n = l; n < n_max; ++n) {
      auto step = induction_step(p, n, dec);
      ASSERT_TRUE(std::holds_alternative<RCFDecomposition>(step)) << s << " " << n;
      dec = std::get<RCFDecomposition>(step);
      EXPECT_TRUE(verify_rcf(dec));
      EXPECT_EQ(dec.annihilators, predicted_invariant_factors(p, n + 1).factors) << s << " " << n;
      EXPECT_EQ(dec.op, p.du_matrix(n + 1));
    }
  }
}

TEST(Bridge, CertificateFromRcfVerifies) {
  Poset y(young_spec());
  for (int n = 0; n <= 6; ++n) {
    const auto dec = chain_to(y, n, 2);
    const auto cert = rcf_to_snf_certificate(dec);
    EXPECT_TRUE(verify_poly_snf(cert, x_plus_shift_matrix(dec.op, 0, 1)));
    EXPECT_EQ(cert.diag, predicted_snf_diagonal(y, n, Convention::XMinusA));
  }
}

TEST(Conjecture, YoungAndProductPass) {
  VerifyOptions opt;
  opt.l = 2;
  const auto y = verify_conjecture(Poset(young_spec()), 8, opt);
  EXPECT_TRUE(y.all_pass());
  EXPECT_FALSE(y.has_obstruction());
  ASSERT_EQ(y.records.size(), 9u);
  for (const auto& r : y.records) {
    EXPECT_TRUE(r.pass()) << r.n;
    EXPECT_EQ(r.method, r.n <= 2 ? "base" : "induction");
    ASSERT_TRUE(r.certificate);
    Poset yy(young_spec());
    EXPECT_TRUE(verify_poly_snf(*r.certificate, x_plus_shift_matrix(-yy.du_matrix(r.n), 0, 1)));
    EXPECT_EQ(r.diagonal, predicted_snf_diagonal(yy, r.n, Convention::APlusX));
  }
  opt.l = 1;
  EXPECT_TRUE(verify_conjecture(Poset(parse_spec("young*young")), 6, opt).all_pass());
}

TEST(Conjecture, RankZeroIsTrivial) {
  VerifyOptions opt;
  for (const char* s : {"young", "yf", "young^2", "z(3)"}) {
    Poset p(parse_spec(s));
    const auto rep = verify_conjecture(p, 0, opt);
    ASSERT_EQ(rep.records.size(), 1u);
    EXPECT_TRUE(rep.all_pass());
    EXPECT_EQ(rep.records[0].diagonal, (std::vector<IntPoly>{IntPoly::from_values({p.r(), 1})}));
  }
}

TEST(Conjecture, CacheLookupIsReverified) {
  Poset y(young_spec());
  VerifyOptions opt;
  opt.l = 2;
  std::vector<RankRecord> stored;
  opt.store = [&](const RankRecord& r) { stored.push_back(r); };
  const auto cold = verify_conjecture(y, 5, opt);
  ASSERT_EQ(stored.size(), 6u);
  // a forged record claiming a wrong generator must not be trusted
  opt.store = nullptr;
  opt.lookup = [&](int n) -> std::optional<RankRecord> {
    auto r = stored[static_cast<std::size_t>(n)];
    if (n == 4) r.generators[0](0) += 1;
    return r;
  };
  const auto warm = verify_conjecture(y, 5, opt);
  EXPECT_TRUE(warm.all_pass());
  for (std::size_t i = 0; i < cold.records.size(); ++i) {
    EXPECT_EQ(warm.records[i].generators, cold.records[i].generators);
    EXPECT_EQ(warm.records[i].diagonal, cold.records[i].diagonal);
  }
}

TEST(Conjecture, DeterministicForFixedSeed) {
  VerifyOptions opt;
  opt.l = 2;
  opt.base.seed = 7;
  const auto a = verify_conjecture(Poset(young_fibonacci_spec()), 6, opt);
  const auto b = verify_conjecture(Poset(young_fibonacci_spec()), 6, opt);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].generators, b.records[i].generators);
    EXPECT_EQ(a.records[i].certificate->P, b.records[i].certificate->P);
  }
}
