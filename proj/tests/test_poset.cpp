#include "dposet/int_linalg.hpp"
#include "dposet/poset.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

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

std::vector<std::string> names(const Poset& p, int n) {
  std::vector<std::string> out;
  for (const auto& e : p.rank(n).elements) out.push_back(p.element_string(e));
  return out;
}

}  // namespace

TEST(Spec, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_spec("young")), "young");
  EXPECT_EQ(to_string(parse_spec("yf")), "yf");
  EXPECT_EQ(to_string(parse_spec("young^2")), "young^2");
  EXPECT_EQ(to_string(parse_spec("young*young")), "young^2");
  EXPECT_EQ(to_string(parse_spec("young*yf")), "young*yf");
  EXPECT_EQ(parse_spec("young").r(), 1);
  EXPECT_EQ(parse_spec("young*yf").r(), 2);
  EXPECT_EQ(parse_spec("z(3)").r(), 3);
  EXPECT_EQ(parse_spec("z(3)"), parse_spec("yf^3"));
  for (const char* s : {"young", "yf", "young^2", "young*yf", "yf^2", "z(3)", "young^2*yf"})
    EXPECT_EQ(parse_spec(to_string(parse_spec(s))), parse_spec(s)) << s;
}

TEST(Spec, BadStringsRejectedWithGrammar) {
  for (const char* s : {"", "foo", "young^", "young^0", "z()", "z(0)", "young**yf", "young^2x"}) {
    try {
      parse_spec(s);
      ADD_FAILURE() << "accepted " << s;
    } catch (const InvalidInput& e) {
      EXPECT_NE(std::string(e.what()).find("grammar"), std::string::npos);
    }
  }
}

TEST(Spec, ZOneIsYoungFibonacci) {
  Poset z1(parse_spec("z(1)")), yf(parse_spec("yf"));
  EXPECT_EQ(z1.r(), 1);
  EXPECT_EQ(z1.rank_sizes(8), yf.rank_sizes(8));
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(z1.du_matrix(n), yf.du_matrix(n));
}

TEST(Young, RanksMatchPartitionEnumeration) {
  Poset y(young_spec());
  for (int n = 0; n <= 12; ++n) {
    auto expected = oracle::partitions(n);
    // reverse-lexicographic: the brute-force generator emits largest parts first
    ASSERT_EQ(y.rank(n).elements, expected) << n;
  }
  EXPECT_EQ(names(y, 4), (std::vector<std::string>{"4", "31", "22", "211", "1111"}));
  EXPECT_EQ(names(y, 0), (std::vector<std::string>{"()"}));
}

TEST(Young, CoversAreDiagramContainments) {
  Poset y(young_spec());
  for (int n = 0; n <= 7; ++n) {
    for (const auto& lam : y.rank(n).elements) {
      std::set<std::vector<int>> got;
      for (const auto& mu : y.covers_up(lam)) got.insert(mu);
      std::set<std::vector<int>> expected;
      const auto c = oracle::cells(lam);
      for (const auto& mu : oracle::partitions(n + 1)) {
        const auto d = oracle::cells(mu);
        if (std::includes(d.begin(), d.end(), c.begin(), c.end())) expected.insert(mu);
      }
      EXPECT_EQ(got, expected);
    }
  }
  std::set<std::string> covers;
  for (const auto& e : y.covers_up({2, 1})) covers.insert(y.element_string(e));
  EXPECT_EQ(covers, (std::set<std::string>{"31", "22", "211"}));
}

TEST(YoungFib, RanksMatchWordEnumeration) {
  Poset yf(young_fibonacci_spec());
  for (int n = 0; n <= 14; ++n) {
    auto got = yf.rank(n).elements;
    auto expected = oracle::fib_words(n);
    std::set<std::vector<int>> a(got.begin(), got.end()), b(expected.begin(), expected.end());
    ASSERT_EQ(a, b) << n;
    ASSERT_EQ(got.size(), a.size()) << "duplicates at " << n;
  }
  EXPECT_EQ(names(yf, 3), (std::vector<std::string>{"111", "12", "21"}));
}

TEST(YoungFib, OrderIsLongestFirstThenLexicographic) {
  Poset yf(young_fibonacci_spec());
  for (int n = 1; n <= 10; ++n) {
    const auto& els = yf.rank(n).elements;
    for (std::size_t i = 1; i < els.size(); ++i) {
      const auto& a = els[i - 1];
      const auto& b = els[i];
      EXPECT_TRUE(a.size() > b.size() || (a.size() == b.size() && a < b));
    }
  }
}

TEST(YoungFib, CoverExamples) {
  Poset yf(young_fibonacci_spec());
  auto cov = [&](std::vector<int> w) {
    std::set<std::string> s;
    for (const auto& e : yf.covers_up(w)) s.insert(yf.element_string(e));
    return s;
  };
  EXPECT_EQ(cov({2}), (std::set<std::string>{"12", "21"}));
  EXPECT_EQ(cov({1}), (std::set<std::string>{"2", "11"}));
  EXPECT_EQ(cov({}), (std::set<std::string>{"1"}));
}

TEST(Elements, InvalidEncodingsRejected) {
  Poset y(young_spec()), yf(young_fibonacci_spec()), prod(parse_spec("young*yf"));
  EXPECT_THROW(y.covers_up({1, 2}), InvalidInput);
  EXPECT_THROW(y.covers_up({0}), InvalidInput);
  EXPECT_THROW(yf.covers_up({3}), InvalidInput);
  EXPECT_THROW(prod.covers_up({1}), InvalidInput);
  EXPECT_EQ(y.validate_element({3, 1}), 4);
  EXPECT_EQ(yf.validate_element({2, 1}), 3);
}

TEST(Matrices, SmallExamples) {
  Poset y(young_spec()), yf(young_fibonacci_spec());
  EXPECT_EQ(y.up_matrix(0), mat({{1}}));
  const auto u2 = y.up_matrix(2);
  ASSERT_EQ(u2.rows(), 3);
  ASSERT_EQ(u2.cols(), 2);
  EXPECT_EQ(u2.col(0).sum(), 2);
  EXPECT_EQ(u2.col(1).sum(), 2);
  EXPECT_EQ(yf.up_matrix(1), mat({{1}, {1}}));
  EXPECT_EQ(y.down_matrix(1), mat({{1}}));
  EXPECT_EQ(y.down_matrix(2), mat({{1, 1}}));
  EXPECT_EQ(y.down_matrix(3), mat({{1, 1, 0}, {0, 1, 1}}));
  // 111 -> 11, 12 -> 2, 21 -> 2 + 11; rank 2 order is (11, 2)
  EXPECT_EQ(yf.down_matrix(3), mat({{1, 0, 1}, {0, 1, 1}}));
  EXPECT_THROW(y.down_matrix(0), InvalidInput);
  EXPECT_EQ(y.du_matrix(2), mat({{2, 1}, {1, 2}}));
  EXPECT_EQ(yf.du_matrix(2), mat({{2, 1}, {1, 2}}));
  EXPECT_EQ(y.du_matrix(0), mat({{1}}));
  EXPECT_EQ(y.ud_matrix(0), mat({{0}}));
  for (const char* s : {"young^2", "z(3)", "young*yf"}) {
    Poset p(parse_spec(s));
    EXPECT_EQ(p.du_matrix(0), mat({{p.r()}})) << s;
  }
}

TEST(Matrices, ProductDUOneIsPermutationOfThreeOneOneThree) {
  Poset p(parse_spec("young^2"));
  const auto du = p.du_matrix(1);
  const auto target = mat({{3, 1}, {1, 3}});
  IntMatrix perm = mat({{0, 1}, {1, 0}});
  EXPECT_TRUE(du == target || perm * du * perm == target);
}

TEST(Matrices, DownIsTransposeOfUp) {
  for (const char* s : {"young", "yf", "young*yf", "z(3)"}) {
    Poset p(parse_spec(s));
    for (int n = 0; n <= 5; ++n) {
      EXPECT_EQ(p.down_matrix(n + 1), p.up_matrix(n).transpose()) << s << " " << n;
      const auto u = p.up_matrix(n);
      for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j) EXPECT_TRUE(u(i, j) == 0 || u(i, j) == 1);
    }
  }
}

TEST(Axioms, HoldForAllFamilies) {
  EXPECT_TRUE(Poset(young_spec()).verify_axioms(10).pass);
  EXPECT_TRUE(Poset(young_fibonacci_spec()).verify_axioms(10).pass);
  const auto r = Poset(parse_spec("young*yf")).verify_axioms(7);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.r, 2);
  EXPECT_TRUE(Poset(parse_spec("z(3)")).verify_axioms(5).pass);
}

TEST(RankSizes, KnownSequencesAndMonotone) {
  auto sizes = [](const char* s, int n) {
    std::vector<long> out;
    for (auto v : Poset(parse_spec(s)).rank_sizes(n)) out.push_back(static_cast<long>(v));
    return out;
  };
  EXPECT_EQ(sizes("young", 6), (std::vector<long>{1, 1, 2, 3, 5, 7, 11}));
  EXPECT_EQ(sizes("yf", 6), (std::vector<long>{1, 1, 2, 3, 5, 8, 13}));
  for (const char* s : {"young", "yf", "young^2", "young*yf", "yf^2", "z(3)"}) {
    const auto v = sizes(s, 8);
    EXPECT_TRUE(std::is_sorted(v.begin(), v.end())) << s;
  }
}

TEST(RankSizes, ProductIsConvolution) {
  Poset y(young_spec()), yf(young_fibonacci_spec()), prod(parse_spec("young*yf"));
  Poset sq(parse_spec("young^2"));
  for (int n = 0; n <= 8; ++n) {
    std::size_t conv = 0, conv_sq = 0;
    for (int i = 0; i <= n; ++i) {
      conv += y.rank_size(i) * yf.rank_size(n - i);
      conv_sq += y.rank_size(i) * y.rank_size(n - i);
    }
    EXPECT_EQ(prod.rank_size(n), conv);
    EXPECT_EQ(sq.rank_size(n), conv_sq);
  }
  EXPECT_EQ(sq.rank_size(3), 10u);
}

TEST(Determinism, TwoInstancesAgree) {
  for (const char* s : {"young", "yf", "young*yf"}) {
    Poset a(parse_spec(s)), b(parse_spec(s));
    for (int n = 0; n <= 7; ++n) {
      EXPECT_EQ(a.rank(n).elements, b.rank(n).elements);
      EXPECT_EQ(a.up_matrix(n), b.up_matrix(n));
    }
  }
}

TEST(Determinism, IndexOfIsInverseOfEnumeration) {
  Poset p(parse_spec("young*yf"));
  for (int n = 0; n <= 5; ++n) {
    const auto& els = p.rank(n).elements;
    for (std::size_t i = 0; i < els.size(); ++i) EXPECT_EQ(p.index_of(n, els[i]), i);
  }
}
