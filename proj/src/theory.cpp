#include "dposet/theory.hpp"

#include "dposet/int_linalg.hpp"

#include <algorithm>

namespace dposet {

const char* to_string(Convention c) {
  return c == Convention::XMinusA ? "xI-DU" : "DU+xI";
}

SpectrumPrediction predicted_char_polys(const Poset& poset, int n) {
  if (n < 0) throw InvalidInput("negative rank");
  SpectrumPrediction out;
  out.n = n;
  const int r = poset.r();
  for (int i = 0; i <= n; ++i) {
    const long mult = poset.delta(n - i);
    if (mult <= 0) continue;
    out.du.emplace_back(Integer(r * (i + 1)), static_cast<int>(mult));
    out.ud.emplace_back(Integer(r * i), static_cast<int>(mult));
  }
  return out;
}

InvariantFactorPrediction predicted_invariant_factors(const Poset& poset, int n) {
  if (n < 0) throw InvalidInput("negative rank");
  InvariantFactorPrediction out;
  out.n = n;
  long m = 0;
  for (int j = 0; j <= n; ++j) m = std::max(m, poset.delta(j));
  out.m = static_cast<int>(m);
  const int r = poset.r();
  for (long i = 1; i <= m; ++i) {
    IntPoly a(1);
    for (int j = 1; j <= n + 1; ++j)
      if (poset.delta(n + 1 - j) >= m - i + 1) a *= IntPoly::linear_root(Integer(r * j));
    out.factors.push_back(std::move(a));
  }
  IntPoly prod(1);
  for (std::size_t i = 0; i < out.factors.size(); ++i) {
    if (out.factors[i].degree() < 1)
      throw InternalError("predicted invariant factor is constant");
    if (i > 0 && !divides(out.factors[i - 1], out.factors[i]))
      throw InternalError("predicted invariant factors break the divisibility chain");
    prod *= out.factors[i];
  }
  if (prod != predicted_char_polys(poset, n).du_poly())
    throw InternalError("predicted invariant factors do not multiply to the spectrum");
  return out;
}

std::vector<IntPoly> predicted_snf_diagonal(const Poset& poset, int n, Convention convention) {
  auto pred = predicted_invariant_factors(poset, n);
  const auto p = static_cast<std::size_t>(poset.rank_size(n));
  std::vector<IntPoly> diag(p - pred.factors.size(), IntPoly(1));
  for (auto& a : pred.factors) {
    if (convention == Convention::APlusX) {
      IntPoly b = a.negated_variable();
      diag.push_back(b.leading() < 0 ? -b : b);
    } else {
      diag.push_back(a);
    }
  }
  return diag;
}

SurjectivityReport check_down_surjectivity(const Poset& poset, int n_max) {
  SurjectivityReport rep;
  for (int n = 1; n <= n_max + 1; ++n) {
    SurjectivityRecord rec;
    rec.n = n;
    rec.down_surjective = is_surjective_over_Z(poset.down_matrix(n));
    rec.up_free_cokernel = has_free_cokernel(poset.up_matrix(n - 1));
    if (rec.down_surjective != rec.up_free_cokernel) rep.consistent = false;
    if (!rec.down_surjective && !rep.first_failure) rep.first_failure = n;
    rep.records.push_back(rec);
  }
  return rep;
}

RankInequalityReport check_rank_inequality(const Poset& poset, int l, int n_max) {
  if (l < 0) throw InvalidInput("l must be non-negative");
  RankInequalityReport rep;
  rep.l = l;
  rep.n_max = n_max;
  const int shift = poset.r() == 1 ? 2 : 1;
  for (int n = l + 1; n <= n_max; ++n) {
    RankInequalityRecord rec;
    rec.n = n;
    rec.lhs = poset.delta(n);
    rec.rhs = poset.delta(n - shift) + 1;
    rec.holds = rec.lhs >= rec.rhs;
    if (!rec.holds && !rep.first_failure) rep.first_failure = n;
    rep.records.push_back(rec);
  }
  return rep;
}

bool AuxiliaryReport::holds() const {
  return std::all_of(records.begin(), records.end(), [](const auto& r) { return r.holds; });
}

Integer fibonacci(int k) {
  if (k >= 0) {
    Integer a = 1, b = 1;
    for (int i = 0; i < k; ++i) {
      Integer c = a + b;
      a = b;
      b = c;
    }
    return a;
  }
  // walk down from (f_1, f_0)
  Integer hi = 1, lo = 1;
  for (int i = 0; i > k; --i) {
    Integer below = hi - lo;
    hi = lo;
    lo = below;
  }
  return lo;
}

Integer partitions_without_ones(int n) {
  if (n < 0) return 0;
  std::vector<Integer> ways(static_cast<std::size_t>(n) + 1, Integer(0));
  ways[0] = 1;
  for (int part = 2; part <= n; ++part)
    for (int s = part; s <= n; ++s)
      ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  return ways[static_cast<std::size_t>(n)];
}

AuxiliaryReport auxiliary_combinatorial_checks(const Poset& poset, int n_max) {
  AuxiliaryReport rep;
  const auto& spec = poset.spec();
  switch (spec.family) {
    case Family::Young:
      rep.kind = "no-part-one partitions";
      for (int n = 0; n <= n_max; ++n) {
        AuxiliaryRecord rec{n, "delta p_n", "#partitions without part 1",
                            Integer(poset.delta(n)), partitions_without_ones(n), false};
        rec.holds = rec.lhs == rec.rhs;
        rep.records.push_back(std::move(rec));
      }
      break;
    case Family::YoungFib:
      rep.kind = "fibonacci";
      for (int n = 0; n <= n_max; ++n) {
        AuxiliaryRecord rec{n, "delta p_n", "f_{n-2}", Integer(poset.delta(n)),
                            fibonacci(n - 2), false};
        rec.holds = rec.lhs == rec.rhs;
        rep.records.push_back(std::move(rec));
      }
      break;
    case Family::Product: {
      rep.kind = "product convolution";
      Poset first(spec.factors.front());
      Poset rest(product_spec({spec.factors.begin() + 1, spec.factors.end()}));
      for (int n = 0; n <= n_max; ++n) {
        Integer conv = 0;
        for (int i = 0; i <= n; ++i)
          conv += Integer(rest.rank_size(n - i)) * Integer(first.rank_size(i));
        AuxiliaryRecord rec{n, "pq_n", "sum q_{n-i} p_i", Integer(poset.rank_size(n)), conv,
                            false};
        rec.holds = rec.lhs == rec.rhs;
        rep.records.push_back(std::move(rec));
      }
      break;
    }
  }
  return rep;
}

}  // namespace dposet
