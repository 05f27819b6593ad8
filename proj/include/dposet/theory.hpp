#pragma once

#include "dposet/poly.hpp"
#include "dposet/poset.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dposet {

/// Root multiplicities; zero-multiplicity roots are dropped.
using Factorization = std::vector<std::pair<Integer, int>>;

struct SpectrumPrediction {
  int n = 0;
  Factorization du;
  Factorization ud;
  IntPoly du_poly() const { return IntPoly::from_roots(du); }
  IntPoly ud_poly() const { return IntPoly::from_roots(ud); }
};

struct InvariantFactorPrediction {
  int n = 0;
  int m = 0;
  std::vector<IntPoly> factors;  // a_1 | ... | a_m, monic
};

/// Which matrix the Smith diagonal refers to: xI - A or A + xI.
enum class Convention { XMinusA, APlusX };
const char* to_string(Convention c);

SpectrumPrediction predicted_char_polys(const Poset& poset, int n);
InvariantFactorPrediction predicted_invariant_factors(const Poset& poset, int n);
std::vector<IntPoly> predicted_snf_diagonal(const Poset& poset, int n,
                                            Convention convention = Convention::XMinusA);

struct SurjectivityRecord {
  int n = 0;
  bool down_surjective = false;
  bool up_free_cokernel = false;
};

struct SurjectivityReport {
  std::vector<SurjectivityRecord> records;  // n = 1 .. n_max + 1
  std::optional<int> first_failure;
  bool consistent = true;  // the two equivalent checks never disagreed
  bool all_surjective() const { return !first_failure && consistent; }
};

SurjectivityReport check_down_surjectivity(const Poset& poset, int n_max);

struct RankInequalityRecord {
  int n = 0;
  long lhs = 0;  // delta p_n
  long rhs = 0;  // delta p_{n-1-[r=1]} + 1
  bool holds = false;
};

struct RankInequalityReport {
  int l = 0;
  int n_max = 0;
  std::vector<RankInequalityRecord> records;
  std::optional<int> first_failure;
  bool holds() const { return !first_failure; }
};

RankInequalityReport check_rank_inequality(const Poset& poset, int l, int n_max);

struct AuxiliaryRecord {
  int n = 0;
  std::string lhs_name;
  std::string rhs_name;
  Integer lhs;
  Integer rhs;
  bool holds = false;
};

struct AuxiliaryReport {
  std::string kind;  // "no-part-one partitions", "fibonacci", "product convolution"
  std::vector<AuxiliaryRecord> records;
  bool holds() const;
};

AuxiliaryReport auxiliary_combinatorial_checks(const Poset& poset, int n_max);

/// f_0 = f_1 = 1, extended backwards by f_k = f_{k+2} - f_{k+1}.
Integer fibonacci(int k);
/// Partitions of n with every part at least 2, by direct counting.
Integer partitions_without_ones(int n);

}  // namespace dposet
