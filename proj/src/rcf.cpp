#include "dposet/rcf.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

namespace dposet {

IntVector apply_poly(const IntPoly& p, const IntMatrix& a, const IntVector& v) {
  IntVector acc = IntVector::Constant(v.size(), Integer(0));
  for (int k = p.degree(); k >= 0; --k) {
    acc = multiply(a, acc);
    const Integer c = p.coeff(k);
    if (c != 0)
      for (Eigen::Index i = 0; i < v.size(); ++i) acc(i) += c * v(i);
  }
  return acc;
}

IntMatrix apply_poly(const IntPoly& p, const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  IntMatrix acc = zeros(n, n);
  for (int k = p.degree(); k >= 0; --k) {
    acc = multiply(a, acc);
    const Integer c = p.coeff(k);
    for (Eigen::Index i = 0; i < n; ++i) acc(i, i) += c;
  }
  return acc;
}

IntMatrix krylov(const IntMatrix& a, const IntVector& v, int count) {
  IntMatrix out(v.size(), count);
  IntVector cur = v;
  for (int j = 0; j < count; ++j) {
    out.col(j) = cur;
    if (j + 1 < count) cur = multiply(a, cur);
  }
  return out;
}

IntMatrix krylov_basis(const IntMatrix& a, const std::vector<IntVector>& generators,
                       const std::vector<IntPoly>& annihilators) {
  if (generators.size() != annihilators.size())
    throw InvalidInput("krylov_basis: generator and annihilator counts differ");
  Eigen::Index cols = 0;
  for (const auto& p : annihilators) cols += std::max(p.degree(), 0);
  IntMatrix out(a.rows(), cols);
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const int d = annihilators[i].degree();
    if (d < 1) continue;
    out.middleCols(off, d) = krylov(a, generators[i], d);
    off += d;
  }
  return out;
}

RCFDecomposition make_decomposition(IntMatrix op, std::vector<IntVector> generators,
                                    std::vector<IntPoly> annihilators) {
  RCFDecomposition dec{std::move(op), std::move(generators), std::move(annihilators), {}};
  dec.basis = krylov_basis(dec.op, dec.generators, dec.annihilators);
  return dec;
}

std::optional<std::string> rcf_defect(const RCFDecomposition& dec) {
  const Eigen::Index n = dec.op.rows();
  if (dec.op.cols() != n) return "operator not square";
  if (dec.generators.size() != dec.annihilators.size())
    return "generator and annihilator counts differ";
  int total = 0;
  for (std::size_t i = 0; i < dec.annihilators.size(); ++i) {
    const auto& a = dec.annihilators[i];
    if (!a.is_monic() || a.degree() < 1) return "annihilator not monic and non-constant";
    if (i > 0 && !divides(dec.annihilators[i - 1], a)) return "divisibility chain violated";
    if (dec.generators[i].size() != n) return "generator has wrong length";
    total += a.degree();
  }
  if (total != n) return "annihilator degrees do not sum to the dimension";
  if (dec.basis.rows() != n || dec.basis.cols() != n) return "basis has wrong shape";
  if (!equal(dec.basis, krylov_basis(dec.op, dec.generators, dec.annihilators)))
    return "basis is not the Krylov basis of the generators";
  if (abs(det(dec.basis)) != 1) return "basis is not unimodular";
  for (std::size_t i = 0; i < dec.generators.size(); ++i)
    if (!is_zero(apply_poly(dec.annihilators[i], dec.op, dec.generators[i])))
      return "annihilator does not kill its generator";
  if (!equal(multiply(dec.op, dec.basis), multiply(dec.basis, block_companion(dec.annihilators))))
    return "conjugate is not block companion";
  IntPoly prod(1);
  for (const auto& a : dec.annihilators) prod *= a;
  if (prod != char_poly(dec.op)) return "annihilators do not multiply to the characteristic polynomial";
  return std::nullopt;
}

bool verify_rcf(const RCFDecomposition& dec) { return !rcf_defect(dec); }

std::optional<std::vector<IntPoly>> rational_invariant_factors(const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InvalidInput("rational_invariant_factors: matrix not square");
  if (n == 0) return std::vector<IntPoly>{};
  const IntPoly cp = char_poly(a);
  const auto roots = integer_roots(cp);
  if (IntPoly::from_roots(roots) != cp) return std::nullopt;

  // Jordan block sizes per eigenvalue, largest first
  std::vector<std::pair<Integer, std::vector<int>>> blocks;
  std::size_t m = 0;
  for (const auto& [lambda, mult] : roots) {
    IntMatrix b = a;
    for (Eigen::Index i = 0; i < n; ++i) b(i, i) -= lambda;
    std::vector<Eigen::Index> ranks{n};
    IntMatrix power = identity(n);
    while (ranks.back() > n - mult) {
      power = multiply(b, power);
      ranks.push_back(rank(power));
    }
    ranks.push_back(ranks.back());
    std::vector<int> sizes;
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k) {
      // blocks of size exactly k
      const Eigen::Index at_least_k = ranks[k - 1] - ranks[k];
      const Eigen::Index at_least_k1 = ranks[k] - ranks[k + 1];
      for (Eigen::Index c = 0; c < at_least_k - at_least_k1; ++c)
        sizes.push_back(static_cast<int>(k));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    m = std::max(m, sizes.size());
    blocks.emplace_back(lambda, std::move(sizes));
  }
  std::vector<IntPoly> factors(m, IntPoly(1));
  for (const auto& [lambda, sizes] : blocks)
    for (std::size_t t = 0; t < sizes.size(); ++t)
      factors[m - 1 - t] *= IntPoly::from_roots({{lambda, sizes[t]}});
  return factors;
}

namespace {

std::vector<IntVector> sweep_candidates(Eigen::Index g, int bound, std::size_t limit) {
  std::vector<IntVector> out;
  std::vector<int> cur(static_cast<std::size_t>(g), 0);
  std::function<void(Eigen::Index, int, bool)> fill = [&](Eigen::Index k, int rem, bool seen) {
    if (k == g) {
      if (rem == 0 && seen) {
        IntVector v(g);
        for (Eigen::Index i = 0; i < g; ++i) v(i) = cur[static_cast<std::size_t>(i)];
        out.push_back(std::move(v));
      }
      return;
    }
    if (rem > bound * static_cast<int>(g - k)) return;
    for (int v = bound; v >= -bound; --v) {
      if (std::abs(v) > rem || (!seen && v < 0)) continue;
      cur[static_cast<std::size_t>(k)] = v;
      fill(k + 1, rem - std::abs(v), seen || v != 0);
    }
  };
  for (int s = 1; s <= bound * static_cast<int>(g) && out.size() < limit; ++s) fill(0, s, false);
  return out;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  if (a.cols()) out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

class BaseSearch {
 public:
  BaseSearch(const IntMatrix& a, std::vector<IntPoly> anns, const BaseCaseOptions& opt)
      : a_(a), anns_(std::move(anns)), opt_(opt), chosen_(anns_.size()) {
    std::map<std::vector<Integer>, std::size_t> seen;
    for (const auto& p : anns_) {
      auto [it, fresh] = seen.emplace(p.coeffs(), lattices_.size());
      if (fresh) {
        lattices_.push_back(kernel_basis(apply_poly(p, a_)));
        candidates_.push_back(sweep_candidates(lattices_.back().cols(), opt_.bound, 20000));
      }
      which_.push_back(it->second);
    }
  }

  std::optional<std::vector<IntVector>> sweep() {
    if (dfs(static_cast<long>(anns_.size()) - 1, IntMatrix(a_.rows(), 0))) return chosen_;
    return std::nullopt;
  }

  std::optional<std::vector<IntVector>> random() {
    std::mt19937_64 rng(opt_.seed);
    for (draws_ = 0; draws_ < opt_.random_draws;) {
      ++draws_;
      const int b = opt_.bound + draws_ / 2000;
      std::uniform_int_distribution<int> dist(-b, b);
      std::vector<IntVector> gens;
      for (std::size_t i = 0; i < anns_.size(); ++i) {
        const IntMatrix& g = lattices_[which_[i]];
        IntVector c(g.cols());
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = dist(rng);
        gens.push_back(multiply(g, c));
      }
      if (is_basis(krylov_basis(a_, gens, anns_))) return gens;
    }
    return std::nullopt;
  }

  long nodes() const { return nodes_; }
  int draws() const { return draws_; }

 private:
  bool dfs(long pos, const IntMatrix& cols) {
    if (pos < 0) return true;
    const auto i = static_cast<std::size_t>(pos);
    const IntMatrix& g = lattices_[which_[i]];
    for (const auto& c : candidates_[which_[i]]) {
      if (++nodes_ > opt_.node_cap) return false;
      IntVector v = multiply(g, c);
      IntMatrix next = hcat(cols, krylov(a_, v, anns_[i].degree()));
      if (!is_saturated(next)) continue;
      chosen_[i] = std::move(v);
      if (dfs(pos - 1, next)) return true;
      if (nodes_ > opt_.node_cap) return false;
    }
    return false;
  }

  const IntMatrix& a_;
  std::vector<IntPoly> anns_;
  BaseCaseOptions opt_;
  std::vector<IntMatrix> lattices_;
  std::vector<std::vector<IntVector>> candidates_;
  std::vector<std::size_t> which_;
  std::vector<IntVector> chosen_;
  long nodes_ = 0;
  int draws_ = 0;
};

}  // namespace

namespace {

Integer frobenius2(const IntMatrix& m) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return s;
}

// b <- E b E^{-1} with E = I + k e_i e_j^T; s tracks the change of basis so
// that a * s == s * b throughout.
void elementary_conjugate(IntMatrix& b, IntMatrix& s, Eigen::Index i, Eigen::Index j,
                          const Integer& k) {
  b.row(i) += k * b.row(j);
  b.col(j) -= k * b.col(i);
  s.col(j) -= k * s.col(i);
}

// Greedy reduction of the entries of a by unimodular similarity. Returns
// (b, s) with a * s == s * b and s unimodular.
std::pair<IntMatrix, IntMatrix> reduce_similarity(const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  IntMatrix b = a, s = IntMatrix::Identity(n, n);
  Integer norm = frobenius2(b);
  for (bool improved = true; improved;) {
    improved = false;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          Integer k = sign;
          for (;;) {
            IntMatrix tb = b, ts = s;
            elementary_conjugate(tb, ts, i, j, k);
            const Integer tn = frobenius2(tb);
            if (tn >= norm) break;
            b = std::move(tb);
            s = std::move(ts);
            norm = tn;
            improved = true;
            k *= 2;
          }
        }
      }
  }
  return {std::move(b), std::move(s)};
}

}  // namespace

BaseCaseResult rcf_base_case(const IntMatrix& a, const BaseCaseOptions& options) {
  if (a.rows() != a.cols()) throw InvalidInput("rcf_base_case: matrix not square");
  auto factors = rational_invariant_factors(a);
  if (!factors) return SearchFailure{"spectrum is not integral", 0, 0};
  // search on a similar matrix with small entries, where short generators
  // are far more likely to exist
  const auto [b, basis_change] = reduce_similarity(a);
  BaseSearch search(b, *factors, options);
  auto gens = search.sweep();
  if (!gens) gens = search.random();
  if (!gens)
    return SearchFailure{"no unimodular Krylov basis found within the search budget",
                         search.nodes(), search.draws()};
  for (auto& g : *gens) g = basis_change * g;
  RCFDecomposition dec = make_decomposition(a, std::move(*gens), std::move(*factors));
  if (auto defect = rcf_defect(dec))
    throw InternalError("rcf_base_case produced an invalid decomposition: " + *defect);
  return dec;
}

const char* to_string(ObstructionCode code) {
  switch (code) {
    case ObstructionCode::GcdObstruction:
      return "GCD_OBSTRUCTION";
    case ObstructionCode::RankEqualityObstruction:
      return "RANK_EQUALITY_OBSTRUCTION";
    case ObstructionCode::BaseSearchFailure:
      return "BASE_SEARCH_FAILURE";
    case ObstructionCode::NonSurjectiveDownMap:
      return "NON_SURJECTIVE_DOWN_MAP";
    case ObstructionCode::Internal:
      return "INTERNAL";
  }
  return "INTERNAL";
}

namespace {

[[noreturn]] void obstruct(ObstructionCode code, int n, std::string detail) {
  throw ObstructionError(Obstruction{code, n, std::move(detail), std::nullopt});
}

bool is_eigen_factor(int r, const IntPoly& a) { return r == 1 && a == IntPoly::linear_root(1); }

}  // namespace

std::vector<IntVector> lift_generators(const Poset& poset, int n, const RCFDecomposition& dec) {
  const IntMatrix down = poset.down_matrix(n + 1);
  const IntMatrix up = poset.up_matrix(n);
  PreimageSolver solver(down);
  const IntMatrix kernel = lll_reduce(kernel_basis(down));
  std::vector<IntVector> lifts;
  for (std::size_t i = 0; i < dec.generators.size(); ++i) {
    const IntVector& v = dec.generators[i];
    if (is_eigen_factor(poset.r(), dec.annihilators[i])) {
      IntVector w = multiply(up, v);
      if (!equal(multiply(down, w), v))
        obstruct(ObstructionCode::Internal, n + 1, "eigen-lift is not a preimage");
      lifts.push_back(std::move(w));
      continue;
    }
    auto w = solver.solve(v);
    if (!w)
      obstruct(ObstructionCode::NonSurjectiveDownMap, n + 1,
               "generator " + std::to_string(i + 1) + " has no integral preimage under D_" +
                   std::to_string(n + 1));
    lifts.push_back(kernel.cols() ? size_reduce(kernel, *w) : *w);
  }
  return lifts;
}

IntVector InductionState::khat(std::size_t i) const {
  return apply_poly(annihilators[i], x, lifts[i]);
}

namespace {

// row_j(H) += f * row_i(H), with the kernel basis kept consistent
void coords_add_row(InductionState& s, Eigen::Index j, Eigen::Index i, const Integer& f) {
  if (f == 0) return;
  for (Eigen::Index c = 0; c < s.coords.cols(); ++c) s.coords(j, c) += f * s.coords(i, c);
  for (Eigen::Index r = 0; r < s.kernel.rows(); ++r) s.kernel(r, i) -= f * s.kernel(r, j);
}

void coords_swap_rows(InductionState& s, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  s.coords.row(i).swap(s.coords.row(j));
  s.kernel.col(i).swap(s.kernel.col(j));
}

void coords_negate_row(InductionState& s, Eigen::Index i) {
  for (Eigen::Index c = 0; c < s.coords.cols(); ++c) s.coords(i, c) = -s.coords(i, c);
  for (Eigen::Index r = 0; r < s.kernel.rows(); ++r) s.kernel(r, i) = -s.kernel(r, i);
}

void clear_above(InductionState& s, Eigen::Index i) {
  for (Eigen::Index j = 0; j < i; ++j) coords_add_row(s, j, i, -s.coords(j, i));
}

// Row-echelon form of coords by Euclidean steps; entries stay small, so the
// kernel basis does too.
bool triangularize(InductionState& s) {
  IntMatrix& h = s.coords;
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    for (;;) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = c; i < h.rows(); ++i)
        if (h(i, c) != 0 && (piv < 0 || abs(h(i, c)) < abs(h(piv, c)))) piv = i;
      if (piv < 0) return false;
      coords_swap_rows(s, c, piv);
      bool clean = true;
      for (Eigen::Index i = c + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        coords_add_row(s, i, c, -round_div(h(i, c), h(c, c)));
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(c, c) < 0) coords_negate_row(s, c);
    for (Eigen::Index j = 0; j < c; ++j)
      coords_add_row(s, j, c, -floor_div(h(j, c), h(c, c)));
  }
  return true;
}

}  // namespace

InductionState build_induction_state(const Poset& poset, int n, const RCFDecomposition& dec,
                                     std::vector<IntVector> lifts) {
  InductionState s;
  s.n = n;
  s.r = poset.r();
  s.up = poset.up_matrix(n);
  s.down = poset.down_matrix(n + 1);
  s.x = multiply(s.up, s.down);
  s.generators = dec.generators;
  s.annihilators = dec.annihilators;
  s.lifts = std::move(lifts);
  s.delta = poset.delta(n) - poset.delta(n - 1);
  s.epsilon = poset.delta(n + 1) - poset.delta(n);
  const int target = n + 1;

  for (std::size_t i = 0; i < s.lifts.size(); ++i)
    if (!equal(multiply(s.down, s.lifts[i]), s.generators[i]))
      obstruct(ObstructionCode::Internal, target, "lift is not a preimage");

  s.kernel = lll_reduce(kernel_basis(s.down));
  if (rank(hcat(s.kernel, s.up)) != s.kernel.cols() + s.up.cols())
    obstruct(ObstructionCode::Internal, target, "ker D meets im U nontrivially");

  s.omega_prime = krylov_basis(s.x, s.lifts, s.annihilators);
  if (!is_basis(hcat(s.omega_prime, s.kernel)))
    obstruct(ObstructionCode::Internal, target, "lift chains and kernel do not form a basis");

  for (std::size_t i = 0; i < s.lifts.size(); ++i) {
    s.eigen.push_back(is_eigen_factor(s.r, s.annihilators[i]) &&
                      equal(multiply(s.x, s.lifts[i]), s.lifts[i]));
  }
  for (std::size_t i = s.lifts.size(); i-- > 0;)
    if (!s.eigen[i]) s.order.push_back(i);

  PreimageSolver in_kernel(s.kernel);
  IntMatrix h(s.kernel.cols(), static_cast<Eigen::Index>(s.order.size()));
  for (std::size_t j = 0; j < s.order.size(); ++j) {
    IntVector k = s.khat(s.order[j]);
    if (!is_zero(multiply(s.down, k)))
      obstruct(ObstructionCode::Internal, target, "khat is not in ker D");
    auto c = in_kernel.solve(k);
    if (!c) obstruct(ObstructionCode::Internal, target, "khat has no kernel coordinates");
    h.col(static_cast<Eigen::Index>(j)) = *c;
  }
  if (h.cols() > h.rows())
    obstruct(ObstructionCode::RankEqualityObstruction, target,
             "more non-eigen generators than kernel dimension");

  // reversed-order Hermite form; the kernel basis moves with the row operations
  s.coords = std::move(h);
  if (!triangularize(s))
    obstruct(ObstructionCode::Internal, target, "khat vectors are linearly dependent");
  return s;
}

std::optional<Obstruction> pivot_fix(InductionState& s) {
  const int target = s.n + 1;
  const auto cols = s.coords.cols();
  for (Eigen::Index i = 0; i < cols; ++i) {
    const Integer b = s.coords(i, i);
    if (abs(b) == 1) {
      if (b < 0) coords_negate_row(s, i);
      clear_above(s, i);
      continue;
    }
    const std::size_t idx = s.order[static_cast<std::size_t>(i)];
    const Integer c = s.annihilators[idx].constant_term();
    if (gcd(b, c) != 1) {
      return Obstruction{ObstructionCode::GcdObstruction, target,
                         "pivot " + to_string(b) + " shares a factor with a(0) = " + to_string(c) +
                             " for generator " + std::to_string(idx + 1),
                         std::nullopt};
    }
    if (i + 1 >= s.coords.rows()) {
      // no spare kernel row: report whether the congruence escape would apply
      std::optional<bool> congruence;
      for (const auto& a : s.annihilators) {
        const Integer a0 = abs(a.constant_term());
        if (a0 != 1) {
          Integer res = b % a0;
          if (res < 0) res += a0;
          congruence = res == 1 || res == a0 - 1;
          break;
        }
      }
      return Obstruction{ObstructionCode::RankEqualityObstruction, target,
                         "no spare kernel row to fix pivot " + to_string(b) + " (delta p_" +
                             std::to_string(target) + " = delta p_" + std::to_string(s.n) + ")",
                         congruence};
    }
    // w_idx += k_{i+1} adds c * k_{i+1} to khat_idx
    IntVector k = s.kernel.col(i + 1);
    for (Eigen::Index r = 0; r < k.size(); ++r) s.lifts[idx](r) += k(r);
    s.tweaks.emplace_back(idx, k);
    s.coords(i + 1, i) += c;
    // unimodular [[u, v], [-c, b]] on rows i, i+1 with u b + v c = 1
    auto e = extended_gcd(b, c);
    if (e.g != 1) {
      e.s = -e.s;
      e.t = -e.t;
    }
    for (Eigen::Index col = 0; col < s.coords.cols(); ++col) {
      Integer top = s.coords(i, col), bottom = s.coords(i + 1, col);
      s.coords(i, col) = e.s * top + e.t * bottom;
      s.coords(i + 1, col) = -c * top + b * bottom;
    }
    // kernel times the inverse [[b, -v], [c, u]]
    for (Eigen::Index r = 0; r < s.kernel.rows(); ++r) {
      Integer ki = s.kernel(r, i), kj = s.kernel(r, i + 1);
      s.kernel(r, i) = b * ki + c * kj;
      s.kernel(r, i + 1) = -e.t * ki + e.s * kj;
    }
    if (s.coords(i, i) != 1 || s.coords(i + 1, i) != 0)
      return Obstruction{ObstructionCode::Internal, target, "Euclidean pivot step failed",
                         std::nullopt};
    clear_above(s, i);
  }
  return std::nullopt;
}

namespace {

struct Block {
  IntVector generator;
  IntPoly annihilator;  // for the action of U D
};

RCFDecomposition finish_step(const Poset& poset, InductionState& s) {
  const int target = s.n + 1;
  const auto active = static_cast<Eigen::Index>(s.order.size());
  for (Eigen::Index j = 0; j < active; ++j) {
    if (!equal(IntVector(s.kernel.col(j)), s.khat(s.order[static_cast<std::size_t>(j)])))
      obstruct(ObstructionCode::Internal, target, "kernel basis does not start with khat");
    if (s.coords(j, j) != 1)
      obstruct(ObstructionCode::Internal, target, "pivot block is not the identity");
  }
  // any complement of the khat prefix will do; take a reduced one
  s.kernel = lll_reduce(s.kernel, active);
  const IntPoly x = IntPoly::x();
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < s.lifts.size(); ++i) {
    if (s.eigen[i]) continue;
    const IntPoly ann = x * s.annihilators[i];
    const int d = s.annihilators[i].degree();
    // (x a_i) contains Ann(W_i), contained in (a_i)
    if (!is_zero(apply_poly(ann, s.x, s.lifts[i])) ||
        rank(krylov(s.x, s.lifts[i], d + 1)) != d + 1)
      obstruct(ObstructionCode::Internal, target, "annihilator sandwich fails");
    blocks.push_back({s.lifts[i], ann});
  }
  std::vector<IntVector> leftover;
  for (Eigen::Index j = active; j < s.kernel.cols(); ++j) leftover.emplace_back(s.kernel.col(j));
  std::vector<std::size_t> eigen;
  for (std::size_t i = 0; i < s.lifts.size(); ++i)
    if (s.eigen[i]) eigen.push_back(i);
  const std::size_t pairs = std::min(eigen.size(), leftover.size());
  for (std::size_t t = 0; t < pairs; ++t) {
    IntVector g = s.lifts[eigen[eigen.size() - 1 - t]] + leftover[t];
    blocks.push_back({std::move(g), x * IntPoly::linear_root(1)});
  }
  for (std::size_t t = pairs; t < leftover.size(); ++t) blocks.push_back({leftover[t], x});
  for (std::size_t t = pairs; t < eigen.size(); ++t)
    blocks.push_back({s.lifts[eigen[eigen.size() - 1 - t]], IntPoly::linear_root(1)});

  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    return a.annihilator.degree() < b.annihilator.degree();
  });
  std::vector<IntVector> gens;
  std::vector<IntPoly> anns;
  const Integer r(poset.r());
  for (auto& b : blocks) {
    gens.push_back(std::move(b.generator));
    // D U = U D + r on rank n+1
    anns.push_back(b.annihilator.shifted(-r));
  }
  for (std::size_t i = 1; i < anns.size(); ++i)
    if (!divides(anns[i - 1], anns[i]))
      obstruct(ObstructionCode::Internal, target, "new annihilators break the divisibility chain");
  RCFDecomposition dec = make_decomposition(poset.du_matrix(target), std::move(gens), std::move(anns));
  if (auto defect = rcf_defect(dec))
    obstruct(ObstructionCode::Internal, target, "constructed decomposition rejected: " + *defect);
  return dec;
}

}  // namespace

StepResult induction_step(const Poset& poset, int n, const RCFDecomposition& dec) {
  try {
    InductionState state = build_induction_state(poset, n, dec, lift_generators(poset, n, dec));
    if (auto obstruction = pivot_fix(state)) return *obstruction;
    return finish_step(poset, state);
  } catch (const ObstructionError& e) {
    return e.obstruction;
  }
}

PolySNFCertificate rcf_to_snf_certificate(const RCFDecomposition& dec) {
  PolySNFCertificate c = block_companion_snf(dec.annihilators);
  PolySNFCertificate out;
  out.P = multiply(c.P, inverse_unimodular(dec.basis));
  out.Q = multiply(dec.basis, c.Q);
  out.D = std::move(c.D);
  out.diag = std::move(c.diag);
  return out;
}

bool ConjectureReport::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const RankRecord& r) { return r.pass(); });
}

bool ConjectureReport::has_obstruction() const {
  return std::any_of(records.begin(), records.end(),
                     [](const RankRecord& r) { return !r.obstructions.empty(); });
}

namespace {

std::vector<Integer> expected_ds(std::size_t p, const std::vector<IntPoly>& anns) {
  std::vector<Integer> out(p - anns.size(), Integer(1));
  for (const auto& a : anns) out.push_back(abs(a.constant_term()));
  return out;
}

PolyMatrix plus_matrix(const IntMatrix& a) {
  PolyMatrix m = to_poly_matrix(a);
  for (Eigen::Index i = 0; i < a.rows(); ++i) m(i, i) += IntPoly::x();
  return m;
}

void evaluate_record(const Poset& poset, const RCFDecomposition& dec, RankRecord& rec,
                     bool keep_certificate) {
  rec.generators = dec.generators;
  rec.annihilators = dec.annihilators;
  rec.rcf_pass = verify_rcf(dec);
  rec.annihilators_match = dec.annihilators == predicted_invariant_factors(poset, rec.n).factors;
  rec.ds_consistent = ds(dec.op) == expected_ds(rec.p_n, dec.annihilators);

  PolySNFCertificate minus = rcf_to_snf_certificate(dec);
  PolySNFCertificate plus = to_plus_convention(minus);
  rec.certificate_pass = verify_poly_snf(plus, plus_matrix(dec.op));
  rec.diagonal = plus.diag;
  rec.matches_prediction =
      minus.diag == predicted_snf_diagonal(poset, rec.n, Convention::XMinusA) &&
      plus.diag == predicted_snf_diagonal(poset, rec.n, Convention::APlusX);
  if (keep_certificate) rec.certificate = std::move(plus);
}

}  // namespace

ConjectureReport verify_conjecture(const Poset& poset, int n_max, const VerifyOptions& options) {
  if (n_max < 0) throw InvalidInput("n_max must be non-negative");
  if (options.l < 0) throw InvalidInput("l must be non-negative");
  ConjectureReport report;
  report.spec = to_string(poset.spec());
  report.n_max = n_max;
  report.l = options.l;
  report.seed = options.base.seed;

  std::optional<RCFDecomposition> prev;
  for (int n = 0; n <= n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    if (options.lookup) {
      if (auto cached = options.lookup(n)) {
        RCFDecomposition dec =
            make_decomposition(poset.du_matrix(n), cached->generators, cached->annihilators);
        if (cached->rcf_pass && verify_rcf(dec)) {
          prev = std::move(dec);
          report.records.push_back(std::move(*cached));
          continue;
        }
        if (!cached->rcf_pass && cached->generators.empty()) {
          prev.reset();
          report.records.push_back(std::move(*cached));
          continue;
        }
      }
    }
    RankRecord rec;
    rec.n = n;
    rec.p_n = poset.rank_size(n);
    rec.delta = poset.delta(n);
    std::optional<RCFDecomposition> dec;

    auto base = [&] {
      rec.method = "base";
      BaseCaseResult res = rcf_base_case(poset.du_matrix(n), options.base);
      if (auto* d = std::get_if<RCFDecomposition>(&res)) {
        dec = std::move(*d);
      } else {
        const auto& f = std::get<SearchFailure>(res);
        rec.obstructions.push_back({ObstructionCode::BaseSearchFailure, n,
                                    f.reason + " (" + std::to_string(f.nodes) + " nodes, " +
                                        std::to_string(f.draws) + " draws)",
                                    std::nullopt});
      }
    };

    if (n <= options.l) {
      base();
    } else if (prev) {
      rec.method = "induction";
      StepResult step = induction_step(poset, n - 1, *prev);
      if (auto* d = std::get_if<RCFDecomposition>(&step))
        dec = std::move(*d);
      else
        rec.obstructions.push_back(std::get<Obstruction>(step));
    } else if (rec.p_n <= options.fallback_max_size) {
      base();
    } else {
      rec.method = "skipped";
      rec.obstructions.push_back({ObstructionCode::Internal, n,
                                  "previous rank has no decomposition to induct from",
                                  std::nullopt});
    }

    if (dec) evaluate_record(poset, *dec, rec, options.keep_certificates);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    prev = std::move(dec);
    if (options.store) options.store(rec);
    report.records.push_back(std::move(rec));
  }
  return report;
}

}  // namespace dposet
