#pragma once

#include "dposet/integer.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace dposet {

enum class Family { Young, YoungFib, Product };

/// Family descriptor. Products are kept flat: no factor is itself a product.
struct RankedPosetSpec {
  Family family = Family::Young;
  std::vector<RankedPosetSpec> factors;

  /// Differential degree.
  int r() const;
  friend bool operator==(const RankedPosetSpec&, const RankedPosetSpec&) = default;
};

RankedPosetSpec young_spec();
RankedPosetSpec young_fibonacci_spec();
/// Flattens nested products; a single factor collapses to itself.
RankedPosetSpec product_spec(const std::vector<RankedPosetSpec>& factors);
/// z(r): the r-fold product of the Young-Fibonacci lattice.
RankedPosetSpec z_spec(int r);

/// Grammar: term ('*' term)*, term := atom ('^' k)?, atom := young | yf | z(k).
RankedPosetSpec parse_spec(const std::string& text);
/// Canonical string, e.g. "young^2*yf".
std::string to_string(const RankedPosetSpec& spec);
extern const char* const kSpecGrammar;

/// Young: parts, weakly decreasing. YoungFib: letters 1/2.
/// Product: (rank, index) per factor, flattened.
using Element = std::vector<int>;

struct RankData {
  int n = 0;
  std::vector<Element> elements;
};

struct AxiomViolation {
  int n = 0;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  Integer expected;
  Integer actual;
};

struct AxiomReport {
  int r = 0;
  int n_max = 0;
  bool pass = true;
  std::optional<AxiomViolation> violation;
};

class Poset {
 public:
  explicit Poset(RankedPosetSpec spec);
  Poset(const Poset&) = delete;
  Poset& operator=(const Poset&) = delete;

  const RankedPosetSpec& spec() const { return spec_; }
  int r() const { return r_; }

  /// Canonical order; memoized, safe to call concurrently.
  const RankData& rank(int n) const;
  std::size_t rank_size(int n) const;
  /// p_n - p_{n-1} with p_{-1} = 0.
  long delta(int n) const;
  std::vector<std::size_t> rank_sizes(int n_max) const;

  /// Rank of a valid element; throws InvalidInput otherwise.
  int validate_element(const Element& e) const;
  std::vector<Element> covers_up(const Element& e) const;
  std::size_t index_of(int n, const Element& e) const;
  std::string element_string(const Element& e) const;

  IntMatrix up_matrix(int n) const;
  IntMatrix down_matrix(int n) const;
  IntMatrix du_matrix(int n) const;
  IntMatrix ud_matrix(int n) const;

  AxiomReport verify_axioms(int n_max) const;

 private:
  std::vector<Element> raw_covers(const Element& e) const;
  bool precedes(const Element& a, const Element& b) const;

  RankedPosetSpec spec_;
  int r_ = 1;
  std::vector<std::unique_ptr<Poset>> factors_;

  mutable std::mutex mutex_;
  mutable std::deque<RankData> ranks_;
  mutable std::deque<std::map<Element, std::size_t>> index_;
};

}  // namespace dposet
