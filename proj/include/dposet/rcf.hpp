#pragma once

#include "dposet/int_linalg.hpp"
#include "dposet/poly_matrix.hpp"
#include "dposet/poset.hpp"
#include "dposet/theory.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dposet {

/// Rational canonical form over Z: basis columns are the Krylov chains
/// {v_i, A v_i, ..., A^{d_i - 1} v_i} in block order, and
/// basis^{-1} * op * basis is block companion with blocks companion(a_i).
struct RCFDecomposition {
  IntMatrix op;
  std::vector<IntVector> generators;
  std::vector<IntPoly> annihilators;
  IntMatrix basis;
};

/// p(A) * v by Horner's rule.
IntVector apply_poly(const IntPoly& p, const IntMatrix& a, const IntVector& v);
IntMatrix apply_poly(const IntPoly& p, const IntMatrix& a);
/// Columns v, A v, ..., A^{count-1} v.
IntMatrix krylov(const IntMatrix& a, const IntVector& v, int count);
IntMatrix krylov_basis(const IntMatrix& a, const std::vector<IntVector>& generators,
                       const std::vector<IntPoly>& annihilators);
RCFDecomposition make_decomposition(IntMatrix op, std::vector<IntVector> generators,
                                    std::vector<IntPoly> annihilators);

/// Empty when the decomposition is valid, otherwise the first defect found.
std::optional<std::string> rcf_defect(const RCFDecomposition& dec);
bool verify_rcf(const RCFDecomposition& dec);

/// Invariant factors over Q of a matrix whose spectrum is integral, read off
/// from the Jordan structure. nullopt when the spectrum is not integral.
std::optional<std::vector<IntPoly>> rational_invariant_factors(const IntMatrix& a);

struct BaseCaseOptions {
  int bound = 3;              // sweep coordinates with |c| <= bound
  int random_draws = 10000;   // randomized lattice draws after the sweep
  std::uint64_t seed = 0;
  long node_cap = 200000;     // saturation tests allowed in the sweep
};

struct SearchFailure {
  std::string reason;
  long nodes = 0;
  int draws = 0;
};

using BaseCaseResult = std::variant<RCFDecomposition, SearchFailure>;

BaseCaseResult rcf_base_case(const IntMatrix& a, const BaseCaseOptions& options = {});

enum class ObstructionCode {
  GcdObstruction,
  RankEqualityObstruction,
  BaseSearchFailure,
  NonSurjectiveDownMap,
  Internal
};
const char* to_string(ObstructionCode code);

struct Obstruction {
  ObstructionCode code = ObstructionCode::Internal;
  int n = 0;  // rank whose decomposition could not be produced
  std::string detail;
  /// For the rank-equality case: whether the stuck pivot is +-1 modulo the
  /// first non-unit constant term.
  std::optional<bool> congruence_holds;
};

struct ObstructionError : std::runtime_error {
  explicit ObstructionError(Obstruction o)
      : std::runtime_error(o.detail), obstruction(std::move(o)) {}
  Obstruction obstruction;
};

/// Lifts through D_{n+1}. Eigen-generators (r = 1, a_i = x - 1) are lifted
/// by the up map so the lift is fixed by U D. Throws ObstructionError.
std::vector<IntVector> lift_generators(const Poset& poset, int n, const RCFDecomposition& dec);

struct InductionState {
  int n = 0;
  int r = 1;
  IntMatrix up;    // U_n
  IntMatrix down;  // D_{n+1}
  IntMatrix x;     // U_n D_{n+1}, the action on rank n+1
  std::vector<IntVector> generators;
  std::vector<IntPoly> annihilators;
  std::vector<IntVector> lifts;
  std::vector<bool> eigen;          // lift satisfies x w = w
  std::vector<std::size_t> order;   // non-eigen indices, largest first
  IntMatrix omega_prime;            // Krylov chains of the lifts
  IntMatrix kernel;                 // basis of ker D_{n+1}, one column each
  IntMatrix coords;                 // khat in kernel coordinates, columns follow order
  long delta = 0;                   // delta p_n - delta p_{n-1}
  long epsilon = 0;                 // delta p_{n+1} - delta p_n
  std::vector<std::pair<std::size_t, IntVector>> tweaks;  // kernel vectors added to lifts

  IntVector khat(std::size_t i) const;
};

/// Throws ObstructionError when an asserted property fails.
InductionState build_induction_state(const Poset& poset, int n, const RCFDecomposition& dec,
                                     std::vector<IntVector> lifts);

/// Turns the leading square block of coords into the identity.
std::optional<Obstruction> pivot_fix(InductionState& state);

using StepResult = std::variant<RCFDecomposition, Obstruction>;

/// Decomposition of DU_{n+1} from one of DU_n.
StepResult induction_step(const Poset& poset, int n, const RCFDecomposition& dec);

/// Certificate for xI - op obtained from the block-companion certificate.
PolySNFCertificate rcf_to_snf_certificate(const RCFDecomposition& dec);

struct RankRecord {
  int n = 0;
  std::size_t p_n = 0;
  long delta = 0;
  std::string method;  // base, induction, skipped
  bool rcf_pass = false;
  bool certificate_pass = false;
  bool matches_prediction = false;
  bool annihilators_match = false;
  bool ds_consistent = false;
  std::vector<IntVector> generators;
  std::vector<IntPoly> annihilators;
  std::vector<IntPoly> diagonal;  // DU + xI convention
  std::optional<PolySNFCertificate> certificate;
  std::vector<Obstruction> obstructions;
  double seconds = 0;

  bool pass() const {
    return rcf_pass && certificate_pass && matches_prediction && annihilators_match &&
           ds_consistent && obstructions.empty();
  }
};

struct VerifyOptions {
  int l = 0;
  BaseCaseOptions base;
  bool keep_certificates = true;
  /// Base-case fallback after a failed rank is only tried up to this size.
  std::size_t fallback_max_size = 6;
  std::function<std::optional<RankRecord>(int n)> lookup;
  std::function<void(const RankRecord&)> store;
};

struct ConjectureReport {
  std::string spec;
  int n_max = 0;
  int l = 0;
  std::uint64_t seed = 0;
  std::vector<RankRecord> records;
  bool all_pass() const;
  bool has_obstruction() const;
};

ConjectureReport verify_conjecture(const Poset& poset, int n_max, const VerifyOptions& options);

}  // namespace dposet
