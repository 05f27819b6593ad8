#include "dposet/poly.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <sstream>

namespace dposet {

IntPoly::IntPoly(long c) : coeffs_{Integer(c)} { trim(); }
IntPoly::IntPoly(const Integer& c) : coeffs_{c} { trim(); }
IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

IntPoly IntPoly::x() { return IntPoly(std::vector<Integer>{0, 1}); }

IntPoly IntPoly::linear_root(const Integer& root) {
  return IntPoly(std::vector<Integer>{-root, 1});
}

IntPoly IntPoly::monomial(const Integer& c, int degree) {
  std::vector<Integer> v(static_cast<std::size_t>(degree) + 1, Integer(0));
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::from_roots(const std::vector<std::pair<Integer, int>>& roots) {
  IntPoly p(1);
  for (const auto& [root, mult] : roots)
    for (int k = 0; k < mult; ++k) p *= linear_root(root);
  return p;
}

IntPoly IntPoly::from_values(const std::vector<long>& coeffs) {
  std::vector<Integer> v(coeffs.begin(), coeffs.end());
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool IntPoly::is_unit() const {
  return coeffs_.size() == 1 && abs(coeffs_[0]) == 1;
}

bool IntPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

Integer IntPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

const Integer& IntPoly::leading() const {
  static const Integer zero = 0;
  return coeffs_.empty() ? zero : coeffs_.back();
}

Integer IntPoly::operator()(const Integer& t) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

IntPoly IntPoly::shifted(const Integer& c) const {
  // Horner in the ring: p(x + c) = (...(a_d (x+c) + a_{d-1})(x+c) + ...)
  IntPoly acc;
  const IntPoly xc(std::vector<Integer>{c, 1});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= xc;
    acc += IntPoly(*it);
  }
  return acc;
}

IntPoly IntPoly::negated_variable() const {
  std::vector<Integer> v = coeffs_;
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return IntPoly(std::move(v));
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return {};
  Integer g = content();
  if (leading() < 0) g = -g;
  std::vector<Integer> v = coeffs_;
  for (auto& c : v) c /= g;
  return IntPoly(std::move(v));
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Integer(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  *this = *this * o;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a) {
  std::vector<Integer> v = a.coeffs_;
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Integer c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bool neg = c < 0;
    Integer mag = abs(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << "x";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
  return os << p.str();
}

PolyDivision divmod_monic(const IntPoly& a, const IntPoly& b) {
  if (!b.is_monic()) throw InvalidInput("divmod_monic: divisor not monic");
  std::vector<Integer> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {IntPoly(), a};
  std::vector<Integer> quo(static_cast<std::size_t>(a.degree() - db) + 1, Integer(0));
  for (int k = a.degree(); k >= db; --k) {
    Integer c = rem[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeff(j);
  }
  return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw InvalidInput("exact_divide: division by zero");
  if (a.is_zero()) return IntPoly();
  const int db = b.degree();
  if (a.degree() < db) return std::nullopt;
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quo(static_cast<std::size_t>(a.degree() - db) + 1, Integer(0));
  const Integer& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Integer& c = rem[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    // the rational quotient is unique, so a non-integral step means b does
    // not divide a in Z[x]
    if (c % lb != 0) return std::nullopt;
    Integer q = c / lb;
    quo[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(j);
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  return IntPoly(std::move(quo));
}

bool divides(const IntPoly& d, const IntPoly& a) {
  if (d.is_zero()) return a.is_zero();
  return exact_divide(a, d).has_value();
}

namespace {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPoly& p) {
  RatPoly r;
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly v(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a[i] * b[j];
  trim(v);
  return v;
}

RatPoly rat_sub(RatPoly a, const RatPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::pair<RatPoly, RatPoly> rat_divmod(const RatPoly& a, const RatPoly& b) {
  RatPoly rem = a;
  const long db = static_cast<long>(b.size()) - 1;
  const long da = static_cast<long>(rem.size()) - 1;
  if (da < db) return {{}, rem};
  RatPoly quo(static_cast<std::size_t>(da - db + 1), Rational(0));
  for (long k = da; k >= db; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] / b.back();
    if (c == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (long j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(quo);
  trim(rem);
  return {quo, rem};
}

RatPoly rat_add(RatPoly a, const RatPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

std::optional<IntPoly> to_int(const RatPoly& p) {
  std::vector<Integer> v;
  for (const auto& c : p) {
    if (denominator(c) != 1) return std::nullopt;
    v.push_back(numerator(c));
  }
  return IntPoly(std::move(v));
}

// s*a + t*b = 1 over Q for coprime a, b, with deg s < deg b.
std::pair<RatPoly, RatPoly> rat_bezout(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0{Rational(1)}, s1{};
  RatPoly t0{}, t1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = rat_divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, rat_sub(s0, rat_mul(q, s1)));
    t0 = std::exchange(t1, rat_sub(t0, rat_mul(q, t1)));
  }
  // r0 is a nonzero constant for coprime inputs
  Rational inv = Rational(1) / r0[0];
  for (auto& c : s0) c *= inv;
  for (auto& c : t0) c *= inv;
  if (b.size() > 1 && s0.size() >= b.size()) {
    // s*a + t*b = (s - q*b)*a + (t + q*a)*b
    auto [q, r] = rat_divmod(s0, b);
    s0 = r;
    t0 = rat_add(t0, rat_mul(q, a));
  }
  return {s0, t0};
}

RatPoly rat_gcd_monic(RatPoly a, RatPoly b) {
  while (!b.empty()) {
    auto [q, r] = rat_divmod(a, b);
    a = std::exchange(b, r);
  }
  if (a.empty()) return a;
  Rational lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

IntPoly clear_to_primitive(const RatPoly& p) {
  Integer lcm_den = 1;
  for (const auto& c : p) {
    Integer d = denominator(c);
    lcm_den = lcm_den / gcd(lcm_den, d) * d;
  }
  std::vector<Integer> v;
  for (const auto& c : p) v.push_back(numerator(c) * (lcm_den / denominator(c)));
  return IntPoly(std::move(v)).primitive();
}

}  // namespace

std::optional<PolyBezout> integral_bezout(const IntPoly& a, const IntPoly& b) {
  auto normalize = [](const IntPoly& p) -> std::pair<IntPoly, long> {
    long s = p.leading() < 0 ? -1 : 1;
    return {s < 0 ? -p : p, s};
  };
  if (a.is_zero() && b.is_zero()) return PolyBezout{IntPoly(), IntPoly(), IntPoly()};
  if (a.is_zero()) {
    auto [g, s] = normalize(b);
    return PolyBezout{g, IntPoly(), IntPoly(s)};
  }
  if (b.is_zero()) {
    auto [g, s] = normalize(a);
    return PolyBezout{g, IntPoly(s), IntPoly()};
  }
  if (a.is_constant() && b.is_constant()) {
    auto e = extended_gcd(a.constant_term(), b.constant_term());
    return PolyBezout{IntPoly(e.g), IntPoly(e.s), IntPoly(e.t)};
  }
  IntPoly g = clear_to_primitive(rat_gcd_monic(to_rat(a), to_rat(b)));
  g *= IntPoly(gcd(a.content(), b.content()));
  auto ap = exact_divide(a, g);
  auto bp = exact_divide(b, g);
  if (!ap || !bp) return std::nullopt;
  if (ap->is_constant() && bp->is_constant()) {
    auto e = extended_gcd(ap->constant_term(), bp->constant_term());
    if (e.g != 1) return std::nullopt;
    return PolyBezout{g, IntPoly(e.s), IntPoly(e.t)};
  }
  for (int attempt = 0; attempt < 2; ++attempt) {
    const IntPoly& first = attempt == 0 ? *ap : *bp;
    const IntPoly& second = attempt == 0 ? *bp : *ap;
    auto [s, t] = rat_bezout(to_rat(first), to_rat(second));
    auto si = to_int(s);
    auto ti = to_int(t);
    if (!si || !ti) continue;
    if (*si * first + *ti * second != IntPoly(1)) continue;
    if (attempt == 0) return PolyBezout{g, *si, *ti};
    return PolyBezout{g, *ti, *si};
  }
  return std::nullopt;
}

std::vector<std::pair<Integer, int>> integer_roots(const IntPoly& p,
                                                  std::optional<Integer> limit) {
  if (p.is_zero()) throw InvalidInput("integer_roots: zero polynomial");
  std::vector<std::pair<Integer, int>> roots;
  IntPoly rest = p;
  // Cauchy bound: |root| <= 1 + max |a_k / a_d|
  Integer bound = 0;
  for (int k = 0; k < rest.degree(); ++k) {
    Integer q = abs(rest.coeff(k)) / abs(rest.leading()) + 1;
    if (q > bound) bound = q;
  }
  bound += 1;
  if (limit && *limit < bound) bound = *limit;
  for (Integer t = -bound; t <= bound; ++t) {
    if (rest.degree() <= 0) break;
    int mult = 0;
    while (rest.degree() > 0 && rest(t) == 0) {
      auto q = exact_divide(rest, IntPoly::linear_root(t));
      if (!q) break;
      rest = *q;
      ++mult;
    }
    if (mult > 0) roots.emplace_back(t, mult);
  }
  return roots;
}

}  // namespace dposet
