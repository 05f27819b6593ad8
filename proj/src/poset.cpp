#include "dposet/poset.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dposet {

const char* const kSpecGrammar =
    "spec := term ('*' term)*;  term := atom ('^' k)?;  atom := young | yf | z(k)   "
    "e.g. young, yf, young^2, young*yf, z(3)";

int RankedPosetSpec::r() const {
  if (family != Family::Product) return 1;
  int total = 0;
  for (const auto& f : factors) total += f.r();
  return total;
}

RankedPosetSpec young_spec() { return {Family::Young, {}}; }
RankedPosetSpec young_fibonacci_spec() { return {Family::YoungFib, {}}; }

RankedPosetSpec product_spec(const std::vector<RankedPosetSpec>& factors) {
  if (factors.empty()) throw InvalidInput("product of zero posets");
  std::vector<RankedPosetSpec> flat;
  for (const auto& f : factors) {
    if (f.family == Family::Product)
      flat.insert(flat.end(), f.factors.begin(), f.factors.end());
    else
      flat.push_back(f);
  }
  if (flat.size() == 1) return flat.front();
  return {Family::Product, std::move(flat)};
}

RankedPosetSpec z_spec(int r) {
  if (r < 1) throw InvalidInput("z(r) needs r >= 1");
  return product_spec(std::vector<RankedPosetSpec>(static_cast<std::size_t>(r),
                                                   young_fibonacci_spec()));
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        text_.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }

  RankedPosetSpec parse() {
    std::vector<RankedPosetSpec> terms{term()};
    while (accept('*')) terms.push_back(term());
    if (pos_ != text_.size()) fail("unexpected '" + text_.substr(pos_) + "'");
    return product_spec(terms);
  }

 private:
  RankedPosetSpec term() {
    RankedPosetSpec a = atom();
    if (accept('^')) {
      int k = number();
      return product_spec(std::vector<RankedPosetSpec>(static_cast<std::size_t>(k), a));
    }
    return a;
  }

  RankedPosetSpec atom() {
    if (keyword("young")) return young_spec();
    if (keyword("yf")) return young_fibonacci_spec();
    if (keyword("z")) {
      if (!accept('(')) fail("expected '(' after z");
      int k = number();
      if (!accept(')')) fail("expected ')'");
      return z_spec(k);
    }
    if (accept('(')) {
      RankedPosetSpec inner = [&] {
        std::vector<RankedPosetSpec> terms{term()};
        while (accept('*')) terms.push_back(term());
        return product_spec(terms);
      }();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("expected young, yf or z(k)");
  }

  int number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 3) fail("expected a small positive integer");
    int k = std::stoi(text_.substr(start, pos_ - start));
    if (k < 1) fail("exponent must be positive");
    return k;
  }

  bool keyword(const std::string& w) {
    if (text_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("bad poset spec: " + what + "; grammar: " + kSpecGrammar);
  }

  std::string text_;
  std::size_t pos_ = 0;
};

std::string atom_string(const RankedPosetSpec& s) {
  return s.family == Family::Young ? "young" : "yf";
}

}  // namespace

RankedPosetSpec parse_spec(const std::string& text) { return SpecParser(text).parse(); }

std::string to_string(const RankedPosetSpec& spec) {
  if (spec.family != Family::Product) return atom_string(spec);
  std::string out;
  const auto& f = spec.factors;
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    if (!out.empty()) out += "*";
    out += atom_string(f[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Poset::Poset(RankedPosetSpec spec) : spec_(std::move(spec)), r_(spec_.r()) {
  if (spec_.family == Family::Product) {
    if (spec_.factors.empty()) throw InvalidInput("product of zero posets");
    for (const auto& f : spec_.factors) {
      if (f.family == Family::Product) throw InvalidInput("nested product spec; use product_spec");
      factors_.push_back(std::make_unique<Poset>(f));
    }
  }
  Element bottom;
  if (spec_.family == Family::Product) bottom.assign(2 * factors_.size(), 0);
  ranks_.push_back(RankData{0, {bottom}});
  index_.push_back({{bottom, 0}});
}

bool Poset::precedes(const Element& a, const Element& b) const {
  switch (spec_.family) {
    case Family::Young:
      return b < a;
    case Family::YoungFib:
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    case Family::Product:
      return a < b;
  }
  return false;
}

std::vector<Element> Poset::raw_covers(const Element& e) const {
  std::vector<Element> out;
  switch (spec_.family) {
    case Family::Young: {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i == 0 || e[i - 1] > e[i]) {
          Element c = e;
          ++c[i];
          out.push_back(std::move(c));
        }
      }
      Element c = e;
      c.push_back(1);
      out.push_back(std::move(c));
      break;
    }
    case Family::YoungFib: {
      std::size_t lead = 0;
      while (lead < e.size() && e[lead] == 2) ++lead;
      if (lead < e.size()) {
        Element c = e;
        c[lead] = 2;
        out.push_back(std::move(c));
      }
      for (std::size_t p = 0; p <= lead; ++p) {
        Element c = e;
        c.insert(c.begin() + static_cast<std::ptrdiff_t>(p), 1);
        out.push_back(std::move(c));
      }
      break;
    }
    case Family::Product: {
      for (std::size_t f = 0; f < factors_.size(); ++f) {
        const Poset& fp = *factors_[f];
        const int rk = e[2 * f];
        const Element& sub = fp.rank(rk).elements[static_cast<std::size_t>(e[2 * f + 1])];
        for (const auto& up : fp.covers_up(sub)) {
          Element c = e;
          c[2 * f] = rk + 1;
          c[2 * f + 1] = static_cast<int>(fp.index_of(rk + 1, up));
          out.push_back(std::move(c));
        }
      }
      break;
    }
  }
  return out;
}

int Poset::validate_element(const Element& e) const {
  switch (spec_.family) {
    case Family::Young: {
      int sum = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 1 || (i > 0 && e[i] > e[i - 1]))
          throw InvalidInput("not a partition: " + element_string(e));
        sum += e[i];
      }
      return sum;
    }
    case Family::YoungFib: {
      int sum = 0;
      for (int c : e) {
        if (c != 1 && c != 2) throw InvalidInput("not a {1,2}-word");
        sum += c;
      }
      return sum;
    }
    case Family::Product: {
      if (e.size() != 2 * factors_.size()) throw InvalidInput("product element has wrong arity");
      int sum = 0;
      for (std::size_t f = 0; f < factors_.size(); ++f) {
        if (e[2 * f] < 0 || e[2 * f + 1] < 0 ||
            static_cast<std::size_t>(e[2 * f + 1]) >= factors_[f]->rank_size(e[2 * f]))
          throw InvalidInput("product element component out of range");
        sum += e[2 * f];
      }
      return sum;
    }
  }
  return 0;
}

std::vector<Element> Poset::covers_up(const Element& e) const {
  validate_element(e);
  std::vector<Element> out = raw_covers(e);
  std::sort(out.begin(), out.end(), [this](const Element& a, const Element& b) { return precedes(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const RankData& Poset::rank(int n) const {
  if (n < 0) throw InvalidInput("negative rank");
  std::lock_guard<std::mutex> lock(mutex_);
  while (ranks_.size() <= static_cast<std::size_t>(n)) {
    const RankData& prev = ranks_.back();
    std::set<Element> next;
    for (const auto& e : prev.elements)
      for (auto& c : raw_covers(e)) next.insert(std::move(c));
    RankData data{prev.n + 1, {next.begin(), next.end()}};
    std::sort(data.elements.begin(), data.elements.end(),
              [this](const Element& a, const Element& b) { return precedes(a, b); });
    std::map<Element, std::size_t> idx;
    for (std::size_t i = 0; i < data.elements.size(); ++i) idx.emplace(data.elements[i], i);
    ranks_.push_back(std::move(data));
    index_.push_back(std::move(idx));
  }
  return ranks_[static_cast<std::size_t>(n)];
}

std::size_t Poset::rank_size(int n) const { return rank(n).elements.size(); }

long Poset::delta(int n) const {
  if (n < 0) return 0;
  long prev = n == 0 ? 0 : static_cast<long>(rank_size(n - 1));
  return static_cast<long>(rank_size(n)) - prev;
}

std::vector<std::size_t> Poset::rank_sizes(int n_max) const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(rank_size(n));
  return out;
}

std::size_t Poset::index_of(int n, const Element& e) const {
  rank(n);
  std::lock_guard<std::mutex> lock(mutex_);
  const auto& idx = index_[static_cast<std::size_t>(n)];
  auto it = idx.find(e);
  if (it == idx.end()) throw InvalidInput("element not in rank " + std::to_string(n));
  return it->second;
}

std::string Poset::element_string(const Element& e) const {
  if (spec_.family == Family::Product) {
    std::string out = "(";
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      if (f) out += ",";
      const Poset& fp = *factors_[f];
      out += fp.element_string(
          fp.rank(e[2 * f]).elements[static_cast<std::size_t>(e[2 * f + 1])]);
    }
    return out + ")";
  }
  if (e.empty()) return "()";
  const bool wide = std::any_of(e.begin(), e.end(), [](int c) { return c > 9; });
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (wide && i) out += ",";
    out += std::to_string(e[i]);
  }
  return out;
}

IntMatrix Poset::up_matrix(int n) const {
  const auto& lo = rank(n).elements;
  const auto hi_size = rank_size(n + 1);
  IntMatrix u = zeros(static_cast<Eigen::Index>(hi_size), static_cast<Eigen::Index>(lo.size()));
  for (std::size_t j = 0; j < lo.size(); ++j)
    for (const auto& c : covers_up(lo[j]))
      u(static_cast<Eigen::Index>(index_of(n + 1, c)), static_cast<Eigen::Index>(j)) = 1;
  return u;
}

IntMatrix Poset::down_matrix(int n) const {
  if (n < 1) throw InvalidInput("no down map out of rank 0");
  return up_matrix(n - 1).transpose();
}

IntMatrix Poset::du_matrix(int n) const { return multiply(down_matrix(n + 1), up_matrix(n)); }

IntMatrix Poset::ud_matrix(int n) const {
  if (n == 0) return zeros(1, 1);
  return multiply(up_matrix(n - 1), down_matrix(n));
}

AxiomReport Poset::verify_axioms(int n_max) const {
  AxiomReport rep;
  rep.r = r_;
  rep.n_max = n_max;
  for (int n = 0; n <= n_max && rep.pass; ++n) {
    IntMatrix du = du_matrix(n), ud = ud_matrix(n);
    for (Eigen::Index i = 0; i < du.rows() && rep.pass; ++i)
      for (Eigen::Index j = 0; j < du.cols(); ++j) {
        Integer expected = i == j ? Integer(r_) : Integer(0);
        Integer actual = du(i, j) - ud(i, j);
        if (actual != expected) {
          rep.pass = false;
          rep.violation = AxiomViolation{n, i, j, expected, actual};
          break;
        }
      }
  }
  return rep;
}

}  // namespace dposet
