#include "dposet/integer.hpp"

#include <utility>

namespace dposet {

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;  // truncating
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

int sign(const Integer& a) { return a.sign(); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer round_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer rem = a - q * b;
  // move q one step toward the nearer multiple when |rem| > |b|/2
  if (2 * abs(rem) > abs(b)) q += (sign(rem) == sign(b)) ? 1 : -1;
  return q;
}

bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return a % d == 0;
}

Integer parse_integer(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw InvalidInput("bad integer literal: " + text);
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9')
      throw InvalidInput("bad integer literal: " + text);
  return Integer(text[0] == '+' ? text.substr(1) : text);
}

std::string to_string(const Integer& a) { return a.str(); }

IntMatrix identity(Eigen::Index n) {
  IntMatrix m = zeros(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix zeros(Eigen::Index rows, Eigen::Index cols) {
  return IntMatrix::Constant(rows, cols, Integer(0));
}

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != c)
      throw InvalidInput("ragged matrix literal");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector from_values(const std::vector<long>& values) {
  IntVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = values[i];
  return v;
}

bool is_zero(const IntMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0) return false;
  return true;
}

bool is_zero(const IntVector& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != 0) return false;
  return true;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("multiply: shape mismatch");
  IntMatrix c = zeros(a.rows(), b.cols());
  Integer tmp;
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (b(k, j) == 0) continue;
        tmp = aik * b(k, j);
        c(i, j) += tmp;
      }
    }
  }
  return c;
}

IntVector multiply(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw InvalidInput("multiply: shape mismatch");
  IntVector out = IntVector::Constant(a.rows(), Integer(0));
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    if (v(k) == 0) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, k) != 0) out(i) += a(i, k) * v(k);
  }
  return out;
}

Integer infinity_norm(const IntMatrix& a) {
  Integer best = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Integer row = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) row += abs(a(i, j));
    if (row > best) best = row;
  }
  return best;
}

}  // namespace dposet
