#include "dposet/poly_matrix.hpp"

#include <algorithm>

namespace dposet {

CompanionBlock companion(const IntPoly& a) {
  if (!a.is_monic() || a.degree() < 1)
    throw InvalidInput("companion: polynomial must be monic and non-constant");
  const int d = a.degree();
  IntMatrix c = zeros(d, d);
  for (int i = 0; i + 1 < d; ++i) c(i + 1, i) = 1;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -a.coeff(i);
  return {a, std::move(c)};
}

IntMatrix block_companion(const std::vector<IntPoly>& polys) {
  Eigen::Index n = 0;
  for (const auto& p : polys) n += p.degree();
  IntMatrix out = zeros(n, n);
  Eigen::Index off = 0;
  for (const auto& p : polys) {
    CompanionBlock b = companion(p);
    out.block(off, off, b.matrix.rows(), b.matrix.cols()) = b.matrix;
    off += b.matrix.rows();
  }
  return out;
}

PolyMatrix x_plus_shift_matrix(const IntMatrix& a, const Integer& c, int sign) {
  if (a.rows() != a.cols()) throw InvalidInput("x_plus_shift_matrix: matrix not square");
  if (sign != 1 && sign != -1) throw InvalidInput("x_plus_shift_matrix: sign must be +-1");
  PolyMatrix m(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      m(i, j) = IntPoly(Integer(-a(i, j)));
      if (i == j) m(i, j) += IntPoly(std::vector<Integer>{c, Integer(sign)});
    }
  return m;
}

PolyMatrix to_poly_matrix(const IntMatrix& a) {
  PolyMatrix m(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) = IntPoly(a(i, j));
  return m;
}

IntMatrix evaluate(const PolyMatrix& m, const Integer& t) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j)(t);
  return out;
}

PolyMatrix shift_variable(const PolyMatrix& m, const Integer& c) {
  PolyMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).shifted(c);
  return out;
}

PolyMatrix negate_variable(const PolyMatrix& m) {
  PolyMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).negated_variable();
  return out;
}

int max_degree(const PolyMatrix& m) {
  int d = -1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  return d;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("multiply: shape mismatch");
  PolyMatrix c = PolyMatrix::Constant(a.rows(), b.cols(), IntPoly());
  for (Eigen::Index k = 0; k < a.cols(); ++k)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

PolyMatrix multiply(const PolyMatrix& a, const IntMatrix& b) {
  return multiply(a, to_poly_matrix(b));
}

PolyMatrix multiply(const IntMatrix& a, const PolyMatrix& b) {
  return multiply(to_poly_matrix(a), b);
}

IntPoly poly_det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("poly_det: matrix not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return IntPoly(1);
  bool pencil = max_degree(m) <= 1;
  Integer s = 0;
  IntMatrix constant(n, n);
  for (Eigen::Index i = 0; i < n && pencil; ++i)
    for (Eigen::Index j = 0; j < n && pencil; ++j) {
      Integer lin = m(i, j).coeff(1);
      constant(i, j) = m(i, j).coeff(0);
      if (i != j) {
        pencil = lin == 0;
      } else {
        if (i == 0) s = lin;
        pencil = (lin == s) && (abs(s) == 1);
      }
    }
  if (pencil) {
    // s*x*I + C = s * (xI - (-s*C))
    IntMatrix shifted = constant;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) shifted(i, j) = -s * constant(i, j);
    IntPoly d = char_poly(shifted);
    if (s < 0 && n % 2 == 1) d = -d;
    return d;
  }
  return bareiss_det<IntPoly>(m);
}

int normalization_sign(const IntPoly& p) { return p.leading() < 0 ? -1 : 1; }

namespace {

class PolyReducer {
 public:
  explicit PolyReducer(PolyMatrix m)
      : M(std::move(m)),
        P(to_poly_matrix(identity(M.rows()))),
        Q(to_poly_matrix(identity(M.cols()))) {}

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    M.row(i).swap(M.row(j));
    P.row(i).swap(P.row(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    M.col(i).swap(M.col(j));
    Q.col(i).swap(Q.col(j));
  }
  void add_row(Eigen::Index dst, Eigen::Index src, const IntPoly& f) {
    if (f.is_zero()) return;
    for (auto* m : {&M, &P})
      for (Eigen::Index c = 0; c < m->cols(); ++c)
        if (!(*m)(src, c).is_zero()) (*m)(dst, c) += f * (*m)(src, c);
  }
  void add_col(Eigen::Index dst, Eigen::Index src, const IntPoly& f) {
    if (f.is_zero()) return;
    for (auto* m : {&M, &Q})
      for (Eigen::Index r = 0; r < m->rows(); ++r)
        if (!(*m)(r, src).is_zero()) (*m)(r, dst) += f * (*m)(r, src);
  }
  void negate_row(Eigen::Index i) {
    for (auto* m : {&M, &P})
      for (Eigen::Index c = 0; c < m->cols(); ++c) (*m)(i, c) = -(*m)(i, c);
  }
  // rows (i, j) <- [[s, t], [u, v]] rows (i, j)
  void combine_rows(Eigen::Index i, Eigen::Index j, const IntPoly& s, const IntPoly& t,
                    const IntPoly& u, const IntPoly& v) {
    for (auto* m : {&M, &P})
      for (Eigen::Index c = 0; c < m->cols(); ++c) {
        IntPoly a = (*m)(i, c), b = (*m)(j, c);
        (*m)(i, c) = s * a + t * b;
        (*m)(j, c) = u * a + v * b;
      }
  }
  // cols (i, j) <- cols (i, j) * [[s, t], [u, v]]
  void combine_cols(Eigen::Index i, Eigen::Index j, const IntPoly& s, const IntPoly& t,
                    const IntPoly& u, const IntPoly& v) {
    for (auto* m : {&M, &Q})
      for (Eigen::Index r = 0; r < m->rows(); ++r) {
        IntPoly a = (*m)(r, i), b = (*m)(r, j);
        (*m)(r, i) = a * s + b * u;
        (*m)(r, j) = a * t + b * v;
      }
  }

  PolyMatrix M;
  PolyMatrix P;
  PolyMatrix Q;
};

bool divides_line(const PolyMatrix& m, Eigen::Index t, Eigen::Index r, Eigen::Index c,
                  const IntPoly& p) {
  for (Eigen::Index j = t; j < m.cols(); ++j)
    if (!divides(p, m(r, j))) return false;
  for (Eigen::Index i = t; i < m.rows(); ++i)
    if (!divides(p, m(i, c))) return false;
  return true;
}

void place_and_eliminate(PolyReducer& w, Eigen::Index t, Eigen::Index r, Eigen::Index c) {
  w.swap_rows(t, r);
  w.swap_cols(t, c);
  const IntPoly p = w.M(t, t);
  for (Eigen::Index i = t + 1; i < w.M.rows(); ++i) {
    if (w.M(i, t).is_zero()) continue;
    w.add_row(i, t, -exact_quotient(w.M(i, t), p));
  }
  for (Eigen::Index j = t + 1; j < w.M.cols(); ++j) {
    if (w.M(t, j).is_zero()) continue;
    w.add_col(j, t, -exact_quotient(w.M(t, j), p));
  }
}

// Replaces diag (a, b) at positions i, j with (gcd, lcm).
bool gcd_lcm_step(PolyReducer& w, Eigen::Index i, Eigen::Index j) {
  const IntPoly a = w.M(i, i), b = w.M(j, j);
  auto bz = integral_bezout(a, b);
  if (!bz) return false;
  const IntPoly ap = exact_quotient(a, bz->g);
  const IntPoly bp = exact_quotient(b, bz->g);
  w.combine_rows(i, j, bz->u, bz->v, -bp, ap);
  w.combine_cols(i, j, IntPoly(1), -(bz->v * bp), IntPoly(1), bz->u * ap);
  return true;
}

// One elementary operation with a small integer factor.
struct ElementaryOp {
  bool row;
  Eigen::Index dst, src;
  long factor;
};

void apply_op(PolyMatrix& m, const ElementaryOp& op, Eigen::Index t) {
  if (op.row) {
    for (Eigen::Index c = t; c < m.cols(); ++c)
      if (!m(op.src, c).is_zero()) m(op.dst, c) += IntPoly(op.factor) * m(op.src, c);
  } else {
    for (Eigen::Index r = t; r < m.rows(); ++r)
      if (!m(r, op.src).is_zero()) m(r, op.dst) += IntPoly(op.factor) * m(r, op.src);
  }
}

void apply_op(PolyReducer& w, const ElementaryOp& op) {
  if (op.row) w.add_row(op.dst, op.src, IntPoly(op.factor));
  else w.add_col(op.dst, op.src, IntPoly(op.factor));
}

// Lexicographic progress measure on the active block: smallest |constant|
// first (absent counts as infinite), ties broken by total degree and then
// by the count of nonzero entries.
struct BlockScore {
  std::optional<Integer> constant;
  long degree_sum = 0;
  long nonzero = 0;
};

BlockScore score(const PolyMatrix& m, Eigen::Index t) {
  BlockScore s;
  for (Eigen::Index i = t; i < m.rows(); ++i)
    for (Eigen::Index j = t; j < m.cols(); ++j) {
      const IntPoly& e = m(i, j);
      if (e.is_zero()) continue;
      ++s.nonzero;
      s.degree_sum += e.degree();
      if (!e.is_constant()) continue;
      Integer v = abs(e.constant_term());
      if (!s.constant || v < *s.constant) s.constant = v;
    }
  return s;
}

bool better(const BlockScore& a, const BlockScore& b) {
  if (a.constant != b.constant) return a.constant && (!b.constant || *a.constant < *b.constant);
  if (a.degree_sum != b.degree_sum) return a.degree_sum < b.degree_sum;
  return a.nonzero < b.nonzero;
}

bool has_unit(const BlockScore& s) { return s.constant && *s.constant == 1; }

// Searches one or two small elementary operations for a strictly better
// block score. Only used on small blocks.
bool lookahead(PolyReducer& w, Eigen::Index t) {
  const Eigen::Index rows = w.M.rows(), cols = w.M.cols();
  const Eigen::Index active = std::max(rows, cols) - t;
  if (active > 6) return false;
  std::vector<ElementaryOp> ops;
  for (long f : {1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L}) {
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < rows; ++j)
        if (i != j) ops.push_back({true, i, j, f});
    for (Eigen::Index i = t; i < cols; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (i != j) ops.push_back({false, i, j, f});
  }
  BlockScore best_value = score(w.M, t);
  std::vector<ElementaryOp> best_seq;
  for (const auto& a : ops) {
    PolyMatrix m1 = w.M;
    apply_op(m1, a, t);
    const auto v1 = score(m1, t);
    if (better(v1, best_value)) {
      best_value = v1;
      best_seq = {a};
      if (has_unit(v1)) break;
    }
  }
  if (!has_unit(best_value) && active <= 4) {
    for (const auto& a : ops) {
      PolyMatrix m1 = w.M;
      apply_op(m1, a, t);
      for (const auto& b : ops) {
        if (b.row == a.row && b.dst == a.dst && b.src == a.src) continue;
        PolyMatrix m2 = m1;
        apply_op(m2, b, t);
        const auto v2 = score(m2, t);
        if (better(v2, best_value)) {
          best_value = v2;
          best_seq = {a, b};
          if (has_unit(v2)) break;
        }
      }
      if (has_unit(best_value)) break;
    }
  }
  if (best_seq.empty()) return false;
  for (const auto& op : best_seq) apply_op(w, op);
  return true;
}

enum class Step { Placed, Progress, Stuck, Empty };

Step pivot_round(PolyReducer& w, Eigen::Index t) {
  PolyMatrix& M = w.M;
  const Eigen::Index rows = M.rows(), cols = M.cols();
  bool any = false;
  // (1) unit pivot
  for (Eigen::Index i = t; i < rows; ++i)
    for (Eigen::Index j = t; j < cols; ++j) {
      if (M(i, j).is_zero()) continue;
      any = true;
      if (M(i, j).is_unit()) {
        place_and_eliminate(w, t, i, j);
        return Step::Placed;
      }
    }
  if (!any) return Step::Empty;
  // (2) constant pivot dividing its row and column
  Eigen::Index br = -1, bc = -1;
  Integer best;
  for (Eigen::Index i = t; i < rows; ++i)
    for (Eigen::Index j = t; j < cols; ++j) {
      const IntPoly& e = M(i, j);
      if (e.is_zero() || !e.is_constant()) continue;
      Integer v = abs(e.constant_term());
      if (br >= 0 && v >= best) continue;
      if (!divides_line(M, t, i, j, e)) continue;
      br = i;
      bc = j;
      best = v;
    }
  if (br >= 0) {
    place_and_eliminate(w, t, br, bc);
    return Step::Placed;
  }
  // (2b) combine two constants in a line into their gcd
  const BlockScore before = score(M, t);
  auto try_improve = [&](auto&& op) {
    PolyReducer trial = w;
    op(trial);
    if (!better(score(trial.M, t), before)) return false;
    w = std::move(trial);
    return true;
  };
  for (Eigen::Index j = t; j < cols; ++j)
    for (Eigen::Index i1 = t; i1 < rows; ++i1) {
      const IntPoly a = M(i1, j);
      if (a.is_zero() || !a.is_constant()) continue;
      for (Eigen::Index i2 = i1 + 1; i2 < rows; ++i2) {
        const IntPoly b = M(i2, j);
        if (b.is_zero() || !b.is_constant()) continue;
        const Integer ac = a.constant_term(), bc0 = b.constant_term();
        auto e = extended_gcd(ac, bc0);
        bool ok;
        if (e.g == abs(ac)) {
          // one divides the other: a plain subtraction clears the larger
          ok = try_improve([&](PolyReducer& r) { r.add_row(i2, i1, IntPoly(Integer(-(bc0 / ac)))); });
        } else if (e.g == abs(bc0)) {
          ok = try_improve([&](PolyReducer& r) { r.add_row(i1, i2, IntPoly(Integer(-(ac / bc0)))); });
        } else {
          const Integer a0 = ac / e.g, b0 = bc0 / e.g;
          ok = try_improve([&](PolyReducer& r) {
            r.combine_rows(i1, i2, IntPoly(e.s), IntPoly(e.t), IntPoly(Integer(-b0)), IntPoly(a0));
          });
        }
        if (ok) return Step::Progress;
      }
    }
  for (Eigen::Index i = t; i < rows; ++i)
    for (Eigen::Index j1 = t; j1 < cols; ++j1) {
      const IntPoly a = M(i, j1);
      if (a.is_zero() || !a.is_constant()) continue;
      for (Eigen::Index j2 = j1 + 1; j2 < cols; ++j2) {
        const IntPoly b = M(i, j2);
        if (b.is_zero() || !b.is_constant()) continue;
        const Integer ac = a.constant_term(), bc0 = b.constant_term();
        auto e = extended_gcd(ac, bc0);
        bool ok;
        if (e.g == abs(ac)) {
          ok = try_improve([&](PolyReducer& r) { r.add_col(j2, j1, IntPoly(Integer(-(bc0 / ac)))); });
        } else if (e.g == abs(bc0)) {
          ok = try_improve([&](PolyReducer& r) { r.add_col(j1, j2, IntPoly(Integer(-(ac / bc0)))); });
        } else {
          const Integer a0 = ac / e.g, b0 = bc0 / e.g;
          // cols (j1, j2) * [[s, -b0], [t, a0]] has determinant s*a0 + t*b0 = 1
          ok = try_improve([&](PolyReducer& r) {
            r.combine_cols(j1, j2, IntPoly(e.s), IntPoly(Integer(-b0)), IntPoly(e.t), IntPoly(a0));
          });
        }
        if (ok) return Step::Progress;
      }
    }
  // (3) degree-minimal pivot with leading-coefficient reduction
  br = -1;
  int best_deg = 0;
  for (Eigen::Index i = t; i < rows; ++i)
    for (Eigen::Index j = t; j < cols; ++j) {
      const IntPoly& e = M(i, j);
      if (e.is_zero()) continue;
      if (br < 0 || e.degree() < best_deg ||
          (e.degree() == best_deg && abs(e.leading()) < best)) {
        br = i;
        bc = j;
        best_deg = e.degree();
        best = abs(e.leading());
      }
    }
  const IntPoly p = M(br, bc);
  {
    PolyReducer trial = w;
    bool changed = false;
    for (Eigen::Index i = t; i < rows; ++i) {
      if (i == br) continue;
      const IntPoly q = trial.M(i, bc);
      if (q.is_zero() || q.degree() < p.degree() || q.leading() % p.leading() != 0) continue;
      trial.add_row(i, br, -IntPoly::monomial(q.leading() / p.leading(), q.degree() - p.degree()));
      changed = true;
    }
    for (Eigen::Index j = t; j < cols; ++j) {
      if (j == bc) continue;
      const IntPoly q = trial.M(br, j);
      if (q.is_zero() || q.degree() < p.degree() || q.leading() % p.leading() != 0) continue;
      trial.add_col(j, bc, -IntPoly::monomial(q.leading() / p.leading(), q.degree() - p.degree()));
      changed = true;
    }
    if (changed && better(score(trial.M, t), before)) {
      w = std::move(trial);
      return Step::Progress;
    }
  }
  if (divides_line(M, t, br, bc, p)) {
    place_and_eliminate(w, t, br, bc);
    return Step::Placed;
  }
  // (3b) equal-degree pair in a line: the integer Bezout combination of the
  // leading coefficients cancels one leading term
  for (Eigen::Index j = t; j < cols; ++j)
    for (Eigen::Index i1 = t; i1 < rows; ++i1) {
      const IntPoly& a = M(i1, j);
      if (a.is_constant()) continue;
      for (Eigen::Index i2 = i1 + 1; i2 < rows; ++i2) {
        const IntPoly& b = M(i2, j);
        if (b.degree() != a.degree()) continue;
        auto e = extended_gcd(a.leading(), b.leading());
        Integer a0 = a.leading() / e.g, b0 = b.leading() / e.g;
        PolyReducer trial = w;
        trial.combine_rows(i1, i2, IntPoly(e.s), IntPoly(e.t), IntPoly(Integer(-b0)), IntPoly(a0));
        if (!better(score(trial.M, t), before)) continue;
        w = std::move(trial);
        return Step::Progress;
      }
    }
  for (Eigen::Index i = t; i < rows; ++i)
    for (Eigen::Index j1 = t; j1 < cols; ++j1) {
      const IntPoly& a = M(i, j1);
      if (a.is_constant()) continue;
      for (Eigen::Index j2 = j1 + 1; j2 < cols; ++j2) {
        const IntPoly& b = M(i, j2);
        if (b.degree() != a.degree()) continue;
        auto e = extended_gcd(a.leading(), b.leading());
        Integer a0 = a.leading() / e.g, b0 = b.leading() / e.g;
        PolyReducer trial = w;
        trial.combine_cols(j1, j2, IntPoly(e.s), IntPoly(Integer(-b0)), IntPoly(e.t), IntPoly(a0));
        if (!better(score(trial.M, t), before)) continue;
        w = std::move(trial);
        return Step::Progress;
      }
    }
  // (4) short search for a better block score
  if (lookahead(w, t)) return Step::Progress;
  return Step::Stuck;
}

}  // namespace

PolySNFResult reduce_to_snf_zx(const PolyMatrix& m, ReductionOptions options) {
  PolyReducer w(m);
  const Eigen::Index dim = std::max(m.rows(), m.cols());
  const int budget = options.max_iterations > 0
                         ? options.max_iterations
                         : static_cast<int>(std::max<Eigen::Index>(10 * dim * dim, 10));
  const Eigen::Index k = std::min(m.rows(), m.cols());
  int iterations = 0;
  auto fail = [&](std::string why) {
    return ReductionFailure{std::move(why), w.M, iterations};
  };
  for (Eigen::Index t = 0; t < k; ++t) {
    bool empty = false;
    for (;;) {
      if (++iterations > budget) return fail("iteration budget exhausted");
      Step s = pivot_round(w, t);
      if (s == Step::Placed) break;
      if (s == Step::Empty) {
        empty = true;
        break;
      }
      if (s == Step::Stuck) return fail("no unimodular reduction applies");
    }
    if (empty) break;
  }
  // zeros to the end, then enforce the divisibility chain
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!w.M(i, i).is_zero()) continue;
    for (Eigen::Index j = i + 1; j < k; ++j)
      if (!w.M(j, j).is_zero()) {
        w.swap_rows(i, j);
        w.swap_cols(i, j);
        break;
      }
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (divides(w.M(i, i), w.M(j, j))) continue;
      if (!gcd_lcm_step(w, i, j)) return fail("divisibility chain has no integral Bezout step");
    }
  for (Eigen::Index i = 0; i < k; ++i)
    if (normalization_sign(w.M(i, i)) < 0) w.negate_row(i);
  PolySNFCertificate cert;
  for (Eigen::Index i = 0; i < k; ++i) cert.diag.push_back(w.M(i, i));
  cert.D = std::move(w.M);
  cert.P = std::move(w.P);
  cert.Q = std::move(w.Q);
  return cert;
}

bool verify_poly_snf(const PolySNFCertificate& cert, const PolyMatrix& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  if (cert.P.rows() != rows || cert.P.cols() != rows) return false;
  if (cert.Q.rows() != cols || cert.Q.cols() != cols) return false;
  if (cert.D.rows() != rows || cert.D.cols() != cols) return false;
  const Eigen::Index k = std::min(rows, cols);
  if (static_cast<Eigen::Index>(cert.diag.size()) != k) return false;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (i == j) {
        if (cert.D(i, j) != cert.diag[static_cast<std::size_t>(i)]) return false;
      } else if (!cert.D(i, j).is_zero()) {
        return false;
      }
    }
  for (Eigen::Index i = 0; i + 1 < k; ++i)
    if (!divides(cert.diag[static_cast<std::size_t>(i)],
                 cert.diag[static_cast<std::size_t>(i + 1)]))
      return false;

  // Each entry of P*M*Q - D has degree <= bound, so agreement at bound + 1
  // distinct points is an exact polynomial identity.
  const int bound = std::max(
      max_degree(cert.P) + max_degree(m) + max_degree(cert.Q), max_degree(cert.D));
  if (bound >= 0) {
    for (int t = 0; t <= bound; ++t) {
      const Integer pt(t);
      IntMatrix lhs = multiply(multiply(evaluate(cert.P, pt), evaluate(m, pt)),
                               evaluate(cert.Q, pt));
      if (!equal(lhs, evaluate(cert.D, pt))) return false;
    }
  }

  if (rows == cols) {
    IntPoly dm = poly_det(m);
    if (!dm.is_zero()) {
      // det(P) det(Q) det(M) = prod(diag); units of Z[x] are +-1
      IntPoly prod(1);
      for (const auto& d : cert.diag) prod *= d;
      return prod == dm || prod == -dm;
    }
  }
  return poly_det(cert.P).is_unit() && poly_det(cert.Q).is_unit();
}

namespace {

// xI - C_a reduced to diag(1, ..., 1, a).
PolySNFCertificate single_block_certificate(const CompanionBlock& block) {
  const auto d = static_cast<Eigen::Index>(block.poly.degree());
  PolyReducer w(x_plus_shift_matrix(block.matrix, 0, 1));
  // R_i += x R_{i+1} from the bottom: row 0 collapses to (0, ..., 0, a)
  for (Eigen::Index i = d - 2; i >= 0; --i) w.add_row(i, i + 1, IntPoly::x());
  // each row i >= 1 is now -1 at column i-1 plus a tail in the last column
  for (Eigen::Index i = 1; i < d; ++i) {
    IntPoly tail = w.M(i, d - 1);
    w.add_col(d - 1, i - 1, tail);
  }
  // rotate row 0 to the bottom and flip the -1 entries
  for (Eigen::Index i = 0; i + 1 < d; ++i) w.swap_rows(i, i + 1);
  for (Eigen::Index i = 0; i + 1 < d; ++i) w.negate_row(i);
  PolySNFCertificate cert;
  for (Eigen::Index i = 0; i < d; ++i) cert.diag.push_back(w.M(i, i));
  cert.D = std::move(w.M);
  cert.P = std::move(w.P);
  cert.Q = std::move(w.Q);
  return cert;
}

}  // namespace

PolySNFCertificate block_companion_snf(const std::vector<CompanionBlock>& blocks) {
  Eigen::Index n = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (!b.poly.is_monic() || b.poly.degree() < 1)
      throw InvalidInput("block_companion_snf: annihilators must be monic and non-constant");
    if (i > 0 && !divides(blocks[i - 1].poly, b.poly))
      throw InvalidInput("block_companion_snf: divisibility chain violated");
    n += b.poly.degree();
  }
  PolyMatrix P = PolyMatrix::Constant(n, n, IntPoly());
  PolyMatrix Q = PolyMatrix::Constant(n, n, IntPoly());
  PolyMatrix D = PolyMatrix::Constant(n, n, IntPoly());
  std::vector<Eigen::Index> ones, tops;
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    PolySNFCertificate c = single_block_certificate(b);
    const Eigen::Index d = c.P.rows();
    P.block(off, off, d, d) = c.P;
    Q.block(off, off, d, d) = c.Q;
    D.block(off, off, d, d) = c.D;
    for (Eigen::Index i = 0; i + 1 < d; ++i) ones.push_back(off + i);
    tops.push_back(off + d - 1);
    off += d;
  }
  std::vector<Eigen::Index> order = ones;
  order.insert(order.end(), tops.begin(), tops.end());
  PolySNFCertificate cert;
  cert.P.resize(n, n);
  cert.Q.resize(n, n);
  cert.D = PolyMatrix::Constant(n, n, IntPoly());
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    cert.P.row(k) = P.row(src);
    cert.Q.col(k) = Q.col(src);
    cert.D(k, k) = D(src, src);
    cert.diag.push_back(D(src, src));
  }
  return cert;
}

PolySNFCertificate block_companion_snf(const std::vector<IntPoly>& polys) {
  std::vector<CompanionBlock> blocks;
  blocks.reserve(polys.size());
  for (const auto& p : polys) blocks.push_back(companion(p));
  return block_companion_snf(blocks);
}

PolySNFCertificate to_plus_convention(const PolySNFCertificate& cert) {
  PolySNFCertificate out;
  out.P = negate_variable(cert.P);
  for (Eigen::Index i = 0; i < out.P.rows(); ++i)
    for (Eigen::Index j = 0; j < out.P.cols(); ++j) out.P(i, j) = -out.P(i, j);
  out.Q = negate_variable(cert.Q);
  out.D = negate_variable(cert.D);
  for (Eigen::Index i = 0; i < std::min(out.D.rows(), out.D.cols()); ++i) {
    if (normalization_sign(out.D(i, i)) < 0) {
      out.D(i, i) = -out.D(i, i);
      for (Eigen::Index j = 0; j < out.P.cols(); ++j) out.P(i, j) = -out.P(i, j);
    }
    out.diag.push_back(out.D(i, i));
  }
  return out;
}

}  // namespace dposet
