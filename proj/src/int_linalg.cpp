#include "dposet/int_linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>

namespace dposet {

namespace {

// Working state for Smith/Hermite reductions. Row operations act on A and
// are mirrored into P (left transform); column operations into Q.
class Reducer {
 public:
  Reducer(IntMatrix a, bool track_rows, bool track_cols)
      : A(std::move(a)), track_rows_(track_rows), track_cols_(track_cols) {
    if (track_rows_) P = identity(A.rows());
    if (track_cols_) Q = identity(A.cols());
  }

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    if (track_rows_) P.row(i).swap(P.row(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    if (track_cols_) Q.col(i).swap(Q.col(j));
  }
  // row[dst] += f * row[src]
  void add_row(Eigen::Index dst, Eigen::Index src, const Integer& f) {
    if (f == 0) return;
    add_row_to(A, dst, src, f);
    if (track_rows_) add_row_to(P, dst, src, f);
  }
  // col[dst] += f * col[src]
  void add_col(Eigen::Index dst, Eigen::Index src, const Integer& f) {
    if (f == 0) return;
    add_col_to(A, dst, src, f);
    if (track_cols_) add_col_to(Q, dst, src, f);
  }
  void negate_row(Eigen::Index i) {
    negate_row_of(A, i);
    if (track_rows_) negate_row_of(P, i);
  }
  // rows (i, j) <- [[s, t], [u, v]] * rows (i, j); caller guarantees det = +-1
  void combine_rows(Eigen::Index i, Eigen::Index j, const Integer& s, const Integer& t,
                    const Integer& u, const Integer& v) {
    combine_rows_of(A, i, j, s, t, u, v);
    if (track_rows_) combine_rows_of(P, i, j, s, t, u, v);
  }

  IntMatrix A;
  IntMatrix P;
  IntMatrix Q;

 private:
  static void add_row_to(IntMatrix& m, Eigen::Index dst, Eigen::Index src,
                         const Integer& f) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(src, c) != 0) m(dst, c) += f * m(src, c);
  }
  static void add_col_to(IntMatrix& m, Eigen::Index dst, Eigen::Index src,
                         const Integer& f) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, src) != 0) m(r, dst) += f * m(r, src);
  }
  static void negate_row_of(IntMatrix& m, Eigen::Index i) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = -m(i, c);
  }
  static void combine_rows_of(IntMatrix& m, Eigen::Index i, Eigen::Index j,
                              const Integer& s, const Integer& t, const Integer& u,
                              const Integer& v) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(i, c) == 0 && m(j, c) == 0) continue;
      Integer a = m(i, c), b = m(j, c);
      m(i, c) = s * a + t * b;
      m(j, c) = u * a + v * b;
    }
  }

  bool track_rows_;
  bool track_cols_;
};

// Minimal |entry| over rows >= t, cols >= t; ties broken by (row, col).
bool find_min_pivot(const IntMatrix& a, Eigen::Index t, Eigen::Index& pr,
                    Eigen::Index& pc) {
  bool found = false;
  Integer best;
  for (Eigen::Index i = t; i < a.rows(); ++i)
    for (Eigen::Index j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pr = i;
        pc = j;
        if (best == 1) return true;
      }
    }
  return found;
}

void smith_reduce(Reducer& w) {
  IntMatrix& A = w.A;
  const Eigen::Index m = A.rows(), n = A.cols();
  const Eigen::Index k = std::min(m, n);
  for (Eigen::Index t = 0; t < k; ++t) {
    Eigen::Index pr = 0, pc = 0;
    if (!find_min_pivot(A, t, pr, pc)) break;
    w.swap_rows(t, pr);
    w.swap_cols(t, pc);
    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        w.add_row(i, t, -round_div(A(i, t), A(t, t)));
        if (A(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        w.add_col(j, t, -round_div(A(t, j), A(t, t)));
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived; promote the smallest
        Eigen::Index br = t, bc = t;
        Integer best = abs(A(t, t));
        for (Eigen::Index i = t + 1; i < m; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < best) {
            best = abs(A(i, t));
            br = i;
            bc = t;
          }
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < best) {
            best = abs(A(t, j));
            br = t;
            bc = j;
          }
        w.swap_rows(t, br);
        w.swap_cols(t, bc);
        continue;
      }
      // pivot must divide the remaining block for the divisibility chain
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.add_row(t, bad, 1);
    }
    if (A(t, t) < 0) w.negate_row(t);
  }
}

std::vector<Integer> diagonal_of(const IntMatrix& d) {
  const Eigen::Index k = std::min(d.rows(), d.cols());
  std::vector<Integer> out;
  out.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) out.push_back(d(i, i));
  return out;
}

}  // namespace

SNFCertificate snf(const IntMatrix& a) {
  Reducer w(a, true, true);
  smith_reduce(w);
  SNFCertificate cert;
  cert.diag = diagonal_of(w.A);
  cert.D = std::move(w.A);
  cert.P = std::move(w.P);
  cert.Q = std::move(w.Q);
  return cert;
}

std::vector<Integer> ds(const IntMatrix& a) {
  Reducer w(a, false, false);
  smith_reduce(w);
  return diagonal_of(w.A);
}

HermiteForm hnf(const IntMatrix& a) {
  Reducer w(a, true, false);
  IntMatrix& H = w.A;
  const Eigen::Index m = H.rows(), n = H.cols();
  HermiteForm out;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    // Euclid on the column with the smallest entry as pivot keeps multipliers small
    for (;;) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = r; i < m; ++i)
        if (H(i, c) != 0 && (piv < 0 || abs(H(i, c)) < abs(H(piv, c)))) piv = i;
      if (piv < 0) break;
      w.swap_rows(r, piv);
      bool clean = true;
      for (Eigen::Index i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        w.add_row(i, r, -round_div(H(i, c), H(r, c)));
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) w.negate_row(r);
    for (Eigen::Index i = 0; i < r; ++i)
      if (H(i, c) != 0) w.add_row(i, r, -floor_div(H(i, c), H(r, c)));
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.H = std::move(w.A);
  out.U = std::move(w.P);
  return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const Eigen::Index n = a.cols();
  HermiteForm h = hnf(a.transpose());
  const auto rk = static_cast<Eigen::Index>(h.pivot_cols.size());
  const Eigen::Index k = n - rk;
  if (k == 0) return zeros(n, 0);
  IntMatrix rows = h.U.bottomRows(k);
  IntMatrix reduced = hnf(rows).H;
  return reduced.transpose();
}

PreimageSolver::PreimageSolver(const IntMatrix& a) : rows_(a.rows()) {
  SNFCertificate c = snf(a);
  P_ = std::move(c.P);
  Q_ = std::move(c.Q);
  diag_ = std::move(c.diag);
  rank_ = static_cast<Eigen::Index>(
      std::count_if(diag_.begin(), diag_.end(), [](const Integer& s) { return s != 0; }));
}

std::optional<IntVector> PreimageSolver::solve(const IntVector& b) const {
  if (b.size() != rows_) throw InvalidInput("solve_preimage: dimension mismatch");
  IntVector c = multiply(P_, b);
  IntVector y = IntVector::Constant(Q_.rows(), Integer(0));
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (i < rank_) {
      const Integer& s = diag_[static_cast<std::size_t>(i)];
      if (c(i) % s != 0) return std::nullopt;
      y(i) = c(i) / s;
    } else if (c(i) != 0) {
      return std::nullopt;
    }
  }
  return multiply(Q_, y);
}

std::optional<IntVector> solve_preimage(const IntMatrix& a, const IntVector& b) {
  return PreimageSolver(a).solve(b);
}

Integer det(const IntMatrix& a) { return bareiss_det<Integer>(a); }

Eigen::Index rank(const IntMatrix& a) {
  IntMatrix m = a;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Integer prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(r).swap(m.row(piv));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j)
        m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes just below 2^62, generated once and shared.
u64 nth_prime(std::size_t k) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  u64 cand = primes.empty() ? (1ULL << 62) - 1 : primes.back() - 2;
  while (primes.size() <= k) {
    if (is_prime_u64(cand)) primes.push_back(cand);
    cand -= 2;
  }
  return primes[k];
}

u64 to_mod(const Integer& v, u64 p) {
  Integer r = v % Integer(p);
  if (r < 0) r += Integer(p);
  return r.convert_to<u64>();
}

// Characteristic polynomial modulo p through Hessenberg reduction.
std::vector<u64> char_poly_mod(const IntMatrix& a, u64 p) {
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h[i][j] = to_mod(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), p);
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (h[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][j + 1]);
    }
    const u64 inv = powmod(h[j + 1][j], p - 2, p);
    for (std::size_t k = j + 2; k < n; ++k) {
      if (h[k][j] == 0) continue;
      const u64 u = mulmod(h[k][j], inv, p);
      // row_k -= u * row_{j+1}; col_{j+1} += u * col_k
      for (std::size_t c = 0; c < n; ++c)
        h[k][c] = (h[k][c] + p - mulmod(u, h[j + 1][c], p)) % p;
      for (std::size_t r = 0; r < n; ++r) h[r][j + 1] = (h[r][j + 1] + mulmod(u, h[r][k], p)) % p;
    }
  }
  // p_{k+1} = (x - h_kk) p_k - sum_{i<k} (prod_{m=i+1..k} h_{m,m-1}) h_{i,k} p_i
  std::vector<std::vector<u64>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<u64> next(k + 2, 0);
    for (std::size_t d = 0; d <= k; ++d) {
      next[d + 1] = (next[d + 1] + polys[k][d]) % p;
      next[d] = (next[d] + p - mulmod(h[k][k], polys[k][d], p)) % p;
    }
    u64 t = 1;
    for (std::size_t i = k; i-- > 0;) {
      t = mulmod(t, h[i + 1][i], p);
      if (t == 0) break;
      const u64 coef = mulmod(t, h[i][k], p);
      if (coef == 0) continue;
      for (std::size_t d = 0; d < polys[i].size(); ++d)
        next[d] = (next[d] + p - mulmod(coef, polys[i][d], p)) % p;
    }
    polys[k + 1] = std::move(next);
  }
  return polys[n];
}

}  // namespace

IntPoly char_poly(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("char_poly: matrix not square");
  const auto n = static_cast<unsigned>(a.rows());
  if (n == 0) return IntPoly(1);
  // every coefficient is bounded by (1 + rho)^n with rho >= spectral radius
  Integer bound = boost::multiprecision::pow(Integer(1) + infinity_norm(a), n);
  Integer limit = 2 * bound + 1;
  Integer modulus = 1;
  std::vector<Integer> coeffs(n + 1, Integer(0));
  for (std::size_t k = 0; modulus <= limit; ++k) {
    const u64 p = nth_prime(k);
    std::vector<u64> residues = char_poly_mod(a, p);
    const Integer P(p);
    // Garner step: x <- x + M * ((r - x) * M^{-1} mod p)
    const u64 m_inv = powmod(to_mod(modulus, p), p - 2, p);
    for (std::size_t d = 0; d <= n; ++d) {
      u64 diff = (residues[d] + p - to_mod(coeffs[d], p)) % p;
      coeffs[d] += modulus * Integer(mulmod(diff, m_inv, p));
    }
    modulus *= P;
  }
  const Integer half = modulus / 2;
  for (auto& c : coeffs)
    if (c > half) c -= modulus;
  return IntPoly(std::move(coeffs));
}

IntPoly char_poly_berkowitz(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("char_poly: matrix not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return IntPoly(1);
  // coefficients highest degree first
  std::vector<Integer> vect{1, -a(0, 0)};
  for (Eigen::Index r = 1; r < n; ++r) {
    std::vector<Integer> col{1, -a(r, r)};
    IntVector v = a.block(0, r, r, 1);
    const IntMatrix sub = a.topLeftCorner(r, r);
    for (Eigen::Index k = 0; k < r; ++k) {
      Integer s = 0;
      for (Eigen::Index j = 0; j < r; ++j) s += a(r, j) * v(j);
      col.push_back(-s);
      v = multiply(sub, v);
    }
    std::vector<Integer> next(static_cast<std::size_t>(r) + 2, Integer(0));
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j <= std::min(i, vect.size() - 1); ++j)
        if (i - j < col.size()) next[i] += col[i - j] * vect[j];
    vect = std::move(next);
  }
  std::reverse(vect.begin(), vect.end());
  return IntPoly(std::move(vect));
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InvalidInput("inverse_unimodular: not square");
  // fraction-free Gauss-Jordan on [A | I]; every entry stays a minor of A
  IntMatrix m(n, 2 * n);
  m.leftCols(n) = a;
  m.rightCols(n) = identity(n);
  Integer prev = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (m(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw InvalidInput("inverse_unimodular: matrix is singular");
    m.row(k).swap(m.row(piv));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k) continue;
      for (Eigen::Index j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  if (abs(prev) != 1) throw InvalidInput("inverse_unimodular: matrix is not unimodular");
  // the left block is now prev * I (rows above the last pivot were scaled too)
  IntMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = m(i, n + j) / m(i, i);
  return inv;
}

bool is_surjective_over_Z(const IntMatrix& a) {
  if (a.rows() > a.cols()) return false;
  for (const auto& s : ds(a))
    if (s != 1) return false;
  return true;
}

bool has_free_cokernel(const IntMatrix& a) {
  for (const auto& s : ds(a))
    if (s != 0 && s != 1) return false;
  return true;
}

bool is_basis(const IntMatrix& columns) {
  if (columns.rows() != columns.cols()) return false;
  return abs(det(columns)) == 1;
}

bool is_basis(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return true;
  return is_basis(hstack(vectors, vectors.front().size()));
}

bool is_saturated(const IntMatrix& columns) {
  if (columns.cols() > columns.rows()) return false;
  for (const auto& s : ds(columns))
    if (s != 1) return false;
  return true;
}

IntMatrix hstack(const std::vector<IntVector>& columns, Eigen::Index rows) {
  IntMatrix m(rows, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InvalidInput("hstack: ragged columns");
    m.col(static_cast<Eigen::Index>(j)) = columns[j];
  }
  return m;
}

}  // namespace dposet

namespace dposet {

namespace {

// Integral LLL on columns, keeping d_i and lambda_{k,j} as exact integers.
class IntegralLLL {
 public:
  IntegralLLL(IntMatrix b, Eigen::Index fixed)
      : b_(std::move(b)), n_(b_.cols()), fixed_(fixed), d_(n_ + 1), lambda_(n_, n_) {
    d_[0] = 1;
  }

  IntMatrix run(bool allow_swaps) {
    if (n_ == 0) return b_;
    for (Eigen::Index k = 0; k < n_; ++k) {
      if (k >= kmax_) gram_schmidt(k);
      if (k < std::max<Eigen::Index>(fixed_, 1)) continue;
      reduce(k, k - 1);
      if (allow_swaps && k - 1 >= fixed_ && lovasz_fails(k)) {
        swap(k);
        k = std::max(k - 2, std::max<Eigen::Index>(fixed_, 1) - 1);
        continue;
      }
      for (Eigen::Index l = k - 2; l >= 0; --l) reduce(k, l);
    }
    return b_;
  }

 private:
  Integer dot(Eigen::Index i, Eigen::Index j) const {
    Integer s = 0;
    for (Eigen::Index r = 0; r < b_.rows(); ++r)
      if (b_(r, i) != 0 && b_(r, j) != 0) s += b_(r, i) * b_(r, j);
    return s;
  }

  // d_[i+1] is the Gram determinant of the first i+1 columns
  void gram_schmidt(Eigen::Index k) {
    for (Eigen::Index j = 0; j <= k; ++j) {
      Integer u = dot(k, j);
      for (Eigen::Index i = 0; i < j; ++i)
        u = (d_[static_cast<std::size_t>(i + 1)] * u - lambda_(k, i) * lambda_(j, i)) /
            d_[static_cast<std::size_t>(i)];
      if (j < k) {
        lambda_(k, j) = u;
      } else {
        if (u == 0) throw InvalidInput("lll_reduce: columns are linearly dependent");
        d_[static_cast<std::size_t>(k + 1)] = u;
      }
    }
    kmax_ = k + 1;
  }

  void reduce(Eigen::Index k, Eigen::Index l) {
    const Integer& dl = d_[static_cast<std::size_t>(l + 1)];
    if (2 * abs(lambda_(k, l)) <= dl) return;
    const Integer q = round_div(lambda_(k, l), dl);
    for (Eigen::Index r = 0; r < b_.rows(); ++r)
      if (b_(r, l) != 0) b_(r, k) -= q * b_(r, l);
    lambda_(k, l) -= q * dl;
    for (Eigen::Index i = 0; i < l; ++i) lambda_(k, i) -= q * lambda_(l, i);
  }

  bool lovasz_fails(Eigen::Index k) const {
    const Integer& dk = d_[static_cast<std::size_t>(k + 1)];
    const Integer& dk1 = d_[static_cast<std::size_t>(k)];
    const Integer& dk2 = d_[static_cast<std::size_t>(k - 1)];
    const Integer& lam = lambda_(k, k - 1);
    return 4 * dk * dk2 < 3 * dk1 * dk1 - 4 * lam * lam;
  }

  void swap(Eigen::Index k) {
    b_.col(k).swap(b_.col(k - 1));
    for (Eigen::Index j = 0; j < k - 1; ++j) std::swap(lambda_(k, j), lambda_(k - 1, j));
    const Integer lam = lambda_(k, k - 1);
    Integer& dk1 = d_[static_cast<std::size_t>(k)];
    const Integer dk = d_[static_cast<std::size_t>(k + 1)];
    const Integer dk2 = d_[static_cast<std::size_t>(k - 1)];
    const Integer bnew = (dk2 * dk + lam * lam) / dk1;
    for (Eigen::Index i = k + 1; i < kmax_; ++i) {
      const Integer t = lambda_(i, k);
      lambda_(i, k) = (dk * lambda_(i, k - 1) - lam * t) / dk1;
      lambda_(i, k - 1) = (bnew * t + lam * lambda_(i, k)) / dk;
    }
    dk1 = bnew;
  }

  IntMatrix b_;
  Eigen::Index n_;
  Eigen::Index fixed_;
  std::vector<Integer> d_;
  IntMatrix lambda_;
  Eigen::Index kmax_ = 0;
};

}  // namespace

IntMatrix lll_reduce(const IntMatrix& columns, Eigen::Index fixed) {
  return IntegralLLL(columns, fixed).run(true);
}

IntVector size_reduce(const IntMatrix& columns, const IntVector& v) {
  IntMatrix b(columns.rows(), columns.cols() + 1);
  b.leftCols(columns.cols()) = columns;
  b.col(columns.cols()) = v;
  return IntegralLLL(b, columns.cols()).run(false).col(columns.cols());
}

}  // namespace dposet
