#pragma once

// Dense linear algebra over a prime field F_p.  Everything downstream
// (chain complexes, (co)limits, lifting solvers) reduces to the handful
// of eliminations implemented here, so this file keeps no other deps.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reedytk {

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FpMat {
  uint32_t p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> a;  // row-major

  FpMat() = default;
  FpMat(uint32_t p_, int r, int c) : p(p_), rows(r), cols(c), a(size_t(r) * c, 0) {
    if (p_ < 2 || p_ > 251 || !is_prime_u32(p_))
      throw std::invalid_argument("FpMat: p must be a prime <= 251");
  }

  uint8_t at(int i, int j) const { return a[size_t(i) * cols + j]; }
  void set(int i, int j, uint32_t v) { a[size_t(i) * cols + j] = uint8_t(v % p); }

  static FpMat zero(uint32_t p, int r, int c) { return FpMat(p, r, c); }
  static FpMat identity(uint32_t p, int n) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  bool is_zero() const {
    for (uint8_t v : a)
      if (v) return false;
    return true;
  }

  bool operator==(const FpMat& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline uint32_t fp_inv(uint32_t x, uint32_t p) {
  // extended Euclid
  int64_t t = 0, nt = 1, r = p, nr = int64_t(x % p);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw std::invalid_argument("fp_inv: not invertible");
  if (t < 0) t += p;
  return uint32_t(t);
}

inline FpMat mat_mul(const FpMat& A, const FpMat& B) {
  if (A.p != B.p || A.cols != B.rows) throw std::invalid_argument("mat_mul: shape/field mismatch");
  FpMat C(A.p, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      uint32_t v = A.at(i, k);
      if (!v) continue;
      const uint8_t* brow = &B.a[size_t(k) * B.cols];
      uint8_t* crow = &C.a[size_t(i) * C.cols];
      if (A.p == 2) {
        for (int j = 0; j < B.cols; ++j) crow[j] ^= brow[j];
      } else {
        for (int j = 0; j < B.cols; ++j) crow[j] = uint8_t((crow[j] + v * brow[j]) % A.p);
      }
    }
  return C;
}

inline FpMat mat_add(const FpMat& A, const FpMat& B) {
  if (A.p != B.p || A.rows != B.rows || A.cols != B.cols)
    throw std::invalid_argument("mat_add: shape mismatch");
  FpMat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = uint8_t((C.a[i] + B.a[i]) % A.p);
  return C;
}

inline FpMat mat_neg(const FpMat& A) {
  FpMat C = A;
  for (auto& v : C.a) v = uint8_t((A.p - v) % A.p);
  return C;
}

inline FpMat mat_sub(const FpMat& A, const FpMat& B) { return mat_add(A, mat_neg(B)); }

inline FpMat mat_scale(const FpMat& A, uint32_t c) {
  FpMat C = A;
  for (auto& v : C.a) v = uint8_t((v * (c % A.p)) % A.p);
  return C;
}

inline FpMat transpose(const FpMat& A) {
  FpMat T(A.p, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.set(j, i, A.at(i, j));
  return T;
}

inline FpMat hstack(const FpMat& A, const FpMat& B) {
  if (A.p != B.p || A.rows != B.rows) throw std::invalid_argument("hstack: row mismatch");
  FpMat C(A.p, A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.set(i, j, A.at(i, j));
    for (int j = 0; j < B.cols; ++j) C.set(i, A.cols + j, B.at(i, j));
  }
  return C;
}

inline FpMat vstack(const FpMat& A, const FpMat& B) {
  if (A.p != B.p || A.cols != B.cols) throw std::invalid_argument("vstack: col mismatch");
  FpMat C(A.p, A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.set(i, j, A.at(i, j));
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) C.set(A.rows + i, j, B.at(i, j));
  return C;
}

// Copy src into dst with top-left corner at (r0, c0).
inline void put_block(FpMat& dst, int r0, int c0, const FpMat& src) {
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j) dst.set(r0 + i, c0 + j, src.at(i, j));
}

inline FpMat block(const FpMat& A, int r0, int c0, int r, int c) {
  FpMat B(A.p, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) B.set(i, j, A.at(r0 + i, c0 + j));
  return B;
}

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(FpMat& M) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols; ++j) {
        uint8_t t = M.a[size_t(piv) * M.cols + j];
        M.a[size_t(piv) * M.cols + j] = M.a[size_t(r) * M.cols + j];
        M.a[size_t(r) * M.cols + j] = t;
      }
    uint32_t inv = fp_inv(M.at(r, c), M.p);
    if (inv != 1)
      for (int j = 0; j < M.cols; ++j) M.set(r, j, M.at(r, j) * inv);
    for (int i = 0; i < M.rows; ++i) {
      if (i == r) continue;
      uint32_t f = M.at(i, c);
      if (!f) continue;
      uint8_t* ri = &M.a[size_t(i) * M.cols];
      const uint8_t* rr = &M.a[size_t(r) * M.cols];
      if (M.p == 2) {
        for (int j = 0; j < M.cols; ++j) ri[j] ^= rr[j];
      } else {
        uint32_t fn = M.p - f;
        for (int j = 0; j < M.cols; ++j) ri[j] = uint8_t((ri[j] + fn * rr[j]) % M.p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(FpMat M) { return int(rref(M).size()); }

// Solve A X = B; returns one solution if consistent.
inline std::optional<FpMat> solve(const FpMat& A, const FpMat& B) {
  if (A.p != B.p || A.rows != B.rows) throw std::invalid_argument("solve: shape mismatch");
  FpMat M = hstack(A, B);
  std::vector<int> piv = rref(M);
  // consistency: no pivot in the B block
  for (int c : piv)
    if (c >= A.cols) return std::nullopt;
  FpMat X(A.p, A.cols, B.cols);
  for (size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < B.cols; ++j) X.set(piv[r], j, M.at(int(r), A.cols + j));
  return X;
}

// Columns span ker(A).
inline FpMat nullspace(const FpMat& A) {
  FpMat M = A;
  std::vector<int> piv = rref(M);
  std::vector<char> is_piv(A.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < A.cols; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  FpMat N(A.p, A.cols, int(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    N.set(fc, int(k), 1);
    for (size_t r = 0; r < piv.size(); ++r) {
      uint32_t v = M.at(int(r), fc);
      if (v) N.set(piv[r], int(k), A.p - v);
    }
  }
  return N;
}

inline std::optional<FpMat> inverse(const FpMat& A) {
  if (A.rows != A.cols) return std::nullopt;
  auto X = solve(A, FpMat::identity(A.p, A.rows));
  if (!X) return std::nullopt;
  if (!(mat_mul(A, *X) == FpMat::identity(A.p, A.rows))) return std::nullopt;
  return X;
}

inline bool is_invertible(const FpMat& A) { return A.rows == A.cols && rank(A) == A.rows; }

// Quotient presentation F^m / col(R): proj (q x m) and sect (m x q) with
// proj*sect = id and ker(proj) = col(R).
struct QuotientData {
  FpMat proj;
  FpMat sect;
};

// Linear system over matrix-shaped unknown blocks.  Equations are sums of
// terms P * h_b * Q (P/Q omitted = identity); this covers chain-map
// conditions, lifting constraints and naturality in one assembler.
struct BlockLinearSystem {
  struct Block {
    int off;
    int rows;
    int cols;
  };
  struct Term {
    int block;
    std::optional<FpMat> P;  // left factor
    std::optional<FpMat> Q;  // right factor
    bool negate = false;
  };
  struct Solution {
    bool consistent = false;
    std::vector<uint8_t> particular;  // length nvars
    FpMat null_basis;                 // nvars x k
  };

  uint32_t p;
  int nvars = 0;
  std::vector<Block> blocks;
  std::vector<std::vector<uint8_t>> eq_rows;
  std::vector<uint8_t> eq_rhs;

  explicit BlockLinearSystem(uint32_t p_) : p(p_) {}

  int add_block(int rows, int cols) {
    blocks.push_back({nvars, rows, cols});
    nvars += rows * cols;
    return int(blocks.size()) - 1;
  }

  // sum of terms == rhs (shape eq_r x eq_c)
  void add_equation(const std::vector<Term>& terms, const FpMat& rhs) {
    int er = rhs.rows, ec = rhs.cols;
    for (int r = 0; r < er; ++r)
      for (int c = 0; c < ec; ++c) {
        std::vector<uint8_t> row(nvars, 0);
        for (const auto& t : terms) {
          const Block& b = blocks[t.block];
          for (int w = 0; w < b.rows; ++w) {
            uint32_t pv;
            if (t.P) {
              pv = t.P->at(r, w);
            } else {
              if (w != r) continue;
              pv = 1;
            }
            if (!pv) continue;
            for (int x = 0; x < b.cols; ++x) {
              uint32_t qv;
              if (t.Q) {
                qv = t.Q->at(x, c);
              } else {
                if (x != c) continue;
                qv = 1;
              }
              if (!qv) continue;
              uint32_t coef = (pv * qv) % p;
              if (t.negate) coef = (p - coef) % p;
              int idx = b.off + w * b.cols + x;
              row[idx] = uint8_t((row[idx] + coef) % p);
            }
          }
        }
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs.at(r, c));
      }
  }

  Solution solve_full() const {
    int m = int(eq_rows.size());
    FpMat M(p, m, nvars + 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < nvars; ++j) M.set(i, j, eq_rows[i][j]);
      M.set(i, nvars, eq_rhs[i]);
    }
    std::vector<int> piv = rref(M);
    Solution s;
    s.consistent = true;
    for (int c : piv)
      if (c == nvars) s.consistent = false;
    s.particular.assign(nvars, 0);
    if (s.consistent)
      for (size_t r = 0; r < piv.size(); ++r)
        if (piv[r] < nvars) s.particular[piv[r]] = M.at(int(r), nvars);
    // nullspace of the homogeneous part from the same reduction
    std::vector<char> is_piv(nvars, 0);
    std::vector<int> hom_piv;
    for (int c : piv)
      if (c < nvars) {
        is_piv[c] = 1;
        hom_piv.push_back(c);
      }
    std::vector<int> free_cols;
    for (int c = 0; c < nvars; ++c)
      if (!is_piv[c]) free_cols.push_back(c);
    s.null_basis = FpMat(p, nvars, int(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
      int fc = free_cols[k];
      s.null_basis.set(fc, int(k), 1);
      int rr = 0;
      for (int c : piv) {
        if (c < nvars) {
          uint32_t v = M.at(rr, fc);
          if (v) s.null_basis.set(c, int(k), p - v);
        }
        ++rr;
      }
    }
    return s;
  }

  FpMat block_of(const std::vector<uint8_t>& flat, int b) const {
    const Block& bl = blocks[b];
    FpMat M(p, bl.rows, bl.cols);
    for (int i = 0; i < bl.rows; ++i)
      for (int j = 0; j < bl.cols; ++j) M.set(i, j, flat[bl.off + i * bl.cols + j]);
    return M;
  }
};

inline QuotientData quotient_by_columns(const FpMat& R) {
  int m = R.rows;
  uint32_t p = R.p;
  // basis C of col(R): pivot columns of R
  FpMat Rc = R;
  std::vector<int> piv = rref(Rc);
  FpMat C(p, m, int(piv.size()));
  for (size_t k = 0; k < piv.size(); ++k)
    for (int i = 0; i < m; ++i) C.set(i, int(k), R.at(i, piv[k]));
  // extend C with standard basis vectors to a full basis, track which
  FpMat B = C;
  std::vector<int> extras;
  int rk = rank(B);
  for (int e = 0; e < m && rk < m; ++e) {
    FpMat cand(p, m, B.cols + 1);
    put_block(cand, 0, 0, B);
    cand.set(e, B.cols, 1);
    int r2 = rank(cand);
    if (r2 > rk) {
      B = cand;
      extras.push_back(e);
      rk = r2;
    }
  }
  auto Binv = inverse(B);
  if (!Binv) throw std::logic_error("quotient_by_columns: basis not invertible");
  int q = int(extras.size());
  QuotientData out;
  out.proj = block(*Binv, B.cols - q, 0, q, m);
  out.sect = FpMat(p, m, q);
  for (int k = 0; k < q; ++k) out.sect.set(extras[k], k, 1);
  return out;
}

}  // namespace reedytk
