#pragma once

// Finitely supported chain complexes over F_p with the projective-style
// model structure: cofibrations are degreewise injections, fibrations are
// degreewise surjections, weak equivalences are quasi-isomorphisms.
// Everything is exact linear algebra, which is what makes this category a
// usable oracle for the Reedy machinery built on top of it.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reedytk/linalg.hpp"
#include "reedytk/report.hpp"

namespace reedytk {

struct ChainComplex {
  uint32_t p = 2;
  std::map<int, int> dims;    // degree -> dimension (> 0 entries only)
  std::map<int, FpMat> d;     // d[n] : X_n -> X_{n-1}, shape dim(n-1) x dim(n)

  int dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  FpMat diff(int n) const {
    auto it = d.find(n);
    if (it != d.end()) return it->second;
    return FpMat(p, dim(n - 1), dim(n));
  }
  int min_deg() const { return dims.empty() ? 0 : dims.begin()->first; }
  int max_deg() const { return dims.empty() ? -1 : dims.rbegin()->first; }
  bool is_zero() const { return dims.empty(); }

  void normalize() {
    for (auto it = dims.begin(); it != dims.end();)
      it = it->second == 0 ? dims.erase(it) : std::next(it);
    for (auto it = d.begin(); it != d.end();) {
      bool keep = dim(it->first) > 0 && dim(it->first - 1) > 0 && !it->second.is_zero();
      it = keep ? std::next(it) : d.erase(it);
    }
  }
};

inline bool complex_equal(const ChainComplex& X, const ChainComplex& Y) {
  if (X.p != Y.p) return false;
  std::set<int> degs;
  for (auto& [n, k] : X.dims) degs.insert(n);
  for (auto& [n, k] : Y.dims) degs.insert(n);
  for (int n : degs) {
    if (X.dim(n) != Y.dim(n)) return false;
    if (!(X.diff(n) == Y.diff(n))) return false;
  }
  return true;
}

inline ValidationReport validate_complex(const ChainComplex& X) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  if (!is_prime_u32(X.p)) flag("p not prime", {std::to_string(X.p)});
  for (auto& [n, k] : X.dims)
    if (k < 0) flag("negative dimension", {std::to_string(n)});
  for (auto& [n, m] : X.d) {
    if (m.p != X.p) flag("field mismatch in differential", {std::to_string(n)});
    if (m.rows != X.dim(n - 1) || m.cols != X.dim(n))
      flag("differential shape", {std::to_string(n)});
  }
  if (!rep.ok()) return rep;
  for (auto& [n, k] : X.dims) {
    if (X.dim(n) > 0 && X.dim(n - 1) > 0 && X.dim(n - 2) > 0) {
      if (!mat_mul(X.diff(n - 1), X.diff(n)).is_zero())
        flag("d o d != 0", {std::to_string(n)});
    }
  }
  return rep;
}

struct ChainMap {
  ChainComplex src;
  ChainComplex dst;
  std::map<int, FpMat> comp;  // comp[n] : src_n -> dst_n

  FpMat at(int n) const {
    auto it = comp.find(n);
    if (it != comp.end()) return it->second;
    return FpMat(src.p, dst.dim(n), src.dim(n));
  }
  void normalize() {
    for (auto it = comp.begin(); it != comp.end();) {
      bool keep = src.dim(it->first) > 0 && dst.dim(it->first) > 0 && !it->second.is_zero();
      it = keep ? std::next(it) : comp.erase(it);
    }
  }
};

inline bool map_equal(const ChainMap& f, const ChainMap& g) {
  if (!complex_equal(f.src, g.src) || !complex_equal(f.dst, g.dst)) return false;
  std::set<int> degs;
  for (auto& [n, m] : f.comp) degs.insert(n);
  for (auto& [n, m] : g.comp) degs.insert(n);
  for (int n : degs)
    if (!(f.at(n) == g.at(n))) return false;
  return true;
}

inline ValidationReport validate_map(const ChainMap& f) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  if (f.src.p != f.dst.p) flag("field mismatch", {});
  for (auto& [n, m] : f.comp)
    if (m.rows != f.dst.dim(n) || m.cols != f.src.dim(n))
      flag("component shape", {std::to_string(n)});
  if (!rep.ok()) return rep;
  int lo = std::min(f.src.min_deg(), f.dst.min_deg());
  int hi = std::max(f.src.max_deg(), f.dst.max_deg());
  for (int n = lo; n <= hi; ++n) {
    FpMat a = mat_mul(f.dst.diff(n), f.at(n));
    FpMat b = mat_mul(f.at(n - 1), f.src.diff(n));
    if (!(a == b)) flag("does not commute with d", {std::to_string(n)});
  }
  return rep;
}

// -------- basic builders --------

inline ChainComplex zero_complex(uint32_t p) {
  ChainComplex X;
  X.p = p;
  return X;
}

inline ChainComplex sphere(uint32_t p, int n, int dim = 1) {
  ChainComplex X;
  X.p = p;
  if (dim > 0) X.dims[n] = dim;
  return X;
}

inline ChainComplex unit_complex(uint32_t p) { return sphere(p, 0); }

inline ChainComplex disc(uint32_t p, int n) {
  // F_p in degrees n and n-1 with identity differential; contractible
  ChainComplex X;
  X.p = p;
  X.dims[n] = 1;
  X.dims[n - 1] = 1;
  X.d[n] = FpMat::identity(p, 1);
  return X;
}

inline ChainMap identity_map(const ChainComplex& X) {
  ChainMap f;
  f.src = X;
  f.dst = X;
  for (auto& [n, k] : X.dims) f.comp[n] = FpMat::identity(X.p, k);
  return f;
}

inline ChainMap zero_map(const ChainComplex& X, const ChainComplex& Y) {
  ChainMap f;
  f.src = X;
  f.dst = Y;
  return f;
}

inline ChainMap compose_maps(const ChainMap& g, const ChainMap& f) {
  ChainMap h;
  h.src = f.src;
  h.dst = g.dst;
  for (auto& [n, k] : f.src.dims) {
    if (g.dst.dim(n) == 0) continue;
    FpMat m = mat_mul(g.at(n), f.at(n));
    if (!m.is_zero()) h.comp[n] = m;
  }
  return h;
}

inline ChainMap map_add(const ChainMap& f, const ChainMap& g) {
  ChainMap h = f;
  for (auto& [n, k] : f.src.dims) {
    if (f.dst.dim(n) == 0) continue;
    h.comp[n] = reedytk::mat_add(f.at(n), g.at(n));
  }
  h.normalize();
  return h;
}

inline ChainComplex direct_sum(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex S;
  S.p = X.p;
  std::set<int> degs;
  for (auto& [n, k] : X.dims) degs.insert(n);
  for (auto& [n, k] : Y.dims) degs.insert(n);
  for (int n : degs) S.dims[n] = X.dim(n) + Y.dim(n);
  for (int n : degs) {
    int r = S.dim(n - 1), c = S.dim(n);
    if (r == 0 || c == 0) continue;
    FpMat D(S.p, r, c);
    put_block(D, 0, 0, X.diff(n));
    put_block(D, X.dim(n - 1), X.dim(n), Y.diff(n));
    if (!D.is_zero()) S.d[n] = D;
  }
  S.normalize();
  return S;
}

inline ChainMap sum_inclusion_left(const ChainComplex& X, const ChainComplex& Y) {
  ChainMap f;
  f.src = X;
  f.dst = direct_sum(X, Y);
  for (auto& [n, k] : X.dims) {
    FpMat m(X.p, f.dst.dim(n), k);
    put_block(m, 0, 0, FpMat::identity(X.p, k));
    f.comp[n] = m;
  }
  return f;
}

inline ChainMap sum_inclusion_right(const ChainComplex& X, const ChainComplex& Y) {
  ChainMap f;
  f.src = Y;
  f.dst = direct_sum(X, Y);
  for (auto& [n, k] : Y.dims) {
    FpMat m(Y.p, f.dst.dim(n), k);
    put_block(m, X.dim(n), 0, FpMat::identity(Y.p, k));
    f.comp[n] = m;
  }
  return f;
}

inline ChainComplex shift(const ChainComplex& X, int k) {
  // (X[k])_n = X_{n-k}, differential scaled by (-1)^k
  ChainComplex S;
  S.p = X.p;
  for (auto& [n, dm] : X.dims) S.dims[n + k] = dm;
  uint32_t sign = (k % 2 == 0) ? 1 : X.p - 1;
  for (auto& [n, m] : X.d) S.d[n + k] = mat_scale(m, sign);
  S.normalize();
  return S;
}

inline ChainComplex dual_complex(const ChainComplex& X) {
  ChainComplex D;
  D.p = X.p;
  for (auto& [n, k] : X.dims) D.dims[-n] = k;
  // d^dual_{-n+1} : (X_{-(-n+1)})^* = X_{n-1}^* -> X_n^* is d_n transposed
  for (auto& [n, m] : X.d) D.d[-n + 1] = transpose(m);
  D.normalize();
  return D;
}

inline ChainMap dual_map(const ChainMap& f) {
  ChainMap g;
  g.src = dual_complex(f.dst);
  g.dst = dual_complex(f.src);
  for (auto& [n, m] : f.comp) g.comp[-n] = transpose(m);
  g.normalize();
  return g;
}

// -------- homology and classification --------

inline std::map<int, int> homology_dims(const ChainComplex& X) {
  std::map<int, int> H;
  if (X.dims.empty()) return H;
  for (int n = X.min_deg(); n <= X.max_deg(); ++n) {
    if (X.dim(n) == 0) continue;
    int z = X.dim(n) - rank(X.diff(n));
    int b = rank(X.diff(n + 1));
    if (z - b != 0) H[n] = z - b;
  }
  return H;
}

inline bool is_acyclic(const ChainComplex& X) { return homology_dims(X).empty(); }

inline ChainComplex cone(const ChainMap& f) {
  // C_n = X_{n-1} + Y_n,  d(x,y) = (-dx, dy - f(x));  acyclic iff f is a
  // quasi-isomorphism
  const ChainComplex &X = f.src, &Y = f.dst;
  ChainComplex C;
  C.p = X.p;
  std::set<int> degs;
  for (auto& [n, k] : X.dims) degs.insert(n + 1);
  for (auto& [n, k] : Y.dims) degs.insert(n);
  for (int n : degs) {
    int k = X.dim(n - 1) + Y.dim(n);
    if (k) C.dims[n] = k;
  }
  for (int n : degs) {
    int r = X.dim(n - 2) + Y.dim(n - 1), c = X.dim(n - 1) + Y.dim(n);
    if (!r || !c) continue;
    FpMat D(C.p, r, c);
    put_block(D, 0, 0, mat_neg(X.diff(n - 1)));
    put_block(D, X.dim(n - 2), 0, mat_neg(f.at(n - 1)));
    put_block(D, X.dim(n - 2), X.dim(n - 1), Y.diff(n));
    if (!D.is_zero()) C.d[n] = D;
  }
  C.normalize();
  return C;
}

struct ChainMapClass {
  bool cofibration = false;       // degreewise injective
  bool fibration = false;         // degreewise surjective
  bool weak_equivalence = false;  // quasi-isomorphism
  bool trivial_cofibration() const { return cofibration && weak_equivalence; }
  bool trivial_fibration() const { return fibration && weak_equivalence; }
  bool isomorphism() const { return cofibration && fibration; }
};

inline bool induced_homology_iso(const ChainMap& f) {
  const ChainComplex &X = f.src, &Y = f.dst;
  int lo = std::min(X.dims.empty() ? 0 : X.min_deg(), Y.dims.empty() ? 0 : Y.min_deg());
  int hi = std::max(X.dims.empty() ? -1 : X.max_deg(), Y.dims.empty() ? -1 : Y.max_deg());
  for (int n = lo; n <= hi; ++n) {
    int hx, hy, r;
    {
      int z = X.dim(n) - rank(X.diff(n));
      hx = z - rank(X.diff(n + 1));
    }
    {
      int z = Y.dim(n) - rank(Y.diff(n));
      hy = z - rank(Y.diff(n + 1));
    }
    if (X.dim(n) == 0) {
      r = 0;
    } else {
      FpMat ZX = nullspace(X.diff(n));
      FpMat fZ = Y.dim(n) ? mat_mul(f.at(n), ZX) : FpMat(X.p, 0, ZX.cols);
      FpMat BY = Y.diff(n + 1);
      int rb = rank(BY);
      if (Y.dim(n) == 0)
        r = 0;
      else
        r = rank(hstack(fZ, BY)) - rb;
    }
    if (!(r == hx && r == hy)) return false;
  }
  return true;
}

inline ChainMapClass classify_map(const ChainMap& f) {
  ChainMapClass cl;
  cl.cofibration = true;
  cl.fibration = true;
  std::set<int> degs;
  for (auto& [n, k] : f.src.dims) degs.insert(n);
  for (auto& [n, k] : f.dst.dims) degs.insert(n);
  for (int n : degs) {
    int r = f.src.dim(n) ? (f.dst.dim(n) ? rank(f.at(n)) : 0) : 0;
    if (r != f.src.dim(n)) cl.cofibration = false;
    if (r != f.dst.dim(n)) cl.fibration = false;
  }
  cl.weak_equivalence = induced_homology_iso(f);
  return cl;
}

inline bool is_iso_map(const ChainMap& f) {
  auto cl = classify_map(f);
  return cl.cofibration && cl.fibration;
}

// Over a field, the iso class of a complex is (dims, homology dims).
inline bool complexes_abstractly_iso(const ChainComplex& X, const ChainComplex& Y) {
  if (X.p != Y.p) return false;
  std::map<int, int> dx, dy;
  for (auto& [n, k] : X.dims)
    if (k) dx[n] = k;
  for (auto& [n, k] : Y.dims)
    if (k) dy[n] = k;
  return dx == dy && homology_dims(X) == homology_dims(Y);
}

// -------- kernel / cokernel subobjects --------

struct SubcomplexData {
  ChainComplex sub;
  std::map<int, FpMat> incl;  // incl[n] : sub_n -> ambient_n (columns a basis)
};

// Subcomplex cut out by per-degree constraint matrices C_n (rows x dim(n));
// caller guarantees d(ker C) is contained in ker C.
inline SubcomplexData kernel_subcomplex(const ChainComplex& X,
                                        const std::map<int, FpMat>& constraints) {
  SubcomplexData S;
  S.sub.p = X.p;
  for (auto& [n, k] : X.dims) {
    auto it = constraints.find(n);
    FpMat kappa = (it == constraints.end()) ? FpMat::identity(X.p, k) : nullspace(it->second);
    if (kappa.cols) {
      S.sub.dims[n] = kappa.cols;
      S.incl[n] = kappa;
    }
  }
  for (auto& [n, k] : S.sub.dims) {
    if (X.dim(n - 1) == 0) continue;
    FpMat dk = mat_mul(X.diff(n), S.incl.at(n));
    if (S.sub.dim(n - 1) == 0) {
      if (!dk.is_zero()) throw std::logic_error("kernel_subcomplex: not closed under d");
      continue;
    }
    auto sol = solve(S.incl.at(n - 1), dk);
    if (!sol) throw std::logic_error("kernel_subcomplex: not closed under d");
    if (!(mat_mul(S.incl.at(n - 1), *sol) == dk))
      throw std::logic_error("kernel_subcomplex: not closed under d");
    if (!sol->is_zero()) S.sub.d[n] = *sol;
  }
  S.sub.normalize();
  return S;
}

struct QuotientComplexData {
  ChainComplex quot;
  std::map<int, FpMat> proj;  // quot_n <- ambient_n
  std::map<int, FpMat> sect;  // ambient_n <- quot_n, proj o sect = id
};

// Quotient by per-degree relation columns R_n (dim(n) x anything); caller
// guarantees d(im R) is contained in im R.
inline QuotientComplexData cokernel_complex(const ChainComplex& X,
                                            const std::map<int, FpMat>& relations) {
  QuotientComplexData Q;
  Q.quot.p = X.p;
  for (auto& [n, k] : X.dims) {
    auto it = relations.find(n);
    FpMat R = (it == relations.end()) ? FpMat(X.p, k, 0) : it->second;
    QuotientData qd = quotient_by_columns(R);
    if (qd.proj.rows) {
      Q.quot.dims[n] = qd.proj.rows;
      Q.proj[n] = qd.proj;
      Q.sect[n] = qd.sect;
    }
  }
  // well-definedness: the image of each relation block must die one degree
  // down, i.e. proj_{n-1} d R_n == 0, including when degree n itself vanishes
  for (auto& [n, R] : relations) {
    if (R.cols == 0 || X.dim(n) == 0 || X.dim(n - 1) == 0) continue;
    auto pr = Q.proj.find(n - 1);
    if (pr == Q.proj.end()) continue;  // everything below is killed anyway
    FpMat chk = mat_mul(pr->second, mat_mul(X.diff(n), R));
    if (!chk.is_zero()) throw std::logic_error("cokernel_complex: relations not d-closed");
  }
  for (auto& [n, k] : Q.quot.dims) {
    if (Q.quot.dim(n - 1) == 0) continue;
    FpMat dq = mat_mul(Q.proj.at(n - 1), mat_mul(X.diff(n), Q.sect.at(n)));
    if (!dq.is_zero()) Q.quot.d[n] = dq;
  }
  Q.quot.normalize();
  return Q;
}

// -------- pushout / pullback --------

struct PushoutData {
  ChainComplex obj;
  ChainMap from_first;   // Y -> P
  ChainMap from_second;  // Z -> P
  std::map<int, FpMat> proj, sect;  // against ambient Y + Z
};

// Pushout of Y <-f- X -g-> Z.
inline PushoutData pushout(const ChainMap& f, const ChainMap& g) {
  if (!complex_equal(f.src, g.src)) throw std::invalid_argument("pushout: sources differ");
  const ChainComplex &X = f.src, &Y = f.dst, &Z = g.dst;
  ChainComplex amb = direct_sum(Y, Z);
  std::map<int, FpMat> rel;
  for (auto& [n, k] : X.dims) {
    if (amb.dim(n) == 0) continue;
    FpMat R(X.p, amb.dim(n), k);
    put_block(R, 0, 0, f.at(n));
    put_block(R, Y.dim(n), 0, mat_neg(g.at(n)));
    rel[n] = R;
  }
  QuotientComplexData q = cokernel_complex(amb, rel);
  PushoutData P;
  P.obj = q.quot;
  P.proj = q.proj;
  P.sect = q.sect;
  P.from_first.src = Y;
  P.from_first.dst = P.obj;
  P.from_second.src = Z;
  P.from_second.dst = P.obj;
  for (auto& [n, pr] : q.proj) {
    if (Y.dim(n)) P.from_first.comp[n] = block(pr, 0, 0, pr.rows, Y.dim(n));
    if (Z.dim(n)) P.from_second.comp[n] = block(pr, 0, Y.dim(n), pr.rows, Z.dim(n));
  }
  P.from_first.normalize();
  P.from_second.normalize();
  return P;
}

// Mediating map out of a pushout for a commuting cocone (u: Y -> T, v: Z -> T).
inline ChainMap factor_pushout(const PushoutData& P, const ChainMap& u, const ChainMap& v) {
  ChainMap h;
  h.src = P.obj;
  h.dst = u.dst;
  for (auto& [n, k] : P.obj.dims) {
    int dy = P.from_first.src.dim(n), dz = P.from_second.src.dim(n);
    FpMat legs(P.obj.p, u.dst.dim(n), dy + dz);
    if (u.dst.dim(n)) {
      if (dy) put_block(legs, 0, 0, u.at(n));
      if (dz) put_block(legs, 0, dy, v.at(n));
      FpMat m = mat_mul(legs, P.sect.at(n));
      if (!m.is_zero()) h.comp[n] = m;
    }
  }
  // mediation is only valid if the cocone coequalizes; verify
  if (!map_equal(compose_maps(h, P.from_first), u) ||
      !map_equal(compose_maps(h, P.from_second), v))
    throw std::invalid_argument("factor_pushout: cocone does not commute");
  return h;
}

struct PullbackData {
  ChainComplex obj;
  ChainMap to_first;   // P -> Y
  ChainMap to_second;  // P -> Z
  std::map<int, FpMat> incl;  // into ambient Y + Z
};

// Pullback of Y -f-> B <-g- Z.
inline PullbackData pullback(const ChainMap& f, const ChainMap& g) {
  if (!complex_equal(f.dst, g.dst)) throw std::invalid_argument("pullback: targets differ");
  const ChainComplex &Y = f.src, &Z = g.src, &B = f.dst;
  ChainComplex amb = direct_sum(Y, Z);
  std::map<int, FpMat> cons;
  for (auto& [n, k] : B.dims) {
    if (amb.dim(n) == 0) continue;
    FpMat C(B.p, k, amb.dim(n));
    if (Y.dim(n)) put_block(C, 0, 0, f.at(n));
    if (Z.dim(n)) put_block(C, 0, Y.dim(n), mat_neg(g.at(n)));
    cons[n] = C;
  }
  SubcomplexData s = kernel_subcomplex(amb, cons);
  PullbackData P;
  P.obj = s.sub;
  P.incl = s.incl;
  P.to_first.src = P.obj;
  P.to_first.dst = Y;
  P.to_second.src = P.obj;
  P.to_second.dst = Z;
  for (auto& [n, inc] : s.incl) {
    if (Y.dim(n)) {
      FpMat m = block(inc, 0, 0, Y.dim(n), inc.cols);
      if (!m.is_zero()) P.to_first.comp[n] = m;
    }
    if (Z.dim(n)) {
      FpMat m = block(inc, Y.dim(n), 0, Z.dim(n), inc.cols);
      if (!m.is_zero()) P.to_second.comp[n] = m;
    }
  }
  return P;
}

// Mediating map into a pullback for a commuting cone (u: T -> Y, v: T -> Z).
inline ChainMap factor_pullback(const PullbackData& P, const ChainMap& u, const ChainMap& v) {
  ChainMap h;
  h.src = u.src;
  h.dst = P.obj;
  for (auto& [n, k] : u.src.dims) {
    if (P.obj.dim(n) == 0) {
      continue;
    }
    int dy = P.to_first.dst.dim(n), dz = P.to_second.dst.dim(n);
    FpMat stacked(P.obj.p, dy + dz, k);
    if (dy) put_block(stacked, 0, 0, u.at(n));
    if (dz) put_block(stacked, dy, 0, v.at(n));
    auto sol = solve(P.incl.at(n), stacked);
    if (!sol || !(mat_mul(P.incl.at(n), *sol) == stacked))
      throw std::invalid_argument("factor_pullback: cone does not land in pullback");
    if (!sol->is_zero()) h.comp[n] = *sol;
  }
  if (!map_equal(compose_maps(P.to_first, h), u) ||
      !map_equal(compose_maps(P.to_second, h), v))
    throw std::invalid_argument("factor_pullback: cone does not commute");
  return h;
}

// -------- tensor / hom / copower --------

struct GradedLayout {
  // blocks at a fixed total degree: (first-factor degree, block size)
  std::vector<std::pair<int, int>> blocks;
  int total = 0;
  int offset_of(int i) const {
    int off = 0;
    for (auto& [j, sz] : blocks) {
      if (j == i) return off;
      off += sz;
    }
    return -1;
  }
};

inline GradedLayout tensor_layout(const ChainComplex& X, const ChainComplex& Y, int n) {
  GradedLayout L;
  for (auto& [i, dx] : X.dims) {
    int dy = Y.dim(n - i);
    if (dx && dy) {
      L.blocks.push_back({i, dx * dy});
      L.total += dx * dy;
    }
  }
  return L;
}

// (X ox Y)_n = sum_{i+j=n} X_i ox Y_j; within a block index = a*dimY + b.
inline ChainComplex tensor_complex(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex T;
  T.p = X.p;
  if (X.dims.empty() || Y.dims.empty()) return T;
  int lo = X.min_deg() + Y.min_deg(), hi = X.max_deg() + Y.max_deg();
  for (int n = lo; n <= hi; ++n) {
    int t = tensor_layout(X, Y, n).total;
    if (t) T.dims[n] = t;
  }
  for (int n = lo; n <= hi; ++n) {
    GradedLayout Ln = tensor_layout(X, Y, n), Lm = tensor_layout(X, Y, n - 1);
    if (!Ln.total || !Lm.total) continue;
    FpMat D(T.p, Lm.total, Ln.total);
    for (auto& [i, sz] : Ln.blocks) {
      int dx = X.dim(i), dy = Y.dim(n - i);
      int src_off = Ln.offset_of(i);
      // d_X ox id : block i -> block i-1
      if (X.dim(i - 1) && Lm.offset_of(i - 1) >= 0) {
        FpMat dX = X.diff(i);
        int dst_off = Lm.offset_of(i - 1);
        for (int a = 0; a < dx; ++a)
          for (int a2 = 0; a2 < X.dim(i - 1); ++a2) {
            uint32_t v = dX.at(a2, a);
            if (!v) continue;
            for (int b = 0; b < dy; ++b)
              D.set(dst_off + a2 * dy + b, src_off + a * dy + b,
                    (D.at(dst_off + a2 * dy + b, src_off + a * dy + b) + v) % T.p);
          }
      }
      // (-1)^i id ox d_Y : block i -> block i
      if (Y.dim(n - i - 1) && Lm.offset_of(i) >= 0) {
        FpMat dY = Y.diff(n - i);
        int dst_off = Lm.offset_of(i);
        uint32_t sign = (i % 2 == 0) ? 1 : T.p - 1;
        int dy2 = Y.dim(n - i - 1);
        for (int a = 0; a < dx; ++a)
          for (int b = 0; b < dy; ++b) {
            for (int b2 = 0; b2 < dy2; ++b2) {
              uint32_t v = (dY.at(b2, b) * sign) % T.p;
              if (!v) continue;
              D.set(dst_off + a * dy2 + b2, src_off + a * dy + b,
                    (D.at(dst_off + a * dy2 + b2, src_off + a * dy + b) + v) % T.p);
            }
          }
      }
    }
    if (!D.is_zero()) T.d[n] = D;
  }
  T.normalize();
  return T;
}

// f ox g for degree-0 chain maps (no Koszul signs arise).
inline ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
  ChainMap h;
  h.src = tensor_complex(f.src, g.src);
  h.dst = tensor_complex(f.dst, g.dst);
  for (auto& [n, k] : h.src.dims) {
    if (h.dst.dim(n) == 0) continue;
    GradedLayout Ls = tensor_layout(f.src, g.src, n), Ld = tensor_layout(f.dst, g.dst, n);
    FpMat M(h.src.p, Ld.total, Ls.total);
    for (auto& [i, sz] : Ls.blocks) {
      int dst_off = Ld.offset_of(i);
      if (dst_off < 0) continue;
      int sxa = f.src.dim(i), sxb = g.src.dim(n - i);
      int dxa = f.dst.dim(i), dxb = g.dst.dim(n - i);
      if (!dxa || !dxb) continue;
      FpMat F = f.at(i), G = g.at(n - i);
      int src_off = Ls.offset_of(i);
      for (int a = 0; a < sxa; ++a)
        for (int a2 = 0; a2 < dxa; ++a2) {
          uint32_t v1 = F.at(a2, a);
          if (!v1) continue;
          for (int b = 0; b < sxb; ++b)
            for (int b2 = 0; b2 < dxb; ++b2) {
              uint32_t v = (v1 * G.at(b2, b)) % h.src.p;
              if (!v) continue;
              int rr = dst_off + a2 * dxb + b2, cc = src_off + a * sxb + b;
              M.set(rr, cc, (M.at(rr, cc) + v) % h.src.p);
            }
        }
    }
    if (!M.is_zero()) h.comp[n] = M;
  }
  return h;
}

// The symmetry X ox Y -> Y ox X: basis vector (a,b) in degree (i, n-i) is sent
// to (b,a) with the Koszul sign (-1)^{i(n-i)}.
inline ChainMap braid_map(const ChainComplex& X, const ChainComplex& Y) {
  ChainMap t;
  t.src = tensor_complex(X, Y);
  t.dst = tensor_complex(Y, X);
  for (auto& [n, total] : t.src.dims) {
    if (!total) continue;
    FpMat M(t.src.p, t.dst.dim(n), total);
    GradedLayout Ls = tensor_layout(X, Y, n), Ld = tensor_layout(Y, X, n);
    for (auto& [i, sz] : Ls.blocks) {
      int dx = X.dim(i), dy = Y.dim(n - i);
      int src_off = Ls.offset_of(i), dst_off = Ld.offset_of(n - i);
      uint32_t sgn = (i % 2 != 0 && (n - i) % 2 != 0) ? X.p - 1 : 1;
      for (int a = 0; a < dx; ++a)
        for (int b = 0; b < dy; ++b)
          M.set(dst_off + b * dx + a, src_off + a * dy + b, sgn);
    }
    if (!M.is_zero()) t.comp[n] = M;
  }
  return t;
}

// The associativity isomorphism (X ox Y) ox Z -> X ox (Y ox Z): basis vector
// ((a,b),c) with degrees (i,j,k) is sent to (a,(b,c)).  No signs arise; the two
// flattenings differ only by the basis permutation this map encodes (the left
// side groups by the combined degree i+j, the right side by the X-factor).
inline ChainMap associator_map(const ChainComplex& X, const ChainComplex& Y,
                               const ChainComplex& Z) {
  ChainComplex XY = tensor_complex(X, Y), YZ = tensor_complex(Y, Z);
  ChainMap t;
  t.src = tensor_complex(XY, Z);
  t.dst = tensor_complex(X, YZ);
  for (auto& [n, total] : t.src.dims) {
    if (!total) continue;
    FpMat M(t.src.p, t.dst.dim(n), total);
    GradedLayout Ls = tensor_layout(XY, Z, n), Ld = tensor_layout(X, YZ, n);
    for (auto& [m, szm] : Ls.blocks) {
      (void)szm;
      int src_base = Ls.offset_of(m), k = n - m, dz = Z.dim(k);
      GradedLayout Lxy = tensor_layout(X, Y, m);
      for (auto& [i, szi] : Lxy.blocks) {
        (void)szi;
        int j = m - i, dxi = X.dim(i), dyj = Y.dim(j);
        int xy_off = Lxy.offset_of(i);
        int dst_base = Ld.offset_of(i), dyz = YZ.dim(n - i);
        int yz_off = tensor_layout(Y, Z, n - i).offset_of(j);
        for (int a = 0; a < dxi; ++a)
          for (int b = 0; b < dyj; ++b)
            for (int c = 0; c < dz; ++c)
              M.set(dst_base + a * dyz + yz_off + b * dz + c,
                    src_base + (xy_off + a * dyj + b) * dz + c, 1);
      }
    }
    if (!M.is_zero()) t.comp[n] = M;
  }
  return t;
}

inline GradedLayout hom_layout(const ChainComplex& X, const ChainComplex& Y, int n) {
  // block i: maps X_i -> Y_{i+n}; index = u*dimX_i + v (matrix row-major)
  GradedLayout L;
  for (auto& [i, dx] : X.dims) {
    int dy = Y.dim(i + n);
    if (dx && dy) {
      L.blocks.push_back({i, dx * dy});
      L.total += dx * dy;
    }
  }
  return L;
}

// Hom(X,Y)_n = prod_i Hom(X_i, Y_{i+n});  (d phi) = d_Y phi - (-1)^n phi d_X.
// Degree-0 cycles are exactly the chain maps.
inline ChainComplex hom_complex(const ChainComplex& X, const ChainComplex& Y) {
  ChainComplex H;
  H.p = X.p;
  if (X.dims.empty() || Y.dims.empty()) return H;
  int lo = Y.min_deg() - X.max_deg(), hi = Y.max_deg() - X.min_deg();
  for (int n = lo; n <= hi; ++n) {
    int t = hom_layout(X, Y, n).total;
    if (t) H.dims[n] = t;
  }
  for (int n = lo; n <= hi; ++n) {
    GradedLayout Ln = hom_layout(X, Y, n), Lm = hom_layout(X, Y, n - 1);
    if (!Ln.total || !Lm.total) continue;
    FpMat D(H.p, Lm.total, Ln.total);
    uint32_t sign = (n % 2 == 0) ? H.p - 1 : 1;  // -(-1)^n
    for (auto& [i, sz] : Ln.blocks) {
      int dx = X.dim(i), dy = Y.dim(i + n);
      int src_off = Ln.offset_of(i);
      // d_Y o phi_i : lands in block i of degree n-1 (X_i -> Y_{i+n-1})
      if (Y.dim(i + n - 1) && Lm.offset_of(i) >= 0) {
        FpMat dY = Y.diff(i + n);
        int dst_off = Lm.offset_of(i);
        for (int u = 0; u < dy; ++u)
          for (int u2 = 0; u2 < Y.dim(i + n - 1); ++u2) {
            uint32_t v = dY.at(u2, u);
            if (!v) continue;
            for (int x = 0; x < dx; ++x)
              D.set(dst_off + u2 * dx + x, src_off + u * dx + x,
                    (D.at(dst_off + u2 * dx + x, src_off + u * dx + x) + v) % H.p);
          }
      }
      // -(-1)^n phi_{i} o d_X : block i of phi contributes to block i-1 rows
      if (X.dim(i + 1) && Lm.offset_of(i + 1) >= 0) {
        // phi_{i+1}?  No: phi_i precomposed with d_{i+1}: X_{i+1} -> Y_{i+n}
        FpMat dX = X.diff(i + 1);
        int dst_off = Lm.offset_of(i + 1);
        int dx1 = X.dim(i + 1);
        for (int u = 0; u < dy; ++u)
          for (int x = 0; x < dx; ++x)
            for (int x1 = 0; x1 < dx1; ++x1) {
              uint32_t v = (dX.at(x, x1) * sign) % H.p;
              if (!v) continue;
              int rr = dst_off + u * dx1 + x1, cc = src_off + u * dx + x;
              D.set(rr, cc, (D.at(rr, cc) + v) % H.p);
            }
      }
    }
    if (!D.is_zero()) H.d[n] = D;
  }
  H.normalize();
  return H;
}

inline ChainComplex copower(int count, const ChainComplex& X) {
  // count-fold direct sum; block s occupies [s*dim, (s+1)*dim)
  ChainComplex S;
  S.p = X.p;
  if (count <= 0) return S;
  for (auto& [n, k] : X.dims) S.dims[n] = k * count;
  for (auto& [n, m] : X.d) {
    FpMat D(S.p, m.rows * count, m.cols * count);
    for (int s = 0; s < count; ++s) put_block(D, s * m.rows, s * m.cols, m);
    S.d[n] = D;
  }
  S.normalize();
  return S;
}

// -------- chain map spaces and lifting --------

struct ChainMapSpace {
  std::vector<int> degrees;  // degrees carrying unknown blocks, ascending
  std::vector<BlockLinearSystem::Block> blocks;
  int dim = 0;
  std::vector<ChainMap> basis;
};

inline ChainMapSpace chain_map_space(const ChainComplex& X, const ChainComplex& Y) {
  BlockLinearSystem sys(X.p);
  std::map<int, int> block_of;
  std::vector<int> degs;
  for (auto& [n, k] : X.dims)
    if (Y.dim(n)) {
      block_of[n] = sys.add_block(Y.dim(n), X.dim(n));
      degs.push_back(n);
    }
  int lo = std::min(X.dims.empty() ? 0 : X.min_deg(), Y.dims.empty() ? 0 : Y.min_deg());
  int hi = std::max(X.dims.empty() ? -1 : X.max_deg(), Y.dims.empty() ? -1 : Y.max_deg());
  for (int n = lo; n <= hi + 1; ++n) {
    // d_Y f_n - f_{n-1} d_X = 0 : shape Y_{n-1} x X_n
    if (Y.dim(n - 1) == 0 || X.dim(n) == 0) continue;
    std::vector<BlockLinearSystem::Term> terms;
    if (block_of.count(n)) terms.push_back({block_of[n], Y.diff(n), std::nullopt, false});
    if (block_of.count(n - 1)) terms.push_back({block_of[n - 1], std::nullopt, X.diff(n), true});
    if (terms.empty()) continue;
    sys.add_equation(terms, FpMat(X.p, Y.dim(n - 1), X.dim(n)));
  }
  auto sol = sys.solve_full();
  ChainMapSpace out;
  out.degrees = degs;
  out.blocks = sys.blocks;
  out.dim = sol.null_basis.cols;
  for (int k = 0; k < sol.null_basis.cols; ++k) {
    std::vector<uint8_t> flat(sys.nvars);
    for (int i = 0; i < sys.nvars; ++i) flat[i] = sol.null_basis.at(i, k);
    ChainMap f;
    f.src = X;
    f.dst = Y;
    for (size_t bi = 0; bi < degs.size(); ++bi) {
      FpMat m = sys.block_of(flat, int(bi));
      if (!m.is_zero()) f.comp[degs[bi]] = m;
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

// Lift h for a commuting square  u: X -> E, v: Y -> B over i: X -> Y (left),
// q: E -> B (right):  h i = u,  q h = v,  d h = h d.
inline std::optional<ChainMap> solve_lifting(const ChainMap& i, const ChainMap& q,
                                             const ChainMap& u, const ChainMap& v) {
  const ChainComplex &X = i.src, &Y = i.dst, &E = q.src, &B = q.dst;
  if (!complex_equal(u.src, X) || !complex_equal(u.dst, E) || !complex_equal(v.src, Y) ||
      !complex_equal(v.dst, B))
    throw std::invalid_argument("solve_lifting: square shape mismatch");
  if (!map_equal(compose_maps(q, u), compose_maps(v, i)))
    throw std::invalid_argument("solve_lifting: square does not commute");
  BlockLinearSystem sys(X.p);
  std::map<int, int> block_of;
  std::vector<int> degs;
  for (auto& [n, k] : Y.dims)
    if (E.dim(n)) {
      block_of[n] = sys.add_block(E.dim(n), Y.dim(n));
      degs.push_back(n);
    }
  std::set<int> window;
  for (auto* C : {&X, &Y, &E, &B})
    for (auto& [n, k] : C->dims) {
      window.insert(n);
      window.insert(n + 1);
    }
  for (int n : window) {
    // h_n i_n = u_n
    if (X.dim(n) && E.dim(n)) {
      std::vector<BlockLinearSystem::Term> terms;
      if (block_of.count(n)) terms.push_back({block_of[n], std::nullopt, i.at(n), false});
      sys.add_equation(terms, u.at(n));
    }
    // q_n h_n = v_n
    if (Y.dim(n) && B.dim(n)) {
      std::vector<BlockLinearSystem::Term> terms;
      if (block_of.count(n)) terms.push_back({block_of[n], q.at(n), std::nullopt, false});
      sys.add_equation(terms, v.at(n));
    }
    // d_E h_n = h_{n-1} d_Y
    if (E.dim(n - 1) && Y.dim(n)) {
      std::vector<BlockLinearSystem::Term> terms;
      if (block_of.count(n)) terms.push_back({block_of[n], E.diff(n), std::nullopt, false});
      if (block_of.count(n - 1)) terms.push_back({block_of[n - 1], std::nullopt, Y.diff(n), true});
      if (!terms.empty()) sys.add_equation(terms, FpMat(X.p, E.dim(n - 1), Y.dim(n)));
    }
  }
  auto sol = sys.solve_full();
  if (!sol.consistent) return std::nullopt;
  ChainMap h;
  h.src = Y;
  h.dst = E;
  for (size_t bi = 0; bi < degs.size(); ++bi) {
    FpMat m = sys.block_of(sol.particular, int(bi));
    if (!m.is_zero()) h.comp[degs[bi]] = m;
  }
  return h;
}

// -------- factorizations --------

struct Factorization {
  ChainComplex mid;
  ChainMap first;   // X -> mid
  ChainMap second;  // mid -> Y, second o first = f
};

// Mapping cylinder: f = (trivial fibration) o (cofibration).
// Cyl_n = X_n + X_{n-1} + Y_n,  d(a,b,c) = (da - b, -db, dc + f(b)).
inline Factorization factor_cof_trivfib(const ChainMap& f) {
  const ChainComplex &X = f.src, &Y = f.dst;
  Factorization F;
  F.mid.p = X.p;
  std::set<int> degs;
  for (auto& [n, k] : X.dims) {
    degs.insert(n);
    degs.insert(n + 1);
  }
  for (auto& [n, k] : Y.dims) degs.insert(n);
  for (int n : degs) {
    int k = X.dim(n) + X.dim(n - 1) + Y.dim(n);
    if (k) F.mid.dims[n] = k;
  }
  for (int n : degs) {
    int r = F.mid.dim(n - 1), c = F.mid.dim(n);
    if (!r || !c) continue;
    FpMat D(X.p, r, c);
    int c_a = 0, c_b = X.dim(n), c_c = X.dim(n) + X.dim(n - 1);
    int r_a = 0, r_b = X.dim(n - 1), r_c = X.dim(n - 1) + X.dim(n - 2);
    if (X.dim(n) && X.dim(n - 1)) put_block(D, r_a, c_a, X.diff(n));
    if (X.dim(n - 1)) put_block(D, r_a, c_b, mat_neg(FpMat::identity(X.p, X.dim(n - 1))));
    if (X.dim(n - 1) && X.dim(n - 2)) put_block(D, r_b, c_b, mat_neg(X.diff(n - 1)));
    if (Y.dim(n) && Y.dim(n - 1)) put_block(D, r_c, c_c, Y.diff(n));
    if (X.dim(n - 1) && Y.dim(n - 1)) put_block(D, r_c, c_b, f.at(n - 1));
    if (!D.is_zero()) F.mid.d[n] = D;
  }
  F.mid.normalize();
  F.first.src = X;
  F.first.dst = F.mid;
  for (auto& [n, k] : X.dims) {
    FpMat m(X.p, F.mid.dim(n), k);
    put_block(m, 0, 0, FpMat::identity(X.p, k));
    F.first.comp[n] = m;
  }
  F.second.src = F.mid;
  F.second.dst = Y;
  for (auto& [n, k] : F.mid.dims) {
    if (!Y.dim(n)) continue;
    FpMat m(X.p, Y.dim(n), k);
    if (X.dim(n)) put_block(m, 0, 0, f.at(n));
    put_block(m, 0, X.dim(n) + X.dim(n - 1), FpMat::identity(X.p, Y.dim(n)));
    F.second.comp[n] = m;
  }
  F.first.normalize();
  F.second.normalize();
  return F;
}

// Mapping path space: f = (fibration) o (trivial cofibration).
// P_n = X_n + Y_n + Y_{n+1},  d(x,y,h) = (dx, dy, y - f(x) - dh).
inline Factorization factor_trivcof_fib(const ChainMap& f) {
  const ChainComplex &X = f.src, &Y = f.dst;
  Factorization F;
  F.mid.p = X.p;
  std::set<int> degs;
  for (auto& [n, k] : X.dims) degs.insert(n);
  for (auto& [n, k] : Y.dims) {
    degs.insert(n);
    degs.insert(n - 1);
  }
  for (int n : degs) {
    int k = X.dim(n) + Y.dim(n) + Y.dim(n + 1);
    if (k) F.mid.dims[n] = k;
  }
  for (int n : degs) {
    int r = F.mid.dim(n - 1), c = F.mid.dim(n);
    if (!r || !c) continue;
    FpMat D(X.p, r, c);
    int c_x = 0, c_y = X.dim(n), c_h = X.dim(n) + Y.dim(n);
    int r_x = 0, r_y = X.dim(n - 1), r_h = X.dim(n - 1) + Y.dim(n - 1);
    if (X.dim(n) && X.dim(n - 1)) put_block(D, r_x, c_x, X.diff(n));
    if (Y.dim(n) && Y.dim(n - 1)) put_block(D, r_y, c_y, Y.diff(n));
    if (Y.dim(n)) put_block(D, r_h, c_y, FpMat::identity(X.p, Y.dim(n)));
    if (X.dim(n) && Y.dim(n)) put_block(D, r_h, c_x, mat_neg(f.at(n)));
    if (Y.dim(n + 1) && Y.dim(n)) put_block(D, r_h, c_h, mat_neg(Y.diff(n + 1)));
    if (!D.is_zero()) F.mid.d[n] = D;
  }
  F.mid.normalize();
  F.first.src = X;
  F.first.dst = F.mid;
  for (auto& [n, k] : X.dims) {
    FpMat m(X.p, F.mid.dim(n), k);
    put_block(m, 0, 0, FpMat::identity(X.p, k));
    if (Y.dim(n)) put_block(m, X.dim(n), 0, f.at(n));
    F.first.comp[n] = m;
  }
  F.second.src = F.mid;
  F.second.dst = Y;
  for (auto& [n, k] : F.mid.dims) {
    if (!Y.dim(n)) continue;
    FpMat m(X.p, Y.dim(n), k);
    put_block(m, 0, X.dim(n), FpMat::identity(X.p, Y.dim(n)));
    F.second.comp[n] = m;
  }
  F.first.normalize();
  F.second.normalize();
  return F;
}

}  // namespace reedytk
