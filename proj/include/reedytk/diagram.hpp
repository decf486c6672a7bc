#pragma once

// Diagrams of chain complexes over a finite Reedy index.  A diagram is a
// functor (covariant) or presheaf (contravariant) into chain complexes over
// F_p; everything here is exact linear algebra: finite (co)limits,
// latching/matching objects with their canonical maps, the Reedy
// classification of diagram maps via relative latching/matching maps, Kan
// extensions along functors, copowers by set presheaves and their right
// adjoints, representable diagrams and their boundaries, generating corner
// maps, exterior and pointwise tensors, enriched hom complexes computed as
// ends, Day convolution, and a degreewise lifting solver.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reedytk/chain.hpp"
#include "reedytk/fibration.hpp"
#include "reedytk/presheaf.hpp"
#include "reedytk/reedy.hpp"
#include "reedytk/rng.hpp"

namespace reedytk {

// -------- diagrams and diagram maps --------

enum class Variance { covariant, presheaf };

struct Diagram {
  ReedyCategory index;
  Variance variance = Variance::presheaf;
  uint32_t p = 2;
  std::vector<ChainComplex> objects;  // per index object
  std::vector<ChainMap> maps;         // per index morphism
};

// Endpoints of a structure map: maps[m] always runs view_src -> view_dst.
inline int view_src(const Diagram& D, int m) {
  return D.variance == Variance::covariant ? D.index.cat.src(m) : D.index.cat.dst(m);
}
inline int view_dst(const Diagram& D, int m) {
  return D.variance == Variance::covariant ? D.index.cat.dst(m) : D.index.cat.src(m);
}

// The Reedy index a diagram is covariant over: presheaves over A are
// covariant diagrams over the opposite of A, with raising and lowering
// morphisms exchanged.  All latching/matching machinery routes through this.
inline ReedyCategory covariant_view(const Diagram& D) {
  return D.variance == Variance::covariant ? D.index : opposite_reedy(D.index);
}

inline ValidationReport validate_diagram(const Diagram& D) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  const FiniteCategory& c = D.index.cat;
  if (int(D.objects.size()) != c.n_obj() || int(D.maps.size()) != c.n_mor()) {
    flag("structure shape", {});
    return rep;
  }
  for (int o = 0; o < c.n_obj(); ++o) {
    if (!validate_complex(D.objects[o]).ok()) flag("invalid object complex", {c.objects[o]});
    if (D.objects[o].p != D.p) flag("field mismatch", {c.objects[o]});
  }
  for (int m = 0; m < c.n_mor(); ++m) {
    if (!validate_map(D.maps[m]).ok()) flag("invalid morphism map", {c.morphisms[m].id});
    if (!complex_equal(D.maps[m].src, D.objects[view_src(D, m)]) ||
        !complex_equal(D.maps[m].dst, D.objects[view_dst(D, m)]))
      flag("morphism endpoints", {c.morphisms[m].id});
  }
  if (!rep.ok()) return rep;
  for (int o = 0; o < c.n_obj(); ++o)
    if (!map_equal(D.maps[c.identity[o]], identity_map(D.objects[o])))
      flag("identity not preserved", {c.objects[o]});
  for (int f = 0; f < c.n_mor(); ++f)
    for (int g = 0; g < c.n_mor(); ++g) {
      if (c.dst(f) != c.src(g)) continue;
      int gf = c.compose(g, f);
      ChainMap want = D.variance == Variance::covariant
                          ? compose_maps(D.maps[g], D.maps[f])
                          : compose_maps(D.maps[f], D.maps[g]);
      if (!map_equal(D.maps[gf], want))
        flag("composition not preserved", {c.morphisms[g].id, c.morphisms[f].id});
    }
  return rep;
}

struct DiagramMap {
  Diagram src, dst;
  std::vector<ChainMap> comp;  // per index object
};

inline ValidationReport validate_diagram_map(const DiagramMap& phi) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  const FiniteCategory& c = phi.src.index.cat;
  if (phi.dst.index.cat.n_obj() != c.n_obj() || phi.dst.index.cat.n_mor() != c.n_mor() ||
      phi.src.variance != phi.dst.variance || phi.src.p != phi.dst.p) {
    flag("index mismatch", {});
    return rep;
  }
  if (int(phi.comp.size()) != c.n_obj()) {
    flag("structure shape", {});
    return rep;
  }
  for (int a = 0; a < c.n_obj(); ++a) {
    if (!validate_map(phi.comp[a]).ok()) flag("invalid component", {c.objects[a]});
    if (!complex_equal(phi.comp[a].src, phi.src.objects[a]) ||
        !complex_equal(phi.comp[a].dst, phi.dst.objects[a]))
      flag("component endpoints", {c.objects[a]});
  }
  if (!rep.ok()) return rep;
  for (int m = 0; m < c.n_mor(); ++m) {
    if (c.is_identity(m)) continue;
    int s = view_src(phi.src, m), t = view_dst(phi.src, m);
    if (!map_equal(compose_maps(phi.comp[t], phi.src.maps[m]),
                   compose_maps(phi.dst.maps[m], phi.comp[s])))
      flag("naturality square", {c.morphisms[m].id});
  }
  return rep;
}

// Largest per-degree dimension among all values of the diagram.
inline int max_value_dim(const Diagram& D) {
  int m = 0;
  for (const ChainComplex& X : D.objects)
    for (const auto& [n, d] : X.dims) m = std::max(m, d);
  return m;
}

inline bool diagram_map_equal(const DiagramMap& f, const DiagramMap& g) {
  if (f.comp.size() != g.comp.size()) return false;
  for (size_t a = 0; a < f.comp.size(); ++a)
    if (!map_equal(f.comp[a], g.comp[a])) return false;
  return true;
}

inline Diagram constant_diagram(const ReedyCategory& A, Variance v, const ChainComplex& X) {
  Diagram D;
  D.index = A;
  D.variance = v;
  D.p = X.p;
  D.objects.assign(size_t(A.cat.n_obj()), X);
  D.maps.assign(size_t(A.cat.n_mor()), identity_map(X));
  return D;
}

inline Diagram zero_diagram(const ReedyCategory& A, Variance v, uint32_t p) {
  return constant_diagram(A, v, zero_complex(p));
}

inline DiagramMap identity_diagram_map(const Diagram& X) {
  DiagramMap f;
  f.src = X;
  f.dst = X;
  for (const auto& o : X.objects) f.comp.push_back(identity_map(o));
  return f;
}

// The unique map from the zero diagram.
inline DiagramMap from_zero(const Diagram& X) {
  DiagramMap f;
  f.src = zero_diagram(X.index, X.variance, X.p);
  f.dst = X;
  for (const auto& o : X.objects) f.comp.push_back(zero_map(zero_complex(X.p), o));
  return f;
}

inline DiagramMap compose_diagram_maps(const DiagramMap& g, const DiagramMap& f) {
  DiagramMap h;
  h.src = f.src;
  h.dst = g.dst;
  for (size_t a = 0; a < f.comp.size(); ++a)
    h.comp.push_back(compose_maps(g.comp[a], f.comp[a]));
  return h;
}

// Linear duality over the same index: values and maps are dualized, and the
// variance flag flips.  Duality exchanges degreewise injections with
// surjections, hence latching data with matching data.
inline Diagram dual_diagram(const Diagram& D) {
  Diagram O;
  O.index = D.index;
  O.variance = D.variance == Variance::covariant ? Variance::presheaf : Variance::covariant;
  O.p = D.p;
  for (const auto& X : D.objects) O.objects.push_back(dual_complex(X));
  for (const auto& f : D.maps) O.maps.push_back(dual_map(f));
  return O;
}

inline DiagramMap dual_diagram_map(const DiagramMap& f) {
  DiagramMap o;
  o.src = dual_diagram(f.dst);
  o.dst = dual_diagram(f.src);
  for (const auto& c : f.comp) o.comp.push_back(dual_map(c));
  return o;
}

// The same values and maps presented over the opposite index with the
// variance flag flipped.  The opposite construction keeps object and
// morphism numbering, so this is an involution on the nose and preserves
// every latching/matching computation.
inline Diagram opposite_view(const Diagram& D) {
  Diagram O = D;
  O.index = opposite_reedy(D.index);
  O.variance = D.variance == Variance::covariant ? Variance::presheaf : Variance::covariant;
  return O;
}

inline DiagramMap opposite_view_map(const DiagramMap& f) {
  DiagramMap o = f;
  o.src = opposite_view(f.src);
  o.dst = opposite_view(f.dst);
  return o;
}

// A map of constant diagrams.
inline DiagramMap constant_diagram_map(const ReedyCategory& A, Variance v, const ChainMap& f) {
  DiagramMap phi;
  phi.src = constant_diagram(A, v, f.src);
  phi.dst = constant_diagram(A, v, f.dst);
  phi.comp.assign(size_t(A.cat.n_obj()), f);
  return phi;
}

// -------- finite colimits and limits --------

namespace detail {

// ordered direct sum of a family of complexes
inline ChainComplex family_sum(const std::vector<ChainComplex>& pieces, uint32_t p) {
  ChainComplex S;
  S.p = p;
  std::set<int> degs;
  for (const auto& X : pieces)
    for (const auto& [n, k] : X.dims) degs.insert(n);
  for (int n : degs) {
    int t = 0;
    for (const auto& X : pieces) t += X.dim(n);
    if (t) S.dims[n] = t;
  }
  for (int n : degs) {
    if (S.dim(n) == 0 || S.dim(n - 1) == 0) continue;
    FpMat D(p, S.dim(n - 1), S.dim(n));
    int ro = 0, co = 0;
    for (const auto& X : pieces) {
      if (X.dim(n) && X.dim(n - 1)) put_block(D, ro, co, X.diff(n));
      ro += X.dim(n - 1);
      co += X.dim(n);
    }
    if (!D.is_zero()) S.d[n] = D;
  }
  return S;
}

inline int family_offset(const std::vector<ChainComplex>& pieces, int upto, int n) {
  int off = 0;
  for (int i = 0; i < upto; ++i) off += pieces[size_t(i)].dim(n);
  return off;
}

inline void acc_entry(FpMat& M, int r, int c, uint32_t v) {
  if (v) M.set(r, c, (M.at(r, c) + v) % M.p);
}

}  // namespace detail

struct ColimitData {
  ChainComplex obj;
  std::vector<ChainMap> cocone;  // per shape object: piece -> obj
  std::vector<ChainComplex> pieces;
  ChainComplex amb;               // direct sum of the pieces
  std::map<int, FpMat> proj, sect;  // obj vs amb, proj o sect = id
};

// Colimit as the cokernel of  sum_{f} piece(src f) -> sum_a piece(a),
// x |-> f(x) at dst - x at src, over all non-identity shape morphisms.
inline ColimitData colimit_of(const FiniteCategory& C, const std::vector<ChainComplex>& pieces,
                              const std::vector<ChainMap>& maps, uint32_t p) {
  ColimitData out;
  out.pieces = pieces;
  out.amb = detail::family_sum(pieces, p);
  std::map<int, FpMat> rel;
  for (const auto& [n, k] : out.amb.dims) {
    std::optional<FpMat> R;
    for (int f = 0; f < C.n_mor(); ++f) {
      if (C.is_identity(f)) continue;
      int s = C.src(f), t = C.dst(f);
      int ds = pieces[size_t(s)].dim(n);
      if (!ds) continue;
      FpMat col(p, k, ds);
      FpMat img = maps[size_t(f)].at(n);
      int offs = detail::family_offset(pieces, s, n);
      int offt = detail::family_offset(pieces, t, n);
      for (int i = 0; i < img.rows; ++i)
        for (int j = 0; j < ds; ++j) detail::acc_entry(col, offt + i, j, img.at(i, j));
      for (int j = 0; j < ds; ++j) detail::acc_entry(col, offs + j, j, p - 1);
      R = R ? hstack(*R, col) : col;
    }
    if (R) rel[n] = *R;
  }
  QuotientComplexData q = cokernel_complex(out.amb, rel);
  out.obj = q.quot;
  out.obj.p = p;
  out.proj = q.proj;
  out.sect = q.sect;
  for (size_t a = 0; a < pieces.size(); ++a) {
    ChainMap f;
    f.src = pieces[a];
    f.dst = out.obj;
    for (const auto& [n, pr] : out.proj) {
      int d = pieces[a].dim(n);
      if (!d) continue;
      FpMat m = block(pr, 0, detail::family_offset(pieces, int(a), n), pr.rows, d);
      if (!m.is_zero()) f.comp[n] = m;
    }
    out.cocone.push_back(std::move(f));
  }
  return out;
}

// Mediating map out of a colimit for a cocone of legs into a target.
inline ChainMap colimit_factor(const ColimitData& S, const std::vector<ChainMap>& legs,
                               const ChainComplex& target) {
  ChainMap h;
  h.src = S.obj;
  h.dst = target;
  for (const auto& [n, k] : S.obj.dims) {
    if (!target.dim(n)) continue;
    FpMat big(target.p, target.dim(n), S.amb.dim(n));
    int co = 0;
    for (size_t a = 0; a < S.pieces.size(); ++a) {
      int d = S.pieces[a].dim(n);
      if (d) put_block(big, 0, co, legs[a].at(n));
      co += d;
    }
    FpMat m = mat_mul(big, S.sect.at(n));
    if (!m.is_zero()) h.comp[n] = m;
  }
  for (size_t a = 0; a < S.pieces.size(); ++a)
    if (!map_equal(compose_maps(h, S.cocone[a]), legs[a]))
      throw std::invalid_argument("colimit_factor: cocone does not commute");
  return h;
}

// Map between colimits over the same shape, induced by per-object components.
inline ChainMap colimit_induced(const ColimitData& S, const ColimitData& T,
                                const std::vector<ChainMap>& comps) {
  std::vector<ChainMap> legs;
  for (size_t o = 0; o < comps.size(); ++o)
    legs.push_back(compose_maps(T.cocone[o], comps[o]));
  return colimit_factor(S, legs, T.obj);
}

struct LimitData {
  ChainComplex obj;
  std::vector<ChainMap> cone;  // per shape object: obj -> piece
  std::vector<ChainComplex> pieces;
  ChainComplex amb;
  std::map<int, FpMat> incl;  // obj into amb
};

// Limit as the kernel of the compatibility constraints f(x_src) = x_dst
// inside the product of the pieces.
inline LimitData limit_of(const FiniteCategory& C, const std::vector<ChainComplex>& pieces,
                          const std::vector<ChainMap>& maps, uint32_t p) {
  LimitData out;
  out.pieces = pieces;
  out.amb = detail::family_sum(pieces, p);
  std::map<int, FpMat> cons;
  for (const auto& [n, k] : out.amb.dims) {
    std::optional<FpMat> Cm;
    for (int f = 0; f < C.n_mor(); ++f) {
      if (C.is_identity(f)) continue;
      int s = C.src(f), t = C.dst(f);
      int dt = pieces[size_t(t)].dim(n);
      if (!dt) continue;
      FpMat row(p, dt, k);
      FpMat img = maps[size_t(f)].at(n);
      int offs = detail::family_offset(pieces, s, n);
      int offt = detail::family_offset(pieces, t, n);
      for (int i = 0; i < dt; ++i)
        for (int j = 0; j < img.cols; ++j) detail::acc_entry(row, i, offs + j, img.at(i, j));
      for (int i = 0; i < dt; ++i) detail::acc_entry(row, i, offt + i, p - 1);
      Cm = Cm ? vstack(*Cm, row) : row;
    }
    if (Cm) cons[n] = *Cm;
  }
  SubcomplexData k2 = kernel_subcomplex(out.amb, cons);
  out.obj = k2.sub;
  out.obj.p = p;
  out.incl = k2.incl;
  for (size_t a = 0; a < pieces.size(); ++a) {
    ChainMap f;
    f.src = out.obj;
    f.dst = pieces[a];
    for (const auto& [n, inc] : out.incl) {
      int d = pieces[a].dim(n);
      if (!d || out.obj.dim(n) == 0) continue;
      FpMat m = block(inc, detail::family_offset(pieces, int(a), n), 0, d, inc.cols);
      if (!m.is_zero()) f.comp[n] = m;
    }
    out.cone.push_back(std::move(f));
  }
  return out;
}

// Mediating map into a limit for a cone of legs out of a source.
inline ChainMap limit_factor(const LimitData& L, const std::vector<ChainMap>& legs,
                             const ChainComplex& source) {
  ChainMap h;
  h.src = source;
  h.dst = L.obj;
  for (const auto& [n, k] : source.dims) {
    if (!k || L.amb.dim(n) == 0) continue;
    FpMat big(source.p, L.amb.dim(n), k);
    int ro = 0;
    for (size_t a = 0; a < L.pieces.size(); ++a) {
      int d = L.pieces[a].dim(n);
      if (d) put_block(big, ro, 0, legs[a].at(n));
      ro += d;
    }
    if (L.obj.dim(n) == 0) {
      if (!big.is_zero()) throw std::invalid_argument("limit_factor: cone does not commute");
      continue;
    }
    auto sol = solve(L.incl.at(n), big);
    if (!sol || !(mat_mul(L.incl.at(n), *sol) == big))
      throw std::invalid_argument("limit_factor: cone does not commute");
    if (!sol->is_zero()) h.comp[n] = *sol;
  }
  return h;
}

// Map between limits over the same shape, induced by per-object components.
inline ChainMap limit_induced(const LimitData& S, const LimitData& T,
                              const std::vector<ChainMap>& comps) {
  std::vector<ChainMap> legs;
  for (size_t o = 0; o < comps.size(); ++o) legs.push_back(compose_maps(comps[o], S.cone[o]));
  return limit_factor(T, legs, S.obj);
}

// (Co)limits of a whole diagram run over the covariant view, so presheaf
// structure maps are oriented correctly.
inline ColimitData diagram_colimit(const Diagram& D) {
  return colimit_of(covariant_view(D).cat, D.objects, D.maps, D.p);
}
inline LimitData diagram_limit(const Diagram& D) {
  return limit_of(covariant_view(D).cat, D.objects, D.maps, D.p);
}

// -------- latching and matching objects --------

struct LatchingData {
  BoundaryComma shape;  // objects (a, raising map a -> alpha) in the covariant view
  ColimitData colim;
  ChainMap to_value;  // canonical map into the value at alpha
};

inline LatchingData latching_object(const Diagram& X, int alpha) {
  ReedyCategory V = covariant_view(X);
  LatchingData L;
  L.shape = latching_category(V, alpha);
  std::vector<ChainComplex> pieces;
  std::vector<ChainMap> maps;
  for (const auto& [a, u] : L.shape.obj_parts) pieces.push_back(X.objects[size_t(a)]);
  for (int m = 0; m < L.shape.cat.n_mor(); ++m)
    maps.push_back(X.maps[size_t(L.shape.mor_base[size_t(m)])]);
  L.colim = colimit_of(L.shape.cat, pieces, maps, X.p);
  std::vector<ChainMap> legs;
  for (const auto& [a, u] : L.shape.obj_parts) legs.push_back(X.maps[size_t(u)]);
  L.to_value = colimit_factor(L.colim, legs, X.objects[size_t(alpha)]);
  return L;
}

struct MatchingData {
  BoundaryComma shape;  // objects (a, lowering map alpha -> a) in the covariant view
  LimitData lim;
  ChainMap from_value;  // canonical map from the value at alpha
};

inline MatchingData matching_object(const Diagram& X, int alpha) {
  ReedyCategory V = covariant_view(X);
  MatchingData M;
  M.shape = matching_category(V, alpha);
  std::vector<ChainComplex> pieces;
  std::vector<ChainMap> maps;
  for (const auto& [a, u] : M.shape.obj_parts) pieces.push_back(X.objects[size_t(a)]);
  for (int m = 0; m < M.shape.cat.n_mor(); ++m)
    maps.push_back(X.maps[size_t(M.shape.mor_base[size_t(m)])]);
  M.lim = limit_of(M.shape.cat, pieces, maps, X.p);
  std::vector<ChainMap> legs;
  for (const auto& [a, u] : M.shape.obj_parts) legs.push_back(X.maps[size_t(u)]);
  M.from_value = limit_factor(M.lim, legs, X.objects[size_t(alpha)]);
  return M;
}

// -------- Reedy classification --------

struct RelativeLatchingMap {
  LatchingData LX, LY;
  ChainMap induced;   // between the latching objects
  PushoutData corner;  // X_alpha glued with L_alpha Y along L_alpha X
  ChainMap map;        // corner -> Y_alpha
};

inline RelativeLatchingMap relative_latching_map(const DiagramMap& phi, int alpha) {
  RelativeLatchingMap R;
  R.LX = latching_object(phi.src, alpha);
  R.LY = latching_object(phi.dst, alpha);
  std::vector<ChainMap> comps;
  for (const auto& [a, u] : R.LX.shape.obj_parts) comps.push_back(phi.comp[size_t(a)]);
  R.induced = colimit_induced(R.LX.colim, R.LY.colim, comps);
  R.corner = pushout(R.LX.to_value, R.induced);
  R.map = factor_pushout(R.corner, phi.comp[size_t(alpha)], R.LY.to_value);
  return R;
}

struct RelativeMatchingMap {
  MatchingData MX, MY;
  ChainMap induced;     // between the matching objects
  PullbackData corner;  // Y_alpha pulled back with M^alpha X over M^alpha Y
  ChainMap map;         // X_alpha -> corner
};

inline RelativeMatchingMap relative_matching_map(const DiagramMap& phi, int alpha) {
  RelativeMatchingMap R;
  R.MX = matching_object(phi.src, alpha);
  R.MY = matching_object(phi.dst, alpha);
  std::vector<ChainMap> comps;
  for (const auto& [a, u] : R.MX.shape.obj_parts) comps.push_back(phi.comp[size_t(a)]);
  R.induced = limit_induced(R.MX.lim, R.MY.lim, comps);
  R.corner = pullback(R.MY.from_value, R.induced);
  R.map = factor_pullback(R.corner, phi.comp[size_t(alpha)], R.MX.from_value);
  return R;
}

struct DiagramMapClass {
  bool cofibration = false;
  bool trivial_cofibration = false;
  bool fibration = false;
  bool trivial_fibration = false;
  bool weak_equivalence = false;
};

// Cofibration iff every relative latching map is degreewise injective
// (trivial: also a quasi-isomorphism); fibrations dual via relative matching
// maps; weak equivalences are objectwise quasi-isomorphisms.
inline DiagramMapClass classify_reedy(const DiagramMap& phi) {
  DiagramMapClass c;
  c.cofibration = c.trivial_cofibration = c.fibration = c.trivial_fibration =
      c.weak_equivalence = true;
  int n = phi.src.index.cat.n_obj();
  for (int a = 0; a < n; ++a)
    c.weak_equivalence = c.weak_equivalence && classify_map(phi.comp[size_t(a)]).weak_equivalence;
  for (int a = 0; a < n; ++a) {
    ChainMapClass kl = classify_map(relative_latching_map(phi, a).map);
    c.cofibration = c.cofibration && kl.cofibration;
    c.trivial_cofibration = c.trivial_cofibration && kl.cofibration && kl.weak_equivalence;
    ChainMapClass km = classify_map(relative_matching_map(phi, a).map);
    c.fibration = c.fibration && km.fibration;
    c.trivial_fibration = c.trivial_fibration && km.fibration && km.weak_equivalence;
  }
  return c;
}

struct ObjectwiseClass {
  bool cofibration = true;
  bool fibration = true;
  bool weak_equivalence = true;
};

inline ObjectwiseClass classify_objectwise(const DiagramMap& phi) {
  ObjectwiseClass c;
  for (const auto& f : phi.comp) {
    ChainMapClass k = classify_map(f);
    c.cofibration = c.cofibration && k.cofibration;
    c.fibration = c.fibration && k.fibration;
    c.weak_equivalence = c.weak_equivalence && k.weak_equivalence;
  }
  return c;
}

// -------- restriction and left Kan extension --------

// Composition with a functor f: A -> B, turning a diagram over B into one
// over A (same variance).
inline Diagram restrict_diagram(const ReedyCategory& A, const FunctorData& f, const Diagram& Y) {
  Diagram D;
  D.index = A;
  D.variance = Y.variance;
  D.p = Y.p;
  for (int a = 0; a < A.cat.n_obj(); ++a) D.objects.push_back(Y.objects[size_t(f.obj_map[size_t(a)])]);
  for (int m = 0; m < A.cat.n_mor(); ++m) D.maps.push_back(Y.maps[size_t(f.mor_map[size_t(m)])]);
  return D;
}

inline DiagramMap restrict_diagram_map(const ReedyCategory& A, const FunctorData& f,
                                       const DiagramMap& phi) {
  DiagramMap r;
  r.src = restrict_diagram(A, f, phi.src);
  r.dst = restrict_diagram(A, f, phi.dst);
  for (int a = 0; a < A.cat.n_obj(); ++a) r.comp.push_back(phi.comp[size_t(f.obj_map[size_t(a)])]);
  return r;
}

struct KanExtension {
  Diagram dia;  // over the target index
  // per target object, in the covariant view: the comma shape and its colimit
  std::vector<CommaCategory> comma;
  std::vector<ColimitData> colim;
  std::vector<std::map<std::pair<int, int>, int>> obj_of;  // (a, u) -> comma object
};

// Left Kan extension along f: value at beta is the colimit over the comma
// category of objects (a, u: f(a) -> beta) in the covariant view.
inline KanExtension left_kan(const ReedyCategory& B, const FunctorData& f, const Diagram& X) {
  ReedyCategory Av = covariant_view(X);
  ReedyCategory Bv = X.variance == Variance::covariant ? B : opposite_reedy(B);
  if (!validate_functor(Av.cat, Bv.cat, f).ok())
    throw std::invalid_argument("left_kan: malformed functor");
  KanExtension K;
  K.dia.index = B;
  K.dia.variance = X.variance;
  K.dia.p = X.p;
  K.dia.objects.resize(size_t(B.cat.n_obj()));
  K.dia.maps.resize(size_t(B.cat.n_mor()));
  for (int beta = 0; beta < Bv.cat.n_obj(); ++beta) {
    CommaCategory c = comma(Av.cat, Bv.cat, f, beta);
    std::vector<ChainComplex> pieces;
    std::vector<ChainMap> maps;
    for (const auto& [a, u] : c.obj_parts) pieces.push_back(X.objects[size_t(a)]);
    for (int m = 0; m < c.cat.n_mor(); ++m) maps.push_back(X.maps[size_t(c.mor_base[size_t(m)])]);
    K.colim.push_back(colimit_of(c.cat, pieces, maps, X.p));
    K.dia.objects[size_t(beta)] = K.colim.back().obj;
    std::map<std::pair<int, int>, int> idx;
    for (int o = 0; o < c.cat.n_obj(); ++o) idx[c.obj_parts[size_t(o)]] = o;
    K.obj_of.push_back(std::move(idx));
    K.comma.push_back(std::move(c));
  }
  for (int m = 0; m < Bv.cat.n_mor(); ++m) {
    int s = Bv.cat.src(m), t = Bv.cat.dst(m);
    std::vector<ChainMap> legs;
    for (const auto& [a, u] : K.comma[size_t(s)].obj_parts)
      legs.push_back(K.colim[size_t(t)].cocone[size_t(K.obj_of[size_t(t)].at({a, Bv.cat.compose(m, u)}))]);
    K.dia.maps[size_t(m)] = colimit_factor(K.colim[size_t(s)], legs, K.dia.objects[size_t(t)]);
  }
  return K;
}

// Unit of the extension-restriction adjunction: X -> f*(f_! X).
inline DiagramMap kan_unit(const ReedyCategory& B, const FunctorData& f, const Diagram& X,
                           const KanExtension& K) {
  ReedyCategory Bv = X.variance == Variance::covariant ? B : opposite_reedy(B);
  DiagramMap eta;
  eta.src = X;
  eta.dst = restrict_diagram(X.index, f, K.dia);
  for (int a = 0; a < X.index.cat.n_obj(); ++a) {
    int beta = f.obj_map[size_t(a)];
    int o = K.obj_of[size_t(beta)].at({a, Bv.cat.identity[size_t(beta)]});
    eta.comp.push_back(K.colim[size_t(beta)].cocone[size_t(o)]);
  }
  return eta;
}

// Counit of the adjunction: f_!(f* E) -> E, where KR extends the restriction.
inline DiagramMap kan_counit(const Diagram& E, const KanExtension& KR) {
  DiagramMap eps;
  eps.src = KR.dia;
  eps.dst = E;
  for (size_t beta = 0; beta < KR.comma.size(); ++beta) {
    std::vector<ChainMap> legs;
    for (const auto& [a, u] : KR.comma[beta].obj_parts) legs.push_back(E.maps[size_t(u)]);
    eps.comp.push_back(colimit_factor(KR.colim[beta], legs, E.objects[beta]));
  }
  return eps;
}

// The extension applied to a map, between previously computed extensions.
inline DiagramMap left_kan_map(const DiagramMap& phi, const KanExtension& KX,
                               const KanExtension& KY) {
  DiagramMap out;
  out.src = KX.dia;
  out.dst = KY.dia;
  for (size_t beta = 0; beta < KX.comma.size(); ++beta) {
    std::vector<ChainMap> comps;
    for (const auto& [a, u] : KX.comma[beta].obj_parts) comps.push_back(phi.comp[size_t(a)]);
    out.comp.push_back(colimit_induced(KX.colim[beta], KY.colim[beta], comps));
  }
  return out;
}

// Independent cross-check of one Kan-extension value: the same colimit
// written as a quotient of hom-indexed copowers by the action relations.
inline ChainComplex left_kan_coend(const ReedyCategory& B, const FunctorData& f, const Diagram& X,
                                   int beta) {
  ReedyCategory Av = covariant_view(X);
  ReedyCategory Bv = X.variance == Variance::covariant ? B : opposite_reedy(B);
  const FiniteCategory& a_cat = Av.cat;
  std::vector<std::vector<int>> homs(size_t(a_cat.n_obj()));
  std::vector<std::map<int, int>> hom_idx(size_t(a_cat.n_obj()));
  std::vector<ChainComplex> pieces;
  for (int c = 0; c < a_cat.n_obj(); ++c) {
    homs[size_t(c)] = Bv.cat.hom(f.obj_map[size_t(c)], beta);
    for (size_t i = 0; i < homs[size_t(c)].size(); ++i) hom_idx[size_t(c)][homs[size_t(c)][i]] = int(i);
    pieces.push_back(copower(int(homs[size_t(c)].size()), X.objects[size_t(c)]));
  }
  ChainComplex amb = detail::family_sum(pieces, X.p);
  auto slot = [&](int c, int u_pos, int n) {
    return detail::family_offset(pieces, c, n) + u_pos * X.objects[size_t(c)].dim(n);
  };
  std::map<int, FpMat> rel;
  for (const auto& [n, k] : amb.dims) {
    std::optional<FpMat> R;
    for (int g = 0; g < a_cat.n_mor(); ++g) {
      if (a_cat.is_identity(g)) continue;
      int c = a_cat.src(g), c2 = a_cat.dst(g);
      int dc = X.objects[size_t(c)].dim(n);
      if (!dc) continue;
      FpMat img = X.maps[size_t(g)].at(n);
      for (int u : homs[size_t(c2)]) {
        int uf = Bv.cat.compose(u, f.mor_map[size_t(g)]);
        FpMat col(X.p, k, dc);
        int off1 = slot(c, hom_idx[size_t(c)].at(uf), n);
        for (int j = 0; j < dc; ++j) detail::acc_entry(col, off1 + j, j, 1);
        int off2 = slot(c2, hom_idx[size_t(c2)].at(u), n);
        for (int i = 0; i < img.rows; ++i)
          for (int j = 0; j < dc; ++j) detail::acc_entry(col, off2 + i, j, X.p - img.at(i, j) % X.p);
        R = R ? hstack(*R, col) : col;
      }
    }
    if (R) rel[n] = *R;
  }
  ChainComplex out = cokernel_complex(amb, rel).quot;
  out.p = X.p;
  return out;
}

// -------- pushouts and pullbacks of diagrams --------

struct DiagramPushout {
  Diagram obj;
  DiagramMap from_first, from_second;
  std::vector<PushoutData> per_object;
};

inline DiagramPushout diagram_pushout(const DiagramMap& f, const DiagramMap& g) {
  const Diagram &U = f.dst, &V = g.dst;
  DiagramPushout P;
  P.obj.index = U.index;
  P.obj.variance = U.variance;
  P.obj.p = U.p;
  int no = U.index.cat.n_obj(), nm = U.index.cat.n_mor();
  for (int a = 0; a < no; ++a) {
    P.per_object.push_back(pushout(f.comp[size_t(a)], g.comp[size_t(a)]));
    P.obj.objects.push_back(P.per_object.back().obj);
  }
  P.obj.maps.resize(size_t(nm));
  for (int m = 0; m < nm; ++m) {
    int s = view_src(U, m), t = view_dst(U, m);
    P.obj.maps[size_t(m)] = factor_pushout(
        P.per_object[size_t(s)],
        compose_maps(P.per_object[size_t(t)].from_first, U.maps[size_t(m)]),
        compose_maps(P.per_object[size_t(t)].from_second, V.maps[size_t(m)]));
  }
  P.from_first.src = U;
  P.from_first.dst = P.obj;
  P.from_second.src = V;
  P.from_second.dst = P.obj;
  for (int a = 0; a < no; ++a) {
    P.from_first.comp.push_back(P.per_object[size_t(a)].from_first);
    P.from_second.comp.push_back(P.per_object[size_t(a)].from_second);
  }
  return P;
}

inline DiagramMap factor_diagram_pushout(const DiagramPushout& P, const DiagramMap& u,
                                         const DiagramMap& v) {
  DiagramMap h;
  h.src = P.obj;
  h.dst = u.dst;
  for (size_t a = 0; a < P.per_object.size(); ++a)
    h.comp.push_back(factor_pushout(P.per_object[a], u.comp[a], v.comp[a]));
  return h;
}

struct DiagramPullback {
  Diagram obj;
  DiagramMap to_first, to_second;
  std::vector<PullbackData> per_object;
};

inline DiagramPullback diagram_pullback(const DiagramMap& f, const DiagramMap& g) {
  const Diagram &U = f.src, &V = g.src;
  DiagramPullback P;
  P.obj.index = U.index;
  P.obj.variance = U.variance;
  P.obj.p = U.p;
  int no = U.index.cat.n_obj(), nm = U.index.cat.n_mor();
  for (int a = 0; a < no; ++a) {
    P.per_object.push_back(pullback(f.comp[size_t(a)], g.comp[size_t(a)]));
    P.obj.objects.push_back(P.per_object.back().obj);
  }
  P.obj.maps.resize(size_t(nm));
  for (int m = 0; m < nm; ++m) {
    int s = view_src(U, m), t = view_dst(U, m);
    P.obj.maps[size_t(m)] = factor_pullback(
        P.per_object[size_t(t)],
        compose_maps(U.maps[size_t(m)], P.per_object[size_t(s)].to_first),
        compose_maps(V.maps[size_t(m)], P.per_object[size_t(s)].to_second));
  }
  P.to_first.src = P.obj;
  P.to_first.dst = U;
  P.to_second.src = P.obj;
  P.to_second.dst = V;
  for (int a = 0; a < no; ++a) {
    P.to_first.comp.push_back(P.per_object[size_t(a)].to_first);
    P.to_second.comp.push_back(P.per_object[size_t(a)].to_second);
  }
  return P;
}

inline DiagramMap factor_diagram_pullback(const DiagramPullback& P, const DiagramMap& u,
                                          const DiagramMap& v) {
  DiagramMap h;
  h.src = u.src;
  h.dst = P.obj;
  for (size_t a = 0; a < P.per_object.size(); ++a)
    h.comp.push_back(factor_pullback(P.per_object[a], u.comp[a], v.comp[a]));
  return h;
}

// -------- copowers by set presheaves --------

// (K % X)_a is the K(a)-fold copower of X; the structure maps permute and
// merge copies along the presheaf action.  Always presheaf variance.
inline Diagram boxdot(const ReedyCategory& A, const SetPresheaf& K, const ChainComplex& X) {
  Diagram D;
  D.index = A;
  D.variance = Variance::presheaf;
  D.p = X.p;
  for (int a = 0; a < A.cat.n_obj(); ++a) D.objects.push_back(copower(K.size[size_t(a)], X));
  for (int m = 0; m < A.cat.n_mor(); ++m) {
    int a = A.cat.src(m), b = A.cat.dst(m);
    ChainMap f;
    f.src = D.objects[size_t(b)];
    f.dst = D.objects[size_t(a)];
    for (const auto& [n, dx] : X.dims) {
      if (!dx || K.size[size_t(a)] == 0 || K.size[size_t(b)] == 0) continue;
      FpMat M(X.p, K.size[size_t(a)] * dx, K.size[size_t(b)] * dx);
      for (int s = 0; s < K.size[size_t(b)]; ++s) {
        int t = K.act[size_t(m)][size_t(s)];
        for (int i = 0; i < dx; ++i) M.set(t * dx + i, s * dx + i, 1);
      }
      f.comp[n] = M;
    }
    f.normalize();
    D.maps.push_back(std::move(f));
  }
  return D;
}

// A presheaf map induces a map of copower diagrams in the first variable.
inline DiagramMap boxdot_presheaf_map(const ReedyCategory& A, const SetPresheaf& K,
                                      const SetPresheaf& L, const PresheafMap& phi,
                                      const ChainComplex& X) {
  DiagramMap f;
  f.src = boxdot(A, K, X);
  f.dst = boxdot(A, L, X);
  for (int a = 0; a < A.cat.n_obj(); ++a) {
    ChainMap c;
    c.src = f.src.objects[size_t(a)];
    c.dst = f.dst.objects[size_t(a)];
    for (const auto& [n, dx] : X.dims) {
      if (!dx || K.size[size_t(a)] == 0 || L.size[size_t(a)] == 0) continue;
      FpMat M(X.p, L.size[size_t(a)] * dx, K.size[size_t(a)] * dx);
      for (int s = 0; s < K.size[size_t(a)]; ++s) {
        int t = phi.comp[size_t(a)][size_t(s)];
        for (int i = 0; i < dx; ++i) M.set(t * dx + i, s * dx + i, 1);
      }
      c.comp[n] = M;
    }
    c.normalize();
    f.comp.push_back(std::move(c));
  }
  return f;
}

// A chain map induces a map of copower diagrams in the second variable.
inline DiagramMap boxdot_complex_map(const ReedyCategory& A, const SetPresheaf& K,
                                     const ChainMap& psi) {
  DiagramMap f;
  f.src = boxdot(A, K, psi.src);
  f.dst = boxdot(A, K, psi.dst);
  for (int a = 0; a < A.cat.n_obj(); ++a) {
    int count = K.size[size_t(a)];
    ChainMap c;
    c.src = f.src.objects[size_t(a)];
    c.dst = f.dst.objects[size_t(a)];
    std::set<int> degs;
    for (const auto& [n, k] : psi.src.dims) degs.insert(n);
    for (const auto& [n, k] : psi.dst.dims) degs.insert(n);
    for (int n : degs) {
      int dx = psi.src.dim(n), dy = psi.dst.dim(n);
      if (!count || !dx || !dy) continue;
      FpMat M(psi.src.p, count * dy, count * dx);
      for (int s = 0; s < count; ++s) put_block(M, s * dy, s * dx, psi.at(n));
      c.comp[n] = M;
    }
    c.normalize();
    f.comp.push_back(std::move(c));
  }
  return f;
}

// The right adjoint in the presheaf variable: families (y_{a,s} in Y_a)
// indexed by the elements of K, compatible with both actions.
struct MorBoxdot {
  ChainComplex obj;
  ChainComplex amb;                  // sum over a of the K(a)-fold copower of Y_a
  std::vector<ChainComplex> pieces;  // those copowers, in object order
  std::map<int, FpMat> incl;
};

inline MorBoxdot mor_boxdot(const ReedyCategory& A, const SetPresheaf& K, const Diagram& Y) {
  if (Y.variance != Variance::presheaf)
    throw std::invalid_argument("mor_boxdot: presheaf variance required");
  MorBoxdot M;
  for (int a = 0; a < A.cat.n_obj(); ++a)
    M.pieces.push_back(copower(K.size[size_t(a)], Y.objects[size_t(a)]));
  M.amb = detail::family_sum(M.pieces, Y.p);
  std::map<int, FpMat> cons;
  for (const auto& [n, k] : M.amb.dims) {
    std::optional<FpMat> C;
    for (int m = 0; m < A.cat.n_mor(); ++m) {
      if (A.cat.is_identity(m)) continue;
      int a = A.cat.src(m), b = A.cat.dst(m);
      int da = Y.objects[size_t(a)].dim(n), db = Y.objects[size_t(b)].dim(n);
      FpMat act = Y.maps[size_t(m)].at(n);  // Y_b -> Y_a
      for (int s = 0; s < K.size[size_t(b)]; ++s) {
        if (!da) continue;
        FpMat row(Y.p, da, k);
        if (db) {
          int offb = detail::family_offset(M.pieces, b, n) + s * db;
          for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) detail::acc_entry(row, i, offb + j, act.at(i, j));
        }
        int offa = detail::family_offset(M.pieces, a, n) + K.act[size_t(m)][size_t(s)] * da;
        for (int i = 0; i < da; ++i) detail::acc_entry(row, i, offa + i, Y.p - 1);
        C = C ? vstack(*C, row) : row;
      }
    }
    if (C) cons[n] = *C;
  }
  SubcomplexData S = kernel_subcomplex(M.amb, cons);
  M.obj = S.sub;
  M.obj.p = Y.p;
  M.incl = S.incl;
  return M;
}

// Evaluation of a family at one element of K.
inline ChainMap mor_boxdot_eval(const MorBoxdot& M, const Diagram& Y, int alpha, int s) {
  ChainMap f;
  f.src = M.obj;
  f.dst = Y.objects[size_t(alpha)];
  for (const auto& [n, inc] : M.incl) {
    int d = Y.objects[size_t(alpha)].dim(n);
    if (!d) continue;
    FpMat m = block(inc, detail::family_offset(M.pieces, alpha, n) + s * d, 0, d, inc.cols);
    if (!m.is_zero()) f.comp[n] = m;
  }
  return f;
}

// The set presheaf of chain maps X -> Y_a, with deterministic element order.
struct ChainMapPresheaf {
  SetPresheaf pre;
  std::vector<std::vector<ChainMap>> elems;  // per object, indexed like pre
};

namespace detail {

inline ChainMap scale_map(uint32_t c, const ChainMap& f) {
  ChainMap g;
  g.src = f.src;
  g.dst = f.dst;
  for (const auto& [n, m] : f.comp) g.comp[n] = mat_scale(m, c);
  g.normalize();
  return g;
}

inline std::string map_key(ChainMap f) {
  f.normalize();
  std::string key;
  for (const auto& [n, m] : f.comp) {
    key += std::to_string(n) + ":";
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) key += char('0' + m.at(i, j));
    key += ";";
  }
  return key;
}

// all F_p-combinations of a basis of chain maps, lexicographic in the
// coefficients with the first basis element most significant
inline std::vector<ChainMap> enumerate_map_space(const ChainMapSpace& sp, const ChainComplex& X,
                                                 const ChainComplex& Y, uint32_t p) {
  double total = 1;
  for (int i = 0; i < sp.dim; ++i) total *= double(p);
  if (total > 4096) throw std::invalid_argument("chain map space too large to enumerate");
  std::vector<ChainMap> out;
  std::vector<uint32_t> coeff(size_t(sp.dim), 0);
  int count = int(total);
  for (int t = 0; t < count; ++t) {
    ChainMap f = zero_map(X, Y);
    int rem = t;
    for (int i = sp.dim - 1; i >= 0; --i) {
      coeff[size_t(i)] = uint32_t(rem % int(p));
      rem /= int(p);
    }
    for (int i = 0; i < sp.dim; ++i)
      if (coeff[size_t(i)]) f = map_add(f, scale_map(coeff[size_t(i)], sp.basis[size_t(i)]));
    f.normalize();
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace detail

inline ChainMapPresheaf hom_set_presheaf(const ChainComplex& X, const Diagram& Y) {
  if (Y.variance != Variance::presheaf)
    throw std::invalid_argument("hom_set_presheaf: presheaf variance required");
  ChainMapPresheaf out;
  int no = Y.index.cat.n_obj();
  std::vector<std::map<std::string, int>> idx(static_cast<size_t>(no));
  for (int a = 0; a < no; ++a) {
    ChainMapSpace sp = chain_map_space(X, Y.objects[size_t(a)]);
    out.elems.push_back(detail::enumerate_map_space(sp, X, Y.objects[size_t(a)], Y.p));
    out.pre.size.push_back(int(out.elems.back().size()));
    for (size_t i = 0; i < out.elems.back().size(); ++i)
      idx[size_t(a)][detail::map_key(out.elems.back()[i])] = int(i);
  }
  for (int m = 0; m < Y.index.cat.n_mor(); ++m) {
    int a = Y.index.cat.src(m), b = Y.index.cat.dst(m);
    std::vector<int> act;
    for (const auto& f : out.elems[size_t(b)])
      act.push_back(idx[size_t(a)].at(detail::map_key(compose_maps(Y.maps[size_t(m)], f))));
    out.pre.act.push_back(std::move(act));
  }
  return out;
}

// -------- representables and generating corner maps --------

inline Diagram representable_diagram(const ReedyCategory& A, int alpha, uint32_t p) {
  return boxdot(A, yoneda(A.cat, alpha).pre, unit_complex(p));
}

struct BoundaryRepresentableDiagram {
  Diagram dia;
  DiagramMap include;  // into the representable at the same object
};

inline BoundaryRepresentableDiagram boundary_representable(const ReedyCategory& A, int alpha,
                                                           uint32_t p) {
  BoundaryRepresentable b = boundary_yoneda(A, alpha);
  BoundaryRepresentableDiagram out;
  out.dia = boxdot(A, b.pre, unit_complex(p));
  out.include =
      boxdot_presheaf_map(A, b.pre, yoneda(A.cat, alpha).pre, b.to_yoneda, unit_complex(p));
  return out;
}

// The corner map (y(a) % X) glued with (dy(a) % Y) along (dy(a) % X), mapping
// into y(a) % Y; these generate the (trivial) cofibrations when the input
// maps do.
struct CornerMap {
  int alpha;
  DiagramPushout corner;
  DiagramMap map;
};

inline CornerMap corner_map(const ReedyCategory& A, int alpha, const ChainMap& psi) {
  Representable y = yoneda(A.cat, alpha);
  BoundaryRepresentable b = boundary_yoneda(A, alpha);
  CornerMap out;
  out.alpha = alpha;
  DiagramMap i1 = boxdot_presheaf_map(A, b.pre, y.pre, b.to_yoneda, psi.src);
  DiagramMap i2 = boxdot_complex_map(A, b.pre, psi);
  out.corner = diagram_pushout(i1, i2);
  out.map = factor_diagram_pushout(out.corner, boxdot_complex_map(A, y.pre, psi),
                                   boxdot_presheaf_map(A, b.pre, y.pre, b.to_yoneda, psi.dst));
  return out;
}

inline std::vector<CornerMap> generating_set(const ReedyCategory& A,
                                             const std::vector<ChainMap>& K) {
  std::vector<CornerMap> out;
  for (int alpha = 0; alpha < A.cat.n_obj(); ++alpha)
    for (const auto& psi : K) out.push_back(corner_map(A, alpha, psi));
  return out;
}

// -------- tensors --------

// Pointwise tensor over the product index: value at (a, b) is X_a ox Y_b.
inline Diagram exterior_tensor(const ReedyProduct& P, const Diagram& X, const Diagram& Y) {
  if (X.variance != Y.variance) throw std::invalid_argument("exterior_tensor: variance mismatch");
  Diagram T;
  T.index = P.reedy;
  T.variance = X.variance;
  T.p = X.p;
  for (const auto& [a, b] : P.obj_parts)
    T.objects.push_back(tensor_complex(X.objects[size_t(a)], Y.objects[size_t(b)]));
  for (const auto& [f, g] : P.mor_parts)
    T.maps.push_back(tensor_map(X.maps[size_t(f)], Y.maps[size_t(g)]));
  return T;
}

inline DiagramMap exterior_tensor_map(const ReedyProduct& P, const DiagramMap& f,
                                      const DiagramMap& g) {
  DiagramMap out;
  out.src = exterior_tensor(P, f.src, g.src);
  out.dst = exterior_tensor(P, f.dst, g.dst);
  for (const auto& [a, b] : P.obj_parts)
    out.comp.push_back(tensor_map(f.comp[size_t(a)], g.comp[size_t(b)]));
  return out;
}

// Pointwise tensor over the same index: value at a is X_a ox Y_a.
inline Diagram diagonal_tensor(const Diagram& X, const Diagram& Y) {
  Diagram T;
  T.index = X.index;
  T.variance = X.variance;
  T.p = X.p;
  for (size_t a = 0; a < X.objects.size(); ++a)
    T.objects.push_back(tensor_complex(X.objects[a], Y.objects[a]));
  for (size_t m = 0; m < X.maps.size(); ++m)
    T.maps.push_back(tensor_map(X.maps[m], Y.maps[m]));
  return T;
}

inline DiagramMap diagonal_tensor_map(const DiagramMap& f, const DiagramMap& g) {
  DiagramMap out;
  out.src = diagonal_tensor(f.src, g.src);
  out.dst = diagonal_tensor(f.dst, g.dst);
  for (size_t a = 0; a < f.comp.size(); ++a)
    out.comp.push_back(tensor_map(f.comp[a], g.comp[a]));
  return out;
}

inline Diagram unit_diagram(const ReedyCategory& A, Variance v, uint32_t p) {
  return constant_diagram(A, v, unit_complex(p));
}

// Objectwise symmetry X(a) ox Y(a) -> Y(a) ox X(a); natural because the
// structure maps of the pointwise tensor act factorwise in degree zero.
inline DiagramMap braiding(const Diagram& X, const Diagram& Y) {
  DiagramMap t;
  t.src = diagonal_tensor(X, Y);
  t.dst = diagonal_tensor(Y, X);
  for (size_t a = 0; a < X.objects.size(); ++a)
    t.comp.push_back(braid_map(X.objects[a], Y.objects[a]));
  return t;
}

// Objectwise associator (X(a) ox Y(a)) ox Z(a) -> X(a) ox (Y(a) ox Z(a)).
inline DiagramMap associator(const Diagram& X, const Diagram& Y, const Diagram& Z) {
  DiagramMap t;
  t.src = diagonal_tensor(diagonal_tensor(X, Y), Z);
  t.dst = diagonal_tensor(X, diagonal_tensor(Y, Z));
  for (size_t a = 0; a < X.objects.size(); ++a)
    t.comp.push_back(associator_map(X.objects[a], Y.objects[a], Z.objects[a]));
  return t;
}

// -------- enriched hom complexes (ends) --------

// matrix of "precompose with f": Hom(Xold, Z)_n -> Hom(Xnew, Z)_n for a
// degree-0 chain map f: Xnew -> Xold
inline FpMat hom_precompose_mat(const ChainComplex& Xnew, const ChainComplex& Xold,
                                const ChainComplex& Z, const ChainMap& f, int n) {
  GradedLayout Lout = hom_layout(Xnew, Z, n), Lin = hom_layout(Xold, Z, n);
  FpMat M(Z.p, Lout.total, Lin.total);
  for (const auto& [i, sz] : Lout.blocks) {
    int dx = Xnew.dim(i), dz = Z.dim(i + n), dxo = Xold.dim(i);
    int in_off = Lin.offset_of(i);
    if (!dxo || in_off < 0) continue;
    FpMat fi = f.at(i);  // dxo x dx
    int out_off = Lout.offset_of(i);
    for (int u = 0; u < dz; ++u)
      for (int v = 0; v < dx; ++v)
        for (int w = 0; w < dxo; ++w)
          if (fi.at(w, v)) M.set(out_off + u * dx + v, in_off + u * dxo + w, fi.at(w, v));
  }
  return M;
}

// matrix of "postcompose with g": Hom(X, Z)_n -> Hom(X, Znew)_n for a
// degree-0 chain map g: Z -> Znew
inline FpMat hom_postcompose_mat(const ChainComplex& X, const ChainComplex& Z,
                                 const ChainComplex& Znew, const ChainMap& g, int n) {
  GradedLayout Lout = hom_layout(X, Znew, n), Lin = hom_layout(X, Z, n);
  FpMat M(X.p, Lout.total, Lin.total);
  for (const auto& [i, sz] : Lout.blocks) {
    int dx = X.dim(i), dzn = Znew.dim(i + n), dz = Z.dim(i + n);
    int in_off = Lin.offset_of(i);
    if (!dz || in_off < 0) continue;
    FpMat gi = g.at(i + n);  // dzn x dz
    int out_off = Lout.offset_of(i);
    for (int u2 = 0; u2 < dzn; ++u2)
      for (int u = 0; u < dz; ++u)
        if (gi.at(u2, u))
          for (int v = 0; v < dx; ++v)
            M.set(out_off + u2 * dx + v, in_off + u * dx + v, gi.at(u2, u));
  }
  return M;
}

// The end of the hom complexes: families phi_a in Hom(X_a, Y_a) satisfying
// naturality against every structure map, with the induced differential.
struct EnrichedHom {
  ChainComplex obj;
  ChainComplex amb;
  std::vector<ChainComplex> homs;  // per index object
  std::map<int, FpMat> incl;
};

inline EnrichedHom enriched_hom(const Diagram& X, const Diagram& Y) {
  if (X.index.cat.n_obj() != Y.index.cat.n_obj() || X.variance != Y.variance || X.p != Y.p)
    throw std::invalid_argument("enriched_hom: index mismatch");
  EnrichedHom E;
  int no = X.index.cat.n_obj();
  for (int a = 0; a < no; ++a)
    E.homs.push_back(hom_complex(X.objects[size_t(a)], Y.objects[size_t(a)]));
  E.amb = detail::family_sum(E.homs, X.p);
  std::map<int, FpMat> cons;
  for (const auto& [n, k] : E.amb.dims) {
    std::optional<FpMat> C;
    for (int m = 0; m < X.index.cat.n_mor(); ++m) {
      if (X.index.cat.is_identity(m)) continue;
      int s = view_src(X, m), t = view_dst(X, m);
      GradedLayout Lc = hom_layout(X.objects[size_t(s)], Y.objects[size_t(t)], n);
      if (!Lc.total) continue;
      FpMat row(X.p, Lc.total, k);
      FpMat pre = hom_precompose_mat(X.objects[size_t(s)], X.objects[size_t(t)],
                                     Y.objects[size_t(t)], X.maps[size_t(m)], n);
      FpMat post = hom_postcompose_mat(X.objects[size_t(s)], Y.objects[size_t(s)],
                                       Y.objects[size_t(t)], Y.maps[size_t(m)], n);
      int offt = detail::family_offset(E.homs, t, n), offs = detail::family_offset(E.homs, s, n);
      for (int i = 0; i < pre.rows; ++i)
        for (int j = 0; j < pre.cols; ++j) detail::acc_entry(row, i, offt + j, pre.at(i, j));
      for (int i = 0; i < post.rows; ++i)
        for (int j = 0; j < post.cols; ++j)
          detail::acc_entry(row, i, offs + j, (X.p - post.at(i, j)) % X.p);
      C = C ? vstack(*C, row) : row;
    }
    if (C) cons[n] = *C;
  }
  SubcomplexData S = kernel_subcomplex(E.amb, cons);
  E.obj = S.sub;
  E.obj.p = X.p;
  E.incl = S.incl;
  return E;
}

namespace detail {

// restriction of an ambient degreewise map to kernel subcomplexes
inline ChainMap restrict_between_kernels(const ChainComplex& Ssub,
                                         const std::map<int, FpMat>& Sincl,
                                         const ChainComplex& Tsub,
                                         const std::map<int, FpMat>& Tincl,
                                         const std::function<FpMat(int)>& ambient) {
  ChainMap h;
  h.src = Ssub;
  h.dst = Tsub;
  for (const auto& [n, k] : Ssub.dims) {
    FpMat g = mat_mul(ambient(n), Sincl.at(n));
    if (Tsub.dim(n) == 0) {
      if (!g.is_zero()) throw std::logic_error("restriction leaves the subcomplex");
      continue;
    }
    auto sol = solve(Tincl.at(n), g);
    if (!sol || !(mat_mul(Tincl.at(n), *sol) == g))
      throw std::logic_error("restriction leaves the subcomplex");
    if (!sol->is_zero()) h.comp[n] = *sol;
  }
  return h;
}

}  // namespace detail

// Functoriality of the end in the source: precompose with i: X -> X2.
inline ChainMap enriched_precompose(const DiagramMap& i, const Diagram& E, const EnrichedHom& S,
                                    const EnrichedHom& T) {
  const Diagram &X = i.src, &X2 = i.dst;
  auto ambient = [&](int n) {
    FpMat M(X.p, T.amb.dim(n), S.amb.dim(n));
    int ro = 0, co = 0;
    for (size_t a = 0; a < X.objects.size(); ++a) {
      FpMat blk =
          hom_precompose_mat(X.objects[a], X2.objects[a], E.objects[a], i.comp[a], n);
      if (blk.rows && blk.cols) put_block(M, ro, co, blk);
      ro += T.homs[a].dim(n);
      co += S.homs[a].dim(n);
    }
    return M;
  };
  return detail::restrict_between_kernels(S.obj, S.incl, T.obj, T.incl, ambient);
}

// Functoriality of the end in the target: postcompose with q: E -> B.
inline ChainMap enriched_postcompose(const DiagramMap& q, const Diagram& X, const EnrichedHom& S,
                                     const EnrichedHom& T) {
  const Diagram &E = q.src, &B = q.dst;
  auto ambient = [&](int n) {
    FpMat M(X.p, T.amb.dim(n), S.amb.dim(n));
    int ro = 0, co = 0;
    for (size_t a = 0; a < X.objects.size(); ++a) {
      FpMat blk = hom_postcompose_mat(X.objects[a], E.objects[a], B.objects[a], q.comp[a], n);
      if (blk.rows && blk.cols) put_block(M, ro, co, blk);
      ro += T.homs[a].dim(n);
      co += S.homs[a].dim(n);
    }
    return M;
  };
  return detail::restrict_between_kernels(S.obj, S.incl, T.obj, T.incl, ambient);
}

// The internal hom for the pointwise tensor: value at alpha is the end of
// maps out of (representable at alpha) (x) X into Y, with structure maps by
// precomposition along the representable maps.
struct DiagonalHom {
  Diagram dia;
  std::vector<Diagram> tensors;   // (representable at alpha) (x) X
  std::vector<EnrichedHom> ends;  // end of maps tensors[alpha] -> Y
};

inline DiagonalHom diagonal_hom(const Diagram& X, const Diagram& Y) {
  if (X.variance != Variance::presheaf || Y.variance != Variance::presheaf)
    throw std::invalid_argument("diagonal_hom: presheaf variance required");
  const ReedyCategory& A = X.index;
  const FiniteCategory& C = A.cat;
  DiagonalHom H;
  H.dia.index = A;
  H.dia.variance = Variance::presheaf;
  H.dia.p = X.p;
  std::vector<Representable> ys;
  for (int a = 0; a < C.n_obj(); ++a) ys.push_back(yoneda(C, a));
  for (int a = 0; a < C.n_obj(); ++a) {
    H.tensors.push_back(diagonal_tensor(representable_diagram(A, a, X.p), X));
    H.ends.push_back(enriched_hom(H.tensors.back(), Y));
    H.dia.objects.push_back(H.ends.back().obj);
  }
  H.dia.maps.resize(size_t(C.n_mor()));
  for (int m = 0; m < C.n_mor(); ++m) {
    int al = C.src(m), be = C.dst(m);
    PresheafMap pm;
    pm.comp.resize(size_t(C.n_obj()));
    for (int a = 0; a < C.n_obj(); ++a) {
      std::map<int, int> pos;
      for (size_t e = 0; e < ys[size_t(be)].elem_mor[size_t(a)].size(); ++e)
        pos[ys[size_t(be)].elem_mor[size_t(a)][e]] = int(e);
      for (int em : ys[size_t(al)].elem_mor[size_t(a)])
        pm.comp[size_t(a)].push_back(pos.at(C.compose(m, em)));
    }
    DiagramMap i = diagonal_tensor_map(
        boxdot_presheaf_map(A, ys[size_t(al)].pre, ys[size_t(be)].pre, pm, unit_complex(X.p)),
        identity_diagram_map(X));
    H.dia.maps[size_t(m)] = enriched_precompose(i, Y, H.ends[size_t(be)], H.ends[size_t(al)]);
  }
  return H;
}

// a flat hom-layout vector in degree 0, reassembled into a chain map
inline ChainMap hom_vector_to_map(const ChainComplex& X, const ChainComplex& Y, const FpMat& col) {
  GradedLayout L = hom_layout(X, Y, 0);
  ChainMap f;
  f.src = X;
  f.dst = Y;
  for (const auto& [i, sz] : L.blocks) {
    int dx = X.dim(i), dy = Y.dim(i);
    FpMat m(X.p, dy, dx);
    int off = L.offset_of(i);
    for (int u = 0; u < dy; ++u)
      for (int v = 0; v < dx; ++v) m.set(u, v, col.at(off + u * dx + v, 0));
    if (!m.is_zero()) f.comp[i] = m;
  }
  return f;
}

// Basis of the space of natural chain maps X -> Y: the degree-0 cycles of
// the enriched hom complex.
inline std::vector<DiagramMap> natural_map_basis(const Diagram& X, const Diagram& Y) {
  EnrichedHom H = enriched_hom(X, Y);
  std::vector<DiagramMap> out;
  int d0 = H.obj.dim(0);
  if (!d0) return out;
  FpMat Z = nullspace(H.obj.diff(0));
  if (!Z.cols) return out;
  FpMat amb = mat_mul(H.incl.at(0), Z);
  for (int k = 0; k < Z.cols; ++k) {
    DiagramMap phi;
    phi.src = X;
    phi.dst = Y;
    int off = 0;
    for (size_t a = 0; a < X.objects.size(); ++a) {
      int d = H.homs[a].dim(0);
      FpMat col(X.p, d, 1);
      for (int i = 0; i < d; ++i) col.set(i, 0, amb.at(off + i, k));
      off += d;
      phi.comp.push_back(hom_vector_to_map(X.objects[a], Y.objects[a], col));
    }
    out.push_back(std::move(phi));
  }
  return out;
}

inline int natural_map_space_dim(const Diagram& X, const Diagram& Y) {
  EnrichedHom H = enriched_hom(X, Y);
  return H.obj.dim(0) - rank(H.obj.diff(0));
}

// Search for an objectwise-isomorphic natural map: exhaustive over the
// natural map space when small, seeded sampling otherwise.  Dimension
// equality alone is never the verdict.
inline std::optional<DiagramMap> find_natural_iso(const Diagram& X, const Diagram& Y) {
  for (size_t a = 0; a < X.objects.size(); ++a) {
    std::set<int> degs;
    for (const auto& [n, k] : X.objects[a].dims) degs.insert(n);
    for (const auto& [n, k] : Y.objects[a].dims) degs.insert(n);
    for (int n : degs)
      if (X.objects[a].dim(n) != Y.objects[a].dim(n)) return std::nullopt;
  }
  std::vector<DiagramMap> basis = natural_map_basis(X, Y);
  bool all_zero = true;
  for (const auto& o : X.objects) all_zero = all_zero && o.is_zero();
  if (all_zero) {
    DiagramMap z;
    z.src = X;
    z.dst = Y;
    for (size_t a = 0; a < X.objects.size(); ++a)
      z.comp.push_back(zero_map(X.objects[a], Y.objects[a]));
    return z;
  }
  if (basis.empty()) return std::nullopt;
  uint32_t p = X.p;
  size_t k = basis.size();
  auto combine = [&](const std::vector<uint32_t>& coeff) {
    DiagramMap phi;
    phi.src = X;
    phi.dst = Y;
    for (size_t a = 0; a < X.objects.size(); ++a) {
      ChainMap f = zero_map(X.objects[a], Y.objects[a]);
      for (size_t i = 0; i < k; ++i)
        if (coeff[i]) f = map_add(f, detail::scale_map(coeff[i], basis[i].comp[a]));
      f.normalize();
      phi.comp.push_back(std::move(f));
    }
    return phi;
  };
  auto objectwise_iso = [&](const DiagramMap& phi) {
    for (const auto& f : phi.comp)
      if (!is_iso_map(f)) return false;
    return true;
  };
  double total = 1;
  for (size_t i = 0; i < k; ++i) total *= double(p);
  if (total <= 4096) {
    std::vector<uint32_t> coeff(k, 0);
    for (int t = 1; t < int(total); ++t) {
      int rem = t;
      for (size_t i = k; i-- > 0;) {
        coeff[i] = uint32_t(rem % int(p));
        rem /= int(p);
      }
      DiagramMap phi = combine(coeff);
      if (objectwise_iso(phi)) return phi;
    }
    return std::nullopt;
  }
  SplitMix64 rng(0x6e7269636865640bULL);
  for (int t = 0; t < 4096; ++t) {
    std::vector<uint32_t> coeff(k);
    for (size_t i = 0; i < k; ++i) coeff[i] = uint32_t(rng.next() % p);
    DiagramMap phi = combine(coeff);
    if (objectwise_iso(phi)) return phi;
  }
  return std::nullopt;
}

// -------- partial ends over a product index --------

// For X over A and F over A x B (standard product index layout): the
// diagram over B whose value at b is the end over a of Hom(X_a, F_(a,b)).
struct ExteriorHom {
  Diagram dia;
  std::vector<ChainComplex> ambs;
  std::vector<std::vector<ChainComplex>> homs;  // per B object, per A object
  std::vector<std::map<int, FpMat>> incls;
};

inline ExteriorHom exterior_hom(const ReedyCategory& B, const Diagram& X, const Diagram& F) {
  if (X.variance != Variance::presheaf || F.variance != Variance::presheaf)
    throw std::invalid_argument("exterior_hom: presheaf variance required");
  const FiniteCategory& a_cat = X.index.cat;
  int nB = B.cat.n_obj(), nmB = B.cat.n_mor();
  auto pobj = [&](int a, int b) { return a * nB + b; };
  auto pmor = [&](int f, int g) { return f * nmB + g; };
  ExteriorHom out;
  out.dia.index = B;
  out.dia.variance = Variance::presheaf;
  out.dia.p = X.p;
  for (int b = 0; b < nB; ++b) {
    std::vector<ChainComplex> homs;
    for (int a = 0; a < a_cat.n_obj(); ++a)
      homs.push_back(hom_complex(X.objects[size_t(a)], F.objects[size_t(pobj(a, b))]));
    ChainComplex amb = detail::family_sum(homs, X.p);
    std::map<int, FpMat> cons;
    for (const auto& [n, k] : amb.dims) {
      std::optional<FpMat> C;
      for (int m = 0; m < a_cat.n_mor(); ++m) {
        if (a_cat.is_identity(m)) continue;
        int a = a_cat.src(m), a2 = a_cat.dst(m);
        GradedLayout Lc =
            hom_layout(X.objects[size_t(a2)], F.objects[size_t(pobj(a, b))], n);
        if (!Lc.total) continue;
        FpMat row(X.p, Lc.total, k);
        // family phi: phi_a o X(m) = F(m, id) o phi_a2 in Hom(X_a2, F_(a,b))
        FpMat pre = hom_precompose_mat(X.objects[size_t(a2)], X.objects[size_t(a)],
                                       F.objects[size_t(pobj(a, b))], X.maps[size_t(m)], n);
        FpMat post = hom_postcompose_mat(
            X.objects[size_t(a2)], F.objects[size_t(pobj(a2, b))],
            F.objects[size_t(pobj(a, b))],
            F.maps[size_t(pmor(m, B.cat.identity[size_t(b)]))], n);
        int offa = detail::family_offset(homs, a, n), offa2 = detail::family_offset(homs, a2, n);
        for (int i = 0; i < pre.rows; ++i)
          for (int j = 0; j < pre.cols; ++j) detail::acc_entry(row, i, offa + j, pre.at(i, j));
        for (int i = 0; i < post.rows; ++i)
          for (int j = 0; j < post.cols; ++j)
            detail::acc_entry(row, i, offa2 + j, (X.p - post.at(i, j)) % X.p);
        C = C ? vstack(*C, row) : row;
      }
      if (C) cons[n] = *C;
    }
    SubcomplexData S = kernel_subcomplex(amb, cons);
    S.sub.p = X.p;
    out.dia.objects.push_back(S.sub);
    out.ambs.push_back(std::move(amb));
    out.homs.push_back(std::move(homs));
    out.incls.push_back(std::move(S.incl));
  }
  out.dia.maps.resize(size_t(nmB));
  for (int m2 = 0; m2 < nmB; ++m2) {
    int b = B.cat.src(m2), b2 = B.cat.dst(m2);
    auto ambient = [&](int n) {
      FpMat M(X.p, out.ambs[size_t(b)].dim(n), out.ambs[size_t(b2)].dim(n));
      int ro = 0, co = 0;
      for (int a = 0; a < a_cat.n_obj(); ++a) {
        FpMat blk = hom_postcompose_mat(
            X.objects[size_t(a)], F.objects[size_t(pobj(a, b2))], F.objects[size_t(pobj(a, b))],
            F.maps[size_t(pmor(a_cat.identity[size_t(a)], m2))], n);
        if (blk.rows && blk.cols) put_block(M, ro, co, blk);
        ro += out.homs[size_t(b)][size_t(a)].dim(n);
        co += out.homs[size_t(b2)][size_t(a)].dim(n);
      }
      return M;
    };
    out.dia.maps[size_t(m2)] =
        detail::restrict_between_kernels(out.dia.objects[size_t(b2)], out.incls[size_t(b2)],
                                         out.dia.objects[size_t(b)], out.incls[size_t(b)], ambient);
  }
  return out;
}

// -------- Day convolution --------

// Left Kan extension of the exterior tensor along a monoidal multiplication,
// which must be a right fibration of Reedy categories.
inline KanExtension day_convolution(const ReedyCategory& A, const ReedyProduct& P,
                                    const FunctorData& mult, const Diagram& X, const Diagram& Y) {
  FibrationVerdict v = is_right_fibration(P.reedy, A, mult);
  if (!v.verdict) {
    std::string msg = "day_convolution: the multiplication is not a right fibration";
    if (v.witness)
      msg += " (witness at " + v.witness->alpha + " over " + v.witness->beta + ")";
    throw std::invalid_argument(msg);
  }
  return left_kan(A, mult, exterior_tensor(P, X, Y));
}

// -------- lifting of diagram maps --------

// Degreewise construction of a diagonal filler h: Y -> E with h i = u and
// q h = v: at each index object the problem reduces to a chain-level lifting
// of the relative latching map of i against the relative matching map of q.
inline std::optional<DiagramMap> solve_lifting_diagram(const DiagramMap& i, const DiagramMap& q,
                                                       const DiagramMap& u, const DiagramMap& v) {
  const Diagram &Y = i.dst, &E = q.src;
  int no = Y.index.cat.n_obj();
  std::vector<int> order(static_cast<size_t>(no));
  for (int a = 0; a < no; ++a) order[size_t(a)] = a;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (Y.index.degree[size_t(a)] != Y.index.degree[size_t(b)])
      return Y.index.degree[size_t(a)] < Y.index.degree[size_t(b)];
    return a < b;
  });
  DiagramMap h;
  h.src = Y;
  h.dst = E;
  h.comp.resize(size_t(no));
  for (int alpha : order) {
    RelativeLatchingMap rl = relative_latching_map(i, alpha);
    LatchingData LE = latching_object(E, alpha);
    std::vector<ChainMap> lat_comps;
    for (const auto& [a, w] : rl.LY.shape.obj_parts) lat_comps.push_back(h.comp[size_t(a)]);
    ChainMap Lh = colimit_induced(rl.LY.colim, LE.colim, lat_comps);
    ChainMap top = factor_pushout(rl.corner, u.comp[size_t(alpha)],
                                  compose_maps(LE.to_value, Lh));
    RelativeMatchingMap rm = relative_matching_map(q, alpha);
    MatchingData MY = matching_object(Y, alpha);
    std::vector<ChainMap> mat_comps;
    for (const auto& [a, w] : MY.shape.obj_parts) mat_comps.push_back(h.comp[size_t(a)]);
    ChainMap Mh = limit_induced(MY.lim, rm.MX.lim, mat_comps);
    ChainMap bottom = factor_pullback(rm.corner, v.comp[size_t(alpha)],
                                      compose_maps(Mh, MY.from_value));
    auto lift = solve_lifting(rl.map, rm.map, top, bottom);
    if (!lift) return std::nullopt;
    h.comp[size_t(alpha)] = *lift;
  }
  if (!validate_diagram_map(h).ok() ||
      !diagram_map_equal(compose_diagram_maps(h, i), u) ||
      !diagram_map_equal(compose_diagram_maps(q, h), v))
    throw std::logic_error("solve_lifting_diagram: filler lost naturality");
  return h;
}

}  // namespace reedytk
