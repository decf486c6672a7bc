#pragma once

// Reedy structure on a finite category: a degree per object plus two lluf
// subcategories (degree-raising and degree-lowering morphisms) such that
// every morphism factors uniquely as a lowering morphism followed by a
// raising one.  The verifier reports every broken law with witnesses.

#include <cstdint>
#include <functional>
#include <utility>

#include "reedytk/fincat.hpp"

namespace reedytk {

struct ReedyCategory {
  FiniteCategory cat;
  std::vector<int> degree;     // per object
  std::vector<char> is_raise;  // per morphism: member of the raising subcategory
  std::vector<char> is_lower;  // per morphism: member of the lowering subcategory

  std::vector<int> raise_mors() const {
    std::vector<int> out;
    for (int m = 0; m < cat.n_mor(); ++m)
      if (is_raise[m]) out.push_back(m);
    return out;
  }
  std::vector<int> lower_mors() const {
    std::vector<int> out;
    for (int m = 0; m < cat.n_mor(); ++m)
      if (is_lower[m]) out.push_back(m);
    return out;
  }
};

// All non-identity morphisms raise the degree.
inline bool is_direct(const ReedyCategory& A) {
  for (int m = 0; m < A.cat.n_mor(); ++m)
    if (!A.cat.is_identity(m) && A.is_lower[m]) return false;
  return true;
}

// All non-identity morphisms lower the degree.
inline bool is_inverse(const ReedyCategory& A) {
  for (int m = 0; m < A.cat.n_mor(); ++m)
    if (!A.cat.is_identity(m) && A.is_raise[m]) return false;
  return true;
}

// Every (lower, raise) pair composing to m.
inline std::vector<std::pair<int, int>> factorizations(const ReedyCategory& A, int m) {
  std::vector<std::pair<int, int>> out;
  for (int l = 0; l < A.cat.n_mor(); ++l) {
    if (!A.is_lower[l] || A.cat.src(l) != A.cat.src(m)) continue;
    for (int r = 0; r < A.cat.n_mor(); ++r) {
      if (!A.is_raise[r] || A.cat.dst(r) != A.cat.dst(m)) continue;
      if (A.cat.dst(l) != A.cat.src(r)) continue;
      auto c = A.cat.try_compose(r, l);
      if (c && *c == m) out.push_back({l, r});
    }
  }
  return out;
}

inline ValidationReport verify_reedy(const ReedyCategory& A) {
  ValidationReport rep = validate_category(A.cat);
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  if (int(A.degree.size()) != A.cat.n_obj() || int(A.is_raise.size()) != A.cat.n_mor() ||
      int(A.is_lower.size()) != A.cat.n_mor()) {
    flag("structure shape", {});
    return rep;
  }
  if (!rep.ok()) return rep;  // Reedy laws presuppose a category

  const FiniteCategory& c = A.cat;
  auto mid = [&](int m) { return c.morphisms[m].id; };

  for (int o = 0; o < c.n_obj(); ++o) {
    int i = c.identity[o];
    if (!A.is_raise[i] || !A.is_lower[i]) flag("identity class marking", {c.objects[o]});
  }
  for (int m = 0; m < c.n_mor(); ++m) {
    if (c.is_identity(m)) continue;
    if (A.is_raise[m] && A.is_lower[m]) flag("ambiguous class marking", {mid(m)});
    // a linear extension of the degree order must be possible: raising
    // morphisms strictly increase degree, lowering ones strictly decrease it
    if (A.is_raise[m] && A.degree[c.dst(m)] <= A.degree[c.src(m)])
      flag("linear extension violation", {mid(m)});
    if (A.is_lower[m] && A.degree[c.dst(m)] >= A.degree[c.src(m)])
      flag("linear extension violation", {mid(m)});
  }
  for (int f = 0; f < c.n_mor(); ++f)
    for (int g : c.out_of(c.dst(f))) {
      int gf = c.compose(g, f);
      if (A.is_raise[f] && A.is_raise[g] && !A.is_raise[gf])
        flag("raise class not closed", {mid(g), mid(f)});
      if (A.is_lower[f] && A.is_lower[g] && !A.is_lower[gf])
        flag("lower class not closed", {mid(g), mid(f)});
    }
  for (int m = 0; m < c.n_mor(); ++m) {
    auto fs = factorizations(A, m);
    if (fs.empty()) flag("missing factorization", {mid(m)});
    if (fs.size() > 1)
      flag("non-unique factorization", {mid(m), mid(fs[0].first), mid(fs[0].second),
                                        mid(fs[1].first), mid(fs[1].second)});
  }
  return rep;
}

// The unique (lower, raise) factorization of m; verify_reedy first.
inline std::pair<int, int> factorize(const ReedyCategory& A, int m) {
  auto fs = factorizations(A, m);
  if (fs.size() != 1)
    throw std::logic_error("factorize: morphism lacks a unique (lower, raise) factorization: " +
                           A.cat.morphisms[m].id);
  return fs[0];
}

// Same degrees, arrows reversed: raising and lowering swap roles.
inline ReedyCategory opposite_reedy(const ReedyCategory& A) {
  ReedyCategory O;
  O.cat = opposite(A.cat);
  O.degree = A.degree;
  O.is_raise = A.is_lower;
  O.is_lower = A.is_raise;
  return O;
}

inline ReedyCategory terminal_reedy() {
  ReedyCategory T;
  int o = T.cat.add_object("*");
  int i = T.cat.add_morphism("id_*", o, o);
  T.cat.set_identity(o, i);
  T.cat.set_compose(i, i, i);
  T.degree = {0};
  T.is_raise = {1};
  T.is_lower = {1};
  return T;
}

struct ReedyProduct {
  ReedyCategory reedy;
  std::vector<std::pair<int, int>> obj_parts;
  std::vector<std::pair<int, int>> mor_parts;
};

// Degrees add; a pair raises iff both components raise, dually for lowering.
inline ReedyProduct product_reedy(const ReedyCategory& A, const ReedyCategory& B) {
  ProductCategory P = product(A.cat, B.cat);
  ReedyProduct R;
  R.reedy.cat = std::move(P.cat);
  R.obj_parts = std::move(P.obj_parts);
  R.mor_parts = std::move(P.mor_parts);
  for (auto& [a, b] : R.obj_parts) R.reedy.degree.push_back(A.degree[a] + B.degree[b]);
  for (auto& [f, g] : R.mor_parts) {
    R.reedy.is_raise.push_back(A.is_raise[f] && B.is_raise[g]);
    R.reedy.is_lower.push_back(A.is_lower[f] && B.is_lower[g]);
  }
  return R;
}

// The diagonal functor A -> A x A over product_reedy(A, A).
inline FunctorData diagonal_functor(const ReedyCategory& A) {
  FunctorData D;
  int no = A.cat.n_obj(), nm = A.cat.n_mor();
  D.obj_map.resize(no);
  D.mor_map.resize(nm);
  for (int o = 0; o < no; ++o) D.obj_map[o] = o * no + o;
  for (int m = 0; m < nm; ++m) D.mor_map[m] = m * nm + m;
  return D;
}

// Reedy functors preserve both morphism classes on top of functoriality.
inline ValidationReport validate_reedy_functor(const ReedyCategory& A, const ReedyCategory& B,
                                               const FunctorData& F) {
  ValidationReport rep = validate_functor(A.cat, B.cat, F);
  if (!rep.ok()) return rep;
  for (int m = 0; m < A.cat.n_mor(); ++m) {
    if (A.is_raise[m] && !B.is_raise[F.mor_map[m]])
      rep.violations.push_back({"raise class not preserved", {A.cat.morphisms[m].id}});
    if (A.is_lower[m] && !B.is_lower[F.mor_map[m]])
      rep.violations.push_back({"lower class not preserved", {A.cat.morphisms[m].id}});
  }
  return rep;
}

// -------- boundary comma categories --------

struct BoundaryComma {
  FiniteCategory cat;
  // per object: (object of A it sits over, the structure morphism of A)
  std::vector<std::pair<int, int>> obj_parts;
  // per morphism: the underlying morphism of A
  std::vector<int> mor_base;
};

namespace detail {
// Keeps the vertices whose structure morphism is a non-identity member of the
// given class.
inline BoundaryComma keep_structure_class(const std::vector<char>& in_class,
                                          const FiniteCategory& base, const CommaCategory& K) {
  std::vector<int> keep;
  for (int o = 0; o < K.cat.n_obj(); ++o) {
    int u = K.obj_parts[o].second;
    if (!base.is_identity(u) && in_class[u]) keep.push_back(o);
  }
  Subcategory S = full_subcategory(K.cat, keep);
  BoundaryComma B;
  B.cat = std::move(S.cat);
  for (int o : keep) B.obj_parts.push_back(K.obj_parts[o]);
  for (int m : S.mor_orig) B.mor_base.push_back(K.mor_base[m]);
  return B;
}
}  // namespace detail

// Non-identity raising morphisms into alpha, with raising maps between them.
inline BoundaryComma latching_category(const ReedyCategory& A, int alpha) {
  return detail::keep_structure_class(
      A.is_raise, A.cat, comma(A.cat, A.cat, identity_functor(A.cat), alpha, A.raise_mors()));
}

// Non-identity lowering morphisms out of alpha, with lowering maps between
// them.
inline BoundaryComma matching_category(const ReedyCategory& A, int alpha) {
  return detail::keep_structure_class(
      A.is_lower, A.cat, coslice_comma(A.cat, A.cat, identity_functor(A.cat), alpha, A.lower_mors()));
}

// -------- lowering-part restriction --------

struct LowerRestriction {
  ReedyCategory reedy;        // inverse Reedy structure on the lowering part
  std::vector<int> mor_orig;  // restricted morphism -> original
  std::vector<int> mor_new;   // original morphism -> restricted (or -1)
};

inline LowerRestriction lower_restriction(const ReedyCategory& A) {
  Subcategory S = subcategory_on_morphisms(A.cat, A.lower_mors());
  LowerRestriction R;
  R.reedy.cat = std::move(S.cat);
  R.reedy.degree = A.degree;
  R.mor_orig = S.mor_orig;
  R.mor_new.assign(A.cat.n_mor(), -1);
  for (int m = 0; m < int(R.mor_orig.size()); ++m) R.mor_new[R.mor_orig[m]] = m;
  R.reedy.is_raise.assign(R.reedy.cat.n_mor(), 0);
  R.reedy.is_lower.assign(R.reedy.cat.n_mor(), 1);
  for (int m = 0; m < R.reedy.cat.n_mor(); ++m)
    if (R.reedy.cat.is_identity(m)) R.reedy.is_raise[m] = 1;
  return R;
}

// Restrict a class-preserving functor to the lowering parts.
inline FunctorData restrict_functor_to_lower(const FunctorData& F, const LowerRestriction& RA,
                                             const LowerRestriction& RB) {
  FunctorData G;
  G.obj_map = F.obj_map;  // lluf: same objects
  G.mor_map.resize(RA.reedy.cat.n_mor());
  for (int m = 0; m < RA.reedy.cat.n_mor(); ++m) {
    int orig = RA.mor_orig[m];
    int img = RB.mor_new[F.mor_map[orig]];
    if (img < 0) throw std::invalid_argument("functor does not preserve the lowering part");
    G.mor_map[m] = img;
  }
  return G;
}

// -------- comma Reedy category of a functor over a target object --------

struct CommaReedy {
  ReedyCategory reedy;  // inverse: only lowering maps appear
  // per object: (object of A, morphism v of B from F(object) to beta)
  std::vector<std::pair<int, int>> obj_parts;
};

// Objects are pairs (a, v: F(a) -> beta) with v arbitrary in B; morphisms are
// lowering maps g of A with v = v' o F(g).  Degrees are inherited from A, so
// the result is an inverse Reedy category.
inline CommaReedy comma_reedy(const ReedyCategory& A, const ReedyCategory& B,
                              const FunctorData& F, int beta) {
  CommaCategory K = comma(A.cat, B.cat, F, beta, A.lower_mors());
  CommaReedy R;
  R.obj_parts = K.obj_parts;
  R.reedy.cat = std::move(K.cat);
  for (auto& [a, v] : R.obj_parts) {
    (void)v;
    R.reedy.degree.push_back(A.degree[a]);
  }
  R.reedy.is_raise.assign(R.reedy.cat.n_mor(), 0);
  R.reedy.is_lower.assign(R.reedy.cat.n_mor(), 1);
  for (int m = 0; m < R.reedy.cat.n_mor(); ++m)
    if (R.reedy.cat.is_identity(m)) R.reedy.is_raise[m] = 1;
  return R;
}

// Dual comma construction: objects are pairs (a, v: beta -> F(a)) with v
// arbitrary in B; morphisms are raising maps g of A with v' = F(g) o v.
// Degrees are inherited from A, so the result is a direct Reedy category.
inline CommaReedy comma_reedy_under(const ReedyCategory& A, const ReedyCategory& B,
                                    const FunctorData& F, int beta) {
  CommaCategory K = coslice_comma(A.cat, B.cat, F, beta, A.raise_mors());
  CommaReedy R;
  R.obj_parts = K.obj_parts;
  R.reedy.cat = std::move(K.cat);
  for (auto& [a, v] : R.obj_parts) {
    (void)v;
    R.reedy.degree.push_back(A.degree[a]);
  }
  R.reedy.is_raise.assign(R.reedy.cat.n_mor(), 1);
  R.reedy.is_lower.assign(R.reedy.cat.n_mor(), 0);
  for (int m = 0; m < R.reedy.cat.n_mor(); ++m)
    if (R.reedy.cat.is_identity(m)) R.reedy.is_lower[m] = 1;
  return R;
}

// -------- slice Reedy categories over an ambient category --------

struct SliceReedy {
  ReedyCategory reedy;
  // per object: (A object a, C morphism u between F(a) and gamma)
  std::vector<std::pair<int, int>> obj_parts;
  std::vector<int> mor_base;  // slice morphism -> A morphism
};

// (A/gamma): objects (a, u: F(a) -> gamma), all morphisms of A over them,
// with degree and both classes inherited along the forgetful functor.
inline SliceReedy slice_reedy(const ReedyCategory& A, const FiniteCategory& C,
                              const FunctorData& F, int gamma) {
  CommaCategory K = comma(A.cat, C, F, gamma);
  SliceReedy S;
  S.obj_parts = K.obj_parts;
  S.mor_base = K.mor_base;
  S.reedy.cat = std::move(K.cat);
  for (auto& [a, u] : S.obj_parts) {
    (void)u;
    S.reedy.degree.push_back(A.degree[a]);
  }
  for (int m : S.mor_base) {
    S.reedy.is_raise.push_back(A.is_raise[m]);
    S.reedy.is_lower.push_back(A.is_lower[m]);
  }
  return S;
}

// (gamma/A): objects (a, u: gamma -> F(a)), structure dual to slice_reedy.
inline SliceReedy coslice_reedy(const ReedyCategory& A, const FiniteCategory& C,
                                const FunctorData& F, int gamma) {
  CommaCategory K = coslice_comma(A.cat, C, F, gamma);
  SliceReedy S;
  S.obj_parts = K.obj_parts;
  S.mor_base = K.mor_base;
  S.reedy.cat = std::move(K.cat);
  for (auto& [a, u] : S.obj_parts) {
    (void)u;
    S.reedy.degree.push_back(A.degree[a]);
  }
  for (int m : S.mor_base) {
    S.reedy.is_raise.push_back(A.is_raise[m]);
    S.reedy.is_lower.push_back(A.is_lower[m]);
  }
  return S;
}

// -------- enumeration of Reedy functors --------

namespace detail {
inline bool assignment_consistent(const FiniteCategory& A, const FiniteCategory& B,
                                  const std::vector<int>& mor_map, int just_set) {
  // check all compositions whose three participants are all assigned and
  // involve the morphism just set
  for (int f = 0; f < A.n_mor(); ++f) {
    if (mor_map[f] < 0) continue;
    for (int g : A.out_of(A.dst(f))) {
      if (mor_map[g] < 0) continue;
      int gf = A.compose(g, f);
      if (mor_map[gf] < 0) continue;
      if (f != just_set && g != just_set && gf != just_set) continue;
      auto bc = B.try_compose(mor_map[g], mor_map[f]);
      if (!bc || *bc != mor_map[gf]) return false;
    }
  }
  return true;
}
}  // namespace detail

// All class-preserving functors A -> B, in a deterministic order.
inline std::vector<FunctorData> enumerate_reedy_functors(const ReedyCategory& A,
                                                         const ReedyCategory& B,
                                                         size_t limit = size_t(-1)) {
  std::vector<FunctorData> out;
  int no = A.cat.n_obj(), nm = A.cat.n_mor();
  std::vector<int> obj_map(no, -1), mor_map(nm, -1);
  std::vector<int> free_mors;
  for (int m = 0; m < nm; ++m)
    if (!A.cat.is_identity(m)) free_mors.push_back(m);

  std::function<void(size_t)> assign_mor = [&](size_t k) {
    if (out.size() >= limit) return;
    if (k == free_mors.size()) {
      FunctorData F;
      F.obj_map = obj_map;
      F.mor_map = mor_map;
      out.push_back(std::move(F));
      return;
    }
    int m = free_mors[k];
    for (int cand : B.cat.hom(obj_map[A.cat.src(m)], obj_map[A.cat.dst(m)])) {
      if (A.is_raise[m] && !B.is_raise[cand]) continue;
      if (A.is_lower[m] && !B.is_lower[cand]) continue;
      mor_map[m] = cand;
      if (detail::assignment_consistent(A.cat, B.cat, mor_map, m)) assign_mor(k + 1);
      mor_map[m] = -1;
      if (out.size() >= limit) return;
    }
  };

  std::function<void(int)> assign_obj = [&](int o) {
    if (out.size() >= limit) return;
    if (o == no) {
      for (int i = 0; i < no; ++i) mor_map[A.cat.identity[i]] = B.cat.identity[obj_map[i]];
      assign_mor(0);
      for (int i = 0; i < no; ++i) mor_map[A.cat.identity[i]] = -1;
      return;
    }
    for (int cand = 0; cand < B.cat.n_obj(); ++cand) {
      obj_map[o] = cand;
      assign_obj(o + 1);
      obj_map[o] = -1;
      if (out.size() >= limit) return;
    }
  };
  assign_obj(0);
  return out;
}

}  // namespace reedytk
