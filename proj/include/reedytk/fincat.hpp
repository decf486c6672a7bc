#pragma once

// Finite categories with a total composition table, functors between them,
// and the handful of constructions (opposite, product, comma, slices,
// subcategories) the Reedy layer is built from.  Objects and morphisms are
// identified by opaque strings; internally everything is index-based.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "reedytk/report.hpp"

namespace reedytk {

struct FiniteCategory {
  struct Mor {
    std::string id;
    int src = -1;
    int dst = -1;
  };

  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::vector<int> identity;  // object index -> morphism index
  std::unordered_map<uint64_t, int> compose_table;

  std::unordered_map<std::string, int> obj_index;
  std::unordered_map<std::string, int> mor_index;

  static uint64_t key(int g, int f) { return (uint64_t(uint32_t(g)) << 32) | uint32_t(f); }

  int add_object(const std::string& id) {
    if (obj_index.count(id)) throw std::invalid_argument("duplicate object id: " + id);
    obj_index[id] = int(objects.size());
    objects.push_back(id);
    identity.push_back(-1);
    return int(objects.size()) - 1;
  }

  int add_morphism(const std::string& id, int src, int dst) {
    if (mor_index.count(id)) throw std::invalid_argument("duplicate morphism id: " + id);
    mor_index[id] = int(morphisms.size());
    morphisms.push_back(Mor{id, src, dst});
    return int(morphisms.size()) - 1;
  }

  void set_identity(int obj, int mor) { identity[obj] = mor; }
  void set_compose(int g, int f, int gf) { compose_table[key(g, f)] = gf; }

  int n_obj() const { return int(objects.size()); }
  int n_mor() const { return int(morphisms.size()); }

  int obj(const std::string& id) const {
    auto it = obj_index.find(id);
    if (it == obj_index.end()) throw std::invalid_argument("unknown object id: " + id);
    return it->second;
  }
  int mor(const std::string& id) const {
    auto it = mor_index.find(id);
    if (it == mor_index.end()) throw std::invalid_argument("unknown morphism id: " + id);
    return it->second;
  }

  int src(int m) const { return morphisms[m].src; }
  int dst(int m) const { return morphisms[m].dst; }
  bool is_identity(int m) const { return identity[morphisms[m].src] == m && morphisms[m].src == morphisms[m].dst; }

  // g after f; throws if the pair is not composable or the table misses it
  int compose(int g, int f) const {
    auto it = compose_table.find(key(g, f));
    if (it == compose_table.end())
      throw std::invalid_argument("composite not defined: " + morphisms[g].id + " o " + morphisms[f].id);
    return it->second;
  }
  std::optional<int> try_compose(int g, int f) const {
    auto it = compose_table.find(key(g, f));
    if (it == compose_table.end()) return std::nullopt;
    return it->second;
  }

  std::vector<int> hom(int a, int b) const {
    std::vector<int> out;
    for (int m = 0; m < n_mor(); ++m)
      if (morphisms[m].src == a && morphisms[m].dst == b) out.push_back(m);
    return out;
  }
  std::vector<int> out_of(int a) const {
    std::vector<int> out;
    for (int m = 0; m < n_mor(); ++m)
      if (morphisms[m].src == a) out.push_back(m);
    return out;
  }
  std::vector<int> into(int b) const {
    std::vector<int> out;
    for (int m = 0; m < n_mor(); ++m)
      if (morphisms[m].dst == b) out.push_back(m);
    return out;
  }
};

inline ValidationReport validate_category(const FiniteCategory& c) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  for (int o = 0; o < c.n_obj(); ++o) {
    int id = c.identity[o];
    if (id < 0 || id >= c.n_mor()) {
      flag("missing identity", {c.objects[o]});
      continue;
    }
    if (c.src(id) != o || c.dst(id) != o)
      flag("identity endpoints", {c.objects[o], c.morphisms[id].id});
  }
  // composition defined exactly on composable pairs, with correct endpoints
  for (int f = 0; f < c.n_mor(); ++f)
    for (int g = 0; g < c.n_mor(); ++g) {
      bool composable = c.dst(f) == c.src(g);
      auto it = c.compose_table.find(FiniteCategory::key(g, f));
      if (composable && it == c.compose_table.end())
        flag("missing composite", {c.morphisms[g].id, c.morphisms[f].id});
      if (!composable && it != c.compose_table.end())
        flag("spurious composite", {c.morphisms[g].id, c.morphisms[f].id});
      if (composable && it != c.compose_table.end()) {
        int gf = it->second;
        if (gf < 0 || gf >= c.n_mor() || c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
          flag("composite endpoints", {c.morphisms[g].id, c.morphisms[f].id});
      }
    }
  if (!rep.ok()) return rep;  // identity/associativity laws need a total table
  for (int f = 0; f < c.n_mor(); ++f) {
    if (c.compose(f, c.identity[c.src(f)]) != f || c.compose(c.identity[c.dst(f)], f) != f)
      flag("identity law", {c.morphisms[f].id});
  }
  for (int f = 0; f < c.n_mor(); ++f)
    for (int g : c.out_of(c.dst(f)))
      for (int h : c.out_of(c.dst(g)))
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
          flag("associativity", {c.morphisms[h].id, c.morphisms[g].id, c.morphisms[f].id});
  return rep;
}

// Same objects/morphism ids, arrows reversed, composition transposed.
inline FiniteCategory opposite(const FiniteCategory& c) {
  FiniteCategory o;
  for (const auto& x : c.objects) o.add_object(x);
  for (const auto& m : c.morphisms) o.add_morphism(m.id, m.dst, m.src);
  o.identity = c.identity;
  for (const auto& [k, v] : c.compose_table) {
    int g = int(k >> 32), f = int(k & 0xffffffffu);
    o.set_compose(f, g, v);
  }
  return o;
}

inline std::string pair_id(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

struct ProductCategory {
  FiniteCategory cat;
  // component indices per product object / morphism
  std::vector<std::pair<int, int>> obj_parts;
  std::vector<std::pair<int, int>> mor_parts;
};

inline ProductCategory product(const FiniteCategory& A, const FiniteCategory& B) {
  ProductCategory P;
  for (int a = 0; a < A.n_obj(); ++a)
    for (int b = 0; b < B.n_obj(); ++b) {
      P.cat.add_object(pair_id(A.objects[a], B.objects[b]));
      P.obj_parts.push_back({a, b});
    }
  auto oidx = [&](int a, int b) { return a * B.n_obj() + b; };
  for (int f = 0; f < A.n_mor(); ++f)
    for (int g = 0; g < B.n_mor(); ++g) {
      P.cat.add_morphism(pair_id(A.morphisms[f].id, B.morphisms[g].id),
                         oidx(A.src(f), B.src(g)), oidx(A.dst(f), B.dst(g)));
      P.mor_parts.push_back({f, g});
    }
  auto midx = [&](int f, int g) { return f * B.n_mor() + g; };
  for (int a = 0; a < A.n_obj(); ++a)
    for (int b = 0; b < B.n_obj(); ++b)
      P.cat.set_identity(oidx(a, b), midx(A.identity[a], B.identity[b]));
  for (const auto& [kA, vA] : A.compose_table) {
    int gA = int(kA >> 32), fA = int(kA & 0xffffffffu);
    for (const auto& [kB, vB] : B.compose_table) {
      int gB = int(kB >> 32), fB = int(kB & 0xffffffffu);
      P.cat.set_compose(midx(gA, gB), midx(fA, fB), midx(vA, vB));
    }
  }
  return P;
}

// A functor A -> B given by index maps.
struct FunctorData {
  std::vector<int> obj_map;  // A object idx -> B object idx
  std::vector<int> mor_map;  // A morphism idx -> B morphism idx
};

inline ValidationReport validate_functor(const FiniteCategory& A, const FiniteCategory& B,
                                         const FunctorData& F) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  if (int(F.obj_map.size()) != A.n_obj() || int(F.mor_map.size()) != A.n_mor()) {
    flag("functor shape", {});
    return rep;
  }
  for (int m = 0; m < A.n_mor(); ++m) {
    int fm = F.mor_map[m];
    if (fm < 0 || fm >= B.n_mor()) { flag("functor range", {A.morphisms[m].id}); return rep; }
    if (B.src(fm) != F.obj_map[A.src(m)] || B.dst(fm) != F.obj_map[A.dst(m)])
      flag("functor endpoints", {A.morphisms[m].id});
  }
  if (!rep.ok()) return rep;  // identity/composition only meaningful afterwards
  for (int o = 0; o < A.n_obj(); ++o)
    if (F.mor_map[A.identity[o]] != B.identity[F.obj_map[o]])
      flag("functor identity", {A.objects[o]});
  for (int f = 0; f < A.n_mor(); ++f)
    for (int g : A.out_of(A.dst(f))) {
      auto bc = B.try_compose(F.mor_map[g], F.mor_map[f]);
      if (!bc || F.mor_map[A.compose(g, f)] != *bc)
        flag("functor composition", {A.morphisms[g].id, A.morphisms[f].id});
    }
  return rep;
}

inline FunctorData identity_functor(const FiniteCategory& A) {
  FunctorData F;
  F.obj_map.resize(A.n_obj());
  F.mor_map.resize(A.n_mor());
  for (int i = 0; i < A.n_obj(); ++i) F.obj_map[i] = i;
  for (int i = 0; i < A.n_mor(); ++i) F.mor_map[i] = i;
  return F;
}

inline FunctorData compose_functors(const FunctorData& F, const FunctorData& G) {
  // G after F
  FunctorData H;
  H.obj_map.resize(F.obj_map.size());
  H.mor_map.resize(F.mor_map.size());
  for (size_t i = 0; i < F.obj_map.size(); ++i) H.obj_map[i] = G.obj_map[F.obj_map[i]];
  for (size_t i = 0; i < F.mor_map.size(); ++i) H.mor_map[i] = G.mor_map[F.mor_map[i]];
  return H;
}

inline bool is_fully_faithful(const FiniteCategory& A, const FiniteCategory& B,
                              const FunctorData& F) {
  for (int a = 0; a < A.n_obj(); ++a)
    for (int b = 0; b < A.n_obj(); ++b) {
      auto ha = A.hom(a, b);
      auto hb = B.hom(F.obj_map[a], F.obj_map[b]);
      if (ha.size() != hb.size()) return false;
      std::set<int> image;
      for (int m : ha) image.insert(F.mor_map[m]);
      if (image.size() != ha.size()) return false;
      for (int m : hb)
        if (!image.count(m)) return false;
    }
  return true;
}

// Comma category (F / c0): objects (a, u: F(a) -> c0), morphisms g: a -> a'
// with u' o F(g) = u.  `mors` restricts which A-morphisms may appear (by
// index into A); empty means all.
struct CommaCategory {
  FiniteCategory cat;
  FunctorData projection;                  // to A
  std::vector<std::pair<int, int>> obj_parts;  // (A object, C morphism u)
  std::vector<int> mor_base;               // comma morphism -> A morphism
};

namespace detail {
inline std::string comma_obj_id(const std::string& a, const std::string& u) {
  return "<" + a + "|" + u + ">";
}
inline std::string comma_mor_id(const std::string& g, const std::string& u,
                                const std::string& u2) {
  return "<" + g + "|" + u + "|" + u2 + ">";
}
}  // namespace detail

inline CommaCategory comma(const FiniteCategory& A, const FiniteCategory& C,
                           const FunctorData& F, int c0,
                           const std::vector<int>& mors = {}) {
  CommaCategory K;
  std::vector<char> allowed(A.n_mor(), mors.empty() ? 1 : 0);
  for (int m : mors) allowed[m] = 1;
  std::map<std::pair<int, int>, int> obj_of;
  for (int a = 0; a < A.n_obj(); ++a)
    for (int u = 0; u < C.n_mor(); ++u) {
      if (C.src(u) != F.obj_map[a] || C.dst(u) != c0) continue;
      int idx = K.cat.add_object(detail::comma_obj_id(A.objects[a], C.morphisms[u].id));
      K.obj_parts.push_back({a, u});
      obj_of[{a, u}] = idx;
    }
  std::map<std::pair<int, std::pair<int, int>>, int> mor_of;  // (g, (src obj, dst obj))
  for (int g = 0; g < A.n_mor(); ++g) {
    if (!allowed[g]) continue;
    for (const auto& [parts, oi] : obj_of) {
      auto [a, u] = parts;
      if (A.src(g) != a) continue;
      // targets (a', u') with u' o F(g) = u
      for (const auto& [parts2, oi2] : obj_of) {
        auto [a2, u2] = parts2;
        if (A.dst(g) != a2) continue;
        if (C.compose(u2, F.mor_map[g]) != u) continue;
        int mi = K.cat.add_morphism(
            detail::comma_mor_id(A.morphisms[g].id, C.morphisms[u].id, C.morphisms[u2].id), oi,
            oi2);
        K.mor_base.push_back(g);
        mor_of[{g, {oi, oi2}}] = mi;
      }
    }
  }
  for (int o = 0; o < K.cat.n_obj(); ++o) {
    auto [a, u] = K.obj_parts[o];
    K.cat.set_identity(o, mor_of.at({A.identity[a], {o, o}}));
  }
  for (int m1 = 0; m1 < K.cat.n_mor(); ++m1)
    for (int m2 = 0; m2 < K.cat.n_mor(); ++m2) {
      if (K.cat.dst(m1) != K.cat.src(m2)) continue;
      int g = A.compose(K.mor_base[m2], K.mor_base[m1]);
      K.cat.set_compose(m2, m1, mor_of.at({g, {K.cat.src(m1), K.cat.dst(m2)}}));
    }
  K.projection.obj_map.resize(K.cat.n_obj());
  for (int o = 0; o < K.cat.n_obj(); ++o) K.projection.obj_map[o] = K.obj_parts[o].first;
  K.projection.mor_map = K.mor_base;
  return K;
}

// Coslice comma (c0 / F): objects (a, u: c0 -> F(a)), morphisms g with
// F(g) o u = u'.
inline CommaCategory coslice_comma(const FiniteCategory& A, const FiniteCategory& C,
                                   const FunctorData& F, int c0,
                                   const std::vector<int>& mors = {}) {
  CommaCategory K;
  std::vector<char> allowed(A.n_mor(), mors.empty() ? 1 : 0);
  for (int m : mors) allowed[m] = 1;
  std::map<std::pair<int, int>, int> obj_of;
  for (int a = 0; a < A.n_obj(); ++a)
    for (int u = 0; u < C.n_mor(); ++u) {
      if (C.src(u) != c0 || C.dst(u) != F.obj_map[a]) continue;
      int idx = K.cat.add_object(detail::comma_obj_id(A.objects[a], C.morphisms[u].id));
      K.obj_parts.push_back({a, u});
      obj_of[{a, u}] = idx;
    }
  std::map<std::pair<int, std::pair<int, int>>, int> mor_of;
  for (int g = 0; g < A.n_mor(); ++g) {
    if (!allowed[g]) continue;
    for (const auto& [parts, oi] : obj_of) {
      auto [a, u] = parts;
      if (A.src(g) != a) continue;
      for (const auto& [parts2, oi2] : obj_of) {
        auto [a2, u2] = parts2;
        if (A.dst(g) != a2) continue;
        if (C.compose(F.mor_map[g], u) != u2) continue;
        int mi = K.cat.add_morphism(
            detail::comma_mor_id(A.morphisms[g].id, C.morphisms[u].id, C.morphisms[u2].id), oi,
            oi2);
        K.mor_base.push_back(g);
        mor_of[{g, {oi, oi2}}] = mi;
      }
    }
  }
  for (int o = 0; o < K.cat.n_obj(); ++o) {
    auto [a, u] = K.obj_parts[o];
    K.cat.set_identity(o, mor_of.at({A.identity[a], {o, o}}));
  }
  for (int m1 = 0; m1 < K.cat.n_mor(); ++m1)
    for (int m2 = 0; m2 < K.cat.n_mor(); ++m2) {
      if (K.cat.dst(m1) != K.cat.src(m2)) continue;
      int g = A.compose(K.mor_base[m2], K.mor_base[m1]);
      K.cat.set_compose(m2, m1, mor_of.at({g, {K.cat.src(m1), K.cat.dst(m2)}}));
    }
  K.projection.obj_map.resize(K.cat.n_obj());
  for (int o = 0; o < K.cat.n_obj(); ++o) K.projection.obj_map[o] = K.obj_parts[o].first;
  K.projection.mor_map = K.mor_base;
  return K;
}

struct Subcategory {
  FiniteCategory cat;
  std::vector<int> obj_orig;  // new obj idx -> original
  std::vector<int> mor_orig;  // new mor idx -> original
};

inline Subcategory full_subcategory(const FiniteCategory& c, const std::vector<int>& keep_objs) {
  Subcategory S;
  std::vector<int> omap(c.n_obj(), -1);
  for (int o : keep_objs) {
    omap[o] = S.cat.add_object(c.objects[o]);
    S.obj_orig.push_back(o);
  }
  std::vector<int> mmap(c.n_mor(), -1);
  for (int m = 0; m < c.n_mor(); ++m) {
    if (omap[c.src(m)] < 0 || omap[c.dst(m)] < 0) continue;
    mmap[m] = S.cat.add_morphism(c.morphisms[m].id, omap[c.src(m)], omap[c.dst(m)]);
    S.mor_orig.push_back(m);
  }
  for (int o : keep_objs) S.cat.set_identity(omap[o], mmap[c.identity[o]]);
  for (int m1 = 0; m1 < c.n_mor(); ++m1) {
    if (mmap[m1] < 0) continue;
    for (int m2 = 0; m2 < c.n_mor(); ++m2) {
      if (mmap[m2] < 0 || c.dst(m1) != c.src(m2)) continue;
      S.cat.set_compose(mmap[m2], mmap[m1], mmap[c.compose(m2, m1)]);
    }
  }
  return S;
}

// Lluf subcategory spanned by a composition-closed set of morphisms
// containing all identities.
inline Subcategory subcategory_on_morphisms(const FiniteCategory& c,
                                            const std::vector<int>& keep_mors) {
  Subcategory S;
  for (int o = 0; o < c.n_obj(); ++o) {
    S.cat.add_object(c.objects[o]);
    S.obj_orig.push_back(o);
  }
  std::vector<int> mmap(c.n_mor(), -1);
  for (int m : keep_mors) {
    mmap[m] = S.cat.add_morphism(c.morphisms[m].id, c.src(m), c.dst(m));
    S.mor_orig.push_back(m);
  }
  for (int o = 0; o < c.n_obj(); ++o) {
    if (mmap[c.identity[o]] < 0) throw std::invalid_argument("subcategory misses an identity");
    S.cat.set_identity(o, mmap[c.identity[o]]);
  }
  for (int m1 : keep_mors)
    for (int m2 : keep_mors) {
      if (c.dst(m1) != c.src(m2)) continue;
      int gf = c.compose(m2, m1);
      if (mmap[gf] < 0) throw std::invalid_argument("subcategory not composition-closed");
      S.cat.set_compose(mmap[m2], mmap[m1], mmap[gf]);
    }
  return S;
}

inline bool is_epimorphism(const FiniteCategory& c, int m) {
  int b = c.dst(m);
  for (int g = 0; g < c.n_mor(); ++g) {
    if (c.src(g) != b) continue;
    for (int h = 0; h < c.n_mor(); ++h) {
      if (c.src(h) != b || c.dst(h) != c.dst(g) || h == g) continue;
      if (c.compose(g, m) == c.compose(h, m)) return false;
    }
  }
  return true;
}

inline bool is_monomorphism(const FiniteCategory& c, int m) {
  int a = c.src(m);
  for (int g = 0; g < c.n_mor(); ++g) {
    if (c.dst(g) != a) continue;
    for (int h = 0; h < c.n_mor(); ++h) {
      if (c.dst(h) != a || c.src(h) != c.src(g) || h == g) continue;
      if (c.compose(m, g) == c.compose(m, h)) return false;
    }
  }
  return true;
}

// Connectivity of the nerve's 1-skeleton: union-find over objects with an
// undirected edge per morphism.
inline bool nerve_is_empty_or_connected(const FiniteCategory& c) {
  int n = c.n_obj();
  if (n == 0) return true;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::vector<int>* pp = &parent;
  auto find = [pp](int x) {
    while ((*pp)[x] != x) {
      (*pp)[x] = (*pp)[(*pp)[x]];
      x = (*pp)[x];
    }
    return x;
  };
  for (const auto& m : c.morphisms) {
    int a = find(m.src), b = find(m.dst);
    if (a != b) parent[a] = b;
  }
  int root = find(0);
  for (int i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

// Binary product of x and y: object w with projections satisfying the
// universal property, found by exhaustive search.
struct BinaryProduct {
  int obj;
  int pi1;
  int pi2;
};

inline std::optional<BinaryProduct> find_binary_product(const FiniteCategory& c, int x, int y) {
  for (int w = 0; w < c.n_obj(); ++w)
    for (int p1 : c.hom(w, x))
      for (int p2 : c.hom(w, y)) {
        bool universal = true;
        for (int z = 0; z < c.n_obj() && universal; ++z)
          for (int u : c.hom(z, x)) {
            if (!universal) break;
            for (int v : c.hom(z, y)) {
              int count = 0;
              for (int m : c.hom(z, w))
                if (c.compose(p1, m) == u && c.compose(p2, m) == v) ++count;
              if (count != 1) { universal = false; break; }
            }
          }
        if (universal) return BinaryProduct{w, p1, p2};
      }
  return std::nullopt;
}

inline std::optional<BinaryProduct> find_binary_coproduct(const FiniteCategory& c, int x, int y) {
  auto r = find_binary_product(opposite(c), x, y);
  if (!r) return std::nullopt;
  return r;  // same indices; morphism ids are shared with c
}

}  // namespace reedytk
