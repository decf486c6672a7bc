#pragma once

// Finite set-valued presheaves over a finite category: representables,
// boundaries of representables (as honest colimits over the latching
// category), natural transformations, and the category of elements with its
// inherited Reedy structure.

#include <numeric>

#include "reedytk/reedy.hpp"

namespace reedytk {

struct SetPresheaf {
  // size[a] = number of elements over object a
  std::vector<int> size;
  // act[m] : K(dst m) -> K(src m), contravariant
  std::vector<std::vector<int>> act;
};

inline ValidationReport validate_presheaf(const FiniteCategory& A, const SetPresheaf& K) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  if (int(K.size.size()) != A.n_obj() || int(K.act.size()) != A.n_mor()) {
    flag("presheaf shape", {});
    return rep;
  }
  for (int m = 0; m < A.n_mor(); ++m) {
    if (int(K.act[m].size()) != K.size[A.dst(m)]) {
      flag("presheaf shape", {A.morphisms[m].id});
      return rep;
    }
    for (int v : K.act[m])
      if (v < 0 || v >= K.size[A.src(m)]) {
        flag("presheaf shape", {A.morphisms[m].id});
        return rep;
      }
  }
  for (int o = 0; o < A.n_obj(); ++o) {
    const auto& idact = K.act[A.identity[o]];
    for (int s = 0; s < K.size[o]; ++s)
      if (idact[s] != s) flag("presheaf identity", {A.objects[o]});
  }
  for (int f = 0; f < A.n_mor(); ++f)
    for (int g : A.out_of(A.dst(f))) {
      int gf = A.compose(g, f);
      for (int s = 0; s < K.size[A.dst(g)]; ++s)
        if (K.act[gf][s] != K.act[f][K.act[g][s]])
          flag("presheaf composition", {A.morphisms[g].id, A.morphisms[f].id});
    }
  return rep;
}

struct PresheafMap {
  std::vector<std::vector<int>> comp;  // per object a: K(a) -> L(a)
};

inline ValidationReport validate_presheaf_map(const FiniteCategory& A, const SetPresheaf& K,
                                              const SetPresheaf& L, const PresheafMap& f) {
  ValidationReport rep;
  auto flag = [&](const std::string& law, std::vector<std::string> w) {
    rep.violations.push_back({law, std::move(w)});
  };
  if (int(f.comp.size()) != A.n_obj()) {
    flag("presheaf map shape", {});
    return rep;
  }
  for (int o = 0; o < A.n_obj(); ++o) {
    if (int(f.comp[o].size()) != K.size[o]) {
      flag("presheaf map shape", {A.objects[o]});
      return rep;
    }
    for (int v : f.comp[o])
      if (v < 0 || v >= L.size[o]) {
        flag("presheaf map shape", {A.objects[o]});
        return rep;
      }
  }
  for (int m = 0; m < A.n_mor(); ++m) {
    int a = A.src(m), b = A.dst(m);
    for (int s = 0; s < K.size[b]; ++s)
      if (f.comp[a][K.act[m][s]] != L.act[m][f.comp[b][s]])
        flag("presheaf map naturality", {A.morphisms[m].id});
  }
  return rep;
}

// Representable presheaf y(alpha): elements over a are the morphisms a ->
// alpha, indexed by their position in hom(a, alpha).
struct Representable {
  SetPresheaf pre;
  std::vector<std::vector<int>> elem_mor;  // per object: element -> A-morphism
};

inline Representable yoneda(const FiniteCategory& A, int alpha) {
  Representable Y;
  Y.pre.size.resize(A.n_obj());
  Y.elem_mor.resize(A.n_obj());
  std::vector<std::map<int, int>> index_of(A.n_obj());
  for (int a = 0; a < A.n_obj(); ++a) {
    Y.elem_mor[a] = A.hom(a, alpha);
    Y.pre.size[a] = int(Y.elem_mor[a].size());
    for (int i = 0; i < Y.pre.size[a]; ++i) index_of[a][Y.elem_mor[a][i]] = i;
  }
  Y.pre.act.resize(A.n_mor());
  for (int m = 0; m < A.n_mor(); ++m) {
    int a = A.src(m), b = A.dst(m);
    Y.pre.act[m].resize(Y.pre.size[b]);
    for (int i = 0; i < Y.pre.size[b]; ++i)
      Y.pre.act[m][i] = index_of[a].at(A.compose(Y.elem_mor[b][i], m));
  }
  return Y;
}

namespace detail {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  }
};
}  // namespace detail

// Boundary of a representable: the colimit of y(alpha') over the latching
// category of alpha, together with the canonical map into y(alpha).
struct BoundaryRepresentable {
  SetPresheaf pre;
  PresheafMap to_yoneda;  // componentwise map into yoneda(A, alpha).pre
};

inline BoundaryRepresentable boundary_yoneda(const ReedyCategory& A, int alpha) {
  const FiniteCategory& C = A.cat;
  BoundaryComma L = latching_category(A, alpha);
  Representable Y = yoneda(C, alpha);

  // per ambient object a: the disjoint union of hom(a, alpha'_j) over the
  // latching objects j, glued along the latching morphisms
  int n_obj = C.n_obj();
  BoundaryRepresentable B;
  B.pre.size.resize(n_obj);
  B.pre.act.resize(C.n_mor());
  B.to_yoneda.comp.resize(n_obj);

  std::vector<std::vector<int>> offset(n_obj);  // per a: per latching object
  std::vector<std::vector<std::vector<int>>> hom_a(n_obj);
  std::vector<std::vector<std::map<int, int>>> hom_index(n_obj);
  std::vector<int> total(n_obj, 0);
  int nl = L.cat.n_obj();
  for (int a = 0; a < n_obj; ++a) {
    offset[a].resize(nl);
    hom_a[a].resize(nl);
    hom_index[a].resize(nl);
    for (int j = 0; j < nl; ++j) {
      offset[a][j] = total[a];
      hom_a[a][j] = C.hom(a, L.obj_parts[j].first);
      for (int i = 0; i < int(hom_a[a][j].size()); ++i) hom_index[a][j][hom_a[a][j][i]] = i;
      total[a] += int(hom_a[a][j].size());
    }
  }

  // glue: each latching morphism j -> j2 over base g identifies
  // (j, u) with (j2, g o u)
  std::vector<detail::UnionFind> uf;
  uf.reserve(n_obj);
  for (int a = 0; a < n_obj; ++a) uf.emplace_back(total[a]);
  for (int lm = 0; lm < L.cat.n_mor(); ++lm) {
    int j = L.cat.src(lm), j2 = L.cat.dst(lm);
    if (L.cat.is_identity(lm)) continue;
    int base = L.mor_base[lm];
    for (int a = 0; a < n_obj; ++a)
      for (int i = 0; i < int(hom_a[a][j].size()); ++i) {
        int u = hom_a[a][j][i];
        int gu = C.compose(base, u);
        uf[a].unite(offset[a][j] + i, offset[a][j2] + hom_index[a][j2].at(gu));
      }
  }

  // canonical element numbering per object: representatives in index order
  std::vector<std::vector<int>> class_of(n_obj);
  for (int a = 0; a < n_obj; ++a) {
    class_of[a].assign(total[a], -1);
    int next = 0;
    for (int i = 0; i < total[a]; ++i) {
      int r = uf[a].find(i);
      if (class_of[a][r] < 0) class_of[a][r] = next++;
      class_of[a][i] = class_of[a][r];
    }
    B.pre.size[a] = next;
  }

  auto raw_index = [&](int a, int j, int mor) { return offset[a][j] + hom_index[a][j].at(mor); };

  // presheaf action: precompose inside each summand
  for (int m = 0; m < C.n_mor(); ++m) {
    int a = C.src(m), b = C.dst(m);
    B.pre.act[m].assign(B.pre.size[b], -1);
    for (int j = 0; j < nl; ++j)
      for (int u : hom_a[b][j]) {
        int from = class_of[b][raw_index(b, j, u)];
        int to = class_of[a][raw_index(a, j, C.compose(u, m))];
        B.pre.act[m][from] = to;  // consistent because gluing is natural
      }
  }

  // map to the full representable: (j, u) -> r_j o u
  std::vector<std::map<int, int>> yidx(n_obj);
  for (int a = 0; a < n_obj; ++a)
    for (int i = 0; i < Y.pre.size[a]; ++i) yidx[a][Y.elem_mor[a][i]] = i;
  for (int a = 0; a < n_obj; ++a) {
    B.to_yoneda.comp[a].assign(B.pre.size[a], -1);
    for (int j = 0; j < nl; ++j) {
      int r = L.obj_parts[j].second;
      for (int u : hom_a[a][j])
        B.to_yoneda.comp[a][class_of[a][raw_index(a, j, u)]] = yidx[a].at(C.compose(r, u));
    }
  }
  return B;
}

inline SetPresheaf disjoint_union_presheaf(const FiniteCategory& A, const SetPresheaf& K,
                                           const SetPresheaf& L) {
  SetPresheaf U;
  U.size.resize(A.n_obj());
  for (int a = 0; a < A.n_obj(); ++a) U.size[a] = K.size[a] + L.size[a];
  U.act.resize(A.n_mor());
  for (int m = 0; m < A.n_mor(); ++m) {
    int a = A.src(m), b = A.dst(m);
    U.act[m].resize(U.size[b]);
    for (int s = 0; s < K.size[b]; ++s) U.act[m][s] = K.act[m][s];
    for (int s = 0; s < L.size[b]; ++s) U.act[m][K.size[b] + s] = K.size[a] + L.act[m][s];
  }
  return U;
}

// All natural transformations K -> L, found by backtracking with forced
// propagation along the actions (deterministic order).
inline std::vector<PresheafMap> enumerate_presheaf_maps(const FiniteCategory& A,
                                                        const SetPresheaf& K, const SetPresheaf& L,
                                                        size_t limit = size_t(-1)) {
  std::vector<PresheafMap> out;
  int n = A.n_obj();
  std::vector<std::vector<int>> assign(n);
  for (int a = 0; a < n; ++a) assign[a].assign(K.size[a], -1);

  // propagation: setting (b, s) -> v forces (src m, K.act[m][s]) -> L.act[m][v]
  std::function<bool(int, int, int, std::vector<std::pair<int, int>>&)> force =
      [&](int b, int s, int v, std::vector<std::pair<int, int>>& trail) -> bool {
    if (assign[b][s] >= 0) return assign[b][s] == v;
    assign[b][s] = v;
    trail.push_back({b, s});
    for (int m : A.into(b)) {
      int a = A.src(m);
      if (!force(a, K.act[m][s], L.act[m][v], trail)) return false;
    }
    return true;
  };

  std::function<void(int, int)> next = [&](int a, int s) {
    if (out.size() >= limit) return;
    while (a < n && s >= K.size[a]) {
      ++a;
      s = 0;
    }
    if (a == n) {
      PresheafMap f;
      f.comp = assign;
      out.push_back(std::move(f));
      return;
    }
    if (assign[a][s] >= 0) {
      next(a, s + 1);
      return;
    }
    for (int v = 0; v < L.size[a]; ++v) {
      std::vector<std::pair<int, int>> trail;
      if (force(a, s, v, trail)) next(a, s + 1);
      for (auto& [x, y] : trail) assign[x][y] = -1;
      if (out.size() >= limit) return;
    }
  };
  next(0, 0);
  return out;
}

// Category of elements of a presheaf over a Reedy category, with the
// inherited Reedy structure: objects (a, s in K(a)), one morphism over each
// base morphism m: a -> b per element t in K(b), from (a, K(m)(t)) to (b, t).
struct ElementsReedy {
  ReedyCategory reedy;
  std::vector<std::pair<int, int>> obj_parts;  // (A object, element)
  std::vector<std::pair<int, int>> mor_parts;  // (A morphism, target element)
  FunctorData forget;                          // projection to A
};

inline ElementsReedy elements_reedy(const ReedyCategory& A, const SetPresheaf& K) {
  const FiniteCategory& C = A.cat;
  ElementsReedy E;
  std::map<std::pair<int, int>, int> obj_of, mor_of;
  for (int a = 0; a < C.n_obj(); ++a)
    for (int s = 0; s < K.size[a]; ++s) {
      int idx = E.reedy.cat.add_object(C.objects[a] + "#" + std::to_string(s));
      E.obj_parts.push_back({a, s});
      obj_of[{a, s}] = idx;
      E.reedy.degree.push_back(A.degree[a]);
    }
  for (int m = 0; m < C.n_mor(); ++m) {
    int a = C.src(m), b = C.dst(m);
    for (int t = 0; t < K.size[b]; ++t) {
      int s = K.act[m][t];
      int idx = E.reedy.cat.add_morphism(C.morphisms[m].id + "#" + std::to_string(t),
                                         obj_of.at({a, s}), obj_of.at({b, t}));
      E.mor_parts.push_back({m, t});
      mor_of[{m, t}] = idx;
      E.reedy.is_raise.push_back(A.is_raise[m]);
      E.reedy.is_lower.push_back(A.is_lower[m]);
    }
  }
  for (int o = 0; o < E.reedy.cat.n_obj(); ++o) {
    auto [a, s] = E.obj_parts[o];
    E.reedy.cat.set_identity(o, mor_of.at({C.identity[a], s}));
  }
  for (int m1 = 0; m1 < E.reedy.cat.n_mor(); ++m1)
    for (int m2 = 0; m2 < E.reedy.cat.n_mor(); ++m2) {
      if (E.reedy.cat.dst(m1) != E.reedy.cat.src(m2)) continue;
      auto [f, tf] = E.mor_parts[m1];
      auto [g, tg] = E.mor_parts[m2];
      E.reedy.cat.set_compose(m2, m1, mor_of.at({C.compose(g, f), tg}));
    }
  E.forget.obj_map.resize(E.reedy.cat.n_obj());
  E.forget.mor_map.resize(E.reedy.cat.n_mor());
  for (int o = 0; o < E.reedy.cat.n_obj(); ++o) E.forget.obj_map[o] = E.obj_parts[o].first;
  for (int m = 0; m < E.reedy.cat.n_mor(); ++m) E.forget.mor_map[m] = E.mor_parts[m].first;
  return E;
}

}  // namespace reedytk
