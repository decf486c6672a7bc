#pragma once

// Named catalogue of small Reedy categories used across the test suites and
// the command-line front end.  Every instance is constructed programmatically
// and is expected to pass verify_reedy (the one deliberate exception being
// "nonunique-factorization").

#include "reedytk/presheaf.hpp"
#include "reedytk/reedy.hpp"

namespace reedytk {

namespace detail {

inline void monotone_maps(int m, int k, std::vector<std::vector<int>>& out) {
  // all monotone sequences a_0 <= ... <= a_m with values in 0..k
  std::vector<int> cur(size_t(m) + 1, 0);
  std::function<void(int, int)> rec = [&](int i, int lo) {
    if (i == m + 1) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= k; ++v) {
      cur[size_t(i)] = v;
      rec(i + 1, v);
    }
  };
  rec(0, 0);
}

inline std::string monotone_id(int m, int k, const std::vector<int>& vals) {
  std::string s = "[" + std::to_string(m) + "]>[" + std::to_string(k) + "]:";
  for (int v : vals) s += std::to_string(v);
  return s;
}

inline bool is_injective_monotone(const std::vector<int>& vals) {
  for (size_t i = 1; i < vals.size(); ++i)
    if (vals[i] <= vals[i - 1]) return false;
  return true;
}

inline bool is_surjective_monotone(int k, const std::vector<int>& vals) {
  std::vector<char> hit(size_t(k) + 1, 0);
  for (int v : vals) hit[size_t(v)] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

}  // namespace detail

// Truncated simplex category: ordinals [0]..[n] with all monotone maps.
// Degree of [k] is k; injective maps raise, surjective maps lower.
inline ReedyCategory delta_reedy(int n) {
  ReedyCategory A;
  for (int k = 0; k <= n; ++k) {
    A.cat.add_object("[" + std::to_string(k) + "]");
    A.degree.push_back(k);
  }
  // morphisms, stashing values for composition
  std::vector<std::vector<int>> values;
  std::vector<std::pair<int, int>> endpoints;
  for (int m = 0; m <= n; ++m)
    for (int k = 0; k <= n; ++k) {
      std::vector<std::vector<int>> maps;
      detail::monotone_maps(m, k, maps);
      for (auto& vals : maps) {
        int idx = A.cat.add_morphism(detail::monotone_id(m, k, vals), m, k);
        values.push_back(vals);
        endpoints.push_back({m, k});
        A.is_raise.push_back(detail::is_injective_monotone(vals));
        A.is_lower.push_back(detail::is_surjective_monotone(k, vals));
        if (m == k && detail::is_injective_monotone(vals)) A.cat.set_identity(m, idx);
      }
    }
  std::map<std::string, int> by_id;
  for (int i = 0; i < A.cat.n_mor(); ++i) by_id[A.cat.morphisms[i].id] = i;
  for (int f = 0; f < A.cat.n_mor(); ++f)
    for (int g = 0; g < A.cat.n_mor(); ++g) {
      if (endpoints[f].second != endpoints[g].first) continue;
      std::vector<int> comp(values[f].size());
      for (size_t i = 0; i < values[f].size(); ++i) comp[i] = values[g][size_t(values[f][i])];
      A.cat.set_compose(g, f,
                        by_id.at(detail::monotone_id(endpoints[f].first, endpoints[g].second, comp)));
    }
  return A;
}

namespace detail {

struct ReedyBuilder {
  ReedyCategory A;
  std::map<std::string, int> obj, mor;
  int add_obj(const std::string& id, int deg) {
    int o = A.cat.add_object(id);
    A.degree.push_back(deg);
    int i = A.cat.add_morphism("id_" + id, o, o);
    A.is_raise.push_back(1);
    A.is_lower.push_back(1);
    A.cat.set_identity(o, i);
    obj[id] = o;
    mor["id_" + id] = i;
    return o;
  }
  int add_mor(const std::string& id, const std::string& s, const std::string& d, bool raise,
              bool lower) {
    int m = A.cat.add_morphism(id, obj.at(s), obj.at(d));
    A.is_raise.push_back(raise);
    A.is_lower.push_back(lower);
    mor[id] = m;
    return m;
  }
  void close_with_identities() {
    // fills every composite involving an identity; other pairs must already
    // have been set
    const FiniteCategory& c = A.cat;
    for (int f = 0; f < c.n_mor(); ++f) {
      A.cat.set_compose(f, c.identity[c.src(f)], f);
      A.cat.set_compose(c.identity[c.dst(f)], f, f);
    }
  }
};

}  // namespace detail

// The poset 0 < 1 < ... < n-1 with every non-identity map raising.
inline ReedyCategory ordinal_reedy(int n) {
  detail::ReedyBuilder b;
  for (int i = 0; i < n; ++i) b.add_obj(std::to_string(i), i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      b.add_mor(std::to_string(i) + "<=" + std::to_string(j), std::to_string(i),
                std::to_string(j), true, false);
  b.close_with_identities();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        b.A.cat.set_compose(b.mor.at(std::to_string(j) + "<=" + std::to_string(k)),
                            b.mor.at(std::to_string(i) + "<=" + std::to_string(j)),
                            b.mor.at(std::to_string(i) + "<=" + std::to_string(k)));
  return b.A;
}

inline ReedyCategory discrete_reedy(int n) {
  detail::ReedyBuilder b;
  for (int i = 0; i < n; ++i) b.add_obj("x" + std::to_string(i), 0);
  b.close_with_identities();
  return b.A;
}

// l <- c -> r with the center in the lowest degree; both legs raise.
inline ReedyCategory span_reedy() {
  detail::ReedyBuilder b;
  b.add_obj("c", 0);
  b.add_obj("l", 1);
  b.add_obj("r", 1);
  b.add_mor("s", "c", "l", true, false);
  b.add_mor("t", "c", "r", true, false);
  b.close_with_identities();
  return b.A;
}

// l -> c <- r with the center in the highest degree; both legs raise.
inline ReedyCategory cospan_reedy() {
  detail::ReedyBuilder b;
  b.add_obj("l", 0);
  b.add_obj("r", 0);
  b.add_obj("c", 1);
  b.add_mor("s", "l", "c", true, false);
  b.add_mor("t", "r", "c", true, false);
  b.close_with_identities();
  return b.A;
}

// l <- c -> r with one lowering leg and one raising leg (the index shape
// whose cofibrant diagrams compute homotopy pushouts).
inline ReedyCategory pushout_shape_reedy() {
  detail::ReedyBuilder b;
  b.add_obj("l", 0);
  b.add_obj("c", 1);
  b.add_obj("r", 2);
  b.add_mor("s", "c", "l", false, true);
  b.add_mor("t", "c", "r", true, false);
  b.close_with_identities();
  return b.A;
}

// two parallel lowering maps a => b; the matching category at a is a
// two-point discrete category, so this index is not left fibrant
inline ReedyCategory parallel_pair_reedy() {
  detail::ReedyBuilder b;
  b.add_obj("b", 0);
  b.add_obj("a", 1);
  b.add_mor("u", "a", "b", false, true);
  b.add_mor("v", "a", "b", false, true);
  b.close_with_identities();
  return b.A;
}

// An inverse category that is left fibrant although the lowering map f is
// not an epimorphism: l1 o f = l2 o f with l1 != l2, and the parallel pair
// l1, l2 stays connected in the matching category at b through the common
// composite k = h o l1 = h o l2.
inline ReedyCategory coequalized_pair_reedy() {
  detail::ReedyBuilder b;
  b.add_obj("p", 0);
  b.add_obj("m", 1);
  b.add_obj("b", 2);
  b.add_obj("a", 3);
  b.add_mor("h", "m", "p", false, true);
  b.add_mor("l1", "b", "m", false, true);
  b.add_mor("l2", "b", "m", false, true);
  b.add_mor("k", "b", "p", false, true);
  b.add_mor("f", "a", "b", false, true);
  b.add_mor("e", "a", "m", false, true);
  b.add_mor("q", "a", "p", false, true);
  b.close_with_identities();
  b.A.cat.set_compose(b.mor.at("h"), b.mor.at("l1"), b.mor.at("k"));
  b.A.cat.set_compose(b.mor.at("h"), b.mor.at("l2"), b.mor.at("k"));
  b.A.cat.set_compose(b.mor.at("l1"), b.mor.at("f"), b.mor.at("e"));
  b.A.cat.set_compose(b.mor.at("l2"), b.mor.at("f"), b.mor.at("e"));
  b.A.cat.set_compose(b.mor.at("h"), b.mor.at("e"), b.mor.at("q"));
  b.A.cat.set_compose(b.mor.at("k"), b.mor.at("f"), b.mor.at("q"));
  return b.A;
}

// a -> b admitting two distinct (lower, raise) factorizations; every other
// Reedy law holds
inline ReedyCategory nonunique_factorization_reedy() {
  detail::ReedyBuilder b;
  b.add_obj("x1", 0);
  b.add_obj("x2", 0);
  b.add_obj("a", 1);
  b.add_obj("b", 1);
  b.add_mor("l1", "a", "x1", false, true);
  b.add_mor("l2", "a", "x2", false, true);
  b.add_mor("r1", "x1", "b", true, false);
  b.add_mor("r2", "x2", "b", true, false);
  b.add_mor("f", "a", "b", false, false);
  b.close_with_identities();
  b.A.cat.set_compose(b.mor.at("r1"), b.mor.at("l1"), b.mor.at("f"));
  b.A.cat.set_compose(b.mor.at("r2"), b.mor.at("l2"), b.mor.at("f"));
  return b.A;
}

// Category of elements of (one interval) + (one point) over the 2-truncated
// simplex category.
inline ElementsReedy delta2_slice_k() {
  ReedyCategory d2 = delta_reedy(2);
  SetPresheaf K = disjoint_union_presheaf(
      d2.cat, yoneda(d2.cat, d2.cat.obj("[1]")).pre, yoneda(d2.cat, d2.cat.obj("[0]")).pre);
  return elements_reedy(d2, K);
}

// Functor matching objects and morphisms of A to those of B by identifier.
inline FunctorData inclusion_functor(const FiniteCategory& A, const FiniteCategory& B) {
  FunctorData F;
  for (const auto& o : A.objects) F.obj_map.push_back(B.obj(o));
  for (const auto& m : A.morphisms) F.mor_map.push_back(B.mor(m.id));
  return F;
}

// The unique functor to the one-object index.
inline FunctorData terminal_functor(const FiniteCategory& A, const FiniteCategory& T) {
  FunctorData F;
  F.obj_map.assign(size_t(A.n_obj()), 0);
  F.mor_map.assign(size_t(A.n_mor()), T.identity[0]);
  return F;
}

// Binary minimum / maximum as functors ordinal x ordinal -> ordinal.
inline FunctorData ordinal_min_functor(const ReedyCategory& ord, const ReedyProduct& prod) {
  FunctorData F;
  const FiniteCategory& P = prod.reedy.cat;
  F.obj_map.resize(P.n_obj());
  for (int o = 0; o < P.n_obj(); ++o) {
    auto [a, b] = prod.obj_parts[o];
    F.obj_map[o] = std::min(a, b);  // ordinal objects are indexed 0..n-1
  }
  F.mor_map.resize(P.n_mor());
  for (int m = 0; m < P.n_mor(); ++m) {
    int s = F.obj_map[P.src(m)], d = F.obj_map[P.dst(m)];
    F.mor_map[m] = s == d ? ord.cat.identity[s]
                          : ord.cat.mor(std::to_string(s) + "<=" + std::to_string(d));
  }
  return F;
}

inline FunctorData ordinal_max_functor(const ReedyCategory& ord, const ReedyProduct& prod) {
  FunctorData F;
  const FiniteCategory& P = prod.reedy.cat;
  F.obj_map.resize(P.n_obj());
  for (int o = 0; o < P.n_obj(); ++o) {
    auto [a, b] = prod.obj_parts[o];
    F.obj_map[o] = std::max(a, b);
  }
  F.mor_map.resize(P.n_mor());
  for (int m = 0; m < P.n_mor(); ++m) {
    int s = F.obj_map[P.src(m)], d = F.obj_map[P.dst(m)];
    F.mor_map[m] = s == d ? ord.cat.identity[s]
                          : ord.cat.mor(std::to_string(s) + "<=" + std::to_string(d));
  }
  return F;
}

// Registry for the command-line front end and the suites.
inline std::vector<std::string> instance_names() {
  return {"delta0",    "delta1",    "delta2",        "delta3",
          "delta2-slice-k",         "span",          "cospan",
          "pushout-shape",          "discrete2",     "discrete3",
          "ordinal2",  "ordinal3",  "terminal",      "parallel-pair",
          "coequalized-pair",       "nonunique-factorization"};
}

inline ReedyCategory instance(const std::string& name) {
  if (name == "delta0") return delta_reedy(0);
  if (name == "delta1") return delta_reedy(1);
  if (name == "delta2") return delta_reedy(2);
  if (name == "delta3") return delta_reedy(3);
  if (name == "delta2-slice-k") return delta2_slice_k().reedy;
  if (name == "span") return span_reedy();
  if (name == "cospan") return cospan_reedy();
  if (name == "pushout-shape") return pushout_shape_reedy();
  if (name == "discrete2") return discrete_reedy(2);
  if (name == "discrete3") return discrete_reedy(3);
  if (name == "ordinal2") return ordinal_reedy(2);
  if (name == "ordinal3") return ordinal_reedy(3);
  if (name == "terminal") return terminal_reedy();
  if (name == "parallel-pair") return parallel_pair_reedy();
  if (name == "coequalized-pair") return coequalized_pair_reedy();
  if (name == "nonunique-factorization") return nonunique_factorization_reedy();
  throw std::invalid_argument("unknown instance: " + name);
}

}  // namespace reedytk
