#pragma once

// Decision procedures for left and right fibrations of finite Reedy
// categories.  A class-preserving functor F: A -> B is a left fibration when
// for every object beta of B and every pair (alpha, v: F(alpha) -> beta) the
// category of non-identity morphisms under that pair inside the comma
// construction comma_reedy(A, B, F, beta) has an empty or connected nerve.
// Right fibrations run the dual construction directly (comma_reedy_under and
// morphisms *into* each pair), so the duality law is a genuine cross-check
// rather than a definition.

#include <climits>
#include <optional>
#include <set>

#include "reedytk/presheaf.hpp"

namespace reedytk {

struct FibrationWitness {
  std::string beta;   // target object over which the criterion fails
  std::string alpha;  // source object of the failing pair
  std::string over;   // structure morphism of the failing pair
  // objects of the disconnected boundary category grouped by nerve
  // component; entries are the comma-category morphism identifiers
  std::vector<std::vector<std::string>> components;
};

struct CheckedComma {
  std::string beta, alpha, over;
  int boundary_objects = 0;
  bool empty_or_connected = true;
};

struct FibrationVerdict {
  bool verdict = true;
  std::vector<CheckedComma> checked;        // every pair inspected
  std::optional<FibrationWitness> witness;  // minimal failure when negative
};

namespace detail {

// Nerve components of the category of non-identity morphisms out of o:
// zero groups for an empty boundary, one group when connected.
inline std::vector<std::vector<int>> under_components(const FiniteCategory& c, int o) {
  std::vector<int> outs;
  for (int m : c.out_of(o))
    if (!c.is_identity(m)) outs.push_back(m);
  std::map<int, int> idx;
  for (int i = 0; i < int(outs.size()); ++i) idx[outs[i]] = i;
  UnionFind uf(int(outs.size()));
  for (int u : outs)
    for (int h : c.out_of(c.dst(u))) {
      if (c.is_identity(h)) continue;
      int hu = c.compose(h, u);
      if (!c.is_identity(hu)) uf.unite(idx.at(u), idx.at(hu));
    }
  std::map<int, std::vector<int>> groups;
  for (int u : outs) groups[uf.find(idx.at(u))].push_back(u);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) {
    (void)root;
    out.push_back(members);
  }
  return out;
}

// Dual: non-identity morphisms into o, connected via precomposition.
inline std::vector<std::vector<int>> over_components(const FiniteCategory& c, int o) {
  std::vector<int> ins;
  for (int m : c.into(o))
    if (!c.is_identity(m)) ins.push_back(m);
  std::map<int, int> idx;
  for (int i = 0; i < int(ins.size()); ++i) idx[ins[i]] = i;
  UnionFind uf(int(ins.size()));
  for (int u : ins)
    for (int h : c.into(c.src(u))) {
      if (c.is_identity(h)) continue;
      int uh = c.compose(u, h);
      if (!c.is_identity(uh)) uf.unite(idx.at(u), idx.at(uh));
    }
  std::map<int, std::vector<int>> groups;
  for (int u : ins) groups[uf.find(idx.at(u))].push_back(u);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) {
    (void)root;
    out.push_back(members);
  }
  return out;
}

inline void require_reedy_functor(const ReedyCategory& A, const ReedyCategory& B,
                                  const FunctorData& F) {
  if (!validate_reedy_functor(A, B, F).ok())
    throw std::invalid_argument("malformed Reedy functor");
}

// Shared walk over all (beta, pair) boundary categories.
template <typename CommaOf, typename ComponentsOf>
FibrationVerdict fibration_scan(const ReedyCategory& A, const ReedyCategory& B,
                                CommaOf&& comma_of, ComponentsOf&& components_of) {
  FibrationVerdict out;
  int best = INT_MAX;
  for (int beta = 0; beta < B.cat.n_obj(); ++beta) {
    CommaReedy K = comma_of(beta);
    const FiniteCategory& c = K.reedy.cat;
    for (int o = 0; o < c.n_obj(); ++o) {
      auto comps = components_of(c, o);
      int n_objects = 0;
      for (const auto& g : comps) n_objects += int(g.size());
      CheckedComma chk;
      chk.beta = B.cat.objects[size_t(beta)];
      chk.alpha = A.cat.objects[size_t(K.obj_parts[size_t(o)].first)];
      chk.over = B.cat.morphisms[size_t(K.obj_parts[size_t(o)].second)].id;
      chk.boundary_objects = n_objects;
      chk.empty_or_connected = comps.size() <= 1;
      out.checked.push_back(chk);
      if (comps.size() <= 1) continue;
      out.verdict = false;
      if (n_objects < best) {
        best = n_objects;
        FibrationWitness w;
        w.beta = chk.beta;
        w.alpha = chk.alpha;
        w.over = chk.over;
        for (const auto& g : comps) {
          std::vector<std::string> labels;
          for (int m : g) labels.push_back(c.morphisms[size_t(m)].id);
          w.components.push_back(std::move(labels));
        }
        out.witness = std::move(w);
      }
    }
  }
  return out;
}

}  // namespace detail

inline FibrationVerdict is_left_fibration(const ReedyCategory& A, const ReedyCategory& B,
                                          const FunctorData& F) {
  detail::require_reedy_functor(A, B, F);
  return detail::fibration_scan(
      A, B, [&](int beta) { return comma_reedy(A, B, F, beta); }, detail::under_components);
}

inline FibrationVerdict is_right_fibration(const ReedyCategory& A, const ReedyCategory& B,
                                           const FunctorData& F) {
  detail::require_reedy_functor(A, B, F);
  return detail::fibration_scan(
      A, B, [&](int beta) { return comma_reedy_under(A, B, F, beta); }, detail::over_components);
}

namespace detail {
inline FunctorData to_terminal(const FiniteCategory& A, const FiniteCategory& T) {
  FunctorData F;
  F.obj_map.assign(size_t(A.n_obj()), 0);
  F.mor_map.assign(size_t(A.n_mor()), T.identity[0]);
  return F;
}
}  // namespace detail

// Fibrancy: the fibration condition over the one-object index; equivalently,
// every matching (resp. latching) category has an empty or connected nerve.
inline FibrationVerdict is_left_fibrant(const ReedyCategory& A) {
  ReedyCategory T = terminal_reedy();
  return is_left_fibration(A, T, detail::to_terminal(A.cat, T.cat));
}

inline FibrationVerdict is_right_fibrant(const ReedyCategory& A) {
  ReedyCategory T = terminal_reedy();
  return is_right_fibration(A, T, detail::to_terminal(A.cat, T.cat));
}

// Validity condition for the pointwise (diagonal) monoidal structure on
// diagrams over A: A must be left fibrant and every lowering morphism must be
// an epimorphism.
struct MonoidalDiagonalReport {
  bool valid = true;
  FibrationVerdict fibrancy;
  std::vector<std::string> non_epi_lowering;  // lowering maps failing the test
};

inline MonoidalDiagonalReport monoidal_diagonal_valid(const ReedyCategory& A) {
  MonoidalDiagonalReport R;
  R.fibrancy = is_left_fibrant(A);
  for (int m : A.lower_mors())
    if (!is_epimorphism(A.cat, m)) R.non_epi_lowering.push_back(A.cat.morphisms[size_t(m)].id);
  R.valid = R.fibrancy.verdict && R.non_epi_lowering.empty();
  return R;
}

// -------- the forgetful functor between slices --------

namespace detail {
// (A/gamma) -> (A/gamma') by postcomposition with w (post = true), or
// (gamma'/A) -> (gamma/A) by precomposition with w (post = false).
inline FunctorData slice_transport(const SliceReedy& S, const SliceReedy& T,
                                   const FiniteCategory& C, int w, bool post) {
  std::map<std::pair<int, int>, int> tobj;
  for (int o = 0; o < T.reedy.cat.n_obj(); ++o) tobj[T.obj_parts[size_t(o)]] = o;
  std::map<std::tuple<int, int, int>, int> tmor;
  for (int m = 0; m < T.reedy.cat.n_mor(); ++m)
    tmor[{T.mor_base[size_t(m)], T.reedy.cat.src(m), T.reedy.cat.dst(m)}] = m;
  FunctorData G;
  G.obj_map.resize(S.reedy.cat.n_obj());
  for (int o = 0; o < S.reedy.cat.n_obj(); ++o) {
    auto [a, u] = S.obj_parts[size_t(o)];
    G.obj_map[size_t(o)] = tobj.at({a, post ? C.compose(w, u) : C.compose(u, w)});
  }
  G.mor_map.resize(S.reedy.cat.n_mor());
  for (int m = 0; m < S.reedy.cat.n_mor(); ++m)
    G.mor_map[size_t(m)] = tmor.at({S.mor_base[size_t(m)], G.obj_map[size_t(S.reedy.cat.src(m))],
                                    G.obj_map[size_t(S.reedy.cat.dst(m))]});
  return G;
}
}  // namespace detail

// Verdict for the forgetful functor between slices induced by w: gamma ->
// gamma' in the ambient category, after checking the hypotheses under which
// that functor is guaranteed to be a fibration: the embedding is fully
// faithful, the needed binary (co)products exist, and every slice (resp.
// coslice) is fibrant.  Hypothesis failures are reported separately from the
// verdict, which is only computed when they all hold.
struct SliceFibrationReport {
  bool hypotheses_ok = true;
  std::vector<std::string> hypothesis_failures;
  std::optional<FibrationVerdict> verdict;
};

inline SliceFibrationReport slice_forgetful_is_fibration(const ReedyCategory& A,
                                                         const FiniteCategory& C,
                                                         const FunctorData& F, int w,
                                                         bool left = true) {
  if (!validate_functor(A.cat, C, F).ok()) throw std::invalid_argument("malformed embedding");
  SliceFibrationReport rep;
  auto fail = [&](std::string s) {
    rep.hypotheses_ok = false;
    rep.hypothesis_failures.push_back(std::move(s));
  };

  for (int a = 0; a < A.cat.n_obj(); ++a)
    for (int a2 = 0; a2 < A.cat.n_obj(); ++a2) {
      auto dom = A.cat.hom(a, a2);
      auto cod = C.hom(F.obj_map[size_t(a)], F.obj_map[size_t(a2)]);
      std::set<int> image;
      for (int m : dom) image.insert(F.mor_map[size_t(m)]);
      if (image.size() != dom.size() || dom.size() != cod.size())
        fail("embedding is not fully faithful between " + A.cat.objects[size_t(a)] + " and " +
             A.cat.objects[size_t(a2)]);
    }

  // the products (resp. coproducts) the fibration argument manipulates:
  // each embedded object with the target (resp. source) of w
  int pivot = left ? C.dst(w) : C.src(w);
  for (int a = 0; a < A.cat.n_obj(); ++a) {
    bool have = left ? find_binary_product(C, F.obj_map[size_t(a)], pivot).has_value()
                     : find_binary_coproduct(C, F.obj_map[size_t(a)], pivot).has_value();
    if (!have)
      fail(std::string("missing binary ") + (left ? "product" : "coproduct") + " of " +
           C.objects[size_t(F.obj_map[size_t(a)])] + " and " + C.objects[size_t(pivot)]);
  }

  for (int g0 = 0; g0 < C.n_obj(); ++g0) {
    if (left) {
      if (!is_left_fibrant(slice_reedy(A, C, F, g0).reedy).verdict)
        fail("slice over " + C.objects[size_t(g0)] + " is not left fibrant");
    } else {
      if (!is_right_fibrant(coslice_reedy(A, C, F, g0).reedy).verdict)
        fail("coslice under " + C.objects[size_t(g0)] + " is not right fibrant");
    }
  }
  if (!rep.hypotheses_ok) return rep;

  if (left) {
    SliceReedy S = slice_reedy(A, C, F, C.src(w));
    SliceReedy T = slice_reedy(A, C, F, C.dst(w));
    rep.verdict = is_left_fibration(S.reedy, T.reedy, detail::slice_transport(S, T, C, w, true));
  } else {
    SliceReedy S = coslice_reedy(A, C, F, C.dst(w));
    SliceReedy T = coslice_reedy(A, C, F, C.src(w));
    rep.verdict = is_right_fibration(S.reedy, T.reedy, detail::slice_transport(S, T, C, w, false));
  }
  return rep;
}

}  // namespace reedytk
