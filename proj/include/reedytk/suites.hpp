#pragma once
// Verification suites: each one cross-checks a structural criterion (Reedy
// axioms, nerve-based fibration tests, monoidal hypotheses) against direct
// computation with finite chain complexes over F_p.  A suite returns a
// deterministic report -- same seed, same bytes -- with one named check per
// verified fact and a human-readable witness on every failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "reedytk/diagram.hpp"
#include "reedytk/fibration.hpp"
#include "reedytk/instances.hpp"
#include "reedytk/sampling.hpp"

namespace reedytk {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string witness;  // required on failure, optional annotation on success
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  int instances = 0;
  int max_objects = 0;
  std::vector<SuiteCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failed() const {
    int n = 0;
    for (const auto& c : checks)
      if (!c.pass) ++n;
    return n;
  }
};

namespace detail {

inline std::string pad3(int k) {
  char b[16];
  std::snprintf(b, sizeof b, "%03d", k);
  return b;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += "; ";
    s += v[i];
  }
  return s;
}

inline std::string chain_flags(const ChainMapClass& c) {
  char b[64];
  std::snprintf(b, sizeof b, "mono=%d epi=%d weq=%d", int(c.cofibration), int(c.fibration),
                int(c.weak_equivalence));
  return b;
}

// Run one check body, converting any escape (including exceptions) into a
// failed check instead of aborting the whole suite.
template <typename Body>
inline void checked(SuiteReport& rep, const std::string& name, Body&& body) {
  SuiteCheck c;
  c.name = name;
  try {
    std::pair<bool, std::string> r = body();
    c.pass = r.first;
    c.witness = std::move(r.second);
  } catch (const std::exception& e) {
    c.pass = false;
    c.witness = std::string("exception: ") + e.what();
  }
  rep.checks.push_back(std::move(c));
}

inline void finalize(SuiteReport& rep) {
  std::stable_sort(rep.checks.begin(), rep.checks.end(),
                   [](const SuiteCheck& a, const SuiteCheck& b) { return a.name < b.name; });
}

inline bool commutes_with_differential(const ChainMap& f) {
  if (f.src.dims.empty()) return true;
  int lo = f.src.min_deg(), hi = f.src.max_deg();
  for (int n = lo; n <= hi + 1; ++n) {
    FpMat a = mat_mul(f.dst.diff(n), f.at(n));
    FpMat b = mat_mul(f.at(n - 1), f.src.diff(n));
    if (!(a == b)) return false;
  }
  return true;
}

// Exact Quillen test over F_2: extension along the functor must keep every
// generating corner map a cofibration (trivial for the acyclic cell).  Since
// the extension preserves colimits and the corner maps generate, this decides
// whether the extension is left Quillen.
inline std::pair<bool, std::string> kan_preserves_generators(const ReedyCategory& A,
                                                             const ReedyCategory& B,
                                                             const FunctorData& F) {
  ChainMap cells[2] = {zero_map(zero_complex(2), sphere(2, 0)),
                       zero_map(zero_complex(2), disc(2, 1))};
  for (int alpha = 0; alpha < A.cat.n_obj(); ++alpha)
    for (int c = 0; c < 2; ++c) {
      CornerMap g = corner_map(A, alpha, cells[c]);
      KanExtension KX = left_kan(B, F, g.map.src);
      KanExtension KY = left_kan(B, F, g.map.dst);
      DiagramMapClass cl = classify_reedy(left_kan_map(g.map, KX, KY));
      bool ok = c == 0 ? cl.cofibration : cl.trivial_cofibration;
      if (!ok)
        return {false, "extended corner at " + A.cat.objects[size_t(alpha)] +
                           (c ? " with the acyclic cell" : "") + " is not a " +
                           (c ? "trivial cofibration" : "cofibration")};
    }
  return {true, ""};
}

inline DiagramMap exterior_pushout_product(const ReedyProduct& P, const DiagramMap& f,
                                           const DiagramMap& g) {
  DiagramMap i1 = exterior_tensor_map(P, f, identity_diagram_map(g.src));
  DiagramMap i2 = exterior_tensor_map(P, identity_diagram_map(f.src), g);
  DiagramPushout Q = diagram_pushout(i1, i2);
  return factor_diagram_pushout(Q, exterior_tensor_map(P, identity_diagram_map(f.dst), g),
                                exterior_tensor_map(P, f, identity_diagram_map(g.dst)));
}

inline DiagramMap diagonal_pushout_product(const DiagramMap& f, const DiagramMap& g) {
  DiagramMap i1 = diagonal_tensor_map(f, identity_diagram_map(g.src));
  DiagramMap i2 = diagonal_tensor_map(identity_diagram_map(f.src), g);
  DiagramPushout Q = diagram_pushout(i1, i2);
  return factor_diagram_pushout(Q, diagonal_tensor_map(identity_diagram_map(f.dst), g),
                                diagonal_tensor_map(f, identity_diagram_map(g.dst)));
}

}  // namespace detail

// Sampled maps of diagrams are classified by the latching/matching criteria
// and the verdicts are checked against objectwise computations and the
// lifting axioms.
inline SuiteReport suite_reedy_classification(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"reedy-classification", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  std::vector<std::string> names;
  for (const std::string& nm : instance_names()) {
    if (nm == "nonunique-factorization") continue;  // rejected by verify_reedy, no structure
    if (instance(nm).cat.n_obj() > max_objects) continue;
    names.push_back(nm);
  }
  int per =
      names.empty() ? 0 : std::max(1, (instances + int(names.size()) - 1) / int(names.size()));
  for (const std::string& nm : names) {
    ReedyCategory A = instance(nm);
    bool direct = is_direct(A), inverse = is_inverse(A);
    std::vector<DiagramMap> pool[4];  // cof / trivial cof / fib / trivial fib
    for (int k = 0; k < per; ++k) {
      Variance v = (k % 2 == 0) ? Variance::presheaf : Variance::covariant;
      detail::checked(
          rep, "classify/" + nm + "/" + detail::pad3(k), [&]() -> std::pair<bool, std::string> {
            DiagramMap f;
            int kind = k % 5;
            switch (kind) {
              case 0: {
                Diagram X = random_diagram(rng, A, v, 2, 0, 1, 2);
                Diagram Y = random_diagram(rng, A, v, 2, 0, 1, 2);
                f = random_natural_map(rng, X, Y);
                break;
              }
              case 1:
                f = random_reedy_cofibration(rng, random_diagram(rng, A, v, 2, 0, 1, 2), false);
                break;
              case 2:
                f = random_reedy_cofibration(rng, random_diagram(rng, A, v, 2, 0, 1, 2), true);
                break;
              case 3:
                f = random_reedy_fibration(rng, random_diagram(rng, A, v, 2, 0, 1, 2), false);
                break;
              default:
                f = random_reedy_fibration(rng, random_diagram(rng, A, v, 2, 0, 1, 2), true);
                break;
            }
            DiagramMapClass c = classify_reedy(f);
            ObjectwiseClass ow = classify_objectwise(f);
            if (kind == 1 && !c.cofibration)
              return {false, "sampled latching inclusion not classified as a cofibration"};
            if (kind == 2 && !c.trivial_cofibration)
              return {false, "sampled acyclic latching inclusion not classified as trivial"};
            if (kind == 3 && !c.fibration)
              return {false, "sampled matching surjection not classified as a fibration"};
            if (kind == 4 && !c.trivial_fibration)
              return {false, "sampled acyclic matching surjection not classified as trivial"};
            if (c.weak_equivalence != ow.weak_equivalence)
              return {false, "weak-equivalence flag disagrees with the objectwise check"};
            if (c.cofibration && !ow.cofibration)
              return {false, "classified cofibration is not objectwise injective"};
            if (c.fibration && !ow.fibration)
              return {false, "classified fibration is not objectwise surjective"};
            if (direct && c.fibration != ow.fibration)
              return {false, "direct index: fibrations must be exactly the objectwise surjections"};
            if (inverse && c.cofibration != ow.cofibration)
              return {false,
                      "inverse index: cofibrations must be exactly the objectwise injections"};
            if (v == Variance::presheaf) {
              if (c.trivial_cofibration) {
                if (pool[1].empty()) pool[1].push_back(f);
              } else if (c.cofibration && pool[0].empty())
                pool[0].push_back(f);
              if (c.trivial_fibration) {
                if (pool[3].empty()) pool[3].push_back(f);
              } else if (c.fibration && pool[2].empty())
                pool[2].push_back(f);
            }
            return {true, ""};
          });
    }
    auto fresh = [&](int which) -> DiagramMap {
      Diagram X = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 2);
      switch (which) {
        case 0:
          return random_reedy_cofibration(rng, X, false);
        case 1:
          return random_reedy_cofibration(rng, X, true);
        case 2:
          return random_reedy_fibration(rng, X, false);
        default:
          return random_reedy_fibration(rng, X, true);
      }
    };
    for (int w = 0; w < 4; ++w)
      if (pool[w].empty()) pool[w].push_back(fresh(w));
    auto pose = [&](const DiagramMap& i, const DiagramMap& q, const std::string& name) {
      detail::checked(rep, name, [&]() -> std::pair<bool, std::string> {
        DiagramMap h = random_natural_map(rng, i.dst, q.src);
        DiagramMap u = compose_diagram_maps(h, i);
        DiagramMap v = compose_diagram_maps(q, h);
        std::optional<DiagramMap> lift = solve_lifting_diagram(i, q, u, v);
        if (!lift) return {false, "no filler found"};
        if (!diagram_map_equal(compose_diagram_maps(*lift, i), u))
          return {false, "filler fails the upper triangle"};
        if (!diagram_map_equal(compose_diagram_maps(q, *lift), v))
          return {false, "filler fails the lower triangle"};
        return {true, ""};
      });
    };
    pose(pool[1][0], pool[2][0], "lift/" + nm + "/acyclic-cof-vs-fib");
    pose(pool[0][0], pool[3][0], "lift/" + nm + "/cof-vs-acyclic-fib");
  }
  detail::finalize(rep);
  return rep;
}

// Every class-preserving functor between small fixture pairs is enumerated;
// the nerve criterion for left/right fibrations is compared with the exact
// Quillen computation, and the equivalent formulations (opposites, lowering
// restriction, comma fibrancy) are required to agree.
inline SuiteReport suite_fibration_oracle(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"fibration-oracle", seed, instances, max_objects, {}};
  const std::pair<const char*, const char*> pairs[] = {
      {"delta1", "delta1"},          {"delta1", "terminal"},
      {"span", "terminal"},          {"cospan", "ordinal2"},
      {"parallel-pair", "terminal"}, {"ordinal2", "ordinal2"},
      {"discrete2", "ordinal2"},     {"span", "span"},
      {"parallel-pair", "parallel-pair"}};
  int total = 0, negatives = 0;
  for (const auto& [an, bn] : pairs) {
    ReedyCategory A = instance(an), B = instance(bn);
    if (A.cat.n_obj() > max_objects || B.cat.n_obj() > max_objects) continue;
    ReedyCategory Aop = opposite_reedy(A), Bop = opposite_reedy(B);
    LowerRestriction RA = lower_restriction(A), RB = lower_restriction(B);
    std::vector<FunctorData> fs = enumerate_reedy_functors(A, B);
    int i = -1;
    for (const FunctorData& F : fs) {
      ++i;
      ++total;
      std::string tag = std::string(an) + "->" + bn + "/" + detail::pad3(i);
      // Covariant diagrams over A are presheaves over the opposite, so the
      // extension functor governed by the left-fibration criterion is the
      // presheaf extension computed on the opposite pair; the right-fibration
      // criterion is dually the presheaf extension on the pair itself.
      detail::checked(rep, "oracle-left/" + tag, [&]() -> std::pair<bool, std::string> {
        FibrationVerdict v = is_left_fibration(A, B, F);
        if (!v.verdict) ++negatives;
        auto [brute, why] = detail::kan_preserves_generators(Aop, Bop, F);
        if (v.verdict == brute) return {true, ""};
        return {false, std::string("nerve criterion says ") + (v.verdict ? "yes" : "no") +
                           " but the extension computation says " + (brute ? "yes" : "no") +
                           (why.empty() ? "" : "; " + why)};
      });
      detail::checked(rep, "oracle-right/" + tag, [&]() -> std::pair<bool, std::string> {
        FibrationVerdict v = is_right_fibration(A, B, F);
        auto [brute, why] = detail::kan_preserves_generators(A, B, F);
        if (v.verdict == brute) return {true, ""};
        return {false, std::string("nerve criterion says ") + (v.verdict ? "yes" : "no") +
                           " but the extension computation says " + (brute ? "yes" : "no") +
                           (why.empty() ? "" : "; " + why)};
      });
      detail::checked(rep, "criterion-agreement/" + tag, [&]() -> std::pair<bool, std::string> {
        bool v1 = is_left_fibration(A, B, F).verdict;
        bool v2 = is_right_fibration(Aop, Bop, F).verdict;
        bool v3 =
            is_left_fibration(RA.reedy, RB.reedy, restrict_functor_to_lower(F, RA, RB)).verdict;
        bool v4 = true;
        for (int beta = 0; beta < B.cat.n_obj(); ++beta)
          v4 = v4 && is_left_fibrant(comma_reedy(A, B, F, beta).reedy).verdict;
        if (v1 == v2 && v2 == v3 && v3 == v4) return {true, ""};
        char buf[80];
        std::snprintf(buf, sizeof buf, "direct=%d opposite=%d lowering=%d commas=%d", int(v1),
                      int(v2), int(v3), int(v4));
        return {false, buf};
      });
    }
  }
  detail::checked(rep, "zz-enumerated-at-least-20", [&]() -> std::pair<bool, std::string> {
    return {total >= 20, "enumerated " + std::to_string(total) + " functors"};
  });
  detail::checked(rep, "zz-negative-example-found", [&]() -> std::pair<bool, std::string> {
    return {negatives >= 1, std::to_string(negatives) + " functors rejected by the criterion"};
  });
  detail::finalize(rep);
  return rep;
}

// The forgetful functor between slices of an embedded Reedy category is a
// left (dually right) fibration whenever the ambient category has the needed
// (co)products and the slices are fibrant; a fixture without products must be
// rejected with a located hypothesis failure.
inline SuiteReport suite_slice_corollary(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"slice-corollary", seed, instances, max_objects, {}};
  ReedyCategory ord = instance("ordinal3");
  FunctorData id3 = identity_functor(ord.cat);
  for (int w = 0; w < ord.cat.n_mor(); ++w) {
    if (ord.cat.is_identity(w)) continue;
    std::string mw = ord.cat.morphisms[size_t(w)].id;
    detail::checked(rep, "slice-left/ordinal3/" + mw, [&]() -> std::pair<bool, std::string> {
      SliceFibrationReport r = slice_forgetful_is_fibration(ord, ord.cat, id3, w, true);
      if (!r.hypotheses_ok) return {false, "hypotheses: " + detail::join(r.hypothesis_failures)};
      if (!r.verdict || !r.verdict->verdict)
        return {false, "transport between slices is not a left fibration"};
      return {true, ""};
    });
    detail::checked(rep, "coslice-right/ordinal3/" + mw, [&]() -> std::pair<bool, std::string> {
      SliceFibrationReport r = slice_forgetful_is_fibration(ord, ord.cat, id3, w, false);
      if (!r.hypotheses_ok) return {false, "hypotheses: " + detail::join(r.hypothesis_failures)};
      if (!r.verdict || !r.verdict->verdict)
        return {false, "transport between coslices is not a right fibration"};
      return {true, ""};
    });
  }
  detail::checked(rep, "hypothesis-failure-located/delta2", [&]() -> std::pair<bool, std::string> {
    ReedyCategory d2 = instance("delta2");
    int w = d2.cat.hom(0, 1)[0];
    SliceFibrationReport r =
        slice_forgetful_is_fibration(d2, d2.cat, identity_functor(d2.cat), w, true);
    if (r.hypotheses_ok) return {false, "expected a missing-product failure, found none"};
    if (r.hypothesis_failures.empty()) return {false, "failure not located"};
    return {true, detail::join(r.hypothesis_failures)};
  });
  detail::finalize(rep);
  return rep;
}

// Weak equivalences survive cobase change along cofibrations and base change
// along fibrations, both for chain complexes and for Reedy diagrams.
inline SuiteReport suite_properness(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"properness", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  for (int k = 0; k < instances; ++k) {
    detail::checked(rep, "left/chain/" + detail::pad3(k), [&]() -> std::pair<bool, std::string> {
      ChainComplex X = random_complex(rng, 2, 0, 2, 3);
      ChainMap i = random_cofibration(rng, X, 1 + int(rng.below(2)), 0, 2);
      ChainMap w = random_weak_equivalence(rng, X, 0, 2);
      PushoutData P = pushout(w, i);
      ChainMapClass c = classify_map(P.from_second);
      if (!c.weak_equivalence)
        return {false, "cobase change along a cofibration lost the equivalence: " +
                           detail::chain_flags(c)};
      return {true, ""};
    });
    detail::checked(rep, "right/chain/" + detail::pad3(k), [&]() -> std::pair<bool, std::string> {
      ChainComplex Y = random_complex(rng, 2, 0, 2, 3);
      ChainMap q = random_fibration(rng, Y, 1 + int(rng.below(2)), 0, 2);
      ChainComplex Yd = dual_complex(Y);
      ChainMap wd = random_weak_equivalence(rng, Yd, -2, 0);
      ChainMap w = dual_map(wd);
      w.dst = Y;  // double duality is the identity on the underlying data
      PullbackData P = pullback(w, q);
      ChainMapClass c = classify_map(P.to_second);
      if (!c.weak_equivalence)
        return {false,
                "base change along a fibration lost the equivalence: " + detail::chain_flags(c)};
      return {true, ""};
    });
  }
  const char* idx[2] = {"delta1", "span"};
  int dn = std::max(1, instances / 10);
  for (int k = 0; k < dn; ++k) {
    detail::checked(rep, "left/diagram/" + detail::pad3(k), [&]() -> std::pair<bool, std::string> {
      ReedyCategory A = instance(idx[k % 2]);
      ChainComplex X0 = random_complex(rng, 2, 0, 1, 2);
      ChainMap w0 = random_weak_equivalence(rng, X0, 0, 1);
      DiagramMap w = constant_diagram_map(A, Variance::presheaf, w0);
      DiagramMap i = random_reedy_cofibration(rng, w.src, false);
      DiagramPushout P = diagram_pushout(w, i);
      DiagramMapClass c = classify_reedy(P.from_second);
      if (!c.weak_equivalence) return {false, "diagram-level cobase change lost the equivalence"};
      return {true, ""};
    });
  }
  detail::finalize(rep);
  return rep;
}

// The copower of a set-valued family with a complex is left adjoint in two
// variables: three independent computations of the mapping space must agree,
// evaluation of a morphism family at the identity is an isomorphism, and
// boundary families compute matching objects.
inline SuiteReport suite_adjunction_two_variables(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"adjunction-two-variables", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  const char* idx[5] = {"delta1", "ordinal2", "span", "cospan", "discrete2"};
  ChainComplex cells[3] = {sphere(2, 0), sphere(2, 1), disc(2, 1)};
  for (int k = 0; k < instances; ++k) {
    ReedyCategory A = instance(idx[k % 5]);
    int nobj = A.cat.n_obj();
    int alpha = int(rng.below(uint32_t(nobj)));
    SetPresheaf K;
    switch (k % 3) {
      case 0:
        K = yoneda(A.cat, alpha).pre;
        break;
      case 1:
        K = boundary_yoneda(A, alpha).pre;
        break;
      default:
        K = disjoint_union_presheaf(A.cat, yoneda(A.cat, alpha).pre,
                                    yoneda(A.cat, int(rng.below(uint32_t(nobj)))).pre);
    }
    ChainComplex X = cells[rng.below(3)];
    Diagram Y = boxdot(A, yoneda(A.cat, int(rng.below(uint32_t(nobj)))).pre, cells[rng.below(3)]);
    std::string tag = std::string(idx[k % 5]) + "/" + detail::pad3(k);
    detail::checked(rep, "three-routes/" + tag, [&]() -> std::pair<bool, std::string> {
      int r1 = natural_map_space_dim(boxdot(A, K, X), Y);
      size_t r2 = enumerate_presheaf_maps(A.cat, K, hom_set_presheaf(X, Y).pre).size();
      int r3 = chain_map_space(X, mor_boxdot(A, K, Y).obj).dim;
      if (r1 != r3)
        return {false, "copower route gives dimension " + std::to_string(r1) +
                           " but the family route gives " + std::to_string(r3)};
      if (r1 > 20) return {false, "mapping space unexpectedly large"};
      if ((size_t(1) << r1) != r2)
        return {false, "set-level count " + std::to_string(r2) + " differs from 2^" +
                           std::to_string(r1)};
      return {true, ""};
    });
    detail::checked(rep, "identity-evaluation/" + tag, [&]() -> std::pair<bool, std::string> {
      Representable y = yoneda(A.cat, alpha);
      MorBoxdot M = mor_boxdot(A, y.pre, Y);
      int e = -1;
      for (size_t s = 0; s < y.elem_mor[size_t(alpha)].size(); ++s)
        if (A.cat.is_identity(y.elem_mor[size_t(alpha)][s])) e = int(s);
      if (e < 0) return {false, "identity element missing from the representable"};
      if (!is_iso_map(mor_boxdot_eval(M, Y, alpha, e)))
        return {false, "evaluation at the identity element is not an isomorphism"};
      return {true, ""};
    });
    detail::checked(rep, "boundary-matching/" + tag, [&]() -> std::pair<bool, std::string> {
      Representable y = yoneda(A.cat, alpha);
      BoundaryRepresentable b = boundary_yoneda(A, alpha);
      MorBoxdot M = mor_boxdot(A, b.pre, Y);
      MatchingData MD = matching_object(Y, alpha);
      std::vector<ChainMap> legs;
      for (const auto& [a, r] : MD.shape.obj_parts) {
        int ypos = -1;
        for (size_t e2 = 0; e2 < y.elem_mor[size_t(a)].size(); ++e2)
          if (y.elem_mor[size_t(a)][e2] == r) ypos = int(e2);
        if (ypos < 0) return {false, "matching morphism missing from the representable"};
        int found = -1, count = 0;
        for (int e2 = 0; e2 < b.pre.size[size_t(a)]; ++e2)
          if (b.to_yoneda.comp[size_t(a)][size_t(e2)] == ypos) {
            found = e2;
            ++count;
          }
        if (count != 1) return {false, "no unique boundary element over a non-identity morphism"};
        legs.push_back(mor_boxdot_eval(M, Y, a, found));
      }
      ChainMap cmp = limit_factor(MD.lim, legs, M.obj);
      if (!is_iso_map(cmp)) return {false, "family object differs from the matching object"};
      return {true, ""};
    });
  }
  detail::finalize(rep);
  return rep;
}

// The enriched-hom corner map: for a Reedy cofibration i and a Reedy
// fibration q the induced map of hom complexes into the pullback is a
// surjection, acyclic whenever either input is.
inline SuiteReport suite_enrichment_sm7(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"enrichment-sm7", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  const char* idx[3] = {"delta1", "ordinal2", "span"};
  for (int k = 0; k < instances; ++k) {
    ReedyCategory A = instance(idx[k % 3]);
    bool ti = k % 3 == 1, tq = k % 3 == 2;
    std::string tag = std::string(idx[k % 3]) + "/" + detail::pad3(k);
    detail::checked(rep, "pullback-hom/" + tag, [&]() -> std::pair<bool, std::string> {
      DiagramMap i = random_reedy_cofibration(
          rng, random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 2), ti);
      DiagramMap q = random_reedy_fibration(
          rng, random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 2), tq);
      EnrichedHom YE = enriched_hom(i.dst, q.src), XE = enriched_hom(i.src, q.src);
      EnrichedHom YB = enriched_hom(i.dst, q.dst), XB = enriched_hom(i.src, q.dst);
      ChainMap to1 = enriched_precompose(i, q.src, YE, XE);
      ChainMap to2 = enriched_postcompose(q, i.dst, YE, YB);
      ChainMap g1 = enriched_postcompose(q, i.src, XE, XB);
      ChainMap g2 = enriched_precompose(i, q.dst, YB, XB);
      PullbackData pb = pullback(g1, g2);
      ChainMap canon = factor_pullback(pb, to1, to2);
      ChainMapClass c = classify_map(canon);
      if (!c.fibration)
        return {false, "corner map of hom complexes is not surjective: " + detail::chain_flags(c)};
      if ((ti || tq) && !c.weak_equivalence)
        return {false, "an acyclic input did not make the corner map acyclic"};
      return {true, ""};
    });
  }
  detail::finalize(rep);
  return rep;
}

// Exterior products over a product index: the pushout-product of two Reedy
// cofibrations is one (trivial if either factor is), and the exterior hom is
// its right adjoint up to quasi-isomorphism.
inline SuiteReport suite_exterior_quillen(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"exterior-quillen", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  const std::pair<const char*, const char*> pr[3] = {
      {"delta1", "delta1"}, {"delta1", "ordinal2"}, {"span", "delta1"}};
  for (int k = 0; k < instances; ++k) {
    const auto& [an, bn] = pr[k % 3];
    ReedyCategory A = instance(an), Bc = instance(bn);
    ReedyProduct P = product_reedy(A, Bc);
    bool ta = k % 4 == 1, tb = k % 4 == 2;
    std::string tag = std::string(an) + "x" + bn + "/" + detail::pad3(k);
    detail::checked(rep, "pushout-product/" + tag, [&]() -> std::pair<bool, std::string> {
      DiagramMap f = random_reedy_cofibration(
          rng, random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1), ta);
      DiagramMap g = random_reedy_cofibration(
          rng, random_diagram(rng, Bc, Variance::presheaf, 2, 0, 1, 1), tb);
      DiagramMapClass c = classify_reedy(detail::exterior_pushout_product(P, f, g));
      if (!c.cofibration) return {false, "pushout-product is not a cofibration"};
      if ((ta || tb) && !c.trivial_cofibration)
        return {false, "an acyclic factor did not make the pushout-product trivial"};
      return {true, ""};
    });
    if (k % 5 == 0) {
      detail::checked(rep, "hom-adjunction/" + detail::pad3(k),
                      [&]() -> std::pair<bool, std::string> {
                        ReedyCategory D = instance("delta1");
                        ReedyProduct PD = product_reedy(D, D);
                        Diagram X = random_diagram(rng, D, Variance::presheaf, 2, 0, 1, 1);
                        Diagram Yd = random_diagram(rng, D, Variance::presheaf, 2, 0, 1, 1);
                        Diagram F = random_diagram(rng, PD.reedy, Variance::presheaf, 2, 0, 1, 1);
                        ChainComplex lhs = enriched_hom(exterior_tensor(PD, X, Yd), F).obj;
                        ChainComplex rhs = enriched_hom(Yd, exterior_hom(D, X, F).dia).obj;
                        for (int n = -3; n <= 3; ++n)
                          if (lhs.dim(n) != rhs.dim(n))
                            return {false, "hom complexes differ in degree " + std::to_string(n)};
                        if (homology_dims(lhs) != homology_dims(rhs))
                          return {false, "hom complexes have different homology"};
                        return {true, ""};
                      });
    }
  }
  detail::finalize(rep);
  return rep;
}

// The pointwise tensor is monoidally compatible with the Reedy structure
// exactly when the index is left fibrant with epimorphic lowering maps: the
// two positive fixtures satisfy the pushout-product axiom on corner
// cofibrations, and the failing fixture is rejected with a located witness.
inline SuiteReport suite_diagonal_monoidal(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"diagonal-monoidal", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  detail::checked(rep, "validity/delta2", [&]() -> std::pair<bool, std::string> {
    MonoidalDiagonalReport r = monoidal_diagonal_valid(instance("delta2"));
    if (!r.valid) return {false, "expected the hypotheses to hold"};
    return {true, ""};
  });
  detail::checked(rep, "validity/delta2-slice-k", [&]() -> std::pair<bool, std::string> {
    MonoidalDiagonalReport r = monoidal_diagonal_valid(instance("delta2-slice-k"));
    if (!r.valid) return {false, "expected the hypotheses to hold"};
    return {true, ""};
  });
  detail::checked(rep, "hypothesis-failure-located/parallel-pair",
                  [&]() -> std::pair<bool, std::string> {
                    MonoidalDiagonalReport r = monoidal_diagonal_valid(instance("parallel-pair"));
                    if (r.valid) return {false, "expected the hypotheses to fail"};
                    if (!r.fibrancy.witness && r.non_epi_lowering.empty())
                      return {false, "failure not located"};
                    std::string w;
                    if (r.fibrancy.witness)
                      w = "matching nerve disconnected at (" + r.fibrancy.witness->beta + ", " +
                          r.fibrancy.witness->alpha + " over " + r.fibrancy.witness->over + ")";
                    if (!r.non_epi_lowering.empty()) {
                      if (!w.empty()) w += "; ";
                      w += "non-epimorphic lowering: " + detail::join(r.non_epi_lowering);
                    }
                    return {true, w};
                  });
  ChainMap cells[3] = {zero_map(zero_complex(2), sphere(2, 0)),
                       zero_map(zero_complex(2), disc(2, 1)),
                       sum_inclusion_left(sphere(2, 0), sphere(2, 1))};
  bool cell_trivial[3] = {false, true, false};
  const std::pair<const char*, int> fixtures[2] = {{"delta2", std::min(instances, 8)},
                                                   {"delta2-slice-k", std::min(instances, 4)}};
  for (const auto& [nm, budget] : fixtures) {
    ReedyCategory A = instance(nm);
    detail::checked(rep, std::string("unit/") + nm, [&]() -> std::pair<bool, std::string> {
      Diagram X = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1);
      Diagram U = unit_diagram(A, Variance::presheaf, 2);
      Diagram R = diagonal_tensor(X, U), L = diagonal_tensor(U, X);
      for (size_t a = 0; a < X.objects.size(); ++a) {
        if (!complex_equal(R.objects[a], X.objects[a]) ||
            !complex_equal(L.objects[a], X.objects[a]))
          return {false, "unit law fails on values at " + A.cat.objects[a]};
      }
      for (size_t m = 0; m < X.maps.size(); ++m)
        if (!map_equal(R.maps[m], X.maps[m]) || !map_equal(L.maps[m], X.maps[m]))
          return {false, "unit law fails on a structure map"};
      return {true, ""};
    });
    for (int j = 0; j < budget; ++j) {
      detail::checked(rep, std::string("pushout-product/") + nm + "/" + detail::pad3(j),
                      [&]() -> std::pair<bool, std::string> {
                        int n = A.cat.n_obj();
                        uint32_t c1 = rng.below(3), c2 = rng.below(3);
                        DiagramMap f =
                            corner_map(A, int(rng.below(uint32_t(n))), cells[c1]).map;
                        DiagramMap g =
                            corner_map(A, int(rng.below(uint32_t(n))), cells[c2]).map;
                        DiagramMapClass c = classify_reedy(detail::diagonal_pushout_product(f, g));
                        if (!c.cofibration) return {false, "pushout-product is not a cofibration"};
                        if ((cell_trivial[c1] || cell_trivial[c2]) && !c.trivial_cofibration)
                          return {false, "an acyclic cell did not make the pushout-product trivial"};
                        return {true, ""};
                      });
    }
  }
  detail::checked(rep, "zz-counterexample-search/parallel-pair",
                  [&]() -> std::pair<bool, std::string> {
                    ReedyCategory A = instance("parallel-pair");
                    int found = -1;
                    for (int j = 0; j < 6; ++j) {
                      uint32_t c1 = rng.below(3), c2 = rng.below(3);
                      DiagramMap f =
                          corner_map(A, int(rng.below(uint32_t(A.cat.n_obj()))), cells[c1]).map;
                      DiagramMap g =
                          corner_map(A, int(rng.below(uint32_t(A.cat.n_obj()))), cells[c2]).map;
                      if (!classify_reedy(detail::diagonal_pushout_product(f, g)).cofibration) {
                        found = j;
                        break;
                      }
                    }
                    return {true, found >= 0
                                      ? "pushout-product failure found at sample " +
                                            std::to_string(found)
                                      : "no pushout-product failure among 6 samples"};
                  });
  detail::finalize(rep);
  return rep;
}

// The running example: the category of elements of a presheaf on the
// truncated simplex category carries a valid Reedy structure whose pointwise
// tensor is symmetric monoidal (unit, associativity, braiding) and closed.
inline SuiteReport suite_delta_slice_example(uint64_t seed, int instances, int max_objects) {
  SuiteReport rep{"delta-slice-example", seed, instances, max_objects, {}};
  SplitMix64 rng(seed);
  ElementsReedy E = delta2_slice_k();
  const ReedyCategory& A = E.reedy;
  detail::checked(rep, "reedy-axioms", [&]() -> std::pair<bool, std::string> {
    ValidationReport r = verify_reedy(A);
    if (!r.ok()) return {false, r.violations[0].law};
    return {true, ""};
  });
  detail::checked(rep, "diagonal-hypotheses", [&]() -> std::pair<bool, std::string> {
    MonoidalDiagonalReport r = monoidal_diagonal_valid(A);
    if (!r.valid) return {false, "hypotheses fail on the elements category"};
    return {true, ""};
  });
  detail::checked(rep, "braid-koszul-sign", [&]() -> std::pair<bool, std::string> {
    ChainComplex S1 = sphere(3, 1), D2 = disc(3, 2);
    ChainMap t = braid_map(S1, D2);
    if (!detail::commutes_with_differential(t)) return {false, "braiding is not a chain map"};
    if (!is_iso_map(t)) return {false, "braiding is not an isomorphism"};
    ChainMap round = compose_maps(braid_map(D2, S1), t);
    if (!map_equal(round, identity_map(tensor_complex(S1, D2))))
      return {false, "braiding does not square to the identity"};
    return {true, ""};
  });
  int budget = std::min(instances, 4);
  for (int j = 0; j < budget; ++j) {
    // The two bracketings of the pointwise tensor agree only up to the basis
    // permutation the associator encodes, so the check is that the associator
    // is a natural objectwise isomorphism, plus the pentagon coherence law.
    Diagram X = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1);
    Diagram Y = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1);
    Diagram Z = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1);
    detail::checked(rep, "associativity/" + detail::pad3(j),
                    [&]() -> std::pair<bool, std::string> {
                      DiagramMap al = associator(X, Y, Z);
                      ValidationReport vr = validate_diagram_map(al);
                      if (!vr.ok())
                        return {false, "associator is not natural: " + vr.violations[0].law};
                      for (const ChainMap& c : al.comp)
                        if (!is_iso_map(c))
                          return {false, "associator is not an objectwise isomorphism"};
                      return {true, ""};
                    });
    detail::checked(rep, "pentagon/" + detail::pad3(j), [&]() -> std::pair<bool, std::string> {
      for (size_t a = 0; a < X.objects.size(); ++a) {
        const ChainComplex &Xa = X.objects[a], &Ya = Y.objects[a], &Za = Z.objects[a];
        const ChainComplex& Wa = Z.objects[(a + 1) % Z.objects.size()];
        ChainMap longway = compose_maps(
            tensor_map(identity_map(Xa), associator_map(Ya, Za, Wa)),
            compose_maps(associator_map(Xa, tensor_complex(Ya, Za), Wa),
                         tensor_map(associator_map(Xa, Ya, Za), identity_map(Wa))));
        ChainMap shortway = compose_maps(associator_map(Xa, Ya, tensor_complex(Za, Wa)),
                                         associator_map(tensor_complex(Xa, Ya), Za, Wa));
        if (!map_equal(longway, shortway))
          return {false, "pentagon fails at " + A.cat.objects[a]};
      }
      return {true, ""};
    });
    detail::checked(rep, "hexagon/" + detail::pad3(j), [&]() -> std::pair<bool, std::string> {
      for (size_t a = 0; a < X.objects.size(); ++a) {
        const ChainComplex &Xa = X.objects[a], &Ya = Y.objects[a], &Za = Z.objects[a];
        ChainMap via_whole = compose_maps(
            associator_map(Ya, Za, Xa),
            compose_maps(braid_map(Xa, tensor_complex(Ya, Za)), associator_map(Xa, Ya, Za)));
        ChainMap via_factors = compose_maps(
            tensor_map(identity_map(Ya), braid_map(Xa, Za)),
            compose_maps(associator_map(Ya, Xa, Za),
                         tensor_map(braid_map(Xa, Ya), identity_map(Za))));
        if (!map_equal(via_whole, via_factors))
          return {false, "hexagon fails at " + A.cat.objects[a]};
      }
      return {true, ""};
    });
    detail::checked(rep, "braiding/" + detail::pad3(j), [&]() -> std::pair<bool, std::string> {
      Diagram XB = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1);
      Diagram YB = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 1);
      DiagramMap t = braiding(XB, YB);
      ValidationReport vr = validate_diagram_map(t);
      if (!vr.ok()) return {false, "braiding is not natural: " + vr.violations[0].law};
      for (const ChainMap& c : t.comp)
        if (!is_iso_map(c)) return {false, "braiding is not an objectwise isomorphism"};
      if (!diagram_map_equal(compose_diagram_maps(braiding(YB, XB), t),
                             identity_diagram_map(t.src)))
        return {false, "braiding does not square to the identity"};
      return {true, ""};
    });
  }
  detail::checked(rep, "hom-adjunction", [&]() -> std::pair<bool, std::string> {
    int n = A.cat.n_obj();
    Diagram X = representable_diagram(A, 0, 2);
    Diagram Y = representable_diagram(A, n - 1, 2);
    Diagram Z = boxdot(A, yoneda(A.cat, n / 2).pre, disc(2, 1));
    DiagonalHom H = diagonal_hom(Y, Z);
    int lhs = natural_map_space_dim(diagonal_tensor(X, Y), Z);
    int rhs = natural_map_space_dim(X, H.dia);
    if (lhs != rhs)
      return {false, "tensor side gives dimension " + std::to_string(lhs) + ", hom side gives " +
                         std::to_string(rhs)};
    return {true, ""};
  });
  detail::finalize(rep);
  return rep;
}

inline std::vector<std::string> suite_names() {
  return {"reedy-classification",
          "fibration-oracle",
          "slice-corollary",
          "properness",
          "adjunction-two-variables",
          "enrichment-sm7",
          "exterior-quillen",
          "diagonal-monoidal",
          "delta-slice-example"};
}

inline SuiteReport run_suite(const std::string& name, uint64_t seed = 0, int instances = 50,
                             int max_objects = 4) {
  if (name == "reedy-classification") return suite_reedy_classification(seed, instances, max_objects);
  if (name == "fibration-oracle") return suite_fibration_oracle(seed, instances, max_objects);
  if (name == "slice-corollary") return suite_slice_corollary(seed, instances, max_objects);
  if (name == "properness") return suite_properness(seed, instances, max_objects);
  if (name == "adjunction-two-variables")
    return suite_adjunction_two_variables(seed, instances, max_objects);
  if (name == "enrichment-sm7") return suite_enrichment_sm7(seed, instances, max_objects);
  if (name == "exterior-quillen") return suite_exterior_quillen(seed, instances, max_objects);
  if (name == "diagonal-monoidal") return suite_diagonal_monoidal(seed, instances, max_objects);
  if (name == "delta-slice-example") return suite_delta_slice_example(seed, instances, max_objects);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace reedytk
