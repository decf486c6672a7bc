#include <catch2/catch_amalgamated.hpp>

#include "reedytk/chain.hpp"
#include "reedytk/rng.hpp"
#include "reedytk/sampling.hpp"

using namespace reedytk;

namespace {

FpMat mk(uint32_t p, int r, int c, std::vector<int> vals) {
  FpMat m(p, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, uint32_t(((vals[i * c + j] % int(p)) + int(p)) % int(p)));
  return m;
}

ChainComplex cx(uint32_t p, std::map<int, int> dims, std::map<int, std::vector<int>> diffs) {
  ChainComplex X;
  X.p = p;
  X.dims = std::move(dims);
  for (auto& [n, vals] : diffs) X.d[n] = mk(p, X.dim(n - 1), X.dim(n), vals);
  X.normalize();
  return X;
}

ChainMap boundary_inclusion(uint32_t p, int n) {
  // S^{n-1} -> D^n picking out the bottom generator
  ChainMap f;
  f.src = sphere(p, n - 1);
  f.dst = disc(p, n);
  f.comp[n - 1] = FpMat::identity(p, 1);
  return f;
}

using HD = std::map<int, int>;

}  // namespace

TEST_CASE("builders produce valid complexes") {
  for (uint32_t p : {2u, 5u}) {
    CHECK(validate_complex(zero_complex(p)).ok());
    CHECK(validate_complex(sphere(p, 2)).ok());
    CHECK(validate_complex(disc(p, 1)).ok());
    CHECK(validate_complex(direct_sum(disc(p, 1), sphere(p, 0))).ok());
    CHECK(validate_complex(shift(disc(p, 1), 3)).ok());
    CHECK(validate_complex(dual_complex(disc(p, 1))).ok());
  }
}

TEST_CASE("complex validation flags broken data") {
  ChainComplex bad = cx(2, {{2, 1}, {1, 1}, {0, 1}}, {{2, {1}}, {1, {1}}});
  auto rep = validate_complex(bad);
  bool found = false;
  for (auto& v : rep.violations) found = found || v.law == "d o d != 0";
  CHECK(found);

  ChainComplex shape;
  shape.p = 2;
  shape.dims[1] = 2;
  shape.dims[0] = 1;
  shape.d[1] = FpMat(2, 1, 1);  // wrong column count
  found = false;
  for (auto& v : validate_complex(shape).violations) found = found || v.law == "differential shape";
  CHECK(found);

  ChainComplex comp;
  comp.p = 6;
  found = false;
  for (auto& v : validate_complex(comp).violations) found = found || v.law == "p not prime";
  CHECK(found);
}

TEST_CASE("homology of fixed complexes") {
  CHECK(homology_dims(sphere(2, 0)) == HD{{0, 1}});
  CHECK(homology_dims(sphere(5, 3, 2)) == HD{{3, 2}});
  CHECK(homology_dims(disc(2, 1)) == HD{});
  CHECK(is_acyclic(disc(5, -2)));
  // over F_2: d = [[1,1],[1,1]] has rank 1, so one class survives top and bottom
  ChainComplex X = cx(2, {{1, 2}, {0, 2}}, {{1, {1, 1, 1, 1}}});
  CHECK(homology_dims(X) == HD{{1, 1}, {0, 1}});
  CHECK(homology_dims(direct_sum(sphere(2, 0), direct_sum(sphere(2, 1), disc(2, 1)))) ==
        HD{{0, 1}, {1, 1}});
}

TEST_CASE("map validation") {
  for (uint32_t p : {2u, 5u}) {
    CHECK(validate_map(boundary_inclusion(p, 1)).ok());
    CHECK(validate_map(identity_map(disc(p, 2))).ok());
    CHECK(validate_map(zero_map(sphere(p, 1), disc(p, 1))).ok());
  }
  ChainMap bad;
  bad.src = disc(2, 1);
  bad.dst = disc(2, 1);
  bad.comp[1] = FpMat::identity(2, 1);  // degree 0 missing: fails to commute
  bool found = false;
  for (auto& v : validate_map(bad).violations) found = found || v.law == "does not commute with d";
  CHECK(found);

  ChainMap shape = identity_map(sphere(2, 0));
  shape.comp[0] = FpMat(2, 2, 2);
  found = false;
  for (auto& v : validate_map(shape).violations) found = found || v.law == "component shape";
  CHECK(found);
}

TEST_CASE("classification of structured maps") {
  for (uint32_t p : {2u, 5u}) {
    auto cl = classify_map(boundary_inclusion(p, 1));
    CHECK(cl.cofibration);
    CHECK_FALSE(cl.fibration);
    CHECK_FALSE(cl.weak_equivalence);

    auto j = classify_map(zero_map(zero_complex(p), disc(p, 1)));
    CHECK(j.cofibration);
    CHECK_FALSE(j.fibration);
    CHECK(j.weak_equivalence);
    CHECK(j.trivial_cofibration());

    auto q = classify_map(zero_map(disc(p, 1), zero_complex(p)));
    CHECK(q.fibration);
    CHECK_FALSE(q.cofibration);
    CHECK(q.trivial_fibration());

    auto idc = classify_map(identity_map(sphere(p, 2)));
    CHECK(idc.isomorphism());
    CHECK(idc.weak_equivalence);

    auto z = classify_map(zero_map(sphere(p, 1), sphere(p, 1)));
    CHECK_FALSE(z.cofibration);
    CHECK_FALSE(z.fibration);
    CHECK_FALSE(z.weak_equivalence);

    // duality swaps injective and surjective
    auto dl = classify_map(dual_map(boundary_inclusion(p, 1)));
    CHECK(dl.fibration);
    CHECK_FALSE(dl.cofibration);
  }
}

TEST_CASE("quasi-isomorphism detection agrees with cone acyclicity") {
  for (uint32_t p : {2u, 5u}) {
    SplitMix64 rng(20260816u + p);
    for (int trial = 0; trial < 40; ++trial) {
      ChainComplex X = random_complex(rng, p, -1, 3, 3);
      ChainComplex Y = random_complex(rng, p, -1, 3, 3);
      ChainMap f = random_chain_map(rng, X, Y);
      REQUIRE(validate_map(f).ok());
      ChainComplex C = cone(f);
      REQUIRE(validate_complex(C).ok());
      CHECK(induced_homology_iso(f) == is_acyclic(C));
    }
  }
}

TEST_CASE("sampled weak equivalences really are weak equivalences") {
  for (uint32_t p : {2u, 3u}) {
    SplitMix64 rng(7u * p + 1u);
    for (int trial = 0; trial < 15; ++trial) {
      ChainComplex X = random_complex(rng, p, 0, 3, 2);
      ChainMap w = random_weak_equivalence(rng, X, 0, 4);
      REQUIRE(validate_map(w).ok());
      CHECK(classify_map(w).weak_equivalence);
      CHECK(is_acyclic(cone(w)));
    }
  }
}

TEST_CASE("sampled cofibrations and fibrations have the stated shape") {
  for (uint32_t p : {2u, 5u}) {
    SplitMix64 rng(31u + p);
    for (int trial = 0; trial < 10; ++trial) {
      ChainComplex X = random_complex(rng, p, 0, 2, 2);
      ChainMap c = random_cofibration(rng, X, 2, 0, 3);
      REQUIRE(validate_map(c).ok());
      CHECK(complex_equal(c.src, X));
      CHECK(classify_map(c).cofibration);

      ChainMap f = random_fibration(rng, X, 2, 0, 3);
      REQUIRE(validate_map(f).ok());
      CHECK(complex_equal(f.dst, X));
      CHECK(classify_map(f).fibration);
    }
  }
}

TEST_CASE("tensor unit laws hold on the nose") {
  SplitMix64 rng(99);
  for (uint32_t p : {2u, 5u}) {
    ChainComplex U = unit_complex(p);
    for (int trial = 0; trial < 6; ++trial) {
      ChainComplex X = random_complex(rng, p, -2, 3, 3);
      CHECK(complex_equal(tensor_complex(U, X), X));
      CHECK(complex_equal(tensor_complex(X, U), X));
    }
  }
}

TEST_CASE("tensor differential satisfies the signed Leibniz rule") {
  // two intervals: degrees 2..0, the square with both differentials
  ChainComplex T = tensor_complex(disc(5, 1), disc(5, 1));
  CHECK(T.dims == (std::map<int, int>{{2, 1}, {1, 2}, {0, 1}}));
  CHECK(T.diff(2) == mk(5, 2, 1, {1, 4}));
  CHECK(T.diff(1) == mk(5, 1, 2, {1, 1}));
  CHECK(validate_complex(T).ok());
  CHECK(is_acyclic(T));

  // suspension agrees with tensoring by a sphere on the left
  ChainComplex X = cx(5, {{1, 2}, {0, 1}}, {{1, {1, 2}}});
  CHECK(complex_equal(tensor_complex(sphere(5, 1), X), shift(X, 1)));
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 8; ++trial) {
    ChainComplex A = random_complex(rng, 5, -1, 2, 2);
    ChainComplex B = random_complex(rng, 5, -1, 2, 2);
    CHECK(validate_complex(tensor_complex(A, B)).ok());
  }
}

TEST_CASE("tensor of maps is functorial and bilinear enough to validate") {
  SplitMix64 rng(77);
  for (uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 6; ++trial) {
      ChainComplex X = random_complex(rng, p, 0, 2, 2), Y = random_complex(rng, p, 0, 2, 2);
      ChainComplex Z = random_complex(rng, p, 0, 2, 2), W = random_complex(rng, p, 0, 2, 2);
      ChainMap f = random_chain_map(rng, X, Y), g = random_chain_map(rng, Z, W);
      ChainMap t = tensor_map(f, g);
      CHECK(complex_equal(t.src, tensor_complex(X, Z)));
      CHECK(complex_equal(t.dst, tensor_complex(Y, W)));
      CHECK(validate_map(t).ok());
      // identity ox identity = identity
      CHECK(map_equal(tensor_map(identity_map(X), identity_map(Z)),
                      identity_map(tensor_complex(X, Z))));
    }
  }
}

TEST_CASE("hom complex zero-cycles are the chain maps") {
  CHECK(complex_equal(hom_complex(sphere(2, 0), disc(2, 1)), disc(2, 1)));
  SplitMix64 rng(555);
  for (uint32_t p : {2u, 5u}) {
    for (int trial = 0; trial < 8; ++trial) {
      ChainComplex X = random_complex(rng, p, -1, 2, 2), Y = random_complex(rng, p, -1, 2, 2);
      ChainComplex H = hom_complex(X, Y);
      CHECK(validate_complex(H).ok());
      int z0 = H.dim(0) - rank(H.diff(0));
      CHECK(z0 == chain_map_space(X, Y).dim);
    }
  }
}

TEST_CASE("hom into the unit matches the dual complex") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 6; ++trial) {
    ChainComplex X = random_complex(rng, 5, 0, 3, 2);
    ChainComplex H = hom_complex(X, unit_complex(5));
    ChainComplex D = dual_complex(X);
    std::map<int, int> hd, dd;
    for (auto& [n, k] : H.dims) hd[n] = k;
    for (auto& [n, k] : D.dims) dd[n] = k;
    CHECK(hd == dd);
    CHECK(homology_dims(H) == homology_dims(D));
  }
}

TEST_CASE("copower is an iterated direct sum") {
  ChainComplex X = disc(2, 1);
  ChainComplex C = copower(3, X);
  CHECK(C.dim(1) == 3);
  CHECK(C.dim(0) == 3);
  CHECK(validate_complex(C).ok());
  CHECK(is_acyclic(C));
  CHECK(copower(0, X).is_zero());
}

TEST_CASE("kernel subcomplexes") {
  // killing the top generator of an interval leaves the bottom sphere
  ChainComplex D = disc(2, 1);
  std::map<int, FpMat> cons;
  cons[1] = FpMat::identity(2, 1);
  SubcomplexData S = kernel_subcomplex(D, cons);
  CHECK(complex_equal(S.sub, sphere(2, 0)));

  // a constraint whose kernel is not d-closed is rejected
  std::map<int, FpMat> bad;
  bad[0] = FpMat::identity(2, 1);
  CHECK_THROWS_AS(kernel_subcomplex(D, bad), std::logic_error);
}

TEST_CASE("cokernel complexes") {
  // interval modulo its bottom generator is a 1-sphere
  ChainComplex D = disc(2, 1);
  std::map<int, FpMat> rel0;
  rel0[0] = FpMat::identity(2, 1);
  QuotientComplexData Q = cokernel_complex(D, rel0);
  CHECK(complex_equal(Q.quot, sphere(2, 1)));

  // relations whose span is not d-closed are rejected
  std::map<int, FpMat> rel1;
  rel1[1] = FpMat::identity(2, 1);
  CHECK_THROWS_AS(cokernel_complex(D, rel1), std::logic_error);
}

TEST_CASE("pushouts") {
  // two intervals glued along their common boundary point
  for (uint32_t p : {2u, 5u}) {
    ChainMap i = boundary_inclusion(p, 1);
    PushoutData P = pushout(i, i);
    CHECK(P.obj.dim(1) == 2);
    CHECK(P.obj.dim(0) == 1);
    CHECK(validate_complex(P.obj).ok());
    CHECK(homology_dims(P.obj) == HD{{1, 1}});
    CHECK(validate_map(P.from_first).ok());
    CHECK(validate_map(P.from_second).ok());
    CHECK(map_equal(compose_maps(P.from_first, i), compose_maps(P.from_second, i)));

    // mediation against the identity cocone
    ChainMap h = factor_pushout(P, identity_map(i.dst), identity_map(i.dst));
    CHECK(map_equal(compose_maps(h, P.from_first), identity_map(i.dst)));

    // a non-commuting cocone is rejected
    CHECK_THROWS_AS(factor_pushout(P, identity_map(i.dst), zero_map(i.dst, i.dst)),
                    std::invalid_argument);
  }
}

TEST_CASE("pushout of a cofibration along any map is a cofibration") {
  SplitMix64 rng(1717);
  for (int trial = 0; trial < 10; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 2 : 3;
    ChainComplex A = random_complex(rng, p, 0, 2, 2);
    ChainMap c = random_cofibration(rng, A, 2, 0, 3);
    ChainComplex Z = random_complex(rng, p, 0, 2, 2);
    ChainMap g = random_chain_map(rng, A, Z);
    PushoutData P = pushout(g, c);
    CHECK(validate_complex(P.obj).ok());
    CHECK(classify_map(P.from_first).cofibration);
    CHECK(map_equal(compose_maps(P.from_first, g), compose_maps(P.from_second, c)));
  }
}

TEST_CASE("pullbacks") {
  // pairs of vectors with equal coordinate sums
  ChainComplex S2 = sphere(2, 0, 2);
  ChainMap sum = zero_map(S2, sphere(2, 0));
  sum.comp[0] = mk(2, 1, 2, {1, 1});
  PullbackData P = pullback(sum, sum);
  CHECK(P.obj.dim(0) == 3);
  CHECK(map_equal(compose_maps(sum, P.to_first), compose_maps(sum, P.to_second)));

  ChainMap u = zero_map(sphere(2, 0), S2);
  u.comp[0] = mk(2, 2, 1, {1, 0});
  ChainMap h = factor_pullback(P, u, u);
  CHECK(map_equal(compose_maps(P.to_first, h), u));
  CHECK(map_equal(compose_maps(P.to_second, h), u));

  // (e1, e2) still commutes (both sum to 1) and factors through the pullback
  ChainMap v = zero_map(sphere(2, 0), S2);
  v.comp[0] = mk(2, 2, 1, {0, 1});
  ChainMap h2 = factor_pullback(P, u, v);
  CHECK(map_equal(compose_maps(P.to_second, h2), v));

  // a zero second leg changes the composite, so the cone no longer commutes
  CHECK_THROWS_AS(factor_pullback(P, u, zero_map(sphere(2, 0), S2)), std::invalid_argument);
}

TEST_CASE("lifting solver on decidable squares") {
  for (uint32_t p : {2u, 5u}) {
    // boundary inclusion against a contractible total space: lift exists
    ChainMap i = boundary_inclusion(p, 1);
    ChainMap q = zero_map(disc(p, 1), zero_complex(p));
    auto h = solve_lifting(i, q, i, zero_map(disc(p, 1), zero_complex(p)));
    REQUIRE(h.has_value());
    CHECK(validate_map(*h).ok());
    CHECK(map_equal(compose_maps(*h, i), i));

    // boundary inclusion against a point total space: no retraction exists
    ChainMap q2 = zero_map(sphere(p, 0), zero_complex(p));
    auto h2 = solve_lifting(i, q2, identity_map(sphere(p, 0)),
                            zero_map(disc(p, 1), zero_complex(p)));
    CHECK_FALSE(h2.has_value());

    // a square that does not commute is rejected outright
    ChainMap idp = identity_map(sphere(p, 0));
    CHECK_THROWS_AS(solve_lifting(i, idp, idp, zero_map(disc(p, 1), sphere(p, 0))),
                    std::invalid_argument);
  }
}

TEST_CASE("lifting solver finds planted lifts") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 2 : 5;
    ChainComplex X = random_complex(rng, p, 0, 2, 2);
    ChainMap i = random_cofibration(rng, X, 2, 0, 3);
    ChainComplex B = random_complex(rng, p, 0, 2, 2);
    ChainMap q = random_fibration(rng, B, 2, 0, 3);
    ChainMap t = random_chain_map(rng, i.dst, q.src);
    ChainMap u = compose_maps(t, i);
    ChainMap v = compose_maps(q, t);
    auto h = solve_lifting(i, q, u, v);
    REQUIRE(h.has_value());
    CHECK(map_equal(compose_maps(*h, i), u));
    CHECK(map_equal(compose_maps(q, *h), v));
    CHECK(validate_map(*h).ok());
  }
}

TEST_CASE("cylinder factorization: cofibration then trivial fibration") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 12; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 2 : 5;
    ChainComplex X = random_complex(rng, p, -1, 2, 2);
    ChainComplex Y = random_complex(rng, p, -1, 2, 2);
    ChainMap f = random_chain_map(rng, X, Y);
    Factorization F = factor_cof_trivfib(f);
    REQUIRE(validate_complex(F.mid).ok());
    REQUIRE(validate_map(F.first).ok());
    REQUIRE(validate_map(F.second).ok());
    CHECK(map_equal(compose_maps(F.second, F.first), f));
    CHECK(classify_map(F.first).cofibration);
    CHECK(classify_map(F.second).trivial_fibration());
  }
  // empty corner case
  Factorization FE = factor_cof_trivfib(zero_map(zero_complex(2), zero_complex(2)));
  CHECK(FE.mid.is_zero());
}

TEST_CASE("path factorization: trivial cofibration then fibration") {
  SplitMix64 rng(90210);
  for (int trial = 0; trial < 12; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 2 : 5;
    ChainComplex X = random_complex(rng, p, -1, 2, 2);
    ChainComplex Y = random_complex(rng, p, -1, 2, 2);
    ChainMap f = random_chain_map(rng, X, Y);
    Factorization F = factor_trivcof_fib(f);
    REQUIRE(validate_complex(F.mid).ok());
    REQUIRE(validate_map(F.first).ok());
    REQUIRE(validate_map(F.second).ok());
    CHECK(map_equal(compose_maps(F.second, F.first), f));
    CHECK(classify_map(F.first).trivial_cofibration());
    CHECK(classify_map(F.second).fibration);
  }
}

TEST_CASE("factored pieces lift against each other") {
  // trivial cofibrations lift against fibrations; cofibrations against
  // trivial fibrations (each square planted, then re-solved from scratch)
  SplitMix64 rng(606);
  for (int trial = 0; trial < 8; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 2 : 3;
    ChainComplex X = random_complex(rng, p, 0, 2, 2);
    ChainComplex Y = random_complex(rng, p, 0, 2, 2);
    ChainMap f = random_chain_map(rng, X, Y);
    ChainMap j = factor_trivcof_fib(f).first;       // trivial cofibration
    ChainComplex B = random_complex(rng, p, 0, 2, 2);
    ChainMap q = random_fibration(rng, B, 2, 0, 3);  // fibration
    ChainMap t = random_chain_map(rng, j.dst, q.src);
    auto h = solve_lifting(j, q, compose_maps(t, j), compose_maps(q, t));
    CHECK(h.has_value());

    ChainMap c = random_cofibration(rng, X, 2, 0, 3);           // cofibration
    ChainMap qt = factor_cof_trivfib(random_chain_map(rng, Y, B)).second;  // trivial fibration
    ChainMap s = random_chain_map(rng, c.dst, qt.src);
    auto h2 = solve_lifting(c, qt, compose_maps(s, c), compose_maps(qt, s));
    CHECK(h2.has_value());
  }
}

TEST_CASE("duality is involutive and exchanges homology degrees") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    uint32_t p = (trial % 2 == 0) ? 2 : 5;
    ChainComplex X = random_complex(rng, p, -2, 2, 3);
    CHECK(complex_equal(dual_complex(dual_complex(X)), X));
    auto hx = homology_dims(X);
    auto hd = homology_dims(dual_complex(X));
    std::map<int, int> flipped;
    for (auto& [n, k] : hx) flipped[-n] = k;
    CHECK(hd == flipped);
  }
}

TEST_CASE("abstract isomorphism classification over a field") {
  CHECK(complexes_abstractly_iso(disc(2, 1), cx(2, {{1, 1}, {0, 1}}, {{1, {1}}})));
  CHECK_FALSE(complexes_abstractly_iso(disc(2, 1), direct_sum(sphere(2, 1), sphere(2, 0))));
  CHECK_FALSE(complexes_abstractly_iso(sphere(2, 0), sphere(5, 0)));
}
