#include <catch2/catch_amalgamated.hpp>

#include "reedytk/fibration.hpp"
#include "reedytk/instances.hpp"

using namespace reedytk;

namespace {

// category with objects b, a and parallel lowering maps u, v: a -> b,
// extended by t with m: b -> t coequalizing them (m o u = m o v = n)
FiniteCategory coequalizer_extension() {
  FiniteCategory C;
  int b = C.add_object("b");
  int a = C.add_object("a");
  int t = C.add_object("t");
  int ib = C.add_morphism("id_b", b, b);
  int ia = C.add_morphism("id_a", a, a);
  int it = C.add_morphism("id_t", t, t);
  C.set_identity(b, ib);
  C.set_identity(a, ia);
  C.set_identity(t, it);
  int u = C.add_morphism("u", a, b);
  int v = C.add_morphism("v", a, b);
  int m = C.add_morphism("m", b, t);
  int n = C.add_morphism("n", a, t);
  for (int f = 0; f < C.n_mor(); ++f) {
    C.set_compose(f, C.identity[C.src(f)], f);
    C.set_compose(C.identity[C.dst(f)], f, f);
  }
  C.set_compose(m, u, n);
  C.set_compose(m, v, n);
  return C;
}

}  // namespace

TEST_CASE("identity functors are fibrations in both senses") {
  ReedyCategory d2 = delta_reedy(2);
  FunctorData id = identity_functor(d2.cat);
  CHECK(is_left_fibration(d2, d2, id).verdict);
  CHECK(is_right_fibration(d2, d2, id).verdict);
}

TEST_CASE("functors out of a direct category are left fibrations") {
  ReedyCategory span = span_reedy();
  ReedyCategory cospan = cospan_reedy();
  ReedyCategory d2 = delta_reedy(2);
  for (const auto& F : enumerate_reedy_functors(span, cospan))
    CHECK(is_left_fibration(span, cospan, F).verdict);
  for (const auto& F : enumerate_reedy_functors(cospan, d2))
    CHECK(is_left_fibration(cospan, d2, F).verdict);

  // dually, functors out of an inverse category are right fibrations
  ReedyCategory pp = parallel_pair_reedy();
  for (const auto& F : enumerate_reedy_functors(pp, pp))
    CHECK(is_right_fibration(pp, pp, F).verdict);
}

TEST_CASE("fibrancy of the truncated simplex categories") {
  ReedyCategory d2 = delta_reedy(2);
  ReedyCategory d3 = delta_reedy(3);

  FibrationVerdict left = is_left_fibrant(d2);
  CHECK(left.verdict);
  REQUIRE(left.checked.size() == 3);
  CHECK(left.checked[0].boundary_objects == 0);
  CHECK(left.checked[1].boundary_objects == 1);
  CHECK(left.checked[2].boundary_objects == 3);
  CHECK(is_left_fibrant(d3).verdict);

  // two disconnected points in the latching category one level down
  FibrationVerdict right = is_right_fibrant(d2);
  CHECK_FALSE(right.verdict);
  REQUIRE(right.witness.has_value());
  CHECK(right.witness->alpha == "[1]");
  REQUIRE(right.witness->components.size() == 2);
  CHECK(right.witness->components[0].size() == 1);
  CHECK(right.witness->components[1].size() == 1);
}

TEST_CASE("the parallel pair is not left fibrant and the witness is minimal") {
  ReedyCategory pp = parallel_pair_reedy();
  FibrationVerdict left = is_left_fibrant(pp);
  CHECK_FALSE(left.verdict);
  REQUIRE(left.witness.has_value());
  CHECK(left.witness->beta == "*");
  CHECK(left.witness->alpha == "a");
  CHECK(left.witness->over == "id_*");
  CHECK(left.witness->components.size() == 2);

  CHECK(is_right_fibrant(pp).verdict);  // no non-identity raising maps at all

  // with failures of sizes 2 and 3 present, the witness picks the smaller
  detail::ReedyBuilder b;
  b.add_obj("b", 0);
  b.add_obj("a", 1);
  b.add_obj("b2", 0);
  b.add_obj("a2", 1);
  b.add_mor("u", "a", "b", false, true);
  b.add_mor("v", "a", "b", false, true);
  b.add_mor("u2", "a2", "b2", false, true);
  b.add_mor("v2", "a2", "b2", false, true);
  b.add_mor("w2", "a2", "b2", false, true);
  b.close_with_identities();
  REQUIRE(verify_reedy(b.A).ok());
  FibrationVerdict two = is_left_fibrant(b.A);
  CHECK_FALSE(two.verdict);
  REQUIRE(two.witness.has_value());
  CHECK(two.witness->alpha == "a");
  CHECK(two.witness->components.size() == 2);
}

TEST_CASE("the three characterizations of a left fibration agree") {
  ReedyCategory d1 = delta_reedy(1);
  ReedyCategory d2 = delta_reedy(2);
  ReedyCategory o2 = ordinal_reedy(2);
  ReedyCategory pp = parallel_pair_reedy();

  auto cross_check = [](const ReedyCategory& A, const ReedyCategory& B) {
    ReedyCategory Aop = opposite_reedy(A);
    ReedyCategory Bop = opposite_reedy(B);
    LowerRestriction RA = lower_restriction(A);
    LowerRestriction RB = lower_restriction(B);
    int negatives = 0;
    for (const auto& F : enumerate_reedy_functors(A, B)) {
      bool left = is_left_fibration(A, B, F).verdict;

      // duality: the same data is a functor between the opposites
      CHECK(left == is_right_fibration(Aop, Bop, F).verdict);

      // reduction: only the lowering parts matter
      FunctorData G = restrict_functor_to_lower(F, RA, RB);
      CHECK(left == is_left_fibration(RA.reedy, RB.reedy, G).verdict);

      // slice characterization: every comma construction is left fibrant
      bool slices = true;
      for (int beta = 0; beta < B.cat.n_obj(); ++beta)
        slices = slices && is_left_fibrant(comma_reedy(A, B, F, beta).reedy).verdict;
      CHECK(left == slices);

      if (!left) ++negatives;
    }
    return negatives;
  };

  cross_check(d1, d1);
  cross_check(o2, d2);
  cross_check(d1, d2);
  // the parallel pair family contains genuine negatives
  CHECK(cross_check(pp, pp) > 0);
}

TEST_CASE("the diagonal of the 2-truncated simplex index is a left fibration") {
  ReedyCategory d2 = delta_reedy(2);
  ReedyProduct P = product_reedy(d2, d2);
  CHECK(is_left_fibration(d2, P.reedy, diagonal_functor(d2)).verdict);

  ReedyCategory d1 = delta_reedy(1);
  ReedyProduct P1 = product_reedy(d1, d1);
  CHECK(is_left_fibration(d1, P1.reedy, diagonal_functor(d1)).verdict);
}

TEST_CASE("dual comma construction is a direct Reedy category") {
  ReedyCategory d2 = delta_reedy(2);
  ReedyCategory T = terminal_reedy();
  CommaReedy K = comma_reedy_under(d2, T, detail::to_terminal(d2.cat, T.cat), 0);
  CHECK(K.reedy.cat.n_obj() == 3);
  CHECK(K.reedy.cat.n_mor() == 11);
  CHECK(is_direct(K.reedy));
  CHECK(verify_reedy(K.reedy).ok());
}

TEST_CASE("validity of the pointwise monoidal structure") {
  CHECK(monoidal_diagonal_valid(delta_reedy(2)).valid);
  CHECK(monoidal_diagonal_valid(discrete_reedy(2)).valid);
  CHECK(monoidal_diagonal_valid(delta2_slice_k().reedy).valid);

  MonoidalDiagonalReport pp = monoidal_diagonal_valid(parallel_pair_reedy());
  CHECK_FALSE(pp.valid);
  CHECK_FALSE(pp.fibrancy.verdict);
  CHECK(pp.fibrancy.witness.has_value());
  CHECK(pp.non_epi_lowering.empty());

  // fibrancy alone is not enough: the lowering maps must be epimorphisms
  ReedyCategory ce = coequalized_pair_reedy();
  REQUIRE(verify_reedy(ce).ok());
  MonoidalDiagonalReport r = monoidal_diagonal_valid(ce);
  CHECK(r.fibrancy.verdict);
  CHECK(r.non_epi_lowering == std::vector<std::string>{"f"});
  CHECK_FALSE(r.valid);
}

TEST_CASE("forgetful functors between slices") {
  ReedyCategory d1 = delta_reedy(1);
  FunctorData id = identity_functor(d1.cat);
  int o0 = d1.cat.obj("[0]");

  SECTION("identity morphism gives the identity functor") {
    SliceFibrationReport r =
        slice_forgetful_is_fibration(d1, d1.cat, id, d1.cat.identity[size_t(o0)]);
    CHECK(r.hypotheses_ok);
    REQUIRE(r.verdict.has_value());
    CHECK(r.verdict->verdict);
  }
  SECTION("collapse of the interval onto a point") {
    SliceFibrationReport r = slice_forgetful_is_fibration(d1, d1.cat, id, d1.cat.mor("[1]>[0]:00"));
    CHECK(r.hypotheses_ok);
    REQUIRE(r.verdict.has_value());
    CHECK(r.verdict->verdict);
  }
  SECTION("a slice that is not left fibrant is a hypothesis failure") {
    ReedyCategory pp = parallel_pair_reedy();
    FiniteCategory C = coequalizer_extension();
    FunctorData F = inclusion_functor(pp.cat, C);
    REQUIRE(validate_functor(pp.cat, C, F).ok());
    SliceFibrationReport r = slice_forgetful_is_fibration(pp, C, F, C.mor("m"));
    CHECK_FALSE(r.hypotheses_ok);
    CHECK_FALSE(r.verdict.has_value());
    bool mentions_t = false;
    for (const auto& s : r.hypothesis_failures) mentions_t |= s.find("t") != std::string::npos;
    CHECK(mentions_t);
  }
  SECTION("a non-full embedding is a hypothesis failure") {
    ReedyCategory disc = discrete_reedy(2);
    ReedyCategory pp = parallel_pair_reedy();
    FunctorData F;
    F.obj_map = {pp.cat.obj("a"), pp.cat.obj("b")};
    F.mor_map = {pp.cat.identity[size_t(pp.cat.obj("a"))],
                 pp.cat.identity[size_t(pp.cat.obj("b"))]};
    SliceFibrationReport r = slice_forgetful_is_fibration(disc, pp.cat, F, pp.cat.mor("u"));
    CHECK_FALSE(r.hypotheses_ok);
    bool mentions_faithful = false;
    for (const auto& s : r.hypothesis_failures)
      mentions_faithful |= s.find("fully faithful") != std::string::npos;
    CHECK(mentions_faithful);
  }
  SECTION("the dual statement for coslices") {
    ReedyCategory o2 = ordinal_reedy(2);
    SliceFibrationReport r = slice_forgetful_is_fibration(o2, o2.cat, identity_functor(o2.cat),
                                                          o2.cat.mor("0<=1"), false);
    CHECK(r.hypotheses_ok);
    REQUIRE(r.verdict.has_value());
    CHECK(r.verdict->verdict);
  }
}

TEST_CASE("malformed functors are rejected") {
  ReedyCategory d1 = delta_reedy(1);
  FunctorData bad;
  bad.obj_map = {0, 0};
  bad.mor_map.assign(size_t(d1.cat.n_mor()), d1.cat.mor("[0]>[1]:0"));
  CHECK_THROWS_AS(is_left_fibration(d1, d1, bad), std::invalid_argument);
}
