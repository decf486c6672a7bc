#include <catch2/catch_amalgamated.hpp>

#include "reedytk/linalg.hpp"

using namespace reedytk;

namespace {
FpMat mk(uint32_t p, int r, int c, std::vector<int> vals) {
  FpMat m(p, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, uint32_t(((vals[i * c + j] % int(p)) + int(p)) % int(p)));
  return m;
}
}  // namespace

TEST_CASE("prime detection") {
  for (uint32_t q : {2u, 3u, 5u, 7u, 251u}) CHECK(is_prime_u32(q));
  for (uint32_t q : {0u, 1u, 4u, 91u, 249u}) CHECK_FALSE(is_prime_u32(q));
}

TEST_CASE("matrix multiplication") {
  // over F_2: [[1,1],[0,1]] * [[1,0],[1,1]] = [[0,1],[1,1]]
  FpMat a = mk(2, 2, 2, {1, 1, 0, 1});
  FpMat b = mk(2, 2, 2, {1, 0, 1, 1});
  CHECK(mat_mul(a, b) == mk(2, 2, 2, {0, 1, 1, 1}));
  // over F_5: [[1,2],[3,4]] has inverse [[3,1],[4,2]]
  FpMat A = mk(5, 2, 2, {1, 2, 3, 4});
  FpMat Ainv = mk(5, 2, 2, {3, 1, 4, 2});
  CHECK(mat_mul(A, Ainv) == FpMat::identity(5, 2));
  CHECK(mat_mul(Ainv, A) == FpMat::identity(5, 2));
  // associativity on a non-square chain
  FpMat x = mk(3, 2, 3, {1, 2, 0, 0, 1, 2});
  FpMat y = mk(3, 3, 2, {2, 1, 1, 1, 0, 2});
  FpMat z = mk(3, 2, 2, {1, 1, 2, 0});
  CHECK(mat_mul(mat_mul(x, y), z) == mat_mul(x, mat_mul(y, z)));
}

TEST_CASE("scalar ops") {
  FpMat a = mk(5, 2, 2, {1, 2, 3, 4});
  CHECK(mat_add(a, mat_neg(a)).is_zero());
  CHECK(mat_sub(a, a).is_zero());
  CHECK(mat_scale(a, 2) == mk(5, 2, 2, {2, 4, 6, 8}));
  CHECK(transpose(transpose(a)) == a);
}

TEST_CASE("stacking and blocks") {
  FpMat a = mk(2, 2, 2, {1, 0, 0, 1});
  FpMat b = mk(2, 2, 1, {1, 1});
  FpMat h = hstack(a, b);
  CHECK(h.cols == 3);
  CHECK(block(h, 0, 2, 2, 1) == b);
  FpMat v = vstack(a, transpose(b));
  CHECK(v.rows == 3);
  FpMat big(2, 3, 3);
  put_block(big, 1, 1, a);
  CHECK(big.at(1, 1) == 1);
  CHECK(big.at(2, 2) == 1);
  CHECK(big.at(0, 0) == 0);
}

TEST_CASE("rref rank and pivots") {
  FpMat m = mk(2, 3, 3, {1, 1, 0, 1, 1, 1, 0, 0, 1});
  CHECK(rank(m) == 2);
  FpMat s = mk(5, 2, 2, {1, 2, 2, 4});
  FpMat sc = s;
  auto piv = rref(sc);
  REQUIRE(piv.size() == 1);
  CHECK(piv[0] == 0);
  CHECK(rank(FpMat(3, 4, 7)) == 0);
  CHECK(rank(FpMat::identity(7, 5)) == 5);
}

TEST_CASE("solve linear systems") {
  // singular but consistent over F_3: x + 2y = 1, 2x + y = 2
  FpMat A = mk(3, 2, 2, {1, 2, 2, 1});
  FpMat b1 = mk(3, 2, 1, {1, 2});
  auto s1 = solve(A, b1);
  REQUIRE(s1.has_value());
  CHECK(mat_mul(A, *s1) == b1);
  // inconsistent over F_3: x + 2y = 1, 2x + y = 1
  FpMat b2 = mk(3, 2, 1, {1, 1});
  CHECK_FALSE(solve(A, b2).has_value());
  // invertible over F_5: unique solution reproduced by multiplication
  FpMat C = mk(5, 2, 2, {1, 2, 3, 4});
  FpMat d = mk(5, 2, 1, {2, 3});
  auto s3 = solve(C, d);
  REQUIRE(s3.has_value());
  CHECK(mat_mul(C, *s3) == d);
  // matrix right-hand sides solve column-by-column
  auto s4 = solve(C, FpMat::identity(5, 2));
  REQUIRE(s4.has_value());
  CHECK(*s4 == mk(5, 2, 2, {3, 1, 4, 2}));
}

TEST_CASE("nullspace") {
  FpMat A = mk(2, 2, 3, {1, 1, 0, 0, 1, 1});
  FpMat N = nullspace(A);
  REQUIRE(N.cols == 1);
  CHECK(mat_mul(A, N).is_zero());
  CHECK(N.at(0, 0) == 1);
  CHECK(N.at(1, 0) == 1);
  CHECK(N.at(2, 0) == 1);
  CHECK(nullspace(FpMat::identity(3, 4)).cols == 0);
  CHECK(nullspace(FpMat(5, 2, 3)).cols == 3);
}

TEST_CASE("inverse") {
  FpMat A = mk(5, 2, 2, {1, 2, 3, 4});
  CHECK(is_invertible(A));
  CHECK(inverse(A) == mk(5, 2, 2, {3, 1, 4, 2}));
  CHECK_FALSE(is_invertible(mk(5, 2, 2, {1, 2, 2, 4})));
  CHECK_FALSE(is_invertible(mk(2, 1, 2, {1, 0})));
}

TEST_CASE("quotient by column span") {
  // F_2^3 modulo span{(1,1,0)}
  FpMat R = mk(2, 3, 1, {1, 1, 0});
  QuotientData q = quotient_by_columns(R);
  CHECK(q.proj.rows == 2);
  CHECK(q.proj.cols == 3);
  CHECK(mat_mul(q.proj, R).is_zero());
  CHECK(mat_mul(q.proj, q.sect) == FpMat::identity(2, 2));
  // e1 and e2 become equal in the quotient
  FpMat e1 = mk(2, 3, 1, {1, 0, 0}), e2 = mk(2, 3, 1, {0, 1, 0});
  CHECK(mat_mul(q.proj, e1) == mat_mul(q.proj, e2));
  // modding out everything / nothing
  QuotientData full = quotient_by_columns(FpMat::identity(3, 3));
  CHECK(full.proj.rows == 0);
  QuotientData none = quotient_by_columns(FpMat(3, 3, 0));
  CHECK(none.proj.rows == 3);
  CHECK(mat_mul(none.proj, none.sect) == FpMat::identity(3, 3));
}

TEST_CASE("block linear system with one-sided factors") {
  // h * A = B with A invertible over F_2 has the unique solution B * A^{-1}
  BlockLinearSystem sys(2);
  int h = sys.add_block(2, 2);
  FpMat A = mk(2, 2, 2, {1, 0, 1, 1});
  FpMat B = mk(2, 2, 2, {0, 1, 1, 0});
  sys.add_equation({{h, std::nullopt, A, false}}, B);
  auto sol = sys.solve_full();
  REQUIRE(sol.consistent);
  CHECK(sol.null_basis.cols == 0);
  CHECK(sys.block_of(sol.particular, h) == mk(2, 2, 2, {1, 1, 1, 0}));
}

TEST_CASE("block linear system with several blocks") {
  // over F_3: h1 + h2 = 2 and h1 - h2 = 0 force h1 = h2 = 1
  BlockLinearSystem sys(3);
  int h1 = sys.add_block(1, 1), h2 = sys.add_block(1, 1);
  sys.add_equation({{h1, std::nullopt, std::nullopt, false}, {h2, std::nullopt, std::nullopt, false}},
                   mk(3, 1, 1, {2}));
  sys.add_equation({{h1, std::nullopt, std::nullopt, false}, {h2, std::nullopt, std::nullopt, true}},
                   mk(3, 1, 1, {0}));
  auto sol = sys.solve_full();
  REQUIRE(sol.consistent);
  CHECK(sol.null_basis.cols == 0);
  CHECK(sys.block_of(sol.particular, h1).at(0, 0) == 1);
  CHECK(sys.block_of(sol.particular, h2).at(0, 0) == 1);
}

TEST_CASE("block linear system detects inconsistency and freedom") {
  // an equation with no unknowns and a nonzero right-hand side cannot hold
  BlockLinearSystem sys(2);
  sys.add_block(1, 1);
  sys.add_equation({}, FpMat::identity(2, 1));
  CHECK_FALSE(sys.solve_full().consistent);

  // underdetermined: h (1x2) with h * (1,1)^T = 1 leaves one degree of freedom
  BlockLinearSystem sys2(2);
  int h = sys2.add_block(1, 2);
  FpMat Q = mk(2, 2, 1, {1, 1});
  sys2.add_equation({{h, std::nullopt, Q, false}}, FpMat::identity(2, 1));
  auto sol = sys2.solve_full();
  REQUIRE(sol.consistent);
  CHECK(sol.null_basis.cols == 1);
  FpMat part = sys2.block_of(sol.particular, h);
  CHECK((part.at(0, 0) + part.at(0, 1)) % 2 == 1);
}

TEST_CASE("block linear system two-sided factor") {
  // P * h * Q = C over F_5 with P, Q invertible: unique h = P^{-1} C Q^{-1}
  BlockLinearSystem sys(5);
  int h = sys.add_block(2, 2);
  FpMat P = mk(5, 2, 2, {1, 2, 3, 4});
  FpMat Q = mk(5, 2, 2, {2, 1, 1, 1});
  FpMat h0 = mk(5, 2, 2, {1, 0, 2, 3});
  FpMat C = mat_mul(P, mat_mul(h0, Q));
  sys.add_equation({{h, P, Q, false}}, C);
  auto sol = sys.solve_full();
  REQUIRE(sol.consistent);
  CHECK(sol.null_basis.cols == 0);
  CHECK(sys.block_of(sol.particular, h) == h0);
}
