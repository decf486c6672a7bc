#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "reedytk/fincat.hpp"

using namespace reedytk;

namespace {

bool has_law(const ValidationReport& rep, const std::string& law) {
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [&](const LawViolation& v) { return v.law == law; });
}

// two objects a, b and a single arrow f: a -> b
FiniteCategory walking_arrow() {
  FiniteCategory c;
  int a = c.add_object("a"), b = c.add_object("b");
  int ia = c.add_morphism("id_a", a, a), ib = c.add_morphism("id_b", b, b);
  int f = c.add_morphism("f", a, b);
  c.set_identity(a, ia);
  c.set_identity(b, ib);
  c.set_compose(ia, ia, ia);
  c.set_compose(ib, ib, ib);
  c.set_compose(f, ia, f);
  c.set_compose(ib, f, f);
  return c;
}

// the poset 0 < 1 < ... < n-1 viewed as a category
FiniteCategory poset_chain(int n) {
  FiniteCategory c;
  for (int i = 0; i < n; ++i) c.add_object(std::to_string(i));
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      arrow[i][j] = c.add_morphism(std::to_string(i) + "<=" + std::to_string(j), i, j);
  for (int i = 0; i < n; ++i) c.set_identity(i, arrow[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) c.set_compose(arrow[j][k], arrow[i][j], arrow[i][k]);
  return c;
}

FiniteCategory discrete(int n) {
  FiniteCategory c;
  for (int i = 0; i < n; ++i) {
    c.add_object("x" + std::to_string(i));
    int m = c.add_morphism("id_x" + std::to_string(i), i, i);
    c.set_identity(i, m);
    c.set_compose(m, m, m);
  }
  return c;
}

// a,b,c with two parallel arrows u,v: a -> b merged by w: b -> c
FiniteCategory merge_fork() {
  FiniteCategory c;
  int a = c.add_object("a"), b = c.add_object("b"), cc = c.add_object("c");
  int ia = c.add_morphism("id_a", a, a), ib = c.add_morphism("id_b", b, b),
      ic = c.add_morphism("id_c", cc, cc);
  int u = c.add_morphism("u", a, b), v = c.add_morphism("v", a, b);
  int w = c.add_morphism("w", b, cc), z = c.add_morphism("z", a, cc);
  c.set_identity(a, ia);
  c.set_identity(b, ib);
  c.set_identity(cc, ic);
  for (int m : {ia, ib, ic}) c.set_compose(m, m, m);
  c.set_compose(u, ia, u);
  c.set_compose(v, ia, v);
  c.set_compose(ib, u, u);
  c.set_compose(ib, v, v);
  c.set_compose(w, ib, w);
  c.set_compose(ic, w, w);
  c.set_compose(z, ia, z);
  c.set_compose(ic, z, z);
  c.set_compose(w, u, z);
  c.set_compose(w, v, z);
  return c;
}

// a,b,c with parallel f,f2: a -> b, g: b -> c and distinct composites
FiniteCategory split_fork() {
  FiniteCategory c;
  int a = c.add_object("a"), b = c.add_object("b"), cc = c.add_object("c");
  int ia = c.add_morphism("id_a", a, a), ib = c.add_morphism("id_b", b, b),
      ic = c.add_morphism("id_c", cc, cc);
  int f = c.add_morphism("f", a, b), f2 = c.add_morphism("f2", a, b);
  int g = c.add_morphism("g", b, cc);
  int h1 = c.add_morphism("h1", a, cc), h2 = c.add_morphism("h2", a, cc);
  c.set_identity(a, ia);
  c.set_identity(b, ib);
  c.set_identity(cc, ic);
  for (int m : {ia, ib, ic}) c.set_compose(m, m, m);
  c.set_compose(f, ia, f);
  c.set_compose(f2, ia, f2);
  c.set_compose(ib, f, f);
  c.set_compose(ib, f2, f2);
  c.set_compose(g, ib, g);
  c.set_compose(ic, g, g);
  c.set_compose(h1, ia, h1);
  c.set_compose(h2, ia, h2);
  c.set_compose(ic, h1, h1);
  c.set_compose(ic, h2, h2);
  c.set_compose(g, f, h1);
  c.set_compose(g, f2, h2);
  return c;
}

}  // namespace

TEST_CASE("category laws hold on basic fixtures") {
  CHECK(validate_category(walking_arrow()).ok());
  CHECK(validate_category(poset_chain(4)).ok());
  CHECK(validate_category(discrete(3)).ok());
  CHECK(validate_category(merge_fork()).ok());
  CHECK(validate_category(split_fork()).ok());
  FiniteCategory empty;
  CHECK(validate_category(empty).ok());
}

TEST_CASE("hom sets and lookups") {
  FiniteCategory c = walking_arrow();
  CHECK(c.hom(c.obj("a"), c.obj("b")).size() == 1);
  CHECK(c.hom(c.obj("b"), c.obj("a")).empty());
  CHECK(c.out_of(c.obj("a")).size() == 2);
  CHECK(c.into(c.obj("b")).size() == 2);
  CHECK(c.is_identity(c.mor("id_a")));
  CHECK_FALSE(c.is_identity(c.mor("f")));
  CHECK_THROWS_AS(c.obj("nope"), std::invalid_argument);
  CHECK_THROWS_AS(c.mor("nope"), std::invalid_argument);
  CHECK_THROWS_AS(c.compose(c.mor("f"), c.mor("id_b")), std::invalid_argument);
  CHECK_FALSE(c.try_compose(c.mor("f"), c.mor("id_b")).has_value());
}

TEST_CASE("validator reports missing identities") {
  FiniteCategory c;
  c.add_object("a");
  CHECK(has_law(validate_category(c), "missing identity"));
}

TEST_CASE("validator reports identity endpoint mismatches") {
  FiniteCategory c;
  int a = c.add_object("a"), b = c.add_object("b");
  int m = c.add_morphism("m", a, b);
  int ib = c.add_morphism("id_b", b, b);
  c.set_identity(a, m);  // wrong: not an endomorphism of a
  c.set_identity(b, ib);
  CHECK(has_law(validate_category(c), "identity endpoints"));
}

TEST_CASE("validator reports missing and spurious composites") {
  FiniteCategory c = poset_chain(3);
  c.compose_table.erase(FiniteCategory::key(c.mor("1<=2"), c.mor("0<=1")));
  CHECK(has_law(validate_category(c), "missing composite"));

  FiniteCategory d = walking_arrow();
  d.set_compose(d.mor("f"), d.mor("f"), d.mor("f"));  // f o f is not composable
  CHECK(has_law(validate_category(d), "spurious composite"));
}

TEST_CASE("validator reports composite endpoint mismatches") {
  FiniteCategory c = poset_chain(3);
  c.set_compose(c.mor("1<=2"), c.mor("0<=1"), c.mor("1<=2"));  // should be 0<=2
  CHECK(has_law(validate_category(c), "composite endpoints"));
}

TEST_CASE("validator reports identity law failures") {
  FiniteCategory c = split_fork();
  c.set_compose(c.mor("id_b"), c.mor("f"), c.mor("f2"));
  CHECK(has_law(validate_category(c), "identity law"));
}

TEST_CASE("validator reports associativity failures") {
  // one object with a deliberately non-associative composition table
  FiniteCategory c;
  int a = c.add_object("a");
  int id = c.add_morphism("id", a, a);
  int x = c.add_morphism("x", a, a);
  int y = c.add_morphism("y", a, a);
  c.set_identity(a, id);
  for (int m : {id, x, y}) {
    c.set_compose(id, m, m);
    c.set_compose(m, id, m);
  }
  c.set_compose(x, x, y);
  c.set_compose(x, y, y);
  c.set_compose(y, x, id);
  c.set_compose(y, y, x);
  CHECK(has_law(validate_category(c), "associativity"));
}

TEST_CASE("opposite category") {
  FiniteCategory c = walking_arrow();
  FiniteCategory o = opposite(c);
  CHECK(validate_category(o).ok());
  CHECK(o.hom(o.obj("b"), o.obj("a")).size() == 1);
  CHECK(o.hom(o.obj("a"), o.obj("b")).empty());
  FiniteCategory oo = opposite(o);
  REQUIRE(oo.n_mor() == c.n_mor());
  for (int m = 0; m < c.n_mor(); ++m) {
    CHECK(oo.src(m) == c.src(m));
    CHECK(oo.dst(m) == c.dst(m));
  }
  CHECK(oo.compose_table == c.compose_table);
}

TEST_CASE("product category") {
  FiniteCategory c = walking_arrow();
  ProductCategory P = product(c, c);
  CHECK(P.cat.n_obj() == 4);
  CHECK(P.cat.n_mor() == 9);
  CHECK(validate_category(P.cat).ok());
  int o = P.cat.obj("(a,b)");
  int id = P.cat.identity[o];
  CHECK(P.cat.morphisms[id].id == "(id_a,id_b)");
  // componentwise composition
  int m1 = P.cat.mor("(f,id_b)");
  int m2 = P.cat.mor("(id_b,id_b)");
  CHECK(P.cat.compose(m2, m1) == m1);
}

TEST_CASE("functor validation") {
  FiniteCategory c = walking_arrow();
  CHECK(validate_functor(c, c, identity_functor(c)).ok());

  FunctorData bad = identity_functor(c);
  bad.mor_map[c.mor("f")] = c.mor("id_b");  // source endpoint breaks
  CHECK(has_law(validate_functor(c, c, bad), "functor endpoints"));

  FunctorData shape;
  CHECK(has_law(validate_functor(c, c, shape), "functor shape"));

  // collapse of the whole arrow onto a is a genuine functor
  FunctorData collapse;
  collapse.obj_map = {0, 0};
  collapse.mor_map = {c.mor("id_a"), c.mor("id_a"), c.mor("id_a")};
  CHECK(validate_functor(c, c, collapse).ok());
  CHECK_FALSE(is_fully_faithful(c, c, collapse));

  // swapping the two distinct composites breaks functoriality, not endpoints
  FiniteCategory s = split_fork();
  FunctorData swap = identity_functor(s);
  swap.mor_map[s.mor("h1")] = s.mor("h2");
  swap.mor_map[s.mor("h2")] = s.mor("h1");
  auto rep = validate_functor(s, s, swap);
  CHECK(has_law(rep, "functor composition"));
  CHECK_FALSE(has_law(rep, "functor endpoints"));

  CHECK(is_fully_faithful(c, c, identity_functor(c)));
}

TEST_CASE("functor composition") {
  FiniteCategory c = walking_arrow();
  FunctorData id = identity_functor(c);
  FunctorData cc = compose_functors(id, id);
  CHECK(cc.obj_map == id.obj_map);
  CHECK(cc.mor_map == id.mor_map);
}

TEST_CASE("slice comma category of the walking arrow") {
  FiniteCategory c = walking_arrow();
  CommaCategory K = comma(c, c, identity_functor(c), c.obj("b"));
  CHECK(K.cat.n_obj() == 2);
  CHECK(K.cat.n_mor() == 3);
  CHECK(validate_category(K.cat).ok());
  CHECK(K.cat.obj_index.count("<a|f>") == 1);
  CHECK(K.cat.obj_index.count("<b|id_b>") == 1);
  // projection sends <a|f> to a
  int o = K.cat.obj("<a|f>");
  CHECK(K.projection.obj_map[o] == c.obj("a"));
  CHECK(validate_functor(K.cat, c, K.projection).ok());
}

TEST_CASE("coslice comma category of the walking arrow") {
  FiniteCategory c = walking_arrow();
  CommaCategory K = coslice_comma(c, c, identity_functor(c), c.obj("a"));
  CHECK(K.cat.n_obj() == 2);
  CHECK(K.cat.n_mor() == 3);
  CHECK(validate_category(K.cat).ok());
  CHECK(K.cat.obj_index.count("<a|id_a>") == 1);
  CHECK(K.cat.obj_index.count("<b|f>") == 1);
  CHECK(validate_functor(K.cat, c, K.projection).ok());
}

TEST_CASE("comma categories over a chain poset") {
  FiniteCategory c = poset_chain(3);
  CommaCategory K = comma(c, c, identity_functor(c), c.obj("2"));
  CHECK(K.cat.n_obj() == 3);
  CHECK(K.cat.n_mor() == 6);
  CHECK(validate_category(K.cat).ok());
  CHECK(nerve_is_empty_or_connected(K.cat));

  // restricting the allowed base morphisms to identities keeps only identities
  std::vector<int> ids;
  for (int o = 0; o < c.n_obj(); ++o) ids.push_back(c.identity[o]);
  CommaCategory Kr = comma(c, c, identity_functor(c), c.obj("2"), ids);
  CHECK(Kr.cat.n_obj() == 3);
  CHECK(Kr.cat.n_mor() == 3);
  CHECK(validate_category(Kr.cat).ok());
  CHECK_FALSE(nerve_is_empty_or_connected(Kr.cat));
}

TEST_CASE("epimorphisms and monomorphisms") {
  FiniteCategory c = merge_fork();
  CHECK_FALSE(is_monomorphism(c, c.mor("w")));  // w u = w v with u != v
  CHECK(is_epimorphism(c, c.mor("w")));
  CHECK(is_monomorphism(c, c.mor("u")));
  FiniteCategory w = walking_arrow();
  CHECK(is_epimorphism(w, w.mor("f")));
  CHECK(is_monomorphism(w, w.mor("f")));
}

TEST_CASE("nerve connectivity") {
  FiniteCategory empty;
  CHECK(nerve_is_empty_or_connected(empty));
  CHECK(nerve_is_empty_or_connected(walking_arrow()));
  CHECK(nerve_is_empty_or_connected(poset_chain(4)));
  CHECK_FALSE(nerve_is_empty_or_connected(discrete(2)));
  CHECK_FALSE(nerve_is_empty_or_connected(discrete(3)));
}

TEST_CASE("subcategories") {
  FiniteCategory c = walking_arrow();
  Subcategory S = full_subcategory(c, {c.obj("a")});
  CHECK(S.cat.n_obj() == 1);
  CHECK(S.cat.n_mor() == 1);
  CHECK(validate_category(S.cat).ok());

  Subcategory L = subcategory_on_morphisms(c, {c.mor("id_a"), c.mor("id_b")});
  CHECK(L.cat.n_obj() == 2);
  CHECK(L.cat.n_mor() == 2);
  CHECK(validate_category(L.cat).ok());

  CHECK_THROWS_AS(subcategory_on_morphisms(c, {c.mor("id_a")}), std::invalid_argument);

  FiniteCategory p = poset_chain(3);
  std::vector<int> keep = {p.mor("0<=0"), p.mor("1<=1"), p.mor("2<=2"), p.mor("0<=1"),
                           p.mor("1<=2")};
  CHECK_THROWS_AS(subcategory_on_morphisms(p, keep), std::invalid_argument);
}

TEST_CASE("binary products and coproducts in a chain poset") {
  FiniteCategory c = poset_chain(3);
  auto p12 = find_binary_product(c, c.obj("1"), c.obj("2"));
  REQUIRE(p12.has_value());
  CHECK(p12->obj == c.obj("1"));  // meet = min
  auto p02 = find_binary_product(c, c.obj("0"), c.obj("2"));
  REQUIRE(p02.has_value());
  CHECK(p02->obj == c.obj("0"));
  auto c01 = find_binary_coproduct(c, c.obj("0"), c.obj("1"));
  REQUIRE(c01.has_value());
  CHECK(c01->obj == c.obj("1"));  // join = max
  FiniteCategory d = discrete(2);
  CHECK_FALSE(find_binary_product(d, 0, 1).has_value());
}
