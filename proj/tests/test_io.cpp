#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "reedytk/instances.hpp"
#include "reedytk/io.hpp"
#include "reedytk/sampling.hpp"

using namespace reedytk;
namespace fs = std::filesystem;
using io::json;

namespace {

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / "reedytk-io-tests";
  fs::create_directories(d);
  return d;
}

void put_file(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2) << "\n";
}

}  // namespace

TEST_CASE("categories round-trip through their file format") {
  for (const char* nm : {"span", "delta2", "parallel-pair", "terminal"}) {
    FiniteCategory c = instance(nm).cat;
    json j = io::write_category(c);
    FiniteCategory back = io::read_category(j);
    REQUIRE(validate_category(back).ok());
    CHECK(back.objects == c.objects);
    CHECK(back.n_mor() == c.n_mor());
    CHECK(io::write_category(back).dump(2) == j.dump(2));
  }
}

TEST_CASE("reedy structures round-trip and verify, including the degenerate fixture") {
  for (const char* nm : {"delta1", "delta2", "span", "cospan", "parallel-pair", "ordinal3"}) {
    ReedyCategory A = instance(nm);
    json j = io::write_reedy(A);
    io::ParsedReedy P = io::read_reedy(j);
    CHECK(io::verify_parsed_reedy(P).ok());
    CHECK(io::write_reedy(P.reedy).dump(2) == j.dump(2));
    CHECK(P.factorization.size() == size_t(A.cat.n_mor()));
  }
  // The fixture without unique factorizations writes a partial table and the
  // verifier reports the violation found by the axiom check.
  ReedyCategory bad = instance("nonunique-factorization");
  io::ParsedReedy P = io::read_reedy(io::write_reedy(bad));
  ValidationReport rep = io::verify_parsed_reedy(P);
  CHECK_FALSE(rep.ok());
  CHECK(P.factorization.size() < size_t(bad.cat.n_mor()));
}

TEST_CASE("declared factorizations are cross-checked, not trusted") {
  ReedyCategory A = instance("delta1");
  json j = io::write_reedy(A);
  // Swap one declared factorization for a wrong (but well-formed) pair.
  std::string some_mor;
  for (auto it = j["factorization"].begin(); it != j["factorization"].end(); ++it) {
    std::string lower = it.value()["lower"].get<std::string>();
    if (it.key() != lower) {  // pick a non-identity-shaped entry
      some_mor = it.key();
      break;
    }
  }
  REQUIRE_FALSE(some_mor.empty());
  j["factorization"][some_mor]["raise"] = j["factorization"][some_mor]["lower"];
  io::ParsedReedy P = io::read_reedy(j);
  ValidationReport rep = io::verify_parsed_reedy(P);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const LawViolation& v : rep.violations)
    found = found || v.law == "declared factorization disagrees with computed";
  CHECK(found);
}

TEST_CASE("unknown fields and malformed payloads are rejected") {
  ReedyCategory A = instance("delta1");
  json good = io::write_reedy(A);

  json extra = good;
  extra["flavour"] = "sour";
  CHECK_THROWS_AS(io::read_reedy(extra), std::invalid_argument);

  json bad_mor = good;
  bad_mor["morphisms"][0]["colour"] = "red";
  CHECK_THROWS_AS(io::read_reedy(bad_mor), std::invalid_argument);

  json missing_degree = good;
  missing_degree["degree"].erase(missing_degree["degree"].begin());
  CHECK_THROWS_AS(io::read_reedy(missing_degree), std::invalid_argument);

  json negative_degree = good;
  negative_degree["degree"][A.cat.objects[0]] = -1;
  CHECK_THROWS_AS(io::read_reedy(negative_degree), std::invalid_argument);

  json dup = io::write_category(A.cat);
  dup["compose"].push_back(dup["compose"][0]);
  CHECK_THROWS_AS(io::read_category(dup), std::invalid_argument);

  json unknown_id = io::write_category(A.cat);
  unknown_id["identities"]["ghost"] = "nothing";
  CHECK_THROWS_AS(io::read_category(unknown_id), std::invalid_argument);
}

TEST_CASE("functors round-trip inline and through file references") {
  ReedyCategory A = instance("delta1"), B = instance("ordinal2");
  std::vector<FunctorData> fs_all = enumerate_reedy_functors(A, B);
  REQUIRE_FALSE(fs_all.empty());
  const FunctorData& F = fs_all.back();

  json j = io::write_reedy_functor(A, B, F);
  io::LoadedReedyFunctor L = io::read_reedy_functor(j, ".");
  CHECK(validate_reedy_functor(L.source, L.target, L.f).ok());
  CHECK(L.f.obj_map == F.obj_map);
  CHECK(L.f.mor_map == F.mor_map);

  fs::path dir = scratch_dir();
  put_file(dir / "src.reedy", io::write_reedy(A));
  put_file(dir / "dst.reedy", io::write_reedy(B));
  json by_ref = j;
  by_ref["source"] = "src.reedy";
  by_ref["target"] = "dst.reedy";
  put_file(dir / "f.functor", by_ref);
  io::LoadedReedyFunctor L2 = io::read_reedy_functor_file(dir / "f.functor");
  CHECK(L2.source.cat.objects == A.cat.objects);
  CHECK(L2.target.cat.objects == B.cat.objects);
  CHECK(L2.f.obj_map == F.obj_map);

  json short_map = j;
  short_map["object_map"].erase(short_map["object_map"].begin());
  CHECK_THROWS_AS(io::read_reedy_functor(short_map, "."), std::invalid_argument);
}

TEST_CASE("complexes and chain maps round-trip with strict shapes") {
  SplitMix64 rng(41);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int k = 0; k < 6; ++k) {
      ChainComplex X = random_complex(rng, p, -1, 2, 3);
      ChainComplex back = io::read_complex(io::write_complex(X));
      REQUIRE(complex_equal(back, X));
      ChainComplex Y = random_complex(rng, p, -1, 2, 3);
      ChainMap f = random_chain_map(rng, X, Y);
      ChainMap fb = io::read_chain_map(io::write_chain_map(f));
      REQUIRE(map_equal(fb, f));
      CHECK(validate_map(fb).ok());
    }
  }

  json j = io::write_complex(sphere(2, 1));
  j["dims"]["1"] = 0;
  CHECK_THROWS_AS(io::read_complex(j), std::invalid_argument);
  json j2 = io::write_complex(disc(3, 1));
  j2["d"]["1"][0][0] = 3;  // not reduced mod 3
  CHECK_THROWS_AS(io::read_complex(j2), std::invalid_argument);
  json j3 = io::write_complex(disc(3, 1));
  j3["dims"]["one"] = 1;
  CHECK_THROWS_AS(io::read_complex(j3), std::invalid_argument);
  json j4 = io::write_complex(disc(3, 1));
  j4["d"]["1"] = json::array({json::array({0, 0})});
  CHECK_THROWS_AS(io::read_complex(j4), std::invalid_argument);
}

TEST_CASE("diagrams and their maps round-trip, inline and by index reference") {
  SplitMix64 rng(59);
  ReedyCategory A = instance("span");
  Diagram X = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 2);
  Diagram Y = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 2);
  DiagramMap f = random_natural_map(rng, X, Y);

  json jd = io::write_diagram(X);
  Diagram Xb = io::read_diagram(jd, ".");
  REQUIRE(validate_diagram(Xb).ok());
  CHECK(io::write_diagram(Xb).dump(2) == jd.dump(2));

  json jf = io::write_diagram_map(f);
  DiagramMap fb = io::read_diagram_map(jf, ".");
  REQUIRE(validate_diagram_map(fb).ok());
  CHECK(diagram_map_equal(fb, f));

  fs::path dir = scratch_dir();
  put_file(dir / "span.reedy", io::write_reedy(A));
  json by_ref = jd;
  by_ref["index"] = "span.reedy";
  put_file(dir / "x.diagram", by_ref);
  Diagram X2 = io::read_diagram_file(dir / "x.diagram");
  REQUIRE(validate_diagram(X2).ok());
  CHECK(X2.index.cat.objects == A.cat.objects);

  json wrong = jd;
  std::string first_mor = A.cat.morphisms[0].id;
  wrong["morphisms"][first_mor]["src"]["dims"]["0"] = 7;
  CHECK_THROWS_AS(io::read_diagram(wrong, "."), std::invalid_argument);
}

TEST_CASE("verdicts and reports serialize with their witnesses") {
  json ok = io::write_report(verify_reedy(instance("delta2")));
  CHECK(ok["ok"].get<bool>());
  CHECK(ok["violations"].empty());

  json bad = io::write_report(verify_reedy(instance("nonunique-factorization")));
  CHECK_FALSE(bad["ok"].get<bool>());
  REQUIRE_FALSE(bad["violations"].empty());
  CHECK(bad["violations"][0].contains("law"));
  CHECK(bad["violations"][0].contains("witnesses"));

  json fib = io::write_verdict(is_left_fibrant(instance("parallel-pair")));
  CHECK_FALSE(fib["verdict"].get<bool>());
  REQUIRE(fib["witness"].is_object());
  CHECK(fib["witness"]["components"].size() >= 2);

  json diag = io::write_diagonal_report(monoidal_diagonal_valid(instance("delta2")));
  CHECK(diag["valid"].get<bool>());

  SuiteReport r = run_suite("properness", 3, 4, 4);
  json sj = io::write_suite_report(r);
  CHECK(sj["suite"] == "properness");
  CHECK(sj["all_pass"].get<bool>());
  CHECK(sj["checks"].size() == r.checks.size());
}
