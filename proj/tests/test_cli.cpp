#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "reedytk/instances.hpp"
#include "reedytk/io.hpp"
#include "reedytk/sampling.hpp"

using namespace reedytk;
namespace fs = std::filesystem;
using io::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the tool with stderr silenced and captures stdout plus the exit code.
RunResult run(const std::string& args) {
  std::string cmd = std::string(REEDYTK_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / "reedytk-cli-tests";
  fs::create_directories(d);
  return d;
}

fs::path put(const std::string& name, const json& j) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << j.dump(2) << "\n";
  return p;
}

fs::path put_raw(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("verify accepts valid fixtures and rejects the degenerate one with a witness") {
  fs::path good = put("delta2.reedy", io::write_reedy(instance("delta2")));
  RunResult ok = run("verify " + good.string());
  CHECK(ok.exit_code == 0);
  json rep = json::parse(ok.out);
  CHECK(rep["ok"].get<bool>());

  fs::path bad = put("nonunique.reedy", io::write_reedy(instance("nonunique-factorization")));
  RunResult no = run("verify " + bad.string());
  CHECK(no.exit_code == 1);
  json nrep = json::parse(no.out);
  CHECK_FALSE(nrep["ok"].get<bool>());
  REQUIRE_FALSE(nrep["violations"].empty());
  CHECK(nrep["violations"][0]["law"] == "non-unique factorization");
  CHECK(nrep["violations"][0]["witnesses"].size() >= 4);  // both factorizations named
}

TEST_CASE("verify exits 2 on malformed or unrecognized input") {
  fs::path broken = put_raw("broken.reedy", "{\"objects\": [");
  CHECK(run("verify " + broken.string()).exit_code == 2);
  fs::path stray = put_raw("notes.txt", "{}");
  CHECK(run("verify " + stray.string()).exit_code == 2);
  CHECK(run("verify " + scratch_dir().string() + "/does-not-exist.reedy").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("fibration verdicts carry witnesses and respect the side flags") {
  put("pp.reedy", io::write_reedy(instance("parallel-pair")));
  put("term.reedy", io::write_reedy(instance("terminal")));
  json f = json::object();
  f["source"] = "pp.reedy";
  f["target"] = "term.reedy";
  f["object_map"] = {{"b", "*"}, {"a", "*"}};
  f["morphism_map"] = {{"id_b", "id_*"}, {"id_a", "id_*"}, {"u", "id_*"}, {"v", "id_*"}};
  fs::path fp = put("pp_to_term.functor", f);

  RunResult left = run("fibration --left " + fp.string());
  CHECK(left.exit_code == 1);
  json lrep = json::parse(left.out);
  CHECK_FALSE(lrep["verdict"].get<bool>());
  REQUIRE(lrep["witness"].is_object());
  CHECK(lrep["witness"]["components"].size() == 2);  // disconnected boundary nerve

  RunResult right = run("fibration --right " + fp.string());
  CHECK(right.exit_code == 0);
  CHECK(json::parse(right.out)["verdict"].get<bool>());

  // identity functor: a fibration on both sides
  json idf = json::object();
  idf["source"] = "pp.reedy";
  idf["target"] = "pp.reedy";
  idf["object_map"] = {{"b", "b"}, {"a", "a"}};
  idf["morphism_map"] = {{"id_b", "id_b"}, {"id_a", "id_a"}, {"u", "u"}, {"v", "v"}};
  fs::path ip = put("pp_id.functor", idf);
  CHECK(run("fibration " + ip.string()).exit_code == 0);
  CHECK(run("fibration --right " + ip.string()).exit_code == 0);

  CHECK(run("fibration --left --right " + ip.string()).exit_code == 2);
}

TEST_CASE("classify prints the model-structure flags and always exits zero") {
  SplitMix64 rng(101);
  ChainComplex X = random_complex(rng, 2, 0, 2, 3);
  ChainMap i = random_cofibration(rng, X, 2, 0, 2);
  fs::path mp = put("cof.map", io::write_chain_map(i));
  RunResult mr = run("classify " + mp.string());
  CHECK(mr.exit_code == 0);
  json mrep = json::parse(mr.out);
  CHECK(mrep["cofibration"].get<bool>());

  ReedyCategory A = instance("delta1");
  Diagram D = random_diagram(rng, A, Variance::presheaf, 2, 0, 1, 2);
  DiagramMap phi = random_reedy_cofibration(rng, D, false);
  fs::path dp = put("cof.dmap", io::write_diagram_map(phi));
  RunResult dr = run("classify " + dp.string());
  CHECK(dr.exit_code == 0);
  json drep = json::parse(dr.out);
  CHECK(drep["cofibration"].get<bool>());
  for (const char* key : {"cofibration", "trivial_cofibration", "fibration", "trivial_fibration",
                          "weak_equivalence"})
    CHECK(drep.contains(key));

  // zero map between nonzero complexes: none of the flags, still exit 0
  ChainComplex S = sphere(2, 0);
  fs::path zp = put("zero.map", io::write_chain_map(zero_map(S, sphere(2, 1))));
  RunResult zr = run("classify " + zp.string());
  CHECK(zr.exit_code == 0);
  json zrep = json::parse(zr.out);
  CHECK_FALSE(zrep["cofibration"].get<bool>());
  CHECK_FALSE(zrep["fibration"].get<bool>());
  CHECK_FALSE(zrep["weak_equivalence"].get<bool>());
}

TEST_CASE("suite runs are deterministic and exit per the contract") {
  CHECK(run("suite no-such-suite").exit_code == 2);

  RunResult a = run("suite properness --seed 3 --instances 4");
  RunResult b = run("suite properness --seed 3 --instances 4");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);  // byte-identical reports for identical inputs
  json rep = json::parse(a.out);
  CHECK(rep["suite"] == "properness");
  CHECK(rep["all_pass"].get<bool>());
  CHECK(rep["seed"].get<uint64_t>() == 3);

  RunResult c = run("suite properness --seed 4 --instances 4");
  CHECK(c.out != a.out);  // the seed is actually used
}

TEST_CASE("instances list and emit round-trip through the parser") {
  RunResult ls = run("instances list");
  CHECK(ls.exit_code == 0);
  json names = json::parse(ls.out);
  for (const char* required : {"delta2", "delta3", "delta2-slice-k", "span", "cospan",
                               "pushout-shape", "discrete2", "ordinal2", "terminal",
                               "parallel-pair", "nonunique-factorization"}) {
    bool found = false;
    for (const json& n : names) found = found || n.get<std::string>() == required;
    CHECK(found);
  }

  for (const json& n : names) {
    std::string name = n.get<std::string>();
    RunResult em = run("instances emit " + name);
    REQUIRE(em.exit_code == 0);
    io::ParsedReedy P = io::read_reedy(json::parse(em.out));
    CHECK(io::write_reedy(P.reedy).dump(2) + "\n" == em.out);
    bool intended_invalid = name == "nonunique-factorization";
    CHECK(io::verify_parsed_reedy(P).ok() == !intended_invalid);
  }

  CHECK(run("instances emit no-such-fixture").exit_code == 2);
  CHECK(run("instances tabulate").exit_code == 2);
}

TEST_CASE("the text format prints the summary on standard output") {
  fs::path good = put("delta1.reedy", io::write_reedy(instance("delta1")));
  RunResult r = run("verify --format text " + good.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("valid") != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}
