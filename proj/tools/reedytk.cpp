// Command-line front end: structural verification of files, fibration
// verdicts for functors, model-structure classification of diagram maps,
// named verification suites, and the fixture instance library.
//
// Exit codes: 0 = the checked criterion holds, 1 = it fails (a witness is in
// the report), 2 = usage or parse error.  The machine-readable JSON report
// goes to standard output; a human summary plus timing goes to standard
// error, so standard output stays byte-identical for identical inputs.

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reedytk/instances.hpp"
#include "reedytk/io.hpp"
#include "reedytk/suites.hpp"

namespace {

using reedytk::io::json;

struct Emitter {
  std::string format = "json";
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  // JSON (or the summary, under --format text) on stdout; summary + timing on
  // stderr.  Timing never touches stdout, keeping reports deterministic.
  void emit(const json& report, const std::string& summary) const {
    if (format == "json")
      std::cout << report.dump(2) << "\n";
    else
      std::cout << summary << "\n";
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cerr << summary << " [" << ms << " ms]\n";
  }
};

std::string extension(const std::string& path) {
  size_t dot = path.find_last_of('.');
  size_t slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "";
  return path.substr(dot);
}

std::string describe(const reedytk::ValidationReport& rep) {
  if (rep.ok()) return "valid";
  std::string s = std::to_string(rep.violations.size()) + " violation" +
                  (rep.violations.size() == 1 ? "" : "s") + "; first: " + rep.violations[0].law;
  for (const std::string& w : rep.violations[0].witnesses) s += " | " + w;
  return s;
}

int run_verify(const std::string& path, const Emitter& out) {
  std::string ext = extension(path);
  reedytk::ValidationReport rep;
  if (ext == ".cat")
    rep = reedytk::validate_category(reedytk::io::read_category_file(path));
  else if (ext == ".reedy")
    rep = reedytk::io::verify_parsed_reedy(reedytk::io::read_reedy_file(path));
  else if (ext == ".functor") {
    reedytk::io::LoadedReedyFunctor L = reedytk::io::read_reedy_functor_file(path);
    rep = reedytk::validate_reedy_functor(L.source, L.target, L.f);
  } else if (ext == ".complex")
    rep = reedytk::validate_complex(reedytk::io::read_complex_file(path));
  else if (ext == ".map")
    rep = reedytk::validate_map(reedytk::io::read_chain_map_file(path));
  else if (ext == ".diagram")
    rep = reedytk::validate_diagram(reedytk::io::read_diagram_file(path));
  else if (ext == ".dmap")
    rep = reedytk::validate_diagram_map(reedytk::io::read_diagram_map_file(path));
  else {
    std::cerr << "verify: unrecognized file extension \"" << ext
              << "\" (expected .cat, .reedy, .functor, .complex, .map, .diagram, .dmap)\n";
    return 2;
  }
  out.emit(reedytk::io::write_report(rep), path + ": " + describe(rep));
  return rep.ok() ? 0 : 1;
}

int run_fibration(const std::string& path, bool right, const Emitter& out) {
  reedytk::io::LoadedReedyFunctor L = reedytk::io::read_reedy_functor_file(path);
  reedytk::ValidationReport func = reedytk::validate_reedy_functor(L.source, L.target, L.f);
  if (!func.ok()) {
    std::cerr << "fibration: " << path << " is not a valid functor of Reedy categories ("
              << describe(func) << ")\n";
    return 2;
  }
  reedytk::FibrationVerdict v = right ? reedytk::is_right_fibration(L.source, L.target, L.f)
                                      : reedytk::is_left_fibration(L.source, L.target, L.f);
  std::string side = right ? "right" : "left";
  std::string summary = path + ": " + side + " fibration: " + (v.verdict ? "yes" : "no") + " (" +
                        std::to_string(v.checked.size()) + " pairs checked)";
  if (!v.verdict && v.witness)
    summary += "; disconnected boundary over " + v.witness->beta + " at (" + v.witness->alpha +
               ", " + v.witness->over + ") with " + std::to_string(v.witness->components.size()) +
               " components";
  out.emit(reedytk::io::write_verdict(v), summary);
  return v.verdict ? 0 : 1;
}

int run_classify(const std::string& path, const Emitter& out) {
  std::string ext = extension(path);
  json j;
  std::string summary;
  if (ext == ".map") {
    reedytk::ChainMap f = reedytk::io::read_chain_map_file(path);
    reedytk::ValidationReport rep = reedytk::validate_map(f);
    if (!rep.ok()) {
      std::cerr << "classify: " << path << " is not a chain map (" << describe(rep) << ")\n";
      return 2;
    }
    reedytk::ChainMapClass c = reedytk::classify_map(f);
    j = reedytk::io::write_chain_class(c);
    summary = path + ": cofibration=" + (c.cofibration ? "yes" : "no") +
              " trivial_cofibration=" + (c.trivial_cofibration() ? "yes" : "no") +
              " fibration=" + (c.fibration ? "yes" : "no") +
              " trivial_fibration=" + (c.trivial_fibration() ? "yes" : "no") +
              " weak_equivalence=" + (c.weak_equivalence ? "yes" : "no");
  } else if (ext == ".dmap") {
    reedytk::DiagramMap f = reedytk::io::read_diagram_map_file(path);
    reedytk::ValidationReport rep = reedytk::validate_diagram_map(f);
    if (!rep.ok()) {
      std::cerr << "classify: " << path << " is not a diagram map (" << describe(rep) << ")\n";
      return 2;
    }
    reedytk::DiagramMapClass c = reedytk::classify_reedy(f);
    j = reedytk::io::write_diagram_class(c);
    summary = path + ": cofibration=" + (c.cofibration ? "yes" : "no") +
              " trivial_cofibration=" + (c.trivial_cofibration ? "yes" : "no") +
              " fibration=" + (c.fibration ? "yes" : "no") +
              " trivial_fibration=" + (c.trivial_fibration ? "yes" : "no") +
              " weak_equivalence=" + (c.weak_equivalence ? "yes" : "no");
  } else {
    std::cerr << "classify: unrecognized file extension \"" << ext
              << "\" (expected .map or .dmap)\n";
    return 2;
  }
  out.emit(j, summary);
  return 0;
}

int run_suite(const std::string& name, uint64_t seed, int instances, int max_objects,
              const Emitter& out) {
  reedytk::SuiteReport rep = reedytk::run_suite(name, seed, instances, max_objects);
  std::string summary = "suite " + name + ": " + std::to_string(rep.checks.size()) + " checks, ";
  if (rep.all_pass()) {
    summary += "all pass";
  } else {
    const reedytk::SuiteCheck* first = nullptr;
    for (const reedytk::SuiteCheck& c : rep.checks)
      if (!c.pass && !first) first = &c;
    summary += std::to_string(rep.failed()) + " failed; first: " + first->name +
               (first->witness.empty() ? "" : " — " + first->witness);
  }
  out.emit(reedytk::io::write_suite_report(rep), summary);
  return rep.all_pass() ? 0 : 1;
}

int run_instances(const std::string& action, const std::string& name, const Emitter& out) {
  if (action == "list") {
    json j = json::array();
    std::string flat;
    for (const std::string& n : reedytk::instance_names()) {
      j.push_back(n);
      flat += (flat.empty() ? "" : " ") + n;
    }
    out.emit(j, std::to_string(j.size()) + " instances: " + flat);
    return 0;
  }
  if (action == "emit") {
    if (name.empty()) {
      std::cerr << "instances emit: missing instance name\n";
      return 2;
    }
    reedytk::ReedyCategory A = reedytk::instance(name);
    out.emit(reedytk::io::write_reedy(A), "emitted Reedy fixture \"" + name + "\" (" +
                                              std::to_string(A.cat.n_obj()) + " objects, " +
                                              std::to_string(A.cat.n_mor()) + " morphisms)");
    return 0;
  }
  std::cerr << "instances: unknown action \"" << action << "\" (expected list or emit)\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite Reedy categories, chain-complex diagrams, and their model structures"};
  app.require_subcommand(1);

  std::string format = "json";
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format on standard output")
        ->check(CLI::IsMember({"json", "text"}));
  };

  std::string verify_path;
  CLI::App* verify = app.add_subcommand("verify", "Check the structural axioms of a file");
  verify->add_option("file", verify_path, "Input file (.cat/.reedy/.functor/.complex/.map/.diagram/.dmap)")
      ->required();
  add_format(verify);

  std::string fib_path;
  bool fib_left = false, fib_right = false;
  CLI::App* fibration =
      app.add_subcommand("fibration", "Decide whether a functor file is a left/right fibration");
  fibration->add_option("file", fib_path, "Functor file (.functor)")->required();
  fibration->add_flag("--left", fib_left, "Check the left-fibration criterion (default)");
  fibration->add_flag("--right", fib_right, "Check the right-fibration criterion");
  add_format(fibration);

  std::string classify_path;
  CLI::App* classify =
      app.add_subcommand("classify", "Print the model-structure flags of a map file");
  classify->add_option("file", classify_path, "Map file (.map or .dmap)")->required();
  add_format(classify);

  std::string suite_name;
  uint64_t seed = 0;
  int instances = 50, max_objects = 4;
  CLI::App* suite = app.add_subcommand("suite", "Run a named verification suite");
  suite->add_option("name", suite_name, "Suite name")->required();
  suite->add_option("--seed", seed, "Deterministic seed");
  suite->add_option("--instances", instances, "Sampled instances per family")
      ->check(CLI::PositiveNumber);
  suite->add_option("--max-objects", max_objects, "Largest index category considered")
      ->check(CLI::PositiveNumber);
  add_format(suite);

  std::string inst_action, inst_name;
  CLI::App* inst = app.add_subcommand("instances", "List or emit library fixtures");
  inst->add_option("action", inst_action, "list | emit")->required();
  inst->add_option("name", inst_name, "Fixture name (for emit)");
  add_format(inst);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits cleanly; usage errors are exit 2
  }

  Emitter out;
  out.format = format;
  try {
    if (verify->parsed()) return run_verify(verify_path, out);
    if (fibration->parsed()) {
      if (fib_left && fib_right) {
        std::cerr << "fibration: --left and --right are mutually exclusive\n";
        return 2;
      }
      return run_fibration(fib_path, fib_right, out);
    }
    if (classify->parsed()) return run_classify(classify_path, out);
    if (suite->parsed()) return run_suite(suite_name, seed, instances, max_objects, out);
    if (inst->parsed()) return run_instances(inst_action, inst_name, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
