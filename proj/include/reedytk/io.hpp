#pragma once

// Strict JSON readers and writers for the on-disk formats: categories, Reedy
// structures, functors between them, chain complexes, chain maps, diagrams and
// diagram maps, plus serializers for the report types the command-line tool
// prints.  Readers reject unknown fields, wrong JSON types, unknown ids,
// duplicate entries, and matrix-shape mismatches with std::invalid_argument;
// nothing is silently coerced.  Writers produce canonical documents: fields in
// a fixed order, collections in index order, and zero blocks omitted.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reedytk/chain.hpp"
#include "reedytk/diagram.hpp"
#include "reedytk/fibration.hpp"
#include "reedytk/fincat.hpp"
#include "reedytk/linalg.hpp"
#include "reedytk/reedy.hpp"
#include "reedytk/report.hpp"
#include "reedytk/suites.hpp"

namespace reedytk::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad(const std::string& what, const std::string& why) {
  throw std::invalid_argument(what + ": " + why);
}

inline void expect_fields(const json& j, const char* what,
                          std::initializer_list<const char*> required,
                          std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) bad(what, "expected a JSON object");
  for (const char* k : required)
    if (!j.contains(k)) bad(what, std::string("missing field \"") + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known) bad(what, "unknown field \"" + it.key() + "\"");
  }
}

inline std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) bad(what, "expected a string");
  return j.get<std::string>();
}

inline int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(what, "expected an integer");
  return j.get<int>();
}

// Numeric object keys ("-1", "0", "2") parsed strictly: no blanks, no junk.
inline int parse_int_key(const std::string& s, const char* what) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    bad(what, "bad numeric key \"" + s + "\"");
  }
  if (pos != s.size()) bad(what, "bad numeric key \"" + s + "\"");
  return v;
}

inline FpMat read_matrix(const json& j, uint32_t p, int rows, int cols, const std::string& what) {
  if (!j.is_array() || int(j.size()) != rows)
    bad(what, "expected a matrix with " + std::to_string(rows) + " rows");
  FpMat M(p, rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[size_t(r)];
    if (!row.is_array() || int(row.size()) != cols)
      bad(what, "expected rows of length " + std::to_string(cols));
    for (int c = 0; c < cols; ++c) {
      int v = as_int(row[size_t(c)], what.c_str());
      if (v < 0 || uint32_t(v) >= p)
        bad(what, "matrix entry " + std::to_string(v) + " is not reduced mod " + std::to_string(p));
      M.set(r, c, uint32_t(v));
    }
  }
  return M;
}

inline json write_matrix(const FpMat& M) {
  json rows = json::array();
  for (int r = 0; r < M.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < M.cols; ++c) row.push_back(int(M.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// The shared category fields; the caller has already screened the field set.
inline FiniteCategory fill_category(const json& j, const char* what) {
  FiniteCategory c;
  const json& objs = j["objects"];
  if (!objs.is_array()) bad(what, "\"objects\" must be an array of strings");
  for (const json& o : objs) c.add_object(as_string(o, what));
  const json& mors = j["morphisms"];
  if (!mors.is_array()) bad(what, "\"morphisms\" must be an array");
  for (const json& m : mors) {
    expect_fields(m, "morphism", {"id", "src", "dst"});
    c.add_morphism(as_string(m["id"], "morphism id"), c.obj(as_string(m["src"], "morphism src")),
                   c.obj(as_string(m["dst"], "morphism dst")));
  }
  const json& ids = j["identities"];
  if (!ids.is_object()) bad(what, "\"identities\" must be an object");
  for (auto it = ids.begin(); it != ids.end(); ++it)
    c.set_identity(c.obj(it.key()), c.mor(as_string(it.value(), "identity entry")));
  const json& comp = j["compose"];
  if (!comp.is_array()) bad(what, "\"compose\" must be an array");
  for (const json& e : comp) {
    expect_fields(e, "composite entry", {"g", "f", "gf"});
    int g = c.mor(as_string(e["g"], "composite g"));
    int f = c.mor(as_string(e["f"], "composite f"));
    if (c.try_compose(g, f))
      bad(what, "duplicate composite entry for (" + c.morphisms[size_t(g)].id + ", " +
                    c.morphisms[size_t(f)].id + ")");
    c.set_compose(g, f, c.mor(as_string(e["gf"], "composite gf")));
  }
  return c;
}

inline json write_category_fields(const FiniteCategory& c) {
  json j = json::object();
  json objs = json::array();
  for (const std::string& o : c.objects) objs.push_back(o);
  j["objects"] = std::move(objs);
  json mors = json::array();
  for (const FiniteCategory::Mor& m : c.morphisms) {
    json e = json::object();
    e["id"] = m.id;
    e["src"] = c.objects[size_t(m.src)];
    e["dst"] = c.objects[size_t(m.dst)];
    mors.push_back(std::move(e));
  }
  j["morphisms"] = std::move(mors);
  json ids = json::object();
  for (int o = 0; o < c.n_obj(); ++o)
    if (c.identity[size_t(o)] >= 0)
      ids[c.objects[size_t(o)]] = c.morphisms[size_t(c.identity[size_t(o)])].id;
  j["identities"] = std::move(ids);
  std::vector<std::pair<int, int>> entries;
  for (const auto& [k, gf] : c.compose_table)
    entries.push_back({int(k >> 32), int(uint32_t(k))});
  std::sort(entries.begin(), entries.end());
  json comp = json::array();
  for (const auto& [g, f] : entries) {
    json e = json::object();
    e["g"] = c.morphisms[size_t(g)].id;
    e["f"] = c.morphisms[size_t(f)].id;
    e["gf"] = c.morphisms[size_t(c.compose(g, f))].id;
    comp.push_back(std::move(e));
  }
  j["compose"] = std::move(comp);
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Categories
// ---------------------------------------------------------------------------

inline FiniteCategory read_category(const json& j) {
  detail::expect_fields(j, "category", {"objects", "morphisms", "identities", "compose"});
  return detail::fill_category(j, "category");
}

inline json write_category(const FiniteCategory& c) { return detail::write_category_fields(c); }

// ---------------------------------------------------------------------------
// Reedy structures
// ---------------------------------------------------------------------------

// A parsed file keeps the declared factorization table (when present) so the
// verifier can cross-check it against the computed one instead of trusting it.
struct ParsedReedy {
  ReedyCategory reedy;
  std::map<std::string, std::pair<std::string, std::string>> factorization;  // mor -> (lower, raise)
};

inline ParsedReedy read_reedy(const json& j) {
  detail::expect_fields(
      j, "reedy category",
      {"objects", "morphisms", "identities", "compose", "degree", "raise", "lower"},
      {"factorization"});
  ParsedReedy P;
  P.reedy.cat = detail::fill_category(j, "reedy category");
  FiniteCategory& c = P.reedy.cat;
  P.reedy.degree.assign(size_t(c.n_obj()), -1);
  const json& deg = j["degree"];
  if (!deg.is_object()) detail::bad("reedy category", "\"degree\" must be an object");
  for (auto it = deg.begin(); it != deg.end(); ++it) {
    int v = detail::as_int(it.value(), "degree entry");
    if (v < 0) detail::bad("reedy category", "degree of \"" + it.key() + "\" must be non-negative");
    P.reedy.degree[size_t(c.obj(it.key()))] = v;
  }
  for (int o = 0; o < c.n_obj(); ++o)
    if (P.reedy.degree[size_t(o)] < 0)
      detail::bad("reedy category", "no degree listed for object \"" + c.objects[size_t(o)] + "\"");
  P.reedy.is_raise.assign(size_t(c.n_mor()), 0);
  P.reedy.is_lower.assign(size_t(c.n_mor()), 0);
  auto fill_class = [&](const char* key, std::vector<char>& flags) {
    const json& arr = j[key];
    if (!arr.is_array())
      detail::bad("reedy category", std::string("\"") + key + "\" must be an array");
    for (const json& m : arr) flags[size_t(c.mor(detail::as_string(m, key)))] = 1;
  };
  fill_class("raise", P.reedy.is_raise);
  fill_class("lower", P.reedy.is_lower);
  if (j.contains("factorization")) {
    const json& fac = j["factorization"];
    if (!fac.is_object()) detail::bad("reedy category", "\"factorization\" must be an object");
    for (auto it = fac.begin(); it != fac.end(); ++it) {
      c.mor(it.key());
      detail::expect_fields(it.value(), "factorization entry", {"lower", "raise"});
      std::string lo = detail::as_string(it.value()["lower"], "factorization lower");
      std::string hi = detail::as_string(it.value()["raise"], "factorization raise");
      c.mor(lo);
      c.mor(hi);
      P.factorization[it.key()] = {lo, hi};
    }
  }
  return P;
}

// Structure axioms plus agreement of any declared factorization table with the
// computed one; declared entries for morphisms without a unique factorization
// are themselves violations.
inline ValidationReport verify_parsed_reedy(const ParsedReedy& P) {
  ValidationReport rep = verify_reedy(P.reedy);
  for (const auto& [mid, lr] : P.factorization) {
    int m = P.reedy.cat.mor(mid);
    try {
      auto [lo, hi] = factorize(P.reedy, m);
      const std::string &clo = P.reedy.cat.morphisms[size_t(lo)].id,
                        &chi = P.reedy.cat.morphisms[size_t(hi)].id;
      if (clo != lr.first || chi != lr.second)
        rep.violations.push_back({"declared factorization disagrees with computed",
                                  {mid, "declared (" + lr.first + ", " + lr.second + ")",
                                   "computed (" + clo + ", " + chi + ")"}});
    } catch (const std::exception& e) {
      rep.violations.push_back({"declared factorization not verifiable", {mid, e.what()}});
    }
  }
  return rep;
}

inline json write_reedy(const ReedyCategory& A) {
  json j = detail::write_category_fields(A.cat);
  json deg = json::object();
  for (int o = 0; o < A.cat.n_obj(); ++o) deg[A.cat.objects[size_t(o)]] = A.degree[size_t(o)];
  j["degree"] = std::move(deg);
  json raise = json::array(), lower = json::array();
  for (int m = 0; m < A.cat.n_mor(); ++m) {
    if (A.is_raise[size_t(m)]) raise.push_back(A.cat.morphisms[size_t(m)].id);
    if (A.is_lower[size_t(m)]) lower.push_back(A.cat.morphisms[size_t(m)].id);
  }
  j["raise"] = std::move(raise);
  j["lower"] = std::move(lower);
  // Emit the factorization entries that exist and are unique; a structure that
  // fails the uniqueness axiom simply gets a partial table, and the verifier
  // reports the underlying violation.
  json fac = json::object();
  for (int m = 0; m < A.cat.n_mor(); ++m) {
    try {
      auto [lo, hi] = factorize(A, m);
      json e = json::object();
      e["lower"] = A.cat.morphisms[size_t(lo)].id;
      e["raise"] = A.cat.morphisms[size_t(hi)].id;
      fac[A.cat.morphisms[size_t(m)].id] = std::move(e);
    } catch (const std::exception&) {
      // no unique factorization to declare
    }
  }
  j["factorization"] = std::move(fac);
  return j;
}

// ---------------------------------------------------------------------------
// Files (needed before functors/diagrams, whose payloads may reference files)
// ---------------------------------------------------------------------------

inline json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("JSON parse error in " + path.string() + ": " + e.what());
  }
}

inline FiniteCategory read_category_file(const std::filesystem::path& p) {
  return read_category(parse_file(p));
}
inline ParsedReedy read_reedy_file(const std::filesystem::path& p) {
  return read_reedy(parse_file(p));
}

// ---------------------------------------------------------------------------
// Functors between Reedy categories
// ---------------------------------------------------------------------------

struct LoadedReedyFunctor {
  ReedyCategory source, target;
  FunctorData f;
};

// `source`/`target` are either inline Reedy payloads or strings naming files,
// resolved relative to `base` (the directory of the referring file).
inline LoadedReedyFunctor read_reedy_functor(const json& j, const std::filesystem::path& base) {
  detail::expect_fields(j, "functor", {"source", "target", "object_map", "morphism_map"});
  auto side = [&](const char* key) -> ReedyCategory {
    const json& s = j[key];
    if (s.is_string()) return read_reedy_file(base / s.get<std::string>()).reedy;
    return read_reedy(s).reedy;
  };
  LoadedReedyFunctor L;
  L.source = side("source");
  L.target = side("target");
  const FiniteCategory &A = L.source.cat, &B = L.target.cat;
  L.f.obj_map.assign(size_t(A.n_obj()), -1);
  L.f.mor_map.assign(size_t(A.n_mor()), -1);
  const json& om = j["object_map"];
  if (!om.is_object()) detail::bad("functor", "\"object_map\" must be an object");
  for (auto it = om.begin(); it != om.end(); ++it)
    L.f.obj_map[size_t(A.obj(it.key()))] = B.obj(detail::as_string(it.value(), "object_map entry"));
  for (int o = 0; o < A.n_obj(); ++o)
    if (L.f.obj_map[size_t(o)] < 0)
      detail::bad("functor", "object_map misses \"" + A.objects[size_t(o)] + "\"");
  const json& mm = j["morphism_map"];
  if (!mm.is_object()) detail::bad("functor", "\"morphism_map\" must be an object");
  for (auto it = mm.begin(); it != mm.end(); ++it)
    L.f.mor_map[size_t(A.mor(it.key()))] =
        B.mor(detail::as_string(it.value(), "morphism_map entry"));
  for (int m = 0; m < A.n_mor(); ++m)
    if (L.f.mor_map[size_t(m)] < 0)
      detail::bad("functor", "morphism_map misses \"" + A.morphisms[size_t(m)].id + "\"");
  return L;
}

inline json write_reedy_functor(const ReedyCategory& A, const ReedyCategory& B,
                                const FunctorData& F) {
  json j = json::object();
  j["source"] = write_reedy(A);
  j["target"] = write_reedy(B);
  json om = json::object();
  for (int o = 0; o < A.cat.n_obj(); ++o)
    om[A.cat.objects[size_t(o)]] = B.cat.objects[size_t(F.obj_map[size_t(o)])];
  j["object_map"] = std::move(om);
  json mm = json::object();
  for (int m = 0; m < A.cat.n_mor(); ++m)
    mm[A.cat.morphisms[size_t(m)].id] = B.cat.morphisms[size_t(F.mor_map[size_t(m)])].id;
  j["morphism_map"] = std::move(mm);
  return j;
}

inline LoadedReedyFunctor read_reedy_functor_file(const std::filesystem::path& p) {
  return read_reedy_functor(parse_file(p), p.parent_path());
}

// ---------------------------------------------------------------------------
// Chain complexes and chain maps
// ---------------------------------------------------------------------------

inline ChainComplex read_complex(const json& j) {
  detail::expect_fields(j, "complex", {"p", "dims", "d"});
  ChainComplex X;
  int p = detail::as_int(j["p"], "complex p");
  if (p < 2 || p > 251) detail::bad("complex", "p must be a prime between 2 and 251");
  X.p = uint32_t(p);
  const json& dims = j["dims"];
  if (!dims.is_object()) detail::bad("complex", "\"dims\" must be an object");
  for (auto it = dims.begin(); it != dims.end(); ++it) {
    int n = detail::parse_int_key(it.key(), "complex dims");
    int v = detail::as_int(it.value(), "complex dims entry");
    if (v <= 0) detail::bad("complex", "dimension entries must be positive");
    X.dims[n] = v;
  }
  const json& d = j["d"];
  if (!d.is_object()) detail::bad("complex", "\"d\" must be an object");
  for (auto it = d.begin(); it != d.end(); ++it) {
    int n = detail::parse_int_key(it.key(), "complex d");
    X.d[n] = detail::read_matrix(it.value(), X.p, X.dim(n - 1), X.dim(n),
                                 "differential in degree " + it.key());
  }
  X.normalize();
  return X;
}

inline json write_complex(const ChainComplex& X) {
  json j = json::object();
  j["p"] = int(X.p);
  json dims = json::object();
  for (const auto& [n, k] : X.dims)
    if (k > 0) dims[std::to_string(n)] = k;
  j["dims"] = std::move(dims);
  json d = json::object();
  for (const auto& [n, M] : X.d)
    if (!M.is_zero()) d[std::to_string(n)] = detail::write_matrix(M);
  j["d"] = std::move(d);
  return j;
}

inline ChainMap read_chain_map(const json& j) {
  detail::expect_fields(j, "chain map", {"src", "dst", "components"});
  ChainMap f;
  f.src = read_complex(j["src"]);
  f.dst = read_complex(j["dst"]);
  if (f.src.p != f.dst.p) detail::bad("chain map", "src and dst use different primes");
  const json& comp = j["components"];
  if (!comp.is_object()) detail::bad("chain map", "\"components\" must be an object");
  for (auto it = comp.begin(); it != comp.end(); ++it) {
    int n = detail::parse_int_key(it.key(), "chain map components");
    f.comp[n] = detail::read_matrix(it.value(), f.src.p, f.dst.dim(n), f.src.dim(n),
                                    "component in degree " + it.key());
  }
  f.normalize();
  return f;
}

inline json write_chain_map(const ChainMap& f) {
  json j = json::object();
  j["src"] = write_complex(f.src);
  j["dst"] = write_complex(f.dst);
  json comp = json::object();
  for (const auto& [n, M] : f.comp)
    if (!M.is_zero()) comp[std::to_string(n)] = detail::write_matrix(M);
  j["components"] = std::move(comp);
  return j;
}

inline ChainComplex read_complex_file(const std::filesystem::path& p) {
  return read_complex(parse_file(p));
}
inline ChainMap read_chain_map_file(const std::filesystem::path& p) {
  return read_chain_map(parse_file(p));
}

// ---------------------------------------------------------------------------
// Diagrams of chain complexes and their maps
// ---------------------------------------------------------------------------

// `index` is a string naming a Reedy file (resolved relative to `base`) or an
// inline Reedy payload.  Every index object and morphism must be assigned; the
// endpoints declared inside each structure map must equal the named objects.
inline Diagram read_diagram(const json& j, const std::filesystem::path& base) {
  detail::expect_fields(j, "diagram", {"index", "variance", "objects", "morphisms"});
  Diagram D;
  const json& ix = j["index"];
  D.index = ix.is_string() ? read_reedy_file(base / ix.get<std::string>()).reedy
                           : read_reedy(ix).reedy;
  std::string var = detail::as_string(j["variance"], "diagram variance");
  if (var == "covariant")
    D.variance = Variance::covariant;
  else if (var == "presheaf")
    D.variance = Variance::presheaf;
  else
    detail::bad("diagram", "variance must be \"covariant\" or \"presheaf\"");
  const FiniteCategory& c = D.index.cat;
  const json& objs = j["objects"];
  if (!objs.is_object()) detail::bad("diagram", "\"objects\" must be an object");
  D.objects.assign(size_t(c.n_obj()), ChainComplex{});
  std::vector<char> seen_obj(size_t(c.n_obj()), 0);
  for (auto it = objs.begin(); it != objs.end(); ++it) {
    int o = c.obj(it.key());
    D.objects[size_t(o)] = read_complex(it.value());
    seen_obj[size_t(o)] = 1;
  }
  for (int o = 0; o < c.n_obj(); ++o)
    if (!seen_obj[size_t(o)])
      detail::bad("diagram", "no complex listed for object \"" + c.objects[size_t(o)] + "\"");
  for (const ChainComplex& X : D.objects)
    if (X.p != D.objects[0].p) detail::bad("diagram", "objects use different primes");
  if (!D.objects.empty()) D.p = D.objects[0].p;
  const json& mors = j["morphisms"];
  if (!mors.is_object()) detail::bad("diagram", "\"morphisms\" must be an object");
  D.maps.assign(size_t(c.n_mor()), ChainMap{});
  std::vector<char> seen_mor(size_t(c.n_mor()), 0);
  for (auto it = mors.begin(); it != mors.end(); ++it) {
    int m = c.mor(it.key());
    ChainMap f = read_chain_map(it.value());
    if (!complex_equal(f.src, D.objects[size_t(view_src(D, m))]))
      detail::bad("diagram", "structure map \"" + it.key() +
                                 "\" has a source different from the complex at \"" +
                                 c.objects[size_t(view_src(D, m))] + "\"");
    if (!complex_equal(f.dst, D.objects[size_t(view_dst(D, m))]))
      detail::bad("diagram", "structure map \"" + it.key() +
                                 "\" has a target different from the complex at \"" +
                                 c.objects[size_t(view_dst(D, m))] + "\"");
    D.maps[size_t(m)] = std::move(f);
    seen_mor[size_t(m)] = 1;
  }
  for (int m = 0; m < c.n_mor(); ++m)
    if (!seen_mor[size_t(m)])
      detail::bad("diagram", "no map listed for morphism \"" + c.morphisms[size_t(m)].id + "\"");
  return D;
}

inline json write_diagram(const Diagram& D) {
  json j = json::object();
  j["index"] = write_reedy(D.index);
  j["variance"] = D.variance == Variance::covariant ? "covariant" : "presheaf";
  json objs = json::object();
  for (int o = 0; o < D.index.cat.n_obj(); ++o)
    objs[D.index.cat.objects[size_t(o)]] = write_complex(D.objects[size_t(o)]);
  j["objects"] = std::move(objs);
  json mors = json::object();
  for (int m = 0; m < D.index.cat.n_mor(); ++m)
    mors[D.index.cat.morphisms[size_t(m)].id] = write_chain_map(D.maps[size_t(m)]);
  j["morphisms"] = std::move(mors);
  return j;
}

inline DiagramMap read_diagram_map(const json& j, const std::filesystem::path& base) {
  detail::expect_fields(j, "diagram map", {"src", "dst", "components"});
  DiagramMap phi;
  phi.src = read_diagram(j["src"], base);
  phi.dst = read_diagram(j["dst"], base);
  const FiniteCategory& c = phi.src.index.cat;
  if (phi.dst.index.cat.n_obj() != c.n_obj())
    detail::bad("diagram map", "src and dst are indexed by different categories");
  const json& comp = j["components"];
  if (!comp.is_object()) detail::bad("diagram map", "\"components\" must be an object");
  phi.comp.assign(size_t(c.n_obj()), ChainMap{});
  std::vector<char> seen(size_t(c.n_obj()), 0);
  for (auto it = comp.begin(); it != comp.end(); ++it) {
    int o = c.obj(it.key());
    ChainMap f = read_chain_map(it.value());
    if (!complex_equal(f.src, phi.src.objects[size_t(o)]))
      detail::bad("diagram map", "component at \"" + it.key() +
                                     "\" has a source different from the src diagram");
    if (!complex_equal(f.dst, phi.dst.objects[size_t(o)]))
      detail::bad("diagram map", "component at \"" + it.key() +
                                     "\" has a target different from the dst diagram");
    phi.comp[size_t(o)] = std::move(f);
    seen[size_t(o)] = 1;
  }
  for (int o = 0; o < c.n_obj(); ++o)
    if (!seen[size_t(o)])
      detail::bad("diagram map", "no component listed for object \"" + c.objects[size_t(o)] + "\"");
  return phi;
}

inline json write_diagram_map(const DiagramMap& phi) {
  json j = json::object();
  j["src"] = write_diagram(phi.src);
  j["dst"] = write_diagram(phi.dst);
  json comp = json::object();
  for (int o = 0; o < phi.src.index.cat.n_obj(); ++o)
    comp[phi.src.index.cat.objects[size_t(o)]] = write_chain_map(phi.comp[size_t(o)]);
  j["components"] = std::move(comp);
  return j;
}

inline Diagram read_diagram_file(const std::filesystem::path& p) {
  return read_diagram(parse_file(p), p.parent_path());
}
inline DiagramMap read_diagram_map_file(const std::filesystem::path& p) {
  return read_diagram_map(parse_file(p), p.parent_path());
}

// ---------------------------------------------------------------------------
// Report serializers
// ---------------------------------------------------------------------------

inline json write_report(const ValidationReport& r) {
  json j = json::object();
  j["ok"] = r.ok();
  json v = json::array();
  for (const LawViolation& law : r.violations) {
    json e = json::object();
    e["law"] = law.law;
    json w = json::array();
    for (const std::string& s : law.witnesses) w.push_back(s);
    e["witnesses"] = std::move(w);
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

inline json write_verdict(const FibrationVerdict& v) {
  json j = json::object();
  j["verdict"] = v.verdict;
  json checked = json::array();
  for (const CheckedComma& c : v.checked) {
    json e = json::object();
    e["beta"] = c.beta;
    e["alpha"] = c.alpha;
    e["over"] = c.over;
    e["boundary_objects"] = c.boundary_objects;
    e["empty_or_connected"] = c.empty_or_connected;
    checked.push_back(std::move(e));
  }
  j["checked"] = std::move(checked);
  if (v.witness) {
    json w = json::object();
    w["beta"] = v.witness->beta;
    w["alpha"] = v.witness->alpha;
    w["over"] = v.witness->over;
    json comps = json::array();
    for (const auto& group : v.witness->components) {
      json g = json::array();
      for (const std::string& s : group) g.push_back(s);
      comps.push_back(std::move(g));
    }
    w["components"] = std::move(comps);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json write_diagonal_report(const MonoidalDiagonalReport& r) {
  json j = json::object();
  j["valid"] = r.valid;
  j["fibrancy"] = write_verdict(r.fibrancy);
  json lows = json::array();
  for (const std::string& s : r.non_epi_lowering) lows.push_back(s);
  j["non_epi_lowering"] = std::move(lows);
  return j;
}

inline json write_chain_class(const ChainMapClass& c) {
  json j = json::object();
  j["cofibration"] = c.cofibration;
  j["fibration"] = c.fibration;
  j["weak_equivalence"] = c.weak_equivalence;
  j["trivial_cofibration"] = c.trivial_cofibration();
  j["trivial_fibration"] = c.trivial_fibration();
  return j;
}

inline json write_diagram_class(const DiagramMapClass& c) {
  json j = json::object();
  j["cofibration"] = c.cofibration;
  j["fibration"] = c.fibration;
  j["weak_equivalence"] = c.weak_equivalence;
  j["trivial_cofibration"] = c.trivial_cofibration;
  j["trivial_fibration"] = c.trivial_fibration;
  return j;
}

inline json write_suite_report(const SuiteReport& r) {
  json j = json::object();
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["instances"] = r.instances;
  j["max_objects"] = r.max_objects;
  j["all_pass"] = r.all_pass();
  j["failed"] = r.failed();
  json checks = json::array();
  for (const SuiteCheck& c : r.checks) {
    json e = json::object();
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace reedytk::io
