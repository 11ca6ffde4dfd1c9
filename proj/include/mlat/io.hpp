// JSON file formats: presentation files, matrix files, and reports.
//
// Integers and fractions are written as strings ("-3", "2/3") so that no
// reader loses precision. On input, plain JSON integers are accepted too.
// All reports carry "schemaVersion"; keys are emitted in a fixed order so
// output is byte-for-byte deterministic.

#ifndef MLAT_IO_HPP_
#define MLAT_IO_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "equiv.hpp"
#include "linalg.hpp"
#include "master.hpp"
#include "repr.hpp"

namespace mlat {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

namespace impl {

[[noreturn]] inline void parse_fail(const std::string& msg) {
  fail(ErrorKind::Parse, msg);
}

inline bool is_int_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size())
    return false;
  return std::all_of(s.begin() + i, s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

inline Json to_json_int(const Int& x) { return x.str(); }
inline Json to_json_rat(const Rat& x) { return x.str(); }

} // namespace impl

inline Int parse_int(const Json& j) {
  if (j.is_number_integer())
    return Int(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!impl::is_int_literal(s))
      impl::parse_fail("not an integer: \"" + s + "\"");
    return Int(s[0] == '+' ? s.substr(1) : s);
  }
  impl::parse_fail("expected an integer, got " + j.dump());
}

inline Rat parse_rat(const Json& j) {
  if (j.is_number_integer())
    return Rat(j.get<long long>());
  if (!j.is_string())
    impl::parse_fail("expected a fraction string, got " + j.dump());
  std::string s = j.get<std::string>();
  std::size_t slash = s.find('/');
  if (slash == std::string::npos)
    return Rat(parse_int(Json(s)));
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!impl::is_int_literal(num) || !impl::is_int_literal(den))
    impl::parse_fail("malformed fraction \"" + s + "\"");
  Int d(den);
  if (d == 0)
    impl::parse_fail("zero denominator in \"" + s + "\"");
  return Rat(Int(num), d);
}

inline std::size_t parse_count(const Json& j, const char* what) {
  if (!j.is_number_unsigned())
    impl::parse_fail(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

template <class T, class F>
Matrix<T> parse_matrix(const Json& j, F entry) {
  if (!j.is_array() || j.empty())
    impl::parse_fail("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    impl::parse_fail("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      impl::parse_fail("matrix rows must all have length " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = entry(j[i][c]);
  }
  return m;
}

inline IntMatrix parse_int_matrix(const Json& j) {
  return parse_matrix<Int>(j, [](const Json& e) { return parse_int(e); });
}

inline RatMatrix parse_rat_matrix(const Json& j) {
  return parse_matrix<Rat>(j, [](const Json& e) { return parse_rat(e); });
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    impl::parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(m(i, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const Int& x : v)
    a.push_back(x.str());
  return a;
}

inline IntVector parse_int_vector(const Json& j) {
  if (!j.is_array())
    impl::parse_fail("expected an array of integers");
  IntVector v;
  for (const Json& e : j)
    v.push_back(parse_int(e));
  return v;
}

inline Json indices_to_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (std::size_t x : v)
    a.push_back(x);
  return a;
}

inline std::vector<std::size_t> parse_indices(const Json& j) {
  if (!j.is_array())
    impl::parse_fail("expected an array of indices");
  std::vector<std::size_t> v;
  for (const Json& e : j)
    v.push_back(parse_count(e, "index"));
  return v;
}

// ---- presentation files

struct Options {
  std::size_t bound = kDefaultSearchBound;
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t perm_cap = kDefaultPermCap;

  bool operator==(const Options&) const = default;
};

struct PresentationFile {
  int schema_version = kSchemaVersion;
  GroupPresentation presentation;
  Options options;
};

inline PresentationFile parse_presentation(const Json& j) {
  if (!j.is_object())
    impl::parse_fail("presentation must be a JSON object");
  PresentationFile f;
  if (j.contains("schemaVersion")) {
    if (!j["schemaVersion"].is_number_integer() || j["schemaVersion"].get<int>() != kSchemaVersion)
      impl::parse_fail("unsupported schemaVersion");
  }
  if (!j.contains("n") || !j.contains("N") || !j.contains("generators"))
    impl::parse_fail("presentation needs \"n\", \"N\" and \"generators\"");
  GroupPresentation& p = f.presentation;
  p.n = parse_count(j["n"], "n");
  p.N = parse_count(j["N"], "N");
  const Json& gens = j["generators"];
  if (!gens.is_array() || gens.empty())
    impl::parse_fail("\"generators\" must be a non-empty array");
  for (const Json& g : gens) {
    if (!g.is_object() || !g.contains("M") || !g.contains("sigma"))
      impl::parse_fail("each generator needs \"M\" and \"sigma\"");
    std::vector<std::size_t> im = parse_indices(g["sigma"]);
    try {
      p.generators.push_back({parse_int_matrix(g["M"]), Permutation(std::move(im))});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse)
        throw;
      impl::parse_fail(e.what());
    }
  }
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object())
      impl::parse_fail("\"options\" must be an object");
    if (o.contains("bound"))
      f.options.bound = parse_count(o["bound"], "bound");
    if (o.contains("closureCap"))
      f.options.closure_cap = parse_count(o["closureCap"], "closureCap");
    if (o.contains("permCap"))
      f.options.perm_cap = parse_count(o["permCap"], "permCap");
  }
  try {
    p.validate();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotUnimodular)
      throw;
    impl::parse_fail(e.what());
  }
  return f;
}

inline Json presentation_to_json(const PresentationFile& f) {
  Json j;
  j["schemaVersion"] = f.schema_version;
  j["n"] = f.presentation.n;
  j["N"] = f.presentation.N;
  Json gens = Json::array();
  for (const Generator& g : f.presentation.generators) {
    Json e;
    e["M"] = matrix_to_json(g.M);
    e["sigma"] = indices_to_json(g.sigma.images());
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  j["options"] = {{"bound", f.options.bound},
                  {"closureCap", f.options.closure_cap},
                  {"permCap", f.options.perm_cap}};
  return j;
}

// ---- solution reports

struct FamilyRecord {
  IntVector class_index;
  RatMatrix P0;
  std::vector<IntVector> free_dirs;
  IntVector S;
  std::vector<IntMatrix> T;
  bool degenerate = false;
  bool faithful = true;

  bool operator==(const FamilyRecord&) const = default;
};

struct WitnessRecord {
  std::size_t from = 0, to = 0;
  IntMatrix H;
  std::vector<std::size_t> B;
  IntVector Z;

  bool operator==(const WitnessRecord&) const = default;
};

struct ClassRecord {
  std::vector<std::size_t> members;
  std::size_t representative = 0;
  bool faithful = true;
  bool degenerate = false;

  bool operator==(const ClassRecord&) const = default;
};

struct Classification {
  std::size_t bound = 0;
  bool exhaustive = false;
  std::vector<IntMatrix> centralizer;
  std::vector<std::vector<std::size_t>> perm_centralizer;
  std::vector<ClassRecord> classes;
  std::vector<WitnessRecord> witnesses;

  bool operator==(const Classification&) const = default;
};

struct SolutionReport {
  int schema_version = kSchemaVersion;
  std::size_t n = 0, N = 0, K = 0;
  IntVector D;  // invariant factors, zeros included up to min(rows, cols)
  std::size_t rank = 0;
  std::vector<FamilyRecord> families;
  std::optional<Classification> classification;

  bool operator==(const SolutionReport&) const = default;
};

inline FamilyRecord to_record(const SolutionFamily& f) {
  return {f.class_index, f.P0, f.free_dirs, f.S, f.T, f.degenerate, f.faithful};
}

inline WitnessRecord to_record(std::size_t from, std::size_t to,
                               const EquivalenceWitness& w) {
  return {from, to, w.H, w.B.images(), w.Z};
}

// Class representative: the member whose flattened P0 is lexicographically
// largest. This does not depend on the choice of U and V.
inline std::size_t class_representative(const std::vector<SolutionFamily>& families,
                                        const std::vector<std::size_t>& members) {
  return *std::max_element(members.begin(), members.end(),
                           [&](std::size_t a, std::size_t b) {
                             return flatten(families[a].P0) < flatten(families[b].P0);
                           });
}

inline SolutionReport make_report(const MasterSystem& sys,
                                  const std::vector<SolutionFamily>& families,
                                  const ClassReport* classes = nullptr) {
  SolutionReport r;
  r.n = sys.n();
  r.N = sys.N();
  r.K = sys.K();
  for (std::size_t i = 0; i < std::min(sys.snf.D.rows(), sys.snf.D.cols()); ++i)
    r.D.push_back(sys.snf.D(i, i));
  r.rank = sys.rank();
  for (const SolutionFamily& f : families)
    r.families.push_back(to_record(f));
  if (classes) {
    Classification c;
    c.bound = classes->centralizer.bound;
    c.exhaustive = classes->centralizer.exhaustive;
    c.centralizer = classes->centralizer.elements;
    for (const PermCandidate& pc : classes->perms)
      c.perm_centralizer.push_back(pc.tau.images());
    for (const auto& members : classes->classes) {
      std::size_t rep = class_representative(families, members);
      c.classes.push_back({members, rep, families[rep].faithful, families[rep].degenerate});
      for (std::size_t a : members)
        for (std::size_t b : members) {
          if (a >= b)
            continue;
          auto it = classes->witnesses.find({a, b});
          if (it != classes->witnesses.end())
            c.witnesses.push_back(to_record(a, b, it->second));
        }
    }
    r.classification = std::move(c);
  }
  return r;
}

inline Json report_to_json(const SolutionReport& r) {
  Json j;
  j["schemaVersion"] = r.schema_version;
  j["n"] = r.n;
  j["N"] = r.N;
  j["K"] = r.K;
  j["D"] = vector_to_json(r.D);
  j["rank"] = r.rank;
  Json fams = Json::array();
  for (std::size_t i = 0; i < r.families.size(); ++i) {
    const FamilyRecord& f = r.families[i];
    Json e;
    e["index"] = i;
    e["classIndex"] = vector_to_json(f.class_index);
    e["P0"] = matrix_to_json(f.P0);
    Json dirs = Json::array();
    for (const IntVector& d : f.free_dirs)
      dirs.push_back(vector_to_json(d));
    e["freeDirs"] = std::move(dirs);
    e["S"] = vector_to_json(f.S);
    Json ts = Json::array();
    for (const IntMatrix& t : f.T)
      ts.push_back(matrix_to_json(t));
    e["T"] = std::move(ts);
    e["degenerate"] = f.degenerate;
    e["faithful"] = f.faithful;
    fams.push_back(std::move(e));
  }
  j["families"] = std::move(fams);
  if (r.classification) {
    const Classification& c = *r.classification;
    Json cj;
    cj["bound"] = c.bound;
    cj["exhaustive"] = c.exhaustive;
    Json hs = Json::array();
    for (const IntMatrix& h : c.centralizer)
      hs.push_back(matrix_to_json(h));
    cj["centralizer"] = std::move(hs);
    Json ps = Json::array();
    for (const auto& p : c.perm_centralizer)
      ps.push_back(indices_to_json(p));
    cj["permCentralizer"] = std::move(ps);
    Json cls = Json::array();
    for (const ClassRecord& k : c.classes)
      cls.push_back({{"members", indices_to_json(k.members)},
                     {"representative", k.representative},
                     {"faithful", k.faithful},
                     {"degenerate", k.degenerate}});
    cj["classes"] = std::move(cls);
    Json ws = Json::array();
    for (const WitnessRecord& w : c.witnesses)
      ws.push_back({{"from", w.from},
                    {"to", w.to},
                    {"H", matrix_to_json(w.H)},
                    {"B", indices_to_json(w.B)},
                    {"Z", vector_to_json(w.Z)}});
    cj["witnesses"] = std::move(ws);
    j["classification"] = std::move(cj);
  }
  return j;
}

inline bool parse_bool(const Json& j, const char* what) {
  if (!j.is_boolean())
    impl::parse_fail(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    impl::parse_fail(std::string("missing field \"") + key + "\"");
  return j[key];
}

inline SolutionReport report_from_json(const Json& j) {
  SolutionReport r;
  if (!field(j, "schemaVersion").is_number_integer() ||
      j["schemaVersion"].get<int>() != kSchemaVersion)
    impl::parse_fail("unsupported schemaVersion");
  r.n = parse_count(field(j, "n"), "n");
  r.N = parse_count(field(j, "N"), "N");
  r.K = parse_count(field(j, "K"), "K");
  r.D = parse_int_vector(field(j, "D"));
  r.rank = parse_count(field(j, "rank"), "rank");
  for (const Json& e : field(j, "families")) {
    FamilyRecord f;
    f.class_index = parse_int_vector(field(e, "classIndex"));
    f.P0 = parse_rat_matrix(field(e, "P0"));
    for (const Json& d : field(e, "freeDirs"))
      f.free_dirs.push_back(parse_int_vector(d));
    f.S = parse_int_vector(field(e, "S"));
    for (const Json& t : field(e, "T"))
      f.T.push_back(parse_int_matrix(t));
    f.degenerate = parse_bool(field(e, "degenerate"), "degenerate");
    f.faithful = parse_bool(field(e, "faithful"), "faithful");
    r.families.push_back(std::move(f));
  }
  if (j.contains("classification")) {
    const Json& cj = j["classification"];
    Classification c;
    c.bound = parse_count(field(cj, "bound"), "bound");
    c.exhaustive = parse_bool(field(cj, "exhaustive"), "exhaustive");
    for (const Json& h : field(cj, "centralizer"))
      c.centralizer.push_back(parse_int_matrix(h));
    for (const Json& p : field(cj, "permCentralizer"))
      c.perm_centralizer.push_back(parse_indices(p));
    for (const Json& k : field(cj, "classes"))
      c.classes.push_back({parse_indices(field(k, "members")),
                           parse_count(field(k, "representative"), "representative"),
                           parse_bool(field(k, "faithful"), "faithful"),
                           parse_bool(field(k, "degenerate"), "degenerate")});
    for (const Json& w : field(cj, "witnesses"))
      c.witnesses.push_back({parse_count(field(w, "from"), "from"),
                             parse_count(field(w, "to"), "to"),
                             parse_int_matrix(field(w, "H")),
                             parse_indices(field(w, "B")),
                             parse_int_vector(field(w, "Z"))});
    r.classification = std::move(c);
  }
  return r;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace mlat

#endif
