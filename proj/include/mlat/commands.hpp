// The CLI verbs as plain functions: text in, report text and exit code out.
//
// Exit codes:
//   0 success            4 cap or size limit exceeded
//   1 usage              5 sigma's do not form a representation
//   2 parse / I/O error  6 P is not invariant (check)
//   3 not unimodular     7 bad family index (equiv)
//   8 any other precondition failure

#ifndef MLAT_COMMANDS_HPP_
#define MLAT_COMMANDS_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "equiv.hpp"
#include "io.hpp"
#include "master.hpp"
#include "snf.hpp"

namespace mlat {

enum class Format { Json, Text };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitNotUnimodular = 3,
  kExitCapExceeded = 4,
  kExitHomomorphism = 5,
  kExitNotInvariant = 6,
  kExitBadIndex = 7,
  kExitOther = 8,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kExitParse;
    case ErrorKind::NotUnimodular: return kExitNotUnimodular;
    case ErrorKind::CapExceeded:
    case ErrorKind::SizeLimit: return kExitCapExceeded;
    case ErrorKind::Homomorphism: return kExitHomomorphism;
    case ErrorKind::NotInvariant: return kExitNotInvariant;
    default: return kExitOther;
  }
}

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

// Command-line values that override the presentation file's options.
struct OptionOverrides {
  std::optional<std::size_t> bound, closure_cap, perm_cap;

  Options apply(Options o) const {
    if (bound)
      o.bound = *bound;
    if (closure_cap)
      o.closure_cap = *closure_cap;
    if (perm_cap)
      o.perm_cap = *perm_cap;
    return o;
  }
};

namespace text {

inline std::string join(const IntVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i].str();
  return s;
}

template <class T>
std::string matrix(const Matrix<T>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j)
      s += (j ? ", " : "") + m(i, j).str();
    s += "]";
  }
  return s + "]";
}

inline std::string indices(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

inline std::string report(const SolutionReport& r) {
  std::ostringstream os;
  os << "n = " << r.n << ", N = " << r.N << ", K = " << r.K << "\n";
  os << "Smith form: D = diag(" << join(r.D) << "), rank " << r.rank << "\n";
  os << r.families.size() << " solution families, "
     << (r.n * r.N - r.rank) << " free parameters each\n";
  for (std::size_t i = 0; i < r.families.size(); ++i) {
    const FamilyRecord& f = r.families[i];
    os << "\nfamily " << i << "  k = (" << join(f.class_index) << ")";
    if (f.degenerate)
      os << "  [degenerate]";
    if (!f.faithful)
      os << "  [points coincide]";
    os << "\n";
    for (std::size_t a = 0; a < f.P0.cols(); ++a) {
      os << "  p_" << a + 1 << " = (";
      for (std::size_t c = 0; c < f.P0.rows(); ++c)
        os << (c ? ", " : "") << f.P0(c, a).str();
      os << ")\n";
    }
    for (std::size_t j = 0; j < f.free_dirs.size(); ++j)
      os << "  free direction " << j + 1 << ": (" << join(f.free_dirs[j]) << ")\n";
    os << "  S = (" << join(f.S) << ")\n";
    for (std::size_t k = 0; k < f.T.size(); ++k)
      os << "  T^(" << k + 1 << ") = " << matrix(f.T[k]) << "\n";
  }
  if (r.classification) {
    const Classification& c = *r.classification;
    os << "\n" << c.classes.size() << " classes (search bound " << c.bound << ", "
       << (c.exhaustive ? "exhaustive" : "NOT certified exhaustive: "
                                         "'different' means no witness found")
       << ")\n";
    os << "centralizer: " << c.centralizer.size() << " matrices, "
       << c.perm_centralizer.size() << " permutations\n";
    for (std::size_t k = 0; k < c.classes.size(); ++k) {
      const ClassRecord& cl = c.classes[k];
      os << "  class " << k + 1 << ": families {" << indices(cl.members)
         << "}, representative " << cl.representative
         << (cl.faithful ? "" : ", points coincide")
         << (cl.degenerate ? ", degenerate" : "") << "\n";
    }
    for (const WitnessRecord& w : c.witnesses)
      os << "  witness " << w.from << " ~ " << w.to << ": H = " << matrix(w.H)
         << ", B = (" << indices(w.B) << "), Z = (" << join(w.Z) << ")\n";
  }
  return os.str();
}

} // namespace text

namespace impl {

template <class F>
CommandResult guarded(F body) {
  try {
    return body();
  } catch (const NotInvariantError& e) {
    return {kExitNotInvariant, "", std::string("error: not invariant: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {exit_code_for(e.kind()), "", std::string("error: ") + e.what() + "\n"};
  }
}

inline PresentationFile load_presentation(const std::string& text) {
  return parse_presentation(parse_json_text(text));
}

} // namespace impl

inline CommandResult cmd_snf(const std::string& matrix_text, Format fmt) {
  return impl::guarded([&]() -> CommandResult {
    IntMatrix L = parse_int_matrix(parse_json_text(matrix_text));
    SnfDecomposition s = smith_decompose(L);
    if (fmt == Format::Text) {
      std::ostringstream os;
      IntVector d;
      for (std::size_t i = 0; i < std::min(L.rows(), L.cols()); ++i)
        d.push_back(s.D(i, i));
      os << "D = diag(" << text::join(d) << "), rank " << s.rank << "\n";
      os << "U = " << text::matrix(s.U) << "\n";
      os << "V = " << text::matrix(s.V) << "\n";
      return {kExitOk, os.str(), ""};
    }
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["rows"] = L.rows();
    j["cols"] = L.cols();
    j["rank"] = s.rank;
    j["U"] = matrix_to_json(s.U);
    j["D"] = matrix_to_json(s.D);
    j["V"] = matrix_to_json(s.V);
    return {kExitOk, dump(j), ""};
  });
}

inline CommandResult run_solve_like(const std::string& pres_text,
                                    const OptionOverrides& ov, Format fmt,
                                    bool with_classes) {
  return impl::guarded([&]() -> CommandResult {
    PresentationFile pf = impl::load_presentation(pres_text);
    Options opt = ov.apply(pf.options);
    MasterSystem sys = build_system(pf.presentation, opt.closure_cap);
    std::vector<SolutionFamily> fams = solve_master(sys);
    std::optional<ClassReport> cr;
    if (with_classes)
      cr = classify(sys, fams, opt.bound, opt.perm_cap);
    SolutionReport r = make_report(sys, fams, cr ? &*cr : nullptr);
    return {kExitOk, fmt == Format::Json ? dump(report_to_json(r)) : text::report(r), ""};
  });
}

inline CommandResult cmd_solve(const std::string& pres_text,
                               const OptionOverrides& ov, Format fmt) {
  return run_solve_like(pres_text, ov, fmt, false);
}

inline CommandResult cmd_classify(const std::string& pres_text,
                                  const OptionOverrides& ov, Format fmt) {
  return run_solve_like(pres_text, ov, fmt, true);
}

inline CommandResult cmd_check(const std::string& pres_text,
                               const std::string& p_text, Format fmt) {
  return impl::guarded([&]() -> CommandResult {
    PresentationFile pf = impl::load_presentation(pres_text);
    RatMatrix P = parse_rat_matrix(parse_json_text(p_text));
    if (P.rows() != pf.presentation.n || P.cols() != pf.presentation.N)
      fail(ErrorKind::Parse, "P must be an n x N matrix");
    std::vector<IntMatrix> T = residual_check(pf.presentation, P);
    if (fmt == Format::Text) {
      std::string s = "invariant: yes\n";
      for (std::size_t k = 0; k < T.size(); ++k)
        s += "T^(" + std::to_string(k + 1) + ") = " + text::matrix(T[k]) + "\n";
      return {kExitOk, s, ""};
    }
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["invariant"] = true;
    Json ts = Json::array();
    for (const IntMatrix& t : T)
      ts.push_back(matrix_to_json(t));
    j["T"] = std::move(ts);
    return {kExitOk, dump(j), ""};
  });
}

// Family indices are 0-based positions in the solve ordering.
inline CommandResult cmd_equiv(const std::string& pres_text, std::size_t i,
                               std::size_t j, const OptionOverrides& ov,
                               Format fmt) {
  return impl::guarded([&]() -> CommandResult {
    PresentationFile pf = impl::load_presentation(pres_text);
    Options opt = ov.apply(pf.options);
    MasterSystem sys = build_system(pf.presentation, opt.closure_cap);
    std::vector<SolutionFamily> fams = solve_master(sys);
    if (i >= fams.size() || j >= fams.size())
      return {kExitBadIndex, "",
              "error: family index out of range (there are " +
                  std::to_string(fams.size()) + " families)\n"};
    CandidateSet cands = conjugator_candidates(pf.presentation, opt.bound, opt.perm_cap);
    auto w = find_witness(sys, fams[i].S, fams[j].S, cands);
    bool exhaustive = cands.centralizer.exhaustive && cands.centralizer.bound == opt.bound;
    if (fmt == Format::Text) {
      std::ostringstream os;
      if (w)
        os << "families " << i << " and " << j << " are equivalent\n"
           << "H = " << text::matrix(w->H) << "\n"
           << "B = (" << text::indices(w->B.images()) << ")\n"
           << "Z = (" << text::join(w->Z) << ")\n";
      else
        os << "no witness within searched set\n";
      os << "search bound " << cands.centralizer.bound << ", "
         << (exhaustive ? "exhaustive" : "not certified exhaustive") << "\n";
      return {kExitOk, os.str(), ""};
    }
    Json out;
    out["schemaVersion"] = kSchemaVersion;
    out["from"] = i;
    out["to"] = j;
    out["witnessed"] = bool(w);
    if (w) {
      out["H"] = matrix_to_json(w->H);
      out["B"] = indices_to_json(w->B.images());
      out["Z"] = vector_to_json(w->Z);
    }
    out["bound"] = cands.centralizer.bound;
    out["exhaustive"] = exhaustive;
    return {kExitOk, dump(out), ""};
  });
}

} // namespace mlat

#endif
