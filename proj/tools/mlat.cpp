// mlat: multilattice solver and classifier.
//
//   mlat snf      <matrix.json>
//   mlat solve    <presentation.json>
//   mlat classify <presentation.json>
//   mlat check    <presentation.json> <P.json>
//   mlat equiv    <presentation.json> <i> <j>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mlat/commands.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve and classify multilattices by Smith normal form"};
  app.require_subcommand(1);

  std::string format = "json", output;
  mlat::OptionOverrides ov;
  std::size_t bound = 0, closure_cap = 0, perm_cap = 0;
  auto add_common = [&](CLI::App* sub, bool search_options) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", output, "Write the report to this file");
    if (search_options) {
      sub->add_option("--bound", bound, "Centralizer coefficient bound")
          ->check(CLI::PositiveNumber);
      sub->add_option("--closure-cap", closure_cap, "Maximum group order")
          ->check(CLI::PositiveNumber);
      sub->add_option("--perm-cap", perm_cap, "Maximum N+1 for permutation search")
          ->check(CLI::PositiveNumber);
    }
  };

  std::string matrix_file, pres_file, p_file;
  std::size_t idx_i = 0, idx_j = 0;

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("matrix", matrix_file, "JSON nested-array matrix")->required();
  add_common(snf, false);

  auto* solve = app.add_subcommand("solve", "Enumerate all solution families");
  solve->add_option("presentation", pres_file)->required();
  add_common(solve, true);

  auto* cls = app.add_subcommand("classify", "Solve and group families into classes");
  cls->add_option("presentation", pres_file)->required();
  add_common(cls, true);

  auto* check = app.add_subcommand("check", "Check shift vectors against a presentation");
  check->add_option("presentation", pres_file)->required();
  check->add_option("P", p_file, "JSON n x N matrix of fractions")->required();
  add_common(check, false);

  auto* equiv = app.add_subcommand("equiv", "Test two families for equivalence");
  equiv->add_option("presentation", pres_file)->required();
  equiv->add_option("i", idx_i, "Family index (0-based, solve order)")->required();
  equiv->add_option("j", idx_j, "Family index (0-based, solve order)")->required();
  add_common(equiv, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : mlat::kExitUsage;
  }

  if (bound)
    ov.bound = bound;
  if (closure_cap)
    ov.closure_cap = closure_cap;
  if (perm_cap)
    ov.perm_cap = perm_cap;
  const mlat::Format fmt = format == "text" ? mlat::Format::Text : mlat::Format::Json;

  auto load = [](const std::string& path) {
    auto text = read_file(path);
    if (!text)
      throw mlat::Error(mlat::ErrorKind::Parse, "cannot read " + path);
    return *text;
  };

  mlat::CommandResult res;
  try {
    if (*snf)
      res = mlat::cmd_snf(load(matrix_file), fmt);
    else if (*solve)
      res = mlat::cmd_solve(load(pres_file), ov, fmt);
    else if (*cls)
      res = mlat::cmd_classify(load(pres_file), ov, fmt);
    else if (*check)
      res = mlat::cmd_check(load(pres_file), load(p_file), fmt);
    else
      res = mlat::cmd_equiv(load(pres_file), idx_i, idx_j, ov, fmt);
  } catch (const mlat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mlat::exit_code_for(e.kind());
  }

  std::cerr << res.err;
  if (res.exit_code == mlat::kExitOk) {
    if (output.empty()) {
      std::cout << res.out;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << output << "\n";
        return mlat::kExitParse;
      }
      out << res.out;
    }
  }
  return res.exit_code;
}
