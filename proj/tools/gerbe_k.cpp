// gerbe-k: twisted K-theory invariants of finite groupoids.
//
//   gerbe-k <subcommand> --input FILE [--n INT] [--cocycle FILE] [--json]
//
// Subcommands: validate | h2 | inertia | ktheory | twisted-cohomology |
// chern-check | character-table. Exit code 0 on verdict true / successful
// report, 2 on verdict false, 1 on input error.

#include "gerbek/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twisted K-theory invariants of finite groupoids"};
  app.require_subcommand(1);

  std::string input_path, cocycle_path;
  bool json = false;
  int n_override = 0;

  const std::vector<std::string> names = {"validate",           "h2",
                                          "inertia",            "ktheory",
                                          "twisted-cohomology", "chern-check",
                                          "character-table"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", input_path, "groupoid input file")->required();
    sub->add_option("--cocycle", cocycle_path, "separate cocycle file");
    sub->add_option("--n", n_override, "modulus for the zero-cocycle default / h2");
    sub->add_flag("--json", json, "machine-readable output");
  }

  CLI11_PARSE(app, argc, argv);
  std::string subcommand = app.get_subcommands().front()->get_name();

  auto text = read_file(input_path);
  if (!text) {
    std::cerr << "error: cannot read input file '" << input_path << "'\n";
    return 1;
  }
  gerbek::ParseResult parsed = gerbek::parse_document(*text);
  if (!parsed.ok()) {
    std::cerr << "error: " << input_path << ": " << parsed.error->str() << "\n";
    return 1;
  }
  if (!cocycle_path.empty()) {
    auto ctext = read_file(cocycle_path);
    if (!ctext) {
      std::cerr << "error: cannot read cocycle file '" << cocycle_path << "'\n";
      return 1;
    }
    parsed = gerbek::attach_cocycle(std::move(*parsed.doc), *ctext);
    if (!parsed.ok()) {
      std::cerr << "error: " << cocycle_path << ": " << parsed.error->str() << "\n";
      return 1;
    }
  }

  gerbek::RunOptions opt;
  opt.json = json;
  if (n_override > 0) opt.n_override = n_override;

  try {
    gerbek::RunResult res = gerbek::run_command(subcommand, *parsed.doc, opt);
    if (!res.notice.empty()) std::cerr << res.notice;
    std::cout << res.out;
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
