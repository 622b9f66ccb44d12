#include <CLI11.hpp>

#include <iostream>

#include "splicekit/cli.hpp"
#include "splicekit/error.hpp"

using namespace splicekit;

int main(int argc, char** argv) {
  CLI::App app{"splicekit: resolution graphs, splice diagrams and splice-type equations"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  std::string output;
  std::size_t enum_cap = 0;
  app.add_flag("--json", as_json, "print the JSON report instead of text");
  app.add_option("-o,--output", output, "write the output to a file");
  app.add_option("--enum-cap", enum_cap, "enumeration cap (overrides SPLICEKIT_ENUM_CAP)");

  RunOptions opts;
  std::string input;
  auto graph_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("graph", input, "graph file (JSON or compact text)")->required();
    sub->callback([&opts, name] { opts.command = name; });
    return sub;
  };

  graph_command("validate", "check the graph file and classify vertices");
  graph_command("det", "det(-A)");
  graph_command("group", "discriminant group");
  graph_command("splice", "splice diagram");
  graph_command("maximal", "maximal splice diagram");
  graph_command("report", "everything, as one report");

  CLI::App* check = app.add_subcommand("check", "semigroup | congruence | ideal | okuma34 | okuma33 | all");
  check->add_option("condition", opts.check, "which condition")
      ->required()
      ->check(CLI::IsMember({"semigroup", "congruence", "ideal", "okuma34", "okuma33", "all"}));
  check->add_option("graph", input, "graph file")->required();
  check->callback([&] { opts.command = "check"; });

  CLI::App* eq = graph_command("equations", "splice diagram equations");
  eq->add_flag("--equivariant", opts.equivariant, "require equivariant monomials");

  CLI::App* reduce = graph_command("reduce", "end-node reduction");
  reduce->add_option("--end-node", opts.end_node, "node v*")->required();
  bool raw = false, normalized = false;
  auto* raw_flag = reduce->add_flag("--raw", raw, "unnormalized weights");
  reduce->add_flag("--normalized", normalized, "weights divided by det (default)")->excludes(raw_flag);

  std::string out_dir;
  CLI::App* fixtures = app.add_subcommand("fixtures", "write the built-in fixtures and their reports");
  fixtures->add_option("--out", out_dir, "directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (*fixtures) {
      for (const auto& p : emit_fixtures(out_dir)) std::cout << p.string() << "\n";
      return kExitPass;
    }
    opts.mode = raw ? ReductionMode::raw : ReductionMode::normalized;
    opts.enum_cap = enum_cap ? enum_cap : enum_cap_from_env();
  } catch (const SpliceError& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitInvalidInput;
  }

  const RunResult r = run_file(input, opts);
  const std::string body = as_json ? r.report.dump(2) + "\n" : r.text;
  if (output.empty()) {
    std::cout << body;
  } else {
    try {
      write_text_file(output, body);
    } catch (const SpliceError& e) {
      std::cerr << e.what() << "\n";
      return kExitInvalidInput;
    }
  }
  return r.exit_code;
}
