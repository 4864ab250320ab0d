#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcx/cli/cli.hpp"
#include "gcx/error.hpp"

namespace {

int emit(const std::string& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "gcx: cannot write " << path << "\n";
    return 4;
  }
  f << out;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized complex geometry toolkit: structure checks, bundles and Atiyah class solvers"};
  std::string input, command, output, format = "text";
  int window = 8, samples = 5;
  bool timings = false;
  app.add_option("--input", input, "Problem file (JSON)");
  app.add_option("--command", command, "Command to run")->check(CLI::IsMember(gcx::cli::kCommands));
  auto* window_opt = app.add_option("--ansatz-window", window, "Ansatz degree window D")->check(CLI::Range(1, 1000));
  app.add_option("--sample-points", samples, "Sample points for pointwise checks")->check(CLI::Range(1, 1000));
  app.add_option("--output", output, "Write the report here instead of stdout");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--timings", timings, "Include per-result timings (not byte-stable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (command == "examples") return emit(gcx::cli::gallery_problem().dump(2) + "\n", output);
    if (input.empty()) {
      std::cerr << "gcx: --input is required unless --command examples\n";
      return 2;
    }
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "gcx: cannot read " << input << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const gcx::cli::ProblemFile file = gcx::cli::parse_problem(buf.str());

    gcx::cli::RunOptions opt;
    opt.command = command;
    opt.window = window_opt->count() > 0 ? window : file.ansatz_window.value_or(window);
    opt.samples = samples;
    opt.timings = timings;
    const gcx::cli::Report rep = gcx::cli::run(file, opt);
    return emit(format == "text" ? rep.text() : rep.structured().dump(2) + "\n", output);
  } catch (const gcx::Error& e) {
    std::cerr << "gcx: " << e.what() << "\n";
    return gcx::cli::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "gcx: internal error: " << e.what() << "\n";
    return 4;
  }
}
