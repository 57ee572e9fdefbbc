// Command-line front end over the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "bhm/bhm.h"

namespace {

void print_error(const std::string& code, const std::string& message) {
  // Minimal escaping; messages are plain text.
  std::string m;
  for (char c : message) {
    if (c == '"' || c == '\\') m += '\\';
    if (c == '\n') {
      m += "\\n";
      continue;
    }
    m += c;
  }
  std::cerr << "{\"error\":{\"code\":\"" << code << "\",\"message\":\"" << m << "\"}}\n";
}

std::optional<std::string> read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicomplex harmonic morphisms: solve, sample, verify and slice scenes"};
  std::string task, input = "-", output = "-", format;
  double tol = 0.0;
  std::uint64_t seed = 1;
  app.add_option("--task", task, "solve | fibres | verify | slice | charts (overrides the document)")
      ->check(CLI::IsMember({"solve", "fibres", "verify", "slice", "charts"}));
  app.add_option("--input", input, "scene JSON file, or - for stdin");
  app.add_option("--output", output, "report file, or - for stdout");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", tol, "solver and classification tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for {\"random\": ...} point sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("Schema", e.what());
    return 2;
  }

  const auto doc = read_input(input);
  if (!doc) {
    print_error("InvalidInput", "cannot read " + input);
    return 3;
  }

  bhm_context_t* ctx = bhm_context_create();
  if (!ctx) {
    print_error("Internal", "out of memory");
    return 3;
  }
  bhm_scene_options_t opt = bhm_scene_options_default();
  if (!task.empty()) opt.task = task.c_str();
  if (!format.empty()) opt.format = format.c_str();
  opt.tol = tol;
  opt.seed = seed;

  const char* out = nullptr;
  const char* err = nullptr;
  const bhm_status_t st = bhm_run_scene(ctx, doc->c_str(), &opt, &out, &err);
  int code = 0;
  if (st != BHM_OK) {
    std::cerr << err;
    code = st == BHM_SCHEMA ? 2 : 3;
  } else if (output == "-") {
    std::cout << out;
    std::cout.flush();
  } else {
    std::ofstream f(output, std::ios::binary);
    f << out;
    if (!f) {
      print_error("InvalidInput", "cannot write " + output);
      code = 3;
    }
  }
  bhm_context_destroy(ctx);
  return code;
}
