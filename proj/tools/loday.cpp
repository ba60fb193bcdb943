#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "loday/script.hpp"

namespace fs = std::filesystem;
using namespace loday::script;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_one(const fs::path& file, const Options& opt, const std::string& report_file, bool quiet) {
  std::string text = slurp(file);
  Report rep = run_text(text, opt);
  if (!quiet)
    for (const auto& line : rep.text) std::cout << line << "\n";
  if (!report_file.empty()) {
    std::ofstream out(report_file, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << report_file << "\n";
      return 2;
    }
    out << rep.structured();
  }
  return rep.exit_status();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derived brackets and Cartan calculus, exact arithmetic"};
  app.require_subcommand(1);

  Options opt;
  std::uint64_t seed = 0;
  std::string script, report_file, dir;

  auto* run = app.add_subcommand("run", "run a script");
  run->add_option("script", script, "script file")->required()->check(CLI::ExistingFile);
  auto* seed_opt = run->add_option("--seed", seed, "base seed for random samples");
  run->add_option("--degree-cap", opt.degree_cap, "maximal polynomial degree of random samples")
      ->check(CLI::Range(0u, 8u));
  run->add_option("--jobs", opt.jobs, "checks run in parallel")->check(CLI::Range(1u, 256u));
  run->add_option("--report", report_file, "structured report file");

  auto* all = app.add_subcommand("check-all", "run every *.loday script in a directory");
  all->add_option("dir", dir, "directory")->required()->check(CLI::ExistingDirectory);
  auto* all_seed = all->add_option("--seed", seed, "base seed for random samples");
  all->add_option("--jobs", opt.jobs, "checks run in parallel")->check(CLI::Range(1u, 256u));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (*seed_opt) opt.seed = seed;
      return run_one(script, opt, report_file, false);
    }
    if (*all_seed) opt.seed = seed;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".loday") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << "no scripts in " << dir << "\n";
      return 2;
    }
    int bad = 0;
    for (const auto& f : files) {
      int want = expected_status(expectation_of(slurp(f)));
      int got = run_one(f, opt, "", true);
      bool ok = got == want;
      bad += !ok;
      std::cout << (ok ? "PASS " : "FAIL ") << f.filename().string() << " (exit " << got << ", expected "
                << want << ")\n";
    }
    return bad ? 1 : 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
