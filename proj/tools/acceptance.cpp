// One line per acceptance criterion; exit status 0 only when all pass.
// Tolerances and instance counts live in the criterion runners.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>

#include "nkaq/suites/criteria.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  nkaq::suites::SuiteConfig cfg;
  std::vector<int> only;
  app.add_option("--seed", cfg.seed, "suite seed");
  app.add_option("--corpus", cfg.corpus_dir, "proof-script directory")->check(CLI::ExistingDirectory);
  app.add_option("--only", only, "run only these criterion numbers");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  const auto& all = nkaq::suites::all_criteria();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    nkaq::suites::CriterionResult r;
    try {
      r = all[i](cfg);
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion";
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.passed) ++failed;
    std::printf("%s criterion %2d: %s | %s | %.2f s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
