#include <gtest/gtest.h>

#include "nkaq/suites/criteria.hpp"
#include "nkaq/suites/lemma_instances.hpp"

using namespace nkaq::suites;
using nkaq::quantum::Rng;

TEST(Lemmas, NineNamesInOrder) {
  const auto& names = derived_lemma_names();
  ASSERT_EQ(names.size(), 9u);
  EXPECT_EQ(names.front(), "fixed-point");
  EXPECT_EQ(names.back(), "star-rewrite");
}

TEST(Lemmas, ConditionalInstancesSatisfyTheirPremises) {
  Rng rng(42);
  RandomExprOptions opts;
  for (const auto& name : derived_lemma_names()) {
    for (int i = 0; i < 15; ++i) {
      const auto inst = instantiate_lemma(name, rng, opts);
      ASSERT_FALSE(inst.conclusions.empty());
      const auto v = check_series(inst, 5);
      ASSERT_TRUE(v.premises_hold) << name;
      ASSERT_TRUE(v.bounded_ok) << name;
      ASSERT_TRUE(v.exact_ok) << name;
    }
  }
}

TEST(Lemmas, SmallSuiteRunIsClean) {
  LemmaSuiteOptions o;
  o.instances = 8;
  o.length = 5;
  o.settings = 2;
  const auto r = run_lemma_suite(o);
  const auto t = r.total();
  EXPECT_EQ(t.instances, 72);
  EXPECT_EQ(t.series_failures, 0);
  EXPECT_EQ(t.premise_failures, 0);
  EXPECT_EQ(t.bridge_failures, 0);
  EXPECT_GT(t.pairs, 50);
  EXPECT_TRUE(r.failures.empty());
}

TEST(Settings, SatisfyTheirScriptsHypotheses) {
  Rng rng(43);
  const std::string dir = NKAQ_CORPUS_DIR;
  const auto check = [&](const std::string& file, const nkaq::interp::InterpretationSetting& s) {
    const auto n = script_numerics(nkaq::proof::load_script(dir + "/" + file), s);
    EXPECT_TRUE(n.converged) << file;
    EXPECT_LT(n.hypothesis_distance, 1e-9) << file;
    EXPECT_LT(n.goal_distance, 1e-9) << file;
  };
  check("loop_unroll.nka", loop_unroll_setting(rng));
  check("loop_boundary.nka", loop_boundary_setting(rng));
  check("qsp.nka", qsp_setting(rng));
}

TEST(Criteria, FastOnesPass) {
  const SuiteConfig cfg;
  for (const auto& c : {criterion_non_idempotence(cfg), criterion_path_model(cfg)}) {
    EXPECT_TRUE(c.passed) << c.id << " " << c.title << ": " << c.detail;
  }
  EXPECT_EQ(all_criteria().size(), 10u);
}
