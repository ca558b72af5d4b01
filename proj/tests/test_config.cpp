#include <cstdio>
#include <fstream>

#include <gtest/gtest.h>

#include "config.hpp"
#include "errors.hpp"
#include "suites.hpp"

using namespace skms;

TEST(Config, DefaultsCoverTheTable) {
  const RunConfig cfg;
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.params.size(), param_table().size());
  for (const auto& p : param_table()) EXPECT_GT(cfg.get(p.key), 0.0) << p.key;
  EXPECT_EQ(cfg.get_int("svir.cutoff"), 12);
  EXPECT_EQ(cfg.get("kernel.quad_rel_tol"), 1e-10);
}

TEST(Config, AliasesResolve) {
  RunConfig cfg;
  cfg.apply_override("rel_tol=1e-3");
  EXPECT_EQ(cfg.get("kernel.quad_rel_tol"), 1e-3);
  EXPECT_EQ(canonical_key("N"), "svir.cutoff");
}

TEST(Config, RejectsBadValues) {
  RunConfig cfg;
  EXPECT_THROW(cfg.set("kernel.normalization_tol", 0.0), ConfigError);
  EXPECT_THROW(cfg.set("kernel.normalization_tol", -1e-8), ConfigError);
  EXPECT_THROW(cfg.set("svir.cutoff", 12.5), ConfigError);
  EXPECT_THROW(cfg.set("svir.cutoff", 15.0), ConfigError);
  EXPECT_THROW(cfg.set("no.such.key", 1.0), ConfigError);
  EXPECT_THROW(cfg.apply_override("kernel.pairs"), ConfigError);
  EXPECT_THROW(cfg.apply_override("kernel.pairs=abc"), ConfigError);
  EXPECT_THROW(cfg.apply_override("kernel.pairs=3x"), ConfigError);
}

TEST(Config, JsonLayersOverDefaults) {
  const auto cfg = config_from_json(nlohmann::json{{"seed", 7}, {"gibbs.max_n", 6}, {"rel_tol", "1e-6"}, {"out", "r.json"}});
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.get_int("gibbs.max_n"), 6);
  EXPECT_EQ(cfg.get("kernel.quad_rel_tol"), 1e-6);
  EXPECT_EQ(cfg.out_path, "r.json");
  EXPECT_EQ(cfg.get_int("gibbs.instances"), 20);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"seed", -1}}), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"kernel.pairs", true}}), ConfigError);
}

TEST(Config, RoundTripThroughJson) {
  RunConfig a;
  a.seed = 99;
  a.set("araki.instances", 3.0);
  const auto b = config_from_json(a.to_json());
  EXPECT_EQ(b.seed, 99u);
  EXPECT_EQ(b.params, a.params);
}

TEST(Config, LoadFile) {
  const std::string path = ::testing::TempDir() + "skms_cfg.json";
  {
    std::ofstream f(path);
    f << R"({"seed": 5, "svir.cutoff": 6})";
  }
  EXPECT_EQ(load_config(path).get_int("svir.cutoff"), 6);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  EXPECT_THROW(load_config(path), ConfigError);
  std::remove(path.c_str());
  EXPECT_THROW(load_config(path), ConfigError);
}

TEST(Config, LoosenedQuadratureWidensCaseTolerances) {
  RunConfig cfg;
  EXPECT_EQ(cfg.quad_tolerance("kernel.normalization_tol"), 1e-8);
  cfg.apply_override("rel_tol=1e-3");
  EXPECT_EQ(cfg.quad_tolerance("kernel.normalization_tol"), 1e-2);
}

TEST(Suites, UnknownNameRejected) { EXPECT_THROW(run_suite("nope", RunConfig{}), InvalidArgument); }

TEST(Suites, KernelWithLooseQuadratureStillPasses) {
  RunConfig cfg;
  cfg.apply_override("rel_tol=1e-3");
  const auto r = run_suite("kernel", cfg);
  EXPECT_EQ(r.failed(), 0);
  for (const auto& c : r.cases) {
    EXPECT_GT(c.tolerance, 0.0) << c.name;
    EXPECT_FALSE(c.provenance.empty()) << c.name;
  }
}

TEST(Suites, GibbsReportsDimensionCases) {
  RunConfig cfg;
  cfg.set("gibbs.instances", 3.0);
  const auto r = run_suite("gibbs", cfg);
  EXPECT_EQ(r.failed(), 0);
  int dims = 0;
  for (const auto& c : r.cases)
    if (c.name.find(".dimension") != std::string::npos) ++dims;
  EXPECT_EQ(dims, 4);  // three instances plus the ungraded case
  EXPECT_TRUE(std::is_sorted(r.cases.begin(), r.cases.end(),
                             [](const CaseRecord& a, const CaseRecord& b) { return a.name < b.name; }));
}

TEST(Suites, SameSeedSameValues) {
  RunConfig cfg;
  cfg.set("araki.instances", 4.0);
  const auto a = run_suite("araki", cfg).to_json(false), b = run_suite("araki", cfg).to_json(false);
  EXPECT_EQ(a, b);
  cfg.seed = 43;
  EXPECT_NE(run_suite("araki", cfg).to_json(false), a);
}
