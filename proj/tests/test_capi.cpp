#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "skms/skms.h"

namespace {

constexpr double kTheta01 = 1.4717467699528693722;  // tests/oracles/kernel_oracles.py

skms_config* cheap_config() {
  skms_config* cfg = nullptr;
  EXPECT_EQ(skms_config_new(&cfg), SKMS_OK);
  EXPECT_EQ(skms_config_override(cfg, "gibbs.instances=2"), SKMS_OK);
  EXPECT_EQ(skms_config_set(cfg, "gibbs.max_n", "5"), SKMS_OK);
  return cfg;
}

}  // namespace

TEST(CApi, VersionAndSuites) {
  EXPECT_NE(std::string(skms_version()), "");
  ASSERT_EQ(skms_suite_count(), 6u);
  EXPECT_STREQ(skms_suite_name(0), "kernel");
  EXPECT_EQ(skms_suite_name(6), nullptr);
}

TEST(CApi, ConfigErrors) {
  skms_config* cfg = nullptr;
  ASSERT_EQ(skms_config_new(&cfg), SKMS_OK);
  EXPECT_EQ(skms_config_set(cfg, "kernel.pairs", "0"), SKMS_ERR_CONFIG);
  EXPECT_NE(std::string(skms_last_error()).find("> 0"), std::string::npos);
  EXPECT_EQ(skms_config_override(cfg, "bogus=1"), SKMS_ERR_CONFIG);
  EXPECT_EQ(skms_config_set(nullptr, "kernel.pairs", "1"), SKMS_ERR_INVALID_ARGUMENT);
  skms_config_free(cfg);
  EXPECT_EQ(skms_config_load("/nonexistent/skms.json", &cfg), SKMS_ERR_CONFIG);
}

TEST(CApi, ConfigJson) {
  skms_config* cfg = cheap_config();
  ASSERT_EQ(skms_config_set_seed(cfg, 7), SKMS_OK);
  char* text = nullptr;
  ASSERT_EQ(skms_config_json(cfg, &text), SKMS_OK);
  const std::string s(text);
  skms_string_free(text);
  EXPECT_NE(s.find("\"seed\": 7"), std::string::npos);
  EXPECT_NE(s.find("\"gibbs.max_n\": 5"), std::string::npos);
  skms_config_free(cfg);
}

TEST(CApi, RunGibbs) {
  skms_config* cfg = cheap_config();
  skms_report* rep = nullptr;
  ASSERT_EQ(skms_run("gibbs", cfg, &rep), SKMS_OK);
  EXPECT_EQ(skms_report_failed(rep), 0);
  const size_t n = skms_report_case_count(rep);
  ASSERT_GT(n, 0u);
  skms_case c;
  ASSERT_EQ(skms_report_case(rep, 0, &c), SKMS_OK);
  EXPECT_EQ(std::string(c.name).rfind("gibbs.", 0), 0u);
  EXPECT_NE(std::string(c.provenance), "");
  EXPECT_EQ(skms_report_case(rep, n, &c), SKMS_ERR_INVALID_ARGUMENT);

  char* json = nullptr;
  ASSERT_EQ(skms_report_json(rep, 0, &json), SKMS_OK);
  const std::string s(json);
  skms_string_free(json);
  EXPECT_NE(s.find("\"schema\": 1"), std::string::npos);
  EXPECT_EQ(s.find("wall_time_s"), std::string::npos);

  char* csv = nullptr;
  ASSERT_EQ(skms_report_csv(rep, &csv), SKMS_OK);
  EXPECT_EQ(std::string(csv).rfind("pair,", 0), 0u);
  skms_string_free(csv);
  skms_report_free(rep);
  skms_config_free(cfg);
}

TEST(CApi, UnknownSuite) {
  skms_config* cfg = cheap_config();
  skms_report* rep = nullptr;
  EXPECT_EQ(skms_run("nope", cfg, &rep), SKMS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(rep, nullptr);
  skms_config_free(cfg);
}

TEST(CApi, ThetaOracle) {
  const char* h0 = R"({"components": 1, "terms": [{"n": 0, "sigma": 1, "shift": 0, "re": 1, "im": 0}]})";
  const char* h1 = R"({"components": 1, "terms": [{"n": 1, "sigma": 1, "shift": 0, "re": 1, "im": 0}]})";
  double v[2] = {0, 0}, err = -1;
  ASSERT_EQ(skms_theta(h0, h1, v, &err), SKMS_OK) << skms_last_error();
  EXPECT_NEAR(v[0], 0.0, 1e-12);
  EXPECT_NEAR(v[1], kTheta01, 1e-11);
  EXPECT_GE(err, 0.0);
  ASSERT_EQ(skms_bosonic_2pt(h0, h0, v, nullptr), SKMS_OK);
  EXPECT_NEAR(v[0], 1.0406821212230717, 1e-11);
  EXPECT_EQ(skms_theta("{", h1, v, nullptr), SKMS_ERR_INVALID_ARGUMENT);
}
