#include "mhv/errors.hpp"
#include "mhv/registry.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace mhv;

namespace {

std::map<std::string, std::string> verdicts(const Json& report) {
  std::map<std::string, std::string> out;
  for (const auto& r : report.at("results")) out[r.at("lemma").get<std::string>()] = r.at("verdict").get<std::string>();
  return out;
}

}  // namespace

TEST(Registry, IdsAndAliases) {
  EXPECT_EQ(canonical_registry_id("RF"), "3.1");
  EXPECT_EQ(canonical_registry_id("KM"), "3.2");
  EXPECT_EQ(canonical_registry_id("UU"), "UU");
  EXPECT_THROW(canonical_registry_id("nope"), InvalidArgument);
  EXPECT_EQ(registry_ids().front(), "jacobi");
  EXPECT_EQ(registry_degree_bound(Window(10, 5)), 4);
  EXPECT_EQ(registry_degree_bound(Window(5, 5)), 0);
}

TEST(Registry, DefaultWindowVerdicts) {
  const Json report = run_lemma_registry(Window(10, 5), 0);
  EXPECT_FALSE(registry_has_violation(report));
  const auto v = verdicts(report);
  EXPECT_EQ(v.size(), registry_ids().size());
  for (const char* id : {"jacobi", "2.1", "UU", "RR", "PP", "ZA"}) EXPECT_EQ(v.at(id), "verified") << id;
  for (const char* id : {"YY", "2.9", "2.10", "3.1", "3.2", "3.4", "3.6"}) EXPECT_EQ(v.at(id), "verified-at-window") << id;
  for (const char* id : {"QQ", "PO", "VB", "3.5"}) EXPECT_EQ(v.at(id), "discrepancy") << id;
}

TEST(Registry, ReportLayoutAndOrder) {
  const Json report = run_lemma_registry(Window(10, 5), 3, {"ZA", "UU", "RF"});
  std::vector<std::string> keys;
  for (const auto& [k, _] : report.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"window", "seed", "results"}));
  ASSERT_EQ(report.at("results").size(), 3u);
  std::vector<std::string> order;
  for (const auto& r : report.at("results")) {
    order.push_back(r.at("lemma").get<std::string>());
    for (const char* key : {"verdict", "computed", "paper_claim", "witnesses"}) EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_EQ(order, (std::vector<std::string>{"UU", "ZA", "3.1"}));
}

TEST(Registry, DeterministicAcrossRuns) {
  const Window w(8, 4);
  EXPECT_EQ(run_lemma_registry(w, 11).dump(), run_lemma_registry(w, 11).dump());
}

TEST(Registry, ViolationDetection) {
  Json report = Json::object();
  report["results"] = Json::array({Json{{"lemma", "x"}, {"verdict", "discrepancy"}}});
  EXPECT_FALSE(registry_has_violation(report));
  report["results"].push_back(Json{{"lemma", "y"}, {"verdict", "violation"}});
  EXPECT_TRUE(registry_has_violation(report));
}

TEST(Registry, D2EvidenceAttached) {
  const Json report = run_lemma_registry(Window(10, 5), 0, {"PO"});
  const Json& entry = report.at("results").at(0);
  EXPECT_TRUE(entry.at("computed").at("D2").at("in_inner").get<bool>());
  EXPECT_TRUE(entry.at("computed").at("D2_equals_ad_table").get<bool>());
  EXPECT_FALSE(entry.at("witnesses").empty());
}
