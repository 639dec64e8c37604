#include <catch_amalgamated.hpp>

#include <fstream>

#include "srm/report.hpp"

using namespace srm;
using Catch::Matchers::ContainsSubstring;

namespace {

RiskProfile published() {
  std::ifstream in(SRM_DATA_DIR "/table1_profile.csv");
  return parse_profile(in);
}

double summary(const Report& r, const std::string& key) {
  for (const auto& e : r.summary)
    if (e.key == key) return e.value;
  FAIL("missing summary key " << key);
  return 0.0;
}

}  // namespace

TEST_CASE("uncertainty table from the published profile") {
  const auto rep = run_report(published(), RunConfig{}, ReportTable::uncertainty);
  CHECK(std::abs(summary(rep, "FR") - 0.0687) <= 0.00005);
  CHECK(std::abs(summary(rep, "LR") - 0.0528) <= 0.00005);
  CHECK(std::abs(summary(rep, "UR") - 0.0159) <= 0.00005);
  CHECK(std::abs(summary(rep, "SD") - 0.0132) <= 0.00005);
  CHECK(std::abs(summary(rep, "Var") - 0.000174) <= 0.0000005);
  CHECK(std::abs(summary(rep, "Gini") - 0.0131) <= 0.0003);
  CHECK(format_percent(summary(rep, "Var")) == "0.02%");
}

TEST_CASE("robust table from the published profile") {
  const auto rep = run_report(published(), RunConfig{}, ReportTable::robust);
  CHECK(summary(rep, "WC") == 0.0787);
  CHECK(std::abs(summary(rep, "A") - 0.0259) <= 0.00005);
  CHECK(std::abs(summary(rep, "VaR") - 0.0533) <= 0.00005);
  CHECK(std::abs(summary(rep, "ES") - 0.0655) <= 0.00005);
  REQUIRE(rep.notices.size() == 1);
  CHECK_THAT(rep.notices[0], ContainsSubstring("WA"));
  CHECK(render_markdown(rep).find("| 7.87% | 2.59% | 5.33% | 6.55% |") != std::string::npos);
}

TEST_CASE("weighted average needs scenario weights") {
  const auto p = published();
  RunConfig cfg;
  std::vector<double> w(p.size(), 0.0);
  w.back() = 1.0;
  cfg.mu = ScenarioMeasure(p.labels(), w);
  const auto rep = run_report(p, cfg, ReportTable::robust);
  CHECK(summary(rep, "WA") == p.values().back());
  CHECK(rep.notices.empty());
}

TEST_CASE("single scenario has zero uncertainty") {
  const auto rep = run_report(RiskProfile({"2007-a"}, {0.03}), RunConfig{}, ReportTable::uncertainty);
  for (const auto& e : rep.summary) CHECK(e.value == 0.0);
}

TEST_CASE("percent formatting") {
  CHECK(format_percent(0.0787) == "7.87%");
  CHECK(format_percent(0.000174) == "0.02%");
  CHECK(format_percent(-0.0000001) == "0.00%");
  CHECK(format_percent(0.5) == "50.00%");
}

TEST_CASE("json layout") {
  RunConfig cfg;
  const auto rep = run_report(published(), cfg, ReportTable::robust);
  const auto text = render_json(rep);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> top;
  for (const auto& [k, v] : j.items()) top.push_back(k);
  CHECK(top == std::vector<std::string>{"config", "scenarios", "summary", "notices"});
  CHECK(j["config"]["lambda"].get<double>() == 0.5 * EGSParams::lambda_upper_bound(2, 0.95));
  CHECK(j["scenarios"].size() == 49);
  CHECK(j["scenarios"].begin().key() == "2007-a");
  CHECK(j["summary"]["WC"].get<double>() == 0.0787);
  CHECK(render_json(rep) == text);
}

TEST_CASE("scenario report from prices is thread independent") {
  std::ifstream in(SRM_DATA_DIR "/synthetic_prices.csv");
  const auto ds = slice_quarters(compute_returns(parse_prices(in), ReturnConvention::simple));
  RunConfig one;
  RunConfig many;
  many.threads = 8;
  const auto a = render_csv(run_report(ds, one, ReportTable::scenarios));
  CHECK(a == render_csv(run_report(ds, many, ReportTable::scenarios)));
  CHECK(a.rfind("scenario,egs\n2007-a,", 0) == 0);
}
