#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srm/empirical.hpp"
#include "srm/market_data.hpp"
#include "srm/risk_measures.hpp"
#include "srm/scenario.hpp"

namespace srm {

struct RunConfig {
  double p = 0.95;
  double r = 2.0;
  std::optional<double> lambda;  // defaults to the midpoint of the admissible interval
  double alpha = 0.95;
  double tau = 1.0;
  std::optional<ScenarioMeasure> mu;  // weights for WA; equiprobable elsewhere
  std::string mu_source = "equiprobable";
  std::optional<ReturnConvention> returns_convention;
  QuantileMode quantile_mode = QuantileMode::linear;
  unsigned threads = 1;

  double resolved_lambda() const;
  EGSParams egs_params() const;
};

enum class ReportTable { scenarios, uncertainty, robust };

const char* to_string(ReportTable t);
ReportTable parse_report_table(const std::string& text);

struct ReportEntry {
  std::string key;
  double value;
};

struct Report {
  ReportTable table;
  nlohmann::ordered_json config;
  std::vector<ReportEntry> scenarios;  // chronological
  std::vector<ReportEntry> summary;
  std::vector<std::string> notices;
};

// scenarios:   per-scenario EGS values.
// uncertainty: FR, LR, UR, Var, SD, Gini over the profile (equiprobable).
// robust:      WC, A, WA (only with mu), VaR(alpha), ES(alpha).
Report run_report(const RiskProfile& profile, const RunConfig& config, ReportTable table);
Report run_report(const ScenarioDataset& dataset, const RunConfig& config, ReportTable table);

// Percent with two decimals, ties rounded to even: 0.0787 -> "7.87%".
std::string format_percent(double fraction);

std::string render_json(const Report& report);
std::string render_csv(const Report& report);
std::string render_markdown(const Report& report);

}  // namespace srm
