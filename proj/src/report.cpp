#include "srm/report.hpp"

#include <cfenv>
#include <cmath>
#include <cstdio>

#include "srm/errors.hpp"
#include "srm/uncertainty.hpp"

namespace srm {

double RunConfig::resolved_lambda() const { return lambda ? *lambda : EGSParams::lambda_midpoint(r, p); }

EGSParams RunConfig::egs_params() const { return EGSParams(r, p, resolved_lambda()); }

const char* to_string(ReportTable t) {
  switch (t) {
    case ReportTable::scenarios: return "scenarios";
    case ReportTable::uncertainty: return "uncertainty";
    case ReportTable::robust: return "robust";
  }
  return "?";
}

ReportTable parse_report_table(const std::string& text) {
  if (text == "scenarios") return ReportTable::scenarios;
  if (text == "uncertainty") return ReportTable::uncertainty;
  if (text == "robust") return ReportTable::robust;
  throw ValidationError("unknown report table '" + text + "' (expected scenarios|uncertainty|robust)");
}

namespace {

nlohmann::ordered_json echo_config(const RunConfig& c, ReportTable table) {
  nlohmann::ordered_json j;
  j["table"] = to_string(table);
  j["p"] = c.p;
  j["r"] = c.r;
  j["lambda"] = c.resolved_lambda();
  j["alpha"] = c.alpha;
  j["tau"] = c.tau;
  j["quantile_mode"] = to_string(c.quantile_mode);
  j["returns_convention"] = c.returns_convention ? to_string(*c.returns_convention) : "n/a";
  j["mu"] = c.mu_source;
  return j;
}

}  // namespace

Report run_report(const RiskProfile& profile, const RunConfig& config, ReportTable table) {
  config.egs_params();  // validates p, r, lambda
  Report rep{table, echo_config(config, table), {}, {}, {}};
  for (std::size_t i = 0; i < profile.size(); ++i) rep.scenarios.push_back({profile.labels()[i], profile.values()[i]});

  const auto uniform = ScenarioMeasure::uniform(profile.labels());
  switch (table) {
    case ReportTable::scenarios:
      break;
    case ReportTable::uncertainty: {
      using K = UncertaintyKind::Kind;
      const std::pair<const char*, K> kinds[] = {{"FR", K::FullRange}, {"LR", K::LowerRange}, {"UR", K::UpperRange},
                                                 {"Var", K::Variance}, {"SD", K::StdDev},     {"Gini", K::Gini}};
      for (const auto& [key, kind] : kinds)
        rep.summary.push_back({key, measure_uncertainty(profile, uniform, UncertaintyKind(kind))});
      break;
    }
    case ReportTable::robust: {
      const ConfidenceLevel alpha(config.alpha);
      rep.summary.push_back({"WC", compose(profile, uniform, composition::WorstCase{})});
      rep.summary.push_back({"A", compose(profile, uniform, composition::Expectation{})});
      if (config.mu) {
        rep.summary.push_back({"WA", compose(profile, uniform, composition::WeightedAverage{*config.mu})});
      } else {
        rep.notices.push_back("WA omitted: no scenario weights supplied (--mu)");
      }
      rep.summary.push_back({"VaR", compose(profile, uniform, composition::ValueAtRisk{alpha, config.quantile_mode})});
      const auto es_variant = config.quantile_mode == QuantileMode::linear ? composition::EsVariant::exceedance
                                                                           : composition::EsVariant::integral;
      rep.summary.push_back({"ES", compose(profile, uniform, composition::ExpectedShortfall{alpha, es_variant})});
      break;
    }
  }
  return rep;
}

Report run_report(const ScenarioDataset& dataset, const RunConfig& config, ReportTable table) {
  const auto phi = egs_spectrum(config.egs_params());
  return run_report(risk_profile(dataset, phi, config.threads), config, table);
}

std::string format_percent(double fraction) {
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  double hundredths = std::nearbyint(fraction * 100.0 * 100.0);
  std::fesetround(saved);
  if (hundredths == 0.0) hundredths = 0.0;  // no "-0.00%"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%%", hundredths / 100.0);
  return buf;
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json j;
  j["config"] = report.config;
  j["scenarios"] = nlohmann::ordered_json::object();
  for (const auto& e : report.scenarios) j["scenarios"][e.key] = e.value;
  j["summary"] = nlohmann::ordered_json::object();
  for (const auto& e : report.summary) j["summary"][e.key] = e.value;
  j["notices"] = report.notices;
  return j.dump(2) + "\n";
}

namespace {

std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string render_csv(const Report& report) {
  std::string out;
  if (report.table == ReportTable::scenarios) {
    out = "scenario,egs\n";
    for (const auto& e : report.scenarios) out += e.key + "," + full_precision(e.value) + "\n";
  } else {
    out = "measure,value\n";
    for (const auto& e : report.summary) out += e.key + "," + full_precision(e.value) + "\n";
  }
  return out;
}

std::string render_markdown(const Report& report) {
  std::string out;
  if (report.table == ReportTable::scenarios) {
    out = "| # | Scenario | EGS |\n|---|---|---|\n";
    for (std::size_t i = 0; i < report.scenarios.size(); ++i) {
      const auto& e = report.scenarios[i];
      out += "| " + std::to_string(i + 1) + " | " + e.key + " | " + format_percent(e.value) + " |\n";
    }
  } else {
    std::string head = "|", rule = "|", row = "|";
    for (const auto& e : report.summary) {
      head += " " + e.key + " |";
      rule += "---|";
      row += " " + format_percent(e.value) + " |";
    }
    out = head + "\n" + rule + "\n" + row + "\n";
  }
  for (const auto& n : report.notices) out += "\n> " + n + "\n";
  return out;
}

}  // namespace srm
