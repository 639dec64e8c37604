// srm: command-line front end for the scenario risk library.
//
//   srm ingest --prices FILE [--returns-convention simple|log] [--out FILE]
//   srm report --table scenarios|uncertainty|robust (--prices|--returns|--profile FILE) ...
//   srm check-axioms --seed N --trials N [--spectrum FILE]
//   srm risk --measure var|es|el|wc|entropic|egs (--values LIST|--returns FILE) ...
//
// Exit status: 0 ok, 1 invalid input, 2 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srm/axioms.hpp"
#include "srm/errors.hpp"
#include "srm/market_data.hpp"
#include "srm/report.hpp"
#include "srm/risk_measures.hpp"

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw srm::IoError("cannot open '" + path + "'");
  return in;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw srm::IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw srm::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw srm::IoError("failed writing '" + path + "'");
}

template <class F>
auto with_file_context(const std::string& path, F&& f) {
  auto in = open_input(path);
  try {
    return f(in);
  } catch (const srm::ValidationError& e) {
    throw srm::ValidationError(path + ": " + e.what());
  }
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw srm::ValidationError("not a number in --values: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw srm::ValidationError("--values is empty");
  return out;
}

srm::TabulatedSpectrumInput parse_spectrum(std::istream& in) {
  srm::TabulatedSpectrumInput s;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "level,density") throw srm::ValidationError("line 1: expected header 'level,density'");
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      std::size_t a = 0, b = 0;
      const double level = std::stod(line.substr(0, comma), &a);
      const double density = std::stod(line.substr(comma + 1), &b);
      if (a != comma || b != line.size() - comma - 1) throw std::invalid_argument("trailing text");
      s.levels.push_back(level);
      s.density.push_back(density);
    } catch (const std::exception&) {
      throw srm::ValidationError("line " + std::to_string(lineno) + ": malformed row '" + line + "'");
    }
  }
  if (lineno == 0) throw srm::ValidationError("empty spectrum file");
  return s;
}

std::string full_precision(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g\n", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario-based spectral risk and uncertainty reports"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Convert a date,close price file into date,return");
  std::string ingest_prices, ingest_out, ingest_conv = "simple";
  ingest->add_option("--prices", ingest_prices, "CSV with header date,close")->required();
  ingest->add_option("--returns-convention", ingest_conv, "simple or log")->capture_default_str();
  ingest->add_option("--out", ingest_out, "Output file (default stdout)");

  // report
  auto* report = app.add_subcommand("report", "Per-scenario, uncertainty or robust risk report");
  std::string table_name, output = "json", prices_path, returns_path, profile_path, mu_path, conv_name, mode_name = "linear";
  srm::RunConfig cfg;
  double lambda = 0.0;
  std::string report_out;
  report->add_option("--table", table_name, "scenarios, uncertainty or robust")->required();
  auto* in_group = report->add_option_group("input");
  in_group->add_option("--prices", prices_path, "CSV with header date,close");
  in_group->add_option("--returns", returns_path, "CSV with header date,return");
  in_group->add_option("--profile", profile_path, "CSV with header scenario,value");
  in_group->require_option(1);
  report->add_option("--returns-convention", conv_name, "simple or log (with --prices; default simple)");
  report->add_option("--p", cfg.p, "EGS tail level")->capture_default_str();
  report->add_option("--r", cfg.r, "EGS Gini exponent")->capture_default_str();
  auto* lambda_opt = report->add_option("--lambda", lambda, "EGS loading (default: midpoint of admissible range)");
  report->add_option("--alpha", cfg.alpha, "confidence level for VaR and ES")->capture_default_str();
  report->add_option("--tau", cfg.tau, "entropic risk aversion")->capture_default_str();
  report->add_option("--mu", mu_path, "CSV with header scenario,weight");
  report->add_option("--quantile-mode", mode_name, "lower or linear")->capture_default_str();
  report->add_option("--output", output, "json, csv or md")->capture_default_str();
  report->add_option("--threads", cfg.threads, "worker threads for per-scenario risk")->capture_default_str();
  report->add_option("--out", report_out, "Output file (default stdout)");

  // check-axioms
  auto* axioms = app.add_subcommand("check-axioms", "Randomized property checks of the risk axioms");
  std::uint64_t seed = 42;
  std::size_t trials = 1000;
  std::string spectrum_path;
  axioms->add_option("--seed", seed)->capture_default_str();
  axioms->add_option("--trials", trials)->capture_default_str();
  axioms->add_option("--spectrum", spectrum_path, "CSV with header level,density: an extra spectrum to check");

  // risk
  auto* risk = app.add_subcommand("risk", "Risk of a single empirical distribution");
  std::string measure, values_text, risk_returns, risk_mode = "lower";
  double r_alpha = 0.95, r_tau = 1.0, r_p = 0.95, r_r = 2.0, r_lambda = 0.0;
  risk->add_option("--measure", measure, "var, es, el, wc, entropic or egs")->required();
  auto* rin = risk->add_option_group("input");
  rin->add_option("--values", values_text, "comma-separated outcomes");
  rin->add_option("--returns", risk_returns, "CSV with header date,return");
  rin->require_option(1);
  risk->add_option("--alpha", r_alpha)->capture_default_str();
  risk->add_option("--tau", r_tau)->capture_default_str();
  risk->add_option("--p", r_p)->capture_default_str();
  risk->add_option("--r", r_r)->capture_default_str();
  auto* r_lambda_opt = risk->add_option("--lambda", r_lambda);
  risk->add_option("--quantile-mode", risk_mode, "lower or linear (VaR only)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) {
      const auto conv = srm::parse_return_convention(ingest_conv);
      const auto prices = with_file_context(ingest_prices, [](std::istream& in) { return srm::parse_prices(in); });
      write_output(srm::to_csv(srm::compute_returns(prices, conv)), ingest_out);
    } else if (*report) {
      const auto table = srm::parse_report_table(table_name);
      if (*lambda_opt) cfg.lambda = lambda;
      cfg.quantile_mode = srm::parse_quantile_mode(mode_name);
      if (!conv_name.empty() && prices_path.empty())
        throw srm::ValidationError("--returns-convention only applies to --prices");
      if (!mu_path.empty()) {
        cfg.mu = with_file_context(mu_path, [](std::istream& in) { return srm::parse_scenario_weights(in); });
        cfg.mu_source = mu_path;
      }
      if (output != "json" && output != "csv" && output != "md")
        throw srm::ValidationError("--output must be json, csv or md, got '" + output + "'");

      srm::Report rep;
      if (!profile_path.empty()) {
        const auto profile = with_file_context(profile_path, [](std::istream& in) { return srm::parse_profile(in); });
        rep = srm::run_report(profile, cfg, table);
      } else {
        srm::ReturnSeries returns;
        if (!prices_path.empty()) {
          cfg.returns_convention = srm::parse_return_convention(conv_name.empty() ? "simple" : conv_name);
          const auto prices = with_file_context(prices_path, [](std::istream& in) { return srm::parse_prices(in); });
          returns = srm::compute_returns(prices, *cfg.returns_convention);
        } else {
          returns = with_file_context(returns_path, [](std::istream& in) { return srm::parse_returns(in); });
        }
        rep = srm::run_report(srm::slice_quarters(returns), cfg, table);
      }
      const std::string text = output == "json"  ? srm::render_json(rep)
                               : output == "csv" ? srm::render_csv(rep)
                                                 : srm::render_markdown(rep);
      write_output(text, report_out);
    } else if (*axioms) {
      std::optional<srm::TabulatedSpectrumInput> extra;
      if (!spectrum_path.empty()) extra = with_file_context(spectrum_path, parse_spectrum);
      const auto rep = srm::check_axioms(seed, trials, extra);
      write_output(rep.render(), "");
      return rep.all_passed() ? 0 : 1;
    } else if (*risk) {
      std::vector<double> xs;
      if (!values_text.empty()) {
        xs = parse_value_list(values_text);
      } else {
        const auto series = with_file_context(risk_returns, [](std::istream& in) { return srm::parse_returns(in); });
        for (const auto& row : series.rows) xs.push_back(row.value);
      }
      const auto dist = srm::EmpiricalDistribution::equally_weighted(xs);
      double v = 0.0;
      if (measure == "var") {
        v = srm::value_at_risk(dist, srm::ConfidenceLevel(r_alpha), srm::parse_quantile_mode(risk_mode));
      } else if (measure == "es") {
        v = srm::expected_shortfall(dist, srm::ConfidenceLevel(r_alpha));
      } else if (measure == "el") {
        v = srm::expected_loss(dist);
      } else if (measure == "wc") {
        v = srm::worst_case(dist);
      } else if (measure == "entropic") {
        v = srm::entropic_risk(dist, srm::EntropicAversion(r_tau));
      } else if (measure == "egs") {
        const double lam = *r_lambda_opt ? r_lambda : srm::EGSParams::lambda_midpoint(r_r, r_p);
        v = srm::spectral_risk(dist, srm::egs_spectrum(srm::EGSParams(r_r, r_p, lam)));
      } else {
        throw srm::ValidationError("unknown measure '" + measure + "' (var, es, el, wc, entropic, egs)");
      }
      write_output(full_precision(v), "");
    }
  } catch (const srm::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const srm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
