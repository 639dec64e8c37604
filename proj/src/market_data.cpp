#include "srm/market_data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "srm/errors.hpp"

namespace srm {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& text, std::size_t line, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
    fail_at(line, std::string("malformed ") + what + " '" + text + "'");
  return v;
}

// Reads a two-column CSV, checks the header and hands each data row to `row`.
template <class RowFn>
void read_two_columns(std::istream& in, const char* first, const char* second, RowFn row) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() != 2 || fields[0] != first) {
        fail_at(line_no, std::string("expected header '") + first + "," + second + "'");
      }
      if (fields[1] != second) fail_at(line_no, std::string("expected ") + second + " column, found '" + fields[1] + "'");
      have_header = true;
      continue;
    }
    if (fields.size() != 2) fail_at(line_no, "expected 2 fields, found " + std::to_string(fields.size()));
    row(line_no, fields[0], fields[1]);
  }
  if (in.bad()) throw IoError("read error");
  if (!have_header) throw ValidationError(std::string("missing header '") + first + "," + second + "'");
}

}  // namespace

QuarterLabel QuarterLabel::of(const Date& date) {
  const unsigned m = static_cast<unsigned>(date.month());
  return {static_cast<int>(date.year()), static_cast<char>('a' + (m - 1) / 3)};
}

std::string QuarterLabel::to_string() const { return std::to_string(year) + "-" + quarter; }

Date parse_date(const std::string& text) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3)
    throw ValidationError("malformed ISO-8601 date '" + text + "'");
  const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) throw ValidationError("invalid calendar date '" + text + "'");
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

const char* to_string(ReturnConvention c) { return c == ReturnConvention::simple ? "simple" : "log"; }

ReturnConvention parse_return_convention(const std::string& text) {
  if (text == "simple") return ReturnConvention::simple;
  if (text == "log") return ReturnConvention::log;
  throw ValidationError("unknown returns convention '" + text + "' (expected simple|log)");
}

PriceSeries parse_prices(std::istream& in) {
  PriceSeries out;
  read_two_columns(in, "date", "close", [&](std::size_t line, const std::string& d, const std::string& c) {
    Date date;
    try {
      date = parse_date(d);
    } catch (const ValidationError& e) {
      fail_at(line, e.what());
    }
    const double close = parse_number(c, line, "close");
    if (!(close > 0.0)) fail_at(line, "close must be positive");
    if (!out.rows.empty() && !(date > out.rows.back().date))
      fail_at(line, "date " + d + " is not after the previous row");
    out.rows.push_back({date, close});
  });
  return out;
}

ReturnSeries parse_returns(std::istream& in) {
  ReturnSeries out;
  read_two_columns(in, "date", "return", [&](std::size_t line, const std::string& d, const std::string& r) {
    Date date;
    try {
      date = parse_date(d);
    } catch (const ValidationError& e) {
      fail_at(line, e.what());
    }
    const double value = parse_number(r, line, "return");
    if (!out.rows.empty() && !(date > out.rows.back().date))
      fail_at(line, "date " + d + " is not after the previous row");
    out.rows.push_back({date, value});
  });
  return out;
}

RiskProfile parse_profile(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<double> values;
  read_two_columns(in, "scenario", "value", [&](std::size_t line, const std::string& s, const std::string& v) {
    if (s.empty()) fail_at(line, "empty scenario label");
    labels.push_back(s);
    values.push_back(parse_number(v, line, "value"));
  });
  if (labels.empty()) throw ValidationError("profile file has no rows");
  return RiskProfile(std::move(labels), std::move(values));
}

ScenarioMeasure parse_scenario_weights(std::istream& in) {
  std::vector<std::string> labels;
  std::vector<double> weights;
  read_two_columns(in, "scenario", "weight", [&](std::size_t line, const std::string& s, const std::string& w) {
    if (s.empty()) fail_at(line, "empty scenario label");
    labels.push_back(s);
    weights.push_back(parse_number(w, line, "weight"));
  });
  if (labels.empty()) throw ValidationError("weights file has no rows");
  return ScenarioMeasure(std::move(labels), std::move(weights));
}

ReturnSeries compute_returns(const PriceSeries& prices, ReturnConvention convention) {
  if (prices.rows.size() < 2) throw ValidationError("need two prices to compute a return");
  ReturnSeries out;
  out.convention = convention;
  out.rows.reserve(prices.rows.size() - 1);
  for (std::size_t i = 1; i < prices.rows.size(); ++i) {
    const double prev = prices.rows[i - 1].close;
    const double cur = prices.rows[i].close;
    if (!(prev > 0.0) || !(cur > 0.0))
      throw ValidationError("non-positive price on " + format_date(prices.rows[prev > 0.0 ? i : i - 1].date));
    const double r = convention == ReturnConvention::simple ? cur / prev - 1.0 : std::log(cur / prev);
    out.rows.push_back({prices.rows[i].date, r});
  }
  return out;
}

ScenarioDataset slice_quarters(const ReturnSeries& returns) {
  if (returns.rows.empty()) throw ValidationError("no returns to slice");
  std::map<QuarterLabel, std::vector<double>> groups;
  for (const auto& row : returns.rows) groups[QuarterLabel::of(row.date)].push_back(row.value);
  std::vector<Scenario> scenarios;
  scenarios.reserve(groups.size());
  for (auto& [label, values] : groups) {
    if (values.size() < 2)
      throw ValidationError("quarter " + label.to_string() + " has " + std::to_string(values.size()) +
                            " observation(s); at least 2 required");
    scenarios.push_back({label.to_string(), EmpiricalDistribution::equally_weighted(values)});
  }
  return ScenarioDataset(std::move(scenarios));
}

std::string to_csv(const ReturnSeries& returns) {
  std::string out = "date,return\n";
  char buf[64];
  for (const auto& r : returns.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    out += format_date(r.date);
    out += ',';
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace srm
