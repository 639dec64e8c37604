#pragma once

#include <chrono>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "srm/scenario.hpp"

namespace srm {

using Date = std::chrono::year_month_day;

struct PricePoint {
  Date date;
  double close;
};

// Daily closes, dates strictly increasing, closes > 0.
struct PriceSeries {
  std::vector<PricePoint> rows;
};

enum class ReturnConvention { simple, log };

struct ReturnPoint {
  Date date;
  double value;
};

struct ReturnSeries {
  std::vector<ReturnPoint> rows;
  // nullopt when read from a `date,return` file of unknown provenance.
  std::optional<ReturnConvention> convention;
};

// Calendar quarter: a = Jan-Mar, b = Apr-Jun, c = Jul-Sep, d = Oct-Dec.
struct QuarterLabel {
  int year;
  char quarter;

  static QuarterLabel of(const Date& date);
  std::string to_string() const;  // e.g. "2008-d"
  auto operator<=>(const QuarterLabel&) const = default;
};

Date parse_date(const std::string& text);
std::string format_date(const Date& date);

const char* to_string(ReturnConvention c);
ReturnConvention parse_return_convention(const std::string& text);

// CSV with header `date,close`. Errors carry the 1-based line number.
PriceSeries parse_prices(std::istream& in);
// CSV with header `date,return`.
ReturnSeries parse_returns(std::istream& in);
// CSV with header `scenario,value`: a precomputed risk profile.
RiskProfile parse_profile(std::istream& in);
// CSV with header `scenario,weight`.
ScenarioMeasure parse_scenario_weights(std::istream& in);

// Returns are dated by the later of the two days.
ReturnSeries compute_returns(const PriceSeries& prices, ReturnConvention convention);

// Groups returns by calendar quarter, in chronological order; each quarter
// becomes an equally weighted distribution. Quarters with fewer than two
// observations are rejected.
ScenarioDataset slice_quarters(const ReturnSeries& returns);

std::string to_csv(const ReturnSeries& returns);

}  // namespace srm
