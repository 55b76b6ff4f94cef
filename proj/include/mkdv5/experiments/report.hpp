#pragma once

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mkdv5 {

struct Quantity {
  std::string name;
  double value = 0.0;
  std::string unit;
};

// One run: its parameters and measurements, with the grid they were measured on.
struct RunRecord {
  std::string label;
  std::string grid;
  std::vector<Quantity> values;

  void add(std::string name, double v, std::string unit = "") { values.push_back({std::move(name), v, std::move(unit)}); }
  std::optional<double> get(const std::string& name) const {
    for (const auto& q : values)
      if (q.name == name) return q.value;
    return std::nullopt;
  }
};

struct SlopeFit {
  std::string name;
  std::string x, y;
  std::size_t points = 0;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double ci_low = std::numeric_limits<double>::quiet_NaN();
  double ci_high = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();  // rms of the log2 residuals
};

// A pass/fail comparison: value <= threshold, value >= threshold, or |value - target| <= threshold.
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;
  double threshold = 0.0;
  double target = 0.0;
  bool pass = false;
  std::string detail;
};

inline Check check_at_most(std::string name, double v, double limit, std::string detail = "") {
  return {std::move(name), v, "<=", limit, 0.0, v <= limit, std::move(detail)};
}
inline Check check_at_least(std::string name, double v, double limit, std::string detail = "") {
  return {std::move(name), v, ">=", limit, 0.0, v >= limit, std::move(detail)};
}
inline Check check_within(std::string name, double v, double target, double tol, std::string detail = "") {
  return {std::move(name), v, "within", tol, target, std::abs(v - target) <= tol, std::move(detail)};
}

// Columns for one plot: x, y and the fitted line (empty when fewer than three points).
struct PlotSeries {
  std::string name;
  std::string x_label, y_label;
  std::vector<double> x, y, fit;
};

enum class ReportStatus { pass, fail, inconclusive, empty };

inline const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::pass: return "pass";
    case ReportStatus::fail: return "fail";
    case ReportStatus::inconclusive: return "inconclusive";
    default: return "empty";
  }
}

struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  std::vector<RunRecord> records;
  std::vector<SlopeFit> fits;
  std::vector<Check> checks;
  std::vector<PlotSeries> plots;
  std::vector<std::string> warnings;
  std::map<std::string, double> timings;  // seconds; excluded from reproducibility comparisons
  ReportStatus status = ReportStatus::empty;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void finalize() {
    if (status == ReportStatus::inconclusive) return;
    if (checks.empty() && records.empty())
      status = ReportStatus::empty;
    else
      status = all_pass() ? ReportStatus::pass : ReportStatus::fail;
  }
};

inline constexpr std::size_t min_fit_points = 3;

// Least squares on log2 y against log2 x with a 95% Student-t interval on the slope.
inline SlopeFit fit_log2_slope(const std::vector<double>& x, const std::vector<double>& y, std::string name = "",
                               std::string xl = "", std::string yl = "") {
  SlopeFit f;
  f.name = std::move(name);
  f.x = std::move(xl);
  f.y = std::move(yl);
  f.points = x.size();
  if (x.size() < min_fit_points || x.size() != y.size()) return f;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log2(x[i]);
    my += std::log2(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log2(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(y[i]) - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log2(y[i]) - (f.intercept + f.slope * std::log2(x[i]));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  const double dof = n - 2.0;
  const double se = std::sqrt(ss / dof / sxx);
  const double q = boost::math::quantile(boost::math::complement(boost::math::students_t(dof), 0.025));
  f.ci_low = f.slope - q * se;
  f.ci_high = f.slope + q * se;
  return f;
}

inline PlotSeries plot_series(std::string name, std::string xl, std::string yl, const std::vector<double>& x,
                              const std::vector<double>& y, const SlopeFit& fit) {
  PlotSeries p{std::move(name), std::move(xl), std::move(yl), x, y, {}};
  if (!std::isnan(fit.slope))
    for (double v : x) p.fit.push_back(std::exp2(fit.intercept + fit.slope * std::log2(v)));
  return p;
}

}  // namespace mkdv5
