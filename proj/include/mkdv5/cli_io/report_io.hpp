#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"
#include "../experiments/common.hpp"
#include "../experiments/report.hpp"

namespace mkdv5 {

inline constexpr int report_schema_version = 1;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline double number_from(const nlohmann::ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  using nlohmann::ordered_json;
  using detail::number_or_null;
  ordered_json j;
  j["schema_version"] = report_schema_version;
  j["experiment"] = r.experiment;
  j["status"] = to_string(r.status);
  j["seed"] = r.seed;
  j["config"] = r.config;
  ordered_json recs = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json vals = ordered_json::array();
    for (const auto& q : rec.values) vals.push_back({{"name", q.name}, {"value", number_or_null(q.value)}, {"unit", q.unit}});
    recs.push_back({{"label", rec.label}, {"grid", rec.grid}, {"values", vals}});
  }
  j["records"] = recs;
  ordered_json fits = ordered_json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"name", f.name},
                    {"x", f.x},
                    {"y", f.y},
                    {"points", f.points},
                    {"slope", number_or_null(f.slope)},
                    {"intercept", number_or_null(f.intercept)},
                    {"ci_low", number_or_null(f.ci_low)},
                    {"ci_high", number_or_null(f.ci_high)},
                    {"residual", number_or_null(f.residual)}});
  j["fits"] = fits;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"value", number_or_null(c.value)},
                      {"relation", c.relation},
                      {"threshold", number_or_null(c.threshold)},
                      {"target", number_or_null(c.target)},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  j["checks"] = checks;
  ordered_json plots = ordered_json::array();
  for (const auto& p : r.plots) {
    ordered_json x = ordered_json::array(), y = ordered_json::array(), fit = ordered_json::array();
    for (double v : p.x) x.push_back(number_or_null(v));
    for (double v : p.y) y.push_back(number_or_null(v));
    for (double v : p.fit) fit.push_back(number_or_null(v));
    plots.push_back({{"name", p.name}, {"x_label", p.x_label}, {"y_label", p.y_label}, {"x", x}, {"y", y}, {"fit", fit}});
  }
  j["plots"] = plots;
  j["warnings"] = r.warnings;
  ordered_json timings = ordered_json::object();
  for (const auto& [k, v] : r.timings) timings[k] = v;
  j["timings"] = timings;
  return j;
}

inline ReportStatus status_from_string(const std::string& s) {
  if (s == "pass") return ReportStatus::pass;
  if (s == "fail") return ReportStatus::fail;
  if (s == "inconclusive") return ReportStatus::inconclusive;
  if (s == "empty") return ReportStatus::empty;
  throw IoError("unknown report status '" + s + "'");
}

inline ExperimentReport report_from_json(const nlohmann::ordered_json& j) {
  using detail::number_from;
  if (j.at("schema_version").get<int>() != report_schema_version)
    throw IoError("unsupported report schema version " + j.at("schema_version").dump());
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = j.at("config");
  for (const auto& rec : j.at("records")) {
    RunRecord x;
    x.label = rec.at("label").get<std::string>();
    x.grid = rec.at("grid").get<std::string>();
    for (const auto& q : rec.at("values"))
      x.values.push_back({q.at("name").get<std::string>(), number_from(q.at("value")), q.at("unit").get<std::string>()});
    r.records.push_back(x);
  }
  for (const auto& f : j.at("fits")) {
    SlopeFit x;
    x.name = f.at("name").get<std::string>();
    x.x = f.at("x").get<std::string>();
    x.y = f.at("y").get<std::string>();
    x.points = f.at("points").get<std::size_t>();
    x.slope = number_from(f.at("slope"));
    x.intercept = number_from(f.at("intercept"));
    x.ci_low = number_from(f.at("ci_low"));
    x.ci_high = number_from(f.at("ci_high"));
    x.residual = number_from(f.at("residual"));
    r.fits.push_back(x);
  }
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), number_from(c.at("value")), c.at("relation").get<std::string>(),
                        number_from(c.at("threshold")), number_from(c.at("target")), c.at("pass").get<bool>(),
                        c.at("detail").get<std::string>()});
  for (const auto& p : j.at("plots")) {
    PlotSeries x;
    x.name = p.at("name").get<std::string>();
    x.x_label = p.at("x_label").get<std::string>();
    x.y_label = p.at("y_label").get<std::string>();
    for (const auto& v : p.at("x")) x.x.push_back(number_from(v));
    for (const auto& v : p.at("y")) x.y.push_back(number_from(v));
    for (const auto& v : p.at("fit")) x.fit.push_back(number_from(v));
    r.plots.push_back(x);
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("timings").items()) r.timings[k] = v.get<double>();
  return r;
}

// JSON text with every float written as %.17g.
inline void dump_json(std::ostream& os, const nlohmann::ordered_json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::ordered_json(k).dump() << ": ";
        dump_json(os, v, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ", ";
        first = false;
        dump_json(os, v, indent + 2);
      }
      os << "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      os << format_g17(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string csv_number(double v) { return std::isnan(v) ? "" : format_g17(v); }

// One row per record: label, grid, every quantity name in order of first appearance, then one column per
// fitted slope (repeated on every row).
inline std::string report_csv(const ExperimentReport& r) {
  std::vector<std::string> cols;
  for (const auto& rec : r.records)
    for (const auto& q : rec.values)
      if (std::find(cols.begin(), cols.end(), q.name) == cols.end()) cols.push_back(q.name);
  std::ostringstream os;
  os << "label,grid";
  for (const auto& c : cols) os << "," << csv_field(c);
  for (const auto& f : r.fits) os << "," << csv_field(f.name);
  os << "\n";
  for (const auto& rec : r.records) {
    os << csv_field(rec.label) << "," << csv_field(rec.grid);
    for (const auto& c : cols) {
      os << ",";
      if (const auto v = rec.get(c)) os << csv_number(*v);
    }
    for (const auto& f : r.fits) os << "," << csv_number(f.slope);
    os << "\n";
  }
  return os.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open " + p.string() + " for writing");
  f << text;
  if (!f) throw IoError("cannot write " + p.string());
}

struct WrittenFiles {
  std::filesystem::path json, csv;
  std::vector<std::filesystem::path> plots;
};

inline WrittenFiles write_report(const ExperimentReport& r, const std::filesystem::path& dir) {
  WrittenFiles out{dir / (r.experiment + ".json"), dir / (r.experiment + ".csv"), {}};
  std::ostringstream js;
  dump_json(js, report_to_json(r));
  js << "\n";
  write_text(out.json, js.str());
  write_text(out.csv, report_csv(r));
  return out;
}

inline ExperimentReport read_report(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw IoError("cannot open " + p.string());
  try {
    return report_from_json(nlohmann::ordered_json::parse(f));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed report " + p.string() + ": " + e.what());
  }
}

// One table per plot series: x, y and the fitted line (empty cells when nothing was fitted).
inline std::vector<std::filesystem::path> emit_plot_data(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : r.plots) {
    std::ostringstream os;
    os << csv_field(p.x_label) << "," << csv_field(p.y_label) << ",fit\n";
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      os << csv_number(p.x[i]) << "," << csv_number(p.y[i]) << ",";
      if (i < p.fit.size()) os << csv_number(p.fit[i]);
      os << "\n";
    }
    const auto path = dir / (r.experiment + "_" + p.name + ".csv");
    write_text(path, os.str());
    files.push_back(path);
  }
  return files;
}

// Report numerics without the timings, for reproducibility comparisons.
inline nlohmann::ordered_json report_numerics(const ExperimentReport& r) {
  auto j = report_to_json(r);
  j.erase("timings");
  return j;
}

}  // namespace mkdv5
