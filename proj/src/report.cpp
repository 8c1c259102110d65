#include <cmath>
#include <cstdio>
#include <sstream>

#include "qconv/experiments.hpp"

namespace qconv {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

void ExperimentReport::add_check(std::size_t index, std::string metric, double value, double bound,
                                 double violation, double slack) {
  ReportRecord r;
  r.index = index;
  r.metric = std::move(metric);
  r.value = value;
  r.bound = bound;
  r.violation = violation;
  // NaN violations fail.
  r.pass = violation <= slack;
  append({r});
}

void ExperimentReport::add_upper(std::size_t index, std::string metric, double value, double bound, double slack) {
  add_check(index, std::move(metric), value, bound, value - bound, slack);
}

void ExperimentReport::add_lower(std::size_t index, std::string metric, double value, double bound, double slack) {
  add_check(index, std::move(metric), value, bound, bound - value, slack);
}

void ExperimentReport::add_info(std::size_t index, std::string metric, double value, double bound) {
  ReportRecord r;
  r.index = index;
  r.metric = std::move(metric);
  r.value = value;
  r.bound = bound;
  r.violation = 0.0;
  r.informational = true;
  append({r});
}

void ExperimentReport::append(const std::vector<ReportRecord>& more) {
  for (const auto& r : more) {
    if (!r.informational) {
      if (std::isnan(r.violation) || r.violation > max_violation) max_violation = r.violation;
      if (!r.pass) {
        pass = false;
        ++violations;
      }
    }
    records.push_back(r);
  }
}

nlohmann::json ExperimentReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["parameters"] = parameters;
  j["pass"] = pass;
  j["violations"] = violations;
  j["max_violation"] = json_number(max_violation);
  auto& rows = j["records"] = nlohmann::json::array();
  for (const auto& r : records) {
    rows.push_back({{"index", r.index},
                    {"metric", r.metric},
                    {"value", json_number(r.value)},
                    {"bound", json_number(r.bound)},
                    {"violation", json_number(r.violation)},
                    {"pass", r.pass},
                    {"informational", r.informational}});
  }
  if (include_timing) j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "suite,seed,index,metric,value,bound,pass\n";
  for (const auto& r : records) {
    out << suite << ',' << seed << ',' << r.index << ',' << r.metric << ',' << format_double(r.value) << ','
        << format_double(r.bound) << ',' << (r.informational ? "info" : (r.pass ? "true" : "false")) << '\n';
  }
  return out.str();
}

}  // namespace qconv
