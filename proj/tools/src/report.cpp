// Copyright 2026 The mabkcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mabkcert_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mabkcert::cli {

namespace {

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::kWithin: return "within";
    case Comparison::kAtMost: return "at_most";
    case Comparison::kIsTrue: return "is_true";
  }
  return "within";
}

Json verdict_json(const Verdict& v) {
  return Json{{"claim", v.claim},
              {"target", v.target},
              {"observed", v.observed},
              {"tolerance", v.tolerance},
              {"comparison", comparison_name(v.comparison)},
              {"pass", v.pass}};
}

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) {
    std::ostringstream os;
    os.precision(10);
    os << value.get<double>();
    return os.str();
  }
  return value.dump();
}

void flatten(const Json& node, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, child] : node.items()) flatten(child, prefix.empty() ? key : prefix + "/" + key, out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], prefix.empty() ? std::to_string(i) : prefix + "/" + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, scalar_text(node));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

void text_block(std::ostringstream& os, const Json& node, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, child] : node.items()) {
    if (child.is_object()) {
      os << pad << key << ":\n";
      text_block(os, child, indent + 2);
    } else if (child.is_array() && !child.empty() && (child.front().is_object() || child.front().is_array())) {
      os << pad << key << ": [" << child.size() << " entries]\n";
      for (const auto& item : child) {
        os << pad << "  -";
        if (item.is_object()) {
          for (const auto& [k, v] : item.items()) os << ' ' << k << '=' << scalar_text(v);
        } else {
          os << ' ' << item.dump();
        }
        os << '\n';
      }
    } else if (child.is_array()) {
      os << pad << key << ": ";
      for (std::size_t i = 0; i < child.size(); ++i) os << (i ? " " : "") << scalar_text(child[i]);
      os << '\n';
    } else {
      os << pad << key << ": " << scalar_text(child) << '\n';
    }
  }
}

}  // namespace

Verdict make_verdict(std::string claim, double target, double observed, double tolerance, Comparison comparison) {
  Verdict v{std::move(claim), target, observed, tolerance, comparison, false};
  switch (comparison) {
    case Comparison::kWithin: v.pass = std::abs(observed - target) <= tolerance; break;
    case Comparison::kAtMost: v.pass = observed <= target + tolerance; break;
    case Comparison::kIsTrue: v.pass = observed != 0.0; break;
  }
  if (!std::isfinite(observed)) v.pass = false;
  return v;
}

bool RunReport::all_pass() const {
  return std::ranges::all_of(verdicts, &Verdict::pass);
}

ExitCode RunReport::exit_code() const {
  if (numerical_failure) return ExitCode::kNumericalFailure;
  if (!all_pass()) return ExitCode::kVerdictFailure;
  return ExitCode::kOk;
}

Json payload(const RunReport& report) {
  Json doc;
  doc["command"] = report.command;
  doc["params"] = report.params;
  Json results = report.results;
  if (!report.warnings.empty()) results["warnings"] = report.warnings;
  if (report.numerical_failure) results["diagnostics"] = report.diagnostics;
  doc["results"] = std::move(results);
  Json verdicts = Json::array();
  for (const Verdict& v : report.verdicts) verdicts.push_back(verdict_json(v));
  doc["verdicts"] = std::move(verdicts);
  return doc;
}

Json to_json(const RunReport& report) {
  Json doc = payload(report);
  doc["duration_ms"] = report.duration_ms;
  return doc;
}

std::string render_json(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

std::string render_text(const RunReport& report) {
  std::ostringstream os;
  os << "command: " << report.command << '\n';
  os << "params:\n";
  text_block(os, report.params, 2);
  os << "results:\n";
  text_block(os, report.results, 2);
  for (const std::string& w : report.warnings) os << "warning: " << w << '\n';
  if (report.numerical_failure) os << "numerical failure: " << report.diagnostics << '\n';
  os << "verdicts:\n";
  for (const Verdict& v : report.verdicts) {
    os << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.claim << ": observed " << scalar_text(Json(v.observed));
    switch (v.comparison) {
      case Comparison::kWithin:
        os << ", target " << scalar_text(Json(v.target)) << " +- " << v.tolerance;
        break;
      case Comparison::kAtMost:
        os << ", at most " << scalar_text(Json(v.target)) << " + " << v.tolerance;
        break;
      case Comparison::kIsTrue:
        break;
    }
    os << '\n';
  }
  os << "duration_ms: " << static_cast<long long>(std::llround(report.duration_ms)) << '\n';
  return os.str();
}

std::string render_csv(const RunReport& report) {
  std::ostringstream os;
  os << "command,section,key,value\n";
  const Json doc = to_json(report);
  for (const char* section : {"params", "results", "verdicts"}) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc[section], "", rows);
    for (const auto& [key, value] : rows) {
      os << csv_field(report.command) << ',' << section << ',' << csv_field(key) << ',' << csv_field(value) << '\n';
    }
  }
  os << csv_field(report.command) << ",duration_ms,," << doc["duration_ms"].dump() << '\n';
  return os.str();
}

}  // namespace mabkcert::cli
