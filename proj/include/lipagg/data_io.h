// Copyright 2026 The lipagg Authors
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

// Dataset ingestion, empirical priors and conditionals, result export.
//
// Dataset CSV: UTF-8, comma separated, header `user,x` or `user,x,g`.
// Fields are trimmed; quoting is not supported.

#ifndef LIPAGG_DATA_IO_H_
#define LIPAGG_DATA_IO_H_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "lipagg/audit.h"
#include "lipagg/core.h"
#include "lipagg/simulation.h"

namespace lipagg {

struct Record {
  std::string user;
  std::string x;
  std::optional<std::string> g;
};

struct Dataset {
  std::vector<Record> records;
  Alphabet alphabet;
  std::vector<std::string> latent_labels;  // empty without a g column
};

// Optional fixed alphabets. Without one, symbols are inferred: numeric
// labels sort numerically and carry their value, others sort lexically and
// take their rank as value.
struct Schema {
  std::optional<Alphabet> alphabet;
  std::optional<std::vector<std::string>> latent_labels;
};

namespace internal {

inline std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

inline std::optional<double> ParseNumber(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline absl::StatusOr<Alphabet> InferAlphabet(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  bool numeric = true;
  for (const auto& l : labels) numeric &= ParseNumber(l).has_value();
  std::vector<double> values;
  if (numeric) {
    std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) {
      return *ParseNumber(a) < *ParseNumber(b);
    });
    for (const auto& l : labels) values.push_back(*ParseNumber(l));
  } else {
    for (std::size_t i = 0; i < labels.size(); ++i) values.push_back(i);
  }
  if (labels.size() == 1) {
    // A one-symbol dataset still needs a two-symbol alphabet.
    labels.push_back(labels[0] + "_other");
    values.push_back(values[0] + 1.0);
  }
  return Alphabet::Create(labels, values);
}

}  // namespace internal

inline absl::StatusOr<Dataset> ParseDataset(std::istream& in,
                                            const Schema& schema = {}) {
  std::string line;
  if (!std::getline(in, line)) return absl::InvalidArgumentError("empty file");
  const auto header = internal::SplitCsv(line);
  const bool latent = header.size() == 3;
  if (header.size() < 2 || header.size() > 3 || header[0] != "user" ||
      header[1] != "x" || (latent && header[2] != "g")) {
    return absl::InvalidArgumentError(
        "line 1: header must be `user,x` or `user,x,g`");
  }
  std::vector<Record> records;
  std::vector<std::string> bad;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    const auto fields = internal::SplitCsv(line);
    if (fields.size() != header.size() || fields[1].empty() ||
        (latent && fields[2].empty())) {
      return absl::InvalidArgumentError("line " + std::to_string(line_no) +
                                        ": malformed row");
    }
    Record r{fields[0], fields[1], std::nullopt};
    if (latent) r.g = fields[2];
    if (schema.alphabet.has_value() && schema.alphabet->IndexOf(r.x) < 0) {
      bad.push_back("line " + std::to_string(line_no) + ": unknown label '" +
                    r.x + "'");
      continue;
    }
    if (latent && schema.latent_labels.has_value() &&
        std::find(schema.latent_labels->begin(), schema.latent_labels->end(),
                  *r.g) == schema.latent_labels->end()) {
      bad.push_back("line " + std::to_string(line_no) +
                    ": unknown latent label '" + *r.g + "'");
      continue;
    }
    records.push_back(std::move(r));
  }
  if (!bad.empty()) {
    std::string msg;
    for (const auto& b : bad) msg += (msg.empty() ? "" : "; ") + b;
    return absl::InvalidArgumentError(msg);
  }
  if (records.empty()) return absl::InvalidArgumentError("empty file");

  std::optional<Alphabet> alphabet = schema.alphabet;
  if (!alphabet.has_value()) {
    std::vector<std::string> xs;
    for (const auto& r : records) xs.push_back(r.x);
    auto inferred = internal::InferAlphabet(std::move(xs));
    if (!inferred.ok()) return inferred.status();
    alphabet = *std::move(inferred);
  }
  std::vector<std::string> glabels;
  if (latent) {
    if (schema.latent_labels.has_value()) {
      glabels = *schema.latent_labels;
    } else {
      for (const auto& r : records) glabels.push_back(*r.g);
      std::sort(glabels.begin(), glabels.end());
      glabels.erase(std::unique(glabels.begin(), glabels.end()), glabels.end());
    }
  }
  return Dataset{std::move(records), *std::move(alphabet), std::move(glabels)};
}

inline absl::StatusOr<Dataset> LoadDataset(const std::string& path,
                                           const Schema& schema = {}) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError("cannot open " + path);
  return ParseDataset(in, schema);
}

// Normalized label frequencies with add-alpha smoothing.
inline absl::StatusOr<Prior> EmpiricalPrior(const Dataset& data,
                                            double alpha = 0.0) {
  if (data.records.empty()) return absl::InvalidArgumentError("empty dataset");
  if (alpha < 0.0) return absl::InvalidArgumentError("alpha must be >= 0");
  const std::size_t d = data.alphabet.size();
  std::vector<double> counts(d, alpha);
  for (const auto& r : data.records) {
    const int i = data.alphabet.IndexOf(r.x);
    if (i < 0) return absl::InvalidArgumentError("unknown label " + r.x);
    counts[i] += 1.0;
  }
  double total = 0.0;
  for (double c : counts) total += c;
  for (double& c : counts) c /= total;
  return Prior::Create(counts);
}

// Latent frequencies and add-alpha smoothed conditionals Pr(X = x | G = g).
// A negative alpha selects the default 1/d.
inline absl::StatusOr<LatentModel> EmpiricalConditional(const Dataset& data,
                                                        double alpha = -1.0) {
  if (data.records.empty()) return absl::InvalidArgumentError("empty dataset");
  if (data.latent_labels.empty()) {
    return absl::InvalidArgumentError("dataset has no latent column");
  }
  const std::size_t d = data.alphabet.size();
  if (alpha < 0.0) alpha = 1.0 / static_cast<double>(d);
  const std::size_t ng = data.latent_labels.size();
  std::vector<double> g_counts(ng, 0.0);
  Matrix counts(ng, d, alpha);
  for (const auto& r : data.records) {
    if (!r.g.has_value()) return absl::InvalidArgumentError("missing g value");
    const auto git = std::find(data.latent_labels.begin(),
                               data.latent_labels.end(), *r.g);
    const int x = data.alphabet.IndexOf(r.x);
    if (git == data.latent_labels.end() || x < 0) {
      return absl::InvalidArgumentError("unknown label in record");
    }
    const std::size_t g = git - data.latent_labels.begin();
    g_counts[g] += 1.0;
    counts(g, x) += 1.0;
  }
  const double n = static_cast<double>(data.records.size());
  Matrix cond(ng, d);
  for (std::size_t g = 0; g < ng; ++g) {
    double row = 0.0;
    for (std::size_t x = 0; x < d; ++x) row += counts(g, x);
    for (std::size_t x = 0; x < d; ++x) {
      // A latent value never observed gets the uniform conditional.
      cond(g, x) = row > 0.0 ? counts(g, x) / row : 1.0 / static_cast<double>(d);
    }
    g_counts[g] /= n;
  }
  return LatentModel::Create(g_counts, cond, data.alphabet);
}

// Six significant digits.
inline std::string FormatSig6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline double RoundSig6(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(FormatSig6(v));
}

inline constexpr char kTradeoffHeader[] =
    "epsilon,analytic_mse,empirical_mse,root_avg_mse,trials";

enum class ExportFormat { kCsv, kJson };

inline absl::StatusOr<ExportFormat> ParseFormat(const std::string& s) {
  if (s == "csv") return ExportFormat::kCsv;
  if (s == "json") return ExportFormat::kJson;
  return absl::InvalidArgumentError("unknown format: " + s);
}

inline std::string TradeoffCsvRow(const TradeoffPoint& p) {
  return FormatSig6(p.epsilon) + "," + FormatSig6(p.analytic_mse) + "," +
         FormatSig6(p.empirical_mse) + "," + FormatSig6(p.root_avg_mse) + "," +
         std::to_string(p.trials);
}

inline nlohmann::json TradeoffJson(const TradeoffPoint& p) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return RoundSig6(v);
  };
  return nlohmann::json{{"epsilon", num(p.epsilon)},
                        {"analytic_mse", num(p.analytic_mse)},
                        {"empirical_mse", num(p.empirical_mse)},
                        {"root_avg_mse", num(p.root_avg_mse)},
                        {"trials", p.trials}};
}

inline absl::StatusOr<std::string> FormatTradeoff(
    const std::vector<TradeoffPoint>& points, ExportFormat format) {
  if (points.empty()) return absl::InvalidArgumentError("no points to export");
  if (format == ExportFormat::kJson) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) arr.push_back(TradeoffJson(p));
    return arr.dump(2) + "\n";
  }
  std::string out = std::string(kTradeoffHeader) + "\n";
  for (const auto& p : points) out += TradeoffCsvRow(p) + "\n";
  return out;
}

inline absl::Status ExportTradeoff(const std::vector<TradeoffPoint>& points,
                                   const std::string& path,
                                   ExportFormat format) {
  auto text = FormatTradeoff(points, format);
  if (!text.ok()) return text.status();
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::PermissionDeniedError("cannot write " + path);
  out << *text;
  if (!out) return absl::InternalError("write failed: " + path);
  return absl::OkStatus();
}

namespace internal {

inline absl::StatusOr<double> JsonNumber(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  return absl::InvalidArgumentError("expected a number");
}

}  // namespace internal

inline absl::StatusOr<std::vector<TradeoffPoint>> ParseTradeoff(
    const std::string& text, ExportFormat format) {
  std::vector<TradeoffPoint> points;
  if (format == ExportFormat::kJson) {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
      return absl::InvalidArgumentError("expected a JSON array");
    }
    for (const auto& o : j) {
      TradeoffPoint p;
      for (auto [key, field] :
           {std::pair{"epsilon", &p.epsilon},
            std::pair{"analytic_mse", &p.analytic_mse},
            std::pair{"empirical_mse", &p.empirical_mse},
            std::pair{"root_avg_mse", &p.root_avg_mse}}) {
        if (!o.contains(key)) {
          return absl::InvalidArgumentError(std::string("missing key ") + key);
        }
        auto v = internal::JsonNumber(o.at(key));
        if (!v.ok()) return v.status();
        *field = *v;
      }
      if (!o.contains("trials") || !o.at("trials").is_number_integer()) {
        return absl::InvalidArgumentError("missing integer key trials");
      }
      p.trials = o.at("trials").get<int>();
      points.push_back(p);
    }
    return points;
  }
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || internal::Trim(line) != kTradeoffHeader) {
    return absl::InvalidArgumentError("unexpected CSV header");
  }
  int line_no = 1;
  while (std::getline(ss, line)) {
    ++line_no;
    if (internal::Trim(line).empty()) continue;
    const auto f = internal::SplitCsv(line);
    if (f.size() != 5) {
      return absl::InvalidArgumentError("line " + std::to_string(line_no) +
                                        ": expected 5 fields");
    }
    TradeoffPoint p;
    double* fields[] = {&p.epsilon, &p.analytic_mse, &p.empirical_mse,
                        &p.root_avg_mse};
    for (int i = 0; i < 4; ++i) {
      if (f[i] == "inf") {
        *fields[i] = kInfinity;
        continue;
      }
      auto v = internal::ParseNumber(f[i]);
      if (!v.has_value()) {
        return absl::InvalidArgumentError("line " + std::to_string(line_no) +
                                          ": bad number");
      }
      *fields[i] = *v;
    }
    p.trials = std::stoi(f[4]);
    points.push_back(p);
  }
  return points;
}

// Flat JSON object; infinite levels are written as the string "inf".
inline nlohmann::json AuditReportJson(const AuditReport& r) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  return nlohmann::json{{"lip_eps", num(r.lip_eps)},
                        {"ldp_eps", num(r.ldp_eps)},
                        {"di_eps", num(r.di_eps)},
                        {"latent_lip_eps", num(r.latent_lip_eps)},
                        {"mutual_info", num(r.mutual_info)},
                        {"max_leakage", num(r.max_leakage)},
                        {"d_infinity", num(r.d_infinity)}};
}

}  // namespace lipagg

#endif  // LIPAGG_DATA_IO_H_
