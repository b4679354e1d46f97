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

// Command-line front end.
//
//   lipagg mechanism | audit | solve | sweep | simulate | aggregate [flags]
//
// Exit status: 0 success, 1 usage error, 2 runtime error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lipagg/lipagg.h"

namespace lipagg::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
T Check(absl::StatusOr<T> v, bool usage = false) {
  if (!v.ok()) {
    const std::string msg(v.status().message());
    if (usage) throw UsageError(msg);
    throw RuntimeError(msg);
  }
  return *std::move(v);
}

void Check(const absl::Status& s) {
  if (!s.ok()) throw RuntimeError(std::string(s.message()));
}

std::vector<double> ParseList(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in ") + what + ": '" + item +
                       "'");
    }
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

// Rows separated by ';', entries by ','.
Matrix ParseMatrix(const std::string& text, const char* what) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(ParseList(row, what));
  if (rows.empty()) throw UsageError(std::string("empty ") + what);
  for (const auto& r : rows) {
    if (r.size() != rows[0].size()) {
      throw UsageError(std::string("ragged rows in ") + what);
    }
  }
  return Matrix::FromRows(rows);
}

double ParseEps(const std::string& text) {
  if (text == "inf") return kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !(v >= 0.0)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad epsilon: '" + text + "'");
  }
}

// start:stop:step or a comma list; sorted ascending.
std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(ParseEps(item));
    if (parts.size() != 3 || parts[2] <= 0.0 || parts[1] < parts[0] ||
        std::isinf(parts[1])) {
      throw UsageError("grid must be start:stop:step with step > 0");
    }
    for (int i = 0;; ++i) {
      const double v = std::round((parts[0] + i * parts[2]) * 1e12) / 1e12;
      if (v > parts[1] + 1e-9) break;
      grid.push_back(v);
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(ParseEps(item));
  }
  if (grid.empty()) throw UsageError("empty epsilon grid");
  for (double v : grid) {
    if (v <= 0.0) throw UsageError("epsilon grid must be positive");
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

PrivacyBudget Budget(const std::string& text) {
  return Check(PrivacyBudget::Create(ParseEps(text)), true);
}

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {}
  void Write(const std::string& text) const {
    if (path_.empty() || path_ == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + path_);
    out << text;
  }

 private:
  std::string path_;
};

std::string MatrixText(const Matrix& q) {
  std::string out;
  for (std::size_t m = 0; m < q.rows(); ++m) {
    for (std::size_t k = 0; k < q.cols(); ++k) {
      out += (k ? " " : "") + FormatSig6(q(m, k));
    }
    out += "\n";
  }
  return out;
}

nlohmann::json MatrixJson(const Matrix& q) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t m = 0; m < q.rows(); ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < q.cols(); ++k) row.push_back(RoundSig6(q(m, k)));
    rows.push_back(row);
  }
  return rows;
}

struct Common {
  std::string out;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
};

std::uint64_t ResolveSeed(const Common& c) {
  if (c.seed.has_value()) return *c.seed;
  if (const char* env = std::getenv("LIPAGG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad LIPAGG_SEED: '") + env + "'");
    }
  }
  return 0;
}

void AnnounceSeed(std::uint64_t seed) {
  std::cerr << "seed: " << seed << "\n";
}

// Model inputs shared by several subcommands.
struct ModelFlags {
  std::string prior;
  std::string values;
  std::string g_prior;
  std::string cond;
  std::string dataset;
  double alpha = -1.0;
  std::string box;
  std::string box_low;
  std::string box_high;
  std::string priors;
  int d = 0;
};

void AddModelFlags(CLI::App* app, ModelFlags& f) {
  app->add_option("--prior", f.prior, "Prior as a comma list");
  app->add_option("--values", f.values, "Alphabet values as a comma list");
  app->add_option("--g-prior", f.g_prior, "Latent prior as a comma list");
  app->add_option("--cond", f.cond, "Pr(X|G) rows, ';'-separated");
  app->add_option("--dataset", f.dataset, "CSV dataset with user,x[,g]");
  app->add_option("--alpha", f.alpha, "Smoothing for dataset frequencies");
  app->add_option("--box", f.box, "Binary prior box a,b on Pr(X=1)");
  app->add_option("--box-low", f.box_low, "Box lower bounds");
  app->add_option("--box-high", f.box_high, "Box upper bounds");
  app->add_option("--priors", f.priors, "Prior list, ';'-separated");
  app->add_option("--d", f.d, "Alphabet size");
}

std::optional<Dataset> MaybeDataset(const ModelFlags& f) {
  if (f.dataset.empty()) return std::nullopt;
  auto data = LoadDataset(f.dataset);
  if (!data.ok()) throw RuntimeError(std::string(data.status().message()));
  return *std::move(data);
}

Alphabet AlphabetFor(const ModelFlags& f, std::size_t d,
                     const std::optional<Dataset>& data) {
  if (data.has_value()) return data->alphabet;
  if (f.values.empty()) return Alphabet::Range(d);
  const auto values = ParseList(f.values, "--values");
  if (values.size() != d) throw UsageError("--values size mismatch");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back(std::to_string(i));
  return Check(Alphabet::Create(labels, values), true);
}

Prior PriorFrom(const ModelFlags& f, const std::optional<Dataset>& data) {
  if (!f.prior.empty()) {
    return Check(Prior::Create(ParseList(f.prior, "--prior")), true);
  }
  if (data.has_value()) {
    return Check(EmpiricalPrior(*data, std::max(f.alpha, 0.0)));
  }
  throw UsageError("a prior is required (--prior or --dataset)");
}

std::optional<LatentModel> LatentFrom(const ModelFlags& f,
                                      const std::optional<Dataset>& data) {
  if (!f.g_prior.empty() || !f.cond.empty()) {
    if (f.g_prior.empty() || f.cond.empty()) {
      throw UsageError("--g-prior and --cond go together");
    }
    const Matrix cond = ParseMatrix(f.cond, "--cond");
    return Check(LatentModel::Create(ParseList(f.g_prior, "--g-prior"), cond,
                                     AlphabetFor(f, cond.cols(), data)),
                 true);
  }
  if (data.has_value() && !data->latent_labels.empty()) {
    return Check(EmpiricalConditional(*data, f.alpha));
  }
  return std::nullopt;
}

std::optional<PriorSet> PriorSetFrom(const ModelFlags& f) {
  if (!f.box.empty()) {
    const auto ab = ParseList(f.box, "--box");
    if (ab.size() != 2) throw UsageError("--box takes a,b");
    return Check(PriorSet::Box({1.0 - ab[1], ab[0]}, {1.0 - ab[0], ab[1]}),
                 true);
  }
  if (!f.box_low.empty() || !f.box_high.empty()) {
    return Check(PriorSet::Box(ParseList(f.box_low, "--box-low"),
                               ParseList(f.box_high, "--box-high")),
                 true);
  }
  if (!f.priors.empty()) {
    std::vector<Prior> list;
    std::stringstream ss(f.priors);
    std::string item;
    while (std::getline(ss, item, ';')) {
      list.push_back(Check(Prior::Create(ParseList(item, "--priors")), true));
    }
    return Check(PriorSet::List(std::move(list)), true);
  }
  return std::nullopt;
}

// --- mechanism -------------------------------------------------------------

struct MechanismCmd {
  ModelFlags model;
  std::string family = "lip";
  std::string eps;
};

void RunMechanism(const MechanismCmd& cmd, const Common& common) {
  const PrivacyBudget eps = Budget(cmd.eps);
  const auto data = MaybeDataset(cmd.model);
  std::optional<Mechanism> mech;
  if (cmd.family == "lip") {
    mech = OptimalLip(PriorFrom(cmd.model, data), eps);
  } else if (cmd.family == "ldp" || cmd.family == "wc_lip") {
    std::size_t d = cmd.model.d;
    if (d == 0 && !cmd.model.prior.empty()) {
      d = ParseList(cmd.model.prior, "--prior").size();
    }
    if (d < 2) throw UsageError("--d (>= 2) is required for " + cmd.family);
    mech = OptimalLdp(d, eps);
  } else if (cmd.family == "bp_lip") {
    if (cmd.model.box.empty()) throw UsageError("bp_lip needs --box a,b");
    const auto ab = ParseList(cmd.model.box, "--box");
    if (ab.size() != 2) throw UsageError("--box takes a,b");
    mech = Check(OptimalBpLipBinary(ab[0], ab[1], eps), true);
  } else if (cmd.family == "latent_binary") {
    const auto latent = LatentFrom(cmd.model, data);
    if (!latent.has_value()) {
      throw UsageError("latent_binary needs --g-prior/--cond or --dataset");
    }
    mech = Check(OptimalLatentBinary(*latent, eps), true);
  } else {
    throw UsageError("unknown family for mechanism: " + cmd.family);
  }
  if (common.format == "json") {
    nlohmann::json j{{"family", cmd.family},
                     {"epsilon", eps.is_infinite()
                                     ? nlohmann::json("inf")
                                     : nlohmann::json(eps.epsilon())},
                     {"matrix", MatrixJson(mech->matrix())}};
    Output(common.out).Write(j.dump(2) + "\n");
  } else {
    Output(common.out).Write(MatrixText(mech->matrix()));
  }
}

// --- audit -----------------------------------------------------------------

struct AuditCmd {
  ModelFlags model;
  std::string mech = "identity";
  std::string eps;
};

void RunAudit(const AuditCmd& cmd, const Common& common) {
  const auto data = MaybeDataset(cmd.model);
  const Prior prior = PriorFrom(cmd.model, data);
  const std::size_t d = prior.size();
  std::optional<Mechanism> mech;
  if (cmd.mech == "identity") {
    mech = Mechanism::Identity(d);
  } else if (cmd.mech == "uniform") {
    mech = Mechanism::Constant(d, std::vector<double>(d, 1.0 / d));
  } else if (cmd.mech == "lip" || cmd.mech == "ldp") {
    if (cmd.eps.empty()) throw UsageError("--eps is required for " + cmd.mech);
    const PrivacyBudget eps = Budget(cmd.eps);
    mech = cmd.mech == "lip" ? OptimalLip(prior, eps) : OptimalLdp(d, eps);
  } else {
    mech = Check(Mechanism::Create(ParseMatrix(cmd.mech, "--mech")), true);
  }
  if (mech->inputs() != d) throw UsageError("mechanism rows must match prior");
  const auto latent = LatentFrom(cmd.model, data);
  if (latent.has_value() && latent->size() != d) {
    throw UsageError("latent model size must match prior");
  }
  const AuditReport report = Audit(prior, *mech, latent);
  Output(common.out).Write(AuditReportJson(report).dump(2) + "\n");
}

// --- solve -----------------------------------------------------------------

struct SolveCmd {
  ModelFlags model;
  std::string kind = "latent";
  std::string eps;
  int restarts = 16;
  int max_iters = 200;
};

void RunSolve(const SolveCmd& cmd, const Common& common) {
  const PrivacyBudget eps = Budget(cmd.eps);
  const auto data = MaybeDataset(cmd.model);
  SolverOptions opts;
  opts.restarts = cmd.restarts;
  opts.max_iters = cmd.max_iters;
  opts.seed = ResolveSeed(common);
  AnnounceSeed(opts.seed);
  if (cmd.restarts < 1 || cmd.max_iters < 1) {
    throw UsageError("--restarts and --max-iters must be positive");
  }
  std::optional<SolverResult> result;
  if (cmd.kind == "latent") {
    const auto latent = LatentFrom(cmd.model, data);
    if (!latent.has_value()) {
      throw UsageError("latent solve needs --g-prior/--cond or --dataset");
    }
    result = Check(SolveLatentMimo(*latent, eps, opts));
  } else if (cmd.kind == "lip") {
    const Prior prior = PriorFrom(cmd.model, data);
    result = Check(SolveLipMimo(prior, AlphabetFor(cmd.model, prior.size(), data),
                                eps, opts));
  } else if (cmd.kind == "bp") {
    const auto set = PriorSetFrom(cmd.model);
    if (!set.has_value()) {
      throw UsageError("bp solve needs --box, --box-low/--box-high or --priors");
    }
    result = Check(SolveBpLipMimo(*set, AlphabetFor(cmd.model, set->size(), data),
                                  eps, opts));
  } else {
    throw UsageError("unknown solve kind: " + cmd.kind);
  }
  nlohmann::json j{{"kind", cmd.kind},
                   {"epsilon", eps.is_infinite() ? nlohmann::json("inf")
                                                 : nlohmann::json(eps.epsilon())},
                   {"seed", opts.seed},
                   {"objective", RoundSig6(result->objective)},
                   {"feasible", result->feasible},
                   {"iterations", result->iterations},
                   {"matrix", MatrixJson(result->mechanism.matrix())}};
  if (result->worst_prior.has_value()) {
    j["worst_case_mse"] = RoundSig6(result->worst_case_mse);
    nlohmann::json wp = nlohmann::json::array();
    for (double v : result->worst_prior->probs()) wp.push_back(RoundSig6(v));
    j["worst_prior"] = wp;
  }
  Output(common.out).Write(j.dump(2) + "\n");
}

// --- sweep / simulate ------------------------------------------------------

struct SimCmd {
  ModelFlags model;
  std::vector<std::string> families;
  std::string eps;
  int n = 1000;
  int trials = 10000;
  std::string application = "weighted_sum";
};

std::vector<SimUser> BuildUsers(const SimCmd& cmd, std::uint64_t seed,
                                const std::optional<Dataset>& data) {
  if (cmd.n < 1) throw UsageError("--n must be >= 1");
  const auto latent = LatentFrom(cmd.model, data);
  const auto set = PriorSetFrom(cmd.model);
  std::vector<SimUser> users;
  if (latent.has_value()) {
    for (int i = 0; i < cmd.n; ++i) {
      users.push_back(SimUser{latent->x_prior(), latent->alphabet(), 1.0, 0.0,
                              latent, set});
    }
    return users;
  }
  if (!cmd.model.prior.empty() || data.has_value()) {
    const Prior prior = PriorFrom(cmd.model, data);
    const Alphabet alphabet = AlphabetFor(cmd.model, prior.size(), data);
    for (int i = 0; i < cmd.n; ++i) {
      users.push_back(SimUser{prior, alphabet, 1.0, 0.0, std::nullopt, set});
    }
    return users;
  }
  const int d = cmd.model.d == 0 ? 2 : cmd.model.d;
  if (d < 2) throw UsageError("--d must be >= 2");
  users = RandomUsers(cmd.n, d, seed);
  if (!cmd.model.values.empty()) {
    const Alphabet alphabet = AlphabetFor(cmd.model, d, data);
    for (auto& u : users) u.alphabet = alphabet;
  }
  for (auto& u : users) u.prior_set = set;
  return users;
}

void RunSim(const SimCmd& cmd, const Common& common, bool single) {
  const std::uint64_t seed = ResolveSeed(common);
  AnnounceSeed(seed);
  std::vector<double> grid;
  if (single) {
    const double e = ParseEps(cmd.eps);
    if (e <= 0.0) throw UsageError("epsilon must be positive");
    grid = {e};
  } else {
    grid = ParseGrid(cmd.eps);
  }
  if (cmd.trials < 1) throw UsageError("--trials must be >= 1");
  const Application app = Check(ParseApplication(cmd.application), true);
  std::vector<std::string> families = cmd.families;
  if (families.empty()) families = {"lip"};
  const auto format =
      Check(ParseFormat(common.format == "text" ? "csv" : common.format), true);
  const auto data = MaybeDataset(cmd.model);

  SimConfig config;
  config.users = BuildUsers(cmd, seed, data);
  config.application = app;
  config.epsilon_grid = grid;
  config.trials = cmd.trials;
  config.seed = seed;
  config.solver.seed = seed;

  std::vector<std::pair<std::string, std::vector<TradeoffPoint>>> curves;
  for (const auto& name : families) {
    config.family = Check(ParseFamily(name), true);
    curves.emplace_back(name, Check(RunSimulation(config)));
  }
  std::string text;
  if (curves.size() == 1) {
    text = Check(FormatTradeoff(curves[0].second, format));
  } else if (format == ExportFormat::kCsv) {
    text = std::string("family,") + kTradeoffHeader + "\n";
    for (const auto& [name, points] : curves) {
      for (const auto& p : points) text += name + "," + TradeoffCsvRow(p) + "\n";
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [name, points] : curves) {
      for (const auto& p : points) {
        nlohmann::json o = TradeoffJson(p);
        o["family"] = name;
        arr.push_back(o);
      }
    }
    text = arr.dump(2) + "\n";
  }
  Output(common.out).Write(text);
}

// --- aggregate -------------------------------------------------------------

struct AggregateCmd {
  std::string dataset;
  std::string family = "lip";
  std::string eps;
  std::string application = "histogram";
  double alpha = 0.0;
};

void RunAggregate(const AggregateCmd& cmd, const Common& common) {
  if (cmd.dataset.empty()) throw UsageError("--dataset is required");
  const PrivacyBudget eps = Budget(cmd.eps);
  const std::uint64_t seed = ResolveSeed(common);
  AnnounceSeed(seed);
  const Application app = Check(ParseApplication(cmd.application), true);
  const MechanismFamily family = Check(ParseFamily(cmd.family), true);
  const Dataset data = Check(LoadDataset(cmd.dataset));
  const Prior prior = Check(EmpiricalPrior(data, cmd.alpha));
  std::optional<LatentModel> latent;
  if (!data.latent_labels.empty()) latent = Check(EmpiricalConditional(data));
  SimUser proto{prior, data.alphabet, 1.0, 0.0, latent, std::nullopt};
  const Mechanism mech = Check(BuildMechanism(proto, family, eps, {}));

  const std::size_t d = data.alphabet.size();
  std::vector<UserConfig> users;
  std::vector<std::size_t> ys;
  std::vector<double> truth_hist(d, 0.0);
  double truth_sum = 0.0;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const std::size_t x = data.alphabet.IndexOf(data.records[i].x);
    Stream stream(seed, i, 0);
    ys.push_back(Perturb(mech, x, stream));
    users.push_back(UserConfig{prior, mech, data.alphabet});
    truth_hist[x] += 1.0;
    truth_sum += data.alphabet.values()[x];
  }
  nlohmann::json j{{"records", data.records.size()},
                   {"family", cmd.family},
                   {"epsilon", eps.is_infinite() ? nlohmann::json("inf")
                                                 : nlohmann::json(eps.epsilon())},
                   {"seed", seed},
                   {"application", cmd.application}};
  if (app == Application::kHistogram) {
    const auto est = Check(HistogramEstimate(users, ys));
    nlohmann::json labels = data.alphabet.labels();
    nlohmann::json t = nlohmann::json::array();
    nlohmann::json e = nlohmann::json::array();
    for (std::size_t m = 0; m < d; ++m) {
      t.push_back(truth_hist[m]);
      e.push_back(RoundSig6(est[m]));
    }
    j["labels"] = labels;
    j["true"] = t;
    j["estimate"] = e;
    j["analytic_mse"] = RoundSig6(HistogramMseAnalytic(users));
  } else {
    const double est = Check(WeightedSumEstimate(users, ys));
    j["true"] = RoundSig6(truth_sum);
    j["estimate"] = RoundSig6(est);
    j["analytic_mse"] = RoundSig6(WeightedSumMseAnalytic(users));
  }
  Output(common.out).Write(j.dump(2) + "\n");
}

// Appends `--key value` pairs from a flat key=value file for keys not given
// on the command line.
std::vector<std::string> ExpandConfig(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  auto given = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = internal::Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(line_no) +
                       ": expected key=value");
    }
    const std::string key = internal::Trim(t.substr(0, eq));
    const std::string value = internal::Trim(t.substr(eq + 1));
    if (given(key)) continue;
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int Run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = ExpandConfig(std::move(args));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI::App app{"Design, audit and simulate local information privacy channels", "lipagg"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Random seed");
  app.add_option("--out", common.out, "Output file (default: stdout)");
  app.add_option("--format", common.format, "text|csv|json");
  app.add_option("--config", "Flat key=value file mirroring the flags");

  MechanismCmd mech_cmd;
  auto* mech = app.add_subcommand("mechanism", "Print a closed-form channel");
  AddModelFlags(mech, mech_cmd.model);
  mech->add_option("--family", mech_cmd.family,
                   "lip|ldp|wc_lip|bp_lip|latent_binary");
  mech->add_option("--eps", mech_cmd.eps, "Budget in nats")->required();

  AuditCmd audit_cmd;
  auto* audit = app.add_subcommand("audit", "Audit a channel (JSON report)");
  AddModelFlags(audit, audit_cmd.model);
  audit->add_option("--mech", audit_cmd.mech,
                    "identity|uniform|lip|ldp|inline rows 'a,b;c,d'");
  audit->add_option("--eps", audit_cmd.eps, "Budget for lip/ldp");

  SolveCmd solve_cmd;
  auto* solve = app.add_subcommand("solve", "Numeric latent or bounded-prior channel");
  AddModelFlags(solve, solve_cmd.model);
  solve->add_option("--kind", solve_cmd.kind, "latent|lip|bp");
  solve->add_option("--eps", solve_cmd.eps, "Budget in nats")->required();
  solve->add_option("--restarts", solve_cmd.restarts, "Solver restarts");
  solve->add_option("--max-iters", solve_cmd.max_iters, "Ascent iterations");

  SimCmd sweep_cmd;
  auto* sweep = app.add_subcommand("sweep", "Utility-privacy curve over an eps grid");
  AddModelFlags(sweep, sweep_cmd.model);
  sweep->add_option("--family", sweep_cmd.families, "Mechanism family (repeatable)");
  sweep->add_option("--eps", sweep_cmd.eps, "start:stop:step or list")->required();
  sweep->add_option("--n", sweep_cmd.n, "Number of users");
  sweep->add_option("--trials", sweep_cmd.trials, "Monte Carlo trials");
  sweep->add_option("--application", sweep_cmd.application,
                    "weighted_sum|histogram");

  SimCmd sim_cmd;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo at one budget");
  AddModelFlags(simulate, sim_cmd.model);
  simulate->add_option("--family", sim_cmd.families, "Mechanism family");
  simulate->add_option("--eps", sim_cmd.eps, "Budget in nats")->required();
  simulate->add_option("--n", sim_cmd.n, "Number of users");
  simulate->add_option("--trials", sim_cmd.trials, "Monte Carlo trials");
  simulate->add_option("--application", sim_cmd.application,
                       "weighted_sum|histogram");

  AggregateCmd agg_cmd;
  auto* aggregate = app.add_subcommand("aggregate", "Estimate from a dataset");
  aggregate->add_option("--dataset", agg_cmd.dataset, "CSV dataset")->required();
  aggregate->add_option("--family", agg_cmd.family, "Mechanism family");
  aggregate->add_option("--eps", agg_cmd.eps, "Budget in nats")->required();
  aggregate->add_option("--application", agg_cmd.application,
                        "histogram|weighted_sum");
  aggregate->add_option("--alpha", agg_cmd.alpha, "Prior smoothing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (seed_opt->count() > 0) common.seed = seed_value;
  if (common.format != "text" && common.format != "csv" &&
      common.format != "json") {
    std::cerr << "error: --format must be text, csv or json\n";
    return 1;
  }

  try {
    if (mech->parsed()) RunMechanism(mech_cmd, common);
    if (audit->parsed()) RunAudit(audit_cmd, common);
    if (solve->parsed()) RunSolve(solve_cmd, common);
    if (sweep->parsed()) RunSim(sweep_cmd, common, false);
    if (simulate->parsed()) RunSim(sim_cmd, common, true);
    if (aggregate->parsed()) RunAggregate(agg_cmd, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RuntimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace
}  // namespace lipagg::cli

int main(int argc, char** argv) { return lipagg::cli::Run(argc, argv); }
