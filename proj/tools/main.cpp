// rfsvm: train and evaluate robust nonlinear SVM classifiers on data with
// bounded feature uncertainty.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data or model file
// error, 3 training diverged, 4 bound verification found violations.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfsvm/errors.hpp"
#include "rfsvm/io.hpp"
#include "rfsvm/model_io.hpp"
#include "rfsvm/nystrom.hpp"
#include "rfsvm/objective.hpp"
#include "rfsvm/rff.hpp"
#include "rfsvm/rng.hpp"
#include "rfsvm/solver.hpp"
#include "rfsvm/verify.hpp"

namespace {

using nlohmann::json;
using namespace rfsvm;

json default_config() {
  return json{
      {"seed", 0},
      {"model", ""},
      {"data",
       {{"path", ""},
        {"format", "libsvm"},
        {"label_column", 0},
        {"has_header", false},
        {"remap01", false}}},
      {"uncertainty", {{"gamma", 0.0}, {"p", "2"}, {"sigma", "1"}}},
      {"features",
       {{"kind", "rff"},
        {"output_dim", 128},
        {"sigma", 1.0},
        {"variant", "paired"},
        {"landmarks", 64},
        {"rank_tol", 1e-10},
        {"pbar", "2"}}},
      {"solver",
       {{"method", "proximal"},
        {"epochs", 10},
        {"lambda", 1e-3},
        {"trace_every", 0},
        {"tail_average", false},
        {"step", {{"kind", "inverse_scaled"}, {"eta0", 1.0}}}}},
      {"verify", {{"trials", 10000}, {"points", 5}, {"gammas", {0.0, 0.1, 0.5, 2.0, 10.0}}}},
      {"output", {{"model", ""}, {"trace", ""}, {"labels", ""}, {"report", ""}}},
  };
}

// Overlays user values onto the defaults, rejecting keys the schema does not
// know so typos fail loudly instead of silently using a default.
void merge_config(json& base, const json& user, const std::string& prefix) {
  if (!user.is_object()) {
    throw std::invalid_argument("config: expected an object at '" +
                                (prefix.empty() ? "<top>" : prefix) + "'");
  }
  for (const auto& [key, value] : user.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) {
      throw std::invalid_argument("config: unknown key '" + path + "'");
    }
    if (base[key].is_object() && !base[key].empty()) {
      merge_config(base[key], value, path);
    } else {
      base[key] = value;
    }
  }
}

double parse_exponent(const json& j, const std::string& what) {
  double p = 0.0;
  if (j.is_number()) {
    p = j.get<double>();
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "INF") {
      p = kInf;
    } else {
      try {
        std::size_t pos = 0;
        p = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw std::invalid_argument(what + ": unreadable exponent '" + s + "'");
      }
    }
  } else {
    throw std::invalid_argument(what + ": expected a number or 'inf'");
  }
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument(what + ": exponent must satisfy p >= 1");
  }
  return p;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": unreadable number '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

SigmaHalf parse_sigma_half(const json& j, Eigen::Index n) {
  if (j.is_number()) return SigmaHalf::scaled_identity(n, j.get<double>());
  if (j.is_string()) {
    const auto values = parse_double_list(j.get<std::string>(), "uncertainty.sigma");
    if (values.size() == 1) return SigmaHalf::scaled_identity(n, values[0]);
    if (static_cast<Eigen::Index>(values.size()) != n) {
      throw std::invalid_argument(
          "uncertainty.sigma: diagonal length does not match the data dimension");
    }
    return SigmaHalf::diagonal(
        Eigen::Map<const Eigen::VectorXd>(values.data(), n));
  }
  if (j.is_array() && !j.empty() && j.front().is_array()) {
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows != n) {
      throw std::invalid_argument(
          "uncertainty.sigma: matrix size does not match the data dimension");
    }
    Eigen::MatrixXd m(rows, rows);
    Eigen::Index i = 0;
    for (const auto& row : j) {
      if (static_cast<Eigen::Index>(row.size()) != rows) {
        throw std::invalid_argument("uncertainty.sigma: matrix must be square");
      }
      Eigen::Index k = 0;
      for (const auto& cell : row) m(i, k++) = cell.get<double>();
      ++i;
    }
    return SigmaHalf::dense(m);
  }
  if (j.is_array()) {
    if (static_cast<Eigen::Index>(j.size()) != n) {
      throw std::invalid_argument(
          "uncertainty.sigma: diagonal length does not match the data dimension");
    }
    Eigen::VectorXd d(n);
    Eigen::Index i = 0;
    for (const auto& cell : j) d[i++] = cell.get<double>();
    return SigmaHalf::diagonal(d);
  }
  throw std::invalid_argument("uncertainty.sigma: expected a scalar, list or matrix");
}

// Unset CLI values mean "keep whatever the config file or defaults say".
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> model;
  std::optional<std::string> data_path, data_format;
  std::optional<int> data_label_column;
  bool data_has_header = false, data_remap01 = false;
  std::optional<double> unc_gamma;
  std::optional<std::string> unc_p, unc_sigma;
  std::optional<std::string> feat_kind, feat_variant, feat_pbar;
  std::optional<int> feat_output_dim, feat_landmarks;
  std::optional<double> feat_sigma, feat_rank_tol;
  std::optional<std::string> solver_method, step_kind;
  std::optional<int> solver_epochs, solver_trace_every;
  std::optional<double> solver_lambda, step_eta0;
  bool solver_tail_average = false;
  std::optional<std::uint64_t> verify_trials;
  std::optional<int> verify_points;
  std::optional<std::string> verify_gammas;
  std::optional<std::string> out_model, out_trace, out_labels, out_report;
};

void add_common_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "JSON configuration file");
  cmd->add_option("--seed", ov.seed, "top-level random seed");
  cmd->add_option("--model", ov.model, "model file to load");
  cmd->add_option("--data.path", ov.data_path, "dataset file");
  cmd->add_option("--data.format", ov.data_format, "libsvm or csv");
  cmd->add_option("--data.label_column", ov.data_label_column,
                  "csv label column (0-based)");
  cmd->add_flag("--data.has_header", ov.data_has_header, "csv file has a header row");
  cmd->add_flag("--data.remap01", ov.data_remap01, "accept {0,1} labels");
  cmd->add_option("--uncertainty.gamma", ov.unc_gamma, "uncertainty radius");
  cmd->add_option("--uncertainty.p", ov.unc_p, "uncertainty norm exponent");
  cmd->add_option("--uncertainty.sigma", ov.unc_sigma,
                  "Sigma^{1/2}: scalar or comma-separated diagonal");
  cmd->add_option("--features.kind", ov.feat_kind, "rff or nystrom");
  cmd->add_option("--features.output_dim", ov.feat_output_dim,
                  "random feature dimension");
  cmd->add_option("--features.sigma", ov.feat_sigma, "kernel bandwidth");
  cmd->add_option("--features.variant", ov.feat_variant, "paired or offset");
  cmd->add_option("--features.landmarks", ov.feat_landmarks, "landmark count");
  cmd->add_option("--features.rank_tol", ov.feat_rank_tol,
                  "relative eigenvalue cutoff");
  cmd->add_option("--features.pbar", ov.feat_pbar, "feature-space norm exponent");
  cmd->add_option("--solver.method", ov.solver_method, "proximal or subgradient");
  cmd->add_option("--solver.epochs", ov.solver_epochs, "training epochs");
  cmd->add_option("--solver.lambda", ov.solver_lambda, "ridge weight");
  cmd->add_option("--solver.step.kind", ov.step_kind, "constant or inverse_scaled");
  cmd->add_option("--solver.step.eta0", ov.step_eta0, "initial step size");
  cmd->add_option("--solver.trace_every", ov.solver_trace_every,
                  "objective trace period (0 = off)");
  cmd->add_flag("--solver.tail_average", ov.solver_tail_average,
                "average iterates over the last epoch");
  cmd->add_option("--verify.trials", ov.verify_trials, "Monte Carlo draws");
  cmd->add_option("--verify.points", ov.verify_points, "number of test points");
  cmd->add_option("--verify.gammas", ov.verify_gammas,
                  "comma-separated uncertainty radii");
  cmd->add_option("--output.model", ov.out_model, "where to write the model");
  cmd->add_option("--output.trace", ov.out_trace, "where to write the trace csv");
  cmd->add_option("--output.labels", ov.out_labels, "where to write predictions");
  cmd->add_option("--output.report", ov.out_report, "where to write the JSON report");
}

json resolve_config(const Overrides& ov) {
  json cfg = default_config();
  if (ov.config_path) {
    std::ifstream in(*ov.config_path);
    if (!in) throw DataError("cannot open config '" + *ov.config_path + "'");
    json user;
    try {
      user = json::parse(in);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("config: ") + e.what());
    }
    merge_config(cfg, user, "");
  }
  auto set = [&cfg](const char* a, const char* b, const auto& v) { cfg[a][b] = v; };
  if (ov.seed) cfg["seed"] = *ov.seed;
  if (ov.model) cfg["model"] = *ov.model;
  if (ov.data_path) set("data", "path", *ov.data_path);
  if (ov.data_format) set("data", "format", *ov.data_format);
  if (ov.data_label_column) set("data", "label_column", *ov.data_label_column);
  if (ov.data_has_header) set("data", "has_header", true);
  if (ov.data_remap01) set("data", "remap01", true);
  if (ov.unc_gamma) set("uncertainty", "gamma", *ov.unc_gamma);
  if (ov.unc_p) set("uncertainty", "p", *ov.unc_p);
  if (ov.unc_sigma) set("uncertainty", "sigma", *ov.unc_sigma);
  if (ov.feat_kind) set("features", "kind", *ov.feat_kind);
  if (ov.feat_output_dim) set("features", "output_dim", *ov.feat_output_dim);
  if (ov.feat_sigma) set("features", "sigma", *ov.feat_sigma);
  if (ov.feat_variant) set("features", "variant", *ov.feat_variant);
  if (ov.feat_landmarks) set("features", "landmarks", *ov.feat_landmarks);
  if (ov.feat_rank_tol) set("features", "rank_tol", *ov.feat_rank_tol);
  if (ov.feat_pbar) set("features", "pbar", *ov.feat_pbar);
  if (ov.solver_method) set("solver", "method", *ov.solver_method);
  if (ov.solver_epochs) set("solver", "epochs", *ov.solver_epochs);
  if (ov.solver_lambda) set("solver", "lambda", *ov.solver_lambda);
  if (ov.step_kind) cfg["solver"]["step"]["kind"] = *ov.step_kind;
  if (ov.step_eta0) cfg["solver"]["step"]["eta0"] = *ov.step_eta0;
  if (ov.solver_trace_every) set("solver", "trace_every", *ov.solver_trace_every);
  if (ov.solver_tail_average) set("solver", "tail_average", true);
  if (ov.verify_trials) set("verify", "trials", *ov.verify_trials);
  if (ov.verify_points) set("verify", "points", *ov.verify_points);
  if (ov.verify_gammas) {
    cfg["verify"]["gammas"] = parse_double_list(*ov.verify_gammas, "verify.gammas");
  }
  if (ov.out_model) set("output", "model", *ov.out_model);
  if (ov.out_trace) set("output", "trace", *ov.out_trace);
  if (ov.out_labels) set("output", "labels", *ov.out_labels);
  if (ov.out_report) set("output", "report", *ov.out_report);
  return cfg;
}

Dataset load_dataset(const json& cfg) {
  const auto& d = cfg["data"];
  const std::string path = d["path"].get<std::string>();
  if (path.empty()) throw std::invalid_argument("data.path is required");
  const std::string format = d["format"].get<std::string>();
  if (format == "libsvm") {
    LibsvmOptions opts;
    opts.remap01 = d["remap01"].get<bool>();
    return parse_libsvm_file(path, opts);
  }
  if (format == "csv") {
    CsvOptions opts;
    opts.label_column = d["label_column"].get<int>();
    opts.has_header = d["has_header"].get<bool>();
    opts.remap01 = d["remap01"].get<bool>();
    return parse_csv_file(path, opts);
  }
  throw std::invalid_argument("data.format must be libsvm or csv");
}

Uncertainty load_uncertainty(const json& cfg, Eigen::Index n) {
  const auto& u = cfg["uncertainty"];
  const double gamma = u["gamma"].get<double>();
  const double p = parse_exponent(u["p"], "uncertainty.p");
  return Uncertainty(parse_sigma_half(u["sigma"], n), gamma, p);
}

FeatureMap build_feature_map(const json& cfg, const Dataset& data,
                             std::uint64_t seed) {
  const auto& f = cfg["features"];
  const std::string kind = f["kind"].get<std::string>();
  const double sigma = f["sigma"].get<double>();
  if (kind == "rff") {
    const std::string vs = f["variant"].get<std::string>();
    if (vs != "paired" && vs != "offset") {
      throw std::invalid_argument("features.variant must be paired or offset");
    }
    const RffVariant variant =
        vs == "paired" ? RffVariant::paired : RffVariant::offset;
    return RffMap::sample(data.dim(), f["output_dim"].get<Eigen::Index>(), sigma,
                          variant, split_seed(seed, SeedStream::feature_map));
  }
  if (kind == "nystrom") {
    const int m = f["landmarks"].get<int>();
    if (m < 1) throw std::invalid_argument("features.landmarks must be >= 1");
    auto landmarks = select_landmarks(data, static_cast<std::size_t>(m),
                                      split_seed(seed, SeedStream::landmarks));
    return NystromMap::fit(std::move(landmarks), sigma,
                           f["rank_tol"].get<double>());
  }
  throw std::invalid_argument("features.kind must be rff or nystrom");
}

double resolve_pbar(const json& cfg, const FeatureMap& map) {
  const double pbar = parse_exponent(cfg["features"]["pbar"], "features.pbar");
  if (std::holds_alternative<NystromMap>(map) && pbar != 2.0) {
    throw std::invalid_argument("features.pbar must be 2 for nystrom features");
  }
  if (!(pbar == 1.0 || pbar == 2.0 || std::isinf(pbar))) {
    throw std::invalid_argument("features.pbar must be 1, 2 or inf");
  }
  return pbar;
}

void emit_report(const json& cfg, const json& report) {
  const std::string path = cfg["output"]["report"].get<std::string>();
  if (path.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << report.dump(2) << "\n";
  out.flush();
  if (!out) throw DataError("failed writing '" + path + "'");
}

int run_train(const json& cfg) {
  const Dataset data = load_dataset(cfg);
  const Uncertainty unc = load_uncertainty(cfg, data.dim());
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  FeatureMap map = build_feature_map(cfg, data, seed);
  const double pbar = resolve_pbar(cfg, map);

  const auto& s = cfg["solver"];
  SolverConfig solver;
  const std::string method = s["method"].get<std::string>();
  if (method == "proximal") {
    solver.method = SolveMethod::proximal;
  } else if (method == "subgradient") {
    solver.method = SolveMethod::subgradient;
  } else {
    throw std::invalid_argument("solver.method must be proximal or subgradient");
  }
  solver.epochs = s["epochs"].get<int>();
  solver.lambda = s["lambda"].get<double>();
  const std::string sk = s["step"]["kind"].get<std::string>();
  if (sk == "constant") {
    solver.step.kind = StepKind::constant;
  } else if (sk == "inverse_scaled") {
    solver.step.kind = StepKind::inverse_scaled;
  } else {
    throw std::invalid_argument("solver.step.kind must be constant or inverse_scaled");
  }
  solver.step.eta0 = s["step"]["eta0"].get<double>();
  solver.trace_every = s["trace_every"].get<int>();
  solver.tail_average = s["tail_average"].get<bool>();
  solver.seed = seed;

  const std::string trace_path = cfg["output"]["trace"].get<std::string>();
  if (!trace_path.empty() && solver.trace_every <= 0) {
    throw std::invalid_argument("output.trace requires solver.trace_every > 0");
  }

  const SolverProblem problem = build_problem(
      data, UncertaintyModel::shared(unc), map, pbar, solver.lambda);
  auto [classifier, trace] = train(problem, solver, std::move(map));

  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (predict(classifier, data.sample(i)) == data.label(i)) ++correct;
  }
  const double accuracy = static_cast<double>(correct) / data.size();
  const double objective = full_objective(problem, classifier);

  const std::string model_path = cfg["output"]["model"].get<std::string>();
  if (!model_path.empty()) {
    ModelFile file;
    file.classifier = std::move(classifier);
    file.meta = {solver.lambda, method, solver.epochs, seed};
    save_model(model_path, file);
  }
  if (!trace_path.empty()) write_trace_csv_file(trace_path, trace);

  std::cout << "trained on " << data.size() << " samples (dim " << data.dim()
            << " -> " << problem.features.front().size() << " features)\n"
            << "final objective " << objective << ", training accuracy "
            << accuracy << "\n";
  if (!model_path.empty()) std::cout << "model written to " << model_path << "\n";
  if (!trace_path.empty()) std::cout << "trace written to " << trace_path << "\n";

  json report{{"command", "train"},
              {"samples", data.size()},
              {"input_dim", data.dim()},
              {"feature_dim", problem.features.front().size()},
              {"objective", objective},
              {"accuracy", accuracy},
              {"updates", trace.total_updates}};
  if (!cfg["output"]["report"].get<std::string>().empty()) emit_report(cfg, report);
  return 0;
}

int run_predict(const json& cfg) {
  const std::string model_path = cfg["model"].get<std::string>();
  if (model_path.empty()) throw std::invalid_argument("--model is required");
  const ModelFile model = load_model(model_path);
  const Dataset data = load_dataset(cfg);
  if (data.dim() != input_dim(model.classifier.map)) {
    throw DataError("data dimension does not match the model's feature map");
  }

  std::vector<int> labels(data.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    labels[i] = predict(model.classifier, data.sample(i));
    if (labels[i] == data.label(i)) ++correct;
  }
  const double accuracy = static_cast<double>(correct) / data.size();

  const std::string labels_path = cfg["output"]["labels"].get<std::string>();
  if (!labels_path.empty()) {
    std::ofstream out(labels_path);
    if (!out) throw DataError("cannot open '" + labels_path + "' for writing");
    for (int y : labels) out << (y > 0 ? "+1" : "-1") << "\n";
    out.flush();
    if (!out) throw DataError("failed writing '" + labels_path + "'");
  }

  std::cout << "predicted " << data.size() << " samples, accuracy " << accuracy
            << "\n";
  json report{{"command", "predict"},
              {"samples", data.size()},
              {"accuracy", accuracy}};
  if (!cfg["output"]["report"].get<std::string>().empty()) emit_report(cfg, report);
  return 0;
}

int run_verify_bounds(const json& cfg) {
  const Dataset data = load_dataset(cfg);
  const Uncertainty base = load_uncertainty(cfg, data.dim());
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  const FeatureMap map = build_feature_map(cfg, data, seed);
  const std::uint64_t trials = cfg["verify"]["trials"].get<std::uint64_t>();
  const int points = cfg["verify"]["points"].get<int>();
  if (points < 1) throw std::invalid_argument("verify.points must be >= 1");
  const auto gammas = cfg["verify"]["gammas"].get<std::vector<double>>();

  const bool is_rff = std::holds_alternative<RffMap>(map);
  if (is_rff && std::get<RffMap>(map).variant() != RffVariant::paired) {
    throw std::invalid_argument("verify-bounds needs the paired rff variant");
  }
  std::vector<double> pbars;
  if (is_rff) {
    pbars = {1.0, 2.0, kInf};
  } else {
    pbars = {2.0};
    if (base.p != 2.0) {
      throw std::invalid_argument("uncertainty.p must be 2 for nystrom features");
    }
  }

  auto rng = make_rng(split_seed(seed, SeedStream::verify));
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  std::vector<std::size_t> indices;
  for (int i = 0; i < points; ++i) indices.push_back(pick(rng));

  json cells = json::array();
  std::uint64_t total_violations = 0;
  double worst_ratio = 0.0;
  std::uint64_t trial_stream = 0;
  for (const double gamma : gammas) {
    if (gamma < 0.0) throw std::invalid_argument("verify.gammas must be >= 0");
    const Uncertainty unc(base.sigma_half, gamma, base.p);
    for (const double pbar : pbars) {
      for (const std::size_t idx : indices) {
        const Eigen::VectorXd& x = data.sample(idx);
        const FeatureBound bound =
            is_rff ? rff_bound(std::get<RffMap>(map), x, unc, pbar)
                   : nystrom_bound(std::get<NystromMap>(map), x, unc);
        const BoundReport rep = verify_bound_mc(
            map, x, unc, bound, trials,
            split_seed(split_seed(seed, SeedStream::trial), trial_stream++));
        total_violations += rep.violations;
        if (rep.max_ratio > worst_ratio && std::isfinite(rep.max_ratio)) {
          worst_ratio = rep.max_ratio;
        }
        std::ostringstream line;
        line << "gamma=" << gamma << " p=" << base.p << " pbar=" << pbar
             << " point=" << idx << " Gamma=" << bound.gamma_feat
             << " max_ratio=" << rep.max_ratio << " violations=" << rep.violations;
        std::cout << line.str() << "\n";
        cells.push_back(json{{"gamma", gamma},
                             {"p", base.p},
                             {"pbar", std::isinf(pbar) ? json("inf") : json(pbar)},
                             {"point", idx},
                             {"bound", bound.gamma_feat},
                             {"max_ratio", rep.max_ratio},
                             {"violations", rep.violations},
                             {"trials", rep.trials}});
      }
    }
  }

  const bool ok = total_violations == 0;
  std::cout << (ok ? "all bounds held" : "BOUND VIOLATIONS FOUND") << " ("
            << cells.size() << " cells, " << trials << " trials each)\n";
  json report{{"command", "verify-bounds"},
              {"cells", cells},
              {"violations", total_violations},
              {"worst_ratio", worst_ratio},
              {"all_pass", ok}};
  if (!cfg["output"]["report"].get<std::string>().empty()) emit_report(cfg, report);
  return ok ? 0 : 4;
}

int run_kernel_error(const json& cfg) {
  const Dataset data = load_dataset(cfg);
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  const FeatureMap map = build_feature_map(cfg, data, seed);
  const int points = cfg["verify"]["points"].get<int>();
  if (points < 1) throw std::invalid_argument("verify.points must be >= 1");

  auto rng = make_rng(split_seed(seed, SeedStream::verify));
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < points; ++i) pts.push_back(data.sample(pick(rng)));

  const KernelErrorStats stats =
      kernel_approx_error(map, pts, cfg["features"]["sigma"].get<double>());
  std::cout << "kernel approximation over " << stats.pairs
            << " pairs: max " << stats.max_abs << ", mean " << stats.mean_abs
            << "\n";
  json report{{"command", "kernel-error"},
              {"pairs", stats.pairs},
              {"max_abs", stats.max_abs},
              {"mean_abs", stats.mean_abs}};
  if (!cfg["output"]["report"].get<std::string>().empty()) emit_report(cfg, report);
  return 0;
}

int run_robust_error(const json& cfg) {
  const std::string model_path = cfg["model"].get<std::string>();
  if (model_path.empty()) throw std::invalid_argument("--model is required");
  const ModelFile model = load_model(model_path);
  const Dataset data = load_dataset(cfg);
  if (data.dim() != input_dim(model.classifier.map)) {
    throw DataError("data dimension does not match the model's feature map");
  }
  const Uncertainty unc = load_uncertainty(cfg, data.dim());
  const std::uint64_t trials = cfg["verify"]["trials"].get<std::uint64_t>();
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();

  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (predict(model.classifier, data.sample(i)) != data.label(i)) ++wrong;
  }
  const double standard = static_cast<double>(wrong) / data.size();
  const double robust =
      robust_error(model.classifier, data, UncertaintyModel::shared(unc), trials,
                   split_seed(seed, SeedStream::verify));

  std::cout << "standard error " << standard << ", robust error " << robust
            << " (gamma " << unc.gamma << ", " << trials << " trials)\n";
  json report{{"command", "robust-error"},
              {"standard_error", standard},
              {"robust_error", robust},
              {"gamma", unc.gamma},
              {"trials", trials}};
  if (!cfg["output"]["report"].get<std::string>().empty()) emit_report(cfg, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust nonlinear SVM training on uncertain data"};
  app.require_subcommand(1);

  Overrides ov;
  auto* train_cmd = app.add_subcommand("train", "fit a robust classifier");
  auto* predict_cmd = app.add_subcommand("predict", "score a dataset with a model");
  auto* verify_cmd =
      app.add_subcommand("verify-bounds", "stress-test displacement bounds");
  auto* kernel_cmd =
      app.add_subcommand("kernel-error", "measure kernel approximation error");
  auto* robust_cmd =
      app.add_subcommand("robust-error", "worst-case error under perturbations");
  for (auto* cmd : {train_cmd, predict_cmd, verify_cmd, kernel_cmd, robust_cmd}) {
    add_common_flags(cmd, ov);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    const json cfg = resolve_config(ov);
    if (train_cmd->parsed()) return run_train(cfg);
    if (predict_cmd->parsed()) return run_predict(cfg);
    if (verify_cmd->parsed()) return run_verify_bounds(cfg);
    if (kernel_cmd->parsed()) return run_kernel_error(cfg);
    if (robust_cmd->parsed()) return run_robust_error(cfg);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const DivergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModelIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
