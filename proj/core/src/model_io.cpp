#include "rfsvm/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rfsvm/errors.hpp"

namespace rfsvm {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const json& a, const char* what) {
  if (!a.is_array()) throw ModelIoError(std::string(what) + ": expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (const auto& e : a) {
    if (!e.is_number()) {
      throw ModelIoError(std::string(what) + ": expected numbers");
    }
    v[i++] = e.get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& a, const char* what) {
  if (!a.is_array() || a.empty()) {
    throw ModelIoError(std::string(what) + ": expected a nonempty array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(a.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd m;
  Eigen::Index i = 0;
  for (const auto& row : a) {
    const Eigen::VectorXd r = vector_from_json(row, what);
    if (cols < 0) {
      cols = r.size();
      m.resize(rows, cols);
    } else if (r.size() != cols) {
      throw ModelIoError(std::string(what) + ": ragged rows");
    }
    m.row(i++) = r.transpose();
  }
  return m;
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const char* where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw ModelIoError(std::string(where) + ": unknown field '" + key +
                         "' (written by a newer format?)");
    }
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ModelIoError(std::string(where) + ": missing field '" + key + "'");
  }
  return *it;
}

json map_to_json(const FeatureMap& map) {
  json j;
  if (const auto* id = std::get_if<IdentityMap>(&map)) {
    j["kind"] = "identity";
    j["n"] = static_cast<std::int64_t>(id->dim);
  } else if (const auto* rff = std::get_if<RffMap>(&map)) {
    j["kind"] = "rff";
    j["variant"] = rff->variant() == RffVariant::paired ? "paired" : "offset";
    j["sigma"] = rff->sigma();
    j["output_dim"] = static_cast<std::int64_t>(rff->output_dim());
    j["seed"] = rff->seed();
    j["omegas"] = matrix_to_json(rff->omegas());
    if (rff->variant() == RffVariant::offset) {
      j["offsets"] = vector_to_json(rff->offsets());
    }
  } else {
    const auto& nys = std::get<NystromMap>(map);
    j["kind"] = "nystrom";
    j["sigma"] = nys.sigma();
    j["rank_tol"] = nys.rank_tol();
    json lms = json::array();
    for (const auto& lm : nys.landmarks()) lms.push_back(vector_to_json(lm));
    j["landmarks"] = std::move(lms);
    j["eigvecs"] = matrix_to_json(nys.eigvecs());
    j["eigvals"] = vector_to_json(nys.eigvals());
  }
  return j;
}

FeatureMap map_from_json(const json& j) {
  if (!j.is_object()) throw ModelIoError("feature_map: expected an object");
  const json& kind = require(j, "kind", "feature_map");
  if (!kind.is_string()) throw ModelIoError("feature_map: kind must be a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "identity") {
      check_keys(j, {"kind", "n"}, "feature_map");
      return IdentityMap{require(j, "n", "feature_map").get<Eigen::Index>()};
    }
    if (k == "rff") {
      check_keys(j, {"kind", "variant", "sigma", "output_dim", "seed", "omegas",
                     "offsets"},
                 "feature_map");
      const std::string vs = require(j, "variant", "feature_map").get<std::string>();
      if (vs != "paired" && vs != "offset") {
        throw ModelIoError("feature_map: unknown variant '" + vs + "'");
      }
      const RffVariant variant =
          vs == "paired" ? RffVariant::paired : RffVariant::offset;
      Eigen::VectorXd offsets(0);
      if (variant == RffVariant::offset) {
        offsets = vector_from_json(require(j, "offsets", "feature_map"), "offsets");
      }
      return RffMap(matrix_from_json(require(j, "omegas", "feature_map"), "omegas"),
                    std::move(offsets),
                    require(j, "sigma", "feature_map").get<double>(),
                    require(j, "output_dim", "feature_map").get<Eigen::Index>(),
                    variant,
                    require(j, "seed", "feature_map").get<std::uint64_t>());
    }
    if (k == "nystrom") {
      check_keys(j, {"kind", "sigma", "rank_tol", "landmarks", "eigvecs", "eigvals"},
                 "feature_map");
      const json& lj = require(j, "landmarks", "feature_map");
      if (!lj.is_array() || lj.empty()) {
        throw ModelIoError("feature_map: landmarks must be a nonempty array");
      }
      std::vector<Eigen::VectorXd> landmarks;
      landmarks.reserve(lj.size());
      for (const auto& lm : lj) {
        landmarks.push_back(vector_from_json(lm, "landmarks"));
      }
      return NystromMap(
          std::move(landmarks), require(j, "sigma", "feature_map").get<double>(),
          require(j, "rank_tol", "feature_map").get<double>(),
          matrix_from_json(require(j, "eigvecs", "feature_map"), "eigvecs"),
          vector_from_json(require(j, "eigvals", "feature_map"), "eigvals"));
    }
  } catch (const std::invalid_argument& e) {
    throw ModelIoError(std::string("feature_map: ") + e.what());
  }
  throw ModelIoError("feature_map: unknown kind '" + k + "'");
}

}  // namespace

std::string model_to_json(const ModelFile& model) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["feature_map"] = map_to_json(model.classifier.map);
  j["zeta"] = vector_to_json(model.classifier.zeta);
  j["bias"] = model.classifier.bias;
  j["training"] = {{"lambda", model.meta.lambda},
                   {"method", model.meta.method},
                   {"epochs", model.meta.epochs},
                   {"seed", model.meta.seed}};
  return j.dump(2);
}

ModelFile model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ModelIoError(std::string("corrupt model file: ") + e.what());
  }
  try {
    if (!j.is_object()) throw ModelIoError("model file: expected a JSON object");
    check_keys(j, {"format_version", "feature_map", "zeta", "bias", "training"},
               "model file");
    const json& ver = require(j, "format_version", "model file");
    if (!ver.is_number_integer() || ver.get<int>() != kModelFormatVersion) {
      throw ModelIoError("model file: unsupported format_version " + ver.dump());
    }
    ModelFile out;
    out.classifier.map = map_from_json(require(j, "feature_map", "model file"));
    out.classifier.zeta = vector_from_json(require(j, "zeta", "model file"), "zeta");
    const json& bias = require(j, "bias", "model file");
    if (!bias.is_number()) throw ModelIoError("model file: bias must be a number");
    out.classifier.bias = bias.get<double>();
    const json& tr = require(j, "training", "model file");
    if (!tr.is_object()) throw ModelIoError("model file: training must be an object");
    check_keys(tr, {"lambda", "method", "epochs", "seed"}, "training");
    out.meta.lambda = require(tr, "lambda", "training").get<double>();
    out.meta.method = require(tr, "method", "training").get<std::string>();
    out.meta.epochs = require(tr, "epochs", "training").get<int>();
    out.meta.seed = require(tr, "seed", "training").get<std::uint64_t>();
    if (out.classifier.zeta.size() != output_dim(out.classifier.map)) {
      throw ModelIoError("model file: zeta length does not match the feature map");
    }
    return out;
  } catch (const json::exception& e) {
    throw ModelIoError(std::string("corrupt model file: ") + e.what());
  }
}

void save_model(const std::string& path, const ModelFile& model) {
  std::ofstream out(path);
  if (!out) throw ModelIoError("cannot open '" + path + "' for writing");
  out << model_to_json(model) << '\n';
  out.flush();
  if (!out) throw ModelIoError("failed writing '" + path + "'");
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelIoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace rfsvm
