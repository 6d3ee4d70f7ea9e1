// Copyright 2026 The bnscore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bnscore/json_io.hpp"

#include <algorithm>

#include <json.hpp>

#include "bnscore/error.hpp"

namespace bnscore {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text) {
  Json value = Json::parse(text, nullptr, false);
  require(!value.is_discarded(), ErrorKind::schema, "invalid JSON");
  return value;
}

std::vector<std::string> names_field(const Json& value) {
  require(value.contains("names") && value["names"].is_array(), ErrorKind::schema,
          "expected a \"names\" array");
  std::vector<std::string> names;
  for (const auto& item : value["names"]) {
    require(item.is_string(), ErrorKind::schema, "names must be strings");
    names.push_back(item.get<std::string>());
  }
  require(!names.empty(), ErrorKind::schema, "names must be non-empty");
  return names;
}

int name_index(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  require(it != names.end(), ErrorKind::schema, "unknown variable name: " + name);
  return static_cast<int>(it - names.begin());
}

std::vector<Arc> arcs_field(const Json& value, const std::vector<std::string>& names) {
  require(value.contains("arcs") && value["arcs"].is_array(), ErrorKind::schema,
          "expected an \"arcs\" array");
  std::vector<Arc> arcs;
  for (const auto& item : value["arcs"]) {
    require(item.is_array() && item.size() == 2 && item[0].is_string() && item[1].is_string(),
            ErrorKind::schema, "arcs must be [from, to] name pairs");
    arcs.push_back({name_index(names, item[0].get<std::string>()),
                    name_index(names, item[1].get<std::string>())});
  }
  return arcs;
}

std::vector<double> double_array(const Json& value, const std::string& field) {
  require(value.contains(field) && value[field].is_array(), ErrorKind::schema,
          "expected a \"" + field + "\" array");
  std::vector<double> out;
  for (const auto& item : value[field]) {
    require(item.is_number(), ErrorKind::schema, field + " entries must be numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

double double_field(const Json& value, const std::string& field) {
  require(value.contains(field) && value[field].is_number(), ErrorKind::schema,
          "expected a numeric \"" + field + "\"");
  return value[field].get<double>();
}

std::vector<int> int_array(const Json& value, const std::string& field) {
  require(value.contains(field) && value[field].is_array(), ErrorKind::schema,
          "expected a \"" + field + "\" array");
  std::vector<int> out;
  for (const auto& item : value[field]) {
    require(item.is_number_integer(), ErrorKind::schema, field + " entries must be integers");
    out.push_back(item.get<int>());
  }
  return out;
}

Matrix matrix_field(const Json& value, const std::string& field) {
  require(value.contains(field) && value[field].is_array(), ErrorKind::schema,
          "expected a \"" + field + "\" matrix");
  const auto& rows = value[field];
  const std::size_t n = rows.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    require(rows[i].is_array() && rows[i].size() == n, ErrorKind::schema,
            field + " must be a square array of arrays");
    for (std::size_t j = 0; j < n; ++j) {
      require(rows[i][j].is_number(), ErrorKind::schema, field + " entries must be numbers");
      out(i, j) = rows[i][j].get<double>();
    }
  }
  return out;
}

Json dag_to_value(const Dag& dag) {
  Json out;
  out["names"] = dag.names();
  Json arcs = Json::array();
  for (const Arc& arc : dag.arcs()) {
    arcs.push_back({dag.names()[static_cast<std::size_t>(arc.from)],
                    dag.names()[static_cast<std::size_t>(arc.to)]});
  }
  out["arcs"] = std::move(arcs);
  return out;
}

}  // namespace

std::string dag_to_json(const Dag& dag) { return dag_to_value(dag).dump(); }

Dag dag_from_json(const std::string& text) {
  const Json value = parse(text);
  const auto names = names_field(value);
  const auto arcs = arcs_field(value, names);
  return Dag(names, arcs);
}

std::string prior_to_json(const NamedDiscretePrior& prior) {
  Json out;
  out["model"] = "discrete";
  out["names"] = prior.names;
  out["cardinalities"] = prior.prior.scheme().cardinalities();
  out["alpha"] = prior.prior.alpha();
  out["joint"] = prior.prior.joint().table();
  return out.dump();
}

std::string prior_to_json(const NamedGaussianPrior& prior) {
  Json out;
  out["model"] = "gaussian";
  out["names"] = prior.names;
  out["mu0"] = prior.prior.mu0();
  out["a_mu"] = prior.prior.a_mu();
  out["a_w"] = prior.prior.a_w();
  Json t0 = Json::array();
  const Matrix& m = prior.prior.t0();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    t0.push_back(std::move(row));
  }
  out["t0"] = std::move(t0);
  return out.dump();
}

NamedScoringPrior prior_from_json(const std::string& text) {
  const Json value = parse(text);
  require(value.contains("model") && value["model"].is_string(), ErrorKind::schema,
          "scoring prior needs a \"model\" tag");
  const auto model = value["model"].get<std::string>();
  const auto names = names_field(value);
  if (model == "discrete") {
    DiscreteScheme scheme(int_array(value, "cardinalities"));
    require(scheme.size() == static_cast<int>(names.size()), ErrorKind::schema,
            "cardinalities must match the name count");
    JointDiscreteParams joint(std::move(scheme), double_array(value, "joint"));
    return NamedDiscretePrior{names,
                              DirichletJointPrior(double_field(value, "alpha"), std::move(joint))};
  }
  if (model == "gaussian") {
    auto mu0 = double_array(value, "mu0");
    require(mu0.size() == names.size(), ErrorKind::schema, "mu0 must match the name count");
    Matrix t0 = matrix_field(value, "t0");
    require(t0.rows() == names.size(), ErrorKind::schema, "t0 must match the name count");
    return NamedGaussianPrior{
        names, NormalWishartPrior(std::move(mu0), double_field(value, "a_mu"), std::move(t0),
                                  double_field(value, "a_w"))};
  }
  throw Error(ErrorKind::schema, "unknown model tag: " + model);
}

PriorNetwork network_from_json(const std::string& text) {
  const Json value = parse(text);
  const auto names = names_field(value);
  Dag dag(names, arcs_field(value, names));
  if (value.contains("cpts")) {
    DiscreteScheme scheme(int_array(value, "cardinalities"));
    require(scheme.size() == dag.size(), ErrorKind::schema,
            "cardinalities must match the name count");
    require(value["cpts"].is_array() && value["cpts"].size() == names.size(),
            ErrorKind::schema, "one CPT per node required");
    std::vector<std::vector<double>> cpts;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& node_cpt = value["cpts"][i];
      require(node_cpt.is_array(), ErrorKind::schema, "CPTs must be arrays of rows");
      std::vector<double> flat;
      for (const auto& row : node_cpt) {
        require(row.is_array(), ErrorKind::schema, "CPT rows must be arrays");
        for (const auto& item : row) {
          require(item.is_number(), ErrorKind::schema, "CPT entries must be numbers");
          flat.push_back(item.get<double>());
        }
      }
      cpts.push_back(std::move(flat));
    }
    return DiscretePriorNetwork(std::move(dag), std::move(scheme), std::move(cpts));
  }
  if (value.contains("variances")) {
    auto intercepts = double_array(value, "intercepts");
    auto variances = double_array(value, "variances");
    require(value.contains("coefficients") && value["coefficients"].is_array() &&
                value["coefficients"].size() == names.size(),
            ErrorKind::schema, "one coefficient object per node required");
    std::vector<std::vector<double>> coefficients(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& object = value["coefficients"][i];
      require(object.is_object(), ErrorKind::schema,
              "coefficients must be objects keyed by parent name");
      const auto& parents = dag.parents(static_cast<int>(i));
      std::vector<double> aligned(parents.size(), 0.0);
      std::size_t matched = 0;
      for (const auto& [key, item] : object.items()) {
        const int parent = name_index(names, key);
        const auto it = std::find(parents.begin(), parents.end(), parent);
        require(it != parents.end(), ErrorKind::schema,
                key + " is not a parent of " + names[i]);
        require(item.is_number(), ErrorKind::schema, "coefficients must be numbers");
        aligned[static_cast<std::size_t>(it - parents.begin())] = item.get<double>();
        ++matched;
      }
      require(matched == parents.size(), ErrorKind::schema,
              "coefficients for " + names[i] + " must cover every parent");
      coefficients[i] = std::move(aligned);
    }
    return GaussianPriorNetwork(std::move(dag), std::move(intercepts), std::move(coefficients),
                                std::move(variances));
  }
  throw Error(ErrorKind::schema,
              "prior network must carry either \"cpts\" or \"variances\"");
}

}  // namespace bnscore
