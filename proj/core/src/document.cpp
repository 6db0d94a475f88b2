#include "cohtomo/document.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include <json.hpp>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

using nlohmann::json;

// --- serialization helpers -------------------------------------------------

json number(double value) {
  if (!std::isfinite(value)) {
    throw DocumentError("cannot serialize a non-finite number");
  }
  return value;
}

json complex_to_json(cplx value) {
  return json::array({number(value.real()), number(value.imag())});
}

json complex_matrix_to_json(const Eigen::MatrixXcd& matrix) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      row.push_back(complex_to_json(matrix(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_to_json(const Eigen::MatrixXd& matrix) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      row.push_back(number(matrix(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json angles_to_json(const EulerAngles& euler) {
  return json::array({number(euler.xi), number(euler.eta), number(euler.zeta)});
}

json plates_to_json(const PlateAngles& plates) {
  return json::array({number(plates.qp1), number(plates.qp2), number(plates.hp)});
}

json setting_to_json(const MeasurementSetting& setting) {
  return json::array({number(setting.theta()), number(setting.phi())});
}

// --- parsing helpers ---------------------------------------------------------

[[noreturn]] void fail(const std::string& message) { throw DocumentError(message); }

const json& require(const json& object, const char* key) {
  if (!object.is_object()) {
    fail("expected an object holding \"" + std::string(key) + "\"");
  }
  const auto it = object.find(key);
  if (it == object.end()) {
    fail("missing field \"" + std::string(key) + "\"");
  }
  return *it;
}

double as_number(const json& value, const char* what) {
  if (!value.is_number()) {
    fail(std::string(what) + " must be a number");
  }
  const double x = value.get<double>();
  if (!std::isfinite(x)) {
    fail(std::string(what) + " must be finite");
  }
  return x;
}

long long as_integer(const json& value, const char* what) {
  if (!value.is_number_integer()) {
    fail(std::string(what) + " must be an integer");
  }
  return value.get<long long>();
}

int as_order(const json& value, int minimum) {
  const long long order = as_integer(value, "order");
  if (order < minimum || order > kMaxOrder) {
    fail("order must lie in [" + std::to_string(minimum) + ", " + std::to_string(kMaxOrder) +
         "], got " + std::to_string(order));
  }
  return static_cast<int>(order);
}

bool as_bool(const json& value, const char* what) {
  if (!value.is_boolean()) {
    fail(std::string(what) + " must be a boolean");
  }
  return value.get<bool>();
}

std::string as_string(const json& value, const char* what) {
  if (!value.is_string()) {
    fail(std::string(what) + " must be a string");
  }
  return value.get<std::string>();
}

cplx as_complex(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 2) {
    fail(std::string(what) + " must be a [re, im] pair");
  }
  return {as_number(value[0], what), as_number(value[1], what)};
}

Eigen::MatrixXcd as_complex_matrix(const json& value, int rows, int cols, const char* what) {
  if (!value.is_array() || static_cast<int>(value.size()) != rows) {
    fail(std::string(what) + " must be an array of " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXcd matrix(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = value[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(std::string(what) + " row " + std::to_string(r) + " must hold " +
           std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      matrix(r, c) = as_complex(row[static_cast<std::size_t>(c)], what);
    }
  }
  return matrix;
}

Eigen::MatrixXd as_real_matrix(const json& value, int rows, int cols, const char* what) {
  if (!value.is_array() || static_cast<int>(value.size()) != rows) {
    fail(std::string(what) + " must be an array of " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd matrix(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = value[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(std::string(what) + " row " + std::to_string(r) + " must hold " +
           std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      matrix(r, c) = as_number(row[static_cast<std::size_t>(c)], what);
    }
  }
  return matrix;
}

std::array<double, 3> as_triple(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 3) {
    fail(std::string(what) + " must be an array of 3 angles");
  }
  return {as_number(value[0], what), as_number(value[1], what), as_number(value[2], what)};
}

MeasurementSetting as_setting(const json& value, const char* what) {
  if (!value.is_array() || value.size() != 2) {
    fail(std::string(what) + " must be a [theta, phi] pair");
  }
  return MeasurementSetting(as_number(value[0], what), as_number(value[1], what));
}

// --- per-kind serializers ----------------------------------------------------

json payload_json(const StateDocument& document) {
  json payload;
  payload["order"] = document.state.order();
  if (document.state.is_mixed()) {
    payload["density"] = complex_matrix_to_json(document.state.density_matrix());
  } else {
    json amplitudes = json::array();
    for (Eigen::Index n = 0; n < document.state.amplitudes().size(); ++n) {
      amplitudes.push_back(complex_to_json(document.state.amplitudes()(n)));
    }
    payload["pure"] = std::move(amplitudes);
  }
  return payload;
}

json payload_json(const PlanDocument& document) {
  const SettingsPlan& plan = document.plan;
  json payload;
  payload["order"] = plan.order;
  payload["parity"] = plan.parity == Parity::even ? "even" : "odd";
  payload["thetas"] = json::array();
  for (double theta : plan.thetas) {
    payload["thetas"].push_back(number(theta));
  }
  payload["phis"] = json::array();
  for (double phi : plan.phis) {
    payload["phis"].push_back(number(phi));
  }
  payload["extra"] = plan.extra ? setting_to_json(*plan.extra) : json(nullptr);
  payload["settings"] = json::array();
  for (const MeasurementSetting& setting : plan.settings) {
    payload["settings"].push_back(setting_to_json(setting));
  }
  return payload;
}

json payload_json(const RecordsDocument& document) {
  json payload;
  payload["order"] = document.order;
  payload["records"] = json::array();
  for (const MeasurementRecord& record : document.records) {
    json entry;
    entry["theta"] = number(record.setting.theta());
    entry["phi"] = number(record.setting.phi());
    entry["value"] = number(record.value);
    entry["std_error"] = record.std_error ? json(number(*record.std_error)) : json(nullptr);
    payload["records"].push_back(std::move(entry));
  }
  if (document.campaign) {
    json campaign;
    campaign["rng_algorithm"] = document.campaign->rng_algorithm;
    campaign["seed"] = document.campaign->seed;
    campaign["shots_per_setting"] = document.campaign->shots_per_setting;
    payload["campaign"] = std::move(campaign);
  } else {
    payload["campaign"] = nullptr;
  }
  return payload;
}

json payload_json(const TensorDocument& document) {
  json payload;
  payload["order"] = document.tensor.order();
  payload["entries"] = complex_matrix_to_json(document.tensor.values());
  payload["groups"] = json::array();
  for (const auto& [m, report] : document.groups) {
    json group;
    group["m"] = m;
    group["condition"] = number(report.condition);
    group["residual"] = number(report.residual);
    payload["groups"].push_back(std::move(group));
  }
  payload["entry_std_error"] =
      document.entry_std_error ? real_matrix_to_json(*document.entry_std_error) : json(nullptr);
  return payload;
}

json payload_json(const DensityDocument& document) {
  const DensityResult& result = document.result;
  json payload;
  payload["order"] = result.state.order();
  payload["matrix"] = complex_matrix_to_json(result.state.density_matrix());
  payload["trace"] = number(result.trace);
  payload["min_eigenvalue"] = number(result.min_eigenvalue);
  payload["warnings"] = result.warnings;
  payload["projected"] = result.projected;
  return payload;
}

json payload_json(const TableDocument& document) {
  json payload;
  payload["rows"] = json::array();
  for (const Table1Row& row : document.rows) {
    json entry;
    entry["theta"] = number(row.computed.theta);
    entry["phi"] = number(row.computed.phi);
    entry["euler"] = angles_to_json(row.computed.euler);
    entry["plates"] = plates_to_json(row.computed.plates);
    entry["reference_euler"] = angles_to_json(row.reference_euler);
    entry["reference_plates"] = plates_to_json(row.reference_plates);
    entry["euler_consistent"] = row.euler_consistent;
    entry["plates_consistent"] = row.plates_consistent;
    payload["rows"].push_back(std::move(entry));
  }
  return payload;
}

json payload_json(const StokesDocument& document) {
  json payload;
  payload["means"] = json::array({number(document.means.s0), number(document.means.s1),
                                  number(document.means.s2), number(document.means.s3)});
  payload["covariance"] = real_matrix_to_json(document.covariance.v);
  return payload;
}

// --- per-kind parsers ----------------------------------------------------------

StateDocument parse_state(const json& payload) {
  const int order = as_order(require(payload, "order"), 0);
  const bool has_pure = payload.contains("pure");
  const bool has_density = payload.contains("density");
  if (has_pure == has_density) {
    fail("a state payload needs exactly one of \"pure\" or \"density\"");
  }
  try {
    if (has_pure) {
      const json& amplitudes = payload.at("pure");
      if (!amplitudes.is_array() || static_cast<int>(amplitudes.size()) != order + 1) {
        fail("pure amplitudes must hold " + std::to_string(order + 1) + " entries");
      }
      Eigen::VectorXcd vector(order + 1);
      for (int n = 0; n <= order; ++n) {
        vector(n) = as_complex(amplitudes[static_cast<std::size_t>(n)], "amplitude");
      }
      return StateDocument{FixedNState::pure(order, vector)};
    }
    return StateDocument{FixedNState::mixed(
        order, as_complex_matrix(payload.at("density"), order + 1, order + 1, "density"))};
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& error) {
    fail(std::string("invalid state payload: ") + error.what());
  }
}

PlanDocument parse_plan(const json& payload) {
  SettingsPlan plan;
  plan.order = as_order(require(payload, "order"), 1);
  const std::string parity = as_string(require(payload, "parity"), "parity");
  if (parity != "even" && parity != "odd") {
    fail("parity must be \"even\" or \"odd\"");
  }
  plan.parity = parity == "even" ? Parity::even : Parity::odd;
  if ((plan.order % 2 == 0) != (plan.parity == Parity::even)) {
    fail("parity tag contradicts the order");
  }

  const json& thetas = require(payload, "thetas");
  const json& phis = require(payload, "phis");
  if (!thetas.is_array() || !phis.is_array()) {
    fail("thetas and phis must be arrays");
  }
  for (const json& theta : thetas) {
    plan.thetas.push_back(as_number(theta, "theta"));
  }
  for (const json& phi : phis) {
    plan.phis.push_back(as_number(phi, "phi"));
  }
  const std::size_t expected_thetas =
      plan.parity == Parity::even ? static_cast<std::size_t>(plan.order + 1)
                                  : static_cast<std::size_t>(plan.order);
  const std::size_t expected_phis =
      plan.parity == Parity::even ? static_cast<std::size_t>(plan.order + 1)
                                  : static_cast<std::size_t>(plan.order + 2);
  if (plan.thetas.size() != expected_thetas || plan.phis.size() != expected_phis) {
    fail("theta/phi list sizes do not match an order-" + std::to_string(plan.order) + " plan");
  }

  const json& extra = require(payload, "extra");
  if (plan.parity == Parity::odd) {
    if (extra.is_null()) {
      fail("an odd-order plan needs its extra setting");
    }
    plan.extra = as_setting(extra, "extra");
  } else if (!extra.is_null()) {
    fail("an even-order plan has no extra setting");
  }

  const json& settings = require(payload, "settings");
  if (!settings.is_array()) {
    fail("settings must be an array");
  }
  for (const json& setting : settings) {
    plan.settings.push_back(as_setting(setting, "setting"));
  }
  const std::size_t expected_settings =
      plan.thetas.size() * plan.phis.size() + (plan.extra ? 1 : 0);
  if (plan.settings.size() != expected_settings) {
    fail("settings list must hold " + std::to_string(expected_settings) + " entries");
  }
  return PlanDocument{std::move(plan)};
}

RecordsDocument parse_records(const json& payload) {
  RecordsDocument document;
  document.order = as_order(require(payload, "order"), 1);
  const json& records = require(payload, "records");
  if (!records.is_array()) {
    fail("records must be an array");
  }
  for (const json& entry : records) {
    MeasurementRecord record{
        MeasurementSetting(as_number(require(entry, "theta"), "theta"),
                           as_number(require(entry, "phi"), "phi")),
        as_number(require(entry, "value"), "value"),
        {}};
    const json& std_error = require(entry, "std_error");
    if (!std_error.is_null()) {
      const double sigma = as_number(std_error, "std_error");
      if (sigma < 0.0) {
        fail("std_error must be nonnegative");
      }
      record.std_error = sigma;
    }
    document.records.push_back(std::move(record));
  }

  const json& campaign = require(payload, "campaign");
  if (!campaign.is_null()) {
    CampaignInfo info;
    info.rng_algorithm = as_string(require(campaign, "rng_algorithm"), "rng_algorithm");
    const json& seed = require(campaign, "seed");
    if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() &&
                                      seed.get<long long>() < 0)) {
      fail("seed must be a nonnegative integer");
    }
    info.seed = seed.get<std::uint64_t>();
    info.shots_per_setting = as_integer(require(campaign, "shots_per_setting"), "shots");
    if (info.shots_per_setting < 1) {
      fail("shots_per_setting must be >= 1");
    }
    document.campaign = std::move(info);
  }
  return document;
}

TensorDocument parse_tensor(const json& payload) {
  const int order = as_order(require(payload, "order"), 0);
  CoherenceTensor tensor(
      order, as_complex_matrix(require(payload, "entries"), order + 1, order + 1, "entries"));

  std::map<int, GroupReport> groups;
  const json& group_list = require(payload, "groups");
  if (!group_list.is_array()) {
    fail("groups must be an array");
  }
  for (const json& group : group_list) {
    const long long m = as_integer(require(group, "m"), "group weight m");
    if (m < 0 || m > kMaxOrder) {
      fail("group weight m out of range");
    }
    GroupReport report{as_number(require(group, "condition"), "condition"),
                       as_number(require(group, "residual"), "residual")};
    if (report.condition < 0.0 || report.residual < 0.0) {
      fail("group diagnostics must be nonnegative");
    }
    if (!groups.emplace(static_cast<int>(m), report).second) {
      fail("duplicate group weight m = " + std::to_string(m));
    }
  }

  std::optional<Eigen::MatrixXd> errors;
  const json& error_matrix = require(payload, "entry_std_error");
  if (!error_matrix.is_null()) {
    errors = as_real_matrix(error_matrix, order + 1, order + 1, "entry_std_error");
    if ((errors->array() < 0.0).any()) {
      fail("entry_std_error values must be nonnegative");
    }
  }
  return TensorDocument{std::move(tensor), std::move(groups), std::move(errors)};
}

DensityDocument parse_density(const json& payload) {
  const int order = as_order(require(payload, "order"), 0);
  Eigen::MatrixXcd matrix =
      as_complex_matrix(require(payload, "matrix"), order + 1, order + 1, "matrix");

  std::vector<std::string> warnings;
  const json& warning_list = require(payload, "warnings");
  if (!warning_list.is_array()) {
    fail("warnings must be an array of strings");
  }
  for (const json& warning : warning_list) {
    warnings.push_back(as_string(warning, "warning"));
  }

  DensityResult result{FixedNState::mixed_unchecked(order, std::move(matrix)),
                       as_number(require(payload, "trace"), "trace"),
                       as_number(require(payload, "min_eigenvalue"), "min_eigenvalue"),
                       std::move(warnings),
                       as_bool(require(payload, "projected"), "projected")};
  return DensityDocument{std::move(result)};
}

TableDocument parse_table(const json& payload) {
  TableDocument document;
  const json& rows = require(payload, "rows");
  if (!rows.is_array()) {
    fail("rows must be an array");
  }
  for (const json& entry : rows) {
    Table1Row row;
    row.computed.theta = as_number(require(entry, "theta"), "theta");
    row.computed.phi = as_number(require(entry, "phi"), "phi");
    const auto euler = as_triple(require(entry, "euler"), "euler");
    row.computed.euler = EulerAngles{euler[0], euler[1], euler[2]};
    const auto plates = as_triple(require(entry, "plates"), "plates");
    row.computed.plates = PlateAngles{plates[0], plates[1], plates[2]};
    const auto reference_euler = as_triple(require(entry, "reference_euler"), "reference_euler");
    row.reference_euler = EulerAngles{reference_euler[0], reference_euler[1], reference_euler[2]};
    const auto reference_plates =
        as_triple(require(entry, "reference_plates"), "reference_plates");
    row.reference_plates = PlateAngles{reference_plates[0], reference_plates[1],
                                       reference_plates[2]};
    row.euler_consistent = as_bool(require(entry, "euler_consistent"), "euler_consistent");
    row.plates_consistent = as_bool(require(entry, "plates_consistent"), "plates_consistent");
    document.rows.push_back(row);
  }
  return document;
}

StokesDocument parse_stokes(const json& payload) {
  const json& means = require(payload, "means");
  if (!means.is_array() || means.size() != 4) {
    fail("means must be an array of 4 numbers");
  }
  StokesDocument document;
  document.means = StokesVector{as_number(means[0], "s0"), as_number(means[1], "s1"),
                                as_number(means[2], "s2"), as_number(means[3], "s3")};
  const Eigen::MatrixXd v = as_real_matrix(require(payload, "covariance"), 4, 4, "covariance");
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    fail("covariance must be symmetric");
  }
  // No positivity requirement: finite-shot estimates of a vanishing variance
  // legitimately dip below zero, and rejecting them would make the emitter's
  // own output unreadable.
  document.covariance.v = v;
  return document;
}

}  // namespace

std::string document_kind(const Document& document) {
  static constexpr const char* kKinds[] = {"state",   "plan",  "records", "tensor",
                                           "density", "table", "stokes"};
  return kKinds[document.payload.index()];
}

std::string serialize_document(const Document& document) {
  json root;
  root["schema_version"] = document.schema_version;
  root["kind"] = document_kind(document);
  root["payload"] = std::visit([](const auto& payload) { return payload_json(payload); },
                               document.payload);
  return root.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& error) {
    fail(std::string("not valid JSON: ") + error.what());
  }
  if (!root.is_object()) {
    fail("a document must be a JSON object");
  }
  const std::string version = as_string(require(root, "schema_version"), "schema_version");
  if (version != kSchemaVersion) {
    fail("unsupported schema_version \"" + version + "\"");
  }
  const std::string kind = as_string(require(root, "kind"), "kind");
  const json& payload = require(root, "payload");
  if (!payload.is_object()) {
    fail("payload must be an object");
  }

  try {
    DocumentPayload parsed = [&]() -> DocumentPayload {
      if (kind == "state") return parse_state(payload);
      if (kind == "plan") return parse_plan(payload);
      if (kind == "records") return parse_records(payload);
      if (kind == "tensor") return parse_tensor(payload);
      if (kind == "density") return parse_density(payload);
      if (kind == "table") return parse_table(payload);
      if (kind == "stokes") return parse_stokes(payload);
      fail("unknown document kind \"" + kind + "\"");
    }();
    return Document{version, std::move(parsed)};
  } catch (const DocumentError&) {
    throw;
  } catch (const json::exception& error) {
    fail(std::string("malformed payload: ") + error.what());
  } catch (const Error& error) {
    fail(std::string("invalid payload: ") + error.what());
  }
}

}  // namespace cohtomo
