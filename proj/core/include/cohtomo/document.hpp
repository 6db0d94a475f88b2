#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cohtomo/fock.hpp"
#include "cohtomo/gadget.hpp"
#include "cohtomo/recipe.hpp"
#include "cohtomo/tomography.hpp"

namespace cohtomo {

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

template <typename A, typename B>
bool same_matrix(const A& a, const B& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace detail

/// Payloads of the self-describing artifact files.  Every payload
/// serializes to UTF-8 JSON with complex numbers as [re, im] pairs and
/// angles in radians; serialize/parse round trips are bit-exact.

struct StateDocument {
  FixedNState state;

  friend bool operator==(const StateDocument& a, const StateDocument& b) {
    if (a.state.order() != b.state.order() || a.state.is_mixed() != b.state.is_mixed()) {
      return false;
    }
    if (a.state.is_mixed()) {
      return detail::same_matrix(a.state.density_matrix(), b.state.density_matrix());
    }
    return detail::same_matrix(a.state.amplitudes(), b.state.amplitudes());
  }
};

struct PlanDocument {
  SettingsPlan plan;

  friend bool operator==(const PlanDocument&, const PlanDocument&) = default;
};

/// Provenance of simulated records; `rng_algorithm` names the generator so
/// campaigns stay reproducible across versions.
struct CampaignInfo {
  std::string rng_algorithm;
  std::uint64_t seed = 0;
  std::int64_t shots_per_setting = 0;

  friend bool operator==(const CampaignInfo&, const CampaignInfo&) = default;
};

struct RecordsDocument {
  int order = 0;
  std::vector<MeasurementRecord> records;
  std::optional<CampaignInfo> campaign;

  friend bool operator==(const RecordsDocument&, const RecordsDocument&) = default;
};

struct TensorDocument {
  CoherenceTensor tensor;
  /// Solver diagnostics, present when the tensor came from a reconstruction.
  std::map<int, GroupReport> groups;
  std::optional<Eigen::MatrixXd> entry_std_error;

  friend bool operator==(const TensorDocument& a, const TensorDocument& b) {
    if (!(a.tensor == b.tensor) || a.groups != b.groups ||
        a.entry_std_error.has_value() != b.entry_std_error.has_value()) {
      return false;
    }
    return !a.entry_std_error || detail::same_matrix(*a.entry_std_error, *b.entry_std_error);
  }
};

struct DensityDocument {
  DensityResult result;

  friend bool operator==(const DensityDocument& a, const DensityDocument& b) {
    return StateDocument{a.result.state} == StateDocument{b.result.state} &&
           a.result.trace == b.result.trace &&
           a.result.min_eigenvalue == b.result.min_eigenvalue &&
           a.result.warnings == b.result.warnings && a.result.projected == b.result.projected;
  }
};

struct TableDocument {
  std::vector<Table1Row> rows;

  friend bool operator==(const TableDocument&, const TableDocument&) = default;
};

struct StokesDocument {
  StokesVector means;
  StokesCovariance covariance;

  friend bool operator==(const StokesDocument& a, const StokesDocument& b) {
    return a.means.s0 == b.means.s0 && a.means.s1 == b.means.s1 && a.means.s2 == b.means.s2 &&
           a.means.s3 == b.means.s3 && detail::same_matrix(a.covariance.v, b.covariance.v);
  }
};

using DocumentPayload = std::variant<StateDocument, PlanDocument, RecordsDocument,
                                     TensorDocument, DensityDocument, TableDocument,
                                     StokesDocument>;

struct Document {
  std::string schema_version = kSchemaVersion;
  DocumentPayload payload;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Kind tag of the payload: "state", "plan", "records", "tensor",
/// "density", "table" or "stokes".
std::string document_kind(const Document& document);

/// Pretty-printed JSON ending in a newline.  Numbers are written with
/// shortest round-trip precision.  Throws DocumentError when a value is not
/// finite.
std::string serialize_document(const Document& document);

/// Parses and validates a document.  Any malformed input (bad JSON, wrong
/// kind tag, missing fields, inconsistent shapes, non-finite or unphysical
/// values) throws DocumentError.
Document parse_document(const std::string& text);

}  // namespace cohtomo
