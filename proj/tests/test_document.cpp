#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>

#include <cohtomo/document.hpp>
#include <cohtomo/errors.hpp>
#include <cohtomo/sampler.hpp>

#include "oracles.hpp"

using namespace cohtomo;

namespace {

Document wrap(DocumentPayload payload) {
  return Document{kSchemaVersion, std::move(payload)};
}

// Serialize, parse back, and require equality plus idempotent re-serialization.
void check_round_trip(const Document& doc, const std::string& kind) {
  CHECK(document_kind(doc) == kind);
  const std::string text = serialize_document(doc);
  CHECK(text.back() == '\n');
  const Document parsed = parse_document(text);
  CHECK(parsed == doc);
  CHECK(serialize_document(parsed) == text);
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

FixedNState noon2() {
  Eigen::VectorXcd amps(3);
  amps << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  return FixedNState::pure(2, amps);
}

}  // namespace

TEST_SUITE("document") {

TEST_CASE("state documents round trip bit-exactly") {
  check_round_trip(wrap(StateDocument{noon2()}), "state");

  Eigen::MatrixXcd rho(2, 2);
  rho << cplx(0.25, 0.0), cplx(0.1, 0.2), cplx(0.1, -0.2), cplx(0.75, 0.0);
  check_round_trip(wrap(StateDocument{FixedNState::mixed(1, rho)}), "state");

  std::mt19937_64 rng(5150);
  for (int order = 1; order <= 5; ++order) {
    check_round_trip(wrap(StateDocument{oracles::random_mixed(order, rng)}), "state");
    check_round_trip(wrap(StateDocument{oracles::random_pure(order, rng)}), "state");
  }
}

TEST_CASE("plan documents round trip for both parities") {
  check_round_trip(wrap(PlanDocument{settings_plan(2)}), "plan");
  check_round_trip(wrap(PlanDocument{settings_plan(3)}), "plan");
  check_round_trip(wrap(PlanDocument{settings_plan(12)}), "plan");
}

TEST_CASE("records documents round trip with and without campaign info") {
  const SettingsPlan plan = settings_plan(2);
  const auto exact = predicted_records(coherence_tensor(noon2(), 2), plan);
  check_round_trip(wrap(RecordsDocument{2, exact, {}}), "records");

  auto sampled = run_campaign(noon2(), plan, 250, 8);
  check_round_trip(
      wrap(RecordsDocument{2, sampled, CampaignInfo{kRngAlgorithm, 8, 250}}), "records");
}

TEST_CASE("tensor documents round trip with diagnostics") {
  const SettingsPlan plan = settings_plan(2);
  const Reconstruction rec =
      reconstruct(run_campaign(noon2(), plan, 300, 21), 2);
  check_round_trip(wrap(TensorDocument{rec.tensor, rec.groups, rec.entry_std_error}),
                   "tensor");
  check_round_trip(wrap(TensorDocument{coherence_tensor(noon2(), 2), {}, {}}), "tensor");
}

TEST_CASE("density documents round trip including warnings") {
  check_round_trip(wrap(DensityDocument{density_from_coherences(coherence_tensor(noon2(), 2))}),
                   "density");

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.2, 0.0, 0.0, -0.2;
  const CoherenceTensor tensor =
      coherences_from_density(FixedNState::mixed_unchecked(1, indefinite));
  const DensityResult projected = density_from_coherences(tensor, true);
  REQUIRE_FALSE(projected.warnings.empty());
  check_round_trip(wrap(DensityDocument{projected}), "density");
}

TEST_CASE("table documents round trip") {
  check_round_trip(wrap(TableDocument{table1()}), "table");
}

TEST_CASE("stokes documents round trip") {
  Eigen::VectorXcd amps(2);
  amps << cplx(0.0, 1.0 / std::sqrt(2.0)), cplx(1.0 / std::sqrt(2.0), 0.0);
  const FixedNState state = FixedNState::pure(1, amps);
  const StokesVector means = stokes_means(coherence_tensor(state, 1));
  const StokesCovariance cov =
      stokes_variances(coherence_tensor(state, 1), coherence_tensor(state, 2));
  check_round_trip(wrap(StokesDocument{means, cov}), "stokes");
}

TEST_CASE("fractions with no short decimal form survive the round trip") {
  CoherenceTensor tensor(1);
  tensor.set(0, 0, cplx(1.0 / 3.0, 0.0));
  tensor.set(0, 1, cplx(std::sqrt(2.0), -1.0 / 7.0));
  tensor.set(1, 0, cplx(std::sqrt(2.0), 1.0 / 7.0));
  tensor.set(1, 1, cplx(2.0 / 3.0, 0.0));
  const Document doc = wrap(TensorDocument{tensor, {}, {}});
  const Document parsed = parse_document(serialize_document(doc));
  const auto& back = std::get<TensorDocument>(parsed.payload).tensor;
  CHECK(back.at(0, 0).real() == 1.0 / 3.0);
  CHECK(back.at(0, 1).imag() == -1.0 / 7.0);
  CHECK(back.at(0, 1).real() == std::sqrt(2.0));
}

TEST_CASE("serialization rejects non-finite values") {
  CoherenceTensor tensor(1);
  tensor.set(0, 0, cplx(std::numeric_limits<double>::infinity(), 0.0));
  CHECK_THROWS_AS(serialize_document(wrap(TensorDocument{tensor, {}, {}})), DocumentError);

  CoherenceTensor with_nan(1);
  with_nan.set(1, 1, cplx(std::numeric_limits<double>::quiet_NaN(), 0.0));
  CHECK_THROWS_AS(serialize_document(wrap(TensorDocument{with_nan, {}, {}})), DocumentError);
}

TEST_CASE("malformed or mistyped documents are rejected") {
  CHECK_THROWS_AS(parse_document("{"), DocumentError);
  CHECK_THROWS_AS(parse_document("[1, 2, 3]\n"), DocumentError);

  const std::string valid = serialize_document(wrap(PlanDocument{settings_plan(1)}));
  CHECK_THROWS_AS(parse_document(replaced(valid, "\"schema_version\": \"1\"",
                                          "\"schema_version\": \"0\"")),
                  DocumentError);
  CHECK_THROWS_AS(parse_document(replaced(valid, "\"kind\": \"plan\"", "\"kind\": \"plans\"")),
                  DocumentError);

  // an order inconsistent with the stored arrays
  CHECK_THROWS_AS(parse_document(replaced(valid, "\"order\": 1", "\"order\": 2")),
                  DocumentError);
}

TEST_CASE("state payloads are validated on parse") {
  CHECK_THROWS_AS(
      parse_document(R"({"schema_version":"1","kind":"state",)"
                     R"("payload":{"order":1,"pure":[[1.0,0.0]]}})"),
      DocumentError);
  CHECK_THROWS_AS(
      parse_document(R"({"schema_version":"1","kind":"state",)"
                     R"("payload":{"order":1,"pure":[[0.6,0.0],[0.6,0.0]]}})"),
      DocumentError);
  CHECK_THROWS_AS(
      parse_document(
          R"({"schema_version":"1","kind":"state","payload":{"order":1,)"
          R"("density":[[[0.5,0.0],[0.1,0.0]],[[0.3,0.0],[0.5,0.0]]]}})"),
      DocumentError);
  CHECK_THROWS_AS(
      parse_document(
          R"({"schema_version":"1","kind":"state","payload":{"order":1,)"
          R"("pure":[[1.0,0.0],[0.0,0.0]],)"
          R"("density":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}})"),
      DocumentError);
  CHECK_THROWS_AS(
      parse_document(R"({"schema_version":"1","kind":"state","payload":{"order":1}})"),
      DocumentError);
}

TEST_CASE("records payloads are validated on parse") {
  const std::string base =
      R"({"schema_version":"1","kind":"records","payload":{"order":1,"campaign":null,)"
      R"("records":[{"theta":0.5,"phi":0.25,"value":1.5,"std_error":STD}]}})";
  CHECK_NOTHROW(parse_document(replaced(base, "STD", "0.125")));
  CHECK_NOTHROW(parse_document(replaced(base, "STD", "null")));
  CHECK_THROWS_AS(parse_document(replaced(base, "STD", "-0.125")), DocumentError);

  const std::string campaign =
      R"({"schema_version":"1","kind":"records","payload":{"order":1,)"
      R"("campaign":{"rng_algorithm":"splitmix64","seed":SEED,"shots_per_setting":SHOTS},)"
      R"("records":[{"theta":0.5,"phi":0.25,"value":1.5,"std_error":null}]}})";
  CHECK_NOTHROW(parse_document(replaced(replaced(campaign, "SEED", "7"), "SHOTS", "100")));
  CHECK_THROWS_AS(parse_document(replaced(replaced(campaign, "SEED", "-7"), "SHOTS", "100")),
                  DocumentError);
  CHECK_THROWS_AS(parse_document(replaced(replaced(campaign, "SEED", "7"), "SHOTS", "0")),
                  DocumentError);
}

TEST_CASE("tensor payloads are validated on parse") {
  const std::string base =
      R"({"schema_version":"1","kind":"tensor","payload":{"order":1,)"
      R"("entries":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]],)"
      R"("groups":[{"m":0,"condition":1.5,"residual":RES}],"entry_std_error":ERR}})";
  CHECK_NOTHROW(parse_document(replaced(replaced(base, "RES", "0.0"), "ERR", "null")));
  CHECK_THROWS_AS(parse_document(replaced(replaced(base, "RES", "-1.0"), "ERR", "null")),
                  DocumentError);
  CHECK_THROWS_AS(
      parse_document(replaced(replaced(base, "RES", "0.0"), "ERR", "[[0.1,-0.1],[0.1,0.1]]")),
      DocumentError);
  CHECK_NOTHROW(
      parse_document(replaced(replaced(base, "RES", "0.0"), "ERR", "[[0.1,0.1],[0.1,0.1]]")));
}

TEST_CASE("stokes payloads are validated on parse") {
  const std::string base =
      R"({"schema_version":"1","kind":"stokes","payload":{"means":[1.0,0.5,0.0,0.0],)"
      R"("covariance":[[0.1,A,0.0,0.0],[B,0.2,0.0,0.0],[0.0,0.0,0.3,0.0],[0.0,0.0,0.0,0.4]]}})";
  CHECK_NOTHROW(parse_document(replaced(replaced(base, "A", "0.05"), "B", "0.05")));
  CHECK_THROWS_AS(parse_document(replaced(replaced(base, "A", "0.05"), "B", "0.06")),
                  DocumentError);
}

}
