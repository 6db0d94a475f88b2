#include "cli_app.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include <cohtomo/document.hpp>
#include <cohtomo/errors.hpp>
#include <cohtomo/expansion.hpp>
#include <cohtomo/fock.hpp>
#include <cohtomo/gadget.hpp>
#include <cohtomo/recipe.hpp>
#include <cohtomo/sampler.hpp>
#include <cohtomo/tomography.hpp>

namespace cohtomo {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw InputError("cannot open \"" + path + "\" for reading");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) {
    throw InputError("cannot write \"" + path + "\"");
  }
}

Document load_document(const std::string& path, const std::string& expected_kind) {
  Document document = parse_document(read_input(path));
  if (document_kind(document) != expected_kind) {
    throw InputError("\"" + path + "\" holds a " + document_kind(document) +
                     " document; expected " + expected_kind);
  }
  return document;
}

double to_radians(double angle, bool degrees) {
  return degrees ? angle * std::numbers::pi / 180.0 : angle;
}

MeasurementSetting parse_setting(const std::string& text, bool degrees) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw InputError("--setting expects \"theta,phi\", got \"" + text + "\"");
  }
  try {
    std::size_t used = 0;
    const double theta = std::stod(text.substr(0, comma), &used);
    if (used != comma) {
      throw InputError("");
    }
    const std::string rest = text.substr(comma + 1);
    const double phi = std::stod(rest, &used);
    if (used != rest.size()) {
      throw InputError("");
    }
    return MeasurementSetting(to_radians(theta, degrees), to_radians(phi, degrees));
  } catch (const RangeError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("--setting expects \"theta,phi\", got \"" + text + "\"");
  }
}

std::vector<MeasurementRecord> load_records(const std::string& path, int expected_order) {
  const Document document = load_document(path, "records");
  const auto& payload = std::get<RecordsDocument>(document.payload);
  if (expected_order != 0 && payload.order != expected_order) {
    throw InputError("\"" + path + "\" holds order-" + std::to_string(payload.order) +
                     " records; expected order " + std::to_string(expected_order));
  }
  return payload.records;
}

std::string format_table(const std::vector<Table1Row>& rows) {
  std::ostringstream text;
  text << std::fixed << std::setprecision(4);
  text << " theta    phi   |     xi    eta   zeta |   qwp1   qwp2    hwp | euler  plates\n";
  for (const Table1Row& row : rows) {
    text << std::setw(6) << row.computed.theta << ' ' << std::setw(6) << row.computed.phi
         << "  | " << std::setw(6) << row.computed.euler.xi << ' ' << std::setw(6)
         << row.computed.euler.eta << ' ' << std::setw(6) << row.computed.euler.zeta << " | "
         << std::setw(6) << row.computed.plates.qp1 << ' ' << std::setw(6)
         << row.computed.plates.qp2 << ' ' << std::setw(6) << row.computed.plates.hp << " | "
         << (row.euler_consistent ? "   ok" : " DIFF") << "  "
         << (row.plates_consistent ? "    ok" : "  DIFF") << '\n';
  }
  return text.str();
}

struct PlanOptions {
  int order = 0;
  std::string out = "-";
};

struct PredictOptions {
  std::string state = "-";
  std::string setting;
  bool degrees = false;
  std::string out = "-";
};

struct CampaignOptions {
  std::string state = "-";
  int order = 0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct ReconstructOptions {
  std::string records = "-";
  int order = 0;
  std::string out = "-";
};

struct TomographyOptions {
  std::string records = "-";
  int order = 0;
  bool project_psd = false;
  std::string out = "-";
};

struct PlatesOptions {
  double theta = 0.0;
  double phi = 0.0;
  bool degrees = false;
  std::string out = "-";
};

struct TableOptions {
  bool json = false;
  std::string out = "-";
};

struct StokesOptions {
  std::string records1 = "-";
  std::string records2 = "-";
  std::string out = "-";
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-mode coherence measurement planning, reconstruction and tomography"};
  app.require_subcommand(1);

  PlanOptions plan_options;
  CLI::App* plan_cmd = app.add_subcommand("plan", "Emit the measurement plan for an order");
  plan_cmd->add_option("--order", plan_options.order, "Coherence order N")
      ->required()
      ->check(CLI::Range(1, static_cast<int>(kMaxOrder)));
  plan_cmd->add_option("--out", plan_options.out, "Output path (- for stdout)");

  PredictOptions predict_options;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Exact intensity moment of a state at one setting");
  predict_cmd->add_option("--state", predict_options.state, "State document (- for stdin)");
  predict_cmd->add_option("--setting", predict_options.setting, "Gadget angles theta,phi")
      ->required();
  predict_cmd->add_flag("--degrees", predict_options.degrees, "Interpret angles as degrees");
  predict_cmd->add_option("--out", predict_options.out, "Output path (- for stdout)");

  CampaignOptions campaign_options;
  CLI::App* campaign_cmd =
      app.add_subcommand("campaign", "Simulate a finite-shot measurement campaign");
  campaign_cmd->add_option("--state", campaign_options.state, "State document (- for stdin)");
  campaign_cmd->add_option("--order", campaign_options.order, "Coherence order N")
      ->required()
      ->check(CLI::Range(1, static_cast<int>(kMaxOrder)));
  campaign_cmd->add_option("--shots", campaign_options.shots, "Shots per setting")
      ->required()
      ->check(CLI::PositiveNumber);
  campaign_cmd->add_option("--seed", campaign_options.seed, "RNG seed");
  campaign_cmd->add_option("--out", campaign_options.out, "Output path (- for stdout)");

  ReconstructOptions reconstruct_options;
  CLI::App* reconstruct_cmd =
      app.add_subcommand("reconstruct", "Recover the coherence tensor from records");
  reconstruct_cmd->add_option("--records", reconstruct_options.records,
                              "Records document (- for stdin)");
  reconstruct_cmd->add_option("--order", reconstruct_options.order,
                              "Coherence order N (defaults to the document's)")
      ->check(CLI::Range(1, static_cast<int>(kMaxOrder)));
  reconstruct_cmd->add_option("--out", reconstruct_options.out, "Output path (- for stdout)");

  TomographyOptions tomography_options;
  CLI::App* tomography_cmd =
      app.add_subcommand("tomography", "Recover the density matrix from records");
  tomography_cmd->add_option("--records", tomography_options.records,
                             "Records document (- for stdin)");
  tomography_cmd->add_option("--order", tomography_options.order,
                             "Photon number N (defaults to the document's)")
      ->check(CLI::Range(1, static_cast<int>(kMaxOrder)));
  tomography_cmd->add_flag("--project-psd", tomography_options.project_psd,
                           "Clip negative eigenvalues and renormalize");
  tomography_cmd->add_option("--out", tomography_options.out, "Output path (- for stdout)");

  PlatesOptions plates_options;
  CLI::App* plates_cmd =
      app.add_subcommand("plates", "Euler and wave-plate angles for one setting");
  plates_cmd->add_option("--theta", plates_options.theta, "Gadget mixing angle")->required();
  plates_cmd->add_option("--phi", plates_options.phi, "Gadget phase angle")->required();
  plates_cmd->add_flag("--degrees", plates_options.degrees, "Interpret angles as degrees");
  plates_cmd->add_option("--out", plates_options.out, "Output path (- for stdout)");

  TableOptions table_options;
  CLI::App* table_cmd =
      app.add_subcommand("table1", "The nine canonical second-order settings");
  table_cmd->add_flag("--json", table_options.json, "Emit a table document instead of text");
  table_cmd->add_option("--out", table_options.out, "Output path (- for stdout)");

  StokesOptions stokes_options;
  CLI::App* stokes_cmd =
      app.add_subcommand("stokes", "Stokes means and covariance from records");
  stokes_cmd->add_option("--records1", stokes_options.records1, "Order-1 records document")
      ->required();
  stokes_cmd->add_option("--records2", stokes_options.records2, "Order-2 records document")
      ->required();
  stokes_cmd->add_option("--out", stokes_options.out, "Output path (- for stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (*plan_cmd) {
      const Document document{kSchemaVersion, PlanDocument{settings_plan(plan_options.order)}};
      write_output(plan_options.out, serialize_document(document), out);
    } else if (*predict_cmd) {
      const Document state_document = load_document(predict_options.state, "state");
      const FixedNState& state = std::get<StateDocument>(state_document.payload).state;
      const MeasurementSetting setting =
          parse_setting(predict_options.setting, predict_options.degrees);
      const CoherenceTensor tensor = coherence_tensor(state, state.order());
      const MeasurementRecord record{setting, predicted_moment(tensor, setting), {}};
      const Document document{kSchemaVersion,
                              RecordsDocument{state.order(), {record}, std::nullopt}};
      write_output(predict_options.out, serialize_document(document), out);
    } else if (*campaign_cmd) {
      const Document state_document = load_document(campaign_options.state, "state");
      const FixedNState& state = std::get<StateDocument>(state_document.payload).state;
      const SettingsPlan plan = settings_plan(campaign_options.order);
      std::vector<MeasurementRecord> records =
          run_campaign(state, plan, campaign_options.shots, campaign_options.seed);
      const Document document{
          kSchemaVersion,
          RecordsDocument{campaign_options.order, std::move(records),
                          CampaignInfo{kRngAlgorithm, campaign_options.seed,
                                       campaign_options.shots}}};
      write_output(campaign_options.out, serialize_document(document), out);
    } else if (*reconstruct_cmd) {
      const Document records_document = load_document(reconstruct_options.records, "records");
      const auto& payload = std::get<RecordsDocument>(records_document.payload);
      if (reconstruct_options.order != 0 && reconstruct_options.order != payload.order) {
        throw InputError("--order " + std::to_string(reconstruct_options.order) +
                         " contradicts the order-" + std::to_string(payload.order) +
                         " records document");
      }
      Reconstruction reconstruction = reconstruct(payload.records, payload.order);
      const Document document{
          kSchemaVersion,
          TensorDocument{std::move(reconstruction.tensor), std::move(reconstruction.groups),
                         std::move(reconstruction.entry_std_error)}};
      write_output(reconstruct_options.out, serialize_document(document), out);
    } else if (*tomography_cmd) {
      const Document records_document = load_document(tomography_options.records, "records");
      const auto& payload = std::get<RecordsDocument>(records_document.payload);
      if (tomography_options.order != 0 && tomography_options.order != payload.order) {
        throw InputError("--order " + std::to_string(tomography_options.order) +
                         " contradicts the order-" + std::to_string(payload.order) +
                         " records document");
      }
      const Reconstruction reconstruction = reconstruct(payload.records, payload.order);
      DensityResult result =
          density_from_coherences(reconstruction.tensor, tomography_options.project_psd);
      const Document document{kSchemaVersion, DensityDocument{std::move(result)}};
      write_output(tomography_options.out, serialize_document(document), out);
    } else if (*plates_cmd) {
      const MeasurementSetting setting(to_radians(plates_options.theta, plates_options.degrees),
                                       to_radians(plates_options.phi, plates_options.degrees));
      const SettingAngles angles = setting_angles(setting);
      std::ostringstream text;
      text << std::fixed << std::setprecision(6);
      text << "setting: theta = " << angles.theta << "  phi = " << angles.phi << '\n'
           << "euler:   xi = " << angles.euler.xi << "  eta = " << angles.euler.eta
           << "  zeta = " << angles.euler.zeta << '\n'
           << "plates:  qwp1 = " << angles.plates.qp1 << "  qwp2 = " << angles.plates.qp2
           << "  hwp = " << angles.plates.hp << '\n';
      write_output(plates_options.out, text.str(), out);
    } else if (*table_cmd) {
      const std::vector<Table1Row> rows = table1();
      if (table_options.json) {
        const Document document{kSchemaVersion, TableDocument{rows}};
        write_output(table_options.out, serialize_document(document), out);
      } else {
        write_output(table_options.out, format_table(rows), out);
      }
    } else if (*stokes_cmd) {
      const std::vector<MeasurementRecord> records1 = load_records(stokes_options.records1, 1);
      const std::vector<MeasurementRecord> records2 = load_records(stokes_options.records2, 2);
      const CoherenceTensor first = reconstruct(records1, 1).tensor;
      const CoherenceTensor second = reconstruct(records2, 2).tensor;
      const Document document{
          kSchemaVersion, StokesDocument{stokes_means(first), stokes_variances(first, second)}};
      write_output(stokes_options.out, serialize_document(document), out);
    }
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? 0 : 2;
  } catch (const NumericalError& error) {
    err << "numerical error: " << error.what() << '\n';
    return 3;
  } catch (const InputError& error) {
    err << "error: " << error.what() << '\n';
    return 2;
  } catch (const Error& error) {
    err << "error: " << error.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace cohtomo
