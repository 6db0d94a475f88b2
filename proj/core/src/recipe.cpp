#include "cohtomo/recipe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

constexpr double kPi = std::numbers::pi;

// Records rearranged onto the plan's theta x phi grid.
struct MatchedRecords {
  Eigen::MatrixXd values;
  std::optional<Eigen::MatrixXd> variances;
  std::optional<MeasurementRecord> extra;
};

bool settings_close(const MeasurementSetting& a, double theta, double phi) {
  return std::abs(a.theta() - theta) < 1e-9 &&
         circular_distance(a.phi(), phi, 2.0 * kPi) < 1e-9;
}

MatchedRecords match_records(const std::vector<MeasurementRecord>& records,
                             const SettingsPlan& plan, bool require_extra) {
  const int n_theta = static_cast<int>(plan.thetas.size());
  const int n_phi = static_cast<int>(plan.phis.size());
  std::vector<double> reduced_phi(plan.phis.size());
  for (std::size_t k = 0; k < plan.phis.size(); ++k) {
    reduced_phi[k] = wrap_angle(plan.phis[k], 2.0 * kPi);
  }

  MatchedRecords matched;
  matched.values = Eigen::MatrixXd::Zero(n_theta, n_phi);
  Eigen::MatrixXd variances = Eigen::MatrixXd::Zero(n_theta, n_phi);
  Eigen::MatrixXi filled = Eigen::MatrixXi::Zero(n_theta, n_phi);
  bool all_errors = true;
  bool extra_filled = false;

  for (const MeasurementRecord& record : records) {
    if (plan.extra && settings_close(record.setting, plan.extra->theta(), plan.extra->phi())) {
      if (extra_filled) {
        throw PlanMismatchError("duplicate record at the extra setting");
      }
      matched.extra = record;
      extra_filled = true;
      if (!record.std_error) {
        all_errors = false;
      }
      continue;
    }
    bool placed = false;
    for (int j = 0; j < n_theta && !placed; ++j) {
      if (std::abs(record.setting.theta() - plan.thetas[j]) >= 1e-9) {
        continue;
      }
      for (int k = 0; k < n_phi && !placed; ++k) {
        if (circular_distance(record.setting.phi(), reduced_phi[k], 2.0 * kPi) < 1e-9) {
          if (filled(j, k)) {
            throw PlanMismatchError("duplicate record at theta index " + std::to_string(j) +
                                    ", phi index " + std::to_string(k));
          }
          matched.values(j, k) = record.value;
          if (record.std_error) {
            variances(j, k) = *record.std_error * *record.std_error;
          } else {
            all_errors = false;
          }
          filled(j, k) = 1;
          placed = true;
        }
      }
    }
    if (!placed) {
      throw PlanMismatchError("record at (" + std::to_string(record.setting.theta()) + ", " +
                              std::to_string(record.setting.phi()) +
                              ") matches no plan setting");
    }
  }

  if (filled.sum() != n_theta * n_phi) {
    throw PlanMismatchError("records cover " + std::to_string(filled.sum()) + " of " +
                            std::to_string(n_theta * n_phi) + " plan settings");
  }
  if (require_extra && plan.extra && !extra_filled) {
    throw PlanMismatchError("missing record at the extra setting (0, 0)");
  }
  if (all_errors) {
    matched.variances = std::move(variances);
  }
  return matched;
}

std::vector<cplx> aggregate_grid(const Eigen::MatrixXd& values, const SettingsPlan& plan,
                                 int m) {
  const int n_theta = static_cast<int>(plan.thetas.size());
  const int n_phi = static_cast<int>(plan.phis.size());
  std::vector<cplx> weights(plan.phis.size());
  for (int k = 0; k < n_phi; ++k) {
    const double phi = wrap_angle(plan.phis[k], 2.0 * kPi);
    weights[k] = std::polar(1.0, m * phi);
  }
  std::vector<cplx> aggregated(plan.thetas.size());
  for (int j = 0; j < n_theta; ++j) {
    cplx sum = 0.0;
    for (int k = 0; k < n_phi; ++k) {
      sum += weights[k] * values(j, k);
    }
    aggregated[j] = sum / static_cast<double>(n_phi);
  }
  return aggregated;
}

struct GroupSolution {
  Eigen::VectorXcd values;
  double residual = 0.0;
  Eigen::MatrixXd inverse;  // of the system matrix, for error propagation
};

GroupSolution solve_group_system(const GroupSystem& system) {
  const Eigen::MatrixXd& a = system.matrix;
  const Eigen::VectorXcd& b = system.rhs;
  const Eigen::Index n = a.rows();

  // Column scaling keeps the pivoted factorization honest when binomial
  // weights make column norms span many orders of magnitude.
  Eigen::VectorXd scale(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    scale(c) = a.col(c).cwiseAbs().maxCoeff();
    if (scale(c) <= 0.0 || !std::isfinite(scale(c))) {
      throw SingularSystemError("group system for m = " + std::to_string(system.m) +
                                " has an empty column");
    }
  }
  const Eigen::MatrixXd scaled = a * scale.cwiseInverse().asDiagonal();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(scaled);

  auto solve_parts = [&](const Eigen::VectorXcd& rhs) -> Eigen::VectorXcd {
    const Eigen::VectorXd re = lu.solve(rhs.real());
    const Eigen::VectorXd im = lu.solve(rhs.imag());
    Eigen::VectorXcd z(n);
    z.real() = re;
    z.imag() = im;
    return scale.cwiseInverse().asDiagonal() * z;
  };

  Eigen::VectorXcd x = solve_parts(b);
  const double b_norm = std::max(b.norm(), 1e-300);
  Eigen::VectorXcd residual = b - a * x.eval();
  // One step of iterative refinement when the first solve is not already at
  // rounding level.
  if (residual.norm() > 1e-12 * b_norm) {
    x += solve_parts(residual);
    residual = b - a * x;
  }
  if (!x.allFinite() || residual.norm() > 1e-6 * std::max(b_norm, 1.0)) {
    throw SingularSystemError("group system for m = " + std::to_string(system.m) +
                              " could not be solved (relative residual " +
                              std::to_string(residual.norm() / b_norm) + ")");
  }

  GroupSolution solution;
  solution.values = std::move(x);
  solution.residual = residual.norm() / b_norm;
  solution.inverse = scale.cwiseInverse().asDiagonal() * lu.inverse();
  return solution;
}

double condition_2norm(const Eigen::MatrixXd& matrix) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(matrix);
  const auto& sigma = svd.singularValues();
  const double smallest = sigma(sigma.size() - 1);
  if (smallest <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return sigma(0) / smallest;
}

void check_weight(const SettingsPlan& plan, int m) {
  const auto weights = aggregation_weights(plan);
  if (std::find(weights.begin(), weights.end(), m) == weights.end()) {
    throw RangeError("aggregation weight m = " + std::to_string(m) +
                     " is not used by an order-" + std::to_string(plan.order) + " plan");
  }
}

}  // namespace

SettingsPlan settings_plan(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw RangeError("plan order must lie in [1, " + std::to_string(kMaxOrder) + "], got " +
                     std::to_string(order));
  }
  SettingsPlan plan;
  plan.order = order;
  plan.parity = (order % 2 == 0) ? Parity::even : Parity::odd;

  const int n_theta = (plan.parity == Parity::even) ? order + 1 : order;
  const int n_phi = (plan.parity == Parity::even) ? order + 1 : order + 2;
  const double theta_denominator = 2.0 * ((plan.parity == Parity::even) ? order + 2 : order + 1);

  for (int j = 1; j <= n_theta; ++j) {
    plan.thetas.push_back(j * kPi / theta_denominator);
  }
  for (int k = 1; k <= n_phi; ++k) {
    plan.phis.push_back(k == n_phi ? 2.0 * kPi : 2.0 * kPi * k / n_phi);
  }
  for (double theta : plan.thetas) {
    for (double phi : plan.phis) {
      plan.settings.emplace_back(theta, phi);
    }
  }
  if (plan.parity == Parity::odd) {
    plan.extra = MeasurementSetting(0.0, 0.0);
    plan.settings.push_back(*plan.extra);
  }
  return plan;
}

std::vector<MeasurementRecord> predicted_records(const CoherenceTensor& tensor,
                                                 const SettingsPlan& plan) {
  if (tensor.order() != plan.order) {
    throw DimensionError("tensor order does not match plan order");
  }
  std::vector<MeasurementRecord> records;
  records.reserve(plan.settings.size());
  for (const MeasurementSetting& setting : plan.settings) {
    records.push_back(MeasurementRecord{setting, predicted_moment(tensor, setting), {}});
  }
  return records;
}

std::vector<int> aggregation_weights(const SettingsPlan& plan) {
  const int top = (plan.parity == Parity::even) ? plan.order / 2 : (plan.order + 1) / 2;
  std::vector<int> weights;
  for (int m = 0; m <= top; ++m) {
    weights.push_back(m);
  }
  return weights;
}

std::vector<int> surviving_betas(const SettingsPlan& plan, int m) {
  check_weight(plan, m);
  const int modulus = static_cast<int>(plan.phis.size());
  std::vector<int> betas;
  for (int beta = -plan.order; beta <= plan.order; ++beta) {
    if (((beta + m) % modulus + modulus) % modulus == 0) {
      betas.push_back(beta);
    }
  }
  return betas;
}

std::vector<cplx> aggregate(const std::vector<MeasurementRecord>& records,
                            const SettingsPlan& plan, int m) {
  check_weight(plan, m);
  const MatchedRecords matched = match_records(records, plan, /*require_extra=*/false);
  return aggregate_grid(matched.values, plan, m);
}

GroupSystem build_group_system(const SettingsPlan& plan, int m,
                               const std::vector<cplx>& aggregated,
                               const std::optional<MeasurementRecord>& extra) {
  check_weight(plan, m);
  if (aggregated.size() != plan.thetas.size()) {
    throw DimensionError("aggregated values must be indexed like plan.thetas");
  }
  const bool needs_extra = plan.extra.has_value() && m == 0;
  if (needs_extra && !extra) {
    throw PlanMismatchError("the order-" + std::to_string(plan.order) +
                            " m = 0 system needs the record at the extra setting");
  }

  GroupSystem system;
  system.m = m;
  system.betas = surviving_betas(plan, m);
  for (int beta : system.betas) {
    for (const CoherenceIndex& index : CoherenceIndex::group(beta, plan.order)) {
      system.columns.push_back(index);
    }
  }

  const int n_rows = static_cast<int>(plan.thetas.size()) + (needs_extra ? 1 : 0);
  const int n_cols = static_cast<int>(system.columns.size());
  if (n_rows != n_cols) {
    throw NumericalError("group system for m = " + std::to_string(m) +
                         " is not square: " + std::to_string(n_rows) + " x " +
                         std::to_string(n_cols));
  }

  system.matrix = Eigen::MatrixXd::Zero(n_rows, n_cols);
  system.rhs = Eigen::VectorXcd::Zero(n_rows);
  auto fill_row = [&](int row, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int col = 0; col < n_cols; ++col) {
      const CoherenceIndex& index = system.columns[col];
      system.matrix(row, col) = binomial(plan.order, index.w) * binomial(plan.order, index.y) *
                                std::pow(c, 2 * plan.order - index.alpha()) *
                                std::pow(s, index.alpha());
    }
  };
  for (std::size_t j = 0; j < plan.thetas.size(); ++j) {
    fill_row(static_cast<int>(j), plan.thetas[j]);
    system.rhs(static_cast<Eigen::Index>(j)) = aggregated[j];
  }
  if (needs_extra) {
    // theta = 0 zeroes every column except alpha = 0, pinning the
    // all-photons-in-mode-1 population.
    fill_row(n_rows - 1, plan.extra->theta());
    system.rhs(n_rows - 1) = extra->value;
  }
  system.condition = condition_2norm(system.matrix);
  return system;
}

Reconstruction reconstruct(const std::vector<MeasurementRecord>& records, int order) {
  const SettingsPlan plan = settings_plan(order);
  const MatchedRecords matched = match_records(records, plan, /*require_extra=*/true);
  const int n_phi = static_cast<int>(plan.phis.size());

  Reconstruction result{CoherenceTensor(order), {}, {}};
  Eigen::MatrixXd entry_errors;
  if (matched.variances) {
    entry_errors = Eigen::MatrixXd::Zero(order + 1, order + 1);
  }

  for (int m : aggregation_weights(plan)) {
    const std::vector<cplx> aggregated = aggregate_grid(matched.values, plan, m);
    const bool needs_extra = plan.extra.has_value() && m == 0;
    const GroupSystem system =
        build_group_system(plan, m, aggregated, needs_extra ? matched.extra : std::nullopt);
    const GroupSolution solution = solve_group_system(system);
    result.groups[m] = GroupReport{system.condition, solution.residual};

    for (std::size_t col = 0; col < system.columns.size(); ++col) {
      const CoherenceIndex& index = system.columns[col];
      cplx value = solution.values(static_cast<Eigen::Index>(col));
      if (index.w == index.y) {
        // Populations come from the m = 0 system, whose right-hand side is
        // exactly real; drop the zero imaginary part so the diagonal stays
        // real under later exact-Hermiticity checks.
        value = value.real();
      }
      result.tensor.set(index.w, index.y, value);
      if (index.w != index.y) {
        result.tensor.set(index.y, index.w, std::conj(value));
      }

      if (matched.variances) {
        // The estimate is linear in the records; propagate their variances
        // through the aggregation weights (unit modulus) and the solve.
        double variance = 0.0;
        for (std::size_t j = 0; j < plan.thetas.size(); ++j) {
          const double sensitivity =
              solution.inverse(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(j));
          const double row_variance =
              matched.variances->row(static_cast<Eigen::Index>(j)).sum() /
              (static_cast<double>(n_phi) * static_cast<double>(n_phi));
          variance += sensitivity * sensitivity * row_variance;
        }
        if (needs_extra && matched.extra->std_error) {
          const double sensitivity = solution.inverse(static_cast<Eigen::Index>(col),
                                                      solution.inverse.cols() - 1);
          variance += sensitivity * sensitivity * (*matched.extra->std_error) *
                      (*matched.extra->std_error);
        }
        const double sigma = std::sqrt(variance);
        entry_errors(index.w, index.y) = sigma;
        entry_errors(index.y, index.w) = sigma;
      }
    }
  }

  if (matched.variances) {
    result.entry_std_error = std::move(entry_errors);
  }
  return result;
}

std::map<int, double> condition_report(const SettingsPlan& plan) {
  std::map<int, double> report;
  const std::vector<cplx> zeros(plan.thetas.size(), 0.0);
  for (int m : aggregation_weights(plan)) {
    std::optional<MeasurementRecord> extra;
    if (plan.extra && m == 0) {
      extra = MeasurementRecord{*plan.extra, 0.0, {}};
    }
    report[m] = build_group_system(plan, m, zeros, extra).condition;
  }
  return report;
}

}  // namespace cohtomo
