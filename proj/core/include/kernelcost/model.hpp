#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kernelcost/props.hpp"

namespace kernelcost {

/// One fit case: bound property vector plus the observed time in seconds.
struct FitCase {
  PropertyVector props;
  double time_s = 0.0;
};

/// Design matrix for the relative-error objective. Row r holds p_i / T_r
/// so the target is the all-ones vector and the residual of a case is
/// 1 - pred/T. Columns with no nonzero entry are "uncovered": the fit
/// cannot say anything about them and pins their weight to zero.
struct DesignMatrix {
  std::vector<std::vector<double>> rows;  // n_cases x schema_size
  std::vector<bool> covered;              // per column
};

struct ModelWeights {
  std::string device;
  std::string schema_version;
  std::vector<double> alpha;  // schema-indexed
  std::vector<bool> covered;
  double objective = 0.0;  // sum of squared residuals at the optimum
  std::size_t n_cases = 0;
};

struct FitReport {
  double objective = 0.0;
  std::vector<double> residuals;       // 1 - pred/T per case, case order
  std::vector<std::string> uncovered;  // schema keys pinned to zero
};

/// Throws E_NONPOSITIVE_TIME for any case with time <= 0 and E_EMPTY_INPUT
/// when no cases are given. Property vectors must be bound.
DesignMatrix build_design_matrix(const std::vector<FitCase>& cases);

/// Least-squares fit of the covered columns (minimum-norm solution when
/// the covered block is rank deficient). The objective at the returned
/// weights never exceeds the all-zero-weights objective (= n_cases).
std::pair<ModelWeights, FitReport> fit_weights(const DesignMatrix& d,
                                               const std::string& device);

struct Prediction {
  double seconds = 0.0;
  // (key, contribution in seconds) for every key with a nonzero count.
  std::vector<std::pair<std::string, double>> breakdown;
  // Keys with nonzero counts that the fit left uncovered.
  std::vector<std::string> warnings;
};

/// Inner product of weights with a bound property vector. Throws
/// E_SCHEMA_MISMATCH when the weights were fit against a different schema.
Prediction predict(const ModelWeights& w, const PropertyVector& bound);

/// Geometric mean of relative errors |pred - actual| / actual over
/// (predicted, actual) pairs. Errors are floored at 1e-12 so exact hits do
/// not zero the mean. Throws E_NONPOSITIVE_TIME for actual <= 0 and
/// E_EMPTY_INPUT for an empty list.
double geometric_mean_error(
    const std::vector<std::pair<double, double>>& pred_actual);

}  // namespace kernelcost
