#include "kernelcost/model.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "kernelcost/error.hpp"
#include "kernelcost/schema.hpp"

namespace kernelcost {

DesignMatrix build_design_matrix(const std::vector<FitCase>& cases) {
  if (cases.empty())
    throw Error(Errc::empty_input, "no fit cases");
  DesignMatrix d;
  d.covered.assign(schema_size(), false);
  d.rows.reserve(cases.size());
  for (const FitCase& c : cases) {
    if (!(c.time_s > 0.0))
      throw Error(Errc::nonpositive_time,
                  "observed time must be positive, got " +
                      std::to_string(c.time_s));
    if (!c.props.is_bound())
      throw Error(Errc::invalid_argument,
                  "fit cases need bound property vectors");
    std::vector<double> row(schema_size(), 0.0);
    for (std::size_t j = 0; j < schema_size(); ++j) {
      const Rat v = c.props.entries[j].evaluate_rat({});
      if (v == 0) continue;
      row[j] = v.convert_to<double>() / c.time_s;
      d.covered[j] = true;
    }
    d.rows.push_back(std::move(row));
  }
  return d;
}

std::pair<ModelWeights, FitReport> fit_weights(const DesignMatrix& d,
                                               const std::string& device) {
  const std::size_t n = d.rows.size();
  if (n == 0) throw Error(Errc::empty_input, "empty design matrix");
  if (d.covered.size() != schema_size())
    throw Error(Errc::schema_mismatch, "design matrix column count");

  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < schema_size(); ++j)
    if (d.covered[j]) cols.push_back(j);

  ModelWeights w;
  w.device = device;
  w.schema_version = kSchemaVersion;
  w.alpha.assign(schema_size(), 0.0);
  w.covered = d.covered;
  w.n_cases = n;

  FitReport rep;
  rep.residuals.assign(n, 1.0);
  const auto& keys = schema_keys();
  for (std::size_t j = 0; j < schema_size(); ++j)
    if (!d.covered[j]) rep.uncovered.push_back(keys[j]);

  if (!cols.empty()) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            d.rows[r][cols[c]];

    // Equilibrate columns so counts of wildly different magnitude (unit
    // launch constants vs. n^3 flop counts) do not wreck conditioning.
    Eigen::VectorXd scale(a.cols());
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double m = a.col(c).cwiseAbs().maxCoeff();
      scale(c) = m > 0.0 ? 1.0 / m : 1.0;
      a.col(c) *= scale(c);
    }

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.rows());
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    const Eigen::VectorXd x = cod.solve(ones);
    const Eigen::VectorXd resid = ones - a * x;
    for (std::size_t r = 0; r < n; ++r)
      rep.residuals[r] = resid(static_cast<Eigen::Index>(r));
    for (std::size_t c = 0; c < cols.size(); ++c)
      w.alpha[cols[c]] = x(static_cast<Eigen::Index>(c)) * scale(c);
  }

  double obj = 0.0;
  for (double r : rep.residuals) obj += r * r;
  rep.objective = obj;
  w.objective = obj;
  return {std::move(w), std::move(rep)};
}

Prediction predict(const ModelWeights& w, const PropertyVector& bound) {
  if (w.schema_version != kSchemaVersion ||
      w.alpha.size() != schema_size())
    throw Error(Errc::schema_mismatch,
                "model weights use schema '" + w.schema_version +
                    "', expected '" + kSchemaVersion + "'");
  if (!bound.is_bound())
    throw Error(Errc::invalid_argument,
                "prediction needs a bound property vector");
  Prediction out;
  const auto& keys = schema_keys();
  for (std::size_t j = 0; j < schema_size(); ++j) {
    const Rat v = bound.entries[j].evaluate_rat({});
    if (v == 0) continue;
    const double count = v.convert_to<double>();
    const double part = w.alpha[j] * count;
    out.seconds += part;
    out.breakdown.emplace_back(keys[j], part);
    if (j < w.covered.size() && !w.covered[j])
      out.warnings.push_back(keys[j]);
  }
  return out;
}

double geometric_mean_error(
    const std::vector<std::pair<double, double>>& pred_actual) {
  if (pred_actual.empty()) throw Error(Errc::empty_input, "no error pairs");
  double log_sum = 0.0;
  for (const auto& [pred, actual] : pred_actual) {
    if (!(actual > 0.0))
      throw Error(Errc::nonpositive_time,
                  "actual time must be positive, got " +
                      std::to_string(actual));
    double rel = std::fabs(pred - actual) / actual;
    if (rel < 1e-12) rel = 1e-12;
    log_sum += std::log(rel);
  }
  return std::exp(log_sum / static_cast<double>(pred_actual.size()));
}

}  // namespace kernelcost
