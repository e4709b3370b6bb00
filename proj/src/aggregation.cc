#include "weaklabel/aggregation.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weaklabel/error.h"

namespace weaklabel {
namespace {

double log_sum_exp(std::span<const double> values) {
  double peak = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

// log pi_c + sum_j log theta_j[c][row_j] for every class.
std::vector<double> log_joint(const LabelModelParams &params, std::span<const int> row) {
  std::vector<double> out(params.cardinality);
  for (int c = 0; c < params.cardinality; ++c) {
    double v = std::log(params.priors[c]);
    for (std::size_t j = 0; j < row.size(); ++j) v += std::log(params.emit(j, c, row[j]));
    out[c] = v;
  }
  return out;
}

}  // namespace

std::vector<double> majority_proba(std::span<const int> row, const VoterConfig &cfg) {
  if (cfg.cardinality < 2) throw InvalidConfig("voter cardinality must be >= 2");
  std::vector<double> proba(cfg.cardinality, 0.0);
  int votes = 0;
  for (int v : row) {
    if (v == kAbstain) continue;
    if (v < 0 || v >= cfg.cardinality) {
      throw InvalidMatrix("label " + std::to_string(v) + " outside voter cardinality");
    }
    proba[v] += 1.0;
    ++votes;
  }
  if (votes > 0) {
    for (double &p : proba) p /= votes;
  }
  return proba;
}

std::set<int> aspect_set(std::span<const double> proba) {
  std::set<int> out;
  for (std::size_t c = 0; c < proba.size(); ++c) {
    if (proba[c] > 0.0) out.insert(static_cast<int>(c));
  }
  return out;
}

double LabelModelParams::emit(std::size_t rule, int cls, int label) const {
  const auto &dist = confusion[rule][cls];
  return label == kAbstain ? dist[cardinality] : dist[label];
}

LabelModelParams fit_label_model(const LabelMatrix &matrix, int cardinality,
                                 const LabelModelOptions &options) {
  if (cardinality < 2) throw InvalidConfig("cardinality must be >= 2");
  if (matrix.cardinality() > cardinality) {
    throw InvalidMatrix("matrix labels exceed model cardinality");
  }
  if (matrix.rows() < static_cast<std::size_t>(cardinality)) {
    throw InvalidMatrix("label model needs at least cardinality rows");
  }
  const std::size_t m = matrix.cols();
  const double alpha = options.smoothing;

  std::vector<std::size_t> fit_rows;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    auto row = matrix.row(i);
    if (std::any_of(row.begin(), row.end(), [](int v) { return v != kAbstain; })) {
      fit_rows.push_back(i);
    }
  }
  if (fit_rows.empty()) throw DegenerateMatrix("every label matrix entry abstains");

  const VoterConfig voter{cardinality};
  std::vector<std::vector<double>> q;
  q.reserve(fit_rows.size());
  for (std::size_t i : fit_rows) q.push_back(majority_proba(matrix.row(i), voter));

  LabelModelParams params;
  params.cardinality = cardinality;
  params.seed = options.seed;
  params.priors.assign(cardinality, 0.0);
  params.confusion.assign(
      m, std::vector<std::vector<double>>(cardinality, std::vector<double>(cardinality + 1)));

  double previous = -std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= std::max(1, options.max_iter); ++iter) {
    // M-step.
    std::vector<double> class_mass(cardinality, alpha);
    std::vector<std::vector<std::vector<double>>> counts(
        m, std::vector<std::vector<double>>(cardinality,
                                            std::vector<double>(cardinality + 1, alpha)));
    for (std::size_t r = 0; r < fit_rows.size(); ++r) {
      auto row = matrix.row(fit_rows[r]);
      for (int c = 0; c < cardinality; ++c) {
        const double w = q[r][c];
        class_mass[c] += w;
        for (std::size_t j = 0; j < m; ++j) {
          int l = row[j] == kAbstain ? cardinality : row[j];
          counts[j][c][l] += w;
        }
      }
    }
    double total_mass = 0.0;
    for (double v : class_mass) total_mass += v;
    for (int c = 0; c < cardinality; ++c) params.priors[c] = class_mass[c] / total_mass;
    for (std::size_t j = 0; j < m; ++j) {
      for (int c = 0; c < cardinality; ++c) {
        double row_total = 0.0;
        for (double v : counts[j][c]) row_total += v;
        for (int l = 0; l <= cardinality; ++l) {
          params.confusion[j][c][l] = counts[j][c][l] / row_total;
        }
      }
    }

    // Objective and E-step share the per-row joint terms.
    double objective = 0.0;
    for (double p : params.priors) objective += alpha * std::log(p);
    for (const auto &rule : params.confusion) {
      for (const auto &dist : rule) {
        for (double p : dist) objective += alpha * std::log(p);
      }
    }
    for (std::size_t r = 0; r < fit_rows.size(); ++r) {
      std::vector<double> joint = log_joint(params, matrix.row(fit_rows[r]));
      double norm = log_sum_exp(joint);
      objective += norm;
      for (int c = 0; c < cardinality; ++c) q[r][c] = std::exp(joint[c] - norm);
    }

    params.iterations = iter;
    params.log_likelihood = objective;
    params.objective_trace.push_back(objective);
    if (iter > 1 && objective - previous < options.tol) break;
    previous = objective;
  }
  return params;
}

std::vector<double> lm_posterior(const LabelModelParams &params, std::span<const int> row) {
  if (row.size() != params.num_rules()) {
    throw ShapeMismatch("row has " + std::to_string(row.size()) + " entries, model has " +
                        std::to_string(params.num_rules()) + " rules");
  }
  for (int v : row) {
    if (v != kAbstain && (v < 0 || v >= params.cardinality)) {
      throw InvalidMatrix("label " + std::to_string(v) + " outside model cardinality");
    }
  }
  // The model is fit on rows with at least one vote; a row without votes
  // carries no evidence.
  if (std::all_of(row.begin(), row.end(), [](int v) { return v == kAbstain; })) {
    return params.priors;
  }
  std::vector<double> joint = log_joint(params, row);
  double norm = log_sum_exp(joint);
  std::vector<double> post(joint.size());
  double total = 0.0;
  for (std::size_t c = 0; c < joint.size(); ++c) {
    post[c] = std::exp(joint[c] - norm);
    total += post[c];
  }
  for (double &p : post) p /= total;
  return post;
}

int argmax_low(std::span<const double> values) {
  int best = 0;
  for (std::size_t c = 1; c < values.size(); ++c) {
    if (values[c] > values[best]) best = static_cast<int>(c);
  }
  return best;
}

int lm_predict(const LabelModelParams &params, std::span<const int> row) {
  return argmax_low(lm_posterior(params, row));
}

}  // namespace weaklabel
