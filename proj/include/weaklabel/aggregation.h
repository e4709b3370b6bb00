#ifndef WEAKLABEL_AGGREGATION_H_
#define WEAKLABEL_AGGREGATION_H_

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "weaklabel/labeling.h"

namespace weaklabel {

struct VoterConfig {
  int cardinality = 5;
};

// Vote shares among non-abstaining rules; all zeros when every rule abstains.
std::vector<double> majority_proba(std::span<const int> row, const VoterConfig &cfg);

// {c : proba[c] > 0}.
std::set<int> aspect_set(std::span<const double> proba);

// Class-conditional (Dawid-Skene) generative label model. confusion[j][c][l]
// is P(rule j emits l | true class c); column `cardinality` holds ABSTAIN.
struct LabelModelParams {
  int cardinality = 3;
  std::vector<double> priors;
  std::vector<std::vector<std::vector<double>>> confusion;
  int iterations = 0;
  // Final value of the EM objective (see fit_label_model).
  double log_likelihood = 0.0;
  // Objective after every M-step, in order. Non-decreasing.
  std::vector<double> objective_trace;
  std::uint64_t seed = 0;

  std::size_t num_rules() const { return confusion.size(); }
  // P(rule emits abstain-or-label l | class c) with l == -1 mapped to the
  // abstain column.
  double emit(std::size_t rule, int cls, int label) const;
};

struct LabelModelOptions {
  std::uint64_t seed = 0;
  int max_iter = 100;
  double tol = 1e-6;
  double smoothing = 0.01;
};

// EM from majority-vote initial posteriors. Every count accumulator gets the
// additive smoothing, which makes each M-step the MAP estimate under a
// symmetric Dirichlet prior; the tracked objective is therefore the
// smoothed log-likelihood
//   sum_i log sum_c pi_c prod_j theta_j[c][L_ij] + smoothing * sum log(params)
// which EM never decreases. All-abstain rows are left out of fitting.
// Deterministic in L; seed is recorded only. Throws DegenerateMatrix when
// every entry abstains, InvalidMatrix when rows < cardinality.
LabelModelParams fit_label_model(const LabelMatrix &matrix, int cardinality,
                                 const LabelModelOptions &options = {});

// Bayes posterior over classes for one row; sums to 1. Abstentions use the
// abstain column, except that an all-abstain row returns the priors.
std::vector<double> lm_posterior(const LabelModelParams &params, std::span<const int> row);

// Argmax with ties toward the lowest class id.
int argmax_low(std::span<const double> values);
int lm_predict(const LabelModelParams &params, std::span<const int> row);

}  // namespace weaklabel

#endif  // WEAKLABEL_AGGREGATION_H_
