#ifndef WEAKLABEL_TESTS_ORACLES_H_
#define WEAKLABEL_TESTS_ORACLES_H_

// Brute-force reference computations shared by the unit tests and the
// acceptance binary. None of them call into the code they check.

#include <set>
#include <string>
#include <vector>

#include "weaklabel/labeling.h"
#include "weaklabel/metrics.h"
#include "weaklabel/random.h"

namespace weaklabel::testing {

struct OracleStats {
  double coverage, overlaps, conflicts;
};

// Pairwise comparison of every column against every other.
inline std::vector<OracleStats> brute_force(const LabelMatrix &L) {
  std::vector<OracleStats> out;
  const double n = static_cast<double>(L.rows());
  for (std::size_t j = 0; j < L.cols(); ++j) {
    std::size_t cov = 0, ovl = 0, con = 0;
    for (std::size_t i = 0; i < L.rows(); ++i) {
      if (L.at(i, j) == kAbstain) continue;
      ++cov;
      bool any = false, differs = false;
      for (std::size_t k = 0; k < L.cols(); ++k) {
        if (k == j || L.at(i, k) == kAbstain) continue;
        any = true;
        if (L.at(i, k) != L.at(i, j)) differs = true;
      }
      ovl += any;
      con += differs;
    }
    out.push_back({cov / n, ovl / n, con / n});
  }
  return out;
}

// n <= 200, m <= 6, cardinality 2..5, 30% abstain.
inline LabelMatrix random_matrix(Rng &rng) {
  const std::size_t n = 1 + rng.below(200);
  const std::size_t m = 1 + rng.below(6);
  const int k = 2 + static_cast<int>(rng.below(4));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < m; ++j) names.push_back("r" + std::to_string(j));
  std::vector<int> values(n * m);
  for (int &v : values) {
    v = rng.uniform() < 0.3 ? kAbstain : static_cast<int>(rng.below(k));
  }
  return LabelMatrix(n, names, k, values);
}

struct Planted {
  LabelMatrix matrix;
  std::vector<int> truth;
};

// Uniform truth over 3 classes. Each rule reports the true class with its
// accuracy, otherwise a uniformly chosen wrong class.
inline Planted plant(std::size_t n, const std::vector<double> &accuracy, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> values, truth;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(rng.below(3));
    truth.push_back(y);
    for (double acc : accuracy) {
      if (rng.uniform() < acc) {
        values.push_back(y);
      } else {
        values.push_back((y + 1 + static_cast<int>(rng.below(2))) % 3);
      }
    }
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < accuracy.size(); ++j) names.push_back("r" + std::to_string(j));
  return {LabelMatrix(n, names, 3, values), truth};
}

namespace detail {
inline double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }
inline double f1(double p, double r) { return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r); }
}  // namespace detail

// Enumerates a 2x2 confusion table per class directly from the label bits.
inline MetricsReport oracle_multilabel(const std::vector<std::set<int>> &truth,
                                       const std::vector<std::set<int>> &pred, int k) {
  using detail::f1;
  using detail::ratio;
  double sp = 0, sr = 0, sf = 0, tp_all = 0, fp_all = 0, fn_all = 0, wrong_bits = 0;
  for (int c = 0; c < k; ++c) {
    double table[2][2] = {{0, 0}, {0, 0}};  // [truth][pred]
    for (std::size_t i = 0; i < truth.size(); ++i) {
      table[truth[i].count(c)][pred[i].count(c)] += 1;
    }
    const double tp = table[1][1], fp = table[0][1], fn = table[1][0];
    const double p = ratio(tp, tp + fp), r = ratio(tp, tp + fn);
    sp += p;
    sr += r;
    sf += f1(p, r);
    tp_all += tp;
    fp_all += fp;
    fn_all += fn;
    wrong_bits += fp + fn;
  }
  MetricsReport m;
  m.macro_precision = sp / k;
  m.macro_recall = sr / k;
  m.macro_f1 = sf / k;
  m.micro_precision = ratio(tp_all, tp_all + fp_all);
  m.micro_recall = ratio(tp_all, tp_all + fn_all);
  m.micro_f1 = f1(m.micro_precision, m.micro_recall);
  m.hamming_loss = truth.empty() ? 0.0 : wrong_bits / (truth.size() * static_cast<double>(k));
  return m;
}

// Full k x k confusion matrix, then one-vs-rest sums.
inline MetricsReport oracle_multiclass(const std::vector<int> &truth, const std::vector<int> &pred,
                                       int k) {
  using detail::f1;
  using detail::ratio;
  std::vector<std::vector<double>> conf(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < truth.size(); ++i) conf[truth[i]][pred[i]] += 1;
  double sp = 0, sr = 0, sf = 0, tp_all = 0, fp_all = 0, fn_all = 0, wrong = 0;
  for (int c = 0; c < k; ++c) {
    double tp = conf[c][c], fp = 0, fn = 0;
    for (int o = 0; o < k; ++o) {
      if (o == c) continue;
      fp += conf[o][c];
      fn += conf[c][o];
      wrong += conf[c][o];
    }
    const double p = ratio(tp, tp + fp), r = ratio(tp, tp + fn);
    sp += p;
    sr += r;
    sf += f1(p, r);
    tp_all += tp;
    fp_all += fp;
    fn_all += fn;
  }
  MetricsReport m;
  m.macro_precision = sp / k;
  m.macro_recall = sr / k;
  m.macro_f1 = sf / k;
  m.micro_precision = ratio(tp_all, tp_all + fp_all);
  m.micro_recall = ratio(tp_all, tp_all + fn_all);
  m.micro_f1 = f1(m.micro_precision, m.micro_recall);
  m.hamming_loss = truth.empty() ? 0.0 : wrong / truth.size();
  return m;
}

}  // namespace weaklabel::testing

#endif  // WEAKLABEL_TESTS_ORACLES_H_
