#include "weaklabel/metrics.h"

#include <stdexcept>
#include <string>

#include "weaklabel/error.h"

namespace weaklabel {
namespace {

double safe_ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double f1_score(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

void check_label(int label, int n_classes) {
  if (label < 0 || label >= n_classes) {
    throw std::out_of_range("label " + std::to_string(label) + " outside [0, " +
                            std::to_string(n_classes) + ")");
  }
}

}  // namespace

const std::array<std::string_view, 7> &metrics_columns() {
  static const std::array<std::string_view, 7> columns = {
      "Macro F1",        "Macro Precision", "Macro Recall", "Micro F1",
      "Micro Precision", "Micro Recall",    "Hamming Loss"};
  return columns;
}

std::array<double, 7> metrics_values(const MetricsReport &r) {
  return {r.macro_f1,        r.macro_precision, r.macro_recall, r.micro_f1,
          r.micro_precision, r.micro_recall,    r.hamming_loss};
}

MetricsReport report_from_counts(std::span<const ClassCounts> per_class, double hamming_loss) {
  MetricsReport out;
  ClassCounts pooled;
  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
  for (const ClassCounts &c : per_class) {
    double p = safe_ratio(c.tp, c.tp + c.fp);
    double r = safe_ratio(c.tp, c.tp + c.fn);
    sum_p += p;
    sum_r += r;
    sum_f += f1_score(p, r);
    pooled.tp += c.tp;
    pooled.fp += c.fp;
    pooled.fn += c.fn;
  }
  const double k = per_class.empty() ? 1.0 : static_cast<double>(per_class.size());
  out.macro_precision = sum_p / k;
  out.macro_recall = sum_r / k;
  out.macro_f1 = sum_f / k;
  out.micro_precision = safe_ratio(pooled.tp, pooled.tp + pooled.fp);
  out.micro_recall = safe_ratio(pooled.tp, pooled.tp + pooled.fn);
  out.micro_f1 = f1_score(out.micro_precision, out.micro_recall);
  out.hamming_loss = hamming_loss;
  return out;
}

MetricsReport multilabel_metrics(std::span<const std::set<int>> truth,
                                 std::span<const std::set<int>> pred, int n_classes) {
  if (truth.size() != pred.size()) throw LengthMismatch("truth and predictions differ in length");
  if (n_classes < 1) throw std::invalid_argument("n_classes must be >= 1");
  std::vector<ClassCounts> counts(n_classes);
  long wrong_bits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (int c : truth[i]) {
      check_label(c, n_classes);
      if (pred[i].count(c)) {
        ++counts[c].tp;
      } else {
        ++counts[c].fn;
        ++wrong_bits;
      }
    }
    for (int c : pred[i]) {
      check_label(c, n_classes);
      if (!truth[i].count(c)) {
        ++counts[c].fp;
        ++wrong_bits;
      }
    }
  }
  double hamming = truth.empty() ? 0.0
                                 : static_cast<double>(wrong_bits) /
                                       (static_cast<double>(truth.size()) * n_classes);
  return report_from_counts(counts, hamming);
}

MetricsReport multiclass_metrics(std::span<const int> truth, std::span<const int> pred,
                                 int n_classes) {
  if (truth.size() != pred.size()) throw LengthMismatch("truth and predictions differ in length");
  if (n_classes < 1) throw std::invalid_argument("n_classes must be >= 1");
  std::vector<ClassCounts> counts(n_classes);
  long wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    check_label(truth[i], n_classes);
    check_label(pred[i], n_classes);
    if (truth[i] == pred[i]) {
      ++counts[truth[i]].tp;
    } else {
      ++counts[pred[i]].fp;
      ++counts[truth[i]].fn;
      ++wrong;
    }
  }
  double hamming =
      truth.empty() ? 0.0 : static_cast<double>(wrong) / static_cast<double>(truth.size());
  return report_from_counts(counts, hamming);
}

}  // namespace weaklabel
