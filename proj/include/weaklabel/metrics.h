#ifndef WEAKLABEL_METRICS_H_
#define WEAKLABEL_METRICS_H_

#include <array>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace weaklabel {

struct MetricsReport {
  double macro_f1 = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double micro_f1 = 0.0;
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double hamming_loss = 0.0;

  bool operator==(const MetricsReport &) const = default;
};

// Report column names, in output order.
const std::array<std::string_view, 7> &metrics_columns();
std::array<double, 7> metrics_values(const MetricsReport &report);

// Per-class counts for one-vs-rest scoring.
struct ClassCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

// Precision/recall/F1 with the zero-denominator convention: an empty
// denominator scores 0. Macro averages are unweighted over all n_classes,
// including classes absent from both truth and prediction.
MetricsReport report_from_counts(std::span<const ClassCounts> per_class, double hamming_loss);

// Throws LengthMismatch on unequal lengths and std::out_of_range on labels
// outside [0, n_classes).
MetricsReport multilabel_metrics(std::span<const std::set<int>> truth,
                                 std::span<const std::set<int>> pred, int n_classes);
MetricsReport multiclass_metrics(std::span<const int> truth, std::span<const int> pred,
                                 int n_classes);

}  // namespace weaklabel

#endif  // WEAKLABEL_METRICS_H_
