#ifndef WEAKLABEL_IO_H_
#define WEAKLABEL_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "weaklabel/aggregation.h"
#include "weaklabel/corpus.h"
#include "weaklabel/labeling.h"
#include "weaklabel/metrics.h"
#include "weaklabel/model.h"

namespace weaklabel {

using Json = nlohmann::ordered_json;

// Provenance stamped into every artifact.
struct ArtifactMeta {
  std::string stage;
  std::string config_hash;
  std::uint64_t seed = 0;

  Json ToJson() const;
  static ArtifactMeta FromJson(const Json &j);
  // "# weaklabel stage=<s> config_hash=<h> seed=<n>" plus extra key=value
  // pairs, used as the first line of CSV artifacts.
  std::string CsvComment(const std::vector<std::pair<std::string, std::string>> &extra = {}) const;
};

// 16 hex digits of FNV-1a 64 over the compact JSON dump.
std::string config_hash(const Json &config);

// Formats with %.6f.
std::string format_fixed(double value);

std::string read_file(const std::string &path);
// Writes atomically enough for our purposes: truncate + write; IoError on
// failure. Parent directories are created.
void write_file(const std::string &path, const std::string &contents);

// ----- corpus JSONL: a {"meta": ...} line, then one review per line -----
std::string corpus_to_jsonl(const std::vector<CleanReview> &reviews,
                            const std::optional<ArtifactMeta> &meta);
// Throws SchemaError on malformed lines.
std::vector<CleanReview> corpus_from_jsonl(const std::string &text);

// ----- label matrix CSV -----
std::string label_matrix_to_csv(const LabelMatrix &matrix, const std::optional<ArtifactMeta> &meta);
// Cardinality is taken from the leading comment when present, otherwise
// inferred as max(2, max label + 1).
LabelMatrix label_matrix_from_csv(const std::string &text);

// ----- rule reports -----
// Header "Labeling Function,Polarity,Coverage,Overlaps,Conflicts".
std::string rule_report_to_csv(const RuleReport &report, const std::optional<ArtifactMeta> &meta);
// Aligned text table with the same columns.
std::string rule_report_to_text(const RuleReport &report);

// ----- probabilistic labels JSONL: {"id": i, "proba": [...]} -----
std::string proba_to_jsonl(const std::vector<std::vector<double>> &rows,
                           const std::optional<ArtifactMeta> &meta);
std::vector<std::vector<double>> proba_from_jsonl(const std::string &text,
                                                  std::size_t expected_width);

// ----- label model -----
Json label_model_to_json(const LabelModelParams &params, const std::optional<ArtifactMeta> &meta);
LabelModelParams label_model_from_json(const Json &j);

// ----- metrics -----
// Header "Macro F1,Macro Precision,Macro Recall,Micro F1,Micro Precision,Micro Recall,Hamming Loss".
std::string metrics_to_csv(const MetricsReport &report, const std::optional<ArtifactMeta> &meta);
Json metrics_to_json(const MetricsReport &report);

// ----- classifier bundle -----
// Everything needed to featurize and score a cleaned review.
struct ModelBundle {
  Vocabulary vocab;
  AspectLexicon lexicon;
  FeatureMode mode = FeatureMode::kTfidf;
  std::string embeddings_path;
  TrainConfig config;
  ClassifierParams params;
};

Json model_to_json(const ModelBundle &bundle, const std::optional<ArtifactMeta> &meta);
// Throws SchemaError on missing fields or inconsistent shapes.
ModelBundle model_from_json(const Json &j);

std::string loss_trace_to_csv(const std::vector<double> &trace,
                              const std::optional<ArtifactMeta> &meta);

// ----- evaluation set -----
// One object per line: {"rating": "pos"|"neg", "title": str (optional),
// "body": str, "aspects": [int...], "sentiment": int}.
struct GoldExample {
  RawReview review;
  std::set<int> aspects;
  int sentiment = 0;
};
// Throws SchemaError naming the line and field.
std::vector<GoldExample> gold_from_jsonl(const std::string &text);
std::string gold_to_jsonl(const std::vector<GoldExample> &examples);

std::string predictions_to_jsonl(const std::vector<std::size_t> &ids,
                                 const std::vector<Prediction> &predictions,
                                 const std::optional<ArtifactMeta> &meta);

}  // namespace weaklabel

#endif  // WEAKLABEL_IO_H_
