#ifndef WEAKLABEL_PIPELINE_H_
#define WEAKLABEL_PIPELINE_H_

#include <span>
#include <string>
#include <vector>

#include "weaklabel/aggregation.h"
#include "weaklabel/io.h"
#include "weaklabel/labeling.h"
#include "weaklabel/metrics.h"
#include "weaklabel/model.h"

namespace weaklabel {

// Stage functions shared by the CLI and the end-to-end tests. Each is a pure
// function of its arguments.

struct AspectLabeling {
  LabelMatrix matrix;
  RuleReport report;
  std::vector<std::vector<double>> proba;  // majority-vote shares per review
};

AspectLabeling label_aspects(std::span<const CleanReview> corpus, const AspectLexicon &lex,
                             const LabelingConfig &cfg);

struct SentimentLabeling {
  LabelMatrix matrix;
  RuleReport report;
  LabelModelParams model;
  std::vector<std::vector<double>> posteriors;
};

SentimentLabeling label_sentiment(std::span<const CleanReview> corpus,
                                  const SentimentLexicon &lex,
                                  const LabelModelOptions &options);

struct TrainOptions {
  TrainConfig config;
  FeatureMode mode = FeatureMode::kTfidf;
  std::size_t max_vocab = 5000;
  std::size_t min_freq = 2;
  const EmbeddingTable *embeddings = nullptr;
  std::string embeddings_path;
};

struct TrainedModel {
  ModelBundle bundle;
  std::vector<double> loss_trace;
};

// Builds the vocabulary (TF-IDF mode), featurizes, converts weak labels to
// targets and trains. Throws EmptyTrainingSet / LengthMismatch.
TrainedModel train_classifier(std::span<const CleanReview> corpus,
                              std::span<const std::vector<double>> aspect_proba,
                              std::span<const std::vector<double>> sentiment_posteriors,
                              const AspectLexicon &lex, const TrainOptions &options);

std::vector<double> bundle_features(const ModelBundle &bundle, const CleanReview &review,
                                    const EmbeddingTable *embeddings);

Prediction predict_review(const ModelBundle &bundle, const CleanReview &review,
                          const EmbeddingTable *embeddings, double aspect_threshold = 0.5);

struct Evaluation {
  MetricsReport aspect;
  MetricsReport sentiment;
  std::vector<Prediction> predictions;
};

Evaluation evaluate_model(const ModelBundle &bundle, std::span<const GoldExample> gold,
                          const StopwordSet &stopwords, const EmbeddingTable *embeddings);

}  // namespace weaklabel

#endif  // WEAKLABEL_PIPELINE_H_
