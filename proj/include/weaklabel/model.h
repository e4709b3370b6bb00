#ifndef WEAKLABEL_MODEL_H_
#define WEAKLABEL_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "weaklabel/corpus.h"
#include "weaklabel/labeling.h"
#include "weaklabel/lexicon.h"

namespace weaklabel {

// ---------------------------------------------------------------------------
// Features
// ---------------------------------------------------------------------------

class Vocabulary {
 public:
  Vocabulary() = default;
  // tokens[i] has document frequency doc_freq[i] over num_docs documents.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> doc_freq,
             std::size_t num_docs);

  std::size_t size() const { return tokens_.size(); }
  std::size_t num_docs() const { return num_docs_; }
  const std::vector<std::string> &tokens() const { return tokens_; }
  const std::vector<std::size_t> &doc_freq() const { return doc_freq_; }
  std::optional<std::size_t> find(const std::string &token) const;
  // Smoothed inverse document frequency: log((1 + N) / (1 + df)) + 1.
  double idf(std::size_t index) const;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> doc_freq_;
  std::size_t num_docs_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

// Tokens ranked by document frequency (ties lexicographic), kept when they
// occur in at least min_freq documents, truncated to max_size. Throws
// EmptyTrainingSet on an empty corpus and EmptyVocabulary when nothing
// survives.
Vocabulary build_vocab(std::span<const CleanReview> corpus, std::size_t max_size = 5000,
                       std::size_t min_freq = 2);

enum class FeatureMode { kTfidf, kEmbedding };

std::string_view feature_mode_name(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view name);

struct EmbeddingTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;
  std::size_t skipped = 0;
};

// GloVe-style text: "token v1 v2 ... vD" per line. Lines with a different
// value count than the first parsed line are skipped and counted when they
// are a minority; throws InconsistentDimension when no single dimension
// dominates, EmptyTable when nothing parses, IoError when unreadable.
EmbeddingTable load_embeddings(const std::string &path);

struct FeatureVector {
  std::vector<double> text;
  std::array<double, kNumAspects> aspects{};
  double rating = 0.0;

  std::size_t dim() const { return text.size() + kNumAspects + 1; }
  // text, then the five aspect indicators, then rating.
  std::vector<double> flatten() const;
};

// Text features are TF-IDF over model_tokens (L2-normalised) or, in
// embedding mode, the mean vector of match tokens found in the table.
// Throws MissingEmbeddings in embedding mode without a table.
FeatureVector featurize(const CleanReview &review, const Vocabulary &vocab,
                        const AspectLexicon &lex, FeatureMode mode,
                        const EmbeddingTable *embeddings = nullptr);

// ---------------------------------------------------------------------------
// Network
// ---------------------------------------------------------------------------

inline constexpr int kAspectOutputs = kNumAspects;
inline constexpr int kSentimentOutputs = kSentimentCardinality;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// input -> ReLU hidden trunk -> sigmoid aspect head (5) + softmax sentiment
// head (3). Also used as the gradient container.
struct ClassifierParams {
  Matrix trunk_w;
  std::vector<double> trunk_b;
  Matrix aspect_w;
  std::vector<double> aspect_b;
  Matrix sentiment_w;
  std::vector<double> sentiment_b;

  std::size_t input_dim() const { return trunk_w.cols; }
  std::size_t hidden_dim() const { return trunk_w.rows; }

  static ClassifierParams Zeros(std::size_t input_dim, std::size_t hidden_dim);
  // He-uniform weights, zero biases.
  static ClassifierParams Init(std::size_t input_dim, std::size_t hidden_dim,
                               std::uint64_t seed);

  // Visits (values, is_weight) for the six tensors in a fixed order.
  template <typename F>
  void for_each_tensor(F &&f) {
    f(trunk_w.data, true);
    f(trunk_b, false);
    f(aspect_w.data, true);
    f(aspect_b, false);
    f(sentiment_w.data, true);
    f(sentiment_b, false);
  }
  template <typename F>
  void for_each_tensor(F &&f) const {
    f(trunk_w.data, true);
    f(trunk_b, false);
    f(aspect_w.data, true);
    f(aspect_b, false);
    f(sentiment_w.data, true);
    f(sentiment_b, false);
  }

  // Sum of squared weights, biases excluded.
  double weight_sq_norm() const;
  bool all_finite() const;
};

using Gradients = ClassifierParams;

struct Dropout {
  double rate = 0.0;
  std::uint64_t seed = 0;
};

struct Activations {
  std::vector<double> pre;     // W x + b
  std::vector<double> hidden;  // ReLU(pre) * dropout mask
  std::vector<double> mask;    // 0 or 1/(1-rate); all 1 outside training
  std::array<double, kAspectOutputs> aspect_probs{};
  std::array<double, kSentimentOutputs> sentiment_probs{};
};

// train_mode enables inverted dropout with the mask drawn from dropout.seed.
// Throws ShapeMismatch when x does not match the trunk input dimension.
Activations forward(const ClassifierParams &params, std::span<const double> x,
                    bool train_mode, const Dropout &dropout = {});

struct Targets {
  std::array<double, kAspectOutputs> aspect{};
  std::array<double, kSentimentOutputs> sentiment{};
};

inline constexpr double kLogClamp = 1e-12;

// Mean BCE over the aspect outputs + soft-target cross entropy of the
// sentiment head + (l2 / 2) * sum of squared weights.
double loss(std::span<const double> aspect_probs, std::span<const double> sentiment_probs,
            const Targets &targets, const ClassifierParams &params, double l2);

// Analytic gradient of loss() for one example, replaying the same dropout.
Gradients backward(const ClassifierParams &params, std::span<const double> x,
                   const Targets &targets, double l2, bool train_mode,
                   const Dropout &dropout = {});

// Sum over the batch of per-example data gradients (no L2 term, no
// averaging).
Gradients batch_data_gradient(const ClassifierParams &params,
                              std::span<const std::vector<double>> xs,
                              std::span<const Targets> targets, bool train_mode,
                              std::span<const Dropout> dropouts);

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  double l2 = 1e-4;
  double dropout = 0.2;
  int epochs = 30;
  std::size_t batch_size = 32;
  std::size_t hidden = 128;
  std::uint64_t seed = 42;

  // Throws InvalidConfig.
  void Validate() const;
};

struct TrainResult {
  ClassifierParams params;
  std::vector<double> loss_trace;  // mean training loss per epoch
};

// Mini-batch SGD with momentum over shuffled examples. Deterministic in
// (inputs, cfg). Throws EmptyTrainingSet / LengthMismatch.
TrainResult train(std::span<const std::vector<double>> features,
                  std::span<const Targets> targets, const TrainConfig &cfg);

struct Prediction {
  std::set<int> aspects;
  int sentiment = 0;
  std::array<double, kAspectOutputs> aspect_probs{};
  std::array<double, kSentimentOutputs> sentiment_probs{};
};

Prediction decide(std::span<const double> aspect_probs,
                  std::span<const double> sentiment_probs, double aspect_threshold = 0.5);
Prediction predict(const ClassifierParams &params, std::span<const double> x,
                   double aspect_threshold = 0.5);

// Weak-label targets: aspect indicators of the voted aspect set and the
// label-model posterior for sentiment.
Targets make_targets(std::span<const double> aspect_proba,
                     std::span<const double> sentiment_posterior);

}  // namespace weaklabel

#endif  // WEAKLABEL_MODEL_H_
