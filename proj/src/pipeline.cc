#include "weaklabel/pipeline.h"

#include "weaklabel/error.h"

namespace weaklabel {

AspectLabeling label_aspects(std::span<const CleanReview> corpus, const AspectLexicon &lex,
                             const LabelingConfig &cfg) {
  AspectLabeling out;
  out.matrix = apply_aspect_rules(corpus, lex, cfg);
  out.report = analyze_rules(out.matrix);
  const VoterConfig voter{kNumAspects};
  out.proba.reserve(out.matrix.rows());
  for (std::size_t i = 0; i < out.matrix.rows(); ++i) {
    out.proba.push_back(majority_proba(out.matrix.row(i), voter));
  }
  return out;
}

SentimentLabeling label_sentiment(std::span<const CleanReview> corpus,
                                  const SentimentLexicon &lex,
                                  const LabelModelOptions &options) {
  SentimentLabeling out;
  out.matrix = apply_sentiment_rules(corpus, lex);
  out.report = analyze_rules(out.matrix);
  out.model = fit_label_model(out.matrix, kSentimentCardinality, options);
  out.posteriors.reserve(out.matrix.rows());
  for (std::size_t i = 0; i < out.matrix.rows(); ++i) {
    out.posteriors.push_back(lm_posterior(out.model, out.matrix.row(i)));
  }
  return out;
}

std::vector<double> bundle_features(const ModelBundle &bundle, const CleanReview &review,
                                    const EmbeddingTable *embeddings) {
  return featurize(review, bundle.vocab, bundle.lexicon, bundle.mode, embeddings).flatten();
}

TrainedModel train_classifier(std::span<const CleanReview> corpus,
                              std::span<const std::vector<double>> aspect_proba,
                              std::span<const std::vector<double>> sentiment_posteriors,
                              const AspectLexicon &lex, const TrainOptions &options) {
  if (corpus.empty()) throw EmptyTrainingSet("no reviews to train on");
  if (aspect_proba.size() != corpus.size() || sentiment_posteriors.size() != corpus.size()) {
    throw LengthMismatch("weak labels do not align with the corpus");
  }
  TrainedModel out;
  ModelBundle &bundle = out.bundle;
  bundle.lexicon = lex;
  bundle.mode = options.mode;
  bundle.embeddings_path = options.embeddings_path;
  bundle.config = options.config;
  if (options.mode == FeatureMode::kTfidf) {
    bundle.vocab = build_vocab(corpus, options.max_vocab, options.min_freq);
  } else if (options.embeddings == nullptr) {
    throw MissingEmbeddings("embedding mode requires a loaded embedding table");
  }

  std::vector<std::vector<double>> features;
  std::vector<Targets> targets;
  features.reserve(corpus.size());
  targets.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    features.push_back(bundle_features(bundle, corpus[i], options.embeddings));
    targets.push_back(make_targets(aspect_proba[i], sentiment_posteriors[i]));
  }
  TrainResult result = train(features, targets, options.config);
  bundle.params = std::move(result.params);
  out.loss_trace = std::move(result.loss_trace);
  return out;
}

Prediction predict_review(const ModelBundle &bundle, const CleanReview &review,
                          const EmbeddingTable *embeddings, double aspect_threshold) {
  return predict(bundle.params, bundle_features(bundle, review, embeddings), aspect_threshold);
}

Evaluation evaluate_model(const ModelBundle &bundle, std::span<const GoldExample> gold,
                          const StopwordSet &stopwords, const EmbeddingTable *embeddings) {
  Evaluation out;
  std::vector<std::set<int>> truth_aspects, pred_aspects;
  std::vector<int> truth_sent, pred_sent;
  for (const GoldExample &ex : gold) {
    Prediction p = predict_review(bundle, clean(ex.review, stopwords), embeddings);
    truth_aspects.push_back(ex.aspects);
    pred_aspects.push_back(p.aspects);
    truth_sent.push_back(ex.sentiment);
    pred_sent.push_back(p.sentiment);
    out.predictions.push_back(std::move(p));
  }
  out.aspect = multilabel_metrics(truth_aspects, pred_aspects, kNumAspects);
  out.sentiment = multiclass_metrics(truth_sent, pred_sent, kSentimentCardinality);
  return out;
}

}  // namespace weaklabel
