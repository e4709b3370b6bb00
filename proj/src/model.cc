#include "weaklabel/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_set>

#include "weaklabel/aggregation.h"
#include "weaklabel/error.h"
#include "weaklabel/random.h"
#include "weaklabel/text.h"

namespace weaklabel {

// ---------------------------------------------------------------------------
// Vocabulary and features
// ---------------------------------------------------------------------------

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::size_t> doc_freq,
                       std::size_t num_docs)
    : tokens_(std::move(tokens)), doc_freq_(std::move(doc_freq)), num_docs_(num_docs) {
  if (tokens_.size() != doc_freq_.size()) {
    throw ShapeMismatch("vocabulary tokens and frequencies differ in length");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw InvalidConfig("duplicate vocabulary token " + tokens_[i]);
    }
  }
}

std::optional<std::size_t> Vocabulary::find(const std::string &token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::idf(std::size_t index) const {
  return std::log((1.0 + static_cast<double>(num_docs_)) /
                  (1.0 + static_cast<double>(doc_freq_[index]))) +
         1.0;
}

Vocabulary build_vocab(std::span<const CleanReview> corpus, std::size_t max_size,
                       std::size_t min_freq) {
  if (corpus.empty()) throw EmptyTrainingSet("cannot build a vocabulary from no documents");
  std::map<std::string, std::size_t> df;
  for (const CleanReview &review : corpus) {
    std::unordered_set<std::string> seen(review.model_tokens.begin(),
                                         review.model_tokens.end());
    for (const std::string &token : seen) ++df[token];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto &[token, count] : df) {
    if (count >= min_freq) ranked.emplace_back(token, count);
  }
  if (ranked.empty()) throw EmptyVocabulary("no token reaches min_freq");
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > max_size) ranked.resize(max_size);
  std::vector<std::string> tokens;
  std::vector<std::size_t> freqs;
  for (auto &[token, count] : ranked) {
    tokens.push_back(token);
    freqs.push_back(count);
  }
  return Vocabulary(std::move(tokens), std::move(freqs), corpus.size());
}

std::string_view feature_mode_name(FeatureMode mode) {
  return mode == FeatureMode::kTfidf ? "tfidf" : "embedding";
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "tfidf") return FeatureMode::kTfidf;
  if (name == "embedding") return FeatureMode::kEmbedding;
  throw InvalidConfig("unknown feature mode '" + std::string(name) + "'");
}

EmbeddingTable load_embeddings(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings " + path);
  std::vector<std::pair<std::string, std::vector<double>>> parsed;
  std::size_t malformed = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      ++malformed;
      continue;
    }
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    bool ok = true;
    for (std::size_t i = 1; i < fields.size() && ok; ++i) {
      char *end = nullptr;
      double v = std::strtod(fields[i].c_str(), &end);
      ok = end != nullptr && *end == '\0' && std::isfinite(v);
      values.push_back(v);
    }
    if (!ok) {
      ++malformed;
      continue;
    }
    parsed.emplace_back(std::move(fields[0]), std::move(values));
  }
  if (parsed.empty()) throw EmptyTable("no embedding vectors in " + path);

  std::map<std::size_t, std::size_t> dims;
  for (const auto &entry : parsed) ++dims[entry.second.size()];
  auto dominant = std::max_element(dims.begin(), dims.end(), [](const auto &a, const auto &b) {
    return a.second < b.second;
  });
  if (dominant->second * 2 <= parsed.size()) {
    throw InconsistentDimension("no dominant vector dimension in " + path);
  }
  EmbeddingTable table;
  table.dim = dominant->first;
  table.skipped = malformed;
  for (auto &[token, values] : parsed) {
    if (values.size() != table.dim) {
      ++table.skipped;
      continue;
    }
    table.vectors.emplace(std::move(token), std::move(values));
  }
  return table;
}

std::vector<double> FeatureVector::flatten() const {
  std::vector<double> out;
  out.reserve(dim());
  out.insert(out.end(), text.begin(), text.end());
  out.insert(out.end(), aspects.begin(), aspects.end());
  out.push_back(rating);
  return out;
}

FeatureVector featurize(const CleanReview &review, const Vocabulary &vocab,
                        const AspectLexicon &lex, FeatureMode mode,
                        const EmbeddingTable *embeddings) {
  FeatureVector fv;
  if (mode == FeatureMode::kTfidf) {
    fv.text.assign(vocab.size(), 0.0);
    for (const std::string &token : review.model_tokens) {
      if (auto idx = vocab.find(token)) fv.text[*idx] += 1.0;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < fv.text.size(); ++i) {
      if (fv.text[i] == 0.0) continue;
      fv.text[i] *= vocab.idf(i);
      norm += fv.text[i] * fv.text[i];
    }
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (double &v : fv.text) v /= norm;
    }
  } else {
    if (embeddings == nullptr || embeddings->dim == 0) {
      throw MissingEmbeddings("embedding mode requires a loaded embedding table");
    }
    fv.text.assign(embeddings->dim, 0.0);
    std::size_t found = 0;
    for (const std::string &token : match_tokens(review.match_text)) {
      auto it = embeddings->vectors.find(token);
      if (it == embeddings->vectors.end()) continue;
      for (std::size_t d = 0; d < embeddings->dim; ++d) fv.text[d] += it->second[d];
      ++found;
    }
    if (found > 0) {
      for (double &v : fv.text) v /= static_cast<double>(found);
    }
  }
  AspectMatches matches = match_counts(review, lex);
  for (int a = 0; a < kNumAspects; ++a) fv.aspects[a] = matches[a].count >= 1 ? 1.0 : 0.0;
  fv.rating = review.rating == Rating::kPos ? 1.0 : 0.0;
  return fv;
}

// ---------------------------------------------------------------------------
// Network
// ---------------------------------------------------------------------------

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

std::array<double, kSentimentOutputs> softmax(const std::array<double, kSentimentOutputs> &z) {
  double peak = *std::max_element(z.begin(), z.end());
  std::array<double, kSentimentOutputs> out{};
  double sum = 0.0;
  for (int k = 0; k < kSentimentOutputs; ++k) {
    out[k] = std::exp(z[k] - peak);
    sum += out[k];
  }
  for (double &v : out) v /= sum;
  return out;
}

void check_input(const ClassifierParams &params, std::span<const double> x) {
  if (x.size() != params.input_dim()) {
    throw ShapeMismatch("input has dimension " + std::to_string(x.size()) +
                        ", network expects " + std::to_string(params.input_dim()));
  }
}

// Adds the data gradient of one example into grad.
void accumulate_example(const ClassifierParams &params, std::span<const double> x,
                        const Targets &targets, bool train_mode, const Dropout &dropout,
                        Gradients &grad) {
  Activations act = forward(params, x, train_mode, dropout);
  const std::size_t hidden = params.hidden_dim();

  std::array<double, kAspectOutputs> d_aspect{};
  for (int k = 0; k < kAspectOutputs; ++k) {
    d_aspect[k] = (act.aspect_probs[k] - targets.aspect[k]) / kAspectOutputs;
  }
  double target_mass = 0.0;
  for (double t : targets.sentiment) target_mass += t;
  std::array<double, kSentimentOutputs> d_sent{};
  for (int k = 0; k < kSentimentOutputs; ++k) {
    d_sent[k] = act.sentiment_probs[k] * target_mass - targets.sentiment[k];
  }

  std::vector<double> d_hidden(hidden, 0.0);
  for (int k = 0; k < kAspectOutputs; ++k) {
    grad.aspect_b[k] += d_aspect[k];
    for (std::size_t h = 0; h < hidden; ++h) {
      grad.aspect_w(k, h) += d_aspect[k] * act.hidden[h];
      d_hidden[h] += d_aspect[k] * params.aspect_w(k, h);
    }
  }
  for (int k = 0; k < kSentimentOutputs; ++k) {
    grad.sentiment_b[k] += d_sent[k];
    for (std::size_t h = 0; h < hidden; ++h) {
      grad.sentiment_w(k, h) += d_sent[k] * act.hidden[h];
      d_hidden[h] += d_sent[k] * params.sentiment_w(k, h);
    }
  }
  for (std::size_t h = 0; h < hidden; ++h) {
    if (act.pre[h] <= 0.0 || act.mask[h] == 0.0) continue;
    const double d_pre = d_hidden[h] * act.mask[h];
    grad.trunk_b[h] += d_pre;
    double *row = &grad.trunk_w.data[h * grad.trunk_w.cols];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) row[i] += d_pre * x[i];
    }
  }
}

}  // namespace

ClassifierParams ClassifierParams::Zeros(std::size_t input_dim, std::size_t hidden_dim) {
  ClassifierParams p;
  p.trunk_w = Matrix(hidden_dim, input_dim);
  p.trunk_b.assign(hidden_dim, 0.0);
  p.aspect_w = Matrix(kAspectOutputs, hidden_dim);
  p.aspect_b.assign(kAspectOutputs, 0.0);
  p.sentiment_w = Matrix(kSentimentOutputs, hidden_dim);
  p.sentiment_b.assign(kSentimentOutputs, 0.0);
  return p;
}

ClassifierParams ClassifierParams::Init(std::size_t input_dim, std::size_t hidden_dim,
                                        std::uint64_t seed) {
  if (input_dim == 0 || hidden_dim == 0) throw ShapeMismatch("network dimensions must be > 0");
  ClassifierParams p = Zeros(input_dim, hidden_dim);
  Rng rng(mix_seed(seed, 0x1417));
  auto fill = [&rng](Matrix &m) {
    const double bound = std::sqrt(6.0 / static_cast<double>(m.cols));
    for (double &v : m.data) v = rng.uniform(-bound, bound);
  };
  fill(p.trunk_w);
  fill(p.aspect_w);
  fill(p.sentiment_w);
  return p;
}

double ClassifierParams::weight_sq_norm() const {
  double total = 0.0;
  for_each_tensor([&total](const std::vector<double> &values, bool is_weight) {
    if (!is_weight) return;
    for (double v : values) total += v * v;
  });
  return total;
}

bool ClassifierParams::all_finite() const {
  bool ok = true;
  for_each_tensor([&ok](const std::vector<double> &values, bool) {
    for (double v : values) ok = ok && std::isfinite(v);
  });
  return ok;
}

Activations forward(const ClassifierParams &params, std::span<const double> x,
                    bool train_mode, const Dropout &dropout) {
  check_input(params, x);
  const std::size_t hidden = params.hidden_dim();
  Activations act;
  act.pre.assign(hidden, 0.0);
  act.hidden.assign(hidden, 0.0);
  act.mask.assign(hidden, 1.0);

  if (train_mode && dropout.rate > 0.0) {
    Rng rng(dropout.seed);
    const double keep_scale = 1.0 / (1.0 - dropout.rate);
    for (double &m : act.mask) m = rng.uniform() < dropout.rate ? 0.0 : keep_scale;
  }

  for (std::size_t h = 0; h < hidden; ++h) {
    const double *row = &params.trunk_w.data[h * params.trunk_w.cols];
    double z = params.trunk_b[h];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) z += row[i] * x[i];
    }
    act.pre[h] = z;
    act.hidden[h] = (z > 0.0 ? z : 0.0) * act.mask[h];
  }

  for (int k = 0; k < kAspectOutputs; ++k) {
    double z = params.aspect_b[k];
    for (std::size_t h = 0; h < hidden; ++h) z += params.aspect_w(k, h) * act.hidden[h];
    act.aspect_probs[k] = sigmoid(z);
  }
  std::array<double, kSentimentOutputs> logits{};
  for (int k = 0; k < kSentimentOutputs; ++k) {
    double z = params.sentiment_b[k];
    for (std::size_t h = 0; h < hidden; ++h) z += params.sentiment_w(k, h) * act.hidden[h];
    logits[k] = z;
  }
  act.sentiment_probs = softmax(logits);
  return act;
}

double loss(std::span<const double> aspect_probs, std::span<const double> sentiment_probs,
            const Targets &targets, const ClassifierParams &params, double l2) {
  if (aspect_probs.size() != kAspectOutputs || sentiment_probs.size() != kSentimentOutputs) {
    throw ShapeMismatch("loss expects 5 aspect and 3 sentiment probabilities");
  }
  double bce = 0.0;
  for (int k = 0; k < kAspectOutputs; ++k) {
    const double p = aspect_probs[k];
    const double y = targets.aspect[k];
    bce -= y * std::log(std::max(p, kLogClamp)) + (1.0 - y) * std::log(std::max(1.0 - p, kLogClamp));
  }
  bce /= kAspectOutputs;
  double ce = 0.0;
  for (int k = 0; k < kSentimentOutputs; ++k) {
    ce -= targets.sentiment[k] * std::log(std::max(sentiment_probs[k], kLogClamp));
  }
  return bce + ce + 0.5 * l2 * params.weight_sq_norm();
}

Gradients backward(const ClassifierParams &params, std::span<const double> x,
                   const Targets &targets, double l2, bool train_mode, const Dropout &dropout) {
  check_input(params, x);
  Gradients grad = ClassifierParams::Zeros(params.input_dim(), params.hidden_dim());
  accumulate_example(params, x, targets, train_mode, dropout, grad);
  if (l2 != 0.0) {
    auto add_decay = [&](std::vector<double> &g, const std::vector<double> &w) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += l2 * w[i];
    };
    add_decay(grad.trunk_w.data, params.trunk_w.data);
    add_decay(grad.aspect_w.data, params.aspect_w.data);
    add_decay(grad.sentiment_w.data, params.sentiment_w.data);
  }
  return grad;
}

Gradients batch_data_gradient(const ClassifierParams &params,
                              std::span<const std::vector<double>> xs,
                              std::span<const Targets> targets, bool train_mode,
                              std::span<const Dropout> dropouts) {
  if (xs.size() != targets.size() || xs.size() != dropouts.size()) {
    throw LengthMismatch("batch inputs, targets and dropout specs differ in length");
  }
  Gradients grad = ClassifierParams::Zeros(params.input_dim(), params.hidden_dim());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_input(params, xs[i]);
    accumulate_example(params, xs[i], targets[i], train_mode, dropouts[i], grad);
  }
  return grad;
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw InvalidConfig("learning rate must be > 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidConfig("dropout must be in [0, 1)");
  if (!(l2 >= 0.0)) throw InvalidConfig("l2 must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw InvalidConfig("momentum must be in [0, 1)");
  if (epochs < 1) throw InvalidConfig("epochs must be >= 1");
  if (batch_size < 1) throw InvalidConfig("batch size must be >= 1");
  if (hidden < 1) throw InvalidConfig("hidden size must be >= 1");
}

TrainResult train(std::span<const std::vector<double>> features,
                  std::span<const Targets> targets, const TrainConfig &cfg) {
  cfg.Validate();
  if (features.empty()) throw EmptyTrainingSet("no training examples");
  if (features.size() != targets.size()) {
    throw LengthMismatch("features and targets differ in length");
  }
  TrainResult result;
  result.params = ClassifierParams::Init(features[0].size(), cfg.hidden, cfg.seed);
  ClassifierParams &params = result.params;
  Gradients velocity = ClassifierParams::Zeros(params.input_dim(), params.hidden_dim());

  std::vector<std::size_t> order(features.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffler(mix_seed(cfg.seed, 0x5eed, static_cast<std::uint64_t>(epoch)));
    shuffler.shuffle(order);
    double epoch_loss = 0.0;

    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const double batch_n = static_cast<double>(end - start);
      Gradients grad = ClassifierParams::Zeros(params.input_dim(), params.hidden_dim());
      double data_loss = 0.0;
      for (std::size_t pos = start; pos < end; ++pos) {
        const std::size_t idx = order[pos];
        check_input(params, features[idx]);
        Dropout dropout{cfg.dropout, mix_seed(cfg.seed, static_cast<std::uint64_t>(epoch) + 1,
                                              static_cast<std::uint64_t>(pos))};
        Activations act = forward(params, features[idx], true, dropout);
        data_loss += loss(act.aspect_probs, act.sentiment_probs, targets[idx], params, 0.0);
        accumulate_example(params, features[idx], targets[idx], true, dropout, grad);
      }
      epoch_loss += data_loss + batch_n * 0.5 * cfg.l2 * params.weight_sq_norm();

      auto step = [&](std::vector<double> &w, std::vector<double> &v,
                      const std::vector<double> &g, bool is_weight) {
        for (std::size_t i = 0; i < w.size(); ++i) {
          double gi = g[i] / batch_n + (is_weight ? cfg.l2 * w[i] : 0.0);
          v[i] = cfg.momentum * v[i] - cfg.learning_rate * gi;
          w[i] += v[i];
        }
      };
      step(params.trunk_w.data, velocity.trunk_w.data, grad.trunk_w.data, true);
      step(params.trunk_b, velocity.trunk_b, grad.trunk_b, false);
      step(params.aspect_w.data, velocity.aspect_w.data, grad.aspect_w.data, true);
      step(params.aspect_b, velocity.aspect_b, grad.aspect_b, false);
      step(params.sentiment_w.data, velocity.sentiment_w.data, grad.sentiment_w.data, true);
      step(params.sentiment_b, velocity.sentiment_b, grad.sentiment_b, false);
    }
    result.loss_trace.push_back(epoch_loss / static_cast<double>(order.size()));
  }
  return result;
}

Prediction decide(std::span<const double> aspect_probs,
                  std::span<const double> sentiment_probs, double aspect_threshold) {
  if (aspect_probs.size() != kAspectOutputs || sentiment_probs.size() != kSentimentOutputs) {
    throw ShapeMismatch("decide expects 5 aspect and 3 sentiment probabilities");
  }
  Prediction out;
  for (int k = 0; k < kAspectOutputs; ++k) {
    out.aspect_probs[k] = aspect_probs[k];
    if (aspect_probs[k] > aspect_threshold) out.aspects.insert(k);
  }
  for (int k = 0; k < kSentimentOutputs; ++k) out.sentiment_probs[k] = sentiment_probs[k];
  out.sentiment = argmax_low(sentiment_probs);
  return out;
}

Prediction predict(const ClassifierParams &params, std::span<const double> x,
                   double aspect_threshold) {
  Activations act = forward(params, x, false);
  return decide(act.aspect_probs, act.sentiment_probs, aspect_threshold);
}

Targets make_targets(std::span<const double> aspect_proba,
                     std::span<const double> sentiment_posterior) {
  if (aspect_proba.size() != kAspectOutputs || sentiment_posterior.size() != kSentimentOutputs) {
    throw ShapeMismatch("targets need 5 aspect and 3 sentiment values");
  }
  Targets t;
  for (int k = 0; k < kAspectOutputs; ++k) t.aspect[k] = aspect_proba[k] > 0.0 ? 1.0 : 0.0;
  for (int k = 0; k < kSentimentOutputs; ++k) t.sentiment[k] = sentiment_posterior[k];
  return t;
}

}  // namespace weaklabel
