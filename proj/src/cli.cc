#include "weaklabel/cli.h"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "weaklabel/error.h"
#include "weaklabel/io.h"
#include "weaklabel/pipeline.h"

#ifndef WEAKLABEL_DATA_DIR
#define WEAKLABEL_DATA_DIR "data"
#endif

namespace weaklabel {
namespace {

namespace fs = std::filesystem;

// Carries an explicit exit code out of a stage.
class StageFailure : public Error {
 public:
  StageFailure(int code, const std::string &what) : Error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

std::string data_path(const std::string &rel) {
  return (fs::path(WEAKLABEL_DATA_DIR) / rel).string();
}

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

// Flags registered on a subcommand fall back to the same-named key of the
// --config file when absent from the command line.
class Settings {
 public:
  explicit Settings(CLI::App *app) : app_(app) {}

  template <typename T>
  CLI::Option *add(const std::string &key, T &var, const std::string &help) {
    CLI::Option *opt = app_->add_option(flag_name(key), var, help)->capture_default_str();
    fallbacks_.push_back([opt, key, &var](const Json &cfg) {
      if (opt->count() == 0 && cfg.contains(key)) {
        try {
          var = cfg.at(key).get<T>();
        } catch (const Json::exception &) {
          throw SchemaError("config key '" + key + "' has the wrong type");
        }
      }
    });
    return opt;
  }

  void apply(const Json &cfg) const {
    for (const auto &f : fallbacks_) f(cfg);
  }

 private:
  CLI::App *app_;
  std::vector<std::function<void(const Json &)>> fallbacks_;
};

struct Globals {
  std::string config_path;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  std::string stopwords = data_path("stopwords.txt");
  std::string lexicon_dir = data_path("aspects");
  std::string sentiment_dir = data_path("sentiment");

  std::string out(const std::string &name) const { return (fs::path(out_dir) / name).string(); }
};

ArtifactMeta stamp(const std::string &stage, const Json &params, std::uint64_t seed) {
  Json hashed = params;
  hashed["seed"] = seed;
  return ArtifactMeta{stage, config_hash(hashed), seed};
}

std::string require_task(const std::string &task) {
  if (task != "aspect" && task != "sentiment") {
    throw InvalidConfig("--task must be 'aspect' or 'sentiment', got '" + task + "'");
  }
  return task;
}

Json read_json(const std::string &path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw SchemaError(path + ": invalid JSON (" + e.what() + ")");
  }
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string input;
  std::size_t limit = 0;
};

int cmd_ingest(const Globals &g, const IngestArgs &a, std::ostream &out) {
  const StopwordSet stopwords = StopwordSet::Load(g.stopwords);
  std::optional<std::size_t> limit;
  if (a.limit > 0) limit = a.limit;
  const LoadedCorpus corpus = load_corpus(a.input, stopwords, limit);
  const Json params = {{"limit", a.limit}};
  write_file(g.out("corpus.jsonl"), corpus_to_jsonl(corpus.reviews, stamp("ingest", params, g.seed)));
  out << "reviews: " << corpus.reviews.size() << "\n"
      << "skipped: " << corpus.skipped << "\n"
      << "wrote: " << g.out("corpus.jsonl") << "\n";
  return kExitOk;
}

struct LabelArgs {
  std::string task;
  std::string corpus;
  int min_matches = 1;
  int max_iter = 100;
  double tol = 1e-6;
  double smoothing = 0.01;
};

int cmd_label(const Globals &g, const LabelArgs &a, std::ostream &out) {
  const std::string task = require_task(a.task);
  const std::string corpus_path = a.corpus.empty() ? g.out("corpus.jsonl") : a.corpus;
  const std::vector<CleanReview> corpus = corpus_from_jsonl(read_file(corpus_path));
  if (corpus.empty()) throw EmptyMatrix("corpus " + corpus_path + " has no reviews");

  if (task == "aspect") {
    const AspectLexicon lex = AspectLexicon::Load(g.lexicon_dir);
    const LabelingConfig cfg{a.min_matches};
    const AspectLabeling result = label_aspects(corpus, lex, cfg);
    const ArtifactMeta meta = stamp("label-aspect", {{"min_matches", a.min_matches}}, g.seed);
    write_file(g.out("aspect_matrix.csv"), label_matrix_to_csv(result.matrix, meta));
    write_file(g.out("aspect_report.csv"), rule_report_to_csv(result.report, meta));
    write_file(g.out("aspect_labels.jsonl"), proba_to_jsonl(result.proba, meta));
    out << rule_report_to_text(result.report);
    return kExitOk;
  }

  const SentimentLexicon lex = SentimentLexicon::Load(g.sentiment_dir);
  LabelModelOptions options;
  options.seed = g.seed;
  options.max_iter = a.max_iter;
  options.tol = a.tol;
  options.smoothing = a.smoothing;
  const SentimentLabeling result = label_sentiment(corpus, lex, options);
  const Json params = {{"max_iter", a.max_iter}, {"tol", a.tol}, {"smoothing", a.smoothing}};
  const ArtifactMeta meta = stamp("label-sentiment", params, g.seed);
  write_file(g.out("sentiment_matrix.csv"), label_matrix_to_csv(result.matrix, meta));
  write_file(g.out("sentiment_report.csv"), rule_report_to_csv(result.report, meta));
  write_file(g.out("sentiment_labels.jsonl"), proba_to_jsonl(result.posteriors, meta));
  write_file(g.out("label_model.json"), label_model_to_json(result.model, meta).dump(2) + "\n");
  out << rule_report_to_text(result.report);
  out << "label model: " << result.model.iterations << " iterations, log-likelihood "
      << format_fixed(result.model.log_likelihood) << "\n";
  return kExitOk;
}

struct ReportArgs {
  std::string task;
  std::string matrix;
};

int cmd_lf_report(const Globals &g, const ReportArgs &a, std::ostream &out) {
  const std::string task = require_task(a.task);
  const std::string path = a.matrix.empty() ? g.out(task + "_matrix.csv") : a.matrix;
  const LabelMatrix matrix = label_matrix_from_csv(read_file(path));
  const RuleReport report = analyze_rules(matrix);
  out << rule_report_to_text(report);
  return kExitOk;
}

struct TrainArgs {
  std::string corpus;
  std::string aspect_labels;
  std::string sentiment_labels;
  std::string feature_mode = "tfidf";
  std::string embeddings;
  std::size_t max_vocab = 5000;
  std::size_t min_freq = 2;
  TrainConfig config;
};

// Training inputs that cannot be read are training errors, not IO errors.
std::string read_training_input(const std::string &path, const char *what) {
  if (!fs::exists(path)) {
    throw StageFailure(kExitTraining, std::string("missing ") + what + " file: " + path);
  }
  try {
    return read_file(path);
  } catch (const IoError &e) {
    throw StageFailure(kExitTraining, std::string("cannot read ") + what + " file: " + path);
  }
}

int cmd_train(const Globals &g, TrainArgs a, std::ostream &out) {
  a.config.seed = g.seed;
  a.config.Validate();
  const std::string corpus_path = a.corpus.empty() ? g.out("corpus.jsonl") : a.corpus;
  const std::string aspect_path =
      a.aspect_labels.empty() ? g.out("aspect_labels.jsonl") : a.aspect_labels;
  const std::string sentiment_path =
      a.sentiment_labels.empty() ? g.out("sentiment_labels.jsonl") : a.sentiment_labels;

  const std::vector<CleanReview> corpus =
      corpus_from_jsonl(read_training_input(corpus_path, "corpus"));
  const auto aspect_proba =
      proba_from_jsonl(read_training_input(aspect_path, "aspect labels"), kNumAspects);
  const auto sentiment_post = proba_from_jsonl(
      read_training_input(sentiment_path, "sentiment labels"), kSentimentCardinality);
  if (corpus.empty()) throw EmptyTrainingSet("corpus " + corpus_path + " has no reviews");

  const AspectLexicon lex = AspectLexicon::Load(g.lexicon_dir);
  TrainOptions options;
  options.config = a.config;
  options.mode = parse_feature_mode(a.feature_mode);
  options.max_vocab = a.max_vocab;
  options.min_freq = a.min_freq;
  std::optional<EmbeddingTable> table;
  if (options.mode == FeatureMode::kEmbedding) {
    if (a.embeddings.empty()) throw MissingEmbeddings("--embeddings is required in embedding mode");
    table = load_embeddings(a.embeddings);
    options.embeddings = &*table;
    options.embeddings_path = a.embeddings;
  }
  TrainedModel model;
  try {
    model = train_classifier(corpus, aspect_proba, sentiment_post, lex, options);
  } catch (const LengthMismatch &e) {
    throw StageFailure(kExitTraining, e.what());
  }

  const Json params = {{"feature_mode", a.feature_mode},
                       {"max_vocab", a.max_vocab},
                       {"min_freq", a.min_freq},
                       {"learning_rate", a.config.learning_rate},
                       {"momentum", a.config.momentum},
                       {"l2", a.config.l2},
                       {"dropout", a.config.dropout},
                       {"epochs", a.config.epochs},
                       {"batch_size", a.config.batch_size},
                       {"hidden", a.config.hidden}};
  const ArtifactMeta meta = stamp("train", params, g.seed);
  write_file(g.out("model.json"), model_to_json(model.bundle, meta).dump() + "\n");
  write_file(g.out("loss_trace.csv"), loss_trace_to_csv(model.loss_trace, meta));
  out << "epochs: " << model.loss_trace.size() << "\n";
  if (!model.loss_trace.empty()) {
    out << "final loss: " << format_fixed(model.loss_trace.back()) << "\n";
  }
  out << "wrote: " << g.out("model.json") << "\n";
  return kExitOk;
}

struct ModelArgs {
  std::string model;
  std::string embeddings;
};

struct LoadedModel {
  ModelBundle bundle;
  std::optional<EmbeddingTable> table;
  const EmbeddingTable *embeddings() const { return table ? &*table : nullptr; }
};

LoadedModel load_model(const Globals &g, const ModelArgs &a) {
  LoadedModel m;
  m.bundle = model_from_json(read_json(a.model.empty() ? g.out("model.json") : a.model));
  if (m.bundle.mode == FeatureMode::kEmbedding) {
    const std::string path = a.embeddings.empty() ? m.bundle.embeddings_path : a.embeddings;
    m.table = load_embeddings(path);
  }
  return m;
}

struct EvaluateArgs {
  ModelArgs model;
  std::string gold;
};

int cmd_evaluate(const Globals &g, const EvaluateArgs &a, std::ostream &out) {
  const LoadedModel m = load_model(g, a.model);
  const std::vector<GoldExample> gold = gold_from_jsonl(read_file(a.gold));
  if (gold.empty()) throw SchemaError(a.gold + ": no evaluation examples");
  const StopwordSet stopwords = StopwordSet::Load(g.stopwords);
  const Evaluation ev = evaluate_model(m.bundle, gold, stopwords, m.embeddings());

  const ArtifactMeta meta = stamp("evaluate", Json::object(), g.seed);
  write_file(g.out("aspect_metrics.csv"), metrics_to_csv(ev.aspect, meta));
  write_file(g.out("sentiment_metrics.csv"), metrics_to_csv(ev.sentiment, meta));
  Json j;
  j["meta"] = meta.ToJson();
  j["aspect"] = metrics_to_json(ev.aspect);
  j["sentiment"] = metrics_to_json(ev.sentiment);
  write_file(g.out("metrics.json"), j.dump(2) + "\n");

  out << "aspect\n" << metrics_to_csv(ev.aspect, std::nullopt)
      << "sentiment\n" << metrics_to_csv(ev.sentiment, std::nullopt);
  return kExitOk;
}

struct PredictArgs {
  ModelArgs model;
  std::string input;
  std::string corpus;
  double threshold = 0.5;
};

int cmd_predict(const Globals &g, const PredictArgs &a, std::ostream &out) {
  const LoadedModel m = load_model(g, a.model);
  std::vector<CleanReview> corpus;
  if (!a.input.empty()) {
    corpus = load_corpus(a.input, StopwordSet::Load(g.stopwords)).reviews;
  } else {
    corpus = corpus_from_jsonl(read_file(a.corpus.empty() ? g.out("corpus.jsonl") : a.corpus));
  }
  std::vector<std::size_t> ids;
  std::vector<Prediction> preds;
  for (const CleanReview &r : corpus) {
    ids.push_back(r.id);
    preds.push_back(predict_review(m.bundle, r, m.embeddings(), a.threshold));
  }
  const ArtifactMeta meta = stamp("predict", {{"threshold", a.threshold}}, g.seed);
  write_file(g.out("predictions.jsonl"), predictions_to_jsonl(ids, preds, meta));
  out << "predictions: " << preds.size() << "\n"
      << "wrote: " << g.out("predictions.jsonl") << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Weak-supervision labeling pipeline for product reviews", "weaklabel"};
  app.require_subcommand(1);
  Globals g;
  Settings global(&app);
  app.add_option("--config", g.config_path, "JSON file supplying defaults for any flag");
  global.add("seed", g.seed, "Seed for every random choice");
  global.add("out", g.out_dir, "Directory for artifacts");
  global.add("stopwords", g.stopwords, "Stopword list");
  global.add("lexicon_dir", g.lexicon_dir, "Directory with the aspect term lists");
  global.add("sentiment_dir", g.sentiment_dir, "Directory with valence/negator/booster files");

  IngestArgs ingest;
  CLI::App *ingest_cmd = app.add_subcommand("ingest", "Parse and clean a fastText review file");
  Settings ingest_s(ingest_cmd);
  ingest_cmd->add_option("input", ingest.input, "Review file")->required();
  ingest_s.add("limit", ingest.limit, "Keep at most this many reviews (0 = all)");

  LabelArgs label;
  CLI::App *label_cmd = app.add_subcommand("label", "Apply labeling rules and aggregate");
  Settings label_s(label_cmd);
  label_cmd->add_option("--task", label.task, "aspect or sentiment")->required();
  label_s.add("corpus", label.corpus, "Cleaned corpus (default <out>/corpus.jsonl)");
  label_s.add("min_matches", label.min_matches, "Matched terms needed to vote for an aspect");
  label_s.add("max_iter", label.max_iter, "Label model EM iteration cap");
  label_s.add("tol", label.tol, "Label model convergence tolerance");
  label_s.add("smoothing", label.smoothing, "Label model additive smoothing");

  ReportArgs report;
  CLI::App *report_cmd = app.add_subcommand("lf-report", "Print the rule analysis of a label matrix");
  report_cmd->add_option("--task", report.task, "aspect or sentiment")->required();
  report_cmd->add_option("--matrix", report.matrix, "Label matrix CSV (default <out>/<task>_matrix.csv)");

  TrainArgs train_args;
  CLI::App *train_cmd = app.add_subcommand("train", "Train the classifier on weak labels");
  Settings train_s(train_cmd);
  train_s.add("corpus", train_args.corpus, "Cleaned corpus (default <out>/corpus.jsonl)");
  train_s.add("aspect_labels", train_args.aspect_labels, "Aspect labels JSONL");
  train_s.add("sentiment_labels", train_args.sentiment_labels, "Sentiment labels JSONL");
  train_s.add("feature_mode", train_args.feature_mode, "tfidf or embedding");
  train_s.add("embeddings", train_args.embeddings, "Word vector file for embedding mode");
  train_s.add("max_vocab", train_args.max_vocab, "Vocabulary size cap");
  train_s.add("min_freq", train_args.min_freq, "Minimum document frequency");
  train_s.add("learning_rate", train_args.config.learning_rate, "SGD step size");
  train_s.add("momentum", train_args.config.momentum, "SGD momentum");
  train_s.add("l2", train_args.config.l2, "L2 penalty on weights");
  train_s.add("dropout", train_args.config.dropout, "Hidden-layer dropout rate");
  train_s.add("epochs", train_args.config.epochs, "Training epochs");
  train_s.add("batch_size", train_args.config.batch_size, "Mini-batch size");
  train_s.add("hidden", train_args.config.hidden, "Hidden units");

  EvaluateArgs eval;
  CLI::App *eval_cmd = app.add_subcommand("evaluate", "Score the model against a gold set");
  Settings eval_s(eval_cmd);
  eval_cmd->add_option("--gold", eval.gold, "Gold JSONL")->required();
  eval_s.add("model", eval.model.model, "Model JSON (default <out>/model.json)");
  eval_s.add("embeddings", eval.model.embeddings, "Override the model's embedding file");

  PredictArgs predict_args;
  CLI::App *predict_cmd = app.add_subcommand("predict", "Label reviews with the trained model");
  Settings predict_s(predict_cmd);
  predict_s.add("model", predict_args.model.model, "Model JSON (default <out>/model.json)");
  predict_s.add("embeddings", predict_args.model.embeddings, "Override the model's embedding file");
  predict_s.add("input", predict_args.input, "fastText review file");
  predict_s.add("corpus", predict_args.corpus, "Cleaned corpus (default <out>/corpus.jsonl)");
  predict_s.add("threshold", predict_args.threshold, "Aspect probability threshold");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json cfg = Json::object();
    if (!g.config_path.empty()) {
      cfg = read_json(g.config_path);
      if (!cfg.is_object()) throw SchemaError(g.config_path + ": config must be a JSON object");
    }
    global.apply(cfg);
    if (ingest_cmd->parsed()) {
      ingest_s.apply(cfg);
      return cmd_ingest(g, ingest, out);
    }
    if (label_cmd->parsed()) {
      label_s.apply(cfg);
      return cmd_label(g, label, out);
    }
    if (report_cmd->parsed()) return cmd_lf_report(g, report, out);
    if (train_cmd->parsed()) {
      train_s.apply(cfg);
      return cmd_train(g, train_args, out);
    }
    if (eval_cmd->parsed()) {
      eval_s.apply(cfg);
      return cmd_evaluate(g, eval, out);
    }
    predict_s.apply(cfg);
    return cmd_predict(g, predict_args, out);
  } catch (const StageFailure &e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const EmptyMatrix &e) {
    err << "error: " << e.what() << "\n";
    return kExitMatrix;
  } catch (const DegenerateMatrix &e) {
    err << "error: " << e.what() << "\n";
    return kExitMatrix;
  } catch (const InvalidMatrix &e) {
    err << "error: " << e.what() << "\n";
    return kExitMatrix;
  } catch (const EmptyTrainingSet &e) {
    err << "error: " << e.what() << "\n";
    return kExitTraining;
  } catch (const EmptyVocabulary &e) {
    err << "error: " << e.what() << "\n";
    return kExitTraining;
  } catch (const MissingEmbeddings &e) {
    err << "error: " << e.what() << "\n";
    return kExitTraining;
  } catch (const InconsistentDimension &e) {
    err << "error: " << e.what() << "\n";
    return kExitTraining;
  } catch (const EmptyTable &e) {
    err << "error: " << e.what() << "\n";
    return kExitTraining;
  } catch (const SchemaError &e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const LengthMismatch &e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace weaklabel
