#include "weaklabel/io.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "weaklabel/error.h"
#include "weaklabel/text.h"

namespace weaklabel {
namespace {

constexpr std::string_view kCommentPrefix = "# weaklabel";

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string jsonl_line(const Json &j) { return j.dump() + "\n"; }

Json parse_json_line(const std::string &line, std::size_t lineno) {
  try {
    return Json::parse(line);
  } catch (const Json::parse_error &e) {
    throw SchemaError("line " + std::to_string(lineno) + ": invalid JSON (" + e.what() + ")");
  }
}

bool is_meta_line(const Json &j) { return j.is_object() && j.contains("meta"); }

template <typename T>
T field(const Json &obj, const char *name, std::size_t lineno) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw SchemaError("line " + std::to_string(lineno) + ": missing field '" + name + "'");
  }
  try {
    return obj.at(name).get<T>();
  } catch (const Json::exception &) {
    throw SchemaError("line " + std::to_string(lineno) + ": field '" + name +
                      "' has the wrong type");
  }
}

std::vector<std::string> split_csv_simple(const std::string &line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  out.push_back(cell);
  return out;
}

std::string polarity_text(const std::vector<int> &labels) {
  std::string out = "[";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(labels[i]);
  }
  return out + "]";
}

std::string csv_cell(const std::string &text) {
  if (text.find_first_of(",\"") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

Json matrix_json(const Matrix &m) {
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from(const Json &j, const char *name) {
  try {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols) throw SchemaError(std::string(name) + ": bad shape");
    return m;
  } catch (const Json::exception &e) {
    throw SchemaError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

Json ArtifactMeta::ToJson() const {
  return Json{{"stage", stage}, {"config_hash", config_hash}, {"seed", seed}};
}

ArtifactMeta ArtifactMeta::FromJson(const Json &j) {
  ArtifactMeta meta;
  meta.stage = j.value("stage", "");
  meta.config_hash = j.value("config_hash", "");
  meta.seed = j.value("seed", std::uint64_t{0});
  return meta;
}

std::string ArtifactMeta::CsvComment(
    const std::vector<std::pair<std::string, std::string>> &extra) const {
  std::string out = std::string(kCommentPrefix) + " stage=" + stage +
                    " config_hash=" + config_hash + " seed=" + std::to_string(seed);
  for (const auto &[k, v] : extra) out += " " + k + "=" + v;
  return out + "\n";
}

std::string config_hash(const Json &config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failure on " + path);
}

// ---------------------------------------------------------------------------

std::string corpus_to_jsonl(const std::vector<CleanReview> &reviews,
                            const std::optional<ArtifactMeta> &meta) {
  std::string out;
  if (meta) out += jsonl_line(Json{{"meta", meta->ToJson()}});
  for (const CleanReview &r : reviews) {
    out += jsonl_line(Json{{"id", r.id},
                           {"rating", std::string(rating_name(r.rating))},
                           {"match_text", r.match_text},
                           {"model_tokens", r.model_tokens}});
  }
  return out;
}

std::vector<CleanReview> corpus_from_jsonl(const std::string &text) {
  std::vector<CleanReview> reviews;
  std::size_t lineno = 0;
  for (const std::string &line : lines_of(text)) {
    ++lineno;
    if (normalize_spaces(line).empty()) continue;
    Json j = parse_json_line(line, lineno);
    if (is_meta_line(j)) continue;
    CleanReview r;
    r.id = field<std::size_t>(j, "id", lineno);
    r.rating = parse_rating_name(field<std::string>(j, "rating", lineno));
    r.match_text = field<std::string>(j, "match_text", lineno);
    r.model_tokens = field<std::vector<std::string>>(j, "model_tokens", lineno);
    reviews.push_back(std::move(r));
  }
  return reviews;
}

// ---------------------------------------------------------------------------

std::string label_matrix_to_csv(const LabelMatrix &matrix, const std::optional<ArtifactMeta> &meta) {
  std::string out;
  if (meta) out += meta->CsvComment({{"cardinality", std::to_string(matrix.cardinality())}});
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    if (j > 0) out += ",";
    out += csv_cell(matrix.rule_names()[j]);
  }
  out += "\n";
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out += ",";
      out += std::to_string(matrix.at(i, j));
    }
    out += "\n";
  }
  return out;
}

LabelMatrix label_matrix_from_csv(const std::string &text) {
  std::optional<int> cardinality;
  std::vector<std::string> names;
  std::vector<int> values;
  std::size_t rows = 0;
  bool have_header = false;
  std::size_t lineno = 0;
  for (const std::string &line : lines_of(text)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::size_t pos = line.find("cardinality=");
      if (pos != std::string::npos) {
        cardinality = std::atoi(line.c_str() + pos + std::string("cardinality=").size());
      }
      continue;
    }
    std::vector<std::string> cells = split_csv_simple(line);
    if (!have_header) {
      names = cells;
      have_header = true;
      continue;
    }
    if (cells.size() != names.size()) {
      throw SchemaError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(names.size()) + " cells");
    }
    for (const std::string &cell : cells) {
      try {
        std::size_t used = 0;
        int v = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        values.push_back(v);
      } catch (const std::exception &) {
        throw SchemaError("line " + std::to_string(lineno) + ": non-integer cell '" + cell + "'");
      }
    }
    ++rows;
  }
  if (!have_header) throw SchemaError("label matrix CSV has no header");
  if (!cardinality) {
    int top = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
    cardinality = std::max(2, top + 1);
  }
  try {
    return LabelMatrix(rows, std::move(names), *cardinality, std::move(values));
  } catch (const InvalidMatrix &e) {
    throw SchemaError(e.what());
  }
}

// ---------------------------------------------------------------------------

std::string rule_report_to_csv(const RuleReport &report, const std::optional<ArtifactMeta> &meta) {
  std::string out;
  if (meta) out += meta->CsvComment();
  out += "Labeling Function,Polarity,Coverage,Overlaps,Conflicts\n";
  for (const RuleStats &r : report.rules) {
    out += csv_cell(r.name) + "," + csv_cell(polarity_text(r.polarity)) + "," +
           format_fixed(r.coverage) + "," + format_fixed(r.overlaps) + "," +
           format_fixed(r.conflicts) + "\n";
  }
  return out;
}

std::string rule_report_to_text(const RuleReport &report) {
  const std::vector<std::string> headers = {"Labeling Function", "Polarity", "Coverage",
                                            "Overlaps", "Conflicts"};
  std::vector<std::vector<std::string>> cells;
  for (const RuleStats &r : report.rules) {
    cells.push_back({r.name, polarity_text(r.polarity), format_fixed(r.coverage),
                     format_fixed(r.overlaps), format_fixed(r.conflicts)});
  }
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto &row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto render = [&](const std::vector<std::string> &row) {
    std::string line = row[0] + std::string(width[0] - row[0].size(), ' ');
    for (std::size_t c = 1; c < row.size(); ++c) {
      line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    return line + "\n";
  };
  std::string out = render(headers);
  for (const auto &row : cells) out += render(row);
  return out;
}

// ---------------------------------------------------------------------------

std::string proba_to_jsonl(const std::vector<std::vector<double>> &rows,
                           const std::optional<ArtifactMeta> &meta) {
  std::string out;
  if (meta) out += jsonl_line(Json{{"meta", meta->ToJson()}});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += jsonl_line(Json{{"id", i}, {"proba", rows[i]}});
  }
  return out;
}

std::vector<std::vector<double>> proba_from_jsonl(const std::string &text,
                                                  std::size_t expected_width) {
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 0;
  for (const std::string &line : lines_of(text)) {
    ++lineno;
    if (normalize_spaces(line).empty()) continue;
    Json j = parse_json_line(line, lineno);
    if (is_meta_line(j)) continue;
    auto id = field<std::size_t>(j, "id", lineno);
    if (id != rows.size()) {
      throw SchemaError("line " + std::to_string(lineno) + ": ids must be 0..n-1 in order");
    }
    auto proba = field<std::vector<double>>(j, "proba", lineno);
    if (proba.size() != expected_width) {
      throw SchemaError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(expected_width) + " probabilities");
    }
    rows.push_back(std::move(proba));
  }
  return rows;
}

// ---------------------------------------------------------------------------

Json label_model_to_json(const LabelModelParams &params, const std::optional<ArtifactMeta> &meta) {
  Json j;
  if (meta) j["meta"] = meta->ToJson();
  j["cardinality"] = params.cardinality;
  j["priors"] = params.priors;
  j["confusion"] = params.confusion;
  j["iterations"] = params.iterations;
  j["log_likelihood"] = params.log_likelihood;
  j["objective_trace"] = params.objective_trace;
  j["seed"] = params.seed;
  return j;
}

LabelModelParams label_model_from_json(const Json &j) {
  try {
    LabelModelParams p;
    p.cardinality = j.at("cardinality").get<int>();
    p.priors = j.at("priors").get<std::vector<double>>();
    p.confusion = j.at("confusion").get<std::vector<std::vector<std::vector<double>>>>();
    p.iterations = j.value("iterations", 0);
    p.log_likelihood = j.value("log_likelihood", 0.0);
    p.objective_trace = j.value("objective_trace", std::vector<double>{});
    p.seed = j.value("seed", std::uint64_t{0});
    if (p.priors.size() != static_cast<std::size_t>(p.cardinality)) {
      throw SchemaError("label model priors do not match cardinality");
    }
    for (const auto &rule : p.confusion) {
      if (rule.size() != p.priors.size()) throw SchemaError("label model confusion shape");
      for (const auto &dist : rule) {
        if (dist.size() != p.priors.size() + 1) throw SchemaError("label model confusion shape");
      }
    }
    return p;
  } catch (const Json::exception &e) {
    throw SchemaError(std::string("label model: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

std::string metrics_to_csv(const MetricsReport &report, const std::optional<ArtifactMeta> &meta) {
  std::string out;
  if (meta) out += meta->CsvComment();
  const auto &cols = metrics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out += ",";
    out += cols[i];
  }
  out += "\n";
  const auto values = metrics_values(report);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_fixed(values[i]);
  }
  return out + "\n";
}

Json metrics_to_json(const MetricsReport &report) {
  Json j = Json::object();
  const auto &cols = metrics_columns();
  const auto values = metrics_values(report);
  for (std::size_t i = 0; i < cols.size(); ++i) j[std::string(cols[i])] = values[i];
  return j;
}

// ---------------------------------------------------------------------------

Json model_to_json(const ModelBundle &b, const std::optional<ArtifactMeta> &meta) {
  Json j;
  if (meta) j["meta"] = meta->ToJson();
  j["format"] = "weaklabel-classifier";
  j["version"] = 1;
  j["feature_mode"] = std::string(feature_mode_name(b.mode));
  j["embeddings_path"] = b.embeddings_path;
  j["config"] = Json{{"learning_rate", b.config.learning_rate},
                     {"momentum", b.config.momentum},
                     {"l2", b.config.l2},
                     {"dropout", b.config.dropout},
                     {"epochs", b.config.epochs},
                     {"batch_size", b.config.batch_size},
                     {"hidden", b.config.hidden},
                     {"seed", b.config.seed}};
  j["vocabulary"] = Json{{"num_docs", b.vocab.num_docs()},
                         {"tokens", b.vocab.tokens()},
                         {"doc_freq", b.vocab.doc_freq()}};
  Json lex = Json::object();
  for (int a = 0; a < kNumAspects; ++a) {
    std::vector<std::string> terms;
    for (const Term &t : b.lexicon.terms(a)) terms.push_back(t.text);
    lex[std::string(aspect_file_stem(a))] = terms;
  }
  j["aspect_lexicon"] = lex;
  j["input_dim"] = b.params.input_dim();
  j["hidden_dim"] = b.params.hidden_dim();
  j["trunk"] = Json{{"weights", matrix_json(b.params.trunk_w)}, {"bias", b.params.trunk_b}};
  j["aspect_head"] = Json{{"weights", matrix_json(b.params.aspect_w)}, {"bias", b.params.aspect_b}};
  j["sentiment_head"] =
      Json{{"weights", matrix_json(b.params.sentiment_w)}, {"bias", b.params.sentiment_b}};
  return j;
}

ModelBundle model_from_json(const Json &j) {
  try {
    if (j.value("format", "") != "weaklabel-classifier") {
      throw SchemaError("not a weaklabel classifier file");
    }
    ModelBundle b;
    b.mode = parse_feature_mode(j.at("feature_mode").get<std::string>());
    b.embeddings_path = j.value("embeddings_path", "");
    const Json &cfg = j.at("config");
    b.config.learning_rate = cfg.at("learning_rate").get<double>();
    b.config.momentum = cfg.at("momentum").get<double>();
    b.config.l2 = cfg.at("l2").get<double>();
    b.config.dropout = cfg.at("dropout").get<double>();
    b.config.epochs = cfg.at("epochs").get<int>();
    b.config.batch_size = cfg.at("batch_size").get<std::size_t>();
    b.config.hidden = cfg.at("hidden").get<std::size_t>();
    b.config.seed = cfg.at("seed").get<std::uint64_t>();
    const Json &voc = j.at("vocabulary");
    b.vocab = Vocabulary(voc.at("tokens").get<std::vector<std::string>>(),
                         voc.at("doc_freq").get<std::vector<std::size_t>>(),
                         voc.at("num_docs").get<std::size_t>());
    std::array<std::vector<std::string>, kNumAspects> terms;
    for (int a = 0; a < kNumAspects; ++a) {
      terms[a] = j.at("aspect_lexicon").at(std::string(aspect_file_stem(a)))
                     .get<std::vector<std::string>>();
    }
    b.lexicon = AspectLexicon(std::move(terms));
    b.params.trunk_w = matrix_from(j.at("trunk").at("weights"), "trunk");
    b.params.trunk_b = j.at("trunk").at("bias").get<std::vector<double>>();
    b.params.aspect_w = matrix_from(j.at("aspect_head").at("weights"), "aspect_head");
    b.params.aspect_b = j.at("aspect_head").at("bias").get<std::vector<double>>();
    b.params.sentiment_w = matrix_from(j.at("sentiment_head").at("weights"), "sentiment_head");
    b.params.sentiment_b = j.at("sentiment_head").at("bias").get<std::vector<double>>();
    const std::size_t hidden = b.params.trunk_w.rows;
    if (b.params.trunk_b.size() != hidden || b.params.aspect_w.rows != kAspectOutputs ||
        b.params.aspect_w.cols != hidden || b.params.aspect_b.size() != kAspectOutputs ||
        b.params.sentiment_w.rows != kSentimentOutputs || b.params.sentiment_w.cols != hidden ||
        b.params.sentiment_b.size() != kSentimentOutputs) {
      throw SchemaError("classifier tensor shapes are inconsistent");
    }
    return b;
  } catch (const Json::exception &e) {
    throw SchemaError(std::string("classifier: ") + e.what());
  } catch (const InvalidConfig &e) {
    throw SchemaError(std::string("classifier: ") + e.what());
  } catch (const EmptyLexicon &e) {
    throw SchemaError(std::string("classifier: ") + e.what());
  }
}

std::string loss_trace_to_csv(const std::vector<double> &trace,
                              const std::optional<ArtifactMeta> &meta) {
  std::string out;
  if (meta) out += meta->CsvComment();
  out += "epoch,loss\n";
  char buf[64];
  for (std::size_t e = 0; e < trace.size(); ++e) {
    std::snprintf(buf, sizeof(buf), "%.17g", trace[e]);
    out += std::to_string(e + 1) + "," + buf + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<GoldExample> gold_from_jsonl(const std::string &text) {
  std::vector<GoldExample> out;
  std::size_t lineno = 0;
  for (const std::string &line : lines_of(text)) {
    ++lineno;
    if (normalize_spaces(line).empty()) continue;
    Json j = parse_json_line(line, lineno);
    if (is_meta_line(j)) continue;
    GoldExample ex;
    ex.review.id = j.contains("id") ? field<std::size_t>(j, "id", lineno) : out.size();
    try {
      ex.review.rating = parse_rating_name(field<std::string>(j, "rating", lineno));
    } catch (const SchemaError &e) {
      throw SchemaError("line " + std::to_string(lineno) + ": " + e.what());
    }
    ex.review.title = j.contains("title") ? field<std::string>(j, "title", lineno) : "";
    ex.review.body = field<std::string>(j, "body", lineno);
    for (int a : field<std::vector<int>>(j, "aspects", lineno)) {
      if (a < 0 || a >= kNumAspects) {
        throw SchemaError("line " + std::to_string(lineno) + ": aspect id out of range");
      }
      ex.aspects.insert(a);
    }
    ex.sentiment = field<int>(j, "sentiment", lineno);
    if (ex.sentiment < 0 || ex.sentiment >= kSentimentCardinality) {
      throw SchemaError("line " + std::to_string(lineno) + ": sentiment out of range");
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::string gold_to_jsonl(const std::vector<GoldExample> &examples) {
  std::string out;
  for (const GoldExample &ex : examples) {
    out += jsonl_line(Json{{"id", ex.review.id},
                           {"rating", std::string(rating_name(ex.review.rating))},
                           {"title", ex.review.title},
                           {"body", ex.review.body},
                           {"aspects", std::vector<int>(ex.aspects.begin(), ex.aspects.end())},
                           {"sentiment", ex.sentiment}});
  }
  return out;
}

std::string predictions_to_jsonl(const std::vector<std::size_t> &ids,
                                 const std::vector<Prediction> &predictions,
                                 const std::optional<ArtifactMeta> &meta) {
  if (ids.size() != predictions.size()) throw LengthMismatch("ids and predictions differ");
  std::string out;
  if (meta) out += jsonl_line(Json{{"meta", meta->ToJson()}});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Prediction &p = predictions[i];
    out += jsonl_line(Json{{"id", ids[i]},
                           {"aspects", std::vector<int>(p.aspects.begin(), p.aspects.end())},
                           {"sentiment", p.sentiment},
                           {"aspect_probs", p.aspect_probs},
                           {"sentiment_probs", p.sentiment_probs}});
  }
  return out;
}

}  // namespace weaklabel
