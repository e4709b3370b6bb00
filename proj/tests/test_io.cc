#include <doctest.h>

#include "support.h"
#include "weaklabel/error.h"
#include "weaklabel/io.h"
#include "weaklabel/pipeline.h"
#include "weaklabel/random.h"

using namespace weaklabel;
using weaklabel::testing::aspect_lexicon;
using weaklabel::testing::golden_path;
using weaklabel::testing::review_of;
using weaklabel::testing::scratch_dir;

namespace {

const ArtifactMeta kMeta{"test", "00000000deadbeef", 7};

// Drops the leading "# weaklabel ..." provenance line.
std::string without_comment(const std::string &text) {
  REQUIRE(text.rfind("# weaklabel stage=test config_hash=00000000deadbeef seed=7", 0) == 0);
  return text.substr(text.find('\n') + 1);
}

LabelMatrix worked_matrix() { return LabelMatrix(4, {"a", "b"}, 2, {0, -1, 0, 1, -1, -1, 1, 1}); }

}  // namespace

TEST_CASE("golden rule report") {
  const RuleReport r = analyze_rules(worked_matrix());
  const std::string expected = read_file(golden_path("rule_report.csv"));
  CHECK(rule_report_to_csv(r, std::nullopt) == expected);
  CHECK(without_comment(rule_report_to_csv(r, kMeta)) == expected);

  const std::string text = rule_report_to_text(r);
  CHECK(text == read_file(golden_path("rule_report.txt")));
}

TEST_CASE("golden metrics") {
  const MetricsReport m = multiclass_metrics(std::vector<int>{0, 1, 2}, std::vector<int>{0, 1, 1}, 3);
  const std::string expected = read_file(golden_path("metrics.csv"));
  CHECK(metrics_to_csv(m, std::nullopt) == expected);
  CHECK(without_comment(metrics_to_csv(m, kMeta)) == expected);

  const Json j = metrics_to_json(m);
  CHECK(j.at("Micro F1").get<double>() == m.micro_f1);
  CHECK(j.begin().key() == "Macro F1");
}

TEST_CASE("golden label matrix and round trip") {
  const LabelMatrix L = worked_matrix();
  CHECK(label_matrix_to_csv(L, std::nullopt) == read_file(golden_path("label_matrix.csv")));

  const std::string with_meta = label_matrix_to_csv(L, kMeta);
  CHECK(with_meta.rfind("# weaklabel stage=test config_hash=00000000deadbeef seed=7 cardinality=2\n",
                        0) == 0);
  const LabelMatrix back = label_matrix_from_csv(with_meta);
  CHECK(back.values() == L.values());
  CHECK(back.rule_names() == L.rule_names());
  CHECK(back.cardinality() == 2);

  // Cardinality from the leading comment survives columns that never use the top class.
  const LabelMatrix wide(2, {"x"}, 5, {0, -1});
  CHECK(label_matrix_from_csv(label_matrix_to_csv(wide, kMeta)).cardinality() == 5);
  CHECK(label_matrix_from_csv(label_matrix_to_csv(wide, std::nullopt)).cardinality() == 2);

  CHECK_THROWS_AS(label_matrix_from_csv("a,b\n0\n"), SchemaError);
  CHECK_THROWS_AS(label_matrix_from_csv("a\nx\n"), SchemaError);
  CHECK_THROWS_AS(label_matrix_from_csv("a\n-3\n"), SchemaError);
  CHECK_THROWS_AS(label_matrix_from_csv(""), SchemaError);
}

TEST_CASE("property: label matrix CSV round trips") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.below(30), m = 1 + rng.below(6);
    const int k = 2 + static_cast<int>(rng.below(5));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < m; ++j) names.push_back("rule, " + std::to_string(j));
    std::vector<int> values(n * m);
    for (int &v : values) v = static_cast<int>(rng.below(k + 1)) - 1;
    const LabelMatrix L(n, names, k, values);
    const LabelMatrix back = label_matrix_from_csv(label_matrix_to_csv(L, kMeta));
    CHECK(back.rows() == n);
    CHECK(back.values() == L.values());
    CHECK(back.rule_names() == L.rule_names());
    CHECK(back.cardinality() == k);
  }
}

TEST_CASE("corpus JSONL round trip") {
  std::vector<CleanReview> corpus = {review_of("Costs way too much money, I'd say!", Rating::kNeg),
                                     review_of("fits \"great\"\tand\nworks", Rating::kPos, "ok")};
  corpus[1].id = 1;
  const std::string text = corpus_to_jsonl(corpus, kMeta);
  CHECK(text.rfind("{\"meta\":{\"stage\":\"test\"", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(corpus_from_jsonl(text) == corpus);
  CHECK(corpus_from_jsonl(corpus_to_jsonl(corpus, std::nullopt)) == corpus);
  CHECK_THROWS_AS(corpus_from_jsonl("{\"id\": 0}\n"), SchemaError);
  CHECK_THROWS_AS(corpus_from_jsonl("not json\n"), SchemaError);
}

TEST_CASE("proba JSONL round trip") {
  const std::vector<std::vector<double>> rows = {{0.1, 0.2, 0.7}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  const std::string text = proba_to_jsonl(rows, kMeta);
  CHECK(proba_from_jsonl(text, 3) == rows);
  CHECK_THROWS_AS(proba_from_jsonl(text, 2), SchemaError);
  CHECK_THROWS_AS(proba_from_jsonl("{\"id\": 1, \"proba\": [1, 0]}\n", 2), SchemaError);
}

TEST_CASE("label model JSON round trip") {
  const LabelMatrix L(6, {"a", "b", "c"}, 3,
                      {0, 0, -1, 1, 1, 1, 2, -1, 2, 0, 1, 0, -1, 2, 2, 1, -1, 1});
  const LabelModelParams p = fit_label_model(L, 3, {9, 50, 1e-8, 0.01});
  const Json j = label_model_to_json(p, kMeta);
  CHECK(j.at("meta").at("seed") == 7);
  const LabelModelParams back = label_model_from_json(Json::parse(j.dump()));
  CHECK(back.priors == p.priors);
  CHECK(back.confusion == p.confusion);
  CHECK(back.objective_trace == p.objective_trace);
  CHECK(back.seed == 9);
  for (std::size_t i = 0; i < L.rows(); ++i) {
    CHECK(lm_posterior(back, L.row(i)) == lm_posterior(p, L.row(i)));
  }

  Json bad = j;
  bad["priors"] = std::vector<double>{0.5, 0.5};
  CHECK_THROWS_AS(label_model_from_json(bad), SchemaError);
  bad = j;
  bad.erase("confusion");
  CHECK_THROWS_AS(label_model_from_json(bad), SchemaError);
}

TEST_CASE("model bundle JSON round trip") {
  std::vector<CleanReview> corpus;
  const std::vector<std::string> bodies = {"the price was too high", "it broke and smells bad",
                                           "great quality for the price", "shipping was slow",
                                           "fits small", "easy to use and works great"};
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    corpus.push_back(review_of(bodies[i], i % 2 ? Rating::kNeg : Rating::kPos));
    corpus.back().id = i;
  }
  const AspectLabeling al = label_aspects(corpus, aspect_lexicon(), {});
  std::vector<std::vector<double>> sent(corpus.size(), {0.2, 0.5, 0.3});
  TrainOptions opt;
  opt.config.epochs = 3;
  opt.config.hidden = 6;
  opt.min_freq = 1;
  const TrainedModel tm = train_classifier(corpus, al.proba, sent, aspect_lexicon(), opt);

  const Json j = model_to_json(tm.bundle, kMeta);
  const ModelBundle back = model_from_json(Json::parse(j.dump()));
  CHECK(back.vocab.tokens() == tm.bundle.vocab.tokens());
  CHECK(back.params.trunk_w.data == tm.bundle.params.trunk_w.data);
  CHECK(back.params.sentiment_b == tm.bundle.params.sentiment_b);
  CHECK(model_to_json(back, kMeta).dump() == j.dump());
  for (const CleanReview &r : corpus) {
    const Prediction a = predict_review(tm.bundle, r, nullptr);
    const Prediction b = predict_review(back, r, nullptr);
    CHECK(a.aspect_probs == b.aspect_probs);
    CHECK(a.sentiment_probs == b.sentiment_probs);
  }

  Json bad = j;
  bad["format"] = "other";
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = j;
  bad["aspect_head"]["bias"] = std::vector<double>{0.0};
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = j;
  bad.erase("vocabulary");
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
}

TEST_CASE("gold JSONL parsing") {
  const std::string good =
      "{\"rating\": \"neg\", \"title\": \"meh\", \"body\": \"too pricey\", \"aspects\": [0], "
      "\"sentiment\": 0}\n"
      "\n"
      "{\"rating\": \"pos\", \"body\": \"fits\", \"aspects\": [3, 1, 3], \"sentiment\": 1}\n";
  const auto gold = gold_from_jsonl(good);
  REQUIRE(gold.size() == 2);
  CHECK(gold[0].review.title == "meh");
  CHECK(gold[1].review.title.empty());
  CHECK(gold[1].review.id == 1);
  CHECK(gold[1].aspects == std::set<int>{1, 3});
  CHECK(gold_from_jsonl(gold_to_jsonl(gold)).size() == 2);
  CHECK(gold_from_jsonl(gold_to_jsonl(gold))[1].aspects == gold[1].aspects);

  auto fails = [](const std::string &line, const std::string &needle) {
    try {
      gold_from_jsonl(line);
      FAIL("expected SchemaError for " << line);
    } catch (const SchemaError &e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  fails("{\"rating\": \"pos\", \"aspects\": [], \"sentiment\": 1}\n", "body");
  fails("{\"rating\": \"meh\", \"body\": \"x\", \"aspects\": [], \"sentiment\": 1}\n", "line 1");
  fails("{\"rating\": \"pos\", \"body\": \"x\", \"aspects\": [5], \"sentiment\": 1}\n", "aspect");
  fails("{\"rating\": \"pos\", \"body\": \"x\", \"aspects\": [], \"sentiment\": 3}\n", "sentiment");
  fails("{\"rating\": \"pos\", \"body\": \"x\", \"aspects\": \"0\", \"sentiment\": 1}\n", "aspects");
  fails("\n\n{broken\n", "line 3");
}

TEST_CASE("config hash and files") {
  const Json a = Json{{"seed", 1}, {"task", "aspect"}};
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) == config_hash(Json::parse(a.dump())));
  CHECK(config_hash(a) != config_hash(Json{{"seed", 2}, {"task", "aspect"}}));
  // FNV-1a 64 of "{}".
  CHECK(config_hash(Json::object()) == "08f44b07b5901a25");

  const std::string dir = scratch_dir("io");
  write_file(dir + "/nested/deeper/f.txt", "abc\n");
  CHECK(read_file(dir + "/nested/deeper/f.txt") == "abc\n");
  CHECK_THROWS_AS(read_file(dir + "/missing.txt"), IoError);
}

TEST_CASE("loss trace and predictions") {
  const std::string csv = loss_trace_to_csv({0.5, 0.25}, kMeta);
  CHECK(without_comment(csv) == "epoch,loss\n1,0.5\n2,0.25\n");
  Prediction p;
  p.aspects = {0};
  CHECK_THROWS_AS(predictions_to_jsonl({0, 1}, {p}, std::nullopt), LengthMismatch);
  const std::string out = predictions_to_jsonl({4}, {p}, kMeta);
  CHECK(std::count(out.begin(), out.end(), '\n') == 2);
}
