#ifndef WEAKLABEL_TESTS_E2E_H_
#define WEAKLABEL_TESTS_E2E_H_

#include <sstream>
#include <string>
#include <vector>

#include "support.h"
#include "weaklabel/cli.h"
#include "weaklabel/io.h"
#include "weaklabel/synthetic.h"

namespace weaklabel::testing {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliRun cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Writes <dir>/reviews.txt and <dir>/gold.jsonl for a synthetic corpus.
inline std::vector<GoldExample> write_synthetic(const std::string &dir,
                                                const SyntheticOptions &options) {
  const std::vector<GoldExample> gold =
      SyntheticGenerator(aspect_lexicon(), sentiment_lexicon()).Generate(options);
  std::string lines;
  for (const GoldExample &ex : gold) lines += to_fasttext_line(ex.review) + "\n";
  write_file(dir + "/reviews.txt", lines);
  write_file(dir + "/gold.jsonl", gold_to_jsonl(gold));
  return gold;
}

struct BenchmarkResult {
  bool ok = false;
  std::string failure;
  Json metrics;
};

// ingest -> label (both tasks) -> train -> evaluate against the planted truth,
// all through the command-line entry point. Artifacts land in <dir>/out.
inline BenchmarkResult run_benchmark(const std::string &dir, const SyntheticOptions &options,
                                     int epochs = 30) {
  write_synthetic(dir, options);
  const std::string out = dir + "/out";
  const std::vector<std::vector<std::string>> steps = {
      {"--out", out, "ingest", dir + "/reviews.txt"},
      {"--out", out, "label", "--task", "aspect"},
      {"--out", out, "label", "--task", "sentiment"},
      {"--out", out, "train", "--epochs", std::to_string(epochs)},
      {"--out", out, "evaluate", "--gold", dir + "/gold.jsonl"},
  };
  BenchmarkResult result;
  for (const auto &step : steps) {
    const CliRun r = cli(step);
    if (r.code != 0) {
      result.failure = step[2] + " exited " + std::to_string(r.code) + ": " + r.err;
      return result;
    }
  }
  result.metrics = Json::parse(read_file(out + "/metrics.json"));
  result.ok = true;
  return result;
}

}  // namespace weaklabel::testing

#endif  // WEAKLABEL_TESTS_E2E_H_
