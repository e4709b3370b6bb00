// Writes a seeded synthetic corpus: <out>/reviews.txt (fastText lines) and
// <out>/gold.jsonl (planted aspects and sentiment).
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "weaklabel/error.h"
#include "weaklabel/io.h"
#include "weaklabel/synthetic.h"

int main(int argc, char **argv) {
  namespace fs = std::filesystem;
  using namespace weaklabel;

  CLI::App app{"Generate a synthetic review corpus with known labels", "weaklabel-synth"};
  SyntheticOptions opt;
  std::string out_dir = "synthetic";
  std::string data_dir = WEAKLABEL_DATA_DIR;
  app.add_option("--count", opt.count, "Number of reviews")->capture_default_str();
  app.add_option("--seed", opt.seed, "Generator seed")->capture_default_str();
  app.add_option("--mixed-rate", opt.mixed_rate, "Share of Mixed reviews")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--data-dir", data_dir, "Directory holding aspects/ and sentiment/")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const AspectLexicon aspects = AspectLexicon::Load((fs::path(data_dir) / "aspects").string());
    const SentimentLexicon sentiment =
        SentimentLexicon::Load((fs::path(data_dir) / "sentiment").string());
    const std::vector<GoldExample> gold = SyntheticGenerator(aspects, sentiment).Generate(opt);
    std::string lines;
    for (const GoldExample &ex : gold) lines += to_fasttext_line(ex.review) + "\n";
    write_file((fs::path(out_dir) / "reviews.txt").string(), lines);
    write_file((fs::path(out_dir) / "gold.jsonl").string(), gold_to_jsonl(gold));
    std::cout << "reviews: " << gold.size() << "\n";
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
