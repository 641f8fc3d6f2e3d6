// semfield: authorship attribution in semantic-field space.
//
//   semfield featurize  --corpus DIR --lexicon FILE --out DIR
//   semfield experiment --config FILE | --corpus DIR --lexicon FILE [run flags] --out DIR
//   semfield classify   --model FILE --lexicon FILE [--out DIR] TEXT...
//   semfield report     --out FILE REPORT.json...

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "semfield/pipeline.hpp"

namespace fs = std::filesystem;
using namespace semfield;

namespace {

struct CommonFlags {
  std::string config;
  std::string corpus;
  std::string lexicon;
  std::string inventory;
  bool expand = false;
  std::string rules;
  std::size_t trim_head = 0;
  std::size_t trim_tail = 0;
  std::string out;
  bool quiet = false;
  CLI::Option* expand_opt = nullptr;
  CLI::Option* inventory_opt = nullptr;
  CLI::Option* trim_head_opt = nullptr;
  CLI::Option* trim_tail_opt = nullptr;
};

struct RunFlags {
  std::string fields = "all";
  std::string classifier = "nb";
  std::size_t k = 5;
  double variance_floor = 1e-9;
  std::string priors = "empirical";
  bool standardize = false;
  std::size_t train_count = 0;
  double train_fraction = 0.7;
  bool train_equals_test = false;
  std::uint64_t seed = 0;
  bool stratified = false;
  std::string grid;
  std::string matrix;
  CLI::Option *fields_opt, *classifier_opt, *k_opt, *floor_opt, *priors_opt, *standardize_opt, *count_opt,
      *fraction_opt, *tet_opt, *seed_opt, *stratified_opt;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  cmd->add_option("--corpus", f.corpus, "corpus root: <root>/<author>/<title>.txt");
  cmd->add_option("--lexicon", f.lexicon, "field<TAB>lexeme table");
  f.inventory_opt = cmd->add_option("--inventory", f.inventory,
                                    "declared field inventory: 'wordnet' or a file with one name per line");
  f.expand_opt = cmd->add_flag("--expand-derivatives", f.expand, "add inflected forms of lexicon entries");
  cmd->add_option("--rules", f.rules, "suffix rules file for --expand-derivatives")->check(CLI::ExistingFile);
  f.trim_head_opt = cmd->add_option("--trim-head", f.trim_head, "drop N lines from the start of every text");
  f.trim_tail_opt = cmd->add_option("--trim-tail", f.trim_tail, "drop N lines from the end of every text");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--quiet", f.quiet, "warnings only");
}

void add_run(CLI::App* cmd, RunFlags& f) {
  f.fields_opt = cmd->add_option("--fields", f.fields, "all | nouns | verbs | list:a,b,...");
  f.classifier_opt = cmd->add_option("--classifier", f.classifier)->check(CLI::IsMember({"nb", "knn"}));
  f.k_opt = cmd->add_option("--k", f.k, "neighbours for kNN")->check(CLI::PositiveNumber);
  f.floor_opt = cmd->add_option("--variance-floor", f.variance_floor, "NB variance floor")->check(CLI::PositiveNumber);
  f.priors_opt = cmd->add_option("--priors", f.priors)->check(CLI::IsMember({"empirical", "uniform"}));
  f.standardize_opt = cmd->add_flag("--standardize", f.standardize, "z-score fields before kNN distances");
  f.count_opt = cmd->add_option("--train-count", f.train_count, "training documents");
  f.fraction_opt = cmd->add_option("--train-fraction", f.train_fraction, "training share in (0,1)");
  f.tet_opt = cmd->add_flag("--train-equals-test", f.train_equals_test, "evaluate on the training set");
  f.seed_opt = cmd->add_option("--seed", f.seed, "split seed");
  f.stratified_opt = cmd->add_flag("--stratified", f.stratified, "split each author separately");
  cmd->add_option("--grid", f.grid, "predefined run grid")->check(CLI::IsMember({"comparison"}));
  cmd->add_option("--matrix", f.matrix, "precomputed matrix (.csv or .json) instead of --corpus")
      ->check(CLI::ExistingFile);
  f.count_opt->excludes(f.fraction_opt);
}

ExperimentConfig base_config(const CommonFlags& f) {
  ExperimentConfig cfg;
  if (!f.config.empty()) {
    const fs::path path(f.config);
    cfg = config_from_json(nlohmann::json::parse(read_file(path)), path.parent_path());
  }
  if (!f.corpus.empty()) cfg.corpus = f.corpus;
  if (!f.lexicon.empty()) cfg.lexicon = f.lexicon;
  if (f.inventory_opt->count()) cfg.inventory = f.inventory;
  if (f.expand_opt->count()) cfg.expand_derivatives = true;
  if (!f.rules.empty()) cfg.rules = f.rules;
  if (f.trim_head_opt->count()) cfg.trim_head = f.trim_head;
  if (f.trim_tail_opt->count()) cfg.trim_tail = f.trim_tail;
  if (!f.out.empty()) cfg.out = f.out;
  return cfg;
}

void apply_run_flags(const RunFlags& f, RunEntry& e) {
  if (f.fields_opt->count()) e.fields = f.fields;
  if (f.classifier_opt->count()) e.classifier = f.classifier == "knn" ? ClassifierKind::knn : ClassifierKind::nb;
  if (f.k_opt->count()) e.k = f.k;
  if (f.floor_opt->count()) e.nb.variance_floor = f.variance_floor;
  if (f.priors_opt->count()) e.nb.priors = f.priors == "uniform" ? PriorMode::uniform : PriorMode::empirical;
  if (f.standardize_opt->count()) e.knn.standardize = true;
  if (f.count_opt->count()) {
    e.split.train_count = f.train_count;
    e.split.train_fraction.reset();
  }
  if (f.fraction_opt->count()) {
    e.split.train_fraction = f.train_fraction;
    e.split.train_count.reset();
  }
  if (f.tet_opt->count()) e.split.mode = SplitMode::train_equals_test;
  if (f.seed_opt->count()) e.split.seed = f.seed;
  if (f.stratified_opt->count()) e.split.stratified = true;
}

int run_featurize(const CommonFlags& common, const RunFlags& run) {
  Log log(std::cerr, common.quiet);
  const ExperimentConfig cfg = base_config(common);
  if (cfg.corpus.empty()) throw ValidationError("featurize needs --corpus");
  cmd_featurize(cfg, log, run.fields);
  return 0;
}

int run_experiment(const CommonFlags& common, const RunFlags& run) {
  Log log(std::cerr, common.quiet);
  ExperimentConfig cfg = base_config(common);
  if (!run.matrix.empty()) cfg.matrix = run.matrix;

  if (!run.grid.empty() || cfg.runs.empty()) {
    SplitSpec split;
    split.train_fraction = 0.7;
    RunEntry seed_entry;
    seed_entry.split = split;
    apply_run_flags(run, seed_entry);
    if (!run.grid.empty()) {
      cfg.runs = comparison_grid(seed_entry.split);
      for (auto& e : cfg.runs) {
        e.nb = seed_entry.nb;
        e.knn = seed_entry.knn;
      }
    } else {
      seed_entry.name = default_run_name(seed_entry);
      cfg.runs = {seed_entry};
    }
  } else {
    for (auto& e : cfg.runs) apply_run_flags(run, e);
  }
  if (cfg.matrix.empty() && cfg.corpus.empty()) throw ValidationError("experiment needs --corpus or --matrix");
  const auto reports = cmd_experiment(cfg, log);
  std::cout << "name,classifier,macro_precision,macro_recall\n";
  for (const auto& r : reports)
    std::cout << csv::join({r.name, r.tag(), csv::format_real(r.macro.precision), csv::format_real(r.macro.recall)})
              << '\n';
  return 0;
}

int run_classify(const CommonFlags& common, const std::string& model_path, const std::vector<std::string>& texts) {
  Log log(std::cerr, common.quiet);
  ExperimentConfig cfg = base_config(common);
  const auto model_json = nlohmann::json::parse(read_file(model_path));
  const Model model = model_from_json(model_json);
  if (!common.expand_opt->count() && model_json.contains("featurization"))
    cfg.expand_derivatives = model_json["featurization"].value("expand_derivatives", false);
  const Lexicon lexicon = load_lexicon(cfg, log);

  std::vector<fs::path> paths(texts.begin(), texts.end());
  const auto rows = cmd_classify(model, lexicon, paths, cfg, log);
  std::ostringstream csv_out;
  write_attributions_csv(csv_out, rows);
  if (common.out.empty()) {
    std::cout << csv_out.str();
  } else {
    write_file(fs::path(common.out) / "attributions.csv", csv_out.str());
    write_file(fs::path(common.out) / "attributions.json", attributions_to_json(rows).dump(2) + "\n");
    log.info("wrote " + std::to_string(rows.size()) + " attribution(s) to " + common.out);
  }
  return 0;
}

int run_report(const std::string& out, const std::vector<std::string>& inputs) {
  std::vector<fs::path> paths(inputs.begin(), inputs.end());
  const auto reports = read_reports(paths);
  std::ostringstream tidy;
  write_tidy_csv(tidy, reports);
  if (out.empty()) std::cout << tidy.str();
  else write_file(out, tidy.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Authorship attribution with semantic-field frequencies, naive Bayes and kNN"};
  app.require_subcommand(1);

  CommonFlags featurize_common, experiment_common, classify_common;
  RunFlags featurize_run, experiment_run;

  auto* featurize = app.add_subcommand("featurize", "build the field-document matrix of a corpus");
  add_common(featurize, featurize_common);
  featurize_run.fields_opt = featurize->add_option("--fields", featurize_run.fields, "all | nouns | verbs | list:...");

  auto* experiment = app.add_subcommand("experiment", "split, fit, classify and evaluate run entries");
  add_common(experiment, experiment_common);
  add_run(experiment, experiment_run);

  std::string model_path;
  std::vector<std::string> texts;
  auto* classify = app.add_subcommand("classify", "attribute unknown texts with a saved model");
  add_common(classify, classify_common);
  classify->add_option("--model", model_path, "model JSON written by experiment")
      ->required()
      ->check(CLI::ExistingFile);
  classify->add_option("texts", texts, "text files")->required();

  std::string report_out;
  std::vector<std::string> report_inputs;
  auto* report = app.add_subcommand("report", "per-author precision/recall rows for plotting");
  report->add_option("--out", report_out, "output CSV (default stdout)");
  report->add_option("reports", report_inputs, "report JSON files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*featurize) return run_featurize(featurize_common, featurize_run);
    if (*experiment) return run_experiment(experiment_common, experiment_run);
    if (*classify) return run_classify(classify_common, model_path, texts);
    if (*report) return run_report(report_out, report_inputs);
  } catch (const std::exception& e) {
    std::cerr << "[error] " << e.what() << '\n';
    return 1;
  }
  return 1;
}
