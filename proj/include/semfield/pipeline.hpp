#ifndef SEMFIELD_PIPELINE_HPP
#define SEMFIELD_PIPELINE_HPP

// Batch pipeline behind the command-line tool: corpus ingestion,
// featurization, experiment runs, attribution of unknown texts and report
// aggregation. Logs go to the supplied stream; data goes to files.
//
// Corpus layout: <root>/<author>/<title>.txt. The directory name is the
// category label. Authors and titles are visited in byte order.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "semfield/classifiers.hpp"
#include "semfield/csv.hpp"
#include "semfield/errors.hpp"
#include "semfield/eval.hpp"
#include "semfield/features.hpp"
#include "semfield/lexicon.hpp"
#include "semfield/matrix_io.hpp"
#include "semfield/model_io.hpp"
#include "semfield/report.hpp"
#include "semfield/textproc.hpp"

namespace semfield {

namespace fs = std::filesystem;

class Log {
 public:
  explicit Log(std::ostream& out, bool quiet = false) : out_(out), quiet_(quiet) {}

  void info(const std::string& msg) const {
    if (!quiet_) out_ << "[info] " << msg << '\n';
  }
  void warn(const std::string& msg) const { out_ << "[warn] " << msg << '\n'; }

 private:
  std::ostream& out_;
  bool quiet_;
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class ClassifierKind { nb, knn };

struct RunEntry {
  std::string name;
  ClassifierKind classifier = ClassifierKind::nb;
  std::string fields = "all";  // all | nouns | verbs | list:a,b,...
  NbOptions nb;
  std::size_t k = 5;
  KnnOptions knn;
  SplitSpec split;
};

struct ExperimentConfig {
  fs::path corpus;
  fs::path lexicon;
  std::string inventory;  // empty: fields from the lexicon; "wordnet"; or a file of names
  bool expand_derivatives = false;
  fs::path rules;  // empty: built-in suffix rules
  std::size_t trim_head = 0;
  std::size_t trim_tail = 0;
  fs::path matrix;  // optional precomputed matrix (.csv or .json)
  fs::path out = "out";
  std::vector<RunEntry> runs;
};

/// Parses a field selection name into a predicate.
inline FieldPredicate field_selection(const std::string& spec) {
  if (spec == "all") return all_fields();
  if (spec == "nouns") return field_prefix("noun.");
  if (spec == "verbs") return field_prefix("verb.");
  if (spec.rfind("list:", 0) == 0) {
    std::vector<std::string> names;
    std::stringstream ss(spec.substr(5));
    for (std::string name; std::getline(ss, name, ',');)
      if (!name.empty()) names.push_back(name);
    if (names.empty()) throw ValidationError("empty field list in '" + spec + "'");
    return field_list(std::move(names));
  }
  throw ValidationError("unknown field selection '" + spec + "' (expected all, nouns, verbs or list:...)");
}

inline std::string default_run_name(const RunEntry& e) {
  std::string name = e.classifier == ClassifierKind::nb ? "nb" : "knn" + std::to_string(e.k);
  std::string fields = e.fields;
  std::replace_if(fields.begin(), fields.end(), [](char c) { return c == ':' || c == ',' || c == '/'; }, '-');
  name += "-" + fields;
  if (e.split.mode == SplitMode::train_equals_test) name += "-train-eq-test";
  return name;
}

/// NB and kNN over all fields, nouns and verbs, with k = 5 and k = 1, and a
/// train-equals-test NB run: the standard six-way comparison.
inline std::vector<RunEntry> comparison_grid(const SplitSpec& split) {
  std::vector<RunEntry> runs;
  const auto nb = [&](std::string fields, SplitMode mode) {
    RunEntry e;
    e.classifier = ClassifierKind::nb;
    e.fields = std::move(fields);
    e.split = split;
    e.split.mode = mode;
    e.name = default_run_name(e);
    runs.push_back(e);
  };
  const auto knn = [&](std::size_t k) {
    RunEntry e;
    e.classifier = ClassifierKind::knn;
    e.k = k;
    e.split = split;
    e.split.mode = SplitMode::held_out;
    e.name = default_run_name(e);
    runs.push_back(e);
  };
  nb("all", SplitMode::held_out);
  nb("nouns", SplitMode::held_out);
  nb("verbs", SplitMode::held_out);
  knn(5);
  knn(1);
  nb("all", SplitMode::train_equals_test);
  return runs;
}

namespace detail {

inline fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

inline void apply_split_json(const nlohmann::json& j, SplitSpec& split) {
  if (j.contains("train_count")) split.train_count = j.at("train_count").get<std::size_t>();
  if (j.contains("train_fraction")) split.train_fraction = j.at("train_fraction").get<double>();
  if (j.contains("seed")) split.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("stratified")) split.stratified = j.at("stratified").get<bool>();
  if (j.contains("train_equals_test"))
    split.mode = j.at("train_equals_test").get<bool>() ? SplitMode::train_equals_test : SplitMode::held_out;
}

}  // namespace detail

/// Reads a JSON experiment config. Relative paths resolve against
/// `base_dir` (normally the config file's directory).
///
///   {"corpus": ..., "lexicon": ..., "inventory": "wordnet",
///    "expand_derivatives": true, "rules": ..., "trim_head": 0, "trim_tail": 0,
///    "matrix": ..., "out": ...,
///    "split": {"train_fraction": 0.7, "seed": 1, "stratified": false},
///    "grid": "comparison",
///    "runs": [{"name": ..., "classifier": "nb"|"knn", "fields": "all", "k": 5,
///              "variance_floor": 1e-9, "priors": "empirical"|"uniform",
///              "standardize": false, "train_equals_test": false, ...split keys}]}
inline ExperimentConfig config_from_json(const nlohmann::json& j, const fs::path& base_dir = {}) {
  ExperimentConfig cfg;
  try {
    if (j.contains("corpus")) cfg.corpus = detail::resolve(base_dir, j.at("corpus").get<std::string>());
    if (j.contains("lexicon")) cfg.lexicon = detail::resolve(base_dir, j.at("lexicon").get<std::string>());
    if (j.contains("inventory")) {
      cfg.inventory = j.at("inventory").get<std::string>();
      if (!cfg.inventory.empty() && cfg.inventory != "wordnet")
        cfg.inventory = detail::resolve(base_dir, cfg.inventory).string();
    }
    cfg.expand_derivatives = j.value("expand_derivatives", false);
    if (j.contains("rules")) cfg.rules = detail::resolve(base_dir, j.at("rules").get<std::string>());
    cfg.trim_head = j.value("trim_head", std::size_t{0});
    cfg.trim_tail = j.value("trim_tail", std::size_t{0});
    if (j.contains("matrix")) cfg.matrix = detail::resolve(base_dir, j.at("matrix").get<std::string>());
    if (j.contains("out")) cfg.out = detail::resolve(base_dir, j.at("out").get<std::string>());

    SplitSpec split;
    split.train_fraction = 0.7;
    if (j.contains("split")) detail::apply_split_json(j.at("split"), split);
    if (split.train_count) split.train_fraction.reset();

    if (j.value("grid", "") == "comparison") cfg.runs = comparison_grid(split);
    for (const auto& r : j.value("runs", nlohmann::json::array())) {
      RunEntry e;
      const std::string kind = r.value("classifier", "nb");
      if (kind == "nb") e.classifier = ClassifierKind::nb;
      else if (kind == "knn") e.classifier = ClassifierKind::knn;
      else throw ValidationError("unknown classifier '" + kind + "'");
      e.fields = r.value("fields", "all");
      e.k = r.value("k", std::size_t{5});
      e.nb.variance_floor = r.value("variance_floor", 1e-9);
      const std::string priors = r.value("priors", "empirical");
      if (priors != "empirical" && priors != "uniform") throw ValidationError("unknown prior mode '" + priors + "'");
      e.nb.priors = priors == "uniform" ? PriorMode::uniform : PriorMode::empirical;
      e.knn.standardize = r.value("standardize", false);
      e.split = split;
      detail::apply_split_json(r, e.split);
      if (r.contains("train_count")) e.split.train_fraction.reset();
      if (r.contains("train_fraction")) e.split.train_count.reset();
      e.name = r.value("name", default_run_name(e));
      cfg.runs.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config: ") + e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Lexicon and corpus loading
// ---------------------------------------------------------------------------

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return ss.str();
}

inline void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline std::vector<std::string> load_inventory(const std::string& spec) {
  if (spec.empty()) return {};
  if (spec == "wordnet") return wordnet_field_inventory();
  std::istringstream in(read_file(spec));
  std::vector<std::string> names;
  for (std::string line; std::getline(in, line);) {
    auto view = detail::trim_cr(line);
    if (!detail::is_blank(view) && view.front() != '#') names.emplace_back(view);
  }
  return names;
}

/// Reads the lexicon, expanding derivative forms when asked. Logs lexeme
/// counts before and after expansion.
inline Lexicon load_lexicon(const ExperimentConfig& cfg, const Log& log) {
  if (cfg.lexicon.empty()) throw ValidationError("no lexicon given");
  const auto inventory = load_inventory(cfg.inventory);
  std::istringstream in(read_file(cfg.lexicon));
  Lexicon lexicon;
  try {
    lexicon = parse_lexicon(in, inventory);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), cfg.lexicon.string() + ": " + e.what());
  }
  const auto describe = [](const Lexicon& lex) {
    std::size_t memberships = 0;
    for (auto n : lex.field_sizes()) memberships += n;
    return std::to_string(lex.field_count()) + " fields, " + std::to_string(lex.lexeme_count()) + " lexemes, " +
           std::to_string(memberships) + " field memberships";
  };
  log.info("lexicon " + cfg.lexicon.string() + ": " + describe(lexicon));
  if (lexicon.unmatched_records() > 0)
    log.warn(std::to_string(lexicon.unmatched_records()) + " lexicon record(s) are not single tokens and were skipped");
  if (cfg.expand_derivatives) {
    std::vector<SuffixRule> rules = default_derivative_rules();
    if (!cfg.rules.empty()) {
      std::istringstream rin(read_file(cfg.rules));
      rules = parse_suffix_rules(rin);
    }
    lexicon = expand_derivatives(lexicon, rules);
    log.info("after derivative expansion (" + std::to_string(rules.size()) + " rules): " + describe(lexicon));
  }
  if (lexicon.field_count() == 0) throw ValidationError("lexicon declares no fields");
  return lexicon;
}

/// Drops `head` lines from the start and `tail` lines from the end.
inline std::string trim_lines(const std::string& text, std::size_t head, std::size_t tail) {
  if (head == 0 && tail == 0) return text;
  std::vector<std::string_view> lines;
  std::string_view rest(text);
  while (!rest.empty()) {
    auto nl = rest.find('\n');
    lines.push_back(rest.substr(0, nl == std::string_view::npos ? rest.size() : nl + 1));
    rest.remove_prefix(lines.back().size());
  }
  if (head + tail >= lines.size()) return {};
  std::string out;
  for (std::size_t i = head; i < lines.size() - tail; ++i) out += lines[i];
  return out;
}

/// Reads and tokenizes every <author>/<title>.txt under `root`. Files that
/// cannot be read or decoded are skipped with a warning. Throws
/// ValidationError when nothing usable is found.
inline std::vector<CorpusDocument> load_corpus(const fs::path& root, std::size_t trim_head, std::size_t trim_tail,
                                               const Log& log) {
  if (!fs::is_directory(root)) throw ValidationError("corpus root is not a directory: " + root.string());
  std::vector<fs::path> authors;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) authors.push_back(entry.path());
  std::sort(authors.begin(), authors.end());

  std::vector<CorpusDocument> corpus;
  for (const auto& dir : authors) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      try {
        const std::string text = trim_lines(read_file(file), trim_head, trim_tail);
        DocumentId id{dir.filename().string(), file.stem().string(), file.string()};
        corpus.push_back({std::move(id), frequency_table(tokenize(text))});
      } catch (const InputError& e) {
        log.warn(file.string() + ": invalid UTF-8 at " + e.what() + "; skipped");
      } catch (const std::exception& e) {
        log.warn(std::string(e.what()) + "; skipped");
      }
    }
  }
  if (corpus.empty()) throw ValidationError("empty corpus: no readable .txt files under " + root.string());
  return corpus;
}

// ---------------------------------------------------------------------------
// featurize
// ---------------------------------------------------------------------------

/// Logs corpus token totals, lexicon coverage and per-field nonzero counts.
inline void log_featurization(const std::vector<CorpusDocument>& corpus, const Lexicon& lexicon,
                              const FieldDocumentMatrix& matrix, const Log& log) {
  std::uint64_t tokens = 0, covered = 0;
  std::size_t degenerate = 0;
  for (const auto& doc : corpus) {
    tokens += doc.table.total;
    if (doc.table.degenerate()) ++degenerate;
    for (const auto& [token, n] : doc.table.counts)
      if (!lexicon.field_indices_of(token).empty()) covered += n;
  }
  log.info(std::to_string(corpus.size()) + " documents, " + std::to_string(tokens) + " tokens, " +
           std::to_string(covered) + " in lexicon (coverage " +
           csv::format_real(tokens ? static_cast<double>(covered) / static_cast<double>(tokens) : 0.0) + ")");
  if (degenerate) log.warn(std::to_string(degenerate) + " document(s) have no tokens");
  std::string nonzero;
  for (std::size_t k = 0; k < matrix.field_count(); ++k) {
    std::size_t n = 0;
    for (const auto& col : matrix.columns()) n += col.values[k] != 0.0;
    nonzero += (k ? ", " : "") + matrix.fields()[k] + "=" + std::to_string(n);
  }
  log.info("documents with nonzero frequency per field: " + nonzero);
}

inline void write_matrix_files(const FieldDocumentMatrix& m, const fs::path& out_dir) {
  std::ostringstream csv_out;
  write_matrix_csv(csv_out, m);
  write_file(out_dir / "matrix.csv", csv_out.str());
  write_file(out_dir / "matrix.json", matrix_to_json(m).dump(2) + "\n");
}

inline FieldDocumentMatrix read_matrix_file(const fs::path& path) {
  const std::string text = read_file(path);
  if (path.extension() == ".json") return matrix_from_json(nlohmann::json::parse(text));
  std::istringstream in(text);
  return read_matrix_csv(in);
}

/// Builds the full-lexicon matrix of the corpus and writes matrix.csv and
/// matrix.json to cfg.out. `fields` optionally restricts the rows.
inline FieldDocumentMatrix cmd_featurize(const ExperimentConfig& cfg, const Log& log,
                                         const std::string& fields = "all") {
  const Lexicon lexicon = load_lexicon(cfg, log);
  const auto corpus = load_corpus(cfg.corpus, cfg.trim_head, cfg.trim_tail, log);
  FieldDocumentMatrix matrix = build_matrix(corpus, lexicon);
  log_featurization(corpus, lexicon, matrix, log);
  if (fields != "all") matrix = restrict_fields(matrix, field_selection(fields));
  write_matrix_files(matrix, cfg.out);
  log.info("wrote " + std::to_string(matrix.field_count()) + "x" + std::to_string(matrix.document_count()) +
           " matrix to " + cfg.out.string());
  return matrix;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct RunResult {
  EvalReport report;
  Model model;
};

inline std::string document_key(const DocumentId& id) { return id.author + "/" + id.title; }

/// Split, fit, classify the test side and evaluate one run entry. Reads
/// `matrix` only.
inline RunResult run_entry(const FieldDocumentMatrix& matrix, const RunEntry& entry) {
  const FieldDocumentMatrix m = restrict_fields(matrix, field_selection(entry.fields));

  std::vector<std::string> labels;
  for (const auto& col : m.columns()) labels.push_back(col.document.author);
  const Split split = split_corpus(labels, entry.split);
  const FieldDocumentMatrix train = m.select_columns(split.train);

  EvalReport report;
  report.name = entry.name;
  report.fields = entry.fields;
  report.field_count = m.field_count();
  report.split_mode = entry.split.mode == SplitMode::train_equals_test ? "train-equals-test" : "held-out";
  report.seed = entry.split.seed;
  report.stratified = entry.split.stratified;
  report.train_documents = split.train.size();
  report.test_documents = split.test.size();
  report.warnings = split.warnings;

  std::optional<Model> model;
  if (entry.classifier == ClassifierKind::nb) {
    model = fit_nb(train, entry.nb);
    report.classifier = "NB";
    report.parameters = "variance_floor=" + csv::format_short(entry.nb.variance_floor) +
                        ",priors=" + (entry.nb.priors == PriorMode::uniform ? "uniform" : "empirical");
  } else {
    model = fit_knn(train, entry.k, entry.knn);
    report.classifier = "kNN";
    report.parameters = "k=" + std::to_string(entry.k) + (entry.knn.standardize ? ",standardized" : "");
  }

  std::vector<Prediction> predictions;
  std::map<std::string, std::string> truths;
  for (std::size_t j : split.test) {
    const auto& col = m.column(j);
    const std::string key = document_key(col.document);
    truths[key] = col.document.author;
    const std::string& guess =
        std::visit([&](const auto& mdl) -> const std::string& { return mdl.classify(col.values); }, *model);
    predictions.push_back({key, guess});
  }
  if (predictions.empty()) throw ValidationError("run '" + entry.name + "' has an empty test set");

  report.categories = precision_recall(confusion(predictions, truths));
  report.macro = macro_average(report.categories);
  for (const auto& c : report.categories) report.correct += c.tp;
  return {std::move(report), std::move(*model)};
}

inline nlohmann::json model_document(const Model& model, const RunEntry& entry, const ExperimentConfig& cfg) {
  auto j = to_json(model);
  j["featurization"] = {{"fields", entry.fields},
                        {"expand_derivatives", cfg.expand_derivatives},
                        {"inventory", cfg.inventory.empty() ? "" : (cfg.inventory == "wordnet" ? "wordnet" : "file")}};
  return j;
}

/// Runs every entry of `cfg` and writes, per entry, <name>.report.json,
/// <name>.report.csv and <name>.model.json, plus summary.csv across entries.
inline std::vector<EvalReport> cmd_experiment(const ExperimentConfig& cfg, const Log& log) {
  if (cfg.runs.empty()) throw ValidationError("no run entries configured");
  {
    std::set<std::string> names;
    for (const auto& r : cfg.runs)
      if (!names.insert(r.name).second) throw ValidationError("duplicate run name '" + r.name + "'");
  }

  FieldDocumentMatrix matrix;
  if (!cfg.matrix.empty()) {
    matrix = read_matrix_file(cfg.matrix);
    log.info("read " + std::to_string(matrix.document_count()) + " documents from " + cfg.matrix.string());
  } else {
    matrix = cmd_featurize(cfg, log);
  }

  std::vector<std::size_t> usable;
  for (std::size_t j = 0; j < matrix.document_count(); ++j) {
    if (matrix.column(j).degenerate) log.warn("excluding empty document " + document_key(matrix.column(j).document));
    else usable.push_back(j);
  }
  if (usable.size() != matrix.document_count()) matrix = matrix.select_columns(usable);

  std::vector<EvalReport> reports;
  std::ostringstream summary;
  summary << "name,classifier,fields,split,train_documents,test_documents,correct,macro_precision,macro_recall\n";
  for (const auto& entry : cfg.runs) {
    RunResult result = [&] {
      try {
        return run_entry(matrix, entry);
      } catch (const ValidationError& e) {
        throw ValidationError("run '" + entry.name + "': " + e.what());
      }
    }();
    const auto& r = result.report;
    for (const auto& w : r.warnings) log.warn(entry.name + ": " + w);
    write_file(cfg.out / (entry.name + ".report.json"), report_to_json(r).dump(2) + "\n");
    std::ostringstream report_csv;
    write_report_csv(report_csv, r);
    write_file(cfg.out / (entry.name + ".report.csv"), report_csv.str());
    write_file(cfg.out / (entry.name + ".model.json"), model_document(result.model, entry, cfg).dump(2) + "\n");
    summary << csv::join({r.name, r.tag(), r.fields, r.split_mode, std::to_string(r.train_documents),
                          std::to_string(r.test_documents), std::to_string(r.correct),
                          csv::format_real(r.macro.precision), csv::format_real(r.macro.recall)})
            << '\n';
    log.info(entry.name + ": " + r.tag() + " on " + r.fields + " fields, macro precision " +
             csv::format_real(r.macro.precision) + ", macro recall " + csv::format_real(r.macro.recall));
    reports.push_back(std::move(result.report));
  }
  write_file(cfg.out / "summary.csv", summary.str());
  return reports;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct Attribution {
  std::string path;
  std::string predicted;
  bool degenerate = false;
  std::vector<std::pair<std::string, double>> posteriors;  // NB only
};

/// Restricts `lexicon` to the model's fields. Throws ValidationError naming
/// both field counts when the lexicon cannot supply them in model order.
inline Lexicon lexicon_for_model(const Lexicon& lexicon, const Model& model) {
  const auto& want = model_fields(model);
  std::optional<Lexicon> restricted;
  try {
    restricted = restrict_lexicon(lexicon, field_list(want));
  } catch (const ValidationError&) {
  }
  if (!restricted || restricted->fields() != want)
    throw ValidationError("lexicon/model mismatch: model expects " + std::to_string(want.size()) +
                          " fields, lexicon provides " +
                          std::to_string(restricted ? restricted->field_count() : 0) + " of them (" +
                          std::to_string(lexicon.field_count()) + " in total)");
  return *restricted;
}

/// Attributes each text file with `model`.
inline std::vector<Attribution> cmd_classify(const Model& model, const Lexicon& lexicon,
                                             const std::vector<fs::path>& texts, const ExperimentConfig& cfg,
                                             const Log& log) {
  const Lexicon lex = lexicon_for_model(lexicon, model);
  std::vector<Attribution> out;
  for (const auto& path : texts) {
    const std::string text = trim_lines(read_file(path), cfg.trim_head, cfg.trim_tail);
    const FieldVector v = field_frequency_vector(frequency_table(tokenize(text)), lex);
    Attribution a{path.string(), {}, v.degenerate, {}};
    if (v.degenerate) log.warn(path.string() + ": no tokens; classifying the zero vector");
    if (const auto* nb = std::get_if<NbModel>(&model)) {
      a.predicted = nb->classify(v.values);
      const auto post = nb->posterior(v.values);
      for (std::size_t c = 0; c < post.size(); ++c) a.posteriors.emplace_back(nb->categories[c], post[c]);
    } else {
      a.predicted = std::get<KnnModel>(model).classify(v.values);
    }
    out.push_back(std::move(a));
  }
  return out;
}

inline void write_attributions_csv(std::ostream& out, const std::vector<Attribution>& rows) {
  std::vector<std::string> header{"path", "predicted", "degenerate"};
  if (!rows.empty())
    for (const auto& [author, p] : rows.front().posteriors) header.push_back("posterior:" + author);
  out << csv::join(header) << '\n';
  for (const auto& a : rows) {
    std::vector<std::string> row{a.path, a.predicted, a.degenerate ? "1" : "0"};
    for (const auto& [author, p] : a.posteriors) row.push_back(csv::format_real(p));
    out << csv::join(row) << '\n';
  }
}

inline nlohmann::json attributions_to_json(const std::vector<Attribution>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : rows) {
    nlohmann::json item = {{"path", a.path}, {"predicted", a.predicted}, {"degenerate", a.degenerate}};
    if (!a.posteriors.empty()) {
      nlohmann::json post = nlohmann::json::object();
      for (const auto& [author, p] : a.posteriors) post[author] = p;
      item["posteriors"] = std::move(post);
    }
    arr.push_back(std::move(item));
  }
  return arr;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

/// Reads report JSON files. Throws ValidationError naming the offending path.
inline std::vector<EvalReport> read_reports(const std::vector<fs::path>& paths) {
  if (paths.empty()) throw ValidationError("no report files given");
  std::vector<EvalReport> reports;
  for (const auto& p : paths) {
    try {
      reports.push_back(report_from_json(nlohmann::json::parse(read_file(p))));
    } catch (const std::exception& e) {
      throw ValidationError(p.string() + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace semfield

#endif  // SEMFIELD_PIPELINE_HPP
