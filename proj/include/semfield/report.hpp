#ifndef SEMFIELD_REPORT_HPP
#define SEMFIELD_REPORT_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semfield/csv.hpp"
#include "semfield/errors.hpp"
#include "semfield/eval.hpp"

namespace semfield {

inline constexpr const char* kReportFormat = "semfield.report/1";

/// Evaluation of one classifier configuration on one split.
struct EvalReport {
  std::string name;        // run entry name
  std::string classifier;  // "NB" or "kNN"
  std::string parameters;  // e.g. "k=5" or "variance_floor=1e-09,priors=empirical"
  std::string fields;      // field selection, e.g. "all", "nouns"
  std::size_t field_count = 0;

  std::string split_mode;  // "held-out" or "train-equals-test"
  std::uint64_t seed = 0;
  bool stratified = false;
  std::size_t train_documents = 0;
  std::size_t test_documents = 0;

  std::vector<CategoryMetrics> categories;
  MacroAverage macro;
  std::size_t correct = 0;
  std::vector<std::string> warnings;

  /// Classifier with its parameters, e.g. "kNN(k=5)".
  std::string tag() const { return parameters.empty() ? classifier : classifier + "(" + parameters + ")"; }
};

inline nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json cats = nlohmann::json::array();
  for (const auto& c : r.categories) {
    cats.push_back({{"category", c.category},
                    {"tp", c.tp},
                    {"predicted", c.predicted},
                    {"actual", c.actual},
                    {"precision", c.precision},
                    {"recall", c.recall},
                    {"precision_undefined", c.precision_undefined},
                    {"recall_undefined", c.recall_undefined}});
  }
  return {{"format", kReportFormat},
          {"name", r.name},
          {"classifier", r.classifier},
          {"parameters", r.parameters},
          {"tag", r.tag()},
          {"fields", r.fields},
          {"field_count", r.field_count},
          {"split",
           {{"mode", r.split_mode},
            {"seed", r.seed},
            {"stratified", r.stratified},
            {"train_documents", r.train_documents},
            {"test_documents", r.test_documents}}},
          {"categories", std::move(cats)},
          {"macro", {{"precision", r.macro.precision}, {"recall", r.macro.recall}}},
          {"correct", r.correct},
          {"warnings", r.warnings}};
}

/// Throws ValidationError when `j` is not a report document.
inline EvalReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", "") != kReportFormat)
    throw ValidationError("not a semfield report document");
  try {
    EvalReport r;
    r.name = j.value("name", "");
    r.classifier = j.at("classifier").get<std::string>();
    r.parameters = j.value("parameters", "");
    r.fields = j.value("fields", "");
    r.field_count = j.value("field_count", std::size_t{0});
    const auto& s = j.at("split");
    r.split_mode = s.at("mode").get<std::string>();
    r.seed = s.value("seed", std::uint64_t{0});
    r.stratified = s.value("stratified", false);
    r.train_documents = s.value("train_documents", std::size_t{0});
    r.test_documents = s.value("test_documents", std::size_t{0});
    for (const auto& c : j.at("categories")) {
      r.categories.push_back({c.at("category").get<std::string>(), c.at("tp").get<std::size_t>(),
                              c.at("predicted").get<std::size_t>(), c.at("actual").get<std::size_t>(),
                              c.at("precision").get<double>(), c.at("recall").get<double>(),
                              c.value("precision_undefined", false), c.value("recall_undefined", false)});
    }
    r.macro = {j.at("macro").at("precision").get<double>(), j.at("macro").at("recall").get<double>()};
    r.correct = j.value("correct", std::size_t{0});
    r.warnings = j.value("warnings", std::vector<std::string>{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

namespace detail {

inline std::string undefined_flags(const CategoryMetrics& c) {
  if (c.precision_undefined && c.recall_undefined) return "precision_undefined;recall_undefined";
  if (c.precision_undefined) return "precision_undefined";
  if (c.recall_undefined) return "recall_undefined";
  return "";
}

}  // namespace detail

/// One row per category plus a "(macro)" summary row whose count columns
/// hold the totals.
inline void write_report_csv(std::ostream& out, const EvalReport& r) {
  out << "classifier,category,tp,predicted,actual,precision,recall,flags\n";
  std::size_t tp = 0, predicted = 0, actual = 0;
  for (const auto& c : r.categories) {
    out << csv::join({r.tag(), c.category, std::to_string(c.tp), std::to_string(c.predicted),
                      std::to_string(c.actual), csv::format_real(c.precision), csv::format_real(c.recall),
                      detail::undefined_flags(c)})
        << '\n';
    tp += c.tp;
    predicted += c.predicted;
    actual += c.actual;
  }
  out << csv::join({r.tag(), "(macro)", std::to_string(tp), std::to_string(predicted), std::to_string(actual),
                    csv::format_real(r.macro.precision), csv::format_real(r.macro.recall), ""})
      << '\n';
}

/// Long-format rows (classifier, author, metric, value, degenerate) for
/// per-author precision/recall bar charts.
inline void write_tidy_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << "classifier,author,metric,value,degenerate\n";
  for (const auto& r : reports) {
    const std::string tag = r.name.empty() || r.name == r.tag() ? r.tag() : r.name + ":" + r.tag();
    for (const auto& c : r.categories) {
      out << csv::join({tag, c.category, "precision", csv::format_real(c.precision),
                        c.precision_undefined ? "1" : "0"})
          << '\n';
      out << csv::join({tag, c.category, "recall", csv::format_real(c.recall), c.recall_undefined ? "1" : "0"})
          << '\n';
    }
  }
}

}  // namespace semfield

#endif  // SEMFIELD_REPORT_HPP
