#ifndef SEMFIELD_EVAL_HPP
#define SEMFIELD_EVAL_HPP

// Train/test splitting, confusion counts, per-category precision/recall and
// their macro averages.
//
// For category c over the evaluated documents:
//   tp        = |{d : predicted(d) = c and truth(d) = c}|
//   predicted = |{d : predicted(d) = c}|
//   actual    = |{d : truth(d) = c}|
//   precision = tp / predicted, recall = tp / actual
// A 0/0 ratio is reported as 0 and flagged undefined. Macro averages are
// unweighted means over every category in the confusion table, flagged
// zeros included.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semfield/errors.hpp"

namespace semfield {

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

enum class SplitMode { held_out, train_equals_test };

struct SplitSpec {
  SplitMode mode = SplitMode::held_out;
  /// Exactly one of train_count / train_fraction is used in held-out mode;
  /// the count wins when both are set.
  std::optional<std::size_t> train_count;
  std::optional<double> train_fraction;
  std::uint64_t seed = 0;
  /// Split each category separately with the same proportion.
  bool stratified = false;
};

struct Split {
  std::vector<std::size_t> train;  // ascending corpus indices
  std::vector<std::size_t> test;   // ascending corpus indices
  std::vector<std::string> warnings;
};

/// Portable shuffling source: std::mt19937_64 (whose output sequence is
/// fixed by the C++ standard) with rejection sampling for bounded draws.
/// Unlike std::shuffle and std::uniform_int_distribution, the resulting
/// permutation is the same on every standard library.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    // Reject the top (2^64 mod n) values so every residue is equally likely.
    const std::uint64_t reject_from = std::uint64_t(0) - (std::uint64_t(0) - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (reject_from == 0 || x < reject_from) return x % n;
    }
  }

  /// Fisher-Yates, swapping position i with below(i + 1) for i = n-1 .. 1.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Partitions corpus indices given each document's category label.
/// Held-out mode shuffles indices with SplitRng(seed) and takes the first
/// train_count as training data; train-equals-test uses the full corpus
/// for both sides. Categories with no training document are reported in
/// `warnings`.
inline Split split_corpus(std::span<const std::string> labels, const SplitSpec& spec) {
  const std::size_t n = labels.size();
  Split out;
  if (n == 0) throw ValidationError("cannot split an empty corpus");

  if (spec.mode == SplitMode::train_equals_test) {
    for (std::size_t i = 0; i < n; ++i) out.train.push_back(i);
    out.test = out.train;
    return out;
  }

  double fraction = 0.0;
  std::size_t count = 0;
  if (spec.train_count) {
    count = *spec.train_count;
    if (count < 1 || count > n)
      throw ValidationError("train count " + std::to_string(count) + " outside [1, " + std::to_string(n) + "]");
    fraction = static_cast<double>(count) / static_cast<double>(n);
  } else if (spec.train_fraction) {
    fraction = *spec.train_fraction;
    if (!(fraction > 0.0 && fraction < 1.0)) throw ValidationError("train fraction must lie in (0, 1)");
    count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    if (count < 1) throw ValidationError("train fraction selects no documents");
  } else {
    throw ValidationError("held-out split needs a train count or fraction");
  }

  SplitRng rng(spec.seed);
  std::vector<char> in_train(n, 0);
  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t i = 0; i < count; ++i) in_train[order[i]] = 1;
  } else {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < n; ++i) by_label[labels[i]].push_back(i);
    for (auto& [label, members] : by_label) {
      rng.shuffle(members);
      auto take = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size())));
      take = std::min(take, members.size());
      for (std::size_t i = 0; i < take; ++i) in_train[members[i]] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i) (in_train[i] ? out.train : out.test).push_back(i);

  std::set<std::string> trained;
  for (std::size_t i : out.train) trained.insert(labels[i]);
  std::map<std::string, std::size_t> orphaned;
  for (std::size_t i : out.test)
    if (!trained.count(labels[i])) ++orphaned[labels[i]];
  for (const auto& [label, docs] : orphaned)
    out.warnings.push_back("category '" + label + "' has no training documents; its " + std::to_string(docs) +
                           " test document(s) cannot be classified correctly");
  return out;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

struct Prediction {
  std::string document;  // key into the truth table
  std::string predicted;
};

struct CategoryCounts {
  std::string category;
  std::size_t tp = 0;
  std::size_t predicted = 0;
  std::size_t actual = 0;
};

/// Rows sorted by category name.
struct ConfusionCounts {
  std::vector<CategoryCounts> rows;
};

/// Counts per category over the predicted documents. The category set is
/// every true or predicted label, plus `extra_categories`. Throws
/// ValidationError if a predicted document has no truth entry.
inline ConfusionCounts confusion(std::span<const Prediction> predictions,
                                 const std::map<std::string, std::string>& truths,
                                 std::span<const std::string> extra_categories = {}) {
  std::map<std::string, CategoryCounts> rows;
  for (const auto& c : extra_categories) rows[c].category = c;
  for (const auto& p : predictions) {
    auto it = truths.find(p.document);
    if (it == truths.end()) throw ValidationError("no true category for document '" + p.document + "'");
    auto& truth = rows[it->second];
    truth.category = it->second;
    ++truth.actual;
    auto& guess = rows[p.predicted];
    guess.category = p.predicted;
    ++guess.predicted;
    if (p.predicted == it->second) ++guess.tp;
  }
  ConfusionCounts out;
  for (auto& [name, row] : rows) out.rows.push_back(std::move(row));
  return out;
}

struct CategoryMetrics {
  std::string category;
  std::size_t tp = 0;
  std::size_t predicted = 0;
  std::size_t actual = 0;
  double precision = 0.0;
  double recall = 0.0;
  bool precision_undefined = false;  // never predicted: 0/0 reported as 0
  bool recall_undefined = false;     // absent from the truths: 0/0 reported as 0
};

inline std::vector<CategoryMetrics> precision_recall(const ConfusionCounts& counts) {
  std::vector<CategoryMetrics> out;
  out.reserve(counts.rows.size());
  for (const auto& r : counts.rows) {
    CategoryMetrics m{r.category, r.tp, r.predicted, r.actual};
    m.precision_undefined = r.predicted == 0;
    m.recall_undefined = r.actual == 0;
    m.precision = m.precision_undefined ? 0.0 : static_cast<double>(r.tp) / static_cast<double>(r.predicted);
    m.recall = m.recall_undefined ? 0.0 : static_cast<double>(r.tp) / static_cast<double>(r.actual);
    out.push_back(std::move(m));
  }
  return out;
}

struct MacroAverage {
  double precision = 0.0;
  double recall = 0.0;
};

namespace detail {

// Summed in ascending order so the mean does not depend on category order.
inline double order_free_mean(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace detail

/// Unweighted means of (precision, recall) pairs. Throws on an empty list.
inline MacroAverage macro_average(std::span<const std::pair<double, double>> per_category) {
  if (per_category.empty()) throw ValidationError("macro average of zero categories");
  std::vector<double> p, r;
  for (const auto& [pr, rc] : per_category) {
    p.push_back(pr);
    r.push_back(rc);
  }
  return {detail::order_free_mean(std::move(p)), detail::order_free_mean(std::move(r))};
}

inline MacroAverage macro_average(std::span<const CategoryMetrics> per_category) {
  std::vector<std::pair<double, double>> pairs;
  for (const auto& m : per_category) pairs.emplace_back(m.precision, m.recall);
  return macro_average(std::span<const std::pair<double, double>>(pairs));
}

}  // namespace semfield

#endif  // SEMFIELD_EVAL_HPP
