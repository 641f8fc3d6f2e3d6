#ifndef SEMFIELD_CLASSIFIERS_HPP
#define SEMFIELD_CLASSIFIERS_HPP

// Gaussian naive Bayes and k-nearest-neighbour classifiers over field
// vectors. Categories are author labels taken from the training columns and
// kept in lexicographic order; that order is the "model order" used to
// break ties.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semfield/errors.hpp"
#include "semfield/features.hpp"

namespace semfield {

namespace detail {

inline void require_dimension(std::size_t got, std::size_t want) {
  if (got != want)
    throw ValidationError("dimension mismatch: vector has " + std::to_string(got) + " fields, model has " +
                          std::to_string(want));
}

/// Sorted distinct author labels and, per column, the label's index.
inline std::pair<std::vector<std::string>, std::vector<std::size_t>> label_columns(const FieldDocumentMatrix& m) {
  std::map<std::string, std::size_t> index;
  for (const auto& col : m.columns()) index.emplace(col.document.author, 0);
  std::vector<std::string> labels;
  for (auto& [label, i] : index) {
    i = labels.size();
    labels.push_back(label);
  }
  std::vector<std::size_t> of_column;
  of_column.reserve(m.document_count());
  for (const auto& col : m.columns()) of_column.push_back(index.at(col.document.author));
  return {std::move(labels), std::move(of_column)};
}

inline std::size_t argmax_first(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

}  // namespace detail

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Naive Bayes
// ---------------------------------------------------------------------------

enum class PriorMode { empirical, uniform };

struct NbOptions {
  /// Lower bound for every per-field variance; must be positive.
  double variance_floor = 1e-9;
  PriorMode priors = PriorMode::empirical;
};

/// Fitted Gaussian NB. means/variances are indexed [category][field].
struct NbModel {
  std::vector<std::string> fields;
  std::vector<std::string> categories;
  std::vector<double> priors;
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> variances;
  double variance_floor = 1e-9;
  PriorMode prior_mode = PriorMode::empirical;

  /// log P(c) + sum_k log N(v_k; mean, variance) for every category c. The
  /// evidence term is omitted; it does not depend on c.
  std::vector<double> log_posterior(std::span<const double> v) const {
    detail::require_dimension(v.size(), fields.size());
    static const double kLog2Pi = std::log(2.0 * std::numbers::pi);
    std::vector<double> scores(categories.size());
    for (std::size_t c = 0; c < categories.size(); ++c) {
      double s = std::log(priors[c]);
      for (std::size_t k = 0; k < v.size(); ++k) {
        const double var = variances[c][k];
        const double d = v[k] - means[c][k];
        s -= 0.5 * (kLog2Pi + std::log(var)) + d * d / (2.0 * var);
      }
      scores[c] = s;
    }
    return scores;
  }

  /// Normalized posteriors via log-sum-exp; sums to 1.
  std::vector<double> posterior(std::span<const double> v) const {
    auto scores = log_posterior(v);
    const double top = *std::max_element(scores.begin(), scores.end());
    double z = 0.0;
    for (double s : scores) z += std::exp(s - top);
    const double log_z = top + std::log(z);
    for (double& s : scores) s = std::exp(s - log_z);
    return scores;
  }

  /// Index of the highest-scoring category; ties go to the earliest.
  std::size_t classify_index(std::span<const double> v) const { return detail::argmax_first(log_posterior(v)); }

  const std::string& classify(std::span<const double> v) const { return categories[classify_index(v)]; }
};

/// Per-category empirical (or uniform) priors, per-field means and
/// population variances clamped up to the floor.
inline NbModel fit_nb(const FieldDocumentMatrix& matrix, const NbOptions& options = {}) {
  if (!(options.variance_floor > 0.0)) throw ValidationError("variance floor must be positive");
  if (matrix.document_count() == 0) throw ValidationError("no training documents, empty category set");

  auto [labels, label_of] = detail::label_columns(matrix);
  const std::size_t n_cat = labels.size();
  const std::size_t n_fields = matrix.field_count();

  NbModel model;
  model.fields = matrix.fields();
  model.categories = std::move(labels);
  model.variance_floor = options.variance_floor;
  model.prior_mode = options.priors;
  model.means.assign(n_cat, std::vector<double>(n_fields, 0.0));
  model.variances.assign(n_cat, std::vector<double>(n_fields, 0.0));

  std::vector<std::size_t> count(n_cat, 0);
  for (std::size_t j = 0; j < matrix.document_count(); ++j) {
    const auto& values = matrix.column(j).values;
    auto& mean = model.means[label_of[j]];
    for (std::size_t k = 0; k < n_fields; ++k) mean[k] += values[k];
    ++count[label_of[j]];
  }
  for (std::size_t c = 0; c < n_cat; ++c)
    for (double& m : model.means[c]) m /= static_cast<double>(count[c]);

  for (std::size_t j = 0; j < matrix.document_count(); ++j) {
    const auto& values = matrix.column(j).values;
    const std::size_t c = label_of[j];
    for (std::size_t k = 0; k < n_fields; ++k) {
      const double d = values[k] - model.means[c][k];
      model.variances[c][k] += d * d;
    }
  }
  for (std::size_t c = 0; c < n_cat; ++c)
    for (double& var : model.variances[c])
      var = std::max(var / static_cast<double>(count[c]), options.variance_floor);

  const auto total = static_cast<double>(matrix.document_count());
  for (std::size_t c = 0; c < n_cat; ++c)
    model.priors.push_back(options.priors == PriorMode::uniform ? 1.0 / static_cast<double>(n_cat)
                                                                : static_cast<double>(count[c]) / total);
  return model;
}

// ---------------------------------------------------------------------------
// k nearest neighbours
// ---------------------------------------------------------------------------

struct KnnOptions {
  /// z-score every field with the training mean and standard deviation
  /// before measuring distances.
  bool standardize = false;
};

struct Neighbor {
  std::size_t point;
  double distance;
};

/// Lazy learner: the stored training vectors and k.
struct KnnModel {
  std::vector<std::string> fields;
  std::vector<std::string> categories;
  std::vector<std::vector<double>> points;
  std::vector<std::size_t> labels;  // index into categories, per point
  std::size_t k = 1;
  bool standardize = false;
  std::vector<double> shift;  // per-field mean when standardizing
  std::vector<double> scale;  // per-field standard deviation (1 if constant)

  std::vector<double> transform(std::span<const double> v) const {
    std::vector<double> out(v.begin(), v.end());
    if (standardize)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] - shift[i]) / scale[i];
    return out;
  }

  /// The k nearest stored points, nearest first; equal distances are
  /// ordered by training index.
  std::vector<Neighbor> nearest(std::span<const double> v) const {
    detail::require_dimension(v.size(), fields.size());
    const auto query = transform(v);
    std::vector<Neighbor> all;
    all.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) all.push_back({i, euclidean_distance(query, points[i])});
    const auto closer = [](const Neighbor& a, const Neighbor& b) {
      return a.distance < b.distance || (a.distance == b.distance && a.point < b.point);
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
    all.resize(k);
    return all;
  }

  /// Distance sums equal up to summation rounding count as a tie.
  static bool sums_tied(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

  /// Majority label among the k nearest. A vote tie goes to the tied
  /// category whose neighbours have the smaller summed distance, then to
  /// the earlier category.
  std::size_t classify_index(std::span<const double> v) const {
    std::vector<std::size_t> votes(categories.size(), 0);
    std::vector<double> distance_sum(categories.size(), 0.0);
    for (const auto& n : nearest(v)) {
      ++votes[labels[n.point]];
      distance_sum[labels[n.point]] += n.distance;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < categories.size(); ++c) {
      if (votes[c] > votes[best] ||
          (votes[c] == votes[best] && distance_sum[c] < distance_sum[best] &&
           !sums_tied(distance_sum[c], distance_sum[best])))
        best = c;
    }
    return best;
  }

  const std::string& classify(std::span<const double> v) const { return categories[classify_index(v)]; }
};

/// Stores every training column. Throws ValidationError unless
/// 1 <= k <= number of training documents.
inline KnnModel fit_knn(const FieldDocumentMatrix& matrix, std::size_t k, const KnnOptions& options = {}) {
  if (k < 1 || k > matrix.document_count())
    throw ValidationError("k = " + std::to_string(k) + " outside [1, " + std::to_string(matrix.document_count()) +
                          "]");
  auto [labels, label_of] = detail::label_columns(matrix);
  KnnModel model;
  model.fields = matrix.fields();
  model.categories = std::move(labels);
  model.labels = std::move(label_of);
  model.k = k;
  model.standardize = options.standardize;

  const std::size_t n_fields = matrix.field_count();
  if (options.standardize) {
    const auto n = static_cast<double>(matrix.document_count());
    model.shift.assign(n_fields, 0.0);
    model.scale.assign(n_fields, 0.0);
    for (const auto& col : matrix.columns())
      for (std::size_t f = 0; f < n_fields; ++f) model.shift[f] += col.values[f];
    for (double& s : model.shift) s /= n;
    for (const auto& col : matrix.columns())
      for (std::size_t f = 0; f < n_fields; ++f) {
        const double d = col.values[f] - model.shift[f];
        model.scale[f] += d * d;
      }
    for (double& s : model.scale) {
      s = std::sqrt(s / n);
      if (s == 0.0) s = 1.0;
    }
  }
  model.points.reserve(matrix.document_count());
  for (const auto& col : matrix.columns()) model.points.push_back(model.transform(col.values));
  return model;
}

}  // namespace semfield

#endif  // SEMFIELD_CLASSIFIERS_HPP
