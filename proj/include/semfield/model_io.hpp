#ifndef SEMFIELD_MODEL_IO_HPP
#define SEMFIELD_MODEL_IO_HPP

// JSON persistence for fitted models. Each document carries a format tag
// ("semfield.nb/1" or "semfield.knn/1") and the field order the model was
// trained on. Doubles are written in shortest round-trip form, so a
// reloaded model reproduces the original's decisions exactly.

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "semfield/classifiers.hpp"
#include "semfield/errors.hpp"

namespace semfield {

inline constexpr const char* kNbFormat = "semfield.nb/1";
inline constexpr const char* kKnnFormat = "semfield.knn/1";

using Model = std::variant<NbModel, KnnModel>;

inline nlohmann::json to_json(const NbModel& m) {
  return {{"format", kNbFormat},
          {"fields", m.fields},
          {"categories", m.categories},
          {"priors", m.priors},
          {"prior_mode", m.prior_mode == PriorMode::uniform ? "uniform" : "empirical"},
          {"variance_floor", m.variance_floor},
          {"means", m.means},
          {"variances", m.variances}};
}

inline nlohmann::json to_json(const KnnModel& m) {
  return {{"format", kKnnFormat}, {"fields", m.fields}, {"categories", m.categories},
          {"k", m.k},             {"points", m.points}, {"labels", m.labels},
          {"standardize", m.standardize}, {"shift", m.shift}, {"scale", m.scale}};
}

inline nlohmann::json to_json(const Model& m) {
  return std::visit([](const auto& model) { return to_json(model); }, m);
}

namespace detail {

inline void check_shape(bool ok, const char* what) {
  if (!ok) throw ValidationError(std::string("inconsistent model document: ") + what);
}

}  // namespace detail

/// Throws ValidationError on an unknown format tag or inconsistent shapes.
inline Model model_from_json(const nlohmann::json& j) {
  const std::string format = j.value("format", "");
  if (format == kNbFormat) {
    NbModel m;
    m.fields = j.at("fields").get<std::vector<std::string>>();
    m.categories = j.at("categories").get<std::vector<std::string>>();
    m.priors = j.at("priors").get<std::vector<double>>();
    m.prior_mode = j.value("prior_mode", "empirical") == "uniform" ? PriorMode::uniform : PriorMode::empirical;
    m.variance_floor = j.at("variance_floor").get<double>();
    m.means = j.at("means").get<std::vector<std::vector<double>>>();
    m.variances = j.at("variances").get<std::vector<std::vector<double>>>();
    const auto n_cat = m.categories.size();
    detail::check_shape(n_cat > 0 && m.priors.size() == n_cat && m.means.size() == n_cat &&
                            m.variances.size() == n_cat,
                        "category count");
    for (std::size_t c = 0; c < n_cat; ++c)
      detail::check_shape(m.means[c].size() == m.fields.size() && m.variances[c].size() == m.fields.size(),
                          "field count");
    return m;
  }
  if (format == kKnnFormat) {
    KnnModel m;
    m.fields = j.at("fields").get<std::vector<std::string>>();
    m.categories = j.at("categories").get<std::vector<std::string>>();
    m.k = j.at("k").get<std::size_t>();
    m.points = j.at("points").get<std::vector<std::vector<double>>>();
    m.labels = j.at("labels").get<std::vector<std::size_t>>();
    m.standardize = j.value("standardize", false);
    m.shift = j.value("shift", std::vector<double>{});
    m.scale = j.value("scale", std::vector<double>{});
    detail::check_shape(m.k >= 1 && m.k <= m.points.size(), "k");
    detail::check_shape(m.labels.size() == m.points.size(), "labels");
    for (const auto& p : m.points) detail::check_shape(p.size() == m.fields.size(), "field count");
    for (auto l : m.labels) detail::check_shape(l < m.categories.size(), "label index");
    if (m.standardize)
      detail::check_shape(m.shift.size() == m.fields.size() && m.scale.size() == m.fields.size(), "scaling");
    return m;
  }
  throw ValidationError("unknown model format '" + format + "'");
}

inline const std::vector<std::string>& model_fields(const Model& m) {
  return std::visit([](const auto& model) -> const std::vector<std::string>& { return model.fields; }, m);
}

}  // namespace semfield

#endif  // SEMFIELD_MODEL_IO_HPP
