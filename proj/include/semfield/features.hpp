#ifndef SEMFIELD_FEATURES_HPP
#define SEMFIELD_FEATURES_HPP

// Projection of documents into semantic-field space.
//
// The frequency of field k in document j is the sum of the relative
// frequencies of the document's tokens that belong to field k. A token in
// several fields contributes to each of them. The per-document vectors,
// stacked as columns, form the field-document matrix.

#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semfield/errors.hpp"
#include "semfield/lexicon.hpp"
#include "semfield/textproc.hpp"

namespace semfield {

/// One document in field space. `values` follows the lexicon's field order.
struct FieldVector {
  DocumentId document;
  std::vector<double> values;
  /// Set when the source document had no tokens; values are then all zero.
  bool degenerate = false;
};

/// Field-document matrix, stored one contiguous column per document.
class FieldDocumentMatrix {
 public:
  FieldDocumentMatrix() = default;
  explicit FieldDocumentMatrix(std::vector<std::string> field_names) : fields_(std::move(field_names)) {}

  const std::vector<std::string>& fields() const noexcept { return fields_; }
  std::size_t field_count() const noexcept { return fields_.size(); }
  std::size_t document_count() const noexcept { return columns_.size(); }

  const std::vector<FieldVector>& columns() const noexcept { return columns_; }
  const FieldVector& column(std::size_t j) const { return columns_.at(j); }
  double at(std::size_t k, std::size_t j) const { return columns_.at(j).values.at(k); }

  /// Appends a document column. Throws ValidationError on a length mismatch
  /// or a repeated (author, title).
  void append(FieldVector column) {
    if (column.values.size() != fields_.size())
      throw ValidationError("column has " + std::to_string(column.values.size()) + " values, matrix has " +
                            std::to_string(fields_.size()) + " fields");
    if (!ids_.emplace(column.document.author, column.document.title).second)
      throw ValidationError("duplicate document: " + column.document.author + "/" + column.document.title);
    columns_.push_back(std::move(column));
  }

  /// Keeps only the columns at `indices`, in that order.
  FieldDocumentMatrix select_columns(std::span<const std::size_t> indices) const {
    FieldDocumentMatrix out(fields_);
    for (std::size_t j : indices) out.append(columns_.at(j));
    return out;
  }

 private:
  std::vector<std::string> fields_;
  std::vector<FieldVector> columns_;
  std::set<std::pair<std::string, std::string>> ids_;
};

inline FieldVector field_frequency_vector(const FrequencyTable& table, const Lexicon& lexicon,
                                          DocumentId document = {}) {
  if (lexicon.field_count() == 0) throw ValidationError("lexicon has no fields");
  FieldVector v{std::move(document), std::vector<double>(lexicon.field_count(), 0.0), table.degenerate()};
  if (table.degenerate()) return v;

  // Integer counts per field first, then a single division: each component
  // is then the correctly rounded value of the exact rational.
  std::vector<std::uint64_t> hits(lexicon.field_count(), 0);
  for (const auto& [token, n] : table.counts)
    for (FieldIndex k : lexicon.field_indices_of(token)) hits[k] += n;
  const auto total = static_cast<double>(table.total);
  for (std::size_t k = 0; k < hits.size(); ++k) v.values[k] = static_cast<double>(hits[k]) / total;
  return v;
}

struct CorpusDocument {
  DocumentId id;
  FrequencyTable table;
};

/// One column per document, in input order.
inline FieldDocumentMatrix build_matrix(std::span<const CorpusDocument> corpus, const Lexicon& lexicon) {
  FieldDocumentMatrix m(lexicon.fields());
  for (const auto& doc : corpus) m.append(field_frequency_vector(doc.table, lexicon, doc.id));
  return m;
}

using FieldPredicate = std::function<bool(const std::string&)>;

inline FieldPredicate field_prefix(std::string prefix) {
  return [prefix = std::move(prefix)](const std::string& name) { return name.rfind(prefix, 0) == 0; };
}

inline FieldPredicate all_fields() {
  return [](const std::string&) { return true; };
}

inline FieldPredicate field_list(std::vector<std::string> names) {
  return [set = std::set<std::string>(names.begin(), names.end())](const std::string& name) {
    return set.count(name) > 0;
  };
}

namespace detail {

inline std::vector<FieldIndex> surviving_fields(const std::vector<std::string>& fields, const FieldPredicate& keep) {
  std::vector<FieldIndex> kept;
  for (FieldIndex k = 0; k < fields.size(); ++k)
    if (keep(fields[k])) kept.push_back(k);
  if (kept.empty()) throw ValidationError("field selection leaves no fields");
  return kept;
}

}  // namespace detail

/// Drops the rows whose field fails `keep`, preserving order.
inline FieldDocumentMatrix restrict_fields(const FieldDocumentMatrix& matrix, const FieldPredicate& keep) {
  const auto kept = detail::surviving_fields(matrix.fields(), keep);
  std::vector<std::string> names;
  for (FieldIndex k : kept) names.push_back(matrix.fields()[k]);
  FieldDocumentMatrix out(std::move(names));
  for (const auto& col : matrix.columns()) {
    FieldVector v{col.document, {}, col.degenerate};
    v.values.reserve(kept.size());
    for (FieldIndex k : kept) v.values.push_back(col.values[k]);
    out.append(std::move(v));
  }
  return out;
}

/// The lexicon counterpart of restrict_fields: same surviving fields, and
/// entries whose field set becomes empty are removed.
inline Lexicon restrict_lexicon(const Lexicon& lexicon, const FieldPredicate& keep) {
  const auto kept = detail::surviving_fields(lexicon.fields(), keep);
  std::vector<std::string> names;
  std::vector<std::optional<FieldIndex>> remap(lexicon.field_count());
  for (FieldIndex k : kept) {
    remap[k] = names.size();
    names.push_back(lexicon.fields()[k]);
  }
  LexiconBuilder builder{std::span<const std::string>(names)};
  for (const auto& [lexeme, ks] : lexicon.entries())
    for (FieldIndex k : ks)
      if (remap[k]) builder.add_canonical(lexeme, *remap[k]);
  return std::move(builder).build();
}

}  // namespace semfield

#endif  // SEMFIELD_FEATURES_HPP
