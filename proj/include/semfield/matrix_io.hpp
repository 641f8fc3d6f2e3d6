#ifndef SEMFIELD_MATRIX_IO_HPP
#define SEMFIELD_MATRIX_IO_HPP

// Matrix persistence.
//
// CSV: header `author,title,<field names...>`, then one row per document
// with its field frequencies at 17 significant digits.
// JSON: {"format": "semfield.matrix/1", "fields": [...], "documents":
// [{"author", "title", "source", "degenerate", "values": [...]}]}.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semfield/csv.hpp"
#include "semfield/errors.hpp"
#include "semfield/features.hpp"

namespace semfield {

inline constexpr const char* kMatrixFormat = "semfield.matrix/1";

inline void write_matrix_csv(std::ostream& out, const FieldDocumentMatrix& m) {
  std::vector<std::string> header{"author", "title"};
  header.insert(header.end(), m.fields().begin(), m.fields().end());
  out << csv::join(header) << '\n';
  for (const auto& col : m.columns()) {
    std::vector<std::string> row{col.document.author, col.document.title};
    for (double x : col.values) row.push_back(csv::format_real(x));
    out << csv::join(row) << '\n';
  }
}

/// Reads the CSV form. Degenerate flags and source paths are not part of
/// the CSV and come back unset.
inline FieldDocumentMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  auto header = csv::split(line, 1);
  if (header.size() < 3 || header[0] != "author" || header[1] != "title")
    throw ParseError(1, "header must start with author,title and name at least one field");
  FieldDocumentMatrix m(std::vector<std::string>(header.begin() + 2, header.end()));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = csv::split(line, line_no);
    if (cells.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " columns, found " +
                                    std::to_string(cells.size()));
    FieldVector v{{cells[0], cells[1], {}}, {}, false};
    for (std::size_t c = 2; c < cells.size(); ++c) v.values.push_back(csv::parse_real(cells[c], line_no));
    try {
      m.append(std::move(v));
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return m;
}

inline nlohmann::json matrix_to_json(const FieldDocumentMatrix& m) {
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& col : m.columns()) {
    docs.push_back({{"author", col.document.author},
                    {"title", col.document.title},
                    {"source", col.document.source_path},
                    {"degenerate", col.degenerate},
                    {"values", col.values}});
  }
  return {{"format", kMatrixFormat}, {"fields", m.fields()}, {"documents", std::move(docs)}};
}

/// Throws ValidationError on a wrong format tag or inconsistent shape.
inline FieldDocumentMatrix matrix_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != kMatrixFormat) throw ValidationError("not a semfield matrix document");
  FieldDocumentMatrix m(j.at("fields").get<std::vector<std::string>>());
  for (const auto& d : j.at("documents")) {
    FieldVector v{{d.at("author").get<std::string>(), d.at("title").get<std::string>(),
                   d.value("source", std::string{})},
                  d.at("values").get<std::vector<double>>(),
                  d.value("degenerate", false)};
    m.append(std::move(v));
  }
  return m;
}

}  // namespace semfield

#endif  // SEMFIELD_MATRIX_IO_HPP
