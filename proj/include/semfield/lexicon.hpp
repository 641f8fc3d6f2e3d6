#ifndef SEMFIELD_LEXICON_HPP
#define SEMFIELD_LEXICON_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semfield/errors.hpp"
#include "semfield/textproc.hpp"

namespace semfield {

/// Index of a semantic field in lexicon declaration order. This order is the
/// component order of every field vector built from the lexicon.
using FieldIndex = std::size_t;

/// The 26 noun and 15 verb lexicographer file names of WordNet.
inline const std::vector<std::string>& wordnet_field_inventory() {
  static const std::vector<std::string> names = {
      "noun.Tops",          "noun.act",          "noun.animal",      "noun.artifact",
      "noun.attribute",     "noun.body",         "noun.cognition",   "noun.communication",
      "noun.event",         "noun.feeling",      "noun.food",        "noun.group",
      "noun.location",      "noun.motive",       "noun.object",      "noun.person",
      "noun.phenomenon",    "noun.plant",        "noun.possession",  "noun.process",
      "noun.quantity",      "noun.relation",     "noun.shape",       "noun.state",
      "noun.substance",     "noun.time",         "verb.body",        "verb.change",
      "verb.cognition",     "verb.communication", "verb.competition", "verb.consumption",
      "verb.contact",       "verb.creation",     "verb.emotion",     "verb.motion",
      "verb.perception",    "verb.possession",   "verb.social",      "verb.stative",
      "verb.weather"};
  return names;
}

class LexiconBuilder;

/// Semantic-field lexicon: an ordered field inventory plus a map from
/// canonical lexeme to the (sorted, nonempty) set of fields containing it.
/// Immutable once built; safe for concurrent reads.
class Lexicon {
 public:
  using Entries = std::map<std::string, std::vector<FieldIndex>, std::less<>>;

  Lexicon() = default;

  const std::vector<std::string>& fields() const noexcept { return fields_; }
  std::size_t field_count() const noexcept { return fields_.size(); }
  const Entries& entries() const noexcept { return entries_; }
  std::size_t lexeme_count() const noexcept { return entries_.size(); }

  /// Input records dropped because the lexeme did not normalize to exactly
  /// one token (multi-word collocations, symbols).
  std::size_t unmatched_records() const noexcept { return unmatched_records_; }

  std::optional<FieldIndex> field_index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Field indices containing `token`, ascending; empty when absent.
  std::span<const FieldIndex> field_indices_of(std::string_view token) const {
    auto it = entries_.find(token);
    if (it == entries_.end()) return {};
    return it->second;
  }

  /// Field names containing `token`, in field order.
  std::vector<std::string> fields_of(std::string_view token) const {
    std::vector<std::string> names;
    for (FieldIndex k : field_indices_of(token)) names.push_back(fields_[k]);
    return names;
  }

  /// The membership indicator: true iff `token` belongs to field `k`.
  bool contains(std::string_view token, FieldIndex k) const {
    auto idx = field_indices_of(token);
    return std::binary_search(idx.begin(), idx.end(), k);
  }

  /// Number of lexemes per field, in field order.
  std::vector<std::size_t> field_sizes() const {
    std::vector<std::size_t> sizes(fields_.size(), 0);
    for (const auto& [lexeme, ks] : entries_)
      for (FieldIndex k : ks) ++sizes[k];
    return sizes;
  }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.fields_ == b.fields_ && a.entries_ == b.entries_;
  }

 private:
  friend class LexiconBuilder;

  std::vector<std::string> fields_;
  std::unordered_map<std::string, FieldIndex> index_;
  Entries entries_;
  std::size_t unmatched_records_ = 0;
};

/// Accumulates (field, lexeme) records. Fields are appended in first-use
/// order unless an inventory was declared up front, in which case the field
/// list is exactly the inventory and unknown names are rejected.
class LexiconBuilder {
 public:
  LexiconBuilder() = default;

  explicit LexiconBuilder(std::span<const std::string> inventory) : closed_(true) {
    for (const auto& name : inventory) {
      if (!declare(name)) throw ValidationError("duplicate field in inventory: " + name);
    }
  }

  /// Starts from an existing lexicon; its field list stays closed.
  explicit LexiconBuilder(Lexicon base) : lexicon_(std::move(base)), closed_(true) {}

  /// Registers a field without entries. Returns false if it already exists.
  bool declare(const std::string& field) {
    if (lexicon_.index_.count(field)) return false;
    lexicon_.index_.emplace(field, lexicon_.fields_.size());
    lexicon_.fields_.push_back(field);
    return true;
  }

  /// Adds one record. `lexeme` is normalized with the tokenizer; records
  /// that do not yield a single token are counted and skipped. Returns
  /// whether the record was kept.
  bool add(const std::string& field, std::string_view lexeme) {
    FieldIndex k = resolve(field);
    std::string canonical = normalize_lexeme(lexeme);
    if (canonical.empty()) {
      ++lexicon_.unmatched_records_;
      return false;
    }
    add_canonical(std::move(canonical), k);
    return true;
  }

  /// Adds an already-canonical lexeme to a known field.
  void add_canonical(std::string lexeme, FieldIndex k) {
    auto& ks = lexicon_.entries_[std::move(lexeme)];
    auto pos = std::lower_bound(ks.begin(), ks.end(), k);
    if (pos == ks.end() || *pos != k) ks.insert(pos, k);
  }

  Lexicon build() && { return std::move(lexicon_); }

 private:
  FieldIndex resolve(const std::string& field) {
    if (auto it = lexicon_.index_.find(field); it != lexicon_.index_.end()) return it->second;
    if (closed_) throw ValidationError("unknown field name: " + field);
    declare(field);
    return lexicon_.fields_.size() - 1;
  }

  Lexicon lexicon_;
  bool closed_ = false;
};

namespace detail {

inline std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

}  // namespace detail

/// Reads the two-column lexicon table: `field<TAB>lexeme` per line, '#'
/// comments and blank lines ignored. Field order is first appearance, or
/// the inventory order when one is given. Duplicate records collapse.
///
/// Throws ParseError for a line without exactly two non-empty columns and
/// ValidationError for a field missing from a declared inventory.
inline Lexicon parse_lexicon(std::istream& in, std::span<const std::string> inventory = {}) {
  LexiconBuilder builder = inventory.empty() ? LexiconBuilder{} : LexiconBuilder{inventory};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim_cr(raw);
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto cols = detail::split_tabs(line);
    if (cols.size() != 2)
      throw ParseError(line_no, "expected 2 tab-separated columns, found " + std::to_string(cols.size()));
    if (cols[0].empty() || cols[1].empty()) throw ParseError(line_no, "empty column");
    try {
      builder.add(std::string(cols[0]), cols[1]);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return std::move(builder).build();
}

/// How a derivative rule alters the stem before appending its suffix.
enum class StemChange {
  none,
  double_final_consonant,  // run -> runn-  (vowel + consonant endings only)
  drop_final_e,            // move -> mov-
  y_to_i,                  // carry -> carri- (consonant + y endings only)
};

struct SuffixRule {
  std::string suffix;
  StemChange change = StemChange::none;

  friend bool operator==(const SuffixRule&, const SuffixRule&) = default;
};

/// +s, +es, +ed, +d, +ing, plus doubled-consonant +ed/+ing and e-dropping +ing.
inline std::vector<SuffixRule> default_derivative_rules() {
  return {{"s", StemChange::none},
          {"es", StemChange::none},
          {"ed", StemChange::none},
          {"d", StemChange::none},
          {"ing", StemChange::none},
          {"ed", StemChange::double_final_consonant},
          {"ing", StemChange::double_final_consonant},
          {"ing", StemChange::drop_final_e}};
}

namespace detail {

inline bool is_ascii_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }
inline bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }

}  // namespace detail

/// The surface form `rule` generates from `stem`, or nullopt when the stem
/// change does not apply.
inline std::optional<std::string> apply_rule(std::string_view stem, const SuffixRule& rule) {
  const std::size_t n = stem.size();
  std::string out(stem);
  switch (rule.change) {
    case StemChange::none:
      break;
    case StemChange::double_final_consonant: {
      if (n < 2) return std::nullopt;
      char last = stem[n - 1];
      if (!detail::is_ascii_lower(last) || detail::is_ascii_vowel(last) || last == 'w' || last == 'x' ||
          last == 'y' || !detail::is_ascii_vowel(stem[n - 2]))
        return std::nullopt;
      out.push_back(last);
      break;
    }
    case StemChange::drop_final_e:
      if (n < 2 || stem[n - 1] != 'e') return std::nullopt;
      out.pop_back();
      break;
    case StemChange::y_to_i:
      if (n < 2 || stem[n - 1] != 'y' || !detail::is_ascii_lower(stem[n - 2]) ||
          detail::is_ascii_vowel(stem[n - 2]))
        return std::nullopt;
      out.back() = 'i';
      break;
  }
  out += rule.suffix;
  std::string canonical = normalize_lexeme(out);
  if (canonical.empty()) return std::nullopt;
  return canonical;
}

/// Adds every rule-generated form of every entry, with the entry's field
/// set. Base entries are kept; a generated form that already exists gets the
/// union of both field sets. Only entries of `lexicon` act as stems.
inline Lexicon expand_derivatives(const Lexicon& lexicon, std::span<const SuffixRule> rules) {
  LexiconBuilder builder{lexicon};
  for (const auto& [lexeme, ks] : lexicon.entries()) {
    for (const auto& rule : rules) {
      auto form = apply_rule(lexeme, rule);
      if (!form) continue;
      for (FieldIndex k : ks) builder.add_canonical(*form, k);
    }
  }
  return std::move(builder).build();
}

/// Rules file: one rule per line, `suffix[<TAB>change]` where change is one
/// of none, double, drop-e, y-i. '#' comments and blank lines are ignored.
inline std::vector<SuffixRule> parse_suffix_rules(std::istream& in) {
  std::vector<SuffixRule> rules;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim_cr(raw);
    if (detail::is_blank(line) || line.front() == '#') continue;
    auto cols = detail::split_tabs(line);
    if (cols.size() > 2 || cols[0].empty()) throw ParseError(line_no, "expected suffix[<TAB>change]");
    SuffixRule rule{std::string(cols[0]), StemChange::none};
    if (cols.size() == 2) {
      if (cols[1] == "none") rule.change = StemChange::none;
      else if (cols[1] == "double") rule.change = StemChange::double_final_consonant;
      else if (cols[1] == "drop-e") rule.change = StemChange::drop_final_e;
      else if (cols[1] == "y-i") rule.change = StemChange::y_to_i;
      else throw ParseError(line_no, "unknown stem change '" + std::string(cols[1]) + "'");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

}  // namespace semfield

#endif  // SEMFIELD_LEXICON_HPP
