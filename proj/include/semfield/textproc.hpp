#ifndef SEMFIELD_TEXTPROC_HPP
#define SEMFIELD_TEXTPROC_HPP

// Text normalization, tokenization and per-document frequency dictionaries.
//
// A token is a maximal run of letters, optionally joined by single
// apostrophes that sit between two letters ("it's", "rock'n'roll").
// Everything else (digits, punctuation, symbols, whitespace) separates
// tokens. Letters are folded to lower case. U+2019 and U+02BC are treated
// as apostrophes and emitted as ASCII '\''.
//
// Letter classification and case folding use built-in tables covering
// Latin (Basic, Latin-1, Extended-A/B, Extended Additional), Greek and
// Cyrillic, plus uncased letters for Hebrew, Arabic, kana, CJK and Hangul.
// Combining diacritics (U+0300..U+036F) are kept when they follow a letter.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semfield/errors.hpp"

namespace semfield {

/// Identity of a corpus document. (author, title) is unique within a corpus;
/// the author is the category label.
struct DocumentId {
  std::string author;
  std::string title;
  std::string source_path;

  friend bool operator==(const DocumentId& a, const DocumentId& b) {
    return a.author == b.author && a.title == b.title;
  }
};

struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t total_count() const noexcept { return tokens.size(); }
};

/// Absolute lexeme counts of one document. relative(w) is the lexeme text
/// frequency: count of w over the total number of tokens.
struct FrequencyTable {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  /// No tokens at all; relative frequencies are undefined.
  bool degenerate() const noexcept { return total == 0; }

  double relative(const std::string& token) const {
    if (total == 0) return 0.0;
    auto it = counts.find(token);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
  }

  FrequencyTable& operator+=(const FrequencyTable& other) {
    for (const auto& [token, n] : other.counts) counts[token] += n;
    total += other.total;
    return *this;
  }
};

namespace detail {

/// Decodes one code point starting at `pos`, advancing it. Throws InputError
/// on truncated, overlong, surrogate or out-of-range sequences.
inline char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const std::size_t start = pos;
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    throw InputError(start, "invalid UTF-8 lead byte");
  }
  if (start + len > s.size()) throw InputError(start, "truncated UTF-8 sequence");
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(start + i);
    if ((b & 0xC0) != 0x80) throw InputError(start + i, "invalid UTF-8 continuation byte");
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min) throw InputError(start, "overlong UTF-8 sequence");
  if (cp >= 0xD800 && cp <= 0xDFFF) throw InputError(start, "UTF-8 encoded surrogate");
  if (cp > 0x10FFFF) throw InputError(start, "code point beyond U+10FFFF");
  pos = start + len;
  return cp;
}

inline void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

constexpr bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

constexpr bool is_letter(char32_t c) {
  if (c < 0x80) return in(c, 'a', 'z') || in(c, 'A', 'Z');
  if (c < 0x100) return c == 0xAA || c == 0xB5 || c == 0xBA || (c >= 0xC0 && c != 0xD7 && c != 0xF7);
  return in(c, 0x0100, 0x024F)    // Latin Extended-A/B
         || in(c, 0x0250, 0x02AF) // IPA extensions
         || c == 0x0386 || (in(c, 0x0388, 0x03FF) && c != 0x038B && c != 0x038D && c != 0x03A2)
         || in(c, 0x0400, 0x0481) || in(c, 0x048A, 0x052F)
         || in(c, 0x05D0, 0x05EA)    // Hebrew
         || in(c, 0x0620, 0x064A)    // Arabic
         || in(c, 0x1E00, 0x1EFF)    // Latin Extended Additional
         || in(c, 0x3041, 0x30FF)    // kana
         || in(c, 0x4E00, 0x9FFF)    // CJK unified
         || in(c, 0xAC00, 0xD7A3);   // Hangul syllables
}

constexpr bool is_combining_mark(char32_t c) { return in(c, 0x0300, 0x036F); }

constexpr bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019 || c == 0x02BC; }

/// Simple (one-to-one) lower-case mapping for the scripts is_letter knows.
constexpr char32_t to_lower(char32_t c) {
  if (in(c, 'A', 'Z')) return c + 0x20;
  if (c < 0xC0) return c;
  if (in(c, 0xC0, 0xDE) && c != 0xD7) return c + 0x20;
  if (in(c, 0x0100, 0x0137) || in(c, 0x014A, 0x0177)) return c | 1u;
  if (c == 0x0130) return U'i';
  if (in(c, 0x0139, 0x0148) || in(c, 0x0179, 0x017E)) return (c & 1u) ? c + 1 : c;
  if (c == 0x0178) return 0x00FF;
  if (in(c, 0x01CD, 0x01DC)) return (c & 1u) ? c + 1 : c;
  if (in(c, 0x01DE, 0x01EF) || in(c, 0x01F8, 0x021F) || in(c, 0x0222, 0x0233)) return c | 1u;
  if (c == 0x0386) return 0x03AC;
  if (in(c, 0x0388, 0x038A)) return c + 0x25;
  if (c == 0x038C) return 0x03CC;
  if (in(c, 0x038E, 0x038F)) return c + 0x3F;
  if (in(c, 0x0391, 0x03AB) && c != 0x03A2) return c + 0x20;
  if (in(c, 0x0400, 0x040F)) return c + 0x50;
  if (in(c, 0x0410, 0x042F)) return c + 0x20;
  if (in(c, 0x0460, 0x0481) || in(c, 0x048A, 0x04BF) || in(c, 0x04D0, 0x052F)) return c | 1u;
  if (c == 0x04C0) return 0x04CF;
  if (in(c, 0x04C1, 0x04CE)) return (c & 1u) ? c + 1 : c;
  if (in(c, 0x1E00, 0x1E95) || in(c, 0x1EA0, 0x1EFF)) return c | 1u;
  return c;
}

}  // namespace detail

/// Splits UTF-8 text into normalized tokens. Throws InputError on invalid
/// encoding, identifying the byte offset.
inline TokenSequence tokenize(std::string_view text) {
  TokenSequence out;
  std::string current;
  bool pending_apostrophe = false;  // an apostrophe directly after a letter

  const auto flush = [&] {
    if (!current.empty()) out.tokens.push_back(std::move(current));
    current.clear();
    pending_apostrophe = false;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = detail::decode_utf8(text, pos);
    if (detail::is_letter(cp)) {
      if (pending_apostrophe) {
        current.push_back('\'');
        pending_apostrophe = false;
      }
      detail::encode_utf8(detail::to_lower(cp), current);
    } else if (detail::is_combining_mark(cp) && !current.empty() && !pending_apostrophe) {
      detail::encode_utf8(cp, current);
    } else if (detail::is_apostrophe(cp) && !current.empty() && !pending_apostrophe) {
      pending_apostrophe = true;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

inline TokenSequence tokenize(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return tokenize(std::string_view(text));
}

/// Canonical form of a single lexeme: the tokenizer's output if it yields
/// exactly one token, otherwise an empty string (multi-word or symbol-only
/// entries can never match a token).
inline std::string normalize_lexeme(std::string_view lexeme) {
  auto seq = tokenize(lexeme);
  return seq.tokens.size() == 1 ? std::move(seq.tokens.front()) : std::string{};
}

inline FrequencyTable frequency_table(const TokenSequence& tokens) {
  FrequencyTable table;
  for (const auto& t : tokens.tokens) ++table.counts[t];
  table.total = tokens.total_count();
  return table;
}

}  // namespace semfield

#endif  // SEMFIELD_TEXTPROC_HPP
