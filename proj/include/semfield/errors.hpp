#ifndef SEMFIELD_ERRORS_HPP
#define SEMFIELD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semfield {

/// Malformed input file (lexicon, rules, matrix, report). Carries the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A contract violation on otherwise well-formed data: unknown field names,
/// duplicate documents, dimension mismatches, out-of-range parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text that is not valid UTF-8. `offset` is the byte where decoding failed.
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t offset, const std::string& what)
      : std::runtime_error("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace semfield

#endif  // SEMFIELD_ERRORS_HPP
