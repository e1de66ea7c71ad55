#ifndef WIKIDEX_ERRORS_HPP
#define WIKIDEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wikidex {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unusable input: missing files, malformed corpora, bad arguments.
// CLI maps these to exit code 2.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

// Valid input, but the requested operation is not satisfiable:
// empty population, ancestor conflicts, empty corpus. Exit code 3.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Input ended inside a page element; complete pages were already yielded.
class TruncatedDumpError : public InputError {
 public:
  explicit TruncatedDumpError(const std::string& msg) : InputError(msg) {}
};

// Index directory load failures, kept distinct per failure kind.
class FormatVersionError : public InputError {
 public:
  explicit FormatVersionError(const std::string& msg) : InputError(msg) {}
};

class ChecksumError : public InputError {
 public:
  explicit ChecksumError(const std::string& msg) : InputError(msg) {}
};

class MissingFileError : public InputError {
 public:
  explicit MissingFileError(const std::string& msg) : InputError(msg) {}
};

// Lookup of a lemma/term id that is not in the index. Distinct from a
// legitimately rare term, which still has an idf.
class UnknownTermError : public Error {
 public:
  explicit UnknownTermError(const std::string& msg) : Error(msg) {}
};

}  // namespace wikidex

#endif  // WIKIDEX_ERRORS_HPP
