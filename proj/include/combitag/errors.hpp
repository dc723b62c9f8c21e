// Error types shared across the toolkit. Every recoverable failure is
// reported as a subclass of Error so callers can catch one base type.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace combitag {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed line in a line-oriented file; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Input that parses to a corpus with zero sentences.
class EmptyCorpusError : public Error {
public:
  explicit EmptyCorpusError(const std::string& msg) : Error(msg) {}
};

// Invalid setting (fraction out of range, bad fold count, bad config file).
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
  ConfigError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_ = 0;
};

// Bad record in tabular input; carries the 0-based record index.
class DataError : public Error {
public:
  DataError(std::size_t record, const std::string& msg)
      : Error("record " + std::to_string(record) + ": " + msg),
        record_(record) {}
  std::size_t record() const { return record_; }

private:
  std::size_t record_;
};

// Two parallel token streams disagree; carries the first mismatching
// 0-based token position.
class AlignmentError : public Error {
public:
  AlignmentError(std::size_t position, const std::string& msg)
      : Error("position " + std::to_string(position) + ": " + msg),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// Feature vectors of unequal arity.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

class TrainError : public Error {
public:
  explicit TrainError(const std::string& msg) : Error(msg) {}
};

class SplitError : public Error {
public:
  explicit SplitError(const std::string& msg) : Error(msg) {}
};

class FoldError : public Error {
public:
  explicit FoldError(const std::string& msg) : Error(msg) {}
};

// Arithmetic outside the defined domain (e.g. error reduction from a
// perfect baseline).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

} // namespace combitag
