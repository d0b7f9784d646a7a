#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revcue {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (lexicon, config). Carries a 1-based line number
/// when the offending line is known; 0 means "whole file".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Corpus failed a quality gate (e.g. too many malformed records).
class CorpusQualityError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure; message includes the path.
class IoError : public Error {
public:
    using Error::Error;
};

/// Remote fetch failed after exhausting retries.
class NetworkError : public Error {
public:
    using Error::Error;
};

/// Process exit codes used by the CLI.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitCorpusQuality = 2,
    kExitIo = 3,
    kExitNetwork = 4,
    kExitLintStrict = 5,
};

} // namespace revcue
