#pragma once

#include <stdexcept>
#include <string>

namespace vivochan {

// Thrown when an input file (tissue database, stack description, scenario,
// measurement list) cannot be decoded. Carries the record/line index.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a computation needs data the caller did not supply, e.g. a
// mass density for a tissue that has no rho column.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a catalog lookup fails; the message lists valid labels.
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vivochan
