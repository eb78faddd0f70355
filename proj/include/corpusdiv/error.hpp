#pragma once

#include <stdexcept>
#include <string>

namespace corpusdiv {

// Bad or unreadable input data (missing file, malformed record, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition does not hold (empty distribution, zero
// variance, too few samples, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace corpusdiv
