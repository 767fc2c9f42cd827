#pragma once

#include <stdexcept>
#include <string>

namespace igasc {

/// Input outside the support or parameter domain of a density, CDF or map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// State dynamics that do not admit a stationary law.
class StationarityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller-side misuse: wrong lengths, empty inputs, unsupported family.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A Monte Carlo study in which no replication produced a usable fit.
class StudyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observation `index` (0-based) is invalid for the model family.
class ObservationError : public DomainError {
 public:
  ObservationError(std::size_t index, const std::string& what)
      : DomainError("observation " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace igasc
