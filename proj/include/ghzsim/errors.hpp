#pragma once

#include <stdexcept>
#include <string>

namespace ghzsim {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad arguments: out-of-range qubits, dimension mismatches, invalid specs.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

/// A stored state violated its invariants (non-normalized, non-PSD, ...).
class InvalidStateError : public Error {
 public:
  explicit InvalidStateError(const std::string& what) : Error(what) {}
};

/// A correction touched qubits outside the acting party's ownership while
/// nonlocal operations were not allowed.
class LocalityError : public Error {
 public:
  explicit LocalityError(const std::string& what) : Error(what) {}
};

/// Requested measurement branch has probability below the zero cutoff.
class BranchImpossibleError : public Error {
 public:
  explicit BranchImpossibleError(const std::string& what) : Error(what) {}
};

/// Protocol applied to a state family it does not support.
class UnsupportedStateError : public Error {
 public:
  explicit UnsupportedStateError(const std::string& what) : Error(what) {}
};

}  // namespace ghzsim
