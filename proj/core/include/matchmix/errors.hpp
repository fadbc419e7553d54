#ifndef MATCHMIX_ERRORS_HPP
#define MATCHMIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace matchmix {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input (graph6 string, JSON, family spec string).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input outside the operation's mathematical domain (non-bipartite graph,
/// non-threshold graph, matching not perfect, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configurable size cap was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// No valid start state exists (e.g. no perfect matching for a chain that
/// needs one).
class StartError : public Error {
 public:
  using Error::Error;
};

/// The chain is periodic, so the quantity asked for is undefined.
/// The lazy variant (laziness = 1/2) is the standard remedy.
class PeriodicityError : public Error {
 public:
  using Error::Error;
};

/// A structural precondition on the state graph failed (disconnected, ...).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric routine failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Required configuration is missing (e.g. JSV weights for simulation).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace matchmix

#endif
