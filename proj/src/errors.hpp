#pragma once

#include <stdexcept>
#include <string>

namespace kvis {

// Input violates weak general position (exact tie / collinearity the
// algorithms are not defined for), or an exact-arithmetic invariant failed.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// A strict-mode workspace meter was asked to exceed its budget.
struct BudgetExceededError : std::runtime_error {
  BudgetExceededError(const std::string& tag, long long requested, long long budget)
      : std::runtime_error("workspace budget exceeded at '" + tag + "': need " +
                           std::to_string(requested) + " words, budget " +
                           std::to_string(budget)),
        tag(tag) {}
  std::string tag;
};

// Selection asked for a rank beyond the keyed sequence.
struct NotEnoughElementsError : std::runtime_error {
  explicit NotEnoughElementsError(const std::string& what) : std::runtime_error(what) {}
};

// Scene failed structural validation (not simple, q outside, bad orientation...).
struct InvalidSceneError : std::runtime_error {
  explicit InvalidSceneError(const std::string& what) : std::runtime_error(what) {}
};

// Scene text could not be parsed; carries a 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// Random scene generation could not satisfy its constraints.
struct GenerationError : std::runtime_error {
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency audit failed (e.g. candidate-set cursor drifted
// beyond its contracted neighbourhood).
struct AuditError : std::logic_error {
  explicit AuditError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kvis
