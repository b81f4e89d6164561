#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowcalc {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The four sides of a lifting square do not commute.
class NonCommutingSquare : public Error {
public:
    using Error::Error;
};

/// A cocone handed to a universal-property query does not commute with the
/// span it is supposed to close.
class NonCommutingCocone : public Error {
public:
    using Error::Error;
};

/// Unknown weak-factorization-system identifier.
class UnknownWfs : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration would exceed the configured candidate cap.
/// The search refuses to run rather than silently truncate.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t attempted_, std::uint64_t cap_)
        : Error("search budget exceeded: " + std::to_string(attempted_) +
                " candidate assignments > cap " + std::to_string(cap_)),
          attempted(attempted_),
          cap(cap_) {}

    std::uint64_t attempted;
    std::uint64_t cap;
};

/// A presentation with a directed cycle denotes a flow with infinitely many
/// execution paths. Carries one witness cycle.
class InfinitePathSet : public Error {
public:
    InfinitePathSet(std::vector<std::string> states, std::vector<std::string> edges)
        : Error("infinite path set: the presentation has a directed cycle"),
          cycle_states(std::move(states)),
          cycle_edges(std::move(edges)) {}

    std::vector<std::string> cycle_states;
    std::vector<std::string> cycle_edges;
};

}  // namespace flowcalc
