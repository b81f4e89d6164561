#pragma once

#include <cstdint>

namespace flowcalc {

/// Caps for exhaustive searches. Correctness of every decision procedure in
/// this library rests on exhaustiveness, so enumerations that would blow past
/// the cap throw BudgetExceeded instead of truncating.
struct SearchBudget {
    std::uint64_t max_candidates = 10'000'000;

    /// Gluing stages allowed in small-object-argument factorizations.
    unsigned max_stages = 16;
};

}  // namespace flowcalc
