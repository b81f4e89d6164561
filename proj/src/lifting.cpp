#include "flowcalc/lifting.hpp"

#include <limits>

namespace flowcalc {

std::vector<SetMap> SetCategory::hom(const FinSet& a, const FinSet& b,
                                     const SearchBudget& budget) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b.size() != 0 && count > budget.max_candidates / b.size()) {
            count = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        count *= b.size();
        if (count == 0) break;
    }
    if (count > budget.max_candidates) {
        throw BudgetExceeded(count, budget.max_candidates);
    }
    return hom_set(a, b);
}

std::string SetCategory::fingerprint(const FinSet& a) { return to_string(a); }

namespace detail {

std::optional<SetMap> first_filler_pointwise(const SetSquare& square) {
    const FinSet& through = square.left.codomain();  // domain of the filler
    const FinSet& into = square.right.domain();      // codomain of the filler

    // Values forced by g . left = top.
    std::vector<std::optional<std::size_t>> forced(through.size());
    for (std::size_t a = 0; a < square.left.domain().size(); ++a) {
        std::size_t b = square.left.apply_index(a);
        std::size_t required = square.top.apply_index(a);
        if (forced[b] && *forced[b] != required) return std::nullopt;
        forced[b] = required;
    }

    // right . g = bottom fixes the fiber each remaining element must land in.
    std::vector<std::size_t> table(through.size());
    for (std::size_t b = 0; b < through.size(); ++b) {
        std::size_t fiber_of = square.bottom.apply_index(b);
        if (forced[b]) {
            if (square.right.apply_index(*forced[b]) != fiber_of) return std::nullopt;
            table[b] = *forced[b];
            continue;
        }
        bool found = false;
        for (std::size_t x = 0; x < into.size(); ++x) {
            if (square.right.apply_index(x) == fiber_of) {
                table[b] = x;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return SetMap::from_indices(through, into, std::move(table));
}

}  // namespace detail

}  // namespace flowcalc
