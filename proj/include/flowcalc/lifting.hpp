#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowcalc/budget.hpp"
#include "flowcalc/errors.hpp"
#include "flowcalc/finset.hpp"
#include "flowcalc/flow.hpp"

namespace flowcalc {

/// The two ambient categories the lifting engine runs in. A category trait
/// provides objects, arrows, composition and exhaustive hom-set
/// enumeration in a canonical order.
struct SetCategory {
    using Object = FinSet;
    using Arrow = SetMap;

    static const Object& domain(const Arrow& f) { return f.domain(); }
    static const Object& codomain(const Arrow& f) { return f.codomain(); }
    static Arrow compose_arrows(const Arrow& g, const Arrow& f) { return compose(g, f); }
    static std::vector<Arrow> hom(const Object& a, const Object& b, const SearchBudget& budget);
    static std::string fingerprint(const Object& a);
    static std::string describe(const Arrow& f) { return to_string(f); }
};

struct FlowCategory {
    using Object = Flow;
    using Arrow = FlowMorphism;

    static const Object& domain(const Arrow& f) { return f.domain(); }
    static const Object& codomain(const Arrow& f) { return f.codomain(); }
    static Arrow compose_arrows(const Arrow& g, const Arrow& f) { return compose(g, f); }
    static std::vector<Arrow> hom(const Object& a, const Object& b, const SearchBudget& budget) {
        return enumerate_morphisms(a, b, budget);
    }
    static std::string fingerprint(const Object& a) { return a.fingerprint(); }
    static std::string describe(const Arrow& f) { return to_string(f); }
};

/// Memo table for hom-sets, keyed by the structural fingerprints of source
/// and target. Populated on first use; a single cache is shared across all
/// square enumerations of one lifting query.
template <typename Cat>
class HomCache {
public:
    explicit HomCache(SearchBudget budget = {}) : budget_(budget) {}

    const std::vector<typename Cat::Arrow>& hom(const typename Cat::Object& a,
                                                const typename Cat::Object& b) {
        std::string key = Cat::fingerprint(a) + "\x1e" + Cat::fingerprint(b);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, Cat::hom(a, b, budget_)).first;
        }
        return it->second;
    }

    const SearchBudget& budget() const { return budget_; }

private:
    SearchBudget budget_;
    std::map<std::string, std::vector<typename Cat::Arrow>> cache_;
};

/// A commuting square: right . top = bottom . left, with left and right the
/// vertical arrows.
template <typename Cat>
struct LiftingSquare {
    typename Cat::Arrow left;
    typename Cat::Arrow right;
    typename Cat::Arrow top;
    typename Cat::Arrow bottom;
};

using SetSquare = LiftingSquare<SetCategory>;
using FlowSquare = LiftingSquare<FlowCategory>;

namespace detail {

/// First filler in hom-enumeration order, without commutativity checking.
template <typename Cat>
std::optional<typename Cat::Arrow> first_filler(const LiftingSquare<Cat>& square,
                                                HomCache<Cat>& cache) {
    for (const auto& g : cache.hom(Cat::codomain(square.left), Cat::domain(square.right))) {
        if (Cat::compose_arrows(g, square.left) == square.top &&
            Cat::compose_arrows(square.right, g) == square.bottom) {
            return g;
        }
    }
    return std::nullopt;
}

/// Set maps decompose pointwise, so the lexicographically first filler can
/// be chosen element by element: forced on the image of the left leg,
/// smallest fiber element elsewhere. Agrees with the generic enumeration.
std::optional<SetMap> first_filler_pointwise(const SetSquare& square);

template <typename Cat>
std::optional<typename Cat::Arrow> filler(const LiftingSquare<Cat>& square,
                                          HomCache<Cat>& cache) {
    return first_filler(square, cache);
}

inline std::optional<SetMap> filler(const SetSquare& square, HomCache<SetCategory>&) {
    return first_filler_pointwise(square);
}

}  // namespace detail

template <typename Cat>
bool square_commutes(const LiftingSquare<Cat>& square) {
    return Cat::compose_arrows(square.right, square.top) ==
           Cat::compose_arrows(square.bottom, square.left);
}

/// First diagonal filler of a commuting square under the canonical
/// candidate ordering, or nullopt. Throws NonCommutingSquare when the
/// square does not commute.
template <typename Cat>
std::optional<typename Cat::Arrow> find_filler(const LiftingSquare<Cat>& square,
                                               HomCache<Cat>& cache) {
    if (!square_commutes(square)) {
        throw NonCommutingSquare("find_filler: the square does not commute");
    }
    return detail::filler(square, cache);
}

template <typename Cat>
std::optional<typename Cat::Arrow> find_filler(const LiftingSquare<Cat>& square,
                                               const SearchBudget& budget = {}) {
    HomCache<Cat> cache(budget);
    return find_filler(square, cache);
}

/// First commuting square with left = i, right = p that admits no filler,
/// enumerating all (top, bottom) pairs.
template <typename Cat>
std::optional<LiftingSquare<Cat>> find_unliftable_square(const typename Cat::Arrow& i,
                                                         const typename Cat::Arrow& p,
                                                         HomCache<Cat>& cache) {
    const auto& tops = cache.hom(Cat::domain(i), Cat::domain(p));
    const auto& bottoms = cache.hom(Cat::codomain(i), Cat::codomain(p));

    std::vector<typename Cat::Arrow> top_sides;
    top_sides.reserve(tops.size());
    for (const auto& top : tops) top_sides.push_back(Cat::compose_arrows(p, top));
    std::vector<typename Cat::Arrow> bottom_sides;
    bottom_sides.reserve(bottoms.size());
    for (const auto& bottom : bottoms) bottom_sides.push_back(Cat::compose_arrows(bottom, i));

    for (std::size_t t = 0; t < tops.size(); ++t) {
        for (std::size_t b = 0; b < bottoms.size(); ++b) {
            if (!(top_sides[t] == bottom_sides[b])) continue;
            LiftingSquare<Cat> square{i, p, tops[t], bottoms[b]};
            if (!detail::filler(square, cache)) return square;
        }
    }
    return std::nullopt;
}

/// i has the left lifting property with respect to p: every commuting
/// square admits a diagonal filler.
template <typename Cat>
bool has_llp(const typename Cat::Arrow& i, const typename Cat::Arrow& p, HomCache<Cat>& cache) {
    return !find_unliftable_square<Cat>(i, p, cache).has_value();
}

template <typename Cat>
bool has_llp(const typename Cat::Arrow& i, const typename Cat::Arrow& p,
             const SearchBudget& budget = {}) {
    HomCache<Cat> cache(budget);
    return has_llp<Cat>(i, p, cache);
}

/// Same search from the right-hand side's point of view.
template <typename Cat>
bool has_rlp(const typename Cat::Arrow& p, const typename Cat::Arrow& i,
             const SearchBudget& budget = {}) {
    return has_llp<Cat>(i, p, budget);
}

/// Arrows of `universe` with the LLP against every arrow of `against`.
template <typename Cat>
std::vector<typename Cat::Arrow> llp_members(const std::vector<typename Cat::Arrow>& against,
                                             const std::vector<typename Cat::Arrow>& universe,
                                             const SearchBudget& budget = {}) {
    HomCache<Cat> cache(budget);
    std::vector<typename Cat::Arrow> result;
    for (const auto& u : universe) {
        bool ok = true;
        for (const auto& m : against) {
            if (!has_llp<Cat>(u, m, cache)) {
                ok = false;
                break;
            }
        }
        if (ok) result.push_back(u);
    }
    return result;
}

/// Arrows of `universe` with the RLP against every arrow of `against`
/// (inj(K) restricted to the universe).
template <typename Cat>
std::vector<typename Cat::Arrow> rlp_members(const std::vector<typename Cat::Arrow>& against,
                                             const std::vector<typename Cat::Arrow>& universe,
                                             const SearchBudget& budget = {}) {
    HomCache<Cat> cache(budget);
    std::vector<typename Cat::Arrow> result;
    for (const auto& u : universe) {
        bool ok = true;
        for (const auto& k : against) {
            if (!has_llp<Cat>(k, u, cache)) {
                ok = false;
                break;
            }
        }
        if (ok) result.push_back(u);
    }
    return result;
}

}  // namespace flowcalc
