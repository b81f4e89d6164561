#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace flowcalc {

/// Finite set with string labels. Labels are kept sorted and pairwise
/// distinct, so every enumeration built on top is deterministic.
class FinSet {
public:
    FinSet() = default;
    explicit FinSet(std::vector<std::string> labels);

    /// {prefix0, prefix1, ..., prefix(count-1)}
    static FinSet numbered(std::size_t count, const std::string& prefix = "");

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    bool contains(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;
    const std::string& at(std::size_t index) const { return labels_.at(index); }
    const std::vector<std::string>& labels() const { return labels_; }

    auto begin() const { return labels_.begin(); }
    auto end() const { return labels_.end(); }

    friend bool operator==(const FinSet&, const FinSet&) = default;
    friend std::strong_ordering operator<=>(const FinSet&, const FinSet&) = default;

private:
    std::vector<std::string> labels_;
};

std::string to_string(const FinSet& set);

/// Total map between finite sets, stored as one codomain index per domain
/// element in domain order.
class SetMap {
public:
    SetMap(FinSet domain, FinSet codomain, const std::map<std::string, std::string>& table);

    static SetMap identity(const FinSet& set);
    static SetMap from_indices(FinSet domain, FinSet codomain, std::vector<std::size_t> table);

    const FinSet& domain() const { return domain_; }
    const FinSet& codomain() const { return codomain_; }
    const std::string& apply(const std::string& label) const;
    std::size_t apply_index(std::size_t index) const { return table_.at(index); }
    const std::vector<std::size_t>& table() const { return table_; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }

    friend bool operator==(const SetMap&, const SetMap&) = default;
    friend std::strong_ordering operator<=>(const SetMap&, const SetMap&) = default;

private:
    SetMap(FinSet domain, FinSet codomain, std::vector<std::size_t> table, int);

    FinSet domain_;
    FinSet codomain_;
    std::vector<std::size_t> table_;
};

std::string to_string(const SetMap& f);

/// g after f. Requires cod(f) == dom(g).
SetMap compose(const SetMap& g, const SetMap& f);

/// Every map domain -> codomain, in lexicographic order over assignment
/// tables. Empty when the codomain is empty and the domain is not.
std::vector<SetMap> hom_set(const FinSet& domain, const FinSet& codomain);

/// The seven named classes of maps of finite sets, closed under finite
/// union and intersection. Intersection binds tighter than union in the
/// printed names and in parse().
class MapClass {
public:
    enum class Tag { All, Iso, Mono, Epi, SplitMono, Empty, NonEmpty };

    MapClass(Tag tag);

    bool contains(const SetMap& f) const;
    const std::string& name() const { return name_; }

    friend MapClass operator|(const MapClass& a, const MapClass& b);
    friend MapClass operator&(const MapClass& a, const MapClass& b);

    /// Parses e.g. "Mono", "Epi|Empty", "(Iso|NonEmpty)&Mono".
    static std::optional<MapClass> parse(const std::string& text);

private:
    struct Node;
    MapClass(std::shared_ptr<const Node> node, std::string name);

    std::shared_ptr<const Node> node_;
    std::string name_;
};

bool tag_holds(MapClass::Tag tag, const SetMap& f);
std::string tag_name(MapClass::Tag tag);

/// Exactly the named class tags whose predicate f satisfies. SplitMono is
/// decided by exhaustive search for a left inverse.
std::set<MapClass::Tag> classify_map(const SetMap& f);

/// f is a retract of g in the arrow category: maps s0, s1, r0, r1 forming
/// two commuting squares with r0 s0 = id and r1 s1 = id. Exhaustive search.
bool is_retract(const SetMap& f, const SetMap& g);

/// Arrow isomorphism: bijections on domains and codomains making the square
/// commute. Exhaustive search.
bool are_arrow_isomorphic(const SetMap& f, const SetMap& g);

/// One representative per isomorphism class of arrows between sets of
/// cardinality <= bound, in canonical order (codomain size, then fiber
/// vector). Refuses bound > 6.
std::vector<SetMap> enumerate_universe(std::size_t bound);

namespace maps {
SetMap R();       // {0,1} -> {0}
SetMap C();       // {} -> {0}
SetMap C_plus();  // {0} -> {0,1}, 0 |-> 0
}  // namespace maps

}  // namespace flowcalc
