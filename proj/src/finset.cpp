#include "flowcalc/finset.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "flowcalc/errors.hpp"

namespace flowcalc {

FinSet::FinSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    auto dup = std::adjacent_find(labels_.begin(), labels_.end());
    if (dup != labels_.end()) {
        throw std::invalid_argument("FinSet: duplicate label '" + *dup + "'");
    }
}

FinSet FinSet::numbered(std::size_t count, const std::string& prefix) {
    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        labels.push_back(prefix + std::to_string(i));
    }
    return FinSet(std::move(labels));
}

bool FinSet::contains(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::size_t FinSet::index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) {
        throw std::invalid_argument("FinSet: no element '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::string to_string(const FinSet& set) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& label : set) {
        if (!first) out << ',';
        out << label;
        first = false;
    }
    out << '}';
    return out.str();
}

SetMap::SetMap(FinSet domain, FinSet codomain, std::vector<std::size_t> table, int)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {}

SetMap::SetMap(FinSet domain, FinSet codomain, const std::map<std::string, std::string>& table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
    table_.reserve(domain_.size());
    for (const auto& label : domain_) {
        auto it = table.find(label);
        if (it == table.end()) {
            throw std::invalid_argument("SetMap: no value assigned to '" + label + "'");
        }
        table_.push_back(codomain_.index_of(it->second));
    }
    if (table.size() != domain_.size()) {
        throw std::invalid_argument("SetMap: assignment mentions labels outside the domain");
    }
}

SetMap SetMap::identity(const FinSet& set) {
    std::vector<std::size_t> table(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) table[i] = i;
    return SetMap(set, set, std::move(table), 0);
}

SetMap SetMap::from_indices(FinSet domain, FinSet codomain, std::vector<std::size_t> table) {
    if (table.size() != domain.size()) {
        throw std::invalid_argument("SetMap: table size does not match domain size");
    }
    for (std::size_t value : table) {
        if (value >= codomain.size()) {
            throw std::invalid_argument("SetMap: table value out of codomain range");
        }
    }
    return SetMap(std::move(domain), std::move(codomain), std::move(table), 0);
}

const std::string& SetMap::apply(const std::string& label) const {
    return codomain_.at(table_.at(domain_.index_of(label)));
}

bool SetMap::is_injective() const {
    std::vector<bool> seen(codomain_.size(), false);
    for (std::size_t value : table_) {
        if (seen[value]) return false;
        seen[value] = true;
    }
    return true;
}

bool SetMap::is_surjective() const {
    std::vector<bool> seen(codomain_.size(), false);
    std::size_t hit = 0;
    for (std::size_t value : table_) {
        if (!seen[value]) {
            seen[value] = true;
            ++hit;
        }
    }
    return hit == codomain_.size();
}

std::string to_string(const SetMap& f) {
    std::ostringstream out;
    out << to_string(f.domain()) << "->" << to_string(f.codomain()) << " [";
    for (std::size_t i = 0; i < f.domain().size(); ++i) {
        if (i > 0) out << ", ";
        out << f.domain().at(i) << "=>" << f.codomain().at(f.apply_index(i));
    }
    out << ']';
    return out.str();
}

SetMap compose(const SetMap& g, const SetMap& f) {
    if (f.codomain() != g.domain()) {
        throw std::invalid_argument("compose: cod(f) != dom(g)");
    }
    std::vector<std::size_t> table(f.domain().size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = g.apply_index(f.apply_index(i));
    }
    return SetMap::from_indices(f.domain(), g.codomain(), std::move(table));
}

std::vector<SetMap> hom_set(const FinSet& domain, const FinSet& codomain) {
    std::vector<SetMap> result;
    if (domain.empty()) {
        result.push_back(SetMap::from_indices(domain, codomain, {}));
        return result;
    }
    if (codomain.empty()) return result;

    std::vector<std::size_t> table(domain.size(), 0);
    while (true) {
        result.push_back(SetMap::from_indices(domain, codomain, table));
        std::size_t pos = table.size();
        while (pos > 0) {
            --pos;
            if (++table[pos] < codomain.size()) break;
            table[pos] = 0;
            if (pos == 0) return result;
        }
    }
}

// --- MapClass ---------------------------------------------------------

struct MapClass::Node {
    enum class Kind { Leaf, Union, Intersect };
    Kind kind;
    Tag tag = Tag::All;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    bool eval(const SetMap& f) const {
        switch (kind) {
            case Kind::Leaf:
                return tag_holds(tag, f);
            case Kind::Union:
                return lhs->eval(f) || rhs->eval(f);
            case Kind::Intersect:
                return lhs->eval(f) && rhs->eval(f);
        }
        return false;
    }
};

MapClass::MapClass(Tag tag)
    : node_(std::make_shared<Node>(Node{Node::Kind::Leaf, tag, nullptr, nullptr})),
      name_(tag_name(tag)) {}

MapClass::MapClass(std::shared_ptr<const Node> node, std::string name)
    : node_(std::move(node)), name_(std::move(name)) {}

bool MapClass::contains(const SetMap& f) const { return node_->eval(f); }

MapClass operator|(const MapClass& a, const MapClass& b) {
    auto node = std::make_shared<MapClass::Node>(
        MapClass::Node{MapClass::Node::Kind::Union, MapClass::Tag::All, a.node_, b.node_});
    return MapClass(std::move(node), a.name_ + "|" + b.name_);
}

MapClass operator&(const MapClass& a, const MapClass& b) {
    auto wrap = [](const MapClass& m) {
        return m.node_->kind == MapClass::Node::Kind::Union ? "(" + m.name_ + ")" : m.name_;
    };
    auto node = std::make_shared<MapClass::Node>(
        MapClass::Node{MapClass::Node::Kind::Intersect, MapClass::Tag::All, a.node_, b.node_});
    return MapClass(std::move(node), wrap(a) + "&" + wrap(b));
}

namespace {

std::optional<MapClass::Tag> tag_by_name(const std::string& word) {
    using Tag = MapClass::Tag;
    std::string lower;
    for (char c : word) lower.push_back(static_cast<char>(std::tolower(c)));
    if (lower == "all") return Tag::All;
    if (lower == "iso") return Tag::Iso;
    if (lower == "mono") return Tag::Mono;
    if (lower == "epi") return Tag::Epi;
    if (lower == "splitmono") return Tag::SplitMono;
    if (lower == "empty") return Tag::Empty;
    if (lower == "nonempty") return Tag::NonEmpty;
    return std::nullopt;
}

struct ClassParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::optional<MapClass> atom() {
        skip_space();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            auto inner = expr();
            skip_space();
            if (!inner || pos >= text.size() || text[pos] != ')') return std::nullopt;
            ++pos;
            return inner;
        }
        std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) return std::nullopt;
        auto tag = tag_by_name(text.substr(start, pos - start));
        if (!tag) return std::nullopt;
        return MapClass(*tag);
    }

    std::optional<MapClass> term() {
        auto left = atom();
        if (!left) return std::nullopt;
        while (true) {
            skip_space();
            if (pos < text.size() && text[pos] == '&') {
                ++pos;
                auto right = atom();
                if (!right) return std::nullopt;
                left = *left & *right;
            } else {
                return left;
            }
        }
    }

    std::optional<MapClass> expr() {
        auto left = term();
        if (!left) return std::nullopt;
        while (true) {
            skip_space();
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                auto right = term();
                if (!right) return std::nullopt;
                left = *left | *right;
            } else {
                return left;
            }
        }
    }
};

}  // namespace

std::optional<MapClass> MapClass::parse(const std::string& text) {
    ClassParser parser{text};
    auto result = parser.expr();
    parser.skip_space();
    if (!result || parser.pos != text.size()) return std::nullopt;
    return result;
}

std::string tag_name(MapClass::Tag tag) {
    switch (tag) {
        case MapClass::Tag::All: return "All";
        case MapClass::Tag::Iso: return "Iso";
        case MapClass::Tag::Mono: return "Mono";
        case MapClass::Tag::Epi: return "Epi";
        case MapClass::Tag::SplitMono: return "SplitMono";
        case MapClass::Tag::Empty: return "Empty";
        case MapClass::Tag::NonEmpty: return "NonEmpty";
    }
    return "?";
}

bool tag_holds(MapClass::Tag tag, const SetMap& f) {
    switch (tag) {
        case MapClass::Tag::All:
            return true;
        case MapClass::Tag::Iso:
            return f.is_bijective();
        case MapClass::Tag::Mono:
            return f.is_injective();
        case MapClass::Tag::Epi:
            return f.is_surjective();
        case MapClass::Tag::SplitMono: {
            const SetMap id = SetMap::identity(f.domain());
            for (const SetMap& g : hom_set(f.codomain(), f.domain())) {
                if (compose(g, f) == id) return true;
            }
            return false;
        }
        case MapClass::Tag::Empty:
            return f.domain().empty();
        case MapClass::Tag::NonEmpty:
            return !f.domain().empty();
    }
    return false;
}

std::set<MapClass::Tag> classify_map(const SetMap& f) {
    using Tag = MapClass::Tag;
    std::set<Tag> tags;
    for (Tag tag : {Tag::All, Tag::Iso, Tag::Mono, Tag::Epi, Tag::SplitMono, Tag::Empty,
                    Tag::NonEmpty}) {
        if (tag_holds(tag, f)) tags.insert(tag);
    }
    return tags;
}

bool is_retract(const SetMap& f, const SetMap& g) {
    // Sections/retractions on the domain side and on the codomain side,
    // then the two square conditions against f and g.
    std::vector<std::pair<SetMap, SetMap>> dom_legs;
    const SetMap id_dom = SetMap::identity(f.domain());
    for (const SetMap& s0 : hom_set(f.domain(), g.domain())) {
        for (const SetMap& r0 : hom_set(g.domain(), f.domain())) {
            if (compose(r0, s0) == id_dom) dom_legs.emplace_back(s0, r0);
        }
    }
    if (dom_legs.empty()) return false;

    std::vector<std::pair<SetMap, SetMap>> cod_legs;
    const SetMap id_cod = SetMap::identity(f.codomain());
    for (const SetMap& s1 : hom_set(f.codomain(), g.codomain())) {
        for (const SetMap& r1 : hom_set(g.codomain(), f.codomain())) {
            if (compose(r1, s1) == id_cod) cod_legs.emplace_back(s1, r1);
        }
    }
    if (cod_legs.empty()) return false;

    for (const auto& [s0, r0] : dom_legs) {
        const SetMap gs0 = compose(g, s0);
        const SetMap fr0 = compose(f, r0);
        for (const auto& [s1, r1] : cod_legs) {
            if (gs0 == compose(s1, f) && fr0 == compose(r1, g)) return true;
        }
    }
    return false;
}

bool are_arrow_isomorphic(const SetMap& f, const SetMap& g) {
    if (f.domain().size() != g.domain().size() || f.codomain().size() != g.codomain().size()) {
        return false;
    }
    for (const SetMap& i : hom_set(f.domain(), g.domain())) {
        if (!i.is_bijective()) continue;
        for (const SetMap& j : hom_set(f.codomain(), g.codomain())) {
            if (!j.is_bijective()) continue;
            if (compose(g, i) == compose(j, f)) return true;
        }
    }
    return false;
}

namespace {

// Non-increasing fiber vectors of the given length with total sum <=
// remaining, in ascending lexicographic order. A map between finite sets is
// determined up to arrow isomorphism by its multiset of fiber sizes.
void emit_fibers(std::vector<std::size_t>& prefix, std::size_t length, std::size_t max_entry,
                 std::size_t remaining, std::vector<std::vector<std::size_t>>& out) {
    if (prefix.size() == length) {
        out.push_back(prefix);
        return;
    }
    std::size_t cap = std::min(max_entry, remaining);
    for (std::size_t value = 0; value <= cap; ++value) {
        prefix.push_back(value);
        emit_fibers(prefix, length, value == 0 ? 0 : value, remaining - value, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<SetMap> enumerate_universe(std::size_t bound) {
    if (bound > 6) {
        throw Error("enumerate_universe: bound " + std::to_string(bound) +
                    " exceeds the hard cap of 6");
    }
    std::vector<SetMap> universe;
    for (std::size_t cod_size = 0; cod_size <= bound; ++cod_size) {
        std::vector<std::vector<std::size_t>> fiber_vectors;
        std::vector<std::size_t> prefix;
        emit_fibers(prefix, cod_size, bound, bound, fiber_vectors);
        for (const auto& fibers : fiber_vectors) {
            std::size_t dom_size = 0;
            for (std::size_t n : fibers) dom_size += n;
            std::vector<std::size_t> table;
            table.reserve(dom_size);
            for (std::size_t target = 0; target < fibers.size(); ++target) {
                for (std::size_t k = 0; k < fibers[target]; ++k) table.push_back(target);
            }
            universe.push_back(SetMap::from_indices(FinSet::numbered(dom_size, "a"),
                                                    FinSet::numbered(cod_size, "b"),
                                                    std::move(table)));
        }
    }
    return universe;
}

namespace maps {

SetMap R() {
    return SetMap(FinSet({"0", "1"}), FinSet({"0"}), {{"0", "0"}, {"1", "0"}});
}

SetMap C() {
    return SetMap(FinSet(), FinSet({"0"}), {});
}

SetMap C_plus() {
    return SetMap(FinSet({"0"}), FinSet({"0", "1"}), {{"0", "0"}});
}

}  // namespace maps

}  // namespace flowcalc
