#include "flowcalc/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "flowcalc/detail/disjoint_sets.hpp"
#include "flowcalc/errors.hpp"

namespace flowcalc {

namespace {

constexpr char kSep = '\x1f';

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) result = sat_mul(result, base);
    return result;
}

std::string join_word(const EdgeWord& word) {
    std::string label;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0) label += '*';
        label += word[i];
    }
    return label;
}

}  // namespace

std::string fresh_label(std::string base, const std::set<std::string>& used) {
    while (used.count(base) > 0) base += '\'';
    return base;
}

// --- Flow ----------------------------------------------------------------

Flow::Builder& Flow::Builder::states(FinSet states) {
    for (const auto& label : states) states_.push_back(label);
    return *this;
}

Flow::Builder& Flow::Builder::add_state(const std::string& label) {
    states_.push_back(label);
    return *this;
}

Flow::Builder& Flow::Builder::add_path(const std::string& source, const std::string& target,
                                       const std::string& label) {
    paths_.emplace_back(source, target, label);
    return *this;
}

Flow::Builder& Flow::Builder::set_composite(const std::string& x, const std::string& y,
                                            const std::string& xy) {
    compose_[{x, y}] = xy;
    return *this;
}

Flow::Builder& Flow::Builder::truncated(bool flag) {
    truncated_ = flag;
    return *this;
}

Flow Flow::Builder::build() {
    Flow flow;
    flow.states_ = FinSet(states_);
    flow.truncated_ = truncated_;

    for (const auto& [source, target, label] : paths_) {
        if (!flow.states_.contains(source) || !flow.states_.contains(target)) {
            throw Error("flow: path '" + label + "' has an endpoint that is not a state");
        }
        if (!flow.endpoints_.emplace(label, StatePair{source, target}).second) {
            throw Error("flow: duplicate path label '" + label + "'");
        }
    }
    std::map<StatePair, std::vector<std::string>> grouped;
    for (const auto& [label, ends] : flow.endpoints_) grouped[ends].push_back(label);
    for (auto& [ends, labels] : grouped) flow.paths_[ends] = FinSet(std::move(labels));

    for (const auto& [pair, xy] : compose_) {
        const auto& [x, y] = pair;
        auto x_it = flow.endpoints_.find(x);
        auto y_it = flow.endpoints_.find(y);
        auto xy_it = flow.endpoints_.find(xy);
        if (x_it == flow.endpoints_.end() || y_it == flow.endpoints_.end() ||
            xy_it == flow.endpoints_.end()) {
            throw Error("flow: composite entry references an unknown path");
        }
        if (x_it->second.second != y_it->second.first) {
            throw Error("flow: composite of non-consecutive paths '" + x + "', '" + y + "'");
        }
        if (xy_it->second != StatePair{x_it->second.first, y_it->second.second}) {
            throw Error("flow: composite '" + xy + "' has wrong endpoints");
        }
    }
    flow.compose_ = std::move(compose_);

    if (!flow.truncated_ && !flow.compose_total()) {
        throw Error("flow: composition is not total on consecutive paths");
    }
    if (!flow.associativity_holds()) {
        throw Error("flow: composition is not associative");
    }
    return flow;
}

const FinSet& Flow::paths(const std::string& source, const std::string& target) const {
    static const FinSet empty;
    auto it = paths_.find({source, target});
    return it == paths_.end() ? empty : it->second;
}

const std::string& Flow::path_source(const std::string& label) const {
    return endpoints_.at(label).first;
}

const std::string& Flow::path_target(const std::string& label) const {
    return endpoints_.at(label).second;
}

std::vector<std::string> Flow::all_paths() const {
    std::vector<std::string> result;
    for (const auto& [ends, labels] : paths_) {
        for (const auto& label : labels) result.push_back(label);
    }
    return result;
}

std::size_t Flow::total_path_count() const {
    std::size_t count = 0;
    for (const auto& [ends, labels] : paths_) count += labels.size();
    return count;
}

std::optional<std::string> Flow::composite(const std::string& x, const std::string& y) const {
    auto it = compose_.find({x, y});
    if (it == compose_.end()) return std::nullopt;
    return it->second;
}

bool Flow::compose_total() const {
    for (const auto& [x, x_ends] : endpoints_) {
        for (const auto& [y, y_ends] : endpoints_) {
            if (x_ends.second != y_ends.first) continue;
            if (compose_.find({x, y}) == compose_.end()) return false;
        }
    }
    return true;
}

bool Flow::associativity_holds() const {
    const auto labels = all_paths();
    for (const auto& x : labels) {
        for (const auto& y : labels) {
            if (path_target(x) != path_source(y)) continue;
            auto xy = composite(x, y);
            for (const auto& z : labels) {
                if (path_target(y) != path_source(z)) continue;
                auto yz = composite(y, z);
                if (!xy || !yz) continue;
                auto left = composite(*xy, z);
                auto right = composite(x, *yz);
                if (!left || !right) continue;
                if (*left != *right) return false;
            }
        }
    }
    return true;
}

std::string Flow::fingerprint() const {
    std::ostringstream out;
    out << "S";
    for (const auto& s : states_) out << kSep << s;
    out << kSep << "P";
    for (const auto& [ends, labels] : paths_) {
        out << kSep << ends.first << kSep << ends.second << kSep << '(';
        for (const auto& label : labels) out << label << kSep;
        out << ')';
    }
    out << kSep << "C";
    for (const auto& [pair, xy] : compose_) {
        out << kSep << pair.first << kSep << pair.second << kSep << xy;
    }
    out << kSep << "T" << (truncated_ ? '1' : '0');
    return out.str();
}

// --- FlowMorphism ----------------------------------------------------------

FlowMorphism::FlowMorphism(std::shared_ptr<const Flow> domain, std::shared_ptr<const Flow> codomain,
                           SetMap state_map, std::map<std::string, std::string> path_map)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      state_map_(std::move(state_map)),
      path_map_(std::move(path_map)) {}

bool FlowMorphism::homomorphism_ok(const Flow& domain, const Flow& codomain,
                                   const std::map<std::string, std::string>& path_map) {
    for (const auto& [x, fx] : path_map) {
        for (const auto& [y, fy] : path_map) {
            if (domain.path_target(x) != domain.path_source(y)) continue;
            auto xy = domain.composite(x, y);
            if (!xy) continue;
            auto image = codomain.composite(fx, fy);
            if (!image || *image != path_map.at(*xy)) return false;
        }
    }
    return true;
}

FlowMorphism FlowMorphism::build(Flow domain, Flow codomain, SetMap state_map,
                                 std::map<std::string, std::string> path_map) {
    if (state_map.domain() != domain.states() || state_map.codomain() != codomain.states()) {
        throw Error("flow morphism: state map endpoints do not match the flows");
    }
    std::size_t mapped = 0;
    for (const auto& [label, image] : path_map) {
        if (!domain.has_path(label)) {
            throw Error("flow morphism: '" + label + "' is not a path of the domain");
        }
        if (!codomain.has_path(image)) {
            throw Error("flow morphism: image '" + image + "' is not a path of the codomain");
        }
        if (codomain.path_source(image) != state_map.apply(domain.path_source(label)) ||
            codomain.path_target(image) != state_map.apply(domain.path_target(label))) {
            throw Error("flow morphism: image of '" + label + "' has wrong endpoints");
        }
        ++mapped;
    }
    if (mapped != domain.total_path_count()) {
        throw Error("flow morphism: path map is not total");
    }
    if (!homomorphism_ok(domain, codomain, path_map)) {
        throw Error("flow morphism: f(x*y) != f(x)*f(y)");
    }
    return FlowMorphism(std::make_shared<Flow>(std::move(domain)),
                        std::make_shared<Flow>(std::move(codomain)), std::move(state_map),
                        std::move(path_map));
}

FlowMorphism FlowMorphism::identity(const Flow& flow) {
    std::map<std::string, std::string> path_map;
    for (const auto& label : flow.all_paths()) path_map[label] = label;
    auto shared = std::make_shared<Flow>(flow);
    return FlowMorphism(shared, shared, SetMap::identity(flow.states()), std::move(path_map));
}

const std::string& FlowMorphism::apply_path(const std::string& label) const {
    return path_map_.at(label);
}

SetMap FlowMorphism::path_component(const std::string& source, const std::string& target) const {
    const FinSet& from = domain_->paths(source, target);
    const FinSet& to =
        codomain_->paths(state_map_.apply(source), state_map_.apply(target));
    std::map<std::string, std::string> table;
    for (const auto& label : from) table[label] = path_map_.at(label);
    return SetMap(from, to, table);
}

bool FlowMorphism::is_isomorphism() const {
    if (!state_map_.is_bijective()) return false;
    for (const auto& a : domain_->states()) {
        for (const auto& b : domain_->states()) {
            if (!path_component(a, b).is_bijective()) return false;
        }
    }
    return true;
}

FlowMorphism compose(const FlowMorphism& g, const FlowMorphism& f) {
    if (!(f.codomain() == g.domain())) {
        throw Error("flow morphism composition: cod(f) != dom(g)");
    }
    std::map<std::string, std::string> path_map;
    for (const auto& [label, image] : f.path_map_) path_map[label] = g.path_map_.at(image);
    return FlowMorphism(f.domain_, g.codomain_, compose(g.state_map_, f.state_map_),
                        std::move(path_map));
}

bool operator==(const FlowMorphism& a, const FlowMorphism& b) {
    return a.domain() == b.domain() && a.codomain() == b.codomain() &&
           a.state_map_ == b.state_map_ && a.path_map_ == b.path_map_;
}

std::string to_string(const FlowMorphism& f) {
    std::ostringstream out;
    out << "f0 " << to_string(f.state_map()) << "; paths [";
    bool first = true;
    for (const auto& [label, image] : f.path_map()) {
        if (!first) out << ", ";
        out << label << "=>" << image;
        first = false;
    }
    out << ']';
    return out.str();
}

// --- FlowPresentation ------------------------------------------------------

FlowPresentation::FlowPresentation(FinSet vertices, std::vector<PresentationEdge> edges,
                                   std::vector<PresentationRelation> relations)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), relations_(std::move(relations)) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (edges_[i].label == edges_[i + 1].label) {
            throw Error("presentation: duplicate edge label '" + edges_[i].label + "'");
        }
    }
    for (const auto& edge : edges_) {
        if (!vertices_.contains(edge.source) || !vertices_.contains(edge.target)) {
            throw Error("presentation: edge '" + edge.label + "' has an unknown endpoint");
        }
    }
    for (auto& relation : relations_) {
        auto lhs = word_endpoints(relation.lhs);
        auto rhs = word_endpoints(relation.rhs);
        if (!lhs || !rhs) {
            throw Error("presentation: relation side is empty or not composable");
        }
        if (*lhs != *rhs) {
            throw Error("presentation: relation sides do not share endpoints");
        }
        auto key = [](const EdgeWord& w) { return std::make_pair(w.size(), w); };
        if (key(relation.rhs) < key(relation.lhs)) std::swap(relation.lhs, relation.rhs);
    }
    std::sort(relations_.begin(), relations_.end());
    relations_.erase(std::unique(relations_.begin(), relations_.end()), relations_.end());
}

bool FlowPresentation::has_edge(const std::string& label) const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const PresentationEdge& e) { return e.label == label; });
}

const PresentationEdge& FlowPresentation::edge(const std::string& label) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), label,
                               [](const PresentationEdge& e, const std::string& l) {
                                   return e.label < l;
                               });
    if (it == edges_.end() || it->label != label) {
        throw Error("presentation: no edge '" + label + "'");
    }
    return *it;
}

std::optional<StatePair> FlowPresentation::word_endpoints(const EdgeWord& word) const {
    if (word.empty()) return std::nullopt;
    for (const auto& label : word) {
        if (!has_edge(label)) return std::nullopt;
    }
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (edge(word[i]).target != edge(word[i + 1]).source) return std::nullopt;
    }
    return StatePair{edge(word.front()).source, edge(word.back()).target};
}

std::optional<DirectedCycle> FlowPresentation::find_directed_cycle() const {
    // Iterative DFS with the usual three-color scheme; edges visited in
    // label order for a deterministic witness.
    std::map<std::string, std::vector<const PresentationEdge*>> outgoing;
    for (const auto& edge : edges_) outgoing[edge.source].push_back(&edge);

    enum class Color { White, Gray, Black };
    std::map<std::string, Color> color;
    for (const auto& v : vertices_) color[v] = Color::White;

    struct Frame {
        std::string vertex;
        const PresentationEdge* entered_by;  // null for the DFS root
        std::size_t next = 0;
    };

    for (const auto& root : vertices_) {
        if (color[root] != Color::White) continue;
        std::vector<Frame> frames{{root, nullptr, 0}};
        color[root] = Color::Gray;
        while (!frames.empty()) {
            const std::size_t fi = frames.size() - 1;
            const auto& out = outgoing[frames[fi].vertex];
            if (frames[fi].next >= out.size()) {
                color[frames[fi].vertex] = Color::Black;
                frames.pop_back();
                continue;
            }
            const PresentationEdge* edge = out[frames[fi].next++];
            const std::string& head = edge->target;
            if (color[head] == Color::Gray) {
                std::size_t start = 0;
                while (frames[start].vertex != head) ++start;
                DirectedCycle cycle;
                for (std::size_t i = start; i < frames.size(); ++i) {
                    cycle.states.push_back(frames[i].vertex);
                    if (i > start) cycle.edges.push_back(frames[i].entered_by->label);
                }
                cycle.edges.push_back(edge->label);
                return cycle;
            }
            if (color[head] == Color::White) {
                color[head] = Color::Gray;
                frames.push_back({head, edge, 0});
            }
        }
    }
    return std::nullopt;
}

// --- materialize -------------------------------------------------------

std::optional<std::string> MaterializedFlow::class_of(const EdgeWord& word) const {
    auto it = class_by_word.find(word);
    if (it == class_by_word.end()) return std::nullopt;
    return it->second;
}

MaterializedFlow materialize(const FlowPresentation& p, std::optional<std::size_t> max_len) {
    auto cycle = p.find_directed_cycle();
    if (cycle && !max_len) {
        throw InfinitePathSet(cycle->states, cycle->edges);
    }
    std::size_t bound = p.vertices().empty() ? 0 : p.vertices().size() - 1;
    if (cycle) bound = *max_len;
    else if (max_len && *max_len < bound) bound = *max_len;

    // All composable words of length 1..bound, breadth-first by length so
    // that indices are ordered by (length, lexicographic content).
    std::vector<EdgeWord> words;
    std::map<EdgeWord, std::size_t> index;
    std::map<std::string, std::vector<const PresentationEdge*>> outgoing;
    for (const auto& edge : p.edges()) outgoing[edge.source].push_back(&edge);

    std::deque<std::size_t> frontier;
    if (bound >= 1) {
        for (const auto& edge : p.edges()) {
            EdgeWord word{edge.label};
            index[word] = words.size();
            frontier.push_back(words.size());
            words.push_back(std::move(word));
        }
    }
    while (!frontier.empty()) {
        std::size_t i = frontier.front();
        frontier.pop_front();
        if (words[i].size() >= bound) continue;
        const std::string tail = p.edge(words[i].back()).target;
        for (const PresentationEdge* edge : outgoing[tail]) {
            EdgeWord extended = words[i];
            extended.push_back(edge->label);
            if (index.count(extended)) continue;
            index[extended] = words.size();
            frontier.push_back(words.size());
            words.push_back(std::move(extended));
        }
    }

    // Congruence closure: one union per single-relation substitution. All
    // one-step neighbours within the length bound are in `words`, so the
    // union-find closure is the full congruence on the enumerated segment.
    detail::DisjointSets classes(words.size());
    auto substitute = [&](std::size_t i, const EdgeWord& from, const EdgeWord& to) {
        const EdgeWord& word = words[i];
        if (word.size() < from.size()) return;
        for (std::size_t at = 0; at + from.size() <= word.size(); ++at) {
            if (!std::equal(from.begin(), from.end(), word.begin() + at)) continue;
            EdgeWord replaced;
            replaced.reserve(word.size() - from.size() + to.size());
            replaced.insert(replaced.end(), word.begin(), word.begin() + at);
            replaced.insert(replaced.end(), to.begin(), to.end());
            replaced.insert(replaced.end(), word.begin() + at + from.size(), word.end());
            auto it = index.find(replaced);
            if (it != index.end()) classes.unite(i, it->second);
        }
    };
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (const auto& relation : p.relations()) {
            substitute(i, relation.lhs, relation.rhs);
            substitute(i, relation.rhs, relation.lhs);
        }
    }

    // Representative per class: first enumerated word, i.e. minimal by
    // (length, lexicographic content).
    std::map<std::size_t, std::size_t> representative;
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::size_t root = classes.find(i);
        if (!representative.count(root)) representative[root] = i;
    }

    std::set<std::string> used_labels;
    std::map<std::size_t, std::string> label_of_root;
    for (const auto& [root, rep] : representative) {
        std::string label = fresh_label(join_word(words[rep]), used_labels);
        used_labels.insert(label);
        label_of_root[root] = label;
    }

    Flow::Builder builder;
    builder.states(p.vertices());
    for (const auto& [root, rep] : representative) {
        auto ends = p.word_endpoints(words[rep]);
        builder.add_path(ends->first, ends->second, label_of_root[root]);
    }

    bool truncated = bound == 0 && !p.edges().empty();
    for (const auto& [root_x, rep_x] : representative) {
        for (const auto& [root_y, rep_y] : representative) {
            const EdgeWord& x = words[rep_x];
            const EdgeWord& y = words[rep_y];
            if (p.edge(x.back()).target != p.edge(y.front()).source) continue;
            EdgeWord joined = x;
            joined.insert(joined.end(), y.begin(), y.end());
            auto it = index.find(joined);
            if (it == index.end()) {
                truncated = true;
                continue;
            }
            builder.set_composite(label_of_root[root_x], label_of_root[root_y],
                                  label_of_root[classes.find(it->second)]);
        }
    }
    builder.truncated(truncated);

    MaterializedFlow result{builder.build(), truncated, {}, {}};
    for (std::size_t i = 0; i < words.size(); ++i) {
        result.class_by_word[words[i]] = label_of_root[classes.find(i)];
    }
    for (const auto& [root, rep] : representative) {
        result.word_by_class[label_of_root[root]] = words[rep];
    }
    return result;
}

FlowPresentation to_presentation(const Flow& flow) {
    if (flow.truncated()) {
        throw Error("to_presentation: truncated flows have no faithful presentation");
    }
    std::vector<PresentationEdge> edges;
    for (const auto& label : flow.all_paths()) {
        edges.push_back({label, flow.path_source(label), flow.path_target(label)});
    }
    std::vector<PresentationRelation> relations;
    for (const auto& [pair, xy] : flow.compose_table()) {
        relations.push_back({EdgeWord{pair.first, pair.second}, EdgeWord{xy}});
    }
    return FlowPresentation(flow.states(), std::move(edges), std::move(relations));
}

// --- constructions ------------------------------------------------------

Flow glob(const FinSet& paths) {
    Flow::Builder builder;
    builder.add_state("0").add_state("1");
    for (const auto& label : paths) builder.add_path("0", "1", label);
    return builder.build();
}

Flow directed_segment() { return glob(FinSet({"[0,1]"})); }

Flow concat_globes(const FinSet& first, const FinSet& second) {
    Flow::Builder builder;
    builder.add_state("0").add_state("1").add_state("2");
    std::set<std::string> used;
    for (const auto& z : first) {
        builder.add_path("0", "1", z);
        used.insert(z);
    }
    std::map<std::string, std::string> renamed;
    for (const auto& t : second) {
        std::string label = fresh_label(t, used);
        used.insert(label);
        renamed[t] = label;
        builder.add_path("1", "2", label);
    }
    for (const auto& z : first) {
        for (const auto& t : second) {
            std::string composite = fresh_label(z + "*" + renamed[t], used);
            used.insert(composite);
            builder.add_path("0", "2", composite);
            builder.set_composite(z, renamed[t], composite);
        }
    }
    return builder.build();
}

Flow subdivided_segment() { return concat_globes(FinSet({"u"}), FinSet({"v"})); }

FlowMorphism phi() {
    return FlowMorphism::build(
        directed_segment(), subdivided_segment(),
        SetMap(FinSet({"0", "1"}), FinSet({"0", "1", "2"}), {{"0", "0"}, {"1", "2"}}),
        {{"[0,1]", "u*v"}});
}

Flow set_as_flow(const FinSet& states) {
    Flow::Builder builder;
    builder.states(states);
    return builder.build();
}

FlowMorphism map_as_flow_morphism(const SetMap& f) {
    return FlowMorphism::build(set_as_flow(f.domain()), set_as_flow(f.codomain()), f, {});
}

FlowMorphism glob_morphism(const SetMap& f) {
    std::map<std::string, std::string> path_map;
    for (const auto& label : f.domain()) path_map[label] = f.apply(label);
    const FinSet two({"0", "1"});
    return FlowMorphism::build(glob(f.domain()), glob(f.codomain()), SetMap::identity(two),
                               std::move(path_map));
}

std::vector<FlowMorphism> enumerate_morphisms(const Flow& domain, const Flow& codomain,
                                              const SearchBudget& budget) {
    if (domain.truncated() || codomain.truncated()) {
        throw Error("enumerate_morphisms: truncated flows are outside the decision procedure");
    }

    const std::uint64_t state_candidates =
        sat_pow(codomain.states().size(), domain.states().size());
    if (state_candidates > budget.max_candidates) {
        throw BudgetExceeded(state_candidates, budget.max_candidates);
    }

    const auto state_maps = hom_set(domain.states(), codomain.states());

    // Pairs with paths, in canonical order.
    std::vector<StatePair> pairs;
    for (const auto& [ends, labels] : domain.path_table()) pairs.push_back(ends);

    // Candidate count across all state maps, checked before enumerating.
    std::uint64_t total = 0;
    for (const SetMap& f0 : state_maps) {
        std::uint64_t per_f0 = 1;
        for (const auto& [a, b] : pairs) {
            const FinSet& source = domain.paths(a, b);
            const FinSet& target = codomain.paths(f0.apply(a), f0.apply(b));
            per_f0 = sat_mul(per_f0, sat_pow(target.size(), source.size()));
            if (per_f0 == 0) break;
        }
        total = sat_add(total, per_f0);
    }
    if (total > budget.max_candidates) {
        throw BudgetExceeded(total, budget.max_candidates);
    }

    std::vector<FlowMorphism> result;
    auto domain_shared = std::make_shared<const Flow>(domain);
    auto codomain_shared = std::make_shared<const Flow>(codomain);

    for (const SetMap& f0 : state_maps) {
        std::vector<std::vector<SetMap>> per_pair;
        bool feasible = true;
        for (const auto& [a, b] : pairs) {
            const FinSet& source = domain.paths(a, b);
            const FinSet& target = codomain.paths(f0.apply(a), f0.apply(b));
            auto candidates = hom_set(source, target);
            if (candidates.empty()) {
                feasible = false;
                break;
            }
            per_pair.push_back(std::move(candidates));
        }
        if (!feasible) continue;

        std::vector<std::size_t> choice(per_pair.size(), 0);
        while (true) {
            std::map<std::string, std::string> path_map;
            for (std::size_t k = 0; k < per_pair.size(); ++k) {
                const SetMap& component = per_pair[k][choice[k]];
                for (const auto& label : component.domain()) {
                    path_map[label] = component.apply(label);
                }
            }
            if (FlowMorphism::homomorphism_ok(domain, codomain, path_map)) {
                result.push_back(
                    FlowMorphism(domain_shared, codomain_shared, f0, std::move(path_map)));
            }

            std::size_t pos = choice.size();
            bool advanced = false;
            while (pos > 0) {
                --pos;
                if (++choice[pos] < per_pair[pos].size()) {
                    advanced = true;
                    break;
                }
                choice[pos] = 0;
            }
            if (!advanced) break;
        }
    }
    return result;
}

bool are_isomorphic(const Flow& a, const Flow& b, const SearchBudget& budget) {
    if (a.states().size() != b.states().size()) return false;
    if (a.total_path_count() != b.total_path_count()) return false;
    for (const FlowMorphism& m : enumerate_morphisms(a, b, budget)) {
        if (m.is_isomorphism()) return true;
    }
    return false;
}

}  // namespace flowcalc
