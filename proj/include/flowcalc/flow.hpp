#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "flowcalc/budget.hpp"
#include "flowcalc/finset.hpp"

namespace flowcalc {

using StatePair = std::pair<std::string, std::string>;

/// A finite flow with discrete path objects: a state set, a finite set of
/// execution paths P_{a,b} for each ordered state pair, and an associative
/// composition defined on consecutive paths. Path labels are globally
/// unique across all pairs.
///
/// A flow may be marked `truncated`: it is then a bounded approximation in
/// which composites beyond a length cutoff are absent, and totality of the
/// composition is not required.
class Flow {
public:
    class Builder {
    public:
        Builder& states(FinSet states);
        Builder& add_state(const std::string& label);
        Builder& add_path(const std::string& source, const std::string& target,
                          const std::string& label);
        Builder& set_composite(const std::string& x, const std::string& y, const std::string& xy);
        Builder& truncated(bool flag);

        /// Validates endpoints, global label uniqueness, well-typedness and
        /// totality of composition (unless truncated), and associativity.
        Flow build();

    private:
        std::vector<std::string> states_;
        std::vector<std::tuple<std::string, std::string, std::string>> paths_;
        std::map<std::pair<std::string, std::string>, std::string> compose_;
        bool truncated_ = false;
    };

    const FinSet& states() const { return states_; }
    const std::map<StatePair, FinSet>& path_table() const { return paths_; }
    const FinSet& paths(const std::string& source, const std::string& target) const;

    bool has_path(const std::string& label) const { return endpoints_.count(label) > 0; }
    const std::string& path_source(const std::string& label) const;
    const std::string& path_target(const std::string& label) const;

    /// All path labels, ordered by (source, target, label).
    std::vector<std::string> all_paths() const;
    std::size_t total_path_count() const;

    /// x * y, or nullopt when the pair is not consecutive or the composite
    /// was cut off by truncation.
    std::optional<std::string> composite(const std::string& x, const std::string& y) const;
    const std::map<std::pair<std::string, std::string>, std::string>& compose_table() const {
        return compose_;
    }

    bool truncated() const { return truncated_; }
    bool compose_total() const;
    bool associativity_holds() const;

    /// Canonical structural serialization; equal strings iff equal flows.
    std::string fingerprint() const;

    friend bool operator==(const Flow&, const Flow&) = default;

private:
    friend class Builder;
    Flow() = default;

    FinSet states_;
    std::map<StatePair, FinSet> paths_;  // nonempty path sets only
    std::map<std::string, StatePair> endpoints_;
    std::map<std::pair<std::string, std::string>, std::string> compose_;
    bool truncated_ = false;
};

/// A morphism of flows: a state map together with one path map per state
/// pair, preserving composition. Stored as a single global assignment of
/// path labels (labels are globally unique).
class FlowMorphism {
public:
    static FlowMorphism build(Flow domain, Flow codomain, SetMap state_map,
                              std::map<std::string, std::string> path_map);
    static FlowMorphism identity(const Flow& flow);

    const Flow& domain() const { return *domain_; }
    const Flow& codomain() const { return *codomain_; }
    const SetMap& state_map() const { return state_map_; }
    const std::map<std::string, std::string>& path_map() const { return path_map_; }
    const std::string& apply_path(const std::string& label) const;

    /// The component P_{a,b}X -> P_{f(a),f(b)}Y as a map of finite sets.
    SetMap path_component(const std::string& source, const std::string& target) const;

    /// Bijective on states and on every per-pair path set (equivalently,
    /// invertible: for finite discrete flows the two notions coincide).
    bool is_isomorphism() const;

    friend FlowMorphism compose(const FlowMorphism& g, const FlowMorphism& f);
    friend bool operator==(const FlowMorphism& a, const FlowMorphism& b);

private:
    FlowMorphism(std::shared_ptr<const Flow> domain, std::shared_ptr<const Flow> codomain,
                 SetMap state_map, std::map<std::string, std::string> path_map);

    static bool homomorphism_ok(const Flow& domain, const Flow& codomain,
                                const std::map<std::string, std::string>& path_map);

    friend std::vector<FlowMorphism> enumerate_morphisms(const Flow&, const Flow&,
                                                         const SearchBudget&);

    std::shared_ptr<const Flow> domain_;
    std::shared_ptr<const Flow> codomain_;
    SetMap state_map_;
    std::map<std::string, std::string> path_map_;
};

std::string to_string(const FlowMorphism& f);

// --- finitely presented flows ------------------------------------------

struct PresentationEdge {
    std::string label;
    std::string source;
    std::string target;

    friend bool operator==(const PresentationEdge&, const PresentationEdge&) = default;
    friend auto operator<=>(const PresentationEdge&, const PresentationEdge&) = default;
};

/// Nonempty sequence of consecutive edge labels.
using EdgeWord = std::vector<std::string>;

struct PresentationRelation {
    EdgeWord lhs;
    EdgeWord rhs;

    friend bool operator==(const PresentationRelation&, const PresentationRelation&) = default;
    friend auto operator<=>(const PresentationRelation&, const PresentationRelation&) = default;
};

struct DirectedCycle {
    std::vector<std::string> states;
    std::vector<std::string> edges;
};

/// Generator graph plus relations between parallel composable edge words.
/// The flow it presents is the free flow on the graph, quotiented by the
/// congruence the relations generate.
class FlowPresentation {
public:
    FlowPresentation() = default;
    FlowPresentation(FinSet vertices, std::vector<PresentationEdge> edges,
                     std::vector<PresentationRelation> relations);

    const FinSet& vertices() const { return vertices_; }
    const std::vector<PresentationEdge>& edges() const { return edges_; }
    const std::vector<PresentationRelation>& relations() const { return relations_; }

    bool has_edge(const std::string& label) const;
    const PresentationEdge& edge(const std::string& label) const;

    /// (source of first edge, target of last edge), or nullopt when the
    /// word is empty or not composable.
    std::optional<StatePair> word_endpoints(const EdgeWord& word) const;

    std::optional<DirectedCycle> find_directed_cycle() const;

    friend bool operator==(const FlowPresentation&, const FlowPresentation&) = default;

private:
    FinSet vertices_;
    std::vector<PresentationEdge> edges_;          // sorted by label
    std::vector<PresentationRelation> relations_;  // normalized and sorted
};

/// Result of materializing a presentation. `truncated` is set when some
/// composite exceeded the word-length bound, in which case the flow is a
/// bounded approximation. `class_by_word` maps every enumerated composable
/// word to the label of its congruence class; `word_by_class` holds the
/// representative word of each class.
struct MaterializedFlow {
    Flow flow;
    bool truncated = false;
    std::map<EdgeWord, std::string> class_by_word;
    std::map<std::string, EdgeWord> word_by_class;

    std::optional<std::string> class_of(const EdgeWord& word) const;
};

/// Builds the flow presented by p. Path sets are congruence classes of
/// composable edge words; composition is word concatenation.
///
/// If the generator graph has a directed cycle the path sets are infinite:
/// with max_len the classes with representatives of length <= max_len are
/// returned and the result is flagged truncated, without it InfinitePathSet
/// is thrown carrying a witness cycle.
MaterializedFlow materialize(const FlowPresentation& p,
                             std::optional<std::size_t> max_len = std::nullopt);

/// The canonical presentation of a finite flow: one generator per path and
/// one relation x.y = x*y per consecutive pair. Requires a total
/// composition (not truncated).
FlowPresentation to_presentation(const Flow& flow);

// --- constructions ------------------------------------------------------

/// Glob(Z): states {0,1}, P_{0,1} = Z, trivial composition.
Flow glob(const FinSet& paths);

/// The directed segment I = Glob({[0,1]}).
Flow directed_segment();

/// Glob(Z)*Glob(T): states {0,1,2}, P_{0,1} = Z, P_{1,2} = T and the freely
/// added composites P_{0,2} = Z x T. Labels from T are renamed (with ')
/// when they clash with labels from Z.
Flow concat_globes(const FinSet& first, const FinSet& second);

/// I*I = concat_globes({u}, {v}).
Flow subdivided_segment();

/// The subdivision morphism I -> I*I sending the single path of I to the
/// composite u*v.
FlowMorphism phi();

/// A set viewed as a flow with no paths.
Flow set_as_flow(const FinSet& states);

/// A set map viewed as a morphism of path-empty flows.
FlowMorphism map_as_flow_morphism(const SetMap& f);

/// Glob(f) : Glob(U) -> Glob(V) for a set map f : U -> V.
FlowMorphism glob_morphism(const SetMap& f);

/// All morphisms X -> Y in canonical order (lexicographic over state maps,
/// then over per-pair path assignments). Throws BudgetExceeded when the
/// candidate count exceeds the cap; refuses truncated inputs.
std::vector<FlowMorphism> enumerate_morphisms(const Flow& domain, const Flow& codomain,
                                              const SearchBudget& budget = {});

/// Structural isomorphism, decided by searching for an invertible morphism.
bool are_isomorphic(const Flow& a, const Flow& b, const SearchBudget& budget = {});

/// Label not yet in `used`, formed by appending ' to base.
std::string fresh_label(std::string base, const std::set<std::string>& used);

}  // namespace flowcalc
