#include "flowcalc/dihomotopy.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "flowcalc/errors.hpp"
#include "flowcalc/lifting.hpp"

namespace flowcalc {

namespace {

struct GeneratorGraph {
    // state -> outgoing (target, label), in label order
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> outgoing;
    std::set<std::string> sources;  // of any path, generator or not
    std::set<std::string> targets;
};

DihomotopyReport analyze_graph(const FinSet& states, const GeneratorGraph& graph) {
    DihomotopyReport report;
    for (const auto& state : states) {
        if (!graph.targets.count(state)) report.initial_states.push_back(state);
        if (!graph.sources.count(state)) report.final_states.push_back(state);
    }

    // Reachability from the initial states along generator paths.
    std::set<std::string> reachable(report.initial_states.begin(),
                                    report.initial_states.end());
    std::deque<std::string> frontier(report.initial_states.begin(),
                                     report.initial_states.end());
    while (!frontier.empty()) {
        std::string state = frontier.front();
        frontier.pop_front();
        auto it = graph.outgoing.find(state);
        if (it == graph.outgoing.end()) continue;
        for (const auto& [next, label] : it->second) {
            if (reachable.insert(next).second) frontier.push_back(next);
        }
    }
    for (const auto& state : states) {
        if (!reachable.count(state)) {
            report.unreachable_states.push_back(state);
            if (!graph.sources.count(state)) report.deadlock_states.push_back(state);
        }
    }

    // Branchings and mergings on generator paths.
    std::map<std::string, std::vector<std::string>> by_source;
    std::map<std::string, std::vector<std::string>> by_target;
    for (const auto& [state, edges] : graph.outgoing) {
        for (const auto& [next, label] : edges) {
            by_source[state].push_back(label);
            by_target[next].push_back(label);
        }
    }
    for (const auto& [state, labels] : by_source) {
        if (labels.size() >= 2) report.branchings.push_back({state, labels[0], labels[1]});
    }
    for (const auto& [state, labels] : by_target) {
        if (labels.size() >= 2) report.mergings.push_back({state, labels[0], labels[1]});
    }
    return report;
}

}  // namespace

DihomotopyReport analyze(const Flow& flow) {
    // Generators are the paths that are not composites.
    std::set<std::string> composites;
    for (const auto& [pair, xy] : flow.compose_table()) composites.insert(xy);

    GeneratorGraph graph;
    for (const auto& label : flow.all_paths()) {
        graph.sources.insert(flow.path_source(label));
        graph.targets.insert(flow.path_target(label));
        if (!composites.count(label)) {
            graph.outgoing[flow.path_source(label)].push_back(
                {flow.path_target(label), label});
        }
    }

    DihomotopyReport report = analyze_graph(flow.states(), graph);
    report.truncated = flow.truncated();
    for (const auto& label : flow.all_paths()) {
        if (flow.path_source(label) == flow.path_target(label)) {
            report.loops.push_back({{flow.path_source(label)}, {label}});
        }
    }
    return report;
}

DihomotopyReport analyze(const MaterializedFlow& flow) { return analyze(flow.flow); }

DihomotopyReport analyze(const FlowPresentation& presentation) {
    GeneratorGraph graph;
    for (const auto& edge : presentation.edges()) {
        graph.sources.insert(edge.source);
        graph.targets.insert(edge.target);
        graph.outgoing[edge.source].push_back({edge.target, edge.label});
    }
    DihomotopyReport report = analyze_graph(presentation.vertices(), graph);
    if (auto cycle = presentation.find_directed_cycle()) {
        report.loops.push_back({cycle->states, cycle->edges});
    }
    return report;
}

bool is_discrete_weq(const FlowMorphism& f) { return f.is_isomorphism(); }

// --- counterexample suite -------------------------------------------------

namespace {

FlowMorphism two_state_inclusion(const Flow& target, const std::string& alpha,
                                 const std::string& beta) {
    const FinSet two({"0", "1"});
    return FlowMorphism::build(set_as_flow(two), target,
                               SetMap(two, target.states(), {{"0", alpha}, {"1", beta}}), {});
}

PushoutDamage damage_of_gluing(const std::string& name, const Flow& sample,
                               const std::string& alpha, const std::string& beta) {
    PushoutDamage damage;
    damage.name = name;
    DihomotopyReport before = analyze(sample);
    damage.states_before = sample.states().size();
    damage.initial_before = before.initial_states.size();
    damage.final_before = before.final_states.size();

    PushoutResult po =
        pushout(map_as_flow_morphism(maps::R()), two_state_inclusion(sample, alpha, beta));
    damage.states_after = po.apex.vertices().size();

    DihomotopyReport after = analyze(po.apex);
    damage.initial_after = after.initial_states.size();
    damage.final_after = after.final_states.size();
    damage.loop = !after.loops.empty();
    damage.branching = !after.branchings.empty();
    damage.merging = !after.mergings.empty();
    try {
        materialize(po.apex);
    } catch (const InfinitePathSet&) {
        damage.infinite_paths = true;
    }
    return damage;
}

}  // namespace

std::vector<Flow> enumerate_small_flows(std::size_t max_states) {
    std::vector<Flow> flows;
    for (std::size_t n = 0; n <= max_states; ++n) {
        FinSet states = FinSet::numbered(n, "s");
        flows.push_back(set_as_flow(states));
        for (const auto& source : states) {
            for (const auto& target : states) {
                Flow::Builder builder;
                builder.states(states);
                builder.add_path(source, target, "p");
                if (source == target) builder.set_composite("p", "p", "p");
                flows.push_back(builder.build());
            }
        }
    }
    return flows;
}

bool CounterexampleSuite::passed() const {
    bool pushouts_ok = pushouts_of_r.size() == 3;
    for (const PushoutDamage& damage : pushouts_of_r) {
        pushouts_ok = pushouts_ok && damage.states_after == damage.states_before - 1;
    }
    if (pushouts_ok) {
        pushouts_ok = pushouts_of_r[0].loop && pushouts_of_r[0].infinite_paths &&
                      pushouts_of_r[1].merging && pushouts_of_r[2].branching;
    }
    return segment_states == 2 && subdivided_states == 3 && !phi_is_discrete_weq &&
           pushouts_ok && codiagonal_apex_states == 3 && codiagonal_fold_epi &&
           !codiagonal_fold_injective && sweep_morphisms > 0 && sweep_all_bijective;
}

CounterexampleSuite counterexample_suite(const SearchBudget& budget) {
    CounterexampleSuite suite;

    // (a) the subdivision morphism
    FlowMorphism subdivision = phi();
    suite.segment_states = subdivision.domain().states().size();
    suite.subdivided_states = subdivision.codomain().states().size();
    suite.phi_is_discrete_weq = is_discrete_weq(subdivision);

    // (b) pushouts of R: identifying two distinct states of a sample flow.
    // Gluing the two ends of I creates a loop; gluing the two final (resp.
    // initial) states of I + I creates a merging (resp. branching).
    suite.pushouts_of_r.push_back(
        damage_of_gluing("endpoints of I", directed_segment(), "0", "1"));

    PushoutResult two_segments = coproduct(directed_segment(), directed_segment());
    Flow pair_flow = materialize(two_segments.apex).flow;
    // states {0, 1} and renamed copies {0', 1'}
    suite.pushouts_of_r.push_back(
        damage_of_gluing("final states of I + I", pair_flow, "1", "1'"));
    suite.pushouts_of_r.push_back(
        damage_of_gluing("initial states of I + I", pair_flow, "0", "0'"));

    // (c) codiagonal on C+
    Codiagonal cd = codiagonal_construction(map_as_flow_morphism(maps::C_plus()), budget);
    suite.codiagonal_apex_states = cd.apex.flow.states().size();
    suite.codiagonal_fold_epi = cd.fold.state_map().is_surjective();
    suite.codiagonal_fold_injective = cd.fold.state_map().is_injective();

    // (d) morphisms with the RLP against {R, C} are state-bijective
    FlowMorphism r = map_as_flow_morphism(maps::R());
    FlowMorphism c = map_as_flow_morphism(maps::C());
    suite.sweep_all_bijective = true;
    HomCache<FlowCategory> cache(budget);
    std::vector<Flow> small = enumerate_small_flows(2);
    for (const Flow& x : small) {
        for (const Flow& y : small) {
            for (const FlowMorphism& m : enumerate_morphisms(x, y, budget)) {
                ++suite.sweep_morphisms;
                if (!has_llp<FlowCategory>(r, m, cache)) continue;
                if (!has_llp<FlowCategory>(c, m, cache)) continue;
                ++suite.sweep_with_rlp;
                if (!m.state_map().is_bijective()) suite.sweep_all_bijective = false;
            }
        }
    }
    return suite;
}

}  // namespace flowcalc
