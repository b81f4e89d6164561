#pragma once

#include <string>
#include <vector>

#include "flowcalc/budget.hpp"
#include "flowcalc/colimits.hpp"
#include "flowcalc/flow.hpp"

namespace flowcalc {

struct LoopWitness {
    std::vector<std::string> states;
    std::vector<std::string> paths;
};

struct BranchWitness {
    std::string state;
    std::string first;
    std::string second;
};

/// Computer-scientific readings of a flow or presentation. Initial and
/// final states follow the standard definitions (never a target, never a
/// source). Deadlock and unreachable states are artifact definitions in
/// automata style, flagged as such in the serialized report: unreachable =
/// no generator path from any initial state; deadlock = a state with no
/// outgoing path that is also unreachable, i.e. a terminal the analysis
/// cannot classify as an intended final.
struct DihomotopyReport {
    std::vector<std::string> initial_states;
    std::vector<std::string> final_states;
    std::vector<std::string> unreachable_states;
    std::vector<std::string> deadlock_states;
    std::vector<LoopWitness> loops;
    std::vector<BranchWitness> branchings;
    std::vector<BranchWitness> mergings;
    bool truncated = false;
};

/// Analysis of a materialized flow. Branchings and mergings are detected on
/// generator paths (paths that are not composites), matching the
/// one-dimensional pictures; loops are paths with equal source and target.
DihomotopyReport analyze(const Flow& flow);
DihomotopyReport analyze(const MaterializedFlow& flow);

/// Generator-level analysis of a presentation; loops are directed cycles.
DihomotopyReport analyze(const FlowPresentation& presentation);

/// Weak equivalence at the discrete level: bijective on states and on every
/// per-pair path set.
bool is_discrete_weq(const FlowMorphism& f);

/// One pushout-of-R sample of the counterexample suite: gluing two states
/// of a sample flow and reporting the damage.
struct PushoutDamage {
    std::string name;
    std::size_t states_before = 0;
    std::size_t states_after = 0;
    std::size_t initial_before = 0;
    std::size_t initial_after = 0;
    std::size_t final_before = 0;
    std::size_t final_after = 0;
    bool infinite_paths = false;
    bool loop = false;
    bool branching = false;
    bool merging = false;
};

/// The executable counterexample suite: the subdivision morphism's skeleton
/// counts, pushouts of R and the damage they cause, the codiagonal fold on
/// C+, and the exhaustive sweep checking that small flow morphisms with the
/// RLP against {R, C} have bijective state maps.
struct CounterexampleSuite {
    std::size_t segment_states = 0;
    std::size_t subdivided_states = 0;
    bool phi_is_discrete_weq = true;

    std::vector<PushoutDamage> pushouts_of_r;

    std::size_t codiagonal_apex_states = 0;
    bool codiagonal_fold_epi = false;
    bool codiagonal_fold_injective = true;

    std::size_t sweep_morphisms = 0;
    std::size_t sweep_with_rlp = 0;
    bool sweep_all_bijective = false;

    bool passed() const;
};

CounterexampleSuite counterexample_suite(const SearchBudget& budget = {});

/// All flows with at most `max_states` states and at most one path, with
/// every legal composition (a single loop path must be idempotent).
std::vector<Flow> enumerate_small_flows(std::size_t max_states);

}  // namespace flowcalc
