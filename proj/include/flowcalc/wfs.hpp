#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowcalc/budget.hpp"
#include "flowcalc/finset.hpp"
#include "flowcalc/flow.hpp"

namespace flowcalc {

/// A class of set maps, given either by a class expression or by an
/// explicit list of arrows.
class ClassPredicate {
public:
    ClassPredicate(MapClass cls);
    static ClassPredicate extensional(std::vector<SetMap> arrows, std::string name);

    bool contains(const SetMap& f) const;
    const std::string& name() const { return name_; }

private:
    ClassPredicate() = default;
    std::optional<MapClass> class_;
    std::vector<SetMap> arrows_;  // sorted, for extensional membership
    std::string name_;
};

/// The six weak factorization systems of the category of sets.
enum class NamedWfs {
    IsoAll,
    MonoEpi,
    SplitMonoEpiOrEmpty,
    EpiMono,
    AllIso,
    IsoOrNonEmptyIsoOrEmpty,
};

struct WfsPair {
    NamedWfs kind;
    std::string id;       // e.g. "mono-epi"
    std::string display;  // e.g. "(Mono, Epi)"
    MapClass left;
    MapClass right;
};

const std::vector<WfsPair>& named_wfs_pairs();
const WfsPair& named_wfs(NamedWfs kind);
const WfsPair& named_wfs_by_id(const std::string& id);  // throws UnknownWfs

struct Factorization {
    SetMap left;
    SetMap right;
};

/// r . l = f with l in the left class and r in the right class of the named
/// pair, by a fixed construction per pair (image factorization, mapping-set
/// gluing, or a trivial split).
Factorization canonical_factorization(const SetMap& f, NamedWfs pair);

struct SoaFactorization {
    SetMap left;
    SetMap right;
    unsigned stages = 0;
    /// False when the stage cap ran out; left/right then hold the partial
    /// factorization reached so far.
    bool completed = true;
};

/// Small object argument for set maps: repeatedly glue the unsolved lifting
/// problems of the generators against the right factor, until it has the
/// RLP against all of them.
SoaFactorization soa_factorize(const SetMap& f, const std::vector<SetMap>& generators,
                               const SearchBudget& budget = {});

struct FlowSoaFactorization {
    FlowMorphism left;
    FlowMorphism right;
    unsigned stages = 0;
    bool completed = true;
};

/// The same gluing for morphisms of materialized flows, with pushouts
/// computed at presentation level. May throw InfinitePathSet when a gluing
/// stage creates a directed cycle.
FlowSoaFactorization soa_factorize(const FlowMorphism& f,
                                   const std::vector<FlowMorphism>& generators,
                                   const SearchBudget& budget = {});

struct WfsWitness {
    std::string kind;  // "left-membership" | "right-membership" | "factorization"
    SetMap arrow;
    std::optional<SetMap> against;
    std::string detail;
};

struct WfsReport {
    std::string left_name;
    std::string right_name;
    std::size_t universe_bound = 0;
    bool left_determined = false;   // left = llp(right) extensionally
    bool right_determined = false;  // right = rlp(left) extensionally
    bool factorization_ok = false;  // every arrow factors through the pair
    std::vector<WfsWitness> witnesses;

    bool passed() const { return left_determined && right_determined && factorization_ok; }
};

/// Checks the three weak-factorization-system axioms extensionally over the
/// universe. Factorizations use the canonical construction when the pair
/// matches a named one (extensionally), and the small object argument with
/// the left class as generators otherwise.
WfsReport verify_wfs(const ClassPredicate& left, const ClassPredicate& right,
                     const std::vector<SetMap>& universe,
                     std::optional<NamedWfs> factor_via = std::nullopt,
                     const SearchBudget& budget = {});

struct ModelStructureSpec {
    std::string name;
    MapClass cofibrations;
    MapClass fibrations;
    MapClass weak_equivalences;
};

struct TwoOfThreeWitness {
    SetMap first;
    SetMap second;
    SetMap composite;
};

struct ModelStructureReport {
    std::string name;
    std::size_t universe_bound = 0;
    bool two_of_three_ok = false;
    std::optional<TwoOfThreeWitness> two_of_three_witness;
    bool retracts_ok = false;
    std::optional<std::pair<SetMap, SetMap>> retract_witness;  // (retract, of)
    WfsReport trivial_cof_fib;  // (Cof n W, Fib)
    WfsReport cof_trivial_fib;  // (Cof, Fib n W)

    bool passed() const {
        return two_of_three_ok && retracts_ok && trivial_cof_fib.passed() &&
               cof_trivial_fib.passed();
    }
};

/// Model-structure axioms over the universe: two-out-of-three (quantified
/// over all composable pairs, including every identification of the middle
/// objects), retract closure of the weak equivalences, and the two weak
/// factorization systems.
ModelStructureReport verify_model_structure(const ModelStructureSpec& spec,
                                            const std::vector<SetMap>& universe,
                                            const SearchBudget& budget = {});

/// The nine model structures on the category of sets.
const std::vector<ModelStructureSpec>& nine_model_structures();

/// f lies in the llp-closure of the generators over the universe: it lifts
/// against every universe arrow with the RLP against all generators. Exact
/// for the six named generating sets at sufficient bound, an approximation
/// otherwise.
bool cof_membership(const SetMap& f, const std::vector<SetMap>& generators,
                    const std::vector<SetMap>& universe, const SearchBudget& budget = {});

/// First two-out-of-three violation of a would-be class of weak
/// equivalences, searching composable pairs in canonical order.
std::optional<TwoOfThreeWitness> find_two_of_three_violation(const MapClass& weq,
                                                             const std::vector<SetMap>& universe);

// --- the nine combinations table ---------------------------------------

enum class TableCellStatus {
    Possible,
    InclusionFailure,
    TwoOfThreeFailure,
    ForcedWeakEquivalences,
};

struct TableCellReport {
    NamedWfs row;  // candidate (Cof n W, Fib)
    NamedWfs col;  // candidate (Cof, Fib n W)
    TableCellStatus status = TableCellStatus::Possible;
    std::string note;
    std::vector<SetMap> witnesses;
};

/// The 3 x 3 grid of candidate pairs of weak factorization systems for a
/// model structure restricted to sets, with a machine-found witness for
/// each impossible cell: an inclusion failure, a two-out-of-three failure
/// of the forced weak equivalences, or (bottom-right cell) a composable
/// pair forcing the weak equivalences to be everything.
std::vector<TableCellReport> last_nine_possibilities(const std::vector<SetMap>& universe,
                                                     const SearchBudget& budget = {});

}  // namespace flowcalc
