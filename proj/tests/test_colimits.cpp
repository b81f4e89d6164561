#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "flowcalc/colimits.hpp"
#include "flowcalc/detail/disjoint_sets.hpp"
#include "flowcalc/errors.hpp"
#include "flowcalc/lifting.hpp"

using namespace flowcalc;

namespace {

FlowMorphism state_inclusion(const FinSet& states, const Flow& target,
                             std::map<std::string, std::string> table) {
    return FlowMorphism::build(set_as_flow(states), target,
                               SetMap(states, target.states(), table), {});
}

// Set-level pushout of the state sets, computed independently with a plain
// union-find. Oracle for "the skeleton functor commutes with pushouts".
std::size_t state_pushout_size(const FlowMorphism& f, const FlowMorphism& g) {
    const FinSet& z = f.domain().states();
    const FinSet& x = f.codomain().states();
    const FinSet& y = g.codomain().states();
    detail::DisjointSets classes(x.size() + y.size());
    for (const auto& v : z) {
        classes.unite(x.index_of(f.state_map().apply(v)),
                      x.size() + y.index_of(g.state_map().apply(v)));
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < classes.size(); ++i) roots.insert(classes.find(i));
    return roots.size();
}

}  // namespace

TEST_CASE("pushout of R along the endpoints of I") {
    FlowMorphism r = map_as_flow_morphism(maps::R());
    FlowMorphism iota = state_inclusion(FinSet({"0", "1"}), directed_segment(),
                                        {{"0", "0"}, {"1", "1"}});
    PushoutResult po = pushout(r, iota);

    CHECK(po.apex.vertices().size() == 1);
    REQUIRE(po.apex.edges().size() == 1);
    CHECK(po.apex.edges()[0].source == po.apex.edges()[0].target);

    SECTION("materializing without a bound reports the infinite path set") {
        CHECK_THROWS_AS(materialize(po.apex), InfinitePathSet);
        try {
            materialize(po.apex);
        } catch (const InfinitePathSet& error) {
            CHECK(error.cycle_edges.size() == 1);
        }
    }

    SECTION("a bounded materialization is flagged truncated") {
        MaterializedFlow m = materialize(po.apex, 2);
        CHECK(m.truncated);
        CHECK(m.flow.total_path_count() == 2);
    }
}

TEST_CASE("pushout along the empty flow adds an isolated state") {
    FlowMorphism c = map_as_flow_morphism(maps::C());
    Flow x = subdivided_segment();
    FlowMorphism into_x =
        FlowMorphism::build(set_as_flow(FinSet()), x, SetMap(FinSet(), x.states(), {}), {});
    PushoutResult po = pushout(c, into_x);
    CHECK(po.apex.vertices().size() == x.states().size() + 1);
    CHECK(po.apex.edges().size() == x.total_path_count());
    MaterializedFlow m = materialize(po.apex);
    CHECK(m.flow.total_path_count() == x.total_path_count());
}

TEST_CASE("the globe-concatenation square is a pushout") {
    const FinSet z({"a", "b"});
    const FinSet t({"c"});
    Flow glob_z = glob(z);
    Flow glob_t = glob(t);
    const FinSet point({"p"});
    FlowMorphism pick_final = state_inclusion(point, glob_z, {{"p", "1"}});
    FlowMorphism pick_initial = state_inclusion(point, glob_t, {{"p", "0"}});

    PushoutResult po = pushout(pick_final, pick_initial);
    MaterializedFlow m = materialize(po.apex);
    CHECK(are_isomorphic(m.flow, concat_globes(z, t)));
    CHECK(m.flow.states().size() == 3);
}

TEST_CASE("coproducts") {
    SECTION("unit law") {
        PushoutResult po = coproduct(set_as_flow(FinSet()), subdivided_segment());
        MaterializedFlow m = materialize(po.apex);
        CHECK(are_isomorphic(m.flow, subdivided_segment()));
    }

    SECTION("I + I") {
        PushoutResult po = coproduct(directed_segment(), directed_segment());
        MaterializedFlow m = materialize(po.apex);
        CHECK(m.flow.states().size() == 4);
        CHECK(m.flow.total_path_count() == 2);
    }

    SECTION("legs are jointly surjective") {
        PushoutResult po = coproduct(directed_segment(), glob(FinSet({"a", "b"})));
        std::set<std::string> hit_vertices;
        for (const auto& [v, image] : po.leg_from_first.vertex_map) hit_vertices.insert(image);
        for (const auto& [v, image] : po.leg_from_second.vertex_map) hit_vertices.insert(image);
        CHECK(hit_vertices.size() == po.apex.vertices().size());
        std::set<std::string> hit_edges;
        for (const auto& [e, word] : po.leg_from_first.edge_map) hit_edges.insert(word[0]);
        for (const auto& [e, word] : po.leg_from_second.edge_map) hit_edges.insert(word[0]);
        CHECK(hit_edges.size() == po.apex.edges().size());
    }
}

TEST_CASE("codiagonal construction") {
    SECTION("on an identity the fold is an isomorphism") {
        Codiagonal cd = codiagonal_construction(FlowMorphism::identity(subdivided_segment()));
        CHECK(are_isomorphic(cd.apex.flow, subdivided_segment()));
        CHECK(cd.fold.is_isomorphism());
        CHECK(compose(cd.fold, cd.inclusion_first) ==
              FlowMorphism::identity(subdivided_segment()));
    }

    SECTION("on C+ the fold is epi and not injective on states") {
        Codiagonal cd = codiagonal_construction(map_as_flow_morphism(maps::C_plus()));
        CHECK(cd.apex.flow.states().size() == 3);
        CHECK(cd.fold.state_map().is_surjective());
        CHECK_FALSE(cd.fold.state_map().is_injective());
        FlowMorphism id_y = FlowMorphism::identity(set_as_flow(FinSet({"0", "1"})));
        CHECK(compose(cd.fold, cd.inclusion_first) == id_y);
        CHECK(compose(cd.fold, cd.inclusion_second) == id_y);
    }

    SECTION("on a state-bijective morphism the fold is bijective on states") {
        FlowMorphism g = glob_morphism(SetMap(FinSet({"z"}), FinSet({"z", "w"}), {{"z", "z"}}));
        REQUIRE(g.state_map().is_bijective());
        Codiagonal cd = codiagonal_construction(g);
        CHECK(cd.fold.state_map().is_bijective());
    }
}

TEST_CASE("mediating morphisms") {
    const FinSet z({"a"});
    const FinSet t({"c"});
    const FinSet point({"p"});
    FlowMorphism pick_final = state_inclusion(point, glob(z), {{"p", "1"}});
    FlowMorphism pick_initial = state_inclusion(point, glob(t), {{"p", "0"}});
    PushoutResult po = pushout(pick_final, pick_initial);
    MaterializedFlow apex = materialize(po.apex);
    MaterializedFlow first_mat = materialize(po.first);
    MaterializedFlow second_mat = materialize(po.second);
    FlowMorphism leg1 = materialize_morphism(po.first, po.leg_from_first, first_mat, apex);
    FlowMorphism leg2 = materialize_morphism(po.second, po.leg_from_second, second_mat, apex);

    SECTION("the legs themselves mediate to the identity") {
        FlowMorphism m = mediating_morphism(po, leg1, leg2);
        CHECK(m == FlowMorphism::identity(apex.flow));
    }

    SECTION("a cocone into a larger flow mediates to the evident morphism") {
        // W = I*I with both globes landing on the two halves.
        Flow w = subdivided_segment();
        FlowMorphism c1 = FlowMorphism::build(
            first_mat.flow, w,
            SetMap(first_mat.flow.states(), w.states(), {{"0", "0"}, {"1", "1"}}),
            {{"a", "u"}});
        FlowMorphism c2 = FlowMorphism::build(
            second_mat.flow, w,
            SetMap(second_mat.flow.states(), w.states(), {{"0", "1"}, {"1", "2"}}),
            {{"c", "v"}});
        FlowMorphism m = mediating_morphism(po, c1, c2);
        CHECK(compose(m, leg1) == c1);
        CHECK(compose(m, leg2) == c2);
        CHECK(m.is_isomorphism());
    }

    SECTION("non-commuting cocones are rejected") {
        // Both legs send everything into the first half: the point is glued
        // to state 1 by c1 but to state 0 by c2.
        Flow w = subdivided_segment();
        FlowMorphism c1 = FlowMorphism::build(
            first_mat.flow, w,
            SetMap(first_mat.flow.states(), w.states(), {{"0", "0"}, {"1", "1"}}),
            {{"a", "u"}});
        FlowMorphism c2_bad = FlowMorphism::build(
            second_mat.flow, w,
            SetMap(second_mat.flow.states(), w.states(), {{"0", "0"}, {"1", "1"}}),
            {{"c", "u"}});
        CHECK_THROWS_AS(mediating_morphism(po, c1, c2_bad), NonCommutingCocone);
    }
}

TEST_CASE("skeletons commute with pushouts") {
    FlowMorphism r = map_as_flow_morphism(maps::R());
    FlowMorphism iota = state_inclusion(FinSet({"0", "1"}), directed_segment(),
                                        {{"0", "0"}, {"1", "1"}});
    FlowMorphism cplus = map_as_flow_morphism(maps::C_plus());

    for (const auto& [f, g] : {std::pair{r, iota}, std::pair{cplus, cplus}}) {
        PushoutResult po = pushout(f, g);
        CHECK(po.apex.vertices().size() == state_pushout_size(f, g));
    }
}

TEST_CASE("pushouts preserve state-surjective and state-bijective legs") {
    // Cobase change of the first leg along the second.
    FlowMorphism r = map_as_flow_morphism(maps::R());
    FlowMorphism iota = state_inclusion(FinSet({"0", "1"}), directed_segment(),
                                        {{"0", "0"}, {"1", "1"}});
    PushoutResult po = pushout(r, iota);
    // r is epi on states; its cobase change I -> apex must be too.
    std::set<std::string> image;
    for (const auto& [v, w] : po.leg_from_second.vertex_map) image.insert(w);
    CHECK(image.size() == po.apex.vertices().size());

    FlowMorphism bij = glob_morphism(SetMap(FinSet({"z"}), FinSet({"w"}), {{"z", "w"}}));
    PushoutResult po2 = pushout(bij, bij);
    std::set<std::string> image2;
    for (const auto& [v, w] : po2.leg_from_second.vertex_map) image2.insert(w);
    CHECK(image2.size() == po2.apex.vertices().size());
    CHECK(po2.second.vertices().size() == po2.apex.vertices().size());
}

TEST_CASE("arrows glued from a generating set lift against its rlp class") {
    // cell(K) inside cof(K), at the level of path-empty flows.
    auto universe = enumerate_universe(2);
    const std::vector<SetMap> k{maps::C()};
    auto inj = rlp_members<SetCategory>(k, universe);

    // One pushout of C: the cobase change {x} -> {x} + point.
    FlowMorphism c = map_as_flow_morphism(maps::C());
    FlowMorphism into_x = FlowMorphism::build(
        set_as_flow(FinSet()), set_as_flow(FinSet({"x"})), SetMap(FinSet(), FinSet({"x"}), {}),
        {});
    PushoutResult po = pushout(c, into_x);
    MaterializedFlow apex = materialize(po.apex);
    MaterializedFlow x_mat = materialize(po.second);
    FlowMorphism glued = materialize_morphism(po.second, po.leg_from_second, x_mat, apex);
    SetMap glued_states = glued.state_map();
    for (const SetMap& p : inj) {
        CHECK(has_llp<SetCategory>(glued_states, p));
    }

    // A second pushout from the new apex, then the composite of the two
    // cobase changes: still in the llp closure.
    FlowMorphism into_apex = FlowMorphism::build(
        set_as_flow(FinSet()), apex.flow, SetMap(FinSet(), apex.flow.states(), {}), {});
    PushoutResult po2 = pushout(map_as_flow_morphism(maps::C()), into_apex);
    MaterializedFlow apex2 = materialize(po2.apex);
    FlowMorphism glued2 =
        materialize_morphism(po2.second, po2.leg_from_second, apex, apex2);
    SetMap composite = compose(glued2.state_map(), glued_states);
    for (const SetMap& p : inj) {
        CHECK(has_llp<SetCategory>(composite, p));
    }
}
