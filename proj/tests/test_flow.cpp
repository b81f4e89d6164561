#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "flowcalc/errors.hpp"
#include "flowcalc/flow.hpp"

using namespace flowcalc;

namespace {

// Number of directed edge paths between two vertices, counted by plain DFS.
// Test-local oracle for the free-flow path counts of materialize.
std::size_t count_edge_paths(const FlowPresentation& p, const std::string& from,
                             const std::string& to) {
    std::size_t count = 0;
    std::vector<std::string> stack{from};
    std::vector<std::vector<std::string>> agenda{{from}};
    while (!agenda.empty()) {
        auto trail = agenda.back();
        agenda.pop_back();
        if (trail.size() > 1 && trail.back() == to) ++count;
        for (const auto& edge : p.edges()) {
            if (edge.source != trail.back()) continue;
            if (trail.size() > p.vertices().size()) continue;
            auto extended = trail;
            extended.push_back(edge.target);
            agenda.push_back(extended);
        }
    }
    return count;
}

}  // namespace

TEST_CASE("glob of a finite set") {
    SECTION("empty path object gives two isolated states") {
        Flow g = glob(FinSet());
        CHECK(g.states().size() == 2);
        CHECK(g.total_path_count() == 0);
    }

    SECTION("singleton gives the directed segment") {
        CHECK(are_isomorphic(glob(FinSet({"u"})), directed_segment()));
    }

    SECTION("two paths, both from 0 to 1") {
        Flow g = glob(FinSet({"a", "b"}));
        CHECK(g.total_path_count() == 2);
        CHECK(g.paths("0", "1").size() == 2);
        CHECK(g.paths("1", "0").empty());
    }
}

TEST_CASE("the directed segment") {
    Flow segment = directed_segment();
    CHECK(segment.states().size() == 2);
    CHECK(segment.total_path_count() == 1);
    // 0 is initial (never a target), 1 is final (never a source)
    CHECK(segment.paths("0", "1").size() == 1);
    CHECK(segment.path_source("[0,1]") == "0");
    CHECK(segment.path_target("[0,1]") == "1");
}

TEST_CASE("concatenation of globes") {
    SECTION("I*I has three states and the composite path") {
        Flow ii = subdivided_segment();
        CHECK(ii.states().size() == 3);
        CHECK(ii.paths("0", "2") == FinSet({"u*v"}));
        CHECK(ii.composite("u", "v") == "u*v");
        CHECK(ii.total_path_count() == 3);
    }

    SECTION("empty first factor leaves no composites") {
        Flow g = concat_globes(FinSet(), FinSet({"t"}));
        CHECK(g.states().size() == 3);
        CHECK(g.paths("0", "2").empty());
        CHECK(g.total_path_count() == 1);
    }

    SECTION("composite count is the product") {
        Flow g = concat_globes(FinSet({"a", "b"}), FinSet({"c"}));
        CHECK(g.paths("0", "2").size() == 2);
    }

    SECTION("clashing labels are renamed") {
        Flow g = concat_globes(FinSet({"u"}), FinSet({"u"}));
        CHECK(g.paths("0", "1") == FinSet({"u"}));
        CHECK(g.paths("1", "2") == FinSet({"u'"}));
        CHECK(g.total_path_count() == 3);
    }
}

TEST_CASE("the subdivision morphism phi") {
    FlowMorphism f = phi();
    CHECK(f.state_map().domain().size() == 2);
    CHECK(f.state_map().codomain().size() == 3);
    CHECK_FALSE(f.state_map().is_surjective());
    CHECK(f.apply_path("[0,1]") == "u*v");
    CHECK_FALSE(f.is_isomorphism());
}

TEST_CASE("flow builder validation") {
    SECTION("composition must be total") {
        Flow::Builder builder;
        builder.add_state("0").add_state("1").add_state("2");
        builder.add_path("0", "1", "x").add_path("1", "2", "y");
        CHECK_THROWS_AS(builder.build(), Error);
    }

    SECTION("composition must be associative") {
        // Two parallel 3-step composites whose bracketings disagree.
        Flow::Builder builder;
        builder.add_state("0").add_state("1").add_state("2").add_state("3");
        builder.add_path("0", "1", "x").add_path("1", "2", "y").add_path("2", "3", "z");
        builder.add_path("0", "2", "xy").add_path("1", "3", "yz");
        builder.add_path("0", "3", "w1").add_path("0", "3", "w2");
        builder.set_composite("x", "y", "xy").set_composite("y", "z", "yz");
        builder.set_composite("xy", "z", "w1").set_composite("x", "yz", "w2");
        CHECK_THROWS_AS(builder.build(), Error);
    }

    SECTION("duplicate path labels are rejected") {
        Flow::Builder builder;
        builder.add_state("0").add_state("1");
        builder.add_path("0", "1", "p").add_path("1", "0", "p");
        CHECK_THROWS_AS(builder.build(), Error);
    }

    SECTION("a loop with an idempotent composite is a legal finite flow") {
        Flow::Builder builder;
        builder.add_state("s");
        builder.add_path("s", "s", "e");
        builder.set_composite("e", "e", "e");
        Flow loop = builder.build();
        CHECK(loop.associativity_holds());
        CHECK(loop.compose_total());
    }
}

TEST_CASE("materialize a presentation") {
    SECTION("the presentation of I*I materializes to concat_globes") {
        FlowPresentation p(FinSet({"0", "1", "2"}),
                           {{"u", "0", "1"}, {"v", "1", "2"}}, {});
        MaterializedFlow m = materialize(p);
        CHECK_FALSE(m.truncated);
        CHECK(are_isomorphic(m.flow, subdivided_segment()));
        CHECK(m.class_of(EdgeWord{"u", "v"}) == "u*v");
    }

    SECTION("a self edge without bound reports the infinite path set") {
        FlowPresentation p(FinSet({"s"}), {{"e", "s", "s"}}, {});
        try {
            materialize(p);
            FAIL("expected InfinitePathSet");
        } catch (const InfinitePathSet& error) {
            CHECK(error.cycle_edges == std::vector<std::string>{"e"});
            CHECK(error.cycle_states == std::vector<std::string>{"s"});
        }
    }

    SECTION("a self edge with a bound yields a truncated flow") {
        FlowPresentation p(FinSet({"s"}), {{"e", "s", "s"}}, {});
        MaterializedFlow m = materialize(p, 3);
        CHECK(m.truncated);
        CHECK(m.flow.total_path_count() == 3);  // e, e*e, e*e*e
        CHECK(m.flow.composite("e", "e") == "e*e");
        CHECK_FALSE(m.flow.composite("e*e", "e*e").has_value());
    }

    SECTION("an idempotent loop relation collapses to a finite flow") {
        FlowPresentation p(FinSet({"s"}), {{"e", "s", "s"}},
                           {{EdgeWord{"e"}, EdgeWord{"e", "e"}}});
        MaterializedFlow m = materialize(p, 4);
        CHECK_FALSE(m.truncated);
        CHECK(m.flow.total_path_count() == 1);
        CHECK(m.flow.composite("e", "e") == "e");
    }

    SECTION("empty presentation gives the empty flow") {
        MaterializedFlow m = materialize(FlowPresentation());
        CHECK(m.flow.states().empty());
        CHECK(m.flow.total_path_count() == 0);
    }

    SECTION("an acyclic presentation cut below its longest path is truncated") {
        FlowPresentation p(FinSet({"0", "1", "2"}),
                           {{"u", "0", "1"}, {"v", "1", "2"}}, {});
        MaterializedFlow m = materialize(p, 1);
        CHECK(m.truncated);
        CHECK(m.flow.total_path_count() == 2);  // u and v survive, u*v is cut
        CHECK_FALSE(m.flow.composite("u", "v").has_value());
    }

    SECTION("a zero bound cuts every path and is flagged") {
        FlowPresentation p(FinSet({"s"}), {{"e", "s", "s"}}, {});
        MaterializedFlow m = materialize(p, 0);
        CHECK(m.truncated);
        CHECK(m.flow.total_path_count() == 0);
    }

    SECTION("free flows count directed edge paths") {
        // Diamond with a chord: 0 -> 1 -> 3, 0 -> 2 -> 3, 0 -> 3.
        FlowPresentation p(FinSet({"0", "1", "2", "3"}),
                           {{"a", "0", "1"},
                            {"b", "1", "3"},
                            {"c", "0", "2"},
                            {"d", "2", "3"},
                            {"m", "0", "3"}},
                           {});
        MaterializedFlow m = materialize(p);
        for (const auto& from : p.vertices()) {
            for (const auto& to : p.vertices()) {
                CHECK(m.flow.paths(from, to).size() == count_edge_paths(p, from, to));
            }
        }
        CHECK(m.flow.paths("0", "3").size() == 3);
    }

    SECTION("relations merge parallel words") {
        FlowPresentation p(FinSet({"0", "1", "2", "3"}),
                           {{"a", "0", "1"},
                            {"b", "1", "3"},
                            {"c", "0", "2"},
                            {"d", "2", "3"}},
                           {{EdgeWord{"a", "b"}, EdgeWord{"c", "d"}}});
        MaterializedFlow m = materialize(p);
        CHECK(m.flow.paths("0", "3").size() == 1);
        CHECK(m.class_of(EdgeWord{"a", "b"}) == m.class_of(EdgeWord{"c", "d"}));
    }

    SECTION("relation endpoints are validated") {
        CHECK_THROWS_AS(FlowPresentation(FinSet({"0", "1"}),
                                         {{"a", "0", "1"}, {"b", "1", "0"}},
                                         {{EdgeWord{"a"}, EdgeWord{"b"}}}),
                        Error);
        CHECK_THROWS_AS(FlowPresentation(FinSet({"0", "1"}), {{"a", "0", "1"}},
                                         {{EdgeWord{}, EdgeWord{"a"}}}),
                        Error);
    }
}

TEST_CASE("round trip through the canonical presentation") {
    for (const Flow& flow :
         {subdivided_segment(), concat_globes(FinSet({"a", "b"}), FinSet({"c"})),
          directed_segment()}) {
        MaterializedFlow m = materialize(to_presentation(flow));
        CHECK_FALSE(m.truncated);
        CHECK(m.flow == flow);
    }
}

TEST_CASE("morphism enumeration") {
    SECTION("the only endomorphism of I is the identity") {
        auto homs = enumerate_morphisms(directed_segment(), directed_segment());
        REQUIRE(homs.size() == 1);
        CHECK(homs[0] == FlowMorphism::identity(directed_segment()));
    }

    SECTION("Hom(I, I*I) contains phi") {
        auto homs = enumerate_morphisms(directed_segment(), subdivided_segment());
        CHECK(homs.size() == 3);  // [0,1] can land on u, v or u*v
        bool found = false;
        for (const auto& m : homs) {
            if (m == phi()) found = true;
        }
        CHECK(found);
    }

    SECTION("globe morphisms preserving endpoints count path maps") {
        auto homs = enumerate_morphisms(glob(FinSet({"a"})), glob(FinSet({"a", "b"})));
        std::size_t endpoint_preserving = 0;
        for (const auto& m : homs) {
            if (m.state_map() == SetMap::identity(FinSet({"0", "1"}))) ++endpoint_preserving;
        }
        CHECK(endpoint_preserving == 2);
        CHECK(homs.size() == 2);
    }

    SECTION("budget violations are reported, not truncated") {
        Flow big = glob(FinSet({"a", "b", "c"}));
        CHECK_THROWS_AS(enumerate_morphisms(big, big, SearchBudget{2}), BudgetExceeded);
    }
}

TEST_CASE("glob is full and faithful over endpoint-preserving morphisms") {
    for (std::size_t nz : {0u, 1u, 2u}) {
        for (std::size_t nt : {0u, 1u, 2u}) {
            FinSet Z = FinSet::numbered(nz, "z");
            FinSet T = FinSet::numbered(nt, "t");
            auto homs = enumerate_morphisms(glob(Z), glob(T));
            std::set<std::vector<std::size_t>> endpoint_preserving_tables;
            const SetMap id2 = SetMap::identity(FinSet({"0", "1"}));
            for (const auto& m : homs) {
                if (m.state_map() == id2) {
                    endpoint_preserving_tables.insert(m.path_component("0", "1").table());
                }
            }
            CHECK(endpoint_preserving_tables.size() == hom_set(Z, T).size());
        }
    }
}

TEST_CASE("morphism composition and components") {
    FlowMorphism f = phi();
    FlowMorphism id_ii = FlowMorphism::identity(subdivided_segment());
    CHECK(compose(id_ii, f) == f);
    SetMap component = f.path_component("0", "1");
    CHECK(component.domain() == FinSet({"[0,1]"}));
    CHECK(component.apply("[0,1]") == "u*v");
}

TEST_CASE("set maps embed as morphisms of path-empty flows") {
    FlowMorphism r = map_as_flow_morphism(maps::R());
    CHECK(r.domain().states().size() == 2);
    CHECK(r.domain().total_path_count() == 0);
    CHECK(r.codomain().states().size() == 1);
    CHECK_FALSE(r.is_isomorphism());

    FlowMorphism g = glob_morphism(maps::C_plus());
    CHECK(g.domain().total_path_count() == 1);
    CHECK(g.codomain().total_path_count() == 2);
    CHECK(g.apply_path("0") == "0");
}

TEST_CASE("every constructed flow is associative and total") {
    for (const Flow& flow :
         {glob(FinSet({"a", "b"})), subdivided_segment(),
          concat_globes(FinSet({"a", "b"}), FinSet({"c", "d"})), set_as_flow(FinSet({"x"}))}) {
        CHECK(flow.associativity_holds());
        CHECK(flow.compose_total());
    }
}
