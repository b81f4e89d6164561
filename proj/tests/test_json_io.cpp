#include <catch2/catch_amalgamated.hpp>

#include "flowcalc/json_io.hpp"

using namespace flowcalc;
using nlohmann::json;

TEST_CASE("flow documents round-trip") {
    for (const Flow& flow : {subdivided_segment(), directed_segment(),
                             concat_globes(FinSet({"a", "b"}), FinSet({"c"})),
                             set_as_flow(FinSet({"x", "y"}))}) {
        json doc = to_document(flow);
        auto parsed = parse_flow_document(doc);
        REQUIRE(std::holds_alternative<Flow>(parsed));
        CHECK(std::get<Flow>(parsed) == flow);
        // canonical serialization is stable byte for byte
        CHECK(to_document(std::get<Flow>(parsed)).dump(2) == doc.dump(2));
    }
}

TEST_CASE("presentation documents round-trip") {
    FlowPresentation p(FinSet({"0", "1", "2"}),
                       {{"u", "0", "1"}, {"v", "1", "2"}, {"w", "0", "2"}},
                       {{EdgeWord{"u", "v"}, EdgeWord{"w"}}});
    json doc = to_document(p);
    auto parsed = parse_flow_document(doc);
    REQUIRE(std::holds_alternative<FlowPresentation>(parsed));
    CHECK(std::get<FlowPresentation>(parsed) == p);
    CHECK(to_document(std::get<FlowPresentation>(parsed)).dump(2) == doc.dump(2));
}

TEST_CASE("set map documents round-trip") {
    for (const SetMap& map : {maps::R(), maps::C(), maps::C_plus()}) {
        json doc = to_document(map);
        CHECK(parse_set_map_document(doc) == map);
    }
}

TEST_CASE("morphism documents round-trip") {
    json doc = to_document(phi());
    FlowMorphism parsed = parse_morphism_document(doc);
    CHECK(parsed == phi());

    SECTION("built-in names resolve as endpoints") {
        json compact = {
            {"domain", "I"},
            {"codomain", "I*I"},
            {"f0", {{"0", "0"}, {"1", "2"}}},
            {"paths", {{"0->1", {{"[0,1]", "u*v"}}}}},
        };
        CHECK(parse_morphism_document(compact) == phi());
    }
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(parse_flow_document(json::array()), DocumentError);
    CHECK_THROWS_AS(parse_flow_document(json{{"paths", json::object()}}), DocumentError);
    CHECK_THROWS_AS(parse_set_map_document(json{{"domain", json::array()}}), DocumentError);

    SECTION("state labels with the pair separator are rejected") {
        Flow::Builder builder;
        builder.add_state("a->b").add_state("c");
        builder.add_path("a->b", "c", "p");
        CHECK_THROWS_AS(to_document(builder.build()), DocumentError);
    }

    SECTION("compose entries must reference declared paths") {
        json doc = {
            {"states", {"0", "1"}},
            {"paths", {{"0->1", {"p"}}}},
            {"compose", {{"p", "q", "p"}}},
        };
        CHECK_THROWS_AS(parse_flow_document(doc), DocumentError);
    }

    SECTION("non-associative compose tables are rejected") {
        // x*y = x is associative and parses
        json left_projection = {
            {"states", {"0"}},
            {"paths", {{"0->0", {"a", "b"}}}},
            {"compose",
             {{"a", "a", "a"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}}},
        };
        CHECK_NOTHROW(parse_flow_document(left_projection));

        // (a*a)*b = b*b = a, but a*(a*b) = a*a = b
        json broken = {
            {"states", {"0"}},
            {"paths", {{"0->0", {"a", "b"}}}},
            {"compose",
             {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "a"}, {"b", "b", "a"}}},
        };
        CHECK_THROWS_AS(parse_flow_document(broken), DocumentError);
    }
}

TEST_CASE("builtins by name") {
    CHECK(builtin_set_map("R") == maps::R());
    CHECK(builtin_set_map("C+") == maps::C_plus());
    CHECK_FALSE(builtin_set_map("I").has_value());
    CHECK(builtin_flow("I*I") == subdivided_segment());
    CHECK(builtin_morphism("phi") == phi());
}

TEST_CASE("reports serialize deterministically") {
    auto universe = enumerate_universe(2);
    const WfsPair& pair = named_wfs(NamedWfs::MonoEpi);
    WfsReport report = verify_wfs(pair.left, pair.right, universe, pair.kind);
    json a = to_json(report);
    json b = to_json(verify_wfs(pair.left, pair.right, universe, pair.kind));
    CHECK(a.dump(2) == b.dump(2));
    CHECK(a["passed"] == true);
}
