#include "flowcalc/json_io.hpp"

#include <algorithm>

namespace flowcalc {

using nlohmann::json;

namespace {

std::string pair_key(const std::string& source, const std::string& target) {
    if (source.find("->") != std::string::npos || target.find("->") != std::string::npos) {
        throw DocumentError("state labels must not contain '->'");
    }
    return source + "->" + target;
}

std::pair<std::string, std::string> split_pair_key(const std::string& key) {
    auto at = key.find("->");
    if (at == std::string::npos) {
        throw DocumentError("malformed state pair key '" + key + "' (expected 'a->b')");
    }
    return {key.substr(0, at), key.substr(at + 2)};
}

const json& require(const json& doc, const char* field) {
    auto it = doc.find(field);
    if (it == doc.end()) {
        throw DocumentError(std::string("missing field '") + field + "'");
    }
    return *it;
}

std::vector<std::string> string_list(const json& value, const char* what) {
    if (!value.is_array()) throw DocumentError(std::string(what) + " must be an array");
    std::vector<std::string> result;
    for (const auto& item : value) {
        if (!item.is_string()) throw DocumentError(std::string(what) + " must hold strings");
        result.push_back(item.get<std::string>());
    }
    return result;
}

}  // namespace

nlohmann::json to_document(const Flow& flow) {
    json doc;
    doc["states"] = flow.states().labels();
    json paths = json::object();
    for (const auto& [ends, labels] : flow.path_table()) {
        paths[pair_key(ends.first, ends.second)] = labels.labels();
    }
    doc["paths"] = std::move(paths);
    json compose = json::array();
    for (const auto& [pair, xy] : flow.compose_table()) {
        compose.push_back(json::array({pair.first, pair.second, xy}));
    }
    doc["compose"] = std::move(compose);
    if (flow.truncated()) doc["truncated"] = true;
    return doc;
}

nlohmann::json to_document(const FlowPresentation& presentation) {
    json doc;
    doc["states"] = presentation.vertices().labels();
    json edges = json::array();
    for (const auto& edge : presentation.edges()) {
        edges.push_back(json::array({edge.label, edge.source, edge.target}));
    }
    json relations = json::array();
    for (const auto& relation : presentation.relations()) {
        relations.push_back(json::array({relation.lhs, relation.rhs}));
    }
    doc["presentation"] = json{{"edges", std::move(edges)}, {"relations", std::move(relations)}};
    return doc;
}

nlohmann::json to_document(const SetMap& map) {
    json doc;
    doc["domain"] = map.domain().labels();
    doc["codomain"] = map.codomain().labels();
    json table = json::object();
    for (const auto& x : map.domain()) table[x] = map.apply(x);
    doc["map"] = std::move(table);
    return doc;
}

nlohmann::json to_document(const FlowMorphism& morphism) {
    json doc;
    doc["domain"] = to_document(morphism.domain());
    doc["codomain"] = to_document(morphism.codomain());
    json f0 = json::object();
    for (const auto& state : morphism.domain().states()) {
        f0[state] = morphism.state_map().apply(state);
    }
    doc["f0"] = std::move(f0);
    json paths = json::object();
    for (const auto& [ends, labels] : morphism.domain().path_table()) {
        json component = json::object();
        for (const auto& label : labels) component[label] = morphism.apply_path(label);
        paths[pair_key(ends.first, ends.second)] = std::move(component);
    }
    doc["paths"] = std::move(paths);
    return doc;
}

std::variant<Flow, FlowPresentation> parse_flow_document(const nlohmann::json& doc) {
    if (!doc.is_object()) throw DocumentError("flow document must be an object");
    std::vector<std::string> states = string_list(require(doc, "states"), "states");

    try {
        if (doc.contains("presentation")) {
            const json& pres = doc["presentation"];
            std::vector<PresentationEdge> edges;
            for (const auto& entry : require(pres, "edges")) {
                auto triple = string_list(entry, "edge entry");
                if (triple.size() != 3) {
                    throw DocumentError("edge entries must be [label, source, target]");
                }
                edges.push_back({triple[0], triple[1], triple[2]});
            }
            std::vector<PresentationRelation> relations;
            if (pres.contains("relations")) {
                for (const auto& entry : pres["relations"]) {
                    if (!entry.is_array() || entry.size() != 2) {
                        throw DocumentError("relation entries must be [word, word]");
                    }
                    relations.push_back(
                        {string_list(entry[0], "relation word"), string_list(entry[1], "relation word")});
                }
            }
            return FlowPresentation(FinSet(states), std::move(edges), std::move(relations));
        }

        Flow::Builder builder;
        builder.states(FinSet(states));
        if (doc.contains("paths")) {
            if (!doc["paths"].is_object()) throw DocumentError("paths must be an object");
            for (const auto& [key, labels] : doc["paths"].items()) {
                auto [source, target] = split_pair_key(key);
                for (const auto& label : string_list(labels, "path list")) {
                    builder.add_path(source, target, label);
                }
            }
        }
        if (doc.contains("compose")) {
            for (const auto& entry : doc["compose"]) {
                auto triple = string_list(entry, "compose entry");
                if (triple.size() != 3) {
                    throw DocumentError("compose entries must be [x, y, xy]");
                }
                builder.set_composite(triple[0], triple[1], triple[2]);
            }
        }
        if (doc.contains("truncated")) builder.truncated(doc["truncated"].get<bool>());
        return builder.build();
    } catch (const DocumentError&) {
        throw;
    } catch (const std::exception& error) {
        throw DocumentError(error.what());
    }
}

SetMap parse_set_map_document(const nlohmann::json& doc) {
    if (!doc.is_object()) throw DocumentError("set map document must be an object");
    try {
        FinSet domain(string_list(require(doc, "domain"), "domain"));
        FinSet codomain(string_list(require(doc, "codomain"), "codomain"));
        const json& table = require(doc, "map");
        if (!table.is_object()) throw DocumentError("map must be an object");
        std::map<std::string, std::string> assignments;
        for (const auto& [key, value] : table.items()) {
            if (!value.is_string()) throw DocumentError("map values must be strings");
            assignments[key] = value.get<std::string>();
        }
        return SetMap(domain, codomain, assignments);
    } catch (const DocumentError&) {
        throw;
    } catch (const std::exception& error) {
        throw DocumentError(error.what());
    }
}

namespace {

Flow flow_endpoint(const json& value, const char* side) {
    if (value.is_string()) {
        auto name = value.get<std::string>();
        if (auto flow = builtin_flow(name)) return *flow;
        throw DocumentError(std::string(side) + ": unknown built-in flow '" + name + "'");
    }
    auto parsed = parse_flow_document(value);
    if (std::holds_alternative<FlowPresentation>(parsed)) {
        return materialize(std::get<FlowPresentation>(parsed)).flow;
    }
    return std::get<Flow>(parsed);
}

}  // namespace

FlowMorphism parse_morphism_document(const nlohmann::json& doc) {
    if (!doc.is_object()) throw DocumentError("morphism document must be an object");
    try {
        Flow domain = flow_endpoint(require(doc, "domain"), "domain");
        Flow codomain = flow_endpoint(require(doc, "codomain"), "codomain");
        const json& f0 = require(doc, "f0");
        std::map<std::string, std::string> state_table;
        for (const auto& [key, value] : f0.items()) {
            state_table[key] = value.get<std::string>();
        }
        std::map<std::string, std::string> path_map;
        if (doc.contains("paths")) {
            for (const auto& [key, component] : doc["paths"].items()) {
                (void)split_pair_key(key);  // validated, content drives the map
                if (!component.is_object()) {
                    throw DocumentError("morphism path components must be objects");
                }
                for (const auto& [label, image] : component.items()) {
                    path_map[label] = image.get<std::string>();
                }
            }
        }
        SetMap state_map(domain.states(), codomain.states(), state_table);
        return FlowMorphism::build(std::move(domain), std::move(codomain), std::move(state_map),
                                   std::move(path_map));
    } catch (const DocumentError&) {
        throw;
    } catch (const std::exception& error) {
        throw DocumentError(error.what());
    }
}

std::optional<SetMap> builtin_set_map(const std::string& name) {
    if (name == "R") return maps::R();
    if (name == "C") return maps::C();
    if (name == "C+") return maps::C_plus();
    return std::nullopt;
}

std::optional<Flow> builtin_flow(const std::string& name) {
    if (name == "I") return directed_segment();
    if (name == "I*I") return subdivided_segment();
    return std::nullopt;
}

std::optional<FlowMorphism> builtin_morphism(const std::string& name) {
    if (name == "phi") return phi();
    return std::nullopt;
}

// --- reports ---------------------------------------------------------------

namespace {

json witness_json(const WfsWitness& witness) {
    json entry;
    entry["kind"] = witness.kind;
    entry["arrow"] = to_document(witness.arrow);
    if (witness.against) entry["against"] = to_document(*witness.against);
    entry["detail"] = witness.detail;
    return entry;
}

json branch_json(const BranchWitness& witness) {
    return json{{"state", witness.state}, {"first", witness.first}, {"second", witness.second}};
}

}  // namespace

nlohmann::json to_json(const DihomotopyReport& report) {
    json doc;
    doc["initial_states"] = report.initial_states;
    doc["final_states"] = report.final_states;
    doc["unreachable_states"] = report.unreachable_states;
    doc["deadlock_states"] = report.deadlock_states;
    json loops = json::array();
    for (const auto& loop : report.loops) {
        loops.push_back(json{{"states", loop.states}, {"paths", loop.paths}});
    }
    doc["loops"] = std::move(loops);
    json branchings = json::array();
    for (const auto& b : report.branchings) branchings.push_back(branch_json(b));
    doc["branchings"] = std::move(branchings);
    json mergings = json::array();
    for (const auto& m : report.mergings) mergings.push_back(branch_json(m));
    doc["mergings"] = std::move(mergings);
    doc["truncated"] = report.truncated;
    doc["definitions"] =
        "deadlock/unreachable are artifact definitions: unreachable = no generator path "
        "from an initial state; deadlock = unreachable state with no outgoing path";
    return doc;
}

nlohmann::json to_json(const WfsReport& report) {
    json doc;
    doc["left"] = report.left_name;
    doc["right"] = report.right_name;
    doc["universe_bound"] = report.universe_bound;
    doc["left_determined"] = report.left_determined;
    doc["right_determined"] = report.right_determined;
    doc["factorization_ok"] = report.factorization_ok;
    doc["passed"] = report.passed();
    json witnesses = json::array();
    for (const auto& witness : report.witnesses) witnesses.push_back(witness_json(witness));
    doc["witnesses"] = std::move(witnesses);
    return doc;
}

nlohmann::json to_json(const ModelStructureReport& report) {
    json doc;
    doc["name"] = report.name;
    doc["universe_bound"] = report.universe_bound;
    doc["two_of_three_ok"] = report.two_of_three_ok;
    if (report.two_of_three_witness) {
        doc["two_of_three_witness"] = json{
            {"first", to_document(report.two_of_three_witness->first)},
            {"second", to_document(report.two_of_three_witness->second)},
            {"composite", to_document(report.two_of_three_witness->composite)},
        };
    }
    doc["retracts_ok"] = report.retracts_ok;
    if (report.retract_witness) {
        doc["retract_witness"] = json{
            {"retract", to_document(report.retract_witness->first)},
            {"of", to_document(report.retract_witness->second)},
        };
    }
    doc["trivial_cof_fib"] = to_json(report.trivial_cof_fib);
    doc["cof_trivial_fib"] = to_json(report.cof_trivial_fib);
    doc["passed"] = report.passed();
    return doc;
}

nlohmann::json to_json(const TableCellReport& cell) {
    json doc;
    doc["row"] = named_wfs(cell.row).display;
    doc["column"] = named_wfs(cell.col).display;
    switch (cell.status) {
        case TableCellStatus::Possible: doc["status"] = "possible"; break;
        case TableCellStatus::InclusionFailure: doc["status"] = "inclusion-failure"; break;
        case TableCellStatus::TwoOfThreeFailure: doc["status"] = "two-of-three-failure"; break;
        case TableCellStatus::ForcedWeakEquivalences:
            doc["status"] = "forced-weak-equivalences";
            break;
    }
    doc["note"] = cell.note;
    json witnesses = json::array();
    for (const auto& witness : cell.witnesses) witnesses.push_back(to_document(witness));
    doc["witnesses"] = std::move(witnesses);
    return doc;
}

nlohmann::json to_json(const CounterexampleSuite& suite) {
    json doc;
    doc["segment_states"] = suite.segment_states;
    doc["subdivided_states"] = suite.subdivided_states;
    doc["phi_is_discrete_weq"] = suite.phi_is_discrete_weq;
    json pushouts = json::array();
    for (const auto& damage : suite.pushouts_of_r) {
        pushouts.push_back(json{
            {"name", damage.name},
            {"states_before", damage.states_before},
            {"states_after", damage.states_after},
            {"initial_before", damage.initial_before},
            {"initial_after", damage.initial_after},
            {"final_before", damage.final_before},
            {"final_after", damage.final_after},
            {"infinite_paths", damage.infinite_paths},
            {"loop", damage.loop},
            {"branching", damage.branching},
            {"merging", damage.merging},
        });
    }
    doc["pushouts_of_r"] = std::move(pushouts);
    doc["codiagonal"] = json{
        {"apex_states", suite.codiagonal_apex_states},
        {"fold_epi", suite.codiagonal_fold_epi},
        {"fold_injective", suite.codiagonal_fold_injective},
    };
    doc["sweep"] = json{
        {"morphisms", suite.sweep_morphisms},
        {"with_rlp_against_r_and_c", suite.sweep_with_rlp},
        {"all_state_bijective", suite.sweep_all_bijective},
    };
    doc["passed"] = suite.passed();
    return doc;
}

nlohmann::json to_json(const PresentationMorphism& morphism) {
    json doc;
    doc["vertices"] = morphism.vertex_map;
    json edges = json::object();
    for (const auto& [label, word] : morphism.edge_map) edges[label] = word;
    doc["edges"] = std::move(edges);
    return doc;
}

nlohmann::json to_json(const PushoutResult& result) {
    json doc;
    doc["apex"] = to_document(result.apex);
    doc["leg_from_first"] = to_json(result.leg_from_first);
    doc["leg_from_second"] = to_json(result.leg_from_second);
    return doc;
}

}  // namespace flowcalc
