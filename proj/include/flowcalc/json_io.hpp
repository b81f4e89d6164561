#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "flowcalc/colimits.hpp"
#include "flowcalc/dihomotopy.hpp"
#include "flowcalc/errors.hpp"
#include "flowcalc/flow.hpp"
#include "flowcalc/wfs.hpp"

namespace flowcalc {

/// Malformed input document.
class DocumentError : public Error {
public:
    using Error::Error;
};

// Documents use canonical key order (nlohmann::json sorts object keys) and
// canonically sorted arrays, so serialization is deterministic and
// re-serializing a parsed document is the identity.

nlohmann::json to_document(const Flow& flow);
nlohmann::json to_document(const FlowPresentation& presentation);
nlohmann::json to_document(const SetMap& map);
nlohmann::json to_document(const FlowMorphism& morphism);

std::variant<Flow, FlowPresentation> parse_flow_document(const nlohmann::json& doc);
SetMap parse_set_map_document(const nlohmann::json& doc);
FlowMorphism parse_morphism_document(const nlohmann::json& doc);

/// Built-in named objects: R, C, C+ (set maps), I, I*I (flows), phi.
std::optional<SetMap> builtin_set_map(const std::string& name);
std::optional<Flow> builtin_flow(const std::string& name);
std::optional<FlowMorphism> builtin_morphism(const std::string& name);

nlohmann::json to_json(const DihomotopyReport& report);
nlohmann::json to_json(const WfsReport& report);
nlohmann::json to_json(const ModelStructureReport& report);
nlohmann::json to_json(const TableCellReport& cell);
nlohmann::json to_json(const CounterexampleSuite& suite);
nlohmann::json to_json(const PushoutResult& result);
nlohmann::json to_json(const PresentationMorphism& morphism);

}  // namespace flowcalc
