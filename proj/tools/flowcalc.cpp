// flowcalc — command-line front end: load flows and maps, decide lifting
// properties, compute pushouts and factorizations, verify the weak
// factorization systems and model structures of finite sets, and run the
// counterexample suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "flowcalc/dihomotopy.hpp"
#include "flowcalc/json_io.hpp"
#include "flowcalc/lifting.hpp"

namespace {

using namespace flowcalc;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    bool json_output = false;
    std::size_t universe_max = 4;
    SearchBudget budget;
    std::optional<std::size_t> max_len;
};

void emit(const Options& options, const json& doc, const std::string& text) {
    if (options.json_output) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

json load_json_file(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw DocumentError("cannot open '" + path + "'");
    json doc;
    try {
        input >> doc;
    } catch (const json::parse_error& error) {
        throw DocumentError("cannot parse '" + path + "': " + error.what());
    }
    return doc;
}

/// An arrow argument: a built-in name (R, C, C+, phi) or a JSON file holding
/// a set-map or morphism document.
using Arrow = std::variant<SetMap, FlowMorphism>;

Arrow load_arrow(const std::string& spec) {
    if (auto named = builtin_set_map(spec)) return *named;
    if (auto named = builtin_morphism(spec)) return *named;
    json doc = load_json_file(spec);
    if (doc.contains("map")) return parse_set_map_document(doc);
    if (doc.contains("f0")) return parse_morphism_document(doc);
    throw DocumentError("'" + spec + "' holds neither a set-map nor a morphism document");
}

FlowMorphism as_flow_morphism(const Arrow& arrow) {
    if (std::holds_alternative<SetMap>(arrow)) {
        return map_as_flow_morphism(std::get<SetMap>(arrow));
    }
    return std::get<FlowMorphism>(arrow);
}

std::string arrow_text(const Arrow& arrow) {
    if (std::holds_alternative<SetMap>(arrow)) return to_string(std::get<SetMap>(arrow));
    return to_string(std::get<FlowMorphism>(arrow));
}

std::variant<Flow, FlowPresentation> load_flow(const std::string& spec) {
    if (auto named = builtin_flow(spec)) return *named;
    return parse_flow_document(load_json_file(spec));
}

MapClass parse_class_or_throw(const std::string& text) {
    auto parsed = MapClass::parse(text);
    if (!parsed) throw DocumentError("cannot parse class expression '" + text + "'");
    return *parsed;
}

// --- subcommands ---------------------------------------------------------

int run_classify(const Options& options, const std::string& map_spec) {
    Arrow arrow = load_arrow(map_spec);
    if (!std::holds_alternative<SetMap>(arrow)) {
        throw DocumentError("classify-map expects a set map");
    }
    const SetMap& map = std::get<SetMap>(arrow);
    auto tags = classify_map(map);
    json doc;
    doc["map"] = to_document(map);
    std::vector<std::string> names;
    for (auto tag : tags) names.push_back(tag_name(tag));
    doc["classes"] = names;
    std::string text = to_string(map) + "\nclasses:";
    for (const auto& name : names) text += " " + name;
    emit(options, doc, text + "\n");
    return kExitPass;
}

int run_lift(const Options& options, const std::string& left_spec,
             const std::string& right_spec) {
    Arrow left = load_arrow(left_spec);
    Arrow right = load_arrow(right_spec);

    json doc;
    doc["left"] = left_spec;
    doc["right"] = right_spec;
    bool lifts = false;
    std::string witness_text;

    if (std::holds_alternative<SetMap>(left) && std::holds_alternative<SetMap>(right)) {
        HomCache<SetCategory> cache(options.budget);
        auto square = find_unliftable_square<SetCategory>(std::get<SetMap>(left),
                                                          std::get<SetMap>(right), cache);
        lifts = !square.has_value();
        if (square) {
            doc["witness_square"] = json{{"top", to_document(square->top)},
                                         {"bottom", to_document(square->bottom)}};
            witness_text = "witness square:\n  top:    " + to_string(square->top) +
                           "\n  bottom: " + to_string(square->bottom) + "\n";
        }
    } else {
        FlowMorphism i = as_flow_morphism(left);
        FlowMorphism p = as_flow_morphism(right);
        HomCache<FlowCategory> cache(options.budget);
        auto square = find_unliftable_square<FlowCategory>(i, p, cache);
        lifts = !square.has_value();
        if (square) {
            doc["witness_square"] = json{{"top", to_document(square->top)},
                                         {"bottom", to_document(square->bottom)}};
            witness_text = "witness square:\n  top:    " + to_string(square->top) +
                           "\n  bottom: " + to_string(square->bottom) + "\n";
        }
    }
    doc["has_llp"] = lifts;
    std::string head = "left:  " + arrow_text(left) + "\nright: " + arrow_text(right) + "\n";
    emit(options, doc,
         head + (lifts ? "llp: yes\n" : "llp: no\n" + witness_text));
    return lifts ? kExitPass : kExitFail;
}

int run_pushout(const Options& options, const std::string& f_spec, const std::string& g_spec,
                bool materialize_apex) {
    FlowMorphism f = as_flow_morphism(load_arrow(f_spec));
    FlowMorphism g = as_flow_morphism(load_arrow(g_spec));
    PushoutResult po = pushout(f, g);

    json doc = to_json(po);
    std::string text = "apex: " + std::to_string(po.apex.vertices().size()) + " states, " +
                       std::to_string(po.apex.edges().size()) + " generators, " +
                       std::to_string(po.apex.relations().size()) + " relations\n";
    if (materialize_apex) {
        try {
            MaterializedFlow m = materialize(po.apex, options.max_len);
            doc["materialized"] = to_document(m.flow);
            text += "materialized: " + std::to_string(m.flow.total_path_count()) + " paths" +
                    (m.truncated ? " (truncated)" : "") + "\n";
        } catch (const InfinitePathSet& error) {
            doc["materialized"] = json{{"result", "infinite-path-set"},
                                       {"cycle_states", error.cycle_states},
                                       {"cycle_paths", error.cycle_edges}};
            text += "materialized: infinite path set (cycle through";
            for (const auto& s : error.cycle_states) text += " " + s;
            text += ")\n";
        }
    }
    emit(options, doc, text);
    return kExitPass;
}

int run_materialize(const Options& options, const std::string& input_spec) {
    auto loaded = load_flow(input_spec);
    json doc;
    std::string text;
    if (std::holds_alternative<Flow>(loaded)) {
        const Flow& flow = std::get<Flow>(loaded);
        doc = to_document(flow);
        text = "already materialized: " + std::to_string(flow.states().size()) + " states, " +
               std::to_string(flow.total_path_count()) + " paths\n";
    } else {
        const FlowPresentation& p = std::get<FlowPresentation>(loaded);
        try {
            MaterializedFlow m = materialize(p, options.max_len);
            doc = to_document(m.flow);
            text = std::to_string(m.flow.states().size()) + " states, " +
                   std::to_string(m.flow.total_path_count()) + " paths" +
                   (m.truncated ? " (truncated)" : "") + "\n";
        } catch (const InfinitePathSet& error) {
            doc = json{{"result", "infinite-path-set"},
                       {"cycle_states", error.cycle_states},
                       {"cycle_paths", error.cycle_edges}};
            text = "infinite path set (directed cycle through";
            for (const auto& s : error.cycle_states) text += " " + s;
            text += "); rerun with --max-len for a truncated flow\n";
        }
    }
    emit(options, doc, text);
    return kExitPass;
}

int run_factorize(const Options& options, const std::string& map_spec,
                  const std::string& pair_id, const std::vector<std::string>& generator_specs) {
    Arrow arrow = load_arrow(map_spec);
    if (!std::holds_alternative<SetMap>(arrow)) {
        throw DocumentError("factorize expects a set map");
    }
    const SetMap& f = std::get<SetMap>(arrow);

    json doc;
    doc["map"] = to_document(f);
    std::string text;
    int status = kExitPass;

    if (!pair_id.empty()) {
        const WfsPair& pair = named_wfs_by_id(pair_id);
        Factorization fact = canonical_factorization(f, pair.kind);
        doc["pair"] = pair.id;
        doc["left"] = to_document(fact.left);
        doc["right"] = to_document(fact.right);
        text = pair.display + "\nleft:  " + to_string(fact.left) + "\nright: " +
               to_string(fact.right) + "\n";
    } else {
        std::vector<SetMap> generators;
        for (const auto& spec : generator_specs) {
            Arrow k = load_arrow(spec);
            if (!std::holds_alternative<SetMap>(k)) {
                throw DocumentError("factorize generators must be set maps");
            }
            generators.push_back(std::get<SetMap>(k));
        }
        SoaFactorization soa = soa_factorize(f, generators, options.budget);
        doc["left"] = to_document(soa.left);
        doc["right"] = to_document(soa.right);
        doc["stages"] = soa.stages;
        doc["completed"] = soa.completed;
        text = "stages: " + std::to_string(soa.stages) +
               (soa.completed ? "" : " (stage cap hit, partial factorization)") +
               "\nleft:  " + to_string(soa.left) + "\nright: " + to_string(soa.right) + "\n";
        if (!soa.completed) status = kExitFail;
    }
    emit(options, doc, text);
    return status;
}

int run_verify_wfs(const Options& options, const std::string& pair_id,
                   const std::string& left_expr, const std::string& right_expr) {
    auto universe = enumerate_universe(options.universe_max);
    WfsReport report;
    if (!pair_id.empty()) {
        const WfsPair& pair = named_wfs_by_id(pair_id);
        report = verify_wfs(pair.left, pair.right, universe, pair.kind, options.budget);
    } else {
        if (left_expr.empty() || right_expr.empty()) {
            throw DocumentError("verify-wfs needs --pair or both --left and --right");
        }
        report = verify_wfs(parse_class_or_throw(left_expr), parse_class_or_throw(right_expr),
                            universe, std::nullopt, options.budget);
    }
    std::string text = "(" + report.left_name + ", " + report.right_name + ") at universe bound " +
                       std::to_string(report.universe_bound) + "\n" +
                       "left determined:  " + (report.left_determined ? "yes" : "no") + "\n" +
                       "right determined: " + (report.right_determined ? "yes" : "no") + "\n" +
                       "factorization:    " + (report.factorization_ok ? "yes" : "no") + "\n" +
                       (report.passed() ? "pass" : "fail") + "\n";
    if (!report.witnesses.empty()) {
        const WfsWitness& witness = report.witnesses.front();
        text += "first witness (" + witness.kind + "): " + to_string(witness.arrow);
        if (witness.against) text += " against " + to_string(*witness.against);
        text += " -- " + witness.detail + "\n";
    }
    emit(options, to_json(report), text);
    return report.passed() ? kExitPass : kExitFail;
}

int run_verify_model_structures(const Options& options, const std::string& cof_expr,
                                const std::string& fib_expr, const std::string& weq_expr) {
    auto universe = enumerate_universe(options.universe_max);

    if (!cof_expr.empty() || !fib_expr.empty() || !weq_expr.empty()) {
        if (cof_expr.empty() || fib_expr.empty() || weq_expr.empty()) {
            throw DocumentError("--cof, --fib and --weq must be given together");
        }
        ModelStructureSpec spec{"(" + cof_expr + ", " + fib_expr + ", " + weq_expr + ")",
                                parse_class_or_throw(cof_expr), parse_class_or_throw(fib_expr),
                                parse_class_or_throw(weq_expr)};
        ModelStructureReport report = verify_model_structure(spec, universe, options.budget);
        std::string text = report.name + ": " + (report.passed() ? "pass" : "fail") + "\n";
        emit(options, to_json(report), text);
        return report.passed() ? kExitPass : kExitFail;
    }

    json doc;
    std::string text;
    bool all_passed = true;
    json structures = json::array();
    for (const ModelStructureSpec& spec : nine_model_structures()) {
        ModelStructureReport report = verify_model_structure(spec, universe, options.budget);
        structures.push_back(to_json(report));
        all_passed = all_passed && report.passed();
        text += report.name + ": " + (report.passed() ? "pass" : "fail") + "\n";
    }
    doc["structures"] = std::move(structures);

    auto cells = last_nine_possibilities(universe, options.budget);
    json table = json::array();
    int possible = 0;
    for (const TableCellReport& cell : cells) {
        table.push_back(to_json(cell));
        if (cell.status == TableCellStatus::Possible) ++possible;
        text += named_wfs(cell.row).display + " x " + named_wfs(cell.col).display + ": " +
                cell.note + "\n";
    }
    doc["table"] = std::move(table);
    all_passed = all_passed && possible == 1;
    doc["passed"] = all_passed;
    text += all_passed ? "pass\n" : "fail\n";
    emit(options, doc, text);
    return all_passed ? kExitPass : kExitFail;
}

int run_analyze(const Options& options, const std::string& input_spec) {
    auto loaded = load_flow(input_spec);
    DihomotopyReport report;
    if (std::holds_alternative<Flow>(loaded)) {
        report = analyze(std::get<Flow>(loaded));
    } else if (options.max_len) {
        report = analyze(materialize(std::get<FlowPresentation>(loaded), options.max_len));
    } else {
        report = analyze(std::get<FlowPresentation>(loaded));
    }
    auto list = [](const std::vector<std::string>& items) {
        std::string text;
        for (const auto& item : items) text += " " + item;
        return text.empty() ? " (none)" : text;
    };
    std::string text = "initial:" + list(report.initial_states) + "\nfinal:" +
                       list(report.final_states) + "\nunreachable:" +
                       list(report.unreachable_states) + "\ndeadlock:" +
                       list(report.deadlock_states) + "\nloops: " +
                       std::to_string(report.loops.size()) + "\nbranchings: " +
                       std::to_string(report.branchings.size()) + "\nmergings: " +
                       std::to_string(report.mergings.size()) + "\n";
    if (report.truncated) text += "note: truncated materialization\n";
    emit(options, to_json(report), text);
    return kExitPass;
}

int run_counterexamples(const Options& options) {
    CounterexampleSuite suite = counterexample_suite(options.budget);
    std::string text =
        "phi: skeleton sizes (" + std::to_string(suite.segment_states) + ", " +
        std::to_string(suite.subdivided_states) + "), discrete weak equivalence: " +
        (suite.phi_is_discrete_weq ? "yes" : "no") + "\n";
    for (const PushoutDamage& damage : suite.pushouts_of_r) {
        text += "pushout of R (" + damage.name + "): states " +
                std::to_string(damage.states_before) + " -> " +
                std::to_string(damage.states_after);
        if (damage.infinite_paths) text += ", infinite path set";
        if (damage.loop) text += ", loop";
        if (damage.branching) text += ", branching";
        if (damage.merging) text += ", merging";
        text += "\n";
    }
    text += "codiagonal on C+: " + std::to_string(suite.codiagonal_apex_states) +
            " apex states, fold epi: " + (suite.codiagonal_fold_epi ? "yes" : "no") +
            ", fold injective: " + (suite.codiagonal_fold_injective ? "yes" : "no") + "\n";
    text += "sweep: " + std::to_string(suite.sweep_with_rlp) + "/" +
            std::to_string(suite.sweep_morphisms) +
            " morphisms have the RLP against {R, C}; all state-bijective: " +
            (suite.sweep_all_bijective ? "yes" : "no") + "\n";
    text += suite.passed() ? "pass\n" : "fail\n";
    emit(options, to_json(suite), text);
    return suite.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flowcalc: finite flows, lifting properties, and the weak factorization "
                 "systems and model structures of finite sets"};
    app.require_subcommand(1);

    Options options;
    if (const char* env_budget = std::getenv("FLOWCALC_BUDGET")) {
        options.budget.max_candidates = std::strtoull(env_budget, nullptr, 10);
    }

    app.add_flag("--json", options.json_output, "emit canonical JSON reports");
    app.add_option("--budget", options.budget.max_candidates,
                   "candidate cap for exhaustive searches");

    std::string map_spec, left_spec, right_spec, f_spec, g_spec, input_spec;
    std::string pair_id, left_expr, right_expr, cof_expr, fib_expr, weq_expr;
    std::vector<std::string> generator_specs;
    bool materialize_apex = false;
    std::size_t max_len = 0;

    auto* classify = app.add_subcommand("classify-map", "named classes of a set map");
    classify->add_option("--map", map_spec, "set map (R, C, C+ or a JSON file)")->required();

    auto* lift = app.add_subcommand("lift", "decide a left lifting property");
    lift->add_option("--left", left_spec, "left arrow")->required();
    lift->add_option("--right", right_spec, "right arrow")->required();

    auto* push = app.add_subcommand("pushout", "pushout of a span of morphisms");
    push->add_option("--f", f_spec, "first leg (common domain)")->required();
    push->add_option("--g", g_spec, "second leg (common domain)")->required();
    push->add_flag("--materialize", materialize_apex, "materialize the apex");
    auto* push_len = push->add_option("--max-len", max_len, "word length bound");

    auto* mat = app.add_subcommand("materialize", "materialize a presented flow");
    mat->add_option("--input", input_spec, "flow document or built-in name")->required();
    auto* mat_len = mat->add_option("--max-len", max_len, "word length bound");

    auto* fact = app.add_subcommand("factorize", "factor a set map");
    fact->add_option("--map", map_spec, "set map")->required();
    fact->add_option("--pair", pair_id, "named pair id (e.g. mono-epi)");
    fact->add_option("--k", generator_specs, "generating maps for the small object argument");

    auto* vwfs = app.add_subcommand("verify-wfs", "verify a weak factorization system");
    vwfs->add_option("--pair", pair_id, "named pair id");
    vwfs->add_option("--left", left_expr, "left class expression");
    vwfs->add_option("--right", right_expr, "right class expression");
    vwfs->add_option("--universe-max", options.universe_max, "universe cardinality bound");

    auto* vms = app.add_subcommand("verify-model-structures",
                                   "verify the nine model structures and the combinations table");
    vms->add_option("--cof", cof_expr, "cofibration class expression");
    vms->add_option("--fib", fib_expr, "fibration class expression");
    vms->add_option("--weq", weq_expr, "weak equivalence class expression");
    vms->add_option("--universe-max", options.universe_max, "universe cardinality bound");

    auto* ana = app.add_subcommand("analyze", "initial/final states, loops, branchings");
    ana->add_option("--input", input_spec, "flow document or built-in name")->required();
    auto* ana_len = ana->add_option("--max-len", max_len, "materialize with this bound first");

    auto* cex = app.add_subcommand("counterexamples", "run the counterexample suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitUsage;
    }

    if (push_len->count() > 0 || mat_len->count() > 0 || ana_len->count() > 0) {
        options.max_len = max_len;
    }

    try {
        if (classify->parsed()) return run_classify(options, map_spec);
        if (lift->parsed()) return run_lift(options, left_spec, right_spec);
        if (push->parsed()) return run_pushout(options, f_spec, g_spec, materialize_apex);
        if (mat->parsed()) return run_materialize(options, input_spec);
        if (fact->parsed()) return run_factorize(options, map_spec, pair_id, generator_specs);
        if (vwfs->parsed()) return run_verify_wfs(options, pair_id, left_expr, right_expr);
        if (vms->parsed()) return run_verify_model_structures(options, cof_expr, fib_expr, weq_expr);
        if (ana->parsed()) return run_analyze(options, input_spec);
        if (cex->parsed()) return run_counterexamples(options);
    } catch (const DocumentError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const UnknownWfs& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
