#include "flowcalc/colimits.hpp"

#include <algorithm>

#include "flowcalc/detail/disjoint_sets.hpp"
#include "flowcalc/errors.hpp"

namespace flowcalc {

void validate_presentation_morphism(const FlowPresentation& source,
                                    const FlowPresentation& target,
                                    const PresentationMorphism& morphism) {
    if (morphism.vertex_map.size() != source.vertices().size()) {
        throw Error("presentation morphism: vertex map is not total on the source");
    }
    for (const auto& vertex : source.vertices()) {
        auto it = morphism.vertex_map.find(vertex);
        if (it == morphism.vertex_map.end()) {
            throw Error("presentation morphism: vertex '" + vertex + "' has no image");
        }
        if (!target.vertices().contains(it->second)) {
            throw Error("presentation morphism: image vertex '" + it->second + "' is unknown");
        }
    }
    if (morphism.edge_map.size() != source.edges().size()) {
        throw Error("presentation morphism: edge map is not total on the source");
    }
    for (const auto& edge : source.edges()) {
        auto it = morphism.edge_map.find(edge.label);
        if (it == morphism.edge_map.end()) {
            throw Error("presentation morphism: edge '" + edge.label + "' has no image");
        }
        auto ends = target.word_endpoints(it->second);
        if (!ends) {
            throw Error("presentation morphism: image of edge '" + edge.label +
                        "' is empty or not composable");
        }
        if (ends->first != morphism.vertex_map.at(edge.source) ||
            ends->second != morphism.vertex_map.at(edge.target)) {
            throw Error("presentation morphism: image of edge '" + edge.label +
                        "' has wrong endpoints");
        }
    }
}

PresentationMorphism identity_presentation_morphism(const FlowPresentation& p) {
    PresentationMorphism id;
    for (const auto& vertex : p.vertices()) id.vertex_map[vertex] = vertex;
    for (const auto& edge : p.edges()) id.edge_map[edge.label] = EdgeWord{edge.label};
    return id;
}

PresentationMorphism compose_presentation_morphisms(const FlowPresentation& source,
                                                    const PresentationMorphism& f,
                                                    const PresentationMorphism& g) {
    PresentationMorphism composed;
    for (const auto& vertex : source.vertices()) {
        composed.vertex_map[vertex] = g.vertex_map.at(f.vertex_map.at(vertex));
    }
    for (const auto& edge : source.edges()) {
        EdgeWord word;
        for (const auto& letter : f.edge_map.at(edge.label)) {
            const EdgeWord& expansion = g.edge_map.at(letter);
            word.insert(word.end(), expansion.begin(), expansion.end());
        }
        composed.edge_map[edge.label] = std::move(word);
    }
    return composed;
}

PresentationMorphism to_presentation_morphism(const FlowMorphism& f) {
    PresentationMorphism result;
    for (const auto& state : f.domain().states()) {
        result.vertex_map[state] = f.state_map().apply(state);
    }
    for (const auto& path : f.domain().all_paths()) {
        result.edge_map[path] = EdgeWord{f.apply_path(path)};
    }
    return result;
}

FlowMorphism materialize_morphism(const FlowPresentation& source,
                                  const PresentationMorphism& morphism,
                                  const MaterializedFlow& source_mat,
                                  const MaterializedFlow& target_mat) {
    std::map<std::string, std::string> state_table;
    for (const auto& [vertex, image] : morphism.vertex_map) state_table[vertex] = image;
    SetMap state_map(source_mat.flow.states(), target_mat.flow.states(), state_table);

    std::map<std::string, std::string> path_map;
    for (const auto& label : source_mat.flow.all_paths()) {
        const EdgeWord& word = source_mat.word_by_class.at(label);
        EdgeWord image_word;
        for (const auto& letter : word) {
            const EdgeWord& expansion = morphism.edge_map.at(letter);
            image_word.insert(image_word.end(), expansion.begin(), expansion.end());
        }
        auto image = target_mat.class_of(image_word);
        if (!image) {
            throw Error("materialize_morphism: image word exceeds the materialization bound");
        }
        path_map[label] = *image;
    }
    (void)source;
    return FlowMorphism::build(source_mat.flow, target_mat.flow, std::move(state_map),
                               std::move(path_map));
}

namespace {

EdgeWord remap_word(const EdgeWord& word, const std::map<std::string, std::string>& table) {
    EdgeWord result;
    result.reserve(word.size());
    for (const auto& letter : word) result.push_back(table.at(letter));
    return result;
}

}  // namespace

PushoutResult pushout(const FlowPresentation& source, const FlowPresentation& first,
                      const FlowPresentation& second, const PresentationMorphism& span_to_first,
                      const PresentationMorphism& span_to_second) {
    validate_presentation_morphism(source, first, span_to_first);
    validate_presentation_morphism(source, second, span_to_second);

    // Disjoint union of vertices; the second copy is renamed on clashes.
    std::set<std::string> used_vertices(first.vertices().begin(), first.vertices().end());
    std::map<std::string, std::string> second_vertex_name;
    for (const auto& v : second.vertices()) {
        std::string name = fresh_label(v, used_vertices);
        used_vertices.insert(name);
        second_vertex_name[v] = name;
    }

    const std::size_t nx = first.vertices().size();
    const std::size_t ny = second.vertices().size();
    detail::DisjointSets vertex_classes(nx + ny);
    auto first_vertex_index = [&](const std::string& v) { return first.vertices().index_of(v); };
    auto second_vertex_index = [&](const std::string& v) {
        return nx + second.vertices().index_of(v);
    };
    for (const auto& z : source.vertices()) {
        vertex_classes.unite(first_vertex_index(span_to_first.vertex_map.at(z)),
                             second_vertex_index(span_to_second.vertex_map.at(z)));
    }

    auto display_vertex = [&](std::size_t index) -> std::string {
        if (index < nx) return first.vertices().at(index);
        return second_vertex_name.at(second.vertices().at(index - nx));
    };
    std::map<std::size_t, std::string> class_label;
    for (std::size_t i = 0; i < nx + ny; ++i) {
        std::size_t root = vertex_classes.find(i);
        std::string display = display_vertex(i);
        auto it = class_label.find(root);
        if (it == class_label.end() || display < it->second) class_label[root] = display;
    }
    auto vertex_class_of_first = [&](const std::string& v) {
        return class_label.at(vertex_classes.find(first_vertex_index(v)));
    };
    auto vertex_class_of_second = [&](const std::string& v) {
        return class_label.at(vertex_classes.find(second_vertex_index(v)));
    };

    // Disjoint union of edges, displayed with clash renaming on the second
    // copy. Edge indices follow the (label-sorted) edge lists.
    std::set<std::string> used_edges;
    for (const auto& e : first.edges()) used_edges.insert(e.label);
    std::map<std::string, std::string> second_edge_name;
    for (const auto& e : second.edges()) {
        std::string name = fresh_label(e.label, used_edges);
        used_edges.insert(name);
        second_edge_name[e.label] = name;
    }

    const std::size_t ex = first.edges().size();
    const std::size_t ey = second.edges().size();
    auto first_edge_index = [&](const std::string& label) -> std::size_t {
        for (std::size_t i = 0; i < ex; ++i) {
            if (first.edges()[i].label == label) return i;
        }
        throw Error("pushout: unknown edge '" + label + "'");
    };
    auto second_edge_index = [&](const std::string& label) -> std::size_t {
        for (std::size_t i = 0; i < ey; ++i) {
            if (second.edges()[i].label == label) return ex + i;
        }
        throw Error("pushout: unknown edge '" + label + "'");
    };

    // Generator identifications: single edges on both sides merge, anything
    // longer becomes a relation of the apex.
    detail::DisjointSets edge_classes(ex + ey);
    std::vector<std::pair<EdgeWord, EdgeWord>> pending;
    for (const auto& z_edge : source.edges()) {
        const EdgeWord& into_first = span_to_first.edge_map.at(z_edge.label);
        const EdgeWord& into_second = span_to_second.edge_map.at(z_edge.label);
        if (into_first.size() == 1 && into_second.size() == 1) {
            edge_classes.unite(first_edge_index(into_first[0]),
                               second_edge_index(into_second[0]));
            continue;
        }
        EdgeWord lhs = into_first;
        pending.emplace_back(std::move(lhs), remap_word(into_second, second_edge_name));
    }

    auto display_edge = [&](std::size_t index) -> std::string {
        if (index < ex) return first.edges()[index].label;
        return second_edge_name.at(second.edges()[index - ex].label);
    };
    std::map<std::size_t, std::string> edge_class_label;
    for (std::size_t i = 0; i < ex + ey; ++i) {
        std::size_t root = edge_classes.find(i);
        std::string display = display_edge(i);
        auto it = edge_class_label.find(root);
        if (it == edge_class_label.end() || display < it->second) edge_class_label[root] = display;
    }

    // Display label -> representative label, for rewriting words.
    std::map<std::string, std::string> edge_representative;
    for (std::size_t i = 0; i < ex + ey; ++i) {
        edge_representative[display_edge(i)] = edge_class_label.at(edge_classes.find(i));
    }

    std::vector<PresentationEdge> apex_edges;
    for (const auto& [root, label] : edge_class_label) {
        if (root < ex) {
            const PresentationEdge& e = first.edges()[root];
            apex_edges.push_back(
                {label, vertex_class_of_first(e.source), vertex_class_of_first(e.target)});
        } else {
            const PresentationEdge& e = second.edges()[root - ex];
            apex_edges.push_back(
                {label, vertex_class_of_second(e.source), vertex_class_of_second(e.target)});
        }
    }

    std::vector<PresentationRelation> apex_relations;
    for (const auto& relation : first.relations()) {
        apex_relations.push_back({remap_word(relation.lhs, edge_representative),
                                  remap_word(relation.rhs, edge_representative)});
    }
    for (const auto& relation : second.relations()) {
        auto lhs = remap_word(remap_word(relation.lhs, second_edge_name), edge_representative);
        auto rhs = remap_word(remap_word(relation.rhs, second_edge_name), edge_representative);
        apex_relations.push_back({std::move(lhs), std::move(rhs)});
    }
    for (const auto& [lhs, rhs] : pending) {
        apex_relations.push_back(
            {remap_word(lhs, edge_representative), remap_word(rhs, edge_representative)});
    }

    std::vector<std::string> apex_vertex_labels;
    for (const auto& [root, label] : class_label) apex_vertex_labels.push_back(label);

    PushoutResult result;
    result.source = source;
    result.first = first;
    result.second = second;
    result.span_to_first = span_to_first;
    result.span_to_second = span_to_second;
    result.apex = FlowPresentation(FinSet(apex_vertex_labels), std::move(apex_edges),
                                   std::move(apex_relations));

    for (const auto& v : first.vertices()) {
        result.leg_from_first.vertex_map[v] = vertex_class_of_first(v);
    }
    for (const auto& e : first.edges()) {
        result.leg_from_first.edge_map[e.label] = EdgeWord{edge_representative.at(e.label)};
    }
    for (const auto& v : second.vertices()) {
        result.leg_from_second.vertex_map[v] = vertex_class_of_second(v);
    }
    for (const auto& e : second.edges()) {
        result.leg_from_second.edge_map[e.label] =
            EdgeWord{edge_representative.at(second_edge_name.at(e.label))};
    }
    return result;
}

PushoutResult pushout(const FlowMorphism& span_to_first, const FlowMorphism& span_to_second) {
    if (!(span_to_first.domain() == span_to_second.domain())) {
        throw Error("pushout: the span legs do not share a domain");
    }
    return pushout(to_presentation(span_to_first.domain()),
                   to_presentation(span_to_first.codomain()),
                   to_presentation(span_to_second.codomain()),
                   to_presentation_morphism(span_to_first),
                   to_presentation_morphism(span_to_second));
}

PushoutResult coproduct(const FlowPresentation& first, const FlowPresentation& second) {
    return pushout(FlowPresentation(), first, second, PresentationMorphism{},
                   PresentationMorphism{});
}

PushoutResult coproduct(const Flow& first, const Flow& second) {
    return coproduct(to_presentation(first), to_presentation(second));
}

FlowMorphism mediating_morphism(const PushoutResult& po, const FlowMorphism& cocone_first,
                                const FlowMorphism& cocone_second, const SearchBudget& budget) {
    MaterializedFlow source_mat = materialize(po.source);
    MaterializedFlow first_mat = materialize(po.first);
    MaterializedFlow second_mat = materialize(po.second);

    if (!(cocone_first.domain() == first_mat.flow)) {
        throw Error("mediating_morphism: first cocone leg has the wrong domain");
    }
    if (!(cocone_second.domain() == second_mat.flow)) {
        throw Error("mediating_morphism: second cocone leg has the wrong domain");
    }
    if (!(cocone_first.codomain() == cocone_second.codomain())) {
        throw Error("mediating_morphism: cocone legs target different flows");
    }

    FlowMorphism span_first_mat =
        materialize_morphism(po.source, po.span_to_first, source_mat, first_mat);
    FlowMorphism span_second_mat =
        materialize_morphism(po.source, po.span_to_second, source_mat, second_mat);
    if (!(compose(cocone_first, span_first_mat) == compose(cocone_second, span_second_mat))) {
        throw NonCommutingCocone("mediating_morphism: the cocone does not commute with the span");
    }

    MaterializedFlow apex_mat = materialize(po.apex);
    FlowMorphism leg_first = materialize_morphism(po.first, po.leg_from_first, first_mat, apex_mat);
    FlowMorphism leg_second =
        materialize_morphism(po.second, po.leg_from_second, second_mat, apex_mat);

    std::vector<FlowMorphism> matches;
    for (const FlowMorphism& candidate :
         enumerate_morphisms(apex_mat.flow, cocone_first.codomain(), budget)) {
        if (compose(candidate, leg_first) == cocone_first &&
            compose(candidate, leg_second) == cocone_second) {
            matches.push_back(candidate);
        }
    }
    if (matches.empty()) {
        throw Error("mediating_morphism: no morphism through the apex (universal property bug)");
    }
    if (matches.size() > 1) {
        throw Error("mediating_morphism: mediating morphism is not unique");
    }
    return matches.front();
}

Codiagonal codiagonal_construction(const FlowMorphism& g, const SearchBudget& budget) {
    PushoutResult po = pushout(g, g);
    MaterializedFlow codomain_mat = materialize(po.first);
    MaterializedFlow apex_mat = materialize(po.apex);
    FlowMorphism inclusion_first =
        materialize_morphism(po.first, po.leg_from_first, codomain_mat, apex_mat);
    FlowMorphism inclusion_second =
        materialize_morphism(po.second, po.leg_from_second, codomain_mat, apex_mat);
    FlowMorphism id_codomain = FlowMorphism::identity(g.codomain());
    FlowMorphism fold = mediating_morphism(po, id_codomain, id_codomain, budget);
    return Codiagonal{std::move(po), std::move(apex_mat), std::move(inclusion_first),
                      std::move(inclusion_second), std::move(fold)};
}

}  // namespace flowcalc
