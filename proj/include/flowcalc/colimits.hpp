#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowcalc/budget.hpp"
#include "flowcalc/flow.hpp"

namespace flowcalc {

/// A morphism of presented flows: vertices to vertices, each generator edge
/// to a nonempty composable word of target edges with matching endpoints.
/// Compatibility with the source's relations is not checked here; it
/// surfaces when the morphism is materialized.
struct PresentationMorphism {
    std::map<std::string, std::string> vertex_map;
    std::map<std::string, EdgeWord> edge_map;

    friend bool operator==(const PresentationMorphism&, const PresentationMorphism&) = default;
};

void validate_presentation_morphism(const FlowPresentation& source,
                                    const FlowPresentation& target,
                                    const PresentationMorphism& morphism);

PresentationMorphism identity_presentation_morphism(const FlowPresentation& p);

/// g after f (words expanded letterwise through g).
PresentationMorphism compose_presentation_morphisms(const FlowPresentation& source,
                                                    const PresentationMorphism& f,
                                                    const PresentationMorphism& g);

/// A flow morphism as a morphism of the canonical presentations.
PresentationMorphism to_presentation_morphism(const FlowMorphism& f);

/// The flow morphism a presentation morphism induces between given
/// materializations of its source and target.
FlowMorphism materialize_morphism(const FlowPresentation& source,
                                  const PresentationMorphism& morphism,
                                  const MaterializedFlow& source_mat,
                                  const MaterializedFlow& target_mat);

/// A pushout computed at presentation level, retaining the span for
/// universal-property queries. Materializing the apex is the caller's
/// choice: pushouts of R legitimately create flows with infinite path sets
/// and the presentation represents those faithfully.
struct PushoutResult {
    FlowPresentation source;  // Z
    FlowPresentation first;   // X
    FlowPresentation second;  // Y
    PresentationMorphism span_to_first;
    PresentationMorphism span_to_second;

    FlowPresentation apex;
    PresentationMorphism leg_from_first;
    PresentationMorphism leg_from_second;
};

/// Pushout of the span X <-f- Z -g-> Y. States are identified by the
/// congruence generated by f(z) ~ g(z) (union-find); generator images that
/// are single edges on both sides are merged, other identifications become
/// relations of the apex.
PushoutResult pushout(const FlowPresentation& source, const FlowPresentation& first,
                      const FlowPresentation& second, const PresentationMorphism& span_to_first,
                      const PresentationMorphism& span_to_second);

/// Pushout of a span of flow morphisms with a common domain.
PushoutResult pushout(const FlowMorphism& span_to_first, const FlowMorphism& span_to_second);

/// Disjoint union with its injections, as the pushout over the empty flow.
PushoutResult coproduct(const FlowPresentation& first, const FlowPresentation& second);
PushoutResult coproduct(const Flow& first, const Flow& second);

/// The unique morphism through the apex for a commuting cocone
/// (cocone_first : X -> W, cocone_second : Y -> W). Existence and
/// uniqueness are certified by exhaustive enumeration of Hom(apex, W)
/// within the budget. Throws NonCommutingCocone when the cocone does not
/// commute with the span.
FlowMorphism mediating_morphism(const PushoutResult& po, const FlowMorphism& cocone_first,
                                const FlowMorphism& cocone_second,
                                const SearchBudget& budget = {});

/// The codiagonal square on g : X -> Y: the pushout Y u_X Y with its two
/// inclusions and the fold morphism h with h . k1 = h . k2 = id_Y.
struct Codiagonal {
    PushoutResult pushout_result;
    MaterializedFlow apex;
    FlowMorphism inclusion_first;
    FlowMorphism inclusion_second;
    FlowMorphism fold;
};

Codiagonal codiagonal_construction(const FlowMorphism& g, const SearchBudget& budget = {});

}  // namespace flowcalc
