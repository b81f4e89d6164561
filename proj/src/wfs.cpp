#include "flowcalc/wfs.hpp"

#include <algorithm>

#include "flowcalc/colimits.hpp"
#include "flowcalc/detail/disjoint_sets.hpp"
#include "flowcalc/errors.hpp"
#include "flowcalc/lifting.hpp"

namespace flowcalc {

namespace {

using Tag = MapClass::Tag;

MapClass cls(Tag tag) { return MapClass(tag); }

std::size_t bound_of(const std::vector<SetMap>& universe) {
    std::size_t bound = 0;
    for (const SetMap& f : universe) {
        bound = std::max({bound, f.domain().size(), f.codomain().size()});
    }
    return bound;
}

std::vector<SetMap> bijections(const FinSet& a, const FinSet& b) {
    std::vector<SetMap> result;
    if (a.size() != b.size()) return result;
    for (const SetMap& f : hom_set(a, b)) {
        if (f.is_bijective()) result.push_back(f);
    }
    return result;
}

}  // namespace

// --- ClassPredicate -------------------------------------------------------

ClassPredicate::ClassPredicate(MapClass cls_) : class_(std::move(cls_)) {
    name_ = class_->name();
}

ClassPredicate ClassPredicate::extensional(std::vector<SetMap> arrows, std::string name) {
    ClassPredicate result;
    std::sort(arrows.begin(), arrows.end());
    result.arrows_ = std::move(arrows);
    result.name_ = std::move(name);
    return result;
}

bool ClassPredicate::contains(const SetMap& f) const {
    if (class_) return class_->contains(f);
    if (std::binary_search(arrows_.begin(), arrows_.end(), f)) return true;
    // Extensional lists are given over an iso-representative universe, so
    // membership is up to arrow isomorphism.
    return std::any_of(arrows_.begin(), arrows_.end(),
                       [&](const SetMap& member) { return are_arrow_isomorphic(f, member); });
}

// --- the six named pairs ----------------------------------------------

const std::vector<WfsPair>& named_wfs_pairs() {
    static const std::vector<WfsPair> pairs = {
        {NamedWfs::IsoAll, "iso-all", "(Iso, All)", cls(Tag::Iso), cls(Tag::All)},
        {NamedWfs::MonoEpi, "mono-epi", "(Mono, Epi)", cls(Tag::Mono), cls(Tag::Epi)},
        {NamedWfs::SplitMonoEpiOrEmpty, "splitmono-epiempty", "(SplitMono, Epi|Empty)",
         cls(Tag::SplitMono), cls(Tag::Epi) | cls(Tag::Empty)},
        {NamedWfs::EpiMono, "epi-mono", "(Epi, Mono)", cls(Tag::Epi), cls(Tag::Mono)},
        {NamedWfs::AllIso, "all-iso", "(All, Iso)", cls(Tag::All), cls(Tag::Iso)},
        {NamedWfs::IsoOrNonEmptyIsoOrEmpty, "isononempty-isoempty",
         "(Iso|NonEmpty, Iso|Empty)", cls(Tag::Iso) | cls(Tag::NonEmpty),
         cls(Tag::Iso) | cls(Tag::Empty)},
    };
    return pairs;
}

const WfsPair& named_wfs(NamedWfs kind) {
    for (const WfsPair& pair : named_wfs_pairs()) {
        if (pair.kind == kind) return pair;
    }
    throw UnknownWfs("unknown weak factorization system");
}

const WfsPair& named_wfs_by_id(const std::string& id) {
    for (const WfsPair& pair : named_wfs_pairs()) {
        if (pair.id == id) return pair;
    }
    throw UnknownWfs("unknown weak factorization system id '" + id + "'");
}

// --- canonical factorizations -------------------------------------------

namespace {

// X -> image(f) -> Y.
Factorization image_factorization(const SetMap& f) {
    std::vector<std::string> image_labels;
    for (std::size_t i = 0; i < f.domain().size(); ++i) {
        image_labels.push_back(f.codomain().at(f.apply_index(i)));
    }
    std::sort(image_labels.begin(), image_labels.end());
    image_labels.erase(std::unique(image_labels.begin(), image_labels.end()),
                       image_labels.end());
    FinSet image(image_labels);

    std::map<std::string, std::string> onto;
    for (const auto& x : f.domain()) onto[x] = f.apply(x);
    std::map<std::string, std::string> include;
    for (const auto& y : image) include[y] = y;
    return {SetMap(f.domain(), image, onto), SetMap(image, f.codomain(), include)};
}

// X -> X + Y -> Y with the second factor folding the copy of X through f.
Factorization mapping_set_factorization(const SetMap& f) {
    std::set<std::string> used(f.domain().begin(), f.domain().end());
    std::map<std::string, std::string> copy_name;
    std::vector<std::string> middle_labels(f.domain().begin(), f.domain().end());
    for (const auto& y : f.codomain()) {
        std::string name = fresh_label(y, used);
        used.insert(name);
        copy_name[y] = name;
        middle_labels.push_back(name);
    }
    FinSet middle(middle_labels);

    std::map<std::string, std::string> include;
    for (const auto& x : f.domain()) include[x] = x;
    std::map<std::string, std::string> fold;
    for (const auto& x : f.domain()) fold[x] = f.apply(x);
    for (const auto& y : f.codomain()) fold[copy_name[y]] = y;
    return {SetMap(f.domain(), middle, include), SetMap(middle, f.codomain(), fold)};
}

}  // namespace

Factorization canonical_factorization(const SetMap& f, NamedWfs pair) {
    const SetMap id_dom = SetMap::identity(f.domain());
    const SetMap id_cod = SetMap::identity(f.codomain());
    const SetMap id_empty = SetMap::identity(FinSet());
    const bool empty_domain = f.domain().empty();

    switch (pair) {
        case NamedWfs::IsoAll:
            return {id_dom, f};
        case NamedWfs::AllIso:
            return {f, id_cod};
        case NamedWfs::EpiMono:
            return image_factorization(f);
        case NamedWfs::MonoEpi:
            return mapping_set_factorization(f);
        case NamedWfs::SplitMonoEpiOrEmpty:
            if (empty_domain) return {id_empty, f};
            return mapping_set_factorization(f);
        case NamedWfs::IsoOrNonEmptyIsoOrEmpty:
            if (empty_domain) return {id_empty, f};
            return {f, id_cod};
    }
    throw UnknownWfs("unknown weak factorization system");
}

// --- small object argument (sets) -------------------------------------

SoaFactorization soa_factorize(const SetMap& f, const std::vector<SetMap>& generators,
                               const SearchBudget& budget) {
    SetMap left = SetMap::identity(f.domain());
    SetMap right = f;
    const FinSet& target = f.codomain();
    HomCache<SetCategory> cache(budget);

    for (unsigned stage = 0; stage <= budget.max_stages; ++stage) {
        bool settled = true;
        for (const SetMap& k : generators) {
            if (!has_llp<SetCategory>(k, right, cache)) {
                settled = false;
                break;
            }
        }
        if (settled) return {left, right, stage, true};
        if (stage == budget.max_stages) break;

        // Unsolved lifting problems of each generator against the current
        // right factor.
        struct Problem {
            const SetMap* generator;
            SetMap top;
            SetMap bottom;
        };
        std::vector<Problem> problems;
        const FinSet& middle = right.domain();
        for (const SetMap& k : generators) {
            for (const SetMap& top : cache.hom(k.domain(), middle)) {
                for (const SetMap& bottom : cache.hom(k.codomain(), target)) {
                    if (!(compose(right, top) == compose(bottom, k))) continue;
                    LiftingSquare<SetCategory> square{k, right, top, bottom};
                    if (find_filler(square, cache)) continue;
                    problems.push_back({&k, top, bottom});
                }
            }
        }

        // Glue: quotient of middle + one codomain copy per problem by the
        // spans top(a) ~ k(a).
        std::vector<std::size_t> offsets;
        std::size_t total = middle.size();
        for (const Problem& p : problems) {
            offsets.push_back(total);
            total += p.generator->codomain().size();
        }
        detail::DisjointSets classes(total);
        for (std::size_t p = 0; p < problems.size(); ++p) {
            const SetMap& k = *problems[p].generator;
            for (std::size_t a = 0; a < k.domain().size(); ++a) {
                classes.unite(problems[p].top.apply_index(a), offsets[p] + k.apply_index(a));
            }
        }

        // Class labels: retain a middle label when one is present.
        std::map<std::size_t, std::string> label_of_root;
        std::set<std::string> used(middle.begin(), middle.end());
        for (std::size_t i = 0; i < middle.size(); ++i) {
            std::size_t root = classes.find(i);
            auto it = label_of_root.find(root);
            if (it == label_of_root.end() || middle.at(i) < it->second) {
                label_of_root[root] = middle.at(i);
            }
        }
        for (std::size_t p = 0; p < problems.size(); ++p) {
            const FinSet& cod = problems[p].generator->codomain();
            for (std::size_t b = 0; b < cod.size(); ++b) {
                std::size_t root = classes.find(offsets[p] + b);
                if (label_of_root.count(root)) continue;
                std::string name = fresh_label(cod.at(b), used);
                used.insert(name);
                label_of_root[root] = name;
            }
        }

        std::vector<std::string> glued_labels;
        for (const auto& [root, label] : label_of_root) glued_labels.push_back(label);
        FinSet glued(glued_labels);

        // Induced map to the target; members of one class agree because the
        // problems' squares commute.
        std::map<std::string, std::optional<std::string>> to_target;
        for (std::size_t i = 0; i < middle.size(); ++i) {
            const std::string& label = label_of_root.at(classes.find(i));
            const std::string& value = target.at(right.apply_index(i));
            auto& slot = to_target[label];
            if (slot && *slot != value) throw Error("soa_factorize: inconsistent gluing");
            slot = value;
        }
        for (std::size_t p = 0; p < problems.size(); ++p) {
            const FinSet& cod = problems[p].generator->codomain();
            for (std::size_t b = 0; b < cod.size(); ++b) {
                const std::string& label = label_of_root.at(classes.find(offsets[p] + b));
                const std::string& value = target.at(problems[p].bottom.apply_index(b));
                auto& slot = to_target[label];
                if (slot && *slot != value) throw Error("soa_factorize: inconsistent gluing");
                slot = value;
            }
        }
        std::map<std::string, std::string> right_table;
        for (const auto& [label, value] : to_target) right_table[label] = *value;

        std::map<std::string, std::string> include_table;
        for (std::size_t i = 0; i < middle.size(); ++i) {
            include_table[middle.at(i)] = label_of_root.at(classes.find(i));
        }

        SetMap include(middle, glued, include_table);
        left = compose(include, left);
        right = SetMap(glued, target, right_table);
    }
    return {left, right, budget.max_stages, false};
}

// --- small object argument (flows) -------------------------------------

FlowSoaFactorization soa_factorize(const FlowMorphism& f,
                                   const std::vector<FlowMorphism>& generators,
                                   const SearchBudget& budget) {
    Flow middle = f.domain();
    FlowMorphism left = FlowMorphism::identity(middle);
    FlowMorphism right = f;
    const Flow& target = f.codomain();
    const FlowPresentation target_pres = to_presentation(target);
    const MaterializedFlow target_mat = materialize(target_pres);

    for (unsigned stage = 0; stage <= budget.max_stages; ++stage) {
        HomCache<FlowCategory> cache(budget);
        bool settled = true;
        for (const FlowMorphism& k : generators) {
            if (!has_llp<FlowCategory>(k, right, cache)) {
                settled = false;
                break;
            }
        }
        if (settled) return {left, right, stage, true};
        if (stage == budget.max_stages) break;

        struct Problem {
            const FlowMorphism* generator;
            FlowMorphism top;
            FlowMorphism bottom;
        };
        std::vector<Problem> problems;
        for (const FlowMorphism& k : generators) {
            for (const FlowMorphism& top : cache.hom(k.domain(), middle)) {
                for (const FlowMorphism& bottom : cache.hom(k.codomain(), target)) {
                    if (!(compose(right, top) == compose(bottom, k))) continue;
                    FlowSquare square{k, right, top, bottom};
                    if (find_filler(square, cache)) continue;
                    problems.push_back({&k, top, bottom});
                }
            }
        }

        // Glue all problems against the current middle flow, one pushout at
        // a time at presentation level; tops are re-targeted through the
        // accumulated inclusion.
        const FlowPresentation middle_pres = to_presentation(middle);
        FlowPresentation current = middle_pres;
        PresentationMorphism inclusion = identity_presentation_morphism(middle_pres);
        std::vector<PresentationMorphism> cell_legs;  // codomain copy -> current
        std::vector<FlowPresentation> cell_presentations;

        for (const Problem& problem : problems) {
            const FlowPresentation cell_source = to_presentation(problem.generator->domain());
            const FlowPresentation cell = to_presentation(problem.generator->codomain());
            PresentationMorphism top_now = compose_presentation_morphisms(
                cell_source, to_presentation_morphism(problem.top), inclusion);
            PushoutResult po = pushout(cell_source, current, cell, top_now,
                                       to_presentation_morphism(*problem.generator));
            inclusion =
                compose_presentation_morphisms(middle_pres, inclusion, po.leg_from_first);
            for (std::size_t i = 0; i < cell_legs.size(); ++i) {
                // previously glued copies must follow the new inclusion
                cell_legs[i] = compose_presentation_morphisms(cell_presentations[i], cell_legs[i],
                                                              po.leg_from_first);
            }
            cell_legs.push_back(po.leg_from_second);
            cell_presentations.push_back(cell);
            current = po.apex;
        }

        // Induced morphism from the glued flow back to the target, written
        // on generators and materialized.
        PresentationMorphism to_target;
        for (const auto& v : middle_pres.vertices()) {
            to_target.vertex_map[inclusion.vertex_map.at(v)] =
                right.state_map().apply(v);
        }
        for (const auto& e : middle_pres.edges()) {
            to_target.edge_map[inclusion.edge_map.at(e.label)[0]] =
                EdgeWord{right.apply_path(e.label)};
        }
        for (std::size_t p = 0; p < problems.size(); ++p) {
            for (const auto& v : cell_presentations[p].vertices()) {
                to_target.vertex_map[cell_legs[p].vertex_map.at(v)] =
                    problems[p].bottom.state_map().apply(v);
            }
            for (const auto& e : cell_presentations[p].edges()) {
                to_target.edge_map[cell_legs[p].edge_map.at(e.label)[0]] =
                    EdgeWord{problems[p].bottom.apply_path(e.label)};
            }
        }

        MaterializedFlow middle_mat = materialize(middle_pres);
        MaterializedFlow glued = materialize(current);
        FlowMorphism include = materialize_morphism(middle_pres, inclusion, middle_mat, glued);
        left = compose(include, left);
        right = materialize_morphism(current, to_target, glued, target_mat);
        middle = glued.flow;
    }
    return {left, right, budget.max_stages, false};
}

// --- verify_wfs ---------------------------------------------------------

namespace {

std::optional<NamedWfs> match_named_extensionally(const ClassPredicate& left,
                                                  const ClassPredicate& right,
                                                  const std::vector<SetMap>& universe) {
    for (const WfsPair& pair : named_wfs_pairs()) {
        bool matches = true;
        for (const SetMap& u : universe) {
            if (left.contains(u) != pair.left.contains(u) ||
                right.contains(u) != pair.right.contains(u)) {
                matches = false;
                break;
            }
        }
        if (matches) return pair.kind;
    }
    return std::nullopt;
}

}  // namespace

WfsReport verify_wfs(const ClassPredicate& left, const ClassPredicate& right,
                     const std::vector<SetMap>& universe, std::optional<NamedWfs> factor_via,
                     const SearchBudget& budget) {
    WfsReport report;
    report.left_name = left.name();
    report.right_name = right.name();
    report.universe_bound = bound_of(universe);

    HomCache<SetCategory> cache(budget);
    std::vector<SetMap> left_members;
    std::vector<SetMap> right_members;
    for (const SetMap& u : universe) {
        if (left.contains(u)) left_members.push_back(u);
        if (right.contains(u)) right_members.push_back(u);
    }

    report.left_determined = true;
    for (const SetMap& u : universe) {
        std::optional<SetMap> blocking;
        for (const SetMap& r : right_members) {
            if (!has_llp<SetCategory>(u, r, cache)) {
                blocking = r;
                break;
            }
        }
        const bool lifts = !blocking.has_value();
        if (lifts == left.contains(u)) continue;
        report.left_determined = false;
        report.witnesses.push_back(
            {"left-membership", u, blocking,
             lifts ? "lifts against the whole right class but is not in the left class"
                   : "is in the left class but fails to lift"});
    }

    report.right_determined = true;
    for (const SetMap& u : universe) {
        std::optional<SetMap> blocking;
        for (const SetMap& l : left_members) {
            if (!has_llp<SetCategory>(l, u, cache)) {
                blocking = l;
                break;
            }
        }
        const bool lifts = !blocking.has_value();
        if (lifts == right.contains(u)) continue;
        report.right_determined = false;
        report.witnesses.push_back(
            {"right-membership", u, blocking,
             lifts ? "has the RLP against the whole left class but is not in the right class"
                   : "is in the right class but fails the RLP"});
    }

    std::optional<NamedWfs> via =
        factor_via ? factor_via : match_named_extensionally(left, right, universe);

    if (!report.left_determined || !report.right_determined) {
        // The pair is already refuted; grinding through small-object-argument
        // factorizations for a non-pair can blow up the middle sets.
        report.factorization_ok = false;
        report.witnesses.push_back({"factorization", universe.empty() ? maps::C() : universe[0],
                                    std::nullopt,
                                    "skipped: the lifting axioms already failed"});
        return report;
    }

    report.factorization_ok = true;
    for (const SetMap& u : universe) {
        std::optional<Factorization> fact;
        std::string detail;
        if (via) {
            fact = canonical_factorization(u, *via);
        } else {
            SoaFactorization soa = soa_factorize(u, left_members, budget);
            if (!soa.completed) {
                detail = "small object argument hit the stage cap";
            } else {
                fact = Factorization{soa.left, soa.right};
            }
        }
        if (fact) {
            if (!(compose(fact->right, fact->left) == u)) {
                detail = "factors do not compose to the arrow";
            } else if (!left.contains(fact->left)) {
                detail = "left factor escapes the left class";
            } else if (!right.contains(fact->right)) {
                detail = "right factor escapes the right class";
            }
        }
        if (!detail.empty()) {
            report.factorization_ok = false;
            report.witnesses.push_back({"factorization", u, std::nullopt, detail});
        }
    }
    return report;
}

// --- model structures ----------------------------------------------------

std::optional<TwoOfThreeWitness> find_two_of_three_violation(
    const MapClass& weq, const std::vector<SetMap>& universe) {
    for (const SetMap& u : universe) {
        for (const SetMap& v : universe) {
            if (u.codomain().size() != v.domain().size()) continue;
            for (const SetMap& sigma : bijections(u.codomain(), v.domain())) {
                SetMap first = compose(sigma, u);
                SetMap composite = compose(v, first);
                const int in_weq = int(weq.contains(first)) + int(weq.contains(v)) +
                                   int(weq.contains(composite));
                if (in_weq == 2) return TwoOfThreeWitness{first, v, composite};
            }
        }
    }
    return std::nullopt;
}

ModelStructureReport verify_model_structure(const ModelStructureSpec& spec,
                                            const std::vector<SetMap>& universe,
                                            const SearchBudget& budget) {
    ModelStructureReport report;
    report.name = spec.name;
    report.universe_bound = bound_of(universe);

    report.two_of_three_witness = find_two_of_three_violation(spec.weak_equivalences, universe);
    report.two_of_three_ok = !report.two_of_three_witness.has_value();

    report.retracts_ok = true;
    for (const SetMap& u : universe) {
        if (spec.weak_equivalences.contains(u)) continue;
        for (const SetMap& v : universe) {
            if (!spec.weak_equivalences.contains(v)) continue;
            if (is_retract(u, v)) {
                report.retracts_ok = false;
                report.retract_witness = {u, v};
                break;
            }
        }
        if (!report.retracts_ok) break;
    }

    report.trivial_cof_fib =
        verify_wfs(ClassPredicate(spec.cofibrations & spec.weak_equivalences),
                   ClassPredicate(spec.fibrations), universe, std::nullopt, budget);
    report.cof_trivial_fib =
        verify_wfs(ClassPredicate(spec.cofibrations),
                   ClassPredicate(spec.fibrations & spec.weak_equivalences), universe,
                   std::nullopt, budget);
    return report;
}

const std::vector<ModelStructureSpec>& nine_model_structures() {
    static const std::vector<ModelStructureSpec> structures = {
        {"(All, All, Iso)", cls(Tag::All), cls(Tag::All), cls(Tag::Iso)},
        {"(All, Iso|Empty, Iso|NonEmpty)", cls(Tag::All), cls(Tag::Iso) | cls(Tag::Empty),
         cls(Tag::Iso) | cls(Tag::NonEmpty)},
        {"(All, Iso, All)", cls(Tag::All), cls(Tag::Iso), cls(Tag::All)},
        {"(Iso, All, All)", cls(Tag::Iso), cls(Tag::All), cls(Tag::All)},
        {"(Epi, Mono, All)", cls(Tag::Epi), cls(Tag::Mono), cls(Tag::All)},
        {"(Mono, Epi, All)", cls(Tag::Mono), cls(Tag::Epi), cls(Tag::All)},
        {"(SplitMono, Epi|Empty, All)", cls(Tag::SplitMono), cls(Tag::Epi) | cls(Tag::Empty),
         cls(Tag::All)},
        {"(Iso|NonEmpty, Iso|Empty, All)", cls(Tag::Iso) | cls(Tag::NonEmpty),
         cls(Tag::Iso) | cls(Tag::Empty), cls(Tag::All)},
        {"(Mono, Epi|Empty, Iso|NonEmpty)", cls(Tag::Mono), cls(Tag::Epi) | cls(Tag::Empty),
         cls(Tag::Iso) | cls(Tag::NonEmpty)},
    };
    return structures;
}

bool cof_membership(const SetMap& f, const std::vector<SetMap>& generators,
                    const std::vector<SetMap>& universe, const SearchBudget& budget) {
    HomCache<SetCategory> cache(budget);
    for (const SetMap& p : rlp_members<SetCategory>(generators, universe, budget)) {
        if (!has_llp<SetCategory>(f, p, cache)) return false;
    }
    return true;
}

// --- the table -----------------------------------------------------------

std::vector<TableCellReport> last_nine_possibilities(const std::vector<SetMap>& universe,
                                                     const SearchBudget& budget) {
    const std::vector<NamedWfs> rows = {NamedWfs::IsoAll, NamedWfs::MonoEpi,
                                        NamedWfs::SplitMonoEpiOrEmpty};
    const std::vector<NamedWfs> cols = {NamedWfs::EpiMono, NamedWfs::AllIso,
                                        NamedWfs::IsoOrNonEmptyIsoOrEmpty};

    // Weak equivalences forced on the two-out-of-three cells, as in the
    // classification proof.
    const std::map<std::pair<int, int>, MapClass> forced_weq = {
        {{0, 0}, cls(Tag::Mono)},
        {{0, 2}, cls(Tag::Iso) | cls(Tag::Empty)},
        {{1, 1}, cls(Tag::Mono)},
        {{2, 1}, cls(Tag::SplitMono)},
    };
    // Inclusion obstructions: (trivial class, enclosing class).
    const std::map<std::pair<int, int>, std::pair<MapClass, MapClass>> inclusion = {
        {{1, 0}, {cls(Tag::Mono), cls(Tag::Epi)}},                   // triv cof vs cof
        {{1, 2}, {cls(Tag::Iso) | cls(Tag::Empty), cls(Tag::Epi)}},  // triv fib vs fib
        {{2, 0}, {cls(Tag::SplitMono), cls(Tag::Epi)}},              // triv cof vs cof
    };

    std::vector<TableCellReport> cells;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            TableCellReport cell;
            cell.row = rows[r];
            cell.col = cols[c];

            if (auto it = inclusion.find({r, c}); it != inclusion.end()) {
                const auto& [sub, super] = it->second;
                for (const SetMap& u : universe) {
                    if (sub.contains(u) && !super.contains(u)) {
                        cell.status = TableCellStatus::InclusionFailure;
                        cell.note = sub.name() + " is not contained in " + super.name();
                        cell.witnesses = {u};
                        break;
                    }
                }
            } else if (auto jt = forced_weq.find({r, c}); jt != forced_weq.end()) {
                if (auto witness = find_two_of_three_violation(jt->second, universe)) {
                    cell.status = TableCellStatus::TwoOfThreeFailure;
                    cell.note = "W = " + jt->second.name() + " fails two-out-of-three";
                    cell.witnesses = {witness->first, witness->second, witness->composite};
                }
            } else if (r == 2 && c == 2) {
                // Fib n W = Iso|Empty puts every empty-domain map into W, and
                // a composite through the empty set then forces any g into W
                // by two-out-of-three. A g in Cof = Iso|NonEmpty that is not
                // in Cof n W = SplitMono is the contradiction.
                const MapClass cof = cls(Tag::Iso) | cls(Tag::NonEmpty);
                for (const SetMap& g : universe) {
                    if (!cof.contains(g) || tag_holds(Tag::SplitMono, g)) continue;
                    SetMap into_domain = SetMap(FinSet(), g.domain(), {});
                    cell.status = TableCellStatus::ForcedWeakEquivalences;
                    cell.note =
                        "Iso|Empty inside W forces W = All by two-out-of-three, but then "
                        "Cof&W = " +
                        cof.name() + " differs from SplitMono";
                    cell.witnesses = {into_domain, g, compose(g, into_domain)};
                    break;
                }
            } else {
                // The surviving cell: verify the induced model structure.
                ModelStructureReport check = verify_model_structure(
                    {"(All, All, Iso)", cls(Tag::All), cls(Tag::All), cls(Tag::Iso)}, universe,
                    budget);
                if (check.passed()) {
                    cell.status = TableCellStatus::Possible;
                    cell.note = "realized by (Cof, Fib, W) = (All, All, Iso)";
                }
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace flowcalc
