#include "strat/laws.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

#include <algorithm>

namespace strat {

namespace {

std::vector<std::pair<std::string, std::string>> witness_base(const SigMorphism& phi,
                                                              const Model& mprime) {
    return {{"morphism", render_morphism(phi)}, {"model", render_model(mprime)}};
}

}  // namespace

Verdict check_satisfaction_condition(const SigMorphism& phi, const Model& mprime,
                                     const Sentence& rho) {
    Model red = mod_reduct(phi, mprime);
    auto wm = world_map(phi, mprime);
    Sentence trho = sen_translate(phi, rho);
    Evaluator evm(phi.cod, mprime);
    Evaluator evr(phi.dom, red);
    for (const auto& w : evm.world_list()) {
        bool lhs = evr.eval(rho, wm.at(w));
        bool rhs = evm.eval(trho, w);
        if (lhs != rhs) {
            auto wit = witness_base(phi, mprime);
            wit.emplace_back("sentence", render_sentence(rho));
            wit.emplace_back("world", render_world(w));
            return Verdict::fail("satisfaction_condition",
                                 "reduct and translation disagree", std::move(wit));
        }
    }
    return Verdict::ok("satisfaction_condition", 1);
}

Verdict check_surjectivity(const SigMorphism& phi, const Model& mprime) {
    Model red = mod_reduct(phi, mprime);
    auto wm = world_map(phi, mprime);
    std::set<WorldId> image;
    for (const auto& [w, v] : wm) image.insert(v);
    for (const auto& w : worlds(phi.dom, red)) {
        if (!image.count(w)) {
            auto wit = witness_base(phi, mprime);
            wit.emplace_back("world", render_world(w));
            return Verdict::fail("surjectivity", "world not in the image of the world map",
                                 std::move(wit));
        }
    }
    return Verdict::ok("surjectivity", 1);
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

// Morphisms grouped by codomain signature, with each group's sentence
// families precomputed, so each codomain model is enumerated exactly once.
struct MorphismGroup {
    Signature cod;
    struct Entry {
        SigMorphism phi;
        std::vector<Sentence> sentences;    // over phi.dom
        std::vector<Sentence> translated;   // over phi.cod
    };
    std::vector<Entry> entries;
};

std::vector<MorphismGroup> group_morphisms(LogicId logic, const Bounds& b, bool with_sentences) {
    std::vector<MorphismGroup> out;
    auto sigs = enum_signatures(logic, b);
    std::map<Signature, std::vector<Sentence>> families;
    for (const auto& cod : sigs) {
        MorphismGroup g;
        g.cod = cod;
        for (const auto& dom : sigs) {
            for (auto& phi : enum_morphisms_between(dom, cod)) {
                MorphismGroup::Entry e;
                e.phi = std::move(phi);
                if (with_sentences) {
                    auto it = families.find(dom);
                    if (it == families.end())
                        it = families.emplace(dom, enum_sentences(dom, b)).first;
                    e.sentences = it->second;
                    for (const auto& s : e.sentences)
                        e.translated.push_back(sen_translate(e.phi, s));
                }
                g.entries.push_back(std::move(e));
            }
        }
        if (!g.entries.empty()) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace

Verdict sweep_satisfaction_condition(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("satisfaction_condition");
    auto groups = group_morphisms(logic, b, true);
    for (const auto& g : groups) {
        bool ok = true;
        Verdict failure = Verdict::ok("satisfaction_condition");
        enum_models(g.cod, b, [&](const Model& mprime) {
            Evaluator evm(g.cod, mprime);
            auto mworlds = evm.world_list();
            for (const auto& e : g.entries) {
                Model red = mod_reduct(e.phi, mprime);
                auto wm = world_map(e.phi, mprime);
                Evaluator evr(e.phi.dom, red);
                // index remap: bit j of the codomain mask corresponds to bit
                // jmap[j] of the reduct mask
                const auto& rworlds = evr.world_list();
                std::map<WorldId, int> ridx;
                int k = 0;
                for (const auto& w : rworlds) ridx[w] = k++;
                std::vector<int> jmap;
                for (const auto& w : mworlds) jmap.push_back(ridx.at(wm.at(w)));
                for (size_t i = 0; i < e.sentences.size(); ++i) {
                    std::uint64_t mm = evm.eval_mask(e.translated[i]);
                    std::uint64_t mr = evr.eval_mask(e.sentences[i]);
                    std::uint64_t remapped = 0;
                    for (size_t j = 0; j < jmap.size(); ++j)
                        remapped |= ((mr >> jmap[j]) & 1ull) << j;
                    total.instances += static_cast<long>(mworlds.size());
                    if (mm != remapped) {
                        // locate the offending world for the witness
                        for (size_t j = 0; j < jmap.size(); ++j) {
                            if (((mm >> j) & 1) != ((remapped >> j) & 1)) {
                                auto wit = witness_base(e.phi, mprime);
                                wit.emplace_back("sentence", render_sentence(e.sentences[i]));
                                wit.emplace_back("world", render_world(mworlds[j]));
                                failure = Verdict::fail("satisfaction_condition",
                                                        "reduct and translation disagree",
                                                        std::move(wit));
                                break;
                            }
                        }
                        ok = false;
                        return false;
                    }
                }
            }
            return true;
        });
        if (!ok) return total.merge(failure), total;
    }
    return total;
}

Verdict sweep_functor_laws(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("functor_laws");
    auto sigs = enum_signatures(logic, b);
    std::map<Signature, std::vector<Sentence>> families;
    auto family = [&](const Signature& s) -> const std::vector<Sentence>& {
        auto it = families.find(s);
        if (it == families.end()) it = families.emplace(s, enum_sentences(s, b)).first;
        return it->second;
    };
    for (const auto& sig : sigs) {
        // identities
        SigMorphism idm = identity_morphism(sig);
        for (const auto& s : family(sig)) {
            ++total.instances;
            if (!sen_equal(sen_translate(idm, s), s))
                return total.merge(Verdict::fail(
                           "functor_laws", "Sen(id) changed a sentence",
                           {{"sentence", render_sentence(s)}})),
                       total;
        }
        enum_models(sig, b, [&](const Model& m) {
            ++total.instances;
            if (mod_reduct(idm, m) != m) {
                total.merge(Verdict::fail("functor_laws", "Mod(id) changed a model",
                                          {{"model", render_model(m)}}));
                return false;
            }
            return true;
        });
        if (!total.pass) return total;
    }
    // composites
    for (const auto& s1 : sigs)
        for (const auto& s2 : sigs)
            for (const auto& phi : enum_morphisms_between(s1, s2))
                for (const auto& s3 : sigs)
                    for (const auto& psi : enum_morphisms_between(s2, s3)) {
                        SigMorphism comp = compose(phi, psi);
                        for (const auto& s : family(s1)) {
                            ++total.instances;
                            if (!sen_equal(sen_translate(comp, s),
                                           sen_translate(psi, sen_translate(phi, s))))
                                return total.merge(Verdict::fail(
                                           "functor_laws", "Sen does not respect composition",
                                           {{"sentence", render_sentence(s)},
                                            {"first", render_morphism(phi)},
                                            {"second", render_morphism(psi)}})),
                                       total;
                        }
                        bool ok = true;
                        enum_models(s3, b, [&](const Model& m) {
                            ++total.instances;
                            if (mod_reduct(comp, m) != mod_reduct(phi, mod_reduct(psi, m))) {
                                total.merge(Verdict::fail(
                                    "functor_laws", "Mod does not respect composition",
                                    {{"model", render_model(m)},
                                     {"first", render_morphism(phi)},
                                     {"second", render_morphism(psi)}}));
                                ok = false;
                                return false;
                            }
                            return true;
                        });
                        if (!ok) return total;
                    }
    return total;
}

Verdict sweep_stratification(LogicId logic, const Bounds& b, const WorldMapFn* wmf) {
    Verdict total = Verdict::ok("stratification_laws");
    auto wmap = [&](const SigMorphism& phi, const Model& m) {
        return wmf ? (*wmf)(phi, m) : world_map(phi, m);
    };
    auto sigs = enum_signatures(logic, b);

    // [[M]]_id = id and compositionality  [[M'']]_{phi;psi} = [[M'']]_psi ; [[Mod(psi)M'']]_phi.
    for (const auto& sig : sigs) {
        SigMorphism idm = identity_morphism(sig);
        bool ok = true;
        enum_models(sig, b, [&](const Model& m) {
            ++total.instances;
            for (const auto& [w, v] : wmap(idm, m))
                if (!(w == v)) {
                    total.merge(Verdict::fail("stratification_laws",
                                              "identity morphism has non-identity world map",
                                              {{"model", render_model(m)},
                                               {"world", render_world(w)}}));
                    ok = false;
                    return false;
                }
            return true;
        });
        if (!ok) return total;
    }
    for (const auto& s1 : sigs)
        for (const auto& s2 : sigs)
            for (const auto& phi : enum_morphisms_between(s1, s2))
                for (const auto& s3 : sigs)
                    for (const auto& psi : enum_morphisms_between(s2, s3)) {
                        SigMorphism comp = compose(phi, psi);
                        bool ok = true;
                        enum_models(s3, b, [&](const Model& mpp) {
                            ++total.instances;
                            auto direct = wmap(comp, mpp);
                            auto via_psi = wmap(psi, mpp);
                            auto via_phi = wmap(phi, mod_reduct(psi, mpp));
                            for (const auto& [w, v] : direct) {
                                if (!(via_phi.at(via_psi.at(w)) == v)) {
                                    total.merge(Verdict::fail(
                                        "stratification_laws", "world maps do not compose",
                                        {{"model", render_model(mpp)},
                                         {"first", render_morphism(phi)},
                                         {"second", render_morphism(psi)},
                                         {"world", render_world(w)}}));
                                    ok = false;
                                    return false;
                                }
                            }
                            return true;
                        });
                        if (!ok) return total;
                    }

    // Naturality against homomorphisms:
    // [[h']] ; [[N']]_phi = [[M']]_phi ; [[Mod(phi)h']].
    for (const auto& s1 : sigs)
        for (const auto& s2 : sigs)
            for (const auto& phi : enum_morphisms_between(s1, s2)) {
                auto models = enum_models_vec(s2, b);
                for (const auto& m : models)
                    for (const auto& n : models)
                        for (const auto& h : enum_homs(s2, m, n)) {
                            ++total.instances;
                            Model rm = mod_reduct(phi, m);
                            Model rn = mod_reduct(phi, n);
                            ModelHom rh = hom_reduct(phi, h);
                            if (!hom_check(s1, rh, rm, rn)) {
                                total.merge(Verdict::fail(
                                    "stratification_laws", "reduct of a hom is not a hom",
                                    {{"morphism", render_morphism(phi)},
                                     {"hom", render_hom(h)},
                                     {"model", render_model(m)}}));
                                return total;
                            }
                            auto top = hom_world_map(s2, h, m, n);
                            auto bottom = hom_world_map(s1, rh, rm, rn);
                            auto wm_m = wmap(phi, m);
                            auto wm_n = wmap(phi, n);
                            for (const auto& w : worlds(s2, m)) {
                                ++total.instances;
                                if (!(wm_n.at(top.at(w)) == bottom.at(wm_m.at(w)))) {
                                    total.merge(Verdict::fail(
                                        "stratification_laws",
                                        "hom naturality square does not commute",
                                        {{"morphism", render_morphism(phi)},
                                         {"hom", render_hom(h)},
                                         {"model", render_model(m)},
                                         {"world", render_world(w)}}));
                                    return total;
                                }
                            }
                        }
            }
    return total;
}

Verdict sweep_strictness(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("strictness");
    bool expect_strict = info(logic).strict;
    bool found_nonidentity = false;
    auto sigs = enum_signatures(logic, b);
    for (const auto& s1 : sigs)
        for (const auto& s2 : sigs)
            for (const auto& phi : enum_morphisms_between(s1, s2)) {
                bool ok = true;
                enum_models(s2, b, [&](const Model& m) {
                    ++total.instances;
                    for (const auto& [w, v] : world_map(phi, m)) {
                        if (!(w == v)) {
                            found_nonidentity = true;
                            if (expect_strict) {
                                total.merge(Verdict::fail(
                                    "strictness", "strict logic has a non-identity world map",
                                    {{"morphism", render_morphism(phi)},
                                     {"model", render_model(m)},
                                     {"world", render_world(w)}}));
                                ok = false;
                                return false;
                            }
                        }
                    }
                    return true;
                });
                if (!ok) return total;
            }
    if (!expect_strict && !found_nonidentity)
        return total.merge(Verdict::fail(
                   "strictness",
                   "logic registered as non-strict but no non-identity world map found")),
               total;
    return total;
}

Verdict sweep_surjectivity(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("surjectivity");
    for (const auto& g : group_morphisms(logic, b, false)) {
        bool ok = true;
        enum_models(g.cod, b, [&](const Model& m) {
            for (const auto& e : g.entries) {
                auto v = check_surjectivity(e.phi, m);
                total.merge(v);
                if (!v.pass) {
                    ok = false;
                    return false;
                }
            }
            return true;
        });
        if (!ok) return total;
    }
    return total;
}

Verdict sweep_iso_preservation(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("iso_preservation");
    for (const auto& sig : enum_signatures(logic, b)) {
        auto sentences = enum_sentences(sig, b);
        auto models = enum_models_vec(sig, b);
        for (const auto& m : models) {
            for (const auto& n : models) {
                for (const auto& h : enum_homs(sig, m, n)) {
                    if (!iso_check(sig, h, m, n)) continue;
                    auto hw = hom_world_map(sig, h, m, n);
                    Evaluator evm(sig, m);
                    Evaluator evn(sig, n);
                    for (const auto& s : sentences) {
                        for (const auto& w : evm.world_list()) {
                            ++total.instances;
                            if (evm.eval(s, w) != evn.eval(s, hw.at(w))) {
                                total.merge(Verdict::fail(
                                    "iso_preservation",
                                    "isomorphism does not preserve satisfaction",
                                    {{"model", render_model(m)},
                                     {"iso", render_hom(h)},
                                     {"sentence", render_sentence(s)},
                                     {"world", render_world(w)}}));
                                return total;
                            }
                        }
                    }
                }
            }
        }
    }
    return total;
}

}  // namespace strat
