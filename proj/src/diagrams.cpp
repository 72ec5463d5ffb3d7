#include "strat/diagrams.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

#include <algorithm>

namespace strat {

// ---------------------------------------------------------------------------
// Nominals extraction and hybrid connectives
// ---------------------------------------------------------------------------

bool has_nominals_extraction(LogicId logic) {
    return logic == LogicId::HPL || logic == LogicId::HFOL;
}

Nominals nominals_extract(const Signature& sig, const Model& m) {
    if (!has_nominals_extraction(sig.logic))
        throw MalformedInput("logic has no nominals extraction: " + info(sig.logic).name);
    Nominals out;
    out.noms = sig.noms;
    out.worlds = m.kripke().worlds;
    out.interp = m.kripke().noms;
    return out;
}

Nominals nominals_via_decomposition(const Decomposition& d, const Signature& sig, const Model& m) {
    if (!info(d.upper).noms)
        throw MalformedInput("frame component has no constants to read: " + d.id);
    if (sig.logic != d.upper) throw MalformedInput("signature logic does not match " + d.id);
    Model frame = decompose(d, sig, m).first;
    Nominals out;
    out.noms = sig.noms;
    out.worlds = frame.fo().carrier;
    for (const auto& i : sig.noms) out.interp[i] = frame.fo().funcs.at(i).at({});
    return out;
}

Sentence nominal_sentence(const Signature& sig, const std::string& i) {
    if (!info(sig.logic).noms) throw MalformedInput("nominal sentence in " + info(sig.logic).name);
    if (!sig.noms.count(i)) throw MalformedInput("unknown nominal: " + i);
    return mk_nom(i);
}

Sentence at_sentence(const Signature& sig, const std::string& i, Sentence rho) {
    if (!info(sig.logic).noms) throw MalformedInput("@ connective in " + info(sig.logic).name);
    if (!sig.noms.count(i)) throw MalformedInput("unknown nominal: " + i);
    return mk_at(i, std::move(rho));
}

// ---------------------------------------------------------------------------
// Elementary extensions and diagram sets
// ---------------------------------------------------------------------------

namespace {

std::set<std::string> signature_names(const Signature& sig) {
    std::set<std::string> s(sig.props.begin(), sig.props.end());
    s.insert(sig.noms.begin(), sig.noms.end());
    s.insert(sig.vars.begin(), sig.vars.end());
    for (const auto& [k, v] : sig.mods) s.insert(k);
    for (const auto& [k, v] : sig.funcs) s.insert(k);
    for (const auto& [k, v] : sig.preds) s.insert(k);
    return s;
}

std::string fresh_name(std::string want, std::set<std::string>& taken) {
    while (taken.count(want)) want += "'";
    taken.insert(want);
    return want;
}

SigMorphism inclusion(const Signature& dom, Signature cod) {
    SigMorphism phi;
    phi.dom = dom;
    phi.cod = std::move(cod);
    for (const auto& p : dom.props) phi.props[p] = p;
    for (const auto& i : dom.noms) phi.noms[i] = i;
    for (const auto& [mn, ar] : dom.mods) phi.mods[mn] = mn;
    for (const auto& [fn, ar] : dom.funcs) phi.funcs[fn] = fn;
    for (const auto& [pn, ar] : dom.preds) phi.preds[pn] = pn;
    return phi;
}

// The generating atoms of an FO model over its self-naming constants: one
// equation per function-table entry and one relational atom per tuple.
std::vector<Sentence> fo_atoms(const Signature& bsig, const FOModel& fo,
                               const std::map<std::string, std::string>& elem) {
    std::vector<Sentence> out;
    for (const auto& [fn, ar] : bsig.funcs) {
        for (const auto& [args, val] : fo.funcs.at(fn)) {
            std::vector<Term> ts;
            for (const auto& a : args) ts.push_back(Term{elem.at(a), {}});
            out.push_back(mk_eq(Term{fn, std::move(ts)}, Term{elem.at(val), {}}));
        }
    }
    for (const auto& [pn, ar] : bsig.preds) {
        for (const auto& tup : fo.preds.at(pn)) {
            std::vector<Term> ts;
            for (const auto& a : tup) ts.push_back(Term{elem.at(a), {}});
            out.push_back(mk_pred(pn, std::move(ts)));
        }
    }
    return out;
}

void sort_unique(std::vector<Sentence>& v) {
    std::sort(v.begin(), v.end(), sen_less);
    v.erase(std::unique(v.begin(), v.end(), sen_equal), v.end());
}

// Only the constant-bearing relational fragments: the extension adds
// constants, which rel and brel signatures do not admit.
bool is_frame_fragment(LogicId logic) {
    return logic == LogicId::RELC || logic == LogicId::BRELC;
}

Signature fol_part(const Signature& sig) {
    Signature out;
    out.logic = LogicId::FOL;
    out.funcs = sig.funcs;
    out.preds = sig.preds;
    return out;
}

const std::vector<std::string>& shared_carrier(const KripkeModel& km) {
    static const std::vector<std::string> empty;
    return km.fbase.empty() ? empty : km.fbase.begin()->second.carrier;
}

}  // namespace

bool has_diagrams(LogicId logic) {
    return logic == LogicId::PL || logic == LogicId::FOL || is_frame_fragment(logic) ||
           logic == LogicId::HPL || logic == LogicId::HFOL;
}

DiagramPackage diagram(const Signature& sig, const Model& m) {
    require_valid(validate_model(sig, m));
    if (!has_diagrams(sig.logic))
        throw MalformedInput("diagrams unsupported for " + info(sig.logic).name);

    DiagramPackage pkg;
    if (sig.logic == LogicId::PL) {
        pkg.iota = identity_morphism(sig);
        for (const auto& p : m.pl().val) pkg.E.push_back(mk_prop(p));
    } else if (sig.logic == LogicId::FOL || is_frame_fragment(sig.logic)) {
        // Carrier elements become fresh constants; frame fragments use the
        // world prefix so that the frame projection of a stratified diagram
        // extension is again a frame diagram extension.
        const std::string prefix = is_frame_fragment(sig.logic) ? "w$" : "e$";
        std::set<std::string> taken = signature_names(sig);
        Signature cod = sig;
        for (const auto& x : m.fo().carrier) {
            std::string n = fresh_name(prefix + x, taken);
            cod.funcs[n] = 0;
            pkg.elem[x] = n;
        }
        pkg.iota = inclusion(sig, std::move(cod));
        pkg.E = fo_atoms(sig, m.fo(), pkg.elem);
    } else {  // hpl / hfol
        const KripkeModel& km = m.kripke();
        std::set<std::string> taken = signature_names(sig);
        Signature cod = sig;
        for (const auto& w : km.worlds) {
            std::string n = fresh_name("w$" + w, taken);
            cod.noms.insert(n);
            pkg.denote[w] = n;
        }
        if (sig.logic == LogicId::HFOL) {
            for (const auto& x : shared_carrier(km)) {
                std::string n = fresh_name("e$" + x, taken);
                cod.funcs[n] = 0;
                pkg.elem[x] = n;
            }
        }
        pkg.iota = inclusion(sig, std::move(cod));
        for (const auto& tup : km.rels.at("lambda"))
            pkg.E.push_back(mk_at(pkg.denote.at(tup[0]),
                                  mk_modal("lambda", {mk_nom(pkg.denote.at(tup[1]))})));
        // Anchor the signature nominals to the worlds they denote.
        for (const auto& [i, w] : km.noms) pkg.E.push_back(mk_at(i, mk_nom(pkg.denote.at(w))));
        if (sig.logic == LogicId::HPL) {
            for (const auto& [w, ps] : km.pval)
                for (const auto& p : ps) pkg.E.push_back(mk_at(pkg.denote.at(w), mk_prop(p)));
        } else {
            Signature bsig = fol_part(sig);
            for (const auto& [w, fo] : km.fbase)
                for (const auto& s : fo_atoms(bsig, fo, pkg.elem))
                    pkg.E.push_back(mk_at(pkg.denote.at(w), s));
        }
    }
    sort_unique(pkg.E);
    for (const auto& s : pkg.E) require_valid(validate_sentence(pkg.iota.cod, s));
    return pkg;
}

SigMorphism elementary_extension(const Signature& sig, const Model& m) {
    return diagram(sig, m).iota;
}

DiagramPackage sharp_diagram(const Signature& sig, const SharpModel& m) {
    if (!info(sig.logic).noms)
        throw MalformedInput("pointed diagrams need nominal sentences: " + info(sig.logic).name);
    DiagramPackage pkg = diagram(sig, m.model);
    auto it = pkg.denote.find(m.world.name);
    if (it == pkg.denote.end()) throw PreconditionError("point is not a world of the model");
    pkg.world_sentence = mk_nom(it->second);
    return pkg;
}

// ---------------------------------------------------------------------------
// The correspondence E-models <-> homomorphisms
// ---------------------------------------------------------------------------

bool diagram_holds(const DiagramPackage& pkg, const Model& nprime) {
    const Signature& sigM = pkg.iota.cod;
    if (info(sigM.logic).kripke) {
        Evaluator ev(sigM, nprime);
        const size_t n = ev.world_list().size();
        const std::uint64_t all = n == 64 ? ~0ull : ((1ull << n) - 1);
        for (const auto& s : pkg.E)
            if (ev.eval_mask(s) != all) return false;
        return true;
    }
    for (const auto& s : pkg.E)
        if (!base_satisfies(sigM, nprime, s)) return false;
    return true;
}

ModelHom diagram_forward(const Signature& sig, const Model& m, const DiagramPackage& pkg,
                         const Model& nprime) {
    if (!diagram_holds(pkg, nprime))
        throw PreconditionError("model does not satisfy the diagram");
    ModelHom h;
    if (sig.logic == LogicId::PL) return h;
    if (sig.logic == LogicId::FOL || is_frame_fragment(sig.logic)) {
        for (const auto& [x, cn] : pkg.elem) h.h0[x] = nprime.fo().funcs.at(cn).at({});
        return h;
    }
    const KripkeModel& nk = nprime.kripke();
    for (const auto& [w, nn] : pkg.denote) h.h0[w] = nk.noms.at(nn);
    if (sig.logic == LogicId::HFOL && !m.kripke().worlds.empty()) {
        const FOModel& any = nk.fbase.begin()->second;
        for (const auto& [x, cn] : pkg.elem) h.hbase[x] = any.funcs.at(cn).at({});
    }
    return h;
}

Model diagram_backward(const Signature& sig, const Model& m, const DiagramPackage& pkg,
                       const ModelHom& h, const Model& n) {
    if (!hom_check(sig, h, m, n)) throw PreconditionError("not a homomorphism");
    Model out = n;
    if (sig.logic == LogicId::PL) return out;
    if (sig.logic == LogicId::FOL || is_frame_fragment(sig.logic)) {
        for (const auto& [x, cn] : pkg.elem) out.fo().funcs[cn][{}] = h.h0.at(x);
        return out;
    }
    KripkeModel& ok = out.kripke();
    for (const auto& [w, nn] : pkg.denote) ok.noms[nn] = h.h0.at(w);
    if (sig.logic == LogicId::HFOL) {
        for (auto& [v, fo] : ok.fbase)
            for (const auto& [x, cn] : pkg.elem) fo.funcs[cn][{}] = h.hbase.at(x);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bijection sweeps
// ---------------------------------------------------------------------------

Verdict check_diagram_iso(const Signature& sig, const Model& m, const Bounds& b) {
    DiagramPackage pkg = diagram(sig, m);
    const Signature& sigM = pkg.iota.cod;
    Verdict total = Verdict::ok("diagram_iso");

    long emodels = 0;
    bool ok = true;
    enum_models(sigM, b, [&](const Model& np) {
        if (!diagram_holds(pkg, np)) return true;
        ++emodels;
        ModelHom h = diagram_forward(sig, m, pkg, np);
        Model n = mod_reduct(pkg.iota, np);
        if (!hom_check(sig, h, m, n)) {
            total.merge(Verdict::fail("diagram_iso", "forward image is not a homomorphism",
                                      {{"model", render_model(np)}}));
            ok = false;
            return false;
        }
        if (diagram_backward(sig, m, pkg, h, n) != np) {
            total.merge(Verdict::fail("diagram_iso", "backward(forward) differs from the model",
                                      {{"model", render_model(np)}}));
            ok = false;
            return false;
        }
        return true;
    });
    if (!ok) return total;

    long homs = 0;
    enum_models(sig, b, [&](const Model& n) {
        for (const auto& h : enum_homs(sig, m, n)) {
            ++homs;
            Model np = diagram_backward(sig, m, pkg, h, n);
            if (!diagram_holds(pkg, np) || mod_reduct(pkg.iota, np) != n ||
                diagram_forward(sig, m, pkg, np) != h) {
                total.merge(Verdict::fail("diagram_iso",
                                          "forward(backward) differs from the homomorphism",
                                          {{"codomain", render_model(n)}, {"hom", render_hom(h)}}));
                ok = false;
                return false;
            }
        }
        return true;
    });
    if (!ok) return total;
    if (emodels != homs)
        return Verdict::fail("diagram_iso", "diagram models and homomorphisms do not biject",
                             {{"diagram_models", std::to_string(emodels)},
                              {"homomorphisms", std::to_string(homs)}});
    total.instances += emodels + homs;
    return total;
}

Verdict check_sharp_diagram_iso(const Signature& sig, const SharpModel& m, const Bounds& b) {
    DiagramPackage pkg = sharp_diagram(sig, m);
    const Signature& sigM = pkg.iota.cod;
    Verdict total = Verdict::ok("sharp_diagram_iso");

    long pointed = 0;
    bool ok = true;
    enum_models(sigM, b, [&](const Model& np) {
        if (!diagram_holds(pkg, np)) return true;
        for (const auto& v : worlds(sigM, np)) {
            if (!satisfies(sigM, np, v, *pkg.world_sentence)) continue;
            ++pointed;
            ModelHom h = diagram_forward(sig, m.model, pkg, np);
            Model n = mod_reduct(pkg.iota, np);
            if (!hom_check(sig, h, m.model, n) || h.h0.at(m.world.name) != v.name ||
                diagram_backward(sig, m.model, pkg, h, n) != np) {
                total.merge(Verdict::fail("sharp_diagram_iso",
                                          "pointed diagram model does not match its homomorphism",
                                          {{"model", render_model(np)}, {"world", v.name}}));
                ok = false;
                return false;
            }
        }
        return true;
    });
    if (!ok) return total;

    long homs = 0;
    enum_models(sig, b, [&](const Model& n) {
        for (const auto& h : enum_homs(sig, m.model, n)) {
            ++homs;
            Model np = diagram_backward(sig, m.model, pkg, h, n);
            WorldId v = WorldId::of(h.h0.at(m.world.name));
            if (!diagram_holds(pkg, np) || !satisfies(sigM, np, v, *pkg.world_sentence) ||
                diagram_forward(sig, m.model, pkg, np) != h) {
                total.merge(Verdict::fail("sharp_diagram_iso",
                                          "pointed homomorphism does not match its diagram model",
                                          {{"codomain", render_model(n)}, {"hom", render_hom(h)}}));
                ok = false;
                return false;
            }
        }
        return true;
    });
    if (!ok) return total;
    if (pointed != homs)
        return Verdict::fail("sharp_diagram_iso",
                             "pointed diagram models and homomorphisms do not biject",
                             {{"diagram_models", std::to_string(pointed)},
                              {"homomorphisms", std::to_string(homs)}});
    total.instances += pointed + homs;
    return total;
}

// ---------------------------------------------------------------------------
// Composed diagrams
// ---------------------------------------------------------------------------

Verdict check_composed_diagram(const Decomposition& d, const Signature& sig, const Model& m) {
    if (sig.logic != d.upper) throw PreconditionError("model is not in the decomposed logic");
    DiagramPackage pkg = diagram(sig, m);
    const Signature& sigM = pkg.iota.cod;

    auto parts = decompose(d, sig, m);
    Signature fsig = d.phi0(sig);
    DiagramPackage fpkg = diagram(fsig, parts.first);

    std::vector<Sentence> composed;
    for (const auto& s : fpkg.E) {
        auto t = d.alpha0(sigM, s);
        if (!t) throw PreconditionError("decomposition has no frame sentence translation");
        composed.push_back(*t);
    }
    const Base& base = find_base(d.base_id);
    Signature bsig = base.phi(sig);
    for (const auto& w : m.kripke().worlds) {
        const std::string& nn = fpkg.elem.at(w);
        if (!sigM.noms.count(nn))
            return Verdict::fail("composed_diagram", "frame constant is not a nominal of the extension",
                                 {{"name", nn}});
        Model bw = base.beta(sig, m, WorldId::of(w));
        DiagramPackage bpkg = diagram(bsig, bw);
        for (const auto& s : bpkg.E) {
            auto t = base.alpha(sigM, s);
            if (!t) throw PreconditionError("base has no sentence translation");
            composed.push_back(mk_at(nn, *t));
        }
    }
    sort_unique(composed);
    for (const auto& s : composed) require_valid(validate_sentence(sigM, s));

    if (composed.size() != pkg.E.size() ||
        !std::equal(composed.begin(), composed.end(), pkg.E.begin(), sen_equal)) {
        auto render_all = [](const std::vector<Sentence>& v) {
            std::string out;
            for (const auto& s : v) out += render_sentence(s) + "; ";
            return out;
        };
        return Verdict::fail("composed_diagram", "composed and direct diagram sets differ",
                             {{"direct", render_all(pkg.E)}, {"composed", render_all(composed)}});
    }
    Verdict total = Verdict::ok("composed_diagram");
    total.instances = static_cast<long>(pkg.E.size()) + 1;
    return total;
}

// ---------------------------------------------------------------------------
// Coherence of base diagrams over constrained families
// ---------------------------------------------------------------------------

namespace {

// Expand a family model over the base signature to the diagram signature by
// interpreting each added constant with its image under the carrier map.
Model expand_family(const Base& base, const Model& n,
                    const std::map<std::string, std::string>& elem,
                    const std::map<std::string, std::string>& carrier_map) {
    Model out = n;
    if (base.tilde == LogicId::TildeFOL) {
        for (auto& [v, fo] : out.kripke().fbase)
            for (const auto& [x, cn] : elem) fo.funcs[cn][{}] = carrier_map.at(x);
    }
    return out;
}

}  // namespace

Verdict check_coherence(const Base& base, const Signature& base_sig, const Model& t,
                        const Bounds& b) {
    if (base_sig.logic != base.base)
        throw PreconditionError("family signature is not in the base institution");
    Signature tsig = base_sig;
    tsig.logic = base.tilde;
    require_valid(validate_model(tsig, t));
    const ConstraintPredicate& c = find_constraint(base.constraint_id);
    if (!c.model_ok(tsig, t)) throw PreconditionError("family violates the registered constraint");

    Verdict total = Verdict::ok("coherence");
    const auto& W = t.kripke().worlds;
    std::vector<Model> parts;
    std::vector<DiagramPackage> pkgs;
    for (const auto& w : W) {
        parts.push_back(counit(base, t, WorldId::of(w)));
        pkgs.push_back(diagram(base_sig, parts.back()));
    }

    // Condition 1: the per-world elementary extensions all coincide.
    for (size_t k = 1; k < pkgs.size(); ++k)
        if (pkgs[k].iota != pkgs[0].iota)
            return Verdict::fail("coherence", "per-world elementary extensions differ",
                                 {{"world_a", W[0]}, {"world_b", W[k]}});
    total.instances += static_cast<long>(W.size());

    Signature bsigB = W.empty() ? base_sig : pkgs[0].iota.cod;
    Signature tsigB = bsigB;
    tsigB.logic = base.tilde;
    const std::map<std::string, std::string> no_elem;
    const auto& elem = W.empty() ? no_elem : pkgs[0].elem;
    SigMorphism tilde_iota = inclusion(tsig, tsigB);

    // Condition 2, direction one: every family diagram model yields a
    // constrained homomorphism and round-trips.
    long dmodels = 0;
    bool ok = true;
    enum_models(tsigB, b, [&](const Model& np) {
        if (!c.model_ok(tsigB, np)) return true;
        const auto& V = np.kripke().worlds;
        if (!W.empty() && V.empty()) return true;
        // All functions f : W -> V.
        std::vector<size_t> idx(W.size(), 0);
        for (;;) {
            bool sat = true;
            for (size_t k = 0; k < W.size() && sat; ++k) {
                Model piece = counit(base, np, WorldId::of(V[idx[k]]));
                for (const auto& s : pkgs[k].E)
                    if (!base_satisfies(bsigB, piece, s)) {
                        sat = false;
                        break;
                    }
            }
            if (sat) {
                ++dmodels;
                ModelHom h;
                std::map<std::string, std::string> carrier_map;
                if (base.tilde == LogicId::TildeFOL && !W.empty()) {
                    const FOModel& any = np.kripke().fbase.begin()->second;
                    for (const auto& [x, cn] : elem) carrier_map[x] = any.funcs.at(cn).at({});
                }
                for (size_t k = 0; k < W.size(); ++k) {
                    h.h0[W[k]] = V[idx[k]];
                    if (base.tilde == LogicId::TildeFOL) h.hworld[W[k]] = carrier_map;
                }
                Model n = mod_reduct(tilde_iota, np);
                if (!hom_check(tsig, h, t, n) || !c.hom_ok(tsig, h, t, n) ||
                    expand_family(base, n, elem, carrier_map) != np) {
                    total.merge(Verdict::fail(
                        "coherence", "family diagram model does not yield a constrained hom",
                        {{"model", render_model(np)}}));
                    ok = false;
                    return false;
                }
            }
            size_t k = W.size();
            while (k > 0) {
                if (++idx[k - 1] < V.size()) break;
                idx[k - 1] = 0;
                --k;
            }
            if (k == 0) break;
        }
        return true;
    });
    if (!ok) return total;

    // Direction two: every constrained homomorphism yields a family diagram
    // model and round-trips.
    long chom = 0;
    enum_models(tsig, b, [&](const Model& n) {
        if (!c.model_ok(tsig, n)) return true;
        for (const auto& h : enum_homs(tsig, t, n)) {
            if (!c.hom_ok(tsig, h, t, n)) continue;
            ++chom;
            std::map<std::string, std::string> carrier_map;
            if (base.tilde == LogicId::TildeFOL && !W.empty()) carrier_map = h.hworld.at(W[0]);
            Model np = expand_family(base, n, elem, carrier_map);
            bool sat = c.model_ok(tsigB, np);
            for (size_t k = 0; k < W.size() && sat; ++k) {
                Model piece = counit(base, np, WorldId::of(h.h0.at(W[k])));
                for (const auto& s : pkgs[k].E)
                    if (!base_satisfies(bsigB, piece, s)) {
                        sat = false;
                        break;
                    }
            }
            if (!sat || mod_reduct(tilde_iota, np) != n) {
                total.merge(Verdict::fail(
                    "coherence", "constrained hom does not yield a family diagram model",
                    {{"codomain", render_model(n)}, {"hom", render_hom(h)}}));
                ok = false;
                return false;
            }
        }
        return true;
    });
    if (!ok) return total;
    if (dmodels != chom)
        return Verdict::fail("coherence", "family diagram models and constrained homs do not biject",
                             {{"diagram_models", std::to_string(dmodels)},
                              {"homomorphisms", std::to_string(chom)}});
    total.instances += dmodels + chom;
    return total;
}

// ---------------------------------------------------------------------------
// Denoting the stratification
// ---------------------------------------------------------------------------

Verdict check_denotes_stratification(const Decomposition& d, const Signature& sig,
                                     const Model& m, const Bounds& b) {
    if (sig.logic != d.upper) throw PreconditionError("model is not in the decomposed logic");
    DiagramPackage pkg = diagram(sig, m);
    const Signature& sigM = pkg.iota.cod;

    // The denotation map is total on the worlds and injective into the added
    // nominals.
    std::set<std::string> targets;
    for (const auto& w : m.kripke().worlds) {
        auto it = pkg.denote.find(w);
        if (it == pkg.denote.end())
            return Verdict::fail("denotes_stratification", "world without a denotation", {{"world", w}});
        if (!targets.insert(it->second).second)
            return Verdict::fail("denotes_stratification", "denotation not injective", {{"world", w}});
        if (sig.noms.count(it->second) || !sigM.noms.count(it->second))
            return Verdict::fail("denotes_stratification", "denotation is not an added nominal",
                                 {{"world", w}, {"nominal", it->second}});
    }

    auto parts = decompose(d, sig, m);
    Signature fsig = d.phi0(sig);
    DiagramPackage fpkg = diagram(fsig, parts.first);
    if (fpkg.iota.cod != d.phi0(sigM))
        return Verdict::fail("denotes_stratification",
                             "frame diagram extension does not project from the extension");

    std::vector<Sentence> a0E;
    for (const auto& s : fpkg.E) {
        auto t = d.alpha0(sigM, s);
        if (!t) throw PreconditionError("decomposition has no frame sentence translation");
        a0E.push_back(*t);
    }

    Verdict total = Verdict::ok("denotes_stratification");
    bool ok = true;
    enum_models(sigM, b, [&](const Model& n) {
        Evaluator ev(sigM, n);
        const size_t nw = ev.world_list().size();
        const std::uint64_t all = nw == 64 ? ~0ull : ((1ull << nw) - 1);
        for (const auto& s : a0E)
            if (ev.eval_mask(s) != all) return true;
        Model n0 = decompose(d, sigM, n).first;
        ModelHom h;
        try {
            h = diagram_forward(fsig, parts.first, fpkg, n0);
        } catch (const PreconditionError&) {
            total.merge(Verdict::fail("denotes_stratification",
                                      "frame reduct does not satisfy the frame diagram",
                                      {{"model", render_model(n)}}));
            ok = false;
            return false;
        }
        Nominals nm = nominals_extract(sigM, n);
        ++total.instances;
        for (const auto& w : m.kripke().worlds) {
            if (nm.interp.at(pkg.denote.at(w)) != h.h0.at(w)) {
                total.merge(Verdict::fail(
                    "denotes_stratification",
                    "added nominal does not denote the frame homomorphism image",
                    {{"model", render_model(n)}, {"world", w}}));
                ok = false;
                return false;
            }
        }
        return true;
    });
    (void)ok;
    return total;
}

// ---------------------------------------------------------------------------
// The modal counterexample
// ---------------------------------------------------------------------------

Verdict mpl_counterexample_report(int depth) {
    if (depth < 1) throw PreconditionError("depth must be at least 1");
    Verdict total = Verdict::ok("modal_counterexample");
    Bounds b;
    b.depth = depth;

    Signature sig;
    sig.logic = LogicId::MPL;
    sig.props = {"p"};
    sig.mods = {{"lambda", 2}};
    require_valid(validate_signature(sig));

    // (a) The empty Kripke model globally satisfies every sentence, so it is
    // the only candidate initial diagram model regardless of the diagram set.
    Model empty;
    empty.logic = LogicId::MPL;
    {
        KripkeModel km;
        km.rels["lambda"] = {};
        empty.data = std::move(km);
    }
    require_valid(validate_model(sig, empty));
    for (const auto& s : enum_sentences(sig, b)) {
        ++total.instances;
        if (!global_satisfies(sig, empty, s))
            return Verdict::fail("modal_counterexample",
                                 "empty model fails a sentence", {{"sentence", render_sentence(s)}});
    }

    // (b) With no accessible worlds, the pointed models differing only at the
    // inaccessible world agree on every sentence in every expansion.
    Signature sig2 = sig;
    sig2.props = {"p", "q"};
    const std::vector<std::set<std::string>> q_choices = {{}, {"w"}, {"v"}, {"w", "v"}};
    std::vector<Sentence> sentences2 = enum_sentences(sig2, b);
    for (const auto& qs : q_choices) {
        Model mprime;
        mprime.logic = LogicId::MPL;
        KripkeModel km;
        km.worlds = {"v", "w"};
        km.rels["lambda"] = {};
        km.pval["w"] = {};
        km.pval["v"] = {"p"};
        for (const auto& u : qs) km.pval[u].insert("q");
        mprime.data = km;
        Model nprime = mprime;
        nprime.kripke().pval["v"].erase("p");
        require_valid(validate_model(sig2, mprime));
        require_valid(validate_model(sig2, nprime));

        Evaluator ma(sig2, mprime);
        Evaluator na(sig2, nprime);
        WorldId w = WorldId::of("w");
        for (const auto& s : sentences2) {
            ++total.instances;
            if (ma.eval(s, w) != na.eval(s, w))
                return Verdict::fail("modal_counterexample",
                                     "pointed models disagree on a sentence",
                                     {{"sentence", render_sentence(s)}});
        }
    }

    // (c) No homomorphism exists from the original model into the reduct
    // whose inaccessible world has been emptied.
    Model mm;
    mm.logic = LogicId::MPL;
    {
        KripkeModel km;
        km.worlds = {"v", "w"};
        km.rels["lambda"] = {};
        km.pval["w"] = {};
        km.pval["v"] = {"p"};
        mm.data = std::move(km);
    }
    Model nn = mm;
    nn.kripke().pval["v"] = {};
    require_valid(validate_model(sig, mm));
    require_valid(validate_model(sig, nn));
    std::vector<ModelHom> homs = enum_homs(sig, mm, nn);
    ++total.instances;
    if (!homs.empty())
        return Verdict::fail("modal_counterexample", "unexpected homomorphism exists",
                             {{"hom", render_hom(homs.front())}});
    return total;
}

}  // namespace strat
