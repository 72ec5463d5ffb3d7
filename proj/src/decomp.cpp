#include "strat/decomp.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

#include <algorithm>

namespace strat {

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

namespace {

// Uniformly brelc (the constant set may be empty): frame diagrams add
// constants for the worlds, so the frame institution must admit them.
Signature brel_frame(const Signature& sig) {
    Signature out;
    out.logic = LogicId::BRELC;
    out.preds["lambda"] = 2;
    for (const auto& i : sig.noms) out.funcs[i] = 0;
    return out;
}

Signature rel_frame(const Signature& sig) {
    Signature out;
    out.logic = LogicId::REL;
    for (const auto& [m, ar] : sig.mods) out.preds[m] = ar;
    return out;
}

SigMorphism frame_morphism(const SigMorphism& phi,
                           const std::function<Signature(const Signature&)>& proj) {
    SigMorphism out;
    out.dom = proj(phi.dom);
    out.cod = proj(phi.cod);
    for (const auto& [m, target] : phi.mods) out.preds[m] = target;
    if (out.dom.preds.count("lambda")) out.preds["lambda"] = "lambda";
    for (const auto& [i, target] : phi.noms) out.funcs[i] = target;
    return out;
}

// Frame sentences of the hybrid rows embed via
//   lambda(s, t)  |->  @s <> nom t        s = t  |->  @s nom t
//   exists x . rho  |->  existsN x . rho
std::string term_nominal(const Term& t) {
    if (!t.args.empty()) throw MalformedInput("frame terms are constants or variables");
    return t.head;
}

Sentence alpha0_hybrid_rec(const Sentence& s) {
    switch (s->kind) {
        case SKind::Pred:
            if (s->name != "lambda" || s->terms.size() != 2)
                throw MalformedInput("frame predicates are exactly lambda/2");
            return mk_at(term_nominal(s->terms[0]),
                         mk_modal("lambda", {mk_nom(term_nominal(s->terms[1]))}));
        case SKind::Eq:
            return mk_at(term_nominal(s->terms[0]), mk_nom(term_nominal(s->terms[1])));
        case SKind::And:
            return mk_and(alpha0_hybrid_rec(s->subs[0]), alpha0_hybrid_rec(s->subs[1]));
        case SKind::Not:
            return mk_not(alpha0_hybrid_rec(s->subs[0]));
        case SKind::ExistsVar:
            return mk_exists_nom(s->name, alpha0_hybrid_rec(s->subs[0]));
        default:
            throw MalformedInput("sentence kind not available in a frame fragment");
    }
}

std::optional<Sentence> alpha0_hybrid(const Signature& upper_sig, const Sentence& s) {
    (void)upper_sig;
    return alpha0_hybrid_rec(s);
}

std::optional<Sentence> alpha0_none(const Signature&, const Sentence&) { return std::nullopt; }

}  // namespace

const std::vector<Decomposition>& decomposition_registry() {
    static const std::vector<Decomposition> registry = [] {
        std::vector<Decomposition> r;
        auto add = [&](std::string id, LogicId upper, LogicId s0, std::string base_id,
                       bool frame_is_rel, bool hybrid) {
            Decomposition d;
            d.id = std::move(id);
            d.upper = upper;
            d.s0 = s0;
            d.base_id = std::move(base_id);
            if (frame_is_rel) {
                d.phi0 = rel_frame;
                d.phi0_mor = [](const SigMorphism& phi) { return frame_morphism(phi, rel_frame); };
            } else {
                d.phi0 = brel_frame;
                d.phi0_mor = [](const SigMorphism& phi) {
                    return frame_morphism(phi, brel_frame);
                };
            }
            d.alpha0 = hybrid ? alpha0_hybrid : alpha0_none;
            r.push_back(std::move(d));
        };
        add("mpl", LogicId::MPL, LogicId::BRELC, "mpl", false, false);
        add("hpl", LogicId::HPL, LogicId::BRELC, "hpl", false, true);
        add("mfol", LogicId::MFOL, LogicId::BRELC, "mfol", false, false);
        add("hfol", LogicId::HFOL, LogicId::BRELC, "hfol", false, true);
        add("mmpl", LogicId::MMPL, LogicId::REL, "mmpl", true, false);
        add("mmfol", LogicId::MMFOL, LogicId::REL, "mmfol", true, false);
        return r;
    }();
    return registry;
}

const Decomposition& find_decomposition(const std::string& id) {
    for (const auto& d : decomposition_registry())
        if (d.id == id) return d;
    throw MalformedInput("unknown decomposition: " + id);
}

// ---------------------------------------------------------------------------
// Decompose / recompose
// ---------------------------------------------------------------------------

std::pair<Model, Model> decompose(const Decomposition& d, const Signature& sig, const Model& m) {
    if (sig.logic != d.upper) throw PreconditionError("model is not in the decomposed logic");
    const KripkeModel& km = m.kripke();
    Signature fsig = d.phi0(sig);

    Model frame;
    frame.logic = fsig.logic;
    FOModel fo;
    fo.carrier = km.worlds;
    for (const auto& [pn, ar] : fsig.preds) fo.preds[pn] = km.rels.at(pn);
    for (const auto& [fn, ar] : fsig.funcs) fo.funcs[fn][{}] = km.noms.at(fn);
    frame.data = std::move(fo);

    const Base& base = find_base(d.base_id);
    Model tilde = transpose_beta(base, sig, m);
    return {std::move(frame), std::move(tilde)};
}

Model recompose(const Decomposition& d, const Signature& sig, const Model& frame,
                const Model& tilde) {
    Signature fsig = d.phi0(sig);
    const Base& base = find_base(d.base_id);
    Signature tsig = tilde_signature(base, sig);
    require_valid(validate_model(fsig, frame));
    require_valid(validate_model(tsig, tilde));
    const ConstraintPredicate& c = find_constraint(base.constraint_id);
    if (!c.model_ok(tsig, tilde))
        throw PreconditionError("family part violates the registered constraint");
    if (frame.fo().carrier != tilde.kripke().worlds)
        throw PreconditionError("frame and family world sets differ");

    Model out;
    out.logic = d.upper;
    KripkeModel km;
    km.worlds = frame.fo().carrier;
    for (const auto& [pn, ar] : fsig.preds) km.rels[pn] = frame.fo().preds.at(pn);
    for (const auto& [fn, ar] : fsig.funcs) km.noms[fn] = frame.fo().funcs.at(fn).at({});
    km.pval = tilde.kripke().pval;
    km.fbase = tilde.kripke().fbase;
    out.data = std::move(km);
    require_valid(validate_model(sig, out));
    return out;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

Verdict check_decomposition(const Decomposition& d, const Signature& sig, const Bounds& b) {
    Verdict total = Verdict::ok("decomposition_round_trip");
    Signature fsig = d.phi0(sig);
    const Base& base = find_base(d.base_id);
    Signature tsig = tilde_signature(base, sig);
    const ConstraintPredicate& c = find_constraint(base.constraint_id);

    // Round trip 1: recompose . decompose = id on models of the upper logic.
    bool ok = true;
    enum_models(sig, b, [&](const Model& m) {
        ++total.instances;
        auto [frame, tilde] = decompose(d, sig, m);
        if (!validate_model(fsig, frame).pass || !validate_model(tsig, tilde).pass ||
            !c.model_ok(tsig, tilde) || recompose(d, sig, frame, tilde) != m) {
            total.merge(Verdict::fail("decomposition_round_trip",
                                      "recompose(decompose(M)) differs from M",
                                      {{"model", render_model(m)}}));
            ok = false;
            return false;
        }
        return true;
    });
    if (!ok) return total;

    // Round trip 2: decompose . recompose = id on compatible pairs.
    for (int k = 0; k <= b.worlds; ++k) {
        if (k == 0 && !sig.noms.empty()) continue;
        std::vector<std::string> ws;
        for (int i = 1; i <= k; ++i) ws.push_back("w" + std::to_string(i));

        // Frame models carry the world set as carrier; rename the enumeration
        // alphabet to world names.
        Bounds fb = b;
        fb.carrier = k;
        std::vector<Model> frames;
        enum_models(fsig, fb, [&](const Model& f) {
            if (static_cast<int>(f.fo().carrier.size()) != k) return true;
            ModelHom ren;
            for (int i = 0; i < k; ++i) ren.h0[f.fo().carrier[i]] = ws[i];
            frames.push_back(apply_iso(fsig, ren, f));
            return true;
        });

        std::vector<Model> families;
        Bounds tb = b;
        tb.worlds = k;
        enum_models(tsig, tb, [&](const Model& t) {
            if (static_cast<int>(t.kripke().worlds.size()) != k) return true;
            if (!c.model_ok(tsig, t)) return true;
            families.push_back(t);
            return true;
        });

        for (const auto& f : frames)
            for (const auto& t : families) {
                ++total.instances;
                Model m = recompose(d, sig, f, t);
                auto [f2, t2] = decompose(d, sig, m);
                if (f2 != f || t2 != t) {
                    total.merge(Verdict::fail("decomposition_round_trip",
                                              "decompose(recompose(pair)) differs from pair",
                                              {{"frame", render_model(f)},
                                               {"family", render_model(t)}}));
                    return total;
                }
            }
    }
    return total;
}

Verdict check_alpha0(const Decomposition& d, const Signature& sig, const Bounds& b) {
    Verdict total = Verdict::ok("alpha0");
    Signature fsig = d.phi0(sig);
    auto frame_sentences = enum_sentences(fsig, b);
    if (!frame_sentences.empty()) {
        // Probe whether a translation is registered at all.
        if (!d.alpha0(sig, frame_sentences.front())) return total;
    }
    bool ok = true;
    enum_models(sig, b, [&](const Model& m) {
        auto [frame, tilde] = decompose(d, sig, m);
        (void)tilde;
        Evaluator ev(sig, m);
        for (const auto& rho : frame_sentences) {
            auto up = d.alpha0(sig, rho);
            if (!up) continue;
            bool below = base_satisfies(fsig, frame, rho);
            for (const auto& w : ev.world_list()) {
                ++total.instances;
                if (ev.eval(*up, w) != below) {
                    total.merge(Verdict::fail(
                        "alpha0", "frame satisfaction and alpha0 translation disagree",
                        {{"model", render_model(m)},
                         {"sentence", render_sentence(rho)},
                         {"world", render_world(w)}}));
                    ok = false;
                    return false;
                }
            }
        }
        return true;
    });
    (void)ok;
    return total;
}

}  // namespace strat
