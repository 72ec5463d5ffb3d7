#include "strat/flatten.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

namespace strat {

bool sharp_satisfies(const Signature& sig, const SharpModel& m, const Sentence& s) {
    return satisfies(sig, m.model, m.world, s);
}

bool global_satisfies(const Signature& sig, const Model& m, const Sentence& s) {
    Evaluator ev(sig, m);
    for (const auto& w : ev.world_list())
        if (!ev.eval(s, w)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Constraints
// ---------------------------------------------------------------------------

namespace {

bool shared_carriers_ok(const Signature& sig, const Model& tilde) {
    const KripkeModel& km = tilde.kripke();
    if (km.fbase.empty()) return true;
    const FOModel& first = km.fbase.begin()->second;
    for (const auto& [w, fo] : km.fbase) {
        if (fo.carrier != first.carrier) return false;
        for (const auto& [fn, ar] : sig.funcs)
            if (ar == 0 && fo.funcs.at(fn) != first.funcs.at(fn)) return false;
    }
    return true;
}

bool shared_hom_ok(const Signature& sig, const ModelHom& h, const Model& m, const Model& n) {
    (void)sig;
    (void)m;
    (void)n;
    if (h.hworld.empty()) return true;
    const auto& first = h.hworld.begin()->second;
    for (const auto& [w, f] : h.hworld)
        if (f != first) return false;
    return true;
}

}  // namespace

const ConstraintPredicate& find_constraint(const std::string& id) {
    static const std::vector<ConstraintPredicate> registry = {
        {"trivial",
         [](const Signature&, const Model&) { return true; },
         [](const Signature&, const ModelHom&, const Model&, const Model&) { return true; }},
        {"fol_sharing", shared_carriers_ok, shared_hom_ok},
    };
    for (const auto& c : registry)
        if (c.id == id) return c;
    throw MalformedInput("unknown constraint: " + id);
}

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

namespace {

Signature pl_projection(const Signature& sig) {
    Signature out;
    out.logic = LogicId::PL;
    out.props = sig.props;
    return out;
}

Signature fol_projection(const Signature& sig) {
    Signature out;
    out.logic = LogicId::FOL;
    out.funcs = sig.funcs;
    out.preds = sig.preds;
    return out;
}

Signature setc_projection(const Signature& sig) {
    Signature out;
    out.logic = LogicId::SETC;
    for (const auto& [fn, ar] : sig.funcs)
        if (ar == 0) out.funcs[fn] = 0;
    return out;
}

SigMorphism project_morphism(const SigMorphism& phi,
                             const std::function<Signature(const Signature&)>& proj) {
    SigMorphism out;
    out.dom = proj(phi.dom);
    out.cod = proj(phi.cod);
    for (const auto& p : out.dom.props) out.props[p] = phi.props.at(p);
    for (const auto& [fn, ar] : out.dom.funcs) out.funcs[fn] = phi.funcs.at(fn);
    for (const auto& [pn, ar] : out.dom.preds) out.preds[pn] = phi.preds.at(pn);
    return out;
}

// Base sentences embed unchanged into the stratified logic for the pl/fol
// bases (the atoms and connectives coincide).
std::optional<Sentence> alpha_identity(const Signature&, const Sentence& s) { return s; }

Model beta_pl(const Signature&, const Model& m, const WorldId& w) {
    Model out;
    out.logic = LogicId::PL;
    out.data = PLModel{m.kripke().pval.at(w.name)};
    return out;
}

Model beta_fol(const Signature&, const Model& m, const WorldId& w) {
    Model out;
    out.logic = LogicId::FOL;
    out.data = m.kripke().fbase.at(w.name);
    return out;
}

Model beta_setc(const Signature& sig, const Model& m, const WorldId& w) {
    Model out;
    out.logic = LogicId::SETC;
    FOModel fo;
    const FOModel& src = m.kripke().fbase.at(w.name);
    fo.carrier = src.carrier;
    for (const auto& [fn, ar] : sig.funcs)
        if (ar == 0) fo.funcs[fn] = src.funcs.at(fn);
    out.data = std::move(fo);
    return out;
}

Base make_base(std::string id, LogicId upper, LogicId base, LogicId tilde, bool shared,
               std::string constraint) {
    Base b;
    b.id = std::move(id);
    b.upper = upper;
    b.base = base;
    b.tilde = tilde;
    b.shared = shared;
    b.constraint_id = std::move(constraint);
    if (base == LogicId::PL) {
        b.phi = pl_projection;
        b.phi_mor = [](const SigMorphism& phi) { return project_morphism(phi, pl_projection); };
        b.alpha = alpha_identity;
        b.beta = beta_pl;
    } else if (base == LogicId::FOL) {
        b.phi = fol_projection;
        b.phi_mor = [](const SigMorphism& phi) { return project_morphism(phi, fol_projection); };
        b.alpha = alpha_identity;
        b.beta = beta_fol;
    } else {  // setc
        b.phi = setc_projection;
        b.phi_mor = [](const SigMorphism& phi) { return project_morphism(phi, setc_projection); };
        b.alpha = [](const Signature&, const Sentence&) -> std::optional<Sentence> {
            return std::nullopt;
        };
        b.beta = beta_setc;
    }
    return b;
}

}  // namespace

const std::vector<Base>& base_registry() {
    static const std::vector<Base> registry = {
        make_base("mpl", LogicId::MPL, LogicId::PL, LogicId::TildePL, false, "trivial"),
        make_base("mplt", LogicId::MPLt, LogicId::PL, LogicId::TildePL, false, "trivial"),
        make_base("mpls4", LogicId::MPLs4, LogicId::PL, LogicId::TildePL, false, "trivial"),
        make_base("mpls5", LogicId::MPLs5, LogicId::PL, LogicId::TildePL, false, "trivial"),
        make_base("hpl", LogicId::HPL, LogicId::PL, LogicId::TildePL, false, "trivial"),
        make_base("mfol", LogicId::MFOL, LogicId::FOL, LogicId::TildeFOL, false, "fol_sharing"),
        make_base("mfol_setc", LogicId::MFOL, LogicId::SETC, LogicId::TildeFOL, true, "trivial"),
        make_base("hfol", LogicId::HFOL, LogicId::FOL, LogicId::TildeFOL, false, "fol_sharing"),
        make_base("mmpl", LogicId::MMPL, LogicId::PL, LogicId::TildePL, false, "trivial"),
        make_base("mmfol", LogicId::MMFOL, LogicId::FOL, LogicId::TildeFOL, false, "fol_sharing"),
    };
    return registry;
}

const Base& find_base(const std::string& id) {
    for (const auto& b : base_registry())
        if (b.id == id) return b;
    throw MalformedInput("unknown base: " + id);
}

Signature tilde_signature(const Base& base, const Signature& upper_sig) {
    Signature sig = base.phi(upper_sig);
    sig.logic = base.tilde;
    return sig;
}

Model transpose_beta(const Base& base, const Signature& upper_sig, const Model& m) {
    Model out;
    out.logic = base.tilde;
    KripkeModel km;
    for (const auto& w : worlds(upper_sig, m)) km.worlds.push_back(w.name);
    for (const auto& w : km.worlds) {
        Model bw = base.beta(upper_sig, m, WorldId::of(w));
        if (base.tilde == LogicId::TildePL)
            km.pval[w] = bw.pl().val;
        else
            km.fbase[w] = bw.fo();
    }
    out.data = std::move(km);
    return out;
}

Model counit(const Base& base, const Model& tilde, const WorldId& w) {
    Model out;
    out.logic = base.base;
    const KripkeModel& km = tilde.kripke();
    if (base.tilde == LogicId::TildePL) {
        out.data = PLModel{km.pval.at(w.name)};
    } else {
        out.data = km.fbase.at(w.name);
    }
    return out;
}

ModelHom transpose_hom(const Base& base, const Signature& upper_sig, const ModelHom& h,
                       const Model& m, const Model& n) {
    ModelHom out;
    for (const auto& w : worlds(upper_sig, m)) out.h0[w.name] = h.h0.at(w.name);
    if (base.tilde == LogicId::TildeFOL) {
        for (const auto& w : m.kripke().worlds) out.hworld[w] = h.hbase;
    }
    (void)n;
    return out;
}

Verdict check_adjunction(const Base& base, const Signature& upper_sig, const Bounds& b) {
    Verdict total = Verdict::ok("adjunction");
    Signature tsig = tilde_signature(base, upper_sig);
    Signature bsig = base.phi(upper_sig);
    std::vector<Sentence> base_sentences = enum_sentences(bsig, b);

    auto models = enum_models_vec(upper_sig, b);
    for (const auto& m : models) {
        Model tilde = transpose_beta(base, upper_sig, m);
        if (!validate_model(tsig, tilde).pass) {
            total.merge(Verdict::fail("adjunction", "transpose is not a valid tilde family",
                                      {{"model", render_model(m)}}));
            return total;
        }
        const ConstraintPredicate& c = find_constraint(base.constraint_id);
        if (!c.model_ok(tsig, tilde)) {
            total.merge(Verdict::fail("adjunction",
                                      "transpose violates the registered constraint",
                                      {{"model", render_model(m)}}));
            return total;
        }
        for (const auto& w : worlds(upper_sig, m)) {
            ++total.instances;
            if (counit(base, tilde, w) != base.beta(upper_sig, m, w)) {
                total.merge(Verdict::fail("adjunction", "counit . transpose differs from beta",
                                          {{"model", render_model(m)},
                                           {"world", render_world(w)}}));
                return total;
            }
            // alpha respects satisfaction: beta(M,w) |= rho iff M |=_w alpha(rho)
            for (const auto& rho : base_sentences) {
                auto up = base.alpha(upper_sig, rho);
                if (!up) break;
                ++total.instances;
                bool below = base_satisfies(bsig, base.beta(upper_sig, m, w), rho);
                bool above = satisfies(upper_sig, m, w, *up);
                if (below != above) {
                    total.merge(Verdict::fail(
                        "adjunction", "alpha does not commute with satisfaction",
                        {{"model", render_model(m)},
                         {"world", render_world(w)},
                         {"sentence", render_sentence(rho)}}));
                    return total;
                }
            }
        }
    }
    // Transposed homs are tilde homs.
    for (const auto& m : models)
        for (const auto& n : models)
            for (const auto& h : enum_homs(upper_sig, m, n)) {
                ++total.instances;
                Model tm = transpose_beta(base, upper_sig, m);
                Model tn = transpose_beta(base, upper_sig, n);
                ModelHom th = transpose_hom(base, upper_sig, h, m, n);
                const ConstraintPredicate& c = find_constraint(base.constraint_id);
                if (!hom_check(tsig, th, tm, tn) || !c.hom_ok(tsig, th, tm, tn)) {
                    total.merge(Verdict::fail("adjunction",
                                              "transposed hom is not a constrained tilde hom",
                                              {{"model", render_model(m)},
                                               {"hom", render_hom(h)}}));
                    return total;
                }
            }
    return total;
}

}  // namespace strat
