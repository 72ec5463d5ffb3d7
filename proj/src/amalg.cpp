#include "strat/amalg.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

#include <algorithm>

namespace strat {

// ---------------------------------------------------------------------------
// Signature pushouts
// ---------------------------------------------------------------------------

namespace {

// Tagged symbol: side 1 or 2 plus name.
using Tagged = std::pair<int, std::string>;

struct UnionFind {
    std::map<Tagged, Tagged> parent;
    Tagged find(Tagged x) {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        Tagged r = find(it->second);
        parent[x] = r;
        return r;
    }
    void unite(Tagged a, Tagged b) {
        Tagged ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
};

// Pushout of one symbol kind.  dom_map maps each domain symbol through both
// sides; side symbols carry an arity (0 for unsorted kinds).
struct KindPushout {
    std::map<std::string, std::string> out1, out2;  // theta on each side
    std::map<std::string, int> apex;                // apex symbols with arities
};

KindPushout pushout_kind(const std::map<std::string, int>& side1,
                         const std::map<std::string, int>& side2,
                         const std::map<std::string, std::string>& map1,
                         const std::map<std::string, std::string>& map2) {
    UnionFind uf;
    for (const auto& [s, a] : side1) uf.parent.emplace(Tagged{1, s}, Tagged{1, s});
    for (const auto& [s, a] : side2) uf.parent.emplace(Tagged{2, s}, Tagged{2, s});
    for (const auto& [x, t1] : map1) uf.unite({1, t1}, {2, map2.at(x)});

    // Gather classes, keyed by representative.
    std::map<Tagged, std::vector<Tagged>> classes;
    for (const auto& [s, a] : side1) classes[uf.find({1, s})].push_back({1, s});
    for (const auto& [s, a] : side2) classes[uf.find({2, s})].push_back({2, s});

    // Candidate apex name per class: the least member name (ties broken by
    // side), then a disambiguating suffix on clashes.
    std::map<Tagged, std::string> cand;
    std::map<std::string, std::vector<Tagged>> by_name;
    for (auto& [rep, members] : classes) {
        std::sort(members.begin(), members.end(),
                  [](const Tagged& a, const Tagged& b) {
                      return a.second != b.second ? a.second < b.second : a.first < b.first;
                  });
        cand[rep] = members.front().second;
        by_name[cand[rep]].push_back(rep);
    }
    std::set<std::string> taken;
    for (const auto& [name, reps] : by_name)
        if (reps.size() == 1) taken.insert(name);
    std::map<Tagged, std::string> final_name;
    for (const auto& [name, reps] : by_name) {
        if (reps.size() == 1) {
            final_name[reps.front()] = name;
            continue;
        }
        for (const auto& rep : reps) {
            const auto& members = classes.at(rep);
            std::string suffix = members.front().first == 1 ? "_l" : "_r";
            std::string fresh = name + suffix;
            while (taken.count(fresh)) fresh += "'";
            taken.insert(fresh);
            final_name[rep] = fresh;
        }
    }

    KindPushout out;
    for (const auto& [s, a] : side1) {
        std::string n = final_name.at(uf.find({1, s}));
        out.out1[s] = n;
        out.apex[n] = a;
    }
    for (const auto& [s, a] : side2) {
        std::string n = final_name.at(uf.find({2, s}));
        out.out2[s] = n;
        out.apex[n] = a;
    }
    return out;
}

std::map<std::string, int> tag0(const std::set<std::string>& s) {
    std::map<std::string, int> out;
    for (const auto& x : s) out[x] = 0;
    return out;
}

}  // namespace

PushoutSquare pushout_signatures(const SigMorphism& phi1, const SigMorphism& phi2) {
    if (phi1.dom != phi2.dom) throw PreconditionError("pushout legs have different domains");
    require_valid(validate_morphism(phi1));
    require_valid(validate_morphism(phi2));

    PushoutSquare sq;
    sq.phi1 = phi1;
    sq.phi2 = phi2;
    Signature apex;
    apex.logic = phi1.dom.logic;
    sq.theta1.dom = phi1.cod;
    sq.theta2.dom = phi2.cod;

    auto props = pushout_kind(tag0(phi1.cod.props), tag0(phi2.cod.props), phi1.props, phi2.props);
    for (const auto& [n, a] : props.apex) apex.props.insert(n);
    sq.theta1.props = props.out1;
    sq.theta2.props = props.out2;

    auto noms = pushout_kind(tag0(phi1.cod.noms), tag0(phi2.cod.noms), phi1.noms, phi2.noms);
    for (const auto& [n, a] : noms.apex) apex.noms.insert(n);
    sq.theta1.noms = noms.out1;
    sq.theta2.noms = noms.out2;

    auto mods = pushout_kind(phi1.cod.mods, phi2.cod.mods, phi1.mods, phi2.mods);
    apex.mods = mods.apex;
    sq.theta1.mods = mods.out1;
    sq.theta2.mods = mods.out2;

    auto funcs = pushout_kind(phi1.cod.funcs, phi2.cod.funcs, phi1.funcs, phi2.funcs);
    apex.funcs = funcs.apex;
    sq.theta1.funcs = funcs.out1;
    sq.theta2.funcs = funcs.out2;

    auto preds = pushout_kind(phi1.cod.preds, phi2.cod.preds, phi1.preds, phi2.preds);
    apex.preds = preds.apex;
    sq.theta1.preds = preds.out1;
    sq.theta2.preds = preds.out2;

    // Open variables: morphisms are inclusions, so the pushout is the union,
    // provided every variable shared by the sides is identified through the
    // domain.  Otherwise the pushout would need two copies of the name, which
    // inclusions cannot express.
    for (const auto& v : phi1.cod.vars)
        if (phi2.cod.vars.count(v) && !phi1.dom.vars.count(v))
            throw PreconditionError("shared open variable not identified through the domain: " +
                                    v);
    apex.vars = phi1.cod.vars;
    apex.vars.insert(phi2.cod.vars.begin(), phi2.cod.vars.end());

    sq.theta1.cod = apex;
    sq.theta2.cod = apex;
    require_valid(validate_morphism(sq.theta1));
    require_valid(validate_morphism(sq.theta2));
    if (compose(phi1, sq.theta1) != compose(phi2, sq.theta2))
        throw PreconditionError("pushout square does not commute");
    return sq;
}

Verdict check_pushout_couniversality(const PushoutSquare& sq, const Bounds& b) {
    Verdict total = Verdict::ok("pushout_couniversality");
    LogicId logic = sq.phi1.dom.logic;
    auto targets = enum_signatures(logic, b);
    for (const auto& omega : targets) {
        for (const auto& psi1 : enum_morphisms_between(sq.phi1.cod, omega))
            for (const auto& psi2 : enum_morphisms_between(sq.phi2.cod, omega)) {
                if (compose(sq.phi1, psi1) != compose(sq.phi2, psi2)) continue;
                ++total.instances;
                int mediators = 0;
                for (const auto& mu : enum_morphisms_between(sq.theta1.cod, omega))
                    if (compose(sq.theta1, mu) == psi1 && compose(sq.theta2, mu) == psi2)
                        ++mediators;
                if (mediators != 1) {
                    total.merge(Verdict::fail(
                        "pushout_couniversality",
                        "cocone admits " + std::to_string(mediators) + " mediators",
                        {{"cocone_leg1", render_morphism(psi1)},
                         {"cocone_leg2", render_morphism(psi2)}}));
                    return total;
                }
            }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Amalgamation
// ---------------------------------------------------------------------------

namespace {

FOModel amalgamate_fo(const SigMorphism& theta1, const SigMorphism& theta2, const FOModel& a,
                      const FOModel& b) {
    FOModel out;
    out.carrier = a.carrier;
    for (const auto& [fn, t] : theta1.funcs) out.funcs[t] = a.funcs.at(fn);
    for (const auto& [fn, t] : theta2.funcs) out.funcs[t] = b.funcs.at(fn);
    for (const auto& [pn, t] : theta1.preds) out.preds[t] = a.preds.at(pn);
    for (const auto& [pn, t] : theta2.preds) out.preds[t] = b.preds.at(pn);
    return out;
}

}  // namespace

Amalgamation amalgamate(const PushoutSquare& sq, const Model& m1, const Model& m2, bool certify,
                        const Bounds& b) {
    if (mod_reduct(sq.phi1, m1) != mod_reduct(sq.phi2, m2))
        throw PreconditionError("model pair is not compatible");
    const Signature& apex = sq.theta1.cod;
    const LogicInfo& li = info(apex.logic);

    Amalgamation out;
    out.model.logic = apex.logic;
    if (apex.logic == LogicId::PL) {
        PLModel pm;
        for (const auto& p : m1.pl().val) pm.val.insert(sq.theta1.props.at(p));
        for (const auto& p : m2.pl().val) pm.val.insert(sq.theta2.props.at(p));
        out.model.data = std::move(pm);
    } else if (!li.kripke) {
        if (m1.fo().carrier != m2.fo().carrier)
            throw PreconditionError("model pair carriers differ");
        out.model.data = amalgamate_fo(sq.theta1, sq.theta2, m1.fo(), m2.fo());
    } else {
        const KripkeModel& a = m1.kripke();
        const KripkeModel& c = m2.kripke();
        if (a.worlds != c.worlds) throw PreconditionError("model pair world sets differ");
        KripkeModel km;
        km.worlds = a.worlds;
        for (const auto& [mn, t] : sq.theta1.mods) km.rels[t] = a.rels.at(mn);
        for (const auto& [mn, t] : sq.theta2.mods) km.rels[t] = c.rels.at(mn);
        for (const auto& [in, t] : sq.theta1.noms) km.noms[t] = a.noms.at(in);
        for (const auto& [in, t] : sq.theta2.noms) km.noms[t] = c.noms.at(in);
        if (li.kripke_fo) {
            for (const auto& w : km.worlds)
                km.fbase[w] =
                    amalgamate_fo(sq.theta1, sq.theta2, a.fbase.at(w), c.fbase.at(w));
        } else {
            for (const auto& w : km.worlds) {
                std::set<std::string> val;
                for (const auto& p : a.pval.at(w)) val.insert(sq.theta1.props.at(p));
                for (const auto& p : c.pval.at(w)) val.insert(sq.theta2.props.at(p));
                km.pval[w] = std::move(val);
            }
        }
        out.model.data = std::move(km);
    }

    if (mod_reduct(sq.theta1, out.model) != m1 || mod_reduct(sq.theta2, out.model) != m2)
        throw PreconditionError("amalgam does not reduce to the given pair");

    if (certify) {
        long count = 0;
        enum_expansions(sq.theta1, m1, b, [&](const Model& cand) {
            if (mod_reduct(sq.theta2, cand) == m2) {
                ++count;
                if (cand != out.model)
                    throw PreconditionError("oracle found a second distinct amalgam");
            }
            return true;
        });
        if (count != 1) throw PreconditionError("oracle found " + std::to_string(count) +
                                                " amalgams, expected exactly 1");
        out.certified_candidates = count;
    }
    return out;
}

Amalgamation stratified_amalgamate(const PushoutSquare& sq, const SharpModel& m1,
                                   const SharpModel& m2, bool certify, const Bounds& b) {
    Amalgamation out = amalgamate(sq, m1.model, m2.model, certify, b);
    auto wm1 = world_map(sq.theta1, out.model);
    auto wm2 = world_map(sq.theta2, out.model);
    std::vector<WorldId> matches;
    for (const auto& w : worlds(sq.theta1.cod, out.model))
        if (wm1.at(w) == m1.world && wm2.at(w) == m2.world) matches.push_back(w);
    if (matches.size() != 1)
        throw PreconditionError("expected exactly one amalgamated world, found " +
                                std::to_string(matches.size()));
    out.world = matches.front();
    return out;
}

// ---------------------------------------------------------------------------
// Amalgamation through a decomposition
// ---------------------------------------------------------------------------

namespace {

SigMorphism with_logic(SigMorphism phi, LogicId logic) {
    phi.dom.logic = logic;
    phi.cod.logic = logic;
    return phi;
}

}  // namespace

Amalgamation amalgamate_by_decomposition(const Decomposition& d, const PushoutSquare& sq,
                                         const Model& m1, const Model& m2) {
    const Base& base = find_base(d.base_id);
    auto [f1, t1] = decompose(d, sq.phi1.cod, m1);
    auto [f2, t2] = decompose(d, sq.phi2.cod, m2);

    PushoutSquare frame_sq{d.phi0_mor(sq.phi1), d.phi0_mor(sq.phi2), d.phi0_mor(sq.theta1),
                           d.phi0_mor(sq.theta2)};
    PushoutSquare tilde_sq{with_logic(base.phi_mor(sq.phi1), base.tilde),
                           with_logic(base.phi_mor(sq.phi2), base.tilde),
                           with_logic(base.phi_mor(sq.theta1), base.tilde),
                           with_logic(base.phi_mor(sq.theta2), base.tilde)};

    Bounds nb;  // certification is not run here; bounds are unused
    Amalgamation frame = amalgamate(frame_sq, f1, f2, false, nb);
    Amalgamation tilde = amalgamate(tilde_sq, t1, t2, false, nb);

    Amalgamation out;
    out.model = recompose(d, sq.theta1.cod, frame.model, tilde.model);
    return out;
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

// All pushout squares over enumerated morphism pairs with a common domain.
template <typename F>
void for_each_square(LogicId logic, const Bounds& b, F&& f) {
    auto sigs = enum_signatures(logic, b);
    auto var_compatible = [](const SigMorphism& p1, const SigMorphism& p2) {
        for (const auto& v : p1.cod.vars)
            if (p2.cod.vars.count(v) && !p1.dom.vars.count(v)) return false;
        return true;
    };
    for (const auto& dom : sigs)
        for (const auto& cod1 : sigs)
            for (const auto& phi1 : enum_morphisms_between(dom, cod1))
                for (const auto& cod2 : sigs)
                    for (const auto& phi2 : enum_morphisms_between(dom, cod2)) {
                        if (!var_compatible(phi1, phi2)) continue;
                        if (!f(pushout_signatures(phi1, phi2))) return;
                    }
}

// Compatible model pairs, grouped by the common reduct.
template <typename F>
void for_each_compatible_pair(const PushoutSquare& sq, const std::vector<Model>& models1,
                              const std::vector<Model>& models2, F&& f) {
    std::map<Model, std::vector<const Model*>> by_reduct;
    for (const auto& m2 : models2) by_reduct[mod_reduct(sq.phi2, m2)].push_back(&m2);
    for (const auto& m1 : models1) {
        auto it = by_reduct.find(mod_reduct(sq.phi1, m1));
        if (it == by_reduct.end()) continue;
        for (const Model* m2 : it->second)
            if (!f(m1, *m2)) return;
    }
}

}  // namespace

Verdict check_semi_exactness(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("semi_exactness");
    std::map<Signature, std::vector<Model>> model_cache;
    auto models_of = [&](const Signature& s) -> const std::vector<Model>& {
        auto it = model_cache.find(s);
        if (it == model_cache.end()) it = model_cache.emplace(s, enum_models_vec(s, b)).first;
        return it->second;
    };
    bool ok = true;
    for_each_square(logic, b, [&](const PushoutSquare& sq) {
        const auto& models1 = models_of(sq.phi1.cod);
        const auto& models2 = models_of(sq.phi2.cod);
        for_each_compatible_pair(sq, models1, models2, [&](const Model& m1, const Model& m2) {
            ++total.instances;
            try {
                amalgamate(sq, m1, m2, true, b);
            } catch (const PreconditionError& e) {
                total.merge(Verdict::fail("semi_exactness", e.what(),
                                          {{"model1", render_model(m1)},
                                           {"model2", render_model(m2)},
                                           {"leg1", render_morphism(sq.phi1)},
                                           {"leg2", render_morphism(sq.phi2)}}));
                ok = false;
            }
            return ok;
        });
        return ok;
    });
    return total;
}

Verdict check_stratified_sufficiency(LogicId logic, const Bounds& b) {
    Verdict total = Verdict::ok("stratified_sufficiency");
    std::map<Signature, std::vector<Model>> model_cache;
    auto models_of = [&](const Signature& s) -> const std::vector<Model>& {
        auto it = model_cache.find(s);
        if (it == model_cache.end()) it = model_cache.emplace(s, enum_models_vec(s, b)).first;
        return it->second;
    };
    bool ok = true;
    for_each_square(logic, b, [&](const PushoutSquare& sq) {
        // (a) unique amalgam for every compatible pair
        for_each_compatible_pair(sq, models_of(sq.phi1.cod), models_of(sq.phi2.cod),
                                 [&](const Model& m1, const Model& m2) {
                                     ++total.instances;
                                     try {
                                         amalgamate(sq, m1, m2, true, b);
                                     } catch (const PreconditionError& e) {
                                         total.merge(Verdict::fail(
                                             "stratified_sufficiency", e.what(),
                                             {{"model1", render_model(m1)},
                                              {"model2", render_model(m2)}}));
                                         ok = false;
                                     }
                                     return ok;
                                 });
        if (!ok) return false;
        // (b) the world square of every apex model is a pullback of sets
        for (const auto& mp : models_of(sq.theta1.cod)) {
            ++total.instances;
            auto wm1 = world_map(sq.theta1, mp);
            auto wm2 = world_map(sq.theta2, mp);
            Model r1 = mod_reduct(sq.theta1, mp);
            Model r2 = mod_reduct(sq.theta2, mp);
            auto wmc1 = world_map(sq.phi1, r1);
            auto wmc2 = world_map(sq.phi2, r2);
            std::set<std::pair<WorldId, WorldId>> image;
            for (const auto& w : worlds(sq.theta1.cod, mp)) {
                auto pair = std::make_pair(wm1.at(w), wm2.at(w));
                if (!image.insert(pair).second) {
                    total.merge(Verdict::fail("stratified_sufficiency",
                                              "world square not jointly injective",
                                              {{"model", render_model(mp)},
                                               {"world", render_world(w)}}));
                    ok = false;
                    return false;
                }
            }
            for (const auto& [w1, v1] : wmc1)
                for (const auto& [w2, v2] : wmc2)
                    if (v1 == v2 && !image.count({w1, w2})) {
                        total.merge(Verdict::fail("stratified_sufficiency",
                                                  "compatible world pair not amalgamated",
                                                  {{"model", render_model(mp)},
                                                   {"world1", render_world(w1)},
                                                   {"world2", render_world(w2)}}));
                        ok = false;
                        return false;
                    }
        }
        return true;
    });
    return total;
}

Verdict check_constraint_preservation(const ConstraintPredicate& c, const PushoutSquare& sq,
                                      const Bounds& b) {
    Verdict total = Verdict::ok("constraint_preservation");
    const Signature& apex = sq.theta1.cod;
    const Signature& tsig1 = sq.phi1.cod;
    const Signature& tsig2 = sq.phi2.cod;
    bool ok = true;
    enum_models(apex, b, [&](const Model& mp) {
        ++total.instances;
        Model r1 = mod_reduct(sq.theta1, mp);
        Model r2 = mod_reduct(sq.theta2, mp);
        if (c.model_ok(tsig1, r1) && c.model_ok(tsig2, r2) && !c.model_ok(apex, mp)) {
            total.merge(Verdict::fail("constraint_preservation",
                                      "apex model with constrained reducts violates the constraint",
                                      {{"apex", render_model(mp)},
                                       {"reduct1", render_model(r1)},
                                       {"reduct2", render_model(r2)}}));
            ok = false;
        }
        return ok;
    });
    return total;
}

}  // namespace strat
