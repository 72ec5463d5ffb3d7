#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strat/laws.hpp"
#include "strat/logic.hpp"

using namespace strat;

namespace {

Model fo_model(FOModel fo, LogicId logic = LogicId::FOL) {
    Model m;
    m.logic = logic;
    m.data = std::move(fo);
    return m;
}

Model kripke_model(KripkeModel k, LogicId logic) {
    Model m;
    m.logic = logic;
    m.data = std::move(k);
    return m;
}

// Two worlds over a shared 2-element carrier with a constant c.
KripkeModel mfol_base() {
    FOModel at_u{{"a", "b"}, {{"c", {{{}, "a"}}}}, {{"P", {{"a"}}}}};
    FOModel at_v{{"a", "b"}, {{"c", {{{}, "a"}}}}, {{"P", {{"b"}}}}};
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}};
    k.fbase = {{"u", at_u}, {"v", at_v}};
    return k;
}

Signature mfol_sig() {
    Signature s;
    s.logic = LogicId::MFOL;
    s.mods["lambda"] = 2;
    s.funcs["c"] = 0;
    s.preds["P"] = 1;
    return s;
}

}  // namespace

TEST_CASE("fragment validation is sound and complete") {
    Signature s;
    s.logic = LogicId::REL;
    s.preds["r"] = 2;
    CHECK(validate_signature(s).pass);
    s.funcs["f"] = 1;
    CHECK_FALSE(validate_signature(s).pass);

    Signature brelc;
    brelc.logic = LogicId::BRELC;
    brelc.preds["lambda"] = 2;
    brelc.funcs["c"] = 0;
    CHECK(validate_signature(brelc).pass);
    brelc.funcs["f"] = 1;
    CHECK_FALSE(validate_signature(brelc).pass);
    brelc.funcs.erase("f");
    brelc.preds["extra"] = 1;
    CHECK_FALSE(validate_signature(brelc).pass);

    Signature setc;
    setc.logic = LogicId::SETC;
    setc.funcs["c"] = 0;
    CHECK(validate_signature(setc).pass);
    setc.preds["P"] = 1;
    CHECK_FALSE(validate_signature(setc).pass);
}

TEST_CASE("MFOL sharing conditions") {
    Signature s = mfol_sig();
    CHECK(validate_model(s, kripke_model(mfol_base(), LogicId::MFOL)).pass);

    // Constant interpreted differently across worlds.
    KripkeModel bad = mfol_base();
    bad.fbase["v"].funcs["c"][{}] = "b";
    CHECK_FALSE(validate_model(s, kripke_model(bad, LogicId::MFOL)).pass);

    // Per-world carriers must agree.
    KripkeModel bad2 = mfol_base();
    bad2.fbase["v"].carrier = {"a"};
    bad2.fbase["v"].preds["P"] = {};
    bad2.fbase["v"].funcs["c"][{}] = "a";
    CHECK_FALSE(validate_model(s, kripke_model(bad2, LogicId::MFOL)).pass);
}

TEST_CASE("frame classes are model validation predicates") {
    Signature s;
    s.logic = LogicId::MPLs4;
    s.props = {"p"};
    s.mods["lambda"] = 2;
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}};
    k.pval = {{"u", {}}, {"v", {}}};
    CHECK_FALSE(validate_model(s, kripke_model(k, LogicId::MPLs4)).pass);  // not reflexive
    k.rels["lambda"] = {{"u", "u"}, {"u", "v"}, {"v", "v"}};
    CHECK(validate_model(s, kripke_model(k, LogicId::MPLs4)).pass);

    s.logic = LogicId::MPLs5;
    CHECK_FALSE(validate_model(s, kripke_model(k, LogicId::MPLs5)).pass);  // not symmetric
    k.rels["lambda"].insert({"v", "u"});
    CHECK(validate_model(s, kripke_model(k, LogicId::MPLs5)).pass);
}

TEST_CASE("eval_term: constants, tables, nesting") {
    FOModel m{{"a", "b"},
              {{"c", {{{}, "a"}}}, {"f", {{{"a"}, "b"}, {{"b"}, "a"}}}},
              {}};
    CHECK(eval_term(m, {}, Term{"c", {}}) == "a");
    CHECK(eval_term(m, {}, Term{"f", {Term{"c", {}}}}) == "b");
    CHECK(eval_term(m, {}, Term{"f", {Term{"f", {Term{"c", {}}}}}}) == "a");
    CHECK(eval_term(m, {{"x", "b"}}, Term{"x", {}}) == "b");
    CHECK_THROWS(eval_term(m, {}, Term{"x", {}}));
}

TEST_CASE("ofol_expand: new constant, round trip, satisfaction bridge") {
    Signature o;
    o.logic = LogicId::OFOL;
    o.vars = {"x"};
    o.preds["P"] = 1;
    FOModel m{{"a", "b"}, {}, {{"P", {{"a"}}}}};
    WorldId w = WorldId::valuation({{"x", "a"}});
    FOModel ex = ofol_expand(o, m, w);
    CHECK(ex.funcs.at("x").at({}) == "a");

    // Reduct along the inclusion restores m: drop the variable constants.
    FOModel back = ex;
    back.funcs.erase("x");
    CHECK(back == m);

    // (M |=^w rho) = (M^w |= rho) for the variable atom.
    Model om = fo_model(m, LogicId::OFOL);
    Sentence atom = mk_pred("P", {Term{"x", {}}});
    Signature fol = o;
    fol.logic = LogicId::FOL;
    fol.vars.clear();
    fol.funcs["x"] = 0;
    CHECK(satisfies(o, om, w, atom) == base_satisfies(fol, fo_model(ex), atom));
    CHECK(satisfies(o, om, w, atom));
    CHECK_FALSE(satisfies(o, om, WorldId::valuation({{"x", "b"}}), atom));
}

TEST_CASE("FOL satisfaction: quantifier and equality") {
    Signature s;
    s.logic = LogicId::FOL;
    s.funcs["c"] = 0;
    s.funcs["f"] = 1;
    Model m = fo_model(FOModel{{"a", "b"},
                               {{"c", {{{}, "a"}}}, {"f", {{{"a"}, "b"}, {{"b"}, "b"}}}},
                               {}});
    // exists x . f(x) = x  (b is a fixed point)
    Sentence fix = mk_exists_var("x", mk_eq(Term{"f", {Term{"x", {}}}}, Term{"x", {}}));
    CHECK(base_satisfies(s, m, fix));
    // exists x . f(x) = c fails: nothing maps to a.
    Sentence toc = mk_exists_var("x", mk_eq(Term{"f", {Term{"x", {}}}}, Term{"c", {}}));
    CHECK_FALSE(base_satisfies(s, m, toc));
}

TEST_CASE("HPL existential nominal scans expansions over existing worlds") {
    Signature s;
    s.logic = LogicId::HPL;
    s.props = {"p"};
    s.mods["lambda"] = 2;
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {};
    k.pval = {{"u", {}}, {"v", {"p"}}};
    Model m = kripke_model(k, LogicId::HPL);
    // existsN j . (<j> & p): some world named j satisfies p here <=> p holds here.
    Sentence rho = mk_exists_nom("j", mk_and(mk_nom("j"), mk_prop("p")));
    CHECK(satisfies(s, m, WorldId::of("v"), rho));
    CHECK_FALSE(satisfies(s, m, WorldId::of("u"), rho));
}

TEST_CASE("MFOL reducts preserve the sharing invariants") {
    Signature s = mfol_sig();
    Signature small;
    small.logic = LogicId::MFOL;
    small.mods["lambda"] = 2;
    small.funcs["c"] = 0;
    SigMorphism phi;
    phi.dom = small;
    phi.cod = s;
    phi.mods["lambda"] = "lambda";
    phi.funcs["c"] = "c";
    Model r = mod_reduct(phi, kripke_model(mfol_base(), LogicId::MFOL));
    CHECK(validate_model(small, r).pass);
    CHECK(r.kripke().fbase.at("u").preds.count("P") == 0);
}

TEST_CASE("only OFOL is non-strict; strictness sweeps pass for kripke logics") {
    for (LogicId l : all_logics()) CHECK(info(l).strict == (l != LogicId::OFOL));
    Bounds b;
    b.props = 1;
    b.noms = 1;
    b.worlds = 2;
    CHECK(sweep_strictness(LogicId::MPL, b).pass);
    CHECK(sweep_strictness(LogicId::HPL, b).pass);
}

TEST_CASE("satisfaction condition sweep: HPL at small bounds") {
    Bounds b;
    b.props = 1;
    b.noms = 1;
    b.worlds = 2;
    b.depth = 2;
    Verdict v = sweep_satisfaction_condition(LogicId::HPL, b);
    CHECK(v.pass);
    CHECK(v.instances > 0);
}

TEST_CASE("Evaluator agrees with one-shot satisfies") {
    Signature s;
    s.logic = LogicId::HPL;
    s.props = {"p"};
    s.noms = {"i"};
    s.mods["lambda"] = 2;
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}, {"v", "v"}};
    k.noms = {{"i", "v"}};
    k.pval = {{"u", {"p"}}, {"v", {}}};
    Model m = kripke_model(k, LogicId::HPL);
    Bounds b;
    b.props = 1;
    b.noms = 1;
    b.depth = 2;
    Evaluator ev(s, m);
    for (const auto& rho : enum_sentences(s, b))
        for (const auto& w : worlds(s, m))
            CHECK(ev.eval(rho, w) == satisfies(s, m, w, rho));
}

TEST_CASE("DiaAsBox mutation flips the diamond clause") {
    Signature s;
    s.logic = LogicId::MPL;
    s.props = {"p"};
    s.mods["lambda"] = 2;
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {};
    k.pval = {{"u", {}}, {"v", {}}};
    Model m = kripke_model(k, LogicId::MPL);
    Sentence dia = mk_modal("lambda", {mk_prop("p")});
    CHECK_FALSE(satisfies(s, m, WorldId::of("u"), dia));
    set_mutation(Mutation::DiaAsBox);
    CHECK(satisfies(s, m, WorldId::of("u"), dia));  // box over no successors
    set_mutation(Mutation::None);
    CHECK_FALSE(satisfies(s, m, WorldId::of("u"), dia));
}
