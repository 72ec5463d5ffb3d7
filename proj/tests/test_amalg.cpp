#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strat/amalg.hpp"
#include "strat/logic.hpp"

using namespace strat;

namespace {

Signature pl_sig(std::set<std::string> props) {
    Signature s;
    s.logic = LogicId::PL;
    s.props = std::move(props);
    return s;
}

// Inclusion between two propositional signatures.
SigMorphism pl_inclusion(const Signature& dom, const Signature& cod) {
    SigMorphism phi;
    phi.dom = dom;
    phi.cod = cod;
    for (const auto& p : dom.props) phi.props[p] = p;
    return phi;
}

Model pl_model(std::set<std::string> val) {
    Model m;
    m.logic = LogicId::PL;
    m.data = PLModel{std::move(val)};
    return m;
}

Signature mpl_sig(std::set<std::string> props) {
    Signature s;
    s.logic = LogicId::MPL;
    s.props = std::move(props);
    s.mods["lambda"] = 2;
    return s;
}

SigMorphism mpl_inclusion(const Signature& dom, const Signature& cod) {
    SigMorphism phi = pl_inclusion(dom, cod);
    phi.dom.logic = phi.cod.logic = LogicId::MPL;
    phi.dom.mods = dom.mods;
    phi.cod.mods = cod.mods;
    phi.mods["lambda"] = "lambda";
    return phi;
}

Bounds small_bounds() {
    Bounds b;
    b.props = 1;
    b.noms = 1;
    b.mods = 1;
    b.worlds = 2;
    b.carrier = 2;
    b.depth = 2;
    b.funcs1 = 0;
    b.preds2 = 0;
    return b;
}

}  // namespace

TEST_CASE("pushout of propositional inclusions is the union") {
    Signature dom = pl_sig({"p"});
    SigMorphism phi1 = pl_inclusion(dom, pl_sig({"p", "q"}));
    SigMorphism phi2 = pl_inclusion(dom, pl_sig({"p", "r"}));
    PushoutSquare sq = pushout_signatures(phi1, phi2);
    CHECK(sq.theta1.cod.props == std::set<std::string>{"p", "q", "r"});
    CHECK(sq.theta1.props.at("p") == "p");
    CHECK(sq.theta1.props.at("q") == "q");
    CHECK(sq.theta2.props.at("r") == "r");
    CHECK(compose(phi1, sq.theta1) == compose(phi2, sq.theta2));
}

TEST_CASE("pushout of renamings identifies the targets") {
    Signature dom = pl_sig({"p"});
    SigMorphism phi1{dom, pl_sig({"a"}), {{"p", "a"}}, {}, {}, {}, {}};
    SigMorphism phi2{dom, pl_sig({"b"}), {{"p", "b"}}, {}, {}, {}, {}};
    PushoutSquare sq = pushout_signatures(phi1, phi2);
    CHECK(sq.theta1.cod.props == std::set<std::string>{"a"});
    CHECK(sq.theta1.props.at("a") == "a");
    CHECK(sq.theta2.props.at("b") == "a");
}

TEST_CASE("pushout of modal first-order signatures is componentwise") {
    Signature dom;
    dom.logic = LogicId::MMFOL;
    dom.mods["lambda"] = 2;
    dom.funcs["c"] = 0;
    Signature s1 = dom;
    s1.mods["mu"] = 2;
    Signature s2 = dom;
    s2.preds["P"] = 1;
    SigMorphism phi1{dom, s1, {}, {}, {{"lambda", "lambda"}}, {{"c", "c"}}, {}};
    SigMorphism phi2{dom, s2, {}, {}, {{"lambda", "lambda"}}, {{"c", "c"}}, {}};
    PushoutSquare sq = pushout_signatures(phi1, phi2);
    const Signature& apex = sq.theta1.cod;
    CHECK(apex.mods == std::map<std::string, int>{{"lambda", 2}, {"mu", 2}});
    CHECK(apex.funcs == std::map<std::string, int>{{"c", 0}});
    CHECK(apex.preds == std::map<std::string, int>{{"P", 1}});
}

TEST_CASE("pushout squares are couniversal within bounds") {
    Signature dom = pl_sig({"p"});
    PushoutSquare sq = pushout_signatures(pl_inclusion(dom, pl_sig({"p", "q"})),
                                          pl_inclusion(dom, pl_sig({"p", "r"})));
    Bounds b = small_bounds();
    b.props = 2;
    Verdict v = check_pushout_couniversality(sq, b);
    CHECK(v.pass);
    CHECK(v.instances > 0);
}

TEST_CASE("amalgamation of a compatible propositional pair") {
    Signature dom = pl_sig({"p"});
    PushoutSquare sq = pushout_signatures(pl_inclusion(dom, pl_sig({"p", "q"})),
                                          pl_inclusion(dom, pl_sig({"p", "r"})));
    Model m1 = pl_model({"p", "q"});
    Model m2 = pl_model({"p"});
    Amalgamation a = amalgamate(sq, m1, m2, true, small_bounds());
    CHECK(a.model == pl_model({"p", "q"}));
    CHECK(a.certified_candidates == 1);
    CHECK(mod_reduct(sq.theta1, a.model) == m1);
    CHECK(mod_reduct(sq.theta2, a.model) == m2);
}

TEST_CASE("incompatible pairs are rejected") {
    Signature dom = pl_sig({"p"});
    PushoutSquare sq = pushout_signatures(pl_inclusion(dom, pl_sig({"p", "q"})),
                                          pl_inclusion(dom, pl_sig({"p", "r"})));
    CHECK_THROWS_AS(amalgamate(sq, pl_model({"p"}), pl_model({}), false, small_bounds()),
                    PreconditionError);
}

TEST_CASE("stratified amalgamation over a strict logic keeps the shared world") {
    Signature dom = mpl_sig({"p"});
    PushoutSquare sq = pushout_signatures(mpl_inclusion(dom, mpl_sig({"p", "q"})),
                                          mpl_inclusion(dom, mpl_sig({"p", "r"})));
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}};
    KripkeModel k1 = k;
    k1.pval = {{"u", {}}, {"v", {"p", "q"}}};
    KripkeModel k2 = k;
    k2.pval = {{"u", {}}, {"v", {"p"}}};
    Model m1{LogicId::MPL, k1};
    Model m2{LogicId::MPL, k2};
    SharpModel p1{m1, WorldId::of("v")};
    SharpModel p2{m2, WorldId::of("v")};
    Amalgamation a = stratified_amalgamate(sq, p1, p2, true, small_bounds());
    CHECK(a.world == WorldId::of("v"));
    CHECK(a.model.kripke().pval.at("v") == std::set<std::string>{"p", "q"});
    CHECK(a.certified_candidates == 1);
}

TEST_CASE("stratified amalgamation over open variables takes the union assignment") {
    Signature dom;
    dom.logic = LogicId::OFOL;
    Signature s1 = dom;
    s1.vars = {"x"};
    Signature s2 = dom;
    s2.vars = {"y"};
    SigMorphism phi1{dom, s1, {}, {}, {}, {}, {}};
    SigMorphism phi2{dom, s2, {}, {}, {}, {}, {}};
    PushoutSquare sq = pushout_signatures(phi1, phi2);
    CHECK(sq.theta1.cod.vars == std::set<std::string>{"x", "y"});

    Model m;
    m.logic = LogicId::OFOL;
    m.data = FOModel{{"a", "b"}, {}, {}};
    SharpModel p1{m, WorldId::valuation({{"x", "a"}})};
    SharpModel p2{m, WorldId::valuation({{"y", "b"}})};
    Amalgamation a = stratified_amalgamate(sq, p1, p2, false, small_bounds());
    CHECK(a.world == WorldId::valuation({{"x", "a"}, {"y", "b"}}));

    // A mutant apex with an extra open variable breaks world uniqueness.
    PushoutSquare bad = sq;
    bad.theta1.cod.vars.insert("z");
    bad.theta2.cod = bad.theta1.cod;
    CHECK_THROWS_AS(stratified_amalgamate(bad, p1, p2, false, small_bounds()),
                    PreconditionError);
}

TEST_CASE("semi-exactness sweeps") {
    Bounds b = small_bounds();
    b.props = 2;
    Verdict pl = check_semi_exactness(LogicId::PL, b);
    CHECK(pl.pass);
    CHECK(pl.instances > 0);
    Verdict rel = check_semi_exactness(LogicId::REL, small_bounds());
    CHECK(rel.pass);
    CHECK(rel.instances > 0);
}

TEST_CASE("stratified sufficiency sweeps: strict and open-variable squares") {
    Verdict mpl = check_stratified_sufficiency(LogicId::MPL, small_bounds());
    CHECK(mpl.pass);
    CHECK(mpl.instances > 0);
    Bounds b = small_bounds();
    b.vars = 2;
    Verdict ofol = check_stratified_sufficiency(LogicId::OFOL, b);
    CHECK(ofol.pass);
    CHECK(ofol.instances > 0);
}

TEST_CASE("constraint preservation: trivial and sharing constraints pass") {
    Signature dom;
    dom.logic = LogicId::TildePL;
    dom.props = {"p"};
    Signature t1 = dom;
    t1.props.insert("q");
    Signature t2 = dom;
    t2.props.insert("r");
    SigMorphism phi1{dom, t1, {{"p", "p"}}, {}, {}, {}, {}};
    SigMorphism phi2{dom, t2, {{"p", "p"}}, {}, {}, {}, {}};
    PushoutSquare sq = pushout_signatures(phi1, phi2);
    Verdict v = check_constraint_preservation(find_constraint("trivial"), sq, small_bounds());
    CHECK(v.pass);
    CHECK(v.instances > 0);

    Signature fdom;
    fdom.logic = LogicId::TildeFOL;
    fdom.funcs["c"] = 0;
    Signature f1 = fdom;
    f1.preds["P"] = 1;
    Signature f2 = fdom;
    f2.preds["Q"] = 1;
    SigMorphism psi1{fdom, f1, {}, {}, {}, {{"c", "c"}}, {}};
    SigMorphism psi2{fdom, f2, {}, {}, {}, {{"c", "c"}}, {}};
    PushoutSquare fsq = pushout_signatures(psi1, psi2);
    Bounds fb = small_bounds();
    fb.preds1 = 1;
    Verdict fv = check_constraint_preservation(find_constraint("fol_sharing"), fsq, fb);
    CHECK(fv.pass);
    CHECK(fv.instances > 0);
}

TEST_CASE("a constraint gated on large signatures is not preserved") {
    // Over three or more symbols the constraint demands an even world count;
    // the two-symbol sides are unconstrained, so an odd apex family slips
    // through both reducts.
    ConstraintPredicate even_worlds{
        "even_worlds",
        [](const Signature& tsig, const Model& t) {
            size_t syms = tsig.props.size() + tsig.noms.size() + tsig.mods.size() +
                          tsig.funcs.size() + tsig.preds.size();
            if (syms < 3) return true;
            return t.kripke().worlds.size() % 2 == 0;
        },
        [](const Signature&, const ModelHom&, const Model&, const Model&) { return true; }};

    Signature dom;
    dom.logic = LogicId::TildePL;
    dom.props = {"p"};
    Signature t1 = dom;
    t1.props.insert("q");
    Signature t2 = dom;
    t2.props.insert("r");
    SigMorphism phi1{dom, t1, {{"p", "p"}}, {}, {}, {}, {}};
    SigMorphism phi2{dom, t2, {{"p", "p"}}, {}, {}, {}, {}};
    PushoutSquare sq = pushout_signatures(phi1, phi2);
    Verdict v = check_constraint_preservation(even_worlds, sq, small_bounds());
    CHECK_FALSE(v.pass);
    bool has_apex = false;
    for (const auto& [k, val] : v.witness) has_apex |= k == "apex";
    CHECK(has_apex);
}

TEST_CASE("amalgamation through a decomposition matches the direct construction") {
    Signature dom = mpl_sig({"p"});
    PushoutSquare sq = pushout_signatures(mpl_inclusion(dom, mpl_sig({"p", "q"})),
                                          mpl_inclusion(dom, mpl_sig({"p", "r"})));
    const Decomposition& d = find_decomposition("mpl");
    Bounds b = small_bounds();
    b.props = 2;
    int pairs = 0;
    for (const Model& m1 : enum_models_vec(sq.phi1.cod, b)) {
        Model r1 = mod_reduct(sq.phi1, m1);
        for (const Model& m2 : enum_models_vec(sq.phi2.cod, b)) {
            if (mod_reduct(sq.phi2, m2) != r1) continue;
            ++pairs;
            Amalgamation direct = amalgamate(sq, m1, m2, false, b);
            Amalgamation piped = amalgamate_by_decomposition(d, sq, m1, m2);
            CHECK(direct.model == piped.model);
        }
    }
    CHECK(pairs > 0);
}

TEST_CASE("decomposition pipeline propagates component incompatibility") {
    Signature dom = mpl_sig({"p"});
    PushoutSquare sq = pushout_signatures(mpl_inclusion(dom, mpl_sig({"p", "q"})),
                                          mpl_inclusion(dom, mpl_sig({"p", "r"})));
    const Decomposition& d = find_decomposition("mpl");
    KripkeModel k1;
    k1.worlds = {"u"};
    k1.rels["lambda"] = {};
    k1.pval = {{"u", {"p"}}};
    KripkeModel k2;
    k2.worlds = {"u", "v"};
    k2.rels["lambda"] = {};
    k2.pval = {{"u", {"p"}}, {"v", {}}};
    Model m1{LogicId::MPL, k1};
    Model m2{LogicId::MPL, k2};
    CHECK_THROWS_AS(amalgamate_by_decomposition(d, sq, m1, m2), PreconditionError);
}
