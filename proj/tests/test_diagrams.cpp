#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strat/amalg.hpp"
#include "strat/diagrams.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

#include <algorithm>

using namespace strat;

namespace {

Signature hpl_sig(std::set<std::string> noms, std::set<std::string> props) {
    Signature s;
    s.logic = LogicId::HPL;
    s.noms = std::move(noms);
    s.props = std::move(props);
    s.mods["lambda"] = 2;
    return s;
}

// W = {u, v}, one lambda edge u -> v, p true at u only.
Model hpl_uv(std::map<std::string, std::string> noms = {}) {
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}};
    k.noms = std::move(noms);
    k.pval = {{"u", {"p"}}, {"v", {}}};
    return Model{LogicId::HPL, k};
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

bool contains(const std::vector<Sentence>& set, const Sentence& s) {
    return std::any_of(set.begin(), set.end(),
                       [&](const Sentence& e) { return sen_equal(e, s); });
}

}  // namespace

TEST_CASE("nominals extraction reads the interpretation, unsupported without nominals") {
    Signature s = hpl_sig({"i"}, {"p"});
    Nominals n = nominals_extract(s, hpl_uv({{"i", "u"}}));
    CHECK(n.noms == std::set<std::string>{"i"});
    CHECK(n.interp.at("i") == "u");
    CHECK(n.worlds == std::vector<std::string>{"u", "v"});
    CHECK_FALSE(has_nominals_extraction(LogicId::MPL));

    Signature mpl = s;
    mpl.logic = LogicId::MPL;
    mpl.noms.clear();
    Model m = hpl_uv();
    m.logic = LogicId::MPL;
    m.kripke().noms.clear();
    CHECK_THROWS_AS(nominals_extract(mpl, m), MalformedInput);
}

TEST_CASE("hybrid connective laws on enumerated models") {
    Bounds b = small_bounds();
    b.worlds = 3;
    Signature s = hpl_sig({"i"}, {"p"});
    Sentence probe = mk_modal("lambda", {mk_prop("p")});
    long instances = 0;
    enum_models(s, b, [&](const Model& m) {
        const std::string iw = m.kripke().noms.at("i");
        for (const auto& w : m.kripke().worlds) {
            ++instances;
            // <i> marks exactly the denoted world.
            CHECK(satisfies(s, m, WorldId::of(w), nominal_sentence(s, "i")) == (iw == w));
            // @_i rho evaluates rho at the denoted world, independent of w.
            CHECK(satisfies(s, m, WorldId::of(w), at_sentence(s, "i", probe)) ==
                  satisfies(s, m, WorldId::of(iw), probe));
        }
        return true;
    });
    CHECK(instances > 0);
    CHECK_THROWS_AS(at_sentence(s, "j", probe), MalformedInput);
}

TEST_CASE("elementary extensions add the expected names") {
    Signature pl;
    pl.logic = LogicId::PL;
    pl.props = {"p", "q"};
    Model mpl_model{LogicId::PL, PLModel{{"p"}}};
    CHECK(elementary_extension(pl, mpl_model) == identity_morphism(pl));

    Signature h = hpl_sig({"i"}, {"p"});
    SigMorphism iota = elementary_extension(h, hpl_uv({{"i", "u"}}));
    CHECK(iota.cod.noms == std::set<std::string>{"i", "w$u", "w$v"});
    CHECK(iota.cod.props == h.props);

    Signature mpl = h;
    mpl.logic = LogicId::MPL;
    mpl.noms.clear();
    Model m = hpl_uv();
    m.logic = LogicId::MPL;
    m.kripke().noms.clear();
    CHECK_FALSE(has_diagrams(LogicId::MPL));
    CHECK_THROWS_AS(elementary_extension(mpl, m), MalformedInput);
}

TEST_CASE("propositional diagram is the valuation itself") {
    Signature pl;
    pl.logic = LogicId::PL;
    pl.props = {"p", "q"};
    DiagramPackage pkg = diagram(pl, Model{LogicId::PL, PLModel{{"p"}}});
    REQUIRE(pkg.E.size() == 1);
    CHECK(sen_equal(pkg.E[0], mk_prop("p")));
    CHECK(pkg.iota == identity_morphism(pl));
}

TEST_CASE("hybrid diagram lists the edges and the local valuations") {
    Signature s = hpl_sig({}, {"p"});
    DiagramPackage pkg = diagram(s, hpl_uv());
    CHECK(pkg.denote.at("u") == "w$u");
    CHECK(pkg.denote.at("v") == "w$v");
    REQUIRE(pkg.E.size() == 2);
    CHECK(contains(pkg.E, mk_at("w$u", mk_modal("lambda", {mk_nom("w$v")}))));
    CHECK(contains(pkg.E, mk_at("w$u", mk_prop("p"))));
}

TEST_CASE("pointed diagram adds exactly the world sentence") {
    Signature s = hpl_sig({}, {"p"});
    Model m = hpl_uv();
    DiagramPackage plain = diagram(s, m);
    DiagramPackage sharp = sharp_diagram(s, SharpModel{m, WorldId::of("u")});
    REQUIRE(sharp.E.size() == plain.E.size());
    for (size_t k = 0; k < plain.E.size(); ++k) CHECK(sen_equal(sharp.E[k], plain.E[k]));
    REQUIRE(sharp.world_sentence.has_value());
    CHECK(sen_equal(*sharp.world_sentence, mk_nom("w$u")));
}

TEST_CASE("first-order diagram round-trips through homomorphisms") {
    Signature s;
    s.logic = LogicId::FOL;
    s.funcs["c"] = 0;
    s.preds["P"] = 1;
    Model m{LogicId::FOL, FOModel{{"a", "b"}, {{"c", {{{}, "a"}}}}, {{"P", {{"a"}}}}}};
    DiagramPackage pkg = diagram(s, m);
    Bounds b = small_bounds();
    b.preds1 = 1;
    int homs = 0;
    enum_models(s, b, [&](const Model& n) {
        for (const ModelHom& h : enum_homs(s, m, n)) {
            ++homs;
            Model np = diagram_backward(s, m, pkg, h, n);
            CHECK(diagram_holds(pkg, np));
            CHECK(mod_reduct(pkg.iota, np) == n);
            CHECK(diagram_forward(s, m, pkg, np) == h);
        }
        return true;
    });
    CHECK(homs > 0);
}

TEST_CASE("diagram isomorphism sweeps, plain and pointed") {
    Bounds b = small_bounds();
    b.worlds = 3;
    Signature h = hpl_sig({"i"}, {"p"});
    Model m = hpl_uv({{"i", "u"}});
    CHECK(check_diagram_iso(h, m, b).pass);
    CHECK(check_sharp_diagram_iso(h, SharpModel{m, WorldId::of("v")}, b).pass);

    Signature f;
    f.logic = LogicId::HFOL;
    f.noms = {"i"};
    f.mods["lambda"] = 2;
    f.funcs["c"] = 0;
    f.preds["P"] = 1;
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}};
    k.noms = {{"i", "u"}};
    k.fbase = {{"u", FOModel{{"x", "y"}, {{"c", {{{}, "x"}}}}, {{"P", {{"x"}}}}}},
               {"v", FOModel{{"x", "y"}, {{"c", {{{}, "x"}}}}, {{"P", {}}}}}};
    Model fm{LogicId::HFOL, k};
    Bounds fb = small_bounds();
    fb.preds1 = 1;
    CHECK(check_diagram_iso(f, fm, fb).pass);
    CHECK(check_sharp_diagram_iso(f, SharpModel{fm, WorldId::of("u")}, fb).pass);
}

TEST_CASE("composed diagrams equal the direct ones on enumerated hybrid models") {
    Bounds b = small_bounds();
    const Decomposition& d = find_decomposition("hpl");
    long models = 0;
    for (const Signature& sig : enum_signatures(LogicId::HPL, b)) {
        enum_models(sig, b, [&](const Model& m) {
            ++models;
            CHECK(check_composed_diagram(d, sig, m).pass);
            return true;
        });
    }
    CHECK(models > 0);
}

TEST_CASE("coherence of the base diagrams over constrained families") {
    const Base& pl_base = find_base("mpl");
    Signature bsig;
    bsig.logic = LogicId::PL;
    bsig.props = {"p"};
    KripkeModel fam;
    fam.worlds = {"u", "v"};
    fam.pval = {{"u", {}}, {"v", {"p"}}};
    Model t{LogicId::TildePL, fam};
    Verdict v = check_coherence(pl_base, bsig, t, small_bounds());
    CHECK(v.pass);
    CHECK(v.instances > 0);

    const Base& fol_base = find_base("mfol");
    Signature fsig;
    fsig.logic = LogicId::FOL;
    fsig.funcs["c"] = 0;
    FOModel shared{{"a", "b"}, {{"c", {{{}, "a"}}}}, {}};
    KripkeModel ffam;
    ffam.worlds = {"u", "v"};
    ffam.fbase = {{"u", shared}, {"v", shared}};
    Model ft{LogicId::TildeFOL, ffam};
    CHECK(check_coherence(fol_base, fsig, ft, small_bounds()).pass);

    // Unshared families violate the registered constraint up front.
    ffam.fbase["v"] = FOModel{{"a", "b"}, {{"c", {{{}, "b"}}}}, {}};
    Model bad{LogicId::TildeFOL, ffam};
    CHECK_THROWS_AS(check_coherence(fol_base, fsig, bad, small_bounds()), PreconditionError);
}

TEST_CASE("added nominals denote the stratification") {
    Bounds b = small_bounds();
    Signature h = hpl_sig({"i"}, {"p"});
    Model m = hpl_uv({{"i", "u"}});
    Verdict v = check_denotes_stratification(find_decomposition("hpl"), h, m, b);
    CHECK(v.pass);
    CHECK(v.instances > 0);

    Signature f;
    f.logic = LogicId::HFOL;
    f.noms = {"i"};
    f.mods["lambda"] = 2;
    f.funcs["c"] = 0;
    KripkeModel k;
    k.worlds = {"u"};
    k.rels["lambda"] = {};
    k.noms = {{"i", "u"}};
    k.fbase = {{"u", FOModel{{"x"}, {{"c", {{{}, "x"}}}}, {}}}};
    Model fm{LogicId::HFOL, k};
    CHECK(check_denotes_stratification(find_decomposition("hfol"), f, fm, b).pass);
}

TEST_CASE("the modal counterexample rules out nominal-free diagrams") {
    Verdict d1 = mpl_counterexample_report(1);
    CHECK(d1.pass);
    Verdict d3 = mpl_counterexample_report(3);
    CHECK(d3.pass);
    CHECK(d3.instances > d1.instances);
}

TEST_CASE("the counterexample's missing homomorphism reappears once the target is filled") {
    Signature s;
    s.logic = LogicId::MPL;
    s.props = {"pi"};
    s.mods["lambda"] = 2;
    KripkeModel km;
    km.worlds = {"v", "w"};
    km.rels["lambda"] = {};
    km.pval = {{"v", {"pi"}}, {"w", {}}};
    Model m{LogicId::MPL, km};
    KripkeModel kn = km;
    kn.pval = {{"v", {}}, {"w", {}}};
    Model empty_target{LogicId::MPL, kn};
    CHECK(enum_homs(s, m, empty_target).empty());
    CHECK_FALSE(enum_homs(s, m, m).empty());
}
