#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strat/diagrams.hpp"
#include "strat/logic.hpp"

using namespace strat;

namespace {

Signature hpl_sig() {
    Signature s;
    s.logic = LogicId::HPL;
    s.props = {"p"};
    s.noms = {"i"};
    s.mods["lambda"] = 2;
    return s;
}

Model hpl_uv() {
    KripkeModel k;
    k.worlds = {"u", "v"};
    k.rels["lambda"] = {{"u", "v"}};
    k.noms = {{"i", "u"}};
    k.pval = {{"u", {"p"}}, {"v", {}}};
    Model m;
    m.logic = LogicId::HPL;
    m.data = std::move(k);
    return m;
}

Bounds small_bounds() {
    Bounds b;
    b.props = 1;
    b.noms = 1;
    b.worlds = 2;
    b.carrier = 2;
    b.depth = 2;
    b.funcs1 = 0;
    b.preds2 = 0;
    return b;
}

}  // namespace

TEST_CASE("decompose: HPL splits into a brelc frame and a PL family") {
    const Decomposition& d = find_decomposition("hpl");
    Signature s = hpl_sig();
    auto [frame, family] = decompose(d, s, hpl_uv());

    CHECK(frame.logic == LogicId::BRELC);
    CHECK(frame.fo().carrier == std::vector<std::string>{"u", "v"});
    CHECK(frame.fo().preds.at("lambda") == std::set<std::vector<std::string>>{{"u", "v"}});
    CHECK(frame.fo().funcs.at("i").at({}) == "u");

    CHECK(family.kripke().worlds == std::vector<std::string>{"u", "v"});
    CHECK(family.kripke().pval.at("u") == std::set<std::string>{"p"});
    CHECK(family.kripke().pval.at("v").empty());
}

TEST_CASE("recompose validates world agreement") {
    const Decomposition& d = find_decomposition("hpl");
    Signature s = hpl_sig();
    auto [frame, family] = decompose(d, s, hpl_uv());
    CHECK(recompose(d, s, frame, family) == hpl_uv());

    Model shrunk = family;
    shrunk.kripke().worlds = {"u"};
    shrunk.kripke().pval.erase("v");
    CHECK_THROWS_AS(recompose(d, s, frame, shrunk), PreconditionError);
}

TEST_CASE("round trips for every registered decomposition") {
    Bounds b = small_bounds();
    for (const Decomposition& d : decomposition_registry()) {
        for (const Signature& sig : enum_signatures(d.upper, b)) {
            Verdict v = check_decomposition(d, sig, b);
            CHECK_MESSAGE(v.pass, d.id, ": ", v.message);
        }
    }
}

TEST_CASE("alpha0 law: @_i <>(nom j) matches the frame edge") {
    const Decomposition& d = find_decomposition("hpl");
    Signature s = hpl_sig();
    s.noms = {"i", "j"};
    Model m = hpl_uv();
    m.kripke().noms["j"] = "v";

    Signature fsig = d.phi0(s);
    Sentence edge = mk_pred("lambda", {Term{"i", {}}, Term{"j", {}}});
    auto up = d.alpha0(s, edge);
    REQUIRE(up.has_value());
    CHECK(sen_equal(*up, mk_at("i", mk_modal("lambda", {mk_nom("j")}))));

    Model frame = decompose(d, s, m).first;
    bool frame_true = base_satisfies(fsig, frame, edge);
    CHECK(frame_true == global_satisfies(s, m, *up));
    CHECK(frame_true);  // (u,v) is an edge and i=u, j=v
}

TEST_CASE("alpha0 sweeps for the hybrid decompositions") {
    Bounds b = small_bounds();
    for (const char* id : {"hpl", "hfol"}) {
        const Decomposition& d = find_decomposition(id);
        for (const Signature& sig : enum_signatures(d.upper, b)) {
            Verdict v = check_alpha0(d, sig, b);
            CHECK_MESSAGE(v.pass, id, ": ", v.message);
        }
    }
}

TEST_CASE("mutant alpha0 swapping the edge direction is caught") {
    const Decomposition& good = find_decomposition("hpl");
    Decomposition bad = good;
    bad.alpha0 = [&](const Signature& sig, const Sentence& rho) -> std::optional<Sentence> {
        // Swap the arguments of every ground lambda atom.  With a single
        // nominal all ground atoms are symmetric, so the sweep needs two.
        if (rho->kind == SKind::Pred && rho->name == "lambda" && rho->terms.size() == 2 &&
            rho->terms[0].args.empty() && rho->terms[1].args.empty() &&
            sig.noms.count(rho->terms[0].head) && sig.noms.count(rho->terms[1].head))
            return mk_at(rho->terms[1].head, mk_modal("lambda", {mk_nom(rho->terms[0].head)}));
        return good.alpha0(sig, rho);
    };
    Bounds b = small_bounds();
    b.noms = 2;
    b.props = 0;
    bool caught = false;
    for (const Signature& sig : enum_signatures(LogicId::HPL, b))
        if (!check_alpha0(bad, sig, b).pass) caught = true;
    CHECK(caught);
}

TEST_CASE("decomposable logics are strict") {
    for (const Decomposition& d : decomposition_registry()) CHECK(info(d.upper).strict);
}

TEST_CASE("nominals via decomposition agree with the direct extraction") {
    Bounds b = small_bounds();
    for (const char* id : {"hpl", "hfol"}) {
        const Decomposition& d = find_decomposition(id);
        for (const Signature& sig : enum_signatures(d.upper, b))
            enum_models(sig, b, [&](const Model& m) {
                Nominals via = nominals_via_decomposition(d, sig, m);
                Nominals direct = nominals_extract(sig, m);
                CHECK(via.noms == direct.noms);
                CHECK(via.worlds == direct.worlds);
                CHECK(via.interp == direct.interp);
                return true;
            });
    }
    CHECK_THROWS_AS(
        nominals_via_decomposition(find_decomposition("mpl"), Signature{}, Model{}),
        MalformedInput);
}
