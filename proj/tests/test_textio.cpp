#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strat/enumerate.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

using namespace strat;

namespace {

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

TEST_CASE("sentence grammar examples") {
    Sentence s = parse_sentence("(p & !q)");
    CHECK(s->kind == SKind::And);
    CHECK(s->subs[0]->kind == SKind::Prop);
    CHECK(s->subs[1]->kind == SKind::Not);

    Sentence at = parse_sentence("@i <>(nom j)");
    CHECK(at->kind == SKind::At);
    CHECK(at->name == "i");
    CHECK(at->subs[0]->kind == SKind::Modal);
    CHECK(at->subs[0]->subs[0]->kind == SKind::Nom);

    Sentence ex = parse_sentence("exists x . P(f(x))");
    CHECK(ex->kind == SKind::ExistsVar);
    CHECK(ex->name == "x");
    CHECK(ex->subs[0]->kind == SKind::Pred);
    CHECK(ex->subs[0]->terms[0].head == "f");

    Sentence en = parse_sentence("existsN n . @n p");
    CHECK(en->kind == SKind::ExistsNom);

    Sentence eq = parse_sentence("f(c) = c");
    CHECK(eq->kind == SKind::Eq);

    // Precedence: ! binds tighter than <>, which binds tighter than &.
    Sentence prec = parse_sentence("(<> !p & q)");
    CHECK(prec->kind == SKind::And);
    CHECK(prec->subs[0]->kind == SKind::Modal);
    CHECK(prec->subs[0]->subs[0]->kind == SKind::Not);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_sentence("(p &");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col > 1);
    }
    try {
        parse_signature("sig mpl {\n  props p;\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_model("model mpl { worlds }"), ParseError);
    CHECK_THROWS_AS(parse_world("{x ="), ParseError);
}

TEST_CASE("signature and model blocks round-trip") {
    Signature s = parse_signature("sig mpl { props: p; mods: lambda/2; }");
    CHECK(s.logic == LogicId::MPL);
    CHECK(s.props == std::set<std::string>{"p"});
    CHECK(parse_signature(render_signature(s)) == s);

    Model m = parse_model(
        "model mpl { worlds: u, v; rel lambda: (u, v); val u: ; val v: p; }");
    require_valid(validate_model(s, m));
    CHECK(m.kripke().rels.at("lambda") == std::set<std::vector<std::string>>{{"u", "v"}});
    CHECK(parse_model(render_model(m)) == m);
}

TEST_CASE("morphism blocks are self-contained") {
    SigMorphism phi = parse_morphism(
        "morph pl { dom { props: p; } cod { props: p, q; } prop p -> p; }");
    require_valid(validate_morphism(phi));
    CHECK(phi.props.at("p") == "p");
    CHECK(parse_morphism(render_morphism(phi)) == phi);
}

TEST_CASE("worlds round-trip, named and assignment") {
    WorldId named = WorldId::of("u");
    CHECK(parse_world(render_world(named)) == named);
    WorldId assign = WorldId::valuation({{"x", "a"}, {"y", "b"}});
    CHECK(parse_world(render_world(assign)) == assign);
}

TEST_CASE("round-trips on every enumerated value") {
    Bounds b = small_bounds();
    for (LogicId logic : {LogicId::PL, LogicId::HPL, LogicId::OFOL, LogicId::MMFOL}) {
        for (const Signature& sig : enum_signatures(logic, b)) {
            CHECK(parse_signature(render_signature(sig)) == sig);
            for (const Sentence& s : enum_sentences(sig, b))
                CHECK(sen_equal(parse_sentence(render_sentence(s)), s));
            enum_models(sig, b, [&](const Model& m) {
                CHECK(parse_model(render_model(m)) == m);
                return true;
            });
        }
        for (const SigMorphism& phi : enum_morphisms(logic, b))
            CHECK(parse_morphism(render_morphism(phi)) == phi);
    }
}

TEST_CASE("model rendering is canonical: worlds stay sorted") {
    Model m = parse_model(
        "model mpl { worlds: v, u; rel lambda: ; val u: ; val v: ; }");
    CHECK(m.kripke().worlds == std::vector<std::string>{"u", "v"});
    std::string text = render_model(m);
    CHECK(text.find("u") < text.find("v"));
}

TEST_CASE("verdict witnesses replay through the parser") {
    Verdict v = Verdict::fail("demo", "bad model", {{"model", ""}});
    Signature s = parse_signature("sig mpl { props: p; mods: lambda/2; }");
    Model m = parse_model("model mpl { worlds: u; rel lambda: (u, u); val u: p; }");
    v.witness[0].second = render_model(m);
    std::string rendered = render_verdict(v);
    CHECK(rendered.find("FAIL") != std::string::npos);
    CHECK(rendered.find("bad model") != std::string::npos);
    Model replayed = parse_model(v.witness[0].second);
    CHECK(replayed == m);
    require_valid(validate_model(s, replayed));
}
