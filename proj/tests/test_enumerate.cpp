#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strat/enumerate.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

using namespace strat;

namespace {

Signature pl_pq() {
    Signature s;
    s.logic = LogicId::PL;
    s.props = {"p", "q"};
    return s;
}

Signature mpl1() {
    Signature s;
    s.logic = LogicId::MPL;
    s.props = {"p1"};
    s.mods["lambda"] = 2;
    return s;
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

TEST_CASE("streams are deterministic across runs") {
    Bounds b = small_bounds();
    CHECK(enum_signatures(LogicId::HPL, b) == enum_signatures(LogicId::HPL, b));
    CHECK(enum_models_vec(mpl1(), b) == enum_models_vec(mpl1(), b));
    auto s1 = enum_sentences(mpl1(), b);
    auto s2 = enum_sentences(mpl1(), b);
    REQUIRE(s1.size() == s2.size());
    for (size_t k = 0; k < s1.size(); ++k) CHECK(sen_equal(s1[k], s2[k]));
    CHECK(enum_morphisms(LogicId::PL, b) == enum_morphisms(LogicId::PL, b));
}

TEST_CASE("model counts match the closed forms") {
    Bounds b;
    CHECK(enum_models_vec(pl_pq(), b).size() == 4);  // 2^2 valuations

    // One proposition over two fixed world names: 2^4 relations times 2^2
    // valuations, plus the one- and zero-world structures.
    long total = 0, two_world = 0;
    enum_models(mpl1(), b, [&](const Model& m) {
        ++total;
        if (m.kripke().worlds.size() == 2) ++two_world;
        return true;
    });
    CHECK(two_world == 64);
    CHECK(total == 69);
}

TEST_CASE("expansions along a propositional inclusion") {
    Signature dom;
    dom.logic = LogicId::PL;
    dom.props = {"p"};
    SigMorphism phi;
    phi.dom = dom;
    phi.cod = pl_pq();
    phi.props["p"] = "p";
    Model m{LogicId::PL, PLModel{{"p"}}};
    std::vector<Model> exps;
    enum_expansions(phi, m, small_bounds(), [&](const Model& e) {
        exps.push_back(e);
        return true;
    });
    CHECK(exps.size() == 2);  // q in or out
    for (const Model& e : exps) CHECK(mod_reduct(phi, e) == m);
}

TEST_CASE("sentence streams are duplicate-free and validated") {
    Bounds b = small_bounds();
    b.depth = 3;
    Signature s = mpl1();
    auto sentences = enum_sentences(s, b);
    CHECK(sentences.size() > 10);
    for (size_t a = 0; a < sentences.size(); ++a) {
        require_valid(validate_sentence(s, sentences[a]));
        for (size_t c = a + 1; c < sentences.size(); ++c)
            CHECK_FALSE(sen_equal(sentences[a], sentences[c]));
    }
}

TEST_CASE("every enumerated signature, morphism, and model validates") {
    Bounds b = small_bounds();
    for (LogicId logic : {LogicId::PL, LogicId::HPL, LogicId::OFOL, LogicId::MMFOL}) {
        for (const Signature& sig : enum_signatures(logic, b)) {
            require_valid(validate_signature(sig));
            enum_models(sig, b, [&](const Model& m) {
                require_valid(validate_model(sig, m));
                return true;
            });
        }
        for (const SigMorphism& phi : enum_morphisms(logic, b))
            require_valid(validate_morphism(phi));
    }
}

TEST_CASE("homomorphism streams agree with the brute-force filter") {
    Signature s = mpl1();
    Bounds b = small_bounds();
    auto models = enum_models_vec(s, b);
    long checked = 0;
    for (const Model& m : models) {
        if (m.kripke().worlds.size() != 2) continue;
        for (const Model& n : models) {
            if (n.kripke().worlds.size() != 1) continue;
            std::vector<ModelHom> brute;
            for (const auto& u : n.kripke().worlds) {
                ModelHom h;
                for (const auto& w : m.kripke().worlds) h.h0[w] = u;
                if (hom_check(s, h, m, n)) brute.push_back(h);
            }
            CHECK(enum_homs(s, m, n) == brute);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("model streams are duplicate-free, including the zero-world family") {
    Signature s;
    s.logic = LogicId::MMFOL;
    s.mods["lambda"] = 2;
    s.funcs["c"] = 0;
    Bounds b = small_bounds();
    auto models = enum_models_vec(s, b);
    long empties = 0;
    for (size_t a = 0; a < models.size(); ++a) {
        if (models[a].kripke().worlds.empty()) ++empties;
        for (size_t d = a + 1; d < models.size(); ++d) CHECK(models[a] != models[d]);
    }
    CHECK(empties == 1);
}

TEST_CASE("expansions exist for the zero-world family") {
    Signature dom;
    dom.logic = LogicId::MMFOL;
    dom.mods["lambda"] = 2;
    Signature cod = dom;
    cod.funcs["c"] = 0;
    SigMorphism phi{dom, cod, {}, {}, {{"lambda", "lambda"}}, {}, {}};
    KripkeModel empty;
    empty.rels["lambda"] = {};
    Model m{LogicId::MMFOL, empty};
    long count = 0;
    enum_expansions(phi, m, small_bounds(), [&](const Model&) {
        ++count;
        return true;
    });
    CHECK(count == 1);
}

TEST_CASE("bounds parse and render round-trip") {
    Bounds b = Bounds::parse("worlds=3,depth=1,props=4");
    CHECK(b.worlds == 3);
    CHECK(b.depth == 1);
    CHECK(b.props == 4);
    CHECK(b.noms == Bounds{}.noms);
    CHECK(Bounds::parse(b.render()).render() == b.render());
    CHECK_THROWS_AS(Bounds::parse("worlds=x"), MalformedInput);
    CHECK_THROWS_AS(Bounds::parse("nonsense=1"), MalformedInput);
}

TEST_CASE("the hard cap rejects oversized model spaces") {
    Signature s;
    s.logic = LogicId::MPL;
    s.props = {"p1", "p2", "p3", "p4"};
    s.mods["lambda"] = 2;
    Bounds b;
    b.worlds = 6;
    b.cap = 1000;
    CHECK_THROWS_AS(enum_models(s, b, [](const Model&) { return true; }), PreconditionError);
}
