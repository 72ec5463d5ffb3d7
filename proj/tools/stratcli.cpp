// Command-line front end: satisfaction queries, reducts and translations,
// pushouts and amalgamation, decomposition, elementary diagrams, law-sweep
// verification, and bounded enumeration.  Exit codes: 0 success/true/pass,
// 1 false/fail (witness on stdout), 2 usage/parse/validation error.

#include "CLI11.hpp"
#include "strat/amalg.hpp"
#include "strat/diagrams.hpp"
#include "strat/laws.hpp"
#include "strat/logic.hpp"
#include "strat/textio.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace strat;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Signature load_sig(const std::string& path) {
    Signature sig = parse_signature(slurp(path));
    require_valid(validate_signature(sig));
    return sig;
}

Model load_model(const std::string& path, const Signature& sig) {
    Model m = parse_model(slurp(path));
    require_valid(validate_model(sig, m));
    return m;
}

SigMorphism load_morph(const std::string& path) {
    SigMorphism phi = parse_morphism(slurp(path));
    require_valid(validate_morphism(phi));
    return phi;
}

Sentence load_phi(const std::string& text, const Signature& sig) {
    Sentence s = parse_sentence(text);
    require_valid(validate_sentence(sig, s));
    return s;
}

int verdict_exit(const Verdict& v) {
    std::cout << render_verdict(v);
    return v.pass ? 0 : 1;
}

// The verify suites.  Each returns a merged verdict over its sweeps.
Verdict suite_satcond(const Bounds& b) {
    Verdict total = Verdict::ok("satcond");
    for (LogicId l : {LogicId::PL, LogicId::MPL, LogicId::HPL})
        total.merge(sweep_satisfaction_condition(l, b));
    return total;
}

Verdict suite_laws(const Bounds& b) {
    Verdict total = Verdict::ok("laws");
    // The composite-morphism loops grow quickly with signature count; the
    // cheap propositional and open-fo instances keep verify interactive.
    for (LogicId l : {LogicId::PL, LogicId::OFOL}) {
        total.merge(sweep_functor_laws(l, b));
        total.merge(sweep_stratification(l, b));
        total.merge(sweep_surjectivity(l, b));
        total.merge(sweep_iso_preservation(l, b));
        if (info(l).strict) total.merge(sweep_strictness(l, b));
    }
    return total;
}

Verdict suite_semiexact(const Bounds& b) {
    Verdict total = Verdict::ok("semiexact");
    for (LogicId l : {LogicId::PL, LogicId::REL, LogicId::MPL, LogicId::HPL})
        total.merge(check_semi_exactness(l, b));
    return total;
}

Verdict suite_diagrams(const Bounds& b) {
    Verdict total = Verdict::ok("diagrams");
    const Decomposition& d = find_decomposition("hpl");
    for (const Signature& sig : enum_signatures(LogicId::HPL, b)) {
        enum_models(sig, b, [&](const Model& m) {
            total.merge(check_diagram_iso(sig, m, b));
            total.merge(check_composed_diagram(d, sig, m));
            total.merge(check_denotes_stratification(d, sig, m, b));
            return total.pass;
        });
        if (!total.pass) break;
    }
    return total;
}

Verdict suite_coherence(const Bounds& b) {
    Verdict total = Verdict::ok("coherence");
    const Base& base = find_base("hpl");
    Signature bsig;
    bsig.logic = base.base;
    for (int i = 1; i <= b.props; ++i) bsig.props.insert("p" + std::to_string(i));
    Signature tsig = tilde_signature(base, bsig);
    enum_models(tsig, b, [&](const Model& t) {
        total.merge(check_coherence(base, bsig, t, b));
        return total.pass;
    });
    return total;
}

Verdict suite_counterexample(const Bounds& b) {
    return mpl_counterexample_report(b.depth);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stratified institutions workbench"};
    app.require_subcommand(1);

    std::string sig_path, model_path, model2_path, morph_path, morph2_path;
    std::string frame_path, family_path, world_text, phi_text;
    std::string decomp_id, suite = "all", bounds_text, kind = "models", logic_name;
    bool certify = false, sharp = false, mutate = false;

    auto* sat = app.add_subcommand("sat", "pointwise satisfaction");
    sat->add_option("--logic", logic_name);
    sat->add_option("--sig", sig_path)->required();
    sat->add_option("--model", model_path)->required();
    sat->add_option("--world", world_text)->required();
    sat->add_option("--phi", phi_text)->required();

    auto* gsat = app.add_subcommand("gsat", "global satisfaction");
    gsat->add_option("--logic", logic_name);
    gsat->add_option("--sig", sig_path)->required();
    gsat->add_option("--model", model_path)->required();
    gsat->add_option("--phi", phi_text)->required();

    auto* reduct = app.add_subcommand("reduct", "model reduct along a morphism");
    reduct->add_option("--morph", morph_path)->required();
    reduct->add_option("--model", model_path)->required();

    auto* translate = app.add_subcommand("translate", "sentence translation along a morphism");
    translate->add_option("--morph", morph_path)->required();
    translate->add_option("--phi", phi_text)->required();

    auto* pushout = app.add_subcommand("pushout", "pushout of two signature morphisms");
    pushout->add_option("--phi1", morph_path)->required();
    pushout->add_option("--phi2", morph2_path)->required();

    auto* amalg = app.add_subcommand("amalgamate", "amalgamate a compatible model pair");
    amalg->add_option("--phi1", morph_path)->required();
    amalg->add_option("--phi2", morph2_path)->required();
    amalg->add_option("--model1", model_path)->required();
    amalg->add_option("--model2", model2_path)->required();
    amalg->add_flag("--certify", certify);
    amalg->add_option("--bounds", bounds_text);

    auto* amalgd = app.add_subcommand("amalgamate-decomp", "amalgamate through a decomposition");
    amalgd->add_option("--decomp", decomp_id)->required();
    amalgd->add_option("--phi1", morph_path)->required();
    amalgd->add_option("--phi2", morph2_path)->required();
    amalgd->add_option("--model1", model_path)->required();
    amalgd->add_option("--model2", model2_path)->required();

    auto* decomp = app.add_subcommand("decompose", "split a model into frame and family parts");
    decomp->add_option("--decomp", decomp_id)->required();
    decomp->add_option("--sig", sig_path)->required();
    decomp->add_option("--model", model_path)->required();

    auto* recomp = app.add_subcommand("recompose", "rebuild a model from frame and family parts");
    recomp->add_option("--decomp", decomp_id)->required();
    recomp->add_option("--sig", sig_path)->required();
    recomp->add_option("--frame", frame_path)->required();
    recomp->add_option("--family", family_path)->required();

    auto* diag = app.add_subcommand("diagram", "elementary extension and diagram set");
    diag->add_option("--logic", logic_name);
    diag->add_option("--sig", sig_path)->required();
    diag->add_option("--model", model_path)->required();
    diag->add_flag("--sharp", sharp);
    diag->add_option("--world", world_text);

    auto* diagc = app.add_subcommand("diagram-check", "diagram model/hom correspondence");
    diagc->add_option("--sig", sig_path)->required();
    diagc->add_option("--model", model_path)->required();
    diagc->add_flag("--sharp", sharp);
    diagc->add_option("--world", world_text);
    diagc->add_option("--bounds", bounds_text);

    auto* verify = app.add_subcommand("verify", "law sweeps over the bounded spaces");
    verify->add_option("--suite", suite)
        ->check(CLI::IsMember(
            {"satcond", "laws", "semiexact", "diagrams", "coherence", "counterexample", "all"}));
    verify->add_option("--bounds", bounds_text);
    verify->add_flag("--mutate", mutate);

    auto* en = app.add_subcommand("enum", "bounded enumeration");
    en->add_option("--kind", kind)
        ->check(CLI::IsMember({"sigs", "morphs", "sentences", "models"}));
    en->add_option("--logic", logic_name);
    en->add_option("--sig", sig_path);
    en->add_option("--bounds", bounds_text);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Bounds b = bounds_text.empty() || bounds_text == "default" ? Bounds{}
                                                                   : Bounds::parse(bounds_text);

        if (sat->parsed()) {
            Signature sig = load_sig(sig_path);
            if (!logic_name.empty() && logic_from_name(logic_name) != sig.logic)
                throw UsageError("--logic disagrees with the sig file");
            Model m = load_model(model_path, sig);
            bool t = satisfies(sig, m, parse_world(world_text), load_phi(phi_text, sig));
            std::cout << (t ? "true" : "false") << "\n";
            return t ? 0 : 1;
        }
        if (gsat->parsed()) {
            Signature sig = load_sig(sig_path);
            if (!logic_name.empty() && logic_from_name(logic_name) != sig.logic)
                throw UsageError("--logic disagrees with the sig file");
            Model m = load_model(model_path, sig);
            bool t = global_satisfies(sig, m, load_phi(phi_text, sig));
            std::cout << (t ? "true" : "false") << "\n";
            return t ? 0 : 1;
        }
        if (reduct->parsed()) {
            SigMorphism phi = load_morph(morph_path);
            Model m = load_model(model_path, phi.cod);
            std::cout << render_model(mod_reduct(phi, m));
            return 0;
        }
        if (translate->parsed()) {
            SigMorphism phi = load_morph(morph_path);
            Sentence s = load_phi(phi_text, phi.dom);
            std::cout << render_sentence(sen_translate(phi, s)) << "\n";
            return 0;
        }
        if (pushout->parsed()) {
            PushoutSquare sq = pushout_signatures(load_morph(morph_path), load_morph(morph2_path));
            std::cout << "theta1:\n" << render_morphism(sq.theta1);
            std::cout << "theta2:\n" << render_morphism(sq.theta2);
            return 0;
        }
        if (amalg->parsed()) {
            PushoutSquare sq = pushout_signatures(load_morph(morph_path), load_morph(morph2_path));
            Model m1 = load_model(model_path, sq.phi1.cod);
            Model m2 = load_model(model2_path, sq.phi2.cod);
            Amalgamation a = amalgamate(sq, m1, m2, certify, b);
            std::cout << render_model(a.model);
            if (certify) std::cout << "candidates: " << a.certified_candidates << "\n";
            return 0;
        }
        if (amalgd->parsed()) {
            const Decomposition& d = find_decomposition(decomp_id);
            PushoutSquare sq = pushout_signatures(load_morph(morph_path), load_morph(morph2_path));
            Model m1 = load_model(model_path, sq.phi1.cod);
            Model m2 = load_model(model2_path, sq.phi2.cod);
            std::cout << render_model(amalgamate_by_decomposition(d, sq, m1, m2).model);
            return 0;
        }
        if (decomp->parsed()) {
            const Decomposition& d = find_decomposition(decomp_id);
            Signature sig = load_sig(sig_path);
            auto [frame, family] = decompose(d, sig, load_model(model_path, sig));
            std::cout << "frame:\n" << render_model(frame);
            std::cout << "family:\n" << render_model(family);
            return 0;
        }
        if (recomp->parsed()) {
            const Decomposition& d = find_decomposition(decomp_id);
            Signature sig = load_sig(sig_path);
            const Base& base = find_base(d.base_id);
            Model frame = load_model(frame_path, d.phi0(sig));
            Model family = load_model(family_path, tilde_signature(base, sig));
            std::cout << render_model(recompose(d, sig, frame, family));
            return 0;
        }
        if (diag->parsed() || diagc->parsed()) {
            Signature sig = load_sig(sig_path);
            Model m = load_model(model_path, sig);
            if (sharp && world_text.empty()) throw UsageError("--sharp needs --world");
            if (diagc->parsed()) {
                Verdict v = sharp
                                ? check_sharp_diagram_iso(sig, {m, parse_world(world_text)}, b)
                                : check_diagram_iso(sig, m, b);
                return verdict_exit(v);
            }
            DiagramPackage pkg = sharp ? sharp_diagram(sig, {m, parse_world(world_text)})
                                       : diagram(sig, m);
            std::cout << "iota:\n" << render_morphism(pkg.iota) << "E:\n";
            for (const Sentence& s : pkg.E) std::cout << "  " << render_sentence(s) << "\n";
            if (pkg.world_sentence)
                std::cout << "world: " << render_sentence(*pkg.world_sentence) << "\n";
            return 0;
        }
        if (verify->parsed()) {
            if (mutate) set_mutation(Mutation::DiaAsBox);
            Verdict total = Verdict::ok("verify");
            if (suite == "satcond" || suite == "all") total.merge(suite_satcond(b));
            if (suite == "laws" || suite == "all") total.merge(suite_laws(b));
            if (suite == "semiexact" || suite == "all") total.merge(suite_semiexact(b));
            if (suite == "diagrams" || suite == "all") total.merge(suite_diagrams(b));
            if (suite == "coherence" || suite == "all") total.merge(suite_coherence(b));
            if (suite == "counterexample" || suite == "all")
                total.merge(suite_counterexample(b));
            return verdict_exit(total);
        }
        if (en->parsed()) {
            if (kind == "sentences" || (kind == "models" && !sig_path.empty())) {
                Signature sig = load_sig(sig_path);
                if (kind == "sentences")
                    for (const Sentence& s : enum_sentences(sig, b))
                        std::cout << render_sentence(s) << "\n";
                else
                    enum_models(sig, b, [&](const Model& m) {
                        std::cout << render_model(m) << "\n";
                        return true;
                    });
                return 0;
            }
            LogicId logic = logic_from_name(logic_name);
            if (kind == "sigs")
                for (const Signature& sig : enum_signatures(logic, b))
                    std::cout << render_signature(sig) << "\n";
            else if (kind == "morphs")
                for (const SigMorphism& phi : enum_morphisms(logic, b))
                    std::cout << render_morphism(phi) << "\n";
            else
                throw UsageError("enum --kind " + kind + " needs --sig");
            return 0;
        }
        throw UsageError("no subcommand");
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
