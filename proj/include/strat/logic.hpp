#pragma once

// Per-logic semantic operations: validation, sentence translation, model
// reducts, stratification (world sets and world maps), satisfaction, and
// homomorphism checking.

#include "strat/types.hpp"

#include <functional>

namespace strat {

// Validation.  Verdicts carry a description of the first violation found.
Verdict validate_signature(const Signature& sig);
Verdict validate_model(const Signature& sig, const Model& m);
Verdict validate_morphism(const SigMorphism& phi);
Verdict validate_sentence(const Signature& sig, const Sentence& s);
void require_valid(const Verdict& v);  // throws MalformedInput on failure

// Sen(phi): sentence translation along a signature morphism.
Sentence sen_translate(const SigMorphism& phi, const Sentence& s);

// Mod(phi): model reduct along a signature morphism.
Model mod_reduct(const SigMorphism& phi, const Model& m);

// Reduct of a homomorphism (the underlying maps are unchanged; this checks
// that they still form a homomorphism over the smaller signature).
ModelHom hom_reduct(const SigMorphism& phi, const ModelHom& h);

// Stratification: [[M]] and [[M']]_phi : [[M']] -> [[Mod(phi)M']].
std::vector<WorldId> worlds(const Signature& sig, const Model& m);
std::map<WorldId, WorldId> world_map(const SigMorphism& phi, const Model& m);

// [[h]] : [[M]] -> [[N]] for a homomorphism h : M -> N.
std::map<WorldId, WorldId> hom_world_map(const Signature& sig, const ModelHom& h,
                                         const Model& m, const Model& n);

// Pointwise satisfaction  M |=_w rho.
bool satisfies(const Signature& sig, const Model& m, const WorldId& w, const Sentence& s);

// Ordinary institution satisfaction for the non-stratified base logics
// (pl and the fo fragments), independent of any world.
bool base_satisfies(const Signature& sig, const Model& m, const Sentence& s);

// Homomorphism check: does h constitute a homomorphism m -> n over sig?
bool hom_check(const Signature& sig, const ModelHom& h, const Model& m, const Model& n);

// Is h an isomorphism m -> n?  (hom_check plus bijectivity of all maps.)
bool iso_check(const Signature& sig, const ModelHom& h, const Model& m, const Model& n);

// Apply an isomorphism: the unique n with h : m -> n iso acting as renaming.
Model apply_iso(const Signature& sig, const ModelHom& h, const Model& m);

// Term evaluation in an FO model under a variable environment.
std::string eval_term(const FOModel& fo, const std::map<std::string, std::string>& env,
                      const Term& t);

// OFOL: expansion of M along (F,P) -> (F+X,P) determined by a valuation w.
FOModel ofol_expand(const Signature& sig, const FOModel& m, const WorldId& w);

// A reusable evaluator that memoizes satisfaction of shared sentence
// subtrees against one fixed model.  satisfies() above is a one-shot call;
// sweeps evaluating many sentences against the same model should reuse one
// Evaluator per model.
class Evaluator {
  public:
    Evaluator(const Signature& sig, const Model& m);
    bool eval(const Sentence& s, const WorldId& w);
    // Satisfaction at every world at once, as a bitmask over world index
    // (worlds(sig, m) order).  Only valid when the model has <= 64 worlds.
    std::uint64_t eval_mask(const Sentence& s);
    const std::vector<WorldId>& world_list() const { return worlds_; }

  private:
    struct Env;
    std::uint64_t eval_rec(const SentenceNode* s, Env& env);

    const Signature& sig_;
    const Model& m_;
    std::vector<WorldId> worlds_;
    std::map<WorldId, int> index_;
    // The memo is keyed by node address, so every evaluated root must stay
    // alive for the evaluator's lifetime or a recycled allocation could hit
    // a stale entry.
    std::vector<Sentence> roots_;
    std::map<std::pair<const SentenceNode*, std::string>, std::uint64_t> memo_;
};

// Test hook: semantic mutations used by the CLI mutation smoke test.
enum class Mutation { None, DiaAsBox };
void set_mutation(Mutation m);
Mutation current_mutation();

}  // namespace strat
