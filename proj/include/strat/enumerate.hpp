#pragma once

// Bounded, deterministic enumeration of signatures, signature morphisms,
// sentences, models, homomorphisms, and expansions.  All spaces are raw
// (not up to isomorphism) and drawn from fixed name alphabets, so repeated
// runs list identical objects in identical order.

#include "strat/types.hpp"

#include <functional>

namespace strat {

struct Bounds {
    int props = 2;    // propositional symbols p1, p2, ...
    int noms = 1;     // nominals i1, ...
    int mods = 1;     // binary modalities m1, ... (polyadic logics)
    int mods3 = 0;    // ternary modalities n1, ...
    int funcs0 = 1;   // constants c1, ...
    int funcs1 = 1;   // unary functions f1, ...
    int funcs2 = 0;   // binary functions g1, ...
    int preds1 = 1;   // unary predicates P1, ...
    int preds2 = 1;   // binary predicates Q1, ... (r1, ... for rel fragments)
    int vars = 1;     // open variables x1, ... (ofol)
    int worlds = 2;   // world set sizes 0..worlds (w1, ...)
    int carrier = 2;  // carrier sizes 0..carrier (a1, ...)
    int depth = 2;    // sentence connective depth
    long cap = 50'000'000;  // hard ceiling on enumerated models per call

    static Bounds parse(const std::string& spec);  // "worlds=3,depth=2,..."
    std::string render() const;
};

// Visitors return false to stop enumeration early.
using ModelVisitor = std::function<bool(const Model&)>;

std::vector<Signature> enum_signatures(LogicId logic, const Bounds& b);

// All morphisms between two fixed signatures (same logic).
std::vector<SigMorphism> enum_morphisms_between(const Signature& dom, const Signature& cod);

// All morphisms between all pairs of enumerated signatures.
std::vector<SigMorphism> enum_morphisms(LogicId logic, const Bounds& b);

// All sentences of connective depth <= b.depth, cumulative, duplicate-free,
// with shared subtrees.  Deterministic order: atoms first, then by depth.
std::vector<Sentence> enum_sentences(const Signature& sig, const Bounds& b);

// Stream all models of sig within bounds.  Throws PreconditionError if more
// than b.cap models would be produced.
void enum_models(const Signature& sig, const Bounds& b, const ModelVisitor& visit);
std::vector<Model> enum_models_vec(const Signature& sig, const Bounds& b);

// All homomorphisms m -> n.
std::vector<ModelHom> enum_homs(const Signature& sig, const Model& m, const Model& n);

// Stream all theta-expansions of m: models over theta.cod whose theta-reduct
// equals m.  Free symbols range within the same bounds as enum_models.
void enum_expansions(const SigMorphism& theta, const Model& m, const Bounds& b,
                     const ModelVisitor& visit);

}  // namespace strat
