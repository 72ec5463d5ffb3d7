#pragma once

// Flattenings of a stratified logic: pointed models (sharp), global
// satisfaction (star), and the tilde construction sending a model to the
// world-indexed family of its base-institution components, together with the
// transpose/counit structure of the adjunction between pointed models and
// tilde families.

#include "strat/enumerate.hpp"
#include "strat/types.hpp"

#include <functional>

namespace strat {

struct SharpModel {
    Model model;
    WorldId world;

    auto operator<=>(const SharpModel&) const = default;
};

// (M, w) |= rho  iff  M |=_w rho.
bool sharp_satisfies(const Signature& sig, const SharpModel& m, const Sentence& s);

// M |=* rho  iff  M |=_w rho for every w (vacuously true on empty world sets).
bool global_satisfies(const Signature& sig, const Model& m, const Sentence& s);

// A constraint on tilde families (and their homomorphisms), used to carve
// out the image of the tilde construction.
struct ConstraintPredicate {
    std::string id;
    std::function<bool(const Signature& tilde_sig, const Model& tilde)> model_ok;
    std::function<bool(const Signature& tilde_sig, const ModelHom& h, const Model& m,
                       const Model& n)>
        hom_ok;
};
const ConstraintPredicate& find_constraint(const std::string& id);

// A registered base institution for a stratified logic.
struct Base {
    std::string id;       // registry key, e.g. "mpl", "mfol_setc"
    LogicId upper;        // the stratified logic
    LogicId base;         // the base institution
    LogicId tilde;        // logic of the tilde families over Phi(sig)
    bool shared;          // beta is independent of the world
    std::string constraint_id;
    std::function<Signature(const Signature&)> phi;
    std::function<SigMorphism(const SigMorphism&)> phi_mor;
    // alpha embeds base sentences into the stratified logic (nullopt when the
    // base has no sentence translation, e.g. setc).
    std::function<std::optional<Sentence>(const Signature& upper_sig, const Sentence& s)> alpha;
    // beta_sig(M, w): the base component of M at world w.
    std::function<Model(const Signature& upper_sig, const Model& m, const WorldId& w)> beta;
};

const std::vector<Base>& base_registry();
const Base& find_base(const std::string& id);

// Signature of the tilde families attached to an upper signature.
Signature tilde_signature(const Base& base, const Signature& upper_sig);

// The transpose of beta: M  |->  ([[M]], (beta(M,w))_w).
Model transpose_beta(const Base& base, const Signature& upper_sig, const Model& m);

// Counit: ((W,B), w)  |->  B^w.
Model counit(const Base& base, const Model& tilde, const WorldId& w);

// Transport of an upper homomorphism to a tilde homomorphism.
ModelHom transpose_hom(const Base& base, const Signature& upper_sig, const ModelHom& h,
                       const Model& m, const Model& n);

// Adjunction checks over the bounded model space:
//   - counit(transpose_beta(M), w) == beta(M, w) for every w,
//   - transposed homs are tilde homs satisfying the registered constraint,
//   - alpha-translated base sentences satisfy beta(M,w) |= rho iff M |=_w alpha(rho).
Verdict check_adjunction(const Base& base, const Signature& upper_sig, const Bounds& b);

}  // namespace strat
