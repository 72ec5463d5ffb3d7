#pragma once

// Decompositions of a stratified logic into a frame institution (holding the
// relations and nominal interpretations) and a constrained tilde family of
// base models.  A model decomposes into the pair (frame part, family part)
// and recomposes uniquely from any compatible pair.

#include "strat/flatten.hpp"

namespace strat {

struct Decomposition {
    std::string id;       // registry key: "mpl", "hpl", "mfol", "hfol", "mmpl", "mmfol"
    LogicId upper;
    LogicId s0;           // frame institution: brelc or rel
    std::string base_id;  // key into the base registry for the family part
    std::function<Signature(const Signature&)> phi0;
    std::function<SigMorphism(const SigMorphism&)> phi0_mor;
    // alpha0 embeds frame sentences into the stratified logic; nullopt when
    // no translation is registered (the non-hybrid rows).
    std::function<std::optional<Sentence>(const Signature& upper_sig, const Sentence& s)> alpha0;
};

const std::vector<Decomposition>& decomposition_registry();
const Decomposition& find_decomposition(const std::string& id);

// M  |->  (frame model over phi0(sig), tilde family over the base signature).
std::pair<Model, Model> decompose(const Decomposition& d, const Signature& sig, const Model& m);

// Inverse of decompose.  Requires matching world sets and the registered
// constraint on the family; throws PreconditionError otherwise.
Model recompose(const Decomposition& d, const Signature& sig, const Model& frame,
                const Model& tilde);

// Round trips in both directions over the bounded spaces.
Verdict check_decomposition(const Decomposition& d, const Signature& sig, const Bounds& b);

// alpha0 commutes with satisfaction:
// frame(M) |= rho   iff   M |=* alpha0(rho)   (and pointwise at every world).
Verdict check_alpha0(const Decomposition& d, const Signature& sig, const Bounds& b);

}  // namespace strat
