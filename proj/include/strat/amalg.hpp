#pragma once

// Signature pushouts and (stratified) model amalgamation: construction of
// the unique amalgam of a compatible model pair, enumeration-backed
// uniqueness certification, semi-exactness sweeps, constraint preservation,
// and amalgamation through a registered decomposition.

#include "strat/decomp.hpp"
#include "strat/flatten.hpp"

namespace strat {

struct PushoutSquare {
    SigMorphism phi1;    // dom -> sig1
    SigMorphism phi2;    // dom -> sig2
    SigMorphism theta1;  // sig1 -> apex
    SigMorphism theta2;  // sig2 -> apex
};

// Componentwise pushout of two morphisms with a common domain.  Apex symbol
// names are the least member of each identification class, suffixed on the
// rare name clash between unidentified classes.
PushoutSquare pushout_signatures(const SigMorphism& phi1, const SigMorphism& phi2);

// Couniversality of the square against every cocone within the enumerated
// signature space: exactly one mediating morphism each.
Verdict check_pushout_couniversality(const PushoutSquare& sq, const Bounds& b);

struct Amalgamation {
    Model model;
    std::optional<WorldId> world;      // stratified amalgamation only
    long certified_candidates = -1;    // number of amalgams found by the oracle (-1: not run)
};

// The amalgam of a compatible pair (throws PreconditionError if the reducts
// differ).  With certify set, exhaustively enumerates all expansions within
// bounds and records how many amalgamate the pair (must be exactly 1).
Amalgamation amalgamate(const PushoutSquare& sq, const Model& m1, const Model& m2, bool certify,
                        const Bounds& b);

// Stratified variant: additionally produces the unique world of the amalgam
// mapping onto the two given pointed worlds.
Amalgamation stratified_amalgamate(const PushoutSquare& sq, const SharpModel& m1,
                                   const SharpModel& m2, bool certify, const Bounds& b);

// Amalgamation computed through a registered decomposition: frame parts and
// family parts are amalgamated separately and recomposed over the apex.
Amalgamation amalgamate_by_decomposition(const Decomposition& d, const PushoutSquare& sq,
                                         const Model& m1, const Model& m2);

// Semi-exactness sweep: over every pushout square of enumerated morphisms
// and every compatible model pair, a unique amalgam exists.
Verdict check_semi_exactness(LogicId logic, const Bounds& b);

// Stratified amalgamation sweep: the model square is a pullback on bounded
// objects and the world squares are pullbacks of sets.
Verdict check_stratified_sufficiency(LogicId logic, const Bounds& b);

// A constraint is preserved by amalgamation over sq (a pushout square of
// tilde signatures) when every apex family whose theta-reducts are both
// constrained is itself constrained.
Verdict check_constraint_preservation(const ConstraintPredicate& c, const PushoutSquare& sq,
                                      const Bounds& b);

}  // namespace strat
