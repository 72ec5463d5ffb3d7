#pragma once

// Elementary diagrams: nominals extraction, the hybrid connectives <i> and
// @_i, elementary extensions Sigma -> Sigma_M, diagram sentence sets, the
// forward/backward correspondence between diagram models and homomorphisms,
// coherence of base diagrams over constrained families, and the modal
// counterexample showing that a nominal-free logic has no diagrams.

#include "strat/decomp.hpp"

namespace strat {

// Nominals extraction (N, Nm): N(sig) is the nominal set, Nm(M) the world
// set together with the nominal interpretation.
struct Nominals {
    std::set<std::string> noms;
    std::vector<std::string> worlds;
    std::map<std::string, std::string> interp;  // nominal -> world
};

bool has_nominals_extraction(LogicId logic);
Nominals nominals_extract(const Signature& sig, const Model& m);

// Nominals extraction imported through a decomposition: the constants of the
// frame component interpret the nominals over the world carrier.  Agrees
// with nominals_extract on the hybrid logics; unsupported when the upper
// logic has no nominals (the frame component has no constants to read).
Nominals nominals_via_decomposition(const Decomposition& d, const Signature& sig, const Model& m);

// The hybrid connectives, validated against sig:
//   <i>    holds at w  iff  the nominal i denotes w;
//   @_i r  holds at w  iff  r holds at the world denoted by i.
Sentence nominal_sentence(const Signature& sig, const std::string& i);
Sentence at_sentence(const Signature& sig, const std::string& i, Sentence rho);

// The elementary extension iota : Sigma -> Sigma_M plus the diagram set E_M.
// Added symbols are named from the worlds ("w$u") and carrier elements
// ("e$x") of M, with apostrophes appended on collision.
struct DiagramPackage {
    SigMorphism iota;
    std::vector<Sentence> E;                    // sorted, duplicate-free
    std::map<std::string, std::string> denote;  // world -> added nominal/constant
    std::map<std::string, std::string> elem;    // carrier element -> added constant
    std::optional<Sentence> world_sentence;     // pointed diagrams only
};

bool has_diagrams(LogicId logic);  // pl, fol, relc/brelc, hpl, hfol
SigMorphism elementary_extension(const Signature& sig, const Model& m);
DiagramPackage diagram(const Signature& sig, const Model& m);

// Pointed diagram E_(M,w) = E_M + {<denote(w)>}; needs nominal sentences.
DiagramPackage sharp_diagram(const Signature& sig, const SharpModel& m);

// Does nprime (a Sigma_M-model) satisfy every sentence of pkg.E?
bool diagram_holds(const DiagramPackage& pkg, const Model& nprime);

// nprime |= E  ->  the homomorphism  m -> reduct(iota, nprime).
// Throws PreconditionError when nprime does not satisfy E.
ModelHom diagram_forward(const Signature& sig, const Model& m, const DiagramPackage& pkg,
                         const Model& nprime);

// h : m -> n  ->  the expansion of n over Sigma_M interpreting each added
// name by its h-image.  Throws PreconditionError when h is not a hom.
Model diagram_backward(const Signature& sig, const Model& m, const DiagramPackage& pkg,
                       const ModelHom& h, const Model& n);

// E-satisfying Sigma_M-models within bounds biject with homomorphisms from m
// into bounded Sigma-models, commuting with the iota-reduct.
Verdict check_diagram_iso(const Signature& sig, const Model& m, const Bounds& b);
Verdict check_sharp_diagram_iso(const Signature& sig, const SharpModel& m, const Bounds& b);

// The composed diagram (alpha0 image of the frame diagram plus the @-image
// of the per-world base diagrams) equals the direct diagram set.
Verdict check_composed_diagram(const Decomposition& d, const Signature& sig, const Model& m);

// Coherence of the base diagrams over a constrained family t:
//   (1) all per-world elementary extensions coincide;
//   (2) family diagram models biject with constrained homomorphisms from t.
// base_sig is a signature of the base institution; t a family model over it.
Verdict check_coherence(const Base& base, const Signature& base_sig, const Model& t,
                        const Bounds& b);

// The added nominals denote the stratification: in every Sigma_M-model N
// satisfying the alpha0-image of the frame diagram, the nominal added for a
// world u of M denotes exactly the image of u under the frame-diagram
// homomorphism extracted from N.
Verdict check_denotes_stratification(const Decomposition& d, const Signature& sig,
                                     const Model& m, const Bounds& b);

// The modal counterexample: over a one-proposition modal signature,
//   (a) the empty Kripke model globally satisfies every sentence,
//   (b) the two pointed models of the construction (differing only at the
//       inaccessible world) agree on all sentences, and
//   (c) no homomorphism exists between the corresponding reducts;
// together these rule out diagrams for the nominal-free modal logic.
Verdict mpl_counterexample_report(int depth);

}  // namespace strat
