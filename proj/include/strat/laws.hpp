#pragma once

// Institution-level law checks: the satisfaction condition, functoriality of
// Sen/Mod, the stratification laws (compositionality of world maps and
// naturality against homomorphisms), strictness, surjectivity of world maps,
// and preservation of satisfaction by isomorphisms.  The sweep_* functions
// exhaust the bounded enumeration spaces and return the first failure with a
// replayable witness.

#include "strat/enumerate.hpp"
#include "strat/types.hpp"

#include <functional>

namespace strat {

// Pluggable world-map computation, so tests can check that the sweeps catch
// a broken stratification.
using WorldMapFn = std::function<std::map<WorldId, WorldId>(const SigMorphism&, const Model&)>;

// Mod(phi)M' |=_{w'map} rho  iff  M' |=_{w'} Sen(phi)rho, for all w'.
Verdict check_satisfaction_condition(const SigMorphism& phi, const Model& mprime,
                                     const Sentence& rho);

// [[M']]_phi surjective onto [[Mod(phi)M']].
Verdict check_surjectivity(const SigMorphism& phi, const Model& mprime);

Verdict sweep_satisfaction_condition(LogicId logic, const Bounds& b);
Verdict sweep_functor_laws(LogicId logic, const Bounds& b);
Verdict sweep_stratification(LogicId logic, const Bounds& b, const WorldMapFn* wm = nullptr);
Verdict sweep_strictness(LogicId logic, const Bounds& b);
Verdict sweep_surjectivity(LogicId logic, const Bounds& b);
Verdict sweep_iso_preservation(LogicId logic, const Bounds& b);

}  // namespace strat
