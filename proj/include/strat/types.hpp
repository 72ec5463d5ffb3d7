#pragma once

// Core value types shared by every module: signatures, sentences, models,
// signature morphisms, model homomorphisms, world identifiers, and the
// Verdict type returned by law checkers.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace strat {

// ---------------------------------------------------------------------------
// Logic identifiers
// ---------------------------------------------------------------------------

enum class LogicId {
    PL,     // propositional logic
    FOL,    // first-order logic (single-sorted)
    REL,    // binary relations, one relation symbol per modality name
    RELC,   // relations + constants
    BREL,   // one fixed binary relation "lambda"
    SETC,   // constants only, no predicates, no sentences
    BRELC,  // "lambda" + constants
    MPL,    // modal propositional logic (K frames)
    MPLt,   // MPL over reflexive frames
    MPLs4,  // MPL over preorder frames
    MPLs5,  // MPL over equivalence frames
    HPL,    // hybrid propositional logic
    MFOL,   // modal first-order logic (constant domain, rigid constants)
    HFOL,   // hybrid first-order logic
    MMPL,   // multi-modal polyadic propositional logic
    MMFOL,  // multi-modal polyadic first-order logic
    OFOL,   // open first-order logic (stratified by valuations)
    TildePL,  // world-indexed families of PL models
    TildeFOL, // world-indexed families of FOL models
};

enum class FrameClass { Any, Reflexive, Preorder, Equivalence };

struct LogicInfo {
    LogicId id;
    std::string name;     // textual id used by the CLI and textio
    bool props;           // signature carries propositional symbols
    bool fo;              // signature carries function/predicate symbols
    bool noms;            // signature carries nominals
    bool mods;            // signature carries named modalities (else fixed "lambda" when kripke)
    bool vars;            // signature carries open variables (OFOL)
    bool kripke;          // models are Kripke structures
    bool kripke_fo;       // Kripke structures over first-order base models
    bool tilde;           // world-indexed family models (no relations/nominals)
    bool strict;          // stratification is strict (world maps are identities)
    FrameClass frame;
};

const LogicInfo& info(LogicId id);
LogicId logic_from_name(const std::string& name);
const std::vector<LogicId>& all_logics();

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

struct Signature {
    LogicId logic = LogicId::PL;
    std::set<std::string> props;
    std::set<std::string> noms;
    std::set<std::string> vars;                 // OFOL open variables
    std::map<std::string, int> mods;            // modality name -> relation arity (>= 2)
    std::map<std::string, int> funcs;           // function name -> arity (0 = constant)
    std::map<std::string, int> preds;           // predicate name -> arity (>= 1)

    auto operator<=>(const Signature&) const = default;
};

// ---------------------------------------------------------------------------
// Terms and sentences
// ---------------------------------------------------------------------------

struct Term {
    std::string head;            // function symbol or variable
    std::vector<Term> args;
};

// Written out by hand: a defaulted <=> cannot be synthesized for a type that
// recursively contains a vector of itself.
inline bool operator==(const Term& a, const Term& b) {
    return a.head == b.head && a.args == b.args;
}
inline bool operator<(const Term& a, const Term& b) {
    if (a.head != b.head) return a.head < b.head;
    return a.args < b.args;
}

enum class SKind {
    Prop,       // name
    Pred,       // name, terms
    Eq,         // terms[0] = terms[1]
    And,        // subs[0] & subs[1]
    Not,        // !subs[0]
    Modal,      // <name>(subs...), relation arity = subs.size() + 1
    At,         // @name subs[0]
    Nom,        // nominal sentence: name
    ExistsVar,  // exists name . subs[0]
    ExistsNom,  // existsN name . subs[0]
};

struct SentenceNode;
using Sentence = std::shared_ptr<const SentenceNode>;

struct SentenceNode {
    SKind kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Sentence> subs;
};

Sentence mk_prop(std::string name);
Sentence mk_pred(std::string name, std::vector<Term> terms);
Sentence mk_eq(Term lhs, Term rhs);
Sentence mk_and(Sentence a, Sentence b);
Sentence mk_not(Sentence a);
Sentence mk_modal(std::string name, std::vector<Sentence> subs);
Sentence mk_at(std::string nom, Sentence a);
Sentence mk_nom(std::string nom);
Sentence mk_exists_var(std::string var, Sentence a);
Sentence mk_exists_nom(std::string nom, Sentence a);

// Structural equality / ordering (shared subtrees compare equal).
bool sen_equal(const Sentence& a, const Sentence& b);
bool sen_less(const Sentence& a, const Sentence& b);

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

struct PLModel {
    std::set<std::string> val;   // true propositions

    auto operator<=>(const PLModel&) const = default;
};

struct FOModel {
    std::vector<std::string> carrier;  // sorted, unique
    std::map<std::string, std::map<std::vector<std::string>, std::string>> funcs;
    std::map<std::string, std::set<std::vector<std::string>>> preds;

    auto operator<=>(const FOModel&) const = default;
};

struct KripkeModel {
    std::vector<std::string> worlds;   // sorted, unique
    std::map<std::string, std::set<std::vector<std::string>>> rels;  // modality -> tuples
    std::map<std::string, std::string> noms;                         // nominal -> world
    std::map<std::string, std::set<std::string>> pval;               // world -> true props
    std::map<std::string, FOModel> fbase;                            // world -> base FO model

    auto operator<=>(const KripkeModel&) const = default;
};

struct Model {
    LogicId logic = LogicId::PL;
    std::variant<PLModel, FOModel, KripkeModel> data;

    PLModel& pl() { return std::get<PLModel>(data); }
    const PLModel& pl() const { return std::get<PLModel>(data); }
    FOModel& fo() { return std::get<FOModel>(data); }
    const FOModel& fo() const { return std::get<FOModel>(data); }
    KripkeModel& kripke() { return std::get<KripkeModel>(data); }
    const KripkeModel& kripke() const { return std::get<KripkeModel>(data); }

    auto operator<=>(const Model&) const = default;
};

// ---------------------------------------------------------------------------
// Worlds
// ---------------------------------------------------------------------------

// A world is either a named point (Kripke world, FO carrier element, or the
// PL point "*") or, for OFOL, a valuation of the signature's open variables.
struct WorldId {
    bool is_assign = false;
    std::string name;
    std::map<std::string, std::string> assign;

    auto operator<=>(const WorldId&) const = default;

    static WorldId of(std::string n) { return WorldId{false, std::move(n), {}}; }
    static WorldId valuation(std::map<std::string, std::string> a) {
        return WorldId{true, {}, std::move(a)};
    }
};

// ---------------------------------------------------------------------------
// Signature morphisms
// ---------------------------------------------------------------------------

struct SigMorphism {
    Signature dom;
    Signature cod;
    std::map<std::string, std::string> props;
    std::map<std::string, std::string> noms;
    std::map<std::string, std::string> mods;
    std::map<std::string, std::string> funcs;
    std::map<std::string, std::string> preds;
    // OFOL variables: morphisms are inclusions dom.vars <= cod.vars; no map.

    auto operator<=>(const SigMorphism&) const = default;
};

SigMorphism identity_morphism(const Signature& sig);
SigMorphism compose(const SigMorphism& first, const SigMorphism& second);

// ---------------------------------------------------------------------------
// Model homomorphisms
// ---------------------------------------------------------------------------

struct ModelHom {
    // Kripke logics: world map.  FO logics: carrier map.  PL: empty.
    std::map<std::string, std::string> h0;
    // Shared carrier map for Kripke-over-FO logics (rigid carriers).
    std::map<std::string, std::string> hbase;
    // Per-world carrier maps for TildeFOL models.
    std::map<std::string, std::map<std::string, std::string>> hworld;

    auto operator<=>(const ModelHom&) const = default;
};

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct Verdict {
    bool pass = true;
    std::string check;
    std::string message;
    std::vector<std::pair<std::string, std::string>> witness;  // label -> rendered value
    long instances = 0;  // how many cases the check covered

    static Verdict ok(std::string check, long instances = 0) {
        Verdict v;
        v.pass = true;
        v.check = std::move(check);
        v.instances = instances;
        return v;
    }
    static Verdict fail(std::string check, std::string message,
                        std::vector<std::pair<std::string, std::string>> witness = {}) {
        Verdict v;
        v.pass = false;
        v.check = std::move(check);
        v.message = std::move(message);
        v.witness = std::move(witness);
        return v;
    }
    // Keep the first failure, accumulate instance counts.
    Verdict& merge(const Verdict& other) {
        instances += other.instances;
        if (pass && !other.pass) {
            pass = false;
            check = other.check;
            message = other.message;
            witness = other.witness;
        }
        return *this;
    }
};

// Thrown for malformed inputs (bad signature, ill-typed sentence, ...).
struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an operation's semantic precondition fails (e.g. amalgamation
// of a non-compatible pair).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace strat
