#include "strat/logic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace strat {

// ---------------------------------------------------------------------------
// Logic registry
// ---------------------------------------------------------------------------

namespace {

const std::vector<LogicInfo>& logic_table() {
    static const std::vector<LogicInfo> table = {
        //  id               name        props fo  noms mods vars kripke kfo tilde strict frame
        {LogicId::PL,       "pl",        true, false, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::FOL,      "fol",       false, true, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::REL,      "rel",       false, true, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::RELC,     "relc",      false, true, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::BREL,     "brel",      false, true, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::SETC,     "setc",      false, true, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::BRELC,    "brelc",     false, true, false, false, false, false, false, false, true, FrameClass::Any},
        {LogicId::MPL,      "mpl",       true, false, false, false, false, true, false, false, true, FrameClass::Any},
        {LogicId::MPLt,     "mplt",      true, false, false, false, false, true, false, false, true, FrameClass::Reflexive},
        {LogicId::MPLs4,    "mpls4",     true, false, false, false, false, true, false, false, true, FrameClass::Preorder},
        {LogicId::MPLs5,    "mpls5",     true, false, false, false, false, true, false, false, true, FrameClass::Equivalence},
        {LogicId::HPL,      "hpl",       true, false, true, false, false, true, false, false, true, FrameClass::Any},
        {LogicId::MFOL,     "mfol",      false, true, false, false, false, true, true, false, true, FrameClass::Any},
        {LogicId::HFOL,     "hfol",      false, true, true, false, false, true, true, false, true, FrameClass::Any},
        {LogicId::MMPL,     "mmpl",      true, false, false, true, false, true, false, false, true, FrameClass::Any},
        {LogicId::MMFOL,    "mmfol",     false, true, false, true, false, true, true, false, true, FrameClass::Any},
        {LogicId::OFOL,     "ofol",      false, true, false, false, true, false, false, false, false, FrameClass::Any},
        {LogicId::TildePL,  "tilde_pl",  true, false, false, false, false, true, false, true, true, FrameClass::Any},
        {LogicId::TildeFOL, "tilde_fol", false, true, false, false, false, true, true, true, true, FrameClass::Any},
    };
    return table;
}

bool is_fo_fragment(LogicId id) {
    switch (id) {
        case LogicId::FOL:
        case LogicId::REL:
        case LogicId::RELC:
        case LogicId::BREL:
        case LogicId::SETC:
        case LogicId::BRELC:
            return true;
        default:
            return false;
    }
}

// Logics whose modality set is the single binary "lambda".
bool fixed_lambda(LogicId id) {
    switch (id) {
        case LogicId::MPL:
        case LogicId::MPLt:
        case LogicId::MPLs4:
        case LogicId::MPLs5:
        case LogicId::HPL:
        case LogicId::MFOL:
        case LogicId::HFOL:
            return true;
        default:
            return false;
    }
}

Mutation g_mutation = Mutation::None;

}  // namespace

const LogicInfo& info(LogicId id) {
    for (const auto& li : logic_table())
        if (li.id == id) return li;
    throw MalformedInput("unknown logic id");
}

LogicId logic_from_name(const std::string& name) {
    for (const auto& li : logic_table())
        if (li.name == name) return li.id;
    throw MalformedInput("unknown logic name: " + name);
}

const std::vector<LogicId>& all_logics() {
    static const std::vector<LogicId> ids = [] {
        std::vector<LogicId> v;
        for (const auto& li : logic_table()) v.push_back(li.id);
        return v;
    }();
    return ids;
}

void set_mutation(Mutation m) { g_mutation = m; }
Mutation current_mutation() { return g_mutation; }

// ---------------------------------------------------------------------------
// Sentence constructors
// ---------------------------------------------------------------------------

namespace {
Sentence node(SKind k, std::string name, std::vector<Term> terms, std::vector<Sentence> subs) {
    auto n = std::make_shared<SentenceNode>();
    n->kind = k;
    n->name = std::move(name);
    n->terms = std::move(terms);
    n->subs = std::move(subs);
    return n;
}
}  // namespace

Sentence mk_prop(std::string name) { return node(SKind::Prop, std::move(name), {}, {}); }
Sentence mk_pred(std::string name, std::vector<Term> terms) {
    return node(SKind::Pred, std::move(name), std::move(terms), {});
}
Sentence mk_eq(Term lhs, Term rhs) {
    return node(SKind::Eq, "", {std::move(lhs), std::move(rhs)}, {});
}
Sentence mk_and(Sentence a, Sentence b) {
    return node(SKind::And, "", {}, {std::move(a), std::move(b)});
}
Sentence mk_not(Sentence a) { return node(SKind::Not, "", {}, {std::move(a)}); }
Sentence mk_modal(std::string name, std::vector<Sentence> subs) {
    return node(SKind::Modal, std::move(name), {}, std::move(subs));
}
Sentence mk_at(std::string nom, Sentence a) {
    return node(SKind::At, std::move(nom), {}, {std::move(a)});
}
Sentence mk_nom(std::string nom) { return node(SKind::Nom, std::move(nom), {}, {}); }
Sentence mk_exists_var(std::string var, Sentence a) {
    return node(SKind::ExistsVar, std::move(var), {}, {std::move(a)});
}
Sentence mk_exists_nom(std::string nom, Sentence a) {
    return node(SKind::ExistsNom, std::move(nom), {}, {std::move(a)});
}

bool sen_equal(const Sentence& a, const Sentence& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->terms != b->terms) return false;
    if (a->subs.size() != b->subs.size()) return false;
    for (size_t i = 0; i < a->subs.size(); ++i)
        if (!sen_equal(a->subs[i], b->subs[i])) return false;
    return true;
}

bool sen_less(const Sentence& a, const Sentence& b) {
    if (a.get() == b.get()) return false;
    if (!a) return static_cast<bool>(b);
    if (!b) return false;
    if (a->kind != b->kind) return a->kind < b->kind;
    if (a->name != b->name) return a->name < b->name;
    if (a->terms != b->terms) return a->terms < b->terms;
    if (a->subs.size() != b->subs.size()) return a->subs.size() < b->subs.size();
    for (size_t i = 0; i < a->subs.size(); ++i) {
        if (sen_less(a->subs[i], b->subs[i])) return true;
        if (sen_less(b->subs[i], a->subs[i])) return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '\''))
            return false;
    return std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_';
}

Verdict bad(const std::string& what) { return Verdict::fail("validate", what); }

}  // namespace

Verdict validate_signature(const Signature& sig) {
    const LogicInfo& li = info(sig.logic);
    std::set<std::string> seen;
    auto names_ok = [&](const auto& container, const char* kind) -> std::optional<Verdict> {
        for (const auto& entry : container) {
            std::string name;
            if constexpr (std::is_same_v<std::decay_t<decltype(entry)>, std::string>)
                name = entry;
            else
                name = entry.first;
            if (!valid_name(name)) return bad(std::string(kind) + " name invalid: " + name);
            if (!seen.insert(name).second)
                return bad("symbol name used twice: " + name);
        }
        return std::nullopt;
    };
    if (auto v = names_ok(sig.props, "prop")) return *v;
    if (auto v = names_ok(sig.noms, "nominal")) return *v;
    if (auto v = names_ok(sig.vars, "variable")) return *v;
    if (auto v = names_ok(sig.mods, "modality")) return *v;
    if (auto v = names_ok(sig.funcs, "function")) return *v;
    if (auto v = names_ok(sig.preds, "predicate")) return *v;

    if (!li.props && !sig.props.empty()) return bad(li.name + " signatures have no propositions");
    if (!li.fo && (!sig.funcs.empty() || !sig.preds.empty()))
        return bad(li.name + " signatures have no function/predicate symbols");
    if (!li.noms && !sig.noms.empty()) return bad(li.name + " signatures have no nominals");
    if (!li.vars && !sig.vars.empty()) return bad(li.name + " signatures have no open variables");
    bool kripke_mods = li.kripke && !li.tilde;
    if (!kripke_mods && !sig.mods.empty()) return bad(li.name + " signatures have no modalities");
    if (fixed_lambda(sig.logic)) {
        if (sig.mods != std::map<std::string, int>{{"lambda", 2}})
            return bad(li.name + " signatures have exactly the binary modality lambda");
    }
    for (const auto& [m, ar] : sig.mods)
        if (ar < 2) return bad("modality arity must be >= 2: " + m);
    for (const auto& [f, ar] : sig.funcs)
        if (ar < 0) return bad("function arity must be >= 0: " + f);
    for (const auto& [p, ar] : sig.preds)
        if (ar < 1) return bad("predicate arity must be >= 1: " + p);

    // Fragment shapes.
    switch (sig.logic) {
        case LogicId::REL:
            if (!sig.funcs.empty()) return bad("rel signatures have no function symbols");
            break;
        case LogicId::RELC:
        case LogicId::BRELC:
        case LogicId::SETC:
            for (const auto& [f, ar] : sig.funcs)
                if (ar != 0) return bad("only constants allowed in " + li.name + ": " + f);
            break;
        default:
            break;
    }
    if (sig.logic == LogicId::BREL || sig.logic == LogicId::BRELC) {
        if (sig.preds != std::map<std::string, int>{{"lambda", 2}})
            return bad(li.name + " signatures have exactly the binary predicate lambda");
    }
    if (sig.logic == LogicId::SETC && !sig.preds.empty())
        return bad("setc signatures have no predicates");
    return Verdict::ok("validate_signature", 1);
}

namespace {

Verdict validate_fo_model(const Signature& sig, const FOModel& fo, bool allow_empty) {
    if (!std::is_sorted(fo.carrier.begin(), fo.carrier.end()) ||
        std::adjacent_find(fo.carrier.begin(), fo.carrier.end()) != fo.carrier.end())
        return bad("carrier must be sorted and duplicate-free");
    if (!allow_empty && fo.carrier.empty()) return bad("carrier must be nonempty");
    std::set<std::string> elems(fo.carrier.begin(), fo.carrier.end());
    if (fo.funcs.size() != sig.funcs.size()) return bad("function interpretation count mismatch");
    for (const auto& [f, ar] : sig.funcs) {
        auto it = fo.funcs.find(f);
        if (it == fo.funcs.end()) return bad("missing function interpretation: " + f);
        size_t expect = 1;
        for (int i = 0; i < ar; ++i) expect *= fo.carrier.size();
        if (it->second.size() != expect) return bad("function table not total: " + f);
        for (const auto& [args, val] : it->second) {
            if (static_cast<int>(args.size()) != ar) return bad("function arity mismatch: " + f);
            for (const auto& a : args)
                if (!elems.count(a)) return bad("function argument outside carrier: " + f);
            if (!elems.count(val)) return bad("function value outside carrier: " + f);
        }
    }
    if (fo.preds.size() != sig.preds.size()) return bad("predicate interpretation count mismatch");
    for (const auto& [p, ar] : sig.preds) {
        auto it = fo.preds.find(p);
        if (it == fo.preds.end()) return bad("missing predicate interpretation: " + p);
        for (const auto& tup : it->second) {
            if (static_cast<int>(tup.size()) != ar) return bad("predicate arity mismatch: " + p);
            for (const auto& a : tup)
                if (!elems.count(a)) return bad("predicate tuple outside carrier: " + p);
        }
    }
    return Verdict::ok("validate_fo_model", 1);
}

Verdict validate_frame(FrameClass fc, const KripkeModel& km) {
    if (fc == FrameClass::Any) return Verdict::ok("validate_frame", 1);
    auto it = km.rels.find("lambda");
    const auto& rel = it->second;
    auto has = [&](const std::string& a, const std::string& b) {
        return rel.count({a, b}) != 0;
    };
    for (const auto& w : km.worlds)
        if (!has(w, w)) return bad("frame not reflexive at " + w);
    if (fc == FrameClass::Reflexive) return Verdict::ok("validate_frame", 1);
    for (const auto& t : rel)
        for (const auto& u : rel)
            if (t[1] == u[0] && !has(t[0], u[1]))
                return bad("frame not transitive at " + t[0]);
    if (fc == FrameClass::Preorder) return Verdict::ok("validate_frame", 1);
    for (const auto& t : rel)
        if (!has(t[1], t[0])) return bad("frame not symmetric at " + t[0]);
    return Verdict::ok("validate_frame", 1);
}

}  // namespace

Verdict validate_model(const Signature& sig, const Model& m) {
    if (auto v = validate_signature(sig); !v.pass) return v;
    const LogicInfo& li = info(sig.logic);
    if (m.logic != sig.logic) return bad("model/signature logic mismatch");

    if (sig.logic == LogicId::PL) {
        if (!std::holds_alternative<PLModel>(m.data)) return bad("pl model expected");
        for (const auto& p : m.pl().val)
            if (!sig.props.count(p)) return bad("valuation uses unknown proposition: " + p);
        return Verdict::ok("validate_model", 1);
    }
    if (is_fo_fragment(sig.logic) || sig.logic == LogicId::OFOL) {
        if (!std::holds_alternative<FOModel>(m.data)) return bad("fo model expected");
        return validate_fo_model(sig, m.fo(), sig.logic != LogicId::OFOL);
    }

    // Kripke and tilde models.
    if (!std::holds_alternative<KripkeModel>(m.data)) return bad("kripke model expected");
    const KripkeModel& km = m.kripke();
    if (!std::is_sorted(km.worlds.begin(), km.worlds.end()) ||
        std::adjacent_find(km.worlds.begin(), km.worlds.end()) != km.worlds.end())
        return bad("world set must be sorted and duplicate-free");
    std::set<std::string> wset(km.worlds.begin(), km.worlds.end());

    if (li.tilde) {
        if (!km.rels.empty() || !km.noms.empty()) return bad("tilde models have no relations/nominals");
    } else {
        if (km.rels.size() != sig.mods.size()) return bad("relation count mismatch");
        for (const auto& [mname, ar] : sig.mods) {
            auto it = km.rels.find(mname);
            if (it == km.rels.end()) return bad("missing relation: " + mname);
            for (const auto& tup : it->second) {
                if (static_cast<int>(tup.size()) != ar) return bad("relation arity mismatch: " + mname);
                for (const auto& w : tup)
                    if (!wset.count(w)) return bad("relation tuple outside worlds: " + mname);
            }
        }
        if (km.noms.size() != sig.noms.size()) return bad("nominal interpretation count mismatch");
        for (const auto& [i, w] : km.noms) {
            if (!sig.noms.count(i)) return bad("unknown nominal interpreted: " + i);
            if (!wset.count(w)) return bad("nominal outside worlds: " + i);
        }
    }

    if (li.kripke_fo) {
        if (!km.pval.empty()) return bad("fo-based kripke models have no propositional valuation");
        if (km.fbase.size() != wset.size()) return bad("base model count mismatch");
        Signature base = sig;
        base.logic = LogicId::FOL;
        base.noms.clear();
        base.mods.clear();
        for (const auto& [w, fo] : km.fbase) {
            if (!wset.count(w)) return bad("base model at unknown world: " + w);
            if (auto v = validate_fo_model(base, fo, true); !v.pass) return v;
        }
        if (!li.tilde && !km.fbase.empty()) {
            // Constant domains and rigid constants across worlds.
            const FOModel& first = km.fbase.begin()->second;
            for (const auto& [w, fo] : km.fbase) {
                if (fo.carrier != first.carrier) return bad("carriers differ across worlds");
                for (const auto& [f, ar] : sig.funcs)
                    if (ar == 0 && fo.funcs.at(f) != first.funcs.at(f))
                        return bad("constant not rigid across worlds: " + f);
            }
        }
    } else {
        if (!km.fbase.empty()) return bad("propositional kripke models have no fo base");
        if (km.pval.size() != wset.size()) return bad("valuation count mismatch");
        for (const auto& [w, ps] : km.pval) {
            if (!wset.count(w)) return bad("valuation at unknown world: " + w);
            for (const auto& p : ps)
                if (!sig.props.count(p)) return bad("valuation uses unknown proposition: " + p);
        }
    }
    if (!li.tilde)
        if (auto v = validate_frame(li.frame, km); !v.pass) return v;
    return Verdict::ok("validate_model", 1);
}

Verdict validate_morphism(const SigMorphism& phi) {
    if (auto v = validate_signature(phi.dom); !v.pass) return v;
    if (auto v = validate_signature(phi.cod); !v.pass) return v;
    if (phi.dom.logic != phi.cod.logic) return bad("morphism endpoints in different logics");
    auto check_map = [&](const std::map<std::string, std::string>& map,
                         const std::set<std::string>& dom, const std::set<std::string>& cod,
                         const char* kind) -> std::optional<Verdict> {
        if (map.size() != dom.size()) return bad(std::string(kind) + " map not total");
        for (const auto& [a, b] : map) {
            if (!dom.count(a)) return bad(std::string(kind) + " map domain mismatch: " + a);
            if (!cod.count(b)) return bad(std::string(kind) + " map target missing: " + b);
        }
        return std::nullopt;
    };
    auto keyset = [](const std::map<std::string, int>& m) {
        std::set<std::string> s;
        for (const auto& [k, v] : m) s.insert(k);
        return s;
    };
    if (auto v = check_map(phi.props, phi.dom.props, phi.cod.props, "prop")) return *v;
    if (auto v = check_map(phi.noms, phi.dom.noms, phi.cod.noms, "nominal")) return *v;
    if (auto v = check_map(phi.mods, keyset(phi.dom.mods), keyset(phi.cod.mods), "modality")) return *v;
    if (auto v = check_map(phi.funcs, keyset(phi.dom.funcs), keyset(phi.cod.funcs), "function")) return *v;
    if (auto v = check_map(phi.preds, keyset(phi.dom.preds), keyset(phi.cod.preds), "predicate")) return *v;
    for (const auto& [a, b] : phi.mods)
        if (phi.dom.mods.at(a) != phi.cod.mods.at(b)) return bad("modality arity not preserved: " + a);
    for (const auto& [a, b] : phi.funcs)
        if (phi.dom.funcs.at(a) != phi.cod.funcs.at(b)) return bad("function arity not preserved: " + a);
    for (const auto& [a, b] : phi.preds)
        if (phi.dom.preds.at(a) != phi.cod.preds.at(b)) return bad("predicate arity not preserved: " + a);
    // OFOL variables: inclusion.
    for (const auto& x : phi.dom.vars)
        if (!phi.cod.vars.count(x)) return bad("variable not included in codomain: " + x);
    return Verdict::ok("validate_morphism", 1);
}

namespace {

struct Scope {
    std::set<std::string> noms;  // bound nominal names
    std::set<std::string> vars;  // bound variable names
};

Verdict validate_sentence_rec(const Signature& sig, const LogicInfo& li, const SentenceNode* s,
                              Scope& scope);

Verdict validate_term(const Signature& sig, const Scope& scope, const Term& t) {
    if (!valid_name(t.head)) return bad("invalid term head: " + t.head);
    if (t.args.empty()) {
        if (scope.vars.count(t.head) || sig.vars.count(t.head)) return Verdict::ok("term", 1);
        auto it = sig.funcs.find(t.head);
        if (it == sig.funcs.end()) return bad("unknown constant or variable: " + t.head);
        if (it->second != 0) return bad("function used with wrong arity: " + t.head);
        return Verdict::ok("term", 1);
    }
    auto it = sig.funcs.find(t.head);
    if (it == sig.funcs.end()) return bad("unknown function symbol: " + t.head);
    if (it->second != static_cast<int>(t.args.size()))
        return bad("function used with wrong arity: " + t.head);
    for (const auto& a : t.args)
        if (auto v = validate_term(sig, scope, a); !v.pass) return v;
    return Verdict::ok("term", 1);
}

Verdict validate_sentence_rec(const Signature& sig, const LogicInfo& li, const SentenceNode* s,
                              Scope& scope) {
    switch (s->kind) {
        case SKind::Prop:
            if (!li.props) return bad("propositional atom in " + li.name);
            if (!sig.props.count(s->name)) return bad("unknown proposition: " + s->name);
            return Verdict::ok("sentence", 1);
        case SKind::Pred: {
            if (!li.fo) return bad("predicate atom in " + li.name);
            auto it = sig.preds.find(s->name);
            if (it == sig.preds.end()) return bad("unknown predicate: " + s->name);
            if (it->second != static_cast<int>(s->terms.size()))
                return bad("predicate used with wrong arity: " + s->name);
            for (const auto& t : s->terms)
                if (auto v = validate_term(sig, scope, t); !v.pass) return v;
            return Verdict::ok("sentence", 1);
        }
        case SKind::Eq:
            if (!li.fo) return bad("equational atom in " + li.name);
            if (s->terms.size() != 2) return bad("equational atom needs two terms");
            for (const auto& t : s->terms)
                if (auto v = validate_term(sig, scope, t); !v.pass) return v;
            return Verdict::ok("sentence", 1);
        case SKind::And:
            if (s->subs.size() != 2) return bad("conjunction needs two conjuncts");
            for (const auto& sub : s->subs)
                if (auto v = validate_sentence_rec(sig, li, sub.get(), scope); !v.pass) return v;
            return Verdict::ok("sentence", 1);
        case SKind::Not:
            if (s->subs.size() != 1) return bad("negation needs one argument");
            return validate_sentence_rec(sig, li, s->subs[0].get(), scope);
        case SKind::Modal: {
            if (!li.kripke || li.tilde) return bad("modal operator in " + li.name);
            auto it = sig.mods.find(s->name);
            if (it == sig.mods.end()) return bad("unknown modality: " + s->name);
            if (it->second != static_cast<int>(s->subs.size()) + 1)
                return bad("modality used with wrong arity: " + s->name);
            for (const auto& sub : s->subs)
                if (auto v = validate_sentence_rec(sig, li, sub.get(), scope); !v.pass) return v;
            return Verdict::ok("sentence", 1);
        }
        case SKind::At:
        case SKind::Nom: {
            if (!li.noms) return bad("hybrid connective in " + li.name);
            if (!sig.noms.count(s->name) && !scope.noms.count(s->name))
                return bad("unknown nominal: " + s->name);
            if (s->kind == SKind::At) {
                if (s->subs.size() != 1) return bad("@ needs one argument");
                return validate_sentence_rec(sig, li, s->subs[0].get(), scope);
            }
            return Verdict::ok("sentence", 1);
        }
        case SKind::ExistsVar: {
            if (!li.fo) return bad("variable quantifier in " + li.name);
            if (s->subs.size() != 1) return bad("exists needs one body");
            if (!valid_name(s->name)) return bad("invalid bound variable: " + s->name);
            if (scope.vars.count(s->name)) return bad("variable bound twice: " + s->name);
            scope.vars.insert(s->name);
            auto v = validate_sentence_rec(sig, li, s->subs[0].get(), scope);
            scope.vars.erase(s->name);
            return v;
        }
        case SKind::ExistsNom: {
            if (!li.noms) return bad("nominal quantifier in " + li.name);
            if (s->subs.size() != 1) return bad("existsN needs one body");
            if (!valid_name(s->name)) return bad("invalid bound nominal: " + s->name);
            if (scope.noms.count(s->name) || sig.noms.count(s->name))
                return bad("bound nominal shadows: " + s->name);
            scope.noms.insert(s->name);
            auto v = validate_sentence_rec(sig, li, s->subs[0].get(), scope);
            scope.noms.erase(s->name);
            return v;
        }
    }
    return bad("unreachable sentence kind");
}

}  // namespace

Verdict validate_sentence(const Signature& sig, const Sentence& s) {
    if (!s) return bad("null sentence");
    Scope scope;
    return validate_sentence_rec(sig, info(sig.logic), s.get(), scope);
}

void require_valid(const Verdict& v) {
    if (!v.pass) throw MalformedInput(v.message);
}

// ---------------------------------------------------------------------------
// Translation and reducts
// ---------------------------------------------------------------------------

namespace {

// Collects all symbol names of a signature (used to keep bound names capture-free).
std::set<std::string> symbol_names(const Signature& sig) {
    std::set<std::string> s(sig.props.begin(), sig.props.end());
    s.insert(sig.noms.begin(), sig.noms.end());
    s.insert(sig.vars.begin(), sig.vars.end());
    for (const auto& [k, v] : sig.mods) s.insert(k);
    for (const auto& [k, v] : sig.funcs) s.insert(k);
    for (const auto& [k, v] : sig.preds) s.insert(k);
    return s;
}

Term translate_term(const SigMorphism& phi, const std::map<std::string, std::string>& bound,
                    const Term& t) {
    Term out;
    if (t.args.empty()) {
        auto b = bound.find(t.head);
        if (b != bound.end()) {
            out.head = b->second;
            return out;
        }
        if (phi.dom.vars.count(t.head)) {
            out.head = t.head;  // open variables are included, not renamed
            return out;
        }
        auto f = phi.funcs.find(t.head);
        if (f == phi.funcs.end()) throw MalformedInput("term head not in domain: " + t.head);
        out.head = f->second;
        return out;
    }
    auto f = phi.funcs.find(t.head);
    if (f == phi.funcs.end()) throw MalformedInput("term head not in domain: " + t.head);
    out.head = f->second;
    for (const auto& a : t.args) out.args.push_back(translate_term(phi, bound, a));
    return out;
}

Sentence translate_rec(const SigMorphism& phi, const std::set<std::string>& cod_names,
                       std::map<std::string, std::string>& bound, std::set<std::string>& used,
                       const Sentence& s) {
    switch (s->kind) {
        case SKind::Prop: {
            auto it = phi.props.find(s->name);
            if (it == phi.props.end()) throw MalformedInput("proposition not in domain: " + s->name);
            return mk_prop(it->second);
        }
        case SKind::Pred: {
            auto it = phi.preds.find(s->name);
            if (it == phi.preds.end()) throw MalformedInput("predicate not in domain: " + s->name);
            std::vector<Term> ts;
            for (const auto& t : s->terms) ts.push_back(translate_term(phi, bound, t));
            return mk_pred(it->second, std::move(ts));
        }
        case SKind::Eq:
            return mk_eq(translate_term(phi, bound, s->terms[0]),
                         translate_term(phi, bound, s->terms[1]));
        case SKind::And:
            return mk_and(translate_rec(phi, cod_names, bound, used, s->subs[0]),
                          translate_rec(phi, cod_names, bound, used, s->subs[1]));
        case SKind::Not:
            return mk_not(translate_rec(phi, cod_names, bound, used, s->subs[0]));
        case SKind::Modal: {
            auto it = phi.mods.find(s->name);
            if (it == phi.mods.end()) throw MalformedInput("modality not in domain: " + s->name);
            std::vector<Sentence> subs;
            for (const auto& sub : s->subs)
                subs.push_back(translate_rec(phi, cod_names, bound, used, sub));
            return mk_modal(it->second, std::move(subs));
        }
        case SKind::At:
        case SKind::Nom: {
            std::string target;
            auto b = bound.find(s->name);
            if (b != bound.end()) {
                target = b->second;
            } else {
                auto it = phi.noms.find(s->name);
                if (it == phi.noms.end()) throw MalformedInput("nominal not in domain: " + s->name);
                target = it->second;
            }
            if (s->kind == SKind::Nom) return mk_nom(target);
            return mk_at(target, translate_rec(phi, cod_names, bound, used, s->subs[0]));
        }
        case SKind::ExistsVar:
        case SKind::ExistsNom: {
            // Rename the bound name if it would collide with a codomain symbol.
            std::string fresh = s->name;
            while (cod_names.count(fresh) || used.count(fresh)) fresh += "'";
            bound[s->name] = fresh;
            used.insert(fresh);
            auto body = translate_rec(phi, cod_names, bound, used, s->subs[0]);
            bound.erase(s->name);
            used.erase(fresh);
            if (s->kind == SKind::ExistsVar) return mk_exists_var(fresh, std::move(body));
            return mk_exists_nom(fresh, std::move(body));
        }
    }
    throw MalformedInput("unreachable sentence kind");
}

}  // namespace

Sentence sen_translate(const SigMorphism& phi, const Sentence& s) {
    if (!s) throw MalformedInput("null sentence");
    std::set<std::string> cod_names = symbol_names(phi.cod);
    std::map<std::string, std::string> bound;
    std::set<std::string> used;
    return translate_rec(phi, cod_names, bound, used, s);
}

namespace {

FOModel fo_reduct(const SigMorphism& phi, const FOModel& fo) {
    FOModel out;
    out.carrier = fo.carrier;
    for (const auto& [f, target] : phi.funcs) out.funcs[f] = fo.funcs.at(target);
    for (const auto& [p, target] : phi.preds) out.preds[p] = fo.preds.at(target);
    return out;
}

}  // namespace

Model mod_reduct(const SigMorphism& phi, const Model& m) {
    const LogicInfo& li = info(phi.dom.logic);
    Model out;
    out.logic = phi.dom.logic;
    if (phi.dom.logic == LogicId::PL) {
        PLModel pm;
        for (const auto& [p, target] : phi.props)
            if (m.pl().val.count(target)) pm.val.insert(p);
        out.data = std::move(pm);
        return out;
    }
    if (is_fo_fragment(phi.dom.logic) || phi.dom.logic == LogicId::OFOL) {
        out.data = fo_reduct(phi, m.fo());
        return out;
    }
    const KripkeModel& km = m.kripke();
    KripkeModel ko;
    ko.worlds = km.worlds;
    if (!li.tilde) {
        for (const auto& [mn, target] : phi.mods) ko.rels[mn] = km.rels.at(target);
        for (const auto& [i, target] : phi.noms) ko.noms[i] = km.noms.at(target);
    }
    if (li.kripke_fo) {
        for (const auto& [w, fo] : km.fbase) ko.fbase[w] = fo_reduct(phi, fo);
    } else {
        for (const auto& [w, ps] : km.pval) {
            std::set<std::string> v;
            for (const auto& [p, target] : phi.props)
                if (ps.count(target)) v.insert(p);
            ko.pval[w] = std::move(v);
        }
    }
    out.data = std::move(ko);
    return out;
}

ModelHom hom_reduct(const SigMorphism& phi, const ModelHom& h) {
    (void)phi;
    return h;  // the underlying maps are unchanged by a reduct
}

// ---------------------------------------------------------------------------
// Stratification
// ---------------------------------------------------------------------------

std::vector<WorldId> worlds(const Signature& sig, const Model& m) {
    const LogicInfo& li = info(sig.logic);
    std::vector<WorldId> out;
    if (sig.logic == LogicId::PL) {
        out.push_back(WorldId::of("*"));
        return out;
    }
    if (is_fo_fragment(sig.logic)) {
        for (const auto& e : m.fo().carrier) out.push_back(WorldId::of(e));
        return out;
    }
    if (sig.logic == LogicId::OFOL) {
        // All valuations of the open variables, in lexicographic order.
        const auto& carrier = m.fo().carrier;
        std::vector<std::string> vars(sig.vars.begin(), sig.vars.end());
        if (carrier.empty() && !vars.empty()) return out;
        std::vector<size_t> idx(vars.size(), 0);
        for (;;) {
            std::map<std::string, std::string> a;
            for (size_t i = 0; i < vars.size(); ++i) a[vars[i]] = carrier[idx[i]];
            out.push_back(WorldId::valuation(std::move(a)));
            size_t k = vars.size();
            while (k > 0) {
                if (++idx[k - 1] < carrier.size()) break;
                idx[k - 1] = 0;
                --k;
            }
            if (k == 0) break;
        }
        (void)li;
        return out;
    }
    for (const auto& w : m.kripke().worlds) out.push_back(WorldId::of(w));
    return out;
}

std::map<WorldId, WorldId> world_map(const SigMorphism& phi, const Model& m) {
    std::map<WorldId, WorldId> out;
    if (phi.dom.logic == LogicId::OFOL) {
        for (const auto& w : worlds(phi.cod, m)) {
            std::map<std::string, std::string> restricted;
            for (const auto& x : phi.dom.vars) restricted[x] = w.assign.at(x);
            out[w] = WorldId::valuation(std::move(restricted));
        }
        return out;
    }
    for (const auto& w : worlds(phi.cod, m)) out[w] = w;
    return out;
}

std::map<WorldId, WorldId> hom_world_map(const Signature& sig, const ModelHom& h,
                                         const Model& m, const Model& n) {
    std::map<WorldId, WorldId> out;
    if (sig.logic == LogicId::PL) {
        out[WorldId::of("*")] = WorldId::of("*");
        return out;
    }
    if (sig.logic == LogicId::OFOL) {
        for (const auto& w : worlds(sig, m)) {
            std::map<std::string, std::string> a;
            for (const auto& [x, e] : w.assign) a[x] = h.h0.at(e);
            out[w] = WorldId::valuation(std::move(a));
        }
        return out;
    }
    for (const auto& w : worlds(sig, m)) out[w] = WorldId::of(h.h0.at(w.name));
    (void)n;
    return out;
}

// ---------------------------------------------------------------------------
// Satisfaction
// ---------------------------------------------------------------------------

std::string eval_term(const FOModel& fo, const std::map<std::string, std::string>& env,
                      const Term& t) {
    if (t.args.empty()) {
        auto it = env.find(t.head);
        if (it != env.end()) return it->second;
        auto f = fo.funcs.find(t.head);
        if (f == fo.funcs.end()) throw MalformedInput("term head uninterpreted: " + t.head);
        return f->second.at({});
    }
    std::vector<std::string> args;
    for (const auto& a : t.args) args.push_back(eval_term(fo, env, a));
    auto f = fo.funcs.find(t.head);
    if (f == fo.funcs.end()) throw MalformedInput("term head uninterpreted: " + t.head);
    return f->second.at(args);
}

FOModel ofol_expand(const Signature& sig, const FOModel& m, const WorldId& w) {
    if (!w.is_assign) throw PreconditionError("ofol world must be a valuation");
    FOModel out = m;
    for (const auto& x : sig.vars) out.funcs[x][{}] = w.assign.at(x);
    return out;
}

struct Evaluator::Env {
    std::map<std::string, std::string> noms;  // bound nominal -> world name
    std::map<std::string, std::string> vars;  // bound variable -> carrier element

    std::string key() const {
        std::string k;
        for (const auto& [a, b] : noms) k += "n" + a + "=" + b + ";";
        for (const auto& [a, b] : vars) k += "v" + a + "=" + b + ";";
        return k;
    }
};

Evaluator::Evaluator(const Signature& sig, const Model& m) : sig_(sig), m_(m) {
    worlds_ = worlds(sig, m);
    if (worlds_.size() > 64) throw PreconditionError("evaluator limited to 64 worlds");
    int i = 0;
    for (const auto& w : worlds_) index_[w] = i++;
}

std::uint64_t Evaluator::eval_mask(const Sentence& s) {
    roots_.push_back(s);
    Env env;
    return eval_rec(s.get(), env);
}

bool Evaluator::eval(const Sentence& s, const WorldId& w) {
    auto it = index_.find(w);
    if (it == index_.end()) throw PreconditionError("world not in model");
    return (eval_mask(s) >> it->second) & 1u;
}

std::uint64_t Evaluator::eval_rec(const SentenceNode* s, Env& env) {
    const LogicInfo& li = info(sig_.logic);
    const std::uint64_t all =
        worlds_.size() == 64 ? ~0ull : ((1ull << worlds_.size()) - 1);

    auto memo_key = std::make_pair(s, env.key());
    auto found = memo_.find(memo_key);
    if (found != memo_.end()) return found->second;

    std::uint64_t result = 0;
    switch (s->kind) {
        case SKind::Prop: {
            if (sig_.logic == LogicId::PL) {
                result = m_.pl().val.count(s->name) ? all : 0;
            } else {
                const auto& km = m_.kripke();
                for (size_t i = 0; i < worlds_.size(); ++i)
                    if (km.pval.at(worlds_[i].name).count(s->name)) result |= 1ull << i;
            }
            break;
        }
        case SKind::Pred:
        case SKind::Eq: {
            auto atom_holds = [&](const FOModel& fo,
                                  const std::map<std::string, std::string>& e) {
                if (s->kind == SKind::Eq)
                    return eval_term(fo, e, s->terms[0]) == eval_term(fo, e, s->terms[1]);
                std::vector<std::string> tup;
                for (const auto& t : s->terms) tup.push_back(eval_term(fo, e, t));
                return fo.preds.at(s->name).count(tup) != 0;
            };
            if (li.kripke_fo) {
                const auto& km = m_.kripke();
                for (size_t i = 0; i < worlds_.size(); ++i)
                    if (atom_holds(km.fbase.at(worlds_[i].name), env.vars)) result |= 1ull << i;
            } else if (sig_.logic == LogicId::OFOL) {
                for (size_t i = 0; i < worlds_.size(); ++i) {
                    std::map<std::string, std::string> e = worlds_[i].assign;
                    for (const auto& [k, v] : env.vars) e[k] = v;
                    if (atom_holds(m_.fo(), e)) result |= 1ull << i;
                }
            } else {
                // Plain FO fragments: satisfaction is independent of the point.
                result = atom_holds(m_.fo(), env.vars) ? all : 0;
            }
            break;
        }
        case SKind::And:
            result = eval_rec(s->subs[0].get(), env) & eval_rec(s->subs[1].get(), env);
            break;
        case SKind::Not:
            result = all & ~eval_rec(s->subs[0].get(), env);
            break;
        case SKind::Modal: {
            const auto& km = m_.kripke();
            const auto& rel = km.rels.at(s->name);
            std::vector<std::uint64_t> sub;
            for (const auto& b : s->subs) sub.push_back(eval_rec(b.get(), env));
            if (current_mutation() == Mutation::DiaAsBox) {
                result = all;
                for (const auto& tup : rel) {
                    bool body = true;
                    for (size_t k = 0; k + 1 < tup.size(); ++k)
                        body = body &&
                               ((sub[k] >> index_.at(WorldId::of(tup[k + 1]))) & 1u);
                    if (!body) result &= ~(1ull << index_.at(WorldId::of(tup[0])));
                }
            } else {
                for (const auto& tup : rel) {
                    bool body = true;
                    for (size_t k = 0; k + 1 < tup.size(); ++k)
                        body = body &&
                               ((sub[k] >> index_.at(WorldId::of(tup[k + 1]))) & 1u);
                    if (body) result |= 1ull << index_.at(WorldId::of(tup[0]));
                }
            }
            break;
        }
        case SKind::At:
        case SKind::Nom: {
            const auto& km = m_.kripke();
            std::string target;
            auto b = env.noms.find(s->name);
            if (b != env.noms.end())
                target = b->second;
            else
                target = km.noms.at(s->name);
            int ti = index_.at(WorldId::of(target));
            if (s->kind == SKind::Nom) {
                result = 1ull << ti;
            } else {
                std::uint64_t sub = eval_rec(s->subs[0].get(), env);
                result = ((sub >> ti) & 1u) ? all : 0;
            }
            break;
        }
        case SKind::ExistsVar: {
            const std::vector<std::string>* carrier = nullptr;
            if (li.kripke_fo) {
                const auto& km = m_.kripke();
                static const std::vector<std::string> empty;
                carrier = km.fbase.empty() ? &empty : &km.fbase.begin()->second.carrier;
            } else {
                carrier = &m_.fo().carrier;
            }
            for (const auto& e : *carrier) {
                env.vars[s->name] = e;
                result |= eval_rec(s->subs[0].get(), env);
                env.vars.erase(s->name);
                if (result == all) break;
            }
            break;
        }
        case SKind::ExistsNom: {
            for (const auto& w : worlds_) {
                env.noms[s->name] = w.name;
                result |= eval_rec(s->subs[0].get(), env);
                env.noms.erase(s->name);
                if (result == all) break;
            }
            break;
        }
    }
    memo_.emplace(std::move(memo_key), result);
    return result;
}

bool satisfies(const Signature& sig, const Model& m, const WorldId& w, const Sentence& s) {
    Evaluator ev(sig, m);
    return ev.eval(s, w);
}

namespace {

bool fo_sat(const FOModel& fo, std::map<std::string, std::string>& env, const SentenceNode* s) {
    switch (s->kind) {
        case SKind::Pred: {
            std::vector<std::string> tup;
            for (const auto& t : s->terms) tup.push_back(eval_term(fo, env, t));
            return fo.preds.at(s->name).count(tup) != 0;
        }
        case SKind::Eq:
            return eval_term(fo, env, s->terms[0]) == eval_term(fo, env, s->terms[1]);
        case SKind::And:
            return fo_sat(fo, env, s->subs[0].get()) && fo_sat(fo, env, s->subs[1].get());
        case SKind::Not:
            return !fo_sat(fo, env, s->subs[0].get());
        case SKind::ExistsVar:
            for (const auto& e : fo.carrier) {
                env[s->name] = e;
                bool ok = fo_sat(fo, env, s->subs[0].get());
                env.erase(s->name);
                if (ok) return true;
            }
            return false;
        default:
            throw MalformedInput("sentence kind not available in a base fo fragment");
    }
}

}  // namespace

bool base_satisfies(const Signature& sig, const Model& m, const Sentence& s) {
    if (sig.logic == LogicId::PL) return satisfies(sig, m, WorldId::of("*"), s);
    if (!is_fo_fragment(sig.logic)) throw MalformedInput("base_satisfies needs pl or a fo fragment");
    std::map<std::string, std::string> env;
    return fo_sat(m.fo(), env, s.get());
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

namespace {

bool fo_hom_check(const Signature& sig, const std::map<std::string, std::string>& h,
                  const FOModel& a, const FOModel& b) {
    std::set<std::string> belems(b.carrier.begin(), b.carrier.end());
    if (h.size() != a.carrier.size()) return false;
    for (const auto& e : a.carrier) {
        auto it = h.find(e);
        if (it == h.end() || !belems.count(it->second)) return false;
    }
    for (const auto& [f, ar] : sig.funcs) {
        for (const auto& [args, val] : a.funcs.at(f)) {
            std::vector<std::string> margs;
            for (const auto& x : args) margs.push_back(h.at(x));
            if (b.funcs.at(f).at(margs) != h.at(val)) return false;
        }
    }
    for (const auto& [p, ar] : sig.preds) {
        for (const auto& tup : a.preds.at(p)) {
            std::vector<std::string> mtup;
            for (const auto& x : tup) mtup.push_back(h.at(x));
            if (!b.preds.at(p).count(mtup)) return false;
        }
    }
    return true;
}

}  // namespace

bool hom_check(const Signature& sig, const ModelHom& h, const Model& m, const Model& n) {
    const LogicInfo& li = info(sig.logic);
    if (sig.logic == LogicId::PL)
        return h.h0.empty() &&
               std::includes(n.pl().val.begin(), n.pl().val.end(), m.pl().val.begin(),
                             m.pl().val.end());
    if (is_fo_fragment(sig.logic) || sig.logic == LogicId::OFOL)
        return h.hbase.empty() && h.hworld.empty() && fo_hom_check(sig, h.h0, m.fo(), n.fo());

    const KripkeModel& a = m.kripke();
    const KripkeModel& b = n.kripke();
    std::set<std::string> bws(b.worlds.begin(), b.worlds.end());
    if (h.h0.size() != a.worlds.size()) return false;
    for (const auto& w : a.worlds) {
        auto it = h.h0.find(w);
        if (it == h.h0.end() || !bws.count(it->second)) return false;
    }
    if (!li.tilde) {
        for (const auto& [mn, rel] : a.rels) {
            const auto& brel = b.rels.at(mn);
            for (const auto& tup : rel) {
                std::vector<std::string> mt;
                for (const auto& w : tup) mt.push_back(h.h0.at(w));
                if (!brel.count(mt)) return false;
            }
        }
        for (const auto& [i, w] : a.noms)
            if (b.noms.at(i) != h.h0.at(w)) return false;
    }
    if (li.kripke_fo) {
        Signature base = sig;
        base.logic = LogicId::FOL;
        base.noms.clear();
        base.mods.clear();
        if (li.tilde) {
            // Per-world base homomorphisms.
            if (!h.hbase.empty()) return false;
            if (h.hworld.size() != a.worlds.size()) return false;
            for (const auto& w : a.worlds) {
                auto it = h.hworld.find(w);
                if (it == h.hworld.end()) return false;
                if (!fo_hom_check(base, it->second, a.fbase.at(w), b.fbase.at(h.h0.at(w))))
                    return false;
            }
        } else {
            // One rigid carrier map, a base homomorphism at every world.
            if (!h.hworld.empty()) return false;
            for (const auto& w : a.worlds)
                if (!fo_hom_check(base, h.hbase, a.fbase.at(w), b.fbase.at(h.h0.at(w))))
                    return false;
            if (a.worlds.empty()) {
                if (!h.hbase.empty()) return false;
            }
        }
    } else {
        if (!h.hbase.empty() || !h.hworld.empty()) return false;
        for (const auto& w : a.worlds) {
            const auto& src = a.pval.at(w);
            const auto& dst = b.pval.at(h.h0.at(w));
            if (!std::includes(dst.begin(), dst.end(), src.begin(), src.end())) return false;
        }
    }
    return true;
}

namespace {

bool bijective(const std::map<std::string, std::string>& f, size_t domain_size) {
    std::set<std::string> img;
    for (const auto& [a, b] : f) img.insert(b);
    return f.size() == domain_size && img.size() == domain_size;
}

std::map<std::string, std::string> invert(const std::map<std::string, std::string>& f) {
    std::map<std::string, std::string> g;
    for (const auto& [a, b] : f) g[b] = a;
    return g;
}

}  // namespace

bool iso_check(const Signature& sig, const ModelHom& h, const Model& m, const Model& n) {
    if (!hom_check(sig, h, m, n)) return false;
    ModelHom inv;
    const LogicInfo& li = info(sig.logic);
    if (sig.logic == LogicId::PL) return m.pl().val == n.pl().val;
    size_t dom0 = is_fo_fragment(sig.logic) || sig.logic == LogicId::OFOL
                      ? m.fo().carrier.size()
                      : m.kripke().worlds.size();
    size_t cod0 = is_fo_fragment(sig.logic) || sig.logic == LogicId::OFOL
                      ? n.fo().carrier.size()
                      : n.kripke().worlds.size();
    if (dom0 != cod0 || !bijective(h.h0, dom0)) return false;
    inv.h0 = invert(h.h0);
    if (!h.hbase.empty()) {
        size_t c = m.kripke().fbase.empty() ? 0 : m.kripke().fbase.begin()->second.carrier.size();
        size_t d = n.kripke().fbase.empty() ? 0 : n.kripke().fbase.begin()->second.carrier.size();
        if (c != d || !bijective(h.hbase, c)) return false;
        inv.hbase = invert(h.hbase);
    } else if (li.kripke_fo && !li.tilde && !m.kripke().worlds.empty()) {
        if (!m.kripke().fbase.begin()->second.carrier.empty()) return false;
    }
    if (!h.hworld.empty() || (li.tilde && li.kripke_fo)) {
        for (const auto& [w, f] : h.hworld) {
            size_t c = m.kripke().fbase.at(w).carrier.size();
            if (!bijective(f, c)) return false;
            inv.hworld[h.h0.at(w)] = invert(f);
        }
    }
    return hom_check(sig, inv, n, m);
}

Model apply_iso(const Signature& sig, const ModelHom& h, const Model& m) {
    const LogicInfo& li = info(sig.logic);
    Model out;
    out.logic = sig.logic;
    auto rename_fo = [](const FOModel& fo, const std::map<std::string, std::string>& f) {
        FOModel o;
        for (const auto& e : fo.carrier) o.carrier.push_back(f.at(e));
        std::sort(o.carrier.begin(), o.carrier.end());
        for (const auto& [fn, table] : fo.funcs) {
            for (const auto& [args, val] : table) {
                std::vector<std::string> a;
                for (const auto& x : args) a.push_back(f.at(x));
                o.funcs[fn][a] = f.at(val);
            }
            if (table.empty()) o.funcs[fn];
        }
        for (const auto& [pn, tuples] : fo.preds) {
            o.preds[pn];
            for (const auto& tup : tuples) {
                std::vector<std::string> t;
                for (const auto& x : tup) t.push_back(f.at(x));
                o.preds[pn].insert(t);
            }
        }
        return o;
    };
    if (sig.logic == LogicId::PL) {
        out.data = m.pl();
        return out;
    }
    if (is_fo_fragment(sig.logic) || sig.logic == LogicId::OFOL) {
        out.data = rename_fo(m.fo(), h.h0);
        return out;
    }
    const KripkeModel& km = m.kripke();
    KripkeModel ko;
    for (const auto& w : km.worlds) ko.worlds.push_back(h.h0.at(w));
    std::sort(ko.worlds.begin(), ko.worlds.end());
    for (const auto& [mn, rel] : km.rels) {
        ko.rels[mn];
        for (const auto& tup : rel) {
            std::vector<std::string> t;
            for (const auto& w : tup) t.push_back(h.h0.at(w));
            ko.rels[mn].insert(t);
        }
    }
    for (const auto& [i, w] : km.noms) ko.noms[i] = h.h0.at(w);
    for (const auto& [w, ps] : km.pval) ko.pval[h.h0.at(w)] = ps;
    for (const auto& [w, fo] : km.fbase) {
        const auto& f = li.tilde && li.kripke_fo ? h.hworld.at(w) : h.hbase;
        ko.fbase[h.h0.at(w)] = rename_fo(fo, f);
    }
    out.data = std::move(ko);
    return out;
}

// ---------------------------------------------------------------------------
// Morphism algebra
// ---------------------------------------------------------------------------

SigMorphism identity_morphism(const Signature& sig) {
    SigMorphism phi;
    phi.dom = sig;
    phi.cod = sig;
    for (const auto& p : sig.props) phi.props[p] = p;
    for (const auto& n : sig.noms) phi.noms[n] = n;
    for (const auto& [m, a] : sig.mods) phi.mods[m] = m;
    for (const auto& [f, a] : sig.funcs) phi.funcs[f] = f;
    for (const auto& [p, a] : sig.preds) phi.preds[p] = p;
    return phi;
}

SigMorphism compose(const SigMorphism& first, const SigMorphism& second) {
    if (first.cod != second.dom) throw MalformedInput("morphisms not composable");
    SigMorphism out;
    out.dom = first.dom;
    out.cod = second.cod;
    auto comp = [](const std::map<std::string, std::string>& f,
                   const std::map<std::string, std::string>& g) {
        std::map<std::string, std::string> h;
        for (const auto& [a, b] : f) h[a] = g.at(b);
        return h;
    };
    out.props = comp(first.props, second.props);
    out.noms = comp(first.noms, second.noms);
    out.mods = comp(first.mods, second.mods);
    out.funcs = comp(first.funcs, second.funcs);
    out.preds = comp(first.preds, second.preds);
    return out;
}

}  // namespace strat
