#include "strat/enumerate.hpp"
#include "strat/logic.hpp"

#include <algorithm>
#include <sstream>

namespace strat {

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

Bounds Bounds::parse(const std::string& spec) {
    Bounds b;
    if (spec.empty()) return b;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw MalformedInput("bad bounds item: " + item);
        std::string key = item.substr(0, eq);
        long val = 0;
        try {
            size_t used = 0;
            std::string digits = item.substr(eq + 1);
            val = std::stol(digits, &used);
            if (used != digits.size()) throw std::invalid_argument(digits);
        } catch (const std::exception&) {
            throw MalformedInput("bad bounds value: " + item);
        }
        if (key == "props") b.props = static_cast<int>(val);
        else if (key == "noms") b.noms = static_cast<int>(val);
        else if (key == "mods") b.mods = static_cast<int>(val);
        else if (key == "mods3") b.mods3 = static_cast<int>(val);
        else if (key == "funcs0") b.funcs0 = static_cast<int>(val);
        else if (key == "funcs1") b.funcs1 = static_cast<int>(val);
        else if (key == "funcs2") b.funcs2 = static_cast<int>(val);
        else if (key == "preds1") b.preds1 = static_cast<int>(val);
        else if (key == "preds2") b.preds2 = static_cast<int>(val);
        else if (key == "vars") b.vars = static_cast<int>(val);
        else if (key == "worlds") b.worlds = static_cast<int>(val);
        else if (key == "carrier") b.carrier = static_cast<int>(val);
        else if (key == "depth") b.depth = static_cast<int>(val);
        else if (key == "cap") b.cap = val;
        else throw MalformedInput("unknown bounds key: " + key);
    }
    return b;
}

std::string Bounds::render() const {
    std::ostringstream os;
    os << "props=" << props << ",noms=" << noms << ",mods=" << mods << ",mods3=" << mods3
       << ",funcs0=" << funcs0 << ",funcs1=" << funcs1 << ",funcs2=" << funcs2
       << ",preds1=" << preds1 << ",preds2=" << preds2 << ",vars=" << vars
       << ",worlds=" << worlds << ",carrier=" << carrier << ",depth=" << depth
       << ",cap=" << cap;
    return os.str();
}

// ---------------------------------------------------------------------------
// Small combinatorial helpers
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> names(const char* base, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(base + std::to_string(i));
    return out;
}

std::vector<std::vector<std::string>> tuples(const std::vector<std::string>& elems, int arity) {
    std::vector<std::vector<std::string>> out = {{}};
    for (int i = 0; i < arity; ++i) {
        std::vector<std::vector<std::string>> next;
        for (const auto& t : out)
            for (const auto& e : elems) {
                auto u = t;
                u.push_back(e);
                next.push_back(std::move(u));
            }
        out = std::move(next);
    }
    if (arity > 0 && elems.empty()) out.clear();
    return out;
}

// All subsets of items, smallest first by bit pattern.  f returns false to stop.
template <typename T, typename F>
bool for_subsets(const std::vector<T>& items, F&& f) {
    if (items.size() >= 63) throw PreconditionError("subset space too large");
    for (std::uint64_t mask = 0; mask < (1ull << items.size()); ++mask) {
        std::set<T> s;
        for (size_t i = 0; i < items.size(); ++i)
            if (mask & (1ull << i)) s.insert(items[i]);
        if (!f(s)) return false;
    }
    return true;
}

// All functions dom -> cod.  Skipped entirely (no calls) when dom nonempty
// and cod empty; a single call with the empty map when dom is empty.
template <typename K, typename V, typename F>
bool for_functions(const std::vector<K>& dom, const std::vector<V>& cod, F&& f) {
    if (dom.empty()) {
        std::map<K, V> m;
        return f(m);
    }
    if (cod.empty()) return true;
    std::vector<size_t> idx(dom.size(), 0);
    for (;;) {
        std::map<K, V> m;
        for (size_t i = 0; i < dom.size(); ++i) m[dom[i]] = cod[idx[i]];
        if (!f(m)) return false;
        size_t k = dom.size();
        while (k > 0) {
            if (++idx[k - 1] < cod.size()) break;
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) return true;
    }
}

struct Counter {
    long count = 0;
    long cap;
    explicit Counter(long c) : cap(c) {}
    void tick() {
        if (++count > cap) throw PreconditionError("enumeration cap exceeded");
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Signatures
// ---------------------------------------------------------------------------

std::vector<Signature> enum_signatures(LogicId logic, const Bounds& b) {
    const LogicInfo& li = info(logic);
    std::vector<Signature> out;

    // Enumerate prefix choices kind by kind.
    std::vector<Signature> acc = {[&] {
        Signature s;
        s.logic = logic;
        return s;
    }()};
    auto extend = [&](auto apply, int limit) {
        std::vector<Signature> next;
        for (const auto& s : acc)
            for (int n = 0; n <= limit; ++n) {
                Signature t = s;
                apply(t, n);
                next.push_back(std::move(t));
            }
        acc = std::move(next);
    };

    if (li.props)
        extend([](Signature& s, int n) {
            for (const auto& p : names("p", n)) s.props.insert(p);
        }, b.props);
    if (li.noms)
        extend([](Signature& s, int n) {
            for (const auto& i : names("i", n)) s.noms.insert(i);
        }, b.noms);
    if (li.vars)
        extend([](Signature& s, int n) {
            for (const auto& x : names("x", n)) s.vars.insert(x);
        }, b.vars);

    bool fixed_lambda_mod = li.kripke && !li.tilde &&
                            !(logic == LogicId::MMPL || logic == LogicId::MMFOL);
    if (fixed_lambda_mod) {
        for (auto& s : acc) s.mods["lambda"] = 2;
    } else if (logic == LogicId::MMPL || logic == LogicId::MMFOL) {
        extend([](Signature& s, int n) {
            for (const auto& m : names("m", n)) s.mods[m] = 2;
        }, b.mods);
        extend([](Signature& s, int n) {
            for (const auto& m : names("n", n)) s.mods[m] = 3;
        }, b.mods3);
    }

    if (li.fo) {
        switch (logic) {
            case LogicId::REL:
                extend([](Signature& s, int n) {
                    for (const auto& p : names("P", n)) s.preds[p] = 1;
                }, b.preds1);
                extend([](Signature& s, int n) {
                    for (const auto& r : names("r", n)) s.preds[r] = 2;
                }, b.preds2);
                break;
            case LogicId::RELC:
                extend([](Signature& s, int n) {
                    for (const auto& c : names("c", n)) s.funcs[c] = 0;
                }, b.funcs0);
                extend([](Signature& s, int n) {
                    for (const auto& p : names("P", n)) s.preds[p] = 1;
                }, b.preds1);
                extend([](Signature& s, int n) {
                    for (const auto& r : names("r", n)) s.preds[r] = 2;
                }, b.preds2);
                break;
            case LogicId::BREL:
                for (auto& s : acc) s.preds["lambda"] = 2;
                break;
            case LogicId::BRELC:
                for (auto& s : acc) s.preds["lambda"] = 2;
                extend([](Signature& s, int n) {
                    for (const auto& c : names("c", n)) s.funcs[c] = 0;
                }, b.funcs0);
                break;
            case LogicId::SETC:
                extend([](Signature& s, int n) {
                    for (const auto& c : names("c", n)) s.funcs[c] = 0;
                }, b.funcs0);
                break;
            default:  // fol, mfol, hfol, mmfol, ofol, tilde_fol
                extend([](Signature& s, int n) {
                    for (const auto& c : names("c", n)) s.funcs[c] = 0;
                }, b.funcs0);
                extend([](Signature& s, int n) {
                    for (const auto& f : names("f", n)) s.funcs[f] = 1;
                }, b.funcs1);
                extend([](Signature& s, int n) {
                    for (const auto& g : names("g", n)) s.funcs[g] = 2;
                }, b.funcs2);
                extend([](Signature& s, int n) {
                    for (const auto& p : names("P", n)) s.preds[p] = 1;
                }, b.preds1);
                extend([](Signature& s, int n) {
                    for (const auto& q : names("Q", n)) s.preds[q] = 2;
                }, b.preds2);
                break;
        }
    }
    out = std::move(acc);
    return out;
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

namespace {

// All arity-preserving maps between two symbol tables.
bool for_symbol_maps(const std::map<std::string, int>& dom, const std::map<std::string, int>& cod,
                     const std::function<bool(const std::map<std::string, std::string>&)>& f) {
    std::vector<std::string> keys;
    for (const auto& [k, a] : dom) keys.push_back(k);
    std::vector<std::vector<std::string>> options;
    for (const auto& k : keys) {
        std::vector<std::string> opts;
        for (const auto& [k2, a2] : cod)
            if (a2 == dom.at(k)) opts.push_back(k2);
        if (opts.empty()) return true;  // no map exists
        options.push_back(std::move(opts));
    }
    std::vector<size_t> idx(keys.size(), 0);
    for (;;) {
        std::map<std::string, std::string> m;
        for (size_t i = 0; i < keys.size(); ++i) m[keys[i]] = options[i][idx[i]];
        if (!f(m)) return false;
        size_t k = keys.size();
        while (k > 0) {
            if (++idx[k - 1] < options[k - 1].size()) break;
            idx[k - 1] = 0;
            --k;
        }
        if (k == 0) return true;
    }
}

std::map<std::string, int> as_table(const std::set<std::string>& s) {
    std::map<std::string, int> t;
    for (const auto& k : s) t[k] = 0;
    return t;
}

}  // namespace

std::vector<SigMorphism> enum_morphisms_between(const Signature& dom, const Signature& cod) {
    std::vector<SigMorphism> out;
    if (dom.logic != cod.logic) return out;
    for (const auto& x : dom.vars)
        if (!cod.vars.count(x)) return out;  // ofol morphisms are inclusions on variables
    for_symbol_maps(as_table(dom.props), as_table(cod.props), [&](const auto& pm) {
        for_symbol_maps(as_table(dom.noms), as_table(cod.noms), [&](const auto& nm) {
            for_symbol_maps(dom.mods, cod.mods, [&](const auto& mm) {
                for_symbol_maps(dom.funcs, cod.funcs, [&](const auto& fm) {
                    for_symbol_maps(dom.preds, cod.preds, [&](const auto& qm) {
                        SigMorphism phi;
                        phi.dom = dom;
                        phi.cod = cod;
                        phi.props = pm;
                        phi.noms = nm;
                        phi.mods = mm;
                        phi.funcs = fm;
                        phi.preds = qm;
                        out.push_back(std::move(phi));
                        return true;
                    });
                    return true;
                });
                return true;
            });
            return true;
        });
        return true;
    });
    return out;
}

std::vector<SigMorphism> enum_morphisms(LogicId logic, const Bounds& b) {
    std::vector<SigMorphism> out;
    auto sigs = enum_signatures(logic, b);
    for (const auto& d : sigs)
        for (const auto& c : sigs) {
            auto ms = enum_morphisms_between(d, c);
            out.insert(out.end(), ms.begin(), ms.end());
        }
    return out;
}

// ---------------------------------------------------------------------------
// Sentences
// ---------------------------------------------------------------------------

namespace {

std::vector<Term> enum_terms(const Signature& sig) {
    std::vector<Term> level0;
    for (const auto& x : sig.vars) level0.push_back(Term{x, {}});
    for (const auto& [f, a] : sig.funcs)
        if (a == 0) level0.push_back(Term{f, {}});
    std::vector<Term> out = level0;
    for (const auto& [f, a] : sig.funcs) {
        if (a == 0) continue;
        for (const auto& args : [&] {
            std::vector<std::vector<Term>> acc = {{}};
            for (int i = 0; i < a; ++i) {
                std::vector<std::vector<Term>> next;
                for (const auto& t : acc)
                    for (const auto& e : level0) {
                        auto u = t;
                        u.push_back(e);
                        next.push_back(std::move(u));
                    }
                acc = std::move(next);
            }
            if (level0.empty()) acc.clear();
            return acc;
        }())
            out.push_back(Term{f, args});
    }
    return out;
}

int bound_count(const std::set<std::string>& pool, const char* prefix) {
    int n = 0;
    for (const auto& s : pool)
        if (s.rfind(prefix, 0) == 0) ++n;
    return n;
}

// Levels of sentences: levels[d] holds sentences of connective depth exactly
// d+1 (levels[0] = atoms).  Results are cached per (signature, depth).
const std::vector<std::vector<Sentence>>& sentence_levels(const Signature& sig, int depth) {
    static std::map<std::pair<Signature, int>, std::vector<std::vector<Sentence>>> cache;
    auto key = std::make_pair(sig, depth);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const LogicInfo& li = info(sig.logic);
    std::vector<std::vector<Sentence>> levels;

    // Atoms.
    std::vector<Sentence> atoms;
    if (sig.logic != LogicId::SETC) {
        for (const auto& p : sig.props) atoms.push_back(mk_prop(p));
        for (const auto& i : sig.noms) atoms.push_back(mk_nom(i));
        if (li.fo) {
            auto terms = enum_terms(sig);
            for (const auto& [p, a] : sig.preds) {
                std::vector<std::vector<Term>> acc = {{}};
                for (int i = 0; i < a; ++i) {
                    std::vector<std::vector<Term>> next;
                    for (const auto& t : acc)
                        for (const auto& e : terms) {
                            auto u = t;
                            u.push_back(e);
                            next.push_back(std::move(u));
                        }
                    acc = std::move(next);
                }
                if (terms.empty()) acc.clear();
                for (const auto& args : acc) atoms.push_back(mk_pred(p, args));
            }
            for (const auto& t1 : terms)
                for (const auto& t2 : terms) atoms.push_back(mk_eq(t1, t2));
        }
    }
    levels.push_back(std::move(atoms));

    for (int d = 2; d <= depth; ++d) {
        std::vector<Sentence> fresh;
        const auto& prev = levels[d - 2];
        auto upto = [&](int lv) {  // sentences of depth <= lv (1-based)
            std::vector<Sentence> all;
            for (int i = 0; i < lv && i < static_cast<int>(levels.size()); ++i)
                all.insert(all.end(), levels[i].begin(), levels[i].end());
            return all;
        };
        for (const auto& s : prev) fresh.push_back(mk_not(s));
        if (li.kripke && !li.tilde) {
            for (const auto& [mn, ar] : sig.mods) {
                int n = ar - 1;
                // argument tuples from depth <= d-1 with at least one of depth d-1
                auto all = upto(d - 1);
                auto older = upto(d - 2);
                std::vector<std::vector<Sentence>> acc = {{}};
                for (int i = 0; i < n; ++i) {
                    std::vector<std::vector<Sentence>> next;
                    for (const auto& t : acc)
                        for (const auto& e : all) {
                            auto u = t;
                            u.push_back(e);
                            next.push_back(std::move(u));
                        }
                    acc = std::move(next);
                }
                for (const auto& args : acc) {
                    bool has_new = false;
                    for (const auto& a : args) {
                        bool in_old = false;
                        for (const auto& o : older)
                            if (o.get() == a.get()) {
                                in_old = true;
                                break;
                            }
                        if (!in_old) has_new = true;
                    }
                    if (has_new) fresh.push_back(mk_modal(mn, args));
                }
            }
        }
        if (li.noms) {
            for (const auto& i : sig.noms)
                for (const auto& s : prev) fresh.push_back(mk_at(i, s));
            std::string nv = "nv" + std::to_string(bound_count(sig.noms, "nv") + 1);
            Signature ext = sig;
            ext.noms.insert(nv);
            const auto& extlv = sentence_levels(ext, d - 1);
            if (d - 2 < static_cast<int>(extlv.size()))
                for (const auto& s : extlv[d - 2]) fresh.push_back(mk_exists_nom(nv, s));
        }
        if (li.fo && sig.logic != LogicId::SETC) {
            std::string xv = "xv" + std::to_string(bound_count(sig.vars, "xv") + 1);
            Signature ext = sig;
            ext.vars.insert(xv);
            const auto& extlv = sentence_levels(ext, d - 1);
            if (d - 2 < static_cast<int>(extlv.size()))
                for (const auto& s : extlv[d - 2]) fresh.push_back(mk_exists_var(xv, s));
        }
        // Conjunctions with at least one conjunct of depth d-1.
        auto all = upto(d - 1);
        for (const auto& a : prev)
            for (const auto& b : all) fresh.push_back(mk_and(a, b));
        auto older = upto(d - 2);
        for (const auto& a : older)
            for (const auto& b : prev) fresh.push_back(mk_and(a, b));
        levels.push_back(std::move(fresh));
    }
    auto [pos, inserted] = cache.emplace(std::move(key), std::move(levels));
    return pos->second;
}

}  // namespace

std::vector<Sentence> enum_sentences(const Signature& sig, const Bounds& b) {
    const auto& levels = sentence_levels(sig, b.depth);
    std::vector<Sentence> out;
    for (const auto& lv : levels) out.insert(out.end(), lv.begin(), lv.end());
    return out;
}

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

namespace {

// Enumerate all interpretations of fo symbols over a fixed carrier.
bool enum_fo_interps(const Signature& sig, const std::vector<std::string>& carrier,
                     const std::function<bool(const FOModel&)>& f) {
    // Constants need a nonempty carrier.
    for (const auto& [fn, ar] : sig.funcs)
        if (ar == 0 && carrier.empty()) return true;
    struct Slot {
        bool is_func;
        std::string name;
        int arity;
    };
    std::vector<Slot> slots;
    for (const auto& [fn, ar] : sig.funcs) slots.push_back({true, fn, ar});
    for (const auto& [pn, ar] : sig.preds) slots.push_back({false, pn, ar});

    FOModel fo;
    fo.carrier = carrier;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == slots.size()) return f(fo);
        const Slot& s = slots[i];
        if (s.is_func) {
            auto dom = tuples(carrier, s.arity);
            return for_functions(dom, carrier, [&](const auto& table) {
                fo.funcs[s.name] = table;
                bool cont = rec(i + 1);
                fo.funcs.erase(s.name);
                return cont;
            });
        }
        auto dom = tuples(carrier, s.arity);
        return for_subsets(dom, [&](const auto& sub) {
            fo.preds[s.name] = sub;
            bool cont = rec(i + 1);
            fo.preds.erase(s.name);
            return cont;
        });
    };
    return rec(0);
}

// Shared-carrier Kripke base: constants rigid, other symbols per world.
bool enum_shared_fo_bases(const Signature& sig, const std::vector<std::string>& worlds,
                          const std::vector<std::string>& carrier,
                          const std::function<bool(const std::map<std::string, FOModel>&)>& f) {
    // With no worlds there is nothing to interpret: the unique (empty)
    // family, independent of the carrier offered for the rigid constants.
    if (worlds.empty()) return f({});

    Signature consts, rest;
    consts.logic = rest.logic = LogicId::FOL;
    for (const auto& [fn, ar] : sig.funcs)
        (ar == 0 ? consts : rest).funcs[fn] = ar;
    rest.preds = sig.preds;

    return enum_fo_interps(consts, carrier, [&](const FOModel& cpart) {
        std::map<std::string, FOModel> bases;
        std::function<bool(size_t)> rec = [&](size_t wi) -> bool {
            if (wi == worlds.size()) return f(bases);
            return enum_fo_interps(rest, carrier, [&](const FOModel& rpart) {
                FOModel fo = rpart;
                for (const auto& [fn, t] : cpart.funcs) fo.funcs[fn] = t;
                bases[worlds[wi]] = std::move(fo);
                bool cont = rec(wi + 1);
                bases.erase(worlds[wi]);
                return cont;
            });
        };
        return rec(0);
    });
}

bool enum_kripke_models(const Signature& sig, const Bounds& b, Counter& counter,
                        const ModelVisitor& visit) {
    const LogicInfo& li = info(sig.logic);
    std::vector<std::string> nomlist(sig.noms.begin(), sig.noms.end());
    for (int nw = 0; nw <= b.worlds; ++nw) {
        if (nw == 0 && !sig.noms.empty()) continue;
        auto ws = names("w", nw);
        KripkeModel km;
        km.worlds = ws;

        auto emit = [&]() {
            Model m;
            m.logic = sig.logic;
            m.data = km;
            if (!info(sig.logic).tilde && info(sig.logic).frame != FrameClass::Any) {
                Signature chk = sig;
                if (!validate_model(chk, m).pass) return true;  // outside frame class
            }
            counter.tick();
            return visit(m);
        };

        auto base_stage = [&]() -> bool {
            if (li.kripke_fo) {
                if (li.tilde) {
                    // independent base models per world
                    std::function<bool(size_t)> rec = [&](size_t wi) -> bool {
                        if (wi == ws.size()) return emit();
                        bool cont = true;
                        for (int c = 0; c <= b.carrier && cont; ++c) {
                            cont = enum_fo_interps(sig, names("a", c), [&](const FOModel& fo) {
                                km.fbase[ws[wi]] = fo;
                                bool k = rec(wi + 1);
                                km.fbase.erase(ws[wi]);
                                return k;
                            });
                        }
                        return cont;
                    };
                    return rec(0);
                }
                if (ws.empty()) return emit();
                bool cont = true;
                for (int c = 0; c <= b.carrier && cont; ++c) {
                    cont = enum_shared_fo_bases(sig, ws, names("a", c),
                                                [&](const std::map<std::string, FOModel>& bs) {
                                                    km.fbase = bs;
                                                    bool k = emit();
                                                    km.fbase.clear();
                                                    return k;
                                                });
                }
                return cont;
            }
            // propositional valuations per world
            std::vector<std::string> props(sig.props.begin(), sig.props.end());
            std::function<bool(size_t)> rec = [&](size_t wi) -> bool {
                if (wi == ws.size()) return emit();
                return for_subsets(props, [&](const std::set<std::string>& val) {
                    km.pval[ws[wi]] = val;
                    bool k = rec(wi + 1);
                    km.pval.erase(ws[wi]);
                    return k;
                });
            };
            return rec(0);
        };

        auto nom_stage = [&]() -> bool {
            if (li.tilde) return base_stage();
            return for_functions(nomlist, ws, [&](const std::map<std::string, std::string>& nm) {
                km.noms = nm;
                bool k = base_stage();
                km.noms.clear();
                return k;
            });
        };

        auto rel_stage = [&]() -> bool {
            if (li.tilde) return nom_stage();
            std::vector<std::pair<std::string, int>> mods(sig.mods.begin(), sig.mods.end());
            std::function<bool(size_t)> rec = [&](size_t mi) -> bool {
                if (mi == mods.size()) return nom_stage();
                auto dom = tuples(ws, mods[mi].second);
                return for_subsets(dom, [&](const std::set<std::vector<std::string>>& rel) {
                    km.rels[mods[mi].first] = rel;
                    bool k = rec(mi + 1);
                    km.rels.erase(mods[mi].first);
                    return k;
                });
            };
            return rec(0);
        };

        if (!rel_stage()) return false;
    }
    return true;
}

}  // namespace

void enum_models(const Signature& sig, const Bounds& b, const ModelVisitor& visit) {
    require_valid(validate_signature(sig));
    const LogicInfo& li = info(sig.logic);
    Counter counter(b.cap);

    if (sig.logic == LogicId::PL) {
        std::vector<std::string> props(sig.props.begin(), sig.props.end());
        for_subsets(props, [&](const std::set<std::string>& val) {
            Model m;
            m.logic = sig.logic;
            m.data = PLModel{val};
            counter.tick();
            return visit(m);
        });
        return;
    }
    if (!li.kripke) {  // fo fragments and ofol
        int lo = sig.logic == LogicId::OFOL ? 1 : 0;
        for (int c = lo; c <= b.carrier; ++c) {
            bool cont = enum_fo_interps(sig, names("a", c), [&](const FOModel& fo) {
                Model m;
                m.logic = sig.logic;
                m.data = fo;
                counter.tick();
                return visit(m);
            });
            if (!cont) return;
        }
        return;
    }
    enum_kripke_models(sig, b, counter, visit);
}

std::vector<Model> enum_models_vec(const Signature& sig, const Bounds& b) {
    std::vector<Model> out;
    enum_models(sig, b, [&](const Model& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

std::vector<ModelHom> enum_homs(const Signature& sig, const Model& m, const Model& n) {
    const LogicInfo& li = info(sig.logic);
    std::vector<ModelHom> out;
    auto consider = [&](const ModelHom& h) {
        if (hom_check(sig, h, m, n)) out.push_back(h);
        return true;
    };
    if (sig.logic == LogicId::PL) {
        consider(ModelHom{});
        return out;
    }
    if (!li.kripke) {
        for_functions(m.fo().carrier, n.fo().carrier, [&](const auto& h0) {
            ModelHom h;
            h.h0 = h0;
            return consider(h);
        });
        return out;
    }
    const auto& a = m.kripke();
    const auto& bk = n.kripke();
    for_functions(a.worlds, bk.worlds, [&](const auto& h0) {
        if (!li.kripke_fo) {
            ModelHom h;
            h.h0 = h0;
            return consider(h);
        }
        if (li.tilde) {
            // per-world carrier maps
            ModelHom h;
            h.h0 = h0;
            std::function<bool(size_t)> rec = [&](size_t wi) -> bool {
                if (wi == a.worlds.size()) return consider(h);
                const auto& w = a.worlds[wi];
                return for_functions(a.fbase.at(w).carrier, bk.fbase.at(h0.at(w)).carrier,
                                     [&](const auto& hw) {
                                         h.hworld[w] = hw;
                                         bool k = rec(wi + 1);
                                         h.hworld.erase(w);
                                         return k;
                                     });
            };
            return rec(0);
        }
        static const std::vector<std::string> empty;
        const auto& mcr = a.fbase.empty() ? empty : a.fbase.begin()->second.carrier;
        const auto& ncr = bk.fbase.empty() ? empty : bk.fbase.begin()->second.carrier;
        return for_functions(mcr, ncr, [&](const auto& hb) {
            ModelHom h;
            h.h0 = h0;
            h.hbase = hb;
            return consider(h);
        });
    });
    return out;
}

// ---------------------------------------------------------------------------
// Expansions
// ---------------------------------------------------------------------------

namespace {

// Symbols of cod not hit by the morphism (per kind).
template <typename M>
std::set<std::string> free_symbols(const M& cod_syms, const std::map<std::string, std::string>& map) {
    std::set<std::string> image;
    for (const auto& [a, b] : map) image.insert(b);
    std::set<std::string> out;
    for (const auto& entry : cod_syms) {
        std::string name;
        if constexpr (std::is_same_v<std::decay_t<decltype(entry)>, std::string>)
            name = entry;
        else
            name = entry.first;
        if (!image.count(name)) out.insert(name);
    }
    return out;
}

}  // namespace

void enum_expansions(const SigMorphism& theta, const Model& m, const Bounds& b,
                     const ModelVisitor& visit) {
    const LogicInfo& li = info(theta.cod.logic);
    Counter counter(b.cap);

    auto emit = [&](const Model& cand) -> bool {
        if (mod_reduct(theta, cand) != m) return true;
        counter.tick();
        return visit(cand);
    };

    if (theta.cod.logic == LogicId::PL) {
        // image part forced through the reduct check; free props enumerated
        std::set<std::string> freep = free_symbols(theta.cod.props, theta.props);
        std::set<std::string> forced;
        for (const auto& [p, q] : theta.props)
            if (m.pl().val.count(p)) forced.insert(q);
        std::vector<std::string> fp(freep.begin(), freep.end());
        for_subsets(fp, [&](const std::set<std::string>& extra) {
            Model cand;
            cand.logic = LogicId::PL;
            PLModel pm;
            pm.val = forced;
            pm.val.insert(extra.begin(), extra.end());
            cand.data = std::move(pm);
            return emit(cand);
        });
        return;
    }

    if (!li.kripke) {
        // fo fragments and ofol: carrier fixed by the reduct
        const FOModel& fo = m.fo();
        Signature freesig;
        freesig.logic = LogicId::FOL;
        for (const auto& fn : free_symbols(theta.cod.funcs, theta.funcs))
            freesig.funcs[fn] = theta.cod.funcs.at(fn);
        for (const auto& pn : free_symbols(theta.cod.preds, theta.preds))
            freesig.preds[pn] = theta.cod.preds.at(pn);
        enum_fo_interps(freesig, fo.carrier, [&](const FOModel& freepart) {
            FOModel cand = freepart;
            cand.carrier = fo.carrier;
            for (const auto& [fn, target] : theta.funcs) cand.funcs[target] = fo.funcs.at(fn);
            for (const auto& [pn, target] : theta.preds) cand.preds[target] = fo.preds.at(pn);
            if (cand.funcs.size() != theta.cod.funcs.size() ||
                cand.preds.size() != theta.cod.preds.size())
                throw PreconditionError("expansion interpretation mismatch");
            Model cm;
            cm.logic = theta.cod.logic;
            cm.data = std::move(cand);
            return emit(cm);
        });
        return;
    }

    // Kripke logics: worlds fixed by the reduct.
    const KripkeModel& km = m.kripke();
    const auto& ws = km.worlds;
    KripkeModel cand;
    cand.worlds = ws;

    auto finish = [&]() -> bool {
        Model cm;
        cm.logic = theta.cod.logic;
        cm.data = cand;
        if (!validate_model(theta.cod, cm).pass) return true;
        return emit(cm);
    };

    auto base_stage = [&]() -> bool {
        if (li.kripke_fo) {
            std::vector<std::string> carrier =
                km.fbase.empty() ? std::vector<std::string>{} : km.fbase.begin()->second.carrier;
            Signature freesig;
            freesig.logic = LogicId::FOL;
            for (const auto& fn : free_symbols(theta.cod.funcs, theta.funcs))
                freesig.funcs[fn] = theta.cod.funcs.at(fn);
            for (const auto& pn : free_symbols(theta.cod.preds, theta.preds))
                freesig.preds[pn] = theta.cod.preds.at(pn);
            if (li.tilde) {
                std::function<bool(size_t)> rec = [&](size_t wi) -> bool {
                    if (wi == ws.size()) return finish();
                    const auto& w = ws[wi];
                    return enum_fo_interps(freesig, km.fbase.at(w).carrier,
                                           [&](const FOModel& fr) {
                                               FOModel c = fr;
                                               c.carrier = km.fbase.at(w).carrier;
                                               for (const auto& [fn, t] : theta.funcs)
                                                   c.funcs[t] = km.fbase.at(w).funcs.at(fn);
                                               for (const auto& [pn, t] : theta.preds)
                                                   c.preds[t] = km.fbase.at(w).preds.at(pn);
                                               cand.fbase[w] = std::move(c);
                                               bool k = rec(wi + 1);
                                               cand.fbase.erase(w);
                                               return k;
                                           });
                };
                return rec(0);
            }
            // shared carrier: rigid free constants, per-world free rest
            return enum_shared_fo_bases(freesig, ws, carrier,
                                        [&](const std::map<std::string, FOModel>& frees) {
                                            for (const auto& w : ws) {
                                                FOModel c = frees.at(w);
                                                c.carrier = carrier;
                                                for (const auto& [fn, t] : theta.funcs)
                                                    c.funcs[t] = km.fbase.at(w).funcs.at(fn);
                                                for (const auto& [pn, t] : theta.preds)
                                                    c.preds[t] = km.fbase.at(w).preds.at(pn);
                                                cand.fbase[w] = std::move(c);
                                            }
                                            bool k = finish();
                                            cand.fbase.clear();
                                            return k;
                                        });
        }
        // propositional bases
        std::set<std::string> freep = free_symbols(theta.cod.props, theta.props);
        std::vector<std::string> fp(freep.begin(), freep.end());
        std::function<bool(size_t)> rec = [&](size_t wi) -> bool {
            if (wi == ws.size()) return finish();
            const auto& w = ws[wi];
            std::set<std::string> forced;
            for (const auto& [p, q] : theta.props)
                if (km.pval.at(w).count(p)) forced.insert(q);
            return for_subsets(fp, [&](const std::set<std::string>& extra) {
                auto val = forced;
                val.insert(extra.begin(), extra.end());
                cand.pval[w] = std::move(val);
                bool k = rec(wi + 1);
                cand.pval.erase(w);
                return k;
            });
        };
        return rec(0);
    };

    auto nom_stage = [&]() -> bool {
        if (li.tilde) return base_stage();
        std::set<std::string> freen = free_symbols(theta.cod.noms, theta.noms);
        std::vector<std::string> fn(freen.begin(), freen.end());
        for (const auto& [i, j] : theta.noms) cand.noms[j] = km.noms.at(i);
        return for_functions(fn, ws, [&](const std::map<std::string, std::string>& extra) {
            for (const auto& kv : extra) cand.noms[kv.first] = kv.second;
            bool k = base_stage();
            for (const auto& kv : extra) cand.noms.erase(kv.first);
            return k;
        });
    };

    auto rel_stage = [&]() -> bool {
        if (li.tilde) return nom_stage();
        for (const auto& [mn, target] : theta.mods) cand.rels[target] = km.rels.at(mn);
        std::set<std::string> freem;
        for (const auto& mn : free_symbols(theta.cod.mods, theta.mods)) freem.insert(mn);
        std::vector<std::string> fm(freem.begin(), freem.end());
        std::function<bool(size_t)> rec = [&](size_t mi) -> bool {
            if (mi == fm.size()) return nom_stage();
            auto dom = tuples(ws, theta.cod.mods.at(fm[mi]));
            return for_subsets(dom, [&](const std::set<std::vector<std::string>>& rel) {
                cand.rels[fm[mi]] = rel;
                bool k = rec(mi + 1);
                cand.rels.erase(fm[mi]);
                return k;
            });
        };
        return rec(0);
    };

    rel_stage();
}

}  // namespace strat
