#include "strat/textio.hpp"
#include "strat/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace strat {

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

namespace {

template <typename It, typename F>
std::string join(It begin, It end, const std::string& sep, F&& f) {
    std::string out;
    bool first = true;
    for (auto it = begin; it != end; ++it) {
        if (!first) out += sep;
        first = false;
        out += f(*it);
    }
    return out;
}

std::string id(const std::string& s) { return s; }

std::string tuple_str(const std::vector<std::string>& t) {
    return "(" + join(t.begin(), t.end(), ", ", id) + ")";
}

}  // namespace

std::string render_term(const Term& t) {
    if (t.args.empty()) return t.head;
    return t.head + "(" +
           join(t.args.begin(), t.args.end(), ", ",
                [](const Term& a) { return render_term(a); }) +
           ")";
}

std::string render_sentence(const Sentence& s) {
    if (!s) throw MalformedInput("null sentence");
    switch (s->kind) {
        case SKind::Prop:
            return s->name;
        case SKind::Pred:
            return s->name + "(" +
                   join(s->terms.begin(), s->terms.end(), ", ",
                        [](const Term& t) { return render_term(t); }) +
                   ")";
        case SKind::Eq:
            return render_term(s->terms[0]) + " = " + render_term(s->terms[1]);
        case SKind::And:
            return "(" + render_sentence(s->subs[0]) + " & " + render_sentence(s->subs[1]) + ")";
        case SKind::Not:
            return "!" + render_sentence(s->subs[0]);
        case SKind::Modal: {
            std::string head = s->name == "lambda" ? "<>" : "<" + s->name + ">";
            if (s->subs.size() == 1) return head + " " + render_sentence(s->subs[0]);
            return head + "(" +
                   join(s->subs.begin(), s->subs.end(), ", ",
                        [](const Sentence& x) { return render_sentence(x); }) +
                   ")";
        }
        case SKind::At:
            return "@" + s->name + " " + render_sentence(s->subs[0]);
        case SKind::Nom:
            return "nom " + s->name;
        case SKind::ExistsVar:
            return "exists " + s->name + " . " + render_sentence(s->subs[0]);
        case SKind::ExistsNom:
            return "existsN " + s->name + " . " + render_sentence(s->subs[0]);
    }
    throw MalformedInput("unreachable sentence kind");
}

namespace {

std::string render_sig_body(const Signature& sig, const std::string& indent) {
    std::string out;
    auto arity_list = [](const std::map<std::string, int>& m) {
        return join(m.begin(), m.end(), ", ", [](const auto& kv) {
            return kv.first + "/" + std::to_string(kv.second);
        });
    };
    if (!sig.props.empty())
        out += indent + "props: " + join(sig.props.begin(), sig.props.end(), ", ", id) + ";\n";
    if (!sig.noms.empty())
        out += indent + "noms: " + join(sig.noms.begin(), sig.noms.end(), ", ", id) + ";\n";
    if (!sig.vars.empty())
        out += indent + "vars: " + join(sig.vars.begin(), sig.vars.end(), ", ", id) + ";\n";
    if (!sig.mods.empty()) out += indent + "mods: " + arity_list(sig.mods) + ";\n";
    if (!sig.funcs.empty()) out += indent + "funcs: " + arity_list(sig.funcs) + ";\n";
    if (!sig.preds.empty()) out += indent + "preds: " + arity_list(sig.preds) + ";\n";
    return out;
}

std::string render_fo_body(const FOModel& fo, const std::string& indent) {
    std::string out;
    out += indent + "carrier: " + join(fo.carrier.begin(), fo.carrier.end(), ", ", id) + ";\n";
    for (const auto& [fn, table] : fo.funcs) {
        out += indent + "func " + fn + ": " +
               join(table.begin(), table.end(), ", ",
                    [](const auto& kv) { return tuple_str(kv.first) + " -> " + kv.second; }) +
               ";\n";
    }
    for (const auto& [pn, tuples] : fo.preds) {
        out += indent + "pred " + pn + ": " +
               join(tuples.begin(), tuples.end(), ", ",
                    [](const auto& t) { return tuple_str(t); }) +
               ";\n";
    }
    return out;
}

}  // namespace

std::string render_signature(const Signature& sig) {
    return "sig " + info(sig.logic).name + " {\n" + render_sig_body(sig, "  ") + "}\n";
}

std::string render_model(const Model& m) {
    const LogicInfo& li = info(m.logic);
    std::string out = "model " + li.name + " {\n";
    if (m.logic == LogicId::PL) {
        out += "  val: " + join(m.pl().val.begin(), m.pl().val.end(), ", ", id) + ";\n";
    } else if (!li.kripke) {
        out += render_fo_body(m.fo(), "  ");
    } else {
        const KripkeModel& km = m.kripke();
        out += "  worlds: " + join(km.worlds.begin(), km.worlds.end(), ", ", id) + ";\n";
        for (const auto& [mn, rel] : km.rels)
            out += "  rel " + mn + ": " +
                   join(rel.begin(), rel.end(), ", ",
                        [](const auto& t) { return tuple_str(t); }) +
                   ";\n";
        for (const auto& [i, w] : km.noms) out += "  nomi " + i + " -> " + w + ";\n";
        for (const auto& [w, ps] : km.pval)
            out += "  val " + w + ": " + join(ps.begin(), ps.end(), ", ", id) + ";\n";
        for (const auto& [w, fo] : km.fbase)
            out += "  base " + w + " {\n" + render_fo_body(fo, "    ") + "  }\n";
    }
    return out + "}\n";
}

std::string render_morphism(const SigMorphism& phi) {
    std::string out = "morph " + info(phi.dom.logic).name + " {\n";
    out += "  dom {\n" + render_sig_body(phi.dom, "    ") + "  }\n";
    out += "  cod {\n" + render_sig_body(phi.cod, "    ") + "  }\n";
    auto maps = [&](const char* kw, const std::map<std::string, std::string>& m) {
        std::string s;
        for (const auto& [a, b] : m) s += "  " + std::string(kw) + " " + a + " -> " + b + ";\n";
        return s;
    };
    out += maps("prop", phi.props);
    out += maps("nom", phi.noms);
    out += maps("mod", phi.mods);
    out += maps("func", phi.funcs);
    out += maps("pred", phi.preds);
    return out + "}\n";
}

std::string render_world(const WorldId& w) {
    if (!w.is_assign) return w.name;
    return "{" +
           join(w.assign.begin(), w.assign.end(), ", ",
                [](const auto& kv) { return kv.first + " = " + kv.second; }) +
           "}";
}

std::string render_hom(const ModelHom& h) {
    std::string out = "hom {\n";
    auto maps = [](const std::string& label, const std::map<std::string, std::string>& m) {
        return "  " + label + ": " +
               join(m.begin(), m.end(), ", ",
                    [](const auto& kv) { return kv.first + " -> " + kv.second; }) +
               ";\n";
    };
    out += maps("h0", h.h0);
    if (!h.hbase.empty()) out += maps("hbase", h.hbase);
    for (const auto& [w, f] : h.hworld) out += maps("hworld " + w, f);
    return out + "}\n";
}

std::string render_verdict(const Verdict& v) {
    std::ostringstream os;
    os << (v.pass ? "PASS" : "FAIL") << " " << v.check;
    if (v.instances > 0) os << " (" << v.instances << " instances)";
    os << "\n";
    if (!v.pass) {
        if (!v.message.empty()) os << "  reason: " << v.message << "\n";
        for (const auto& [label, text] : v.witness) {
            os << "  " << label << ":\n";
            std::istringstream is(text);
            std::string line;
            while (std::getline(is, line)) os << "    " << line << "\n";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum Kind { Ident, Punct, Int, End } kind;
    std::string text;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " (got '" + tok_.text + "')", tok_.line, tok_.col);
    }
    std::string expect_ident() {
        if (tok_.kind != Token::Ident) fail("expected identifier");
        return next().text;
    }
    int expect_int() {
        if (tok_.kind != Token::Int) fail("expected integer");
        return std::stoi(next().text);
    }
    void expect(const std::string& punct) {
        if (tok_.kind != Token::Punct || tok_.text != punct) fail("expected '" + punct + "'");
        advance();
    }
    bool accept(const std::string& punct) {
        if (tok_.kind == Token::Punct && tok_.text == punct) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_ident(const std::string& word) {
        if (tok_.kind == Token::Ident && tok_.text == word) {
            advance();
            return true;
        }
        return false;
    }
    bool at_end() const { return tok_.kind == Token::End; }

  private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++col_;
                ++pos_;
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '$' ||
                    d == '\'') {
                    ++pos_;
                    ++col_;
                } else {
                    break;
                }
            }
            tok_ = {Token::Ident, src_.substr(start, pos_ - start), tok_.line, tok_.col};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++col_;
            }
            tok_ = {Token::Int, src_.substr(start, pos_ - start), tok_.line, tok_.col};
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            pos_ += 2;
            col_ += 2;
            tok_ = {Token::Punct, "->", tok_.line, tok_.col};
            return;
        }
        static const std::string singles = "(){},;:.=&!<>@/";
        if (singles.find(c) != std::string::npos) {
            ++pos_;
            ++col_;
            tok_ = {Token::Punct, std::string(1, c), tok_.line, tok_.col};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// ---------------------------------------------------------------------------
// Sentence / term parsing
// ---------------------------------------------------------------------------

Term parse_term_rec(Lexer& lx) {
    Term t;
    t.head = lx.expect_ident();
    if (lx.accept("(")) {
        if (!lx.accept(")")) {
            do {
                t.args.push_back(parse_term_rec(lx));
            } while (lx.accept(","));
            lx.expect(")");
        }
    }
    return t;
}

Sentence parse_sentence_rec(Lexer& lx);

// After '(', either a conjunction "(s & s)", a parenthesized sentence,
// or a polyadic argument list "(s, s, ...)".
std::vector<Sentence> parse_group(Lexer& lx) {
    std::vector<Sentence> out;
    out.push_back(parse_sentence_rec(lx));
    if (lx.accept("&")) {
        Sentence rhs = parse_sentence_rec(lx);
        lx.expect(")");
        out[0] = mk_and(out[0], rhs);
        return out;
    }
    while (lx.accept(",")) out.push_back(parse_sentence_rec(lx));
    lx.expect(")");
    return out;
}

Sentence parse_sentence_rec(Lexer& lx) {
    if (lx.accept("!")) return mk_not(parse_sentence_rec(lx));
    if (lx.accept("<")) {
        std::string mod = "lambda";
        if (!lx.accept(">")) {
            mod = lx.expect_ident();
            lx.expect(">");
        }
        if (lx.accept("(")) {
            auto args = parse_group(lx);
            return mk_modal(mod, std::move(args));
        }
        return mk_modal(mod, {parse_sentence_rec(lx)});
    }
    if (lx.accept("@")) {
        std::string nom = lx.expect_ident();
        return mk_at(nom, parse_sentence_rec(lx));
    }
    if (lx.accept("(")) {
        auto group = parse_group(lx);
        if (group.size() != 1) lx.fail("unexpected sentence list");
        return group[0];
    }
    if (lx.accept_ident("nom")) return mk_nom(lx.expect_ident());
    if (lx.accept_ident("exists")) {
        std::string var = lx.expect_ident();
        lx.expect(".");
        return mk_exists_var(var, parse_sentence_rec(lx));
    }
    if (lx.accept_ident("existsN")) {
        std::string nomv = lx.expect_ident();
        lx.expect(".");
        return mk_exists_nom(nomv, parse_sentence_rec(lx));
    }
    // Atom: proposition, predicate application, or equation.
    Term t = parse_term_rec(lx);
    if (lx.accept("=")) {
        Term rhs = parse_term_rec(lx);
        return mk_eq(std::move(t), std::move(rhs));
    }
    if (t.args.empty()) return mk_prop(t.head);
    std::vector<Term> args = t.args;
    return mk_pred(t.head, std::move(args));
}

// ---------------------------------------------------------------------------
// Block parsing helpers
// ---------------------------------------------------------------------------

std::vector<std::string> parse_name_list(Lexer& lx) {
    std::vector<std::string> out;
    if (lx.peek().kind != Token::Ident) return out;  // empty list
    do {
        out.push_back(lx.expect_ident());
    } while (lx.accept(","));
    return out;
}

std::vector<std::string> parse_tuple(Lexer& lx) {
    lx.expect("(");
    std::vector<std::string> out;
    if (!lx.accept(")")) {
        do {
            out.push_back(lx.expect_ident());
        } while (lx.accept(","));
        lx.expect(")");
    }
    return out;
}

void parse_sig_body(Lexer& lx, Signature& sig) {
    lx.expect("{");
    while (!lx.accept("}")) {
        std::string kw = lx.expect_ident();
        lx.expect(":");
        if (kw == "props" || kw == "noms" || kw == "vars") {
            auto ns = parse_name_list(lx);
            auto& target = kw == "props" ? sig.props : kw == "noms" ? sig.noms : sig.vars;
            target.insert(ns.begin(), ns.end());
        } else if (kw == "mods" || kw == "funcs" || kw == "preds") {
            auto& target = kw == "mods" ? sig.mods : kw == "funcs" ? sig.funcs : sig.preds;
            if (lx.peek().kind == Token::Ident) {
                do {
                    std::string name = lx.expect_ident();
                    lx.expect("/");
                    target[name] = lx.expect_int();
                } while (lx.accept(","));
            }
        } else {
            lx.fail("unknown signature item: " + kw);
        }
        lx.expect(";");
    }
}

void parse_fo_stmt(Lexer& lx, const std::string& kw, FOModel& fo) {
    if (kw == "carrier") {
        lx.expect(":");
        fo.carrier = parse_name_list(lx);
        std::sort(fo.carrier.begin(), fo.carrier.end());
        fo.carrier.erase(std::unique(fo.carrier.begin(), fo.carrier.end()), fo.carrier.end());
    } else if (kw == "func") {
        std::string name = lx.expect_ident();
        lx.expect(":");
        fo.funcs[name];
        if (lx.peek().kind == Token::Punct && lx.peek().text == "(") {
            do {
                auto args = parse_tuple(lx);
                lx.expect("->");
                fo.funcs[name][args] = lx.expect_ident();
            } while (lx.accept(","));
        }
    } else if (kw == "pred") {
        std::string name = lx.expect_ident();
        lx.expect(":");
        fo.preds[name];
        if (lx.peek().kind == Token::Punct && lx.peek().text == "(") {
            do {
                fo.preds[name].insert(parse_tuple(lx));
            } while (lx.accept(","));
        }
    } else {
        lx.fail("unknown model item: " + kw);
    }
    lx.expect(";");
}

}  // namespace

// ---------------------------------------------------------------------------
// Public parsers
// ---------------------------------------------------------------------------

Term parse_term(const std::string& text) {
    Lexer lx(text);
    Term t = parse_term_rec(lx);
    if (!lx.at_end()) lx.fail("trailing input after term");
    return t;
}

Sentence parse_sentence(const std::string& text) {
    Lexer lx(text);
    Sentence s = parse_sentence_rec(lx);
    if (!lx.at_end()) lx.fail("trailing input after sentence");
    return s;
}

Signature parse_signature(const std::string& text) {
    Lexer lx(text);
    if (!lx.accept_ident("sig")) lx.fail("expected 'sig'");
    Signature sig;
    sig.logic = logic_from_name(lx.expect_ident());
    parse_sig_body(lx, sig);
    if (!lx.at_end()) lx.fail("trailing input after signature");
    return sig;
}

Model parse_model(const std::string& text) {
    Lexer lx(text);
    if (!lx.accept_ident("model")) lx.fail("expected 'model'");
    Model m;
    m.logic = logic_from_name(lx.expect_ident());
    const LogicInfo& li = info(m.logic);
    if (m.logic == LogicId::PL)
        m.data = PLModel{};
    else if (!li.kripke)
        m.data = FOModel{};
    else
        m.data = KripkeModel{};
    lx.expect("{");
    while (!lx.accept("}")) {
        std::string kw = lx.expect_ident();
        if (m.logic == LogicId::PL) {
            if (kw != "val") lx.fail("pl models only have a 'val' item");
            lx.expect(":");
            auto ps = parse_name_list(lx);
            m.pl().val.insert(ps.begin(), ps.end());
            lx.expect(";");
        } else if (!li.kripke) {
            parse_fo_stmt(lx, kw, m.fo());
        } else {
            KripkeModel& km = m.kripke();
            if (kw == "worlds") {
                lx.expect(":");
                km.worlds = parse_name_list(lx);
                std::sort(km.worlds.begin(), km.worlds.end());
                km.worlds.erase(std::unique(km.worlds.begin(), km.worlds.end()),
                                km.worlds.end());
                lx.expect(";");
            } else if (kw == "rel") {
                std::string name = lx.expect_ident();
                lx.expect(":");
                km.rels[name];
                if (lx.peek().kind == Token::Punct && lx.peek().text == "(") {
                    do {
                        km.rels[name].insert(parse_tuple(lx));
                    } while (lx.accept(","));
                }
                lx.expect(";");
            } else if (kw == "nomi") {
                std::string i = lx.expect_ident();
                lx.expect("->");
                km.noms[i] = lx.expect_ident();
                lx.expect(";");
            } else if (kw == "val") {
                std::string w = lx.expect_ident();
                lx.expect(":");
                auto ps = parse_name_list(lx);
                km.pval[w] = std::set<std::string>(ps.begin(), ps.end());
                lx.expect(";");
            } else if (kw == "base") {
                std::string w = lx.expect_ident();
                FOModel fo;
                lx.expect("{");
                while (!lx.accept("}")) parse_fo_stmt(lx, lx.expect_ident(), fo);
                km.fbase[w] = std::move(fo);
            } else {
                lx.fail("unknown model item: " + kw);
            }
        }
    }
    // For propositional Kripke models, worlds without an explicit valuation
    // line get the empty valuation.
    if (li.kripke && !li.kripke_fo) {
        for (const auto& w : m.kripke().worlds) m.kripke().pval.emplace(w, std::set<std::string>{});
    }
    if (!lx.at_end()) lx.fail("trailing input after model");
    return m;
}

SigMorphism parse_morphism(const std::string& text) {
    Lexer lx(text);
    if (!lx.accept_ident("morph")) lx.fail("expected 'morph'");
    SigMorphism phi;
    LogicId logic = logic_from_name(lx.expect_ident());
    phi.dom.logic = phi.cod.logic = logic;
    lx.expect("{");
    while (!lx.accept("}")) {
        std::string kw = lx.expect_ident();
        if (kw == "dom") {
            parse_sig_body(lx, phi.dom);
        } else if (kw == "cod") {
            parse_sig_body(lx, phi.cod);
        } else {
            std::map<std::string, std::string>* target = nullptr;
            if (kw == "prop") target = &phi.props;
            else if (kw == "nom") target = &phi.noms;
            else if (kw == "mod") target = &phi.mods;
            else if (kw == "func") target = &phi.funcs;
            else if (kw == "pred") target = &phi.preds;
            else lx.fail("unknown morphism item: " + kw);
            std::string a = lx.expect_ident();
            lx.expect("->");
            (*target)[a] = lx.expect_ident();
            lx.expect(";");
        }
    }
    if (!lx.at_end()) lx.fail("trailing input after morphism");
    return phi;
}

WorldId parse_world(const std::string& text) {
    Lexer lx(text);
    WorldId w;
    if (lx.accept("{")) {
        w.is_assign = true;
        if (!lx.accept("}")) {
            do {
                std::string x = lx.expect_ident();
                lx.expect("=");
                w.assign[x] = lx.expect_ident();
            } while (lx.accept(","));
            lx.expect("}");
        }
    } else {
        w.name = lx.expect_ident();
    }
    if (!lx.at_end()) lx.fail("trailing input after world");
    return w;
}

}  // namespace strat
