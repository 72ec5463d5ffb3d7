#pragma once

// Concrete ASCII syntax: canonical renderers and parsers for signatures,
// sentences, models, morphisms, and worlds.  parse(render(x)) == x for every
// value the library produces.  Parse errors carry line/column positions.

#include "strat/types.hpp"

namespace strat {

struct ParseError : std::runtime_error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_), col(col_) {}
};

std::string render_term(const Term& t);
std::string render_sentence(const Sentence& s);
std::string render_signature(const Signature& sig);
std::string render_model(const Model& m);
std::string render_morphism(const SigMorphism& phi);
std::string render_world(const WorldId& w);
std::string render_hom(const ModelHom& h);
std::string render_verdict(const Verdict& v);

Term parse_term(const std::string& text);
Sentence parse_sentence(const std::string& text);
Signature parse_signature(const std::string& text);
Model parse_model(const std::string& text);
SigMorphism parse_morphism(const std::string& text);
WorldId parse_world(const std::string& text);

}  // namespace strat
