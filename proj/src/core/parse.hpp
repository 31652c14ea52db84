// Model file parsing. Text grammar:
//
//   model "<name>" {
//     layer "<name>" <kind> {
//       <param> = <integer>;          # kind-specific hyper-parameters
//       bits { w = 8; i = 8; a = 8; b = 8; }
//       quant = uniform | pot | apot(<n>);
//     }
//     ...
//   }
//
// '#' starts a comment. Files ending in .json use the JSON mirror with the
// same field names. Parsing validates the model; the first violated
// invariant is returned and non-fatal findings are collected as warnings.

#pragma once

#include <string>
#include <vector>

#include "core/model.hpp"

namespace nncost {

struct ParsedModel {
    ModelSpec model;
    std::vector<std::string> warnings;
};

Expected<ParsedModel> parse_model_text(const std::string& text);
Expected<ParsedModel> parse_model_json(const std::string& text);
// Dispatches on the file extension (.json -> JSON mirror, else text grammar).
Expected<ParsedModel> parse_model_file(const std::string& path);

// Canonical text form; parse(serialize(m)) == m for every valid model.
std::string serialize_model(const ModelSpec& model);

// ------------------------------------------------------------------
// Shared tokenizer, also used by the sweep-plan and gate-table parsers.

enum class Tok { Ident, String, Int, Decimal, LBrace, RBrace, LParen, RParen, Equals, Semi, End };

struct Token {
    Tok kind = Tok::End;
    std::string text; // identifier, string body or numeric literal
    u64 int_value = 0;
    Dec dec_value;
    int line = 0;
    int col = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) {}

    // Next token, or a Parse error for malformed input.
    Expected<Token> next();
    Expected<Token> peek();

private:
    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    bool has_peek_ = false;
    Token peeked_;

    void advance();
    Expected<Token> lex();
};

// Parses a decimal literal ("0.37", "1") into an exact fraction.
Expected<Dec> parse_decimal(const std::string& text);

// Parses "uniform", "pot" or "apot(<n>)".
Expected<QuantScheme> quant_from_string(const std::string& s);

// Parses one layer block, positioned right after the 'layer' keyword; shared
// with the sweep-plan grammar. Does not run validate_layer.
Expected<LayerSpec> parse_layer(Lexer& lx);

std::string read_file(const std::string& path, Error* err);

} // namespace nncost
