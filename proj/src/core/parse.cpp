#include "core/parse.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace nncost {

// ------------------------------------------------------------------ lexer

void Lexer::advance() {
    if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
    } else {
        ++col_;
    }
    ++pos_;
}

Expected<Token> Lexer::peek() {
    if (!has_peek_) {
        Expected<Token> t = lex();
        if (!t.ok())
            return t;
        peeked_ = *t;
        has_peek_ = true;
    }
    return peeked_;
}

Expected<Token> Lexer::next() {
    if (has_peek_) {
        has_peek_ = false;
        return peeked_;
    }
    return lex();
}

Expected<Token> Lexer::lex() {
    while (pos_ < src_.size()) {
        char c = src_[pos_];
        if (c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n')
                advance();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        break;
    }
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        return t;
    }
    char c = src_[pos_];
    switch (c) {
    case '{':
        t.kind = Tok::LBrace;
        advance();
        return t;
    case '}':
        t.kind = Tok::RBrace;
        advance();
        return t;
    case '(':
        t.kind = Tok::LParen;
        advance();
        return t;
    case ')':
        t.kind = Tok::RParen;
        advance();
        return t;
    case '=':
        t.kind = Tok::Equals;
        advance();
        return t;
    case ';':
        t.kind = Tok::Semi;
        advance();
        return t;
    case '"': {
        advance();
        std::string body;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
            body.push_back(src_[pos_]);
            advance();
        }
        if (pos_ >= src_.size() || src_[pos_] != '"')
            return Error::parse("unterminated string", t.line, t.col);
        advance();
        t.kind = Tok::String;
        t.text = body;
        return t;
    }
    default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        bool has_dot = false;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                (src_[pos_] == '.' && !has_dot))) {
            if (src_[pos_] == '.')
                has_dot = true;
            num.push_back(src_[pos_]);
            advance();
        }
        t.text = num;
        if (has_dot) {
            Expected<Dec> d = parse_decimal(num);
            if (!d.ok())
                return Error::parse(d.error.message, t.line, t.col);
            t.kind = Tok::Decimal;
            t.dec_value = *d;
            return t;
        }
        if (num.size() > 18)
            return Error::parse("number too large", t.line, t.col);
        t.kind = Tok::Int;
        t.int_value = std::stoull(num);
        return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ident.push_back(src_[pos_]);
            advance();
        }
        t.kind = Tok::Ident;
        t.text = ident;
        return t;
    }
    return Error::parse(std::string("unexpected character '") + c + "'", t.line, t.col);
}

Expected<Dec> parse_decimal(const std::string& text) {
    size_t dot = text.find('.');
    std::string digits = text;
    u64 frac_digits = 0;
    if (dot != std::string::npos) {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        frac_digits = text.size() - dot - 1;
    }
    if (digits.empty() || digits.size() > 18 || frac_digits > 12)
        return Error::parse("decimal literal '" + text + "' is malformed or too long");
    u128 num = 0;
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return Error::parse("decimal literal '" + text + "' is malformed");
        num = num * 10 + u128(ch - '0');
    }
    u128 den = 1;
    for (u64 k = 0; k < frac_digits; ++k)
        den *= 10;
    return Dec(num, den);
}

std::string read_file(const std::string& path, Error* err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        *err = Error::io("cannot open '" + path + "'");
        return "";
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    *err = {};
    return ss.str();
}

// ------------------------------------------------------------------ model parser

namespace {

struct FieldTable {
    std::map<std::string, u64> ints;
    std::map<std::string, Dec> decs;
    std::optional<BitwidthConfig> bits;
    std::optional<QuantScheme> quant;
    int line = 0, col = 0; // of the layer header, for attribution
};

Error expect(Lexer& lx, Tok kind, const char* what) {
    Expected<Token> t = lx.next();
    if (!t.ok())
        return t.error;
    if (t->kind != kind)
        return Error::parse(std::string("expected ") + what, t->line, t->col);
    return {};
}

Expected<u64> take_int(const FieldTable& f, const std::string& layer, const char* key) {
    auto it = f.ints.find(key);
    if (it == f.ints.end())
        return Error::parse("missing required field '" + std::string(key) + "' in layer '" +
                                layer + "'",
                            f.line, f.col);
    return it->second;
}

u64 take_int_or(const FieldTable& f, const char* key, u64 fallback) {
    auto it = f.ints.find(key);
    return it == f.ints.end() ? fallback : it->second;
}

Expected<Dec> take_dec(const FieldTable& f, const std::string& layer, const char* key) {
    auto itd = f.decs.find(key);
    if (itd != f.decs.end())
        return itd->second;
    auto iti = f.ints.find(key);
    if (iti != f.ints.end())
        return Dec(iti->second, 1);
    return Error::parse("missing required field '" + std::string(key) + "' in layer '" + layer +
                            "'",
                        f.line, f.col);
}

const std::map<std::string, std::vector<std::string>> kKindFields = {
    {"dense", {"n_i", "n_n"}},
    {"conv1d", {"n_i", "n_f", "n_k", "n_s", "padding", "dilation", "stride"}},
    {"rnn", {"n_i", "n_h", "n_s"}},
    {"lstm", {"n_i", "n_h", "n_s"}},
    {"gru", {"n_i", "n_h", "n_s"}},
    {"esn", {"N_r", "n_i", "n_o", "n_s", "s_p", "mu"}},
};

bool kind_has_field(const std::string& kind, const std::string& key) {
    auto it = kKindFields.find(kind);
    if (it == kKindFields.end())
        return false;
    for (const std::string& f : it->second)
        if (f == key)
            return true;
    return false;
}

Expected<QuantScheme> parse_quant_value(Lexer& lx) {
    Expected<Token> t = lx.next();
    if (!t.ok())
        return t.error;
    if (t->kind != Tok::Ident)
        return Error::parse("expected quantization scheme name", t->line, t->col);
    if (t->text == "uniform")
        return QuantScheme::uniform();
    if (t->text == "pot")
        return QuantScheme::pot();
    if (t->text == "apot") {
        if (Error e = expect(lx, Tok::LParen, "'(' after apot"); !e.ok())
            return e;
        Expected<Token> n = lx.next();
        if (!n.ok())
            return n.error;
        if (n->kind != Tok::Int)
            return Error::parse("expected integer term count in apot(...)", n->line, n->col);
        if (Error e = expect(lx, Tok::RParen, "')'"); !e.ok())
            return e;
        return QuantScheme::apot(n->int_value);
    }
    return Error::parse("unknown quantization scheme '" + t->text + "'", t->line, t->col);
}

Expected<BitwidthConfig> parse_bits_block(Lexer& lx) {
    if (Error e = expect(lx, Tok::LBrace, "'{' after bits"); !e.ok())
        return e;
    std::map<std::string, u64> seen;
    while (true) {
        Expected<Token> t = lx.next();
        if (!t.ok())
            return t.error;
        if (t->kind == Tok::RBrace)
            break;
        if (t->kind != Tok::Ident ||
            (t->text != "w" && t->text != "i" && t->text != "a" && t->text != "b"))
            return Error::parse("expected one of w, i, a, b in bits block", t->line, t->col);
        if (seen.count(t->text))
            return Error::parse("duplicate field '" + t->text + "' in bits block", t->line,
                                t->col);
        if (Error e = expect(lx, Tok::Equals, "'='"); !e.ok())
            return e;
        Expected<Token> v = lx.next();
        if (!v.ok())
            return v.error;
        if (v->kind != Tok::Int)
            return Error::parse("expected integer bit width", v->line, v->col);
        if (Error e = expect(lx, Tok::Semi, "';'"); !e.ok())
            return e;
        seen[t->text] = v->int_value;
    }
    for (const char* k : {"w", "i", "a", "b"})
        if (!seen.count(k))
            return Error::parse(std::string("missing required field '") + k + "' in bits block");
    return BitwidthConfig{seen["w"], seen["i"], seen["a"], seen["b"]};
}

Expected<LayerSpec> build_layer(const std::string& name, const std::string& kind,
                                const FieldTable& f) {
    LayerSpec layer;
    layer.name = name;
    if (!f.bits)
        return Error::parse("missing required field 'bits' in layer '" + name + "'", f.line,
                            f.col);
    if (!f.quant)
        return Error::parse("missing required field 'quant' in layer '" + name + "'", f.line,
                            f.col);
    layer.bits = *f.bits;
    layer.quant = *f.quant;

    if (kind == "dense") {
        DenseSpec d;
        Expected<u64> n_i = take_int(f, name, "n_i");
        if (!n_i.ok())
            return n_i.error;
        Expected<u64> n_n = take_int(f, name, "n_n");
        if (!n_n.ok())
            return n_n.error;
        d.n_i = *n_i;
        d.n_n = *n_n;
        layer.params = d;
    } else if (kind == "conv1d") {
        Conv1DSpec c;
        for (auto [key, dst] : {std::pair<const char*, u64*>{"n_i", &c.n_i},
                                {"n_f", &c.n_f},
                                {"n_k", &c.n_k},
                                {"n_s", &c.n_s}}) {
            Expected<u64> v = take_int(f, name, key);
            if (!v.ok())
                return v.error;
            *dst = *v;
        }
        c.padding = take_int_or(f, "padding", 0);
        c.dilation = take_int_or(f, "dilation", 1);
        c.stride = take_int_or(f, "stride", 1);
        layer.params = c;
    } else if (kind == "rnn" || kind == "lstm" || kind == "gru") {
        RecurrentSpec r;
        r.kind = kind == "rnn" ? RecurrentKind::Rnn
                 : kind == "lstm" ? RecurrentKind::Lstm
                                  : RecurrentKind::Gru;
        for (auto [key, dst] : {std::pair<const char*, u64*>{"n_i", &r.n_i},
                                {"n_h", &r.n_h},
                                {"n_s", &r.n_s}}) {
            Expected<u64> v = take_int(f, name, key);
            if (!v.ok())
                return v.error;
            *dst = *v;
        }
        layer.params = r;
    } else if (kind == "esn") {
        ESNSpec e;
        for (auto [key, dst] : {std::pair<const char*, u64*>{"N_r", &e.N_r},
                                {"n_i", &e.n_i},
                                {"n_o", &e.n_o},
                                {"n_s", &e.n_s}}) {
            Expected<u64> v = take_int(f, name, key);
            if (!v.ok())
                return v.error;
            *dst = *v;
        }
        Expected<Dec> s_p = take_dec(f, name, "s_p");
        if (!s_p.ok())
            return s_p.error;
        e.s_p = *s_p;
        if (f.decs.count("mu") || f.ints.count("mu")) {
            Expected<Dec> mu = take_dec(f, name, "mu");
            if (!mu.ok())
                return mu.error;
            e.mu = *mu;
        } else {
            e.mu = Dec(1, 1); // no leak by default
        }
        layer.params = e;
    } else {
        return Error::parse("unknown layer kind '" + kind + "'", f.line, f.col);
    }
    return layer;
}

} // namespace

Expected<LayerSpec> parse_layer(Lexer& lx) {
    Expected<Token> name = lx.next();
    if (!name.ok())
        return name.error;
    if (name->kind != Tok::String)
        return Error::parse("expected quoted layer name after 'layer'", name->line, name->col);
    Expected<Token> kind = lx.next();
    if (!kind.ok())
        return kind.error;
    if (kind->kind != Tok::Ident)
        return Error::parse("expected layer kind", kind->line, kind->col);
    if (!kKindFields.count(kind->text))
        return Error::parse("unknown layer kind '" + kind->text + "'", kind->line, kind->col);
    if (Error e = expect(lx, Tok::LBrace, "'{'"); !e.ok())
        return e;

    FieldTable fields;
    fields.line = kind->line;
    fields.col = kind->col;
    while (true) {
        Expected<Token> t = lx.next();
        if (!t.ok())
            return t.error;
        if (t->kind == Tok::RBrace)
            break;
        if (t->kind != Tok::Ident)
            return Error::parse("expected field name or '}'", t->line, t->col);
        if (t->text == "bits") {
            if (fields.bits)
                return Error::parse("duplicate field 'bits'", t->line, t->col);
            Expected<BitwidthConfig> b = parse_bits_block(lx);
            if (!b.ok())
                return b.error;
            fields.bits = *b;
            continue;
        }
        if (t->text == "quant") {
            if (fields.quant)
                return Error::parse("duplicate field 'quant'", t->line, t->col);
            if (Error e = expect(lx, Tok::Equals, "'='"); !e.ok())
                return e;
            Expected<QuantScheme> q = parse_quant_value(lx);
            if (!q.ok())
                return q.error;
            if (Error e = expect(lx, Tok::Semi, "';'"); !e.ok())
                return e;
            fields.quant = *q;
            continue;
        }
        if (!kind_has_field(kind->text, t->text))
            return Error::parse("unknown field '" + t->text + "' for layer kind '" + kind->text +
                                    "'",
                                t->line, t->col);
        if (fields.ints.count(t->text) || fields.decs.count(t->text))
            return Error::parse("duplicate field '" + t->text + "'", t->line, t->col);
        if (Error e = expect(lx, Tok::Equals, "'='"); !e.ok())
            return e;
        Expected<Token> v = lx.next();
        if (!v.ok())
            return v.error;
        bool rational_field = t->text == "s_p" || t->text == "mu";
        if (v->kind == Tok::Int) {
            fields.ints[t->text] = v->int_value;
        } else if (v->kind == Tok::Decimal && rational_field) {
            fields.decs[t->text] = v->dec_value;
        } else {
            return Error::parse(rational_field ? "expected a decimal value"
                                               : "expected an integer value",
                                v->line, v->col);
        }
        if (Error e = expect(lx, Tok::Semi, "';'"); !e.ok())
            return e;
    }
    return build_layer(name->text, kind->text, fields);
}

Expected<QuantScheme> quant_from_string(const std::string& s) {
    Lexer lx(s);
    Expected<QuantScheme> q = parse_quant_value(lx);
    if (!q.ok())
        return Error::parse("unknown quantization scheme '" + s + "'");
    Expected<Token> end = lx.next();
    if (!end.ok() || end->kind != Tok::End)
        return Error::parse("unknown quantization scheme '" + s + "'");
    return q;
}

Expected<ParsedModel> parse_model_text(const std::string& text) {
    Lexer lx(text);
    Expected<Token> head = lx.next();
    if (!head.ok())
        return head.error;
    if (head->kind != Tok::Ident || head->text != "model")
        return Error::parse("expected 'model' at top level", head->line, head->col);
    Expected<Token> name = lx.next();
    if (!name.ok())
        return name.error;
    if (name->kind != Tok::String)
        return Error::parse("expected quoted model name", name->line, name->col);
    if (Error e = expect(lx, Tok::LBrace, "'{'"); !e.ok())
        return e;

    ModelSpec model;
    model.name = name->text;
    while (true) {
        Expected<Token> t = lx.next();
        if (!t.ok())
            return t.error;
        if (t->kind == Tok::RBrace)
            break;
        if (t->kind != Tok::Ident || t->text != "layer")
            return Error::parse("expected 'layer' or '}'", t->line, t->col);
        Expected<LayerSpec> layer = parse_layer(lx);
        if (!layer.ok())
            return layer.error;
        model.layers.push_back(*layer);
    }
    Expected<Token> tail = lx.next();
    if (!tail.ok())
        return tail.error;
    if (tail->kind != Tok::End)
        return Error::parse("unexpected trailing input", tail->line, tail->col);

    ParsedModel out;
    out.model = std::move(model);
    if (Error e = validate_model(out.model, &out.warnings); !e.ok())
        return e;
    return out;
}

Expected<ParsedModel> parse_model_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        return Error::parse("malformed JSON");
    if (!j.is_object() || !j.contains("name") || !j.contains("layers") ||
        !j["layers"].is_array())
        return Error::parse("expected a top-level object with 'name' and 'layers'");

    // Rebuild through the text grammar so both formats share one code path.
    ModelSpec model;
    model.name = j["name"].is_string() ? j["name"].get<std::string>() : "";
    std::ostringstream canon;
    canon << "model \"" << model.name << "\" {\n";
    for (const auto& jl : j["layers"]) {
        if (!jl.is_object() || !jl.contains("name") || !jl.contains("kind") ||
            !jl["name"].is_string() || !jl["kind"].is_string())
            return Error::parse("each layer needs string 'name' and 'kind'");
        canon << "  layer \"" << jl["name"].get<std::string>() << "\" "
              << jl["kind"].get<std::string>() << " {\n";
        for (auto it = jl.begin(); it != jl.end(); ++it) {
            const std::string& key = it.key();
            if (key == "name" || key == "kind")
                continue;
            if (key == "bits") {
                if (!it->is_object())
                    return Error::parse("'bits' must be an object");
                canon << "    bits {";
                for (auto bit = it->begin(); bit != it->end(); ++bit) {
                    if (!bit->is_number_unsigned())
                        return Error::parse("bit widths must be non-negative integers");
                    canon << " " << bit.key() << " = " << bit->get<u64>() << ";";
                }
                canon << " }\n";
            } else if (key == "quant") {
                if (!it->is_string())
                    return Error::parse("'quant' must be a string such as \"uniform\" or \"apot(2)\"");
                canon << "    quant = " << it->get<std::string>() << ";\n";
            } else if (it->is_number_unsigned()) {
                canon << "    " << key << " = " << it->get<u64>() << ";\n";
            } else if (it->is_number()) {
                // exact decimal via the shortest round-trip rendering
                canon << "    " << key << " = " << it->dump() << ";\n";
            } else if (it->is_string()) {
                canon << "    " << key << " = " << it->get<std::string>() << ";\n";
            } else {
                return Error::parse("field '" + key + "' must be a number");
            }
        }
        canon << "  }\n";
    }
    canon << "}\n";
    Expected<ParsedModel> parsed = parse_model_text(canon.str());
    if (!parsed.ok()) {
        Error e = parsed.error;
        e.line = e.col = 0; // positions refer to the regenerated text, not the JSON
        return e;
    }
    return parsed;
}

Expected<ParsedModel> parse_model_file(const std::string& path) {
    Error io;
    std::string text = read_file(path, &io);
    if (!io.ok())
        return io;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_model_json(text);
    return parse_model_text(text);
}

std::string serialize_model(const ModelSpec& model) {
    std::ostringstream out;
    out << "model \"" << model.name << "\" {\n";
    for (const LayerSpec& l : model.layers) {
        out << "  layer \"" << l.name << "\" " << l.kind_name() << " {\n";
        if (const auto* d = std::get_if<DenseSpec>(&l.params)) {
            out << "    n_i = " << d->n_i << ";\n";
            out << "    n_n = " << d->n_n << ";\n";
        } else if (const auto* c = std::get_if<Conv1DSpec>(&l.params)) {
            out << "    n_i = " << c->n_i << ";\n";
            out << "    n_f = " << c->n_f << ";\n";
            out << "    n_k = " << c->n_k << ";\n";
            out << "    n_s = " << c->n_s << ";\n";
            out << "    padding = " << c->padding << ";\n";
            out << "    dilation = " << c->dilation << ";\n";
            out << "    stride = " << c->stride << ";\n";
        } else if (const auto* r = std::get_if<RecurrentSpec>(&l.params)) {
            out << "    n_i = " << r->n_i << ";\n";
            out << "    n_h = " << r->n_h << ";\n";
            out << "    n_s = " << r->n_s << ";\n";
        } else {
            const auto& e = std::get<ESNSpec>(l.params);
            out << "    N_r = " << e.N_r << ";\n";
            out << "    n_i = " << e.n_i << ";\n";
            out << "    n_o = " << e.n_o << ";\n";
            out << "    n_s = " << e.n_s << ";\n";
            out << "    s_p = " << e.s_p.str() << ";\n";
            out << "    mu = " << e.mu.str() << ";\n";
        }
        out << "    bits { w = " << l.bits.w << "; i = " << l.bits.i << "; a = " << l.bits.a
            << "; b = " << l.bits.b << "; }\n";
        out << "    quant = " << l.quant.str() << ";\n";
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace nncost
