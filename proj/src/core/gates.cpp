#include "core/gates.hpp"

#include <algorithm>

#include "core/metrics.hpp"
#include "core/parse.hpp"

namespace nncost {

u128 GateCount::expanded_and() const {
    // every half adder contributes 1 AND, every full adder 2
    return add_u128(and_gates, add_u128(half_adders, mul_u128(full_adders, 2)));
}

u128 GateCount::expanded_xor() const {
    return add_u128(xor_gates, add_u128(half_adders, mul_u128(full_adders, 2)));
}

u128 GateCount::expanded_or() const {
    return add_u128(or_gates, full_adders);
}

u128 GateCount::total_gates() const {
    return add_u128(expanded_and(), add_u128(expanded_xor(), expanded_or()));
}

GateCount& GateCount::operator+=(const GateCount& o) {
    and_gates = add_u128(and_gates, o.and_gates);
    xor_gates = add_u128(xor_gates, o.xor_gates);
    or_gates = add_u128(or_gates, o.or_gates);
    half_adders = add_u128(half_adders, o.half_adders);
    full_adders = add_u128(full_adders, o.full_adders);
    flip_flops = add_u128(flip_flops, o.flip_flops);
    return *this;
}

GateCount GateCount::scaled(u128 factor) const {
    GateCount g;
    g.and_gates = mul_u128(and_gates, factor);
    g.xor_gates = mul_u128(xor_gates, factor);
    g.or_gates = mul_u128(or_gates, factor);
    g.half_adders = mul_u128(half_adders, factor);
    g.full_adders = mul_u128(full_adders, factor);
    g.flip_flops = mul_u128(flip_flops, factor);
    return g;
}

Expected<GateCount> multiplier_gates(u64 m, u64 n) {
    if (n < 1 || m < n)
        return Error::arg("multiplier operands must satisfy m >= n >= 1");
    if (m < 2)
        return Error::arg("1x1 array multiplier is degenerate; the wider operand needs 2 bits");
    GateCount g;
    g.and_gates = mul_u128(m, n);
    g.half_adders = n;
    g.full_adders = mul_u128(m - 2, n);
    return g;
}

Expected<GateCount> adder_gates(u64 width) {
    if (width < 1)
        return Error::arg("adder width must be at least 1");
    GateCount g;
    g.half_adders = 1;
    g.full_adders = width - 1;
    return g;
}

const GateCount& reference_multiplier_27x18() {
    static const GateCount ref = [] {
        GateCount g;
        g.and_gates = 486;
        g.half_adders = 18;
        g.full_adders = 450;
        g.flip_flops = 90;
        return g;
    }();
    return ref;
}

const ClbCapacityTable& builtin_clb_table(ClbEra era) {
    static const ClbCapacityTable lut4 = [] {
        ClbCapacityTable t;
        t.name = "builtin-lut4";
        t.era = ClbEra::Lut4;
        t.rows = {{"4-input LUT", 2, 1, 9}, {"3-input LUT", 1, 1, 6}, {"flip-flop", 2, 6, 12}};
        t.total_min = 15;
        t.total_max = 48;
        t.typical = Dec(57, 2); // 28.5 gates per CLB
        return t;
    }();
    static const ClbCapacityTable lut6 = [] {
        ClbCapacityTable t;
        t.name = "builtin-lut6";
        t.era = ClbEra::Lut6;
        t.rows = {{"6-input LUT", 8, 6, 15}, {"flip-flop", 16, 6, 12}};
        t.total_min = 144;
        t.total_max = 312;
        return t;
    }();
    return era == ClbEra::Lut4 ? lut4 : lut6;
}

namespace {

u128 ceil_div_u128(u128 num, u128 den) {
    return (num + den - 1) / den;
}

Expected<Token> expect_tok(Lexer& lx, Tok kind, const char* what) {
    Expected<Token> t = lx.next();
    if (!t.ok())
        return t.error;
    if (t->kind != kind)
        return Error::parse(std::string("expected ") + what, t->line, t->col);
    return t;
}

Expected<u64> uint_field(Lexer& lx, const std::string& what) {
    if (Expected<Token> t = expect_tok(lx, Tok::Equals, "'='"); !t.ok())
        return t.error;
    Expected<Token> v = lx.next();
    if (!v.ok())
        return v.error;
    if (v->kind != Tok::Int)
        return Error::parse("expected integer value for '" + what + "'", v->line, v->col);
    if (Expected<Token> t = expect_tok(lx, Tok::Semi, "';'"); !t.ok())
        return t.error;
    return v->int_value;
}

} // namespace

Expected<ClbCapacityTable> parse_clb_table_text(const std::string& text) {
    Lexer lx(text);
    ClbCapacityTable t;
    bool have_era = false, have_total = false;

    Expected<Token> kw = lx.next();
    if (!kw.ok())
        return kw.error;
    if (kw->kind != Tok::Ident || kw->text != "clb_table")
        return Error::parse("expected 'clb_table'", kw->line, kw->col);
    Expected<Token> name = expect_tok(lx, Tok::String, "quoted table name");
    if (!name.ok())
        return name.error;
    t.name = name->text;
    if (Expected<Token> o = expect_tok(lx, Tok::LBrace, "'{'"); !o.ok())
        return o.error;

    while (true) {
        Expected<Token> tok = lx.next();
        if (!tok.ok())
            return tok.error;
        if (tok->kind == Tok::RBrace)
            break;
        if (tok->kind != Tok::Ident)
            return Error::parse("expected field name or '}'", tok->line, tok->col);

        if (tok->text == "era") {
            if (Expected<Token> e = expect_tok(lx, Tok::Equals, "'='"); !e.ok())
                return e.error;
            Expected<Token> v = lx.next();
            if (!v.ok())
                return v.error;
            if (v->kind != Tok::Ident || (v->text != "lut4" && v->text != "lut6"))
                return Error::parse("era must be 'lut4' or 'lut6'", v->line, v->col);
            t.era = v->text == "lut4" ? ClbEra::Lut4 : ClbEra::Lut6;
            have_era = true;
            if (Expected<Token> s = expect_tok(lx, Tok::Semi, "';'"); !s.ok())
                return s.error;
        } else if (tok->text == "typical") {
            if (Expected<Token> e = expect_tok(lx, Tok::Equals, "'='"); !e.ok())
                return e.error;
            Expected<Token> v = lx.next();
            if (!v.ok())
                return v.error;
            if (v->kind != Tok::Int && v->kind != Tok::Decimal)
                return Error::parse("typical must be a number", v->line, v->col);
            t.typical = v->kind == Tok::Int ? Dec(v->int_value, 1) : v->dec_value;
            if (t.typical->num == 0)
                return Error::parse("typical gates per CLB must be positive", v->line, v->col);
            if (Expected<Token> s = expect_tok(lx, Tok::Semi, "';'"); !s.ok())
                return s.error;
        } else if (tok->text == "total") {
            if (Expected<Token> o = expect_tok(lx, Tok::LBrace, "'{'"); !o.ok())
                return o.error;
            bool have_min = false, have_max = false;
            while (true) {
                Expected<Token> f = lx.next();
                if (!f.ok())
                    return f.error;
                if (f->kind == Tok::RBrace)
                    break;
                if (f->kind != Tok::Ident || (f->text != "min" && f->text != "max"))
                    return Error::parse("expected 'min' or 'max'", f->line, f->col);
                Expected<u64> v = uint_field(lx, f->text);
                if (!v.ok())
                    return v.error;
                (f->text == "min" ? t.total_min : t.total_max) = *v;
                (f->text == "min" ? have_min : have_max) = true;
            }
            if (!have_min || !have_max)
                return Error::parse("total block needs both min and max", tok->line, tok->col);
            have_total = true;
        } else if (tok->text == "resource") {
            Expected<Token> rname = expect_tok(lx, Tok::String, "quoted resource name");
            if (!rname.ok())
                return rname.error;
            if (Expected<Token> o = expect_tok(lx, Tok::LBrace, "'{'"); !o.ok())
                return o.error;
            ClbResourceRow row;
            row.name = rname->text;
            while (true) {
                Expected<Token> f = lx.next();
                if (!f.ok())
                    return f.error;
                if (f->kind == Tok::RBrace)
                    break;
                if (f->kind != Tok::Ident)
                    return Error::parse("expected resource field", f->line, f->col);
                Expected<u64> v = uint_field(lx, f->text);
                if (!v.ok())
                    return v.error;
                if (f->text == "count")
                    row.per_clb = *v;
                else if (f->text == "min")
                    row.min_gates = *v;
                else if (f->text == "max")
                    row.max_gates = *v;
                else
                    return Error::parse("unknown resource field '" + f->text + "'", f->line,
                                        f->col);
            }
            t.rows.push_back(row);
        } else {
            return Error::parse("unknown field '" + tok->text + "'", tok->line, tok->col);
        }
    }
    Expected<Token> end = lx.next();
    if (!end.ok())
        return end.error;
    if (end->kind != Tok::End)
        return Error::parse("trailing input after table", end->line, end->col);

    if (!have_era)
        return Error::validation("clb table is missing 'era'");
    if (!have_total)
        return Error::validation("clb table is missing its 'total' block");
    if (t.total_min < 1 || t.total_max < t.total_min)
        return Error::validation("clb table total range must satisfy 1 <= min <= max");
    for (const ClbResourceRow& r : t.rows)
        if (r.max_gates < r.min_gates)
            return Error::validation("resource '" + r.name + "' has max below min");
    return t;
}

Expected<ClbCapacityTable> parse_clb_table_file(const std::string& path) {
    Error err;
    std::string text = read_file(path, &err);
    if (!err.ok())
        return err;
    return parse_clb_table_text(text);
}

ClbEstimate clb_estimate(u128 gates, const ClbCapacityTable& table) {
    ClbEstimate e;
    if (gates == 0)
        return e;
    e.min_clbs = ceil_div_u128(gates, table.total_max);
    e.max_clbs = ceil_div_u128(gates, table.total_min);
    if (table.typical)
        e.typical_clbs = ceil_div_u128(mul_u128(gates, table.typical->den), table.typical->num);
    return e;
}

namespace {

// Accumulates gate counts for a layer. Weight multiplies follow the layer's
// quantization scheme; additions and element-wise products do not.
class GateBuilder {
public:
    GateBuilder(const QuantScheme& q, u64 b_w, u64 depth) : quant_(q), b_w_(b_w), depth_(depth) {}

    // count weight multiplies, each b_w x b_x, feeding an accumulator of
    // width acc (apot shift-add stages run at the accumulator width)
    Error weight_muls(u128 count, u64 b_x, u64 acc) {
        switch (quant_.kind) {
        case QuantKind::PoT:
            return {}; // pure shifts, no gates
        case QuantKind::APoT: {
            Expected<GateCount> a = adder_gates(acc);
            if (!a.ok())
                return a.error;
            u128 stages = mul_u128(count, quant_.apot_terms);
            add(a->scaled(stages), stages, acc);
            return {};
        }
        case QuantKind::Uniform: {
            Expected<GateCount> m = multiplier_gates(std::max(b_w_, b_x), std::min(b_w_, b_x));
            if (!m.ok())
                return m.error;
            add(m->scaled(count), count, b_w_ + b_x);
            return {};
        }
        }
        return Error::arg("unknown quantization scheme");
    }

    // element-wise activation products stay full multipliers under every scheme
    Error ew_muls(u128 count, u64 b_a) {
        Expected<GateCount> m = multiplier_gates(b_a, b_a);
        if (!m.ok())
            return m.error;
        add(m->scaled(count), count, 2 * b_a);
        return {};
    }

    Error adds(u128 count, u64 width) {
        Expected<GateCount> a = adder_gates(width);
        if (!a.ok())
            return a.error;
        add(a->scaled(count), count, width);
        return {};
    }

    const GateCount& result() const { return total_; }

private:
    void add(GateCount g, u128 stages, u64 result_width) {
        // pipeline registers: depth banks of result-width flip-flops per stage
        g.flip_flops = add_u128(g.flip_flops, mul_u128(mul_u128(stages, depth_), result_width));
        total_ += g;
    }

    QuantScheme quant_;
    u64 b_w_;
    u64 depth_;
    GateCount total_;
};

// Applies half-up rounding field by field: rounded = fixed + round(s_p * coeff).
GateCount round_sparse(const GateCount& fixed, const GateCount& coeff, const Dec& s_p) {
    GateCount g;
    g.and_gates = round_half_up(fixed.and_gates, s_p, coeff.and_gates);
    g.xor_gates = round_half_up(fixed.xor_gates, s_p, coeff.xor_gates);
    g.or_gates = round_half_up(fixed.or_gates, s_p, coeff.or_gates);
    g.half_adders = round_half_up(fixed.half_adders, s_p, coeff.half_adders);
    g.full_adders = round_half_up(fixed.full_adders, s_p, coeff.full_adders);
    g.flip_flops = round_half_up(fixed.flip_flops, s_p, coeff.flip_flops);
    return g;
}

} // namespace

Expected<GateCount> layer_gates(const LayerSpec& layer, u64 pipeline_depth) {
    const BitwidthConfig& b = layer.bits;

    if (const auto* d = std::get_if<DenseSpec>(&layer.params)) {
        u64 acc = (u64)acc_width(d->n_i, b.w, b.i);
        GateBuilder gb(layer.quant, b.w, pipeline_depth);
        u128 rm = mul_u128(d->n_n, d->n_i);
        if (Error e = gb.weight_muls(rm, b.i, acc); !e.ok())
            return e;
        // n_n*(n_i-1) reduction adds plus n_n bias adds, all at acc width
        if (Error e = gb.adds(rm, acc); !e.ok())
            return e;
        return gb.result();
    }

    if (const auto* c = std::get_if<Conv1DSpec>(&layer.params)) {
        std::optional<u64> out = conv_output_size(*c);
        if (!out)
            return Error::validation("conv1d output size is not positive");
        u64 window = c->n_i * c->n_k;
        u64 acc = (u64)acc_width(window, b.w, b.i);
        GateBuilder gb(layer.quant, b.w, pipeline_depth);
        u128 muls = mul_u128(mul_u128(*out, c->n_f), window);
        if (Error e = gb.weight_muls(muls, b.i, acc); !e.ok())
            return e;
        u128 adds = add_u128(mul_u128(mul_u128(*out, c->n_f), window - 1), c->n_f);
        if (Error e = gb.adds(adds, acc); !e.ok())
            return e;
        return gb.result();
    }

    if (const auto* r = std::get_if<RecurrentSpec>(&layer.params)) {
        u64 acc_i = (u64)acc_width(r->n_i, b.w, b.i);
        u64 acc_h = (u64)acc_width(r->n_h, b.w, b.a);
        u128 units = mul_u128(r->n_s, r->n_h);
        u64 gates_per_unit = r->kind == RecurrentKind::Rnn ? 1
                             : r->kind == RecurrentKind::Lstm ? 4
                                                              : 3;
        u64 ew_per_unit = r->kind == RecurrentKind::Rnn ? 0 : 3;
        u64 extra_adds = r->kind == RecurrentKind::Rnn ? 2
                         : r->kind == RecurrentKind::Lstm ? 9
                                                          : 8;

        GateBuilder gb(layer.quant, b.w, pipeline_depth);
        u128 gate_count = mul_u128(units, gates_per_unit);
        if (Error e = gb.weight_muls(mul_u128(gate_count, r->n_i), b.i, acc_i); !e.ok())
            return e;
        if (Error e = gb.weight_muls(mul_u128(gate_count, r->n_h), b.a, acc_h); !e.ok())
            return e;
        if (r->n_i > 1)
            if (Error e = gb.adds(mul_u128(gate_count, r->n_i - 1), acc_i); !e.ok())
                return e;
        if (r->n_h > 1)
            if (Error e = gb.adds(mul_u128(gate_count, r->n_h - 1), acc_h); !e.ok())
                return e;
        if (Error e = gb.adds(mul_u128(units, extra_adds), acc_h); !e.ok())
            return e;
        if (ew_per_unit)
            if (Error e = gb.ew_muls(mul_u128(units, ew_per_unit), b.a); !e.ok())
                return e;
        return gb.result();
    }

    const ESNSpec& e = std::get<ESNSpec>(layer.params);
    u64 acc_i = (u64)acc_width(e.n_i, b.w, b.i);
    u64 acc_n = (u64)acc_width(e.N_r, b.w, b.a);
    u64 acc_o = (u64)acc_width(e.n_o, b.w, b.a);
    u128 units = mul_u128(e.n_s, e.N_r);

    // sparsity-independent part
    GateBuilder fixed(layer.quant, b.w, pipeline_depth);
    if (Error err = fixed.weight_muls(mul_u128(units, e.n_i), b.i, acc_i); !err.ok())
        return err;
    if (e.n_i > 1)
        if (Error err = fixed.adds(mul_u128(units, e.n_i - 1), acc_i); !err.ok())
            return err;
    if (Error err = fixed.weight_muls(mul_u128(units, e.n_o), b.a, acc_o); !err.ok())
        return err;
    if (e.n_o > 1)
        if (Error err = fixed.adds(mul_u128(units, e.n_o - 1), acc_o); !err.ok())
            return err;
    if (Error err = fixed.adds(mul_u128(units, 4), acc_n); !err.ok())
        return err;
    if (Error err = fixed.ew_muls(mul_u128(units, 2), b.a); !err.ok())
        return err;

    // recurrent part, scaled by the retained-connection fraction s_p
    GateBuilder conn(layer.quant, b.w, pipeline_depth);
    if (Error err = conn.weight_muls(mul_u128(units, e.N_r), b.a, acc_n); !err.ok())
        return err;
    if (e.N_r > 1)
        if (Error err = conn.adds(mul_u128(units, e.N_r - 1), acc_n); !err.ok())
            return err;

    return round_sparse(fixed.result(), conn.result(), e.s_p);
}

Expected<GateReport> model_gates(const ModelSpec& model, const ClbCapacityTable& table,
                                 u64 pipeline_depth) {
    GateReport report;
    report.era = table.era;
    report.table_name = table.name;
    report.pipeline_depth = pipeline_depth;
    for (const LayerSpec& layer : model.layers) {
        Expected<GateCount> g = layer_gates(layer, pipeline_depth);
        if (!g.ok()) {
            g.error.message = "layer '" + layer.name + "': " + g.error.message;
            return g.error;
        }
        GateReportRow row;
        row.name = layer.name;
        row.kind = layer.kind_name();
        row.scheme = layer.quant.str();
        row.gates = *g;
        row.clbs = clb_estimate(row.gates.total_gates(), table);
        report.per_layer.push_back(std::move(row));
        report.totals += *g;
    }
    report.total_clbs = clb_estimate(report.totals.total_gates(), table);
    return report;
}

} // namespace nncost
