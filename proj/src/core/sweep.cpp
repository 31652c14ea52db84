#include "core/sweep.hpp"

#include <algorithm>
#include <set>

#include "core/parse.hpp"

namespace nncost {

const char* sweep_metric_name(SweepMetric m) {
    switch (m) {
    case SweepMetric::Rm:
        return "rm";
    case SweepMetric::Bop:
        return "bop";
    case SweepMetric::Nabs:
        return "nabs";
    }
    return "?";
}

namespace {

const std::set<std::string>* kind_axis_params(const LayerSpec& base) {
    static const std::set<std::string> dense = {"n_i", "n_n"};
    static const std::set<std::string> conv = {"n_i", "n_f", "n_k", "n_s",
                                               "padding", "dilation", "stride"};
    static const std::set<std::string> rec = {"n_i", "n_h", "n_s"};
    static const std::set<std::string> esn = {"N_r", "n_i", "n_o", "n_s"};
    if (std::holds_alternative<DenseSpec>(base.params))
        return &dense;
    if (std::holds_alternative<Conv1DSpec>(base.params))
        return &conv;
    if (std::holds_alternative<RecurrentSpec>(base.params))
        return &rec;
    return &esn;
}

bool is_bit_param(const std::string& p) {
    return p == "b_w" || p == "b_i" || p == "b_a" || p == "b_b";
}

// Overwrites one integer hyper-parameter or bitwidth on the layer copy.
void apply_int_param(LayerSpec& layer, const std::string& param, u64 value) {
    if (param == "b_w") {
        layer.bits.w = value;
        return;
    }
    if (param == "b_i") {
        layer.bits.i = value;
        return;
    }
    if (param == "b_a") {
        layer.bits.a = value;
        return;
    }
    if (param == "b_b") {
        layer.bits.b = value;
        return;
    }
    if (auto* d = std::get_if<DenseSpec>(&layer.params)) {
        if (param == "n_i")
            d->n_i = value;
        else
            d->n_n = value;
        return;
    }
    if (auto* c = std::get_if<Conv1DSpec>(&layer.params)) {
        if (param == "n_i")
            c->n_i = value;
        else if (param == "n_f")
            c->n_f = value;
        else if (param == "n_k")
            c->n_k = value;
        else if (param == "n_s")
            c->n_s = value;
        else if (param == "padding")
            c->padding = value;
        else if (param == "dilation")
            c->dilation = value;
        else
            c->stride = value;
        return;
    }
    if (auto* r = std::get_if<RecurrentSpec>(&layer.params)) {
        if (param == "n_i")
            r->n_i = value;
        else if (param == "n_h")
            r->n_h = value;
        else
            r->n_s = value;
        return;
    }
    auto& e = std::get<ESNSpec>(layer.params);
    if (param == "N_r")
        e.N_r = value;
    else if (param == "n_i")
        e.n_i = value;
    else if (param == "n_o")
        e.n_o = value;
    else
        e.n_s = value;
}

// Scheme with x_w adders per weight multiply under the layer's b_w, if any.
bool apply_x_w(LayerSpec& layer, u64 x) {
    if (layer.bits.w < 1 || x > layer.bits.w - 1)
        return false;
    if (x == 0)
        layer.quant = QuantScheme::pot();
    else if (x == layer.bits.w - 1)
        layer.quant = QuantScheme::uniform();
    else
        layer.quant = QuantScheme::apot(x);
    return true;
}

Expected<SweepAxis> parse_axis_block(Lexer& lx) {
    Expected<Token> pname = lx.next();
    if (!pname.ok())
        return pname.error;
    if (pname->kind != Tok::Ident)
        return Error::parse("expected axis parameter name", pname->line, pname->col);
    SweepAxis axis;
    axis.param = pname->text;
    Expected<Token> open = lx.next();
    if (!open.ok())
        return open.error;
    if (open->kind != Tok::LBrace)
        return Error::parse("expected '{' after axis parameter", open->line, open->col);

    bool seen_start = false, seen_stop = false, seen_step = false;
    while (true) {
        Expected<Token> f = lx.next();
        if (!f.ok())
            return f.error;
        if (f->kind == Tok::RBrace)
            break;
        if (f->kind != Tok::Ident ||
            (f->text != "start" && f->text != "stop" && f->text != "step"))
            return Error::parse("expected 'start', 'stop' or 'step'", f->line, f->col);
        Expected<Token> eq = lx.next();
        if (!eq.ok())
            return eq.error;
        if (eq->kind != Tok::Equals)
            return Error::parse("expected '='", eq->line, eq->col);
        Expected<Token> v = lx.next();
        if (!v.ok())
            return v.error;
        if (v->kind != Tok::Int)
            return Error::parse("expected integer value", v->line, v->col);
        Expected<Token> semi = lx.next();
        if (!semi.ok())
            return semi.error;
        if (semi->kind != Tok::Semi)
            return Error::parse("expected ';'", semi->line, semi->col);
        if (f->text == "start") {
            axis.start = v->int_value;
            seen_start = true;
        } else if (f->text == "stop") {
            axis.stop = v->int_value;
            seen_stop = true;
        } else {
            axis.step = v->int_value;
            seen_step = true;
        }
    }
    if (!seen_start || !seen_stop)
        return Error::parse("axis block needs 'start' and 'stop'", pname->line, pname->col);
    if (!seen_step)
        axis.step = 1;
    if (axis.step < 1)
        return Error::validation("axis '" + axis.param + "': step must be at least 1");
    if (axis.stop < axis.start)
        return Error::validation("axis '" + axis.param + "': stop is below start");
    return axis;
}

Error check_plan(const SweepPlan& plan) {
    if (plan.axes.empty() || plan.axes.size() > 3)
        return Error::validation("a sweep needs between one and three axes");
    const std::set<std::string>* params = kind_axis_params(plan.base);
    std::set<std::string> seen;
    u128 points = 1;
    for (const SweepAxis& a : plan.axes) {
        if (!params->count(a.param) && !is_bit_param(a.param) && a.param != "x_w")
            return Error::validation("axis parameter '" + a.param + "' does not exist on kind '" +
                                     plan.base.kind_name() + "'");
        if (!seen.insert(a.param).second)
            return Error::validation("duplicate axis parameter '" + a.param + "'");
        points = mul_u128(points, a.count());
    }
    if (points > kMaxSweepPoints)
        return Error::guard("sweep grid has " + to_string_u128(points) + " points, above the " +
                            std::to_string(kMaxSweepPoints) + "-point limit");
    return validate_layer(plan.base, nullptr);
}

} // namespace

Expected<SweepPlan> parse_plan_text(const std::string& text) {
    Lexer lx(text);
    SweepPlan plan;
    bool have_metric = false, have_layer = false;

    Expected<Token> head = lx.next();
    if (!head.ok())
        return head.error;
    if (head->kind != Tok::Ident || head->text != "sweep")
        return Error::parse("expected 'sweep' at top level", head->line, head->col);
    Expected<Token> name = lx.next();
    if (!name.ok())
        return name.error;
    if (name->kind != Tok::String)
        return Error::parse("expected quoted sweep name", name->line, name->col);
    plan.name = name->text;
    Expected<Token> open = lx.next();
    if (!open.ok())
        return open.error;
    if (open->kind != Tok::LBrace)
        return Error::parse("expected '{'", open->line, open->col);

    while (true) {
        Expected<Token> t = lx.next();
        if (!t.ok())
            return t.error;
        if (t->kind == Tok::RBrace)
            break;
        if (t->kind != Tok::Ident)
            return Error::parse("expected 'metric', 'bop_mode', 'layer', 'axis' or '}'", t->line,
                                t->col);
        if (t->text == "metric" || t->text == "bop_mode") {
            Expected<Token> eq = lx.next();
            if (!eq.ok())
                return eq.error;
            if (eq->kind != Tok::Equals)
                return Error::parse("expected '='", eq->line, eq->col);
            Expected<Token> v = lx.next();
            if (!v.ok())
                return v.error;
            if (v->kind != Tok::Ident)
                return Error::parse("expected a bare word value", v->line, v->col);
            if (t->text == "metric") {
                if (v->text == "rm")
                    plan.metric = SweepMetric::Rm;
                else if (v->text == "bop")
                    plan.metric = SweepMetric::Bop;
                else if (v->text == "nabs")
                    plan.metric = SweepMetric::Nabs;
                else
                    return Error::parse("metric must be 'rm', 'bop' or 'nabs'", v->line, v->col);
                have_metric = true;
            } else {
                if (v->text == "table")
                    plan.mode = BopMode::Table;
                else if (v->text == "exact")
                    plan.mode = BopMode::Exact;
                else
                    return Error::parse("bop_mode must be 'table' or 'exact'", v->line, v->col);
            }
            Expected<Token> semi = lx.next();
            if (!semi.ok())
                return semi.error;
            if (semi->kind != Tok::Semi)
                return Error::parse("expected ';'", semi->line, semi->col);
        } else if (t->text == "layer") {
            if (have_layer)
                return Error::parse("a sweep takes exactly one base layer", t->line, t->col);
            Expected<LayerSpec> layer = parse_layer(lx);
            if (!layer.ok())
                return layer.error;
            plan.base = *layer;
            have_layer = true;
        } else if (t->text == "axis") {
            Expected<SweepAxis> axis = parse_axis_block(lx);
            if (!axis.ok())
                return axis.error;
            plan.axes.push_back(*axis);
        } else {
            return Error::parse("unknown field '" + t->text + "'", t->line, t->col);
        }
    }
    Expected<Token> tail = lx.next();
    if (!tail.ok())
        return tail.error;
    if (tail->kind != Tok::End)
        return Error::parse("unexpected trailing input", tail->line, tail->col);

    if (!have_metric)
        return Error::parse("sweep plan is missing 'metric'");
    if (!have_layer)
        return Error::parse("sweep plan is missing its base 'layer'");
    if (Error e = check_plan(plan); !e.ok())
        return e;
    return plan;
}

Expected<SweepPlan> parse_plan_file(const std::string& path) {
    Error err;
    std::string text = read_file(path, &err);
    if (!err.ok())
        return err;
    return parse_plan_text(text);
}

Expected<SweepDataset> run_sweep(const SweepPlan& plan) {
    if (Error e = check_plan(plan); !e.ok())
        return e;

    SweepDataset ds;
    ds.plan_name = plan.name;
    ds.layer_kind = plan.base.kind_name();
    ds.metric = plan.metric;
    ds.mode = plan.mode;
    for (const SweepAxis& a : plan.axes)
        ds.axis_names.push_back(a.param);

    std::vector<u64> idx(plan.axes.size(), 0);
    while (true) {
        SweepPoint point;
        point.coords.resize(plan.axes.size());
        for (size_t i = 0; i < plan.axes.size(); ++i)
            point.coords[i] = plan.axes[i].start + idx[i] * plan.axes[i].step;

        LayerSpec layer = plan.base;
        bool applicable = true;
        for (size_t i = 0; i < plan.axes.size(); ++i) // x_w last, it reads b_w
            if (plan.axes[i].param != "x_w")
                apply_int_param(layer, plan.axes[i].param, point.coords[i]);
        for (size_t i = 0; i < plan.axes.size(); ++i)
            if (plan.axes[i].param == "x_w")
                applicable = applicable && apply_x_w(layer, point.coords[i]);

        if (applicable && validate_layer(layer, nullptr).ok()) {
            try {
                switch (plan.metric) {
                case SweepMetric::Rm:
                    point.value = layer_rm(layer);
                    break;
                case SweepMetric::Bop:
                    point.value = layer_bop(layer, plan.mode);
                    break;
                case SweepMetric::Nabs:
                    point.value = layer_nabs(layer);
                    break;
                }
            } catch (const std::overflow_error&) {
                std::string at;
                for (size_t i = 0; i < plan.axes.size(); ++i)
                    at += (i ? ", " : "") + plan.axes[i].param + "=" +
                          std::to_string(point.coords[i]);
                return Error{ErrClass::Range,
                             "metric exceeds 128-bit arithmetic at grid point (" + at + ")", 0, 0};
            }
        }
        ds.points.push_back(std::move(point));

        size_t carry = plan.axes.size();
        while (carry > 0) {
            size_t i = carry - 1;
            if (++idx[i] < plan.axes[i].count())
                break;
            idx[i] = 0;
            --carry;
        }
        if (carry == 0)
            break;
    }
    return ds;
}

Expected<ReductionReport> bitwidth_reduction(const ModelSpec& model, const std::string& axis,
                                             u64 from_bits, u64 to_bits, BopMode mode) {
    if (axis != "b_w" && axis != "b_i" && axis != "b_a")
        return Error::arg("reduction axis must be 'b_w', 'b_i' or 'b_a'");
    if (to_bits < 1 || from_bits <= to_bits)
        return Error::validation("bit range must satisfy from > to >= 1");
    if (from_bits > kMaxBits)
        return Error::validation("'from' exceeds the " + std::to_string(kMaxBits) +
                                 "-bit parameter cap");

    ReductionReport report;
    report.axis = axis;
    report.from_bits = from_bits;
    report.to_bits = to_bits;
    report.mode = mode;
    for (const LayerSpec& base : model.layers) {
        ReductionRow row;
        row.name = base.name;
        row.kind = base.kind_name();
        for (bool lowered : {false, true}) {
            LayerSpec layer = base;
            apply_int_param(layer, axis, lowered ? to_bits : from_bits);
            if (Error e = validate_layer(layer, nullptr); !e.ok()) {
                e.message = "layer '" + base.name + "' at " + axis + "=" +
                            std::to_string(lowered ? to_bits : from_bits) + ": " + e.message;
                return e;
            }
            (lowered ? row.bop_to : row.bop_from) = layer_bop(layer, mode);
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Expected<SchemeReport> scheme_comparison(const ModelSpec& model) {
    SchemeReport report;
    for (const LayerSpec& base : model.layers) {
        for (u64 x = 0; x <= base.bits.w - 1; ++x) {
            LayerSpec layer = base;
            if (!apply_x_w(layer, x))
                continue; // unreachable for x <= b_w-1
            if (Error e = validate_layer(layer, nullptr); !e.ok())
                return e;
            SchemeRow row;
            row.name = base.name;
            row.kind = base.kind_name();
            row.x_w = x;
            row.scheme = layer.quant.str();
            row.nabs = layer_nabs(layer);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

ModelSpec fixture_model() {
    ModelSpec m;
    m.name = "comparison-fixture";
    BitwidthConfig bits; // 8/8/8/8
    QuantScheme quant = QuantScheme::uniform();

    LayerSpec dense;
    dense.name = "dense";
    dense.params = DenseSpec{1000, 2000};
    dense.bits = bits;
    dense.quant = quant;
    m.layers.push_back(dense);

    LayerSpec conv;
    conv.name = "conv";
    conv.params = Conv1DSpec{100, 1, 100, 300, 0, 1, 1};
    conv.bits = bits;
    conv.quant = quant;
    m.layers.push_back(conv);

    for (RecurrentKind kind : {RecurrentKind::Rnn, RecurrentKind::Lstm, RecurrentKind::Gru}) {
        LayerSpec rec;
        rec.name = kind == RecurrentKind::Rnn ? "rnn" : kind == RecurrentKind::Lstm ? "lstm" : "gru";
        rec.params = RecurrentSpec{kind, 100, 100, 100};
        rec.bits = bits;
        rec.quant = quant;
        m.layers.push_back(rec);
    }

    LayerSpec esn;
    esn.name = "esn";
    ESNSpec e;
    e.N_r = 100;
    e.n_i = 100;
    e.n_o = 100;
    e.n_s = 100;
    e.s_p = Dec(1, 2);
    e.mu = Dec(1, 2);
    esn.params = e;
    esn.bits = bits;
    esn.quant = quant;
    m.layers.push_back(esn);

    return m;
}

} // namespace nncost
