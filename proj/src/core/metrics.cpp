#include "core/metrics.hpp"

#include <stdexcept>

namespace nncost {

u128 acc_width(u64 n, u64 b_w, u64 b_x) {
    return add_u128(add_u128(b_w, b_x), ceil_log2(n));
}

u128 mult_bop(u64 n, u64 b_w, u64 b_x) {
    u128 products = mul_u128(mul_u128(n, b_w), b_x);
    u128 accumulations = mul_u128(n - 1, acc_width(n, b_w, b_x));
    return add_u128(products, accumulations);
}

static u64 layer_x_w(const LayerSpec& l) {
    Expected<u64> x = x_w(l.quant, l.bits.w);
    if (!x.ok())
        throw std::logic_error("metrics on unvalidated layer: " + x.error.message);
    return *x;
}

static u64 conv_out(const Conv1DSpec& c) {
    std::optional<u64> out = conv_output_size(c);
    if (!out)
        throw std::logic_error("metrics on conv layer with no valid output positions");
    return *out;
}

// ---------------------------------------------------------------- rm

static u128 rm_dense(const DenseSpec& d) { return mul_u128(d.n_n, d.n_i); }

static u128 rm_conv(const Conv1DSpec& c) {
    return mul_u128(mul_u128(mul_u128(c.n_f, c.n_i), c.n_k), conv_out(c));
}

static u128 rm_recurrent(const RecurrentSpec& r) {
    u128 per_unit = 0;
    switch (r.kind) {
    case RecurrentKind::Rnn:
        per_unit = add_u128(r.n_i, r.n_h);
        break;
    case RecurrentKind::Lstm:
        per_unit = add_u128(mul_u128(4, add_u128(r.n_i, r.n_h)), 3);
        break;
    case RecurrentKind::Gru:
        per_unit = add_u128(mul_u128(3, add_u128(r.n_i, r.n_h)), 3);
        break;
    }
    return mul_u128(mul_u128(r.n_s, r.n_h), per_unit);
}

EsnParts esn_rm_parts(const ESNSpec& e) {
    u128 steps_units = mul_u128(e.n_s, e.N_r);
    EsnParts p;
    p.fixed = mul_u128(steps_units, add_u128(add_u128(e.n_i, 2), e.n_o));
    p.sp_coeff = mul_u128(steps_units, e.N_r);
    return p;
}

u128 layer_rm(const LayerSpec& layer) {
    if (const auto* d = std::get_if<DenseSpec>(&layer.params))
        return rm_dense(*d);
    if (const auto* c = std::get_if<Conv1DSpec>(&layer.params))
        return rm_conv(*c);
    if (const auto* r = std::get_if<RecurrentSpec>(&layer.params))
        return rm_recurrent(*r);
    const auto& e = std::get<ESNSpec>(layer.params);
    return esn_rm_parts(e).rounded(e.s_p);
}

// ---------------------------------------------------------------- bop

static u128 bop_dense(const DenseSpec& d, const BitwidthConfig& b, BopMode mode) {
    if (mode == BopMode::Exact) {
        // dot products plus one bias accumulation per neuron
        return add_u128(mul_u128(d.n_n, mult_bop(d.n_i, b.w, b.i)),
                        mul_u128(d.n_n, acc_width(d.n_i, b.w, b.i)));
    }
    u128 per_weight = add_u128(mul_u128(b.w, b.i), acc_width(d.n_i, b.w, b.i));
    return mul_u128(mul_u128(d.n_n, d.n_i), per_weight);
}

static u128 bop_conv(const Conv1DSpec& c, const BitwidthConfig& b) {
    u64 window = c.n_i * c.n_k;
    u128 windows = mul_u128(mul_u128(conv_out(c), c.n_f), mult_bop(window, b.w, b.i));
    u128 bias = mul_u128(c.n_f, acc_width(window, b.w, b.i)); // one bias per filter
    return add_u128(windows, bias);
}

static u128 bop_recurrent(const RecurrentSpec& r, const BitwidthConfig& b) {
    u128 in = mult_bop(r.n_i, b.w, b.i);
    u128 hid = mult_bop(r.n_h, b.w, b.a);
    u128 acc_h = acc_width(r.n_h, b.w, b.a);
    u128 ew = mul_u128(b.a, b.a);
    u128 per_unit = 0;
    switch (r.kind) {
    case RecurrentKind::Rnn:
        per_unit = add_u128(add_u128(in, hid), mul_u128(2, acc_h));
        break;
    case RecurrentKind::Lstm:
        per_unit = add_u128(add_u128(mul_u128(4, add_u128(in, hid)), mul_u128(3, ew)),
                            mul_u128(9, acc_h));
        break;
    case RecurrentKind::Gru:
        per_unit = add_u128(add_u128(mul_u128(3, add_u128(in, hid)), mul_u128(3, ew)),
                            mul_u128(8, acc_h));
        break;
    }
    return mul_u128(mul_u128(r.n_s, r.n_h), per_unit);
}

EsnParts esn_bop_parts(const ESNSpec& e, const BitwidthConfig& b) {
    u128 steps_units = mul_u128(e.n_s, e.N_r);
    u128 fixed_unit = add_u128(
        add_u128(mult_bop(e.n_i, b.w, b.i), mult_bop(e.n_o, b.w, b.a)),
        add_u128(mul_u128(2, mul_u128(b.a, b.a)), mul_u128(4, acc_width(e.N_r, b.w, b.a))));
    EsnParts p;
    p.fixed = mul_u128(steps_units, fixed_unit);
    p.sp_coeff = mul_u128(steps_units, mult_bop(e.N_r, b.w, b.a));
    return p;
}

u128 layer_bop(const LayerSpec& layer, BopMode mode) {
    if (const auto* d = std::get_if<DenseSpec>(&layer.params))
        return bop_dense(*d, layer.bits, mode);
    if (const auto* c = std::get_if<Conv1DSpec>(&layer.params))
        return bop_conv(*c, layer.bits);
    if (const auto* r = std::get_if<RecurrentSpec>(&layer.params))
        return bop_recurrent(*r, layer.bits);
    const auto& e = std::get<ESNSpec>(layer.params);
    return esn_bop_parts(e, layer.bits).rounded(e.s_p);
}

// ---------------------------------------------------------------- nabs

static u128 nabs_dense(const DenseSpec& d, const BitwidthConfig& b, u64 xw) {
    return mul_u128(mul_u128(mul_u128(d.n_n, d.n_i), xw + 1), acc_width(d.n_i, b.w, b.i));
}

static u128 nabs_conv(const Conv1DSpec& c, const BitwidthConfig& b, u64 xw) {
    u64 window = c.n_i * c.n_k;
    u128 acc = acc_width(window, b.w, b.i);
    u128 per_window = mul_u128(sub_u128(mul_u128(window, xw + 1), 1), acc);
    return add_u128(mul_u128(mul_u128(conv_out(c), c.n_f), per_window), mul_u128(c.n_f, acc));
}

static u128 nabs_recurrent(const RecurrentSpec& r, const BitwidthConfig& b, u64 xw) {
    u128 acc_i = acc_width(r.n_i, b.w, b.i);
    u128 acc_h = acc_width(r.n_h, b.w, b.a);
    u128 in = mul_u128(sub_u128(mul_u128(r.n_i, xw + 1), 1), acc_i);
    u128 per_unit = 0;
    switch (r.kind) {
    case RecurrentKind::Rnn:
        per_unit = add_u128(in, mul_u128(add_u128(mul_u128(r.n_h, xw + 1), 1), acc_h));
        break;
    case RecurrentKind::Lstm:
        per_unit = add_u128(
            add_u128(mul_u128(4, in),
                     mul_u128(4, mul_u128(add_u128(mul_u128(r.n_h, xw + 1), 1), acc_h))),
            mul_u128(6, b.a));
        break;
    case RecurrentKind::Gru:
        per_unit = add_u128(
            add_u128(mul_u128(3, in),
                     mul_u128(add_u128(mul_u128(mul_u128(3, r.n_h), xw + 1), 5), acc_h)),
            mul_u128(6, b.a));
        break;
    }
    return mul_u128(mul_u128(r.n_s, r.n_h), per_unit);
}

EsnParts esn_nabs_parts(const ESNSpec& e, const BitwidthConfig& b, u64 xw) {
    u128 steps_units = mul_u128(e.n_s, e.N_r);
    u128 acc_i = acc_width(e.n_i, b.w, b.i);
    u128 acc_r = acc_width(e.N_r, b.w, b.a);
    u128 acc_o = acc_width(e.n_o, b.w, b.a);
    u128 fixed_unit =
        add_u128(add_u128(mul_u128(sub_u128(mul_u128(e.n_i, xw + 1), 1), acc_i),
                          mul_u128(sub_u128(mul_u128(e.n_o, xw + 1), 1), acc_o)),
                 add_u128(mul_u128(4, acc_r), mul_u128(4, b.a)));
    EsnParts p;
    p.fixed = mul_u128(steps_units, fixed_unit);
    p.sp_coeff =
        mul_u128(steps_units, mul_u128(sub_u128(mul_u128(e.N_r, xw + 1), 1), acc_r));
    return p;
}

u128 layer_nabs(const LayerSpec& layer) {
    u64 xw = layer_x_w(layer);
    if (const auto* d = std::get_if<DenseSpec>(&layer.params))
        return nabs_dense(*d, layer.bits, xw);
    if (const auto* c = std::get_if<Conv1DSpec>(&layer.params))
        return nabs_conv(*c, layer.bits, xw);
    if (const auto* r = std::get_if<RecurrentSpec>(&layer.params))
        return nabs_recurrent(*r, layer.bits, xw);
    const auto& e = std::get<ESNSpec>(layer.params);
    return esn_nabs_parts(e, layer.bits, xw).rounded(e.s_p);
}

MetricReport analyze(const ModelSpec& model, BopMode mode) {
    MetricReport report;
    report.mode = mode;
    for (const LayerSpec& l : model.layers) {
        MetricRow row;
        row.name = l.name;
        row.kind = l.kind_name();
        row.rm = layer_rm(l);
        row.bop = layer_bop(l, mode);
        row.nabs = layer_nabs(l);
        report.per_layer.push_back(row);
        report.rm_total = add_u128(report.rm_total, row.rm);
        report.bop_total = add_u128(report.bop_total, row.bop);
        report.nabs_total = add_u128(report.nabs_total, row.nabs);
    }
    return report;
}

} // namespace nncost
