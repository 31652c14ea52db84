#include "core/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace nncost {

u128 OpTrace::rm_count() const {
    return add_u128(multiplies.size(), ew_multiplies.size());
}

u128 OpTrace::bop_total() const {
    u128 total = 0;
    for (const WeightMul& m : multiplies)
        total = add_u128(total, mul_u128(m.lhs, m.rhs));
    for (const EwMul& m : ew_multiplies)
        total = add_u128(total, mul_u128(m.lhs, m.rhs));
    for (const ScalarAdd& a : adds)
        total = add_u128(total, a.width);
    return total;
}

u128 OpTrace::nabs_total(u64 x_w_terms) const {
    u128 total = 0;
    for (const WeightMul& m : multiplies)
        total = add_u128(total, mul_u128(x_w_terms, m.acc));
    for (const EwMul& m : ew_multiplies)
        total = add_u128(total, add_u128(m.lhs, m.rhs));
    for (const ScalarAdd& a : adds)
        total = add_u128(total, a.width);
    return total;
}

namespace {

u32 accw(u64 n, u64 b_w, u64 b_x) { return u32(u128(acc_width(n, b_w, b_x))); }

struct TotalsBuilder {
    TraceTotals t;

    void muls(u128 count, u64 lhs, u64 rhs, u64 acc) {
        t.mul_count = add_u128(t.mul_count, count);
        t.mul_bits_sum = add_u128(t.mul_bits_sum, mul_u128(count, mul_u128(lhs, rhs)));
        t.mul_acc_sum = add_u128(t.mul_acc_sum, mul_u128(count, acc));
    }
    void ews(u128 count, u64 lhs, u64 rhs) {
        t.ew_count = add_u128(t.ew_count, count);
        t.ew_bits_sum = add_u128(t.ew_bits_sum, mul_u128(count, mul_u128(lhs, rhs)));
        t.ew_width_sum = add_u128(t.ew_width_sum, mul_u128(count, add_u128(lhs, rhs)));
    }
    void addsn(u128 count, u64 width) {
        t.add_count = add_u128(t.add_count, count);
        t.add_width_sum = add_u128(t.add_width_sum, mul_u128(count, width));
    }
};

} // namespace

TraceTotals expected_trace_totals(const LayerSpec& layer, u64 mask_nonzeros, u64 mask_rows) {
    const BitwidthConfig& b = layer.bits;
    TotalsBuilder tb;

    if (const auto* d = std::get_if<DenseSpec>(&layer.params)) {
        u64 acc = accw(d->n_i, b.w, b.i);
        u128 units = mul_u128(d->n_n, 1);
        tb.muls(mul_u128(units, d->n_i), b.w, b.i, acc);
        tb.addsn(mul_u128(units, d->n_i - 1), acc); // reduction
        tb.addsn(units, acc);                       // bias
    } else if (const auto* c = std::get_if<Conv1DSpec>(&layer.params)) {
        u64 window = c->n_i * c->n_k;
        u64 acc = accw(window, b.w, b.i);
        u128 positions = mul_u128(*conv_output_size(*c), c->n_f);
        tb.muls(mul_u128(positions, window), b.w, b.i, acc);
        tb.addsn(mul_u128(positions, window - 1), acc);
        tb.addsn(positions, acc); // bias at every output position
    } else if (const auto* r = std::get_if<RecurrentSpec>(&layer.params)) {
        u64 acc_i = accw(r->n_i, b.w, b.i);
        u64 acc_h = accw(r->n_h, b.w, b.a);
        u64 wide_ih = std::max<u64>(acc_i, acc_h);
        u64 ew_reg = 2 * b.a;
        u128 units = mul_u128(r->n_s, r->n_h);
        u64 gates = r->kind == RecurrentKind::Rnn ? 1 : r->kind == RecurrentKind::Lstm ? 4 : 3;
        tb.muls(mul_u128(units, mul_u128(gates, r->n_i)), b.w, b.i, acc_i);
        tb.muls(mul_u128(units, mul_u128(gates, r->n_h)), b.w, b.a, acc_h);
        tb.addsn(mul_u128(units, mul_u128(gates, r->n_i - 1)), acc_i);
        tb.addsn(mul_u128(units, mul_u128(gates, r->n_h - 1)), acc_h);
        switch (r->kind) {
        case RecurrentKind::Rnn:
            tb.addsn(mul_u128(units, 2), wide_ih); // combine + bias
            break;
        case RecurrentKind::Lstm:
            tb.addsn(mul_u128(units, 8), wide_ih); // combine + bias per gate
            tb.addsn(units, ew_reg);               // cell state update
            tb.ews(mul_u128(units, 3), b.a, b.a);
            break;
        case RecurrentKind::Gru: {
            u64 wide_i2a = std::max<u64>(acc_i, ew_reg);
            tb.addsn(mul_u128(units, 4), wide_ih);  // z and r gates
            tb.addsn(mul_u128(units, 2), wide_i2a); // candidate gate (gated recurrent term)
            tb.addsn(units, b.a);                   // 1-z complement
            tb.addsn(units, ew_reg);                // output blend
            tb.ews(mul_u128(units, 3), b.a, b.a);
            break;
        }
        }
    } else {
        const auto& e = std::get<ESNSpec>(layer.params);
        u64 acc_i = accw(e.n_i, b.w, b.i);
        u64 acc_r = accw(e.N_r, b.w, b.a);
        u64 wide_ir = std::max<u64>(acc_i, acc_r);
        u64 ew_reg = 2 * b.a;
        u128 steps = e.n_s;
        // input reductions
        tb.muls(mul_u128(steps, mul_u128(e.N_r, e.n_i)), b.w, b.i, acc_i);
        tb.addsn(mul_u128(steps, mul_u128(e.N_r, e.n_i - 1)), acc_i);
        // masked reservoir reductions
        tb.muls(mul_u128(steps, mask_nonzeros), b.w, b.a, acc_r);
        tb.addsn(mul_u128(steps, mask_nonzeros - std::min(mask_nonzeros, mask_rows)), acc_r);
        tb.addsn(mul_u128(steps, mask_rows), wide_ir); // combine where a reservoir term exists
        // leak blend
        tb.ews(mul_u128(steps, mul_u128(2, e.N_r)), b.a, b.a);
        tb.addsn(mul_u128(steps, e.N_r), ew_reg);
        // readout
        tb.muls(mul_u128(steps, mul_u128(e.n_o, e.N_r)), b.w, b.a, acc_r);
        tb.addsn(mul_u128(steps, mul_u128(e.n_o, e.N_r - 1)), acc_r);
        tb.addsn(mul_u128(steps, e.n_o), acc_r); // readout bias
    }
    return tb.t;
}

namespace {

Error guard_check(const LayerSpec& layer) {
    u64 mask_upper = 0;
    if (const auto* e = std::get_if<ESNSpec>(&layer.params)) {
        u128 cells = mul_u128(e->N_r, e->N_r);
        if (cells > kOracleMaskGuard)
            return Error::guard("layer '" + layer.name + "': reservoir mask has " +
                                to_string_u128(cells) + " cells, above the limit " +
                                std::to_string(kOracleMaskGuard));
        mask_upper = u64(cells); // every connection retained, worst case
    }
    TraceTotals upper = expected_trace_totals(layer, mask_upper, 0);
    u128 ops = add_u128(add_u128(upper.mul_count, upper.ew_count), upper.add_count);
    if (ops > kOracleOpGuard)
        return Error::guard("layer '" + layer.name + "' needs " + to_string_u128(ops) +
                            " scalar operations, above the limit " +
                            std::to_string(kOracleOpGuard));
    return {};
}

struct TraceBuilder {
    OpTrace trace;

    void mul(u64 lhs, u64 rhs, u64 acc) { trace.multiplies.push_back({u32(lhs), u32(rhs), u32(acc)}); }
    void ew(u64 lhs, u64 rhs) { trace.ew_multiplies.push_back({u32(lhs), u32(rhs)}); }
    void add(u64 width) { trace.adds.push_back({u32(width)}); }

    // n-term dot product in a dedicated accumulator register
    void reduce(u64 n, u64 lhs, u64 rhs, u64 acc) {
        for (u64 k = 0; k < n; ++k)
            mul(lhs, rhs, acc);
        for (u64 k = 1; k < n; ++k)
            add(acc);
    }
};

// round(s_p * N_r^2) retained cells, uniformly placed by the seeded
// generator; returns per-row connection counts.
std::vector<u64> esn_mask_rows(const ESNSpec& e, u64 seed, u64* nonzeros) {
    u64 cells = e.N_r * e.N_r;
    u64 m = u64(round_half_up(0, e.s_p, cells));
    *nonzeros = m;
    std::vector<u64> rows(e.N_r, 0);
    std::vector<u32> idx(cells);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates; modulo keeps the draw identical on every platform
    for (u64 k = 0; k < m; ++k) {
        u64 j = k + rng() % (cells - k);
        std::swap(idx[k], idx[j]);
        rows[idx[k] / e.N_r] += 1;
    }
    return rows;
}

} // namespace

Expected<OpTrace> trace_layer(const LayerSpec& layer, u64 seed) {
    if (Error e = guard_check(layer); !e.ok())
        return e;
    const BitwidthConfig& b = layer.bits;
    TraceBuilder tb;

    if (const auto* d = std::get_if<DenseSpec>(&layer.params)) {
        u64 acc = accw(d->n_i, b.w, b.i);
        for (u64 neuron = 0; neuron < d->n_n; ++neuron) {
            tb.reduce(d->n_i, b.w, b.i, acc);
            tb.add(acc); // bias
        }
    } else if (const auto* c = std::get_if<Conv1DSpec>(&layer.params)) {
        u64 window = c->n_i * c->n_k;
        u64 acc = accw(window, b.w, b.i);
        u64 out = *conv_output_size(*c);
        for (u64 f = 0; f < c->n_f; ++f) {
            for (u64 pos = 0; pos < out; ++pos) {
                tb.reduce(window, b.w, b.i, acc);
                tb.add(acc); // bias, applied at every output position
            }
        }
    } else if (const auto* r = std::get_if<RecurrentSpec>(&layer.params)) {
        u64 acc_i = accw(r->n_i, b.w, b.i);
        u64 acc_h = accw(r->n_h, b.w, b.a);
        u64 wide_ih = std::max<u64>(acc_i, acc_h);
        u64 ew_reg = 2 * b.a;
        for (u64 t = 0; t < r->n_s; ++t) {
            for (u64 u = 0; u < r->n_h; ++u) {
                auto gate = [&](bool gated_recurrent) {
                    tb.reduce(r->n_i, b.w, b.i, acc_i); // W x_t
                    tb.reduce(r->n_h, b.w, b.a, acc_h); // U h_{t-1}
                    u64 combine = wide_ih;
                    if (gated_recurrent) {
                        tb.ew(b.a, b.a); // r (.) (U h)
                        combine = std::max<u64>(acc_i, ew_reg);
                    }
                    tb.add(combine); // input + recurrent terms
                    tb.add(combine); // bias
                };
                switch (r->kind) {
                case RecurrentKind::Rnn:
                    gate(false);
                    break;
                case RecurrentKind::Lstm:
                    for (int g = 0; g < 4; ++g)
                        gate(false);
                    tb.ew(b.a, b.a); // f (.) C
                    tb.ew(b.a, b.a); // i (.) c~
                    tb.add(ew_reg);  // cell state sum
                    tb.ew(b.a, b.a); // o (.) phi(C)
                    break;
                case RecurrentKind::Gru:
                    gate(false); // z
                    gate(false); // r
                    gate(true);  // candidate, with r gating the recurrent term
                    tb.add(b.a); // 1 - z
                    tb.ew(b.a, b.a); // z (.) h
                    tb.ew(b.a, b.a); // (1-z) (.) h~
                    tb.add(ew_reg);  // blend
                    break;
                }
            }
        }
    } else {
        const auto& e = std::get<ESNSpec>(layer.params);
        u64 acc_i = accw(e.n_i, b.w, b.i);
        u64 acc_r = accw(e.N_r, b.w, b.a);
        u64 wide_ir = std::max<u64>(acc_i, acc_r);
        u64 ew_reg = 2 * b.a;
        u64 nonzeros = 0;
        std::vector<u64> rows = esn_mask_rows(e, seed, &nonzeros);
        tb.trace.mask_nonzeros = nonzeros;
        for (u64 row : rows)
            tb.trace.mask_rows += row > 0 ? 1 : 0;
        for (u64 t = 0; t < e.n_s; ++t) {
            for (u64 unit = 0; unit < e.N_r; ++unit) {
                tb.reduce(e.n_i, b.w, b.i, acc_i); // W_in x_t
                if (rows[unit] > 0) {
                    tb.reduce(rows[unit], b.w, b.a, acc_r); // masked W_r s_{t-1}
                    tb.add(wide_ir);                        // combine both terms
                }
                tb.ew(b.a, b.a); // (1-mu) (.) s
                tb.ew(b.a, b.a); // mu (.) a
                tb.add(ew_reg);  // leak blend
            }
            for (u64 out = 0; out < e.n_o; ++out) {
                tb.reduce(e.N_r, b.w, b.a, acc_r); // W_o s_t
                tb.add(acc_r);                     // readout bias
            }
        }
    }
    return tb.trace;
}

bool Verification::all_ok() const {
    for (const VerifyRow& r : rows)
        if (!r.ok)
            return false;
    return true;
}

namespace {

i128 signed_delta(u128 closed, u128 oracle) {
    return closed >= oracle ? i128(closed - oracle) : -i128(oracle - closed);
}

u128 abs_delta(u128 a, u128 b) { return a >= b ? a - b : b - a; }

} // namespace

Expected<Verification> verify_model(const ModelSpec& model, u64 seed) {
    Verification v;
    v.seed = seed;
    for (const LayerSpec& layer : model.layers) {
        Expected<OpTrace> traced = trace_layer(layer, seed);
        if (!traced.ok())
            return traced.error;
        const OpTrace& trace = *traced;
        TraceTotals expect = expected_trace_totals(layer, trace.mask_nonzeros, trace.mask_rows);

        Expected<u64> xw = x_w(layer.quant, layer.bits.w);
        if (!xw.ok())
            return xw.error;

        // Closed forms; the ESN ones at the sparsity the mask realized.
        u128 closed_rm, closed_bop, closed_nabs;
        if (const auto* e = std::get_if<ESNSpec>(&layer.params)) {
            Dec realized(trace.mask_nonzeros, mul_u128(e->N_r, e->N_r));
            closed_rm = esn_rm_parts(*e).rounded(realized);
            closed_bop = esn_bop_parts(*e, layer.bits).rounded(realized);
            closed_nabs = esn_nabs_parts(*e, layer.bits, *xw).rounded(realized);
        } else {
            closed_rm = layer_rm(layer);
            closed_bop = layer_bop(layer, BopMode::Table);
            closed_nabs = layer_nabs(layer);
        }

        // the enumerated trace must reproduce the structural totals exactly
        bool trace_consistent = trace.rm_count() == add_u128(expect.mul_count, expect.ew_count) &&
                                u128(trace.adds.size()) == expect.add_count &&
                                trace.bop_total() == expect.bop() &&
                                trace.nabs_total(*xw) == expect.nabs(*xw);

        auto push = [&](const char* metric, u128 closed, u128 oracle, u128 expected) {
            VerifyRow row;
            row.layer = layer.name;
            row.kind = layer.kind_name();
            row.metric = metric;
            row.closed = closed;
            row.oracle = oracle;
            row.delta = signed_delta(closed, oracle);
            row.bound = abs_delta(closed, expected);
            row.ok = trace_consistent && abs_delta(closed, oracle) <= row.bound;
            v.rows.push_back(std::move(row));
        };
        push("rm", closed_rm, trace.rm_count(), add_u128(expect.mul_count, expect.ew_count));
        push("bop", closed_bop, trace.bop_total(), expect.bop());
        push("nabs", closed_nabs, trace.nabs_total(*xw), expect.nabs(*xw));
    }
    return v;
}

} // namespace nncost
