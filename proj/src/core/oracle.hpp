// Bit-exact operation-counting oracle. Each layer's forward pass is
// enumerated scalar by scalar and every operation is recorded with its
// register widths, giving totals that validate the closed forms without
// sharing their algebra.
//
// Width conventions (documented because the verdicts depend on them):
//  - an n-term dot product with operand widths (b_w, b_x) runs in a single
//    accumulator of width Acc(n, b_w, b_x); its n-1 additions and the bias
//    accumulation are charged at that register width;
//  - combining two registers (gate input + recurrent term, state blends)
//    is charged at the wider source register;
//  - element-wise products take both operands at the activation width b_a;
//    their results live in 2*b_a-bit registers;
//  - the GRU 1-z complement counts as one addition at width b_a;
//  - the ESN reservoir reduction runs in the full Acc(N_r, b_w, b_a)
//    register regardless of how many connections the sparsity mask retains.
//
// The closed forms instead lump every cross-term addition at the recurrent
// accumulator width and charge the conv bias once per filter; verify()
// computes the expected structural totals from per-kind formulas and reports
// closed-vs-oracle deltas against that documented difference.

#pragma once

#include "core/metrics.hpp"
#include "core/model.hpp"

namespace nncost {

constexpr u64 kOracleOpGuard = 1ull << 20; // scalar multiplies + additions
constexpr u64 kOracleMaskGuard = 1ull << 20; // ESN mask cells (N_r^2)

struct WeightMul {
    u32 lhs = 0; // weight width
    u32 rhs = 0; // input or activation width
    u32 acc = 0; // accumulator register of the reduction it feeds
};

struct EwMul {
    u32 lhs = 0;
    u32 rhs = 0;
};

struct ScalarAdd {
    u32 width = 0; // register the addition runs in
};

struct OpTrace {
    std::vector<WeightMul> multiplies;
    std::vector<ScalarAdd> adds;
    std::vector<EwMul> ew_multiplies;

    // ESN sparsity mask statistics (zero for the other kinds)
    u64 mask_nonzeros = 0; // retained connections, per step
    u64 mask_rows = 0;     // reservoir rows with at least one connection

    u128 rm_count() const;
    u128 bop_total() const;
    // Weight multiplies decompose into x_w adders at their accumulator
    // width; element-wise products cost the sum of their operand widths.
    u128 nabs_total(u64 x_w_terms) const;
};

// Aggregated totals the trace loops are expected to produce, computed from
// per-kind formulas (mask statistics supplied for the ESN).
struct TraceTotals {
    u128 mul_count = 0;
    u128 ew_count = 0;
    u128 add_count = 0;
    u128 mul_bits_sum = 0;  // sum of lhs*rhs over weight multiplies
    u128 mul_acc_sum = 0;   // sum of accumulator widths over weight multiplies
    u128 add_width_sum = 0; // sum of addition register widths
    u128 ew_bits_sum = 0;   // sum of lhs*rhs over element-wise products
    u128 ew_width_sum = 0;  // sum of lhs+rhs over element-wise products

    u128 bop() const { return add_u128(add_u128(mul_bits_sum, ew_bits_sum), add_width_sum); }
    u128 nabs(u64 x_w_terms) const {
        return add_u128(add_u128(mul_u128(x_w_terms, mul_acc_sum), add_width_sum), ew_width_sum);
    }
};

TraceTotals expected_trace_totals(const LayerSpec& layer, u64 mask_nonzeros, u64 mask_rows);

// Enumerates the layer (guarded at kOracleOpGuard scalar operations). The
// seed drives the ESN sparsity mask and nothing else.
Expected<OpTrace> trace_layer(const LayerSpec& layer, u64 seed);

struct VerifyRow {
    std::string layer;
    std::string kind;
    const char* metric = ""; // "rm", "bop", "nabs"
    u128 closed = 0;
    u128 oracle = 0;
    i128 delta = 0; // closed - oracle
    u128 bound = 0; // |closed - expected structural total|
    bool ok = false;
};

struct Verification {
    u64 seed = 0;
    std::vector<VerifyRow> rows;
    bool all_ok() const;
};

// Compares closed forms against the oracle for every layer. ESN closed forms
// are evaluated at the sparsity the generated mask realizes,
// round(s_p*N_r^2)/N_r^2, so the single-rounding conventions line up.
Expected<Verification> verify_model(const ModelSpec& model, u64 seed);

} // namespace nncost
