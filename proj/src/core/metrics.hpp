// Closed-form complexity metrics per layer: real multiplications (rm),
// bit operations (bop) and additions-plus-bit-shifts after decomposing
// weight multiplies into adders (nabs). All values are exact integers; the
// ESN forms are linear in the retained-connection fraction s_p and rounded
// half up once per layer metric.

#pragma once

#include "core/model.hpp"

namespace nncost {

enum class BopMode { Table, Exact };

// Accumulator width of an n-term dot product with operand widths b_w, b_x.
u128 acc_width(u64 n, u64 b_w, u64 b_x);

// Bit operations of that dot product: n*b_w*b_x multiplies plus n-1
// accumulations at the full accumulator width.
u128 mult_bop(u64 n, u64 b_w, u64 b_x);

// ESN metrics as (fixed + s_p * sp_coeff); callers round once at the end.
// Exposed so verification can evaluate the same forms at the sparsity a
// concrete mask realizes.
struct EsnParts {
    u128 fixed = 0;
    u128 sp_coeff = 0;

    u128 rounded(const Dec& s_p) const { return round_half_up(fixed, s_p, sp_coeff); }
};
EsnParts esn_rm_parts(const ESNSpec& e);
EsnParts esn_bop_parts(const ESNSpec& e, const BitwidthConfig& b);
EsnParts esn_nabs_parts(const ESNSpec& e, const BitwidthConfig& b, u64 x_w_terms);

// Closed forms for a validated layer. BopMode only changes the dense
// accounting (split multiply/accumulate + bias form vs the folded per-weight
// table form); the two are algebraically equal and both are kept callable.
u128 layer_rm(const LayerSpec& layer);
u128 layer_bop(const LayerSpec& layer, BopMode mode = BopMode::Table);
u128 layer_nabs(const LayerSpec& layer);

struct MetricRow {
    std::string name;
    std::string kind;
    u128 rm = 0;
    u128 bop = 0;
    u128 nabs = 0;
};

struct MetricReport {
    BopMode mode = BopMode::Table;
    std::vector<MetricRow> per_layer;
    u128 rm_total = 0;
    u128 bop_total = 0;
    u128 nabs_total = 0;
};

MetricReport analyze(const ModelSpec& model, BopMode mode = BopMode::Table);

} // namespace nncost
