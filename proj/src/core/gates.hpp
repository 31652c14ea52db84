// Logic-gate estimates. Weight multiplies map to unsigned array multipliers
// (AND plane plus half/full adder rows), additions map to ripple-carry
// adders at the widths the closed forms charge, and totals are bounded in
// CLBs using published per-CLB gate-capacity ranges. Everything here is an
// estimate by construction and is labelled as such in rendered output.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/model.hpp"

namespace nncost {

struct GateCount {
    u128 and_gates = 0; // standalone ANDs (multiplier arrays)
    u128 xor_gates = 0;
    u128 or_gates = 0;
    u128 half_adders = 0;
    u128 full_adders = 0;
    u128 flip_flops = 0; // pipeline output registers

    // half adder = 1 AND + 1 XOR; full adder = 2 AND + 2 XOR + 1 OR
    u128 expanded_and() const;
    u128 expanded_xor() const;
    u128 expanded_or() const;
    u128 total_gates() const; // expanded_and + expanded_xor + expanded_or

    GateCount& operator+=(const GateCount& o);
    GateCount scaled(u128 factor) const;
};

// m x n array multiplier, m >= n >= 1 and m >= 2: m*n AND plane, n half
// adders, (m-2)*n full adders. Narrower operands are a degenerate-width
// error; callers pass (larger, smaller).
Expected<GateCount> multiplier_gates(u64 m, u64 n);

// Ripple-carry adder for the given result width: 1 half adder plus width-1
// full adders.
Expected<GateCount> adder_gates(u64 width);

// Fixed reference decomposition of a 27x18 hardware multiplier tile,
// including its 90 pipeline flip-flops. Shipped as a constant, not derived.
const GateCount& reference_multiplier_27x18();

enum class ClbEra { Lut4, Lut6 };

struct ClbResourceRow {
    std::string name;
    u64 per_clb = 0;
    u64 min_gates = 0;
    u64 max_gates = 0;
};

struct ClbCapacityTable {
    std::string name;
    ClbEra era = ClbEra::Lut4;
    std::vector<ClbResourceRow> rows;
    u64 total_min = 0; // gate capacity per CLB, lower bound
    u64 total_max = 0;
    std::optional<Dec> typical; // typical gates per CLB, when published
};

const ClbCapacityTable& builtin_clb_table(ClbEra era);

// User-supplied replacement table, grammar:
//   clb_table "<name>" {
//     era = lut4 | lut6;
//     total { min = 15; max = 48; }
//     typical = 28.5;                      # optional
//     resource "<name>" { count = 2; min = 1; max = 9; }   # informational
//   }
Expected<ClbCapacityTable> parse_clb_table_text(const std::string& text);
Expected<ClbCapacityTable> parse_clb_table_file(const std::string& path);

struct ClbEstimate {
    u128 min_clbs = 0; // total gates / best-case capacity, rounded up
    u128 max_clbs = 0;
    std::optional<u128> typical_clbs;
};

ClbEstimate clb_estimate(u128 gates, const ClbCapacityTable& table);

// Gate estimate for one layer under its quantization scheme, following the
// closed-form operation accounting (uniform: one multiplier per weight
// multiply; pot: none; apot(n): n adders at the accumulator width; additions
// as adders at their charged widths; element-wise products stay real
// multipliers under every scheme). pipeline_depth D adds D output registers
// per result bit of every multiplier and adder stage.
Expected<GateCount> layer_gates(const LayerSpec& layer, u64 pipeline_depth);

struct GateReportRow {
    std::string name;
    std::string kind;
    std::string scheme;
    GateCount gates;
    ClbEstimate clbs;
};

struct GateReport {
    ClbEra era = ClbEra::Lut4;
    std::string table_name;
    u64 pipeline_depth = 0;
    std::vector<GateReportRow> per_layer;
    GateCount totals;
    ClbEstimate total_clbs;
};

Expected<GateReport> model_gates(const ModelSpec& model, const ClbCapacityTable& table,
                                 u64 pipeline_depth);

} // namespace nncost
