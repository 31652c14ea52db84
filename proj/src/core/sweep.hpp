// Parameter sweeps and the two comparison reports. A sweep plan names one
// base layer and 1-3 integer axes; the engine evaluates one metric on every
// grid point and emits unavailable points (e.g. a conv kernel that does not
// fit) as explicit nulls, never as zeros. Plan grammar:
//
//   sweep "<name>" {
//     metric = rm | bop | nabs;
//     bop_mode = table | exact;          # optional, table by default
//     layer "<name>" <kind> { ... }      # base layer, model-file syntax
//     axis <param> { start = 100; stop = 1500; step = 100; }
//   }
//
// Axis parameters are the integer hyper-parameters of the base kind plus the
// bitwidths b_w, b_i, b_a, b_b and the pseudo-parameter x_w, which selects
// the quantization scheme realizing that adder count (0 = pot, b_w-1 =
// uniform, otherwise apot). Bitwidth axes apply before x_w so the mapping
// uses the swept b_w. Endpoints are inclusive; a final partial step is
// dropped. Points are emitted in row-major axis order.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/metrics.hpp"
#include "core/model.hpp"

namespace nncost {

enum class SweepMetric { Rm, Bop, Nabs };

const char* sweep_metric_name(SweepMetric m);

struct SweepAxis {
    std::string param;
    u64 start = 0;
    u64 stop = 0;
    u64 step = 1;

    u64 count() const { return (stop - start) / step + 1; }
};

struct SweepPlan {
    std::string name;
    LayerSpec base;
    std::vector<SweepAxis> axes;
    SweepMetric metric = SweepMetric::Rm;
    BopMode mode = BopMode::Table;
};

// Grids above this are rejected before evaluation.
constexpr u64 kMaxSweepPoints = 1000000;

Expected<SweepPlan> parse_plan_text(const std::string& text);
Expected<SweepPlan> parse_plan_file(const std::string& path);

struct SweepPoint {
    std::vector<u64> coords;    // one value per axis, in plan order
    std::optional<u128> value;  // empty = metric unavailable at this point
};

struct SweepDataset {
    std::string plan_name;
    std::string layer_kind;
    SweepMetric metric = SweepMetric::Rm;
    BopMode mode = BopMode::Table;
    std::vector<std::string> axis_names;
    std::vector<SweepPoint> points;
};

Expected<SweepDataset> run_sweep(const SweepPlan& plan);

// BOP before/after lowering one bitwidth axis ("b_w", "b_i" or "b_a") from
// `from` to `to` bits on every layer, all else fixed.
struct ReductionRow {
    std::string name;
    std::string kind;
    u128 bop_from = 0;
    u128 bop_to = 0;

    // reduction in percent, exact rational p/q
    u128 pct_num() const { return mul_u128(sub_u128(bop_from, bop_to), 100); }
    u128 pct_den() const { return bop_from; }
};

struct ReductionReport {
    std::string axis;
    u64 from_bits = 0;
    u64 to_bits = 0;
    BopMode mode = BopMode::Table;
    std::vector<ReductionRow> rows;
};

Expected<ReductionReport> bitwidth_reduction(const ModelSpec& model, const std::string& axis,
                                             u64 from_bits, u64 to_bits, BopMode mode);

// NABS per layer for every scheme a layer's b_w admits, keyed by the adder
// count x_w (0 = pot, 1..b_w-2 = apot, b_w-1 = uniform).
struct SchemeRow {
    std::string name;
    std::string kind;
    u64 x_w = 0;
    std::string scheme;
    u128 nabs = 0;
};

struct SchemeReport {
    std::vector<SchemeRow> rows;
};

Expected<SchemeReport> scheme_comparison(const ModelSpec& model);

// The six-layer comparison fixture used across the shipped reports: dense
// 1000x2000, conv1d 100/1/100/300, rnn/lstm/gru 100/100/100, esn reservoir
// 100 at half connectivity, everything 8-bit uniform.
ModelSpec fixture_model();

} // namespace nncost
