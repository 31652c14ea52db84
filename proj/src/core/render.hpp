// Text, CSV and JSON renderers for every report type. Output is a pure
// function of the report and options: text and CSV never carry timestamps,
// JSON carries one only when asked. Text uses thousands separators and
// switches to scientific notation above 1e9; CSV and JSON always hold exact
// integers (JSON falls back to decimal strings past 64 bits).

#pragma once

#include <string>

#include "core/gates.hpp"
#include "core/metrics.hpp"
#include "core/oracle.hpp"
#include "core/sweep.hpp"

namespace nncost {

inline constexpr const char* kToolName = "nncost";
inline constexpr const char* kToolVersion = "1.0.0";

enum class Format { Text, Csv, Json };

struct RenderOpts {
    bool ansi = false;      // styled text (headers, verdict colors)
    bool timestamp = false; // add generated_at to JSON metadata
};

std::string render_report(const MetricReport& r, Format f, const RenderOpts& opts = {});
std::string render_verification(const Verification& v, Format f, const RenderOpts& opts = {});
std::string render_dataset(const SweepDataset& d, Format f, const RenderOpts& opts = {});
std::string render_reduction(const ReductionReport& r, Format f, const RenderOpts& opts = {});
std::string render_schemes(const SchemeReport& s, Format f, const RenderOpts& opts = {});
std::string render_gates(const GateReport& g, Format f, const RenderOpts& opts = {});

// "1,234,567" up to 1e9, "2.250e+09" above.
std::string fmt_human_count(u128 v);

// Percentage num/den rounded half up to one decimal, e.g. "40.0".
std::string fmt_pct(u128 num, u128 den);

} // namespace nncost
