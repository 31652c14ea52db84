#include "core/render.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace nncost {

namespace {

using nlohmann::json;

std::string thousands(u128 v) {
    std::string digits = to_string_u128(v);
    std::string out;
    int run = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (run && run % 3 == 0)
            out.push_back(',');
        out.push_back(*it);
        ++run;
    }
    return {out.rbegin(), out.rend()};
}

std::string sci(u128 v) {
    std::string digits = to_string_u128(v);
    size_t exp = digits.size() - 1;
    // mantissa: first four significant digits, rounded half up on the fifth
    u64 mant = 0;
    for (size_t i = 0; i < 4; ++i)
        mant = mant * 10 + (i < digits.size() ? digits[i] - '0' : 0);
    if (digits.size() > 4 && digits[4] >= '5')
        ++mant;
    if (mant == 10000) {
        mant = 1000;
        ++exp;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu.%03llue+%02zu", (unsigned long long)(mant / 1000),
                  (unsigned long long)(mant % 1000), exp);
    return buf;
}

const u128 kSciThreshold = (u128)1000000000; // 1e9

std::string fmt_i128(i128 v) {
    return to_string_i128(v);
}

// ---------------------------------------------------------------- text

struct TextTable {
    // alignment per column: 'l' or 'r'
    explicit TextTable(std::string align) : align_(std::move(align)) {}

    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string str(bool header_bold) const {
        std::vector<size_t> width;
        for (const auto& r : rows_)
            for (size_t c = 0; c < r.size(); ++c) {
                if (width.size() <= c)
                    width.resize(c + 1, 0);
                width[c] = std::max(width[c], r[c].size());
            }
        std::string out;
        for (size_t ri = 0; ri < rows_.size(); ++ri) {
            const auto& r = rows_[ri];
            std::string line;
            for (size_t c = 0; c < r.size(); ++c) {
                std::string cell = r[c];
                bool right = c < align_.size() && align_[c] == 'r';
                std::string pad(width[c] - cell.size(), ' ');
                cell = right ? pad + cell : cell + pad;
                if (c)
                    line += "  ";
                line += cell;
            }
            while (!line.empty() && line.back() == ' ')
                line.pop_back();
            if (ri == 0 && header_bold)
                line = "\x1b[1m" + line + "\x1b[0m";
            out += line;
            out.push_back('\n');
        }
        return out;
    }

    std::string align_;
    std::vector<std::vector<std::string>> rows_;
};

std::string colorize(const std::string& s, const char* code, bool ansi) {
    if (!ansi)
        return s;
    return std::string("\x1b[") + code + "m" + s + "\x1b[0m";
}

// ---------------------------------------------------------------- csv

void csv_row(std::string& out, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i)
            out.push_back(',');
        out += cells[i];
    }
    out.push_back('\n');
}

// ---------------------------------------------------------------- json

json json_value(u128 v) {
    if (v <= (u128)UINT64_MAX)
        return (u64)v;
    return to_string_u128(v); // too wide for a JSON number, keep it exact
}

json json_value_i(i128 v) {
    if (v >= INT64_MIN && v <= (i128)INT64_MAX)
        return (std::int64_t)v;
    return to_string_i128(v);
}

std::string iso8601_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json json_envelope(const char* report_kind, const RenderOpts& opts) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["report"] = report_kind;
    if (opts.timestamp)
        j["generated_at"] = iso8601_now();
    return j;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

const char* bop_mode_name(BopMode m) {
    return m == BopMode::Table ? "table" : "exact";
}

} // namespace

std::string fmt_human_count(u128 v) {
    return v > kSciThreshold ? sci(v) : thousands(v);
}

std::string fmt_pct(u128 num, u128 den) {
    u128 tenths = round_ratio_half_up(mul_u128(num, 10), den);
    return to_string_u128(tenths / 10) + "." + to_string_u128(tenths % 10);
}

std::string render_report(const MetricReport& r, Format f, const RenderOpts& opts) {
    switch (f) {
    case Format::Text: {
        std::string out = colorize("layer metrics", "1", opts.ansi) +
                          " (bop mode: " + bop_mode_name(r.mode) + ")\n\n";
        TextTable t("llrrr");
        t.row({"layer", "kind", "rm", "bop", "nabs"});
        for (const MetricRow& row : r.per_layer)
            t.row({row.name, row.kind, fmt_human_count(row.rm), fmt_human_count(row.bop),
                   fmt_human_count(row.nabs)});
        t.row({"total", "", fmt_human_count(r.rm_total), fmt_human_count(r.bop_total),
               fmt_human_count(r.nabs_total)});
        return out + t.str(opts.ansi);
    }
    case Format::Csv: {
        std::string out;
        csv_row(out, {"layer", "kind", "rm", "bop", "nabs"});
        for (const MetricRow& row : r.per_layer)
            csv_row(out, {row.name, row.kind, to_string_u128(row.rm), to_string_u128(row.bop),
                          to_string_u128(row.nabs)});
        csv_row(out, {"total", "", to_string_u128(r.rm_total), to_string_u128(r.bop_total),
                      to_string_u128(r.nabs_total)});
        return out;
    }
    case Format::Json: {
        json j = json_envelope("analyze", opts);
        j["bop_mode"] = bop_mode_name(r.mode);
        j["layers"] = json::array();
        for (const MetricRow& row : r.per_layer)
            j["layers"].push_back({{"name", row.name},
                                   {"kind", row.kind},
                                   {"rm", json_value(row.rm)},
                                   {"bop", json_value(row.bop)},
                                   {"nabs", json_value(row.nabs)}});
        j["totals"] = {{"rm", json_value(r.rm_total)},
                       {"bop", json_value(r.bop_total)},
                       {"nabs", json_value(r.nabs_total)}};
        return dump(j);
    }
    }
    return {};
}

std::string render_verification(const Verification& v, Format f, const RenderOpts& opts) {
    size_t failures = 0;
    for (const VerifyRow& row : v.rows)
        if (!row.ok)
            ++failures;
    switch (f) {
    case Format::Text: {
        std::string out = colorize("closed form vs oracle", "1", opts.ansi) + " (seed " +
                          std::to_string(v.seed) + ")\n\n";
        TextTable t("lllrrrrl");
        t.row({"layer", "kind", "metric", "closed", "oracle", "delta", "bound", "status"});
        for (const VerifyRow& row : v.rows)
            t.row({row.layer, row.kind, row.metric, fmt_human_count(row.closed),
                   fmt_human_count(row.oracle), fmt_i128(row.delta), fmt_human_count(row.bound),
                   row.ok ? colorize("ok", "32", opts.ansi) : colorize("MISMATCH", "31", opts.ansi)});
        out += t.str(opts.ansi);
        out += "\n";
        out += failures == 0 ? "all rows match\n"
                             : std::to_string(failures) + " row(s) outside documented bounds\n";
        return out;
    }
    case Format::Csv: {
        std::string out;
        csv_row(out, {"layer", "kind", "metric", "closed", "oracle", "delta", "bound", "status"});
        for (const VerifyRow& row : v.rows)
            csv_row(out, {row.layer, row.kind, row.metric, to_string_u128(row.closed),
                          to_string_u128(row.oracle), fmt_i128(row.delta),
                          to_string_u128(row.bound), row.ok ? "ok" : "mismatch"});
        return out;
    }
    case Format::Json: {
        json j = json_envelope("validate", opts);
        j["seed"] = v.seed;
        j["rows"] = json::array();
        for (const VerifyRow& row : v.rows)
            j["rows"].push_back({{"layer", row.layer},
                                 {"kind", row.kind},
                                 {"metric", row.metric},
                                 {"closed", json_value(row.closed)},
                                 {"oracle", json_value(row.oracle)},
                                 {"delta", json_value_i(row.delta)},
                                 {"bound", json_value(row.bound)},
                                 {"ok", row.ok}});
        j["ok"] = failures == 0;
        return dump(j);
    }
    }
    return {};
}

std::string render_dataset(const SweepDataset& d, Format f, const RenderOpts& opts) {
    switch (f) {
    case Format::Text: {
        std::string out = colorize("sweep '" + d.plan_name + "'", "1", opts.ansi) + " (" +
                          d.layer_kind + ", metric " + sweep_metric_name(d.metric);
        if (d.metric == SweepMetric::Bop)
            out += std::string(", bop mode ") + bop_mode_name(d.mode);
        out += ")\n\n";
        std::string align(d.axis_names.size(), 'r');
        TextTable t(align + "r");
        std::vector<std::string> header = d.axis_names;
        header.push_back(sweep_metric_name(d.metric));
        t.row(header);
        for (const SweepPoint& p : d.points) {
            std::vector<std::string> cells;
            for (u64 c : p.coords)
                cells.push_back(thousands(c));
            cells.push_back(p.value ? fmt_human_count(*p.value) : "n/a");
            t.row(std::move(cells));
        }
        return out + t.str(opts.ansi);
    }
    case Format::Csv: {
        std::string out;
        std::vector<std::string> header = d.axis_names;
        header.push_back("metric");
        header.push_back("value");
        csv_row(out, header);
        for (const SweepPoint& p : d.points) {
            std::vector<std::string> cells;
            for (u64 c : p.coords)
                cells.push_back(std::to_string(c));
            cells.push_back(sweep_metric_name(d.metric));
            cells.push_back(p.value ? to_string_u128(*p.value) : "NA");
            csv_row(out, cells);
        }
        return out;
    }
    case Format::Json: {
        json j = json_envelope("sweep", opts);
        j["plan"] = {{"name", d.plan_name},
                     {"layer_kind", d.layer_kind},
                     {"metric", sweep_metric_name(d.metric)},
                     {"bop_mode", bop_mode_name(d.mode)},
                     {"axes", d.axis_names}};
        j["points"] = json::array();
        for (const SweepPoint& p : d.points) {
            json coords = json::array();
            for (u64 c : p.coords)
                coords.push_back(c);
            json value = p.value ? json_value(*p.value) : json(nullptr);
            j["points"].push_back({{"coords", coords}, {"value", value}});
        }
        return dump(j);
    }
    }
    return {};
}

std::string render_reduction(const ReductionReport& r, Format f, const RenderOpts& opts) {
    switch (f) {
    case Format::Text: {
        std::string out = colorize("bop reduction", "1", opts.ansi) + " (" + r.axis + " " +
                          std::to_string(r.from_bits) + " -> " + std::to_string(r.to_bits) +
                          ", bop mode " + bop_mode_name(r.mode) + ")\n\n";
        TextTable t("llrrr");
        t.row({"layer", "kind", "bop before", "bop after", "reduction"});
        for (const ReductionRow& row : r.rows)
            t.row({row.name, row.kind, fmt_human_count(row.bop_from), fmt_human_count(row.bop_to),
                   fmt_pct(row.pct_num(), row.pct_den()) + "%"});
        return out + t.str(opts.ansi);
    }
    case Format::Csv: {
        std::string out;
        csv_row(out, {"layer", "kind", "axis", "from_bits", "to_bits", "bop_from", "bop_to",
                      "reduction_pct"});
        for (const ReductionRow& row : r.rows)
            csv_row(out, {row.name, row.kind, r.axis, std::to_string(r.from_bits),
                          std::to_string(r.to_bits), to_string_u128(row.bop_from),
                          to_string_u128(row.bop_to), fmt_pct(row.pct_num(), row.pct_den())});
        return out;
    }
    case Format::Json: {
        json j = json_envelope("compare-bitwidth", opts);
        j["axis"] = r.axis;
        j["from_bits"] = r.from_bits;
        j["to_bits"] = r.to_bits;
        j["bop_mode"] = bop_mode_name(r.mode);
        j["layers"] = json::array();
        for (const ReductionRow& row : r.rows)
            j["layers"].push_back({{"name", row.name},
                                   {"kind", row.kind},
                                   {"bop_from", json_value(row.bop_from)},
                                   {"bop_to", json_value(row.bop_to)},
                                   {"reduction_pct", fmt_pct(row.pct_num(), row.pct_den())}});
        return dump(j);
    }
    }
    return {};
}

std::string render_schemes(const SchemeReport& s, Format f, const RenderOpts& opts) {
    switch (f) {
    case Format::Text: {
        std::string out = colorize("nabs by quantization scheme", "1", opts.ansi) + "\n\n";
        TextTable t("llrlr");
        t.row({"layer", "kind", "x_w", "scheme", "nabs"});
        for (const SchemeRow& row : s.rows)
            t.row({row.name, row.kind, std::to_string(row.x_w), row.scheme,
                   fmt_human_count(row.nabs)});
        return out + t.str(opts.ansi);
    }
    case Format::Csv: {
        std::string out;
        csv_row(out, {"layer", "kind", "x_w", "scheme", "nabs"});
        for (const SchemeRow& row : s.rows)
            csv_row(out, {row.name, row.kind, std::to_string(row.x_w), row.scheme,
                          to_string_u128(row.nabs)});
        return out;
    }
    case Format::Json: {
        json j = json_envelope("compare-schemes", opts);
        j["rows"] = json::array();
        for (const SchemeRow& row : s.rows)
            j["rows"].push_back({{"layer", row.name},
                                 {"kind", row.kind},
                                 {"x_w", row.x_w},
                                 {"scheme", row.scheme},
                                 {"nabs", json_value(row.nabs)}});
        return dump(j);
    }
    }
    return {};
}

namespace {

const char* era_name(ClbEra era) {
    return era == ClbEra::Lut4 ? "lut4" : "lut6";
}

std::string clb_cell(const std::optional<u128>& v) {
    return v ? to_string_u128(*v) : "";
}

} // namespace

std::string render_gates(const GateReport& g, Format f, const RenderOpts& opts) {
    switch (f) {
    case Format::Text: {
        std::string out = colorize("logic-gate estimate", "1", opts.ansi);
        out += std::string(" (") + era_name(g.era) + " table '" + g.table_name + "'";
        if (g.pipeline_depth)
            out += ", pipeline depth " + std::to_string(g.pipeline_depth);
        out += ")\n\n";
        TextTable t("lllrrrrrr");
        t.row({"layer", "kind", "scheme", "half adders", "full adders", "flip-flops",
               "total gates", "clb min", "clb max"});
        auto row_of = [&](const std::string& name, const std::string& kind,
                          const std::string& scheme, const GateCount& gc, const ClbEstimate& cl) {
            t.row({name, kind, scheme, fmt_human_count(gc.half_adders),
                   fmt_human_count(gc.full_adders), fmt_human_count(gc.flip_flops),
                   fmt_human_count(gc.total_gates()), fmt_human_count(cl.min_clbs),
                   fmt_human_count(cl.max_clbs)});
        };
        for (const GateReportRow& row : g.per_layer)
            row_of(row.name, row.kind, row.scheme, row.gates, row.clbs);
        row_of("total", "", "", g.totals, g.total_clbs);
        out += t.str(opts.ansi);
        if (g.total_clbs.typical_clbs)
            out += "\ntypical total: " + fmt_human_count(*g.total_clbs.typical_clbs) +
                   " clbs (estimate)\n";
        return out;
    }
    case Format::Csv: {
        std::string out;
        csv_row(out, {"layer", "kind", "scheme", "and", "xor", "or", "half_adders", "full_adders",
                      "flip_flops", "total_gates", "clb_min", "clb_max", "clb_typical"});
        auto row_of = [&](const std::string& name, const std::string& kind,
                          const std::string& scheme, const GateCount& gc, const ClbEstimate& cl) {
            csv_row(out, {name, kind, scheme, to_string_u128(gc.and_gates),
                          to_string_u128(gc.xor_gates), to_string_u128(gc.or_gates),
                          to_string_u128(gc.half_adders), to_string_u128(gc.full_adders),
                          to_string_u128(gc.flip_flops), to_string_u128(gc.total_gates()),
                          to_string_u128(cl.min_clbs), to_string_u128(cl.max_clbs),
                          clb_cell(cl.typical_clbs)});
        };
        for (const GateReportRow& row : g.per_layer)
            row_of(row.name, row.kind, row.scheme, row.gates, row.clbs);
        row_of("total", "", "", g.totals, g.total_clbs);
        return out;
    }
    case Format::Json: {
        json j = json_envelope("gates", opts);
        j["era"] = era_name(g.era);
        j["table"] = g.table_name;
        j["pipeline_depth"] = g.pipeline_depth;
        auto gates_json = [](const GateCount& gc) {
            return json{{"and", json_value(gc.and_gates)},
                        {"xor", json_value(gc.xor_gates)},
                        {"or", json_value(gc.or_gates)},
                        {"half_adders", json_value(gc.half_adders)},
                        {"full_adders", json_value(gc.full_adders)},
                        {"flip_flops", json_value(gc.flip_flops)},
                        {"total", json_value(gc.total_gates())}};
        };
        auto clbs_json = [](const ClbEstimate& cl) {
            json c = {{"min", json_value(cl.min_clbs)}, {"max", json_value(cl.max_clbs)}};
            if (cl.typical_clbs)
                c["typical"] = json_value(*cl.typical_clbs);
            return c;
        };
        j["layers"] = json::array();
        for (const GateReportRow& row : g.per_layer)
            j["layers"].push_back({{"name", row.name},
                                   {"kind", row.kind},
                                   {"scheme", row.scheme},
                                   {"gates", gates_json(row.gates)},
                                   {"clbs", clbs_json(row.clbs)}});
        j["totals"] = {{"gates", gates_json(g.totals)}, {"clbs", clbs_json(g.total_clbs)}};
        return dump(j);
    }
    }
    return {};
}

} // namespace nncost
