// C API over the analysis core: opaque handles, thread-local error state,
// status-code mapping. Everything the CLI (or any other binding) needs goes
// through this surface.

#include "nncost.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/gates.hpp"
#include "core/metrics.hpp"
#include "core/model.hpp"
#include "core/oracle.hpp"
#include "core/parse.hpp"
#include "core/render.hpp"
#include "core/sweep.hpp"

using namespace nncost;

struct nncost_model {
    ModelSpec model;
    std::vector<std::string> warnings;
};
struct nncost_report {
    MetricReport report;
};
struct nncost_verification {
    Verification v;
};
struct nncost_sweep_plan {
    SweepPlan plan;
};
struct nncost_dataset {
    SweepDataset data;
};
struct nncost_reduction {
    ReductionReport report;
};
struct nncost_scheme_table {
    SchemeReport report;
};
struct nncost_gate_report {
    GateReport report;
};

namespace {

thread_local std::string t_err_message;
thread_local int t_err_line = 0;
thread_local int t_err_col = 0;

nncost_status status_of(ErrClass cls) {
    switch (cls) {
    case ErrClass::None:
        return NNCOST_OK;
    case ErrClass::Io:
        return NNCOST_ERR_IO;
    case ErrClass::Parse:
        return NNCOST_ERR_PARSE;
    case ErrClass::Validation:
        return NNCOST_ERR_VALIDATION;
    case ErrClass::Guard:
        return NNCOST_ERR_GUARD;
    case ErrClass::Arg:
        return NNCOST_ERR_ARG;
    case ErrClass::Range:
        return NNCOST_ERR_RANGE;
    case ErrClass::Internal:
        return NNCOST_ERR_INTERNAL;
    }
    return NNCOST_ERR_INTERNAL;
}

nncost_status fail(const Error& e) {
    t_err_message = e.message;
    t_err_line = e.line;
    t_err_col = e.col;
    return status_of(e.cls);
}

nncost_status fail(nncost_status s, std::string msg) {
    t_err_message = std::move(msg);
    t_err_line = 0;
    t_err_col = 0;
    return s;
}

nncost_status succeed() {
    t_err_message.clear();
    t_err_line = 0;
    t_err_col = 0;
    return NNCOST_OK;
}

// Runs an API body, translating arithmetic aborts and stray exceptions.
template <typename F>
nncost_status guarded(F&& fn) {
    try {
        return fn();
    } catch (const std::overflow_error& e) {
        return fail(NNCOST_ERR_RANGE, e.what());
    } catch (const std::underflow_error& e) {
        return fail(NNCOST_ERR_RANGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(NNCOST_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(NNCOST_ERR_INTERNAL, e.what());
    }
}

nncost_status alloc_string(const std::string& s, char** out) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p)
        return fail(NNCOST_ERR_INTERNAL, "out of memory");
    std::memcpy(p, s.c_str(), s.size() + 1);
    *out = p;
    return succeed();
}

nncost_status narrow_u128(u128 v, uint64_t* out, const char* what) {
    if (v > (u128)UINT64_MAX)
        return fail(NNCOST_ERR_RANGE,
                    std::string(what) + " " + to_string_u128(v) + " does not fit in 64 bits");
    *out = (uint64_t)v;
    return succeed();
}

Format format_of(nncost_format f) {
    switch (f) {
    case NNCOST_FORMAT_CSV:
        return Format::Csv;
    case NNCOST_FORMAT_JSON:
        return Format::Json;
    default:
        return Format::Text;
    }
}

RenderOpts opts_of(unsigned flags) {
    RenderOpts o;
    o.ansi = flags & NNCOST_RENDER_ANSI;
    o.timestamp = flags & NNCOST_RENDER_TIMESTAMP;
    return o;
}

template <typename Handle, typename Value>
nncost_status wrap(Expected<Value> r, Handle** out) {
    if (!out)
        return fail(NNCOST_ERR_ARG, "null output handle");
    *out = nullptr;
    if (!r.ok())
        return fail(r.error);
    *out = new Handle{std::move(*r)};
    return succeed();
}

} // namespace

extern "C" {

const char* nncost_version(void) {
    return kToolVersion;
}

const char* nncost_status_name(nncost_status status) {
    switch (status) {
    case NNCOST_OK:
        return "ok";
    case NNCOST_ERR_IO:
        return "io";
    case NNCOST_ERR_PARSE:
        return "parse";
    case NNCOST_ERR_VALIDATION:
        return "validation";
    case NNCOST_ERR_GUARD:
        return "guard";
    case NNCOST_ERR_ARG:
        return "argument";
    case NNCOST_ERR_RANGE:
        return "range";
    case NNCOST_ERR_INTERNAL:
        return "internal";
    }
    return "unknown";
}

const char* nncost_last_error(void) {
    return t_err_message.c_str();
}

int nncost_last_error_line(void) {
    return t_err_line;
}

int nncost_last_error_column(void) {
    return t_err_col;
}

void nncost_string_free(char* s) {
    std::free(s);
}

/* ------------------------------------------------------------------ */

static nncost_status model_from(Expected<ParsedModel> parsed, nncost_model** out) {
    if (!out)
        return fail(NNCOST_ERR_ARG, "null output handle");
    *out = nullptr;
    if (!parsed.ok())
        return fail(parsed.error);
    *out = new nncost_model{std::move(parsed->model), std::move(parsed->warnings)};
    return succeed();
}

nncost_status nncost_model_parse_file(const char* path, nncost_model** out) {
    return guarded([&] {
        if (!path)
            return fail(NNCOST_ERR_ARG, "null path");
        return model_from(parse_model_file(path), out);
    });
}

nncost_status nncost_model_parse_text(const char* text, nncost_model** out) {
    return guarded([&] {
        if (!text)
            return fail(NNCOST_ERR_ARG, "null text");
        return model_from(parse_model_text(text), out);
    });
}

nncost_status nncost_model_parse_json(const char* text, nncost_model** out) {
    return guarded([&] {
        if (!text)
            return fail(NNCOST_ERR_ARG, "null text");
        return model_from(parse_model_json(text), out);
    });
}

nncost_status nncost_model_fixture(nncost_model** out) {
    return guarded([&] {
        if (!out)
            return fail(NNCOST_ERR_ARG, "null output handle");
        *out = new nncost_model{fixture_model(), {}};
        return succeed();
    });
}

void nncost_model_free(nncost_model* m) {
    delete m;
}

const char* nncost_model_name(const nncost_model* m) {
    return m ? m->model.name.c_str() : "";
}

size_t nncost_model_layer_count(const nncost_model* m) {
    return m ? m->model.layers.size() : 0;
}

const char* nncost_model_layer_name(const nncost_model* m, size_t layer) {
    if (!m || layer >= m->model.layers.size())
        return "";
    return m->model.layers[layer].name.c_str();
}

const char* nncost_model_layer_kind(const nncost_model* m, size_t layer) {
    if (!m || layer >= m->model.layers.size())
        return "";
    return m->model.layers[layer].kind_name();
}

size_t nncost_model_warning_count(const nncost_model* m) {
    return m ? m->warnings.size() : 0;
}

const char* nncost_model_warning(const nncost_model* m, size_t idx) {
    if (!m || idx >= m->warnings.size())
        return "";
    return m->warnings[idx].c_str();
}

nncost_status nncost_model_serialize(const nncost_model* m, char** out) {
    return guarded([&] {
        if (!m || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(serialize_model(m->model), out);
    });
}

/* ------------------------------------------------------------------ */

nncost_status nncost_analyze(const nncost_model* m, nncost_bop_mode mode, nncost_report** out) {
    return guarded([&] {
        if (!m || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        *out = new nncost_report{
            analyze(m->model, mode == NNCOST_BOP_EXACT ? BopMode::Exact : BopMode::Table)};
        return succeed();
    });
}

void nncost_report_free(nncost_report* r) {
    delete r;
}

size_t nncost_report_layer_count(const nncost_report* r) {
    return r ? r->report.per_layer.size() : 0;
}

nncost_status nncost_report_layer_metric(const nncost_report* r, size_t layer,
                                         nncost_metric metric, uint64_t* out) {
    return guarded([&] {
        if (!r || !out || layer >= r->report.per_layer.size())
            return fail(NNCOST_ERR_ARG, "bad report row");
        const MetricRow& row = r->report.per_layer[layer];
        u128 v = metric == NNCOST_METRIC_RM ? row.rm
                 : metric == NNCOST_METRIC_BOP ? row.bop
                                               : row.nabs;
        return narrow_u128(v, out, "metric value");
    });
}

nncost_status nncost_report_total(const nncost_report* r, nncost_metric metric, uint64_t* out) {
    return guarded([&] {
        if (!r || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        u128 v = metric == NNCOST_METRIC_RM ? r->report.rm_total
                 : metric == NNCOST_METRIC_BOP ? r->report.bop_total
                                               : r->report.nabs_total;
        return narrow_u128(v, out, "metric total");
    });
}

nncost_status nncost_report_render(const nncost_report* r, nncost_format format, unsigned flags,
                                   char** out) {
    return guarded([&] {
        if (!r || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(render_report(r->report, format_of(format), opts_of(flags)), out);
    });
}

/* ------------------------------------------------------------------ */

nncost_status nncost_validate(const nncost_model* m, uint64_t seed, nncost_verification** out) {
    return guarded([&] {
        if (!m)
            return fail(NNCOST_ERR_ARG, "null model");
        return wrap(verify_model(m->model, seed), out);
    });
}

void nncost_verification_free(nncost_verification* v) {
    delete v;
}

size_t nncost_verification_row_count(const nncost_verification* v) {
    return v ? v->v.rows.size() : 0;
}

const char* nncost_verification_layer(const nncost_verification* v, size_t row) {
    if (!v || row >= v->v.rows.size())
        return "";
    return v->v.rows[row].layer.c_str();
}

const char* nncost_verification_metric(const nncost_verification* v, size_t row) {
    if (!v || row >= v->v.rows.size())
        return "";
    return v->v.rows[row].metric;
}

nncost_status nncost_verification_values(const nncost_verification* v, size_t row, char** closed,
                                         char** oracle, char** delta, char** bound) {
    return guarded([&] {
        if (!v || row >= v->v.rows.size())
            return fail(NNCOST_ERR_ARG, "bad verification row");
        const VerifyRow& r = v->v.rows[row];
        char* parts[4] = {nullptr, nullptr, nullptr, nullptr};
        char** outs[4] = {closed, oracle, delta, bound};
        std::string values[4] = {to_string_u128(r.closed), to_string_u128(r.oracle),
                                 to_string_i128(r.delta), to_string_u128(r.bound)};
        for (int i = 0; i < 4; ++i) {
            if (!outs[i])
                continue;
            if (nncost_status s = alloc_string(values[i], &parts[i]); s != NNCOST_OK) {
                for (int k = 0; k < i; ++k)
                    std::free(parts[k]);
                return s;
            }
        }
        for (int i = 0; i < 4; ++i)
            if (outs[i])
                *outs[i] = parts[i];
        return succeed();
    });
}

int nncost_verification_row_ok(const nncost_verification* v, size_t row) {
    if (!v || row >= v->v.rows.size())
        return 0;
    return v->v.rows[row].ok ? 1 : 0;
}

int nncost_verification_ok(const nncost_verification* v) {
    return v && v->v.all_ok() ? 1 : 0;
}

nncost_status nncost_verification_render(const nncost_verification* v, nncost_format format,
                                         unsigned flags, char** out) {
    return guarded([&] {
        if (!v || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(render_verification(v->v, format_of(format), opts_of(flags)), out);
    });
}

/* ------------------------------------------------------------------ */

nncost_status nncost_sweep_plan_parse_file(const char* path, nncost_sweep_plan** out) {
    return guarded([&] {
        if (!path)
            return fail(NNCOST_ERR_ARG, "null path");
        return wrap(parse_plan_file(path), out);
    });
}

nncost_status nncost_sweep_plan_parse_text(const char* text, nncost_sweep_plan** out) {
    return guarded([&] {
        if (!text)
            return fail(NNCOST_ERR_ARG, "null text");
        return wrap(parse_plan_text(text), out);
    });
}

void nncost_sweep_plan_free(nncost_sweep_plan* p) {
    delete p;
}

nncost_status nncost_sweep_run(const nncost_sweep_plan* p, nncost_dataset** out) {
    return guarded([&] {
        if (!p)
            return fail(NNCOST_ERR_ARG, "null plan");
        return wrap(run_sweep(p->plan), out);
    });
}

void nncost_dataset_free(nncost_dataset* d) {
    delete d;
}

size_t nncost_dataset_axis_count(const nncost_dataset* d) {
    return d ? d->data.axis_names.size() : 0;
}

const char* nncost_dataset_axis_name(const nncost_dataset* d, size_t axis) {
    if (!d || axis >= d->data.axis_names.size())
        return "";
    return d->data.axis_names[axis].c_str();
}

size_t nncost_dataset_point_count(const nncost_dataset* d) {
    return d ? d->data.points.size() : 0;
}

nncost_status nncost_dataset_coordinate(const nncost_dataset* d, size_t point, size_t axis,
                                        uint64_t* out) {
    return guarded([&] {
        if (!d || !out || point >= d->data.points.size() ||
            axis >= d->data.points[point].coords.size())
            return fail(NNCOST_ERR_ARG, "bad dataset point");
        *out = d->data.points[point].coords[axis];
        return succeed();
    });
}

nncost_status nncost_dataset_value(const nncost_dataset* d, size_t point, uint64_t* value,
                                   int* available) {
    return guarded([&] {
        if (!d || !available || point >= d->data.points.size())
            return fail(NNCOST_ERR_ARG, "bad dataset point");
        const SweepPoint& p = d->data.points[point];
        *available = p.value.has_value() ? 1 : 0;
        if (!p.value || !value)
            return succeed();
        return narrow_u128(*p.value, value, "metric value");
    });
}

nncost_status nncost_dataset_render(const nncost_dataset* d, nncost_format format, unsigned flags,
                                    char** out) {
    return guarded([&] {
        if (!d || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(render_dataset(d->data, format_of(format), opts_of(flags)), out);
    });
}

/* ------------------------------------------------------------------ */

nncost_status nncost_bitwidth_reduction(const nncost_model* m, const char* axis,
                                        uint32_t from_bits, uint32_t to_bits, nncost_bop_mode mode,
                                        nncost_reduction** out) {
    return guarded([&] {
        if (!m || !axis)
            return fail(NNCOST_ERR_ARG, "null argument");
        return wrap(bitwidth_reduction(m->model, axis, from_bits, to_bits,
                                       mode == NNCOST_BOP_EXACT ? BopMode::Exact : BopMode::Table),
                    out);
    });
}

void nncost_reduction_free(nncost_reduction* r) {
    delete r;
}

size_t nncost_reduction_row_count(const nncost_reduction* r) {
    return r ? r->report.rows.size() : 0;
}

const char* nncost_reduction_layer(const nncost_reduction* r, size_t row) {
    if (!r || row >= r->report.rows.size())
        return "";
    return r->report.rows[row].name.c_str();
}

nncost_status nncost_reduction_values(const nncost_reduction* r, size_t row, uint64_t* bop_from,
                                      uint64_t* bop_to, double* reduction_percent) {
    return guarded([&] {
        if (!r || row >= r->report.rows.size())
            return fail(NNCOST_ERR_ARG, "bad reduction row");
        const ReductionRow& rr = r->report.rows[row];
        if (bop_from)
            if (nncost_status s = narrow_u128(rr.bop_from, bop_from, "bop"); s != NNCOST_OK)
                return s;
        if (bop_to)
            if (nncost_status s = narrow_u128(rr.bop_to, bop_to, "bop"); s != NNCOST_OK)
                return s;
        if (reduction_percent)
            *reduction_percent = (double)rr.pct_num() / (double)rr.pct_den();
        return succeed();
    });
}

nncost_status nncost_reduction_render(const nncost_reduction* r, nncost_format format,
                                      unsigned flags, char** out) {
    return guarded([&] {
        if (!r || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(render_reduction(r->report, format_of(format), opts_of(flags)), out);
    });
}

/* ------------------------------------------------------------------ */

nncost_status nncost_scheme_comparison(const nncost_model* m, nncost_scheme_table** out) {
    return guarded([&] {
        if (!m)
            return fail(NNCOST_ERR_ARG, "null model");
        return wrap(scheme_comparison(m->model), out);
    });
}

void nncost_scheme_table_free(nncost_scheme_table* t) {
    delete t;
}

size_t nncost_scheme_table_row_count(const nncost_scheme_table* t) {
    return t ? t->report.rows.size() : 0;
}

const char* nncost_scheme_table_layer(const nncost_scheme_table* t, size_t row) {
    if (!t || row >= t->report.rows.size())
        return "";
    return t->report.rows[row].name.c_str();
}

nncost_status nncost_scheme_table_values(const nncost_scheme_table* t, size_t row, uint32_t* x_w,
                                         char** scheme, uint64_t* nabs) {
    return guarded([&] {
        if (!t || row >= t->report.rows.size())
            return fail(NNCOST_ERR_ARG, "bad scheme row");
        const SchemeRow& r = t->report.rows[row];
        if (x_w)
            *x_w = (uint32_t)r.x_w;
        if (nabs)
            if (nncost_status s = narrow_u128(r.nabs, nabs, "nabs"); s != NNCOST_OK)
                return s;
        if (scheme)
            return alloc_string(r.scheme, scheme);
        return succeed();
    });
}

nncost_status nncost_scheme_table_render(const nncost_scheme_table* t, nncost_format format,
                                         unsigned flags, char** out) {
    return guarded([&] {
        if (!t || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(render_schemes(t->report, format_of(format), opts_of(flags)), out);
    });
}

/* ------------------------------------------------------------------ */

nncost_status nncost_gates(const nncost_model* m, nncost_era era, uint32_t pipeline_depth,
                           const char* table_file, nncost_gate_report** out) {
    return guarded([&] {
        if (!m)
            return fail(NNCOST_ERR_ARG, "null model");
        ClbCapacityTable table;
        if (table_file) {
            Expected<ClbCapacityTable> parsed = parse_clb_table_file(table_file);
            if (!parsed.ok())
                return fail(parsed.error);
            table = *parsed; // the file's own era governs
        } else {
            table = builtin_clb_table(era == NNCOST_ERA_LUT6 ? ClbEra::Lut6 : ClbEra::Lut4);
        }
        return wrap(model_gates(m->model, table, pipeline_depth), out);
    });
}

void nncost_gate_report_free(nncost_gate_report* g) {
    delete g;
}

size_t nncost_gate_report_layer_count(const nncost_gate_report* g) {
    return g ? g->report.per_layer.size() : 0;
}

nncost_status nncost_gate_report_value(const nncost_gate_report* g, size_t layer,
                                       nncost_gate_field field, uint64_t* out) {
    return guarded([&] {
        if (!g || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        const GateCount* gc;
        const ClbEstimate* cl;
        if (layer == (size_t)-1) {
            gc = &g->report.totals;
            cl = &g->report.total_clbs;
        } else if (layer < g->report.per_layer.size()) {
            gc = &g->report.per_layer[layer].gates;
            cl = &g->report.per_layer[layer].clbs;
        } else {
            return fail(NNCOST_ERR_ARG, "bad gate report row");
        }
        u128 v;
        switch (field) {
        case NNCOST_GATES_AND:
            v = gc->and_gates;
            break;
        case NNCOST_GATES_XOR:
            v = gc->xor_gates;
            break;
        case NNCOST_GATES_OR:
            v = gc->or_gates;
            break;
        case NNCOST_GATES_HA:
            v = gc->half_adders;
            break;
        case NNCOST_GATES_FA:
            v = gc->full_adders;
            break;
        case NNCOST_GATES_FF:
            v = gc->flip_flops;
            break;
        case NNCOST_GATES_TOTAL:
            v = gc->total_gates();
            break;
        case NNCOST_GATES_CLB_MIN:
            v = cl->min_clbs;
            break;
        case NNCOST_GATES_CLB_MAX:
            v = cl->max_clbs;
            break;
        case NNCOST_GATES_CLB_TYPICAL:
            if (!cl->typical_clbs)
                return fail(NNCOST_ERR_ARG,
                            "the capacity table has no typical gates-per-clb figure");
            v = *cl->typical_clbs;
            break;
        default:
            return fail(NNCOST_ERR_ARG, "unknown gate field");
        }
        return narrow_u128(v, out, "gate count");
    });
}

nncost_status nncost_gate_report_render(const nncost_gate_report* g, nncost_format format,
                                        unsigned flags, char** out) {
    return guarded([&] {
        if (!g || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        return alloc_string(render_gates(g->report, format_of(format), opts_of(flags)), out);
    });
}

nncost_status nncost_multiplier_gates(uint32_t m, uint32_t n, uint64_t* and_array,
                                      uint64_t* half_adders, uint64_t* full_adders,
                                      uint64_t* total_gates) {
    return guarded([&] {
        Expected<GateCount> g = multiplier_gates(m, n);
        if (!g.ok())
            return fail(g.error);
        if (and_array)
            *and_array = (uint64_t)g->and_gates;
        if (half_adders)
            *half_adders = (uint64_t)g->half_adders;
        if (full_adders)
            *full_adders = (uint64_t)g->full_adders;
        if (total_gates)
            return narrow_u128(g->total_gates(), total_gates, "gate count");
        return succeed();
    });
}

nncost_status nncost_adder_gates(uint32_t width, uint64_t* half_adders, uint64_t* full_adders,
                                 uint64_t* total_gates) {
    return guarded([&] {
        Expected<GateCount> g = adder_gates(width);
        if (!g.ok())
            return fail(g.error);
        if (half_adders)
            *half_adders = (uint64_t)g->half_adders;
        if (full_adders)
            *full_adders = (uint64_t)g->full_adders;
        if (total_gates)
            return narrow_u128(g->total_gates(), total_gates, "gate count");
        return succeed();
    });
}

void nncost_reference_multiplier_27x18(uint64_t* and_array, uint64_t* half_adders,
                                       uint64_t* full_adders, uint64_t* flip_flops) {
    const GateCount& ref = reference_multiplier_27x18();
    if (and_array)
        *and_array = (uint64_t)ref.and_gates;
    if (half_adders)
        *half_adders = (uint64_t)ref.half_adders;
    if (full_adders)
        *full_adders = (uint64_t)ref.full_adders;
    if (flip_flops)
        *flip_flops = (uint64_t)ref.flip_flops;
}

/* ------------------------------------------------------------------ */

nncost_status nncost_acc_width(uint64_t n, uint32_t b_w, uint32_t b_x, uint64_t* out) {
    return guarded([&] {
        if (!out)
            return fail(NNCOST_ERR_ARG, "null output");
        if (n < 1 || b_w < 1 || b_x < 1)
            return fail(NNCOST_ERR_ARG, "accumulator width needs n, b_w, b_x >= 1");
        return narrow_u128(acc_width(n, b_w, b_x), out, "accumulator width");
    });
}

nncost_status nncost_mult_bop(uint64_t n, uint32_t b_w, uint32_t b_x, uint64_t* out) {
    return guarded([&] {
        if (!out)
            return fail(NNCOST_ERR_ARG, "null output");
        if (n < 1 || b_w < 1 || b_x < 1)
            return fail(NNCOST_ERR_ARG, "dot-product cost needs n, b_w, b_x >= 1");
        return narrow_u128(mult_bop(n, b_w, b_x), out, "bop value");
    });
}

nncost_status nncost_x_w(const char* scheme, uint32_t b_w, uint32_t* out) {
    return guarded([&] {
        if (!scheme || !out)
            return fail(NNCOST_ERR_ARG, "null argument");
        Expected<QuantScheme> q = quant_from_string(scheme);
        if (!q.ok())
            return fail(q.error);
        Expected<u64> x = x_w(*q, b_w);
        if (!x.ok())
            return fail(x.error);
        *out = (uint32_t)*x;
        return succeed();
    });
}

} /* extern "C" */
