/*
 * nncost - computational complexity analysis for neural network layers.
 *
 * C API over the analysis core. All objects are opaque handles created by
 * nncost_* constructors and released with the matching *_free function.
 * Functions return NNCOST_OK on success; on failure the thread-local error
 * state (nncost_last_error*) carries a message and, for parse failures, a
 * source position.
 *
 * Strings returned through char** out-parameters are heap-allocated and must
 * be released with nncost_string_free.
 */

#ifndef NNCOST_H
#define NNCOST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NNCOST_API __declspec(dllexport)
#else
#define NNCOST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nncost_status {
    NNCOST_OK = 0,
    NNCOST_ERR_IO = 1,         /* file missing or unreadable */
    NNCOST_ERR_PARSE = 2,      /* syntax, unknown kind/key, missing field */
    NNCOST_ERR_VALIDATION = 3, /* value violates a model invariant */
    NNCOST_ERR_GUARD = 4,      /* oracle size guard exceeded */
    NNCOST_ERR_ARG = 5,        /* bad argument to an API call */
    NNCOST_ERR_RANGE = 6,      /* value does not fit in the requested type */
    NNCOST_ERR_INTERNAL = 7
} nncost_status;

typedef enum nncost_metric {
    NNCOST_METRIC_RM = 0,
    NNCOST_METRIC_BOP = 1,
    NNCOST_METRIC_NABS = 2
} nncost_metric;

typedef enum nncost_bop_mode {
    NNCOST_BOP_TABLE = 0, /* per-layer table form (default) */
    NNCOST_BOP_EXACT = 1  /* dense: multiply/accumulate + bias split form */
} nncost_bop_mode;

typedef enum nncost_format {
    NNCOST_FORMAT_TEXT = 0,
    NNCOST_FORMAT_CSV = 1,
    NNCOST_FORMAT_JSON = 2
} nncost_format;

/* Render flag bits. */
#define NNCOST_RENDER_ANSI 0x1u      /* ANSI styling in text output */
#define NNCOST_RENDER_TIMESTAMP 0x2u /* metadata timestamp in JSON output */

typedef enum nncost_era {
    NNCOST_ERA_LUT4 = 0,
    NNCOST_ERA_LUT6 = 1
} nncost_era;

typedef enum nncost_gate_field {
    NNCOST_GATES_AND = 0,   /* standalone AND gates (multiplier arrays) */
    NNCOST_GATES_XOR = 1,   /* standalone XOR gates */
    NNCOST_GATES_OR = 2,    /* standalone OR gates */
    NNCOST_GATES_HA = 3,    /* half adders */
    NNCOST_GATES_FA = 4,    /* full adders */
    NNCOST_GATES_FF = 5,    /* pipeline flip-flops */
    NNCOST_GATES_TOTAL = 6, /* expanded 2-input gate total */
    NNCOST_GATES_CLB_MIN = 7,
    NNCOST_GATES_CLB_MAX = 8,
    NNCOST_GATES_CLB_TYPICAL = 9 /* LUT4 era only */
} nncost_gate_field;

typedef struct nncost_model nncost_model;
typedef struct nncost_report nncost_report;
typedef struct nncost_verification nncost_verification;
typedef struct nncost_sweep_plan nncost_sweep_plan;
typedef struct nncost_dataset nncost_dataset;
typedef struct nncost_reduction nncost_reduction;
typedef struct nncost_scheme_table nncost_scheme_table;
typedef struct nncost_gate_report nncost_gate_report;

/* ------------------------------------------------------------------ */
/* Library info and error state                                       */

NNCOST_API const char* nncost_version(void);
NNCOST_API const char* nncost_status_name(nncost_status status);

/* Message for the most recent failure on this thread ("" if none). */
NNCOST_API const char* nncost_last_error(void);
/* Source position of the most recent parse failure; 0 when not applicable. */
NNCOST_API int nncost_last_error_line(void);
NNCOST_API int nncost_last_error_column(void);

NNCOST_API void nncost_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Models                                                              */

/* Text model grammar by default; files ending in .json use the JSON mirror. */
NNCOST_API nncost_status nncost_model_parse_file(const char* path, nncost_model** out);
NNCOST_API nncost_status nncost_model_parse_text(const char* text, nncost_model** out);
NNCOST_API nncost_status nncost_model_parse_json(const char* text, nncost_model** out);
/* Built-in comparison fixture model (one layer of each kind). */
NNCOST_API nncost_status nncost_model_fixture(nncost_model** out);
NNCOST_API void nncost_model_free(nncost_model* m);

NNCOST_API const char* nncost_model_name(const nncost_model* m);
NNCOST_API size_t nncost_model_layer_count(const nncost_model* m);
NNCOST_API const char* nncost_model_layer_name(const nncost_model* m, size_t layer);
NNCOST_API const char* nncost_model_layer_kind(const nncost_model* m, size_t layer);
NNCOST_API size_t nncost_model_warning_count(const nncost_model* m);
NNCOST_API const char* nncost_model_warning(const nncost_model* m, size_t idx);
/* Canonical text form; reparsing it yields an identical model. */
NNCOST_API nncost_status nncost_model_serialize(const nncost_model* m, char** out);

/* ------------------------------------------------------------------ */
/* Closed-form analysis                                                */

NNCOST_API nncost_status nncost_analyze(const nncost_model* m, nncost_bop_mode mode,
                                        nncost_report** out);
NNCOST_API void nncost_report_free(nncost_report* r);
NNCOST_API size_t nncost_report_layer_count(const nncost_report* r);
NNCOST_API nncost_status nncost_report_layer_metric(const nncost_report* r, size_t layer,
                                                    nncost_metric metric, uint64_t* out);
NNCOST_API nncost_status nncost_report_total(const nncost_report* r, nncost_metric metric,
                                             uint64_t* out);
NNCOST_API nncost_status nncost_report_render(const nncost_report* r, nncost_format format,
                                              unsigned flags, char** out);

/* ------------------------------------------------------------------ */
/* Oracle verification                                                 */

/* Structurally enumerates every scalar operation of each layer (guarded at
 * 2^20 scalar ops) and compares against the closed forms. */
NNCOST_API nncost_status nncost_validate(const nncost_model* m, uint64_t seed,
                                         nncost_verification** out);
NNCOST_API void nncost_verification_free(nncost_verification* v);
NNCOST_API size_t nncost_verification_row_count(const nncost_verification* v);
NNCOST_API const char* nncost_verification_layer(const nncost_verification* v, size_t row);
NNCOST_API const char* nncost_verification_metric(const nncost_verification* v, size_t row);
/* closed-form value, oracle value, signed delta, permitted bound (decimal). */
NNCOST_API nncost_status nncost_verification_values(const nncost_verification* v, size_t row,
                                                    char** closed, char** oracle, char** delta,
                                                    char** bound);
NNCOST_API int nncost_verification_row_ok(const nncost_verification* v, size_t row);
NNCOST_API int nncost_verification_ok(const nncost_verification* v);
NNCOST_API nncost_status nncost_verification_render(const nncost_verification* v,
                                                    nncost_format format, unsigned flags,
                                                    char** out);

/* ------------------------------------------------------------------ */
/* Sweeps                                                              */

NNCOST_API nncost_status nncost_sweep_plan_parse_file(const char* path, nncost_sweep_plan** out);
NNCOST_API nncost_status nncost_sweep_plan_parse_text(const char* text, nncost_sweep_plan** out);
NNCOST_API void nncost_sweep_plan_free(nncost_sweep_plan* p);
NNCOST_API nncost_status nncost_sweep_run(const nncost_sweep_plan* p, nncost_dataset** out);

NNCOST_API void nncost_dataset_free(nncost_dataset* d);
NNCOST_API size_t nncost_dataset_axis_count(const nncost_dataset* d);
NNCOST_API const char* nncost_dataset_axis_name(const nncost_dataset* d, size_t axis);
NNCOST_API size_t nncost_dataset_point_count(const nncost_dataset* d);
NNCOST_API nncost_status nncost_dataset_coordinate(const nncost_dataset* d, size_t point,
                                                   size_t axis, uint64_t* out);
/* *available is 0 for grid points where the layer is not defined (value
 * untouched); such points render as "NA" / null, never zero. */
NNCOST_API nncost_status nncost_dataset_value(const nncost_dataset* d, size_t point,
                                              uint64_t* value, int* available);
NNCOST_API nncost_status nncost_dataset_render(const nncost_dataset* d, nncost_format format,
                                               unsigned flags, char** out);

/* ------------------------------------------------------------------ */
/* Comparison reports                                                  */

/* BOP before/after lowering one bitwidth ("b_w", "b_i" or "b_a") from
 * `from_bits` to `to_bits`, per layer, with the percentage reduction. */
NNCOST_API nncost_status nncost_bitwidth_reduction(const nncost_model* m, const char* axis,
                                                   uint32_t from_bits, uint32_t to_bits,
                                                   nncost_bop_mode mode, nncost_reduction** out);
NNCOST_API void nncost_reduction_free(nncost_reduction* r);
NNCOST_API size_t nncost_reduction_row_count(const nncost_reduction* r);
NNCOST_API const char* nncost_reduction_layer(const nncost_reduction* r, size_t row);
NNCOST_API nncost_status nncost_reduction_values(const nncost_reduction* r, size_t row,
                                                 uint64_t* bop_from, uint64_t* bop_to,
                                                 double* reduction_percent);
NNCOST_API nncost_status nncost_reduction_render(const nncost_reduction* r, nncost_format format,
                                                 unsigned flags, char** out);

/* NABS per layer for every retained-term count x_w in [0, b_w-1]. */
NNCOST_API nncost_status nncost_scheme_comparison(const nncost_model* m, nncost_scheme_table** out);
NNCOST_API void nncost_scheme_table_free(nncost_scheme_table* t);
NNCOST_API size_t nncost_scheme_table_row_count(const nncost_scheme_table* t);
NNCOST_API const char* nncost_scheme_table_layer(const nncost_scheme_table* t, size_t row);
NNCOST_API nncost_status nncost_scheme_table_values(const nncost_scheme_table* t, size_t row,
                                                    uint32_t* x_w, char** scheme, uint64_t* nabs);
NNCOST_API nncost_status nncost_scheme_table_render(const nncost_scheme_table* t,
                                                    nncost_format format, unsigned flags,
                                                    char** out);

/* ------------------------------------------------------------------ */
/* Logic-gate estimates                                                */

/* Gate-level estimate per layer plus CLB bounds for the chosen era.
 * pipeline_depth > 0 adds output registers (flip-flops) per counted
 * multiplier/adder stage. table_file may be NULL to use the built-in
 * capacity tables. */
NNCOST_API nncost_status nncost_gates(const nncost_model* m, nncost_era era,
                                      uint32_t pipeline_depth, const char* table_file,
                                      nncost_gate_report** out);
NNCOST_API void nncost_gate_report_free(nncost_gate_report* g);
NNCOST_API size_t nncost_gate_report_layer_count(const nncost_gate_report* g);
/* layer == (size_t)-1 addresses the model totals row. */
NNCOST_API nncost_status nncost_gate_report_value(const nncost_gate_report* g, size_t layer,
                                                  nncost_gate_field field, uint64_t* out);
NNCOST_API nncost_status nncost_gate_report_render(const nncost_gate_report* g,
                                                   nncost_format format, unsigned flags,
                                                   char** out);

/* Array multiplier decomposition for an m x n multiply (m >= n). */
NNCOST_API nncost_status nncost_multiplier_gates(uint32_t m, uint32_t n, uint64_t* and_array,
                                                 uint64_t* half_adders, uint64_t* full_adders,
                                                 uint64_t* total_gates);
/* Ripple-carry adder decomposition for the given result width. */
NNCOST_API nncost_status nncost_adder_gates(uint32_t width, uint64_t* half_adders,
                                            uint64_t* full_adders, uint64_t* total_gates);
/* Fixed 27x18 reference multiplier: 486 AND array, 18 HA, 450 FA, 90 FF. */
NNCOST_API void nncost_reference_multiplier_27x18(uint64_t* and_array, uint64_t* half_adders,
                                                  uint64_t* full_adders, uint64_t* flip_flops);

/* ------------------------------------------------------------------ */
/* Arithmetic kernels                                                  */

/* Accumulator width b_w + b_x + ceil(log2 n) (ceil(log2 1) = 0). */
NNCOST_API nncost_status nncost_acc_width(uint64_t n, uint32_t b_w, uint32_t b_x, uint64_t* out);
/* Bit operations of an n-term dot product at the given operand widths. */
NNCOST_API nncost_status nncost_mult_bop(uint64_t n, uint32_t b_w, uint32_t b_x, uint64_t* out);
/* Adders per weight multiply: "uniform" -> b_w-1, "pot" -> 0, "apot(n)" -> n. */
NNCOST_API nncost_status nncost_x_w(const char* scheme, uint32_t b_w, uint32_t* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NNCOST_H */
