// nncost command line: analyze / sweep / compare / validate / gates over the
// shared C API.
//
// Exit codes: 0 success, 2 unreadable input, 3 parse error, 4 validation
// error, 5 size guard, 1 anything else (usage, internal). Every failure
// prints one line on stderr: nncost: <class>: [<file>[:line[:col]]: ]<message>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "nncost.h"

namespace {

int exit_code_of(nncost_status s) {
    switch (s) {
    case NNCOST_OK:
        return 0;
    case NNCOST_ERR_IO:
        return 2;
    case NNCOST_ERR_PARSE:
        return 3;
    case NNCOST_ERR_VALIDATION:
        return 4;
    case NNCOST_ERR_GUARD:
        return 5;
    default:
        return 1;
    }
}

// One-line diagnostic; `input` names the file the failure refers to (empty
// for argument errors, skipped for io errors whose message carries the path).
int fail_with(nncost_status s, const std::string& input) {
    std::string where;
    if (!input.empty() && s != NNCOST_ERR_IO) {
        where = input;
        if (nncost_last_error_line() > 0) {
            where += ":" + std::to_string(nncost_last_error_line());
            if (nncost_last_error_column() > 0)
                where += ":" + std::to_string(nncost_last_error_column());
        }
        where += ": ";
    }
    std::fprintf(stderr, "nncost: %s: %s%s\n", nncost_status_name(s), where.c_str(),
                 nncost_last_error());
    return exit_code_of(s);
}

int usage_error(const std::string& msg) {
    std::fprintf(stderr, "nncost: argument: %s\n", msg.c_str());
    return 1;
}

struct OutOpts {
    std::string format;  // "", "text", "csv", "json"
    std::string path;    // "" = stdout
    bool timestamp = false;
};

void add_output_flags(CLI::App* cmd, OutOpts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("-o,--output", o.path, "write output to a file instead of stdout");
    cmd->add_flag("--timestamp", o.timestamp,
                  "include a generation timestamp in json metadata");
}

nncost_format pick_format(const OutOpts& o) {
    if (o.format == "text")
        return NNCOST_FORMAT_TEXT;
    if (o.format == "csv")
        return NNCOST_FORMAT_CSV;
    if (o.format == "json")
        return NNCOST_FORMAT_JSON;
    // unset: text for humans, json when piped or written to a file
    if (!o.path.empty() || !isatty(fileno(stdout)))
        return NNCOST_FORMAT_JSON;
    return NNCOST_FORMAT_TEXT;
}

unsigned render_flags(const OutOpts& o, nncost_format f) {
    unsigned flags = 0;
    if (o.timestamp)
        flags |= NNCOST_RENDER_TIMESTAMP;
    if (f == NNCOST_FORMAT_TEXT && o.path.empty() && isatty(fileno(stdout)) &&
        !std::getenv("NN_COSTMODEL_NO_COLOR"))
        flags |= NNCOST_RENDER_ANSI;
    return flags;
}

// Takes ownership of the rendered string.
int emit(char* rendered, const OutOpts& o) {
    int rc = 0;
    if (o.path.empty()) {
        std::fputs(rendered, stdout);
    } else {
        std::ofstream out(o.path, std::ios::binary);
        if (!out) {
            std::fprintf(stderr, "nncost: io: cannot open '%s' for writing\n", o.path.c_str());
            rc = 2;
        } else {
            out << rendered;
        }
    }
    nncost_string_free(rendered);
    return rc;
}

int load_model(const std::string& path, nncost_model** out) {
    nncost_status s = nncost_model_parse_file(path.c_str(), out);
    if (s != NNCOST_OK)
        return fail_with(s, path);
    for (size_t i = 0; i < nncost_model_warning_count(*out); ++i)
        std::fprintf(stderr, "nncost: warning: %s\n", nncost_model_warning(*out, i));
    return 0;
}

// ------------------------------------------------------------------ analyze

int run_analyze(const std::string& spec, const std::string& bop_mode, const OutOpts& out) {
    nncost_model* model = nullptr;
    if (int rc = load_model(spec, &model))
        return rc;
    nncost_report* report = nullptr;
    nncost_status s = nncost_analyze(
        model, bop_mode == "exact" ? NNCOST_BOP_EXACT : NNCOST_BOP_TABLE, &report);
    nncost_model_free(model);
    if (s != NNCOST_OK)
        return fail_with(s, spec);
    nncost_format f = pick_format(out);
    char* rendered = nullptr;
    s = nncost_report_render(report, f, render_flags(out, f), &rendered);
    nncost_report_free(report);
    if (s != NNCOST_OK)
        return fail_with(s, spec);
    return emit(rendered, out);
}

// ------------------------------------------------------------------ sweep

int run_sweep_cmd(const std::string& plan_path, const OutOpts& out) {
    nncost_sweep_plan* plan = nullptr;
    nncost_status s = nncost_sweep_plan_parse_file(plan_path.c_str(), &plan);
    if (s != NNCOST_OK)
        return fail_with(s, plan_path);
    nncost_dataset* data = nullptr;
    s = nncost_sweep_run(plan, &data);
    nncost_sweep_plan_free(plan);
    if (s != NNCOST_OK)
        return fail_with(s, plan_path);
    nncost_format f = pick_format(out);
    char* rendered = nullptr;
    s = nncost_dataset_render(data, f, render_flags(out, f), &rendered);
    nncost_dataset_free(data);
    if (s != NNCOST_OK)
        return fail_with(s, plan_path);
    return emit(rendered, out);
}

// ------------------------------------------------------------------ compare

int run_compare(const std::string& spec, const std::string& axis, unsigned from_bits,
                unsigned to_bits, const std::string& bop_mode, bool schemes,
                const OutOpts& out) {
    if (schemes == !axis.empty())
        return usage_error("choose either --axis or --schemes");
    nncost_model* model = nullptr;
    if (int rc = load_model(spec, &model))
        return rc;

    nncost_status s;
    char* rendered = nullptr;
    nncost_format f = pick_format(out);
    if (schemes) {
        nncost_scheme_table* table = nullptr;
        s = nncost_scheme_comparison(model, &table);
        nncost_model_free(model);
        if (s != NNCOST_OK)
            return fail_with(s, spec);
        s = nncost_scheme_table_render(table, f, render_flags(out, f), &rendered);
        nncost_scheme_table_free(table);
    } else {
        const char* core_axis = axis == "bw" ? "b_w" : axis == "bi" ? "b_i" : "b_a";
        nncost_reduction* red = nullptr;
        s = nncost_bitwidth_reduction(model, core_axis, from_bits, to_bits,
                                      bop_mode == "exact" ? NNCOST_BOP_EXACT : NNCOST_BOP_TABLE,
                                      &red);
        nncost_model_free(model);
        if (s != NNCOST_OK)
            return fail_with(s, spec);
        s = nncost_reduction_render(red, f, render_flags(out, f), &rendered);
        nncost_reduction_free(red);
    }
    if (s != NNCOST_OK)
        return fail_with(s, spec);
    return emit(rendered, out);
}

// ------------------------------------------------------------------ validate

int run_validate(const std::string& spec, uint64_t seed, const OutOpts& out) {
    nncost_model* model = nullptr;
    if (int rc = load_model(spec, &model))
        return rc;
    nncost_verification* v = nullptr;
    nncost_status s = nncost_validate(model, seed, &v);
    nncost_model_free(model);
    if (s != NNCOST_OK)
        return fail_with(s, spec);
    nncost_format f = pick_format(out);
    char* rendered = nullptr;
    s = nncost_verification_render(v, f, render_flags(out, f), &rendered);
    if (s != NNCOST_OK) {
        nncost_verification_free(v);
        return fail_with(s, spec);
    }
    int ok = nncost_verification_ok(v);
    nncost_verification_free(v);
    if (int rc = emit(rendered, out))
        return rc;
    if (!ok) {
        std::fprintf(stderr, "nncost: validation: closed forms disagree with the oracle\n");
        return 1;
    }
    return 0;
}

// ------------------------------------------------------------------ gates

int run_gates(const std::string& spec, const std::string& era, unsigned pipeline_depth,
              const std::string& table_file, const OutOpts& out) {
    nncost_model* model = nullptr;
    if (int rc = load_model(spec, &model))
        return rc;
    nncost_gate_report* report = nullptr;
    nncost_status s = nncost_gates(model, era == "lut6" ? NNCOST_ERA_LUT6 : NNCOST_ERA_LUT4,
                                   pipeline_depth, table_file.empty() ? nullptr : table_file.c_str(),
                                   &report);
    nncost_model_free(model);
    if (s != NNCOST_OK)
        return fail_with(s, table_file.empty() ? spec : table_file);
    nncost_format f = pick_format(out);
    char* rendered = nullptr;
    s = nncost_gate_report_render(report, f, render_flags(out, f), &rendered);
    nncost_gate_report_free(report);
    if (s != NNCOST_OK)
        return fail_with(s, spec);
    return emit(rendered, out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complexity metrics (rm, bop, nabs) and logic-gate estimates for "
                 "neural-network layers"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("nncost ") + nncost_version());

    int result = 0;

    // analyze
    std::string an_spec, an_mode = "table";
    OutOpts an_out;
    auto* analyze = app.add_subcommand("analyze", "closed-form rm/bop/nabs per layer");
    analyze->add_option("spec", an_spec, "model file")->required();
    analyze->add_option("--bop-mode", an_mode, "dense bop accounting")
        ->check(CLI::IsMember({"table", "exact"}));
    add_output_flags(analyze, an_out);
    analyze->callback([&] { result = run_analyze(an_spec, an_mode, an_out); });

    // sweep
    std::string sw_plan;
    OutOpts sw_out;
    auto* sweep = app.add_subcommand("sweep", "evaluate a metric over a parameter grid");
    sweep->add_option("plan", sw_plan, "sweep plan file")->required();
    add_output_flags(sweep, sw_out);
    sweep->callback([&] { result = run_sweep_cmd(sw_plan, sw_out); });

    // compare
    std::string cm_spec, cm_axis, cm_mode = "table";
    unsigned cm_from = 8, cm_to = 4;
    bool cm_schemes = false;
    OutOpts cm_out;
    auto* compare = app.add_subcommand("compare",
                                       "bitwidth-reduction or quantization-scheme comparison");
    compare->add_option("spec", cm_spec, "model file")->required();
    auto* axis_opt = compare->add_option("--axis", cm_axis, "bitwidth to lower: bw, bi or ba")
                         ->check(CLI::IsMember({"bw", "bi", "ba"}));
    compare->add_option("--from", cm_from, "starting bitwidth (default 8)");
    compare->add_option("--to", cm_to, "lowered bitwidth (default 4)");
    compare->add_option("--bop-mode", cm_mode, "dense bop accounting")
        ->check(CLI::IsMember({"table", "exact"}));
    auto* schemes_flag =
        compare->add_flag("--schemes", cm_schemes, "nabs per quantization scheme");
    axis_opt->excludes(schemes_flag);
    schemes_flag->excludes(axis_opt);
    add_output_flags(compare, cm_out);
    compare->callback(
        [&] { result = run_compare(cm_spec, cm_axis, cm_from, cm_to, cm_mode, cm_schemes, cm_out); });

    // validate
    std::string va_spec;
    uint64_t va_seed = 0;
    OutOpts va_out;
    auto* validate = app.add_subcommand("validate",
                                        "check closed forms against the operation-counting oracle");
    validate->add_option("spec", va_spec, "model file")->required();
    validate->add_option("--seed", va_seed, "seed for the esn sparsity mask (default 0)");
    add_output_flags(validate, va_out);
    validate->callback([&] { result = run_validate(va_spec, va_seed, va_out); });

    // gates
    std::string ga_spec, ga_era = "lut4", ga_table;
    unsigned ga_depth = 0;
    OutOpts ga_out;
    auto* gates = app.add_subcommand("gates", "logic-gate and clb estimates per layer");
    gates->add_option("spec", ga_spec, "model file")->required();
    gates->add_option("--era", ga_era, "clb capacity table era")
        ->check(CLI::IsMember({"lut4", "lut6"}));
    gates->add_option("--pipeline-depth", ga_depth,
                      "output-register banks per multiplier/adder stage");
    gates->add_option("--clb-table", ga_table, "capacity table file overriding the built-ins");
    add_output_flags(gates, ga_out);
    gates->callback([&] { result = run_gates(ga_spec, ga_era, ga_depth, ga_table, ga_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // help/version exit 0, usage errors exit 1
    }
    return result;
}
