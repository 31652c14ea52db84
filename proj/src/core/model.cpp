#include "core/model.hpp"

#include <set>

namespace nncost {

std::string QuantScheme::str() const {
    switch (kind) {
    case QuantKind::Uniform:
        return "uniform";
    case QuantKind::PoT:
        return "pot";
    case QuantKind::APoT:
        return "apot(" + std::to_string(apot_terms) + ")";
    }
    return "?";
}

const char* LayerSpec::kind_name() const {
    if (std::holds_alternative<DenseSpec>(params))
        return "dense";
    if (std::holds_alternative<Conv1DSpec>(params))
        return "conv1d";
    if (const auto* r = std::get_if<RecurrentSpec>(&params)) {
        switch (r->kind) {
        case RecurrentKind::Rnn:
            return "rnn";
        case RecurrentKind::Lstm:
            return "lstm";
        case RecurrentKind::Gru:
            return "gru";
        }
    }
    return "esn";
}

Expected<u64> x_w(const QuantScheme& q, u64 b_w) {
    switch (q.kind) {
    case QuantKind::Uniform:
        return b_w - 1;
    case QuantKind::PoT:
        return u64(0);
    case QuantKind::APoT:
        if (q.apot_terms < 1 || b_w < 2 || q.apot_terms > b_w - 2)
            return Error::validation("apot term count " + std::to_string(q.apot_terms) +
                                     " outside [1, " +
                                     std::to_string(b_w >= 2 ? b_w - 2 : 0) +
                                     "] for b_w=" + std::to_string(b_w));
        return q.apot_terms;
    }
    return Error::validation("unknown quantization scheme");
}

std::optional<u64> conv_output_size(const Conv1DSpec& c) {
    // signed evaluation: the numerator can go negative for oversized kernels
    i128 span = i128(c.n_s) + 2 * i128(c.padding) - i128(c.dilation) * (i128(c.n_k) - 1) - 1;
    if (span < 0)
        return std::nullopt;
    i128 out = span / i128(c.stride) + 1;
    if (out < 1)
        return std::nullopt;
    return u64(out);
}

static Error check_param(const std::string& layer, const char* name, u64 v, u64 lo) {
    if (v < lo)
        return Error::validation("layer '" + layer + "': " + name + " must be >= " +
                                 std::to_string(lo));
    if (v > kMaxParam)
        return Error::validation("layer '" + layer + "': " + name + " exceeds the supported maximum " +
                                 std::to_string(kMaxParam));
    return {};
}

static Error check_bits(const std::string& layer, const char* name, u64 v) {
    if (v < 1 || v > kMaxBits)
        return Error::validation("layer '" + layer + "': bit width " + name + " must be in [1, " +
                                 std::to_string(kMaxBits) + "]");
    return {};
}

static void warn_bias(const LayerSpec& l, u64 n, u64 b_x, std::vector<std::string>* warnings) {
    // closed forms assume the bias is absorbed by the accumulator
    u64 acc = l.bits.w + b_x + ceil_log2(n);
    if (l.bits.b >= acc && warnings)
        warnings->push_back("layer '" + l.name + "': bias width " + std::to_string(l.bits.b) +
                            " is not dominated by the accumulator width " + std::to_string(acc));
}

Error validate_layer(const LayerSpec& layer, std::vector<std::string>* warnings) {
    if (layer.name.empty())
        return Error::validation("layer with empty name");
    for (const char* field : {"w", "i", "a", "b"}) {
        u64 v = field[0] == 'w'   ? layer.bits.w
                : field[0] == 'i' ? layer.bits.i
                : field[0] == 'a' ? layer.bits.a
                                  : layer.bits.b;
        if (Error e = check_bits(layer.name, field, v); !e.ok())
            return e;
    }
    Expected<u64> x = x_w(layer.quant, layer.bits.w);
    if (!x.ok())
        return Error::validation("layer '" + layer.name + "': " + x.error.message);

    if (const auto* d = std::get_if<DenseSpec>(&layer.params)) {
        if (Error e = check_param(layer.name, "n_i", d->n_i, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "n_n", d->n_n, 1); !e.ok())
            return e;
        warn_bias(layer, d->n_i, layer.bits.i, warnings);
    } else if (const auto* c = std::get_if<Conv1DSpec>(&layer.params)) {
        if (Error e = check_param(layer.name, "n_i", c->n_i, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "n_f", c->n_f, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "n_k", c->n_k, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "n_s", c->n_s, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "padding", c->padding, 0); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "dilation", c->dilation, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "stride", c->stride, 1); !e.ok())
            return e;
        if (!conv_output_size(*c))
            return Error::validation("layer '" + layer.name +
                                     "': kernel does not fit the padded input (output size < 1)");
        warn_bias(layer, c->n_i * c->n_k, layer.bits.i, warnings); // <= 1e18, fits u64
    } else if (const auto* r = std::get_if<RecurrentSpec>(&layer.params)) {
        if (Error e = check_param(layer.name, "n_i", r->n_i, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "n_h", r->n_h, 1); !e.ok())
            return e;
        if (Error e = check_param(layer.name, "n_s", r->n_s, 1); !e.ok())
            return e;
        if (r->n_h < r->n_i && warnings)
            warnings->push_back("layer '" + layer.name +
                                "': closed forms assume the hidden accumulator dominates (n_h >= n_i) "
                                "but n_h=" + std::to_string(r->n_h) + " < n_i=" + std::to_string(r->n_i));
        warn_bias(layer, r->n_h, layer.bits.a, warnings);
    } else {
        const auto& e = std::get<ESNSpec>(layer.params);
        if (Error err = check_param(layer.name, "N_r", e.N_r, 1); !err.ok())
            return err;
        if (Error err = check_param(layer.name, "n_i", e.n_i, 1); !err.ok())
            return err;
        if (Error err = check_param(layer.name, "n_o", e.n_o, 1); !err.ok())
            return err;
        if (Error err = check_param(layer.name, "n_s", e.n_s, 1); !err.ok())
            return err;
        if (e.s_p.num > e.s_p.den) // s_p > 1
            return Error::validation("layer '" + layer.name + "': s_p must be in [0, 1]");
        if (e.mu.num == 0 || e.mu.num > e.mu.den)
            return Error::validation("layer '" + layer.name + "': mu must be in (0, 1]");
        warn_bias(layer, e.N_r, layer.bits.a, warnings);
    }
    return {};
}

Error validate_model(const ModelSpec& model, std::vector<std::string>* warnings) {
    if (model.layers.empty())
        return Error::validation("model '" + model.name + "' has no layers");
    std::set<std::string> names;
    for (const LayerSpec& l : model.layers) {
        if (!names.insert(l.name).second)
            return Error::validation("duplicate layer name '" + l.name + "'");
        if (Error e = validate_layer(l, warnings); !e.ok())
            return e;
    }
    return {};
}

} // namespace nncost
