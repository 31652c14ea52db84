// Layer and model descriptions plus the structural checks that gate every
// other module. A model that passes validate() is safe input for the metric,
// oracle, gate and sweep code.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/wideint.hpp"

namespace nncost {

enum class ErrClass {
    None = 0,
    Io,
    Parse,      // syntax, unknown kind or key, missing required field
    Validation, // value breaks a model invariant
    Guard,      // oracle size guard
    Arg,
    Range,
    Internal,
};

struct Error {
    ErrClass cls = ErrClass::None;
    std::string message;
    int line = 0; // 1-based; 0 when not tied to a source position
    int col = 0;

    bool ok() const { return cls == ErrClass::None; }
    static Error parse(std::string msg, int line = 0, int col = 0) {
        return {ErrClass::Parse, std::move(msg), line, col};
    }
    static Error validation(std::string msg) { return {ErrClass::Validation, std::move(msg), 0, 0}; }
    static Error guard(std::string msg) { return {ErrClass::Guard, std::move(msg), 0, 0}; }
    static Error io(std::string msg) { return {ErrClass::Io, std::move(msg), 0, 0}; }
    static Error arg(std::string msg) { return {ErrClass::Arg, std::move(msg), 0, 0}; }
};

// Minimal result carrier: value or first failing cause.
template <typename T>
struct Expected {
    std::optional<T> value;
    Error error;

    Expected(T v) : value(std::move(v)) {}
    Expected(Error e) : error(std::move(e)) {}
    bool ok() const { return value.has_value(); }
    T& operator*() { return *value; }
    const T& operator*() const { return *value; }
    T* operator->() { return &*value; }
    const T* operator->() const { return &*value; }
};

// Operand widths in bits: weights, layer inputs, activations, biases.
struct BitwidthConfig {
    u64 w = 8;
    u64 i = 8;
    u64 a = 8;
    u64 b = 8;

    bool operator==(const BitwidthConfig&) const = default;
};

enum class QuantKind { Uniform, PoT, APoT };

struct QuantScheme {
    QuantKind kind = QuantKind::Uniform;
    u64 apot_terms = 0; // meaningful for APoT only

    bool operator==(const QuantScheme&) const = default;
    static QuantScheme uniform() { return {QuantKind::Uniform, 0}; }
    static QuantScheme pot() { return {QuantKind::PoT, 0}; }
    static QuantScheme apot(u64 n) { return {QuantKind::APoT, n}; }
    std::string str() const;
};

struct DenseSpec {
    u64 n_i = 1; // inputs
    u64 n_n = 1; // neurons
    bool operator==(const DenseSpec&) const = default;
};

struct Conv1DSpec {
    u64 n_i = 1; // input channels
    u64 n_f = 1; // filters
    u64 n_k = 1; // kernel size
    u64 n_s = 1; // input sequence length
    u64 padding = 0;
    u64 dilation = 1;
    u64 stride = 1;
    bool operator==(const Conv1DSpec&) const = default;
};

enum class RecurrentKind { Rnn, Lstm, Gru };

struct RecurrentSpec {
    RecurrentKind kind = RecurrentKind::Rnn;
    u64 n_i = 1; // inputs per step
    u64 n_h = 1; // hidden units
    u64 n_s = 1; // time steps
    bool operator==(const RecurrentSpec&) const = default;
};

struct ESNSpec {
    u64 N_r = 1; // reservoir size
    u64 n_i = 1; // inputs per step
    u64 n_o = 1; // readout outputs
    u64 n_s = 1; // time steps
    Dec s_p;     // fraction of retained reservoir connections, in [0, 1]
    Dec mu;      // leak rate, in (0, 1]
    bool operator==(const ESNSpec&) const = default;
};

using LayerParams = std::variant<DenseSpec, Conv1DSpec, RecurrentSpec, ESNSpec>;

struct LayerSpec {
    std::string name;
    LayerParams params;
    BitwidthConfig bits;
    QuantScheme quant;

    bool operator==(const LayerSpec&) const = default;
    // "dense", "conv1d", "rnn", "lstm", "gru" or "esn"
    const char* kind_name() const;
};

struct ModelSpec {
    std::string name;
    std::vector<LayerSpec> layers;

    bool operator==(const ModelSpec&) const = default;
};

// Hyper-parameters above this are rejected so every closed form fits in
// 128-bit arithmetic with a wide margin.
constexpr u64 kMaxParam = 1000000000;  // 1e9
constexpr u64 kMaxBits = 4096;

// Adders a weight multiply decomposes into: uniform b_w-1, pot 0, apot n.
// Fails when an APoT term count is outside [1, b_w-2].
Expected<u64> x_w(const QuantScheme& q, u64 b_w);

// floor((n_s + 2*padding - dilation*(n_k-1) - 1) / stride) + 1, or nullopt
// when the kernel does not fit (result < 1).
std::optional<u64> conv_output_size(const Conv1DSpec& c);

// First violated invariant, if any. Non-fatal findings (bias width not
// dominated by the accumulator, n_h < n_i under the accumulator-dominance
// shortcut) are appended to *warnings as one-line messages.
Error validate_layer(const LayerSpec& layer, std::vector<std::string>* warnings);
Error validate_model(const ModelSpec& model, std::vector<std::string>* warnings);

} // namespace nncost
