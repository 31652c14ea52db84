#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/model.hpp"
#include "core/parse.hpp"

using namespace nncost;

namespace {

LayerSpec dense(const std::string& name, u64 n_i, u64 n_n, BitwidthConfig bits = {},
                QuantScheme q = QuantScheme::uniform()) {
    return {name, DenseSpec{n_i, n_n}, bits, q};
}

ModelSpec one_layer(LayerSpec l) {
    return {"m", {std::move(l)}};
}

// Expects a failed parse and returns its error.
Error parse_error(const std::string& text) {
    auto r = parse_model_text(text);
    REQUIRE(!r.ok());
    return r.error;
}

} // namespace

TEST_CASE("serializer output parses back to an equal model") {
    ModelSpec m{"round-trip", {}};
    m.layers.push_back(dense("d", 1000, 2000));
    m.layers.push_back({"c", Conv1DSpec{100, 1, 100, 300, 2, 2, 3}, {8, 8, 8, 8},
                        QuantScheme::apot(3)});
    m.layers.push_back({"r", RecurrentSpec{RecurrentKind::Rnn, 100, 100, 100}, {8, 4, 6, 8},
                        QuantScheme::pot()});
    m.layers.push_back({"l", RecurrentSpec{RecurrentKind::Lstm, 3, 4, 2}, {2, 2, 2, 2},
                        QuantScheme::uniform()});
    m.layers.push_back({"g", RecurrentSpec{RecurrentKind::Gru, 5, 7, 4}, {8, 8, 8, 8},
                        QuantScheme::apot(6)});
    m.layers.push_back({"e", ESNSpec{100, 100, 100, 100, Dec(37, 100), Dec(9, 10)},
                        {8, 8, 8, 8}, QuantScheme::uniform()});

    auto parsed = parse_model_text(serialize_model(m));
    REQUIRE(parsed.ok());
    CHECK(parsed->model == m);
    CHECK(parsed->warnings.empty());
}

TEST_CASE("text grammar accepts comments and all field spellings") {
    auto r = parse_model_text(R"(# leading comment
model "demo" {
  layer "fc" dense {
    n_i = 4;   # inline comment
    n_n = 2;
    bits { w = 8; i = 8; a = 8; b = 8; }
    quant = apot(2);
  }
}
)");
    REQUIRE(r.ok());
    CHECK(r->model.name == "demo");
    REQUIRE(r->model.layers.size() == 1);
    const LayerSpec& l = r->model.layers[0];
    CHECK(l.name == "fc");
    CHECK(l.quant == QuantScheme::apot(2));
    CHECK(std::get<DenseSpec>(l.params).n_i == 4);
    CHECK(std::get<DenseSpec>(l.params).n_n == 2);
}

TEST_CASE("conv defaults: padding 0, dilation 1, stride 1") {
    auto r = parse_model_text(R"(model "m" {
  layer "c" conv1d {
    n_i = 1; n_f = 1; n_k = 3; n_s = 10;
    bits { w = 8; i = 8; a = 8; b = 8; }
    quant = uniform;
  }
})");
    REQUIRE(r.ok());
    const auto& c = std::get<Conv1DSpec>(r->model.layers[0].params);
    CHECK(c.padding == 0);
    CHECK(c.dilation == 1);
    CHECK(c.stride == 1);
}

TEST_CASE("parse errors carry class and position") {
    SUBCASE("missing semicolon") {
        Error e = parse_error("model \"m\" {\n  layer \"d\" dense {\n    n_i = 4\n    n_n = 2;\n"
                              "    bits { w = 8; i = 8; a = 8; b = 8; }\n    quant = uniform;\n  }\n}\n");
        CHECK(e.cls == ErrClass::Parse);
        CHECK(e.line == 4); // reported at the token that should have been ';'
    }
    SUBCASE("unknown layer kind") {
        Error e = parse_error("model \"m\" { layer \"x\" blorp { } }");
        CHECK(e.cls == ErrClass::Parse);
        CHECK(e.message.find("blorp") != std::string::npos);
    }
    SUBCASE("unknown field") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { frobs = 3; } }");
        CHECK(e.cls == ErrClass::Parse);
        CHECK(e.message.find("frobs") != std::string::npos);
    }
    SUBCASE("duplicate field") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { n_i = 3; n_i = 4; "
                              "n_n = 1; bits { w = 8; i = 8; a = 8; b = 8; } quant = uniform; } }");
        CHECK(e.cls == ErrClass::Parse);
    }
    SUBCASE("missing bits block") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { n_i = 3; n_n = 1; quant = uniform; } }");
        CHECK(e.cls == ErrClass::Parse);
        CHECK(e.message.find("bits") != std::string::npos);
    }
    SUBCASE("missing quant") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { n_i = 3; n_n = 1; "
                              "bits { w = 8; i = 8; a = 8; b = 8; } } }");
        CHECK(e.cls == ErrClass::Parse);
        CHECK(e.message.find("quant") != std::string::npos);
    }
    SUBCASE("bad quant spelling") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { n_i = 3; n_n = 1; "
                              "bits { w = 8; i = 8; a = 8; b = 8; } quant = ternary; } }");
        CHECK(e.cls == ErrClass::Parse);
    }
    SUBCASE("trailing garbage after the model block") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { n_i = 3; n_n = 1; "
                              "bits { w = 8; i = 8; a = 8; b = 8; } quant = uniform; } } extra");
        CHECK(e.cls == ErrClass::Parse);
    }
    SUBCASE("unterminated string") {
        Error e = parse_error("model \"m { }");
        CHECK(e.cls == ErrClass::Parse);
    }
    SUBCASE("decimal in an integer field") {
        Error e = parse_error("model \"m\" { layer \"d\" dense { n_i = 3.5; n_n = 1; "
                              "bits { w = 8; i = 8; a = 8; b = 8; } quant = uniform; } }");
        CHECK(e.cls == ErrClass::Parse);
    }
    SUBCASE("empty input") {
        CHECK(parse_error("").cls == ErrClass::Parse);
    }
}

TEST_CASE("model-level validation failures") {
    SUBCASE("empty model") {
        Error e = parse_error("model \"m\" { }");
        CHECK(e.cls == ErrClass::Validation);
        CHECK(e.message.find("no layers") != std::string::npos);
    }
    SUBCASE("duplicate layer names") {
        std::string layer = "layer \"d\" dense { n_i = 3; n_n = 1; "
                            "bits { w = 8; i = 8; a = 8; b = 8; } quant = uniform; } ";
        Error e = parse_error("model \"m\" { " + layer + layer + "}");
        CHECK(e.cls == ErrClass::Validation);
        CHECK(e.message.find("duplicate") != std::string::npos);
    }
}

TEST_CASE("layer validation enforces parameter ranges") {
    std::vector<std::string> warnings;

    SUBCASE("zero dimension") {
        CHECK(!validate_layer(dense("d", 0, 5), &warnings).ok());
        CHECK(!validate_layer(dense("d", 5, 0), &warnings).ok());
    }
    SUBCASE("parameter cap") {
        CHECK(validate_layer(dense("d", kMaxParam, 1), &warnings).ok());
        Error e = validate_layer(dense("d", kMaxParam + 1, 1), &warnings);
        CHECK(e.cls == ErrClass::Validation);
        CHECK(e.message.find("maximum") != std::string::npos);
    }
    SUBCASE("bit width bounds") {
        CHECK(!validate_layer(dense("d", 2, 2, {0, 8, 8, 8}), &warnings).ok());
        CHECK(!validate_layer(dense("d", 2, 2, {8, kMaxBits + 1, 8, 8}), &warnings).ok());
        CHECK(validate_layer(dense("d", 2, 2, {1, 1, 1, 1}, QuantScheme::pot()), &warnings).ok());
        CHECK(validate_layer(dense("d", 2, 2, {kMaxBits, 8, 8, 8}), &warnings).ok());
    }
    SUBCASE("apot term bounds depend on b_w") {
        CHECK(!validate_layer(dense("d", 2, 2, {8, 8, 8, 8}, QuantScheme::apot(0)), &warnings).ok());
        CHECK(validate_layer(dense("d", 2, 2, {8, 8, 8, 8}, QuantScheme::apot(1)), &warnings).ok());
        CHECK(validate_layer(dense("d", 2, 2, {8, 8, 8, 8}, QuantScheme::apot(6)), &warnings).ok());
        CHECK(!validate_layer(dense("d", 2, 2, {8, 8, 8, 8}, QuantScheme::apot(7)), &warnings).ok());
        // b_w = 2 leaves no room for apot at all
        CHECK(!validate_layer(dense("d", 2, 2, {2, 8, 8, 8}, QuantScheme::apot(1)), &warnings).ok());
    }
    SUBCASE("conv kernel must fit the padded input") {
        LayerSpec l{"c", Conv1DSpec{1, 1, 12, 10, 0, 1, 1}, {8, 8, 8, 8}, QuantScheme::uniform()};
        Error e = validate_layer(l, &warnings);
        CHECK(e.cls == ErrClass::Validation);
        CHECK(e.message.find("kernel") != std::string::npos);
        std::get<Conv1DSpec>(l.params).padding = 1; // 10 + 2 covers the kernel
        CHECK(validate_layer(l, &warnings).ok());
    }
    SUBCASE("esn fractions") {
        LayerSpec l{"e", ESNSpec{4, 2, 2, 2, Dec(1, 2), Dec(1, 2)}, {8, 8, 8, 8},
                    QuantScheme::uniform()};
        CHECK(validate_layer(l, &warnings).ok());
        std::get<ESNSpec>(l.params).s_p = Dec(3, 2); // 1.5
        CHECK(!validate_layer(l, &warnings).ok());
        std::get<ESNSpec>(l.params).s_p = Dec(1, 1);
        CHECK(validate_layer(l, &warnings).ok());
        std::get<ESNSpec>(l.params).s_p = Dec(0, 1);
        CHECK(validate_layer(l, &warnings).ok());
        std::get<ESNSpec>(l.params).mu = Dec(0, 1); // mu = 0 rejected
        CHECK(!validate_layer(l, &warnings).ok());
        std::get<ESNSpec>(l.params).mu = Dec(11, 10);
        CHECK(!validate_layer(l, &warnings).ok());
    }
}

TEST_CASE("non-fatal findings surface as warnings") {
    SUBCASE("bias width not dominated by the accumulator") {
        std::vector<std::string> w;
        // acc = 8 + 8 + ceil_log2(4) = 18
        CHECK(validate_layer(dense("d", 4, 1, {8, 8, 8, 18}), &w).ok());
        REQUIRE(w.size() == 1);
        CHECK(w[0].find("bias width") != std::string::npos);
        w.clear();
        CHECK(validate_layer(dense("d", 4, 1, {8, 8, 8, 17}), &w).ok());
        CHECK(w.empty());
    }
    SUBCASE("recurrent hidden size below the input size") {
        std::vector<std::string> w;
        LayerSpec l{"g", RecurrentSpec{RecurrentKind::Gru, 5, 3, 4}, {8, 8, 8, 8},
                    QuantScheme::uniform()};
        CHECK(validate_layer(l, &w).ok());
        REQUIRE(w.size() == 1);
        CHECK(w[0].find("n_h") != std::string::npos);
    }
    SUBCASE("warnings pointer may be null") {
        CHECK(validate_layer(dense("d", 4, 1, {8, 8, 8, 18}), nullptr).ok());
    }
}

TEST_CASE("conv output size formula") {
    auto os = [](u64 n_s, u64 n_k, u64 p, u64 d, u64 s) {
        return conv_output_size(Conv1DSpec{1, 1, n_k, n_s, p, d, s});
    };
    CHECK(os(300, 100, 0, 1, 1) == 201);
    CHECK(os(10, 10, 0, 1, 1) == 1);    // exact fit
    CHECK(!os(10, 11, 0, 1, 1));        // kernel too large
    CHECK(os(10, 11, 1, 1, 1) == 2);    // padding rescues it
    CHECK(os(10, 4, 0, 3, 1) == 1);     // dilated span 10
    CHECK(!os(10, 4, 0, 4, 1));         // dilated span 13
    CHECK(os(11, 3, 0, 1, 2) == 5);
    CHECK(os(12, 3, 0, 1, 2) == 5);     // partial last window dropped
    CHECK(os(1, 1, 0, 1, 1) == 1);
}

TEST_CASE("x_w per quantization scheme") {
    CHECK(*x_w(QuantScheme::uniform(), 8) == 7);
    CHECK(*x_w(QuantScheme::uniform(), 1) == 0); // 1-bit weights need no adders
    CHECK(*x_w(QuantScheme::pot(), 8) == 0);
    CHECK(*x_w(QuantScheme::apot(3), 8) == 3);
    CHECK(*x_w(QuantScheme::apot(6), 8) == 6);
    CHECK(!x_w(QuantScheme::apot(7), 8).ok());
    CHECK(!x_w(QuantScheme::apot(0), 8).ok());
    CHECK(!x_w(QuantScheme::apot(1), 2).ok());
}

TEST_CASE("quant_from_string") {
    CHECK(*quant_from_string("uniform") == QuantScheme::uniform());
    CHECK(*quant_from_string("pot") == QuantScheme::pot());
    CHECK(*quant_from_string("apot(4)") == QuantScheme::apot(4));
    CHECK(!quant_from_string("apot(")  .ok());
    CHECK(!quant_from_string("apot(x)").ok());
    CHECK(!quant_from_string("binary") .ok());
    CHECK(!quant_from_string("")       .ok());
}

TEST_CASE("decimal literals are exact rationals") {
    CHECK(*parse_decimal("0.37") == Dec(37, 100));
    CHECK(*parse_decimal("0.5") == Dec(1, 2));    // normalized
    CHECK(*parse_decimal("0.500") == Dec(1, 2));
    CHECK(*parse_decimal("1") == Dec(1, 1));
    CHECK(*parse_decimal("0.0") == Dec(0, 1));
    CHECK(*parse_decimal("1.0") == Dec(1, 1));
    CHECK(Dec(37, 100).str() == "0.37");
    CHECK(Dec(1, 2).str() == "0.5");
    CHECK(Dec(0, 1).str() == "0");
    CHECK(Dec(1, 1).str() == "1");
    CHECK(!parse_decimal("1.2.3").ok());
    CHECK(!parse_decimal("").ok());
    CHECK(!parse_decimal("x").ok());
}

TEST_CASE("round_half_up") {
    CHECK(round_half_up(0, Dec(1, 2), 9) == 5);   // 4.5 rounds up
    CHECK(round_half_up(0, Dec(1, 2), 8) == 4);
    CHECK(round_half_up(10, Dec(37, 100), 100) == 47);
    CHECK(round_half_up(10, Dec(0, 1), 12345) == 10);
    CHECK(round_half_up(0, Dec(1, 1), 7) == 7);
    CHECK(round_ratio_half_up(7, 2) == 4);  // 3.5 -> 4
    CHECK(round_ratio_half_up(6, 4) == 2);  // 1.5 -> 2
    CHECK(round_ratio_half_up(5, 4) == 1);  // 1.25 -> 1
    CHECK(round_ratio_half_up(0, 3) == 0);
}

TEST_CASE("json mirror accepts the same models as the text grammar") {
    const char* text = R"(model "mix" {
  layer "d" dense { n_i = 4; n_n = 2; bits { w = 8; i = 8; a = 8; b = 8; } quant = apot(2); }
  layer "e" esn { N_r = 6; n_i = 3; n_o = 2; n_s = 3; s_p = 0.37; mu = 0.9;
                  bits { w = 8; i = 8; a = 8; b = 8; } quant = uniform; }
})";
    const char* json = R"j({
  "name": "mix",
  "layers": [
    {"name": "d", "kind": "dense", "n_i": 4, "n_n": 2,
     "bits": {"w": 8, "i": 8, "a": 8, "b": 8}, "quant": "apot(2)"},
    {"name": "e", "kind": "esn", "N_r": 6, "n_i": 3, "n_o": 2, "n_s": 3,
     "s_p": "0.37", "mu": "0.9",
     "bits": {"w": 8, "i": 8, "a": 8, "b": 8}, "quant": "uniform"}
  ]
})j";
    auto from_text = parse_model_text(text);
    auto from_json = parse_model_json(json);
    REQUIRE(from_text.ok());
    REQUIRE(from_json.ok());
    CHECK(from_text->model == from_json->model);
}

TEST_CASE("json mirror error paths") {
    CHECK(parse_model_json("{ not json").error.cls == ErrClass::Parse);
    CHECK(parse_model_json("{}").error.cls == ErrClass::Parse);
    CHECK(parse_model_json(R"({"name": "m", "layers": [{"name": "d", "kind": "nope"}]})")
              .error.cls == ErrClass::Parse);
    // structurally fine, semantically invalid
    CHECK(parse_model_json(R"({"name": "m", "layers": []})").error.cls == ErrClass::Validation);
}

TEST_CASE("file parsing dispatches on extension and reports io errors") {
    auto r = parse_model_file("/nonexistent/path/model.nn");
    REQUIRE(!r.ok());
    CHECK(r.error.cls == ErrClass::Io);
    CHECK(r.error.message.find("/nonexistent/path/model.nn") != std::string::npos);
}
