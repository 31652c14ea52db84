#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "core/metrics.hpp"
#include "core/sweep.hpp"

using namespace nncost;

namespace {

BitwidthConfig bits8() { return {8, 8, 8, 8}; }

LayerSpec dense(u64 n_i, u64 n_n, QuantScheme q = QuantScheme::uniform(),
                BitwidthConfig b = {8, 8, 8, 8}) {
    return {"d", DenseSpec{n_i, n_n}, b, q};
}

LayerSpec recurrent(RecurrentKind k, u64 n_i, u64 n_h, u64 n_s,
                    QuantScheme q = QuantScheme::uniform()) {
    return {"r", RecurrentSpec{k, n_i, n_h, n_s}, {8, 8, 8, 8}, q};
}

LayerSpec esn(u64 N_r, u64 n_i, u64 n_o, u64 n_s, Dec s_p,
              QuantScheme q = QuantScheme::uniform()) {
    return {"e", ESNSpec{N_r, n_i, n_o, n_s, s_p, Dec(1, 2)}, {8, 8, 8, 8}, q};
}

} // namespace

TEST_CASE("accumulator width") {
    CHECK(acc_width(1, 8, 8) == 16); // single term: no accumulation headroom
    CHECK(acc_width(2, 8, 8) == 17);
    CHECK(acc_width(4, 8, 8) == 18);
    CHECK(acc_width(100, 8, 8) == 23);
    CHECK(acc_width(1000, 8, 8) == 26);
    CHECK(acc_width(1024, 8, 8) == 26); // 2^10 terms still fit 10 carry bits
    CHECK(acc_width(1025, 8, 8) == 27);
    CHECK(acc_width(10000, 8, 8) == 30);
    CHECK(acc_width(100, 4, 8) == 19);
    CHECK(acc_width(1, 1, 1) == 2);
}

TEST_CASE("dot product bit operations") {
    CHECK(mult_bop(1, 8, 8) == 64);
    CHECK(mult_bop(100, 8, 8) == 8677);   // 100*64 + 99*23
    CHECK(mult_bop(100, 4, 8) == 5081);   // 100*32 + 99*19
    CHECK(mult_bop(1000, 8, 8) == 89974); // 1000*64 + 999*26
    CHECK(mult_bop(10000, 8, 8) == 939970);
}

TEST_CASE("dense closed forms at the comparison size") {
    LayerSpec l = dense(1000, 2000);
    CHECK(layer_rm(l) == 2000000);
    CHECK(layer_bop(l) == 180000000);  // 2e6 weights at 64 + 26 bops each
    CHECK(layer_nabs(l) == 416000000); // (7+1) * 2e6 * 26
    CHECK(layer_nabs(dense(1000, 2000, QuantScheme::pot())) == 52000000);
    CHECK(layer_rm(dense(1500, 1500)) == 2250000);
    CHECK(layer_rm(dense(1400, 1400)) == 1960000);
}

TEST_CASE("dense folded table form equals the split exact form") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 200; ++i) {
        u64 n_i = 1 + rng() % 5000;
        u64 n_n = 1 + rng() % 50;
        u64 b_w = 1 + rng() % 16;
        u64 b_i = 1 + rng() % 16;
        LayerSpec l = dense(n_i, n_n, QuantScheme::uniform(), {b_w, b_i, 8, 8});
        CHECK(layer_bop(l, BopMode::Table) == layer_bop(l, BopMode::Exact));
    }
    // and the per-weight cost is b_w*b_i + acc: 64 + 26 = 90 at the fixture
    CHECK(layer_bop(dense(1000, 1)) == u128(90) * 1000);
}

TEST_CASE("dense nabs scales exactly with the adder count") {
    for (u64 terms : {u64(1), u64(3), u64(6)}) {
        u128 apot = layer_nabs(dense(321, 7, QuantScheme::apot(terms)));
        u128 pot = layer_nabs(dense(321, 7, QuantScheme::pot()));
        CHECK(apot == pot * (terms + 1));
    }
    CHECK(layer_nabs(dense(321, 7)) == layer_nabs(dense(321, 7, QuantScheme::pot())) * 8);
}

TEST_CASE("conv1d closed forms at the comparison size") {
    LayerSpec l{"c", Conv1DSpec{100, 1, 100, 300, 0, 1, 1}, bits8(), QuantScheme::uniform()};
    CHECK(layer_rm(l) == 2010000); // 201 positions * 10000-tap window
    CHECK(layer_bop(l) == 188934000);
    CHECK(layer_nabs(l) == 482394000);
    l.quant = QuantScheme::pot();
    CHECK(layer_nabs(l) == 60294000);

    // bias enters once per filter, not once per output position
    CHECK(u128(201) * mult_bop(10000, 8, 8) + 1 * acc_width(10000, 8, 8) == 188934000);
}

TEST_CASE("recurrent closed forms at the comparison size") {
    LayerSpec rnn = recurrent(RecurrentKind::Rnn, 100, 100, 100);
    CHECK(layer_rm(rnn) == 2000000);
    CHECK(layer_bop(rnn) == 174000000); // 17400 per unit-step
    CHECK(layer_nabs(rnn) == 368000000);

    LayerSpec lstm = recurrent(RecurrentKind::Lstm, 100, 100, 100);
    CHECK(layer_rm(lstm) == 8030000); // 4 input + 4 hidden blocks + 3 gatings
    CHECK(layer_bop(lstm) == 698150000);
    CHECK(layer_nabs(lstm) == 1472480000);
    lstm.quant = QuantScheme::pot();
    CHECK(layer_nabs(lstm) == 184480000);

    LayerSpec gru = recurrent(RecurrentKind::Gru, 100, 100, 100);
    CHECK(layer_rm(gru) == 6030000);
    CHECK(layer_bop(gru) == 524380000);
    CHECK(layer_nabs(gru) == 1104940000);
    gru.quant = QuantScheme::pot();
    CHECK(layer_nabs(gru) == 138940000);
}

TEST_CASE("per unit-step recurrent costs decompose as documented") {
    u128 mult_100 = mult_bop(100, 8, 8); // 8677
    u128 acc_100 = acc_width(100, 8, 8); // 23
    CHECK(layer_bop(recurrent(RecurrentKind::Rnn, 100, 100, 1)) ==
          100 * (2 * mult_100 + 2 * acc_100));
    CHECK(layer_bop(recurrent(RecurrentKind::Lstm, 100, 100, 1)) ==
          100 * (8 * mult_100 + 3 * 64 + 9 * acc_100));
    CHECK(layer_bop(recurrent(RecurrentKind::Gru, 100, 100, 1)) ==
          100 * (6 * mult_100 + 3 * 64 + 8 * acc_100));
}

TEST_CASE("esn closed forms at the comparison size") {
    LayerSpec l = esn(100, 100, 100, 100, Dec(1, 2));
    CHECK(layer_rm(l) == 2520000);
    CHECK(layer_bop(l) == 219125000);
    CHECK(layer_nabs(l) == 460665000);
    l.quant = QuantScheme::pot();
    CHECK(layer_nabs(l) == 58165000);

    LayerSpec parts_layer = esn(100, 100, 100, 100, Dec(1, 2));
    const auto& e = std::get<ESNSpec>(parts_layer.params);
    EsnParts rm = esn_rm_parts(e);
    CHECK(rm.fixed == 2020000);     // input, leak, readout terms
    CHECK(rm.sp_coeff == 1000000);  // n_s * N_r^2 reservoir multiplies
    EsnParts bop = esn_bop_parts(e, bits8());
    CHECK(bop.fixed == 175740000);
    CHECK(bop.sp_coeff == 86770000); // n_s * N_r * mult_bop(N_r, 8, 8)
    EsnParts nabs = esn_nabs_parts(e, bits8(), 7);
    CHECK(nabs.fixed == 368780000);
    CHECK(nabs.sp_coeff == 183770000);
}

TEST_CASE("esn metrics round once per layer") {
    // fixed 12, reservoir coefficient 9: 12 + 4.5 rounds half up to 17
    LayerSpec l = esn(3, 1, 1, 1, Dec(1, 2));
    const auto& e = std::get<ESNSpec>(l.params);
    CHECK(esn_rm_parts(e).fixed == 12);
    CHECK(esn_rm_parts(e).sp_coeff == 9);
    CHECK(layer_rm(l) == 17);
    // s_p = 0 and s_p = 1 hit the endpoints exactly
    CHECK(layer_rm(esn(3, 1, 1, 1, Dec(0, 1))) == 12);
    CHECK(layer_rm(esn(3, 1, 1, 1, Dec(1, 1))) == 21);
}

TEST_CASE("esn parts are linear in the step count") {
    LayerSpec l1 = esn(17, 5, 3, 1, Dec(37, 100));
    LayerSpec l2 = esn(17, 5, 3, 2, Dec(37, 100));
    const auto& one = std::get<ESNSpec>(l1.params);
    const auto& two = std::get<ESNSpec>(l2.params);
    CHECK(esn_rm_parts(two).fixed == 2 * esn_rm_parts(one).fixed);
    CHECK(esn_rm_parts(two).sp_coeff == 2 * esn_rm_parts(one).sp_coeff);
    CHECK(esn_bop_parts(two, bits8()).fixed == 2 * esn_bop_parts(one, bits8()).fixed);
    CHECK(esn_bop_parts(two, bits8()).sp_coeff == 2 * esn_bop_parts(one, bits8()).sp_coeff);
    CHECK(esn_nabs_parts(two, bits8(), 3).fixed == 2 * esn_nabs_parts(one, bits8(), 3).fixed);
    CHECK(esn_nabs_parts(two, bits8(), 3).sp_coeff == 2 * esn_nabs_parts(one, bits8(), 3).sp_coeff);
}

TEST_CASE("nabs ordering across schemes: pot <= apot <= uniform") {
    std::vector<LayerSpec> layers = {
        dense(50, 20),
        {"c", Conv1DSpec{4, 3, 5, 40, 0, 1, 1}, bits8(), QuantScheme::uniform()},
        recurrent(RecurrentKind::Rnn, 30, 40, 5),
        recurrent(RecurrentKind::Lstm, 30, 40, 5),
        recurrent(RecurrentKind::Gru, 30, 40, 5),
        esn(40, 10, 5, 5, Dec(1, 2)),
    };
    for (LayerSpec l : layers) {
        l.quant = QuantScheme::pot();
        u128 pot = layer_nabs(l);
        l.quant = QuantScheme::apot(3);
        u128 apot = layer_nabs(l);
        l.quant = QuantScheme::uniform();
        u128 uniform = layer_nabs(l);
        CHECK(pot < apot);
        CHECK(apot < uniform);
    }
}

TEST_CASE("metrics grow monotonically with layer size") {
    auto le3 = [](const LayerSpec& a, const LayerSpec& b) {
        return layer_rm(a) <= layer_rm(b) && layer_bop(a) <= layer_bop(b) &&
               layer_nabs(a) <= layer_nabs(b);
    };
    CHECK(le3(dense(10, 10), dense(11, 10)));
    CHECK(le3(dense(10, 10), dense(10, 11)));
    CHECK(le3(recurrent(RecurrentKind::Lstm, 10, 10, 2), recurrent(RecurrentKind::Lstm, 10, 11, 2)));
    CHECK(le3(recurrent(RecurrentKind::Gru, 10, 10, 2), recurrent(RecurrentKind::Gru, 10, 10, 3)));
    CHECK(le3(esn(10, 4, 4, 2, Dec(1, 2)), esn(11, 4, 4, 2, Dec(1, 2))));
    CHECK(le3(esn(10, 4, 4, 2, Dec(1, 4)), esn(10, 4, 4, 2, Dec(1, 2))));
}

TEST_CASE("bop mode only affects dense accounting") {
    for (LayerSpec l : {recurrent(RecurrentKind::Lstm, 7, 9, 3),
                        esn(9, 3, 2, 4, Dec(37, 100))}) {
        CHECK(layer_bop(l, BopMode::Table) == layer_bop(l, BopMode::Exact));
    }
}

TEST_CASE("analyze sums per-layer rows into totals") {
    MetricReport r = analyze(fixture_model());
    REQUIRE(r.per_layer.size() == 6);
    u128 rm = 0, bop = 0, nabs = 0;
    for (const MetricRow& row : r.per_layer) {
        rm = rm + row.rm;
        bop = bop + row.bop;
        nabs = nabs + row.nabs;
    }
    CHECK(r.rm_total == rm);
    CHECK(r.bop_total == bop);
    CHECK(r.nabs_total == nabs);
    CHECK(r.rm_total == 22590000);
    CHECK(r.bop_total == 1984589000);
    CHECK(r.nabs_total == 4304479000);
    CHECK(r.per_layer[0].kind == "dense");
    CHECK(r.per_layer[5].kind == "esn");
}

TEST_CASE("128-bit headroom at the parameter caps") {
    // largest admissible dense layer with the widest operands
    LayerSpec l = dense(kMaxParam, kMaxParam, QuantScheme::uniform(),
                        {kMaxBits, kMaxBits, kMaxBits, kMaxBits});
    CHECK_NOTHROW(layer_rm(l));
    CHECK_NOTHROW(layer_bop(l));
    CHECK_NOTHROW(layer_nabs(l));
    CHECK(layer_rm(l) == u128(1000000000) * 1000000000);
}
