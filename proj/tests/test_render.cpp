#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/render.hpp"
#include "core/sweep.hpp"
#include "json.hpp"

using namespace nncost;

namespace {

MetricReport fixture_report() {
    return analyze(fixture_model());
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("human-readable counts") {
    CHECK(fmt_human_count(0) == "0");
    CHECK(fmt_human_count(999) == "999");
    CHECK(fmt_human_count(1234) == "1,234");
    CHECK(fmt_human_count(2250000) == "2,250,000");
    CHECK(fmt_human_count(1000000000) == "1,000,000,000"); // inclusive threshold
    CHECK(fmt_human_count(1000000001) == "1.000e+09");
    CHECK(fmt_human_count(2250000000ull) == "2.250e+09");
    CHECK(fmt_human_count(1984589000ull) == "1.985e+09"); // rounds half up
    CHECK(fmt_human_count(9999499999ull) == "9.999e+09");
    CHECK(fmt_human_count(9999500000ull) == "1.000e+10"); // mantissa carry
    u128 huge = u128(10000000000000000000ull) * 10; // 1e20
    CHECK(fmt_human_count(huge) == "1.000e+20");
}

TEST_CASE("percent formatting rounds half up to one decimal") {
    CHECK(fmt_pct(40, 1) == "40.0");
    CHECK(fmt_pct(383, 10) == "38.3");
    CHECK(fmt_pct(5, 100) == "0.1");   // 0.05 rounds up
    CHECK(fmt_pct(25, 1000) == "0.0"); // 0.025 rounds down
    CHECK(fmt_pct(1, 16) == "0.1");    // 0.0625
    CHECK(fmt_pct(0, 5) == "0.0");
    CHECK(fmt_pct(100, 1) == "100.0");
}

TEST_CASE("analyze report rendering") {
    MetricReport r = fixture_report();

    SUBCASE("text uses human-readable counts and a total row") {
        std::string s = render_report(r, Format::Text);
        CHECK(contains(s, "2,000,000"));
        CHECK(contains(s, "1.985e+09")); // bop total
        CHECK(contains(s, "total"));
        CHECK(!contains(s, "\x1b"));     // no escape codes unless asked
    }
    SUBCASE("json carries the envelope and exact totals") {
        auto j = nlohmann::json::parse(render_report(r, Format::Json));
        CHECK(j["tool"] == "nncost");
        CHECK(j["version"] == "1.0.0");
        CHECK(j["report"] == "analyze");
        CHECK(j["bop_mode"] == "table");
        CHECK(j["totals"]["bop"] == 1984589000);
        CHECK(j["layers"].size() == 6);
        CHECK(j["layers"][0]["rm"] == 2000000);
        CHECK(!j.contains("generated_at"));
    }
    SUBCASE("timestamp only on request, json only") {
        RenderOpts stamped;
        stamped.timestamp = true;
        auto j = nlohmann::json::parse(render_report(r, Format::Json, stamped));
        CHECK(j.contains("generated_at"));
        CHECK(!contains(render_report(r, Format::Csv, stamped), "generated_at"));
        CHECK(!contains(render_report(r, Format::Text, stamped), "generated_at"));
    }
    SUBCASE("ansi styling is opt-in") {
        RenderOpts ansi;
        ansi.ansi = true;
        CHECK(contains(render_report(r, Format::Text, ansi), "\x1b["));
    }
    SUBCASE("output is deterministic") {
        for (Format f : {Format::Text, Format::Csv, Format::Json})
            CHECK(render_report(r, f) == render_report(r, f));
    }
}

TEST_CASE("csv analyze rows are exact") {
    std::string s = render_report(fixture_report(), Format::Csv);
    CHECK(contains(s, "layer,kind,rm,bop,nabs"));
    CHECK(contains(s, "dense,dense,2000000,180000000,416000000"));
    CHECK(contains(s, "total,,22590000,1984589000,4304479000"));
    CHECK(!contains(s, ", ")); // no padding in csv
}

TEST_CASE("values past 64 bits render as json strings") {
    ModelSpec m{"big", {{"d", DenseSpec{1000000000, 1000000000}, {8, 8, 8, 8},
                         QuantScheme::uniform()}}};
    MetricReport r = analyze(m);
    auto j = nlohmann::json::parse(render_report(r, Format::Json));
    // rm = 1e18 still fits a u64; bop = 1e18 * (64 + 46) = 1.1e20 does not
    CHECK(j["layers"][0]["rm"] == 1000000000000000000ull);
    REQUIRE(j["layers"][0]["bop"].is_string());
    CHECK(j["layers"][0]["bop"] == "110000000000000000000");
    // text switches to scientific notation instead
    CHECK(contains(render_report(r, Format::Text), "1.100e+20"));
}

TEST_CASE("verification rendering") {
    Verification v;
    v.seed = 7;
    VerifyRow good{"d", "dense", "rm", 30, 30, 0, 0, true};
    VerifyRow bad{"x", "gru", "bop", 100, 90, 10, 4, false};

    SUBCASE("all rows match") {
        v.rows = {good};
        std::string s = render_verification(v, Format::Text);
        CHECK(contains(s, "all rows match"));
        CHECK(contains(s, "ok"));
    }
    SUBCASE("failures are counted and flagged") {
        v.rows = {good, bad};
        std::string s = render_verification(v, Format::Text);
        CHECK(contains(s, "MISMATCH"));
        CHECK(contains(s, "1 row(s) outside documented bounds"));
        std::string csv = render_verification(v, Format::Csv);
        CHECK(contains(csv, "layer,kind,metric,closed,oracle,delta,bound,status"));
        CHECK(contains(csv, "d,dense,rm,30,30,0,0,ok"));
        CHECK(contains(csv, "x,gru,bop,100,90,10,4,mismatch"));
        auto j = nlohmann::json::parse(render_verification(v, Format::Json));
        CHECK(j["seed"] == 7);
        CHECK(j["ok"] == false);
        CHECK(j["rows"][1]["delta"] == 10);
    }
    SUBCASE("negative deltas keep their sign") {
        VerifyRow neg{"c", "conv1d", "bop", 90, 100, -10, 17, true};
        v.rows = {neg};
        CHECK(contains(render_verification(v, Format::Csv), ",-10,"));
    }
}

TEST_CASE("sweep dataset rendering distinguishes missing points") {
    auto p = parse_plan_text(R"(sweep "avail" {
  metric = rm;
  layer "c" conv1d {
    n_i = 1; n_f = 1; n_k = 2; n_s = 2;
    bits { w = 8; i = 8; a = 8; b = 8; }
    quant = uniform;
  }
  axis n_k { start = 2; stop = 4; }
})");
    REQUIRE(p.ok());
    auto d = run_sweep(*p);
    REQUIRE(d.ok());
    REQUIRE(d->points.size() == 3); // n_k = 2 fits, 3 and 4 do not

    std::string csv = render_dataset(*d, Format::Csv);
    CHECK(contains(csv, "n_k,metric,value"));
    CHECK(contains(csv, "2,rm,2"));
    CHECK(contains(csv, "3,rm,NA"));
    CHECK(contains(csv, "4,rm,NA"));

    std::string text = render_dataset(*d, Format::Text);
    CHECK(contains(text, "n/a"));

    auto j = nlohmann::json::parse(render_dataset(*d, Format::Json));
    CHECK(j["report"] == "sweep");
    CHECK(j["plan"]["name"] == "avail");
    CHECK(j["points"][0]["value"] == 2);
    CHECK(j["points"][1]["value"].is_null());
}

TEST_CASE("reduction and scheme rendering") {
    ModelSpec m = fixture_model();
    auto red = bitwidth_reduction(m, "b_w", 8, 4, BopMode::Table);
    REQUIRE(red.ok());
    std::string csv = render_reduction(*red, Format::Csv);
    CHECK(contains(csv, "layer,kind,axis,from_bits,to_bits,bop_from,bop_to,reduction_pct"));
    CHECK(contains(csv, "dense,dense,b_w,8,4,180000000,108000000,40.0"));
    auto j = nlohmann::json::parse(render_reduction(*red, Format::Json));
    CHECK(j["axis"] == "b_w");
    CHECK(j["from_bits"] == 8);
    CHECK(j["to_bits"] == 4);
    CHECK(j["layers"][0]["reduction_pct"] == "40.0");
    std::string text = render_reduction(*red, Format::Text);
    CHECK(contains(text, "40.0%"));

    auto sch = scheme_comparison(m);
    REQUIRE(sch.ok());
    auto sj = nlohmann::json::parse(render_schemes(*sch, Format::Json));
    CHECK(sj["report"] == "compare-schemes");
    CHECK(sj["rows"][0]["scheme"] == "pot");
    CHECK(sj["rows"][0]["nabs"] == 52000000);
    CHECK(contains(render_schemes(*sch, Format::Csv), "layer,kind,x_w,scheme,nabs"));
}

TEST_CASE("gate report rendering") {
    ModelSpec m{"m", {{"d", DenseSpec{6, 5}, {8, 8, 8, 8}, QuantScheme::uniform()}}};
    auto g = model_gates(m, builtin_clb_table(ClbEra::Lut4), 0);
    REQUIRE(g.ok());

    std::string text = render_gates(*g, Format::Text);
    CHECK(contains(text, "estimate"));
    CHECK(contains(text, "12,360"));

    std::string csv = render_gates(*g, Format::Csv);
    CHECK(contains(csv, "layer,kind,scheme,and,xor,or,half_adders,full_adders,flip_flops,"
                        "total_gates,clb_min,clb_max,clb_typical"));
    CHECK(contains(csv, "d,dense,uniform,1920,0,0,270,1980,0,12360,258,824,434"));

    auto j = nlohmann::json::parse(render_gates(*g, Format::Json));
    CHECK(j["report"] == "gates");
    CHECK(j["era"] == "lut4");
    CHECK(j["layers"][0]["gates"]["total"] == 12360);
    CHECK(j["layers"][0]["clbs"]["typical"] == 434);
    CHECK(j["totals"]["gates"]["total"] == 12360);

    SUBCASE("lut6 has no typical column value") {
        auto h = model_gates(m, builtin_clb_table(ClbEra::Lut6), 0);
        REQUIRE(h.ok());
        auto k = nlohmann::json::parse(render_gates(*h, Format::Json));
        CHECK(!k["layers"][0]["clbs"].contains("typical"));
        std::string c6 = render_gates(*h, Format::Csv);
        // trailing typical cell stays empty
        CHECK(contains(c6, "d,dense,uniform,1920,0,0,270,1980,0,12360,40,86,\n"));
    }
}
