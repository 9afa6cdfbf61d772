#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "certquad/convexity.hpp"
#include "certquad/errors.hpp"
#include "certquad/expr.hpp"
#include "certquad/harness.hpp"
#include "certquad/jet.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

using namespace certquad;

TEST_CASE("suite names round trip") {
    const std::vector<Suite> suites = all_suites();
    CHECK(suites.size() == 11);
    for (Suite s : suites) {
        const auto back = suite_from_name(suite_name(s));
        REQUIRE(back.has_value());
        CHECK(*back == s);
    }
    CHECK(suite_name(Suite::LemmaIdentity) == std::string("lemma-identity"));
    CHECK(suite_name(Suite::Thm21) == std::string("thm21"));
    CHECK(suite_name(Suite::Hh) == std::string("hh"));
    CHECK(suite_name(Suite::Reductions) == std::string("reductions"));
    CHECK(suite_name(Suite::Tightness) == std::string("tightness"));
    CHECK_FALSE(suite_from_name("thm99").has_value());
    CHECK_FALSE(suite_from_name("").has_value());
}

TEST_CASE("records are a pure function of seed and index") {
    const SuiteRun serial = run_suite(Suite::Thm21, 40, 123, 1);
    const SuiteRun parallel = run_suite(Suite::Thm21, 40, 123, 4);
    REQUIRE(serial.records.size() == 40);
    CHECK(serial.records == parallel.records);
    CHECK(serial.summary.passes == parallel.summary.passes);
    CHECK(serial.summary.min_margin == parallel.summary.min_margin);
    CHECK(serial.summary.argmin_index == parallel.summary.argmin_index);

    for (long i : {0L, 17L, 39L}) CHECK(run_trial(Suite::Thm21, 123, i) == serial.records[i]);

    const SuiteRun other = run_suite(Suite::Thm21, 40, 124, 1);
    CHECK(other.records != serial.records);

    CHECK_THROWS_AS(run_suite(Suite::Thm21, 0, 1), Error);
}

TEST_CASE("generated functions satisfy their advertised hypotheses") {
    for (int n : {1, 2, 3}) {
        for (long i = 0; i < 25; ++i) {
            TrialRng rng(501, i * 3 + n);
            const TrialFunction tf = draw_function(FamilyKind::PolyNonnegNth, rng, n);
            CHECK(tf.a >= -3.0);
            CHECK(tf.a <= 3.0);
            CHECK(tf.b - tf.a >= 0.125);
            CHECK(tf.b - tf.a <= 4.0);
            CHECK(check_convexity(tf.ast, tf.a, tf.b, n, ConvexityProperty::AbsNthConvex,
                                  1.0, 65)
                      .ok());
            CHECK(check_convexity(tf.ast, tf.a, tf.b, n, ConvexityProperty::AbsNthConvex,
                                  2.0, 65)
                      .ok());
        }
    }
    for (int n : {1, 2, 3}) {
        for (long i = 0; i < 25; ++i) {
            TrialRng rng(502, i * 3 + n);
            const TrialFunction tf = draw_function(FamilyKind::ExpScaled, rng, n);
            CHECK(check_convexity(tf.ast, tf.a, tf.b, n, ConvexityProperty::AbsNthConvex,
                                  1.0, 65)
                      .ok());
        }
    }
    for (double q : {1.5, 2.0, 4.0}) {
        for (long i = 0; i < 25; ++i) {
            TrialRng rng(503, i);
            const TrialFunction tf = draw_function(FamilyKind::SqrtConcaveQ, rng, 2, q);
            CHECK(tf.q == q);
            CHECK(check_convexity(tf.ast, tf.a, tf.b, 2, ConvexityProperty::AbsNthQConcave,
                                  q, 65)
                      .ok());
        }
    }
    CHECK_THROWS_AS([] {
        TrialRng rng(1, 1);
        draw_function(FamilyKind::PolyExact, rng, 0);
    }(),
                    Error);
}

TEST_CASE("sources reparse to bit-identical functions") {
    const FamilyKind kinds[] = {FamilyKind::PolyNonnegNth, FamilyKind::ExpScaled,
                                FamilyKind::SqrtConcaveQ, FamilyKind::TrigWindow,
                                FamilyKind::PolyExact};
    for (FamilyKind kind : kinds) {
        for (long i = 0; i < 10; ++i) {
            TrialRng rng(777, i);
            const TrialFunction tf = draw_function(kind, rng, 2);
            const ExpressionAst again = parse(tf.source);
            for (double t : {tf.a, tf.a + (tf.b - tf.a) / 2, tf.b}) {
                const Jet lhs = eval_jet(tf.ast, t, 2);
                const Jet rhs = eval_jet(again, t, 2);
                CHECK(lhs.d == rhs.d);
            }
            if (kind == FamilyKind::PolyExact) CHECK(tf.ast.exact_capable());
        }
    }
}

TEST_CASE("thirty-trial smoke run of every suite") {
    for (Suite s : all_suites()) {
        INFO("suite ", suite_name(s));
        const SuiteRun run = run_suite(s, 30, 2024);
        CHECK(run.summary.all_pass);
        CHECK(run.summary.trials == 30);
        CHECK(run.summary.passes == 30);
        REQUIRE(run.records.size() == 30);
        double min_margin = run.records[0].margin;
        for (long i = 0; i < 30; ++i) {
            const TrialRecord& r = run.records[i];
            CHECK(r.index == i);
            CHECK(r.suite == suite_name(s));
            CHECK(r.seed == 2024);
            CHECK(r.pass);
            min_margin = std::min(min_margin, r.margin);
        }
        CHECK(run.summary.min_margin == min_margin);
        CHECK(run.records[run.summary.argmin_index].margin == min_margin);
        if (s == Suite::Reductions) CHECK(run.summary.max_discrepancy <= 1e-12);
        if (s == Suite::LemmaIdentity) CHECK(run.summary.max_discrepancy <= 1e-9);
        if (s == Suite::Tightness) CHECK(run.summary.max_discrepancy <= 1e-10);
    }
}

TEST_CASE("holder suite draws the advertised exponents") {
    const SuiteRun run = run_suite(Suite::Thm22, 60, 11);
    const std::set<double> allowed{1.1, 1.5, 2.0, 3.0, 10.0};
    std::set<double> seen;
    for (const TrialRecord& r : run.records) {
        CHECK(allowed.count(r.p) == 1);
        CHECK(std::abs(r.q - r.p / (r.p - 1)) <= 1e-12 * r.q);
        seen.insert(r.p);
    }
    CHECK(seen.size() == allowed.size());
}

TEST_CASE("json report round trip") {
    const SuiteRun run = run_suite(Suite::Thm22, 25, 7);
    std::ostringstream oss;
    emit_report(run.records, ReportFormat::Json, oss);
    CHECK(parse_records_json(oss.str()) == run.records);
}

TEST_CASE("csv report round trip") {
    const SuiteRun run = run_suite(Suite::Thm22, 25, 7);
    std::ostringstream oss;
    emit_report(run.records, ReportFormat::Csv, oss);
    CHECK(parse_records_csv(oss.str()) == run.records);
}

TEST_CASE("awkward field values survive serialization") {
    TrialRecord r;
    r.suite = "thm21";
    r.fn = "sin(x), \"quoted\" + tab\there";
    r.a = -3.0;
    r.b = 0.921875;
    r.x = -1.0390625;
    r.n = 8;
    r.p = 1.1;
    r.q = 11.000000000000002;
    r.lhs = 1.0 / 3;
    r.rhs = 0.40824829046386302;
    r.margin = r.rhs - r.lhs;
    r.pass = false;
    r.seed = 18446744073709551615ULL;
    r.index = 123456789;
    std::vector<TrialRecord> recs{r};

    std::ostringstream csv;
    emit_report(recs, ReportFormat::Csv, csv);
    CHECK(parse_records_csv(csv.str()) == recs);

    recs[0].fn += "\nsecond line";
    std::ostringstream json;
    emit_report(recs, ReportFormat::Json, json);
    CHECK(parse_records_json(json.str()) == recs);
}

TEST_CASE("report file overload and failure modes") {
    const SuiteRun run = run_suite(Suite::Thm21, 5, 3);
    const std::string path = "/tmp/certquad_report_roundtrip.json";
    emit_report(run.records, ReportFormat::Json, path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(parse_records_json(buf.str()) == run.records);

    std::ostringstream text;
    emit_report(run.records, ReportFormat::Text, text);
    CHECK(text.str().find("thm21") != std::string::npos);

    const std::vector<TrialRecord> none;
    std::ostringstream sink;
    CHECK_THROWS_AS(emit_report(none, ReportFormat::Json, sink), Error);
    CHECK_THROWS_AS(emit_report(run.records, ReportFormat::Json,
                                std::string("/nonexistent-dir/report.json")),
                    Error);

    CHECK_THROWS_AS(parse_records_json("[{"), Error);
    CHECK_THROWS_AS(parse_records_json("{}"), Error);
    CHECK_THROWS_AS(parse_records_json("[{\"suite\":1}]"), Error);
    CHECK_THROWS_AS(parse_records_csv(""), Error);
    CHECK_THROWS_AS(parse_records_csv("wrong,header\n"), Error);
    CHECK_THROWS_AS(
        parse_records_csv("suite,fn,a,b,x,n,p,q,lhs,rhs,margin,pass,seed,index\n1,2,3\n"),
        Error);
}

TEST_CASE("ratio profile of a fixed expression") {
    const ExpressionAst f = parse("x^2");
    const std::vector<RatioRow> rows =
        ratio_profile(f, 0, 1, 2, {0.25, 0.5, 0.75});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].x == 0.25);
    CHECK(rows[1].x == 0.5);
    CHECK(rows[2].x == 0.75);
    for (const RatioRow& r : rows) {
        CHECK(r.mean == r.min);
        CHECK(r.mean == r.max);
        CHECK(r.mean > 0);
        CHECK(r.mean <= 1.0 + 1e-12);
    }
    // The bound is sharp at the midpoint for a pure quadratic with n = 2.
    CHECK(std::abs(rows[1].mean - 1.0) <= 1e-10);
    // Reflecting x about the midpoint reflects the rule and the bound.
    CHECK(std::abs(rows[0].mean - rows[2].mean) <= 1e-12);

    CHECK_THROWS_AS(ratio_profile(f, 0, 1, 2, {1.5}), Error);
    CHECK_THROWS_AS(ratio_profile(f, 0, 1, 1, {0.5}, BoundFamily::DaT11), Error);
}

TEST_CASE("ratio profile over random draws") {
    const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    const std::vector<RatioRow> rows =
        ratio_profile(FamilyKind::PolyNonnegNth, 2, grid, 40, 99);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].x == grid[i]);
        CHECK(rows[i].min >= 0);
        CHECK(rows[i].min <= rows[i].mean);
        CHECK(rows[i].mean <= rows[i].max);
        CHECK(rows[i].max <= 1.0 + 1e-9);
    }

    const std::vector<RatioRow> again =
        ratio_profile(FamilyKind::PolyNonnegNth, 2, grid, 40, 99);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].mean == again[i].mean);
        CHECK(rows[i].min == again[i].min);
        CHECK(rows[i].max == again[i].max);
    }

    CHECK_THROWS_AS(ratio_profile(FamilyKind::PolyNonnegNth, 2, {1.5}, 10, 1), Error);
    CHECK_THROWS_AS(ratio_profile(FamilyKind::PolyNonnegNth, 2, grid, 0, 1), Error);
    CHECK_THROWS_AS(ratio_profile(FamilyKind::PolyNonnegNth, 2, grid, 10, 1,
                                  BoundFamily::DaT12),
                    Error);
}

TEST_CASE("per-trial rng streams") {
    TrialRng r1(9, 4);
    TrialRng r2(9, 4);
    for (int i = 0; i < 64; ++i) CHECK(r1.next() == r2.next());

    TrialRng r3(9, 5);
    bool all_same = true;
    TrialRng r4(9, 4);
    for (int i = 0; i < 8; ++i) all_same = all_same && (r3.next() == r4.next());
    CHECK_FALSE(all_same);

    TrialRng u(31, 0);
    std::set<long> seen;
    for (int i = 0; i < 200; ++i) {
        const double v = u.uniform(2.0, 5.0);
        CHECK(v >= 2.0);
        CHECK(v < 5.0);
        const long k = u.uniform_int(3, 7);
        CHECK(k >= 3);
        CHECK(k <= 7);
        seen.insert(k);
    }
    CHECK(seen.size() == 5);
}
