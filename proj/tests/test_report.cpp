#include "moment_fiber/report.hpp"
#include "oracle/oracle.hpp"

#include <gtest/gtest.h>

namespace mf = moment_fiber;
namespace rp = moment_fiber::report;
using mf::Rational;

namespace {

rp::AnalysisReport analyze_text(const std::string& text) { return rp::analyze(rp::parse_weights(text)); }

}  // namespace

TEST(Rationals, AlwaysSlashForm) {
    EXPECT_EQ(rp::format_rational(Rational(3)), "3/1");
    EXPECT_EQ(rp::format_rational(Rational(-2, 6)), "-1/3");
    EXPECT_EQ(rp::format_rational(Rational(0)), "0/1");
}

TEST(Rationals, ParseAcceptsIntegersAndFractions) {
    EXPECT_EQ(rp::parse_rational("3/1"), Rational(3));
    EXPECT_EQ(rp::parse_rational("-4/6"), Rational(-2, 3));
    EXPECT_EQ(rp::parse_rational("7"), Rational(7));
    EXPECT_THROW(rp::parse_rational("1/0"), mf::InputError);
    EXPECT_THROW(rp::parse_rational("1/-2"), mf::InputError);
    EXPECT_THROW(rp::parse_rational("x"), mf::InputError);
    EXPECT_THROW(rp::parse_rational("1.5"), mf::InputError);
}

TEST(ParseWeights, JsonObjectArrayAndCsv) {
    const auto expect = mf::WeightMatrix::from_rows({{1, 0}, {-1, 2}});
    EXPECT_EQ(rp::parse_weights(R"({"weights": [[1, 0], [-1, 2]]})"), expect);
    EXPECT_EQ(rp::parse_weights("[[1,0],[-1,2]]"), expect);
    EXPECT_EQ(rp::parse_weights("# two weights\n1, 0\n-1,2\n"), expect);
    EXPECT_EQ(rp::parse_weights("1,0\r\n-1,2\r\n"), expect);
}

TEST(ParseWeights, CsvErrorsCarryPositions) {
    try {
        rp::parse_weights("1,2\n3,x\n");
        FAIL() << "expected a parse error";
    } catch (const rp::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_EQ(e.column(), 3u);
    }
    try {
        rp::parse_weights("1,2\n3\n");
        FAIL() << "expected a parse error";
    } catch (const rp::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(ParseWeights, JsonErrorsCarryPositions) {
    try {
        rp::parse_weights("{\"weights\": [[1, 2],\n [3, ]]}");
        FAIL() << "expected a parse error";
    } catch (const rp::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_GT(e.column(), 1u);
    }
    EXPECT_THROW(rp::parse_weights(R"({"w": [[1]]})"), rp::ParseError);
    EXPECT_THROW(rp::parse_weights(R"({"weights": [[1.5]]})"), rp::ParseError);
    EXPECT_THROW(rp::parse_weights(R"({"weights": []})"), rp::ParseError);
    EXPECT_THROW(rp::parse_weights(R"({"weights": [[1], [2, 3]]})"), mf::InputError);
    EXPECT_THROW(rp::parse_weights("   "), rp::ParseError);
}

TEST(Analyze, OppositePair) {
    const auto r = analyze_text("[[1],[-1]]");
    EXPECT_TRUE(r.stable);
    EXPECT_TRUE(r.visible);
    EXPECT_TRUE(r.irreducible);
    EXPECT_TRUE(r.normal);
    EXPECT_TRUE(r.polarity.polar);
    EXPECT_EQ(r.fiber_dimension, 3u);
}

TEST(Analyze, ZeroWeight) {
    const auto r = analyze_text("[[1],[0]]");
    EXPECT_EQ(r.component_count, 2);
    EXPECT_FALSE(r.normal);
}

TEST(Analyze, NonVisibleCarriesReasonAndWitness) {
    const auto r = analyze_text("[[1],[1],[-2]]");
    EXPECT_TRUE(r.stable);
    EXPECT_FALSE(r.visible);
    ASSERT_TRUE(r.not_visible.has_value());
    EXPECT_FALSE(r.not_visible->reason.empty());
    ASSERT_TRUE(r.witness.has_value());
}

TEST(Json, RationalsAreStrings) {
    const auto j = rp::to_json(analyze_text("[[1],[-1]]"));
    const auto& c = j["certificates"]["stable"]["inside"];
    ASSERT_TRUE(c.is_array());
    EXPECT_EQ(c[0], "1/2");
    EXPECT_EQ(j["certificates"]["visible"]["blocks"][0]["indices"], (rp::json{1, 2}));
    EXPECT_EQ(j["components"]["count"], "1");
}

TEST(Json, FloatHintAddsApproximations) {
    const auto j = rp::to_json(analyze_text("[[1],[-1]]"), true);
    EXPECT_EQ(j["certificates"]["stable"]["inside"][0], "1/2");
    EXPECT_DOUBLE_EQ(j["certificates"]["stable"]["inside_approx"][0].get<double>(), 0.5);
}

TEST(Json, RoundTripsOnRandomReports) {
    mf::oracle::Rng rng(77);
    for (int t = 0; t < 80; ++t) {
        const auto w = mf::oracle::random_weight_matrix(rng, 7, 4, -5, 5);
        const auto r = rp::analyze(w);
        for (bool hint : {false, true}) {
            const auto text = rp::to_json(r, hint).dump();
            EXPECT_EQ(rp::from_json(rp::json::parse(text)), r);
        }
    }
}

TEST(Json, MalformedReportIsInputError) {
    EXPECT_THROW(rp::from_json(rp::json::parse(R"({"weights": [[1]]})")), mf::InputError);
}

TEST(Text, FlagsAndColor) {
    const auto r = analyze_text("[[1],[0]]");
    const auto plain = rp::to_text(r);
    EXPECT_NE(plain.find("components: 2"), std::string::npos);
    EXPECT_EQ(plain.find("\033["), std::string::npos);
    EXPECT_NE(rp::to_text(r, true).find("\033[32m"), std::string::npos);
}

TEST(KacSpec, Parses) {
    auto q = rp::parse_kac_spec("E6 twist=1 labels=1,1,0,1,1,1,1");
    EXPECT_EQ(mf::theta::type_name(q.type), "E6");
    EXPECT_EQ(q.twist, 1);
    EXPECT_EQ(q.labels, (std::vector<int>{1, 1, 0, 1, 1, 1, 1}));
    EXPECT_FALSE(q.scan);
    q = rp::parse_kac_spec("E7 twist=1 scan");
    EXPECT_TRUE(q.scan);
    q = rp::parse_kac_spec("F4 labels=1,1,0,1,1 order=bourbaki");
    EXPECT_EQ(q.order, mf::theta::NodeOrder::Bourbaki);
}

TEST(KacSpec, Rejects) {
    EXPECT_THROW(rp::parse_kac_spec(""), mf::InputError);
    EXPECT_THROW(rp::parse_kac_spec("E6"), mf::InputError);
    EXPECT_THROW(rp::parse_kac_spec("E6 twist=4 scan"), mf::InputError);
    EXPECT_THROW(rp::parse_kac_spec("E6 labels=1,a"), mf::InputError);
    EXPECT_THROW(rp::parse_kac_spec("E6 colour=red scan"), mf::InputError);
    EXPECT_THROW(rp::parse_kac_spec("E9 scan"), mf::InputError);
    EXPECT_THROW(rp::parse_kac_spec("E6 bogus"), mf::InputError);
}
