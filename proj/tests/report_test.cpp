#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "phqm/report.hpp"
#include "test_support.hpp"

namespace phqm {
namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

TEST(Csv, HeaderOnlyWithoutRows) {
    ExperimentReport r("x");
    r.column("a", {});
    r.column("b", {});
    EXPECT_EQ(emit_csv(r), "a,b\n");
}

TEST(Csv, RowsInColumnOrder) {
    ExperimentReport r("x");
    r.column("t", {0.0, 0.5, 1.0});
    r.column("v", {1.0, -2.5, 1e-300});
    const auto ls = lines(emit_csv(r));
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0], "t,v");
    EXPECT_EQ(ls[1], "0,1");
    EXPECT_EQ(ls[2], "0.5,-2.5");
    EXPECT_EQ(ls[3], "1,1e-300");
    EXPECT_THROW(r.column("w", {1.0}), std::exception);
}

TEST(FormatDouble, RoundTrips) {
    const double xs[] = {0.1, 1.0 / 3.0, -2.0e-17, 6.02214076e23, std::numeric_limits<double>::min(),
                         std::numeric_limits<double>::max(), 123456789.0};
    for (double x : xs) {
        const std::string s = format_double(x);
        double y = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), y);
        ASSERT_EQ(res.ec, std::errc());
        EXPECT_LE(std::abs(y - x), std::abs(std::nextafter(x, 0.0) - x)) << s;
    }
}

TEST(Json, SchemaKeys) {
    ExperimentReport r("demo");
    r.config()["n"] = 3;
    r.scalar("pi", 3.0);
    r.scalar("z", Complex(1.0, -2.0));
    r.column("t", {0.0, 1.0});
    r.flag("ok", true);
    const Json j = r.to_json();
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "config", "scalars", "series", "flags", "version"}));
    EXPECT_EQ(j["command"], "demo");
    EXPECT_EQ(j["scalars"]["z"]["re"], 1.0);
    EXPECT_EQ(j["scalars"]["z"]["im"], -2.0);
    EXPECT_EQ(j["version"], std::string(kVersion));
    const Json parsed = Json::parse(emit_json(r));
    EXPECT_EQ(parsed, j);
    EXPECT_EQ(emit_json(r).back(), '\n');
}

TEST(Flags, RepeatedFlagsAreAnded) {
    ExperimentReport r("f");
    r.flag("a", true);
    r.flag("b", true);
    EXPECT_TRUE(r.all_pass());
    r.flag("a", false);
    r.flag("a", true);
    EXPECT_FALSE(r.all_pass());
    EXPECT_EQ(r.failures(), std::vector<std::string>{"a"});
}

}  // namespace
}  // namespace phqm
