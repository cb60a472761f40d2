#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roofcheck/ext.hpp"

using namespace roofcheck;

namespace {

ExtTable ext(const std::string& f, const std::string& g) {
    return ext_divisor(parse_expr(f), parse_expr(g));
}

mpz_class pairing(const std::string& f, const std::string& g) {
    return euler_pairing(parse_expr(f), parse_expr(g));
}

CohTable table(std::initializer_list<std::pair<int, int>> entries) {
    CohTable t;
    for (auto [d, v] : entries) t.h[d] = v;
    return t;
}

}  // namespace

TEST_CASE("certified zero pairs") {
    CHECK(ext("O", "O(-2,0)").certified_zero);
    CHECK(ext("O", "O(-2,0)").table.is_zero());
    CHECK(ext("O", "O(-6,1)").certified_zero);
    CHECK(ext("O(1,1)", "dual(U+)(-1,1)").certified_zero);
    CHECK(to_string(ext("O", "O(-2,0)")) == "certified-zero");
}

TEST_CASE("identity object pairs to a point") {
    ExtTable t = ext("O", "O");
    CHECK_FALSE(t.certified_zero);
    CHECK(t.table == table({{0, 1}}));
    CHECK(pairing("O", "O") == 1);
}

TEST_CASE("non-vanishing anchors in degrees 0 and 1") {
    CHECK(ext("U+(1,-1)", "O").table == table({{0, 1}}));
    CHECK(pairing("U+(1,-1)", "O") == 1);
    CHECK(ext("O(2,-2)", "V(1,-1)").table == table({{1, 1}}));
    CHECK(pairing("O(2,-2)", "V(1,-1)") == -1);
}

TEST_CASE("pair order matters") {
    // swapping the anchor pair lands in the certified-zero regime
    CHECK(ext("V(1,-1)", "O(2,-2)").certified_zero);
    CHECK(pairing("V(1,-1)", "O(2,-2)") == 0);
}

TEST_CASE("extension bundles as operands") {
    CHECK(ext("Ttilde(2,-1)", "dual(U+)").table == table({{1, 1}}));
    CHECK(ext("U+(1,-1)", "dual(Ttilde)(-1,0)").table == table({{1, 1}}));
}

TEST_CASE("adjacent supports are refused, Euler pairing still exact") {
    ExtTable t = ext("O(5,5)", "O");
    CHECK(t.table.undetermined);
    CHECK_FALSE(t.certified_zero);
    CHECK(to_string(t) == "undetermined");
    CHECK(pairing("O(5,5)", "O") == -209);
}

TEST_CASE("determinate tables alternate to the Euler pairing") {
    auto pairs = {
        std::pair<const char*, const char*>{"O", "O"},
        {"U+(1,-1)", "O"},
        {"O(2,-2)", "V(1,-1)"},
        {"Ttilde(2,-1)", "dual(U+)"},
        {"V", "V"},
    };
    for (auto [f, g] : pairs) {
        CAPTURE(f);
        CAPTURE(g);
        ExtTable t = ext(f, g);
        REQUIRE_FALSE(t.table.undetermined);
        mpz_class alt = 0;
        for (const auto& [d, v] : t.table.h) alt += (d % 2) ? -v : v;
        CHECK(alt == pairing(f, g));
    }
}

TEST_CASE("certified zero forces zero pairing") {
    for (auto [a, b] : {std::pair<int, int>{-6, 1}, {-5, 1}, {-4, 1}, {-5, 2}, {-4, 2}}) {
        std::string g = "O(" + std::to_string(a) + "," + std::to_string(b) + ")";
        CAPTURE(g);
        REQUIRE(ext("O", g).certified_zero);
        CHECK(pairing("O", g) == 0);
    }
}
