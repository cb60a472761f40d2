#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "roofcheck/bundles.hpp"

using namespace roofcheck;

static PieceSum eval(const std::string& s) { return normalize(parse_expr(s)); }

static Piece single(const PieceSum& s) {
    REQUIRE(s.size() == 1);
    REQUIRE(s.begin()->second == 1);
    return s.begin()->first;
}

TEST_CASE("atom normal forms") {
    CHECK(single(eval("O")) == make_line(0, 0));
    Piece v = single(eval("V"));
    CHECK(v.f[V4] == GLWeight{1, 1, 1, 0});
    CHECK(v.a == -1);
    CHECK(v.b == -1);
    CHECK(piece_rank(v) == 4);
    Piece up = single(eval("U+"));
    CHECK(up.f[UP] == GLWeight{1, 1, 1, 1, 0});
    CHECK(up.a == -2);
    CHECK(up.b == 0);
    CHECK(piece_rank(up) == 5);
    Piece um = single(eval("U-"));
    CHECK(um.f[UM] == GLWeight{1, 1, 1, 1, 0});
    CHECK(um.a == 0);
    CHECK(um.b == -2);
    CHECK(single(eval("dual(V)")) == make_piece(V4, {1, 0, 0, 0}, 0, 0));
    CHECK(single(eval("dual(U+)")) == make_piece(UP, {1, 0, 0, 0, 0}, 0, 0));
    CHECK_THROWS_AS(eval("Ttilde"), std::domain_error);
    CHECK_THROWS_AS(eval("F(1,0)"), std::domain_error);
}

TEST_CASE("determinants fold into the twist") {
    CHECK(single(eval("wedge4(dual(V))")) == make_line(1, 1));
    CHECK(single(eval("wedge5(dual(U+))")) == make_line(2, 0));
    CHECK(single(eval("wedge5(dual(U-))")) == make_line(0, 2));
    CHECK(single(eval("wedge4(V)")) == make_line(-1, -1));
    CHECK(single(eval("wedge5(U-)")) == make_line(0, -2));
}

TEST_CASE("roof label dictionary") {
    CHECK(roof_label(single(eval("O"))) == Weight{{0, 0, 0, 0, 0}});
    CHECK(roof_label(single(eval("O(2,-3)"))) == Weight{{0, 0, 0, 2, -3}});
    CHECK(roof_label(single(eval("dual(V)"))) == Weight{{1, 0, 0, 0, 0}});
    CHECK(roof_label(single(eval("wedge2(dual(V))"))) == Weight{{0, 1, 0, 0, 0}});
    CHECK(roof_label(single(eval("wedge3(dual(V))"))) == Weight{{0, 0, 1, 0, 0}});
    CHECK(roof_label(single(eval("sym2(dual(V))"))) == Weight{{2, 0, 0, 0, 0}});
    CHECK(roof_label(single(eval("V"))) == Weight{{0, 0, 1, -1, -1}});
    // wedge3(V) = dual tautological twisted down by the determinant
    CHECK(single(eval("wedge3(V)")) == make_piece(V4, {1, 0, 0, 0}, -1, -1));

    for (const Weight& w : {Weight{{0, 0, 0, 0, 0}}, Weight{{1, 0, 2, -3, 4}},
                            Weight{{2, 1, 0, 5, -5}}, Weight{{0, 3, 1, -1, 0}}}) {
        Piece p = piece_from_roof_label(w);
        CHECK(roof_label(p) == w);
        CHECK(single(eval(print_expr(make_irred(w)))) == p);
    }
    CHECK_THROWS_AS(piece_from_roof_label(Weight{{-1, 0, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("spinor side dictionaries") {
    CHECK(*spinor_plus_label(single(eval("dual(U+)"))) == Weight{{1, 0, 0, 0, 0}});
    CHECK(*spinor_plus_label(single(eval("wedge2(dual(U+))"))) == Weight{{0, 1, 0, 0, 0}});
    CHECK(*spinor_plus_label(single(eval("wedge3(dual(U+))"))) == Weight{{0, 0, 1, 0, 0}});
    CHECK(*spinor_plus_label(single(eval("wedge4(dual(U+))"))) == Weight{{0, 0, 0, 1, 1}});
    CHECK(*spinor_plus_label(single(eval("U+(2,0)"))) == Weight{{0, 0, 0, 1, 1}});
    CHECK(*spinor_minus_label(single(eval("dual(U-)"))) == Weight{{1, 0, 0, 0, 0}});
    CHECK(*spinor_minus_label(single(eval("wedge4(dual(U-))"))) == Weight{{0, 0, 0, 1, 1}});
    CHECK(!spinor_plus_label(single(eval("O(0,1)"))).has_value());
    CHECK(!spinor_plus_label(single(eval("dual(U-)"))).has_value());
    CHECK(spinor_plus_label(single(eval("O(3,0)")))->a == std::array<int64_t, 5>{0, 0, 0, 3, 0});
}

TEST_CASE("tensor decompositions") {
    PieceSum vv = eval("V * dual(V)");
    CHECK(vv.size() == 2);
    CHECK(vv.at(make_line(0, 0)) == 1);
    CHECK(vv.at(make_piece(V4, {2, 1, 1, 0}, -1, -1)) == 1);
    CHECK(sum_rank(vv) == 16);

    CHECK(normalize(parse_expr("V * dual(U+)")) == normalize(parse_expr("dual(U+) * V")));

    PieceSum s = eval("U- * wedge2(dual(U-))(0,-2)");
    CHECK(s.size() == 2);
    std::vector<Weight> labels;
    for (const auto& [p, m] : s) {
        CHECK(m == 1);
        labels.push_back(*spinor_minus_label(p));
    }
    CHECK(std::count(labels.begin(), labels.end(), Weight{{0, 1, 0, 1, -3}}) == 1);
    CHECK(std::count(labels.begin(), labels.end(), Weight{{1, 0, 0, 0, -2}}) == 1);

    CHECK(*spinor_minus_label(single(eval("U- * wedge5(dual(U-))(0,-8)"))) ==
          Weight{{0, 0, 0, 1, -7}});
}

TEST_CASE("schur power edge cases") {
    CHECK(single(eval("wedge0(Ttilde4 * F)")) == make_line(0, 0));
    CHECK(single(eval("sym0(U+)")) == make_line(0, 0));
    CHECK(eval("wedge6(dual(U+))").empty());
    CHECK(eval("wedge2(O(1,-1))").empty());
    CHECK(single(eval("sym3(O(1,-1))")) == make_line(3, -3));
    CHECK(piece_rank(single(eval("sym3(dual(U-))"))) == 35);
    CHECK(piece_rank(single(eval("sym2(V)"))) == 10);
    CHECK_THROWS_AS(eval("wedge2(V * V)"), std::invalid_argument);
    CHECK_THROWS_AS(eval("sym2(sym2(dual(V)))"), std::invalid_argument);
}

TEST_CASE("duality is an involution and preserves rank") {
    for (const char* s : {"V", "U+", "U-", "sym2(dual(U+))", "wedge2(U-)(3,-1)",
                          "V * dual(U-)", "E[1 2 0 -1 3]", "U+ * U- * dual(V)(0,1)"}) {
        PieceSum x = eval(s);
        CHECK(sum_dual(sum_dual(x)) == x);
        CHECK(sum_rank(sum_dual(x)) == sum_rank(x));
    }
}

TEST_CASE("pieri filtration of the plus tautological bundle") {
    auto filt = v4_filtration(single(eval("dual(U+)")));
    REQUIRE(filt.size() == 2);
    CHECK(filt[0].first == 1);
    CHECK(filt[0].second == PieceSum{{make_line(1, -1), 1}});
    CHECK(filt[1].first == 0);
    CHECK(filt[1].second == PieceSum{{make_piece(V4, {1, 0, 0, 0}, 0, 0), 1}});

    auto mf = v4_filtration(single(eval("dual(U-)")));
    REQUIRE(mf.size() == 2);
    CHECK(mf[0].second == PieceSum{{make_line(-1, 1), 1}});
}

TEST_CASE("pieri filtration conserves rank") {
    for (const char* s : {"dual(U+)", "U-", "sym2(dual(U+))", "wedge2(dual(U-))(1,0)",
                          "wedge3(dual(U+))", "U+ * dual(U-)", "sym2(dual(U+)) * V(0,-1)"}) {
        Piece p = single(eval(s));
        auto filt = v4_filtration(p);
        mpz_class total = 0;
        int last_depth = filt.empty() ? 0 : filt.front().first + 1;
        for (const auto& [d, layer] : filt) {
            CHECK(d < last_depth);
            last_depth = d;
            for (const auto& [q, m] : layer) {
                CHECK(q.pure(V4) + q.is_line() == 1);
                total += m * piece_rank(q);
            }
        }
        CHECK(total == piece_rank(p));
    }
}

TEST_CASE("pure v4 pieces have a trivial filtration") {
    Piece p = single(eval("sym2(dual(V))(1,-2)"));
    auto filt = v4_filtration(p);
    REQUIRE(filt.size() == 1);
    CHECK(filt[0].first == 0);
    CHECK(filt[0].second == PieceSum{{p, 1}});
}
