#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "roofcheck/chessboard.hpp"
#include "roofcheck/sequences.hpp"

using namespace roofcheck;

namespace {

ChessObject obj(const std::string& id, const std::string& base, int c, int r) {
    ChessObject o;
    o.id = id;
    o.base = parse_expr(base);
    o.col = c;
    o.row = r;
    return o;
}

Collection coll(std::initializer_list<ChessObject> objs) {
    Collection c;
    c.objects = objs;
    return c;
}

std::vector<std::string> order_of(const Collection& c) {
    std::vector<std::string> ids;
    for (const auto& o : c.objects) ids.push_back(o.id);
    return ids;
}

}  // namespace

TEST_CASE("effective bundle is the base twisted by the grid position") {
    ChessObject o = obj("x", "dual(U+)", 2, -1);
    CHECK(print_expr(effective(o)) == "dual(U+)(2,-1)");
    CHECK(show(o) == "x:dual(U+)@(2,-1)");
    ChessObject p = obj("y", "O", -3, 4);
    CHECK(print_expr(effective(p)) == "O(-3,4)");
}

TEST_CASE("orthogonality check certifies vanishing line bundle pairs") {
    Collection c = coll({obj("x1", "O", 3, -1), obj("x2", "O", 4, -1), obj("y1", "O", -2, 0),
                         obj("y2", "O", -1, 0)});
    Certificate cert = check_orthogonal(c, {"x1", "x2"}, {"y1", "y2"}, true, "t");
    CHECK(cert.pass);
    CHECK(cert.pairs.size() == 8);
    for (const auto& p : cert.pairs) CHECK(p[2] == "certified-zero");
}

TEST_CASE("orthogonality check fails on a nonvanishing pair and names it") {
    Collection c = coll({obj("a", "O", 0, 0), obj("b", "O", 1, 0)});
    Certificate cert = check_orthogonal(c, {"a"}, {"b"}, true, "t");
    CHECK(!cert.pass);
    bool named = false;
    for (const auto& p : cert.pairs)
        if (p[2] == "nonzero") named = true;
    CHECK(named);
}

TEST_CASE("exchange swaps adjacent mutually orthogonal blocks") {
    Collection c = coll({obj("x1", "O", 3, -1), obj("x2", "O", 4, -1), obj("y1", "O", -2, 0),
                         obj("y2", "O", -1, 0)});
    Certificate cert = do_exchange(c, {"x1", "x2"}, {"y1", "y2"}, "t");
    CHECK(cert.pass);
    CHECK(order_of(c) == std::vector<std::string>{"y1", "y2", "x1", "x2"});
}

TEST_CASE("exchange rejects non adjacent blocks") {
    Collection c = coll({obj("x1", "O", 3, -1), obj("y1", "O", -2, 0), obj("x2", "O", 4, -1)});
    Certificate cert = do_exchange(c, {"x1"}, {"x2"}, "t");
    CHECK(!cert.pass);
    CHECK(order_of(c) == std::vector<std::string>{"x1", "y1", "x2"});
}

TEST_CASE("insert moves one object across certified orthogonal neighbours") {
    Collection c = coll({obj("a", "O", 0, 0), obj("b", "O", 3, -1), obj("c", "O", 4, -1),
                         obj("d", "O", -2, 0)});
    Certificate cert = do_insert(c, "d", "b", true, "t");
    CHECK(cert.pass);
    CHECK(cert.pairs.size() == 4);
    CHECK(order_of(c) == std::vector<std::string>{"a", "d", "b", "c"});
}

TEST_CASE("insert refuses to cross a non orthogonal object") {
    Collection c = coll({obj("a", "O", 0, 0), obj("d", "O", 1, 0)});
    Certificate cert = do_insert(c, "d", "a", true, "t");
    CHECK(!cert.pass);
    CHECK(order_of(c) == std::vector<std::string>{"a", "d"});
}

TEST_CASE("mutation with vanishing ext degenerates to a transposition") {
    Collection c = coll({obj("x", "F", 2, 0), obj("a", "O", -1, 1)});
    Certificate cert = do_mutate(c, false, "x", {"a"}, parse_expr("F"), 2, 0, "t");
    CHECK(cert.pass);
    CHECK(order_of(c) == std::vector<std::string>{"a", "x"});
    CHECK(print_expr(c.objects[1].base) == "F");
}

TEST_CASE("transposition mutation rejects a changed claim") {
    Collection c = coll({obj("x", "F", 2, 0), obj("a", "O", -1, 1)});
    Certificate cert = do_mutate(c, false, "x", {"a"}, parse_expr("F"), 2, 1, "t");
    CHECK(!cert.pass);
}

TEST_CASE("left mutation through the structure sheaf turns the dual subbundle around") {
    Collection c = coll({obj("a", "O", 0, -1), obj("x", "dual(U-)", 0, -1)});
    Certificate cert = do_mutate(c, true, "x", {"a"}, parse_expr("U-"), 0, -1, "t");
    CHECK(cert.pass);
    CHECK(order_of(c) == std::vector<std::string>{"x", "a"});
    CHECK(print_expr(c.objects[0].base) == "U-");
    bool shifted = false;
    for (const auto& n : cert.notes)
        if (n.find("shifted") != std::string::npos) shifted = true;
    CHECK(shifted);
}

TEST_CASE("mutation flags a claim whose class breaks the index identity") {
    Collection c = coll({obj("a", "O", 0, -1), obj("x", "dual(U-)", 0, -1)});
    Certificate cert = do_mutate(c, true, "x", {"a"}, parse_expr("U-"), 1, -1, "t");
    CHECK(!cert.pass);
    CHECK(!cert.kclass_delta.empty());
}

TEST_CASE("rewrite accepts a claim linked by cited sequences with spanned class difference") {
    Collection c = coll({obj("x", "F", 1, -2), obj("g1", "O", 1, -4), obj("g2", "dual(U-)", 1, -4),
                         obj("g3", "O", 0, -2), obj("g4", "U-", 0, -1)});
    std::vector<SeqUse> uses = {{"F_SEQ_MINUS", 1, -2, false},
                                {"TAUT_S_MINUS", 0, -2, false},
                                {"EULER_SO_MINUS", 1, -4, false}};
    Placement stay;
    Certificate cert = do_rewrite(c, "x", parse_expr("U-"), 1, -4, stay, uses, "t");
    CHECK(cert.pass);
    CHECK(print_expr(c.objects[0].base) == "U-");
    CHECK(c.objects[0].col == 1);
    CHECK(c.objects[0].row == -4);
}

TEST_CASE("rewrite fails when the citations do not connect old and new bundles") {
    Collection c = coll({obj("x", "F", 1, -2), obj("g1", "O", 1, -4), obj("g2", "dual(U-)", 1, -4),
                         obj("g3", "O", 0, -2), obj("g4", "U-", 0, -1)});
    std::vector<SeqUse> uses = {{"TAUT_S_MINUS", 0, -2, false}};
    Placement stay;
    Certificate cert = do_rewrite(c, "x", parse_expr("U-"), 1, -4, stay, uses, "t");
    CHECK(!cert.pass);
}

TEST_CASE("rewrite fails when the class difference leaves the remaining lattice") {
    Collection c = coll({obj("x", "F", 1, -2), obj("g1", "O", 1, -4)});
    std::vector<SeqUse> uses = {{"F_SEQ_MINUS", 1, -2, false},
                                {"TAUT_S_MINUS", 0, -2, false},
                                {"EULER_SO_MINUS", 1, -4, false}};
    Placement stay;
    Certificate cert = do_rewrite(c, "x", parse_expr("U-"), 1, -4, stay, uses, "t");
    CHECK(!cert.pass);
}

TEST_CASE("boundary twist moves the tail to the start and back") {
    Collection c = coll({obj("a", "O", 0, 0), obj("b", "O", 1, 0), obj("z", "O", 7, 3)});
    Certificate cert = do_serre(c, {"z"}, true, {-4, -4}, "t");
    CHECK(cert.pass);
    CHECK(order_of(c) == std::vector<std::string>{"z", "a", "b"});
    CHECK(c.objects[0].col == 3);
    CHECK(c.objects[0].row == -1);
    Certificate back = do_serre(c, {"z"}, false, {-4, -4}, "t");
    CHECK(back.pass);
    CHECK(order_of(c) == std::vector<std::string>{"a", "b", "z"});
    CHECK(c.objects[2].col == 7);
    CHECK(c.objects[2].row == 3);
}

TEST_CASE("boundary twist refuses a non boundary run") {
    Collection c = coll({obj("a", "O", 0, 0), obj("b", "O", 1, 0), obj("z", "O", 7, 3)});
    Certificate cert = do_serre(c, {"a"}, true, {-4, -4}, "t");
    CHECK(!cert.pass);
}

TEST_CASE("identification matches a moved reference layout as a multiset") {
    Collection c = coll({obj("x", "O", 1, 1), obj("y", "O", -3, -3)});
    std::vector<ChessObject> ref = {obj("r1", "O", 1, 1), obj("r2", "O", 1, 1)};
    SerreMove mv;
    mv.ids = {"r2"};
    mv.to_start = true;
    Certificate cert = do_identify(c, ref, {mv}, {-4, -4}, "t");
    CHECK(cert.pass);
    Certificate bad = do_identify(c, ref, {}, {-4, -4}, "t");
    CHECK(!bad.pass);
}

TEST_CASE("lattice membership respects span and divisibility") {
    Collection c = coll({obj("a", "O", 0, 0), obj("b", "O", 1, 0)});
    std::vector<KClass> gens = kclasses_of(c);
    KClass in = kclass_of_expr(parse_expr("O+O+O(1,0)"));
    CHECK(lattice_contains(gens, in));
    KClass out = kclass_of_expr(parse_expr("U+"));
    CHECK(!lattice_contains(gens, out));
    std::vector<KClass> doubled = {kclass_of_expr(parse_expr("O+O"))};
    CHECK(lattice_contains(doubled, kclass_of_expr(parse_expr("O+O"))));
    CHECK(!lattice_contains(doubled, kclass_of_expr(parse_expr("O"))));
}
