#include <random>

#include "doctest.h"
#include "support.hpp"

#include "hpa/errors.hpp"

using namespace hpa;

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse_quiver(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for: " << text);
    return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("parse a quiver document") {
    QuiverDocument d = parse_quiver(
        "# comment\n"
        "vertices: a b   c\n"
        "arrows:\n"
        "  x: a -> b   # trailing comment\n"
        "  y: a -> b\n"
        "  z: b -> c\n"
        "relations:\n"
        "  x z = y z\n");
    CHECK(d.quiver.vertex_count() == 3);
    CHECK(d.quiver.arrow_count() == 3);
    CHECK(d.quiver.arrow(2).tail == 1);
    CHECK(d.quiver.arrow(2).head == 2);
    REQUIRE(d.relations.groups.size() == 1);
    CHECK(d.relations.groups[0].size() == 2);
    CHECK(to_string(d.quiver, d.relations.groups[0][1]) == "y z");
}

TEST_CASE("section bodies may start on the header line") {
    QuiverDocument d = parse_quiver("vertices: 1 2\narrows: a: 1 -> 2\n");
    CHECK(d.quiver.arrow_count() == 1);
}

TEST_CASE("emit and parse round trip") {
    for (const char* f : {"p2.quiver", "f3.quiver", "p113.quiver", "f1.quiver", "a3.quiver"}) {
        QuiverDocument d = load_quiver_file(test::fixture(f));
        std::string text = emit_quiver(d.quiver, d.relations);
        QuiverDocument e = parse_quiver(text);
        CHECK(e.quiver.vertices() == d.quiver.vertices());
        REQUIRE(e.quiver.arrow_count() == d.quiver.arrow_count());
        for (ArrowId a = 0; a < d.quiver.arrow_count(); ++a) {
            CHECK(e.quiver.arrow(a).label == d.quiver.arrow(a).label);
            CHECK(e.quiver.arrow(a).tail == d.quiver.arrow(a).tail);
            CHECK(e.quiver.arrow(a).head == d.quiver.arrow(a).head);
        }
        CHECK(e.relations.groups == d.relations.groups);
        CHECK(emit_quiver(e.quiver, e.relations) == text);
    }
}

TEST_CASE("parse errors report line and column") {
    ParseError e = parse_error("vertices: 1 2\narrows:\n  a: 1 -> 3\n");
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);

    e = parse_error("vertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n  a = b\n");
    CHECK(e.line() == 5);
    CHECK(e.column() == 7);

    e = parse_error("# header\nbogus\nvertices: 1\n");
    CHECK(e.line() == 2);
    CHECK(e.column() == 1);

    CHECK_THROWS_AS(parse_quiver("vertices: 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_quiver("vertices: 1 2\narrows:\n a: 1 -> 2\n a: 1 -> 2\n"), ParseError);
    CHECK_THROWS_AS(parse_quiver("vertices: 1 2\narrows:\n a 1 -> 2\n"), ParseError);
    CHECK_THROWS_AS(parse_quiver("vertices: 1 2\narrows:\n a: 1 2\n"), ParseError);
}

TEST_CASE("relation words are validated") {
    const std::string base = "vertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 1 -> 3\n d: 2 -> 3\nrelations:\n";
    CHECK_THROWS_AS(parse_quiver(base + " b a = c\n"), ParseError);        // not composable
    CHECK_THROWS_AS(parse_quiver(base + " a = c\n"), ParseError);          // endpoints differ
    CHECK_THROWS_AS(parse_quiver(base + " a b = c\n a b = a d\n"), ParseError);  // shared word
    CHECK_THROWS_AS(parse_quiver(base + " a b\n"), ParseError);            // single word
    CHECK_THROWS_AS(parse_quiver(base + " a b = \n"), ParseError);         // empty word
    CHECK_NOTHROW(parse_quiver(base + " a b = c = a d\n"));
}

TEST_CASE("cycles parse but are rejected by constructions") {
    QuiverDocument d = parse_quiver("vertices: 1 2\narrows:\n a: 1 -> 2\n b: 2 -> 1\n");
    CHECK(d.quiver.find_cycle().size() == 2);
    try {
        make_hpa(d.quiver, d.relations);
        FAIL("cycle accepted");
    } catch (const CycleError& e) {
        CHECK(e.cycle().size() == 2);
    }
    QuiverDocument loop = parse_quiver("vertices: 1\narrows:\n a: 1 -> 1\n");
    CHECK_THROWS_AS(enumerate_paths(loop.quiver), CycleError);
}

TEST_CASE("missing files raise library errors") {
    CHECK_THROWS_AS(load_quiver_file(test::fixture("does-not-exist.quiver")), Error);
}

TEST_CASE("path enumeration counts") {
    // linear quiver on n vertices has n(n+1)/2 paths
    for (int n = 1; n <= 6; ++n) {
        Hpa a = test::linear(n);
        CHECK(a.words().size() == static_cast<std::size_t>(n * (n + 1) / 2));
    }
    QuiverDocument d = load_quiver_file(test::fixture("p2.quiver"));
    auto words = enumerate_paths(d.quiver);
    CHECK(words.size() == 18);
    for (const PathWord& w : words) CHECK(composable(d.quiver, w));
}
