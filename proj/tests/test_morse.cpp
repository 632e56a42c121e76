#include <map>

#include "doctest.h"
#include "support.hpp"

#include "hpa/errors.hpp"
#include "hpa/invariants.hpp"
#include "hpa/morse.hpp"
#include "hpa/serialize.hpp"

using namespace hpa;

namespace {

using Key = std::tuple<std::size_t, ClassId, std::size_t, ClassId>;  // source, left, target, right

std::map<Key, long long> collect(const MorseComplex& mc, std::size_t k) {
    std::map<Key, long long> out;
    for (std::size_t g = 0; g < mc.complex.count(k); ++g)
        for (const Term& t : mc.complex.differential[k][g]) out[{g, t.left, t.target, t.right}] += t.coeff;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

// Morse differential rebuilt from explicit gradient paths.
std::map<Key, long long> from_paths(const BimoduleComplex& c, const Matching& m, const MorseComplex& mc, std::size_t k) {
    std::map<std::size_t, std::size_t> position;
    for (std::size_t i = 0; i < mc.critical[k - 1].size(); ++i) position[mc.critical[k - 1][i]] = i;
    std::map<Key, long long> out;
    for (std::size_t g = 0; g < mc.critical[k].size(); ++g)
        for (const GradientPath& p : gradient_paths(c, m, k, mc.critical[k][g]))
            out[{g, p.left, position.at(p.cells.back().index), p.right}] += p.coeff;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

void check_matching(const BimoduleComplex& c, const Matching& m) {
    const Hpa& a = *c.algebra;
    CHECK(check_internal(m).passed);
    CHECK(check_acyclic(m).acyclic);
    MorseComplex mc = morse_complex(c, m);
    CHECK(verify_d_squared(mc.complex).passed);
    CHECK(euler_characteristic(mc.counts()) == euler_characteristic(c.counts()));
    for (std::size_t k = 1; k < mc.complex.degrees(); ++k) CHECK(collect(mc, k) == from_paths(c, m, mc, k));
    for (Ring r : {Ring::integers(), Ring::prime_field(2)})
        for (VertexId v = 0; v < a.quiver().vertex_count(); ++v)
            for (VertexId w = 0; w < a.quiver().vertex_count(); ++w)
                CHECK(nonzero(tor_via_resolution(c, v, w, r)) == nonzero(tor_via_resolution(mc.complex, v, w, r)));
}

Matching fixture_matching(const CellComplex& x) {
    return matching_from_chains(x, matching_pairs_from_json(load_json_file(test::fixture("f3.matching.json"))));
}

}  // namespace

TEST_CASE("F3 fixture matching") {
    Hpa a = test::load("f3.quiver");
    CellComplex x = build_realization(a);
    BimoduleComplex c = cellular_resolution(x);
    Matching m = fixture_matching(x);
    CHECK(m.size() == 26);
    check_matching(c, m);
    MorseComplex mc = morse_complex(c, m);
    CHECK(mc.counts() == std::vector<std::size_t>{4, 9, 6, 1});
    CHECK(check_minimal(mc).passed);
}

TEST_CASE("Babson-Hersh and greedy matchings on fixtures") {
    for (const char* f : {"p2.quiver", "f3.quiver", "f1.quiver", "p113.quiver", "a3.quiver"}) {
        CAPTURE(f);
        Hpa a = test::load(f);
        CellComplex x = build_realization(a);
        BimoduleComplex c = cellular_resolution(x);
        check_matching(c, babson_hersh_matching(x));
        check_matching(c, greedy_internal_matching(x));
    }
}

TEST_CASE("Babson-Hersh on P2 is minimal with the relations in degree 2") {
    Hpa a = test::load("p2.quiver");
    CellComplex x = build_realization(a);
    BimoduleComplex c = cellular_resolution(x);
    std::vector<ClassId> fallback;
    Matching m = babson_hersh_matching(x, &fallback);
    CHECK(fallback.empty());
    MorseComplex mc = morse_complex(c, m);
    CHECK(mc.counts() == std::vector<std::size_t>{3, 6, 3});
    CHECK(check_minimal(mc).passed);
    CHECK(check_linear(mc).passed);
}

TEST_CASE("greedy matching on free quivers leaves the graph") {
    for (int n = 2; n <= 5; ++n) {
        Hpa a = test::linear(n);
        CellComplex x = build_realization(a);
        BimoduleComplex c = cellular_resolution(x);
        Matching m = greedy_internal_matching(x);
        MorseComplex mc = morse_complex(c, m);
        CHECK(mc.counts() == std::vector<std::size_t>{static_cast<std::size_t>(n), static_cast<std::size_t>(n - 1)});
    }
    Hpa kr = test::parse("vertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 1 -> 2\n c: 2 -> 3\n d: 1 -> 3\n");
    CellComplex x = build_realization(kr);
    MorseComplex mc = morse_complex(cellular_resolution(x), greedy_internal_matching(x));
    CHECK(mc.counts() == std::vector<std::size_t>{3, 4});
}

TEST_CASE("non-internal matchings are rejected") {
    Hpa a = test::load("p2.quiver");
    CellComplex x = build_realization(a);
    BimoduleComplex c = cellular_resolution(x);
    Matching m = matching_from_chains(x, {{{"e_v0", "x"}, {"e_v0"}}});
    CheckReport r = check_internal(m);
    CHECK_FALSE(r.passed);
    REQUIRE_FALSE(r.witnesses.empty());
    CHECK(r.witnesses[0].find("[e_v0 < x]") != std::string::npos);
    CHECK_THROWS_AS(morse_complex(c, m), PreconditionError);
}

TEST_CASE("matching construction validates pairs") {
    Hpa a = test::load("p2.quiver");
    CellComplex x = build_realization(a);
    // not a face
    CHECK_THROWS_AS(matching_from_chains(x, {{{"e_v0", "x", "x y'"}, {"e_v0", "y"}}}), Error);
    // a cell used twice
    CHECK_THROWS_AS(matching_from_chains(x, {{{"e_v0", "x", "x y'"}, {"e_v0", "x y'"}},
                                             {{"e_v0", "y", "x y'"}, {"e_v0", "x y'"}}}),
                    Error);
    // duplicates merge
    Matching m = matching_from_chains(x, {{{"e_v0", "x", "x y'"}, {"e_v0", "x y'"}},
                                          {{"e_v0", "x", "y x'"}, {"e_v0", "x y'"}}});
    CHECK(m.size() == 1);
    // a chain starting at a nontrivial path is rebased
    Cell cell = parse_cell(a, {"x", "x y'"});
    CHECK(x.describe(cell) == "[e_v1 < y']");
    CHECK_THROWS_AS(parse_cell(a, {"x y'", "x"}), Error);
}

TEST_CASE("cycles in a matching are found") {
    // Four internal pairs around the bowtie {x, y} < {x^2 y, x y^2} inside
    // the interval of x^2 y^2.
    Hpa a = test::load("p113.quiver");
    CellComplex x = build_realization(a);
    const std::string top = "x x' y'' y'''", xxy = "x x' y''", xyy = "x y' y''";
    Matching m = matching_from_chains(x, {{{"e_v0", "x", xxy, top}, {"e_v0", "x", top}},
                                          {{"e_v0", "y", xxy, top}, {"e_v0", xxy, top}},
                                          {{"e_v0", "y", xyy, top}, {"e_v0", "y", top}},
                                          {{"e_v0", "x", xyy, top}, {"e_v0", xyy, top}}});
    CHECK(check_internal(m).passed);
    AcyclicReport r = check_acyclic(m);
    CHECK_FALSE(r.acyclic);
    REQUIRE(r.cycle.size() >= 3);
    CHECK(r.cycle.front() == r.cycle.back());
    CHECK_THROWS_AS(morse_complex(cellular_resolution(x), m), PreconditionError);
    CHECK(check_acyclic(Matching(x)).acyclic);
}

TEST_CASE("linearity refuses ungraded algebras") {
    Hpa a = test::parse("vertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 1 -> 3\nrelations:\n a b = c\n");
    CellComplex x = build_realization(a);
    MorseComplex mc = morse_complex(cellular_resolution(x), babson_hersh_matching(x));
    CHECK_THROWS_AS(check_linear(mc), PreconditionError);
}
