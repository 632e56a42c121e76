#include "doctest.h"
#include "support.hpp"

#include "hpa/errors.hpp"
#include "hpa/invariants.hpp"
#include "hpa/morse.hpp"
#include "hpa/toric.hpp"

using namespace hpa;

namespace {

const char* const fixtures[] = {"p2.quiver", "f3.quiver", "f1.quiver", "p113.quiver", "a3.quiver"};

}  // namespace

TEST_CASE("interval order complexes") {
    Hpa a = test::load("p2.quiver");
    const Quiver& q = a.quiver();
    ClassId xy = a.class_of(PathWord{0, {*q.find_arrow("x"), *q.find_arrow("y'")}});
    OrderComplex k = interval_order_complex(a, xy);
    CHECK(k.points.size() == 2);
    CHECK(k.simplices.size() == 1);
    auto h = reduced_homology(k, Ring::integers());
    REQUIRE(h.size() == 2);
    CHECK(h[0].degree == -1);
    CHECK(h[0].rank == 0);
    CHECK(h[1].rank == 1);

    // an arrow has an empty interval: H̃_{-1} = Z
    OrderComplex e = interval_order_complex(a, a.arrow_class(0));
    CHECK(e.empty());
    auto he = reduced_homology(e, Ring::integers());
    REQUIRE(he.size() == 1);
    CHECK(he[0].rank == 1);
    CHECK_THROWS_AS(interval_order_complex(a, a.trivial_class(0)), PreconditionError);
}

TEST_CASE("Tor from intervals equals Tor from the resolution") {
    for (const char* f : fixtures) {
        CAPTURE(f);
        Hpa a = test::load(f);
        CellComplex x = build_realization(a);
        BimoduleComplex c = cellular_resolution(x);
        for (Ring r : {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)})
            for (VertexId v = 0; v < a.quiver().vertex_count(); ++v)
                for (VertexId w = 0; w < a.quiver().vertex_count(); ++w)
                    CHECK(nonzero(tor_via_intervals(a, v, w, r)) == nonzero(tor_via_resolution(c, v, w, r)));
    }
}

TEST_CASE("Betti tables") {
    Hpa p2 = test::load("p2.quiver");
    BettiTable t = betti_table(p2);
    CHECK(t.totals() == std::vector<std::size_t>{3, 6, 3});
    CHECK_FALSE(t.torsion);
    CHECK(t.ranks.at({2, 0, 2}) == 3);
    CHECK(t.ranks.at({1, 0, 1}) == 3);
    CHECK(t.ranks.at({0, 1, 1}) == 1);

    for (const char* f : fixtures) {
        CAPTURE(f);
        Hpa a = test::load(f);
        BettiTable b = betti_table(a);
        long long alternating = 0;
        for (const auto& [key, rank] : b.ranks)
            alternating += (std::get<0>(key) % 2 == 0 ? 1 : -1) * static_cast<long long>(rank);
        CHECK(alternating == euler_characteristic(build_realization(a)));

        bool torsion = false;
        for (ClassId p = 0; p < a.class_count(); ++p)
            if (!a.trivial(p))
                for (const auto& h : reduced_homology(interval_order_complex(a, p), Ring::integers()))
                    torsion = torsion || !h.torsion.empty();
        CHECK(b.torsion == torsion);
        CHECK(b.warnings.empty() == !torsion);
    }
}

TEST_CASE("EL certificates") {
    Hpa p2 = test::load("p2.quiver");
    std::vector<int> rank;
    for (const Arrow& x : p2.quiver().arrows()) rank.push_back(x.label[0] - 'x');
    const Quiver& q = p2.quiver();
    ClassId xy = p2.class_of(PathWord{0, {*q.find_arrow("x"), *q.find_arrow("y'")}});
    CHECK(el_shellability_certificate(p2, xy, rank).status == ElCertificate::Status::point_set);

    Hpa p113 = test::load("p113.quiver");
    std::vector<int> r113;
    for (const Arrow& x : p113.quiver().arrows()) r113.push_back(x.label[0] - 'x');
    for (ClassId p = 0; p < p113.class_count(); ++p) {
        if (p113.trivial(p)) continue;
        CAPTURE(p113.describe(p));
        CHECK(el_shellability_certificate(p113, p, r113).status != ElCertificate::Status::unknown);
    }
    CHECK_THROWS_AS(el_shellability_certificate(p113, 1, {0}), Error);
}

TEST_CASE("Koszul verdicts") {
    KoszulVerdict p2 = koszul_check(test::load("p2.quiver"));
    CHECK(p2.kind == KoszulVerdict::Kind::certified);
    CHECK(p2.method == "directable");
    CHECK(p2.order == std::vector<std::string>{"x", "y", "z"});

    KoszulVerdict f1 = koszul_check(test::load("f1.quiver"));
    CHECK(f1.kind == KoszulVerdict::Kind::not_koszul);
    CHECK_FALSE(f1.witnesses.empty());

    KoszulVerdict free = koszul_check(test::linear(4));
    CHECK(free.kind == KoszulVerdict::Kind::certified);

    CHECK_THROWS_AS(koszul_check(test::parse("vertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 1 -> 3\n"
                                             "relations:\n a b = c\n")),
                    PreconditionError);
    CHECK_THROWS_AS(koszul_check(test::load("ab_ac.quiver")), PreconditionError);
    CHECK(to_string(KoszulVerdict::Kind::not_koszul) == "not-koszul");
}

TEST_CASE("directable algebras are certified") {
    for (const char* f : fixtures) {
        Hpa a = test::load(f);
        if (has_monomial_presentation(a) && check_directable(a).directable)
            CHECK(koszul_check(a).kind == KoszulVerdict::Kind::certified);
    }
}

TEST_CASE("linear minimal resolutions have generators of path length equal to degree") {
    for (const char* f : fixtures) {
        CAPTURE(f);
        Hpa a = test::load(f);
        if (koszul_check(a).kind != KoszulVerdict::Kind::certified) continue;
        CellComplex x = build_realization(a);
        MorseComplex mc = morse_complex(cellular_resolution(x), babson_hersh_matching(x));
        REQUIRE(check_minimal(mc).passed);
        for (std::size_t k = 1; k < mc.complex.degrees(); ++k)
            for (const Cell& g : mc.complex.generators[k]) CHECK(a.length(g.chain.back()) == k);
    }
}
