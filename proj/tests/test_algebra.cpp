#include <map>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "hpa/errors.hpp"

using namespace hpa;

namespace {

// Congruence by explicit rewriting: BFS over single substitutions of a
// relation member by another member of its group.
std::map<PathWord, int> rewrite_classes(const Quiver& q, const RelationSet& r) {
    std::vector<PathWord> words = enumerate_paths(q);
    std::map<PathWord, int> label;
    int next = 0;
    for (const PathWord& start : words) {
        if (label.count(start)) continue;
        std::queue<PathWord> todo;
        todo.push(start);
        label[start] = next;
        while (!todo.empty()) {
            PathWord w = todo.front();
            todo.pop();
            for (const RelationGroup& g : r.groups)
                for (const PathWord& u : g)
                    for (std::size_t i = 0; i + u.length() <= w.length(); ++i) {
                        if (!std::equal(u.arrows.begin(), u.arrows.end(), w.arrows.begin() + static_cast<long>(i))) continue;
                        for (const PathWord& v : g) {
                            PathWord x{w.tail, {}};
                            x.arrows.insert(x.arrows.end(), w.arrows.begin(), w.arrows.begin() + static_cast<long>(i));
                            x.arrows.insert(x.arrows.end(), v.arrows.begin(), v.arrows.end());
                            x.arrows.insert(x.arrows.end(), w.arrows.begin() + static_cast<long>(i + u.length()), w.arrows.end());
                            if (!label.count(x)) {
                                label[x] = next;
                                todo.push(x);
                            }
                        }
                    }
        }
        ++next;
    }
    return label;
}

void same_partition(const Hpa& a) {
    auto oracle = rewrite_classes(a.quiver(), a.relations());
    const auto& words = a.words();
    REQUIRE(words.size() == oracle.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j)
            CHECK((a.class_of_word(i) == a.class_of_word(j)) == (oracle.at(words[i]) == oracle.at(words[j])));
}

// Random layered quiver; relation groups among parallel paths of equal length.
QuiverDocument random_document(std::mt19937& rng) {
    std::uniform_int_distribution<int> layers(2, 4), width(1, 2), arrows(1, 2), coin(0, 2);
    std::vector<std::string> vertices;
    std::vector<std::vector<VertexId>> layer;
    int n = layers(rng);
    for (int l = 0; l < n; ++l) {
        layer.emplace_back();
        for (int k = width(rng); k > 0; --k) {
            layer.back().push_back(static_cast<VertexId>(vertices.size()));
            vertices.push_back("v" + std::to_string(vertices.size()));
        }
    }
    std::vector<Arrow> as;
    for (int l = 0; l + 1 < n; ++l)
        for (VertexId s : layer[l])
            for (VertexId t : layer[l + 1])
                for (int k = arrows(rng); k > 0; --k) as.push_back({"a" + std::to_string(as.size()), s, t});
    Quiver q(vertices, as);
    std::map<std::tuple<VertexId, VertexId, std::size_t>, std::vector<PathWord>> parallel;
    for (const PathWord& w : enumerate_paths(q))
        if (w.length() >= 2) parallel[{w.tail, head(q, w), w.length()}].push_back(w);
    RelationSet r;
    for (auto& [key, ws] : parallel) {
        std::vector<PathWord> group;
        for (const PathWord& w : ws)
            if (coin(rng) == 0) group.push_back(w);
        if (group.size() >= 2) r.groups.push_back(group);
    }
    return {q, r};
}

}  // namespace

TEST_CASE("P2 path classes") {
    Hpa a = test::load("p2.quiver");
    CHECK(a.words().size() == 18);
    CHECK(a.class_count() == 15);
    CHECK(a.graded());
    CHECK(check_hpa(a).valid);
    same_partition(a);
    const Quiver& q = a.quiver();
    PathWord xy{0, {*q.find_arrow("x"), *q.find_arrow("y'")}};
    PathWord yx{0, {*q.find_arrow("y"), *q.find_arrow("x'")}};
    CHECK(a.class_of(xy) == a.class_of(yx));
    CHECK(a.describe(a.class_of(yx)) == "x y'");
}

TEST_CASE("congruence agrees with rewriting on fixtures") {
    for (const char* f : {"p2.quiver", "f3.quiver", "f1.quiver", "p113.quiver", "ab_ac.quiver", "ac_bc.quiver"}) {
        CAPTURE(f);
        same_partition(test::load(f));
    }
}

TEST_CASE("congruence agrees with rewriting on random presentations") {
    std::mt19937 rng(20261016);
    for (int trial = 0; trial < 40; ++trial) {
        QuiverDocument d = random_document(rng);
        same_partition(make_hpa(d.quiver, d.relations));
    }
}

TEST_CASE("class table invariants") {
    Hpa a = test::load("f3.quiver");
    CHECK(a.class_count() == 28);
    for (ClassId c = 0; c < a.class_count(); ++c) {
        const PathClass& p = a.path_class(c);
        for (std::size_t w : p.members) CHECK(!label_less(a.quiver(), a.words()[w], p.canonical));
        if (c > 0) {
            const PathClass& prev = a.path_class(c - 1);
            CHECK(std::tie(prev.tail, prev.length) <= std::tie(p.tail, p.length));
        }
        CHECK(a.compose(a.trivial_class(p.tail), c) == c);
        CHECK(a.compose(c, a.trivial_class(p.head)) == c);
    }
    // composition is associative where defined
    for (ClassId x = 0; x < a.class_count(); ++x)
        for (ClassId y = 0; y < a.class_count(); ++y) {
            ClassId xy = a.compose(x, y);
            if (xy == no_class) continue;
            for (ClassId z = 0; z < a.class_count(); ++z) {
                ClassId yz = a.compose(y, z);
                if (yz == no_class) continue;
                CHECK(a.compose(xy, z) == a.compose(x, yz));
            }
        }
}

TEST_CASE("cancellation failures carry witnesses") {
    Hpa left = test::load("ab_ac.quiver");
    HpaReport r = check_hpa(left);
    CHECK_FALSE(r.valid);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].condition == 1);
    CHECK(to_string(left.quiver(), r.violations[0].factor) == "a");
    CHECK(to_string(left.quiver(), r.violations[0].first) == "b");
    CHECK(to_string(left.quiver(), r.violations[0].second) == "c");
    CHECK_THROWS_AS(require_valid(left), PreconditionError);

    HpaReport s = check_hpa(test::load("ac_bc.quiver"));
    CHECK_FALSE(s.valid);
    REQUIRE(s.violations.size() == 1);
    CHECK(s.violations[0].condition == 2);
}

TEST_CASE("cancellation check matches exhaustive search") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        QuiverDocument d = random_document(rng);
        Hpa a = make_hpa(d.quiver, d.relations);
        bool valid = true;
        for (ClassId r = 0; r < a.class_count(); ++r)
            for (ClassId p = 0; p < a.class_count(); ++p)
                for (ClassId p2 = 0; p2 < a.class_count(); ++p2) {
                    if (p == p2) continue;
                    ClassId rp = a.compose(r, p), rp2 = a.compose(r, p2);
                    if (rp != no_class && rp == rp2) valid = false;
                    ClassId pr = a.compose(p, r), p2r = a.compose(p2, r);
                    if (pr != no_class && pr == p2r) valid = false;
                }
        CHECK(check_hpa(a).valid == valid);
    }
}

TEST_CASE("free algebras are homotopy path algebras") {
    for (int n = 1; n <= 5; ++n) {
        Hpa a = test::linear(n);
        CHECK(check_hpa(a).valid);
        CHECK(a.class_count() == static_cast<std::size_t>(n * (n + 1) / 2));
    }
}

TEST_CASE("ungraded relations are accepted but flagged") {
    Hpa a = test::parse("vertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\n c: 1 -> 3\nrelations:\n a b = c\n");
    CHECK_FALSE(a.graded());
    CHECK(a.class_count() == 6);
    CHECK(check_hpa(a).valid);
}

TEST_CASE("path poset") {
    Hpa a = test::load("p2.quiver");
    PathPoset p = path_poset(a);
    const Quiver& q = a.quiver();
    ClassId e0 = a.trivial_class(0);
    ClassId x = a.arrow_class(*q.find_arrow("x"));
    ClassId y = a.arrow_class(*q.find_arrow("y"));
    ClassId xy = a.class_of(PathWord{0, {*q.find_arrow("x"), *q.find_arrow("y'")}});
    CHECK(p.less(e0, x));
    CHECK(p.less(x, xy));
    CHECK(p.less(y, xy));
    CHECK_FALSE(p.less(x, x));
    CHECK(p.less_equal(x, x));
    CHECK(a.describe(p.divide(y, xy)) == "x'");
    CHECK_THROWS_AS(p.divide(xy, x), NotSubpathError);
    CHECK(p.above(e0).size() == 9);
    CHECK_THROWS_AS(path_poset(test::load("ab_ac.quiver")), PreconditionError);
}

TEST_CASE("tensor products") {
    Hpa a2 = test::linear(2);
    Hpa square = tensor(a2, a2);
    CHECK(square.quiver().vertex_count() == 4);
    CHECK(square.quiver().arrow_count() == 4);
    CHECK(square.class_count() == 9);
    CHECK(check_hpa(square).valid);
    QuiverDocument d = tensor_presentation(a2, test::linear(3));
    CHECK(d.quiver.vertex_count() == 6);
    CHECK(d.quiver.arrow_count() == 7);
    CHECK(d.quiver.vertex_name(0) == "(1,1)");
    // class count of a tensor product is the product of class counts
    Hpa p2 = test::load("p2.quiver");
    CHECK(tensor(p2, a2).class_count() == p2.class_count() * a2.class_count());
}
