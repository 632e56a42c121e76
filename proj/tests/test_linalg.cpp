#include <numeric>
#include <random>

#include "doctest.h"

#include "hpa/linalg.hpp"

using namespace hpa;

namespace {

IntegerMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
    IntegerMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto r : rows) {
        Eigen::Index j = 0;
        for (long long v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

BigInt det(BigIntMatrix m) {
    // Bareiss fraction-free elimination
    const Eigen::Index n = m.rows();
    BigInt sign = 1, prev = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            Eigen::Index s = k + 1;
            while (s < n && m(s, k) == 0) ++s;
            if (s == n) return 0;
            m.row(k).swap(m.row(s));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

// Invariant factors from determinantal divisors: d_k = g_k / g_{k-1}, g_k =
// gcd of all k x k minors.
std::vector<BigInt> determinantal_factors(const IntegerMatrix& m) {
    const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
    std::vector<BigInt> g{1};
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        BigInt acc = 0;
        std::vector<int> rs(rows), cs(cols);
        std::vector<bool> rsel(rows, false), csel(cols, false);
        std::fill(rsel.begin(), rsel.begin() + k, true);
        do {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + k, true);
            do {
                BigIntMatrix minor(k, k);
                int a = 0;
                for (int i = 0; i < rows; ++i) {
                    if (!rsel[i]) continue;
                    int b = 0;
                    for (int j = 0; j < cols; ++j)
                        if (csel[j]) minor(a, b++) = m(i, j);
                    ++a;
                }
                acc = boost::multiprecision::gcd(acc, BigInt(abs(det(minor))));
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
        if (acc == 0) break;
        g.push_back(acc);
    }
    std::vector<BigInt> out;
    for (std::size_t k = 1; k < g.size(); ++k) out.push_back(g[k] / g[k - 1]);
    return out;
}

IntegerMatrix random_matrix(std::mt19937& rng, int rows, int cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound), zero(0, 3);
    IntegerMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = zero(rng) == 0 ? 0 : d(rng);
    return m;
}

}  // namespace

TEST_CASE("Smith normal form of small matrices") {
    auto s = smith_normal_form<long long>(mat({{1, 2}, {3, 4}}));
    CHECK(s.diagonal == std::vector<long long>{1, 2});
    s = smith_normal_form<long long>(mat({{2, 0}, {0, 3}}));
    CHECK(s.diagonal == std::vector<long long>{1, 6});
    s = smith_normal_form<long long>(mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    CHECK(s.diagonal == std::vector<long long>{2, 6, 12});
    s = smith_normal_form<long long>(IntegerMatrix::Zero(2, 3));
    CHECK(s.diagonal == std::vector<long long>{0, 0});
    CHECK(invariant_factors(IntegerMatrix::Zero(0, 4)).empty());
}

TEST_CASE("Smith normal form: transforms and divisibility on random matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> dim(1, 4);
        IntegerMatrix m = random_matrix(rng, dim(rng), dim(rng), 6);
        auto s = smith_normal_form<long long>(m);
        CHECK((s.u * m * s.v - s.d).isZero());
        CHECK(abs(det(s.u.cast<BigInt>())) == 1);
        CHECK(abs(det(s.v.cast<BigInt>())) == 1);
        for (Eigen::Index i = 0; i < s.d.rows(); ++i)
            for (Eigen::Index j = 0; j < s.d.cols(); ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
        std::vector<BigInt> nz;
        for (long long d : s.diagonal) {
            CHECK(d >= 0);
            if (d != 0) nz.emplace_back(d);
        }
        for (std::size_t k = 1; k < nz.size(); ++k) CHECK(nz[k] % nz[k - 1] == 0);
        CHECK(nz == determinantal_factors(m));
    }
}

TEST_CASE("overflow falls back to big integers") {
    const long long big = 3037000499LL * 1000;  // squares overflow 64 bits
    IntegerMatrix m = mat({{big, 7}, {11, big - 1}});
    CHECK_THROWS_AS(smith_normal_form<long long>(m), std::overflow_error);
    std::vector<BigInt> f = invariant_factors(m);
    CHECK(f == determinantal_factors(m));
    REQUIRE(f.size() == 2);
    CHECK(f[1] == abs(BigInt(big) * (big - 1) - 77));
}

TEST_CASE("ranks over Q and F_p") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        IntegerMatrix m = random_matrix(rng, 4, 5, 5);
        auto f = determinantal_factors(m);
        CHECK(rank_rational(m) == f.size());
        for (unsigned p : {2u, 3u, 5u, 7u}) {
            std::size_t units = 0;
            for (const BigInt& d : f) units += (d % p != 0);
            CHECK(rank_mod_p(m, p) == units);
        }
    }
}

TEST_CASE("rings") {
    CHECK(parse_ring("Z") == Ring::integers());
    CHECK(parse_ring("Q") == Ring::rationals());
    CHECK(parse_ring("Fp:7") == Ring::prime_field(7));
    CHECK(parse_ring("Fp:2").name() == "Fp:2");
    CHECK_THROWS_AS(parse_ring("Fp:4"), Error);
    CHECK_THROWS_AS(parse_ring("Fp:1"), Error);
    CHECK_THROWS_AS(parse_ring("Fp:"), Error);
    CHECK_THROWS_AS(parse_ring("Fp:3x"), Error);
    CHECK_THROWS_AS(parse_ring("R"), Error);
}

TEST_CASE("homology of small complexes") {
    // circle: two vertices, two edges
    ChainComplex circle;
    circle.ranks = {2, 2};
    circle.differentials = {IntegerMatrix::Zero(0, 2), mat({{-1, -1}, {1, 1}})};
    auto h = homology(circle, Ring::integers());
    REQUIRE(h.size() == 2);
    CHECK(h[0].rank == 1);
    CHECK(h[1].rank == 1);

    // real projective plane, one cell per dimension
    ChainComplex rp2;
    rp2.ranks = {1, 1, 1};
    rp2.differentials = {IntegerMatrix::Zero(0, 1), mat({{0}}), mat({{2}})};
    h = homology(rp2, Ring::integers());
    CHECK(h[0].rank == 1);
    CHECK(h[1].rank == 0);
    CHECK(h[1].torsion == std::vector<BigInt>{2});
    CHECK(h[2].rank == 0);
    h = homology(rp2, Ring::prime_field(2));
    CHECK(h[1].rank == 1);
    CHECK(h[2].rank == 1);
    CHECK(h[1].torsion.empty());
    h = homology(rp2, Ring::rationals());
    CHECK(h[1].rank == 0);

    ChainComplex shifted = rp2;
    shifted.lowest = -1;
    CHECK(homology(shifted, Ring::integers())[0].degree == -1);
    CHECK(shifted.rank(1) == 1);
    CHECK(shifted.rank(5) == 0);
}

TEST_CASE("d squared is checked") {
    ChainComplex bad;
    bad.ranks = {1, 1, 1};
    bad.differentials = {IntegerMatrix::Zero(0, 1), mat({{1}}), mat({{1}})};
    CHECK_THROWS_WITH_AS(homology(bad, Ring::integers()), doctest::Contains("degree 2"), Error);
    // 2 vanishes over F_2
    ChainComplex two = bad;
    two.differentials[2] = mat({{2}});
    CHECK_NOTHROW(check_d_squared(two, Ring::prime_field(2)));
    CHECK_THROWS_AS(check_d_squared(two, Ring::rationals()), Error);
}
