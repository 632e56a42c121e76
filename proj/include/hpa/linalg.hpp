#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "hpa/errors.hpp"

namespace hpa {

using BigInt = boost::multiprecision::cpp_int;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntegerMatrix = Matrix<long long>;
using BigIntMatrix = Matrix<BigInt>;

/// U·M·V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal of D.
template <class Scalar>
struct SnfResult {
    Matrix<Scalar> u;
    Matrix<Scalar> d;
    Matrix<Scalar> v;
    std::vector<Scalar> diagonal;  ///< the min(rows, cols) diagonal entries, nonnegative
};

namespace detail {

template <class Scalar>
Scalar checked_mul(const Scalar& a, const Scalar& b) {
    if constexpr (std::is_integral_v<Scalar>) {
        Scalar r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
        return r;
    } else {
        return a * b;
    }
}

template <class Scalar>
Scalar checked_sub(const Scalar& a, const Scalar& b) {
    if constexpr (std::is_integral_v<Scalar>) {
        Scalar r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
        return r;
    } else {
        return a - b;
    }
}

template <class Scalar>
Scalar abs_value(const Scalar& a) {
    return a < 0 ? Scalar(-a) : a;
}

// row_i -= q * row_j on m (and on the row transform u)
template <class Scalar>
void row_axpy(Matrix<Scalar>& m, Matrix<Scalar>* u, Eigen::Index i, Eigen::Index j, const Scalar& q) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (m(j, c) != 0) m(i, c) = checked_sub(m(i, c), checked_mul(q, m(j, c)));
    if (u)
        for (Eigen::Index c = 0; c < u->cols(); ++c)
            if ((*u)(j, c) != 0) (*u)(i, c) = checked_sub((*u)(i, c), checked_mul(q, (*u)(j, c)));
}

template <class Scalar>
void col_axpy(Matrix<Scalar>& m, Matrix<Scalar>* v, Eigen::Index i, Eigen::Index j, const Scalar& q) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (m(r, j) != 0) m(r, i) = checked_sub(m(r, i), checked_mul(q, m(r, j)));
    if (v)
        for (Eigen::Index r = 0; r < v->rows(); ++r)
            if ((*v)(r, j) != 0) (*v)(r, i) = checked_sub((*v)(r, i), checked_mul(q, (*v)(r, j)));
}

}  // namespace detail

/// Smith normal form by repeated smallest-pivot elimination. The pivot is
/// the nonzero entry of least absolute value, first in row-major order, so
/// the result is deterministic. Integral scalars throw std::overflow_error
/// on overflow; BigInt never overflows.
template <class Scalar>
SnfResult<Scalar> smith_normal_form(const Matrix<Scalar>& m, bool with_transforms = true) {
    using detail::abs_value;
    using Index = Eigen::Index;
    const Index rows = m.rows(), cols = m.cols();
    SnfResult<Scalar> out;
    out.d = m;
    Matrix<Scalar>* u = nullptr;
    Matrix<Scalar>* v = nullptr;
    if (with_transforms) {
        out.u = Matrix<Scalar>::Identity(rows, rows);
        out.v = Matrix<Scalar>::Identity(cols, cols);
        u = &out.u;
        v = &out.v;
    }
    Matrix<Scalar>& a = out.d;

    auto swap_rows = [&](Index i, Index j) {
        if (i == j) return;
        a.row(i).swap(a.row(j));
        if (u) u->row(i).swap(u->row(j));
    };
    auto swap_cols = [&](Index i, Index j) {
        if (i == j) return;
        a.col(i).swap(a.col(j));
        if (v) v->col(i).swap(v->col(j));
    };

    const Index n = std::min(rows, cols);
    for (Index t = 0; t < n; ++t) {
        Index pr = -1, pc = -1;
        for (Index i = t; i < rows; ++i)
            for (Index j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pr < 0 || abs_value(a(i, j)) < abs_value(a(pr, pc)))) {
                    pr = i;
                    pc = j;
                }
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc);

        while (true) {
            bool clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                detail::row_axpy(a, u, i, t, Scalar(a(i, t) / a(t, t)));
                if (a(i, t) != 0) clean = false;
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                detail::col_axpy(a, v, j, t, Scalar(a(t, j) / a(t, t)));
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder is smaller than the pivot; move the least one in.
                Index br = t, bc = t;
                for (Index i = t + 1; i < rows; ++i)
                    if (a(i, t) != 0 && abs_value(a(i, t)) < abs_value(a(br, bc))) { br = i; bc = t; }
                for (Index j = t + 1; j < cols; ++j)
                    if (a(t, j) != 0 && abs_value(a(t, j)) < abs_value(a(br, bc))) { br = t; bc = j; }
                swap_rows(t, br);
                swap_cols(t, bc);
                continue;
            }
            // Divisibility: fold a row with an entry the pivot does not divide.
            Index bad = -1;
            for (Index i = t + 1; i < rows && bad < 0; ++i)
                for (Index j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) { bad = i; break; }
            if (bad < 0) break;
            detail::row_axpy(a, u, t, bad, Scalar(-1));
        }
        if (a(t, t) < 0) {
            a.row(t) = -a.row(t);
            if (u) u->row(t) = -u->row(t);
        }
    }
    out.diagonal.resize(static_cast<std::size_t>(n));
    for (Index t = 0; t < n; ++t) out.diagonal[static_cast<std::size_t>(t)] = a(t, t);
    return out;
}

/// Nonzero invariant factors of an integer matrix; falls back to BigInt
/// arithmetic when 64-bit elimination would overflow.
std::vector<BigInt> invariant_factors(const IntegerMatrix& m);

/// Rank over the rationals.
std::size_t rank_rational(const IntegerMatrix& m);

/// Rank over F_p.
std::size_t rank_mod_p(const IntegerMatrix& m, unsigned p);

/// Coefficient ring for chains and homology.
struct Ring {
    enum class Kind { integers, rationals, prime_field };
    Kind kind = Kind::integers;
    unsigned p = 0;

    static Ring integers() { return {}; }
    static Ring rationals() { return {Kind::rationals, 0}; }
    static Ring prime_field(unsigned p);

    std::string name() const;
    friend bool operator==(const Ring&, const Ring&) = default;
};

/// "Z", "Q" or "Fp:<p>" with p prime.
Ring parse_ring(const std::string& text);

/// Chain complex of free modules concentrated in degrees
/// [lowest, lowest + ranks.size()). differentials[i] maps degree lowest+i to
/// degree lowest+i-1 and has shape ranks[i-1] x ranks[i]; differentials[0]
/// is an empty 0 x ranks[0] matrix.
struct ChainComplex {
    int lowest = 0;
    std::vector<std::size_t> ranks;
    std::vector<IntegerMatrix> differentials;

    int highest() const { return lowest + static_cast<int>(ranks.size()) - 1; }
    std::size_t rank(int degree) const;
};

struct HomologyGroup {
    int degree = 0;
    std::size_t rank = 0;
    std::vector<BigInt> torsion;  ///< invariant factors > 1; empty over fields

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Throws Error naming the degree when some d∘d is nonzero (over the ring).
void check_d_squared(const ChainComplex& c, const Ring& ring);

/// Homology per degree of the complex; over Z via Smith normal form, over a
/// field by rank. Checks d∘d = 0 first.
std::vector<HomologyGroup> homology(const ChainComplex& c, const Ring& ring);

}  // namespace hpa
