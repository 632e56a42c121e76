#include "hpa/linalg.hpp"

#include <stdexcept>

namespace hpa {

std::vector<BigInt> invariant_factors(const IntegerMatrix& m) {
    std::vector<BigInt> out;
    try {
        auto snf = smith_normal_form<long long>(m, false);
        for (long long d : snf.diagonal)
            if (d != 0) out.emplace_back(d);
    } catch (const std::overflow_error&) {
        out.clear();
        auto snf = smith_normal_form<BigInt>(m.cast<BigInt>(), false);
        for (const BigInt& d : snf.diagonal)
            if (d != 0) out.push_back(d);
    }
    return out;
}

std::size_t rank_rational(const IntegerMatrix& m) {
    return invariant_factors(m).size();
}

std::size_t rank_mod_p(const IntegerMatrix& m, unsigned p) {
    const long long mod = p;
    Matrix<long long> a(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = ((m(i, j) % mod) + mod) % mod;

    auto inverse = [&](long long x) {
        long long r = 1, base = x, e = mod - 2;
        while (e > 0) {
            if (e & 1) r = r * base % mod;
            base = base * base % mod;
            e >>= 1;
        }
        return r;
    };

    std::size_t rank = 0;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = row; i < a.rows(); ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        a.row(row).swap(a.row(piv));
        long long inv = inverse(a(row, col));
        for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv % mod;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            long long f = a(i, col);
            for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) = ((a(i, j) - f * a(row, j)) % mod + mod) % mod;
        }
        ++row;
        ++rank;
    }
    return rank;
}

Ring Ring::prime_field(unsigned p) {
    if (p < 2) throw Error("field characteristic must be prime, got " + std::to_string(p));
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw Error("field characteristic must be prime, got " + std::to_string(p));
    if (p > 3037000493u) throw Error("field characteristic too large");
    return {Kind::prime_field, p};
}

std::string Ring::name() const {
    switch (kind) {
    case Kind::integers: return "Z";
    case Kind::rationals: return "Q";
    case Kind::prime_field: return "Fp:" + std::to_string(p);
    }
    return "?";
}

Ring parse_ring(const std::string& text) {
    if (text == "Z") return Ring::integers();
    if (text == "Q") return Ring::rationals();
    if (text.rfind("Fp:", 0) == 0) {
        std::size_t used = 0;
        unsigned long p = 0;
        try {
            p = std::stoul(text.substr(3), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size() - 3) throw Error("invalid ring '" + text + "'");
        return Ring::prime_field(static_cast<unsigned>(p));
    }
    throw Error("invalid ring '" + text + "' (expected Z, Q or Fp:<p>)");
}

std::size_t ChainComplex::rank(int degree) const {
    if (degree < lowest || degree > highest()) return 0;
    return ranks[static_cast<std::size_t>(degree - lowest)];
}

void check_d_squared(const ChainComplex& c, const Ring& ring) {
    for (std::size_t i = 2; i < c.differentials.size(); ++i) {
        const IntegerMatrix& outer = c.differentials[i - 1];
        const IntegerMatrix& inner = c.differentials[i];
        for (Eigen::Index r = 0; r < outer.rows(); ++r)
            for (Eigen::Index col = 0; col < inner.cols(); ++col) {
                __int128 s = 0;
                for (Eigen::Index k = 0; k < outer.cols(); ++k) s += static_cast<__int128>(outer(r, k)) * inner(k, col);
                if (ring.kind == Ring::Kind::prime_field) s %= ring.p;
                if (s != 0)
                    throw Error("d∘d is nonzero on degree " + std::to_string(c.lowest + static_cast<int>(i)));
            }
    }
}

std::vector<HomologyGroup> homology(const ChainComplex& c, const Ring& ring) {
    check_d_squared(c, ring);
    const std::size_t n = c.ranks.size();
    // rank of d_i and, over Z, its invariant factors
    std::vector<std::size_t> rank(n + 1, 0);
    std::vector<std::vector<BigInt>> factors(n + 1);
    for (std::size_t i = 1; i < n; ++i) {
        const IntegerMatrix& d = c.differentials[i];
        if (d.size() == 0) continue;
        switch (ring.kind) {
        case Ring::Kind::integers:
            factors[i] = invariant_factors(d);
            rank[i] = factors[i].size();
            break;
        case Ring::Kind::rationals: rank[i] = rank_rational(d); break;
        case Ring::Kind::prime_field: rank[i] = rank_mod_p(d, ring.p); break;
        }
    }
    std::vector<HomologyGroup> out;
    for (std::size_t i = 0; i < n; ++i) {
        HomologyGroup h;
        h.degree = c.lowest + static_cast<int>(i);
        h.rank = c.ranks[i] - rank[i] - rank[i + 1];
        for (const BigInt& f : factors[i + 1])
            if (f > 1) h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

}  // namespace hpa
