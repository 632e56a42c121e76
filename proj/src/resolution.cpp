#include "hpa/resolution.hpp"

#include <sstream>

namespace hpa {
namespace {

void add(BimoduleElement& e, ClassId a, std::size_t g, ClassId b, long long coeff) {
    auto key = std::make_tuple(a, g, b);
    auto it = e.find(key);
    if (it == e.end()) {
        if (coeff != 0) e.emplace(key, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) e.erase(it);
}

std::string describe_basis(const BimoduleComplex& c, std::size_t k, ClassId a, std::size_t g, ClassId b) {
    return c.algebra->describe(a) + " ⊗ " + c.describe(k, g) + " ⊗ " + c.algebra->describe(b);
}

}  // namespace

std::vector<std::size_t> BimoduleComplex::counts() const {
    std::vector<std::size_t> out;
    for (const auto& level : generators) out.push_back(level.size());
    return out;
}

BimoduleElement apply_differential(const BimoduleComplex& c, std::size_t k, ClassId a, std::size_t g, ClassId b) {
    const Hpa& alg = *c.algebra;
    BimoduleElement out;
    for (const Term& t : c.differential.at(k).at(g)) {
        ClassId l = alg.compose(a, t.left);
        ClassId r = alg.compose(t.right, b);
        if (l == no_class || r == no_class) throw Error("non-composable coefficient in differential term");
        add(out, l, t.target, r, t.coeff);
    }
    return out;
}

BimoduleComplex cellular_resolution(const CellComplex& x) {
    BimoduleComplex c;
    c.algebra = &x.algebra();
    c.cells = &x;
    c.generators.resize(x.dimensions());
    c.differential.resize(x.dimensions());
    for (std::size_t k = 0; k < x.dimensions(); ++k) {
        c.generators[k] = x.cells(k);
        c.differential[k].resize(x.count(k));
        if (k == 0) continue;
        for (std::size_t g = 0; g < x.count(k); ++g)
            for (const Face& f : x.faces(k, g)) {
                const Hpa& a = x.algebra();
                if (a.head(f.left) != x.cell(k - 1, f.cell).tail || a.tail(f.right) != x.head(k - 1, f.cell))
                    throw Error("face coefficient does not compose with " + x.describe(k - 1, f.cell));
                c.differential[k][g].push_back({f.sign, f.left, f.cell, f.right, f.index});
            }
    }
    return c;
}

CheckReport verify_d_squared(const BimoduleComplex& c) {
    const Hpa& alg = *c.algebra;
    CheckReport report;
    if (c.degrees() >= 2) {
        for (std::size_t g = 0; g < c.count(1); ++g) {
            // m∘d_1 as an element of A: class -> coefficient
            std::map<ClassId, long long> image;
            for (const Term& t : c.differential[1][g]) {
                ClassId p = alg.compose(t.left, t.right);
                if ((image[p] += t.coeff) == 0) image.erase(p);
            }
            if (!image.empty())
                report.fail("m∘d_1 on " + c.describe(1, g) + " leaves " + std::to_string(image.begin()->second) +
                            "·" + alg.describe(image.begin()->first));
        }
    }
    for (std::size_t k = 2; k < c.degrees(); ++k)
        for (std::size_t g = 0; g < c.count(k); ++g) {
            BimoduleElement total;
            for (const Term& t : c.differential[k][g])
                for (const auto& [key, coeff] : apply_differential(c, k - 1, t.left, t.target, t.right))
                    add(total, std::get<0>(key), std::get<1>(key), std::get<2>(key), t.coeff * coeff);
            if (!total.empty()) {
                const auto& [key, coeff] = *total.begin();
                std::ostringstream msg;
                msg << "d∘d on " << c.describe(k, g) << " (degree " << k << ") leaves " << coeff << "·"
                    << describe_basis(c, k - 2, std::get<0>(key), std::get<1>(key), std::get<2>(key));
                report.fail(msg.str());
            }
        }
    return report;
}

std::optional<std::size_t> homotopy_target(const BimoduleComplex& c, std::size_t k, ClassId a, std::size_t g) {
    const Hpa& alg = *c.algebra;
    const Cell& eta = c.generators.at(k).at(g);
    if (alg.head(a) != eta.tail) return std::nullopt;
    if (alg.trivial(a)) return std::nullopt;
    Cell lifted{alg.tail(a), {a}};
    for (ClassId p : eta.chain) lifted.chain.push_back(alg.compose(a, p));
    auto idx = c.cells->find(lifted);
    if (!idx) throw Error("homotopy image " + c.cells->describe(lifted) + " is not a cell of the complex");
    return idx;
}

CheckReport contracting_homotopy_check(const BimoduleComplex& c) {
    const Hpa& alg = *c.algebra;
    CheckReport report;
    for (std::size_t k = 0; k < c.degrees(); ++k)
        if (c.generators[k] != c.cells->cells(k))
            throw PreconditionError("contracting homotopy needs the full cellular resolution");

    std::vector<std::vector<ClassId>> ending(alg.quiver().vertex_count()), starting(alg.quiver().vertex_count());
    for (ClassId p = 0; p < alg.class_count(); ++p) {
        ending[alg.head(p)].push_back(p);
        starting[alg.tail(p)].push_back(p);
    }
    auto vertex_cell = [&](VertexId v) {
        auto idx = c.cells->find(Cell{v, {}});
        if (!idx) throw Error("missing vertex cell");
        return *idx;
    };

    // m h_{-1}(b) = b: h_{-1}(b) = 1 ⊗ [e_{t(b)}] ⊗ b
    for (ClassId b = 0; b < alg.class_count(); ++b) {
        std::size_t g = vertex_cell(alg.tail(b));
        if (alg.compose(alg.trivial_class(c.generators[0][g].tail), b) != b)
            report.fail("m h_{-1} differs from the identity on " + alg.describe(b));
    }

    for (std::size_t k = 0; k < c.degrees(); ++k)
        for (std::size_t g = 0; g < c.count(k); ++g)
            for (ClassId a : ending[c.tail(k, g)])
                for (ClassId b : starting[c.head(k, g)]) {
                    BimoduleElement lhs;
                    if (auto t = homotopy_target(c, k, a, g)) {
                        if (k + 1 >= c.degrees()) {
                            report.fail("h_" + std::to_string(k) + " leaves the complex on " + describe_basis(c, k, a, g, b));
                            continue;
                        }
                        for (const auto& [key, coeff] :
                             apply_differential(c, k + 1, alg.trivial_class(alg.tail(a)), *t, b))
                            add(lhs, std::get<0>(key), std::get<1>(key), std::get<2>(key), coeff);
                    }
                    if (k == 0) {
                        add(lhs, alg.trivial_class(alg.tail(a)), vertex_cell(alg.tail(a)), alg.compose(a, b), 1);
                    } else {
                        for (const auto& [key, coeff] : apply_differential(c, k, a, g, b)) {
                            auto [l, tau, r] = key;
                            if (auto t = homotopy_target(c, k - 1, l, tau))
                                add(lhs, alg.trivial_class(alg.tail(l)), *t, r, coeff);
                        }
                    }
                    BimoduleElement expected;
                    add(expected, a, g, b, 1);
                    if (lhs != expected)
                        report.fail("dh + hd differs from the identity on " + describe_basis(c, k, a, g, b));
                }
    return report;
}

ChainComplex tensor_simples(const BimoduleComplex& c, VertexId v, VertexId w) {
    const Hpa& alg = *c.algebra;
    ChainComplex out;
    std::vector<std::vector<std::size_t>> position(c.degrees());
    for (std::size_t k = 0; k < c.degrees(); ++k) {
        std::size_t n = 0;
        position[k].assign(c.count(k), SIZE_MAX);
        for (std::size_t g = 0; g < c.count(k); ++g)
            if (c.tail(k, g) == v && c.head(k, g) == w) position[k][g] = n++;
        out.ranks.push_back(n);
    }
    out.differentials.resize(c.degrees());
    if (c.degrees() > 0) out.differentials[0] = IntegerMatrix::Zero(0, static_cast<Eigen::Index>(out.ranks[0]));
    for (std::size_t k = 1; k < c.degrees(); ++k) {
        IntegerMatrix m = IntegerMatrix::Zero(static_cast<Eigen::Index>(out.ranks[k - 1]),
                                              static_cast<Eigen::Index>(out.ranks[k]));
        for (std::size_t g = 0; g < c.count(k); ++g) {
            if (position[k][g] == SIZE_MAX) continue;
            for (const Term& t : c.differential[k][g]) {
                if (!alg.trivial(t.left) || !alg.trivial(t.right)) continue;
                m(static_cast<Eigen::Index>(position[k - 1][t.target]), static_cast<Eigen::Index>(position[k][g])) += t.coeff;
            }
        }
        out.differentials[k] = std::move(m);
    }
    return out;
}

}  // namespace hpa
