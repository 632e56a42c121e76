#include "hpa/realization.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hpa {

CellComplex::CellComplex(const Hpa& a, std::vector<std::vector<Cell>> cells)
    : hpa_(&a), cells_(std::move(cells)) {
    for (std::size_t d = 0; d < cells_.size(); ++d)
        for (std::size_t i = 0; i < cells_[d].size(); ++i) index_.emplace(cells_[d][i], i);

    faces_.resize(cells_.size());
    for (std::size_t d = 0; d < cells_.size(); ++d) {
        faces_[d].resize(cells_[d].size());
        if (d == 0) continue;
        for (std::size_t n = 0; n < cells_[d].size(); ++n) {
            const Cell& c = cells_[d][n];
            const VertexId h = head(c);
            for (std::size_t i = 0; i <= d; ++i) {
                Face f;
                Cell fc = face_cell(a, c, i);
                auto it = index_.find(fc);
                if (it == index_.end()) throw Error("face of " + describe(c) + " is missing from the complex");
                f.cell = it->second;
                f.index = static_cast<int>(i);
                f.sign = (i % 2 == 0) ? 1 : -1;
                f.left = a.trivial_class(c.tail);
                f.right = a.trivial_class(h);
                if (i == 0) f.left = c.chain[0];
                if (i == d) {
                    ClassId prev = d >= 2 ? c.chain[d - 2] : a.trivial_class(c.tail);
                    f.right = a.divide(prev, c.chain[d - 1]);
                }
                faces_[d][n].push_back(f);
            }
        }
    }
}

std::vector<std::size_t> CellComplex::counts() const {
    std::vector<std::size_t> out;
    for (const auto& level : cells_) out.push_back(level.size());
    return out;
}

std::optional<std::size_t> CellComplex::find(const Cell& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VertexId CellComplex::head(const Cell& c) const {
    return c.chain.empty() ? c.tail : hpa_->head(c.chain.back());
}

std::string CellComplex::describe(const Cell& c) const {
    std::string s = "[e_" + hpa_->quiver().vertex_name(c.tail);
    for (ClassId p : c.chain) s += " < " + hpa_->describe(p);
    return s + "]";
}

Cell face_cell(const Hpa& a, const Cell& c, std::size_t i) {
    const std::size_t k = c.dim();
    if (k == 0 || i > k) throw Error("face index out of range");
    Cell out;
    if (i == 0) {
        ClassId p1 = c.chain[0];
        out.tail = a.head(p1);
        for (std::size_t j = 1; j < k; ++j) out.chain.push_back(a.divide(p1, c.chain[j]));
        return out;
    }
    out.tail = c.tail;
    out.chain = c.chain;
    out.chain.erase(out.chain.begin() + static_cast<std::ptrdiff_t>(i - 1));
    return out;
}

CellComplex build_realization(const Hpa& a, std::optional<std::size_t> max_dim) {
    require_valid(a);
    PathPoset poset(a);
    std::vector<std::vector<Cell>> cells;
    Cell current;
    std::function<void()> extend = [&]() {
        const std::size_t d = current.dim();
        if (cells.size() <= d) cells.resize(d + 1);
        cells[d].push_back(current);
        if (max_dim && d >= *max_dim) return;
        ClassId last = current.chain.empty() ? a.trivial_class(current.tail) : current.chain.back();
        for (ClassId q : poset.above(last)) {
            current.chain.push_back(q);
            extend();
            current.chain.pop_back();
        }
    };
    for (VertexId v = 0; v < a.quiver().vertex_count(); ++v) {
        current = Cell{v, {}};
        extend();
    }
    for (auto& level : cells) std::sort(level.begin(), level.end());
    return CellComplex(a, std::move(cells));
}

ChainComplex cw_chain_complex(const CellComplex& c, const Ring& ring) {
    ChainComplex out;
    out.ranks = c.counts();
    out.differentials.resize(out.ranks.size());
    if (!out.ranks.empty()) out.differentials[0] = IntegerMatrix::Zero(0, static_cast<Eigen::Index>(out.ranks[0]));
    for (std::size_t d = 1; d < out.ranks.size(); ++d) {
        IntegerMatrix m = IntegerMatrix::Zero(static_cast<Eigen::Index>(out.ranks[d - 1]),
                                              static_cast<Eigen::Index>(out.ranks[d]));
        for (std::size_t n = 0; n < out.ranks[d]; ++n)
            for (const Face& f : c.faces(d, n)) m(static_cast<Eigen::Index>(f.cell), static_cast<Eigen::Index>(n)) += f.sign;
        if (ring.kind == Ring::Kind::prime_field)
            m = m.unaryExpr([&](long long x) { return ((x % ring.p) + ring.p) % ring.p; });
        out.differentials[d] = std::move(m);
    }
    return out;
}

long long euler_characteristic(const std::vector<std::size_t>& counts) {
    long long chi = 0;
    for (std::size_t d = 0; d < counts.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[d]);
    return chi;
}

long long euler_characteristic(const CellComplex& c) {
    return euler_characteristic(c.counts());
}

std::optional<std::string> check_simplicial_identities(const CellComplex& c) {
    const Hpa& a = c.algebra();
    for (std::size_t d = 2; d < c.dimensions(); ++d)
        for (std::size_t n = 0; n < c.count(d); ++n) {
            const Cell& cell = c.cell(d, n);
            for (std::size_t j = 1; j <= d; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    Cell lhs = face_cell(a, face_cell(a, cell, j), i);
                    Cell rhs = face_cell(a, face_cell(a, cell, i), j - 1);
                    if (lhs != rhs) {
                        std::ostringstream msg;
                        msg << "d_" << i << " d_" << j << " != d_" << j - 1 << " d_" << i << " on " << c.describe(cell);
                        return msg.str();
                    }
                }
        }
    return std::nullopt;
}

std::string face_poset_dot(const CellComplex& c) {
    std::ostringstream out;
    out << "digraph faces {\n";
    auto node = [](std::size_t d, std::size_t n) { return "c" + std::to_string(d) + "_" + std::to_string(n); };
    for (std::size_t d = 0; d < c.dimensions(); ++d)
        for (std::size_t n = 0; n < c.count(d); ++n) {
            std::string label = c.describe(d, n);
            std::string escaped;
            for (char ch : label) {
                if (ch == '"' || ch == '\\') escaped += '\\';
                escaped += ch;
            }
            out << "  " << node(d, n) << " [label=\"" << escaped << "\"];\n";
        }
    for (std::size_t d = 1; d < c.dimensions(); ++d)
        for (std::size_t n = 0; n < c.count(d); ++n)
            for (const Face& f : c.faces(d, n))
                out << "  " << node(d, n) << " -> " << node(d - 1, f.cell) << " [label=\"" << f.index << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace hpa
