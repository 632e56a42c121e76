#include "hpa/invariants.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hpa/morse.hpp"
#include "hpa/toric.hpp"

namespace hpa {
namespace {

void merge_into(std::vector<HomologyGroup>& table, int degree, const HomologyGroup& h) {
    if (degree < 0) return;
    while (static_cast<int>(table.size()) <= degree) {
        HomologyGroup g;
        g.degree = static_cast<int>(table.size());
        table.push_back(g);
    }
    table[static_cast<std::size_t>(degree)].rank += h.rank;
    auto& t = table[static_cast<std::size_t>(degree)].torsion;
    t.insert(t.end(), h.torsion.begin(), h.torsion.end());
    std::sort(t.begin(), t.end());
}

}  // namespace

OrderComplex interval_order_complex(const Hpa& a, ClassId p) {
    if (a.trivial(p)) throw PreconditionError("interval of a trivial path");
    PathPoset poset(a);
    OrderComplex k;
    k.top = p;
    for (ClassId q : poset.above(a.trivial_class(a.tail(p))))
        if (q != p && poset.less(q, p)) k.points.push_back(q);
    std::vector<ClassId> chain;
    std::function<void()> grow = [&]() {
        const std::size_t d = chain.size() - 1;
        if (k.simplices.size() <= d) k.simplices.resize(d + 1);
        k.simplices[d].push_back(chain);
        for (ClassId q : k.points)
            if (poset.less(chain.back(), q)) {
                chain.push_back(q);
                grow();
                chain.pop_back();
            }
    };
    for (ClassId q : k.points) {
        chain = {q};
        grow();
    }
    for (auto& level : k.simplices) std::sort(level.begin(), level.end());
    return k;
}

ChainComplex reduced_chain_complex(const OrderComplex& k) {
    ChainComplex c;
    c.lowest = -1;
    c.ranks.push_back(1);
    for (const auto& level : k.simplices) c.ranks.push_back(level.size());
    c.differentials.push_back(IntegerMatrix::Zero(0, 1));
    if (!k.simplices.empty()) c.differentials.push_back(IntegerMatrix::Ones(1, static_cast<Eigen::Index>(k.simplices[0].size())));
    for (std::size_t d = 1; d < k.simplices.size(); ++d) {
        std::map<std::vector<ClassId>, std::size_t> index;
        for (std::size_t i = 0; i < k.simplices[d - 1].size(); ++i) index.emplace(k.simplices[d - 1][i], i);
        IntegerMatrix m = IntegerMatrix::Zero(static_cast<Eigen::Index>(k.simplices[d - 1].size()),
                                              static_cast<Eigen::Index>(k.simplices[d].size()));
        for (std::size_t s = 0; s < k.simplices[d].size(); ++s)
            for (std::size_t i = 0; i <= d; ++i) {
                std::vector<ClassId> face = k.simplices[d][s];
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                m(static_cast<Eigen::Index>(index.at(face)), static_cast<Eigen::Index>(s)) += (i % 2 == 0) ? 1 : -1;
            }
        c.differentials.push_back(std::move(m));
    }
    return c;
}

std::vector<HomologyGroup> reduced_homology(const OrderComplex& k, const Ring& ring) {
    return homology(reduced_chain_complex(k), ring);
}

std::vector<HomologyGroup> tor_via_intervals(const Hpa& a, VertexId v, VertexId w, const Ring& ring) {
    std::vector<HomologyGroup> table;
    HomologyGroup unit;
    unit.rank = v == w ? 1 : 0;
    merge_into(table, 0, unit);
    for (ClassId p = 0; p < a.class_count(); ++p) {
        if (a.trivial(p) || a.tail(p) != v || a.head(p) != w) continue;
        for (const HomologyGroup& h : reduced_homology(interval_order_complex(a, p), ring)) merge_into(table, h.degree + 2, h);
    }
    return table;
}

std::vector<HomologyGroup> tor_via_resolution(const BimoduleComplex& c, VertexId v, VertexId w, const Ring& ring) {
    return homology(tensor_simples(c, v, w), ring);
}

std::vector<HomologyGroup> nonzero(std::vector<HomologyGroup> groups) {
    std::erase_if(groups, [](const HomologyGroup& h) { return h.rank == 0 && h.torsion.empty(); });
    return groups;
}

std::vector<std::size_t> BettiTable::totals() const {
    std::vector<std::size_t> out;
    for (const auto& [key, rank] : ranks) {
        auto d = static_cast<std::size_t>(std::get<0>(key));
        if (out.size() <= d) out.resize(d + 1, 0);
        out[d] += rank;
    }
    return out;
}

BettiTable betti_table(const Hpa& a) {
    BettiTable t;
    const Quiver& q = a.quiver();
    for (VertexId v = 0; v < q.vertex_count(); ++v)
        for (VertexId w = 0; w < q.vertex_count(); ++w)
            for (const HomologyGroup& h : tor_via_intervals(a, v, w, Ring::integers())) {
                if (h.rank > 0) t.ranks[{h.degree, v, w}] = h.rank;
                if (!h.torsion.empty()) {
                    t.torsion = true;
                    t.warnings.push_back("Tor_" + std::to_string(h.degree) + "(S_" + q.vertex_name(v) + ", S_" +
                                         q.vertex_name(w) + ") has torsion; no minimal resolution over Z");
                }
            }
    return t;
}

ElCertificate el_shellability_certificate(const Hpa& a, ClassId p, const std::vector<int>& rank) {
    if (rank.size() != a.quiver().arrow_count()) throw Error("labeling must rank every arrow");
    OrderComplex k = interval_order_complex(a, p);
    PathPoset poset(a);
    std::vector<ClassId> closed{a.trivial_class(a.tail(p))};
    closed.insert(closed.end(), k.points.begin(), k.points.end());
    closed.push_back(p);

    auto is_cover = [&](ClassId x, ClassId y) {
        if (!poset.less(x, y)) return false;
        for (ClassId z : k.points)
            if (poset.less(x, z) && poset.less(z, y)) return false;
        return true;
    };
    auto label = [&](ClassId x, ClassId y) {
        const PathClass& r = a.path_class(a.divide(x, y));
        if (r.length != 1)
            throw PreconditionError("cover " + a.describe(x) + " < " + a.describe(y) + " is not a single arrow");
        return rank[r.canonical.arrows[0]];
    };
    for (ClassId x : closed)
        for (ClassId y : closed)
            if (is_cover(x, y)) label(x, y);

    bool antichain = true;
    for (ClassId x : k.points)
        for (ClassId y : k.points) antichain = antichain && !poset.less(x, y);
    if (antichain) return {ElCertificate::Status::point_set, "interval is a finite set of points"};

    for (ClassId x : closed)
        for (ClassId y : closed) {
            if (!poset.less(x, y)) continue;
            std::vector<std::vector<int>> sequences;
            std::vector<int> seq;
            std::function<void(ClassId)> walk = [&](ClassId z) {
                if (z == y) {
                    sequences.push_back(seq);
                    return;
                }
                for (ClassId u : closed)
                    if (is_cover(z, u) && poset.less_equal(u, y)) {
                        seq.push_back(label(z, u));
                        walk(u);
                        seq.pop_back();
                    }
            };
            walk(x);
            std::sort(sequences.begin(), sequences.end());
            std::size_t increasing = 0;
            for (const auto& s : sequences) increasing += std::is_sorted(s.begin(), s.end());
            bool first_ok = !sequences.empty() && std::is_sorted(sequences[0].begin(), sequences[0].end()) &&
                            (sequences.size() == 1 || sequences[0] != sequences[1]);
            if (increasing != 1 || !first_ok)
                return {ElCertificate::Status::unknown,
                        "[" + a.describe(x) + ", " + a.describe(y) + "] has " + std::to_string(increasing) +
                            " increasing maximal chains"};
        }
    return {ElCertificate::Status::certified, "EL-labeling"};
}

std::string to_string(KoszulVerdict::Kind k) {
    switch (k) {
    case KoszulVerdict::Kind::certified: return "koszul-certified";
    case KoszulVerdict::Kind::not_koszul: return "not-koszul";
    case KoszulVerdict::Kind::unknown: return "unknown";
    }
    return "unknown";
}

KoszulVerdict koszul_check(const Hpa& a) {
    if (!a.graded()) throw PreconditionError("Koszulity criteria need a length-graded algebra");
    require_valid(a);
    KoszulVerdict v;
    const Quiver& q = a.quiver();

    const bool monomial = has_monomial_presentation(a);
    if (monomial) {
        Directability d = check_directable(a);
        if (d.directable) {
            v.kind = KoszulVerdict::Kind::certified;
            v.method = "directable";
            v.order = d.order;
            return v;
        }
        for (const auto& c : d.constraints) v.witnesses.push_back("forced order " + c);
    }

    // cover labels: variable rank for monomial presentations, label order otherwise
    std::vector<std::string> keys;
    for (const Arrow& x : q.arrows()) keys.push_back(monomial ? variable_of(x.label) : x.label);
    std::vector<std::string> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> rank;
    for (const auto& key : keys)
        rank.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), key) - sorted.begin()));
    bool all_shellable = true;
    for (ClassId p = 0; p < a.class_count() && all_shellable; ++p) {
        if (a.trivial(p)) continue;
        ElCertificate cert = el_shellability_certificate(a, p, rank);
        if (cert.status == ElCertificate::Status::unknown) {
            all_shellable = false;
            v.witnesses.push_back(cert.detail);
        }
    }
    if (all_shellable) {
        v.kind = KoszulVerdict::Kind::certified;
        v.method = "interval-shellability";
        v.witnesses.clear();
        return v;
    }

    CellComplex x = build_realization(a);
    BimoduleComplex c = cellular_resolution(x);
    Matching m = babson_hersh_matching(x);
    MorseComplex mc = morse_complex(c, m);
    CheckReport minimal = check_minimal(mc);
    if (!minimal.passed) {
        v.witnesses.push_back("Babson-Hersh Morse complex is not minimal");
        return v;
    }
    CheckReport linear = check_linear(mc);
    v.method = "linear-minimal-resolution";
    if (linear.passed) {
        v.kind = KoszulVerdict::Kind::certified;
        v.witnesses.clear();
    } else {
        v.kind = KoszulVerdict::Kind::not_koszul;
        v.witnesses.insert(v.witnesses.end(), linear.witnesses.begin(), linear.witnesses.end());
    }
    return v;
}

}  // namespace hpa
