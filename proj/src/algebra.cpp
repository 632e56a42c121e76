#include "hpa/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hpa/errors.hpp"

namespace hpa {
namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

ClassId Hpa::class_of(const PathWord& w) const {
    auto it = word_index_.find(w);
    return it == word_index_.end() ? no_class : word_class_[it->second];
}

Hpa congruence_closure(const Quiver& q, const std::vector<PathWord>& paths, const RelationSet& relations) {
    Hpa a;
    a.quiver_ = q;
    a.relations_ = relations;
    a.words_ = paths;
    for (std::size_t i = 0; i < paths.size(); ++i) a.word_index_.emplace(paths[i], i);

    auto index_of = [&](const PathWord& w) {
        auto it = a.word_index_.find(w);
        if (it == a.word_index_.end())
            throw Error("word '" + to_string(q, w) + "' is not among the enumerated paths");
        return it->second;
    };

    const std::size_t n = paths.size();
    // One-arrow extensions on either side; products of arrows generate all
    // concatenations, so closing under these closes under everything.
    std::vector<std::vector<std::size_t>> right(n), left(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PathWord& w = paths[i];
        for (ArrowId x : q.out_arrows(head(q, w))) {
            PathWord e = w;
            e.arrows.push_back(x);
            right[i].push_back(index_of(e));
        }
        for (ArrowId x : q.in_arrows(w.tail)) {
            PathWord e{q.arrow(x).tail, {x}};
            e.arrows.insert(e.arrows.end(), w.arrows.begin(), w.arrows.end());
            left[i].push_back(index_of(e));
        }
    }

    DisjointSets sets(n);
    for (const auto& g : relations.groups)
        for (std::size_t k = 1; k < g.size(); ++k) sets.unite(index_of(g[0]), index_of(g[k]));

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = sets.find(i);
            if (r == i) continue;
            // i and r share endpoints, so their extension lists align arrow by arrow.
            for (std::size_t k = 0; k < right[i].size(); ++k) changed |= sets.unite(right[i][k], right[r][k]);
            for (std::size_t k = 0; k < left[i].size(); ++k) changed |= sets.unite(left[i][k], left[r][k]);
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[sets.find(i)].push_back(i);

    for (auto& [root, members] : groups) {
        PathClass c;
        std::size_t best = members.front();
        for (std::size_t m : members)
            if (label_less(q, paths[m], paths[best])) best = m;
        c.canonical = paths[best];
        c.tail = paths[best].tail;
        c.head = head(q, paths[best]);
        c.length = paths[best].length();
        c.members = members;
        for (std::size_t m : members)
            if (paths[m].length() != c.length) a.graded_ = false;
        a.classes_.push_back(std::move(c));
    }
    std::sort(a.classes_.begin(), a.classes_.end(), [&](const PathClass& x, const PathClass& y) {
        if (x.tail != y.tail) return x.tail < y.tail;
        if (x.length != y.length) return x.length < y.length;
        return label_less(q, x.canonical, y.canonical);
    });

    const std::size_t m = a.classes_.size();
    a.word_class_.assign(n, no_class);
    for (ClassId c = 0; c < m; ++c)
        for (std::size_t w : a.classes_[c].members) a.word_class_[w] = c;

    a.trivial_.assign(q.vertex_count(), no_class);
    a.arrow_class_.assign(q.arrow_count(), no_class);
    for (ClassId c = 0; c < m; ++c)
        if (a.classes_[c].trivial()) a.trivial_[a.classes_[c].tail] = c;
    for (ArrowId x = 0; x < q.arrow_count(); ++x)
        a.arrow_class_[x] = a.word_class_[index_of(PathWord{q.arrow(x).tail, {x}})];

    a.compose_.assign(m * m, no_class);
    a.divide_.assign(m * m, no_class);
    for (ClassId p = 0; p < m; ++p) {
        for (ClassId r = 0; r < m; ++r) {
            if (a.classes_[p].head != a.classes_[r].tail) continue;
            ClassId pr = a.word_class_[index_of(concat(q, a.classes_[p].canonical, a.classes_[r].canonical))];
            a.compose_[p * m + r] = pr;
            if (a.divide_[p * m + pr] == no_class) a.divide_[p * m + pr] = r;
        }
    }
    return a;
}

Hpa make_hpa(const Quiver& q, const RelationSet& relations) {
    return congruence_closure(q, enumerate_paths(q), relations);
}

HpaReport check_hpa(const Hpa& a) {
    HpaReport report;
    report.graded = a.graded();
    const std::size_t m = a.class_count();
    for (ClassId r = 0; r < m; ++r) {
        if (a.trivial(r)) continue;
        // Left factor r: classes p with tail(p) = head(r), keyed by r·p.
        std::map<ClassId, ClassId> seen_left;
        // Right factor r: classes p with head(p) = tail(r), keyed by p·r.
        std::map<ClassId, ClassId> seen_right;
        for (ClassId p = 0; p < m; ++p) {
            if (ClassId rp = a.compose(r, p); rp != no_class) {
                auto [it, fresh] = seen_left.emplace(rp, p);
                if (!fresh)
                    report.violations.push_back({1, a.path_class(r).canonical, a.path_class(it->second).canonical,
                                                 a.path_class(p).canonical});
            }
            if (ClassId pr = a.compose(p, r); pr != no_class) {
                auto [it, fresh] = seen_right.emplace(pr, p);
                if (!fresh)
                    report.violations.push_back({2, a.path_class(r).canonical, a.path_class(it->second).canonical,
                                                 a.path_class(p).canonical});
            }
        }
    }
    report.valid = report.violations.empty();
    return report;
}

void require_valid(const Hpa& a) {
    auto report = check_hpa(a);
    if (!report.valid) {
        const auto& v = report.violations.front();
        throw PreconditionError("not a homotopy path algebra: condition " + std::to_string(v.condition) +
                                " fails for (" + to_string(a.quiver(), v.factor) + "; " +
                                to_string(a.quiver(), v.first) + ", " + to_string(a.quiver(), v.second) + ")");
    }
}

PathPoset::PathPoset(const Hpa& a) : hpa_(&a), above_(a.class_count()) {
    for (ClassId p = 0; p < a.class_count(); ++p)
        for (ClassId q = 0; q < a.class_count(); ++q)
            if (p != q && a.divide(p, q) != no_class) above_[p].push_back(q);
}

bool PathPoset::less(ClassId p, ClassId q) const {
    return p != q && hpa_->divide(p, q) != no_class;
}

ClassId PathPoset::divide(ClassId p, ClassId q) const {
    ClassId r = hpa_->divide(p, q);
    if (r == no_class)
        throw NotSubpathError("'" + hpa_->describe(p) + "' is not a subpath of '" + hpa_->describe(q) + "'");
    return r;
}

PathPoset path_poset(const Hpa& a) {
    require_valid(a);
    return PathPoset(a);
}

QuiverDocument tensor_presentation(const Hpa& a, const Hpa& b) {
    const Quiver& qa = a.quiver();
    const Quiver& qb = b.quiver();
    const std::size_t nb = qb.vertex_count();
    auto vid = [&](VertexId v, VertexId w) { return static_cast<VertexId>(v * nb + w); };

    std::vector<std::string> vertices;
    for (VertexId v = 0; v < qa.vertex_count(); ++v)
        for (VertexId w = 0; w < nb; ++w) vertices.push_back("(" + qa.vertex_name(v) + "," + qb.vertex_name(w) + ")");

    std::vector<Arrow> arrows;
    // left[x][w]: arrow (x, w); right[v][y]: arrow (v, y)
    std::vector<std::vector<ArrowId>> left(qa.arrow_count(), std::vector<ArrowId>(nb));
    std::vector<std::vector<ArrowId>> right(qa.vertex_count(), std::vector<ArrowId>(qb.arrow_count()));
    for (ArrowId x = 0; x < qa.arrow_count(); ++x)
        for (VertexId w = 0; w < nb; ++w) {
            left[x][w] = static_cast<ArrowId>(arrows.size());
            arrows.push_back({"(" + qa.arrow(x).label + "," + qb.vertex_name(w) + ")",
                              vid(qa.arrow(x).tail, w), vid(qa.arrow(x).head, w)});
        }
    for (VertexId v = 0; v < qa.vertex_count(); ++v)
        for (ArrowId y = 0; y < qb.arrow_count(); ++y) {
            right[v][y] = static_cast<ArrowId>(arrows.size());
            arrows.push_back({"(" + qa.vertex_name(v) + "," + qb.arrow(y).label + ")",
                              vid(v, qb.arrow(y).tail), vid(v, qb.arrow(y).head)});
        }
    Quiver product(std::move(vertices), std::move(arrows));

    RelationSet rels;
    for (const auto& g : a.relations().groups)
        for (VertexId w = 0; w < nb; ++w) {
            RelationGroup image;
            for (const auto& word : g) {
                PathWord p{vid(word.tail, w), {}};
                for (ArrowId x : word.arrows) p.arrows.push_back(left[x][w]);
                image.push_back(std::move(p));
            }
            rels.groups.push_back(std::move(image));
        }
    for (const auto& g : b.relations().groups)
        for (VertexId v = 0; v < qa.vertex_count(); ++v) {
            RelationGroup image;
            for (const auto& word : g) {
                PathWord p{vid(v, word.tail), {}};
                for (ArrowId y : word.arrows) p.arrows.push_back(right[v][y]);
                image.push_back(std::move(p));
            }
            rels.groups.push_back(std::move(image));
        }
    for (ArrowId x = 0; x < qa.arrow_count(); ++x)
        for (ArrowId y = 0; y < qb.arrow_count(); ++y) {
            VertexId v = qa.arrow(x).tail, v2 = qa.arrow(x).head;
            VertexId w = qb.arrow(y).tail, w2 = qb.arrow(y).head;
            rels.groups.push_back({PathWord{vid(v, w), {left[x][w], right[v2][y]}},
                                   PathWord{vid(v, w), {right[v][y], left[x][w2]}}});
        }
    return {std::move(product), std::move(rels)};
}

Hpa tensor(const Hpa& a, const Hpa& b) {
    require_valid(a);
    require_valid(b);
    auto doc = tensor_presentation(a, b);
    return make_hpa(doc.quiver, doc.relations);
}

}  // namespace hpa
