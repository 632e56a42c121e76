#include "hpa/morse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hpa {
namespace {

std::string describe(const CellComplex& x, CellRef r) { return x.describe(r.dim, r.index); }

bool is_vertex_or_arrow(const CellComplex& x, CellRef r) {
    if (r.dim == 0) return true;
    if (r.dim != 1) return false;
    const Hpa& a = x.algebra();
    ClassId p = x.cell(1, r.index).chain[0];
    for (ArrowId e = 0; e < a.quiver().arrow_count(); ++e)
        if (a.arrow_class(e) == p) return true;
    return false;
}

// Coreduction on a set of cells closed under the faces we care about: faces
// outside `members` are ignored. `fixed` cells are declared critical first.
void coreduce(const CellComplex& x, const std::vector<CellRef>& members, const std::set<CellRef>& fixed,
              Matching& out) {
    std::map<CellRef, std::size_t> pos;
    for (std::size_t i = 0; i < members.size(); ++i) pos.emplace(members[i], i);

    const std::size_t n = members.size();
    std::vector<std::vector<std::size_t>> faces(n), cofaces(n);
    for (std::size_t i = 0; i < n; ++i) {
        CellRef c = members[i];
        if (c.dim == 0) continue;
        for (const Face& f : x.faces(c.dim, c.index)) {
            auto it = pos.find(CellRef{c.dim - 1, f.cell});
            if (it == pos.end()) continue;
            faces[i].push_back(it->second);
            cofaces[it->second].push_back(i);
        }
    }
    std::vector<bool> alive(n, true);
    std::vector<std::size_t> live_faces(n);
    for (std::size_t i = 0; i < n; ++i) live_faces[i] = faces[i].size();
    auto remove = [&](std::size_t i) {
        alive[i] = false;
        for (std::size_t j : cofaces[i]) --live_faces[j];
    };
    for (std::size_t i = 0; i < n; ++i)
        if (fixed.count(members[i])) remove(i);

    // members are sorted by (dim, index), so the first hit is the least one
    for (std::size_t remaining = std::count(alive.begin(), alive.end(), true); remaining > 0;) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n && pick == n; ++i)
            if (alive[i] && live_faces[i] == 1) pick = i;
        if (pick != n) {
            std::size_t face = n;
            for (std::size_t j : faces[pick])
                if (alive[j]) face = j;
            out.add(members[pick].dim, members[pick].index, members[face].index);
            remove(face);
            remove(pick);
            remaining -= 2;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && live_faces[i] == 0) {
                remove(i);
                --remaining;
                break;
            }
    }
}

using Combination = std::map<std::tuple<ClassId, std::size_t, ClassId>, long long>;

void accumulate(Combination& into, ClassId l, std::size_t g, ClassId r, long long coeff) {
    auto key = std::make_tuple(l, g, r);
    auto it = into.find(key);
    if (it == into.end()) {
        if (coeff != 0) into.emplace(key, coeff);
    } else if ((it->second += coeff) == 0) {
        into.erase(it);
    }
}

// The term of d(top) hitting `bottom`, which internality makes a middle face.
const Term& matched_term(const BimoduleComplex& c, std::size_t dim, std::size_t top, std::size_t bottom) {
    const Term* hit = nullptr;
    for (const Term& t : c.differential[dim][top])
        if (t.target == bottom) {
            if (hit) throw PreconditionError("matched cells meet in more than one face");
            hit = &t;
        }
    if (!hit) throw PreconditionError("matched cell is not a face of its partner");
    if (!c.algebra->trivial(hit->left) || !c.algebra->trivial(hit->right) || (hit->coeff != 1 && hit->coeff != -1))
        throw PreconditionError("matched face has a non-invertible coefficient");
    return *hit;
}

}  // namespace

Matching::Matching(const CellComplex& x) : complex_(&x) {
    for (std::size_t d = 0; d < x.dimensions(); ++d) {
        up_.emplace_back(x.count(d), none);
        down_.emplace_back(x.count(d), none);
    }
}

void Matching::add(std::size_t dim, std::size_t top, std::size_t bottom) {
    const CellComplex& x = *complex_;
    if (dim == 0 || dim >= x.dimensions() || top >= x.count(dim) || bottom >= x.count(dim - 1))
        throw Error("matched pair refers to a cell outside the complex");
    bool is_face = false;
    for (const Face& f : x.faces(dim, top)) is_face |= f.cell == bottom;
    if (!is_face)
        throw Error(x.describe(dim - 1, bottom) + " is not a face of " + x.describe(dim, top));
    if (up_[dim][top] != none || down_[dim][top] != none)
        throw Error(x.describe(dim, top) + " is matched twice");
    if (up_[dim - 1][bottom] != none || down_[dim - 1][bottom] != none)
        throw Error(x.describe(dim - 1, bottom) + " is matched twice");
    down_[dim][top] = bottom;
    up_[dim - 1][bottom] = top;
    pairs_.push_back({dim, top, bottom});
}

std::size_t Matching::up(std::size_t dim, std::size_t index) const {
    return dim < up_.size() ? up_[dim].at(index) : none;
}

std::size_t Matching::down(std::size_t dim, std::size_t index) const {
    return dim < down_.size() ? down_[dim].at(index) : none;
}

std::vector<std::size_t> Matching::critical_counts() const {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < up_.size(); ++d) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < up_[d].size(); ++i) n += critical(d, i);
        out.push_back(n);
    }
    return out;
}

CheckReport check_internal(const Matching& m) {
    const CellComplex& x = m.complex();
    CheckReport report;
    for (const MatchedPair& p : m.pairs()) {
        CellRef top{p.dim, p.top}, bottom{p.dim - 1, p.bottom};
        for (CellRef r : {top, bottom})
            if (is_vertex_or_arrow(x, r)) report.fail("vertex or arrow cell " + describe(x, r) + " is matched");
        if (x.cell(top.dim, top.index).tail != x.cell(bottom.dim, bottom.index).tail ||
            x.head(top.dim, top.index) != x.head(bottom.dim, bottom.index))
            report.fail("pair " + describe(x, top) + " / " + describe(x, bottom) + " changes tail or head");
    }
    return report;
}

AcyclicReport check_acyclic(const Matching& m) {
    const CellComplex& x = m.complex();
    enum class Mark : unsigned char { fresh, active, done };
    std::vector<std::vector<Mark>> mark;
    for (std::size_t d = 0; d < x.dimensions(); ++d) mark.emplace_back(x.count(d), Mark::fresh);

    auto successors = [&](CellRef c) {
        std::vector<CellRef> out;
        if (c.dim > 0) {
            std::size_t partner = m.down(c.dim, c.index);
            for (const Face& f : x.faces(c.dim, c.index))
                if (f.cell != partner) out.push_back({c.dim - 1, f.cell});
        }
        if (std::size_t partner = m.up(c.dim, c.index); partner != Matching::none) out.push_back({c.dim + 1, partner});
        return out;
    };

    AcyclicReport report;
    std::vector<CellRef> stack;
    std::function<bool(CellRef)> visit = [&](CellRef c) {
        mark[c.dim][c.index] = Mark::active;
        stack.push_back(c);
        for (CellRef s : successors(c)) {
            Mark& ms = mark[s.dim][s.index];
            if (ms == Mark::active) {
                auto start = std::find(stack.begin(), stack.end(), s);
                report.cycle.assign(start, stack.end());
                report.cycle.push_back(s);
                return true;
            }
            if (ms == Mark::fresh && visit(s)) return true;
        }
        stack.pop_back();
        mark[c.dim][c.index] = Mark::done;
        return false;
    };
    for (std::size_t d = 0; d < x.dimensions() && report.cycle.empty(); ++d)
        for (std::size_t i = 0; i < x.count(d); ++i)
            if (mark[d][i] == Mark::fresh && visit({d, i})) break;
    report.acyclic = report.cycle.empty();
    return report;
}

MorseComplex morse_complex(const BimoduleComplex& c, const Matching& m) {
    const CellComplex& x = m.complex();
    if (c.cells != &x) throw PreconditionError("matching and resolution come from different complexes");
    if (auto r = check_internal(m); !r.passed) throw PreconditionError("matching is not internal: " + r.witnesses.front());
    if (auto r = check_acyclic(m); !r.acyclic) throw PreconditionError("matching is not acyclic");
    const Hpa& alg = *c.algebra;

    MorseComplex out;
    out.complex.algebra = c.algebra;
    out.complex.cells = c.cells;
    out.critical.resize(c.degrees());
    std::vector<std::vector<std::size_t>> position(c.degrees());
    for (std::size_t k = 0; k < c.degrees(); ++k) {
        position[k].assign(c.count(k), Matching::none);
        for (std::size_t g = 0; g < c.count(k); ++g)
            if (m.critical(k, g)) {
                position[k][g] = out.critical[k].size();
                out.critical[k].push_back(g);
            }
    }
    while (!out.critical.empty() && out.critical.back().empty()) out.critical.pop_back();
    const std::size_t degrees = out.critical.size();
    out.complex.generators.resize(degrees);
    out.complex.differential.resize(degrees);
    for (std::size_t k = 0; k < degrees; ++k)
        for (std::size_t g : out.critical[k]) out.complex.generators[k].push_back(c.generators[k][g]);

    // flow[k][τ]: image of 1⊗τ⊗1 in the span of critical k-cells
    std::vector<std::vector<std::optional<Combination>>> memo(c.degrees());
    for (std::size_t k = 0; k < c.degrees(); ++k) memo[k].resize(c.count(k));
    std::vector<std::vector<bool>> active(c.degrees());
    for (std::size_t k = 0; k < c.degrees(); ++k) active[k].assign(c.count(k), false);

    std::function<const Combination&(std::size_t, std::size_t)> flow = [&](std::size_t k, std::size_t tau) -> const Combination& {
        if (memo[k][tau]) return *memo[k][tau];
        if (active[k][tau]) throw PreconditionError("gradient flow revisits " + x.describe(k, tau));
        active[k][tau] = true;
        Combination result;
        if (m.critical(k, tau)) {
            accumulate(result, alg.trivial_class(c.tail(k, tau)), position[k][tau], alg.trivial_class(c.head(k, tau)), 1);
        } else if (std::size_t sigma = m.up(k, tau); sigma != Matching::none) {
            const Term& hit = matched_term(c, k + 1, sigma, tau);
            const long long s = hit.coeff;
            for (const Term& t : c.differential[k + 1][sigma]) {
                if (&t == &hit) continue;
                for (const auto& [key, coeff] : flow(k, t.target)) {
                    auto [l, g, r] = key;
                    accumulate(result, alg.compose(t.left, l), g, alg.compose(r, t.right), -s * t.coeff * coeff);
                }
            }
        }
        active[k][tau] = false;
        memo[k][tau] = std::move(result);
        return *memo[k][tau];
    };

    for (std::size_t k = 1; k < degrees; ++k) {
        out.complex.differential[k].resize(out.critical[k].size());
        for (std::size_t i = 0; i < out.critical[k].size(); ++i) {
            Combination total;
            for (const Term& t : c.differential[k][out.critical[k][i]])
                for (const auto& [key, coeff] : flow(k - 1, t.target)) {
                    auto [l, g, r] = key;
                    accumulate(total, alg.compose(t.left, l), g, alg.compose(r, t.right), t.coeff * coeff);
                }
            for (const auto& [key, coeff] : total) {
                auto [l, g, r] = key;
                out.complex.differential[k][i].push_back({coeff, l, g, r, -1});
            }
        }
    }
    if (degrees > 0) out.complex.differential[0].resize(out.critical[0].size());
    return out;
}

std::vector<GradientPath> gradient_paths(const BimoduleComplex& c, const Matching& m, std::size_t k,
                                         std::size_t index, std::size_t limit) {
    const Hpa& alg = *c.algebra;
    if (!m.critical(k, index)) throw PreconditionError("gradient paths start at a critical cell");
    std::vector<GradientPath> out;
    if (k == 0) return out;
    GradientPath current;
    current.cells.push_back({k, index});
    std::function<void(std::size_t, long long, ClassId, ClassId)> walk =
        [&](std::size_t tau, long long coeff, ClassId l, ClassId r) {
            if (m.critical(k - 1, tau)) {
                if (out.size() >= limit) throw Error("gradient path enumeration exceeded its limit");
                GradientPath p = current;
                p.cells.push_back({k - 1, tau});
                p.coeff = coeff;
                p.left = l;
                p.right = r;
                out.push_back(std::move(p));
                return;
            }
            std::size_t sigma = m.up(k - 1, tau);
            if (sigma == Matching::none) return;
            const Term& hit = matched_term(c, k, sigma, tau);
            current.cells.push_back({k - 1, tau});
            current.cells.push_back({k, sigma});
            for (const Term& t : c.differential[k][sigma]) {
                if (&t == &hit) continue;
                walk(t.target, -hit.coeff * coeff * t.coeff, alg.compose(l, t.left), alg.compose(t.right, r));
            }
            current.cells.pop_back();
            current.cells.pop_back();
        };
    for (const Term& t : c.differential[k][index]) walk(t.target, t.coeff, t.left, t.right);
    return out;
}

Matching babson_hersh_matching(const CellComplex& x, std::vector<ClassId>* fallback) {
    const Hpa& a = x.algebra();
    PathPoset poset(a);
    Matching out(x);

    // cells with dim >= 1 grouped by top class
    std::map<ClassId, std::vector<CellRef>> by_top;
    for (std::size_t d = 1; d < x.dimensions(); ++d)
        for (std::size_t i = 0; i < x.count(d); ++i) by_top[x.cell(d, i).chain.back()].push_back({d, i});

    std::set<ClassId> arrows;
    for (ArrowId e = 0; e < a.quiver().arrow_count(); ++e) arrows.insert(a.arrow_class(e));

    auto label = [&](ClassId q, ClassId r) {
        std::vector<std::string> out;
        for (ArrowId e : a.path_class(a.divide(q, r)).canonical.arrows) out.push_back(a.quiver().arrow(e).label);
        return out;
    };

    for (auto& [p, members] : by_top) {
        const VertexId v = a.tail(p);
        const ClassId bottom = a.trivial_class(v);
        std::vector<ClassId> interior;
        for (ClassId q : poset.above(bottom))
            if (q != p && poset.less(q, p)) interior.push_back(q);

        auto cover = [&](ClassId q, ClassId r) {
            if (!poset.less(q, r)) return false;
            for (ClassId z : interior)
                if (poset.less(q, z) && poset.less(z, r)) return false;
            return true;
        };

        // maximal chains of [e, p] as interior sequences, with label words
        std::vector<std::pair<std::vector<std::vector<std::string>>, std::vector<ClassId>>> facets;
        std::vector<ClassId> chain;
        std::vector<std::vector<std::string>> labels;
        std::function<void(ClassId)> grow = [&](ClassId q) {
            if (cover(q, p)) {
                labels.push_back(label(q, p));
                facets.emplace_back(labels, chain);
                labels.pop_back();
            }
            for (ClassId z : interior)
                if (cover(q, z)) {
                    chain.push_back(z);
                    labels.push_back(label(q, z));
                    grow(z);
                    labels.pop_back();
                    chain.pop_back();
                }
        };
        grow(bottom);
        std::sort(facets.begin(), facets.end());

        auto cell_of = [&](const std::vector<ClassId>& simplex) {
            Cell c{v, simplex};
            std::sort(c.chain.begin(), c.chain.end(), [&](ClassId s, ClassId t) { return poset.less(s, t); });
            c.chain.push_back(p);
            auto idx = x.find(c);
            if (!idx) throw PreconditionError("matching needs the full realization; missing " + x.describe(c));
            return CellRef{c.dim(), *idx};
        };

        std::vector<MatchedPair> pairs;
        bool shelled = !arrows.count(p) || interior.empty();
        for (std::size_t j = 0; j < facets.size() && shelled; ++j) {
            const std::vector<ClassId>& f = facets[j].second;
            const std::size_t n = f.size();
            if (n > 20) {
                shelled = false;
                break;
            }
            auto in_earlier = [&](std::uint32_t mask) {
                for (std::size_t i = 0; i < j; ++i) {
                    const auto& g = facets[i].second;
                    bool all = true;
                    for (std::size_t b = 0; b < n && all; ++b)
                        if ((mask >> b) & 1u) all = std::find(g.begin(), g.end(), f[b]) != g.end();
                    if (all) return true;
                }
                return false;
            };
            const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
            std::uint32_t restriction = 0;
            for (std::size_t b = 0; b < n; ++b)
                if (in_earlier(full & ~(1u << b))) restriction |= 1u << b;
            for (std::uint32_t mask = 0; mask <= full && shelled; ++mask) {
                bool fresh = !in_earlier(mask);
                if (fresh != ((mask & restriction) == restriction)) shelled = false;
            }
            if (!shelled || restriction == full) continue;
            std::size_t pivot = 0;
            while ((restriction >> pivot) & 1u) ++pivot;
            for (std::uint32_t mask = 0; mask <= full; ++mask) {
                if ((mask & restriction) != restriction || ((mask >> pivot) & 1u)) continue;
                std::vector<ClassId> lower, upper;
                for (std::size_t b = 0; b < n; ++b)
                    if ((mask >> b) & 1u) lower.push_back(f[b]);
                upper = lower;
                upper.push_back(f[pivot]);
                CellRef lo = cell_of(lower), hi = cell_of(upper);
                pairs.push_back({hi.dim, hi.index, lo.index});
            }
        }
        if (shelled) {
            for (const MatchedPair& mp : pairs) out.add(mp.dim, mp.top, mp.bottom);
        } else {
            if (fallback) fallback->push_back(p);
            std::sort(members.begin(), members.end());
            std::set<CellRef> fixed;
            if (arrows.count(p)) fixed.insert(CellRef{1, *x.find(Cell{v, {p}})});
            coreduce(x, members, fixed, out);
        }
    }
    return out;
}

Matching greedy_internal_matching(const CellComplex& x) {
    Matching out(x);
    std::map<std::pair<VertexId, VertexId>, std::vector<CellRef>> strata;
    std::set<CellRef> fixed;
    for (std::size_t d = 0; d < x.dimensions(); ++d)
        for (std::size_t i = 0; i < x.count(d); ++i) {
            CellRef r{d, i};
            strata[{x.cell(d, i).tail, x.head(d, i)}].push_back(r);
            if (is_vertex_or_arrow(x, r)) fixed.insert(r);
        }
    for (auto& [key, members] : strata) coreduce(x, members, fixed, out);
    return out;
}

CheckReport check_minimal(const MorseComplex& mc) {
    const BimoduleComplex& c = mc.complex;
    CheckReport report;
    for (std::size_t k = 1; k < c.degrees(); ++k)
        for (std::size_t g = 0; g < c.count(k); ++g)
            for (const Term& t : c.differential[k][g])
                if (t.coeff != 0 && c.algebra->trivial(t.left) && c.algebra->trivial(t.right))
                    report.fail("unit entry " + std::to_string(t.coeff) + " from " + c.describe(k, g) + " to " +
                                c.describe(k - 1, t.target));
    return report;
}

CheckReport check_linear(const MorseComplex& mc) {
    const BimoduleComplex& c = mc.complex;
    if (!c.algebra->graded()) throw PreconditionError("linearity needs a length-graded algebra");
    CheckReport report;
    for (std::size_t k = 1; k < c.degrees(); ++k)
        for (std::size_t g = 0; g < c.count(k); ++g)
            for (const Term& t : c.differential[k][g])
                if (t.coeff != 0 && c.algebra->length(t.left) + c.algebra->length(t.right) != 1)
                    report.fail("entry " + c.algebra->describe(t.left) + " ⊗ " + c.describe(k - 1, t.target) + " ⊗ " +
                                c.algebra->describe(t.right) + " of " + c.describe(k, g) + " has degree " +
                                std::to_string(c.algebra->length(t.left) + c.algebra->length(t.right)));
    return report;
}

Cell parse_cell(const Hpa& a, const std::vector<std::string>& chain) {
    const Quiver& q = a.quiver();
    if (chain.empty()) throw Error("empty chain");
    std::vector<ClassId> classes;
    for (const std::string& word : chain) {
        std::istringstream in(word);
        std::vector<std::string> labels;
        for (std::string t; in >> t;) labels.push_back(t);
        if (labels.size() == 1 && labels[0].rfind("e_", 0) == 0 && !q.find_arrow(labels[0])) {
            auto v = q.find_vertex(labels[0].substr(2));
            if (!v) throw Error("unknown vertex in '" + word + "'");
            classes.push_back(a.trivial_class(*v));
            continue;
        }
        if (labels.empty()) throw Error("empty word in chain");
        PathWord w;
        for (const std::string& l : labels) {
            auto e = q.find_arrow(l);
            if (!e) throw Error("unknown arrow '" + l + "' in '" + word + "'");
            if (w.arrows.empty()) w.tail = q.arrow(*e).tail;
            w.arrows.push_back(*e);
        }
        ClassId c = a.class_of(w);
        if (c == no_class) throw Error("'" + word + "' is not a path");
        classes.push_back(c);
    }
    Cell out;
    ClassId base = classes[0];
    out.tail = a.head(base);
    ClassId prev = a.trivial_class(out.tail);
    for (std::size_t i = 1; i < classes.size(); ++i) {
        ClassId r = a.divide(base, classes[i]);
        if (r == no_class) throw NotSubpathError("'" + chain[0] + "' does not divide '" + chain[i] + "'");
        if (prev == r || a.divide(prev, r) == no_class) throw Error("chain is not strictly increasing at '" + chain[i] + "'");
        out.chain.push_back(r);
        prev = r;
    }
    return out;
}

Matching matching_from_chains(const CellComplex& x,
                              const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& pairs) {
    Matching out(x);
    std::set<std::pair<CellRef, CellRef>> seen;
    for (const auto& [top_words, bottom_words] : pairs) {
        Cell top = parse_cell(x.algebra(), top_words);
        Cell bottom = parse_cell(x.algebra(), bottom_words);
        auto ti = x.find(top), bi = x.find(bottom);
        if (!ti || !bi) throw Error("matched cell is not in the complex");
        if (top.dim() != bottom.dim() + 1) throw Error("matched cells must differ by one in dimension: " + x.describe(top));
        CellRef t{top.dim(), *ti}, b{bottom.dim(), *bi};
        if (!seen.insert({t, b}).second) continue;
        out.add(t.dim, t.index, b.index);
    }
    return out;
}

}  // namespace hpa
