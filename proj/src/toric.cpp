#include "hpa/toric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "hpa/linear_program.hpp"

namespace hpa {
namespace {

long long mod(long long x, long long m) { return ((x % m) + m) % m; }

// Integer vector Y with Y·μ_i >= 1 for every column i, if μ is proper.
std::optional<std::vector<long long>> positive_functional(const WeightData& w) {
    const std::size_t r = w.rank(), n = w.columns();
    if (r == 0) return std::nullopt;
    // variables: y+ (r), y- (r), slack (n)
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * r + n, Rational(0)));
    std::vector<Rational> b(n, Rational(1)), c(2 * r + n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            a[i][k] = w.free(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
            a[i][r + k] = -a[i][k];
        }
        a[i][2 * r + i] = -1;
    }
    LpResult res = solve_lp(a, b, c);
    if (res.status != LpResult::Status::optimal) return std::nullopt;
    BigInt scale = 1;
    std::vector<Rational> y(r);
    for (std::size_t k = 0; k < r; ++k) {
        y[k] = res.x[k] - res.x[r + k];
        BigInt den = boost::multiprecision::denominator(y[k]);
        scale = scale / boost::multiprecision::gcd(scale, den) * den;
    }
    std::vector<long long> out(r);
    for (std::size_t k = 0; k < r; ++k) {
        Rational v = y[k] * Rational(scale);
        out[k] = static_cast<long long>(boost::multiprecision::numerator(v));
    }
    return out;
}

// Solutions of μ_free c = g over Z: particular solution and kernel basis.
struct IntegerSolution {
    bool solvable = false;
    Exponent particular;
    std::vector<Exponent> kernel;
};

IntegerSolution solve_integer(const WeightData& w, const std::vector<long long>& g) {
    const std::size_t r = w.rank(), n = w.columns();
    auto snf = smith_normal_form<long long>(w.free);
    IntegerSolution out;
    std::size_t rank = 0;
    while (rank < snf.diagonal.size() && snf.diagonal[rank] != 0) ++rank;
    std::vector<long long> ug(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) ug[i] += snf.u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * g[k];
    std::vector<long long> y(n, 0);
    for (std::size_t i = 0; i < r; ++i) {
        if (i < rank) {
            if (ug[i] % snf.diagonal[i] != 0) return out;
            y[i] = ug[i] / snf.diagonal[i];
        } else if (ug[i] != 0) {
            return out;
        }
    }
    out.solvable = true;
    out.particular.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) out.particular[i] += snf.v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * y[k];
    for (std::size_t k = rank; k < n; ++k) {
        Exponent col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = snf.v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        out.kernel.push_back(std::move(col));
    }
    return out;
}

std::vector<long long> torsion_of(const WeightData& w, const Exponent& c) {
    std::vector<long long> out;
    for (const TorsionRow& t : w.torsion) {
        long long s = 0;
        for (std::size_t i = 0; i < c.size(); ++i) s = mod(s + mod(t.row[i], t.modulus) * mod(c[i], t.modulus), t.modulus);
        out.push_back(s);
    }
    return out;
}

// b in [0,1)^N with μ_free b = g exists
bool in_half_open_zonotope(const WeightData& w, const std::vector<long long>& g) {
    const std::size_t r = w.rank(), n = w.columns();
    // variables: b (n), slack u (n), t
    const std::size_t cols = 2 * n + 1;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<Rational> row(cols, Rational(0));
        for (std::size_t i = 0; i < n; ++i) row[i] = w.free(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
        a.push_back(std::move(row));
        rhs.emplace_back(g[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row(cols, Rational(0));
        row[i] = 1;
        row[n + i] = 1;
        row[2 * n] = 1;
        a.push_back(std::move(row));
        rhs.emplace_back(1);
    }
    std::vector<Rational> c(cols, Rational(0));
    c[2 * n] = 1;
    LpResult res = solve_lp(a, rhs, c);
    return res.status == LpResult::Status::optimal && res.value > 0;
}

using VariableMap = std::vector<std::size_t>;  // arrow -> variable index

Directability directability(const Hpa& a, const VariableMap& var, const std::vector<std::string>& names) {
    const Quiver& q = a.quiver();
    const std::size_t nv = names.size();
    std::set<std::pair<std::size_t, std::size_t>> forced;
    for (ArrowId x = 0; x < q.arrow_count(); ++x)
        for (ArrowId y : q.out_arrows(q.arrow(x).head)) {
            if (var[x] == var[y]) continue;
            const VertexId u = q.arrow(x).tail, w = q.arrow(y).head;
            const ClassId target = a.class_of(PathWord{u, {x, y}});
            bool swapped = false;
            for (ArrowId x2 : q.out_arrows(u)) {
                if (var[x2] != var[y]) continue;
                for (ArrowId y2 : q.out_arrows(q.arrow(x2).head))
                    if (var[y2] == var[x] && q.arrow(y2).head == w && a.class_of(PathWord{u, {x2, y2}}) == target)
                        swapped = true;
            }
            if (!swapped) forced.insert({var[x], var[y]});
        }

    Directability out;
    std::vector<std::vector<std::size_t>> succ(nv);
    std::vector<std::size_t> indegree(nv, 0);
    for (auto [s, t] : forced) {
        succ[s].push_back(t);
        ++indegree[t];
        out.constraints.push_back(names[s] + "<" + names[t]);
    }
    // Kahn's algorithm, smallest name first
    auto by_name = [&](std::size_t s, std::size_t t) { return names[s] > names[t]; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_name)> ready(by_name);
    for (std::size_t v = 0; v < nv; ++v)
        if (indegree[v] == 0) ready.push(v);
    while (!ready.empty()) {
        std::size_t v = ready.top();
        ready.pop();
        out.order.push_back(names[v]);
        for (std::size_t t : succ[v])
            if (--indegree[t] == 0) ready.push(t);
    }
    out.directable = out.order.size() == nv;
    if (!out.directable) out.order.clear();
    return out;
}

}  // namespace

WeightData make_weight_data(IntegerMatrix free, std::vector<TorsionRow> torsion) {
    std::size_t n = static_cast<std::size_t>(free.cols());
    if (free.rows() == 0 && !torsion.empty()) n = torsion.front().row.size();
    if (n < 1) throw Error("weight data needs at least one column");
    if (free.rows() == 0) free.resize(0, static_cast<Eigen::Index>(n));
    for (const TorsionRow& t : torsion) {
        if (t.modulus < 2) throw Error("torsion modulus must be at least 2");
        if (t.row.size() != n) throw Error("torsion row length differs from the column count");
    }
    return WeightData{std::move(free), std::move(torsion)};
}

Degree degree_of(const WeightData& w, const Exponent& m) {
    Degree d;
    for (std::size_t k = 0; k < w.rank(); ++k) {
        long long s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += w.free(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) * m[i];
        d.free.push_back(s);
    }
    d.torsion = torsion_of(w, m);
    return d;
}

Degree difference(const WeightData& w, const Degree& e, const Degree& d) {
    Degree out;
    for (std::size_t k = 0; k < e.free.size(); ++k) out.free.push_back(e.free[k] - d.free[k]);
    for (std::size_t j = 0; j < e.torsion.size(); ++j)
        out.torsion.push_back(mod(e.torsion[j] - d.torsion[j], w.torsion[j].modulus));
    return out;
}

std::string to_string(const Degree& d) {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < d.free.size(); ++k) out << (k ? "," : "") << d.free[k];
    if (!d.torsion.empty()) {
        out << ';';
        for (std::size_t j = 0; j < d.torsion.size(); ++j) out << (j ? "," : "") << d.torsion[j];
    }
    out << ')';
    return out.str();
}

bool check_cohomologically_proper(const WeightData& w) {
    const std::size_t r = w.rank(), n = w.columns();
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t k = 0; k < r; ++k) {
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < n; ++i) row[i] = w.free(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
        a.push_back(std::move(row));
        b.emplace_back(0);
    }
    a.emplace_back(n, Rational(1));
    b.emplace_back(1);
    return solve_lp(a, b, std::vector<Rational>(n, Rational(0))).status == LpResult::Status::infeasible;
}

std::vector<Degree> image_phi(const WeightData& w) {
    const std::size_t r = w.rank(), n = w.columns();
    std::vector<long long> lo(r, 0), hi(r, 0);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            long long x = w.free(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
            (x < 0 ? lo[k] : hi[k]) += x;
        }

    std::set<Degree> out;
    std::vector<long long> g(lo);
    std::function<void(std::size_t)> scan = [&](std::size_t k) {
        if (k < r) {
            for (g[k] = lo[k]; g[k] <= hi[k]; ++g[k]) scan(k + 1);
            return;
        }
        IntegerSolution sol = solve_integer(w, g);
        if (!sol.solvable || !in_half_open_zonotope(w, g)) return;
        // torsion values over the fibre c0 + ker μ_free
        std::set<std::vector<long long>> seen{torsion_of(w, sol.particular)};
        std::vector<std::vector<long long>> frontier(seen.begin(), seen.end());
        std::vector<std::vector<long long>> steps;
        for (const Exponent& kvec : sol.kernel) steps.push_back(torsion_of(w, kvec));
        while (!frontier.empty()) {
            std::vector<long long> t = frontier.back();
            frontier.pop_back();
            for (const auto& s : steps) {
                std::vector<long long> next(t.size());
                for (std::size_t j = 0; j < t.size(); ++j) next[j] = mod(t[j] + s[j], w.torsion[j].modulus);
                if (seen.insert(next).second) frontier.push_back(next);
            }
        }
        for (const auto& t : seen) out.insert(Degree{g, t});
    };
    scan(0);
    return {out.begin(), out.end()};
}

std::vector<Exponent> hom_monomials(const WeightData& w, const Degree& d, const Degree& e) {
    auto functional = positive_functional(w);
    if (!functional) throw PreconditionError("weights are not cohomologically proper; hom spaces are infinite");
    const std::size_t r = w.rank(), n = w.columns();
    const Degree target = difference(w, e, d);
    std::vector<long long> ell(n, 0);
    long long budget = 0;
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < n; ++i) ell[i] += (*functional)[k] * w.free(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
        budget += (*functional)[k] * target.free[k];
    }
    std::vector<Exponent> out;
    if (budget < 0) return out;
    Exponent m(n, 0);
    std::function<void(std::size_t, long long)> fill = [&](std::size_t i, long long rest) {
        if (i == n) {
            if (rest == 0 && degree_of(w, m) == target) out.push_back(m);
            return;
        }
        for (m[i] = 0; m[i] * ell[i] <= rest; ++m[i]) fill(i + 1, rest - m[i] * ell[i]);
        m[i] = 0;
    };
    fill(0, budget);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::string monomial_string(const Exponent& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += "x" + std::to_string(i + 1);
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

ToricHpa build_toric_hpa(const WeightData& w, const std::vector<Degree>& degrees) {
    if (degrees.empty()) throw Error("no degrees given");
    if (std::set<Degree>(degrees.begin(), degrees.end()).size() != degrees.size())
        throw Error("degrees must be distinct");
    for (const Degree& d : degrees)
        if (d.free.size() != w.rank() || d.torsion.size() != w.torsion.size())
            throw Error("degree " + to_string(d) + " does not match the weight data");
    const std::size_t m = degrees.size();
    std::vector<std::vector<std::vector<Exponent>>> homs(m, std::vector<std::vector<Exponent>>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) homs[i][j] = hom_monomials(w, degrees[i], degrees[j]);

    ToricHpa t;
    t.weights = w;
    t.degrees = degrees;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back("v" + std::to_string(i));
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (const Exponent& mono : homs[i][j]) {
                bool factors = false;
                for (std::size_t k = 0; k < m && !factors; ++k) {
                    if (k == i || k == j) continue;
                    for (const Exponent& first : homs[i][k]) {
                        bool below = true;
                        for (std::size_t v = 0; v < mono.size() && below; ++v) below = first[v] <= mono[v];
                        if (below) { factors = true; break; }
                    }
                }
                if (factors) continue;
                arrows.push_back({monomial_string(mono) + "." + std::to_string(i), static_cast<VertexId>(i),
                                  static_cast<VertexId>(j)});
                t.arrow_monomials.push_back(mono);
            }
    Quiver q(names, arrows);
    if (!q.find_cycle().empty()) throw PreconditionError("hom spaces in both directions; weights are not proper");

    // group paths by (tail, head, monomial)
    std::vector<PathWord> paths = enumerate_paths(q);
    std::map<std::tuple<VertexId, VertexId, Exponent>, std::vector<std::size_t>> keyed;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        Exponent total(w.columns(), 0);
        for (ArrowId x : paths[p].arrows)
            for (std::size_t v = 0; v < total.size(); ++v) total[v] += t.arrow_monomials[x][v];
        keyed[{paths[p].tail, head(q, paths[p]), total}].push_back(p);
    }
    // keys by the longest word they contain; a relation can only connect
    // words at least as long as its own
    std::map<std::size_t, std::vector<const std::vector<std::size_t>*>> levels;
    for (const auto& [key, members] : keyed) {
        if (members.size() < 2) continue;
        std::size_t longest = 0;
        for (std::size_t p : members) longest = std::max(longest, paths[p].length());
        levels[longest].push_back(&members);
    }
    RelationSet rels;
    for (const auto& [len, groups] : levels) {
        Hpa closure = congruence_closure(q, paths, rels);
        for (const auto* members : groups) {
            std::map<ClassId, std::size_t> least;
            for (std::size_t p : *members) {
                ClassId c = closure.class_of_word(p);
                auto it = least.find(c);
                if (it == least.end()) least.emplace(c, p);
                else if (label_less(q, paths[p], paths[it->second])) it->second = p;
            }
            if (least.size() < 2) continue;
            RelationGroup group;
            for (const auto& [c, p] : least) group.push_back(paths[p]);
            std::sort(group.begin(), group.end(), [&](const PathWord& x, const PathWord& y) { return label_less(q, x, y); });
            rels.groups.push_back(std::move(group));
        }
    }
    t.algebra = congruence_closure(q, paths, rels);
    if (t.algebra.class_count() != keyed.size()) throw Error("toric relations do not generate the monomial congruence");
    t.presentation = QuiverDocument{std::move(q), std::move(rels)};
    return t;
}

std::string variable_of(const std::string& label) {
    std::size_t cut = label.find_first_of("'.");
    std::string v = label.substr(0, cut);
    if (v.empty() || v.find_first_of("*^") != std::string::npos)
        throw PreconditionError("arrow '" + label + "' is not labelled by a single variable");
    return v;
}

Directability check_directable(const ToricHpa& t) {
    VariableMap var;
    for (std::size_t x = 0; x < t.arrow_monomials.size(); ++x) {
        const Exponent& mono = t.arrow_monomials[x];
        std::size_t support = 0, which = 0;
        for (std::size_t v = 0; v < mono.size(); ++v)
            if (mono[v] != 0) { ++support; which = v; }
        if (support != 1 || mono[which] != 1)
            throw PreconditionError("arrow '" + t.presentation.quiver.arrow(static_cast<ArrowId>(x)).label +
                                    "' is not a single variable");
        var.push_back(which);
    }
    std::vector<std::string> names;
    for (std::size_t v = 0; v < t.weights.columns(); ++v) names.push_back("x" + std::to_string(v + 1));
    // only variables that label arrows take part
    std::vector<std::size_t> used(names.size(), SIZE_MAX);
    std::vector<std::string> used_names;
    for (std::size_t v : var)
        if (used[v] == SIZE_MAX) used[v] = 0;
    for (std::size_t v = 0; v < names.size(); ++v)
        if (used[v] != SIZE_MAX) {
            used[v] = used_names.size();
            used_names.push_back(names[v]);
        }
    for (auto& v : var) v = used[v];
    return directability(t.algebra, var, used_names);
}

Directability check_directable(const Hpa& a) {
    const Quiver& q = a.quiver();
    std::map<std::string, std::size_t> index;
    for (const Arrow& x : q.arrows()) index.emplace(variable_of(x.label), 0);
    std::vector<std::string> names;
    for (auto& [name, i] : index) {
        i = names.size();
        names.push_back(name);
    }
    VariableMap var;
    for (const Arrow& x : q.arrows()) var.push_back(index.at(variable_of(x.label)));
    return directability(a, var, names);
}

bool has_monomial_presentation(const Hpa& a) {
    const Quiver& q = a.quiver();
    std::vector<std::string> var;
    try {
        for (const Arrow& x : q.arrows()) var.push_back(variable_of(x.label));
    } catch (const PreconditionError&) {
        return false;
    }
    auto monomial = [&](const PathWord& w) {
        std::vector<std::string> m;
        for (ArrowId x : w.arrows) m.push_back(var[x]);
        std::sort(m.begin(), m.end());
        return m;
    };
    std::set<std::tuple<VertexId, VertexId, std::vector<std::string>>> seen;
    for (const PathClass& c : a.classes()) {
        auto mono = monomial(c.canonical);
        for (std::size_t w : c.members)
            if (monomial(a.words()[w]) != mono) return false;
        if (!seen.insert({c.tail, c.head, mono}).second) return false;
    }
    return true;
}

}  // namespace hpa
