#include "hpa/linear_program.hpp"

#include "hpa/errors.hpp"

namespace hpa {
namespace {

struct Tableau {
    std::vector<std::vector<Rational>> rows;  // constraint rows, last entry = rhs
    std::vector<Rational> objective;          // reduced costs, last entry = current value
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t col) {
        Rational p = rows[r][col];
        for (auto& v : rows[r]) v /= p;
        auto eliminate = [&](std::vector<Rational>& row) {
            if (row[col] == 0) return;
            Rational f = row[col];
            for (std::size_t j = 0; j < row.size(); ++j)
                if (rows[r][j] != 0) row[j] -= f * rows[r][j];
        };
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r) eliminate(rows[i]);
        eliminate(objective);
        basis[r] = col;
    }

    // Maximizes; objective holds -c in reduced form. Columns >= limit never enter.
    bool run(std::size_t limit) {
        while (true) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (objective[j] < 0) { enter = j; break; }
            if (enter == limit) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rational ratio = rows[i].back() / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
    const std::size_t m = a.size(), n = c.size();
    if (b.size() != m) throw Error("LP: right-hand side has the wrong length");
    for (const auto& row : a)
        if (row.size() != n) throw Error("LP: ragged constraint matrix");

    Tableau t;
    t.objective.assign(n + m + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> row(n + m + 1, Rational(0));
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-a[i][j]) : a[i][j];
        row[n + i] = 1;
        row.back() = flip ? Rational(-b[i]) : b[i];
        t.rows.push_back(std::move(row));
        t.basis.push_back(n + i);
    }
    // phase 1: maximize -Σ artificials
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n + m; ++j)
            if (j < n || j == n + m) t.objective[j] -= t.rows[i][j];
    t.run(n + m);

    LpResult out;
    if (t.objective.back() != 0) return out;  // some artificial stays positive

    // drive artificials out of the basis; drop redundant rows
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < n) { ++i; continue; }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.rows[i][j] != 0) { col = j; break; }
        if (col == n) {
            t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        t.pivot(i, col);
        ++i;
    }
    // phase 2
    for (auto& row : t.rows) {
        Rational rhs = row.back();
        row.resize(n);
        row.push_back(rhs);
    }
    t.objective.assign(n + 1, Rational(0));
    for (std::size_t j = 0; j < n; ++j) t.objective[j] = -c[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        std::size_t col = t.basis[i];
        if (t.objective[col] == 0) continue;
        Rational f = t.objective[col];
        for (std::size_t j = 0; j <= n; ++j) t.objective[j] -= f * t.rows[i][j];
    }
    if (!t.run(n)) {
        out.status = LpResult::Status::unbounded;
        return out;
    }
    out.status = LpResult::Status::optimal;
    out.value = t.objective.back();
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) out.x[t.basis[i]] = t.rows[i].back();
    return out;
}

}  // namespace hpa
