#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hpa {

using Rational = boost::multiprecision::cpp_rational;

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rational value;
    std::vector<Rational> x;
};

/// maximize c·x subject to A x = b, x >= 0; exact two-phase simplex with
/// Bland's rule. A is row-major with rows of equal length.
LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

}  // namespace hpa
