#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "syzmirror/rational.hpp"

// Small exact linear algebra over Z and Q. Sizes here are the fan rank and
// ray count, so dense elimination is all we need.
namespace syzmirror::linalg {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

std::int64_t dot(const IntVector &a, const IntVector &b);
Rational dot(const RatVector &a, const RatVector &b);
std::int64_t gcd_of(const IntVector &v);

RatMatrix to_rational(const IntMatrix &m);
IntMatrix transpose(const IntMatrix &m);
IntMatrix multiply(const IntMatrix &a, const IntMatrix &b);

Rational determinant(RatMatrix m);
std::int64_t determinant(const IntMatrix &m);
std::size_t rank(RatMatrix m);

std::optional<RatMatrix> inverse(const RatMatrix &m);
// Inverse of an integer matrix with determinant +-1.
std::optional<IntMatrix> unimodular_inverse(const IntMatrix &m);

// Unique solution of the square system A x = b, if A is nonsingular.
std::optional<RatVector> solve(const RatMatrix &a, const RatVector &b);

// A single constraint row . x (>= or ==) rhs.
struct Constraint {
    RatVector row;
    Rational rhs;
};

// Exact feasibility of {x : eq rows == rhs, ge rows >= rhs} by Gaussian
// elimination of the equalities followed by Fourier-Motzkin elimination.
bool feasible(std::size_t dim, const std::vector<Constraint> &equalities, const std::vector<Constraint> &inequalities);

} // namespace syzmirror::linalg
