#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "syzmirror/linalg.hpp"
#include "syzmirror/rational.hpp"

namespace syzmirror {

using linalg::IntMatrix;
using linalg::IntVector;
using linalg::RatVector;

using Cone = std::vector<int>;

// Raw fan data: rank n, ray generators v_0..v_{m-1} in Z^n and maximal cones
// given as lists of n ray indices.
struct Fan {
    int rank = 0;
    IntMatrix rays;
    std::vector<Cone> max_cones;

    std::size_t num_rays() const noexcept { return rays.size(); }
};

// Calabi-Yau data relative to a chosen base cone: the covector pairing to one
// with every ray, and the dual basis of the base cone's rays.
struct CYStructure {
    IntVector covector;
    std::size_t base_cone = 0;
    // Ray indices of the base cone in the order they appear in the cone.
    Cone base_rays;
    // Row j is nu_j with <nu_j, v_{base_rays[k]}> = delta_jk.
    IntMatrix dual_basis;

    // <nu_j, v> for every j, i.e. the coordinates of v in the base cone basis.
    IntVector coordinates(const IntVector &v) const;
};

struct ValidatedFan {
    Fan fan;
    CYStructure cy;
    // False only for fans validated with the Calabi-Yau check disabled.
    bool calabi_yau = true;

    std::size_t num_rays() const noexcept { return fan.num_rays(); }
    int rank() const noexcept { return fan.rank; }
    // Number of curve classes, m - n.
    std::size_t num_classes() const noexcept { return fan.num_rays() - static_cast<std::size_t>(fan.rank); }
    // Exponent vector (<nu_1, v_i>, ..., <nu_{n-1}, v_i>) of ray i.
    IntVector z_exponent(std::size_t ray) const;
};

struct ValidateOptions {
    std::optional<std::size_t> base_cone;
    bool require_calabi_yau = true;
};

ValidatedFan validate_fan(const Fan &fan, const ValidateOptions &options = {});

// Row a encodes S_a = beta_{r_a} - sum_j <nu_j, v_{r_a}> beta_j, where r_a is
// the a-th ray outside the base cone. Columns follow the fan's ray order.
struct ChargeMatrix {
    IntMatrix entries;
    std::vector<int> row_rays;

    std::size_t num_rows() const noexcept { return entries.size(); }
    std::size_t num_columns() const noexcept { return entries.empty() ? 0 : entries.front().size(); }
};

ChargeMatrix charge_matrix(const ValidatedFan &vf);

// Rays in the interior of the fan's support.
std::vector<int> compact_divisors(const ValidatedFan &vf);

// Constants c_i of P = { xi : <v_i, xi> >= c_i }.
struct MomentPolytope {
    RatVector constants;
};

// c_i = 0 on the base cone and -1 elsewhere.
MomentPolytope default_polytope(const ValidatedFan &vf);

struct ModifiedFan {
    Fan fan;
    // Index in fan.rays of v'_j, j = 1..n-1 (entry j-1).
    std::vector<int> new_rays;
    std::size_t original_rays = 0;
};

// Adds v'_j = v_j - v_0 for the base cone rays and completes the fan to the
// normal fan of the truncated moment polytope.
ModifiedFan modify_fan(const ValidatedFan &vf);

// One codimension-two face T_I, |I| = 2, in quotient coordinates
// y_j = <v_j - v_0, xi> (j = 1..n-1) on M_R / R<covector>.
struct DiscriminantStratum {
    int ray_a = 0;
    int ray_b = 0;
    linalg::Constraint equation;
    std::vector<int> inequality_rays;
    std::vector<linalg::Constraint> inequalities;
    std::vector<RatVector> vertices;
    std::string kind;
};

struct DiscriminantLocus {
    // The boundary stratum R^{n-1} x {-K2}.
    Rational k2{1};
    std::vector<DiscriminantStratum> strata;
};

DiscriminantLocus discriminant_locus(const ValidatedFan &vf, const MomentPolytope &polytope, const Rational &k2 = 1);

// Change of basis between the mirror charts of two ordered maximal cones.
// Row 0 is (1, 0, ..., 0); row j (j >= 1) holds a_{j,0}, a_{j,1}, ... with
// mu_j = a_{j,0} covector + sum_k a_{jk} nu_k.
IntMatrix cone_change_matrix(const ValidatedFan &vf, const Cone &cone_a, const Cone &cone_b);

// Index of the maximal cone with the same ray set, if any.
std::optional<std::size_t> find_max_cone(const Fan &fan, const Cone &cone);

} // namespace syzmirror
