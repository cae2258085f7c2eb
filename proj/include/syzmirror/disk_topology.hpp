#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "syzmirror/flat_coords.hpp"
#include "syzmirror/series.hpp"
#include "syzmirror/toric.hpp"

namespace syzmirror {

// k_0 beta_0 + ... + k_{m-1} beta_{m-1} + k'_1 beta'_1 + ... + alpha (sphere part
// in the S_a basis).
struct DiskClass {
    IntVector k;
    IntVector kprime;
    IntVector alpha;

    // All-zero class of the right shape for vf.
    static DiskClass zero(const ValidatedFan &vf);
    static DiskClass basic(const ValidatedFan &vf, std::size_t ray);
    static DiskClass basic_prime(const ValidatedFan &vf, std::size_t j);
    static DiskClass sphere(const ValidatedFan &vf, const IntVector &alpha);

    DiskClass &operator+=(const DiskClass &rhs);
    friend DiskClass operator+(DiskClass a, const DiskClass &b) { return a += b; }
    friend bool operator==(const DiskClass &, const DiskClass &) = default;
};

// Coordinates in lambda_0, ..., lambda_{n-1}.
struct LoopClass {
    IntVector coords;

    friend bool operator==(const LoopClass &, const LoopClass &) = default;
};

enum class Chamber { BPlus, BMinus };

std::string chamber_name(Chamber c);

LoopClass boundary_class(const DiskClass &c, const ValidatedFan &vf);

int maslov_index(const DiskClass &c);

// D_j: boundary divisors of the base torus factor (j = 0..n-1).
// Toric: the toric prime divisor D_i of ray i. ToricPrime: D'_j of the added ray v'_j (j = 1..n-1).
enum class DivisorKind { D, Toric, ToricPrime };

struct DivisorId {
    DivisorKind kind = DivisorKind::D;
    int index = 0;
};

int intersection_number(const DiskClass &c, const DivisorId &divisor, const ValidatedFan &vf, const ChargeMatrix &q);

// Known correction series delta_i keyed by ray index, each truncated at the
// same cutoff. Rays without an entry have delta_i == 0 when they are not
// compact; asking for a compact ray without an entry is an error.
struct DeltaSource {
    std::size_t num_vars = 0;
    int cutoff = 0;
    std::map<int, MultiSeries> series;

    static DeltaSource none(std::size_t num_vars, int cutoff);
    static DeltaSource from(const CorrectionSeries &delta);

    // 1 + delta_i as a series (constant one for rays without data).
    MultiSeries one_plus(int ray) const;
};

Rational chamber_invariant(Chamber chamber, const DiskClass &c, const ValidatedFan &vf, const DeltaSource &delta);

// Monomial rat * prod atoms^p * prod (1 + delta_i) * z_0^{e_0} ... z_{n-1}^{e_{n-1}}
// with symbolic atoms such as "C_0" or "C'_1".
struct SymbolicTerm {
    Rational coefficient{1};
    std::map<std::string, int> atoms;
    std::vector<int> deltas;
    IntVector z;

    friend bool operator==(const SymbolicTerm &, const SymbolicTerm &) = default;
};

// A sum of symbolic terms kept in canonical form (like terms merged, sorted).
struct SymbolicExpression {
    std::vector<SymbolicTerm> terms;

    static SymbolicExpression term(SymbolicTerm t);
    SymbolicExpression canonical() const;
    friend SymbolicExpression operator*(const SymbolicExpression &a, const SymbolicExpression &b);
    friend bool operator==(const SymbolicExpression &a, const SymbolicExpression &b);
};

std::string format_symbolic(const SymbolicExpression &e);

// Fourier-transformed coordinates ztilde_0..ztilde_{n-1} on one chamber, with
// the gluing pair (u, v) satisfying u * v = g(z).
struct FourierCoordinates {
    Chamber chamber = Chamber::BPlus;
    std::vector<SymbolicExpression> z_tilde;
    SymbolicExpression u;
    SymbolicExpression v;
};

// g(z) = sum_i C_i (1 + delta_i) z^{<nu, v_i>} with z_0 exponent zero.
SymbolicExpression area_polynomial(const ValidatedFan &vf);

FourierCoordinates fourier_coordinates(const ValidatedFan &vf, Chamber chamber);

enum class MirrorForm { Cform, Flat };

struct MirrorTerm {
    int ray = 0;
    IntVector exponent;
    // Cform: index of the area constant C_i. Flat: none.
    std::optional<int> area_constant;
    // Flat: the q-monomial. Cform: all zero.
    MultiIndex q_power;
    MultiSeries one_plus_delta{0, 0};
};

struct MirrorPolynomial {
    MirrorForm form = MirrorForm::Flat;
    std::size_t num_z = 0;
    std::vector<MirrorTerm> terms;
    // Names of the glued coordinates on the left of uv = G(z).
    std::string u_name = "u";
    std::string v_name = "v";
};

MirrorPolynomial mirror_equation(const ValidatedFan &vf, const ChargeMatrix &q, const DeltaSource &delta,
                                 MirrorForm form);

// Exponent vector of row a's flat coefficient, i.e. alpha with
// e_i - e_{b_0} + sum_j a_ij (e_{b_0} - e_{b_j}) = sum_a alpha_a Q^a.
MultiIndex flat_q_power(const ValidatedFan &vf, const ChargeMatrix &q, std::size_t ray);

enum class SuperpotentialSpace { X, XPrime };

SymbolicExpression superpotential(const ValidatedFan &vf, Chamber chamber,
                                  SuperpotentialSpace space = SuperpotentialSpace::X);

// z_k = prod_j zeta_j^{a_jk}, u = utilde * prod_p zeta_p^{-a_p0}, v = vtilde.
struct MonomialTransform {
    IntMatrix a;

    // Exponent in zeta of the image of z^e after absorbing the u rescaling.
    IntVector apply(const IntVector &e) const;
    MonomialTransform compose(const MonomialTransform &then) const;
    bool is_identity() const;
};

struct ConeChangeResult {
    MirrorPolynomial polynomial;
    MonomialTransform transform;
};

ConeChangeResult cone_change_mirror(const ValidatedFan &vf, const Cone &cone_a, const Cone &cone_b,
                                    const MirrorPolynomial &mp);

// Same fan validated with cone as base cone, rays in the given order.
ValidatedFan rebase(const ValidatedFan &vf, const Cone &cone);

std::string format_mirror(const MirrorPolynomial &mp, std::span<const std::string> q_names = {});
std::string format_mirror_latex(const MirrorPolynomial &mp, std::span<const std::string> q_names = {});

} // namespace syzmirror
