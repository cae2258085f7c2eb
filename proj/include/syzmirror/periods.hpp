#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syzmirror/log_series.hpp"
#include "syzmirror/series.hpp"
#include "syzmirror/toric.hpp"

namespace syzmirror {

// Phi_a = -log(q_a) - f_a with f_a(0) = 0.
struct LogPeriod {
    std::size_t index = 0;
    MultiSeries f;

    LogSeries phi() const;
};

// Coefficient of q^d in f_a from the Frobenius derivative of the Gamma series
// at the origin.
Rational gamma_log_coefficient(const ChargeMatrix &q, const MultiIndex &d, std::size_t row);

std::vector<LogPeriod> single_log_periods(const ChargeMatrix &q, int cutoff);

// Components exp(f_a) of the mirror map q_a = qc_a * exp(f_a(qc)).
std::vector<MultiSeries> mirror_map_series(const std::vector<LogPeriod> &periods);

// Some d outside the nonnegative orthant (with |d_a| <= radius) whose Gamma
// series term would not vanish. Its presence means the orthant sum may miss
// part of the Mori cone.
std::optional<MultiIndex> summation_cone_witness(const ChargeMatrix &q, int radius);

// Linear differential operator sum c * q^shift * theta^powers with the Euler
// operators theta_a = q_a d/dq_a to the right of the monomial.
class DiffOperator {
public:
    using Key = std::pair<MultiIndex, MultiIndex>; // (q shift, theta powers)

    explicit DiffOperator(std::size_t num_vars);

    static DiffOperator constant(std::size_t num_vars, const Rational &value);
    static DiffOperator theta(std::size_t num_vars, std::size_t var);
    static DiffOperator q(std::size_t num_vars, std::size_t var);

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::map<Key, Rational> &terms() const noexcept { return terms_; }

    DiffOperator &operator+=(const DiffOperator &rhs);
    DiffOperator &operator*=(const Rational &scalar);
    friend DiffOperator operator+(DiffOperator a, const DiffOperator &b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, DiffOperator b) { return a += (b *= Rational(-1)); }
    // Operator composition: (a * b)(phi) = a(b(phi)).
    friend DiffOperator operator*(const DiffOperator &a, const DiffOperator &b);
    friend bool operator==(const DiffOperator &, const DiffOperator &) = default;

private:
    void add_term(const MultiIndex &shift, const MultiIndex &powers, const Rational &c);

    std::size_t num_vars_;
    std::map<Key, Rational> terms_;
};

// Parses e.g. "T1^3 + 3*q1*T1*(3*T1+1)*(3*T1+2)" where Tk is theta_k and qk the
// k-th coordinate. A bare "T" or "q" means index 1.
DiffOperator parse_operator(std::string_view text, std::size_t num_vars);

LogSeries apply_operator(const DiffOperator &op, const LogSeries &phi);

} // namespace syzmirror
