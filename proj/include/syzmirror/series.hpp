#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "syzmirror/rational.hpp"

namespace syzmirror {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex &d);

// Graded order: total degree ascending, then lexicographically descending
// exponent vectors, so q1^2 < q1*q2 < q2^2. Used for canonical output.
struct GradedLexLess {
    bool operator()(const MultiIndex &a, const MultiIndex &b) const;
};

// Calls visit(d) for every d in Z^num_vars_{>=0} with |d| == degree, in
// GradedLexLess order.
void for_each_index_of_degree(std::size_t num_vars, int degree, const std::function<void(const MultiIndex &)> &visit);

// Sparse multivariate power series truncated at total degree `cutoff`.
// Coefficients are exact; zero coefficients are never stored, so structural
// equality is mathematical equality.
class MultiSeries {
public:
    using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

    MultiSeries(std::size_t num_vars, int cutoff);

    static MultiSeries constant(std::size_t num_vars, int cutoff, const Rational &value);
    static MultiSeries variable(std::size_t num_vars, int cutoff, std::size_t index);
    // A monomial beyond the cutoff yields the zero series.
    static MultiSeries monomial(std::size_t num_vars, int cutoff, const MultiIndex &exponent,
                                const Rational &coefficient = Rational(1));

    std::size_t num_vars() const noexcept { return num_vars_; }
    int cutoff() const noexcept { return cutoff_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const MultiIndex &d) const;
    Rational constant_term() const;
    // Sets (or, for zero, erases) one coefficient. Indices beyond the cutoff
    // are rejected.
    void set_coefficient(const MultiIndex &d, const Rational &value);
    void add_to_coefficient(const MultiIndex &d, const Rational &value);

    // Lowers the cutoff, dropping terms of higher degree.
    MultiSeries truncated(int cutoff) const;
    // Terms of exactly the given total degree.
    MultiSeries homogeneous_part(int degree) const;
    // Multiplication by q^shift; terms pushed past the cutoff are discarded.
    MultiSeries shifted(const MultiIndex &shift) const;
    // Euler operator q_var * d/dq_var.
    MultiSeries euler(std::size_t var) const;

    MultiSeries &operator+=(const MultiSeries &rhs);
    MultiSeries &operator-=(const MultiSeries &rhs);
    MultiSeries &operator*=(const MultiSeries &rhs);
    MultiSeries &operator*=(const Rational &scalar);

    friend MultiSeries operator+(MultiSeries lhs, const MultiSeries &rhs) { return lhs += rhs; }
    friend MultiSeries operator-(MultiSeries lhs, const MultiSeries &rhs) { return lhs -= rhs; }
    friend MultiSeries operator*(const MultiSeries &lhs, const MultiSeries &rhs);
    friend MultiSeries operator*(MultiSeries lhs, const Rational &rhs) { return lhs *= rhs; }
    friend MultiSeries operator*(const Rational &lhs, MultiSeries rhs) { return rhs *= lhs; }
    MultiSeries operator-() const;

    friend bool operator==(const MultiSeries &a, const MultiSeries &b);

private:
    void check_compatible(const MultiSeries &other) const;

    std::size_t num_vars_;
    int cutoff_;
    TermMap terms_;
};

enum class ExpLogMode { exp, log1p };

// exp(s) for s(0) == 0, or log(1 + s) for s(0) == 0.
MultiSeries exp_log(const MultiSeries &s, ExpLogMode mode);
MultiSeries exp(const MultiSeries &s);
MultiSeries log1p(const MultiSeries &s);

// s^e for s(0) == 1, computed as exp(e * log1p(s - 1)).
MultiSeries pow_rational(const MultiSeries &s, const Rational &e);

// s(args[0], ..., args[l-1]); every argument has zero constant term.
MultiSeries substitute(const MultiSeries &s, std::span<const MultiSeries> args);

// Given f with q_a = p_a * exp(f_a(p)), returns g with p_a = q_a * exp(g_a(q)).
std::vector<MultiSeries> invert_map(std::span<const MultiSeries> f);

// The tuple q_a * exp(h_a(q)) as ordinary series.
std::vector<MultiSeries> map_components(std::span<const MultiSeries> h);

std::string format_series(const MultiSeries &s, std::span<const std::string> var_names);
// LaTeX rendering; names are given plain ("q1") and typeset as "q_{1}".
std::string format_series_latex(const MultiSeries &s, std::span<const std::string> var_names);
std::string latex_var_name(const std::string &name);
// Default variable names: "q" for one variable, "q1", "q2", ... otherwise.
std::vector<std::string> default_var_names(std::size_t num_vars, const std::string &stem = "q");

} // namespace syzmirror
