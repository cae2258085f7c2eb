#pragma once

#include <vector>

#include "syzmirror/series.hpp"

namespace syzmirror {

// plain + sum_b log_parts[b] * log(q_b). All components share num_vars and
// cutoff; log_parts has exactly num_vars entries.
struct LogSeries {
    MultiSeries plain;
    std::vector<MultiSeries> log_parts;

    LogSeries(std::size_t num_vars, int cutoff);
    LogSeries(MultiSeries plain, std::vector<MultiSeries> log_parts);

    std::size_t num_vars() const noexcept { return plain.num_vars(); }
    int cutoff() const noexcept { return plain.cutoff(); }
    bool is_zero() const;

    LogSeries &operator+=(const LogSeries &rhs);
    LogSeries &operator*=(const Rational &scalar);
    // Multiplication by q^shift on every component.
    LogSeries shifted(const MultiIndex &shift) const;
    // theta_var = q_var d/dq_var, with theta_a(s log q_b) = (theta_a s) log q_b + [a == b] s.
    LogSeries euler(std::size_t var) const;

    friend bool operator==(const LogSeries &, const LogSeries &) = default;
};

} // namespace syzmirror
