#include "syzmirror/log_series.hpp"

#include <algorithm>

#include "syzmirror/error.hpp"

namespace syzmirror {

LogSeries::LogSeries(std::size_t num_vars, int cutoff)
    : plain(num_vars, cutoff), log_parts(num_vars, MultiSeries(num_vars, cutoff))
{
}

LogSeries::LogSeries(MultiSeries plain_part, std::vector<MultiSeries> logs)
    : plain(std::move(plain_part)), log_parts(std::move(logs))
{
    if (log_parts.size() != plain.num_vars()) {
        throw Error(ErrorCode::VarCountMismatch, "log series needs one log part per variable");
    }
    for (const auto &s : log_parts) {
        if (s.num_vars() != plain.num_vars()) {
            throw Error(ErrorCode::VarCountMismatch, "log part has wrong variable count");
        }
        if (s.cutoff() != plain.cutoff()) {
            throw Error(ErrorCode::CutoffMismatch, "log part has wrong cutoff");
        }
    }
}

bool LogSeries::is_zero() const
{
    return plain.is_zero() && std::all_of(log_parts.begin(), log_parts.end(), [](const auto &s) { return s.is_zero(); });
}

LogSeries &LogSeries::operator+=(const LogSeries &rhs)
{
    if (rhs.log_parts.size() != log_parts.size()) {
        throw Error(ErrorCode::VarCountMismatch, "log series variable counts differ");
    }
    plain += rhs.plain;
    for (std::size_t b = 0; b < log_parts.size(); ++b) {
        log_parts[b] += rhs.log_parts[b];
    }
    return *this;
}

LogSeries &LogSeries::operator*=(const Rational &scalar)
{
    plain *= scalar;
    for (auto &s : log_parts) {
        s *= scalar;
    }
    return *this;
}

LogSeries LogSeries::shifted(const MultiIndex &shift) const
{
    std::vector<MultiSeries> logs;
    logs.reserve(log_parts.size());
    for (const auto &s : log_parts) {
        logs.push_back(s.shifted(shift));
    }
    return LogSeries(plain.shifted(shift), std::move(logs));
}

LogSeries LogSeries::euler(std::size_t var) const
{
    if (var >= num_vars()) {
        throw Error(ErrorCode::VarCountMismatch, "Euler operator variable out of range");
    }
    MultiSeries p = plain.euler(var) + log_parts[var];
    std::vector<MultiSeries> logs;
    logs.reserve(log_parts.size());
    for (const auto &s : log_parts) {
        logs.push_back(s.euler(var));
    }
    return LogSeries(std::move(p), std::move(logs));
}

} // namespace syzmirror
