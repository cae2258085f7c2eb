#pragma once

#include <optional>
#include <vector>

#include "syzmirror/periods.hpp"
#include "syzmirror/series.hpp"
#include "syzmirror/toric.hpp"

namespace syzmirror {

// delta_i = sum_{alpha != 0} n_{beta_i + alpha} q^alpha for one toric divisor.
struct CorrectionSeries {
    int divisor = 0;
    MultiSeries delta;

    // 1 + delta_i.
    MultiSeries one_plus() const;
};

// qc_a = q_a * exp_factors[a](q), each factor with constant term 1.
struct InverseMirrorMap {
    std::vector<MultiSeries> exp_factors;

    std::size_t num_vars() const noexcept { return exp_factors.size(); }
    int cutoff() const { return exp_factors.empty() ? 0 : exp_factors.front().cutoff(); }
    // qc_a(q) as ordinary series.
    std::vector<MultiSeries> components() const;
};

InverseMirrorMap inverse_mirror_map(const std::vector<LogPeriod> &periods);

// For a fan with a single compact divisor c, solves qc_a = q_a (1 + delta_c)^{Q^a_c}
// using the first row with Q^a_c != 0 (or the given row).
CorrectionSeries extract_delta(const ValidatedFan &vf, const ChargeMatrix &q, const InverseMirrorMap &inv,
                               std::optional<std::size_t> row = std::nullopt);

// The coefficient map of delta; the constant term is never present.
MultiSeries::TermMap open_gw_coefficients(const CorrectionSeries &delta);

struct RowCheck {
    std::size_t row = 0;
    bool consistent = true;
    // First differing index in graded order, when inconsistent.
    std::optional<MultiIndex> first_mismatch;
    Rational expected{0};
    Rational actual{0};
};

struct RelationReport {
    std::vector<RowCheck> rows;

    bool all_consistent() const;
};

// Recomputes q_a (1 + delta_c)^{Q^a_c} for every row and compares with inv.
// Without a correction (no compact divisor) every row must give qc_a = q_a.
RelationReport verify_conjecture_relations(const ChargeMatrix &q, const InverseMirrorMap &inv,
                                           const std::optional<CorrectionSeries> &delta);

// Charges, periods, inverse map and (when there is exactly one compact
// divisor) the extracted correction series, all at one cutoff.
struct PipelineResult {
    ChargeMatrix charges;
    std::vector<LogPeriod> periods;
    InverseMirrorMap inverse;
    std::optional<CorrectionSeries> delta;
};

// Fans with no compact divisor get delta == nullopt (delta is identically
// zero); more than one compact divisor is refused.
PipelineResult run_pipeline(const ValidatedFan &vf, int cutoff);

} // namespace syzmirror
