#include "syzmirror/flat_coords.hpp"

#include <algorithm>

#include "syzmirror/error.hpp"

namespace syzmirror {

MultiSeries CorrectionSeries::one_plus() const
{
    return MultiSeries::constant(delta.num_vars(), delta.cutoff(), 1) + delta;
}

std::vector<MultiSeries> InverseMirrorMap::components() const
{
    std::vector<MultiSeries> out;
    for (std::size_t a = 0; a < exp_factors.size(); ++a) {
        MultiIndex e(exp_factors.size(), 0);
        e[a] = 1;
        out.push_back(exp_factors[a].shifted(e));
    }
    return out;
}

InverseMirrorMap inverse_mirror_map(const std::vector<LogPeriod> &periods)
{
    std::vector<MultiSeries> f;
    f.reserve(periods.size());
    for (const auto &p : periods) {
        f.push_back(p.f);
    }
    InverseMirrorMap inv;
    for (const auto &g : invert_map(f)) {
        inv.exp_factors.push_back(exp(g));
    }
    return inv;
}

CorrectionSeries extract_delta(const ValidatedFan &vf, const ChargeMatrix &q, const InverseMirrorMap &inv,
                               std::optional<std::size_t> row)
{
    const auto compact = compact_divisors(vf);
    if (compact.size() != 1) {
        throw Error(ErrorCode::UnderdeterminedExtraction,
                    std::to_string(compact.size()) + " compact divisors; extraction needs exactly one");
    }
    const int c = compact.front();
    if (inv.num_vars() != q.num_rows()) {
        throw Error(ErrorCode::VarCountMismatch, "inverse map and charge matrix disagree on the number of classes");
    }
    std::size_t use = q.num_rows();
    if (row) {
        if (*row >= q.num_rows()) {
            throw Error(ErrorCode::InvalidArgument, "charge row out of range");
        }
        if (q.entries[*row][c] == 0) {
            throw Error(ErrorCode::NoUsableRow, "requested row has Q^a_c = 0");
        }
        use = *row;
    } else {
        for (std::size_t a = 0; a < q.num_rows(); ++a) {
            if (q.entries[a][c] != 0) {
                use = a;
                break;
            }
        }
        if (use == q.num_rows()) {
            throw Error(ErrorCode::NoUsableRow, "every charge row has Q^a_c = 0");
        }
    }
    const Rational exponent = make_rational(1, static_cast<long>(q.entries[use][c]));
    MultiSeries one_plus = pow_rational(inv.exp_factors[use], exponent);
    CorrectionSeries out{c, one_plus - MultiSeries::constant(one_plus.num_vars(), one_plus.cutoff(), 1)};
    return out;
}

MultiSeries::TermMap open_gw_coefficients(const CorrectionSeries &delta)
{
    return delta.delta.terms();
}

bool RelationReport::all_consistent() const
{
    return std::all_of(rows.begin(), rows.end(), [](const RowCheck &r) { return r.consistent; });
}

RelationReport verify_conjecture_relations(const ChargeMatrix &q, const InverseMirrorMap &inv,
                                           const std::optional<CorrectionSeries> &delta)
{
    if (inv.num_vars() != q.num_rows()) {
        throw Error(ErrorCode::VarCountMismatch, "inverse map and charge matrix disagree on the number of classes");
    }
    RelationReport report;
    const auto l = q.num_rows();
    const int cutoff = inv.cutoff();
    for (std::size_t a = 0; a < l; ++a) {
        MultiSeries expected = MultiSeries::constant(l, cutoff, 1);
        if (delta) {
            expected = pow_rational(delta->one_plus(), Rational(static_cast<long>(q.entries[a][delta->divisor])));
        }
        RowCheck check;
        check.row = a;
        const MultiSeries diff = expected - inv.exp_factors[a];
        if (!diff.is_zero()) {
            const auto &[idx, value] = *diff.terms().begin();
            check.consistent = false;
            // Report in terms of qc_a = q_a * factor, hence the shift by e_a.
            MultiIndex shifted = idx;
            shifted[a] += 1;
            check.first_mismatch = shifted;
            check.expected = expected.coefficient(idx);
            check.actual = inv.exp_factors[a].coefficient(idx);
        }
        report.rows.push_back(std::move(check));
    }
    return report;
}

PipelineResult run_pipeline(const ValidatedFan &vf, int cutoff)
{
    if (cutoff < 1) {
        throw Error(ErrorCode::InvalidArgument, "cutoff must be at least 1");
    }
    PipelineResult out{charge_matrix(vf), {}, {}, std::nullopt};
    out.periods = single_log_periods(out.charges, cutoff);
    out.inverse = inverse_mirror_map(out.periods);
    if (!compact_divisors(vf).empty()) {
        out.delta = extract_delta(vf, out.charges, out.inverse);
    }
    return out;
}

} // namespace syzmirror
