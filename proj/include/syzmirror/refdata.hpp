#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syzmirror/flat_coords.hpp"
#include "syzmirror/series.hpp"
#include "syzmirror/toric.hpp"

namespace syzmirror {

struct TableEntry {
    MultiIndex index;
    Rational value;
};

// Sparse coefficient table; indices of total degree <= extent that are not
// listed are zero.
struct CoefficientTable {
    int extent = 0;
    std::vector<TableEntry> entries;

    Rational at(const MultiIndex &d) const;
};

// A printed value known to be wrong, with the value the comparison uses.
struct Erratum {
    std::string table;
    MultiIndex index;
    Rational printed;
    Rational corrected;
    std::string reason;
};

struct ReferenceExample {
    std::string id;
    Fan fan;
    IntMatrix charge_rows;
    std::vector<std::string> pf_operators;
    // Compact ray carrying delta_table; -1 when there is none (delta == 0).
    int delta_divisor = -1;
    // Coefficients of delta (not 1 + delta) by sphere class.
    CoefficientTable delta_table;
    // Row a holds qc_a / q_a as a series in q.
    std::vector<CoefficientTable> inverse_map_tables;
    std::vector<Erratum> errata;
    std::string notes;

    // Table with every erratum for `table` applied.
    CoefficientTable corrected_inverse(std::size_t row) const;
};

const std::vector<std::string> &reference_ids();

ReferenceExample lookup_reference(std::string_view id);

struct CoefficientCheck {
    // "delta" or "inverse[a]" (0-based row).
    std::string table;
    MultiIndex index;
    Rational expected;
    Rational actual;
    bool match = true;
    bool erratum = false;
};

struct ReferenceReport {
    std::string id;
    int order = 0;
    std::vector<CoefficientCheck> checks;

    bool all_match() const;
    std::size_t mismatches() const;
};

// Compares delta through total degree max_order and qc_a through total degree
// max_order (so qc_a/q_a through max_order - 1), within each table's extent.
ReferenceReport verify_against_reference(const ReferenceExample &ref, const std::optional<CorrectionSeries> &delta,
                                         const InverseMirrorMap &inv, int max_order);

std::string reference_to_json(const ReferenceExample &ref);
ReferenceExample reference_from_json(std::string_view text);

} // namespace syzmirror
