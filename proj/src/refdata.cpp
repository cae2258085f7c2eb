#include "syzmirror/refdata.hpp"

#include <algorithm>

#include <json.hpp>

#include "syzmirror/error.hpp"

namespace syzmirror {

namespace {

using json = nlohmann::json;

TableEntry e1(int k, long value)
{
    return {{k}, Rational(value)};
}

TableEntry e2(int k1, int k2, long num, long den = 1)
{
    return {{k1, k2}, make_rational(num, den)};
}

ReferenceExample make_kp1()
{
    ReferenceExample r;
    r.id = "kp1";
    r.fan = {2, {{0, 1}, {1, 1}, {-1, 1}}, {{0, 1}, {0, 2}}};
    r.charge_rows = {{-2, 1, 1}};
    r.delta_divisor = 0;
    // n_{beta_0 + k l} = 1 for k = 0, 1 and 0 otherwise.
    r.delta_table = {20, {e1(1, 1)}};
    // qc = q (1 + q)^{-2}: the factor (1 + q)^{-2} through q^19.
    r.inverse_map_tables = {{19,
                             {e1(0, 1),   e1(1, -2),  e1(2, 3),   e1(3, -4),  e1(4, 5),   e1(5, -6),  e1(6, 7),
                              e1(7, -8),  e1(8, 9),   e1(9, -10), e1(10, 11), e1(11, -12), e1(12, 13), e1(13, -14),
                              e1(14, 15), e1(15, -16), e1(16, 17), e1(17, -18), e1(18, 19), e1(19, -20)}}};
    r.notes = "K_P1. Open invariants from the F_2 compactification; the inverse-map table is the binomial "
              "expansion of q(1+q)^-2 forced by them. No Picard-Fuchs operator is printed for this example.";
    return r;
}

ReferenceExample make_conifold()
{
    ReferenceExample r;
    r.id = "conifold";
    r.fan = {3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, -1, 1}}, {{0, 1, 2}, {0, 1, 3}}};
    r.charge_rows = {{-1, -1, 1, 1}};
    r.pf_operators = {"(1 - q1) * T1^2"};
    r.delta_divisor = -1;
    // No compact divisor: every correction vanishes and the map is the identity.
    r.delta_table = {20, {}};
    r.inverse_map_tables = {{20, {e1(0, 1)}}};
    r.notes = "O(-1)+O(-1) over P1. No compact toric divisor, so the mirror equation is uncorrected.";
    return r;
}

ReferenceExample make_kp2()
{
    ReferenceExample r;
    r.id = "kp2";
    r.fan = {3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, -1, 1}}, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}}};
    r.charge_rows = {{-3, 1, 1, 1}};
    r.pf_operators = {"T1^3 + 3*q1*T1*(3*T1+1)*(3*T1+2)"};
    r.delta_divisor = 0;
    // n_{beta_0 + k l}, k = 1..6, read from the sup-diagonal of the local K_F1 table.
    r.delta_table = {6, {e1(1, -2), e1(2, 5), e1(3, -32), e1(4, 286), e1(5, -3038), e1(6, 35870)}};
    // Printed inverse mirror map q + 6q^2 + 9q^3 + 56q^4 + 300q^5 + 3942q^6, divided by q.
    r.inverse_map_tables = {{5, {e1(0, 1), e1(1, 6), e1(2, 9), e1(3, 56), e1(4, 300), e1(5, 3942)}}};
    r.errata = {{"inverse[0]", {4}, Rational(300), Rational(-300),
                 "q(1+delta)^-3 from the printed delta list and the inverse of the printed mirror map both give "
                 "-300 q^5"}};
    r.notes = "K_P2. n_{beta_0+kl} equals the local BPS invariant of K_F1 in class kf+(k-1)e.";
    return r;
}

ReferenceExample make_kp1xp1()
{
    ReferenceExample r;
    r.id = "kp1xp1";
    r.fan = {3,
             {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}},
             {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}}};
    r.charge_rows = {{-2, 1, 0, 1, 0}, {-2, 0, 1, 0, 1}};
    r.pf_operators = {"T1^2 - 2*q1*(T1+T2)*(1+2*T1+2*T2)", "T2^2 - 2*q2*(T1+T2)*(1+2*T1+2*T2)"};
    r.delta_divisor = 0;
    // n_{k1,k2} through k1 + k2 = 5, i.e. (1 - F)^{-1/2} - 1.
    r.delta_table = {5,
                     {e2(1, 0, 1), e2(0, 1, 1), e2(1, 1, 3), e2(2, 1, 5), e2(1, 2, 5), e2(3, 1, 7), e2(2, 2, 35),
                      e2(1, 3, 7), e2(4, 1, 9), e2(3, 2, 135), e2(2, 3, 135), e2(1, 4, 9)}};
    // 1 - F(q1, q2) with qc_a = q_a (1 - F), printed through degree 4.
    const CoefficientTable one_minus_f{
        4,
        {e2(0, 0, 1), e2(1, 0, -2), e2(0, 1, -2), e2(2, 0, 3), e2(0, 2, 3), e2(3, 0, -4), e2(2, 1, -4), e2(1, 2, -4),
         e2(0, 3, -4), e2(4, 0, 5), e2(2, 2, -25), e2(0, 4, 5)}};
    r.inverse_map_tables = {one_minus_f, one_minus_f};
    r.notes = "K_P1xP1. n_{k1,k2} equals the local BPS invariant of K_dP2 in class k1 L1 + k2 L2 + (k1+k2-1)e.";
    return r;
}

json table_to_json(const CoefficientTable &t)
{
    json entries = json::array();
    for (const auto &e : t.entries) {
        entries.push_back({{"index", e.index}, {"value", to_string(e.value)}});
    }
    return {{"extent", t.extent}, {"entries", entries}};
}

CoefficientTable table_from_json(const json &j)
{
    CoefficientTable t;
    t.extent = j.at("extent").get<int>();
    for (const auto &e : j.at("entries")) {
        t.entries.push_back({e.at("index").get<MultiIndex>(), parse_rational(e.at("value").get<std::string>())});
    }
    return t;
}

void compare(ReferenceReport &report, const std::string &table, const MultiIndex &d, const Rational &expected,
             const Rational &actual, bool erratum)
{
    report.checks.push_back({table, d, expected, actual, expected == actual, erratum});
}

} // namespace

Rational CoefficientTable::at(const MultiIndex &d) const
{
    if (total_degree(d) > extent) {
        throw Error(ErrorCode::MissingInvariantData, "index beyond the table's extent");
    }
    for (const auto &e : entries) {
        if (e.index == d) {
            return e.value;
        }
    }
    return 0;
}

CoefficientTable ReferenceExample::corrected_inverse(std::size_t row) const
{
    CoefficientTable t = inverse_map_tables.at(row);
    const std::string name = "inverse[" + std::to_string(row) + "]";
    for (const auto &err : errata) {
        if (err.table != name) {
            continue;
        }
        auto it = std::find_if(t.entries.begin(), t.entries.end(), [&](const TableEntry &e) { return e.index == err.index; });
        // Only a table still holding the printed value is corrected.
        const Rational current = it != t.entries.end() ? it->value : Rational(0);
        if (current != err.printed) {
            continue;
        }
        if (it != t.entries.end()) {
            it->value = err.corrected;
        } else {
            t.entries.push_back({err.index, err.corrected});
        }
    }
    return t;
}

const std::vector<std::string> &reference_ids()
{
    static const std::vector<std::string> ids{"kp1", "conifold", "kp2", "kp1xp1"};
    return ids;
}

ReferenceExample lookup_reference(std::string_view id)
{
    if (id == "kp1") {
        return make_kp1();
    }
    if (id == "conifold") {
        return make_conifold();
    }
    if (id == "kp2") {
        return make_kp2();
    }
    if (id == "kp1xp1") {
        return make_kp1xp1();
    }
    throw Error(ErrorCode::UnknownExample, "no reference example named '" + std::string(id) + "'");
}

bool ReferenceReport::all_match() const
{
    return mismatches() == 0;
}

std::size_t ReferenceReport::mismatches() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto &c) { return !c.match; }));
}

ReferenceReport verify_against_reference(const ReferenceExample &ref, const std::optional<CorrectionSeries> &delta,
                                         const InverseMirrorMap &inv, int max_order)
{
    if (max_order < 1) {
        throw Error(ErrorCode::InvalidArgument, "order must be at least 1");
    }
    const std::size_t l = ref.charge_rows.size();
    if (inv.num_vars() != l || ref.inverse_map_tables.size() != l) {
        throw Error(ErrorCode::VarCountMismatch, "computed data and reference disagree on the class count");
    }
    if (inv.cutoff() < max_order) {
        throw Error(ErrorCode::CutoffTooSmall, "inverse map known through degree " + std::to_string(inv.cutoff()) +
                                                   ", comparison needs " + std::to_string(max_order));
    }
    if (delta && delta->delta.cutoff() < max_order) {
        throw Error(ErrorCode::CutoffTooSmall, "correction series known through degree " +
                                                   std::to_string(delta->delta.cutoff()) + ", comparison needs " +
                                                   std::to_string(max_order));
    }
    ReferenceReport report{ref.id, max_order, {}};

    const int computed_divisor = delta ? delta->divisor : -1;
    if (computed_divisor != ref.delta_divisor) {
        compare(report, "delta_divisor", {}, ref.delta_divisor, computed_divisor, false);
    }
    const int delta_top = std::min(max_order, ref.delta_table.extent);
    for (int deg = 1; deg <= delta_top; ++deg) {
        for_each_index_of_degree(l, deg, [&](const MultiIndex &d) {
            compare(report, "delta", d, ref.delta_table.at(d), delta ? delta->delta.coefficient(d) : Rational(0),
                    false);
        });
    }
    for (std::size_t a = 0; a < l; ++a) {
        const std::string name = "inverse[" + std::to_string(a) + "]";
        const CoefficientTable table = ref.corrected_inverse(a);
        const int top = std::min(max_order - 1, table.extent);
        for (int deg = 0; deg <= top; ++deg) {
            for_each_index_of_degree(l, deg, [&](const MultiIndex &d) {
                const bool erratum = std::any_of(ref.errata.begin(), ref.errata.end(), [&](const Erratum &e) {
                    return e.table == name && e.index == d;
                });
                compare(report, name, d, table.at(d), inv.exp_factors[a].coefficient(d), erratum);
            });
        }
    }
    return report;
}

std::string reference_to_json(const ReferenceExample &ref)
{
    json j;
    j["id"] = ref.id;
    j["rank"] = ref.fan.rank;
    j["rays"] = ref.fan.rays;
    j["max_cones"] = ref.fan.max_cones;
    j["charge_rows"] = ref.charge_rows;
    j["pf_operators"] = ref.pf_operators;
    j["delta_divisor"] = ref.delta_divisor;
    j["delta_table"] = table_to_json(ref.delta_table);
    json inv = json::array();
    for (const auto &t : ref.inverse_map_tables) {
        inv.push_back(table_to_json(t));
    }
    j["inverse_map_tables"] = inv;
    json errata = json::array();
    for (const auto &e : ref.errata) {
        errata.push_back({{"table", e.table},
                          {"index", e.index},
                          {"printed", to_string(e.printed)},
                          {"corrected", to_string(e.corrected)},
                          {"reason", e.reason}});
    }
    j["errata"] = errata;
    j["notes"] = ref.notes;
    return j.dump(2) + "\n";
}

ReferenceExample reference_from_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, std::string("reference document: ") + e.what());
    }
    try {
        ReferenceExample r;
        r.id = j.at("id").get<std::string>();
        r.fan.rank = j.at("rank").get<int>();
        r.fan.rays = j.at("rays").get<IntMatrix>();
        r.fan.max_cones = j.at("max_cones").get<std::vector<Cone>>();
        r.charge_rows = j.at("charge_rows").get<IntMatrix>();
        r.pf_operators = j.value("pf_operators", std::vector<std::string>{});
        r.delta_divisor = j.at("delta_divisor").get<int>();
        r.delta_table = table_from_json(j.at("delta_table"));
        for (const auto &t : j.at("inverse_map_tables")) {
            r.inverse_map_tables.push_back(table_from_json(t));
        }
        for (const auto &e : j.value("errata", json::array())) {
            r.errata.push_back({e.at("table").get<std::string>(), e.at("index").get<MultiIndex>(),
                                parse_rational(e.at("printed").get<std::string>()),
                                parse_rational(e.at("corrected").get<std::string>()),
                                e.value("reason", std::string{})});
        }
        r.notes = j.value("notes", std::string{});
        return r;
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("reference document: ") + e.what());
    }
}

} // namespace syzmirror
