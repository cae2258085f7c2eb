#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "syzmirror/disk_topology.hpp"
#include "syzmirror/error.hpp"

using namespace syzmirror;

namespace {

ErrorCode code_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

struct Example {
    ValidatedFan vf;
    PipelineResult r;
    DeltaSource delta;
};

Example example(const char *id, int cutoff = 6)
{
    auto vf = validate_fan(fixtures::bundled_fan(id));
    auto r = run_pipeline(vf, cutoff);
    auto delta = r.delta ? DeltaSource::from(*r.delta) : DeltaSource::none(r.charges.num_rows(), cutoff);
    return {std::move(vf), std::move(r), std::move(delta)};
}

SymbolicTerm sym(std::map<std::string, int> atoms, IntVector z, std::vector<int> deltas = {})
{
    SymbolicTerm t;
    t.atoms = std::move(atoms);
    t.z = std::move(z);
    t.deltas = std::move(deltas);
    return t;
}

SymbolicExpression sum(std::vector<SymbolicTerm> terms)
{
    return SymbolicExpression{std::move(terms)}.canonical();
}

DiskClass random_class(const ValidatedFan &vf, std::mt19937 &rng)
{
    std::uniform_int_distribution<long> small(0, 3);
    std::uniform_int_distribution<long> any(-3, 3);
    DiskClass c = DiskClass::zero(vf);
    for (auto &x : c.k) {
        x = small(rng);
    }
    for (auto &x : c.kprime) {
        x = small(rng);
    }
    for (auto &x : c.alpha) {
        x = any(rng);
    }
    return c;
}

} // namespace

TEST_CASE("boundary classes")
{
    const auto vf = validate_fan(fixtures::bundled_fan("kp1"));
    CHECK(boundary_class(DiskClass::basic(vf, 1), vf).coords == IntVector{1, 1});
    CHECK(boundary_class(DiskClass::basic(vf, 0), vf).coords == IntVector{1, 0});
    CHECK(boundary_class(DiskClass::basic(vf, 2), vf).coords == IntVector{1, -1});
    CHECK(boundary_class(DiskClass::basic_prime(vf, 1), vf).coords == IntVector{0, 1});
    CHECK(boundary_class(DiskClass::sphere(vf, {4}), vf).coords == IntVector{0, 0});

    std::mt19937 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = fixtures::random_cy_fan(rng);
        const auto v = validate_fan(f);
        for (std::size_t i = 0; i < v.num_rays(); ++i) {
            CHECK(boundary_class(DiskClass::basic(v, i), v).coords.front() == 1);
        }
        const auto a = random_class(v, rng);
        const auto b = random_class(v, rng);
        const auto ba = boundary_class(a, v).coords;
        const auto bb = boundary_class(b, v).coords;
        IntVector sum_ab(ba.size());
        for (std::size_t k = 0; k < ba.size(); ++k) {
            sum_ab[k] = ba[k] + bb[k];
        }
        CHECK(boundary_class(a + b, v).coords == sum_ab);
    }
}

TEST_CASE("Maslov index and intersections")
{
    const auto ex = example("kp2");
    const auto &vf = ex.vf;
    const auto &q = ex.r.charges;
    const auto b0 = DiskClass::basic(vf, 0);
    CHECK(maslov_index(b0) == 2);
    CHECK(maslov_index(b0 + DiskClass::basic(vf, 1)) == 4);
    CHECK(maslov_index(b0 + DiskClass::sphere(vf, {5})) == 2);

    CHECK(intersection_number(DiskClass::basic(vf, 2), {DivisorKind::Toric, 2}, vf, q) == 1);
    CHECK(intersection_number(DiskClass::basic(vf, 2), {DivisorKind::Toric, 1}, vf, q) == 0);
    CHECK(intersection_number(DiskClass::basic_prime(vf, 1), {DivisorKind::D, 0}, vf, q) == 0);
    CHECK(intersection_number(DiskClass::basic_prime(vf, 1), {DivisorKind::D, 1}, vf, q) == 1);
    CHECK(intersection_number(DiskClass::basic_prime(vf, 1), {DivisorKind::D, 2}, vf, q) == 0);
    CHECK(intersection_number(b0, {DivisorKind::D, 0}, vf, q) == 1);
    CHECK(intersection_number(DiskClass::basic(vf, 3), {DivisorKind::D, 0}, vf, q) == 1);
    CHECK(intersection_number(DiskClass::basic(vf, 3), {DivisorKind::ToricPrime, 1}, vf, q) == 0);
    // The line class meets the compact divisor -3 times and each other toric divisor once.
    const auto line = DiskClass::sphere(vf, {1});
    CHECK(intersection_number(line, {DivisorKind::Toric, 0}, vf, q) == -3);
    CHECK(intersection_number(line, {DivisorKind::Toric, 3}, vf, q) == 1);
    CHECK(intersection_number(line, {DivisorKind::D, 0}, vf, q) == 0);

    CHECK(code_of([&] { intersection_number(b0, {DivisorKind::Toric, 4}, vf, q); }) == ErrorCode::UnknownDivisor);
    CHECK(code_of([&] { intersection_number(b0, {DivisorKind::ToricPrime, 0}, vf, q); }) ==
          ErrorCode::UnknownDivisor);
    CHECK(code_of([&] { intersection_number(b0, {DivisorKind::D, 3}, vf, q); }) == ErrorCode::UnknownDivisor);

    SUBCASE("Maslov index is twice the total D intersection")
    {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 60; ++trial) {
            const auto f = fixtures::random_cy_fan(rng);
            const auto v = validate_fan(f);
            const auto qq = charge_matrix(v);
            const auto c = random_class(v, rng);
            int total = 0;
            for (int j = 0; j < v.rank(); ++j) {
                total += intersection_number(c, {DivisorKind::D, j}, v, qq);
            }
            CHECK(maslov_index(c) == 2 * total);
        }
    }
}

TEST_CASE("chamber invariants")
{
    const auto ex = example("kp2");
    const auto &vf = ex.vf;
    const auto b0 = DiskClass::basic(vf, 0);
    CHECK(chamber_invariant(Chamber::BMinus, DiskClass::basic(vf, 1), vf, ex.delta) == 0);
    CHECK(chamber_invariant(Chamber::BMinus, b0, vf, ex.delta) == 1);
    CHECK(chamber_invariant(Chamber::BMinus, DiskClass::basic_prime(vf, 2), vf, ex.delta) == 1);
    CHECK(chamber_invariant(Chamber::BMinus, b0 + DiskClass::sphere(vf, {1}), vf, ex.delta) == 0);

    CHECK(chamber_invariant(Chamber::BPlus, b0 + DiskClass::sphere(vf, {2}), vf, ex.delta) == 5);
    CHECK(chamber_invariant(Chamber::BPlus, b0 + DiskClass::sphere(vf, {6}), vf, ex.delta) == 35870);
    CHECK(chamber_invariant(Chamber::BPlus, b0, vf, ex.delta) == 1);
    CHECK(chamber_invariant(Chamber::BPlus, DiskClass::basic(vf, 3), vf, ex.delta) == 1);
    CHECK(chamber_invariant(Chamber::BPlus, DiskClass::basic_prime(vf, 1), vf, ex.delta) == 1);
    CHECK(chamber_invariant(Chamber::BPlus, DiskClass::basic(vf, 3) + DiskClass::sphere(vf, {1}), vf, ex.delta) ==
          0);
    // Maslov index four.
    CHECK(chamber_invariant(Chamber::BPlus, b0 + DiskClass::basic(vf, 1), vf, ex.delta) == 0);
    // Negative sphere part.
    CHECK(chamber_invariant(Chamber::BPlus, b0 + DiskClass::sphere(vf, {-1}), vf, ex.delta) == 0);

    CHECK(code_of([&] {
              chamber_invariant(Chamber::BPlus, b0 + DiskClass::sphere(vf, {7}), vf, ex.delta);
          }) == ErrorCode::MissingInvariantData);
    CHECK(code_of([&] {
              chamber_invariant(Chamber::BPlus, b0 + DiskClass::sphere(vf, {1}), vf, DeltaSource::none(1, 6));
          }) == ErrorCode::MissingInvariantData);
}

TEST_CASE("Fourier coordinates glue to g")
{
    for (const char *id : {"kp1", "kp2", "kp1xp1", "conifold"}) {
        CAPTURE(id);
        const auto vf = validate_fan(fixtures::bundled_fan(id));
        const auto n = static_cast<std::size_t>(vf.rank());
        const auto g = area_polynomial(vf);
        CHECK(g.terms.size() == vf.num_rays());
        for (Chamber ch : {Chamber::BPlus, Chamber::BMinus}) {
            const auto fc = fourier_coordinates(vf, ch);
            CHECK(fc.u * fc.v == g);
            REQUIRE(fc.z_tilde.size() == n);
            for (std::size_t j = 1; j < n; ++j) {
                IntVector z(n, 0);
                z[j] = 1;
                CHECK(fc.z_tilde[j] == sum({sym({{"C'_" + std::to_string(j), 1}}, z)}));
            }
            CHECK(superpotential(vf, ch) == fc.z_tilde[0]);
        }
        IntVector z0(n, 0);
        z0[0] = 1;
        CHECK(fourier_coordinates(vf, Chamber::BMinus).z_tilde[0] == sum({sym({{"C_0", 1}}, z0)}));
        CHECK(superpotential(vf, Chamber::BMinus) == sum({sym({{"C_0", 1}}, z0)}));
    }

    SUBCASE("conifold superpotential on B+")
    {
        const auto vf = validate_fan(fixtures::bundled_fan("conifold"));
        const auto w = superpotential(vf, Chamber::BPlus);
        CHECK(w == sum({sym({{"C_0", 1}}, {1, 0, 0}), sym({{"C_1", 1}}, {1, 1, 0}), sym({{"C_2", 1}}, {1, 0, 1}),
                        sym({{"C_3", 1}}, {1, 1, -1})}));
    }
    SUBCASE("X' superpotential is the sum of all z tilde")
    {
        const auto vf = validate_fan(fixtures::bundled_fan("kp1"));
        const auto fc = fourier_coordinates(vf, Chamber::BMinus);
        auto terms = fc.z_tilde[0].terms;
        terms.insert(terms.end(), fc.z_tilde[1].terms.begin(), fc.z_tilde[1].terms.end());
        CHECK(superpotential(vf, Chamber::BMinus, SuperpotentialSpace::XPrime) == sum(terms));
        CHECK(format_symbolic(superpotential(vf, Chamber::BMinus)) == "C_0*z0");
    }
    SUBCASE("K_P1 g carries the correction on the compact ray only")
    {
        const auto vf = validate_fan(fixtures::bundled_fan("kp1"));
        CHECK(area_polynomial(vf) == sum({sym({{"C_0", 1}}, {0, 0}, {0}), sym({{"C_1", 1}}, {0, 1}),
                                          sym({{"C_2", 1}}, {0, -1})}));
    }
}

TEST_CASE("mirror equations")
{
    SUBCASE("flat forms")
    {
        CHECK(format_mirror(mirror_equation(example("kp1").vf, example("kp1").r.charges, example("kp1").delta,
                                            MirrorForm::Flat)) == "uv = 1 + q + z + q/z");
        const auto con = example("conifold");
        CHECK(format_mirror(mirror_equation(con.vf, con.r.charges, con.delta, MirrorForm::Flat)) ==
              "uv = 1 + z1 + z2 + q*z1/z2");
        const auto kp2 = example("kp2", 3);
        CHECK(format_mirror(mirror_equation(kp2.vf, kp2.r.charges, kp2.delta, MirrorForm::Flat)) ==
              "uv = 1 - 2*q + 5*q^2 - 32*q^3 + z1 + z2 + q/(z1*z2)");
        CHECK(format_mirror_latex(mirror_equation(con.vf, con.r.charges, con.delta, MirrorForm::Flat)) ==
              "u v = 1 + z_{1} + z_{2} + \\frac{q z_{1}}{z_{2}}");
    }
    SUBCASE("C-form")
    {
        const auto kp1 = example("kp1", 3);
        CHECK(format_mirror(mirror_equation(kp1.vf, kp1.r.charges, kp1.delta, MirrorForm::Cform)) ==
              "uv = C_0*(1 + q) + C_1*z + C_2/z");
    }
    SUBCASE("K_P1xP1 flat form has one q per row")
    {
        const auto ex = example("kp1xp1", 2);
        const auto mp = mirror_equation(ex.vf, ex.r.charges, ex.delta, MirrorForm::Flat);
        REQUIRE(mp.terms.size() == 5);
        CHECK(mp.terms[3].q_power == MultiIndex{1, 0});
        CHECK(mp.terms[4].q_power == MultiIndex{0, 1});
        CHECK(mp.terms[0].one_plus_delta == ex.r.delta->one_plus());
    }
    SUBCASE("missing data for a compact ray")
    {
        const auto ex = example("kp2", 3);
        CHECK(code_of([&] { mirror_equation(ex.vf, ex.r.charges, DeltaSource::none(1, 3), MirrorForm::Flat); }) ==
              ErrorCode::MissingInvariantData);
    }
}

TEST_CASE("flat coefficient of row a is q_a")
{
    std::mt19937 rng(29);
    std::vector<Fan> fans;
    for (const char *id : {"kp1", "kp2", "kp1xp1", "conifold"}) {
        fans.push_back(fixtures::bundled_fan(id));
    }
    for (int trial = 0; trial < 40; ++trial) {
        fans.push_back(fixtures::random_cy_fan(rng));
    }
    for (const auto &f : fans) {
        const auto vf = validate_fan(f);
        const auto q = charge_matrix(vf);
        for (std::size_t i = 0; i < vf.num_rays(); ++i) {
            const auto coords = vf.cy.coordinates(f.rays[i]);
            std::int64_t s = 0;
            for (auto c : coords) {
                s += c;
            }
            CHECK(s == 1);
        }
        for (std::size_t a = 0; a < q.num_rows(); ++a) {
            MultiIndex unit(q.num_rows(), 0);
            unit[a] = 1;
            CHECK(flat_q_power(vf, q, static_cast<std::size_t>(q.row_rays[a])) == unit);
        }
        for (int b : vf.cy.base_rays) {
            CHECK(flat_q_power(vf, q, static_cast<std::size_t>(b)) == MultiIndex(q.num_rows(), 0));
        }
    }
}

TEST_CASE("cone change")
{
    for (const char *id : {"kp1", "kp2", "kp1xp1", "conifold"}) {
        CAPTURE(id);
        const auto ex = example(id, 3);
        const auto &vf = ex.vf;
        for (const auto &ca : vf.fan.max_cones) {
            for (const auto &cb : vf.fan.max_cones) {
                const auto va = rebase(vf, ca);
                const auto vb = rebase(vf, cb);
                const auto pa = mirror_equation(va, charge_matrix(va), ex.delta, MirrorForm::Cform);
                const auto pb = mirror_equation(vb, charge_matrix(vb), ex.delta, MirrorForm::Cform);
                const auto changed = cone_change_mirror(vf, ca, cb, pa);
                CHECK(format_mirror(changed.polynomial) == format_mirror(pb));
                REQUIRE(changed.polynomial.terms.size() == pb.terms.size());
                for (std::size_t t = 0; t < pb.terms.size(); ++t) {
                    CHECK(changed.polynomial.terms[t].ray == pb.terms[t].ray);
                    CHECK(changed.polynomial.terms[t].exponent == pb.terms[t].exponent);
                }
                const auto det = linalg::determinant(changed.transform.a);
                CHECK((det == 1 || det == -1));
                const auto back = cone_change_mirror(vf, cb, ca, changed.polynomial);
                CHECK(changed.transform.compose(back.transform).is_identity());
                CHECK(format_mirror(back.polynomial) == format_mirror(pa));
            }
        }
    }

    SUBCASE("K_P1 swaps z and q/z")
    {
        const auto ex = example("kp1", 3);
        const auto &vf = ex.vf;
        const auto mp = mirror_equation(vf, ex.r.charges, ex.delta, MirrorForm::Cform);
        const Cone a = vf.fan.max_cones[0];
        const Cone b = vf.fan.max_cones[1];
        CHECK(cone_change_mirror(vf, a, a, mp).transform.is_identity());
        const auto changed = cone_change_mirror(vf, a, b, mp);
        CHECK_FALSE(changed.transform.is_identity());
        const auto va = rebase(vf, a);
        const auto vb = rebase(vf, b);
        for (std::size_t i = 0; i < vf.num_rays(); ++i) {
            CHECK(changed.transform.apply(va.z_exponent(i)) == vb.z_exponent(i));
        }
    }

    SUBCASE("errors")
    {
        const auto ex = example("kp2", 2);
        const auto mp = mirror_equation(ex.vf, ex.r.charges, ex.delta, MirrorForm::Cform);
        CHECK(code_of([&] { cone_change_mirror(ex.vf, {1, 2, 3}, ex.vf.fan.max_cones[0], mp); }) ==
              ErrorCode::NotACone);
        MirrorPolynomial wrong = mp;
        wrong.num_z = 1;
        CHECK(code_of([&] { cone_change_mirror(ex.vf, ex.vf.fan.max_cones[0], ex.vf.fan.max_cones[1], wrong); }) ==
              ErrorCode::ArityMismatch);
        CHECK(code_of([&] { rebase(ex.vf, {1, 2, 3}); }) == ErrorCode::NotACone);
    }
}
