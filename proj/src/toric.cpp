#include "syzmirror/toric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "syzmirror/error.hpp"

namespace syzmirror {

using linalg::Constraint;

namespace {

std::string ray_string(const IntVector &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + ")";
}

IntMatrix cone_matrix_columns(const Fan &fan, const Cone &cone)
{
    const auto n = static_cast<std::size_t>(fan.rank);
    IntMatrix b(n, IntVector(cone.size()));
    for (std::size_t k = 0; k < cone.size(); ++k) {
        for (std::size_t r = 0; r < n; ++r) {
            b[r][k] = fan.rays[cone[k]][r];
        }
    }
    return b;
}

IntMatrix dual_basis_of(const Fan &fan, const Cone &cone)
{
    auto inv = linalg::unimodular_inverse(cone_matrix_columns(fan, cone));
    if (!inv) {
        throw Error(ErrorCode::NonUnimodularCone, "cone rays do not form a lattice basis");
    }
    return *inv;
}

void check_structure(const Fan &fan)
{
    if (fan.rays.empty() || fan.max_cones.empty()) {
        throw Error(ErrorCode::EmptyFan, "fan needs at least one ray and one maximal cone");
    }
    if (fan.rank <= 0) {
        throw Error(ErrorCode::InvalidFan, "rank must be positive");
    }
    const auto n = static_cast<std::size_t>(fan.rank);
    const auto m = fan.rays.size();
    if (m < n) {
        throw Error(ErrorCode::InvalidFan, "fewer rays than the rank");
    }
    std::set<IntVector> seen_rays;
    for (std::size_t i = 0; i < m; ++i) {
        const auto &v = fan.rays[i];
        if (v.size() != n) {
            throw Error(ErrorCode::InvalidFan, "ray " + std::to_string(i) + " has wrong dimension");
        }
        if (linalg::gcd_of(v) != 1) {
            throw Error(ErrorCode::NonPrimitiveRay, "ray " + std::to_string(i) + " " + ray_string(v));
        }
        if (!seen_rays.insert(v).second) {
            throw Error(ErrorCode::InvalidFan, "duplicate ray " + ray_string(v));
        }
    }
    std::vector<bool> used(m, false);
    std::set<Cone> seen_cones;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto &cone = fan.max_cones[c];
        if (cone.size() != n) {
            throw Error(ErrorCode::InvalidFan, "cone " + std::to_string(c) + " does not have rank-many rays");
        }
        Cone sorted = cone;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw Error(ErrorCode::InvalidFan, "cone " + std::to_string(c) + " repeats a ray");
        }
        for (int idx : sorted) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= m) {
                throw Error(ErrorCode::InvalidFan, "cone " + std::to_string(c) + " uses an unknown ray");
            }
            used[idx] = true;
        }
        if (!seen_cones.insert(sorted).second) {
            throw Error(ErrorCode::InvalidFan, "cone " + std::to_string(c) + " listed twice");
        }
        const auto det = linalg::determinant(cone_matrix_columns(fan, cone));
        if (det != 1 && det != -1) {
            throw Error(ErrorCode::NonUnimodularCone,
                        "cone " + std::to_string(c) + " has determinant " + std::to_string(det));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!used[i]) {
            throw Error(ErrorCode::InvalidFan, "ray " + std::to_string(i) + " lies in no maximal cone");
        }
    }
}

struct BoundaryFacet {
    Cone rays;
    std::size_t cone = 0;
};

// Codimension-one faces lying in exactly one maximal cone.
std::vector<BoundaryFacet> boundary_facets(const Fan &fan)
{
    std::map<Cone, std::vector<std::size_t>> owners;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        Cone sorted = fan.max_cones[c];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t skip = 0; skip < sorted.size(); ++skip) {
            Cone facet;
            for (std::size_t k = 0; k < sorted.size(); ++k) {
                if (k != skip) {
                    facet.push_back(sorted[k]);
                }
            }
            owners[facet].push_back(c);
        }
    }
    std::vector<BoundaryFacet> out;
    for (const auto &[facet, cones] : owners) {
        if (cones.size() > 2) {
            throw Error(ErrorCode::UnsupportedFan, "a codimension-one face lies in more than two maximal cones");
        }
        if (cones.size() == 1) {
            out.push_back({facet, cones.front()});
        }
    }
    return out;
}

// Integer normal of the hyperplane spanned by the given n-1 rays.
IntVector hyperplane_normal(const Fan &fan, const Cone &facet)
{
    const auto n = static_cast<std::size_t>(fan.rank);
    IntVector h(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        IntMatrix minor;
        for (int r : facet) {
            IntVector row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != k) {
                    row.push_back(fan.rays[r][c]);
                }
            }
            minor.push_back(std::move(row));
        }
        const std::int64_t d = minor.empty() ? 1 : linalg::determinant(minor);
        h[k] = (k % 2 == 0) ? d : -d;
    }
    return h;
}

void check_convex_support(const Fan &fan, const std::vector<BoundaryFacet> &facets)
{
    for (const auto &bf : facets) {
        IntVector h = hyperplane_normal(fan, bf.rays);
        int opposite = -1;
        for (int r : fan.max_cones[bf.cone]) {
            if (std::find(bf.rays.begin(), bf.rays.end(), r) == bf.rays.end()) {
                opposite = r;
            }
        }
        if (linalg::dot(h, fan.rays[opposite]) < 0) {
            for (auto &x : h) {
                x = -x;
            }
        }
        for (std::size_t i = 0; i < fan.rays.size(); ++i) {
            if (linalg::dot(h, fan.rays[i]) < 0) {
                throw Error(ErrorCode::NonConvexSupport,
                            "ray " + std::to_string(i) + " lies beyond a boundary face of the support");
            }
        }
    }
}

} // namespace

IntVector CYStructure::coordinates(const IntVector &v) const
{
    IntVector out;
    out.reserve(dual_basis.size());
    for (const auto &nu : dual_basis) {
        out.push_back(linalg::dot(nu, v));
    }
    return out;
}

IntVector ValidatedFan::z_exponent(std::size_t ray) const
{
    const IntVector coords = cy.coordinates(fan.rays.at(ray));
    return IntVector(coords.begin() + 1, coords.end());
}

std::optional<std::size_t> find_max_cone(const Fan &fan, const Cone &cone)
{
    Cone sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        Cone other = fan.max_cones[c];
        std::sort(other.begin(), other.end());
        if (other == sorted) {
            return c;
        }
    }
    return std::nullopt;
}

ValidatedFan validate_fan(const Fan &fan, const ValidateOptions &options)
{
    check_structure(fan);
    check_convex_support(fan, boundary_facets(fan));

    const std::size_t base = options.base_cone.value_or(0);
    if (base >= fan.max_cones.size()) {
        throw Error(ErrorCode::NotACone, "base cone index " + std::to_string(base) + " out of range");
    }
    ValidatedFan vf{fan, {}, true};
    vf.cy.base_cone = base;
    vf.cy.base_rays = fan.max_cones[base];
    vf.cy.dual_basis = dual_basis_of(fan, vf.cy.base_rays);
    vf.cy.covector.assign(static_cast<std::size_t>(fan.rank), 0);
    for (const auto &nu : vf.cy.dual_basis) {
        for (std::size_t k = 0; k < nu.size(); ++k) {
            vf.cy.covector[k] += nu[k];
        }
    }
    // Any solution of <cov, v_i> = 1 must pair to one with the base cone rays,
    // which pins it to the sum of the dual basis.
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        if (linalg::dot(vf.cy.covector, fan.rays[i]) != 1) {
            vf.calabi_yau = false;
            if (options.require_calabi_yau) {
                throw Error(ErrorCode::NoCYCovector,
                            "no covector pairs to 1 with every ray; ray " + std::to_string(i) + " " +
                                ray_string(fan.rays[i]) + " pairs to " +
                                std::to_string(linalg::dot(vf.cy.covector, fan.rays[i])));
            }
        }
    }
    return vf;
}

ChargeMatrix charge_matrix(const ValidatedFan &vf)
{
    const auto m = vf.num_rays();
    const auto &base = vf.cy.base_rays;
    ChargeMatrix q;
    for (std::size_t r = 0; r < m; ++r) {
        if (std::find(base.begin(), base.end(), static_cast<int>(r)) != base.end()) {
            continue;
        }
        IntVector row(m, 0);
        row[r] = 1;
        const IntVector coords = vf.cy.coordinates(vf.fan.rays[r]);
        for (std::size_t j = 0; j < base.size(); ++j) {
            row[base[j]] = -coords[j];
        }
        q.entries.push_back(std::move(row));
        q.row_rays.push_back(static_cast<int>(r));
    }
    return q;
}

std::vector<int> compact_divisors(const ValidatedFan &vf)
{
    std::set<int> on_boundary;
    for (const auto &bf : boundary_facets(vf.fan)) {
        on_boundary.insert(bf.rays.begin(), bf.rays.end());
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < vf.num_rays(); ++i) {
        if (!on_boundary.contains(static_cast<int>(i))) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

MomentPolytope default_polytope(const ValidatedFan &vf)
{
    MomentPolytope p;
    p.constants.assign(vf.num_rays(), Rational(-1));
    for (int r : vf.cy.base_rays) {
        p.constants[r] = 0;
    }
    return p;
}

namespace {

void for_each_subset(std::size_t total, std::size_t size, const std::function<void(const std::vector<std::size_t> &)> &visit)
{
    std::vector<std::size_t> idx(size);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == size) {
            visit(idx);
            return;
        }
        for (std::size_t i = start; i + (size - pos) <= total; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

} // namespace

ModifiedFan modify_fan(const ValidatedFan &vf)
{
    const auto n = static_cast<std::size_t>(vf.rank());
    const auto m = vf.num_rays();
    const auto &base = vf.cy.base_rays;
    const IntVector &v0 = vf.fan.rays[base[0]];

    ModifiedFan out;
    out.fan = vf.fan;
    out.original_rays = m;
    for (std::size_t j = 1; j < n; ++j) {
        IntVector vp(n);
        for (std::size_t k = 0; k < n; ++k) {
            vp[k] = vf.fan.rays[base[j]][k] - v0[k];
        }
        if (std::find(out.fan.rays.begin(), out.fan.rays.end(), vp) != out.fan.rays.end()) {
            throw Error(ErrorCode::RayCollision, "v'_" + std::to_string(j) + " = " + ray_string(vp) +
                                                     " coincides with an existing ray");
        }
        out.new_rays.push_back(static_cast<int>(out.fan.rays.size()));
        out.fan.rays.push_back(std::move(vp));
    }

    // New maximal cones sit at vertices of the truncated polytope that touch a
    // truncating facet. For a large truncation constant these are the vertices
    // of { <v_i, xi> >= 0, <v'_j, xi> >= -K_j } away from the apex, with
    // K_j = 1 + j/(1000 n) separating the truncating facets.
    const std::size_t total = out.fan.rays.size();
    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < total; ++i) {
        Constraint c{linalg::to_rational({out.fan.rays[i]}).front(), Rational(0)};
        if (i >= m) {
            const auto j = static_cast<long>(i - m + 1);
            c.rhs = -(Rational(1) + make_rational(static_cast<long>(j), 1000 * static_cast<long>(n)));
        }
        cons.push_back(std::move(c));
    }
    std::set<Cone> cones;
    for (const auto &cone : vf.fan.max_cones) {
        Cone sorted = cone;
        std::sort(sorted.begin(), sorted.end());
        cones.insert(sorted);
    }
    std::vector<Cone> added;
    for_each_subset(total, n, [&](const std::vector<std::size_t> &subset) {
        if (subset.back() < m) {
            return;
        }
        linalg::RatMatrix a;
        RatVector b;
        for (auto i : subset) {
            a.push_back(cons[i].row);
            b.push_back(cons[i].rhs);
        }
        auto xi = linalg::solve(a, b);
        if (!xi) {
            return;
        }
        Cone tight;
        for (std::size_t i = 0; i < total; ++i) {
            const Rational lhs = linalg::dot(cons[i].row, *xi);
            if (lhs < cons[i].rhs) {
                return;
            }
            if (lhs == cons[i].rhs) {
                tight.push_back(static_cast<int>(i));
            }
        }
        if (tight.size() != n) {
            throw Error(ErrorCode::UnsupportedFan, "truncated polytope is not simple at a new vertex");
        }
        if (cones.insert(tight).second) {
            added.push_back(tight);
        }
    });
    out.fan.max_cones.insert(out.fan.max_cones.end(), added.begin(), added.end());
    // Smoothness and primitivity still hold; the Calabi-Yau condition does not.
    validate_fan(out.fan, ValidateOptions{vf.cy.base_cone, false});
    return out;
}

DiscriminantLocus discriminant_locus(const ValidatedFan &vf, const MomentPolytope &polytope, const Rational &k2)
{
    const auto m = vf.num_rays();
    const auto n = static_cast<std::size_t>(vf.rank());
    if (polytope.constants.size() != m) {
        throw Error(ErrorCode::InconsistentPolytope, "expected one polytope constant per ray");
    }
    {
        std::vector<Constraint> ineqs;
        for (std::size_t i = 0; i < m; ++i) {
            ineqs.push_back({linalg::to_rational({vf.fan.rays[i]}).front(), polytope.constants[i]});
        }
        if (!linalg::feasible(n, {}, ineqs)) {
            throw Error(ErrorCode::InconsistentPolytope, "moment polytope is empty");
        }
    }

    // With t = <v_0, xi> and y_j = <v_j - v_0, xi>, every ray pairs as
    // <v_i, xi> = t + z_exponent(i) . y.
    std::vector<RatVector> a(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (auto x : vf.z_exponent(i)) {
            a[i].emplace_back(static_cast<long>(x));
        }
    }
    const std::size_t dim = n - 1;
    auto diff = [&](std::size_t i, std::size_t k) {
        RatVector r(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            r[j] = a[i][j] - a[k][j];
        }
        return r;
    };

    DiscriminantLocus locus;
    locus.k2 = k2;
    std::set<std::pair<int, int>> pairs;
    for (const auto &cone : vf.fan.max_cones) {
        for (std::size_t x = 0; x < cone.size(); ++x) {
            for (std::size_t y = x + 1; y < cone.size(); ++y) {
                pairs.insert({std::min(cone[x], cone[y]), std::max(cone[x], cone[y])});
            }
        }
    }
    for (const auto &[ia, ib] : pairs) {
        DiscriminantStratum s;
        s.ray_a = ia;
        s.ray_b = ib;
        s.equation = {diff(ia, ib), polytope.constants[ia] - polytope.constants[ib]};
        for (std::size_t r = 0; r < m; ++r) {
            if (static_cast<int>(r) == ia || static_cast<int>(r) == ib) {
                continue;
            }
            s.inequality_rays.push_back(static_cast<int>(r));
            s.inequalities.push_back({diff(r, ia), polytope.constants[r] - polytope.constants[ia]});
        }
        if (!linalg::feasible(dim, {s.equation}, s.inequalities)) {
            continue;
        }
        // Vertices: the equation plus dim-1 tight inequalities.
        std::set<RatVector> verts;
        const std::size_t need = dim - 1;
        if (need <= s.inequalities.size()) {
            for_each_subset(s.inequalities.size(), need, [&](const std::vector<std::size_t> &subset) {
                linalg::RatMatrix mat{s.equation.row};
                RatVector rhs{s.equation.rhs};
                for (auto i : subset) {
                    mat.push_back(s.inequalities[i].row);
                    rhs.push_back(s.inequalities[i].rhs);
                }
                auto y = linalg::solve(mat, rhs);
                if (!y) {
                    return;
                }
                for (const auto &c : s.inequalities) {
                    if (linalg::dot(c.row, *y) < c.rhs) {
                        return;
                    }
                }
                verts.insert(*y);
            });
        }
        s.vertices.assign(verts.begin(), verts.end());
        if (dim == 1) {
            s.kind = "point";
        } else if (dim == 2) {
            s.kind = s.vertices.size() >= 2 ? "segment" : (s.vertices.size() == 1 ? "ray" : "line");
        } else {
            s.kind = "polyhedron";
        }
        locus.strata.push_back(std::move(s));
    }
    return locus;
}

IntMatrix cone_change_matrix(const ValidatedFan &vf, const Cone &cone_a, const Cone &cone_b)
{
    if (!find_max_cone(vf.fan, cone_a)) {
        throw Error(ErrorCode::NotACone, "first index set is not a maximal cone");
    }
    if (!find_max_cone(vf.fan, cone_b)) {
        throw Error(ErrorCode::NotACone, "second index set is not a maximal cone");
    }
    const auto n = static_cast<std::size_t>(vf.rank());
    const IntMatrix mu = dual_basis_of(vf.fan, cone_b);
    const IntVector &v0 = vf.fan.rays[cone_a[0]];
    IntMatrix a(n, IntVector(n, 0));
    a[0][0] = 1;
    for (std::size_t j = 1; j < n; ++j) {
        a[j][0] = linalg::dot(mu[j], v0);
        for (std::size_t k = 1; k < n; ++k) {
            const IntVector &vk = vf.fan.rays[cone_a[k]];
            a[j][k] = linalg::dot(mu[j], vk) - a[j][0];
        }
    }
    return a;
}

} // namespace syzmirror
