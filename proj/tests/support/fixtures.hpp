#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "syzmirror/refdata.hpp"
#include "syzmirror/toric.hpp"

namespace fixtures {

using syzmirror::Cone;
using syzmirror::Fan;
using syzmirror::IntMatrix;
using syzmirror::IntVector;

inline Fan bundled_fan(const char *id)
{
    return syzmirror::lookup_reference(id).fan;
}

inline Fan c3_fan()
{
    return {3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}}};
}

// Relabels rays by a random permutation and shuffles cone order.
inline Fan permuted(const Fan &f, std::mt19937 &rng)
{
    std::vector<int> perm(f.rays.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Fan out{f.rank, IntMatrix(f.rays.size()), {}};
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        out.rays[perm[i]] = f.rays[i];
    }
    for (const auto &c : f.max_cones) {
        Cone nc;
        for (int i : c) {
            nc.push_back(perm[i]);
        }
        std::shuffle(nc.begin(), nc.end(), rng);
        out.max_cones.push_back(nc);
    }
    std::shuffle(out.max_cones.begin(), out.max_cones.end(), rng);
    return out;
}

// Counterclockwise polygon with no reflex corner; collinear points allowed.
inline bool is_convex_polygon(const std::vector<std::pair<long, long>> &poly)
{
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const auto &a = poly[i];
        const auto &b = poly[(i + 1) % k];
        const auto &c = poly[(i + 2) % k];
        const long cross = (b.first - a.first) * (c.second - b.second) - (b.second - a.second) * (c.first - b.first);
        if (cross < 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::pair<long, long>> random_surface_polygon(std::mt19937 &rng)
{
    std::vector<std::pair<long, long>> poly;
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        poly = {{1, 0}, {0, 1}, {-1, -1}};
    } else {
        const long a = std::uniform_int_distribution<long>(0, 2)(rng);
        poly = {{1, 0}, {0, 1}, {-1, a}, {0, -1}};
    }
    const int blowups = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int b = 0; b < blowups; ++b) {
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, poly.size() - 1)(rng);
        const auto u = poly[i];
        const auto w = poly[(i + 1) % poly.size()];
        poly.insert(poly.begin() + static_cast<long>(i) + 1, {u.first + w.first, u.second + w.second});
    }
    return poly;
}

// Local surface K_S: S a smooth complete toric surface grown from P2 or F_a
// by random blowups (inserting u + w between neighbours u, w). Samples with
// non-convex support are redrawn.
inline Fan random_local_surface(std::mt19937 &rng)
{
    auto poly = random_surface_polygon(rng);
    while (!is_convex_polygon(poly)) {
        poly = random_surface_polygon(rng);
    }
    Fan f{3, {{0, 0, 1}}, {}};
    for (const auto &[x, y] : poly) {
        f.rays.push_back({x, y, 1});
    }
    const int k = static_cast<int>(poly.size());
    for (int i = 0; i < k; ++i) {
        f.max_cones.push_back({0, 1 + i, 1 + (i + 1) % k});
    }
    return f;
}

// Strip: lattice points (i, 0) for i < a and (j, 1) for j < b at height one,
// joined by a random staircase triangulation. No compact divisor.
inline Fan random_strip(std::mt19937 &rng)
{
    int a = std::uniform_int_distribution<int>(1, 3)(rng);
    const int b = std::uniform_int_distribution<int>(1, 3)(rng);
    if (a + b < 3) {
        a = 2;
    }
    Fan f{3, {}, {}};
    for (int i = 0; i < a; ++i) {
        f.rays.push_back({i, 0, 1});
    }
    for (int j = 0; j < b; ++j) {
        f.rays.push_back({j, 1, 1});
    }
    int i = 0;
    int j = 0;
    while (i < a - 1 || j < b - 1) {
        const bool step_bottom = j == b - 1 || (i < a - 1 && std::uniform_int_distribution<int>(0, 1)(rng) == 0);
        if (step_bottom) {
            f.max_cones.push_back({i, i + 1, a + j});
            ++i;
        } else {
            f.max_cones.push_back({i, a + j, a + j + 1});
            ++j;
        }
    }
    return f;
}

// Two-dimensional local curve chains: rays (x, 1) for consecutive x.
inline Fan random_chain(std::mt19937 &rng)
{
    const int len = std::uniform_int_distribution<int>(2, 6)(rng);
    const int start = std::uniform_int_distribution<int>(-3, 0)(rng);
    Fan f{2, {}, {}};
    for (int x = 0; x < len; ++x) {
        f.rays.push_back({start + x, 1});
    }
    for (int x = 0; x + 1 < len; ++x) {
        f.max_cones.push_back({x, x + 1});
    }
    return f;
}

inline Fan random_cy_fan(std::mt19937 &rng)
{
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
        return permuted(random_local_surface(rng), rng);
    case 1:
        return permuted(random_strip(rng), rng);
    default:
        return permuted(random_chain(rng), rng);
    }
}

// l x m charge matrix with one negative column (column 0), an identity block
// and one or two extra columns with nonnegative entries, not all zero in any
// row; rows sum to zero.
inline syzmirror::ChargeMatrix random_single_negative_charges(std::mt19937 &rng, std::size_t l)
{
    const std::size_t extra = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    const std::size_t m = 1 + l + extra;
    syzmirror::ChargeMatrix q;
    for (std::size_t a = 0; a < l; ++a) {
        IntVector row(m, 0);
        row[1 + a] = 1;
        for (std::size_t e = 0; e < extra; ++e) {
            row[1 + l + e] = std::uniform_int_distribution<long>(0, 2)(rng);
        }
        // At least one positive extra entry per row.
        row[1 + l + std::uniform_int_distribution<std::size_t>(0, extra - 1)(rng)] += 1;
        long s = 0;
        for (auto x : row) {
            s += x;
        }
        row[0] = -s;
        q.entries.push_back(row);
        q.row_rays.push_back(static_cast<int>(1 + a));
    }
    return q;
}

} // namespace fixtures
