#include "syzmirror/linalg.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace syzmirror::linalg {

std::int64_t dot(const IntVector &a, const IntVector &b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

Rational dot(const RatVector &a, const RatVector &b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: length mismatch");
    }
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

std::int64_t gcd_of(const IntVector &v)
{
    std::int64_t g = 0;
    for (auto x : v) {
        g = std::gcd(g, std::llabs(x));
    }
    return g;
}

RatMatrix to_rational(const IntMatrix &m)
{
    RatMatrix r;
    r.reserve(m.size());
    for (const auto &row : m) {
        RatVector rr;
        rr.reserve(row.size());
        for (auto x : row) {
            rr.emplace_back(static_cast<long>(x));
        }
        r.push_back(std::move(rr));
    }
    return r;
}

IntMatrix transpose(const IntMatrix &m)
{
    if (m.empty()) {
        return {};
    }
    IntMatrix t(m.front().size(), IntVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            t[j][i] = m[i][j];
        }
    }
    return t;
}

IntMatrix multiply(const IntMatrix &a, const IntMatrix &b)
{
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b.front().size();
    IntMatrix r(a.size(), IntVector(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner) {
            throw std::invalid_argument("multiply: shape mismatch");
        }
        for (std::size_t k = 0; k < inner; ++k) {
            for (std::size_t j = 0; j < cols; ++j) {
                r[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return r;
}

Rational determinant(RatMatrix m)
{
    const std::size_t n = m.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return Rational(0);
        }
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) {
                continue;
            }
            const Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) {
                m[r][c] -= factor * m[col][c];
            }
        }
    }
    return det;
}

std::int64_t determinant(const IntMatrix &m)
{
    const Rational d = determinant(to_rational(m));
    return d.get_num().get_si();
}

std::size_t rank(RatMatrix m)
{
    if (m.empty()) {
        return 0;
    }
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        std::swap(m[pivot], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) {
                continue;
            }
            const Rational factor = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) {
                m[i][j] -= factor * m[r][j];
            }
        }
        ++r;
    }
    return r;
}

std::optional<RatMatrix> inverse(const RatMatrix &m)
{
    const std::size_t n = m.size();
    RatMatrix a = m;
    RatMatrix inv(n, RatVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw std::invalid_argument("inverse: matrix not square");
        }
        inv[i][i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return std::nullopt;
        }
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) {
                continue;
            }
            const Rational factor = a[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

std::optional<IntMatrix> unimodular_inverse(const IntMatrix &m)
{
    auto inv = inverse(to_rational(m));
    if (!inv) {
        return std::nullopt;
    }
    IntMatrix r(m.size(), IntVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            const Rational &x = (*inv)[i][j];
            if (!is_integer(x)) {
                return std::nullopt;
            }
            r[i][j] = x.get_num().get_si();
        }
    }
    return r;
}

std::optional<RatVector> solve(const RatMatrix &a, const RatVector &b)
{
    auto inv = inverse(a);
    if (!inv) {
        return std::nullopt;
    }
    RatVector x(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) {
        x[i] = dot((*inv)[i], b);
    }
    return x;
}

namespace {

// Substitutes x_var = (rhs - sum_{j != var} row_j x_j) / row_var into c.
void eliminate_with(const Constraint &pivot_eq, std::size_t var, Constraint &c)
{
    if (c.row[var] == 0) {
        return;
    }
    const Rational factor = c.row[var] / pivot_eq.row[var];
    for (std::size_t j = 0; j < c.row.size(); ++j) {
        c.row[j] -= factor * pivot_eq.row[j];
    }
    c.rhs -= factor * pivot_eq.rhs;
}

} // namespace

bool feasible(std::size_t dim, const std::vector<Constraint> &equalities, const std::vector<Constraint> &inequalities)
{
    std::vector<Constraint> eqs = equalities;
    std::vector<Constraint> ineqs = inequalities;
    for (const auto &c : eqs) {
        if (c.row.size() != dim) {
            throw std::invalid_argument("feasible: constraint length mismatch");
        }
    }
    for (const auto &c : ineqs) {
        if (c.row.size() != dim) {
            throw std::invalid_argument("feasible: constraint length mismatch");
        }
    }

    std::vector<bool> eliminated(dim, false);
    for (std::size_t e = 0; e < eqs.size(); ++e) {
        std::size_t var = dim;
        for (std::size_t j = 0; j < dim; ++j) {
            if (eqs[e].row[j] != 0) {
                var = j;
                break;
            }
        }
        if (var == dim) {
            if (eqs[e].rhs != 0) {
                return false;
            }
            continue;
        }
        eliminated[var] = true;
        for (std::size_t f = e + 1; f < eqs.size(); ++f) {
            eliminate_with(eqs[e], var, eqs[f]);
        }
        for (auto &c : ineqs) {
            eliminate_with(eqs[e], var, c);
        }
    }

    for (std::size_t var = 0; var < dim; ++var) {
        if (eliminated[var]) {
            continue;
        }
        std::vector<Constraint> pos, neg, next;
        for (auto &c : ineqs) {
            if (c.row[var] > 0) {
                pos.push_back(std::move(c));
            } else if (c.row[var] < 0) {
                neg.push_back(std::move(c));
            } else {
                next.push_back(std::move(c));
            }
        }
        for (const auto &p : pos) {
            for (const auto &n : neg) {
                // (-n_var) * p + p_var * n cancels x_var; both multipliers are positive.
                const Rational wp = -n.row[var];
                const Rational wn = p.row[var];
                Constraint c{RatVector(dim, Rational(0)), wp * p.rhs + wn * n.rhs};
                for (std::size_t j = 0; j < dim; ++j) {
                    c.row[j] = wp * p.row[j] + wn * n.row[j];
                }
                next.push_back(std::move(c));
            }
        }
        ineqs = std::move(next);
    }
    for (const auto &c : ineqs) {
        if (c.rhs > 0) {
            return false;
        }
    }
    return true;
}

} // namespace syzmirror::linalg
