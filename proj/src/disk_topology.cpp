#include "syzmirror/disk_topology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "syzmirror/error.hpp"

namespace syzmirror {

namespace {

void check_shape(const DiskClass &c, const ValidatedFan &vf)
{
    if (c.k.size() != vf.num_rays() || c.kprime.size() != static_cast<std::size_t>(vf.rank() - 1) ||
        c.alpha.size() != vf.num_classes()) {
        throw Error(ErrorCode::InvalidArgument, "disk class does not match the fan's dimensions");
    }
}

bool all_zero(const IntVector &v)
{
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

// Order of mirror terms: base ray 0, the remaining base rays, then every other
// ray in fan order.
std::vector<int> term_order(const ValidatedFan &vf)
{
    std::vector<int> order(vf.cy.base_rays.begin(), vf.cy.base_rays.end());
    for (std::size_t i = 0; i < vf.num_rays(); ++i) {
        if (std::find(order.begin(), order.end(), static_cast<int>(i)) == order.end()) {
            order.push_back(static_cast<int>(i));
        }
    }
    return order;
}

std::string atom_name(int ray)
{
    return "C_" + std::to_string(ray);
}

std::string prime_atom_name(int j)
{
    return "C'_" + std::to_string(j);
}

SymbolicTerm z_monomial(std::size_t n, std::size_t index, int power)
{
    SymbolicTerm t;
    t.z.assign(n, 0);
    t.z[index] = power;
    return t;
}

std::vector<std::string> z_names(std::size_t num_z)
{
    return default_var_names(num_z, "z");
}

// Splits a monomial into numerator and denominator factor lists.
void monomial_factors(const IntVector &e, std::span<const std::string> names, bool latex,
                      std::vector<std::string> &num, std::vector<std::string> &den)
{
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) {
            continue;
        }
        const int p = e[j] > 0 ? e[j] : -e[j];
        std::string f = names[j];
        if (p > 1) {
            f += latex ? "^{" + std::to_string(p) + "}" : "^" + std::to_string(p);
        }
        (e[j] > 0 ? num : den).push_back(f);
    }
}

std::vector<std::string> resolve_q_names(const MirrorPolynomial &mp, std::span<const std::string> q_names)
{
    const std::size_t l = mp.terms.empty() ? 0 : mp.terms.front().one_plus_delta.num_vars();
    if (!q_names.empty()) {
        if (q_names.size() != l) {
            throw Error(ErrorCode::VarCountMismatch, "wrong number of q names");
        }
        return {q_names.begin(), q_names.end()};
    }
    return default_var_names(l);
}

std::string format_mirror_impl(const MirrorPolynomial &mp, std::span<const std::string> q_names_in, bool latex)
{
    const auto plain_q_names = resolve_q_names(mp, q_names_in);
    auto q_names = plain_q_names;
    auto zs = z_names(mp.num_z);
    if (latex) {
        for (auto &s : q_names) {
            s = latex_var_name(s);
        }
        for (auto &s : zs) {
            s = latex_var_name(s);
        }
    }
    std::string out = latex ? mp.u_name + " " + mp.v_name + " = " : mp.u_name + mp.v_name + " = ";
    bool first = true;
    for (const auto &t : mp.terms) {
        std::vector<std::string> num;
        std::vector<std::string> den;
        if (t.area_constant) {
            num.push_back(latex ? "C_{" + std::to_string(*t.area_constant) + "}" : atom_name(*t.area_constant));
        }
        monomial_factors(IntVector(t.q_power.begin(), t.q_power.end()), q_names, latex, num, den);
        const bool trivial = t.one_plus_delta == MultiSeries::constant(t.one_plus_delta.num_vars(),
                                                                       t.one_plus_delta.cutoff(), 1);
        monomial_factors(t.exponent, zs, latex, num, den);
        if (!trivial) {
            const std::string body = latex ? format_series_latex(t.one_plus_delta, plain_q_names)
                                           : format_series(t.one_plus_delta, q_names);
            // A bare correction series needs no brackets inside the sum.
            if (num.empty() && den.empty()) {
                num.push_back(body);
            } else {
                num.insert(num.begin() + (t.area_constant ? 1 : 0),
                           latex ? "\\left(" + body + "\\right)" : "(" + body + ")");
            }
        }

        const std::string sep = latex ? " " : "*";
        std::string top;
        for (const auto &f : num) {
            top += (top.empty() ? "" : sep) + f;
        }
        std::string bottom;
        for (const auto &f : den) {
            bottom += (bottom.empty() ? "" : sep) + f;
        }
        std::string term;
        if (bottom.empty()) {
            term = top.empty() ? "1" : top;
        } else if (latex) {
            term = "\\frac{" + (top.empty() ? std::string("1") : top) + "}{" + bottom + "}";
        } else {
            term = (top.empty() ? std::string("1") : top) + "/" + (den.size() > 1 ? "(" + bottom + ")" : bottom);
        }
        out += (first ? "" : " + ") + term;
        first = false;
    }
    return out;
}

} // namespace

DiskClass DiskClass::zero(const ValidatedFan &vf)
{
    return {IntVector(vf.num_rays(), 0), IntVector(static_cast<std::size_t>(vf.rank() - 1), 0),
            IntVector(vf.num_classes(), 0)};
}

DiskClass DiskClass::basic(const ValidatedFan &vf, std::size_t ray)
{
    if (ray >= vf.num_rays()) {
        throw Error(ErrorCode::InvalidArgument, "ray index out of range");
    }
    DiskClass c = zero(vf);
    c.k[ray] = 1;
    return c;
}

DiskClass DiskClass::basic_prime(const ValidatedFan &vf, std::size_t j)
{
    if (j < 1 || j >= static_cast<std::size_t>(vf.rank())) {
        throw Error(ErrorCode::InvalidArgument, "beta'_j needs 1 <= j <= n-1");
    }
    DiskClass c = zero(vf);
    c.kprime[j - 1] = 1;
    return c;
}

DiskClass DiskClass::sphere(const ValidatedFan &vf, const IntVector &alpha)
{
    DiskClass c = zero(vf);
    if (alpha.size() != c.alpha.size()) {
        throw Error(ErrorCode::InvalidArgument, "sphere class has the wrong length");
    }
    c.alpha = alpha;
    return c;
}

DiskClass &DiskClass::operator+=(const DiskClass &rhs)
{
    if (k.size() != rhs.k.size() || kprime.size() != rhs.kprime.size() || alpha.size() != rhs.alpha.size()) {
        throw Error(ErrorCode::InvalidArgument, "disk classes of different shapes");
    }
    for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] += rhs.k[i];
    }
    for (std::size_t i = 0; i < kprime.size(); ++i) {
        kprime[i] += rhs.kprime[i];
    }
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        alpha[i] += rhs.alpha[i];
    }
    return *this;
}

std::string chamber_name(Chamber c)
{
    return c == Chamber::BPlus ? "B+" : "B-";
}

LoopClass boundary_class(const DiskClass &c, const ValidatedFan &vf)
{
    check_shape(c, vf);
    const auto n = static_cast<std::size_t>(vf.rank());
    LoopClass out{IntVector(n, 0)};
    for (std::size_t i = 0; i < c.k.size(); ++i) {
        if (c.k[i] == 0) {
            continue;
        }
        const IntVector e = vf.z_exponent(i);
        out.coords[0] += c.k[i];
        for (std::size_t j = 1; j < n; ++j) {
            out.coords[j] += c.k[i] * e[j - 1];
        }
    }
    for (std::size_t j = 1; j < n; ++j) {
        out.coords[j] += c.kprime[j - 1];
    }
    return out;
}

int maslov_index(const DiskClass &c)
{
    int total = 0;
    for (int x : c.k) {
        total += x;
    }
    for (int x : c.kprime) {
        total += x;
    }
    return 2 * total;
}

int intersection_number(const DiskClass &c, const DivisorId &divisor, const ValidatedFan &vf, const ChargeMatrix &q)
{
    check_shape(c, vf);
    const int n = vf.rank();
    const int m = static_cast<int>(vf.num_rays());
    switch (divisor.kind) {
    case DivisorKind::D: {
        if (divisor.index < 0 || divisor.index >= n) {
            throw Error(ErrorCode::UnknownDivisor, "D_" + std::to_string(divisor.index));
        }
        if (divisor.index == 0) {
            int total = 0;
            for (int x : c.k) {
                total += x;
            }
            return total;
        }
        return c.kprime[divisor.index - 1];
    }
    case DivisorKind::Toric: {
        if (divisor.index < 0 || divisor.index >= m) {
            throw Error(ErrorCode::UnknownDivisor, "toric divisor " + std::to_string(divisor.index));
        }
        if (q.num_rows() != c.alpha.size()) {
            throw Error(ErrorCode::VarCountMismatch, "charge matrix does not match the sphere class");
        }
        int total = c.k[divisor.index];
        for (std::size_t a = 0; a < c.alpha.size(); ++a) {
            total += c.alpha[a] * q.entries[a][divisor.index];
        }
        return total;
    }
    case DivisorKind::ToricPrime: {
        if (divisor.index < 1 || divisor.index >= n) {
            throw Error(ErrorCode::UnknownDivisor, "toric divisor D'_" + std::to_string(divisor.index));
        }
        return c.kprime[divisor.index - 1];
    }
    }
    throw Error(ErrorCode::UnknownDivisor, "unknown divisor kind");
}

DeltaSource DeltaSource::none(std::size_t num_vars, int cutoff)
{
    return {num_vars, cutoff, {}};
}

DeltaSource DeltaSource::from(const CorrectionSeries &delta)
{
    DeltaSource s{delta.delta.num_vars(), delta.delta.cutoff(), {}};
    s.series.emplace(delta.divisor, delta.delta);
    return s;
}

MultiSeries DeltaSource::one_plus(int ray) const
{
    MultiSeries out = MultiSeries::constant(num_vars, cutoff, 1);
    if (auto it = series.find(ray); it != series.end()) {
        out += it->second;
    }
    return out;
}

Rational chamber_invariant(Chamber chamber, const DiskClass &c, const ValidatedFan &vf, const DeltaSource &delta)
{
    check_shape(c, vf);
    if (maslov_index(c) != 2) {
        return 0;
    }
    const auto nonneg = [](const IntVector &v) { return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; }); };
    if (!nonneg(c.k) || !nonneg(c.kprime) || !nonneg(c.alpha)) {
        return 0;
    }
    // Maslov two with nonnegative multiplicities: exactly one basic disk.
    const bool prime = !all_zero(c.kprime);
    const auto j = prime ? std::find(c.kprime.begin(), c.kprime.end(), 1) - c.kprime.begin()
                         : std::find(c.k.begin(), c.k.end(), 1) - c.k.begin();
    const bool no_sphere = all_zero(c.alpha);

    if (chamber == Chamber::BMinus) {
        if (!no_sphere) {
            return 0;
        }
        return (prime || j == vf.cy.base_rays[0]) ? 1 : 0;
    }
    if (no_sphere) {
        return 1;
    }
    if (prime) {
        return 0;
    }
    const auto compact = compact_divisors(vf);
    if (std::find(compact.begin(), compact.end(), static_cast<int>(j)) == compact.end()) {
        return 0;
    }
    auto it = delta.series.find(static_cast<int>(j));
    if (it == delta.series.end()) {
        throw Error(ErrorCode::MissingInvariantData, "no correction series for divisor " + std::to_string(j));
    }
    const MultiIndex alpha(c.alpha.begin(), c.alpha.end());
    if (total_degree(alpha) > it->second.cutoff()) {
        throw Error(ErrorCode::MissingInvariantData,
                    "sphere class of degree " + std::to_string(total_degree(alpha)) + " beyond the known order " +
                        std::to_string(it->second.cutoff()));
    }
    return it->second.coefficient(alpha);
}

SymbolicExpression SymbolicExpression::term(SymbolicTerm t)
{
    return SymbolicExpression{{std::move(t)}}.canonical();
}

SymbolicExpression SymbolicExpression::canonical() const
{
    using Key = std::tuple<IntVector, std::map<std::string, int>, std::vector<int>>;
    std::map<Key, Rational> merged;
    for (const auto &t : terms) {
        std::map<std::string, int> atoms;
        for (const auto &[name, p] : t.atoms) {
            if (p != 0) {
                atoms.emplace(name, p);
            }
        }
        std::vector<int> deltas = t.deltas;
        std::sort(deltas.begin(), deltas.end());
        merged[Key{t.z, atoms, deltas}] += t.coefficient;
    }
    SymbolicExpression out;
    for (const auto &[key, c] : merged) {
        if (c != 0) {
            out.terms.push_back({c, std::get<1>(key), std::get<2>(key), std::get<0>(key)});
        }
    }
    return out;
}

SymbolicExpression operator*(const SymbolicExpression &a, const SymbolicExpression &b)
{
    SymbolicExpression out;
    for (const auto &x : a.terms) {
        for (const auto &y : b.terms) {
            if (x.z.size() != y.z.size()) {
                throw Error(ErrorCode::VarCountMismatch, "symbolic terms over different z variables");
            }
            SymbolicTerm t{x.coefficient * y.coefficient, x.atoms, x.deltas, x.z};
            for (const auto &[name, p] : y.atoms) {
                t.atoms[name] += p;
            }
            t.deltas.insert(t.deltas.end(), y.deltas.begin(), y.deltas.end());
            for (std::size_t i = 0; i < t.z.size(); ++i) {
                t.z[i] += y.z[i];
            }
            out.terms.push_back(std::move(t));
        }
    }
    return out.canonical();
}

bool operator==(const SymbolicExpression &a, const SymbolicExpression &b)
{
    return a.canonical().terms == b.canonical().terms;
}

std::string format_symbolic(const SymbolicExpression &e)
{
    const SymbolicExpression c = e.canonical();
    if (c.terms.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &t : c.terms) {
        const bool negative = t.coefficient < 0;
        const Rational mag = negative ? Rational(-t.coefficient) : t.coefficient;
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        first = false;
        std::vector<std::string> factors;
        if (mag != 1) {
            factors.push_back(to_string(mag));
        }
        for (const auto &[name, p] : t.atoms) {
            factors.push_back(p == 1 ? name : name + "^" + std::to_string(p));
        }
        for (int d : t.deltas) {
            factors.push_back("(1+delta_" + std::to_string(d) + ")");
        }
        for (std::size_t i = 0; i < t.z.size(); ++i) {
            if (t.z[i] != 0) {
                const std::string name = "z" + std::to_string(i);
                factors.push_back(t.z[i] == 1 ? name : name + "^" + std::to_string(t.z[i]));
            }
        }
        std::string term;
        for (const auto &f : factors) {
            term += (term.empty() ? "" : "*") + f;
        }
        out += term.empty() ? "1" : term;
    }
    return out;
}

SymbolicExpression area_polynomial(const ValidatedFan &vf)
{
    const auto n = static_cast<std::size_t>(vf.rank());
    const auto compact = compact_divisors(vf);
    SymbolicExpression g;
    for (int ray : term_order(vf)) {
        SymbolicTerm t;
        t.atoms[atom_name(ray)] = 1;
        if (std::find(compact.begin(), compact.end(), ray) != compact.end()) {
            t.deltas.push_back(ray);
        }
        t.z.assign(n, 0);
        const IntVector e = vf.z_exponent(ray);
        std::copy(e.begin(), e.end(), t.z.begin() + 1);
        g.terms.push_back(std::move(t));
    }
    return g.canonical();
}

FourierCoordinates fourier_coordinates(const ValidatedFan &vf, Chamber chamber)
{
    const auto n = static_cast<std::size_t>(vf.rank());
    const std::string c0 = atom_name(vf.cy.base_rays[0]);
    const SymbolicExpression g = area_polynomial(vf);
    FourierCoordinates out;
    out.chamber = chamber;
    const SymbolicExpression z0 = SymbolicExpression::term(z_monomial(n, 0, 1));
    SymbolicTerm inv_z0 = z_monomial(n, 0, -1);
    if (chamber == Chamber::BMinus) {
        SymbolicTerm t = z_monomial(n, 0, 1);
        t.atoms[c0] = 1;
        out.z_tilde.push_back(SymbolicExpression::term(t));
        out.u = out.z_tilde.front();
        inv_z0.atoms[c0] = -1;
        out.v = SymbolicExpression::term(inv_z0) * g;
    } else {
        out.z_tilde.push_back(z0 * g);
        out.u = out.z_tilde.front();
        out.v = SymbolicExpression::term(inv_z0);
    }
    for (std::size_t j = 1; j < n; ++j) {
        SymbolicTerm t = z_monomial(n, j, 1);
        t.atoms[prime_atom_name(static_cast<int>(j))] = 1;
        out.z_tilde.push_back(SymbolicExpression::term(t));
    }
    return out;
}

MultiIndex flat_q_power(const ValidatedFan &vf, const ChargeMatrix &q, std::size_t ray)
{
    const auto m = vf.num_rays();
    const auto &base = vf.cy.base_rays;
    if (q.num_rows() != vf.num_classes() || (q.num_rows() > 0 && q.num_columns() != m)) {
        throw Error(ErrorCode::VarCountMismatch, "charge matrix does not match the fan");
    }
    // Exponents of the area constants C_k in C_i/C_0 * prod_j (C_0/C_j)^{a_ij}.
    linalg::IntVector target(m, 0);
    target[ray] += 1;
    target[base[0]] -= 1;
    const IntVector a = vf.z_exponent(ray);
    for (std::size_t j = 1; j < base.size(); ++j) {
        target[base[0]] += a[j - 1];
        target[base[j]] -= a[j - 1];
    }
    MultiIndex alpha(q.num_rows(), 0);
    for (std::size_t r = 0; r < q.num_rows(); ++r) {
        alpha[r] = target[q.row_rays[r]];
    }
    linalg::IntVector check(m, 0);
    for (std::size_t r = 0; r < q.num_rows(); ++r) {
        for (std::size_t i = 0; i < m; ++i) {
            check[i] += alpha[r] * q.entries[r][i];
        }
    }
    if (check != target || std::any_of(alpha.begin(), alpha.end(), [](int x) { return x < 0; })) {
        throw Error(ErrorCode::InvalidArgument,
                    "area constants of ray " + std::to_string(ray) + " do not combine to a q-monomial");
    }
    return alpha;
}

MirrorPolynomial mirror_equation(const ValidatedFan &vf, const ChargeMatrix &q, const DeltaSource &delta,
                                 MirrorForm form)
{
    if (delta.num_vars != q.num_rows()) {
        throw Error(ErrorCode::VarCountMismatch, "correction series and charge matrix disagree on the class count");
    }
    const auto compact = compact_divisors(vf);
    for (int c : compact) {
        if (!delta.series.contains(c)) {
            throw Error(ErrorCode::MissingInvariantData, "no correction series for compact divisor " + std::to_string(c));
        }
    }
    MirrorPolynomial mp;
    mp.form = form;
    mp.num_z = static_cast<std::size_t>(vf.rank() - 1);
    for (int ray : term_order(vf)) {
        MirrorTerm t;
        t.ray = ray;
        t.exponent = vf.z_exponent(ray);
        if (form == MirrorForm::Cform) {
            t.area_constant = ray;
            t.q_power.assign(q.num_rows(), 0);
        } else {
            t.q_power = flat_q_power(vf, q, ray);
        }
        t.one_plus_delta = delta.one_plus(ray);
        mp.terms.push_back(std::move(t));
    }
    return mp;
}

SymbolicExpression superpotential(const ValidatedFan &vf, Chamber chamber, SuperpotentialSpace space)
{
    const FourierCoordinates fc = fourier_coordinates(vf, chamber);
    if (space == SuperpotentialSpace::X) {
        return fc.z_tilde.front();
    }
    SymbolicExpression w;
    for (const auto &zt : fc.z_tilde) {
        w.terms.insert(w.terms.end(), zt.terms.begin(), zt.terms.end());
    }
    return w.canonical();
}

IntVector MonomialTransform::apply(const IntVector &e) const
{
    if (a.empty() || e.size() + 1 != a.size()) {
        throw Error(ErrorCode::ArityMismatch, "exponent length does not match the transform");
    }
    IntVector out(e.size(), 0);
    for (std::size_t j = 1; j < a.size(); ++j) {
        int s = a[j][0];
        for (std::size_t k = 1; k < a.size(); ++k) {
            s += a[j][k] * e[k - 1];
        }
        out[j - 1] = s;
    }
    return out;
}

MonomialTransform MonomialTransform::compose(const MonomialTransform &then) const
{
    if (a.size() != then.a.size()) {
        throw Error(ErrorCode::ArityMismatch, "transforms of different sizes");
    }
    return {linalg::multiply(then.a, a)};
}

bool MonomialTransform::is_identity() const
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[i][j] != (i == j ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

ValidatedFan rebase(const ValidatedFan &vf, const Cone &cone)
{
    const auto idx = find_max_cone(vf.fan, cone);
    if (!idx) {
        throw Error(ErrorCode::NotACone, "index set is not a maximal cone");
    }
    Fan f = vf.fan;
    f.max_cones[*idx] = cone;
    return validate_fan(f, ValidateOptions{*idx, vf.calabi_yau});
}

ConeChangeResult cone_change_mirror(const ValidatedFan &vf, const Cone &cone_a, const Cone &cone_b,
                                    const MirrorPolynomial &mp)
{
    ConeChangeResult out{mp, {cone_change_matrix(vf, cone_a, cone_b)}};
    if (mp.num_z + 1 != out.transform.a.size()) {
        throw Error(ErrorCode::ArityMismatch, "mirror polynomial has the wrong number of z variables");
    }
    for (auto &t : out.polynomial.terms) {
        t.exponent = out.transform.apply(t.exponent);
    }
    // Reorder for the new chart: cone_b's rays first, then the rest in fan order.
    std::vector<int> order(cone_b.begin(), cone_b.end());
    for (std::size_t i = 0; i < vf.num_rays(); ++i) {
        if (std::find(order.begin(), order.end(), static_cast<int>(i)) == order.end()) {
            order.push_back(static_cast<int>(i));
        }
    }
    std::stable_sort(out.polynomial.terms.begin(), out.polynomial.terms.end(),
                     [&order](const MirrorTerm &x, const MirrorTerm &y) {
                         return std::find(order.begin(), order.end(), x.ray) <
                                std::find(order.begin(), order.end(), y.ray);
                     });
    return out;
}

std::string format_mirror(const MirrorPolynomial &mp, std::span<const std::string> q_names)
{
    return format_mirror_impl(mp, q_names, false);
}

std::string format_mirror_latex(const MirrorPolynomial &mp, std::span<const std::string> q_names)
{
    return format_mirror_impl(mp, q_names, true);
}

} // namespace syzmirror
