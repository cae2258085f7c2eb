#include "syzmirror/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "syzmirror/error.hpp"

namespace syzmirror {

int total_degree(const MultiIndex &d)
{
    return std::accumulate(d.begin(), d.end(), 0);
}

bool GradedLexLess::operator()(const MultiIndex &a, const MultiIndex &b) const
{
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) {
        return da < db;
    }
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void enumerate_degree(MultiIndex &current, std::size_t pos, int remaining,
                      const std::function<void(const MultiIndex &)> &visit)
{
    if (pos + 1 == current.size()) {
        current[pos] = remaining;
        visit(current);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        current[pos] = k;
        enumerate_degree(current, pos + 1, remaining - k, visit);
    }
}

} // namespace

void for_each_index_of_degree(std::size_t num_vars, int degree, const std::function<void(const MultiIndex &)> &visit)
{
    if (num_vars == 0) {
        if (degree == 0) {
            visit(MultiIndex{});
        }
        return;
    }
    MultiIndex current(num_vars, 0);
    enumerate_degree(current, 0, degree, visit);
}

MultiSeries::MultiSeries(std::size_t num_vars, int cutoff) : num_vars_(num_vars), cutoff_(cutoff)
{
    if (cutoff < 0) {
        throw Error(ErrorCode::InvalidArgument, "negative series cutoff");
    }
}

MultiSeries MultiSeries::constant(std::size_t num_vars, int cutoff, const Rational &value)
{
    MultiSeries s(num_vars, cutoff);
    s.set_coefficient(MultiIndex(num_vars, 0), value);
    return s;
}

MultiSeries MultiSeries::variable(std::size_t num_vars, int cutoff, std::size_t index)
{
    if (index >= num_vars) {
        throw Error(ErrorCode::InvalidArgument, "variable index out of range");
    }
    MultiIndex d(num_vars, 0);
    d[index] = 1;
    return monomial(num_vars, cutoff, d);
}

MultiSeries MultiSeries::monomial(std::size_t num_vars, int cutoff, const MultiIndex &exponent,
                                  const Rational &coefficient)
{
    if (exponent.size() != num_vars) {
        throw Error(ErrorCode::VarCountMismatch, "monomial exponent has wrong length");
    }
    MultiSeries s(num_vars, cutoff);
    if (total_degree(exponent) <= cutoff) {
        s.set_coefficient(exponent, coefficient);
    }
    return s;
}

Rational MultiSeries::coefficient(const MultiIndex &d) const
{
    auto it = terms_.find(d);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiSeries::constant_term() const
{
    return coefficient(MultiIndex(num_vars_, 0));
}

void MultiSeries::set_coefficient(const MultiIndex &d, const Rational &value)
{
    if (d.size() != num_vars_) {
        throw Error(ErrorCode::VarCountMismatch, "index has wrong number of variables");
    }
    if (std::any_of(d.begin(), d.end(), [](int k) { return k < 0; })) {
        throw Error(ErrorCode::NegativeIndex, "negative exponent in series index");
    }
    if (total_degree(d) > cutoff_) {
        throw Error(ErrorCode::InvalidArgument, "index beyond series cutoff");
    }
    if (value == 0) {
        terms_.erase(d);
    } else {
        terms_[d] = value;
    }
}

void MultiSeries::add_to_coefficient(const MultiIndex &d, const Rational &value)
{
    if (value == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(d, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

MultiSeries MultiSeries::truncated(int cutoff) const
{
    MultiSeries r(num_vars_, cutoff);
    for (const auto &[d, c] : terms_) {
        if (total_degree(d) <= cutoff) {
            r.terms_.emplace(d, c);
        }
    }
    return r;
}

MultiSeries MultiSeries::homogeneous_part(int degree) const
{
    MultiSeries r(num_vars_, cutoff_);
    for (const auto &[d, c] : terms_) {
        if (total_degree(d) == degree) {
            r.terms_.emplace(d, c);
        }
    }
    return r;
}

MultiSeries MultiSeries::shifted(const MultiIndex &shift) const
{
    if (shift.size() != num_vars_) {
        throw Error(ErrorCode::VarCountMismatch, "shift has wrong number of variables");
    }
    const int sd = total_degree(shift);
    MultiSeries r(num_vars_, cutoff_);
    for (const auto &[d, c] : terms_) {
        if (total_degree(d) + sd > cutoff_) {
            continue;
        }
        MultiIndex e(d);
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] += shift[i];
        }
        r.terms_.emplace(std::move(e), c);
    }
    return r;
}

MultiSeries MultiSeries::euler(std::size_t var) const
{
    if (var >= num_vars_) {
        throw Error(ErrorCode::VarCountMismatch, "Euler operator variable out of range");
    }
    MultiSeries r(num_vars_, cutoff_);
    for (const auto &[d, c] : terms_) {
        if (d[var] != 0) {
            r.terms_.emplace(d, c * d[var]);
        }
    }
    return r;
}

void MultiSeries::check_compatible(const MultiSeries &other) const
{
    if (num_vars_ != other.num_vars_) {
        throw Error(ErrorCode::VarCountMismatch,
                    std::to_string(num_vars_) + " vs " + std::to_string(other.num_vars_) + " variables");
    }
    if (cutoff_ != other.cutoff_) {
        throw Error(ErrorCode::CutoffMismatch,
                    "cutoff " + std::to_string(cutoff_) + " vs " + std::to_string(other.cutoff_));
    }
}

MultiSeries &MultiSeries::operator+=(const MultiSeries &rhs)
{
    check_compatible(rhs);
    for (const auto &[d, c] : rhs.terms_) {
        add_to_coefficient(d, c);
    }
    return *this;
}

MultiSeries &MultiSeries::operator-=(const MultiSeries &rhs)
{
    check_compatible(rhs);
    for (const auto &[d, c] : rhs.terms_) {
        add_to_coefficient(d, -c);
    }
    return *this;
}

MultiSeries operator*(const MultiSeries &lhs, const MultiSeries &rhs)
{
    lhs.check_compatible(rhs);
    MultiSeries r(lhs.num_vars_, lhs.cutoff_);
    const std::size_t nv = lhs.num_vars_;
    MultiIndex e(nv);
    for (const auto &[da, ca] : lhs.terms_) {
        const int dega = total_degree(da);
        for (const auto &[db, cb] : rhs.terms_) {
            // Terms are ordered by degree, so the rest of rhs overflows too.
            if (dega + total_degree(db) > lhs.cutoff_) {
                break;
            }
            for (std::size_t i = 0; i < nv; ++i) {
                e[i] = da[i] + db[i];
            }
            r.add_to_coefficient(e, ca * cb);
        }
    }
    return r;
}

MultiSeries &MultiSeries::operator*=(const MultiSeries &rhs)
{
    *this = *this * rhs;
    return *this;
}

MultiSeries &MultiSeries::operator*=(const Rational &scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[d, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

MultiSeries MultiSeries::operator-() const
{
    MultiSeries r(*this);
    for (auto &[d, c] : r.terms_) {
        c = -c;
    }
    return r;
}

bool operator==(const MultiSeries &a, const MultiSeries &b)
{
    return a.num_vars_ == b.num_vars_ && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
}

MultiSeries exp_log(const MultiSeries &s, ExpLogMode mode)
{
    if (s.constant_term() != 0) {
        throw Error(ErrorCode::NonzeroConstantTerm,
                    mode == ExpLogMode::exp ? "exp needs s(0) = 0" : "log1p needs s(0) = 0");
    }
    // s has no constant term, so s^k starts in degree k and the sum is finite.
    const auto nv = s.num_vars();
    const int cutoff = s.cutoff();
    MultiSeries result = mode == ExpLogMode::exp ? MultiSeries::constant(nv, cutoff, 1) : MultiSeries(nv, cutoff);
    MultiSeries power = MultiSeries::constant(nv, cutoff, 1);
    Rational inv_factorial(1);
    for (int k = 1; k <= cutoff; ++k) {
        power *= s;
        if (power.is_zero()) {
            break;
        }
        if (mode == ExpLogMode::exp) {
            inv_factorial /= k;
            result += power * inv_factorial;
        } else {
            result += power * make_rational(k % 2 == 1 ? 1 : -1, k);
        }
    }
    return result;
}

MultiSeries exp(const MultiSeries &s)
{
    return exp_log(s, ExpLogMode::exp);
}

MultiSeries log1p(const MultiSeries &s)
{
    return exp_log(s, ExpLogMode::log1p);
}

MultiSeries pow_rational(const MultiSeries &s, const Rational &e)
{
    if (s.constant_term() != 1) {
        throw Error(ErrorCode::NonUnitConstantTerm, "pow_rational needs s(0) = 1");
    }
    const auto one = MultiSeries::constant(s.num_vars(), s.cutoff(), 1);
    if (e == 0) {
        return one;
    }
    return exp(log1p(s - one) * e);
}

MultiSeries substitute(const MultiSeries &s, std::span<const MultiSeries> args)
{
    if (args.size() != s.num_vars()) {
        throw Error(ErrorCode::ArityMismatch,
                    "series in " + std::to_string(s.num_vars()) + " variables given " +
                        std::to_string(args.size()) + " arguments");
    }
    if (args.empty()) {
        return s;
    }
    const auto nv = args.front().num_vars();
    const int cutoff = args.front().cutoff();
    for (const auto &a : args) {
        if (a.num_vars() != nv) {
            throw Error(ErrorCode::VarCountMismatch, "substitution arguments disagree on variable count");
        }
        if (a.cutoff() != cutoff) {
            throw Error(ErrorCode::CutoffMismatch, "substitution arguments disagree on cutoff");
        }
        if (a.constant_term() != 0) {
            throw Error(ErrorCode::NonzeroConstantTerm, "substituted series must vanish at the origin");
        }
    }
    if (s.cutoff() != cutoff) {
        throw Error(ErrorCode::CutoffMismatch, "outer series and arguments disagree on cutoff");
    }

    // powers[a][k] = args[a]^k
    std::vector<std::vector<MultiSeries>> powers(args.size());
    for (std::size_t a = 0; a < args.size(); ++a) {
        powers[a].push_back(MultiSeries::constant(nv, cutoff, 1));
    }
    auto power = [&](std::size_t a, int k) -> const MultiSeries & {
        while (static_cast<int>(powers[a].size()) <= k) {
            powers[a].push_back(powers[a].back() * args[a]);
        }
        return powers[a][k];
    };

    MultiSeries result(nv, cutoff);
    for (const auto &[d, c] : s.terms()) {
        if (total_degree(d) > cutoff) {
            break;
        }
        MultiSeries term = MultiSeries::constant(nv, cutoff, c);
        for (std::size_t a = 0; a < d.size() && !term.is_zero(); ++a) {
            if (d[a] > 0) {
                term *= power(a, d[a]);
            }
        }
        result += term;
    }
    return result;
}

std::vector<MultiSeries> map_components(std::span<const MultiSeries> h)
{
    std::vector<MultiSeries> out;
    out.reserve(h.size());
    for (std::size_t a = 0; a < h.size(); ++a) {
        out.push_back(exp(h[a]).shifted([&] {
            MultiIndex e(h[a].num_vars(), 0);
            e[a] = 1;
            return e;
        }()));
    }
    return out;
}

std::vector<MultiSeries> invert_map(std::span<const MultiSeries> f)
{
    const auto l = f.size();
    if (l == 0) {
        return {};
    }
    const auto nv = f.front().num_vars();
    const int cutoff = f.front().cutoff();
    for (const auto &fa : f) {
        if (fa.num_vars() != l || nv != l) {
            throw Error(ErrorCode::ArityMismatch, "map components must be series in as many variables as components");
        }
        if (fa.cutoff() != cutoff) {
            throw Error(ErrorCode::CutoffMismatch, "map components disagree on cutoff");
        }
        if (fa.constant_term() != 0) {
            throw Error(ErrorCode::NonzeroConstantTerm, "map exponent must vanish at the origin");
        }
    }

    // p = q exp(g) solves q = p exp(f(p)) iff g = -f(q exp(g)). Each pass fixes
    // one more degree of g, starting from g = 0.
    std::vector<MultiSeries> g(l, MultiSeries(nv, cutoff));
    for (int pass = 0; pass < cutoff; ++pass) {
        const auto args = map_components(g);
        std::vector<MultiSeries> next;
        next.reserve(l);
        for (const auto &fa : f) {
            next.push_back(-substitute(fa, args));
        }
        if (next == g) {
            break;
        }
        g = std::move(next);
    }
    return g;
}

std::vector<std::string> default_var_names(std::size_t num_vars, const std::string &stem)
{
    std::vector<std::string> names;
    if (num_vars == 1) {
        names.push_back(stem);
        return names;
    }
    for (std::size_t i = 0; i < num_vars; ++i) {
        names.push_back(stem + std::to_string(i + 1));
    }
    return names;
}

namespace {

std::string latex_rational(const Rational &r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

} // namespace

std::string format_series(const MultiSeries &s, std::span<const std::string> var_names)
{
    if (var_names.size() != s.num_vars()) {
        throw Error(ErrorCode::VarCountMismatch, "wrong number of variable names");
    }
    if (s.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[d, c] : s.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;

        std::string mono;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += var_names[i];
            if (d[i] > 1) {
                mono += "^" + std::to_string(d[i]);
            }
        }
        if (mono.empty()) {
            os << to_string(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << to_string(mag) << "*" << mono;
        }
    }
    return os.str();
}

std::string latex_var_name(const std::string &name)
{
    // "q12" -> "q_{12}"; a bare stem stays as is.
    std::size_t pos = name.find_first_of("0123456789");
    if (pos == std::string::npos) {
        return name;
    }
    return name.substr(0, pos) + "_{" + name.substr(pos) + "}";
}

std::string format_series_latex(const MultiSeries &s, std::span<const std::string> plain_names)
{
    if (plain_names.size() != s.num_vars()) {
        throw Error(ErrorCode::VarCountMismatch, "wrong number of variable names");
    }
    if (s.is_zero()) {
        return "0";
    }
    std::vector<std::string> names;
    for (const auto &n : plain_names) {
        names.push_back(latex_var_name(n));
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[d, c] : s.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) {
                continue;
            }
            mono += (mono.empty() ? "" : " ") + names[i];
            if (d[i] > 1) {
                mono += "^{" + std::to_string(d[i]) + "}";
            }
        }
        if (mono.empty()) {
            os << latex_rational(mag);
        } else if (mag == 1) {
            os << mono;
        } else {
            os << latex_rational(mag) << " " << mono;
        }
    }
    return os.str();
}

} // namespace syzmirror
