#include "syzmirror/periods.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "syzmirror/error.hpp"

namespace syzmirror {

LogSeries LogPeriod::phi() const
{
    LogSeries out(f.num_vars(), f.cutoff());
    out.plain = -f;
    out.log_parts[index] = MultiSeries::constant(f.num_vars(), f.cutoff(), -1);
    return out;
}

Rational gamma_log_coefficient(const ChargeMatrix &q, const MultiIndex &d, std::size_t row)
{
    const auto l = q.num_rows();
    if (d.size() != l) {
        throw Error(ErrorCode::VarCountMismatch, "multi-index length differs from the number of charge rows");
    }
    if (row >= l) {
        throw Error(ErrorCode::InvalidArgument, "charge row out of range");
    }
    for (int x : d) {
        if (x < 0) {
            throw Error(ErrorCode::NegativeIndex, "Gamma series index must be nonnegative");
        }
    }
    const auto cols = q.num_columns();
    std::vector<std::int64_t> ell(cols, 0);
    for (std::size_t a = 0; a < l; ++a) {
        for (std::size_t i = 0; i < cols; ++i) {
            ell[i] += q.entries[a][i] * d[a];
        }
    }
    std::size_t negative = cols;
    int count = 0;
    for (std::size_t i = 0; i < cols; ++i) {
        if (ell[i] < 0) {
            negative = i;
            ++count;
        }
    }
    // 1/Gamma(1 + ell + eps) vanishes to first order for every negative ell;
    // with two or more such columns the derivative at eps = 0 is zero too.
    if (count != 1) {
        return Rational(0);
    }
    const auto n = static_cast<unsigned long>(-ell[negative]);
    Integer denom(1);
    for (std::size_t i = 0; i < cols; ++i) {
        if (i != negative) {
            denom *= factorial(static_cast<unsigned long>(ell[i]));
        }
    }
    Integer num = factorial(n - 1) * static_cast<long>(q.entries[row][negative]);
    if ((n - 1) % 2 == 1) {
        num = -num;
    }
    Rational r(num, denom);
    r.canonicalize();
    return r;
}

std::vector<LogPeriod> single_log_periods(const ChargeMatrix &q, int cutoff)
{
    const auto l = q.num_rows();
    std::vector<LogPeriod> out;
    for (std::size_t a = 0; a < l; ++a) {
        out.push_back({a, MultiSeries(l, cutoff)});
    }
    for (int deg = 1; deg <= cutoff; ++deg) {
        for_each_index_of_degree(l, deg, [&](const MultiIndex &d) {
            for (std::size_t a = 0; a < l; ++a) {
                out[a].f.set_coefficient(d, gamma_log_coefficient(q, d, a));
            }
        });
    }
    return out;
}

std::vector<MultiSeries> mirror_map_series(const std::vector<LogPeriod> &periods)
{
    std::vector<MultiSeries> out;
    out.reserve(periods.size());
    for (const auto &p : periods) {
        out.push_back(exp(p.f));
    }
    return out;
}

std::optional<MultiIndex> summation_cone_witness(const ChargeMatrix &q, int radius)
{
    const auto l = q.num_rows();
    const auto cols = q.num_columns();
    MultiIndex d(l, -radius);
    if (l == 0) {
        return std::nullopt;
    }
    while (true) {
        const bool outside = std::any_of(d.begin(), d.end(), [](int x) { return x < 0; });
        if (outside) {
            int count = 0;
            std::size_t negative = 0;
            for (std::size_t i = 0; i < cols; ++i) {
                std::int64_t ell = 0;
                for (std::size_t a = 0; a < l; ++a) {
                    ell += q.entries[a][i] * d[a];
                }
                if (ell < 0) {
                    ++count;
                    negative = i;
                }
            }
            if (count == 1) {
                for (std::size_t a = 0; a < l; ++a) {
                    if (q.entries[a][negative] != 0) {
                        return d;
                    }
                }
            }
        }
        std::size_t pos = 0;
        while (pos < l && d[pos] == radius) {
            d[pos] = -radius;
            ++pos;
        }
        if (pos == l) {
            break;
        }
        ++d[pos];
    }
    return std::nullopt;
}

DiffOperator::DiffOperator(std::size_t num_vars) : num_vars_(num_vars) {}

DiffOperator DiffOperator::constant(std::size_t num_vars, const Rational &value)
{
    DiffOperator op(num_vars);
    op.add_term(MultiIndex(num_vars, 0), MultiIndex(num_vars, 0), value);
    return op;
}

DiffOperator DiffOperator::theta(std::size_t num_vars, std::size_t var)
{
    if (var >= num_vars) {
        throw Error(ErrorCode::VarCountMismatch, "theta index out of range");
    }
    DiffOperator op(num_vars);
    MultiIndex powers(num_vars, 0);
    powers[var] = 1;
    op.add_term(MultiIndex(num_vars, 0), powers, 1);
    return op;
}

DiffOperator DiffOperator::q(std::size_t num_vars, std::size_t var)
{
    if (var >= num_vars) {
        throw Error(ErrorCode::VarCountMismatch, "q index out of range");
    }
    DiffOperator op(num_vars);
    MultiIndex shift(num_vars, 0);
    shift[var] = 1;
    op.add_term(shift, MultiIndex(num_vars, 0), 1);
    return op;
}

void DiffOperator::add_term(const MultiIndex &shift, const MultiIndex &powers, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(Key{shift, powers}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

DiffOperator &DiffOperator::operator+=(const DiffOperator &rhs)
{
    if (rhs.num_vars_ != num_vars_) {
        throw Error(ErrorCode::VarCountMismatch, "operators act on different variable counts");
    }
    for (const auto &[key, c] : rhs.terms_) {
        add_term(key.first, key.second, c);
    }
    return *this;
}

DiffOperator &DiffOperator::operator*=(const Rational &scalar)
{
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[key, c] : terms_) {
        c *= scalar;
    }
    return *this;
}

DiffOperator operator*(const DiffOperator &a, const DiffOperator &b)
{
    if (a.num_vars_ != b.num_vars_) {
        throw Error(ErrorCode::VarCountMismatch, "operators act on different variable counts");
    }
    const auto nv = a.num_vars_;
    DiffOperator out(nv);
    // theta_a q^f = q^f (theta_a + f_a), so q^e theta^k q^f theta^j
    // = q^(e+f) (theta + f)^k theta^j.
    for (const auto &[ka, ca] : a.terms_) {
        const auto &[e, k] = ka;
        for (const auto &[kb, cb] : b.terms_) {
            const auto &[f, j] = kb;
            MultiIndex shift(nv);
            for (std::size_t v = 0; v < nv; ++v) {
                shift[v] = e[v] + f[v];
            }
            // Expand prod_v (theta_v + f_v)^{k_v}.
            std::map<MultiIndex, Rational> poly{{MultiIndex(nv, 0), Rational(1)}};
            for (std::size_t v = 0; v < nv; ++v) {
                std::map<MultiIndex, Rational> next;
                for (const auto &[p, c] : poly) {
                    Integer binom(1);
                    // i = power of theta_v kept, from 0 to k_v.
                    for (int i = 0; i <= k[v]; ++i) {
                        Rational coeff = c * binom;
                        Rational fp(1);
                        for (int t = 0; t < k[v] - i; ++t) {
                            fp *= f[v];
                        }
                        coeff *= fp;
                        if (coeff != 0) {
                            MultiIndex np = p;
                            np[v] += i;
                            next[np] += coeff;
                        }
                        binom = binom * (k[v] - i) / (i + 1);
                    }
                }
                poly = std::move(next);
            }
            for (const auto &[p, c] : poly) {
                MultiIndex powers(nv);
                for (std::size_t v = 0; v < nv; ++v) {
                    powers[v] = p[v] + j[v];
                }
                out.add_term(shift, powers, c * ca * cb);
            }
        }
    }
    return out;
}

LogSeries apply_operator(const DiffOperator &op, const LogSeries &phi)
{
    if (op.num_vars() != phi.num_vars()) {
        throw Error(ErrorCode::VarCountMismatch, "operator and series have different variable counts");
    }
    LogSeries out(phi.num_vars(), phi.cutoff());
    for (const auto &[key, c] : op.terms()) {
        const auto &[shift, powers] = key;
        LogSeries t = phi;
        for (std::size_t v = 0; v < powers.size(); ++v) {
            for (int i = 0; i < powers[v]; ++i) {
                t = t.euler(v);
            }
        }
        t = t.shifted(shift);
        t *= c;
        out += t;
    }
    return out;
}

namespace {

class OperatorParser {
public:
    OperatorParser(std::string_view text, std::size_t num_vars) : text_(text), nv_(num_vars) {}

    DiffOperator parse()
    {
        DiffOperator op = expression();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return op;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw Error(ErrorCode::ParseError,
                    "operator literal at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    long integer()
    {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an integer");
        }
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    DiffOperator expression()
    {
        DiffOperator acc = term();
        while (true) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    DiffOperator term()
    {
        DiffOperator acc = power();
        while (true) {
            if (accept('*')) {
                acc = acc * power();
            } else if (accept('/')) {
                const long den = integer();
                if (den == 0) {
                    fail("division by zero");
                }
                acc *= make_rational(1, den);
            } else {
                return acc;
            }
        }
    }

    DiffOperator power()
    {
        DiffOperator base = unary();
        if (accept('^')) {
            const long e = integer();
            DiffOperator result = DiffOperator::constant(nv_, 1);
            for (long i = 0; i < e; ++i) {
                result = result * base;
            }
            return result;
        }
        return base;
    }

    DiffOperator unary()
    {
        if (accept('-')) {
            DiffOperator op = unary();
            op *= Rational(-1);
            return op;
        }
        if (accept('+')) {
            return unary();
        }
        return atom();
    }

    std::size_t variable_index()
    {
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const long k = integer();
            if (k < 1 || static_cast<std::size_t>(k) > nv_) {
                fail("variable index " + std::to_string(k) + " out of range");
            }
            return static_cast<std::size_t>(k - 1);
        }
        if (nv_ == 0) {
            fail("no variables available");
        }
        return 0;
    }

    DiffOperator atom()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            DiffOperator inner = expression();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return DiffOperator::constant(nv_, integer());
        }
        if (c == 'T' || c == 'q') {
            ++pos_;
            const auto v = variable_index();
            return c == 'T' ? DiffOperator::theta(nv_, v) : DiffOperator::q(nv_, v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t nv_;
    std::size_t pos_ = 0;
};

} // namespace

DiffOperator parse_operator(std::string_view text, std::size_t num_vars)
{
    return OperatorParser(text, num_vars).parse();
}

} // namespace syzmirror
