#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "perbeta/error.hpp"

namespace perbeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial, coefficients stored by ascending exponent.
///
/// The representation is canonical: the highest stored coefficient is nonzero,
/// and the zero polynomial has no coefficients (degree -1).
template <class T>
class Polynomial {
public:
    using coeff_type = T;

    Polynomial() = default;

    explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    Polynomial(std::initializer_list<long> coeffs)
    {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs)
            coeffs_.emplace_back(c);
        trim();
    }

    static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

    /// c * x^e
    static Polynomial monomial(const T& c, std::size_t e)
    {
        std::vector<T> v(e + 1);
        v[e] = c;
        return Polynomial(std::move(v));
    }

    /// x^i - x^j
    static Polynomial binomial(std::size_t i, std::size_t j)
    {
        std::vector<T> v(std::max(i, j) + 1);
        v[i] += 1;
        v[j] -= 1;
        return Polynomial(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const std::vector<T>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of x^e; zero beyond the degree.
    const T& operator[](std::size_t e) const noexcept
    {
        return e < coeffs_.size() ? coeffs_[e] : zero_;
    }

    const T& leading() const noexcept { return coeffs_.empty() ? zero_ : coeffs_.back(); }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.coeffs_.size() > coeffs_.size())
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
            coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }

    Polynomial& operator*=(const T& s)
    {
        if (s == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& c : coeffs_)
            c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

    /// Schoolbook product. Zero coefficients are skipped, so sparse factors
    /// (geometric sums like 1 + x^e + x^2e + ...) multiply in time proportional
    /// to the number of nonzero terms.
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<std::size_t> nz_b;
        for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
            if (b.coeffs_[k] != 0)
                nz_b.push_back(k);
        std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            const T& ai = a.coeffs_[i];
            if (ai == 0)
                continue;
            for (std::size_t k : nz_b)
                out[i + k] += ai * b.coeffs_[k];
        }
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Multiply by x^e.
    Polynomial shifted(std::size_t e) const
    {
        if (is_zero())
            return {};
        std::vector<T> v(e, T(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return Polynomial(std::move(v));
    }

    template <class U>
    U evaluate(const U& x) const
    {
        U acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + U(*it);
        return acc;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<T> coeffs_;
    inline static const T zero_{0};
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

inline IntPoly make_int_poly(const std::vector<long>& coeffs)
{
    std::vector<Integer> v(coeffs.begin(), coeffs.end());
    return IntPoly(std::move(v));
}

inline RatPoly to_rational(const IntPoly& p)
{
    std::vector<Rational> v;
    v.reserve(p.size());
    for (const auto& c : p.coeffs())
        v.emplace_back(c);
    return RatPoly(std::move(v));
}

/// gcd of the coefficients, nonnegative; zero for the zero polynomial.
inline Integer content(const IntPoly& p)
{
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

/// p / content(p), sign chosen so the leading coefficient is positive.
inline IntPoly primitive_part(const IntPoly& p)
{
    if (p.is_zero())
        return p;
    Integer g = content(p);
    if (p.leading() < 0)
        g = -g;
    std::vector<Integer> v = p.coeffs();
    for (auto& c : v)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

/// Exact division by a scalar; throws ValidationFailed if some coefficient is
/// not divisible.
inline IntPoly divexact(const IntPoly& p, const Integer& d)
{
    require(d != 0, ErrorKind::DegenerateInput, "division by zero scalar");
    std::vector<Integer> v = p.coeffs();
    for (auto& c : v) {
        require(mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0, ErrorKind::ValidationFailed,
                "coefficient not divisible by " + d.get_str());
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
    return IntPoly(std::move(v));
}

/// Exact quotient a / b in Z[x]; throws ValidationFailed when b does not
/// divide a.
inline IntPoly divexact(const IntPoly& a, const IntPoly& b)
{
    require(!b.is_zero(), ErrorKind::DegenerateInput, "division by zero polynomial");
    if (a.is_zero())
        return {};
    require(a.degree() >= b.degree(), ErrorKind::ValidationFailed, "inexact polynomial division");
    std::vector<Integer> rem = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    const std::size_t dq = rem.size() - 1 - db;
    std::vector<Integer> q(dq + 1);
    const Integer& lc = b.leading();
    for (std::size_t k = dq + 1; k-- > 0;) {
        Integer& top = rem[k + db];
        if (top == 0)
            continue;
        require(mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t()) != 0, ErrorKind::ValidationFailed,
                "inexact polynomial division");
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
        for (std::size_t t = 0; t <= db; ++t)
            if (b[t] != 0)
                rem[k + t] -= q[k] * b[t];
    }
    for (std::size_t t = 0; t < db; ++t)
        require(rem[t] == 0, ErrorKind::ValidationFailed, "inexact polynomial division");
    return IntPoly(std::move(q));
}

/// Quotient and remainder over Q.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b)
{
    require(!b.is_zero(), ErrorKind::DegenerateInput, "division by zero polynomial");
    if (a.degree() < b.degree())
        return {RatPoly{}, a};
    std::vector<Rational> rem = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    const std::size_t dq = rem.size() - 1 - db;
    std::vector<Rational> q(dq + 1);
    const Rational inv_lc = 1 / b.leading();
    for (std::size_t k = dq + 1; k-- > 0;) {
        if (rem[k + db] == 0)
            continue;
        q[k] = rem[k + db] * inv_lc;
        for (std::size_t t = 0; t <= db; ++t)
            rem[k + t] -= q[k] * b[t];
    }
    rem.resize(db);
    return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

inline RatPoly make_monic(const RatPoly& p)
{
    if (p.is_zero())
        return p;
    Rational inv = 1 / p.leading();
    return p * inv;
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g and g monic.
struct ExtGcd {
    RatPoly g, s, t;
};

inline ExtGcd ext_gcd(const RatPoly& a, const RatPoly& b)
{
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(1), s1;
    RatPoly t0, t1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        RatPoly s2 = s0 - q * s1;
        RatPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

inline RatPoly gcd(const RatPoly& a, const RatPoly& b) { return ext_gcd(a, b).g; }

template <class T>
Polynomial<T> derivative(const Polynomial<T>& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<T> v(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k)
        v[k - 1] = p[k] * T(static_cast<long>(k));
    return Polynomial<T>(std::move(v));
}

/// x^len * p(1/x); requires len >= deg p.
template <class T>
Polynomial<T> reversed(const Polynomial<T>& p, std::size_t len)
{
    if (p.is_zero())
        return p;
    require(static_cast<long>(len) >= p.degree(), ErrorKind::PreconditionViolated,
            "reversal length below degree");
    std::vector<T> v(len + 1);
    for (std::size_t k = 0; k < p.size(); ++k)
        v[len - k] = p[k];
    return Polynomial<T>(std::move(v));
}

template <class T>
Polynomial<T> reversed(const Polynomial<T>& p)
{
    return p.is_zero() ? p : reversed(p, static_cast<std::size_t>(p.degree()));
}

/// Primitive square-free part over Z (positive leading coefficient).
inline IntPoly squarefree_part(const IntPoly& p)
{
    if (p.degree() < 1)
        return primitive_part(p);
    RatPoly rp = to_rational(p);
    RatPoly g = gcd(rp, derivative(rp));
    RatPoly q = divmod(rp, g).first;
    Integer den = 1;
    for (const auto& c : q.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> v;
    v.reserve(q.size());
    for (const auto& c : q.coeffs()) {
        Rational scaled = c * den;
        v.push_back(scaled.get_num());
    }
    return primitive_part(IntPoly(std::move(v)));
}

/// Human-readable form in descending powers, e.g. "3x^2 + 2x + 3".
template <class T>
std::string to_string(const Polynomial<T>& p, const std::string& var = "x")
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = p.size(); k-- > 0;) {
        const T& c = p[k];
        if (c == 0)
            continue;
        T mag = c < 0 ? T(-c) : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0 || mag != 1)
            os << mag;
        if (k >= 1)
            os << var;
        if (k >= 2)
            os << '^' << k;
    }
    return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p)
{
    return os << to_string(p);
}

} // namespace perbeta
