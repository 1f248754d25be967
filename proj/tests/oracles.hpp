#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms; only the plain polynomial and field containers
// are shared.

#include <cstdint>
#include <random>
#include <vector>

#include "perbeta/field.hpp"
#include "perbeta/polynomial.hpp"

namespace oracle {

using perbeta::Integer;
using perbeta::IntPoly;

/// Fraction-free Gaussian elimination (Bareiss); exact over Z.
inline Integer bareiss_det(std::vector<std::vector<Integer>> a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0)
                ++r;
            if (r == n)
                return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Res(f, g) as the determinant of the Sylvester matrix.
inline Integer resultant(const IntPoly& f, const IntPoly& g)
{
    const std::size_t df = static_cast<std::size_t>(f.degree());
    const std::size_t dg = static_cast<std::size_t>(g.degree());
    const std::size_t n = df + dg;
    std::vector<std::vector<Integer>> s(n, std::vector<Integer>(n, 0));
    for (std::size_t r = 0; r < dg; ++r)
        for (std::size_t k = 0; k <= df; ++k)
            s[r][r + k] = f[df - k];
    for (std::size_t r = 0; r < df; ++r)
        for (std::size_t k = 0; k <= dg; ++k)
            s[dg + r][r + k] = g[dg - k];
    return bareiss_det(std::move(s));
}

inline std::int64_t mod(std::int64_t a, std::int64_t n)
{
    a %= n;
    return a < 0 ? a + n : a;
}

/// Exhaustive search for r with coefficients in [-bound, bound] and
/// deg r <= max_deg such that q - r m is divisible by n coefficientwise.
inline bool brute_force_member(const std::vector<std::int64_t>& q, const std::vector<std::int64_t>& m,
                               std::int64_t n, std::int64_t bound, std::size_t max_deg)
{
    const std::size_t len = std::max(q.size(), m.size() + max_deg);
    std::vector<std::int64_t> r(max_deg + 1, -bound);
    for (;;) {
        bool ok = true;
        for (std::size_t k = 0; k < len && ok; ++k) {
            std::int64_t acc = k < q.size() ? q[k] : 0;
            for (std::size_t t = 0; t <= max_deg && t <= k; ++t)
                if (k - t < m.size())
                    acc -= r[t] * m[k - t];
            ok = mod(acc, n) == 0;
        }
        if (ok)
            return true;
        std::size_t pos = 0;
        while (pos <= max_deg && r[pos] == bound)
            r[pos++] = -bound;
        if (pos > max_deg)
            return false;
        ++r[pos];
    }
}

/// Sum of a_t beta^{-t} over a finite window, term by term.
inline perbeta::FieldElement finite_sum(const perbeta::BaseRef& base, long first,
                                        const std::vector<Integer>& digits)
{
    using namespace perbeta;
    FieldElement acc = FieldElement::zero(base);
    const FieldElement inv_beta = field_inv(field_beta(base));
    FieldElement power = field_pow(inv_beta, first);
    for (const auto& a : digits) {
        acc += FieldElement::from_rational(base, Rational(a)) * power;
        power = power * inv_beta;
    }
    return acc;
}

inline IntPoly random_poly(std::mt19937_64& rng, int max_deg, long lo, long hi)
{
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<long> coef(lo, hi);
    std::vector<Integer> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c)
        x = coef(rng);
    return IntPoly(std::move(c));
}

} // namespace oracle
