#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/polynomial.hpp"

namespace perbeta {

using Residue = std::int64_t;

/// A modulus n >= 2. Residue products must fit in 64 bits, hence the cap.
class Modulus {
public:
    static constexpr std::int64_t max_value = (std::int64_t{1} << 31) - 1;

    explicit Modulus(std::int64_t n) : n_(n)
    {
        require(n >= 2, ErrorKind::PreconditionViolated,
                "modulus must be at least 2 (got " + std::to_string(n) + ")");
        require(n <= max_value, ErrorKind::PreconditionViolated, "modulus too large");
    }

    std::int64_t value() const noexcept { return n_; }
    Integer big() const { return Integer(static_cast<long>(n_)); }

    /// Canonical representative in [0, n).
    Residue reduce(std::int64_t x) const noexcept
    {
        Residue r = x % n_;
        return r < 0 ? r + n_ : r;
    }

    Residue reduce(const Integer& x) const
    {
        return static_cast<Residue>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(n_)));
    }

    Residue mul(Residue a, Residue b) const noexcept { return reduce(a * b); }
    Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }

    friend bool operator==(const Modulus&, const Modulus&) = default;

private:
    std::int64_t n_;
};

/// Inverse of a modulo n, if gcd(a, n) = 1.
inline std::optional<Residue> inverse_mod(std::int64_t a, std::int64_t n)
{
    std::int64_t r0 = ((a % n) + n) % n, r1 = n;
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1)
        return std::nullopt;
    return ((s0 % n) + n) % n;
}

struct PrimePower {
    std::int64_t prime;
    unsigned exponent;
    std::int64_t value;
};

/// Trial-division factorization, primes ascending.
inline std::vector<PrimePower> factor(std::int64_t n)
{
    std::vector<PrimePower> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
            pp.value *= p;
        }
        out.push_back(pp);
    }
    if (n > 1)
        out.push_back({n, 1, n});
    return out;
}

inline bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

/// Coefficients of p reduced into [0, n), ascending exponent order; the
/// vector is trimmed of high zero residues.
inline std::vector<Residue> mod_project(const IntPoly& p, const Modulus& n)
{
    std::vector<Residue> out;
    out.reserve(p.size());
    for (const auto& c : p.coeffs())
        out.push_back(n.reduce(c));
    while (!out.empty() && out.back() == 0)
        out.pop_back();
    return out;
}

inline IntPoly lift(const std::vector<Residue>& residues)
{
    std::vector<Integer> v;
    v.reserve(residues.size());
    for (Residue r : residues)
        v.emplace_back(static_cast<long>(r));
    return IntPoly(std::move(v));
}

/// True when every coefficient of p is divisible by n.
inline bool divisible_by(const IntPoly& p, const Integer& n)
{
    for (const auto& c : p.coeffs())
        if (mpz_divisible_p(c.get_mpz_t(), n.get_mpz_t()) == 0)
            return false;
    return true;
}

} // namespace perbeta
