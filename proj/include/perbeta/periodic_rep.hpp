#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/field.hpp"
#include "perbeta/polynomial.hpp"

namespace perbeta {

/// Eventually periodic digit string  sum_{k >= -L} a_k beta^{-k}.
///
/// Position t carries the digit of beta^{-t}. The preperiod occupies
/// positions -L .. -L + |pre| - 1 and the period repeats from there on.
struct PeriodicRep {
    BaseRef base;
    long lead_exponent = 0;
    std::vector<Integer> preperiod;
    std::vector<Integer> period{Integer(0)};

    long start() const noexcept { return -lead_exponent; }
    long period_start() const noexcept
    {
        return start() + static_cast<long>(preperiod.size());
    }

    Integer digit_at(long t) const
    {
        if (t < start())
            return 0;
        if (t < period_start())
            return preperiod[static_cast<std::size_t>(t - start())];
        const long p = static_cast<long>(period.size());
        return period[static_cast<std::size_t>((t - period_start()) % p)];
    }

    Integer max_abs_digit() const
    {
        Integer best = 0;
        for (const auto* v : {&preperiod, &period})
            for (const auto& a : *v)
                if (abs(a) > best)
                    best = abs(a);
        return best;
    }

    bool is_zero() const
    {
        auto nz = [](const Integer& a) { return a != 0; };
        return std::none_of(preperiod.begin(), preperiod.end(), nz) &&
               std::none_of(period.begin(), period.end(), nz);
    }
};

inline PeriodicRep zero_rep(const BaseRef& base) { return {base, 0, {}, {Integer(0)}}; }

/// Same value and digit sequence, in the canonical layout: minimal period,
/// preperiod tail absorbed into the period, no leading zeros. With an empty
/// preperiod the period is rotated so its first digit is nonzero.
inline PeriodicRep canonicalize(PeriodicRep rep)
{
    require(!rep.period.empty(), ErrorKind::PreconditionViolated, "empty period");
    if (rep.is_zero())
        return zero_rep(rep.base);

    auto& per = rep.period;
    const std::size_t p = per.size();
    for (std::size_t q = 1; q < p; ++q) {
        if (p % q != 0)
            continue;
        bool repeats = true;
        for (std::size_t k = q; k < p && repeats; ++k)
            repeats = per[k] == per[k - q];
        if (repeats) {
            per.resize(q);
            break;
        }
    }

    auto& pre = rep.preperiod;
    while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    }
    std::size_t zeros = 0;
    while (zeros < pre.size() && pre[zeros] == 0)
        ++zeros;
    pre.erase(pre.begin(), pre.begin() + static_cast<long>(zeros));
    rep.lead_exponent -= static_cast<long>(zeros);
    if (pre.empty())
        while (per.front() == 0) {
            std::rotate(per.begin(), per.begin() + 1, per.end());
            rep.lead_exponent -= 1;
        }
    return rep;
}

/// Exact value in Q(beta). With N the first periodic position and p the period
/// length,
///
///     value = beta^{-(N-1)} (A(beta)(beta^p - 1) + B(beta)) / (beta^p - 1),
///
/// A holding the preperiod digits and B the period digits as polynomials in
/// beta read left to right. Only beta^p != 1 is needed.
inline FieldElement eval_rep(const PeriodicRep& rep)
{
    require(rep.base != nullptr, ErrorKind::PreconditionViolated, "representation without base");
    require(!rep.period.empty(), ErrorKind::PreconditionViolated, "empty period");
    const BaseRef& base = rep.base;
    if (rep.is_zero())
        return FieldElement::zero(base);

    const std::size_t p = rep.period.size();
    std::vector<Integer> a(rep.preperiod.rbegin(), rep.preperiod.rend());
    std::vector<Integer> b(rep.period.rbegin(), rep.period.rend());
    const IntPoly A(std::move(a)), B(std::move(b));
    const IntPoly C = A * IntPoly::binomial(p, 0) + B;

    const FieldElement bp1 = field_pow(field_beta(base), static_cast<long>(p)) -
                             FieldElement::from_rational(base, 1);
    if (bp1.is_zero())
        throw Error(ErrorKind::NonInvertible,
                    "beta^" + std::to_string(p) + " = 1; the base is a root of unity");
    return field_reduce(C, base) * field_inv(bp1) *
           field_pow(field_beta(base), -(rep.period_start() - 1));
}

/// Digits with a radix point after position 0 and the period in
/// parentheses, e.g. "0.0(1,0,0)".
inline std::string to_human(const PeriodicRep& rep)
{
    const long p = static_cast<long>(rep.period.size());
    long n = rep.period_start();
    if (n < 1)
        n += ((1 - n + p - 1) / p) * p;
    auto join = [&rep](long from, long to) {
        std::string s;
        for (long t = from; t < to; ++t) {
            if (!s.empty())
                s += ",";
            s += rep.digit_at(t).get_str();
        }
        return s;
    };
    std::string out = join(std::min(rep.start(), 0L), 1) + "." + join(1, n) + "(";
    for (long u = 0; u < p; ++u) {
        if (u)
            out += ",";
        out += rep.digit_at(n + u).get_str();
    }
    return out + ")";
}

} // namespace perbeta
