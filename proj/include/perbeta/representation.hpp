#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/fermat.hpp"
#include "perbeta/field.hpp"
#include "perbeta/periodic_rep.hpp"
#include "perbeta/witness.hpp"

namespace perbeta {

/// 1/n from a densified witness. Dividing x^i - x^j = n p + r m by
/// n beta^i (1 - beta^{-(i-j)}) gives
///
///     1/n = beta^{-i} p(beta) sum_{q >= 0} beta^{-q(i-j)},
///
/// so the digit at position t is sum_q p_{i + q(i-j) - t}. With deg p < 2(i-j)
/// at most two copies of p overlap.
inline PeriodicRep rep_of_unit_fraction(const BaseRef& base, const Modulus& n, const FermatWitness& w)
{
    require(w.n() == n, ErrorKind::PreconditionViolated, "witness is for a different modulus");
    require(w.base()->minpoly == base->minpoly, ErrorKind::PreconditionViolated,
            "witness is for a different base");
    require(!w.p().is_zero(), ErrorKind::PreconditionViolated,
            "p = 0: beta is a root of unity");
    const long e = static_cast<long>(w.period());
    const long i = static_cast<long>(w.i()), j = static_cast<long>(w.j());
    const long dp = w.p().degree();
    if (dp >= 2 * e)
        throw Error(ErrorKind::DensityViolated, "deg p = " + std::to_string(dp) +
                                                    " >= 2(i - j) = " + std::to_string(2 * e) +
                                                    "; densify the witness first");

    auto digit = [&](long t) {
        Integer acc = 0;
        long q = t > i ? (t - i + e - 1) / e : 0;
        for (long k = i + q * e - t; k <= dp; k += e)
            acc += w.p()[static_cast<std::size_t>(k)];
        return acc;
    };
    const long s0 = std::min(i - dp, j + 1);
    PeriodicRep rep{base, -s0, {}, {}};
    for (long t = s0; t <= j; ++t)
        rep.preperiod.push_back(digit(t));
    for (long t = j + 1; t <= j + e; ++t)
        rep.period.push_back(digit(t));
    rep = canonicalize(std::move(rep));

    require(eval_rep(rep) == FieldElement::from_rational(base, Rational(1, n.value())),
            ErrorKind::ValidationFailed, "unit fraction representation does not evaluate to 1/n");
    return rep;
}

/// z(beta) times the represented value: digit b(u) = sum_e z_e a(u + e).
/// Shifts stay aligned with the original period, so the period length is
/// unchanged before canonicalization.
inline PeriodicRep multiply_finite(const PeriodicRep& rep, const LaurentIntPoly& z)
{
    if (z.is_zero() || rep.is_zero())
        return zero_rep(rep.base);
    const long e_min = z.low, e_max = z.high();
    const long s = rep.start() - e_max;
    const long np = rep.period_start() - e_min;
    const long p = static_cast<long>(rep.period.size());
    auto digit = [&](long u) {
        Integer acc = 0;
        for (std::size_t k = 0; k < z.coeffs.size(); ++k)
            if (z.coeffs[k] != 0)
                acc += z.coeffs[k] * rep.digit_at(u + z.low + static_cast<long>(k));
        return acc;
    };
    PeriodicRep out{rep.base, -s, {}, {}};
    for (long u = s; u < np; ++u)
        out.preperiod.push_back(digit(u));
    for (long u = np; u < np + p; ++u)
        out.period.push_back(digit(u));
    return canonicalize(std::move(out));
}

/// Representation of an arbitrary element: with n the common denominator of
/// the coordinates and z = n x in Z[beta], x = z(beta) * (1/n).
inline PeriodicRep rep_of_field_element(const FieldElement& x, double factor = 2.0,
                                        const SearchBudget& budget = {})
{
    const BaseRef& base = x.base();
    if (x.is_zero())
        return zero_rep(base);
    Integer den = 1;
    for (const auto& c : x.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> zc;
    for (const auto& c : x.coeffs()) {
        Rational s = c * den;
        zc.push_back(s.get_num());
    }
    const LaurentIntPoly z(0, IntPoly(std::move(zc)));

    PeriodicRep rep;
    if (den == 1) {
        rep = multiply_finite(PeriodicRep{base, 0, {Integer(1)}, {Integer(0)}}, z);
    } else {
        require(den.fits_slong_p() && den.get_si() <= Modulus::max_value,
                ErrorKind::PreconditionViolated, "denominator " + den.get_str() + " too large");
        const Modulus n(den.get_si());
        const FermatWitness w = densify(find_witness(base, n, Method::Auto, budget), factor);
        rep = multiply_finite(rep_of_unit_fraction(base, n, w), z);
    }
    require(eval_rep(rep) == x, ErrorKind::ValidationFailed,
            "field element representation does not evaluate to the input");
    return rep;
}

namespace detail {

/// Lexicographic cost of a digit block: excess over the target, then l1 norm,
/// then the number of negative digits.
struct DigitCost {
    Integer excess = 0, l1 = 0;
    long negatives = 0;

    void add(const Integer& d, const Integer& bound, int sign)
    {
        const Integer a = abs(d);
        if (a > bound)
            excess += sign * (a - bound);
        l1 += sign * a;
        if (d < 0)
            negatives += sign;
    }
    bool improves() const
    {
        return std::tie(excess, l1, negatives) < std::make_tuple(Integer(0), Integer(0), 0L);
    }
    bool operator<(const DigitCost& o) const
    {
        return std::tie(excess, l1, negatives) < std::tie(o.excess, o.l1, o.negatives);
    }
};

/// Working copy for normalize_digits: digits from `start` up to the period,
/// which begins at start + pre.size().
class DigitWorkspace {
public:
    DigitWorkspace(const PeriodicRep& rep, const IntPoly& m)
        : start_(rep.start()), pre_(rep.preperiod), per_(rep.period), m_(m)
    {
    }

    long period_start() const { return start_ + static_cast<long>(pre_.size()); }
    long period_len() const { return static_cast<long>(per_.size()); }

    /// Per-slot deltas of adding c*m with top position t: position t - i
    /// gains c*a_i. Periodic moves repeat the window every period from t
    /// (t inside the first period copy), so the tail stays periodic.
    std::map<long, Integer> deltas(long t, const Integer& c, bool periodic) const
    {
        const long d = m_.degree();
        const long n = period_start(), p = period_len();
        if (periodic)
            t = n + (t - n) % p;
        // key < n: preperiod position; key >= n: period slot n + u. Only
        // positions before n + p are touched; later copies follow by periodicity.
        std::map<long, Integer> out;
        for (long top = t; top - d < n + p; top += p) {
            for (long i = 0; i <= d; ++i) {
                const long pos = top - i;
                if (m_[static_cast<std::size_t>(i)] != 0 && pos < n + p)
                    out[pos] += c * m_[static_cast<std::size_t>(i)];
            }
            if (!periodic)
                break;
        }
        return out;
    }

    Integer digit(long key) const
    {
        const long n = period_start();
        if (key >= n)
            return per_[static_cast<std::size_t>(key - n)];
        if (key < start_)
            return 0;
        return pre_[static_cast<std::size_t>(key - start_)];
    }

    DigitCost cost_delta(const std::map<long, Integer>& dl, const Integer& bound) const
    {
        DigitCost c;
        for (const auto& [key, v] : dl) {
            const Integer old = digit(key);
            c.add(old, bound, -1);
            c.add(old + v, bound, +1);
        }
        return c;
    }

    void apply(const std::map<long, Integer>& dl)
    {
        const long lowest = dl.begin()->first;
        if (lowest < start_) {
            pre_.insert(pre_.begin(), static_cast<std::size_t>(start_ - lowest), Integer(0));
            start_ = lowest;
        }
        const long n = period_start();
        for (const auto& [key, v] : dl) {
            if (key >= n)
                per_[static_cast<std::size_t>(key - n)] += v;
            else
                pre_[static_cast<std::size_t>(key - start_)] += v;
        }
    }

    void unroll()
    {
        pre_.insert(pre_.end(), per_.begin(), per_.end());
    }

    long start() const { return start_; }

    PeriodicRep to_rep(const BaseRef& base) const { return {base, -start_, pre_, per_}; }

private:
    long start_;
    std::vector<Integer> pre_, per_;
    const IntPoly& m_;
};

} // namespace detail

/// Best-effort digit reduction by adding integer multiples of m's
/// coefficient vector (which represents zero) at shifted positions. Each pass
/// walks the digits left to right and, for every nonzero digit, applies the
/// most improving rewrite among the deg m + 1 windows covering it. The
/// period is first unrolled far enough to give the preperiod a lookahead of
/// deg m digits. When a pass stalls the period is unrolled into the preperiod, up to max_unroll
/// times. There is no guaranteed alphabet; the caller reads the achieved bound
/// off the result. The input is returned unchanged when nothing improves.
inline PeriodicRep normalize_digits(const PeriodicRep& rep, const Integer& target_bound,
                                    std::size_t max_passes = 32, std::size_t max_unroll = 2)
{
    require(target_bound >= 0, ErrorKind::PreconditionViolated, "negative digit bound");
    const PeriodicRep input = canonicalize(rep);
    if (input.is_zero() || input.max_abs_digit() <= target_bound)
        return input;
    const IntPoly& m = input.base->minpoly;
    const long d = m.degree();
    detail::DigitWorkspace ws(input, m);
    // lookahead: windows over the last preperiod digit must fit before the period
    if (!input.preperiod.empty())
        for (long ahead = 0; ahead < d; ahead += ws.period_len())
            ws.unroll();
    std::size_t unrolled = 0;

    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        bool moved = false;
        for (long pos = ws.start(); pos < ws.period_start() + ws.period_len(); ++pos) {
            const Integer dg = ws.digit(pos);
            if (dg == 0)
                continue;
            std::map<long, Integer> best;
            detail::DigitCost best_cost;
            for (long i = 0; i <= d; ++i) {
                const Integer& ai = m[static_cast<std::size_t>(i)];
                if (ai == 0)
                    continue;
                const long top = pos + i;
                const bool periodic = pos >= ws.period_start();
                if (!periodic && top >= ws.period_start())
                    continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), dg.get_mpz_t(), ai.get_mpz_t());
                std::vector<Integer> cs{Integer(1), Integer(-1)};
                if (q != 0 && abs(q) != 1) {
                    cs.push_back(-q);
                    cs.push_back(q);
                }
                for (const auto& c : cs) {
                    auto dl = ws.deltas(top, c, periodic);
                    auto cost = ws.cost_delta(dl, target_bound);
                    if (cost.improves() && (best.empty() || cost < best_cost)) {
                        best = std::move(dl);
                        best_cost = cost;
                    }
                }
            }
            if (!best.empty()) {
                ws.apply(best);
                moved = true;
            }
        }
        if (!moved) {
            if (unrolled >= max_unroll)
                break;
            ws.unroll();
            ++unrolled;
        }
    }

    PeriodicRep out = canonicalize(ws.to_rep(input.base));
    const bool better = std::make_pair(out.max_abs_digit(), out.period.size() + out.preperiod.size()) <
                        std::make_pair(input.max_abs_digit(), input.period.size() + input.preperiod.size());
    if (!better || !(eval_rep(out) == eval_rep(input)))
        return input;
    return out;
}

} // namespace perbeta
