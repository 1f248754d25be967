#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/field.hpp"
#include "perbeta/graph.hpp"
#include "perbeta/membership.hpp"
#include "perbeta/modular.hpp"
#include "perbeta/polynomial.hpp"
#include "perbeta/witness.hpp"

namespace perbeta {

/// Limits for the witness searches. Zero in a "derived" field means the
/// default formula noted next to it.
struct SearchBudget {
    std::uint64_t max_walk_steps = 50'000'000;
    std::uint64_t max_graph_states = 30'000'000;
    std::size_t max_power_search = 64; ///< k tried when looking for p^l | c(beta^k)
    std::size_t recursion_depth = 0;   ///< 0: deg m
    std::size_t combine_shifts = 0;    ///< 0: 4 * deg m * n
    std::size_t dense_cap = 1500;      ///< unknowns in a dense membership solve
};

/// States z^(k) and multipliers p_k visited by the coprime walk.
struct WalkTrace {
    std::vector<std::vector<Residue>> states;
    std::vector<Residue> multipliers;
};

namespace detail {

/// x^i - x^j = cofactor * poly (mod n), for whatever polynomial the caller
/// is working with.
struct Identity {
    std::size_t i = 0;
    std::size_t j = 0;
    IntPoly cofactor;
};

inline std::uint64_t saturating_pow(std::uint64_t base, std::size_t e)
{
    std::uint64_t acc = 1;
    for (std::size_t k = 0; k < e; ++k) {
        if (acc > ~std::uint64_t{0} / base)
            return ~std::uint64_t{0};
        acc *= base;
    }
    return acc;
}

/// z^(k) + p_k m(x) = x z^(k+1) (mod n), z^(0) = 1. Requires a_0 and a_d to
/// be units mod n; then the step map is a bijection on Z_n^d and the walk
/// returns to z^(0) after R <= n^d steps, where sum_k p_k x^k * m = x^R - 1.
inline Identity walk_identity(const IntPoly& m, const Modulus& n, std::uint64_t max_steps,
                              WalkTrace* trace)
{
    const std::size_t d = static_cast<std::size_t>(m.degree());
    std::vector<Residue> a(d + 1);
    for (std::size_t t = 0; t <= d; ++t)
        a[t] = n.reduce(m[t]);
    const auto inv0 = inverse_mod(a[0], n.value());
    require(inv0.has_value() && inverse_mod(a[d], n.value()).has_value(),
            ErrorKind::PreconditionViolated,
            "coprime walk needs gcd(a_0, n) = gcd(a_d, n) = 1");

    const std::uint64_t bound = saturating_pow(static_cast<std::uint64_t>(n.value()), d);
    const std::uint64_t cap = std::min(bound, max_steps);
    std::vector<Residue> start(d, 0);
    start[0] = 1;
    std::vector<Residue> z = start, next(d);
    std::vector<Integer> multipliers;
    std::uint64_t steps = 0;
    do {
        require(steps < cap, ErrorKind::SearchBudgetExceeded,
                "coprime walk exceeded " + std::to_string(cap) + " steps");
        const Residue pk = n.reduce(-n.mul(z[0], *inv0));
        if (trace) {
            trace->states.push_back(z);
            trace->multipliers.push_back(pk);
        }
        multipliers.emplace_back(static_cast<long>(pk));
        for (std::size_t t = 0; t + 1 < d; ++t)
            next[t] = n.reduce(z[t + 1] + pk * a[t + 1]);
        next[d - 1] = n.mul(pk, a[d]);
        z.swap(next);
        ++steps;
    } while (z != start);
    return {static_cast<std::size_t>(steps), 0, IntPoly(std::move(multipliers))};
}

/// (a * b) mod m over Q.
inline RatPoly mulmod(const RatPoly& a, const RatPoly& b, const RatPoly& m)
{
    return divmod(a * b, m).second;
}

} // namespace detail

/// Characteristic polynomial of multiplication by x^k on Q[x]/(m), i.e. the
/// monic prod_t (X - beta_t^k) over the roots of m. Up to the factor a_d^k this
/// is the resultant Res_y(m(y), X - y^k). Computed with Faddeev-LeVerrier over Q.
inline RatPoly power_charpoly(const IntPoly& m, std::size_t k)
{
    require(m.degree() >= 1, ErrorKind::DegenerateInput, "need deg m >= 1");
    require(k >= 1, ErrorKind::PreconditionViolated, "power must be positive");
    const std::size_t d = static_cast<std::size_t>(m.degree());
    const RatPoly mq = to_rational(m);
    RatPoly gamma = RatPoly::constant(1), base = divmod(RatPoly{0, 1}, mq).second;
    for (std::size_t e = k; e > 0; e >>= 1) {
        if (e & 1)
            gamma = detail::mulmod(gamma, base, mq);
        if (e > 1)
            base = detail::mulmod(base, base, mq);
    }
    // mat[r][c]: coefficient of x^r in x^c * gamma mod m
    std::vector<std::vector<Rational>> mat(d, std::vector<Rational>(d));
    RatPoly col = gamma;
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t r = 0; r < d; ++r)
            mat[r][c] = col[r];
        col = divmod(col.shifted(1), mq).second;
    }
    auto matmul = [d](const auto& x, const auto& y) {
        std::vector<std::vector<Rational>> z(d, std::vector<Rational>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t l = 0; l < d; ++l) {
                if (x[i][l] == 0)
                    continue;
                for (std::size_t j = 0; j < d; ++j)
                    z[i][j] += x[i][l] * y[l][j];
            }
        return z;
    };
    std::vector<Rational> cp(d + 1);
    cp[d] = 1;
    std::vector<std::vector<Rational>> mk(d, std::vector<Rational>(d));
    for (std::size_t step = 1; step <= d; ++step) {
        for (std::size_t i = 0; i < d; ++i)
            mk[i][i] += cp[d - step + 1];
        mk = matmul(mat, mk);
        Rational tr = 0;
        for (std::size_t i = 0; i < d; ++i)
            tr += mk[i][i];
        cp[d - step] = -tr / Rational(static_cast<long>(step));
    }
    return RatPoly(std::move(cp));
}

/// Primitive integer polynomial vanishing at beta^k: the square-free part of
/// the power characteristic polynomial. For irreducible m the characteristic
/// polynomial is a power of the minimal polynomial of beta^k, so this is that
/// minimal polynomial (positive leading coefficient).
inline IntPoly power_min_poly(const IntPoly& m, std::size_t k)
{
    RatPoly cp = power_charpoly(m, k);
    Integer den = 1;
    for (const auto& c : cp.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> v;
    for (const auto& c : cp.coeffs()) {
        Rational s = c * den;
        v.push_back(s.get_num());
    }
    return squarefree_part(IntPoly(std::move(v)));
}

inline IntPoly power_min_poly(const BaseSpec& base, std::size_t k)
{
    return power_min_poly(base.minpoly, k);
}

namespace detail {

inline bool divides(std::int64_t p, const Integer& x)
{
    return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

/// Identity x^i - x^j = cofactor * poly (mod p^ell) by induction on degree.
///
/// Coprime case: the walk. If p divides only the constant term, work with the
/// reversed polynomial (the base beta^-1) and map back. If p divides the leading
/// coefficient, find k with p^ell | c(beta^k), recurse on
/// h = m_k(x) - c(beta^k) x^deg, whose degree is smaller, and substitute x^k.
inline Identity prime_power_identity(const IntPoly& poly, std::int64_t p, unsigned ell,
                                     std::size_t depth, const SearchBudget& budget)
{
    std::int64_t pp = 1;
    for (unsigned t = 0; t < ell; ++t)
        pp *= p;
    const Modulus n(pp);

    std::size_t low = 0;
    while (poly[low] == 0)
        ++low;
    if (low > 0) {
        IntPoly stripped(std::vector<Integer>(poly.coeffs().begin() + static_cast<long>(low),
                                              poly.coeffs().end()));
        Identity id = prime_power_identity(stripped, p, ell, depth, budget);
        return {id.i + low, id.j + low, std::move(id.cofactor)};
    }

    if (poly.degree() == 0) {
        auto u = inverse_mod(n.reduce(poly[0]), pp);
        require(u.has_value(), ErrorKind::SearchBudgetExceeded,
                "constant " + poly[0].get_str() + " not invertible mod " + std::to_string(pp));
        return {1, 0, IntPoly{-*u, *u}};
    }

    const bool p_lead = divides(p, poly.leading());
    const bool p_const = divides(p, poly[0]);
    if (!p_lead && !p_const)
        return walk_identity(poly, n, budget.max_walk_steps, nullptr);

    const std::size_t deg = static_cast<std::size_t>(poly.degree());
    if (!p_lead) {
        // Identity for rev(x) = x^deg poly(1/x); substitute x -> 1/x and
        // multiply through by x^K.
        Identity id = prime_power_identity(reversed(poly), p, ell, depth, budget);
        const std::size_t cof_deg =
            id.cofactor.is_zero() ? 0 : static_cast<std::size_t>(id.cofactor.degree());
        const std::size_t K = std::max(id.i, cof_deg + deg);
        IntPoly cof = id.cofactor.is_zero() ? IntPoly{} : -reversed(id.cofactor, K - deg);
        return {K - id.j, K - id.i, std::move(cof)};
    }

    require(depth > 0, ErrorKind::SearchBudgetExceeded, "prime-power recursion depth exhausted");
    const Integer target(static_cast<long>(pp));
    for (std::size_t k = 1; k <= budget.max_power_search; ++k) {
        IntPoly mk = power_min_poly(poly, k);
        const Integer c = mk.leading();
        if (mpz_divisible_p(c.get_mpz_t(), target.get_mpz_t()) == 0)
            continue;
        const std::size_t dk = static_cast<std::size_t>(mk.degree());
        IntPoly h = mk - IntPoly::monomial(c, dk);
        const Integer g = content(h);
        const IntPoly hp = divexact(h, g);
        Identity sub = prime_power_identity(hp, p, ell, depth - 1, budget);

        // m_k(x^k) is a multiple of poly: every root of poly is a root of it.
        std::vector<Integer> spread(dk * k + 1);
        for (std::size_t t = 0; t <= dk; ++t)
            spread[t * k] = mk[t];
        const IntPoly quotient = divexact(IntPoly(std::move(spread)), poly);
        std::vector<Integer> sub_spread(sub.cofactor.size() == 0 ? 0 : (sub.cofactor.size() - 1) * k + 1);
        for (std::size_t t = 0; t < sub.cofactor.size(); ++t)
            sub_spread[t * k] = sub.cofactor[t];
        const auto u = inverse_mod(n.reduce(g), pp);
        require(u.has_value(), ErrorKind::ValidationFailed, "content of h not a unit mod p");
        IntPoly cof = IntPoly(std::move(sub_spread)) * quotient * Integer(static_cast<long>(*u));
        cof = lift(mod_project(cof, n));
        Identity out{sub.i * k, sub.j * k, std::move(cof)};
        require(divisible_by(IntPoly::binomial(out.i, out.j) - out.cofactor * poly, target),
                ErrorKind::ValidationFailed, "assembled prime-power identity does not hold");
        return out;
    }
    throw Error(ErrorKind::SearchBudgetExceeded,
                "no k <= " + std::to_string(budget.max_power_search) + " with " +
                    std::to_string(pp) + " | c(beta^k)");
}

inline std::size_t lcm_size(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

/// 1 + x^step + x^2step + ... (count terms), times x^offset.
inline IntPoly geometric(std::size_t offset, std::size_t step, std::size_t count)
{
    std::vector<Integer> v(offset + step * (count - 1) + 1);
    for (std::size_t q = 0; q < count; ++q)
        v[offset + q * step] = 1;
    return IntPoly(std::move(v));
}

} // namespace detail

/// Witness with j = 0 from the walk z^(k) + p_k m = x z^(k+1) (mod n).
inline FermatWitness coprime_walk(const BaseRef& base, const Modulus& n,
                                  const SearchBudget& budget = {}, WalkTrace* trace = nullptr)
{
    detail::Identity id = detail::walk_identity(base->minpoly, n, budget.max_walk_steps, trace);
    return FermatWitness::from_cofactor(base, n, id.i, id.j, id.cofactor);
}

/// Witness for n = p^ell. Falls back to the (complete) graph search when the
/// degree recursion runs out of budget.
inline FermatWitness prime_power_witness(const BaseRef& base, std::int64_t p, unsigned ell,
                                         const SearchBudget& budget = {})
{
    require(is_prime(p), ErrorKind::PreconditionViolated, std::to_string(p) + " is not prime");
    require(ell >= 1, ErrorKind::PreconditionViolated, "exponent must be >= 1");
    std::int64_t pp = 1;
    for (unsigned t = 0; t < ell; ++t) {
        require(pp <= Modulus::max_value / p, ErrorKind::PreconditionViolated, "modulus too large");
        pp *= p;
    }
    const Modulus n(pp);
    const std::size_t depth = budget.recursion_depth ? budget.recursion_depth : base->degree;
    try {
        detail::Identity id = detail::prime_power_identity(base->minpoly, p, ell, depth, budget);
        return FermatWitness::from_cofactor(base, n, id.i, id.j, id.cofactor);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SearchBudgetExceeded && e.kind() != ErrorKind::ValidationFailed)
            throw;
    }
    try {
        return graph::path_to_witness(graph::shortest_path(*base, n, budget.max_graph_states),
                                      base, n);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SearchBudgetExceeded)
            throw;
        throw Error(ErrorKind::SearchBudgetExceeded,
                    "prime-power recursion failed and the graph fallback is over budget; "
                    "raise the graph state budget (method=graph is complete)");
    }
}

/// Witness for n1*n2 from witnesses for coprime n1, n2.
///
/// With e = lcm of the two periods, x^t (x^e - 1) lies in both ideals for every
/// t >= max(j1, j2); Bezout u1 n1 + u2 n2 = 1 then puts it in the ideal for
/// n1 n2 with cofactor u1 n1 r2 S2 + u2 n2 r1 S1, S_k the geometric factors
/// turning x^{i_k} - x^{j_k} into x^t (x^e - 1). Smaller shifts
/// t = min(j1, j2), ... are tried first with the membership oracle.
inline FermatWitness combine_coprime(const FermatWitness& w1, const FermatWitness& w2,
                                     const SearchBudget& budget = {})
{
    require(w1.base()->minpoly == w2.base()->minpoly, ErrorKind::PreconditionViolated,
            "witnesses over different bases");
    const std::int64_t n1 = w1.n().value(), n2 = w2.n().value();
    require(std::gcd(n1, n2) == 1, ErrorKind::PreconditionViolated, "moduli are not coprime");
    require(n1 <= Modulus::max_value / n2, ErrorKind::PreconditionViolated, "product modulus too large");
    const Modulus n(n1 * n2);
    const BaseRef& base = w1.base();
    const IntPoly& m = base->minpoly;
    const std::size_t e1 = w1.period(), e2 = w2.period();
    const std::size_t e = detail::lcm_size(e1, e2);
    const std::size_t t_lo = std::min(w1.j(), w2.j());
    const std::size_t t_hi = std::max(w1.j(), w2.j());
    const std::size_t shifts =
        budget.combine_shifts ? budget.combine_shifts
                              : 4 * base->degree * static_cast<std::size_t>(n.value());

    for (std::size_t t = t_lo; t < t_hi && t - t_lo < shifts; ++t) {
        try {
            auto res = member_nZbeta(IntPoly::binomial(t + e, t), m, n, static_cast<long>(t + e),
                                     budget.dense_cap);
            if (res.member())
                return FermatWitness::from_cofactor(base, n, t + e, t, res.r);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::SearchBudgetExceeded)
                throw;
        }
    }

    const std::size_t t = t_hi;
    const IntPoly s1 = detail::geometric(t - w1.j(), e1, e / e1);
    const IntPoly s2 = detail::geometric(t - w2.j(), e2, e / e2);
    Integer u1, u2, g;
    mpz_gcdext(g.get_mpz_t(), u1.get_mpz_t(), u2.get_mpz_t(), Integer(static_cast<long>(n1)).get_mpz_t(),
               Integer(static_cast<long>(n2)).get_mpz_t());
    const IntPoly r = (w2.r() * s2) * Integer(u1 * n1) + (w1.r() * s1) * Integer(u2 * n2);
    return FermatWitness::from_cofactor(base, n, t + e, t, r);
}

/// Prefers a shorter period (a proper divisor of i - j, tested at the same j),
/// then the smallest j, keeping the original when the oracle cannot confirm.
inline FermatWitness canonicalize_witness(const FermatWitness& w, const SearchBudget& budget = {})
{
    const IntPoly& m = w.base()->minpoly;
    // With a_d a unit mod n the oracle is exact at budget i. Otherwise a
    // cofactor may need degree beyond i - d, so allow slack on the order of
    // the known witness.
    const bool unit_lead = std::gcd(w.n().reduce(m.leading()), w.n().value()) == 1;
    const long slack = unit_lead ? 0 : static_cast<long>(w.i() + 2 * w.base()->degree);
    auto try_pair = [&](std::size_t i, std::size_t j) -> std::optional<FermatWitness> {
        try {
            auto res = member_nZbeta(IntPoly::binomial(i, j), m, w.n(),
                                     static_cast<long>(i) + slack, budget.dense_cap);
            if (res.member())
                return FermatWitness::from_cofactor(w.base(), w.n(), i, j, res.r);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::SearchBudgetExceeded)
                throw;
        }
        return std::nullopt;
    };

    FermatWitness best = w;
    const std::size_t e = w.period();
    std::vector<std::size_t> divisors;
    for (std::size_t q = 1; q * q <= e; ++q)
        if (e % q == 0) {
            divisors.push_back(q);
            if (q != e / q)
                divisors.push_back(e / q);
        }
    std::sort(divisors.begin(), divisors.end());
    for (std::size_t q : divisors) {
        if (q == e)
            break;
        if (auto c = try_pair(w.j() + q, w.j())) {
            best = *c;
            break;
        }
    }
    for (std::size_t t = 0; t < best.j(); ++t)
        if (auto c = try_pair(t + best.period(), t)) {
            best = *c;
            break;
        }
    return best;
}

enum class Method { Auto, Walk, Graph };

/// auto: prime-power witnesses combined across the factorization of n;
/// walk: the coprime walk on n itself; graph: BFS in G(m, n).
inline FermatWitness find_witness(const BaseRef& base, const Modulus& n, Method method = Method::Auto,
                                  const SearchBudget& budget = {})
{
    switch (method) {
    case Method::Walk:
        return coprime_walk(base, n, budget);
    case Method::Graph:
        return canonicalize_witness(
            graph::path_to_witness(graph::shortest_path(*base, n, budget.max_graph_states), base, n),
            budget);
    case Method::Auto:
        break;
    }
    std::optional<FermatWitness> acc;
    for (const PrimePower& pp : factor(n.value())) {
        FermatWitness w = prime_power_witness(base, pp.prime, pp.exponent, budget);
        acc = acc ? combine_coprime(*acc, w, budget) : w;
    }
    return canonicalize_witness(*acc, budget);
}

/// Stretches a witness until deg p < factor * (i - j).
///
/// Telescoping x^{qe}(x^i - x^j) over q = 0..s gives x^{i+se} - x^j with
/// p' = p * S and r' = r * S, S = 1 + x^e + ... + x^{se}. The cofactor is then
/// reduced into [0, n), which bounds |p'| coefficients by M (deg m + 1),
/// M = max |a_i|, independently of n.
inline FermatWitness densify(const FermatWitness& w, double factor = 2.0)
{
    require(factor > 1.0, ErrorKind::PreconditionViolated, "densify factor must exceed 1");
    const std::size_t e = w.period();
    for (std::size_t s = 0;; ++s) {
        const std::size_t i = w.i() + s * e;
        const IntPoly r = s == 0 ? w.r() : w.r() * detail::geometric(0, e, s + 1);
        FermatWitness cand = FermatWitness::from_cofactor(w.base(), w.n(), i, w.j(), r);
        if (static_cast<double>(cand.p().degree()) < factor * static_cast<double>(i - w.j()))
            return cand;
    }
}

} // namespace perbeta
