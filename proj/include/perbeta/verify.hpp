#pragma once

#include <algorithm>
#include <string>

#include "perbeta/error.hpp"
#include "perbeta/fermat.hpp"
#include "perbeta/field.hpp"
#include "perbeta/membership.hpp"
#include "perbeta/periodic_rep.hpp"
#include "perbeta/witness.hpp"

namespace perbeta {

/// Recovers a witness from a representation of 1/n.
///
/// eval_rep gives 1/n = beta^{-(N-1)} C(beta) / (beta^p - 1), i.e.
/// n beta^K C(beta) = beta^{N-1+K+p} - beta^{N-1+K} with K >= 0 chosen so both
/// exponents are nonnegative. Then x^i - x^j - n x^K C is divisible by m in
/// Z[x] (m is primitive), which is the certificate.
inline FermatWitness witness_from_rep(const PeriodicRep& rep, const Modulus& n,
                                      const SearchBudget& budget = {})
{
    const BaseRef& base = rep.base;
    require(eval_rep(rep) == FieldElement::from_rational(base, Rational(1, n.value())),
            ErrorKind::PreconditionViolated,
            "representation does not evaluate to 1/" + std::to_string(n.value()));

    const long big_n = rep.period_start();
    const std::size_t p = rep.period.size();
    const std::size_t k = static_cast<std::size_t>(std::max(0L, 1 - big_n));
    const std::size_t j = static_cast<std::size_t>(big_n - 1 + static_cast<long>(k));
    const std::size_t i = j + p;

    std::vector<Integer> a(rep.preperiod.rbegin(), rep.preperiod.rend());
    std::vector<Integer> b(rep.period.rbegin(), rep.period.rend());
    const IntPoly c = IntPoly(std::move(a)) * IntPoly::binomial(p, 0) + IntPoly(std::move(b));
    const IntPoly lhs = IntPoly::binomial(i, j) - n.big() * c.shifted(k);
    IntPoly r;
    try {
        r = divexact(lhs, base->minpoly);
    } catch (const Error&) {
        throw Error(ErrorKind::ValidationFailed,
                    "assembled certificate x^" + std::to_string(i) + " - x^" + std::to_string(j) +
                        " - n*P is not a multiple of m");
    }
    const FermatWitness w(base, n, i, j, c.shifted(k), r);
    require(check_with_oracle(w, budget.dense_cap).member(), ErrorKind::ValidationFailed,
            "membership oracle rejects the recovered witness");
    return canonicalize_witness(w, budget);
}

} // namespace perbeta
