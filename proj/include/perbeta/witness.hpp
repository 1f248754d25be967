#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "perbeta/error.hpp"
#include "perbeta/field.hpp"
#include "perbeta/membership.hpp"
#include "perbeta/modular.hpp"
#include "perbeta/polynomial.hpp"

namespace perbeta {

/// Certified generalized-Fermat identity
///
///     x^i - x^j - n*p(x) = r(x)*m(x)   in Z[x],   i > j >= 0,
///
/// so beta^i - beta^j = n*p(beta) lies in nZ[beta]. Construction always
/// re-checks the identity with exact arithmetic; an invalid witness cannot
/// exist.
class FermatWitness {
public:
    FermatWitness(BaseRef base, Modulus n, std::size_t i, std::size_t j, IntPoly p, IntPoly r)
        : base_(std::move(base)), n_(n), i_(i), j_(j), p_(std::move(p)), r_(std::move(r))
    {
        require(base_ != nullptr, ErrorKind::PreconditionViolated, "missing base");
        require(i_ > j_, ErrorKind::ValidationFailed, "witness needs i > j");
        require(IntPoly::binomial(i_, j_) - n_.big() * p_ == r_ * base_->minpoly,
                ErrorKind::ValidationFailed,
                "certificate x^i - x^j - n*p = r*m fails for (i, j) = (" + std::to_string(i_) +
                    ", " + std::to_string(j_) + ")");
    }

    /// Builds the witness from the cofactor alone: r is reduced into [0, n)
    /// and p recovered by exact division of x^i - x^j - r*m by n.
    static FermatWitness from_cofactor(BaseRef base, Modulus n, std::size_t i, std::size_t j,
                                       const IntPoly& r)
    {
        IntPoly rr = lift(mod_project(r, n));
        IntPoly rest = IntPoly::binomial(i, j) - rr * base->minpoly;
        IntPoly p = divexact(rest, n.big());
        return {std::move(base), n, i, j, std::move(p), std::move(rr)};
    }

    const BaseRef& base() const noexcept { return base_; }
    const Modulus& n() const noexcept { return n_; }
    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }
    std::size_t period() const noexcept { return i_ - j_; }
    const IntPoly& p() const noexcept { return p_; }
    const IntPoly& r() const noexcept { return r_; }

    /// beta^i - beta^j = n*(p(beta)), written with the given variable name.
    std::string identity(const std::string& var = "b") const
    {
        std::string lhs = var + "^" + std::to_string(i_) + " - " +
                          (j_ == 0 ? std::string("1")
                                   : (j_ == 1 ? var : var + "^" + std::to_string(j_)));
        return lhs + " = " + std::to_string(n_.value()) + "*(" + to_string(p_, var) + ")";
    }

private:
    BaseRef base_;
    Modulus n_;
    std::size_t i_, j_;
    IntPoly p_, r_;
};

/// Membership of q(beta) in nZ[beta]. The default budget is 2 d n, raised to
/// deg q when that is larger.
inline MembershipResult member_nZbeta(const IntPoly& q, const BaseSpec& base, const Modulus& n,
                                      std::optional<long> degree_budget = std::nullopt,
                                      std::size_t dense_cap = 1500)
{
    const long budget = degree_budget.value_or(
        std::max<long>(q.degree(), 2 * static_cast<long>(base.degree) * n.value()));
    return member_nZbeta(q, base.minpoly, n, budget, dense_cap);
}

/// Oracle check of x^i - x^j against the witness's modulus, at the smallest
/// budget that admits the witness's own cofactor.
inline MembershipResult check_with_oracle(const FermatWitness& w, std::size_t dense_cap = 1500)
{
    const long budget = std::max<long>(static_cast<long>(w.i()),
                                       w.r().degree() + w.base()->minpoly.degree());
    return member_nZbeta(IntPoly::binomial(w.i(), w.j()), w.base()->minpoly, w.n(), budget,
                         dense_cap);
}

} // namespace perbeta
