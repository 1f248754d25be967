#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/modular.hpp"
#include "perbeta/polynomial.hpp"

namespace perbeta {

enum class Membership {
    Member,
    NotMember,      ///< no cofactor of any degree exists
    BudgetTooSmall, ///< none within the degree budget; a larger one might work
};

inline std::string_view to_string(Membership m)
{
    switch (m) {
    case Membership::Member: return "member";
    case Membership::NotMember: return "not-member";
    case Membership::BudgetTooSmall: return "budget-too-small";
    }
    return "?";
}

/// Outcome of deciding q in nZ[x] + m(x)Z[x]. When `status` is Member the
/// certificate q - n*p = r*m holds exactly in Z[x].
struct MembershipResult {
    Membership status = Membership::NotMember;
    IntPoly p;
    IntPoly r;

    bool member() const noexcept { return status == Membership::Member; }
};

namespace detail {

inline unsigned valuation(Residue x, std::int64_t prime)
{
    unsigned v = 0;
    while (x != 0 && x % prime == 0) {
        x /= prime;
        ++v;
    }
    return v;
}

/// Solves the Toeplitz system sum_t r_t a_{k-t} = q_k (mod P), k = 0..rows-1,
/// for r_0..r_{cols-1}, with P = prime^e.
///
/// Unit constant term: the matrix is lower triangular with unit diagonal and
/// the solution is read off bottom-up. Unit leading term: upper triangular in
/// the reversed order, solved top-down. Otherwise the system goes through a
/// Smith normal form over the chain ring Z/p^e (pivot = entry of least p-adic
/// valuation), which is cubic and capped by `dense_cap` columns.
inline std::optional<std::vector<Residue>> solve_prime_power(const std::vector<Residue>& rhs,
                                                            const std::vector<Residue>& m,
                                                            std::int64_t prime,
                                                            std::int64_t pp, std::size_t cols,
                                                            std::size_t dense_cap)
{
    const Modulus P(pp);
    const std::size_t d = m.size() - 1;
    std::vector<Residue> res = rhs;
    std::vector<Residue> r(cols, 0);

    if (m[0] % prime != 0) {
        const Residue inv = *inverse_mod(m[0], pp);
        for (std::size_t k = 0; k < cols; ++k) {
            const Residue rk = P.mul(res[k], inv);
            r[k] = rk;
            if (rk == 0)
                continue;
            for (std::size_t t = 0; t <= d; ++t)
                res[k + t] = P.reduce(res[k + t] - rk * m[t]);
        }
        for (Residue x : res)
            if (x != 0)
                return std::nullopt;
        return r;
    }
    if (m[d] % prime != 0) {
        const Residue inv = *inverse_mod(m[d], pp);
        for (std::size_t k = cols; k-- > 0;) {
            const Residue rk = P.mul(res[k + d], inv);
            r[k] = rk;
            if (rk == 0)
                continue;
            for (std::size_t t = 0; t <= d; ++t)
                res[k + t] = P.reduce(res[k + t] - rk * m[t]);
        }
        for (Residue x : res)
            if (x != 0)
                return std::nullopt;
        return r;
    }

    require(cols <= dense_cap, ErrorKind::SearchBudgetExceeded,
            "dense membership system with " + std::to_string(cols) +
                " unknowns exceeds the cap of " + std::to_string(dense_cap));

    const std::size_t rows = res.size();
    std::vector<std::vector<Residue>> a(rows, std::vector<Residue>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t t = 0; t <= d; ++t)
            a[c + t][c] = m[t];
    // Column transform, stored by columns: v[c] is the c-th column of V.
    std::vector<std::vector<Residue>> v(cols, std::vector<Residue>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c)
        v[c][c] = 1;

    std::vector<unsigned> pivot_val;
    const std::size_t steps = std::min(rows, cols);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t bi = rows, bj = cols;
        unsigned best = ~0u;
        for (std::size_t i = k; i < rows && best > 0; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                if (a[i][j] == 0)
                    continue;
                unsigned val = valuation(a[i][j], prime);
                if (val < best) {
                    best = val;
                    bi = i;
                    bj = j;
                    if (val == 0)
                        break;
                }
            }
        if (bi == rows)
            break;
        std::swap(a[k], a[bi]);
        std::swap(res[k], res[bi]);
        if (bj != k) {
            for (std::size_t i = 0; i < rows; ++i)
                std::swap(a[i][k], a[i][bj]);
            std::swap(v[k], v[bj]);
        }
        std::int64_t pv = 1;
        for (unsigned t = 0; t < best; ++t)
            pv *= prime;
        const Residue unit_inv = *inverse_mod(a[k][k] / pv, pp);
        for (std::size_t j = k; j < cols; ++j)
            a[k][j] = P.mul(a[k][j], unit_inv);
        res[k] = P.mul(res[k], unit_inv);
        for (std::size_t i = k + 1; i < rows; ++i) {
            if (a[i][k] == 0)
                continue;
            const Residue f = a[i][k] / pv;
            for (std::size_t j = k; j < cols; ++j)
                if (a[k][j] != 0)
                    a[i][j] = P.reduce(a[i][j] - f * a[k][j]);
            res[i] = P.reduce(res[i] - f * res[k]);
        }
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (a[k][j] == 0)
                continue;
            const Residue f = a[k][j] / pv;
            a[k][j] = 0;
            for (std::size_t i = 0; i < cols; ++i)
                if (v[k][i] != 0)
                    v[j][i] = P.reduce(v[j][i] - f * v[k][i]);
        }
        pivot_val.push_back(best);
        ++rank;
    }

    std::vector<Residue> y(cols, 0);
    for (std::size_t k = 0; k < rank; ++k) {
        if (res[k] == 0)
            continue;
        if (valuation(res[k], prime) < pivot_val[k])
            return std::nullopt;
        std::int64_t pv = 1;
        for (unsigned t = 0; t < pivot_val[k]; ++t)
            pv *= prime;
        y[k] = res[k] / pv;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (res[i] != 0)
            return std::nullopt;
    for (std::size_t c = 0; c < cols; ++c) {
        if (y[c] == 0)
            continue;
        for (std::size_t i = 0; i < cols; ++i)
            r[i] = P.reduce(r[i] + y[c] * v[c][i]);
    }
    return r;
}

} // namespace detail

/// Decides whether q lies in nZ[x] + m(x)Z[x] with a cofactor r of degree at
/// most degree_budget - deg m, i.e. whether q = n*p + r*m for integer
/// polynomials p, r. In Z[beta] terms: q(beta) in nZ[beta].
///
/// The modulus is split into prime powers and the residue systems solved
/// separately, then recombined by CRT. A negative answer is reported as
/// definitive (NotMember) only when it cannot depend on the budget, which is
/// the case once every failing prime-power component has a unit leading
/// coefficient and the budget covers deg q.
inline MembershipResult member_nZbeta(const IntPoly& q, const IntPoly& m, const Modulus& n,
                                      long degree_budget, std::size_t dense_cap = 1500)
{
    require(m.degree() >= 0, ErrorKind::DegenerateInput, "zero minimal polynomial");
    require(degree_budget >= q.degree(), ErrorKind::PreconditionViolated,
            "degree budget below deg q");
    const long d = m.degree();
    const long cofactor_deg = degree_budget - d;

    MembershipResult out;
    if (cofactor_deg < 0) {
        if (divisible_by(q, n.big())) {
            out.status = Membership::Member;
            out.p = divexact(q, n.big());
        } else {
            out.status = Membership::BudgetTooSmall;
        }
        return out;
    }

    const std::size_t cols = static_cast<std::size_t>(cofactor_deg) + 1;
    const std::size_t rows = std::max<std::size_t>(cols + static_cast<std::size_t>(d), q.size());
    std::vector<Residue> combined(cols, 0);
    bool all_ok = true;
    bool definitive = true;
    const std::int64_t nv = n.value();

    for (const PrimePower& pp : factor(nv)) {
        const Modulus P(pp.value);
        std::vector<Residue> rhs(rows, 0);
        for (std::size_t k = 0; k < q.size(); ++k)
            rhs[k] = P.reduce(q[k]);
        std::vector<Residue> mres(static_cast<std::size_t>(d) + 1);
        for (std::size_t t = 0; t < mres.size(); ++t)
            mres[t] = P.reduce(m[t]);
        auto sol = detail::solve_prime_power(rhs, mres, pp.prime, pp.value, cols, dense_cap);
        if (!sol) {
            all_ok = false;
            const bool unit_lead = mres.back() % pp.prime != 0;
            if (!(unit_lead && cofactor_deg >= q.degree() - d))
                definitive = false;
            continue;
        }
        // CRT: lift the component into Z/n.
        const std::int64_t rest = nv / pp.value;
        const std::int64_t coef = static_cast<std::int64_t>(
            (static_cast<__int128>(rest) * *inverse_mod(rest % pp.value, pp.value)) % nv);
        for (std::size_t k = 0; k < cols; ++k)
            combined[k] = static_cast<Residue>(
                (static_cast<__int128>(combined[k]) + static_cast<__int128>((*sol)[k]) * coef) % nv);
    }

    if (!all_ok) {
        out.status = definitive ? Membership::NotMember : Membership::BudgetTooSmall;
        return out;
    }
    out.status = Membership::Member;
    out.r = lift(combined);
    out.p = divexact(q - out.r * m, n.big());
    return out;
}

} // namespace perbeta
