#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "perbeta/membership.hpp"
#include "perbeta/witness.hpp"

using namespace perbeta;

namespace {
void expect_certificate(const MembershipResult& res, const IntPoly& q, const IntPoly& m, long n)
{
    ASSERT_TRUE(res.member());
    EXPECT_EQ(q - Integer(n) * res.p, res.r * m);
}

std::vector<std::int64_t> small(const IntPoly& p)
{
    std::vector<std::int64_t> v;
    for (const auto& c : p.coeffs())
        v.push_back(c.get_si());
    return v;
}
} // namespace

TEST(Membership, ExampleFiveOne)
{
    const IntPoly m{3, 2, 3}, q = IntPoly::binomial(3, 1);
    const auto res = member_nZbeta(q, m, Modulus(6), 4);
    expect_certificate(res, q, m, 6);
    EXPECT_LE(res.r.degree(), 2);
}

TEST(Membership, GoldenCube)
{
    const IntPoly m{-1, -1, 1}, q = IntPoly::binomial(3, 0);
    const auto res = member_nZbeta(q, m, Modulus(2), 3);
    expect_certificate(res, q, m, 2);
    EXPECT_EQ(res.r, (IntPoly{1, 1}));
    EXPECT_EQ(res.p, (IntPoly{0, 1}));
}

TEST(Membership, DefinitiveRejection)
{
    // beta - 1 = 1/beta is a unit, so it is never in 2Z[beta]
    const IntPoly m{-1, -1, 1}, q = IntPoly::binomial(1, 0);
    const auto res = member_nZbeta(q, m, Modulus(2), 6);
    EXPECT_EQ(res.status, Membership::NotMember);
    EXPECT_FALSE(oracle::brute_force_member(small(q), small(m), 2, 4, 4));
}

TEST(Membership, BudgetTooSmallWhenLeadNotUnit)
{
    // 3 | a_d: failure at a small budget says nothing definitive
    const IntPoly m{3, 2, 3};
    const auto res = member_nZbeta(IntPoly::binomial(1, 0), m, Modulus(3), 3);
    EXPECT_EQ(res.status, Membership::BudgetTooSmall);
}

TEST(Membership, RejectsBudgetBelowDegree)
{
    try {
        member_nZbeta(IntPoly::binomial(5, 0), IntPoly{-1, -1, 1}, Modulus(2), 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
    }
}

TEST(Membership, DenseCapReported)
{
    // 2 | a_0 and 2 | a_d forces the dense solver
    const IntPoly m{2, 1, 2};
    EXPECT_THROW(member_nZbeta(IntPoly::binomial(40, 0), m, Modulus(2), 40, 8), Error);
    EXPECT_NO_THROW(member_nZbeta(IntPoly::binomial(40, 0), m, Modulus(2), 40));
}

TEST(Membership, MultiplesOfN)
{
    const IntPoly m{-1, -1, 1};
    const auto res = member_nZbeta(IntPoly{6, -12}, m, Modulus(6), 1);
    ASSERT_TRUE(res.member());
    EXPECT_EQ(res.p, (IntPoly{1, -2}));
}

// Agreement with exhaustive search over small cofactors, including bases where
// n shares factors with both end coefficients.
TEST(MembershipProperty, MatchesBruteForce)
{
    std::mt19937_64 rng(5);
    const std::vector<IntPoly> bases{{-1, -1, 1}, {3, 2, 3}, {-2, 1}, {1, -4, 2}, {2, 1, 2}};
    for (const auto& m : bases)
        for (long n : {2, 3, 4, 6}) {
            for (int it = 0; it < 25; ++it) {
                IntPoly q = oracle::random_poly(rng, static_cast<int>(m.degree()) + 2, -6, 6);
                if (it % 3 == 0)
                    q = oracle::random_poly(rng, 2, -3, 3) * m + Integer(n) * oracle::random_poly(rng, 4, -3, 3);
                const long budget = m.degree() + 2;
                if (q.degree() > budget)
                    continue;
                const auto res = member_nZbeta(q, m, Modulus(n), budget);
                const bool brute = oracle::brute_force_member(small(q), small(m), n, n, 2);
                EXPECT_EQ(res.member(), brute) << to_string(q) << " mod " << n << " over " << to_string(m);
                if (res.member())
                    expect_certificate(res, q, m, n);
            }
        }
}

TEST(MembershipProperty, MonotoneInBudget)
{
    const IntPoly m{3, 2, 3};
    for (long n : {2, 3, 6, 9, 12})
        for (std::size_t i = 1; i <= 8; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                bool seen = false;
                for (long b = static_cast<long>(i); b <= static_cast<long>(i) + 6; ++b) {
                    const bool now = member_nZbeta(IntPoly::binomial(i, j), m, Modulus(n), b).member();
                    EXPECT_TRUE(!seen || now);
                    seen = seen || now;
                }
            }
}

TEST(Membership, BaseOverloadDefaultBudget)
{
    const auto b = check_base(IntPoly{3, 2, 3});
    const auto res = member_nZbeta(IntPoly::binomial(3, 1), *b, Modulus(6));
    ASSERT_TRUE(res.member());
    EXPECT_EQ(IntPoly::binomial(3, 1) - Integer(6) * res.p, res.r * b->minpoly);
}
