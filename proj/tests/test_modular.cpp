#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "perbeta/modular.hpp"

using namespace perbeta;

TEST(Modulus, RangeChecked)
{
    EXPECT_THROW(Modulus(1), Error);
    EXPECT_THROW(Modulus(0), Error);
    EXPECT_THROW(Modulus(Modulus::max_value + 1), Error);
    EXPECT_EQ(Modulus(6).value(), 6);
}

TEST(Modulus, ReducesIntoRange)
{
    const Modulus n(6);
    EXPECT_EQ(n.reduce(-1), 5);
    EXPECT_EQ(n.reduce(Integer(-13)), 5);
    EXPECT_EQ(n.reduce(Integer("123456789012345678901")), 123456789012345678901_mpz % 6);
    EXPECT_EQ(n.mul(5, 5), 1);
    EXPECT_EQ(n.add(4, 5), 3);
}

TEST(Modular, Inverse)
{
    EXPECT_EQ(inverse_mod(3, 7), 5);
    EXPECT_FALSE(inverse_mod(2, 6).has_value());
    EXPECT_EQ(inverse_mod(-1, 6), 5);
}

TEST(Modular, FactorAndPrimality)
{
    const auto f = factor(360);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].prime, 2);
    EXPECT_EQ(f[0].exponent, 3u);
    EXPECT_EQ(f[0].value, 8);
    EXPECT_EQ(f[2].value, 5);
    EXPECT_TRUE(is_prime(47));
    EXPECT_FALSE(is_prime(49));
    EXPECT_FALSE(is_prime(1));
}

TEST(ModularProperty, FactorReassembles)
{
    for (std::int64_t n = 2; n < 3000; ++n) {
        std::int64_t prod = 1;
        for (const auto& pp : factor(n)) {
            EXPECT_TRUE(is_prime(pp.prime));
            prod *= pp.value;
        }
        EXPECT_EQ(prod, n);
    }
}

TEST(ModularProperty, InverseIsInverse)
{
    std::mt19937_64 rng(3);
    for (int it = 0; it < 2000; ++it) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 5000);
        const std::int64_t a = static_cast<std::int64_t>(rng() % 100000) - 50000;
        const auto inv = inverse_mod(a, n);
        const Modulus m(n);
        EXPECT_EQ(inv.has_value(), std::gcd(m.reduce(a), n) == 1);
        if (inv) {
            EXPECT_EQ(m.mul(m.reduce(a), *inv), 1 % n);
        }
    }
}

TEST(Modular, ProjectAndLift)
{
    const Modulus n(6);
    const auto r = mod_project(IntPoly{-1, 7, 12}, n);
    EXPECT_EQ(r, (std::vector<Residue>{5, 1}));
    EXPECT_EQ(lift(r), (IntPoly{5, 1}));
    EXPECT_TRUE(divisible_by(IntPoly{6, -12}, Integer(6)));
    EXPECT_FALSE(divisible_by(IntPoly{6, -11}, Integer(6)));
}
