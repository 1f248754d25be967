#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "perbeta/representation.hpp"

using namespace perbeta;

namespace {
BaseRef golden() { return check_base(IntPoly{-1, -1, 1}); }
BaseRef two() { return check_base(IntPoly{-2, 1}); }

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

PeriodicRep make(const BaseRef& b, long L, std::initializer_list<long> pre, std::initializer_list<long> per)
{
    return {b, L, ints(pre), ints(per)};
}

void expect_same_digits(const PeriodicRep& a, const PeriodicRep& b, long from = -20, long to = 60)
{
    for (long t = from; t < to; ++t)
        EXPECT_EQ(a.digit_at(t), b.digit_at(t)) << "position " << t;
}

FieldElement q(const BaseRef& b, long num, long den) { return FieldElement::from_rational(b, Rational(num, den)); }

PeriodicRep unit_fraction(const BaseRef& b, long n)
{
    return rep_of_unit_fraction(b, Modulus(n), densify(find_witness(b, Modulus(n))));
}

// value = preperiod sum + tail, with the tail T fixed by T (1 - beta^-p) = one period
void expect_geometric_identity(const PeriodicRep& rep)
{
    const FieldElement v = eval_rep(rep);
    const FieldElement pre = oracle::finite_sum(rep.base, rep.start(), rep.preperiod);
    const FieldElement per = oracle::finite_sum(rep.base, rep.period_start(), rep.period);
    const FieldElement shift =
        field_pow(field_beta(rep.base), -static_cast<long>(rep.period.size()));
    EXPECT_EQ((v - pre) - (v - pre) * shift, per);
}
} // namespace

TEST(Canonicalize, MinimalPeriod)
{
    const auto r = canonicalize(make(golden(), 0, {1}, {1, 0, 1, 0}));
    EXPECT_EQ(r.period, ints({1, 0}));
    EXPECT_EQ(r.preperiod, ints({1}));
    EXPECT_EQ(r.lead_exponent, 0);
}

TEST(Canonicalize, AbsorbsTail)
{
    const auto in = make(golden(), 0, {0, 1}, {0, 0, 1});
    const auto r = canonicalize(in);
    EXPECT_TRUE(r.preperiod.empty());
    EXPECT_EQ(r.period, ints({1, 0, 0}));
    EXPECT_EQ(r.lead_exponent, -1);
    expect_same_digits(in, r);
}

TEST(Canonicalize, ZeroRep)
{
    const auto r = canonicalize(make(golden(), 5, {0, 0}, {0, 0}));
    EXPECT_EQ(r.lead_exponent, 0);
    EXPECT_TRUE(r.preperiod.empty());
    EXPECT_EQ(r.period, ints({0}));
    EXPECT_THROW(canonicalize(make(golden(), 0, {1}, {})), Error);
}

TEST(CanonicalizeProperty, IdempotentAndValuePreserving)
{
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> len(0, 5), dig(-2, 2), lead(-3, 3);
    for (int it = 0; it < 300; ++it) {
        PeriodicRep r{golden(), lead(rng), {}, {}};
        for (int k = len(rng); k > 0; --k)
            r.preperiod.push_back(dig(rng));
        for (int k = len(rng) + 1; k > 0; --k)
            r.period.push_back(dig(rng));
        const auto c = canonicalize(r);
        EXPECT_EQ(canonicalize(c).preperiod, c.preperiod);
        EXPECT_EQ(canonicalize(c).period, c.period);
        EXPECT_EQ(canonicalize(c).lead_exponent, c.lead_exponent);
        expect_same_digits(r, c);
        EXPECT_EQ(eval_rep(r), eval_rep(c));
    }
}

TEST(EvalRep, Examples)
{
    EXPECT_EQ(eval_rep(make(golden(), 0, {0, 0}, {1, 0, 0})), q(golden(), 1, 2));
    EXPECT_EQ(eval_rep(make(golden(), 3, {}, {0})), q(golden(), 0, 1));
    // period (0,1) from position 1 in base 2: sum 4^-k = 1/3
    EXPECT_EQ(eval_rep(make(two(), -1, {}, {0, 1})), q(two(), 1, 3));
    EXPECT_EQ(eval_rep(make(golden(), 0, {1}, {0})), q(golden(), 1, 1));
}

TEST(EvalRep, RootOfUnityRejected)
{
    const BaseRef i = check_base(IntPoly{1, 0, 1});
    try {
        eval_rep(make(i, 0, {}, {1, 0, 0, 0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonInvertible);
    }
}

TEST(EvalRepProperty, GeometricIdentity)
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> len(0, 6), dig(-3, 3), lead(-4, 4);
    for (auto m : {IntPoly{-1, -1, 1}, IntPoly{3, 2, 3}, IntPoly{1, -4, 2}}) {
        const BaseRef b = check_base(m);
        for (int it = 0; it < 40; ++it) {
            PeriodicRep r{b, lead(rng), {}, {}};
            for (int k = len(rng); k > 0; --k)
                r.preperiod.push_back(dig(rng));
            for (int k = len(rng) + 1; k > 0; --k)
                r.period.push_back(dig(rng));
            expect_geometric_identity(r);
        }
    }
}

TEST(UnitFraction, GoldenHalf)
{
    const auto r = unit_fraction(golden(), 2);
    expect_same_digits(r, make(golden(), 0, {0, 0}, {1, 0, 0}));
    EXPECT_EQ(r.lead_exponent, -2);
    EXPECT_EQ(r.period, ints({1, 0, 0}));
    EXPECT_EQ(to_human(r), "0.0(1,0,0)");
}

TEST(UnitFraction, BaseTwoThird)
{
    const auto r = unit_fraction(two(), 3);
    expect_same_digits(r, make(two(), -1, {}, {0, 1}));
    EXPECT_EQ(eval_rep(r), q(two(), 1, 3));
}

TEST(UnitFraction, ExampleBaseDigitBound)
{
    const BaseRef b = check_base(IntPoly{3, 2, 3});
    const auto r = unit_fraction(b, 6);
    EXPECT_LE(r.max_abs_digit(), 18);
    EXPECT_EQ(eval_rep(r), q(b, 1, 6));
}

TEST(UnitFraction, DensityViolated)
{
    const BaseRef b = check_base(IntPoly{3, 2, 3});
    const auto w = find_witness(b, Modulus(6)); // (3,1), deg p = 4
    try {
        rep_of_unit_fraction(b, Modulus(6), w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DensityViolated);
    }
    EXPECT_THROW(rep_of_unit_fraction(b, Modulus(3), densify(w)), Error);
}

TEST(UnitFractionProperty, RoundTripAndAlphabet)
{
    for (auto m : {IntPoly{-1, -1, 1}, IntPoly{-1, -1, 0, 1}, IntPoly{-2, 1}, IntPoly{3, 2, 3},
                   IntPoly{1, -4, 2}}) {
        const BaseRef b = check_base(m);
        Integer big_m = 0;
        for (const auto& c : m.coeffs())
            big_m = std::max(big_m, Integer(abs(c)));
        const Integer bound = 2 * big_m * static_cast<long>(m.degree() + 1);
        for (long n = 2; n <= 30; ++n) {
            const auto r = unit_fraction(b, n);
            EXPECT_EQ(eval_rep(r), q(b, 1, n));
            EXPECT_LE(r.max_abs_digit(), bound);
        }
    }
}

TEST(MultiplyFinite, Examples)
{
    const auto half = unit_fraction(golden(), 2);
    EXPECT_EQ(eval_rep(multiply_finite(half, LaurentIntPoly(0, IntPoly{2}))), q(golden(), 1, 1));
    const auto zero = multiply_finite(half, LaurentIntPoly(0, IntPoly{}));
    EXPECT_TRUE(zero.preperiod.empty());
    EXPECT_EQ(zero.period, ints({0}));

    const auto third = unit_fraction(two(), 3);
    const auto shifted = multiply_finite(third, LaurentIntPoly(0, IntPoly{0, 1}));
    EXPECT_EQ(eval_rep(shifted), q(two(), 2, 3));
    for (long t = -5; t < 30; ++t)
        EXPECT_EQ(shifted.digit_at(t), third.digit_at(t + 1));
}

TEST(MultiplyFiniteProperty, Distributes)
{
    std::mt19937_64 rng(29);
    const BaseRef b = golden();
    for (long n : {2, 3, 5, 7, 12}) {
        const auto r = unit_fraction(b, n);
        for (int it = 0; it < 10; ++it) {
            const LaurentIntPoly z1(static_cast<long>(rng() % 5) - 2, oracle::random_poly(rng, 3, -4, 4));
            const LaurentIntPoly z2(static_cast<long>(rng() % 5) - 2, oracle::random_poly(rng, 3, -4, 4));
            // z1 + z2 as a Laurent polynomial
            const long low = std::min(z1.low, z2.low);
            const IntPoly sum = z1.coeffs.shifted(static_cast<std::size_t>(z1.low - low)) +
                                z2.coeffs.shifted(static_cast<std::size_t>(z2.low - low));
            const LaurentIntPoly z(low, sum);
            const auto lhs = eval_rep(multiply_finite(r, z));
            EXPECT_EQ(lhs, eval_rep(multiply_finite(r, z1)) + eval_rep(multiply_finite(r, z2)));
            EXPECT_EQ(lhs, z.evaluate(b) * q(b, 1, n));
        }
    }
}

TEST(FieldElementRep, Examples)
{
    const BaseRef b = golden();
    const auto one = rep_of_field_element(q(b, 1, 1));
    EXPECT_EQ(one.lead_exponent, 0);
    EXPECT_EQ(one.preperiod, ints({1}));
    EXPECT_EQ(one.period, ints({0}));
    expect_same_digits(rep_of_field_element(q(b, 1, 2)), make(b, 0, {0, 0}, {1, 0, 0}));
    const FieldElement x(b, {Rational(1, 2), Rational(1, 2)});
    EXPECT_EQ(eval_rep(rep_of_field_element(x)), x);
    EXPECT_TRUE(rep_of_field_element(FieldElement::zero(b)).is_zero());
}

TEST(FieldElementRepProperty, RandomElements)
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 20);
    for (auto m : {IntPoly{-1, -1, 1}, IntPoly{3, 2, 3}, IntPoly{-1, -1, 0, 1}}) {
        const BaseRef b = check_base(m);
        for (int it = 0; it < 15; ++it) {
            std::vector<Rational> c;
            for (std::size_t k = 0; k < b->degree; ++k)
                c.emplace_back(num(rng), den(rng));
            const FieldElement x(b, c);
            EXPECT_EQ(eval_rep(rep_of_field_element(x)), x);
        }
    }
}

TEST(Normalize, GoldenTwo)
{
    const BaseRef b = golden();
    const auto two_rep = make(b, 0, {2}, {0});
    const auto r = normalize_digits(two_rep, 1);
    EXPECT_LE(r.max_abs_digit(), 1);
    EXPECT_EQ(eval_rep(r), q(b, 2, 1));
    for (const auto* v : {&r.preperiod, &r.period})
        for (const auto& d : *v)
            EXPECT_GE(d, 0);
}

TEST(Normalize, FixedPoints)
{
    const BaseRef b = golden();
    const auto zero = normalize_digits(zero_rep(b), 1);
    EXPECT_TRUE(zero.is_zero());
    const auto half = unit_fraction(b, 2);
    const auto same = normalize_digits(half, 1);
    EXPECT_EQ(same.preperiod, half.preperiod);
    EXPECT_EQ(same.period, half.period);
    EXPECT_EQ(same.lead_exponent, half.lead_exponent);
    EXPECT_THROW(normalize_digits(half, -1), Error);
}

TEST(NormalizeProperty, PreservesValueNeverWorsens)
{
    for (auto m : {IntPoly{-1, -1, 1}, IntPoly{3, 2, 3}, IntPoly{1, -4, 2}}) {
        const BaseRef b = check_base(m);
        for (long n : {3, 6, 7, 10, 15}) {
            const auto r = multiply_finite(unit_fraction(b, n), LaurentIntPoly(0, IntPoly{3, 1}));
            const auto s = normalize_digits(r, 1);
            EXPECT_EQ(eval_rep(s), eval_rep(r));
            EXPECT_LE(s.max_abs_digit(), r.max_abs_digit());
        }
    }
}
