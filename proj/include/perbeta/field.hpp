#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perbeta/error.hpp"
#include "perbeta/polynomial.hpp"

namespace perbeta {

enum class TriState { No, Yes, Uncertain };

inline std::string_view to_string(TriState t)
{
    switch (t) {
    case TriState::No: return "no";
    case TriState::Yes: return "yes";
    case TriState::Uncertain: return "uncertain";
    }
    return "?";
}

/// The base beta, given by a primitive integer polynomial m with m(beta) = 0,
/// together with numeric diagnostics about its roots. Exact code only ever
/// looks at `minpoly`; the floating-point fields are for reporting and for
/// picking which root is meant.
struct BaseSpec {
    IntPoly minpoly;
    std::size_t degree = 0;
    std::vector<std::complex<double>> roots; // sorted by decreasing modulus
    std::vector<double> root_moduli;
    std::size_t designated_root_index = 0;
    TriState has_unit_circle_conjugate = TriState::Uncertain;
    bool dominant_modulus = false;
    double tolerance = 1e-9;

    std::complex<double> beta() const { return roots.at(designated_root_index); }
    double beta_modulus() const { return root_moduli.at(designated_root_index); }
    const Integer& coeff(std::size_t i) const { return minpoly[i]; }
    const Integer& leading() const { return minpoly.leading(); }
    /// max |a_i|
    Integer height() const
    {
        Integer h = 0;
        for (const auto& c : minpoly.coeffs())
            h = std::max(h, Integer(abs(c)));
        return h;
    }
};

using BaseRef = std::shared_ptr<const BaseSpec>;

/// Roots of p via eigenvalues of the companion matrix of p / lc(p), sorted by
/// decreasing modulus (ties broken by argument).
inline std::vector<std::complex<double>> numeric_roots(const IntPoly& p)
{
    const long d = p.degree();
    require(d >= 1, ErrorKind::DegenerateInput, "polynomial must have degree >= 1");
    const double lc = p.leading().get_d();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (long r = 1; r < d; ++r)
        companion(r, r - 1) = 1.0;
    for (long r = 0; r < d; ++r)
        companion(r, d - 1) = -p[static_cast<std::size_t>(r)].get_d() / lc;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<std::complex<double>> roots;
    for (long k = 0; k < d; ++k)
        roots.push_back(solver.eigenvalues()[k]);
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma))
            return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    return roots;
}

/// Locates the roots of `minpoly` and classifies the base.
///
/// The unit-circle flag is tri-state. If m and its reciprocal x^d m(1/x) are
/// coprime no root can lie on the unit circle (a root there would have its
/// inverse, the complex conjugate, as a root too), and the answer is "no"
/// exactly. Otherwise a root within `tolerance` of modulus 1 gives "yes", a root
/// inside the wider band sqrt(tolerance) gives "uncertain", and anything else
/// "no".
inline BaseRef check_base(const IntPoly& minpoly, double tolerance = 1e-9,
                          std::optional<std::size_t> root_index = std::nullopt)
{
    require(minpoly.degree() >= 1, ErrorKind::DegenerateInput,
            "minimal polynomial must be nonconstant");
    require(content(minpoly) == 1, ErrorKind::PreconditionViolated,
            "minimal polynomial must have content 1");
    require(tolerance > 0, ErrorKind::PreconditionViolated, "tolerance must be positive");

    auto spec = std::make_shared<BaseSpec>();
    spec->minpoly = minpoly;
    spec->degree = static_cast<std::size_t>(minpoly.degree());
    spec->tolerance = tolerance;
    spec->roots = numeric_roots(minpoly);
    for (const auto& r : spec->roots)
        spec->root_moduli.push_back(std::abs(r));

    if (root_index) {
        require(*root_index < spec->degree, ErrorKind::PreconditionViolated,
                "root index out of range");
        spec->designated_root_index = *root_index;
    }
    spec->dominant_modulus = spec->root_moduli.front() > 1.0 + tolerance;

    const RatPoly m = to_rational(minpoly);
    const RatPoly shared = gcd(m, to_rational(reversed(minpoly)));
    if (shared.degree() < 1) {
        spec->has_unit_circle_conjugate = TriState::No;
    } else {
        const double band = std::sqrt(tolerance);
        TriState flag = TriState::No;
        for (double mod : spec->root_moduli) {
            const double dist = std::abs(mod - 1.0);
            if (dist <= tolerance) {
                flag = TriState::Yes;
                break;
            }
            if (dist <= band)
                flag = TriState::Uncertain;
        }
        spec->has_unit_circle_conjugate = flag;
    }
    return spec;
}

enum class Eligibility { Full, UnitFractionsOnly, Invalid };

inline std::string_view to_string(Eligibility e)
{
    switch (e) {
    case Eligibility::Full: return "FULL";
    case Eligibility::UnitFractionsOnly: return "UNIT-FRACTIONS-ONLY";
    case Eligibility::Invalid: return "INVALID";
    }
    return "?";
}

/// FULL: |beta| > 1 and no conjugate on the unit circle, so every element of
/// Q(beta) gets a periodic representation over one finite alphabet.
/// UNIT-FRACTIONS-ONLY: some root on (or numerically indistinguishable from)
/// the unit circle; 1/n is still representable but the uniform alphabet claim
/// does not apply. INVALID: |beta| < 1.
inline Eligibility eligibility(const BaseSpec& base)
{
    const double mod = base.beta_modulus();
    if (mod < 1.0 - base.tolerance)
        return Eligibility::Invalid;
    if (base.has_unit_circle_conjugate != TriState::No)
        return Eligibility::UnitFractionsOnly;
    if (mod <= 1.0 + base.tolerance)
        return Eligibility::Invalid;
    return Eligibility::Full;
}

/// Element of Q(beta) stored as sum_{i<d} q_i beta^i with reduced rationals.
class FieldElement {
public:
    FieldElement(BaseRef base, std::vector<Rational> coeffs)
        : base_(std::move(base)), coeffs_(std::move(coeffs))
    {
        require(base_ != nullptr, ErrorKind::PreconditionViolated, "missing base");
        require(coeffs_.size() <= base_->degree, ErrorKind::PreconditionViolated,
                "field element has more coefficients than the degree");
        coeffs_.resize(base_->degree);
        for (auto& c : coeffs_)
            c.canonicalize();
    }

    static FieldElement zero(const BaseRef& base) { return {base, {}}; }
    static FieldElement from_rational(const BaseRef& base, const Rational& q)
    {
        return {base, {q}};
    }

    const BaseRef& base() const noexcept { return base_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    RatPoly as_poly() const { return RatPoly(coeffs_); }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
    }

    FieldElement operator-() const
    {
        FieldElement r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    FieldElement& operator+=(const FieldElement& o)
    {
        check_same_base(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            coeffs_[k] += o.coeffs_[k];
        return *this;
    }

    FieldElement& operator-=(const FieldElement& o)
    {
        check_same_base(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            coeffs_[k] -= o.coeffs_[k];
        return *this;
    }

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);

    friend bool operator==(const FieldElement& a, const FieldElement& b)
    {
        return a.base_->minpoly == b.base_->minpoly && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    void check_same_base(const FieldElement& o) const
    {
        require(base_ == o.base_ || base_->minpoly == o.base_->minpoly,
                ErrorKind::PreconditionViolated, "field elements over different bases");
    }

    BaseRef base_;
    std::vector<Rational> coeffs_;
};

/// p(beta) for p over Q, via remainder modulo m.
inline FieldElement field_reduce(const RatPoly& p, const BaseRef& base)
{
    RatPoly rem = divmod(p, to_rational(base->minpoly)).second;
    return {base, rem.coeffs()};
}

/// p(beta) for p over Z.
///
/// Horner's rule on a d-term integer accumulator with a common denominator
/// a_d^e. Each step multiplies by beta, replacing the overflow x^d using
/// a_d x^d = -(a_{d-1}x^{d-1} + ... + a_0); the denominator only grows when the
/// overflowing coefficient is not a multiple of a_d. Linear in deg p, which
/// matters for the very long polynomials produced by periodic digit strings.
inline FieldElement field_reduce(const IntPoly& p, const BaseRef& base)
{
    const std::size_t d = base->degree;
    const IntPoly& m = base->minpoly;
    const Integer& lc = m.leading();
    std::vector<Integer> acc(d);
    Integer scale = 1;
    Integer t, q;
    for (std::size_t k = p.size(); k-- > 0;) {
        t = acc[d - 1];
        for (std::size_t i = d - 1; i > 0; --i)
            acc[i].swap(acc[i - 1]);
        acc[0] = 0;
        if (t != 0) {
            if (mpz_divisible_p(t.get_mpz_t(), lc.get_mpz_t()) != 0) {
                mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), lc.get_mpz_t());
                for (std::size_t i = 0; i < d; ++i)
                    if (m[i] != 0)
                        acc[i] -= q * m[i];
            } else {
                for (std::size_t i = 0; i < d; ++i) {
                    acc[i] *= lc;
                    if (m[i] != 0)
                        acc[i] -= t * m[i];
                }
                scale *= lc;
            }
        }
        if (p[k] != 0)
            acc[0] += p[k] * scale;
    }
    std::vector<Rational> out;
    out.reserve(d);
    for (auto& a : acc)
        out.emplace_back(a, scale);
    return {base, std::move(out)};
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b)
{
    a.check_same_base(b);
    return field_reduce(a.as_poly() * b.as_poly(), a.base_);
}

/// Multiplicative inverse via extended Euclid against the minimal polynomial.
inline FieldElement field_inv(const FieldElement& x)
{
    require(!x.is_zero(), ErrorKind::ZeroInversion, "inverse of zero");
    const RatPoly m = to_rational(x.base()->minpoly);
    ExtGcd eg = ext_gcd(x.as_poly(), m);
    require(eg.g.degree() == 0, ErrorKind::NonInvertible,
            "element shares a factor with the minimal polynomial (reducible input?)");
    return field_reduce(eg.s, x.base());
}

inline FieldElement field_beta(const BaseRef& base)
{
    return field_reduce(IntPoly::monomial(Integer(1), 1), base);
}

/// x^e for any integer e (negative powers go through the inverse).
inline FieldElement field_pow(FieldElement x, long e)
{
    if (e < 0) {
        x = field_inv(x);
        e = -e;
    }
    FieldElement acc = FieldElement::from_rational(x.base(), 1);
    while (e > 0) {
        if (e & 1)
            acc = acc * x;
        e >>= 1;
        if (e > 0)
            x = x * x;
    }
    return acc;
}

inline std::string to_string(const FieldElement& x, const std::string& var = "b")
{
    return to_string(x.as_poly(), var);
}

/// Element of Z[x, 1/x]: sum_k coeffs[k] x^(low + k).
struct LaurentIntPoly {
    long low = 0;
    IntPoly coeffs;

    LaurentIntPoly() = default;
    LaurentIntPoly(long low_exponent, IntPoly c) : low(low_exponent), coeffs(std::move(c))
    {
        normalize();
    }

    long high() const { return low + coeffs.degree(); }
    bool is_zero() const { return coeffs.is_zero(); }

    FieldElement evaluate(const BaseRef& base) const
    {
        FieldElement v = field_reduce(coeffs, base);
        if (low != 0)
            v = v * field_pow(field_beta(base), low);
        return v;
    }

private:
    void normalize()
    {
        if (coeffs.is_zero()) {
            low = 0;
            return;
        }
        std::size_t z = 0;
        while (coeffs[z] == 0)
            ++z;
        if (z > 0) {
            coeffs = IntPoly(std::vector<Integer>(coeffs.coeffs().begin() + static_cast<long>(z),
                                                  coeffs.coeffs().end()));
            low += static_cast<long>(z);
        }
    }
};

} // namespace perbeta
