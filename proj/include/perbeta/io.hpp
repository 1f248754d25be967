#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "perbeta/error.hpp"
#include "perbeta/field.hpp"
#include "perbeta/modular.hpp"
#include "perbeta/periodic_rep.hpp"
#include "perbeta/polynomial.hpp"
#include "perbeta/witness.hpp"

namespace perbeta::io {

using nlohmann::json;

namespace detail {

inline std::string trim(std::string_view s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t from = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
        if (k == s.size() || s[k] == sep) {
            out.push_back(trim(s.substr(from, k - from)));
            from = k + 1;
        }
    return out;
}

} // namespace detail

inline Integer parse_integer(std::string_view text)
{
    std::string s = detail::trim(text);
    if (!s.empty() && s[0] == '+')
        s.erase(0, 1);
    const std::size_t digits_from = !s.empty() && s[0] == '-' ? 1 : 0;
    bool ok = s.size() > digits_from;
    for (std::size_t k = digits_from; k < s.size() && ok; ++k)
        ok = std::isdigit(static_cast<unsigned char>(s[k])) != 0;
    if (!ok)
        throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
    return Integer(s);
}

/// "a/b" or "a".
inline Rational parse_rational(std::string_view text)
{
    const auto parts = detail::split(text, '/');
    if (parts.size() > 2)
        throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
    Rational q(parse_integer(parts[0]), parts.size() == 2 ? parse_integer(parts[1]) : Integer(1));
    if (q.get_den() == 0)
        throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

/// Comma-separated integer coefficients, ascending unless `descending`.
inline IntPoly parse_poly(std::string_view text, bool descending = false)
{
    std::vector<Integer> c;
    for (const auto& part : detail::split(text, ','))
        c.push_back(parse_integer(part));
    if (descending)
        std::reverse(c.begin(), c.end());
    return IntPoly(std::move(c));
}

inline IntPoly parse_minpoly(std::string_view text, bool descending = false)
{
    IntPoly m = parse_poly(text, descending);
    if (m.degree() < 1)
        throw Error(ErrorKind::ParseError, "minimal polynomial must have degree >= 1");
    return m;
}

inline Modulus parse_modulus(std::string_view text)
{
    const Integer n = parse_integer(text);
    if (n < 2 || n > Modulus::max_value)
        throw Error(ErrorKind::ParseError, "n must lie in [2, 2^31 - 1], got " + n.get_str());
    return Modulus(n.get_si());
}

/// Comma-separated rational coordinates c_0, c_1, ... of c_0 + c_1 beta + ...
inline FieldElement parse_field_element(std::string_view text, const BaseRef& base,
                                        bool descending = false)
{
    std::vector<Rational> c;
    for (const auto& part : detail::split(text, ','))
        c.push_back(parse_rational(part));
    if (descending)
        std::reverse(c.begin(), c.end());
    if (c.size() > base->degree)
        throw Error(ErrorKind::ParseError, "more coordinates than the degree of the base");
    return FieldElement(base, std::move(c));
}

/// Integers that fit a long become JSON numbers, larger ones strings.
inline json integer_json(const Integer& a)
{
    if (a.fits_slong_p())
        return a.get_si();
    return a.get_str();
}

inline Integer integer_from_json(const json& v)
{
    if (v.is_number_integer())
        return Integer(v.get<long>());
    if (v.is_string())
        return parse_integer(v.get<std::string>());
    throw Error(ErrorKind::ParseError, "expected an integer, got " + v.dump());
}

inline json digits_json(const std::vector<Integer>& v)
{
    json out = json::array();
    for (const auto& a : v)
        out.push_back(integer_json(a));
    return out;
}

inline json poly_json(const IntPoly& p) { return digits_json(p.coeffs()); }

inline json witness_json(const FermatWitness& w)
{
    return {{"minpoly", poly_json(w.base()->minpoly)},
            {"n", w.n().value()},
            {"i", w.i()},
            {"j", w.j()},
            {"p", poly_json(w.p())},
            {"r", poly_json(w.r())},
            {"identity", w.identity()}};
}

inline json rep_json(const PeriodicRep& rep)
{
    return {{"L", rep.lead_exponent},
            {"preperiod", digits_json(rep.preperiod)},
            {"period", digits_json(rep.period)}};
}

inline PeriodicRep rep_from_json(const json& j, const BaseRef& base)
{
    if (!j.is_object() || !j.contains("L") || !j.contains("preperiod") || !j.contains("period"))
        throw Error(ErrorKind::ParseError, "representation needs keys L, preperiod, period");
    if (!j["L"].is_number_integer() || !j["preperiod"].is_array() || !j["period"].is_array())
        throw Error(ErrorKind::ParseError, "malformed representation fields");
    PeriodicRep rep{base, j["L"].get<long>(), {}, {}};
    for (const auto& v : j["preperiod"])
        rep.preperiod.push_back(integer_from_json(v));
    for (const auto& v : j["period"])
        rep.period.push_back(integer_from_json(v));
    if (rep.period.empty())
        throw Error(ErrorKind::ParseError, "period must be nonempty");
    return rep;
}

inline PeriodicRep parse_rep(std::string_view text, const BaseRef& base)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(ErrorKind::ParseError, "malformed JSON");
    return rep_from_json(j, base);
}

} // namespace perbeta::io
