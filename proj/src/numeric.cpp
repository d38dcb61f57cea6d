#include "torquo/numeric.hpp"

#include "torquo/error.hpp"

#include <cctype>

namespace torquo {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotARelation: return "NotARelation";
    case ErrorCode::FanNotValid: return "FanNotValid";
    case ErrorCode::FanNotComplete: return "FanNotComplete";
    case ErrorCode::ConeNotInFan: return "ConeNotInFan";
    case ErrorCode::NotACircuit: return "NotACircuit";
    case ErrorCode::WrongLocalStructure: return "WrongLocalStructure";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ConditionBFailed: return "ConditionBFailed";
    case ErrorCode::ClassNotInCone: return "ClassNotInCone";
    case ErrorCode::InductionMismatch: return "InductionMismatch";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    }
    return "Unknown";
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
    return out;
}

RatVector to_rational(const IntVector& v)
{
    RatVector out;
    out.reserve(v.size());
    for (const auto& z : v) out.emplace_back(z);
    return out;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer integer_from_text(std::string_view s)
{
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_integer_text(text)) throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
        return Rational(integer_from_text(text));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
        throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
    Integer d = integer_from_text(den);
    if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    Rational q(integer_from_text(num), d);
    q.canonicalize();
    return q;
}

Integer content(const IntVector& v)
{
    Integer g = 0;
    for (const auto& z : v) g = gcd(g, z);
    return g;
}

IntVector primitive_integer(const RatVector& v)
{
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, q.get_den());
    IntVector out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_num() * (l / q.get_den()));
    Integer g = content(out);
    if (g == 0) return out;
    for (auto& z : out) z /= g;
    return out;
}

Rational dot(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product of vectors with different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

bool is_zero(const RatVector& v)
{
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

}  // namespace torquo
