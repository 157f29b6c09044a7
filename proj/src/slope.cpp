#include "curvecalc/slope.hpp"

#include <numeric>
#include <stdexcept>

#include "curvecalc/error.hpp"

namespace curvecalc {

Int checked_mul(Int x, Int y) {
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) throw CalcError("overflow", "integer multiplication");
    return r;
}

Int checked_add(Int x, Int y) {
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw CalcError("overflow", "integer addition");
    return r;
}

Slope Slope::make(Int p, Int q) {
    if (p == 0 && q == 0) throw CalcError("invalid slope", "0/0");
    if (std::gcd(p, q) != 1) throw CalcError("invalid slope", "non-coprime pair");
    if (q < 0 || (q == 0 && p < 0)) { p = -p; q = -q; }
    return Slope{p, q};
}

Slope Slope::parse(const std::string& s) {
    if (s == "inf" || s == "oo") return Slope{1, 0};
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make(std::stoll(s), 1);
        return make(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw CalcError("invalid slope", s);
    }
}

std::string Slope::str() const { return std::to_string(p) + "/" + std::to_string(q); }

Int Slope::height() const { return (p < 0 ? -p : p) + q; }

Int Mat2::det() const { return checked_add(checked_mul(a, d), -checked_mul(b, c)); }

Mat2 Mat2::operator*(const Mat2& o) const {
    return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
            checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
            checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
            checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

Mat2 Mat2::operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }

Mat2 Mat2::scaled(Int k) const {
    return {checked_mul(a, k), checked_mul(b, k), checked_mul(c, k), checked_mul(d, k)};
}

Mat2 Mat2::inverse() const {
    if (det() != 1) throw CalcError("not in SL(2,Z)", str());
    return {d, -b, -c, a};
}

std::string Mat2::str() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
           std::to_string(d) + "]]";
}

Slope act(const Mat2& m, const Slope& s) {
    return Slope::make(checked_add(checked_mul(m.a, s.p), checked_mul(m.b, s.q)),
                       checked_add(checked_mul(m.c, s.p), checked_mul(m.d, s.q)));
}

Mat2 twist_log(const Slope& s) {
    return {-checked_mul(s.p, s.q), checked_mul(s.p, s.p), -checked_mul(s.q, s.q), checked_mul(s.p, s.q)};
}

Mat2 twist(const Slope& s) { return twist_power(s, 1); }

Mat2 twist_power(const Slope& s, Int n) {
    Mat2 out = twist_log(s).scaled(n);
    out.a += 1;
    out.d += 1;
    return out;
}

bool twist_exponent(const Mat2& m, const Slope& s, Int& n) {
    const Mat2 diff = m - Mat2::identity();
    const Mat2 nl = twist_log(s);
    // nl has a nonzero diagonal-adjacent entry p^2 or q^2; solve from it.
    Int cand = 0;
    if (nl.b != 0) {
        if (diff.b % nl.b != 0) return false;
        cand = diff.b / nl.b;
    } else {
        if (diff.c % nl.c != 0) return false;
        cand = diff.c / nl.c;
    }
    if (nl.scaled(cand) != diff) return false;
    n = cand;
    return true;
}

Mat2 power(const Mat2& m, Int n) {
    Mat2 base = n < 0 ? m.inverse() : m;
    Int k = n < 0 ? -n : n;
    Mat2 out;
    while (k) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return out;
}

Mat2 to_infinity_inverse(const Slope& s) {
    // Columns (p, q) and (x, y) with p y - q x = 1 give a matrix sending 1/0 to p/q.
    Int x0 = 0, y0 = 0;
    // Extended Euclid for p y - q x = 1.
    Int old_r = s.p, r = s.q, old_s = 1, t = 0, old_t = 0, u = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int tmp = old_r - quot * r; old_r = r; r = tmp;
        tmp = old_s - quot * t; old_s = t; t = tmp;
        tmp = old_t - quot * u; old_t = u; u = tmp;
    }
    // old_s * p + old_t * q = old_r = +-1
    Int sign = old_r;
    y0 = old_s * sign;
    x0 = -old_t * sign;
    Mat2 m{s.p, x0, s.q, y0};
    if (m.det() != 1) throw CalcError("internal", "to_infinity_inverse");
    return m;
}

}  // namespace curvecalc
