#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace curvecalc {

using Int = std::int64_t;

/// Unoriented essential curve on the torus: a coprime pair (p, q) with q >= 0,
/// and (1, 0) standing for the slope at infinity.
struct Slope {
    Int p = 1;
    Int q = 0;

    static Slope make(Int p, Int q);     // normalizes; throws on (0,0) or non-coprime input
    static Slope parse(const std::string& s);  // "p/q" or "inf"
    std::string str() const;
    Int height() const;                  // |p| + |q|
    auto operator<=>(const Slope&) const = default;
};

/// Integer 2x2 matrix [[a, b], [c, d]]; the torus group elements have det 1.
struct Mat2 {
    Int a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    Int det() const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 scaled(Int k) const;
    Mat2 inverse() const;  // requires det 1
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    std::string str() const;
    auto operator<=>(const Mat2&) const = default;
};

/// Möbius action on slopes: (p, q) -> (a p + b q, c p + d q), normalized.
Slope act(const Mat2& m, const Slope& s);

/// Dehn twist about the curve of slope (p, q): [[1 - pq, p^2], [-q^2, 1 + pq]].
Mat2 twist(const Slope& s);
/// The nilpotent part N with twist(s)^n = I + n N.
Mat2 twist_log(const Slope& s);
Mat2 twist_power(const Slope& s, Int n);
/// If m == twist(s)^n for some n, stores n and returns true.
bool twist_exponent(const Mat2& m, const Slope& s, Int& n);
Mat2 power(const Mat2& m, Int n);

/// A matrix in SL(2,Z) sending the slope at infinity to s.
Mat2 to_infinity_inverse(const Slope& s);

Int checked_mul(Int x, Int y);
Int checked_add(Int x, Int y);

}  // namespace curvecalc
