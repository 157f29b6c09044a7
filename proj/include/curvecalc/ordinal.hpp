#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace curvecalc {

/// An ordinal below omega^omega in Cantor normal form: exponent -> coefficient,
/// kept sparse (no zero coefficients).
class Ordinal {
public:
    Ordinal() = default;
    static Ordinal natural(std::int64_t n);
    static Ordinal omega_pow(int k, std::int64_t coeff = 1);

    bool is_zero() const { return terms_.empty(); }
    std::int64_t coefficient(int exponent) const;
    /// Terms by descending exponent.
    std::vector<std::pair<int, std::int64_t>> terms() const;
    int degree() const;  // -1 for zero

    /// Hessenberg sum.
    Ordinal operator+(const Ordinal& o) const;
    Ordinal& operator+=(const Ordinal& o);
    Ordinal times(std::int64_t n) const;

    std::strong_ordering operator<=>(const Ordinal& o) const;
    bool operator==(const Ordinal& o) const { return terms_ == o.terms_; }

    /// "w^4*3 + w*2 + 1"; zero prints as "0".
    std::string str() const;

private:
    std::map<int, std::int64_t, std::greater<int>> terms_;
};

Ordinal natural_sum(const Ordinal& a, const Ordinal& b);

}  // namespace curvecalc
