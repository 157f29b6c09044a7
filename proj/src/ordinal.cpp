#include "curvecalc/ordinal.hpp"

#include "curvecalc/error.hpp"
#include "curvecalc/slope.hpp"

namespace curvecalc {

Ordinal Ordinal::natural(std::int64_t n) {
    if (n < 0) throw CalcError("invalid ordinal", "negative coefficient");
    return omega_pow(0, n);
}

Ordinal Ordinal::omega_pow(int k, std::int64_t coeff) {
    if (k < 0 || coeff < 0) throw CalcError("invalid ordinal", "negative exponent or coefficient");
    Ordinal o;
    if (coeff > 0) o.terms_[k] = coeff;
    return o;
}

std::int64_t Ordinal::coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? 0 : it->second;
}

std::vector<std::pair<int, std::int64_t>> Ordinal::terms() const { return {terms_.begin(), terms_.end()}; }

int Ordinal::degree() const { return terms_.empty() ? -1 : terms_.begin()->first; }

Ordinal& Ordinal::operator+=(const Ordinal& o) {
    for (auto [e, c] : o.terms_) terms_[e] = checked_add(terms_[e], c);
    return *this;
}

Ordinal Ordinal::operator+(const Ordinal& o) const {
    Ordinal r = *this;
    r += o;
    return r;
}

Ordinal Ordinal::times(std::int64_t n) const {
    if (n < 0) throw CalcError("invalid ordinal", "negative multiplier");
    Ordinal r;
    if (n == 0) return r;
    for (auto [e, c] : terms_) r.terms_[e] = checked_mul(c, n);
    return r;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& o) const {
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first <=> b->first;
        if (a->second != b->second) return a->second <=> b->second;
    }
    if (a != terms_.end()) return std::strong_ordering::greater;
    if (b != o.terms_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::string Ordinal::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string t;
        if (e == 0) {
            t = std::to_string(c);
        } else {
            t = e == 1 ? "w" : "w^" + std::to_string(e);
            if (c != 1) t += "*" + std::to_string(c);
        }
        out += t;
    }
    return out;
}

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) { return a + b; }

}  // namespace curvecalc
