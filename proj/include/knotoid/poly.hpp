#pragma once

#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "knotoid/errors.hpp"

namespace knotoid {

using BigInt = boost::multiprecision::cpp_int;

// The closed variable set used by every invariant in the library.
enum class Var : int { A = 0, U = 1, V = 2, Q = 3, Z = 4 };

inline constexpr int kVarCount = 5;
inline constexpr std::array<char, kVarCount> kVarNames = {'A', 'u', 'v', 'q', 'z'};

// One exponent per variable, in the fixed order A, u, v, q, z.
using Exponents = std::array<int, kVarCount>;

// Exact multivariate Laurent polynomial over the integers. Terms are kept in
// a map with exponent vectors ordered descending-lexicographically, which is
// also the canonical rendering order (so "-A^10 + A^6 + A^4").
class LaurentPoly {
public:
    struct ExpGreater {
        bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
    };
    using TermMap = std::map<Exponents, BigInt, ExpGreater>;

    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly constant(BigInt c) {
        LaurentPoly p;
        if (c != 0) p.terms_[Exponents{0, 0, 0, 0, 0}] = std::move(c);
        return p;
    }

    static LaurentPoly one() { return constant(1); }

    static LaurentPoly monomial(BigInt c, const Exponents& e) {
        LaurentPoly p;
        if (c != 0) p.terms_[e] = std::move(c);
        return p;
    }

    static LaurentPoly variable(Var v, int exponent = 1, BigInt c = 1) {
        Exponents e{0, 0, 0, 0, 0};
        e[static_cast<int>(v)] = exponent;
        return monomial(std::move(c), e);
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0, 0, 0} &&
               terms_.begin()->second == 1;
    }

    // Single term with coefficient +1 or -1; these are the values that can be
    // substituted into negative exponents.
    bool is_unit_monomial() const {
        if (terms_.size() != 1) return false;
        const BigInt& c = terms_.begin()->second;
        return c == 1 || c == -1;
    }

    LaurentPoly& operator+=(const LaurentPoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (int i = 0; i < kVarCount; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& rhs) { return *this = *this * rhs; }

    bool operator==(const LaurentPoly& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const LaurentPoly& rhs) const { return !(*this == rhs); }

    // Strict weak order so polynomials can key maps deterministically.
    bool operator<(const LaurentPoly& rhs) const {
        auto it = terms_.begin();
        auto jt = rhs.terms_.begin();
        for (; it != terms_.end() && jt != rhs.terms_.end(); ++it, ++jt) {
            if (it->first != jt->first) return ExpGreater{}(it->first, jt->first);
            if (it->second != jt->second) return it->second < jt->second;
        }
        return jt != rhs.terms_.end();
    }

    LaurentPoly pow(unsigned n) const {
        LaurentPoly r = one();
        LaurentPoly base = *this;
        while (n > 0) {
            if (n & 1u) r *= base;
            base *= base;
            n >>= 1u;
        }
        return r;
    }

    // Every occurrence of `var` replaced by `value`. Negative exponents are
    // only meaningful when `value` is a single term with coefficient +-1.
    LaurentPoly substitute(Var var, const LaurentPoly& value) const {
        const int vi = static_cast<int>(var);
        LaurentPoly inv;
        bool have_inv = false;
        int min_exp = 0, max_exp = 0;
        for (const auto& [e, c] : terms_) {
            min_exp = std::min(min_exp, e[vi]);
            max_exp = std::max(max_exp, e[vi]);
        }
        if (min_exp < 0) {
            if (!value.is_unit_monomial())
                throw Error(ErrorCode::NegativeExponentSubstitution,
                            std::string("variable ") + kVarNames[vi] +
                                " occurs with a negative exponent and the substituted value is "
                                "not an invertible monomial");
            Exponents e = value.terms_.begin()->first;
            for (int i = 0; i < kVarCount; ++i) e[i] = -e[i];
            inv = monomial(value.terms_.begin()->second, e);  // coefficient is +-1
            have_inv = true;
        }
        // Precompute value^k for the exponent range that actually occurs.
        std::map<int, LaurentPoly> powers;
        powers[0] = one();
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            int k = e[vi];
            auto it = powers.find(k);
            if (it == powers.end()) {
                LaurentPoly p = k > 0 ? value.pow(static_cast<unsigned>(k))
                                      : inv.pow(static_cast<unsigned>(-k));
                it = powers.emplace(k, std::move(p)).first;
            }
            Exponents rest = e;
            rest[vi] = 0;
            r += monomial(c, rest) * it->second;
        }
        (void)have_inv;
        return r;
    }

    // max - min exponent of `var` over the stored terms; empty for the zero
    // polynomial (the -infinity sentinel).
    std::optional<long> span(Var var) const {
        if (terms_.empty()) return std::nullopt;
        const int vi = static_cast<int>(var);
        long lo = terms_.begin()->first[vi], hi = lo;
        for (const auto& [e, c] : terms_) {
            lo = std::min<long>(lo, e[vi]);
            hi = std::max<long>(hi, e[vi]);
        }
        return hi - lo;
    }

    std::optional<int> min_exponent(Var var) const {
        if (terms_.empty()) return std::nullopt;
        const int vi = static_cast<int>(var);
        int lo = terms_.begin()->first[vi];
        for (const auto& [e, c] : terms_) lo = std::min(lo, e[vi]);
        return lo;
    }

    // All exponents of `var` negated; used for the A -> A^-1 symmetry checks.
    LaurentPoly invert_variable(Var var) const {
        const int vi = static_cast<int>(var);
        LaurentPoly r;
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            f[vi] = -f[vi];
            r.terms_[f] = c;
        }
        return r;
    }

    bool depends_on(Var var) const {
        const int vi = static_cast<int>(var);
        for (const auto& [e, c] : terms_)
            if (e[vi] != 0) return true;
        return false;
    }

    // Canonical text rendering, e.g. "-A^10 + A^6 + A^4" or "2u^2 - 1".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            BigInt mag = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            std::string vars = render_vars(e);
            if (vars.empty()) {
                out << mag.str();
            } else {
                if (mag != 1) out << mag.str();
                out << vars;
            }
        }
        return out.str();
    }

    // Exact inverse of to_string().
    static LaurentPoly parse(const std::string& text) {
        LaurentPoly r;
        size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        skip_ws();
        if (i == text.size()) throw Error(ErrorCode::SyntaxError, "empty polynomial");
        if (text.compare(i, 1, "0") == 0 && i + 1 == text.size()) return r;
        bool first = true;
        while (i < text.size()) {
            skip_ws();
            int sign = 1;
            if (!first) {
                if (text[i] == '+') {
                    ++i;
                } else if (text[i] == '-') {
                    sign = -1;
                    ++i;
                } else {
                    throw Error(ErrorCode::SyntaxError, "expected + or - in polynomial: " + text);
                }
                skip_ws();
            } else {
                if (text[i] == '-') {
                    sign = -1;
                    ++i;
                }
                first = false;
            }
            skip_ws();
            // coefficient digits (optional)
            std::string digits;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                digits.push_back(text[i++]);
            BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
            Exponents e{0, 0, 0, 0, 0};
            bool any_var = false;
            while (i < text.size()) {
                int vi = -1;
                for (int k = 0; k < kVarCount; ++k)
                    if (text[i] == kVarNames[k]) vi = k;
                if (vi < 0) break;
                ++i;
                any_var = true;
                int exp = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    int s = 1;
                    if (i < text.size() && text[i] == '-') {
                        s = -1;
                        ++i;
                    }
                    std::string ed;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                        ed.push_back(text[i++]);
                    if (ed.empty())
                        throw Error(ErrorCode::SyntaxError, "missing exponent in: " + text);
                    exp = s * std::stoi(ed);
                }
                if (e[vi] != 0)
                    throw Error(ErrorCode::SyntaxError, "repeated variable in term: " + text);
                e[vi] = exp;
            }
            if (digits.empty() && !any_var)
                throw Error(ErrorCode::SyntaxError, "malformed term in: " + text);
            r.add_term(e, sign < 0 ? BigInt(-coeff) : coeff);
            skip_ws();
        }
        return r;
    }

private:
    static std::string render_vars(const Exponents& e) {
        std::ostringstream out;
        for (int i = 0; i < kVarCount; ++i) {
            if (e[i] == 0) continue;
            out << kVarNames[i];
            if (e[i] != 1) out << '^' << e[i];
        }
        return out.str();
    }

    void add_term(const Exponents& e, BigInt c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TermMap terms_;
};

// Shorthands used throughout the state sums.
inline LaurentPoly poly_A(int exp = 1) { return LaurentPoly::variable(Var::A, exp); }
inline LaurentPoly poly_u(int exp = 1) { return LaurentPoly::variable(Var::U, exp); }
inline LaurentPoly poly_v(int exp = 1) { return LaurentPoly::variable(Var::V, exp); }
inline LaurentPoly poly_q(int exp = 1) { return LaurentPoly::variable(Var::Q, exp); }
inline LaurentPoly poly_z(int exp = 1) { return LaurentPoly::variable(Var::Z, exp); }

// The loop value -A^2 - A^-2.
inline LaurentPoly loop_value() { return -poly_A(2) - poly_A(-2); }

// (-A^3)^k for signed k.
inline LaurentPoly neg_A_cubed_power(long k) {
    Exponents e{0, 0, 0, 0, 0};
    e[0] = static_cast<int>(3 * k);
    return LaurentPoly::monomial((k % 2 == 0) ? 1 : -1, e);
}

}  // namespace knotoid
