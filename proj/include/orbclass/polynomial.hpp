#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/errors.hpp"
#include "orbclass/rational.hpp"

namespace orbclass {

using Exponents = std::vector<int>;

/// Graded lexicographic order: compare total degree first, then the exponent
/// vector lexicographically (earlier variables weigh more).
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Sparse multivariate polynomial over Q with a fixed, named variable list.
/// Zero coefficients are never stored, so equality is plain map equality.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Polynomial zero(std::vector<std::string> vars) {
        return Polynomial(std::move(vars));
    }

    static Polynomial constant(std::vector<std::string> vars, const Rational& c) {
        Polynomial p(std::move(vars));
        p.add_term(Exponents(p.arity(), 0), c);
        return p;
    }

    static Polynomial variable(std::vector<std::string> vars, std::size_t index) {
        Polynomial p(std::move(vars));
        if (index >= p.arity())
            throw std::invalid_argument("variable index out of range");
        Exponents e(p.arity(), 0);
        e[index] = 1;
        p.add_term(e, 1);
        return p;
    }

    std::size_t arity() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& exp, const Rational& coef) {
        if (exp.size() != arity())
            throw std::invalid_argument("exponent arity mismatch");
        for (int e : exp)
            if (e < 0) throw std::invalid_argument("negative exponent");
        if (coef == 0) return;
        auto [it, inserted] = terms_.emplace(exp, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Total degree; 0 for the zero polynomial.
    long long total_degree() const {
        long long best = 0;
        for (const auto& [e, c] : terms_) {
            long long d = 0;
            for (int x : e) d += x;
            best = std::max(best, d);
        }
        return best;
    }

    bool is_homogeneous() const {
        std::optional<long long> deg;
        for (const auto& [e, c] : terms_) {
            long long d = 0;
            for (int x : e) d += x;
            if (!deg) deg = d;
            else if (*deg != d) return false;
        }
        return true;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_same_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_vars(b);
        Polynomial out(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& s) {
        Polynomial out(a.vars_);
        if (s == 0) return out;
        for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, c * s);
        return out;
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& a) { return a * s; }

    friend Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }

    bool operator==(const Polynomial& o) const {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(long long e) const {
        if (e < 0) throw std::invalid_argument("negative polynomial power");
        Polynomial result = constant(vars_, 1);
        Polynomial base = *this;
        for (long long n = e; n > 0; n >>= 1) {
            if (n & 1) result = result * base;
            if (n > 1) base = base * base;
        }
        return result;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != arity())
            throw std::invalid_argument("evaluation point arity mismatch");
        Rational total(0);
        for (const auto& [e, c] : terms_) {
            Rational v = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) v *= rational_pow(point[i], e[i]);
            total += v;
        }
        return total;
    }

    /// Compose: substitute images[i] for variable i. Images share a common
    /// variable list (which becomes the result's list).
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        if (images.size() != arity())
            throw std::invalid_argument("substitution image count mismatch");
        for (std::size_t i = 1; i < images.size(); ++i)
            images[i].check_same_vars(images[0]);
        std::vector<std::string> out_vars =
            images.empty() ? vars_ : images[0].vars_;
        Polynomial out(out_vars);
        for (const auto& [e, c] : terms_) {
            Polynomial term = constant(out_vars, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) term = term * images[i].pow(e[i]);
            out += term;
        }
        return out;
    }

    /// Permute variables: result variable perm[i] gets the exponent variable i
    /// had. Variable names stay fixed; only exponents move.
    Polynomial permute_vars(const std::vector<std::size_t>& perm) const {
        if (perm.size() != arity())
            throw std::invalid_argument("permutation arity mismatch");
        Polynomial out(vars_);
        for (const auto& [e, c] : terms_) {
            Exponents pe(e.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) pe[perm[i]] = e[i];
            out.add_term(pe, c);
        }
        return out;
    }

    /// Swap the two variables of a binary polynomial.
    Polynomial swap_vars() const {
        if (arity() != 2)
            throw std::invalid_argument("swap_vars requires arity 2");
        return permute_vars({1, 0});
    }

    bool is_symmetric() const { return arity() == 2 && *this == swap_vars(); }

    /// Partial derivative with respect to variable `index`.
    Polynomial derivative(std::size_t index) const {
        if (index >= arity())
            throw std::invalid_argument("derivative index out of range");
        Polynomial out(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[index] == 0) continue;
            Exponents d(e);
            d[index] -= 1;
            out.add_term(d, c * e[index]);
        }
        return out;
    }

    /// Canonical text: terms in descending graded-lex order, coefficients as
    /// reduced fractions, '*' between factors, '^' for powers, no spaces.
    /// Examples: "-5/3*v1^2*v2", "v1^2-v2^2", "x+y+2*z", "0".
    std::string to_text() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rational a = c;
            if (out.empty()) {
                if (a < 0) { out += '-'; a = -a; }
            } else {
                out += (a < 0) ? '-' : '+';
                if (a < 0) a = -a;
            }
            bool has_vars = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (has_vars) mono += '*';
                mono += vars_[i];
                if (e[i] != 1) mono += '^' + std::to_string(e[i]);
                has_vars = true;
            }
            if (!has_vars) {
                out += to_string(a);
            } else if (a == 1) {
                out += mono;
            } else {
                out += to_string(a) + '*' + mono;
            }
        }
        return out;
    }

    void check_same_vars(const Polynomial& o) const {
        if (vars_ != o.vars_)
            throw std::invalid_argument("polynomial variable list mismatch");
    }

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

namespace detail {
inline bool exponents_divide(const Exponents& divisor, const Exponents& dividend) {
    for (std::size_t i = 0; i < divisor.size(); ++i)
        if (divisor[i] > dividend[i]) return false;
    return true;
}
} // namespace detail

/// Attempts p / q; returns the quotient only when the division is exact.
/// Single-divisor reduction on graded-lex leading terms: if q divides p then
/// every intermediate leading term is divisible by q's, so the loop below
/// terminates at zero exactly in that case.
inline std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& q) {
    p.check_same_vars(q);
    if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Polynomial quotient(p.vars());
    Polynomial rest = p;
    const auto& qlead = *q.terms().rbegin();
    while (!rest.is_zero()) {
        const auto& rlead = *rest.terms().rbegin();
        if (!detail::exponents_divide(qlead.first, rlead.first))
            return std::nullopt;
        Exponents e(rlead.first);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= qlead.first[i];
        Rational c = rlead.second / qlead.second;
        Polynomial step(p.vars());
        step.add_term(e, c);
        quotient += step;
        rest -= step * q;
    }
    return quotient;
}

/// p / q, throwing nonzero_remainder_error unless q divides p exactly.
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
    auto result = try_divide(p, q);
    if (!result)
        throw nonzero_remainder_error("exact_divide: nonzero remainder");
    return *result;
}

struct Specialization {
    Rational coefficient;
    long long power = 0;
};

/// For homogeneous p of degree D, p(t*scale, ..., t*scale) = coefficient*t^D.
inline Specialization specialize_equal(const Polynomial& p, const Rational& scale) {
    if (!p.is_homogeneous())
        throw std::invalid_argument("specialize_equal requires a homogeneous polynomial");
    Specialization out;
    if (p.is_zero()) return out;
    out.power = p.total_degree();
    Rational sum(0);
    for (const auto& [e, c] : p.terms()) sum += c;
    out.coefficient = sum * rational_pow(scale, out.power);
    return out;
}

} // namespace orbclass
