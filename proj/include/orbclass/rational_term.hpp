#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/errors.hpp"
#include "orbclass/linear_form.hpp"
#include "orbclass/polynomial.hpp"

namespace orbclass {

struct DenominatorFactor {
    LinearForm form;  // normalized: first nonzero coefficient is 1
    int power = 1;
};

/// scalar * numerator / prod(form_i ^ power_i). Denominators are never
/// expanded; forms are stored normalized (scale folded into the scalar),
/// pairwise non-proportional, in a deterministic order.
class RationalTerm {
public:
    RationalTerm(Rational scalar, Polynomial numerator,
                 const std::vector<DenominatorFactor>& denominator)
        : scalar_(std::move(scalar)), numerator_(std::move(numerator)),
          denominator_() {
        std::map<LinearForm, int> merged;
        for (const auto& f : denominator) {
            if (f.power < 0)
                throw std::invalid_argument("negative denominator power");
            if (f.power == 0) continue;
            if (f.form.is_zero())
                throw std::invalid_argument("zero linear form in denominator");
            if (f.form.vars() != numerator_.vars())
                throw std::invalid_argument("denominator variable list mismatch");
            auto [unit, scale] = f.form.normalized();
            scalar_ /= rational_pow(scale, f.power);
            merged[unit] += f.power;
        }
        for (auto& [form, power] : merged)
            denominator_.push_back({form, power});
    }

    static RationalTerm zero(std::vector<std::string> vars) {
        return RationalTerm(1, Polynomial::zero(std::move(vars)), {});
    }

    const Rational& scalar() const { return scalar_; }
    const Polynomial& numerator() const { return numerator_; }
    const std::vector<DenominatorFactor>& denominator() const { return denominator_; }
    const std::vector<std::string>& vars() const { return numerator_.vars(); }
    bool is_zero() const { return scalar_ == 0 || numerator_.is_zero(); }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational value = scalar_ * numerator_.evaluate(point);
        for (const auto& f : denominator_) {
            Rational d = f.form.evaluate(point);
            if (d == 0)
                throw std::invalid_argument("evaluation point on a denominator zero set");
            value /= rational_pow(d, f.power);
        }
        return value;
    }

    RationalTerm swap_vars() const {
        std::vector<DenominatorFactor> denom;
        denom.reserve(denominator_.size());
        for (const auto& f : denominator_)
            denom.push_back({f.form.swap_vars(), f.power});
        return RationalTerm(scalar_, numerator_.swap_vars(), denom);
    }

    /// Denominator expanded to a single polynomial (scalar not included).
    Polynomial denominator_polynomial() const {
        Polynomial d = Polynomial::constant(vars(), 1);
        for (const auto& f : denominator_)
            d = d * f.form.to_polynomial().pow(f.power);
        return d;
    }

    /// Cancels denominator factors that divide the numerator exactly. Not
    /// applied automatically: sums keep their least-common-multiple shape.
    RationalTerm reduced() const {
        if (numerator_.is_zero()) return *this;
        Polynomial numer = numerator_ * scalar_;
        std::vector<DenominatorFactor> denom;
        for (const auto& f : denominator_) {
            int remaining = f.power;
            Polynomial fp = f.form.to_polynomial();
            while (remaining > 0) {
                auto q = try_divide(numer, fp);
                if (!q) break;
                numer = *q;
                --remaining;
            }
            if (remaining > 0) denom.push_back({f.form, remaining});
        }
        return RationalTerm(1, numer, denom);
    }

private:
    Rational scalar_;
    Polynomial numerator_;
    std::vector<DenominatorFactor> denominator_;
};

struct RationalTermSum {
    std::vector<std::string> vars;
    std::vector<RationalTerm> terms;

    void push(RationalTerm t) {
        if (t.vars() != vars)
            throw std::invalid_argument("term variable list mismatch");
        terms.push_back(std::move(t));
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational total(0);
        for (const auto& t : terms) total += t.evaluate(point);
        return total;
    }
};

/// Exact single-term form of a sum: the denominator is the least common
/// multiple of the term denominators (per-form maximum power) and the
/// numerator is assembled exactly. No cancellation is attempted, so e.g.
/// 1/v1 + (-1)/v1 yields numerator 0 over denominator v1.
inline RationalTerm sum_terms(const RationalTermSum& sum) {
    std::map<LinearForm, int> lcm;
    for (const auto& t : sum.terms)
        for (const auto& f : t.denominator()) {
            auto it = lcm.find(f.form);
            if (it == lcm.end()) lcm.emplace(f.form, f.power);
            else it->second = std::max(it->second, f.power);
        }

    Polynomial numer = Polynomial::zero(sum.vars);
    for (const auto& t : sum.terms) {
        Polynomial part = t.numerator() * t.scalar();
        for (const auto& [form, power] : lcm) {
            int have = 0;
            for (const auto& f : t.denominator())
                if (f.form == form) { have = f.power; break; }
            if (power > have)
                part = part * form.to_polynomial().pow(power - have);
        }
        numer += part;
    }

    std::vector<DenominatorFactor> denom;
    for (const auto& [form, power] : lcm) denom.push_back({form, power});
    return RationalTerm(1, std::move(numer), denom);
}

/// t(v1,v2) + t(v2,v1) as a two-term sum.
inline RationalTermSum symmetrize(const RationalTerm& t) {
    if (t.vars().size() != 2)
        throw std::invalid_argument("symmetrize requires arity 2");
    RationalTermSum out{t.vars(), {}};
    out.push(t);
    out.push(t.swap_vars());
    return out;
}

/// Exact equality as rational functions: combine a - b over a common
/// denominator and test the numerator.
inline bool same_function(const RationalTerm& a, const RationalTerm& b) {
    RationalTermSum diff{a.vars(), {}};
    diff.push(a);
    diff.push(RationalTerm(-b.scalar(), b.numerator(), b.denominator()));
    return sum_terms(diff).numerator().is_zero();
}

inline bool same_function(const RationalTermSum& a, const RationalTermSum& b) {
    RationalTermSum diff{a.vars, {}};
    for (const auto& t : a.terms) diff.push(t);
    for (const auto& t : b.terms)
        diff.push(RationalTerm(-t.scalar(), t.numerator(), t.denominator()));
    return sum_terms(diff).numerator().is_zero();
}

} // namespace orbclass
