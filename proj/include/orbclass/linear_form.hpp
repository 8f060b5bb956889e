#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orbclass/polynomial.hpp"
#include "orbclass/rational.hpp"

namespace orbclass {

/// Homogeneous degree-1 form, the only denominator shape the term algebra
/// needs. Kept separate from Polynomial so denominators stay factored.
class LinearForm {
public:
    LinearForm(std::vector<std::string> vars, std::vector<Rational> coeffs)
        : vars_(std::move(vars)), coeffs_(std::move(coeffs)) {
        if (vars_.size() != coeffs_.size())
            throw std::invalid_argument("linear form arity mismatch");
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    std::size_t arity() const { return coeffs_.size(); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != arity())
            throw std::invalid_argument("evaluation point arity mismatch");
        Rational v(0);
        for (std::size_t i = 0; i < arity(); ++i) v += coeffs_[i] * point[i];
        return v;
    }

    Polynomial to_polynomial() const {
        Polynomial p(vars_);
        for (std::size_t i = 0; i < arity(); ++i) {
            Exponents e(arity(), 0);
            e[i] = 1;
            p.add_term(e, coeffs_[i]);
        }
        return p;
    }

    /// Scale so the first nonzero coefficient becomes 1; returns the factor
    /// that was divided out. Proportional forms normalize identically.
    std::pair<LinearForm, Rational> normalized() const {
        for (const auto& c : coeffs_) {
            if (c == 0) continue;
            std::vector<Rational> scaled(coeffs_);
            for (auto& x : scaled) x /= c;
            return {LinearForm(vars_, std::move(scaled)), c};
        }
        throw std::invalid_argument("cannot normalize the zero linear form");
    }

    LinearForm swap_vars() const {
        if (arity() != 2)
            throw std::invalid_argument("swap_vars requires arity 2");
        return LinearForm(vars_, {coeffs_[1], coeffs_[0]});
    }

    bool operator==(const LinearForm& o) const {
        return vars_ == o.vars_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const LinearForm& o) const { return !(*this == o); }

    /// Deterministic order for denominator bookkeeping.
    bool operator<(const LinearForm& o) const {
        return std::lexicographical_compare(coeffs_.begin(), coeffs_.end(),
                                            o.coeffs_.begin(), o.coeffs_.end());
    }

    std::string to_text() const { return to_polynomial().to_text(); }

private:
    std::vector<std::string> vars_;
    std::vector<Rational> coeffs_;
};

} // namespace orbclass
