#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/orbit_class.hpp"

namespace orbclass {

// ---------------------------------------------------------------------------
// Weierstrass elliptic surfaces: orbit degrees of (A, B) data with marked
// singular fibers, classified by Kodaira type.
// ---------------------------------------------------------------------------

/// Vanishing orders of the two Weierstrass coefficients at one marked fiber.
struct FiberDatum {
    std::string label;
    long long ord_a = 0;
    long long ord_b = 0;
};

enum class KodairaType { I_N, II, III, IV, I_N_star, IV_star, III_star, II_star };

inline const std::vector<KodairaType>& kodaira_types() {
    static const std::vector<KodairaType> all = {
        KodairaType::I_N,     KodairaType::II,       KodairaType::III,
        KodairaType::IV,      KodairaType::I_N_star, KodairaType::IV_star,
        KodairaType::III_star, KodairaType::II_star};
    return all;
}

inline std::string kodaira_label(KodairaType t) {
    switch (t) {
        case KodairaType::I_N: return "I_N";
        case KodairaType::II: return "II";
        case KodairaType::III: return "III";
        case KodairaType::IV: return "IV";
        case KodairaType::I_N_star: return "I_N*";
        case KodairaType::IV_star: return "IV*";
        case KodairaType::III_star: return "III*";
        case KodairaType::II_star: return "II*";
    }
    throw internal_error("unhandled Kodaira type");
}

inline KodairaType parse_kodaira(const std::string& s) {
    if (s == "I_N" || s == "I") return KodairaType::I_N;
    if (s == "II") return KodairaType::II;
    if (s == "III") return KodairaType::III;
    if (s == "IV") return KodairaType::IV;
    if (s == "I_N*" || s == "I*") return KodairaType::I_N_star;
    if (s == "IV*") return KodairaType::IV_star;
    if (s == "III*") return KodairaType::III_star;
    if (s == "II*") return KodairaType::II_star;
    throw validation_error(validation_error::code::bad_argument,
                           "unknown Kodaira type '" + s + "'");
}

/// The fiber invariant c = min(ord_A/2, ord_B/3).
inline Rational fiber_invariant(long long ord_a, long long ord_b) {
    Rational ca = make_rational(ord_a, 2);
    Rational cb = make_rational(ord_b, 3);
    return ca < cb ? ca : cb;
}

inline Rational kodaira_c(KodairaType t) {
    switch (t) {
        case KodairaType::I_N: return 0;
        case KodairaType::II: return make_rational(1, 3);
        case KodairaType::III: return make_rational(1, 2);
        case KodairaType::IV: return make_rational(2, 3);
        case KodairaType::I_N_star: return 1;
        case KodairaType::IV_star: return make_rational(4, 3);
        case KodairaType::III_star: return make_rational(3, 2);
        case KodairaType::II_star: return make_rational(5, 3);
    }
    throw internal_error("unhandled Kodaira type");
}

/// Minimal (ord_A, ord_B) pair realizing each type.
inline std::pair<long long, long long> kodaira_witness(KodairaType t) {
    switch (t) {
        case KodairaType::I_N: return {0, 0};
        case KodairaType::II: return {1, 1};
        case KodairaType::III: return {1, 2};
        case KodairaType::IV: return {2, 2};
        case KodairaType::I_N_star: return {2, 3};
        case KodairaType::IV_star: return {3, 4};
        case KodairaType::III_star: return {3, 5};
        case KodairaType::II_star: return {4, 5};
    }
    throw internal_error("unhandled Kodaira type");
}

/// Minimal fibers have c < 2, and the possible values of min(a/2, b/3) below
/// 2 are exactly the eight classified ones.
inline std::optional<KodairaType> kodaira_type_from_c(const Rational& c) {
    for (KodairaType t : kodaira_types())
        if (kodaira_c(t) == c) return t;
    return std::nullopt;
}

/// One fiber's share of the degree deficit: c^2 (3n - c).
inline Rational fiber_contribution(long long n, const Rational& c) {
    return c * c * (Rational(3 * n) - c);
}

inline std::pair<Rational, Rational> kodaira_contribution(long long n, KodairaType t) {
    Rational c = kodaira_c(t);
    return {c, fiber_contribution(n, c)};
}

struct FiberReport {
    FiberDatum fiber;
    Rational c;
    std::optional<KodairaType> type;  // absent when c >= 2 (non-minimal)
    Rational contribution;
};

struct EllipticResult {
    long long n = 1;
    EquivariantClass cls;
    Rational degree;
    std::vector<FiberReport> fibers;
    std::vector<std::string> notes;
};

inline Representation elliptic_rep(long long n) {
    return Representation{{{4 * n, 0}, {6 * n, 0}}};
}

/// Closed form for the stabilizer-weighted orbit degree:
/// 2^(4n+3) 3^(6n+1) n (4n^3 - sum of fiber contributions).
inline Rational elliptic_closed_degree(long long n, const std::vector<FiberDatum>& fibers) {
    Rational deficit(0);
    for (const auto& f : fibers)
        deficit += fiber_contribution(n, fiber_invariant(f.ord_a, f.ord_b));
    return Rational(integer_pow(2, 4 * n + 3)) * Rational(integer_pow(3, 6 * n + 1)) *
           Rational(n) * (Rational(4 * n * n * n) - deficit);
}

/// Runs the generic engine on the Weierstrass datum and checks the result
/// against the closed form before reporting it.
inline EllipticResult elliptic_result(long long n, std::vector<FiberDatum> fibers) {
    if (n < 1)
        throw validation_error(validation_error::code::bad_argument,
                               "the fibration parameter n must be positive");
    for (std::size_t i = 0; i < fibers.size(); ++i)
        if (fibers[i].label.empty()) fibers[i].label = "f" + std::to_string(i + 1);

    Representation rep = elliptic_rep(n);
    OrbitDatum datum;
    datum.nonzero = {true, true};
    datum.a_complete = true;
    for (const auto& f : fibers) datum.points.push_back({f.label, {f.ord_a, f.ord_b}});

    EllipticResult out;
    out.n = n;
    ClassResult engine = orbit_class(rep, datum);
    out.cls = engine.cls;
    out.notes = engine.notes;
    out.degree = projective_degree(engine.cls, rep, {2, 3});
    if (out.degree != elliptic_closed_degree(n, fibers))
        throw internal_error("engine degree disagrees with the closed-form fiber count");

    for (const auto& f : fibers) {
        FiberReport report{f, fiber_invariant(f.ord_a, f.ord_b), std::nullopt, 0};
        report.type = kodaira_type_from_c(report.c);
        report.contribution = fiber_contribution(n, report.c);
        if (!report.type)
            out.notes.push_back("fiber '" + f.label +
                                "' has c >= 2: the Weierstrass datum is non-minimal "
                                "at that fiber, so no Kodaira type is assigned");
        out.fibers.push_back(std::move(report));
    }
    return out;
}

inline Rational elliptic_degree(long long n, const std::vector<FiberDatum>& fibers) {
    return elliptic_result(n, fibers).degree;
}

// ---------------------------------------------------------------------------
// Rational self-maps of P^1: orbit classes from fixed-point profiles.
// ---------------------------------------------------------------------------

struct RatmapResult {
    long long n = 2;
    std::vector<long long> profile;
    EquivariantClass cls;
    Rational degree;
    std::vector<std::string> notes;
};

inline Representation ratmap_rep(long long n) {
    return Representation{{{n - 1, 0}, {n, -1}}};
}

/// Expanded closed form of the class:
/// n(n+1)(n-1)^2 prod_{j=1}^{n-2}(j v1+(n-1-j)v2) prod_{j=1}^{n}((j-1)v1+(n-j)v2).
inline Polynomial ratmap_closed_class(long long n) {
    Polynomial out = Polynomial::constant(gl2_vars(), Rational(n * (n + 1) * (n - 1) * (n - 1)));
    for (long long j = 1; j <= n - 2; ++j) {
        Polynomial factor(gl2_vars());
        factor.add_term({1, 0}, j);
        factor.add_term({0, 1}, n - 1 - j);
        out = out * factor;
    }
    for (long long j = 1; j <= n; ++j) {
        Polynomial factor(gl2_vars());
        factor.add_term({1, 0}, j - 1);
        factor.add_term({0, 1}, n - j);
        out = out * factor;
    }
    return out;
}

inline RatmapResult ratmap_result(long long n, const std::vector<long long>& profile) {
    if (n < 2)
        throw validation_error(validation_error::code::bad_argument,
                               "the map degree n must be at least 2");
    long long total = 0;
    for (long long j : profile) {
        if (j < 1)
            throw validation_error(validation_error::code::bad_argument,
                                   "fixed-point multiplicities must be positive");
        total += j;
    }
    if (total != n + 1)
        throw validation_error(validation_error::code::profile_sum_mismatch,
                               "fixed-point multiplicities sum to " + std::to_string(total) +
                                   ", expected n+1 = " + std::to_string(n + 1));

    Representation rep = ratmap_rep(n);
    OrbitDatum datum;
    datum.nonzero = {true, true};
    datum.a_complete = true;
    for (std::size_t i = 0; i < profile.size(); ++i)
        datum.points.push_back({"u" + std::to_string(i + 1), {0, profile[i]}});

    RatmapResult out;
    out.n = n;
    out.profile = profile;
    ClassResult engine = orbit_class(rep, datum);
    out.cls = engine.cls;
    out.notes = engine.notes;
    if (engine.cls.poly != ratmap_closed_class(n))
        throw internal_error("engine class disagrees with the closed product");

    out.degree = projective_degree(engine.cls, rep, {1, 1}) / Rational(n - 1);
    if (out.degree != Rational(n * (n + 1) * (n - 1)))
        throw internal_error("specialized degree disagrees with n(n+1)(n-1)");
    out.notes.push_back(
        "degree follows the reparameterization convention: the raw "
        "specialization at v1=v2=h/(n-1) is divided by n-1");
    return out;
}

// ---------------------------------------------------------------------------
// Splitting a pair of binary forms (F, G) of degree n into the divergence
// I (degree n-1) and the fixed-point form J (degree n+1).
// ---------------------------------------------------------------------------

inline std::vector<std::string> binary_vars() { return {"x", "y"}; }

/// c_0 x^n + c_1 x^(n-1) y + ... + c_n y^n.
inline Polynomial binary_form(const std::vector<Rational>& coeffs) {
    if (coeffs.empty())
        throw validation_error(validation_error::code::bad_argument,
                               "empty coefficient list");
    Polynomial p(binary_vars());
    int n = static_cast<int>(coeffs.size()) - 1;
    for (int k = 0; k <= n; ++k) p.add_term({n - k, k}, coeffs[static_cast<std::size_t>(k)]);
    return p;
}

struct HomPair {
    Polynomial f{binary_vars()};
    Polynomial g{binary_vars()};
};

struct SplitResult {
    long long n = 0;
    Polynomial divergence{binary_vars()};   // I, degree n-1
    Polynomial fixed_form{binary_vars()};   // J, degree n+1
};

/// I = dF/dx + dG/dy and J = yF - xG, with the Euler inverse identities
/// (n+1)F = dJ/dy + xI and (n+1)G = yI - dJ/dx checked on the output.
inline SplitResult split_hom(const HomPair& h) {
    if (h.f.is_zero() && h.g.is_zero())
        throw validation_error(validation_error::code::zero_vector,
                               "F and G must not both be zero");
    long long n = -1;
    for (const Polynomial* p : {&h.f, &h.g}) {
        if (p->is_zero()) continue;
        if (!p->is_homogeneous())
            throw validation_error(validation_error::code::bad_argument,
                                   "F and G must be homogeneous");
        if (n < 0) n = p->total_degree();
        else if (n != p->total_degree())
            throw validation_error(validation_error::code::bad_argument,
                                   "F and G must have equal degree");
    }

    Polynomial x = Polynomial::variable(binary_vars(), 0);
    Polynomial y = Polynomial::variable(binary_vars(), 1);
    SplitResult out;
    out.n = n;
    out.divergence = h.f.derivative(0) + h.g.derivative(1);
    out.fixed_form = y * h.f - x * h.g;

    Rational scale(n + 1);
    if (out.fixed_form.derivative(1) + x * out.divergence != h.f * scale ||
        y * out.divergence - out.fixed_form.derivative(0) != h.g * scale)
        throw internal_error("Euler inverse identities failed on the splitting");
    return out;
}

/// A point [p:q] of the projective line with rational coordinates.
struct ProjectiveRoot {
    Rational p, q;
};

/// Reads off the fixed-point profile from a claimed factorization of J.
/// Each root's exact multiplicity is recomputed by repeated division, the
/// multiplicities must exhaust deg J, and when the divergence form is
/// supplied, a root of multiplicity >= 2 where it vanishes is rejected: such
/// a pair (F, G) has a common factor and does not define a degree-n map.
inline std::vector<long long> profile_from_roots(const Polynomial& fixed_form,
                                                 const std::vector<ProjectiveRoot>& roots,
                                                 const Polynomial* divergence = nullptr) {
    if (fixed_form.is_zero() || !fixed_form.is_homogeneous())
        throw validation_error(validation_error::code::bad_argument,
                               "the fixed-point form must be a nonzero binary form");
    std::vector<std::pair<Rational, Rational>> seen;
    std::vector<long long> profile;
    long long total = 0;
    for (const auto& root : roots) {
        if (root.p == 0 && root.q == 0)
            throw validation_error(validation_error::code::bad_argument,
                                   "a projective root needs a nonzero coordinate");
        std::pair<Rational, Rational> canon =
            root.q != 0 ? std::make_pair(root.p / root.q, Rational(1))
                        : std::make_pair(Rational(1), Rational(0));
        for (const auto& prev : seen)
            if (prev == canon)
                throw validation_error(validation_error::code::bad_argument,
                                       "duplicate projective root");
        seen.push_back(canon);

        Polynomial line(binary_vars());
        line.add_term({1, 0}, root.q);
        line.add_term({0, 1}, -root.p);
        long long mult = 0;
        Polynomial rest = fixed_form;
        while (auto quotient = try_divide(rest, line)) {
            rest = *quotient;
            ++mult;
        }
        if (mult == 0)
            throw validation_error(validation_error::code::bad_argument,
                                   "claimed root does not divide the fixed-point form");
        if (mult >= 2 && divergence &&
            divergence->evaluate({root.p, root.q}) == 0)
            throw validation_error(
                validation_error::code::degenerate_fixed_point,
                "a fixed point of multiplicity >= 2 where the divergence form "
                "also vanishes: F and G share a factor, so the pair does not "
                "define a map of this degree");
        profile.push_back(mult);
        total += mult;
    }
    if (total != fixed_form.total_degree())
        throw validation_error(validation_error::code::profile_sum_mismatch,
                               "root multiplicities sum to " + std::to_string(total) +
                                   " but the fixed-point form has degree " +
                                   std::to_string(fixed_form.total_degree()));
    return profile;
}

} // namespace orbclass
