#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbclass/errors.hpp"
#include "orbclass/rational_term.hpp"

namespace orbclass {

/// A torus representation: one character of T = G_m^d per coordinate line,
/// plus flags marking which coordinates of the chosen vector are nonzero.
struct CharacterList {
    long long d = 1;
    std::vector<std::vector<Integer>> chars;
    std::vector<bool> support;
};

inline std::vector<std::string> torus_vars(long long d) {
    if (d == 1) return {"x"};
    if (d == 2) return {"x", "y"};
    if (d == 3) return {"x", "y", "z"};
    std::vector<std::string> vars;
    for (long long i = 1; i <= d; ++i) vars.push_back("x" + std::to_string(i));
    return vars;
}

inline void validate_characters(const CharacterList& cl) {
    if (cl.d < 1)
        throw validation_error(validation_error::code::bad_argument,
                               "the torus dimension must be at least 1");
    if (cl.chars.empty())
        throw validation_error(validation_error::code::bad_argument,
                               "no characters given");
    if (cl.support.size() != cl.chars.size())
        throw validation_error(validation_error::code::schema,
                               "support flag count does not match character count");
    bool any = false;
    for (std::size_t i = 0; i < cl.chars.size(); ++i) {
        if (cl.chars[i].size() != static_cast<std::size_t>(cl.d))
            throw validation_error(validation_error::code::schema,
                                   "character " + std::to_string(i) +
                                       " does not have d entries");
        bool zero = true;
        for (const Integer& e : cl.chars[i]) zero = zero && e == 0;
        if (cl.support[i]) {
            any = true;
            if (zero)
                throw validation_error(
                    validation_error::code::zero_character,
                    "character " + std::to_string(i) +
                        " is zero but supported: the torus acts trivially on "
                        "that coordinate and the multiplicity formula does not apply");
        }
    }
    if (!any)
        throw validation_error(validation_error::code::zero_vector,
                               "every coordinate of the vector is flagged zero");
}

namespace detail {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Integer>;

inline QVec to_rational(const ZVec& v) {
    QVec out;
    out.reserve(v.size());
    for (const Integer& e : v) out.emplace_back(e);
    return out;
}

inline Rational dot(const ZVec& a, const QVec& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

inline Rational dot(const QVec& a, const QVec& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline std::size_t row_reduce(QMat& m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        Rational lead = m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank_of(const std::vector<ZVec>& vecs) {
    if (vecs.empty()) return 0;
    QMat m;
    for (const auto& v : vecs) m.push_back(to_rational(v));
    return row_reduce(m);
}

/// Coefficients writing target as a combination of the given vectors, if any.
inline std::optional<QVec> combination(const std::vector<ZVec>& vecs, const ZVec& target) {
    std::size_t d = target.size(), k = vecs.size();
    QMat m(d, QVec(k + 1, Rational(0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < d; ++i) m[i][j] = Rational(vecs[j][i]);
    for (std::size_t i = 0; i < d; ++i) m[i][k] = Rational(target[i]);
    row_reduce(m);
    QVec coeffs(k, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t lead = k + 1;
        for (std::size_t j = 0; j <= k; ++j)
            if (m[i][j] != 0) { lead = j; break; }
        if (lead == k) return std::nullopt;  // inconsistent row 0 = 1
        if (lead < k) coeffs[lead] = m[i][k];
    }
    return coeffs;
}

/// Determinant of a square rational matrix.
inline Rational determinant(QMat m) {
    std::size_t n = m.size();
    Rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != c) {
            std::swap(m[c], m[pivot]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

/// gcd of the absolute values of all maximal minors: the index of the lattice
/// spanned by the (independent) rows inside the saturation of their span.
inline Integer lattice_index(const std::vector<ZVec>& gens) {
    std::size_t r = gens.size(), d = gens.empty() ? 0 : gens[0].size();
    std::vector<std::size_t> cols(r);
    for (std::size_t i = 0; i < r; ++i) cols[i] = i;
    Integer g = 0;
    while (true) {
        QMat m(r, QVec(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) m[i][j] = Rational(gens[i][cols[j]]);
        Rational det = determinant(m);
        if (!is_integer(det)) throw internal_error("non-integer minor of an integer matrix");
        g = boost::multiprecision::gcd(g, abs(numerator(det)));
        // next column combination
        std::size_t k = r;
        while (k > 0 && cols[k - 1] == d - r + (k - 1)) --k;
        if (k == 0) break;
        ++cols[k - 1];
        for (std::size_t j = k; j < r; ++j) cols[j] = cols[j - 1] + 1;
    }
    if (g == 0) throw internal_error("degenerate generator set in a simplicial piece");
    return g;
}

/// Whether target lies in the cone of the given generators (Caratheodory:
/// check independent subsets of size at most max_size for a non-negative
/// combination).
inline bool in_cone(const std::vector<ZVec>& gens, const ZVec& target, std::size_t max_size) {
    std::size_t n = gens.size();
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<ZVec> subset;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(gens[i]);
        if (subset.size() > max_size) continue;
        if (rank_of(subset) != subset.size()) continue;
        auto coeffs = combination(subset, target);
        if (!coeffs) continue;
        bool ok = true;
        for (const Rational& c : *coeffs) ok = ok && c >= 0;
        if (ok) return true;
    }
    return false;
}

inline std::vector<ZVec> extreme_generators(const std::vector<ZVec>& gens, std::size_t rank) {
    std::vector<ZVec> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<ZVec> others;
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) others.push_back(gens[j]);
        if (!in_cone(others, gens[i], rank)) out.push_back(gens[i]);
    }
    return out;
}

/// A nonzero vector in the span of `span_basis` orthogonal to every vector in
/// `wall`, or nullopt when the constraints leave no direction.
inline std::optional<QVec> wall_normal(const std::vector<ZVec>& span_basis,
                                       const std::vector<ZVec>& wall) {
    std::size_t r = span_basis.size(), d = span_basis[0].size();
    QMat m(wall.size(), QVec(r, Rational(0)));
    for (std::size_t i = 0; i < wall.size(); ++i)
        for (std::size_t j = 0; j < r; ++j)
            m[i][j] = dot(wall[i], to_rational(span_basis[j]));
    QMat reduced = m;
    std::size_t rk = row_reduce(reduced);
    if (rk >= r) return std::nullopt;
    // pick a free column and back-substitute
    std::vector<long long> lead_of(r, -1);
    std::size_t row = 0;
    for (std::size_t c = 0; c < r && row < rk; ++c) {
        if (reduced[row][c] != 0) {
            lead_of[c] = static_cast<long long>(row);
            ++row;
        }
    }
    std::size_t free_col = 0;
    while (free_col < r && lead_of[free_col] >= 0) ++free_col;
    QVec coeff(r, Rational(0));
    coeff[free_col] = 1;
    for (std::size_t c = 0; c < r; ++c)
        if (lead_of[c] >= 0)
            coeff[c] = -reduced[static_cast<std::size_t>(lead_of[c])][free_col];
    QVec normal(d, Rational(0));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < d; ++i)
            normal[i] += coeff[j] * Rational(span_basis[j][i]);
    return normal;
}

inline std::vector<ZVec> independent_subset(const std::vector<ZVec>& gens, std::size_t rank) {
    std::vector<ZVec> basis;
    for (const auto& g : gens) {
        basis.push_back(g);
        if (rank_of(basis) != basis.size()) basis.pop_back();
        if (basis.size() == rank) break;
    }
    return basis;
}

struct Facet {
    QVec normal;                 // non-negative on the cone, zero on the facet
    std::vector<ZVec> members;   // generators lying on the facet
};

/// Facets of cone(gens) inside the linear span of gens.
inline std::vector<Facet> facets_of(const std::vector<ZVec>& gens, std::size_t rank) {
    std::vector<ZVec> basis = independent_subset(gens, rank);
    std::vector<Facet> out;
    std::set<std::vector<std::size_t>> seen;
    std::size_t n = gens.size();
    // iterate over (rank-1)-subsets via std::prev_permutation on the mask
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long long>(rank - 1), true);
    do {
        std::vector<ZVec> wall;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) wall.push_back(gens[i]);
        if (rank_of(wall) != rank - 1) continue;
        auto normal = wall_normal(basis, wall);
        if (!normal) continue;
        int sign = 0;
        bool is_facet = true;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            Rational v = dot(gens[i], *normal);
            if (v == 0) members.push_back(i);
            else if (v > 0) { if (sign < 0) { is_facet = false; break; } sign = 1; }
            else { if (sign > 0) { is_facet = false; break; } sign = -1; }
        }
        if (!is_facet || sign == 0) continue;
        if (!seen.insert(members).second) continue;
        Facet f;
        f.normal = *normal;
        if (sign < 0)
            for (Rational& c : f.normal) c = -c;
        for (std::size_t i : members) f.members.push_back(gens[i]);
        out.push_back(std::move(f));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

/// Recursive pulling triangulation: cone off the first extreme generator over
/// the facets not containing it.
inline std::vector<std::vector<ZVec>> pull_triangulate(const std::vector<ZVec>& gens,
                                                       std::size_t rank) {
    std::vector<ZVec> ext = extreme_generators(gens, rank);
    if (rank_of(ext) != rank)
        throw internal_error("extreme generators lost rank during triangulation");
    if (ext.size() == rank) return {ext};
    const ZVec apex = ext.front();
    std::vector<std::vector<ZVec>> pieces;
    for (const Facet& f : facets_of(ext, rank)) {
        if (dot(apex, f.normal) <= 0) continue;
        for (auto piece : pull_triangulate(f.members, rank - 1)) {
            piece.push_back(apex);
            pieces.push_back(std::move(piece));
        }
    }
    return pieces;
}

/// Independently coded evaluation path for the cone volume: pulls the last
/// extreme generator instead of the first, so on non-simplicial cones it
/// walks a different triangulation.
inline std::vector<std::vector<ZVec>> pull_triangulate_last(const std::vector<ZVec>& gens,
                                                            std::size_t rank) {
    std::vector<ZVec> ext = extreme_generators(gens, rank);
    if (ext.size() == rank) return {ext};
    const ZVec apex = ext.back();
    std::vector<std::vector<ZVec>> pieces;
    for (const Facet& f : facets_of(ext, rank)) {
        if (dot(apex, f.normal) <= 0) continue;
        for (auto piece : pull_triangulate_last(f.members, rank - 1)) {
            piece.push_back(apex);
            pieces.push_back(std::move(piece));
        }
    }
    return pieces;
}

inline Rational pulled_volume(const std::vector<ZVec>& gens, std::size_t rank,
                              const QVec& lambda) {
    Rational total(0);
    for (const auto& piece : pull_triangulate_last(gens, rank)) {
        Rational denom(1);
        for (const auto& g : piece) denom *= dot(g, lambda);
        total += Rational(lattice_index(piece)) / denom;
    }
    return total;
}

inline ZVec primitive(const ZVec& v) {
    Integer g = 0;
    for (const Integer& e : v) g = boost::multiprecision::gcd(g, abs(e));
    ZVec out = v;
    if (g > 1)
        for (Integer& e : out) e /= g;
    return out;
}

} // namespace detail

/// Supported characters reduced to primitive ray generators, deduplicated in
/// first-occurrence order. Zero characters are skipped (the origin adds
/// nothing to the cone).
inline std::vector<std::vector<Integer>> cone_generators(const CharacterList& cl) {
    std::vector<std::vector<Integer>> out;
    for (std::size_t i = 0; i < cl.chars.size(); ++i) {
        if (i < cl.support.size() && !cl.support[i]) continue;
        bool zero = true;
        for (const Integer& e : cl.chars[i]) zero = zero && e == 0;
        if (zero) continue;
        auto p = detail::primitive(cl.chars[i]);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
}

namespace detail {

struct Inequality {
    QVec a;
    Rational c;  // meaning <a, lambda> >= c
};

} // namespace detail

/// A rational point with <g, lambda> >= 1 for every generator, if one exists
/// (Fourier-Motzkin elimination with back-substitution). Existence is exactly
/// pointedness of the cone.
inline std::optional<std::vector<Rational>> pointed_witness(
    const std::vector<std::vector<Integer>>& gens, long long d) {
    using detail::Inequality;
    std::vector<std::vector<Inequality>> level(static_cast<std::size_t>(d) + 1);
    for (const auto& g : gens) {
        if (g.size() != static_cast<std::size_t>(d))
            throw validation_error(validation_error::code::schema,
                                   "generator does not have d entries");
        level[static_cast<std::size_t>(d)].push_back({detail::to_rational(g), Rational(1)});
    }
    for (std::size_t k = static_cast<std::size_t>(d); k >= 1; --k) {
        std::vector<Inequality> pos, neg, next;
        for (const auto& row : level[k]) {
            if (row.a[k - 1] > 0) pos.push_back(row);
            else if (row.a[k - 1] < 0) neg.push_back(row);
            else next.push_back(row);
        }
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                Inequality combined{detail::QVec(k - 1, Rational(0)), Rational(0)};
                Rational wp = -q.a[k - 1], wq = p.a[k - 1];
                for (std::size_t j = 0; j + 1 < k; ++j)
                    combined.a[j] = wp * p.a[j] + wq * q.a[j];
                combined.c = wp * p.c + wq * q.c;
                next.push_back(std::move(combined));
            }
        }
        for (auto& row : next) row.a.resize(k - 1);
        level[k - 1] = std::move(next);
    }
    for (const auto& row : level[0])
        if (row.c > 0) return std::nullopt;
    std::vector<Rational> lambda(static_cast<std::size_t>(d), Rational(0));
    for (std::size_t k = 1; k <= static_cast<std::size_t>(d); ++k) {
        std::optional<Rational> lower, upper;
        for (const auto& row : level[k]) {
            Rational v = row.a[k - 1];
            if (v == 0) continue;
            Rational rest(0);
            for (std::size_t j = 0; j + 1 < k; ++j) rest += row.a[j] * lambda[j];
            Rational bound = (row.c - rest) / v;
            if (v > 0) {
                if (!lower || bound > *lower) lower = bound;
            } else {
                if (!upper || bound < *upper) upper = bound;
            }
        }
        if (lower && upper) lambda[k - 1] = (*lower + *upper) / 2;
        else if (lower) lambda[k - 1] = *lower;
        else if (upper) lambda[k - 1] = *upper;
    }
    return lambda;
}

/// Whether the cone spanned by the supported characters contains no line.
inline bool is_pointed(const CharacterList& cl) {
    auto gens = cone_generators(cl);
    if (gens.empty()) return true;
    return pointed_witness(gens, cl.d).has_value();
}

struct SimplicialPiece {
    std::vector<std::vector<Integer>> generators;
    Integer det_abs;
};

/// Simplicial pieces with pairwise disjoint interiors covering the cone, each
/// spanned by rank-many of its extreme ray generators.
inline std::vector<SimplicialPiece> triangulate(const CharacterList& cl) {
    auto gens = cone_generators(cl);
    if (gens.empty())
        throw validation_error(validation_error::code::bad_argument,
                               "the cone has no nonzero generators");
    if (!pointed_witness(gens, cl.d))
        throw validation_error(validation_error::code::bad_argument,
                               "the cone is not pointed");
    std::size_t r = detail::rank_of(gens);
    std::vector<SimplicialPiece> out;
    for (auto& piece : detail::pull_triangulate(gens, r))
        out.push_back({piece, detail::lattice_index(piece)});
    return out;
}

/// e_sigma as a sum of |det| / prod <g_i, .> over the triangulation pieces.
inline RationalTermSum equivariant_multiplicity(const CharacterList& cl) {
    auto vars = torus_vars(cl.d);
    RationalTermSum out{vars, {}};
    Polynomial one = Polynomial::constant(vars, 1);
    for (const auto& piece : triangulate(cl)) {
        std::vector<DenominatorFactor> denom;
        for (const auto& g : piece.generators) {
            std::vector<Rational> coeffs;
            for (const Integer& e : g) coeffs.emplace_back(e);
            denom.push_back({LinearForm(vars, coeffs), 1});
        }
        out.push(RationalTerm(Rational(piece.det_abs), one, denom));
    }
    return out;
}

/// The same value along the independent path, evaluated at a rational point
/// that must be strictly positive on the cone.
inline Rational volume_oracle(const CharacterList& cl, const std::vector<Rational>& lambda) {
    auto gens = cone_generators(cl);
    if (gens.empty() || lambda.size() != static_cast<std::size_t>(cl.d))
        throw validation_error(validation_error::code::bad_argument,
                               "need nonzero generators and a d-dimensional point");
    if (!pointed_witness(gens, cl.d))
        throw validation_error(validation_error::code::bad_argument,
                               "the cone is not pointed");
    for (const auto& g : gens)
        if (detail::dot(g, lambda) <= 0)
            throw validation_error(validation_error::code::bad_argument,
                                   "the evaluation point is not strictly positive "
                                   "on every cone generator");
    return detail::pulled_volume(gens, detail::rank_of(gens), lambda);
}

struct TorusClassResult {
    bool pointed = false;
    long long rank = 0;
    RationalTermSum e_sigma;
    Polynomial cls;
    std::vector<std::string> notes;
};

/// The stabilizer-weighted class of the torus orbit closure: 0 when the cone
/// contains a line, otherwise e_sigma times the product of all characters,
/// cleared to a polynomial by exact division.
inline TorusClassResult torus_orbit_class(const CharacterList& cl) {
    validate_characters(cl);
    auto vars = torus_vars(cl.d);
    TorusClassResult out{false, 0, {vars, {}}, Polynomial::zero(vars), {}};

    if (!is_pointed(cl)) {
        out.notes.push_back("the cone spanned by the supported characters "
                            "contains a line, so the class is 0");
        return out;
    }
    out.pointed = true;
    out.e_sigma = equivariant_multiplicity(cl);
    out.rank = static_cast<long long>(detail::rank_of(cone_generators(cl)));

    Polynomial chern = Polynomial::constant(vars, 1);
    bool zero_char = false;
    for (const auto& chi : cl.chars) {
        Polynomial factor(vars);
        for (std::size_t i = 0; i < chi.size(); ++i) {
            if (chi[i] == 0) continue;
            Exponents e(vars.size(), 0);
            e[i] = 1;
            factor.add_term(e, Rational(chi[i]));
        }
        zero_char = zero_char || factor.is_zero();
        chern = chern * factor;
    }

    RationalTerm combined = sum_terms(out.e_sigma);
    out.cls = exact_divide(chern * combined.numerator() * combined.scalar(),
                           combined.denominator_polynomial());
    if (zero_char)
        out.notes.push_back("an unsupported character is zero, so the ambient "
                            "top Chern class and the orbit class vanish");
    if (out.rank < cl.d)
        out.notes.push_back(
            "the supported characters span a proper subspace; the multiplicity "
            "is taken in the saturated span lattice and the class lives in "
            "codimension (number of characters) - " + std::to_string(out.rank));
    if (!out.cls.is_zero()) {
        long long expect = static_cast<long long>(cl.chars.size()) - out.rank;
        if (!out.cls.is_homogeneous() || out.cls.total_degree() != expect)
            throw internal_error("torus class degree does not match the expected codimension");
    }
    return out;
}

} // namespace orbclass
