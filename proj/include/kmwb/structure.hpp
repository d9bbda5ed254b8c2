#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmwb/series.hpp"

namespace kmwb {

/// q_k(pt^j, -) restricted to H_2, as polynomials on the lattice. At most one
/// entry per (k, j).
struct RawPolynomialFamily {
    // key: (k, j) with j in {0,1,2}
    std::map<std::pair<int, int>, HomogeneousPolynomial> entries;

    void insert(int k, int j, HomogeneousPolynomial poly) {
        if (k < 1) throw verification_error("BadIndex", "k must be positive");
        if (j < 0 || j > 2) throw verification_error("BadIndex", "point power j must be 0, 1 or 2");
        poly.validate();
        auto [it, fresh] = entries.emplace(std::make_pair(k, j), std::move(poly));
        (void)it;
        if (!fresh) throw verification_error("Collision", "duplicate raw entry (k, j)");
    }
};

struct SurfaceConstraint {
    LatticeClass sigma;
    int genus = 0;
    bool connected = true;
};

struct SimpleTypeReport {
    bool ok = false;
    std::vector<int> checked_k;
    std::vector<int> failing_k;
};

/// Checks q_k(pt^2,-) = 4 q_{k-1}(-) for every k where both entries exist.
inline SimpleTypeReport check_simple_type(const RawPolynomialFamily& raw) {
    SimpleTypeReport rep;
    for (const auto& [key, poly] : raw.entries) {
        auto [k, j] = key;
        if (j != 2) continue;
        auto it = raw.entries.find({k - 1, 0});
        if (it == raw.entries.end()) continue;
        rep.checked_k.push_back(k);
        const HomogeneousPolynomial& lhs = poly;
        HomogeneousPolynomial rhs{it->second.degree, poly_scale(it->second.monomials, Rat(4))};
        if (!(lhs == rhs)) rep.failing_k.push_back(k);
    }
    if (rep.checked_k.empty())
        throw verification_error("InsufficientData", "no (k,2)/(k-1,0) pair to compare");
    rep.ok = rep.failing_k.empty();
    return rep;
}

/// Degree of q_k(pt^j,-) on H_2: d = 4k - 3(1+b_+)/2, minus 2 when j = 1.
/// Negative d means the "0 otherwise" branch: the entry is rejected.
inline std::optional<int> flattened_degree(int k, int j, int b_plus) {
    int d = 4 * k - 3 * (1 + b_plus) / 2;
    if (j == 1) d -= 2;
    if (d < 0) return std::nullopt;
    return d;
}

/// Assembles the Donaldson series from raw polynomial data: part d = poly / d!.
/// Entries with j = 2 feed only the simple-type check and are skipped here.
inline TruncatedSeries flatten_to_series(const RawPolynomialFamily& raw, int b_plus, int rank) {
    if (b_plus < 3 || b_plus % 2 == 0)
        throw verification_error("BadBPlus", "b_+ must be odd and >= 3");
    std::map<int, const HomogeneousPolynomial*> by_degree;
    int top = 0;
    for (const auto& [key, poly] : raw.entries) {
        auto [k, j] = key;
        if (j == 2) continue;
        auto d = flattened_degree(k, j, b_plus);
        if (!d) continue;  // "0 otherwise"
        if (poly.degree != *d)
            throw verification_error(
                "DegreeMismatch",
                "entry (k=" + std::to_string(k) + ", j=" + std::to_string(j) + ") has degree " +
                    std::to_string(poly.degree) + ", expected " + std::to_string(*d));
        if (!by_degree.emplace(*d, &poly).second)
            throw verification_error("Collision",
                                     "two raw entries map to degree " + std::to_string(*d));
        top = std::max(top, *d);
    }
    TruncatedSeries out(rank, top);
    for (const auto& [d, poly] : by_degree) {
        for (const auto& [e, c] : poly->monomials) {
            if (e.size() != static_cast<size_t>(rank))
                throw dimension_mismatch("raw polynomial variable count");
            out.parts[d].emplace(e, Rat(c / make_rat(factorial(d))));
        }
    }
    return out;
}

struct AdjunctionViolation {
    LatticeClass km_class;
    LatticeClass sigma;
    int genus = 0;
    Int lhs;  // 2g - 2
    Int rhs;  // sigma^2 + K.sigma
};

struct KMPropertyReport {
    bool parity_ok = true;
    bool negation_ok = true;
    bool adjunction_ok = true;
    std::vector<LatticeClass> parity_violations;
    std::vector<LatticeClass> negation_violations;
    std::vector<AdjunctionViolation> adjunction_violations;
    std::vector<std::string> notices;

    bool all_ok() const { return parity_ok && negation_ok && adjunction_ok; }
};

/// Theorem-style property verification for a claimed structure: parity against
/// w2, negation closure of the class set, and the adjunction bound
/// 2g - 2 >= sigma^2 + K.sigma for each constraint with sigma^2 >= 0,
/// sigma != 0. Constraints outside those hypotheses are skipped with a notice.
inline KMPropertyReport verify_km_properties(const KMStructure& s,
                                             const IntersectionLattice& lattice, const IntVec& w2,
                                             const std::vector<SurfaceConstraint>& constraints) {
    KMPropertyReport rep;
    for (const auto& t : s.terms()) {
        if (!parity_equal(lattice, t.cls, w2)) rep.parity_violations.push_back(t.cls);
        LatticeClass neg = negate(t.cls);
        bool found = false;
        for (const auto& u : s.terms())
            if (u.cls == neg) {
                found = true;
                break;
            }
        if (!found) rep.negation_violations.push_back(t.cls);
    }
    for (const auto& con : constraints) {
        if (is_zero_class(con.sigma)) {
            rep.notices.push_back("constraint skipped: homologically trivial class");
            continue;
        }
        Int self = pair(lattice, con.sigma, con.sigma);
        if (self < 0) {
            rep.notices.push_back("constraint skipped: sigma^2 < 0");
            continue;
        }
        for (const auto& t : s.terms()) {
            Int rhs = self + pair(lattice, t.cls, con.sigma);
            Int lhs = 2 * con.genus - 2;
            if (lhs < rhs)
                rep.adjunction_violations.push_back({t.cls, con.sigma, con.genus, lhs, rhs});
        }
    }
    rep.parity_ok = rep.parity_violations.empty();
    rep.negation_ok = rep.negation_violations.empty();
    rep.adjunction_ok = rep.adjunction_violations.empty();
    return rep;
}

/// Smallest g with 2g - 2 >= sigma^2 + max_i K_i.sigma, clamped below at 0.
inline Int min_genus_bound(const KMStructure& s, const IntersectionLattice& lattice,
                           const LatticeClass& sigma) {
    if (s.empty()) throw verification_error("EmptyStructure", "no classes to bound against");
    if (is_zero_class(sigma))
        throw verification_error("NegativeSelfIntersection",
                                 "sigma must be homologically nontrivial");
    Int self = pair(lattice, sigma, sigma);
    if (self < 0)
        throw verification_error("NegativeSelfIntersection", "sigma^2 must be >= 0");
    Int best;
    bool first = true;
    for (const auto& t : s.terms()) {
        Int v = pair(lattice, t.cls, sigma);
        if (first || v > best) best = v;
        first = false;
    }
    Int num = self + best + 2;
    Int g;
    mpz_cdiv_q_ui(g.get_mpz_t(), num.get_mpz_t(), 2);  // ceil(num / 2)
    if (g < 0) g = 0;
    return g;
}

}  // namespace kmwb
