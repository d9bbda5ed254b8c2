#pragma once

#include <vector>

#include "kmwb/series.hpp"

namespace kmwb {

/// Lattice extension by l exceptional classes: Q_hat = Q (+) diag(-1,...,-1),
/// base classes embedded by zero padding.
struct BlowupMap {
    IntersectionLattice base;
    IntersectionLattice extended;
    int count = 0;  // l

    LatticeClass exceptional(int j) const {
        LatticeClass e(extended.rank(), 0);
        e[base.rank() + j] = 1;
        return e;
    }
};

inline BlowupMap blowup_lattice(const IntersectionLattice& lattice, int l) {
    if (l < 1) throw verification_error("BadIndex", "blow-up count must be >= 1");
    int n = lattice.rank();
    int m = n + l;
    std::vector<Int> q(static_cast<size_t>(m) * m, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q[static_cast<size_t>(i) * m + j] = lattice.entry(i, j);
    for (int j = 0; j < l; ++j) q[static_cast<size_t>(n + j) * m + (n + j)] = -1;
    return {lattice, IntersectionLattice(m, std::move(q)), l};
}

inline LatticeClass embed_class(const BlowupMap& bm, const LatticeClass& x) {
    check_length(bm.base, x.size(), "embed_class");
    LatticeClass out(bm.extended.rank(), 0);
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    return out;
}

/// Each term (a, K) becomes the 2^l terms (a / 2^l, K + sum eps_j E_j) over
/// all sign patterns. The equal coefficient split is the unique
/// negation-symmetric choice that makes blowdown_E4 a round-trip.
inline KMStructure blowup_structure(const KMStructure& s, const BlowupMap& bm) {
    std::vector<KMTerm> out;
    Rat split = make_rat(1, Int(1) << bm.count);
    for (const auto& t : s.terms()) {
        LatticeClass base = embed_class(bm, t.cls);
        for (int mask = 0; mask < (1 << bm.count); ++mask) {
            LatticeClass k = base;
            for (int j = 0; j < bm.count; ++j) k[bm.base.rank() + j] = (mask >> j & 1) ? 1 : -1;
            out.push_back({Rat(t.coefficient * split), std::move(k)});
        }
    }
    return KMStructure(std::move(out));
}

/// Drops monomials touching exceptional coordinates and truncates exponent
/// vectors to the base rank.
inline TruncatedSeries restrict_to_base(const BlowupMap& bm, const TruncatedSeries& f) {
    if (f.nvars != bm.extended.rank()) throw dimension_mismatch("series not on extended lattice");
    TruncatedSeries out(bm.base.rank(), f.max_degree());
    for (int d = 0; d <= f.max_degree(); ++d) {
        for (const auto& [e, c] : f.parts[d]) {
            bool pureBase = true;
            for (int j = bm.base.rank(); j < bm.extended.rank(); ++j)
                if (e[j] != 0) pureBase = false;
            if (!pureBase) continue;
            out.parts[d].emplace(Exponents(e.begin(), e.begin() + bm.base.rank()), c);
        }
    }
    return out;
}

/// Blow-down along the degree-4 contraction: contract four times along every
/// exceptional direction, scale by (-1/2)^l, restrict to base coordinates.
inline TruncatedSeries blowdown_E4(const TruncatedSeries& f, const BlowupMap& bm) {
    if (f.nvars != bm.extended.rank()) throw dimension_mismatch("series not on extended lattice");
    if (f.max_degree() < 4 * bm.count)
        throw verification_error("TruncationTooShallow",
                                 "need truncation degree >= 4l for blow-down");
    TruncatedSeries cur = f;
    for (int j = 0; j < bm.count; ++j) {
        RatVec dir(bm.extended.rank(), Rat(0));
        dir[bm.base.rank() + j] = 1;
        cur = contract(cur, dir, 4);
    }
    Rat scale = make_rat(1);
    for (int j = 0; j < bm.count; ++j) scale *= make_rat(-1, 2);
    return restrict_to_base(bm, series_scale(cur, scale));
}

/// Single blow-up degree-6 contraction: contract six times along E, scale by
/// -1/2, restrict. Returned raw; the -8 audit factor relating the result to a
/// blown-up structure's base classes is reported by callers, not asserted, as
/// the point-insertion normalization is not pinned down by the contraction
/// identity itself.
inline TruncatedSeries blowdown_E6(const TruncatedSeries& f, const BlowupMap& bm) {
    if (bm.count != 1)
        throw verification_error("WrongArity", "E^6 blow-down requires a single blow-up");
    if (f.nvars != bm.extended.rank()) throw dimension_mismatch("series not on extended lattice");
    if (f.max_degree() < 6)
        throw verification_error("TruncationTooShallow",
                                 "need truncation degree >= 6 for E^6 blow-down");
    RatVec dir(bm.extended.rank(), Rat(0));
    dir[bm.base.rank()] = 1;
    TruncatedSeries cur = contract(f, dir, 6);
    return restrict_to_base(bm, series_scale(cur, make_rat(-1, 2)));
}

}  // namespace kmwb
