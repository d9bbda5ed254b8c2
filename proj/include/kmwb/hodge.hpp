#pragma once

#include <string>
#include <vector>

#include "kmwb/series.hpp"

namespace kmwb {

enum class Bidegree { TwoZero, OneOne, ZeroTwo };

inline std::string bidegree_str(Bidegree b) {
    switch (b) {
        case Bidegree::TwoZero: return "2,0";
        case Bidegree::OneOne: return "1,1";
        case Bidegree::ZeroTwo: return "0,2";
    }
    return "?";
}

struct HodgeVector {
    Bidegree type = Bidegree::OneOne;
    std::vector<GaussRat> coords;
};

namespace detail {

inline int gauss_rank(std::vector<std::vector<GaussRat>> m) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t piv = row;
        while (piv < rows && m[piv][col].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            GaussRat f = m[i][col] / m[row][col];
            for (size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Basis of lattice (x) C split into (2,0)/(1,1)/(0,2) parts, all coordinates
/// exact Gaussian rationals. Validation enforces the period relations
/// Q(w, w) = 0 and Q(w, conj w) > 0, conjugate pairing of the (2,0)/(0,2)
/// halves, real (1,1) vectors, and invertibility of the whole set.
class HodgeBasis {
  public:
    HodgeBasis() = default;

    HodgeBasis(const IntersectionLattice& lattice, std::vector<HodgeVector> vectors)
        : vectors_(std::move(vectors)) {
        if (vectors_.size() != static_cast<size_t>(lattice.rank()))
            throw dimension_mismatch("Hodge basis must have rank-many vectors");
        int n20 = 0, n02 = 0;
        for (const auto& v : vectors_) {
            if (v.coords.size() != static_cast<size_t>(lattice.rank()))
                throw dimension_mismatch("Hodge vector length");
            if (v.type == Bidegree::TwoZero) ++n20;
            if (v.type == Bidegree::ZeroTwo) ++n02;
            if (v.type == Bidegree::OneOne) {
                for (const auto& c : v.coords)
                    if (c.im != 0)
                        throw verification_error("BadHodgeBasis",
                                                 "(1,1) vectors must be real rational");
            }
        }
        if (n20 != n02)
            throw verification_error("BadHodgeBasis", "#(2,0) must equal #(0,2)");
        for (size_t i = 0; i < vectors_.size(); ++i) {
            if (vectors_[i].type != Bidegree::TwoZero) continue;
            std::vector<GaussRat> conj(vectors_[i].coords.size());
            for (size_t k = 0; k < conj.size(); ++k) conj[k] = vectors_[i].coords[k].conj();
            int mate = -1;
            for (size_t j = 0; j < vectors_.size(); ++j)
                if (vectors_[j].type == Bidegree::ZeroTwo && vectors_[j].coords == conj)
                    mate = static_cast<int>(j);
            if (mate < 0)
                throw verification_error("BadHodgeBasis",
                                         "missing (0,2) conjugate of a (2,0) vector");
            conjugate_of_.emplace_back(i, mate);
            GaussRat self = pair_c(lattice, vectors_[i].coords, vectors_[i].coords);
            if (!self.is_zero())
                throw verification_error("BadHodgeBasis", "period relation Q(w,w) = 0 fails");
            GaussRat mixed = pair_c(lattice, vectors_[i].coords, conj);
            if (mixed.im != 0 || !(mixed.re > 0))
                throw verification_error("BadHodgeBasis", "period relation Q(w,conj w) > 0 fails");
        }
        std::vector<std::vector<GaussRat>> m;
        for (const auto& v : vectors_) m.push_back(v.coords);
        if (detail::gauss_rank(std::move(m)) != lattice.rank())
            throw verification_error("SingularBasis", "Hodge vectors are linearly dependent");
    }

    const std::vector<HodgeVector>& vectors() const { return vectors_; }
    size_t size() const { return vectors_.size(); }

    /// Indices of (2,0) vectors paired with their listed (0,2) conjugates.
    const std::vector<std::pair<size_t, size_t>>& conjugate_pairs() const { return conjugate_of_; }

  private:
    std::vector<HodgeVector> vectors_;
    std::vector<std::pair<size_t, size_t>> conjugate_of_;
};

/// Exact rewrite of a polynomial in the dual coordinates of the Hodge basis:
/// substitute x = B y where the columns of B are the basis vectors.
template <class C>
MonomialMap<GaussRat> to_hodge_coordinates(const HodgeBasis& hb, const MonomialMap<C>& f) {
    size_t n = hb.size();
    MonomialMap<GaussRat> out;
    for (const auto& [e, c] : f) {
        if (e.size() != n) throw dimension_mismatch("polynomial variable count vs Hodge basis");
        MonomialMap<GaussRat> term;
        term.emplace(Exponents(n, 0), GaussRat(Rat(c)));
        for (size_t i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            MonomialMap<GaussRat> linear;  // x_i = sum_j B_ij y_j
            for (size_t j = 0; j < n; ++j) {
                const GaussRat& b = hb.vectors()[j].coords[i];
                if (b.is_zero()) continue;
                Exponents ey(n, 0);
                ey[static_cast<int>(j)] = 1;
                linear.emplace(std::move(ey), b);
            }
            for (int p = 0; p < e[i]; ++p) term = poly_mul(term, linear);
        }
        out = poly_add(out, term);
    }
    return out;
}

struct PurityViolation {
    int degree = 0;
    Exponents exponents;  // in Hodge coordinates
    int p = 0;
    int q = 0;
};

struct PurityReport {
    bool pure = true;
    std::vector<PurityViolation> violations;
};

/// Every degree-d part must consist, in Hodge coordinates, of monomials of
/// total bidegree (d, d).
inline PurityReport purity_check(const HodgeBasis& hb, const TruncatedSeries& series) {
    PurityReport rep;
    for (int d = 0; d <= series.max_degree(); ++d) {
        if (series.parts[d].empty()) continue;
        auto rewritten = to_hodge_coordinates(hb, series.parts[d]);
        for (const auto& [e, c] : rewritten) {
            int p = 0, q = 0;
            for (size_t j = 0; j < e.size(); ++j) {
                switch (hb.vectors()[j].type) {
                    case Bidegree::TwoZero: p += 2 * e[j]; break;
                    case Bidegree::OneOne: p += e[j]; q += e[j]; break;
                    case Bidegree::ZeroTwo: q += 2 * e[j]; break;
                }
            }
            if (p != d || q != d) {
                rep.pure = false;
                rep.violations.push_back({d, e, p, q});
            }
        }
    }
    return rep;
}

struct Type11Report {
    bool ok = true;
    std::vector<LatticeClass> offenders;
};

/// Integral classes orthogonal (under Q) to every (2,0) vector are algebraic
/// by the Lefschetz (1,1) criterion.
inline Type11Report classes_type11_check(const HodgeBasis& hb, const IntersectionLattice& lattice,
                                         const KMStructure& s) {
    Type11Report rep;
    for (const auto& t : s.terms()) {
        std::vector<GaussRat> k(t.cls.size());
        for (size_t i = 0; i < k.size(); ++i) k[i] = GaussRat(make_rat(t.cls[i]));
        bool offending = false;
        for (const auto& v : hb.vectors()) {
            if (v.type != Bidegree::TwoZero) continue;
            if (!pair_c(lattice, k, v.coords).is_zero()) offending = true;
        }
        if (offending) rep.offenders.push_back(t.cls);
    }
    rep.ok = rep.offenders.empty();
    return rep;
}

struct FormsReport {
    bool hypotheses_met = false;
    bool ok = false;
    Rat q0;
    Rat exponent;  // Q(w, conj w), identified with the integral of w ^ conj w
    RatVec x;      // w + conj w
    std::vector<std::string> failures;
};

/// q(w + conj w) = q_0 e^{Q(w, conj w)}: verified symbolically on exponent and
/// coefficient, then cross-checked degreewise against the truncated expansion.
inline FormsReport forms_identity_check(const HodgeBasis& hb, const IntersectionLattice& lattice,
                                        const KMStructure& s, size_t omega_index, int max_degree) {
    FormsReport rep;
    if (!classes_type11_check(hb, lattice, s).ok) {
        rep.failures.push_back("a class is not of type (1,1)");
        return rep;  // hypotheses not met; the identity is not asserted
    }
    rep.hypotheses_met = true;
    if (omega_index >= hb.conjugate_pairs().size())
        throw verification_error("BadIndex", "no such (2,0) vector");
    auto [wi, ci] = hb.conjugate_pairs()[omega_index];
    const auto& w = hb.vectors()[wi].coords;
    const auto& wc = hb.vectors()[ci].coords;

    rep.x.resize(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        GaussRat sum = w[i] + wc[i];
        if (sum.im != 0)
            throw verification_error("BadHodgeBasis", "w + conj w is not real");
        rep.x[i] = sum.re;
    }
    rep.q0 = s.q0();

    for (const auto& t : s.terms()) {
        RatVec k(t.cls.size());
        for (size_t i = 0; i < k.size(); ++i) k[i] = make_rat(t.cls[i]);
        if (pair_q(lattice, k, rep.x) != 0)
            rep.failures.push_back("Q(K_i, w + conj w) != 0");
    }
    GaussRat mixed = pair_c(lattice, w, wc);
    rep.exponent = mixed.re;
    if (pair_q(lattice, rep.x, rep.x) / 2 != rep.exponent)
        rep.failures.push_back("Q(x,x)/2 != Q(w, conj w)");

    // Degreewise cross-check against q0 * sum_m E^m / m!.
    TruncatedSeries q = expand_structure(s, lattice, max_degree);
    Rat epow = 1;
    for (int d = 0; d <= max_degree; ++d) {
        Rat actual = poly_eval(q.parts[d], rep.x);
        Rat expected = 0;
        if (d % 2 == 0) {
            int m = d / 2;
            if (d > 0) epow *= rep.exponent;
            expected = rep.q0 * epow / make_rat(factorial(m));
        }
        if (actual != expected)
            rep.failures.push_back("degree " + std::to_string(d) + " part mismatch");
    }
    rep.ok = rep.failures.empty();
    return rep;
}

}  // namespace kmwb
