#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "kmwb/lattice.hpp"

namespace kmwb {

// Exponent vectors are dense over the fixed lattice basis; coefficient maps are
// sparse. std::map keeps monomials in lexicographic order, which doubles as the
// canonical serialization order.
using Exponents = std::vector<int>;

template <class C>
using MonomialMap = std::map<Exponents, C>;

template <class C>
void add_term(MonomialMap<C>& m, const Exponents& e, const C& c) {
    if (c == C(0)) return;
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == C(0)) m.erase(it);
    }
}

template <class C>
MonomialMap<C> poly_add(const MonomialMap<C>& a, const MonomialMap<C>& b) {
    MonomialMap<C> out = a;
    for (const auto& [e, c] : b) add_term(out, e, c);
    return out;
}

template <class C>
MonomialMap<C> poly_scale(const MonomialMap<C>& a, const C& s) {
    MonomialMap<C> out;
    if (s == C(0)) return out;
    for (const auto& [e, c] : a) out.emplace(e, C(c * s));
    return out;
}

template <class C>
MonomialMap<C> poly_mul(const MonomialMap<C>& a, const MonomialMap<C>& b) {
    MonomialMap<C> out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            add_term(out, e, C(ca * cb));
        }
    return out;
}

template <class C, class V>
C poly_eval(const MonomialMap<C>& m, const std::vector<V>& x) {
    C acc(0);
    for (const auto& [e, c] : m) {
        C term = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int p = 0; p < e[i]; ++p) term *= C(x[i]);
        acc += term;
    }
    return acc;
}

/// Degree-homogeneous polynomial on the lattice, exact rational coefficients.
struct HomogeneousPolynomial {
    int degree = 0;
    MonomialMap<Rat> monomials;

    void validate() const {
        for (const auto& [e, c] : monomials) {
            int s = 0;
            for (int k : e) {
                if (k < 0) throw verification_error("BadExponent", "negative exponent");
                s += k;
            }
            if (s != degree)
                throw verification_error("DegreeMismatch", "monomial degree != declared degree");
            if (c == 0) throw verification_error("ZeroCoefficient", "stored zero coefficient");
        }
    }

    friend bool operator==(const HomogeneousPolynomial&, const HomogeneousPolynomial&) = default;
};

/// Truncated power series: parts[d] holds the degree-d part, already divided by
/// d! (the series stores q_d / d!).
struct TruncatedSeries {
    int nvars = 0;
    std::vector<MonomialMap<Rat>> parts;  // size = D + 1

    TruncatedSeries() = default;
    TruncatedSeries(int nvars_, int max_degree)
        : nvars(nvars_), parts(static_cast<size_t>(max_degree) + 1) {}

    int max_degree() const { return static_cast<int>(parts.size()) - 1; }

    bool is_zero() const {
        for (const auto& p : parts)
            if (!p.empty()) return false;
        return true;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
};

struct KMTerm {
    Rat coefficient;
    LatticeClass cls;
    friend bool operator==(const KMTerm&, const KMTerm&) = default;
};

/// Closed-form structure e^{Q/2} sum_i a_i e^{K_i}: nonzero rational a_i,
/// pairwise distinct integral classes K_i. Construction canonicalizes: equal
/// classes merge, zero coefficients drop, terms sort by class.
class KMStructure {
  public:
    KMStructure() = default;

    explicit KMStructure(std::vector<KMTerm> terms) {
        std::map<LatticeClass, Rat> merged;
        for (auto& t : terms) {
            if (!merged.empty() && t.cls.size() != merged.begin()->first.size())
                throw dimension_mismatch("KM structure classes of unequal length");
            merged[t.cls] += t.coefficient;
        }
        for (auto& [k, a] : merged)
            if (a != 0) terms_.push_back({a, k});
    }

    const std::vector<KMTerm>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// q_0 = sum of coefficients.
    Rat q0() const {
        Rat s = 0;
        for (const auto& t : terms_) s += t.coefficient;
        return s;
    }

    bool negation_closed() const {
        for (const auto& t : terms_) {
            LatticeClass neg = negate(t.cls);
            bool found = false;
            for (const auto& u : terms_)
                if (u.cls == neg) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    }

    friend bool operator==(const KMStructure&, const KMStructure&) = default;

  private:
    std::vector<KMTerm> terms_;
};

inline void check_series_vars(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (f.nvars != g.nvars) throw dimension_mismatch("series over different lattices");
}

/// Cauchy product of parts, truncated at min(D_f, D_g).
inline TruncatedSeries mul_truncated(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_series_vars(f, g);
    int d = std::min(f.max_degree(), g.max_degree());
    TruncatedSeries out(f.nvars, d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) {
            if (f.parts[i].empty() || g.parts[j].empty()) continue;
            auto prod = poly_mul(f.parts[i], g.parts[j]);
            out.parts[i + j] = poly_add(out.parts[i + j], prod);
        }
    return out;
}

inline TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g) {
    check_series_vars(f, g);
    TruncatedSeries out(f.nvars, std::min(f.max_degree(), g.max_degree()));
    for (int d = 0; d <= out.max_degree(); ++d) out.parts[d] = poly_add(f.parts[d], g.parts[d]);
    return out;
}

inline TruncatedSeries series_scale(const TruncatedSeries& f, const Rat& s) {
    TruncatedSeries out(f.nvars, f.max_degree());
    for (int d = 0; d <= f.max_degree(); ++d) out.parts[d] = poly_scale(f.parts[d], s);
    return out;
}

/// exp of a series with zero constant term, truncated at max_degree.
inline TruncatedSeries exp_truncated(const TruncatedSeries& f, int max_degree) {
    if (!f.parts.empty() && !f.parts[0].empty())
        throw verification_error("BadExponent", "exp of series with nonzero constant term");
    TruncatedSeries out(f.nvars, max_degree);
    Exponents one(f.nvars, 0);
    out.parts[0].emplace(one, Rat(1));
    TruncatedSeries base(f.nvars, max_degree);
    for (int d = 0; d <= std::min(max_degree, f.max_degree()); ++d) base.parts[d] = f.parts[d];
    TruncatedSeries pw = out;  // f^0 / 0!
    for (int i = 1; i <= max_degree; ++i) {
        pw = series_scale(mul_truncated(pw, base), make_rat(1, i));
        if (pw.is_zero()) break;
        out = series_add(out, pw);
    }
    return out;
}

/// Degree-2 series Q(x,x)/2 (optionally scaled), input to exp_truncated.
inline TruncatedSeries quadratic_half_form(const IntersectionLattice& lattice, int sign,
                                           int max_degree) {
    TruncatedSeries out(lattice.rank(), max_degree);
    if (max_degree < 2) return out;
    for (int i = 0; i < lattice.rank(); ++i)
        for (int j = i; j < lattice.rank(); ++j) {
            Rat c = (i == j) ? make_rat(lattice.entry(i, i), 2) : make_rat(lattice.entry(i, j));
            if (sign < 0) c = -c;
            if (c == 0) continue;
            Exponents e(lattice.rank(), 0);
            ++e[i];
            ++e[j];
            out.parts[2].emplace(std::move(e), std::move(c));
        }
    return out;
}

/// Linear series Q(K, x) in the x-coordinates.
inline TruncatedSeries linear_pairing_form(const IntersectionLattice& lattice,
                                           const LatticeClass& k, int max_degree) {
    TruncatedSeries out(lattice.rank(), max_degree);
    if (max_degree < 1) return out;
    IntVec qk = apply_form(lattice, k);
    for (int i = 0; i < lattice.rank(); ++i) {
        if (qk[i] == 0) continue;
        Exponents e(lattice.rank(), 0);
        e[i] = 1;
        out.parts[1].emplace(std::move(e), make_rat(qk[i]));
    }
    return out;
}

/// Taylor expansion of e^{Q(x,x)/2} sum_i a_i e^{Q(K_i,x)} through degree D.
inline TruncatedSeries expand_structure(const KMStructure& s, const IntersectionLattice& lattice,
                                        int max_degree) {
    if (max_degree < 0) throw verification_error("BadDegree", "negative truncation degree");
    TruncatedSeries acc(lattice.rank(), max_degree);
    for (const auto& term : s.terms()) {
        check_length(lattice, term.cls.size(), "expand_structure class");
        auto e = exp_truncated(linear_pairing_form(lattice, term.cls, max_degree), max_degree);
        acc = series_add(acc, series_scale(e, term.coefficient));
    }
    if (s.empty()) return acc;
    auto gauss = exp_truncated(quadratic_half_form(lattice, +1, max_degree), max_degree);
    return mul_truncated(gauss, acc);
}

/// Sum of all truncated parts at a rational point.
inline Rat evaluate(const TruncatedSeries& f, const RatVec& x) {
    if (x.size() != static_cast<size_t>(f.nvars)) throw dimension_mismatch("evaluate point");
    Rat acc = 0;
    for (const auto& p : f.parts) acc += poly_eval(p, x);
    return acc;
}

/// Symbolic closed-form value of a structure at x: the common exponent
/// Q(x,x)/2 plus per-term (a_i, Q(K_i,x)), so the value is
/// sum_i a_i e^{Q(x,x)/2 + Q(K_i,x)}. No floating point.
struct StructureValue {
    Rat half_self_pairing;                    // Q(x,x)/2
    std::vector<std::pair<Rat, Rat>> terms;   // (a_i, Q(K_i,x))
};

inline StructureValue evaluate_structure(const KMStructure& s, const IntersectionLattice& lattice,
                                         const RatVec& x) {
    check_length(lattice, x.size(), "evaluate point");
    StructureValue v;
    v.half_self_pairing = pair_q(lattice, x, x) / 2;
    for (const auto& t : s.terms()) {
        RatVec k(t.cls.size());
        for (size_t i = 0; i < k.size(); ++i) k[i] = make_rat(t.cls[i]);
        v.terms.emplace_back(t.coefficient, pair_q(lattice, k, x));
    }
    return v;
}

/// C = e^{-Q/2} q, the normalized series sum a_i e^{K_i}.
inline TruncatedSeries normalize_C(const TruncatedSeries& q, const IntersectionLattice& lattice) {
    check_length(lattice, static_cast<size_t>(q.nvars), "normalize_C");
    auto inv = exp_truncated(quadratic_half_form(lattice, -1, q.max_degree()), q.max_degree());
    return mul_truncated(inv, q);
}

/// r-fold directional derivative along v. Truncation drops to D - r. With the
/// q_d/d! packaging this is exactly the r-slot polarization contraction.
inline TruncatedSeries contract(const TruncatedSeries& f, const RatVec& v, int r) {
    if (r < 0) throw verification_error("NegativeOrder", "contraction order must be >= 0");
    if (v.size() != static_cast<size_t>(f.nvars)) throw dimension_mismatch("contract direction");
    TruncatedSeries cur = f;
    for (int step = 0; step < r; ++step) {
        int d = std::max(cur.max_degree() - 1, 0);
        TruncatedSeries next(cur.nvars, d);
        for (int deg = 1; deg <= cur.max_degree(); ++deg) {
            for (const auto& [e, c] : cur.parts[deg]) {
                for (size_t i = 0; i < e.size(); ++i) {
                    if (e[i] == 0 || v[i] == 0) continue;
                    Exponents de = e;
                    --de[i];
                    add_term(next.parts[deg - 1], de, Rat(c * e[i] * v[i]));
                }
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace kmwb
