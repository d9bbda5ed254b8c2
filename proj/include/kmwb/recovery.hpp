#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "kmwb/linalg.hpp"
#include "kmwb/series.hpp"

namespace kmwb {

/// Moments of a normalized series along a direction z:
/// m_n = n! C_n(z) = sum_i a_i <K_i, z>^n.
struct MomentSequence {
    RatVec z;
    std::vector<Rat> moments;
};

inline MomentSequence directional_moments(const TruncatedSeries& c, const RatVec& z) {
    if (z.size() != static_cast<size_t>(c.nvars)) throw dimension_mismatch("moment direction");
    MomentSequence out;
    out.z = z;
    for (int n = 0; n <= c.max_degree(); ++n)
        out.moments.push_back(Rat(poly_eval(c.parts[n], z) * make_rat(factorial(n))));
    return out;
}

/// First integer direction (positive coordinates, increasing max-norm, then
/// lexicographic) whose dot products with the given vectors are all distinct.
inline IntVec separating_direction(const std::vector<IntVec>& vectors, int rank) {
    if (vectors.size() <= 1 || rank == 0) {
        IntVec z(rank, 0);
        if (rank > 0) z[0] = 1;
        return z;
    }
    auto separates = [&](const IntVec& z) {
        std::vector<Int> vals;
        for (const auto& v : vectors) {
            Int d = 0;
            for (int i = 0; i < rank; ++i) d += v[i] * z[i];
            vals.push_back(d);
        }
        std::sort(vals.begin(), vals.end());
        return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
    };
    for (Int norm = 1;; ++norm) {
        IntVec z(rank, 1);
        for (;;) {
            Int mx = 0;
            for (const auto& v : z) mx = std::max(mx, v);
            if (mx == norm && separates(z)) return z;
            int i = rank - 1;
            while (i >= 0 && z[i] == norm) --i;
            if (i < 0) break;
            z[i] += 1;
            for (int j = i + 1; j < rank; ++j) z[j] = 1;
        }
    }
}

/// Base-(2B+1) encoding: injective on the coordinate box [-B, B]^rank.
inline IntVec separating_direction_bound(const Int& bound, int rank) {
    IntVec z(rank);
    Int base = 2 * bound + 1;
    Int pw = 1;
    for (int i = 0; i < rank; ++i) {
        z[i] = pw;
        pw *= base;
    }
    return z;
}

struct PronyTerm {
    Rat amplitude;
    Int node;
};

namespace detail {

inline int poly_degree(const RatVec& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

inline Rat poly_value(const RatVec& p, const Rat& x) {
    Rat acc = 0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

inline RatVec poly_derivative(const RatVec& p) {
    RatVec out;
    for (size_t i = 1; i < p.size(); ++i) out.push_back(Rat(p[i] * static_cast<int>(i)));
    return out;
}

inline RatVec poly_remainder(RatVec a, const RatVec& b) {
    int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db && da >= 0; da = poly_degree(a)) {
        Rat f = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;  // clear exactly
    }
    a.resize(std::max(db, 1));
    return a;
}

inline std::vector<RatVec> sturm_chain(const RatVec& p) {
    std::vector<RatVec> chain;
    chain.push_back(p);
    RatVec d = poly_derivative(p);
    while (poly_degree(chain.back()) > 0) {
        if (chain.size() == 1) {
            chain.push_back(d);
            continue;
        }
        RatVec r = poly_remainder(chain[chain.size() - 2], chain.back());
        if (poly_degree(r) < 0) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_changes(const std::vector<RatVec>& chain, const Rat& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain) {
        Rat v = poly_value(p, x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

/// All integer roots of p, via Sturm-sequence bisection. Throws NonIntegerRoot
/// if any real root is not an integer (counting distinct roots).
inline std::vector<Int> integer_roots(const RatVec& p) {
    int deg = poly_degree(p);
    if (deg <= 0) return {};
    auto chain = sturm_chain(p);
    // Cauchy bound.
    Rat lead = p[deg];
    Rat mx = 0;
    for (int i = 0; i < deg; ++i) mx = std::max(mx, Rat(abs(p[i] / lead)));
    Int bound = mx.get_num() / mx.get_den() + 2;

    std::vector<Int> roots;
    int missing = 0;
    // Roots counted on half-open intervals (a, b].
    std::vector<std::pair<Int, Int>> stack{{-bound - 1, bound}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int count = sign_changes(chain, make_rat(a)) - sign_changes(chain, make_rat(b));
        if (count <= 0) continue;
        if (b - a == 1) {
            if (poly_value(p, make_rat(b)) == 0) {
                roots.push_back(b);
                --count;
            }
            missing += count;
            continue;
        }
        Int mid = (a + b) / 2;
        if (mid == a) mid += 1;
        stack.emplace_back(a, mid);
        stack.emplace_back(mid, b);
    }
    if (missing > 0 || static_cast<int>(roots.size()) != deg)
        throw recovery_error("NonIntegerRoot", "characteristic polynomial has non-integer roots");
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline SolveResult vandermonde_solve(const std::vector<Int>& nodes, const std::vector<Rat>& rhs) {
    size_t p = nodes.size();
    std::vector<RatVec> v(p, RatVec(p));
    for (size_t n = 0; n < p; ++n)
        for (size_t i = 0; i < p; ++i) {
            Rat pw = 1;
            for (size_t k = 0; k < n; ++k) pw *= make_rat(nodes[i]);
            v[n][i] = pw;
        }
    return gauss_solve(std::move(v), RatVec(rhs.begin(), rhs.begin() + p));
}

}  // namespace detail

/// Exponential-sum recovery from exact moments: Hankel rank reveals the term
/// count, the minimal recurrence's characteristic polynomial carries the
/// nodes (required integral), and a Vandermonde solve yields the amplitudes.
inline std::vector<PronyTerm> prony(const MomentSequence& seq) {
    const auto& m = seq.moments;
    int n_max = static_cast<int>(m.size()) - 1;
    bool all_zero = true;
    for (const auto& v : m)
        if (v != 0) all_zero = false;
    if (all_zero) return {};

    // Largest k with H_k nonsingular (H_k needs m_0..m_{2k-2}). For genuine
    // p-term data H_p = W^T diag(a) W is nonsingular even when smaller leading
    // minors vanish (amplitudes may cancel), so singular minors are skipped,
    // not treated as stabilization.
    int k_max = n_max / 2 + 1;
    int p = 0;
    for (int k = 1; k <= k_max; ++k) {
        std::vector<RatVec> h(k, RatVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) h[i][j] = m[i + j];
        if (matrix_rank(h) == k) p = k;
    }
    if (p == 0)
        throw recovery_error("InsufficientMoments", "Hankel rank did not reveal any term");
    if (2 * p - 1 > n_max)
        throw recovery_error("InsufficientMoments",
                             "need at least 2p-1 moments for " + std::to_string(p) + " terms");

    // Minimal recurrence m_{n+p} = sum_i c_i m_{n+i}.
    std::vector<RatVec> h(p, RatVec(p));
    RatVec rhs(p);
    for (int n = 0; n < p; ++n) {
        for (int i = 0; i < p; ++i) h[n][i] = m[n + i];
        rhs[n] = m[n + p];
    }
    SolveResult rec = gauss_solve(std::move(h), std::move(rhs));
    if (rec.status != SolveStatus::Unique)
        throw recovery_error("InsufficientMoments", "singular Hankel system");
    for (int n = 0; n + p <= n_max; ++n) {
        Rat acc = 0;
        for (int i = 0; i < p; ++i) acc += rec.x[i] * m[n + i];
        if (acc != m[n + p])
            throw recovery_error("InsufficientMoments", "recurrence fails on later moments");
    }

    RatVec charpoly(p + 1);
    charpoly[p] = 1;
    for (int i = 0; i < p; ++i) charpoly[i] = -rec.x[i];
    std::vector<Int> nodes = detail::integer_roots(charpoly);
    if (static_cast<int>(nodes.size()) != p)
        throw recovery_error("NonIntegerRoot", "node multiplicity mismatch");

    SolveResult amp = detail::vandermonde_solve(nodes, m);
    if (amp.status != SolveStatus::Unique)
        throw recovery_error("InsufficientMoments", "degenerate Vandermonde system");
    std::vector<PronyTerm> out;
    for (int i = 0; i < p; ++i) {
        if (amp.x[i] == 0)
            throw recovery_error("InsufficientMoments", "vanishing amplitude for a node");
        out.push_back({amp.x[i], nodes[i]});
    }
    return out;
}

struct RecoveryHint {
    std::optional<Int> bound;                          // coordinate box half-width
    std::optional<std::vector<LatticeClass>> candidates;  // explicit class list
};

namespace detail {

inline KMStructure recover_by_candidates(const TruncatedSeries& q,
                                         const IntersectionLattice& lattice,
                                         const std::vector<LatticeClass>& candidates) {
    TruncatedSeries c = normalize_C(q, lattice);
    int max_degree = c.max_degree();
    std::vector<TruncatedSeries> basis;
    for (const auto& k : candidates)
        basis.push_back(
            exp_truncated(linear_pairing_form(lattice, k, max_degree), max_degree));

    // One equation per monomial appearing in C or in any candidate expansion.
    std::map<std::pair<int, Exponents>, size_t> row_of;
    auto row_index = [&](int d, const Exponents& e) {
        return row_of.emplace(std::make_pair(d, e), row_of.size()).first->second;
    };
    for (int d = 0; d <= max_degree; ++d) {
        for (const auto& [e, coeff] : c.parts[d]) row_index(d, e);
        for (const auto& b : basis)
            for (const auto& [e, coeff] : b.parts[d]) row_index(d, e);
    }
    std::vector<RatVec> a(row_of.size(), RatVec(candidates.size(), Rat(0)));
    RatVec rhs(row_of.size(), Rat(0));
    for (const auto& [key, r] : row_of) {
        auto it = c.parts[key.first].find(key.second);
        if (it != c.parts[key.first].end()) rhs[r] = it->second;
        for (size_t j = 0; j < basis.size(); ++j) {
            auto bit = basis[j].parts[key.first].find(key.second);
            if (bit != basis[j].parts[key.first].end()) a[r][j] = bit->second;
        }
    }
    SolveResult sol = gauss_solve(std::move(a), std::move(rhs));
    if (sol.status == SolveStatus::Underdetermined)
        throw recovery_error("AmbiguousRecovery",
                             "candidate exponentials not independent to this degree");
    if (sol.status == SolveStatus::Inconsistent)
        throw recovery_error("AmbiguousRecovery", "series not spanned by the candidate list");
    std::vector<KMTerm> terms;
    for (size_t j = 0; j < candidates.size(); ++j)
        if (sol.x[j] != 0) terms.push_back({sol.x[j], candidates[j]});
    return KMStructure(std::move(terms));
}

inline KMStructure recover_by_moments(const TruncatedSeries& q,
                                      const IntersectionLattice& lattice, const Int& bound) {
    int rank = lattice.rank();
    int max_degree = q.max_degree();
    {
        std::vector<RatVec> qm(rank, RatVec(rank));
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) qm[i][j] = make_rat(lattice.entry(i, j));
        if (matrix_rank(qm) < rank)
            throw recovery_error("AmbiguousRecovery",
                                 "degenerate intersection form: classes not determined");
    }
    TruncatedSeries c = normalize_C(q, lattice);

    // Classes enter the series only through Q K, so separate along a direction
    // injective on the image box |(QK)_j| <= bound * row norm.
    Int row_norm = 0;
    for (int i = 0; i < rank; ++i) {
        Int s = 0;
        for (int j = 0; j < rank; ++j) s += abs(lattice.entry(i, j));
        row_norm = std::max(row_norm, s);
    }
    IntVec u = separating_direction_bound(bound * row_norm, rank);
    RatVec z(rank);
    for (int i = 0; i < rank; ++i) z[i] = make_rat(u[i]);

    std::vector<PronyTerm> nodes;
    try {
        nodes = prony(directional_moments(c, z));
    } catch (const Error& e) {
        if (e.code() == "InsufficientMoments")
            throw recovery_error("AmbiguousRecovery", e.what());
        throw;
    }
    int p = static_cast<int>(nodes.size());
    if (p == 0) {
        KMStructure empty;
        if (!(expand_structure(empty, lattice, max_degree) == q))
            throw recovery_error("AmbiguousRecovery", "re-expansion check failed");
        return empty;
    }
    // Certification needs the Hankel rank to have stabilized: degree >= 2p.
    if (2 * p > max_degree)
        throw recovery_error("AmbiguousRecovery", "truncation too low to certify the term count");

    std::vector<Int> lam;
    std::vector<Rat> amps;
    for (const auto& t : nodes) {
        lam.push_back(t.node);
        amps.push_back(t.amplitude);
    }

    // Per basis direction: contracted moments give a_i (Q K_i)_j.
    std::vector<IntVec> qk(p, IntVec(rank));
    for (int j = 0; j < rank; ++j) {
        RatVec dir(rank, Rat(0));
        dir[j] = 1;
        MomentSequence mj = directional_moments(contract(c, dir, 1), z);
        if (static_cast<int>(mj.moments.size()) < p)
            throw recovery_error("AmbiguousRecovery", "truncation too low for coordinate moments");
        SolveResult w = detail::vandermonde_solve(lam, mj.moments);
        if (w.status != SolveStatus::Unique)
            throw recovery_error("AmbiguousRecovery", "coordinate Vandermonde singular");
        for (int i = 0; i < p; ++i) {
            Rat v = w.x[i] / amps[i];
            if (!is_integer(v))
                throw recovery_error("NonIntegerCoordinate", "Q K has a non-integer entry");
            qk[i][j] = v.get_num();
        }
    }

    std::vector<KMTerm> terms;
    for (int i = 0; i < p; ++i) {
        std::vector<RatVec> qm(rank, RatVec(rank));
        RatVec rhs(rank);
        for (int r = 0; r < rank; ++r) {
            rhs[r] = make_rat(qk[i][r]);
            for (int col = 0; col < rank; ++col) qm[r][col] = make_rat(lattice.entry(r, col));
        }
        SolveResult sol = gauss_solve(std::move(qm), std::move(rhs));
        if (sol.status != SolveStatus::Unique)
            throw recovery_error("AmbiguousRecovery", "class reconstruction singular");
        LatticeClass k(rank);
        for (int r = 0; r < rank; ++r) {
            if (!is_integer(sol.x[r]))
                throw recovery_error("NonIntegerCoordinate", "recovered class not integral");
            k[r] = sol.x[r].get_num();
            if (abs(k[r]) > bound)
                throw recovery_error("BoundExceeded", "recovered class outside the stated box");
        }
        terms.push_back({amps[i], std::move(k)});
    }
    return KMStructure(std::move(terms));
}

}  // namespace detail

/// Inverse of expand_structure. With a candidate list the coefficients come
/// from one exact linear solve; with a coordinate bound the exponential-sum
/// pipeline (moments, Hankel recurrence, integer nodes, Vandermonde) runs.
/// The result is always certified by exact re-expansion.
inline KMStructure recover_structure(const TruncatedSeries& q, const IntersectionLattice& lattice,
                                     const RecoveryHint& hint) {
    if (q.nvars != lattice.rank()) throw dimension_mismatch("series vs lattice rank");
    KMStructure result;
    if (hint.candidates) {
        result = detail::recover_by_candidates(q, lattice, *hint.candidates);
    } else if (hint.bound) {
        result = detail::recover_by_moments(q, lattice, *hint.bound);
    } else {
        throw recovery_error("AmbiguousRecovery", "recovery needs a bound or a candidate list");
    }
    if (!(expand_structure(result, lattice, q.max_degree()) == q))
        throw recovery_error("AmbiguousRecovery", "re-expansion does not reproduce the series");
    return result;
}

/// Restriction of a series to the span of sublattice basis vectors:
/// substitute x = sum_t y_t n_t.
inline TruncatedSeries restrict_series(const TruncatedSeries& f,
                                       const std::vector<LatticeClass>& basis) {
    size_t s = basis.size();
    for (const auto& n : basis)
        if (n.size() != static_cast<size_t>(f.nvars))
            throw dimension_mismatch("sublattice basis vector length");
    TruncatedSeries out(static_cast<int>(s), f.max_degree());
    for (int d = 0; d <= f.max_degree(); ++d) {
        for (const auto& [e, c] : f.parts[d]) {
            MonomialMap<Rat> term;
            term.emplace(Exponents(s, 0), c);
            for (int i = 0; i < f.nvars; ++i) {
                if (e[i] == 0) continue;
                MonomialMap<Rat> linear;
                for (size_t t = 0; t < s; ++t) {
                    if (basis[t][i] == 0) continue;
                    Exponents ey(s, 0);
                    ey[t] = 1;
                    linear.emplace(std::move(ey), make_rat(basis[t][i]));
                }
                for (int pw = 0; pw < e[i]; ++pw) term = poly_mul(term, linear);
            }
            out.parts[d] = poly_add(out.parts[d], term);
        }
    }
    return out;
}

/// Corollary-alg recovery: run the pipeline on the Neron-Severi restriction,
/// then re-embed the classes into the full lattice.
inline KMStructure recover_from_NS(const TruncatedSeries& q_ns,
                                   const IntersectionLattice& lattice,
                                   const std::vector<LatticeClass>& ns_basis,
                                   const RecoveryHint& hint) {
    size_t s = ns_basis.size();
    if (q_ns.nvars != static_cast<int>(s))
        throw dimension_mismatch("restricted series vs NS basis size");
    std::vector<Int> q_sub(s * s);
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) q_sub[i * s + j] = pair(lattice, ns_basis[i], ns_basis[j]);
    IntersectionLattice ns_lattice(static_cast<int>(s), std::move(q_sub));
    {
        std::vector<RatVec> qm(s, RatVec(s));
        for (size_t i = 0; i < s; ++i)
            for (size_t j = 0; j < s; ++j) qm[i][j] = make_rat(ns_lattice.entry(i, j));
        if (matrix_rank(qm) < static_cast<int>(s))
            throw recovery_error("DegenerateRestriction", "Q restricted to NS is degenerate");
    }
    KMStructure sub = recover_structure(q_ns, ns_lattice, hint);
    std::vector<KMTerm> terms;
    for (const auto& t : sub.terms()) {
        LatticeClass k(lattice.rank(), Int(0));
        for (size_t i = 0; i < s; ++i)
            for (int r = 0; r < lattice.rank(); ++r) k[r] += t.cls[i] * ns_basis[i][r];
        terms.push_back({t.coefficient, std::move(k)});
    }
    return KMStructure(std::move(terms));
}

}  // namespace kmwb
