#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kmwb/lattice.hpp"
#include "kmwb/simplex.hpp"

namespace kmwb {

/// Finitely generated rational cone in lattice (x) Q, standing in for the
/// closed effective cone. Results are exact for the given generators.
class RationalCone {
  public:
    RationalCone() = default;

    RationalCone(int dim, std::vector<RatVec> generators)
        : dim_(dim), gens_(std::move(generators)) {
        for (const auto& g : gens_) {
            if (g.size() != static_cast<size_t>(dim_))
                throw dimension_mismatch("cone generator length");
            bool zero = true;
            for (const auto& v : g)
                if (v != 0) zero = false;
            if (zero) throw verification_error("ZeroGenerator", "cone generators must be nonzero");
        }
    }

    int dim() const { return dim_; }
    const std::vector<RatVec>& generators() const { return gens_; }
    bool empty() const { return gens_.empty(); }

  private:
    int dim_ = 0;
    std::vector<RatVec> gens_;
};

struct InsideCertificate {
    RatVec lambda;  // nonnegative, sum lambda_j g_j = x
};

struct OutsideCertificate {
    RatVec functional;  // phi with phi(g_j) >= 0 for all j and phi(x) < 0
};

using MembershipResult = std::variant<InsideCertificate, OutsideCertificate>;

inline bool is_inside(const MembershipResult& r) {
    return std::holds_alternative<InsideCertificate>(r);
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// Exact Farkas alternative: either a nonnegative combination reaching x, or a
/// functional separating x from every generator. Both certificates are
/// re-verified before being returned.
inline MembershipResult membership(const RationalCone& cone, const RatVec& x) {
    if (x.size() != static_cast<size_t>(cone.dim())) throw dimension_mismatch("membership point");
    const auto& gens = cone.generators();

    LinearProgram feas;
    for (size_t j = 0; j < gens.size(); ++j) feas.add_var(true);
    for (int i = 0; i < cone.dim(); ++i) {
        std::vector<std::pair<int, Rat>> row;
        for (size_t j = 0; j < gens.size(); ++j)
            if (gens[j][i] != 0) row.emplace_back(static_cast<int>(j), gens[j][i]);
        feas.add_constraint(std::move(row), Rel::Eq, x[i]);
    }
    LPSolution sol = feas.solve();
    if (sol.status == LPStatus::Optimal) {
        InsideCertificate cert{sol.x};
        RatVec recon(x.size(), Rat(0));
        for (size_t j = 0; j < gens.size(); ++j) {
            if (cert.lambda[j] < 0)
                throw verification_error("CertificateInvalid", "negative multiplier");
            for (size_t i = 0; i < recon.size(); ++i) recon[i] += cert.lambda[j] * gens[j][i];
        }
        if (recon != x) throw verification_error("CertificateInvalid", "multipliers miss x");
        return cert;
    }

    // Infeasible: the separating functional solves the alternative system
    // phi(g_j) >= 0, phi(x) = -1.
    LinearProgram sep;
    for (int i = 0; i < cone.dim(); ++i) sep.add_var(false);
    for (const auto& g : gens) {
        std::vector<std::pair<int, Rat>> row;
        for (int i = 0; i < cone.dim(); ++i)
            if (g[i] != 0) row.emplace_back(i, g[i]);
        sep.add_constraint(std::move(row), Rel::Ge, Rat(0));
    }
    {
        std::vector<std::pair<int, Rat>> row;
        for (int i = 0; i < cone.dim(); ++i)
            if (x[i] != 0) row.emplace_back(i, x[i]);
        sep.add_constraint(std::move(row), Rel::Eq, Rat(-1));
    }
    LPSolution alt = sep.solve();
    if (alt.status != LPStatus::Optimal)
        throw verification_error("CertificateInvalid", "Farkas alternative has no witness");
    OutsideCertificate cert{alt.x};
    for (const auto& g : gens)
        if (dot(cert.functional, g) < 0)
            throw verification_error("CertificateInvalid", "functional negative on a generator");
    if (dot(cert.functional, x) >= 0)
        throw verification_error("CertificateInvalid", "functional nonnegative on x");
    return cert;
}

inline RatVec to_ratvec(const LatticeClass& x) {
    RatVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = make_rat(x[i]);
    return out;
}

/// Nef against the given cone: Q(h, g) >= 0 for every generator g.
inline bool is_nef(const IntersectionLattice& lattice, const RationalCone& cone,
                   const LatticeClass& h) {
    check_length(lattice, h.size(), "is_nef class");
    RatVec hq = to_ratvec(h);
    for (const auto& g : cone.generators())
        if (pair_q(lattice, hq, g) < 0) return false;
    return true;
}

/// cone contains no line: cone /\ -cone = {0}. A line exists iff some -g_j is
/// itself a cone member.
inline bool is_salient(const RationalCone& cone) {
    for (const auto& g : cone.generators()) {
        RatVec neg(g.size());
        for (size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
        if (is_inside(membership(cone, neg))) return false;
    }
    return true;
}

struct Decomposition {
    LatticeClass c;  // (K_X + K_i) / 2
    LatticeClass d;  // (K_X - K_i) / 2
    InsideCertificate c_certificate;
    InsideCertificate d_certificate;
};

/// K_X = C + D with K_i = C - D, both integral and both in the cone.
inline Decomposition decompose(const LatticeClass& kx, const LatticeClass& ki,
                               const RationalCone& cone) {
    if (kx.size() != ki.size()) throw dimension_mismatch("decompose classes");
    LatticeClass c(kx.size()), d(kx.size());
    for (size_t i = 0; i < kx.size(); ++i) {
        Int sum = kx[i] + ki[i];
        Int dif = kx[i] - ki[i];
        if (sum % 2 != 0)
            throw verification_error("ParityViolation", "K_i not congruent to K_X mod 2");
        c[i] = sum / 2;
        d[i] = dif / 2;
    }
    auto mc = membership(cone, to_ratvec(c));
    if (!is_inside(mc))
        throw verification_error("NotInCone", "C = (K_X + K_i)/2 is outside the cone");
    auto md = membership(cone, to_ratvec(d));
    if (!is_inside(md))
        throw verification_error("NotInCone", "D = (K_X - K_i)/2 is outside the cone");
    return {std::move(c), std::move(d), std::get<InsideCertificate>(mc),
            std::get<InsideCertificate>(md)};
}

/// Equality case of the adjunction bound against a hyperplane section:
/// 2g - 2 = H^2 + K_i.H, equivalent under the preconditions to Q(D, H) = 0.
inline bool adjunction_equality_detect(const IntersectionLattice& lattice,
                                       const RationalCone& cone, const LatticeClass& kx,
                                       const LatticeClass& ki, const LatticeClass& h, Int genus) {
    if (!is_nef(lattice, cone, h))
        throw verification_error("InvalidSectionData", "H is not nef");
    Int lhs = 2 * genus - 2;
    if (lhs != pair(lattice, h, h) + pair(lattice, kx, h))
        throw verification_error("InvalidSectionData", "(H, g) fails 2g-2 = H^2 + K_X.H");
    return lhs == pair(lattice, h, h) + pair(lattice, ki, h);
}

/// All integral K with K = w2 (mod 2) admitting a decomposition, enumerated by
/// exact bounding-box extraction on {D : D in cone, K_X - D in cone} followed
/// by integer-point filtering. Output sorted lexicographically; closed under
/// negation by construction.
inline std::vector<LatticeClass> enumerate_candidates(const LatticeClass& kx,
                                                      const RationalCone& cone, const IntVec& w2) {
    if (kx.size() != static_cast<size_t>(cone.dim()) || w2.size() != kx.size())
        throw dimension_mismatch("enumerate_candidates inputs");
    if (!is_salient(cone)) throw unbounded_error("cone contains a line; candidate set unbounded");

    int rank = cone.dim();
    const auto& gens = cone.generators();
    size_t n = gens.size();

    // min/max of D_i over the polytope, via LP in (lambda, mu).
    auto extremum = [&](int coord, bool maximize) -> std::optional<Rat> {
        LinearProgram lp;
        for (size_t j = 0; j < 2 * n; ++j) lp.add_var(true);
        for (int i = 0; i < rank; ++i) {
            std::vector<std::pair<int, Rat>> row;
            for (size_t j = 0; j < n; ++j) {
                if (gens[j][i] == 0) continue;
                row.emplace_back(static_cast<int>(j), gens[j][i]);
                row.emplace_back(static_cast<int>(n + j), gens[j][i]);
            }
            lp.add_constraint(std::move(row), Rel::Eq, make_rat(kx[i]));
        }
        std::vector<std::pair<int, Rat>> objective;
        for (size_t j = 0; j < n; ++j)
            if (gens[j][coord] != 0) objective.emplace_back(static_cast<int>(j), gens[j][coord]);
        lp.set_objective(std::move(objective), maximize);
        LPSolution sol = lp.solve();
        if (sol.status == LPStatus::Infeasible) return std::nullopt;
        if (sol.status == LPStatus::Unbounded)
            throw unbounded_error("candidate polytope unbounded");
        return sol.objective;
    };

    IntVec lo(rank), hi(rank);
    for (int i = 0; i < rank; ++i) {
        auto mn = extremum(i, false);
        auto mx = extremum(i, true);
        if (!mn || !mx) return {};
        // K = K_X - 2D, so the K_i range is [kx_i - 2 Dmax_i, kx_i - 2 Dmin_i].
        Rat klo = make_rat(kx[i]) - 2 * *mx;
        Rat khi = make_rat(kx[i]) - 2 * *mn;
        mpz_cdiv_q(lo[i].get_mpz_t(), klo.get_num().get_mpz_t(), klo.get_den().get_mpz_t());
        mpz_fdiv_q(hi[i].get_mpz_t(), khi.get_num().get_mpz_t(), khi.get_den().get_mpz_t());
    }

    std::vector<LatticeClass> out;
    LatticeClass k(rank);
    // Align each coordinate with w2 mod 2, then step by 2.
    auto align = [&](int i) -> std::optional<Int> {
        Int start = lo[i];
        if (((start - w2[i]) % 2) != 0) start += 1;
        if (start > hi[i]) return std::nullopt;
        return start;
    };
    std::function<void(int)> rec = [&](int i) {
        if (i == rank) {
            try {
                decompose(kx, k, cone);
            } catch (const Error&) {
                return;
            }
            out.push_back(k);
            return;
        }
        auto start = align(i);
        if (!start) return;
        for (Int v = *start; v <= hi[i]; v += 2) {
            k[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

struct GentypeEntry {
    LatticeClass k;
    Int k_squared;
    Int audit;  // 4 (D^2 - K_X.D), so that K^2 = K_X^2 + audit
    bool equality = false;
    bool allowed_equality = false;  // equality with K = +-K_X
    bool violation = false;         // K^2 > K_X^2, or equality away from +-K_X
};

struct GentypeReport {
    bool hypotheses_met = false;
    std::vector<std::string> failed_hypotheses;
    Int kx_squared;
    std::vector<GentypeEntry> entries;
    bool all_ok = true;
};

/// K^2 <= K_X^2 with equality only at +-K_X, under Hodge-index signature,
/// K_X nef, and K_X^2 > 0. Hypothesis failures are reported, never thrown.
inline GentypeReport gentype_bound_check(const IntersectionLattice& lattice,
                                         const RationalCone& cone, const LatticeClass& kx,
                                         const std::vector<LatticeClass>& candidates) {
    GentypeReport rep;
    Signature sig = signature(lattice);
    if (!(sig.n_plus == 1 && sig.n_zero == 0 && sig.n_minus == lattice.rank() - 1))
        rep.failed_hypotheses.push_back("signature is not (1, n-1)");
    if (!is_nef(lattice, cone, kx)) rep.failed_hypotheses.push_back("K_X is not nef");
    rep.kx_squared = pair(lattice, kx, kx);
    if (!(rep.kx_squared > 0)) rep.failed_hypotheses.push_back("K_X^2 <= 0");
    rep.hypotheses_met = rep.failed_hypotheses.empty();
    if (!rep.hypotheses_met) return rep;

    for (const auto& k : candidates) {
        GentypeEntry e;
        e.k = k;
        e.k_squared = pair(lattice, k, k);
        LatticeClass d(k.size());
        for (size_t i = 0; i < k.size(); ++i) d[i] = (kx[i] - k[i]) / 2;
        e.audit = 4 * (pair(lattice, d, d) - pair(lattice, kx, d));
        e.equality = (e.k_squared == rep.kx_squared);
        e.allowed_equality = e.equality && (k == kx || k == negate(kx));
        e.violation = (e.k_squared > rep.kx_squared) || (e.equality && !e.allowed_equality);
        if (e.violation) rep.all_ok = false;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

}  // namespace kmwb
