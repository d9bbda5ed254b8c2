#pragma once

#include <tuple>
#include <vector>

#include "kmwb/errors.hpp"
#include "kmwb/rational.hpp"

namespace kmwb {

/// Finite-rank integral lattice with a symmetric intersection form.
/// Rank 0 is legal (degenerate blow-down base).
class IntersectionLattice {
  public:
    IntersectionLattice() : rank_(0) {}

    IntersectionLattice(int rank, std::vector<Int> form_row_major)
        : rank_(rank), q_(std::move(form_row_major)) {
        if (rank < 0) throw verification_error("BadRank", "negative rank");
        if (q_.size() != static_cast<size_t>(rank) * rank)
            throw dimension_mismatch("intersection form is not rank x rank");
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j)
                if (entry(i, j) != entry(j, i))
                    throw verification_error("NotSymmetric", "intersection form must be symmetric");
    }

    int rank() const { return rank_; }
    const Int& entry(int i, int j) const { return q_[static_cast<size_t>(i) * rank_ + j]; }
    const std::vector<Int>& form() const { return q_; }

  private:
    int rank_;
    std::vector<Int> q_;
};

using LatticeClass = IntVec;

inline void check_length(const IntersectionLattice& lattice, size_t n, const char* what) {
    if (n != static_cast<size_t>(lattice.rank()))
        throw dimension_mismatch(std::string(what) + ": length != lattice rank");
}

/// Q(x, y) = x^T Q y, exact.
inline Int pair(const IntersectionLattice& lattice, const LatticeClass& x, const LatticeClass& y) {
    check_length(lattice, x.size(), "pair x");
    check_length(lattice, y.size(), "pair y");
    Int acc = 0;
    for (int i = 0; i < lattice.rank(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < lattice.rank(); ++j) acc += x[i] * lattice.entry(i, j) * y[j];
    }
    return acc;
}

/// Q(x, y) for rational vectors.
inline Rat pair_q(const IntersectionLattice& lattice, const RatVec& x, const RatVec& y) {
    check_length(lattice, x.size(), "pair x");
    check_length(lattice, y.size(), "pair y");
    Rat acc = 0;
    for (int i = 0; i < lattice.rank(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < lattice.rank(); ++j) acc += x[i] * lattice.entry(i, j) * y[j];
    }
    return acc;
}

/// Q(x, y) over the Gaussian rationals (bilinear extension, no conjugation).
inline GaussRat pair_c(const IntersectionLattice& lattice, const std::vector<GaussRat>& x,
                       const std::vector<GaussRat>& y) {
    check_length(lattice, x.size(), "pair x");
    check_length(lattice, y.size(), "pair y");
    GaussRat acc;
    for (int i = 0; i < lattice.rank(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < lattice.rank(); ++j)
            acc += x[i] * GaussRat(make_rat(lattice.entry(i, j))) * y[j];
    }
    return acc;
}

/// Q applied to one class: the covector Qx, whose dot with y gives Q(x, y).
inline IntVec apply_form(const IntersectionLattice& lattice, const LatticeClass& x) {
    check_length(lattice, x.size(), "apply_form");
    IntVec out(lattice.rank(), 0);
    for (int i = 0; i < lattice.rank(); ++i)
        for (int j = 0; j < lattice.rank(); ++j) out[i] += lattice.entry(i, j) * x[j];
    return out;
}

/// Componentwise x == w (mod 2). w entries are taken mod 2 as well.
inline bool parity_equal(const IntersectionLattice& lattice, const LatticeClass& x,
                         const IntVec& w) {
    check_length(lattice, x.size(), "parity x");
    check_length(lattice, w.size(), "parity w");
    for (size_t i = 0; i < x.size(); ++i) {
        if (((x[i] - w[i]) % 2) != 0) return false;
    }
    return true;
}

struct Signature {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact signature of Q by symmetric Gaussian reduction over the rationals
/// (Sylvester's law); no floating point.
inline Signature signature(const IntersectionLattice& lattice) {
    int n = lattice.rank();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = make_rat(lattice.entry(i, j));

    Signature sig;
    for (int k = 0; k < n; ++k) {
        // Find a nonzero diagonal pivot at or after k.
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            // All remaining diagonal entries vanish. If some off-diagonal entry is
            // nonzero, a symmetric row+column addition creates a diagonal pivot.
            int r = -1, c = -1;
            for (int i = k; i < n && r < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (a[i][j] != 0) {
                        r = i;
                        c = j;
                        break;
                    }
            if (r < 0) {
                sig.n_zero += n - k;
                break;
            }
            for (int j = 0; j < n; ++j) a[r][j] += a[c][j];
            for (int i = 0; i < n; ++i) a[i][r] += a[i][c];
            piv = r;
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            for (int i = 0; i < n; ++i) std::swap(a[i][piv], a[i][k]);
        }
        Rat d = a[k][k];
        if (d > 0)
            ++sig.n_plus;
        else
            ++sig.n_minus;
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rat f = a[i][k] / d;
            for (int j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
            for (int j = 0; j < n; ++j) a[j][i] -= f * a[j][k];
        }
    }
    return sig;
}

inline LatticeClass negate(const LatticeClass& x) {
    LatticeClass out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = -x[i];
    return out;
}

inline LatticeClass add(const LatticeClass& x, const LatticeClass& y) {
    if (x.size() != y.size()) throw dimension_mismatch("class addition");
    LatticeClass out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return out;
}

inline bool is_zero_class(const LatticeClass& x) {
    for (const auto& c : x)
        if (c != 0) return false;
    return true;
}

}  // namespace kmwb
