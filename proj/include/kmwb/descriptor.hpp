#pragma once

#include <optional>
#include <vector>

#include "kmwb/cone.hpp"
#include "kmwb/hodge.hpp"
#include "kmwb/linalg.hpp"
#include "kmwb/structure.hpp"

namespace kmwb {

/// All exact data known about one surface: lattice, characteristic data, and
/// the optional cone / NS / Hodge / embedded-surface blocks.
struct SurfaceDescriptor {
    IntersectionLattice lattice;
    int b_plus = 3;
    IntVec w2;
    LatticeClass kx;
    std::optional<std::vector<LatticeClass>> ns_basis;
    std::optional<RationalCone> cone;
    std::optional<HodgeBasis> hodge;
    std::vector<SurfaceConstraint> surfaces;

    void validate() const {
        if (b_plus < 3 || b_plus % 2 == 0)
            throw verification_error("BadBPlus", "b_+ must be odd and >= 3");
        check_length(lattice, w2.size(), "w2");
        check_length(lattice, kx.size(), "KX");
        if (!parity_equal(lattice, kx, w2))
            throw verification_error("ParityViolation", "K_X must be congruent to w2 mod 2");
        if (ns_basis) {
            size_t s = ns_basis->size();
            std::vector<RatVec> q(s, RatVec(s));
            for (size_t i = 0; i < s; ++i) {
                check_length(lattice, (*ns_basis)[i].size(), "ns basis vector");
                for (size_t j = 0; j < s; ++j)
                    q[i][j] = make_rat(pair(lattice, (*ns_basis)[i], (*ns_basis)[j]));
            }
            if (matrix_rank(q) < static_cast<int>(s))
                throw verification_error("DegenerateRestriction",
                                         "Q restricted to the NS basis is degenerate");
        }
        if (cone && cone->dim() != lattice.rank())
            throw dimension_mismatch("cone dimension vs lattice rank");
        for (const auto& surf : surfaces) check_length(lattice, surf.sigma.size(), "surface class");
    }
};

}  // namespace kmwb
