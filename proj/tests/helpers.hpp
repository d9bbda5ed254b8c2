#pragma once

// Deterministic generators shared by the property tests.

#include <random>
#include <set>
#include <vector>

#include "kmwb/workbench.hpp"

namespace testgen {

using kmwb::Int;
using kmwb::IntersectionLattice;
using kmwb::KMStructure;
using kmwb::KMTerm;
using kmwb::LatticeClass;
using kmwb::Rat;

inline int uniform(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rat random_coeff(std::mt19937& rng, int num_bound, int den_bound) {
    int num = 0;
    while (num == 0) num = uniform(rng, -num_bound, num_bound);
    return kmwb::make_rat(Int(num), Int(uniform(rng, 1, den_bound)));
}

inline IntersectionLattice random_lattice(std::mt19937& rng, int rank, int entry_bound) {
    std::vector<Int> q(static_cast<size_t>(rank) * rank);
    for (int i = 0; i < rank; ++i)
        for (int j = i; j < rank; ++j) {
            Int v = uniform(rng, -entry_bound, entry_bound);
            q[static_cast<size_t>(i) * rank + j] = v;
            q[static_cast<size_t>(j) * rank + i] = v;
        }
    return IntersectionLattice(rank, std::move(q));
}

inline KMStructure random_structure(std::mt19937& rng, int rank, int max_terms, int coord_bound,
                                    int num_bound, int den_bound) {
    int want = uniform(rng, 1, max_terms);
    std::set<LatticeClass> used;
    std::vector<KMTerm> terms;
    while (static_cast<int>(terms.size()) < want) {
        LatticeClass k(rank);
        for (int i = 0; i < rank; ++i) k[i] = uniform(rng, -coord_bound, coord_bound);
        if (!used.insert(k).second) continue;
        terms.push_back({random_coeff(rng, num_bound, den_bound), std::move(k)});
    }
    return KMStructure(std::move(terms));
}

/// Random matrix of determinant +-1, built from elementary row operations.
inline std::vector<std::vector<Int>> random_unimodular(std::mt19937& rng, int n, int ops) {
    std::vector<std::vector<Int>> u(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    for (int step = 0; step < ops; ++step) {
        int i = uniform(rng, 0, n - 1);
        int j = uniform(rng, 0, n - 1);
        if (i == j) continue;
        Int f = uniform(rng, -2, 2);
        for (int c = 0; c < n; ++c) u[i][c] += f * u[j][c];
    }
    return u;
}

}  // namespace testgen
