// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "aefg/sparse.hpp"
#include "aefg/stencil.hpp"

#include <numbers>
#include <vector>

namespace aefg {

// Confidence scales and rotation angle of the three-force affinity model.
// Defaults keep the binding, figure and ground modes well separated; they are
// configuration, not calibrated values.
struct AffinityParams {
    double sigma_b = 0.1;
    double sigma_fg = 0.05;
    double phi = std::numbers::pi / 4.0;
    bool wedge_rescale = true;

    // Throws ConfigError.
    void validate() const;
};

// Per-node total confidence, d(p) = sum_q |W(p,q)|.
struct DegreeVector {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t p) const noexcept { return values[p]; }
};

struct AffinitySystem {
    SparseHermitianMatrix weights;
    DegreeVector degree;
};

// Probabilities of wrongly binding p and q, wrongly calling q figure, and
// wrongly calling q ground.
struct PairEnergies {
    double binding;
    double figure;
    double ground;
};

PairEnergies pair_energies(double b, double f, double e_p, double e_q);

// W(p,q) = C_B + C_F e^{i phi} + C_G e^{-i phi} with C_X = exp(-E_X / sigma_X).
// arg W(p,q) > 0 means q is figure relative to p.
cplx pair_affinity(double b, double f, double e_p, double e_q, const AffinityParams& params);

// Scales every entry's angle so the total absolute angle over all stored
// entries is pi/2. Magnitudes and signs of angles are preserved; an all-real
// matrix is returned unchanged. Conjugate pairs stay exact conjugates.
SparseHermitianMatrix rescale_theta(const SparseHermitianMatrix& w);

// W <- (W + W*)/2 over a structurally symmetric matrix. The result satisfies
// is_hermitian() exactly.
SparseHermitianMatrix symmetrize(const SparseHermitianMatrix& w);

// Row sums of |W|.
DegreeVector degree_of(const SparseHermitianMatrix& w);

// Sum of |arg w| over all stored entries.
double total_abs_angle(const SparseHermitianMatrix& w);

// Relation map -> pairwise affinities for every in-grid ordered stencil pair,
// optional angle rescaling, Hermitian symmetrization, degrees.
AffinitySystem assemble(const RelationMap& rel, const AffinityParams& params);

} // namespace aefg
