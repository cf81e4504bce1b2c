// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "insector/sector.hpp"
#include "insector/types.hpp"

namespace insector {

class ShiftSet;

// Unit-modulus spectrum inside the sector, zero outside.
struct SpectralMask {
    ComplexVector p;
    Sector sector;
};

struct BaseBeam {
    ComplexVector f_b;   // unit norm
    SpectralMask mask;
    double papr = 0.0;
    double norm_factor = 1.0; // sqrt(rho)

    // Spectral mask actually realized by the unit-norm beam:
    // sqrt(N) dft(flip_conjugate(f_b)) = norm_factor * p.
    ComplexVector effective_mask() const { return norm_factor * mask.p; }
};

// Peak-to-average power ratio across the antenna weights.
double papr(const ComplexVector& v);

SpectralMask random_mask(const Sector& sector, Rng& rng);

BaseBeam mask_to_base_beam(const SpectralMask& mask);

// Draws n_candidates random masks and keeps the lowest-PAPR beam
// (first minimum wins).
BaseBeam select_base_beam(const Sector& sector, int n_candidates, Rng& rng);

// f_m = circulant_shift(f_b, c[m])
std::vector<ComplexVector> beam_ensemble(const BaseBeam& base, const ShiftSet& shifts);

// Energy of dft(f) inside the sector.
double in_sector_energy(const ComplexVector& f, const Sector& sector);

} // namespace insector
