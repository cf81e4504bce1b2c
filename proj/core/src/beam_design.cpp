// SPDX-License-Identifier: Apache-2.0
#include "insector/beam_design.hpp"

#include <cmath>

#include "insector/dft.hpp"
#include "insector/sampling.hpp"

namespace insector {

double papr(const ComplexVector& v) {
    const double mean = v.squaredNorm() / static_cast<double>(v.size());
    if (mean <= 0.0) throw NumericError("papr: zero vector");
    return v.cwiseAbs2().maxCoeff() / mean;
}

SpectralMask random_mask(const Sector& sector, Rng& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    ComplexVector p = ComplexVector::Zero(sector.ambient());
    for (int i = sector.first(); i <= sector.last(); ++i) p[i] = std::polar(1.0, phase(rng));
    return {std::move(p), sector};
}

BaseBeam mask_to_base_beam(const SpectralMask& mask) {
    const int n = mask.sector.ambient();
    if (mask.p.size() != n) throw DimensionError("mask_to_base_beam: mask length != N");

    // p = sqrt(N) U_N^* f_FC  =>  f_FC = U_N p / sqrt(N), ||f_FC||^2 = N_sec / N
    const ComplexVector f_fc = idft(mask.p) / std::sqrt(static_cast<double>(n));
    ComplexVector f_b = flip_conjugate(f_fc);
    const double raw_norm = f_b.norm();
    if (raw_norm <= 0.0) throw NumericError("mask_to_base_beam: empty mask");
    f_b /= raw_norm;

    const double peak_ratio = papr(f_b);
    return BaseBeam{std::move(f_b), mask, peak_ratio, 1.0 / raw_norm};
}

BaseBeam select_base_beam(const Sector& sector, int n_candidates, Rng& rng) {
    if (n_candidates < 1) throw ConfigError("select_base_beam: need at least one candidate");
    BaseBeam best = mask_to_base_beam(random_mask(sector, rng));
    for (int c = 1; c < n_candidates; ++c) {
        BaseBeam candidate = mask_to_base_beam(random_mask(sector, rng));
        if (candidate.papr < best.papr) best = std::move(candidate);
    }
    return best;
}

std::vector<ComplexVector> beam_ensemble(const BaseBeam& base, const ShiftSet& shifts) {
    if (shifts.ambient() != base.f_b.size())
        throw DimensionError("beam_ensemble: shift set and beam lengths differ");
    std::vector<ComplexVector> beams;
    beams.reserve(static_cast<std::size_t>(shifts.size()));
    for (int c : shifts.shifts()) beams.push_back(circulant_shift(base.f_b, c));
    return beams;
}

double in_sector_energy(const ComplexVector& f, const Sector& sector) {
    if (f.size() != sector.ambient()) throw DimensionError("in_sector_energy: length != N");
    return dft(f).segment(sector.first(), sector.size()).squaredNorm();
}

} // namespace insector
