// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "insector/beam_design.hpp"
#include "insector/sampling.hpp"
#include "insector/sector.hpp"
#include "insector/types.hpp"

namespace insector {

// In-sector partial DFT: a_l(m, j) = U_N[c[m]][d1 + j].
struct SensingMatrix {
    ComplexMatrix a_l;
    ShiftSet shifts;
    Sector sector;
};

struct SparseEstimate {
    std::vector<int> support;
    std::vector<Complex> values;
    double residual_norm = 0.0;

    // Scatter into a dense vector of the given length.
    ComplexVector dense(int length) const;
};

SensingMatrix build_sensing_matrix(const ShiftSet& shifts, const Sector& sector);

// y[m] = <h, f_m> = f_m^* h for each beam.
ComplexVector measure(const ComplexVector& h, const std::vector<ComplexVector>& beams);

// The three equivalent noiseless measurement routes for circulant beams.
ComplexVector measure_inner_product(const ComplexVector& h, const BaseBeam& base,
                                    const ShiftSet& shifts);
ComplexVector measure_convolution(const ComplexVector& h, const BaseBeam& base,
                                  const ShiftSet& shifts);
ComplexVector measure_masked_dft(const ComplexVector& h, const BaseBeam& base,
                                 const ShiftSet& shifts);

// Adds CN(0, noise_std^2) to every entry.
void add_noise(ComplexVector& y, double noise_std, Rng& rng);

ComplexVector simulate_measurements(const ComplexVector& h, const BaseBeam& base,
                                    const ShiftSet& shifts, double noise_std, Rng& rng);

// Orthogonal matching pursuit. Selection scores are |a_k^* r| / ||a_k||;
// equal scores go to the lowest column index. Stops after max_sparsity
// atoms or once ||r|| <= residual_tol * ||y||. Least squares on the support
// uses a complete orthogonal decomposition with relative rank threshold 1e-12.
SparseEstimate omp(const ComplexVector& y, const ComplexMatrix& a, int max_sparsity,
                   double residual_tol);

// Same, with selection restricted to columns [window_begin, window_end).
SparseEstimate omp_windowed(const ComplexVector& y, const ComplexMatrix& a, int window_begin,
                            int window_end, int max_sparsity, double residual_tol);

// g_hat[j] = x_hat[j] conj(p_eff[d1 + j]) / |p_eff[d1 + j]|^2
ComplexVector demask(const SparseEstimate& x_hat, const BaseBeam& base, const Sector& sector);

// h_hat = [U_N]_L g_hat_L
ComplexVector reconstruct_channel(const ComplexVector& g_hat_l, const Sector& sector);

// N x (o N) dictionary of unit-norm steering vectors on the spatial
// frequency grid 2k / (o N).
ComplexMatrix oversampled_dictionary(int n, int oversampling);

// F D for beams F = [f_0, ..., f_{M-1}]^*.
ComplexMatrix beam_dictionary_product(const std::vector<ComplexVector>& beams, int oversampling);

struct OversampledEstimate {
    ComplexVector h_hat;
    SparseEstimate atoms; // indices on the o N dictionary grid
};

// OMP over F D with atoms restricted to the sector window
// [o d1, o (d2 + 1)) in every iteration; h_hat = D g_win.
OversampledEstimate omp_oversampled_atoms(const ComplexVector& y,
                                          const std::vector<ComplexVector>& beams,
                                          int oversampling, const Sector& sector,
                                          int max_sparsity, double residual_tol);

// h_hat only.
ComplexVector omp_oversampled(const ComplexVector& y, const std::vector<ComplexVector>& beams,
                              int oversampling, const Sector& sector, int max_sparsity,
                              double residual_tol);

} // namespace insector
