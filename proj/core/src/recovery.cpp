// SPDX-License-Identifier: Apache-2.0
#include "insector/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "insector/dft.hpp"

namespace insector {

namespace {

void require_same_length(const ComplexVector& h, const BaseBeam& base, const ShiftSet& shifts) {
    if (h.size() != base.f_b.size() || shifts.ambient() != h.size())
        throw DimensionError("measurement: channel, beam and shift set lengths differ");
}

// U_N[row][col] with the exponent reduced mod N
Complex dft_entry(long row, long col, long n) {
    const double phase = 2.0 * kPi * static_cast<double>((row * col) % n) / n;
    return std::polar(1.0 / std::sqrt(static_cast<double>(n)), phase);
}

} // namespace

ComplexVector SparseEstimate::dense(int length) const {
    ComplexVector out = ComplexVector::Zero(length);
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 0 || support[i] >= length)
            throw IndexError("sparse estimate: support index outside the dense length");
        out[support[i]] = values[i];
    }
    return out;
}

SensingMatrix build_sensing_matrix(const ShiftSet& shifts, const Sector& sector) {
    if (shifts.ambient() != sector.ambient())
        throw ConfigError("build_sensing_matrix: shift set and sector use different N");
    const long n = sector.ambient();
    ComplexMatrix a(shifts.size(), sector.size());
    for (int m = 0; m < shifts.size(); ++m)
        for (int j = 0; j < sector.size(); ++j) a(m, j) = dft_entry(shifts[m], sector.first() + j, n);
    return {std::move(a), shifts, sector};
}

ComplexVector measure(const ComplexVector& h, const std::vector<ComplexVector>& beams) {
    ComplexVector y(static_cast<Eigen::Index>(beams.size()));
    for (std::size_t m = 0; m < beams.size(); ++m) {
        if (beams[m].size() != h.size()) throw DimensionError("measure: beam length != N");
        y[static_cast<Eigen::Index>(m)] = beams[m].dot(h); // f^* h
    }
    return y;
}

ComplexVector measure_inner_product(const ComplexVector& h, const BaseBeam& base,
                                    const ShiftSet& shifts) {
    require_same_length(h, base, shifts);
    return measure(h, beam_ensemble(base, shifts));
}

ComplexVector measure_convolution(const ComplexVector& h, const BaseBeam& base,
                                  const ShiftSet& shifts) {
    require_same_length(h, base, shifts);
    const ComplexVector full = circular_convolve(h, flip_conjugate(base.f_b));
    ComplexVector y(shifts.size());
    for (int m = 0; m < shifts.size(); ++m) y[m] = full[shifts[m]];
    return y;
}

ComplexVector measure_masked_dft(const ComplexVector& h, const BaseBeam& base,
                                 const ShiftSet& shifts) {
    require_same_length(h, base, shifts);
    const ComplexVector x = dft(h).cwiseProduct(base.effective_mask());
    const ComplexVector full = idft(x);
    ComplexVector y(shifts.size());
    for (int m = 0; m < shifts.size(); ++m) y[m] = full[shifts[m]];
    return y;
}

void add_noise(ComplexVector& y, double noise_std, Rng& rng) {
    if (noise_std < 0.0) throw ConfigError("noise_std must be nonnegative");
    if (noise_std == 0.0) return;
    const double variance = noise_std * noise_std;
    for (Eigen::Index m = 0; m < y.size(); ++m) y[m] += complex_normal(rng, variance);
}

ComplexVector simulate_measurements(const ComplexVector& h, const BaseBeam& base,
                                    const ShiftSet& shifts, double noise_std, Rng& rng) {
    ComplexVector y = measure_inner_product(h, base, shifts);
    add_noise(y, noise_std, rng);
    return y;
}

SparseEstimate omp_windowed(const ComplexVector& y, const ComplexMatrix& a, int window_begin,
                            int window_end, int max_sparsity, double residual_tol) {
    if (a.rows() != y.size())
        throw DimensionError("omp: matrix has " + std::to_string(a.rows()) +
                             " rows, measurements have " + std::to_string(y.size()));
    if (window_begin < 0 || window_begin >= window_end || window_end > a.cols())
        throw IndexError("omp: atom window outside the dictionary");
    const int width = window_end - window_begin;
    if (max_sparsity < 0 || max_sparsity > std::min<int>(static_cast<int>(a.rows()), width))
        throw ConfigError("omp: max_sparsity must lie in [0, min(M, columns)]");

    SparseEstimate est;
    const double y_norm = y.norm();
    if (y_norm == 0.0) return est;

    const auto window = a.middleCols(window_begin, width);
    const Eigen::VectorXd col_norms = window.colwise().norm().transpose();
    std::vector<bool> used(static_cast<std::size_t>(width), false);

    ComplexVector residual = y;
    ComplexVector coeffs;
    for (int it = 0; it < max_sparsity; ++it) {
        if (residual.norm() <= residual_tol * y_norm) break;
        const ComplexVector corr = window.adjoint() * residual;
        int best = -1;
        double best_score = 0.0;
        for (int k = 0; k < width; ++k) {
            if (used[k] || col_norms[k] == 0.0) continue;
            const double score = std::abs(corr[k]) / col_norms[k];
            if (score > best_score) {
                best_score = score;
                best = k;
            }
        }
        if (best < 0) break;
        used[best] = true;
        est.support.push_back(window_begin + best);

        ComplexMatrix sub(a.rows(), static_cast<Eigen::Index>(est.support.size()));
        for (std::size_t s = 0; s < est.support.size(); ++s)
            sub.col(static_cast<Eigen::Index>(s)) = a.col(est.support[s]);
        Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod;
        cod.setThreshold(1e-12);
        cod.compute(sub);
        coeffs = cod.solve(y);
        residual = y - sub * coeffs;
    }
    est.values.assign(coeffs.data(), coeffs.data() + coeffs.size());
    est.residual_norm = residual.norm();
    return est;
}

SparseEstimate omp(const ComplexVector& y, const ComplexMatrix& a, int max_sparsity,
                   double residual_tol) {
    return omp_windowed(y, a, 0, static_cast<int>(a.cols()), max_sparsity, residual_tol);
}

ComplexVector demask(const SparseEstimate& x_hat, const BaseBeam& base, const Sector& sector) {
    const ComplexVector p_eff = base.effective_mask();
    if (p_eff.size() != sector.ambient()) throw DimensionError("demask: mask length != N");
    ComplexVector g = ComplexVector::Zero(sector.size());
    for (std::size_t i = 0; i < x_hat.support.size(); ++i) {
        const int j = x_hat.support[i];
        if (j < 0 || j >= sector.size()) throw IndexError("demask: support index outside sector");
        const Complex p = p_eff[sector.first() + j];
        const double mag2 = std::norm(p);
        if (std::sqrt(mag2) < 1e-9) throw NumericError("demask: singular mask entry");
        g[j] = x_hat.values[i] * std::conj(p) / mag2;
    }
    return g;
}

ComplexVector reconstruct_channel(const ComplexVector& g_hat_l, const Sector& sector) {
    if (g_hat_l.size() != sector.size())
        throw DimensionError("reconstruct_channel: estimate length != N_sec");
    ComplexVector g = ComplexVector::Zero(sector.ambient());
    g.segment(sector.first(), sector.size()) = g_hat_l;
    return idft(g);
}

ComplexMatrix oversampled_dictionary(int n, int oversampling) {
    if (oversampling < 1) throw ConfigError("oversampling must be positive");
    const long cols = static_cast<long>(oversampling) * n;
    ComplexMatrix d(n, cols);
    for (long k = 0; k < cols; ++k)
        for (long i = 0; i < n; ++i) {
            const double phase = 2.0 * kPi * static_cast<double>((i * k) % cols) / cols;
            d(i, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), phase);
        }
    return d;
}

ComplexMatrix beam_dictionary_product(const std::vector<ComplexVector>& beams, int oversampling) {
    if (oversampling < 1) throw ConfigError("oversampling must be positive");
    if (beams.empty()) throw DimensionError("beam_dictionary_product: no beams");
    const long n = beams.front().size();
    const long cols = oversampling * n;
    const double scale = std::sqrt(static_cast<double>(oversampling));
    ComplexMatrix fd(static_cast<Eigen::Index>(beams.size()), cols);
    // (F D)[m][k] = sum_i conj(f_m[i]) exp(j 2 pi i k / (oN)) / sqrt(N)
    ComplexVector padded(cols);
    for (std::size_t m = 0; m < beams.size(); ++m) {
        if (beams[m].size() != n) throw DimensionError("beam_dictionary_product: ragged beams");
        padded.setZero();
        padded.head(n) = beams[m].conjugate();
        fd.row(static_cast<Eigen::Index>(m)) = scale * idft(padded).transpose();
    }
    return fd;
}

OversampledEstimate omp_oversampled_atoms(const ComplexVector& y,
                                          const std::vector<ComplexVector>& beams,
                                          int oversampling, const Sector& sector,
                                          int max_sparsity, double residual_tol) {
    if (static_cast<Eigen::Index>(beams.size()) != y.size())
        throw DimensionError("omp_oversampled: one measurement per beam required");
    const ComplexMatrix fd = beam_dictionary_product(beams, oversampling);
    const int begin = oversampling * sector.first();
    const int end = oversampling * (sector.last() + 1);
    SparseEstimate est = omp_windowed(y, fd, begin, end, max_sparsity, residual_tol);

    const long n = sector.ambient();
    const long cols = oversampling * n;
    ComplexVector h_hat = ComplexVector::Zero(n);
    for (std::size_t s = 0; s < est.support.size(); ++s) {
        const long k = est.support[s];
        for (long i = 0; i < n; ++i) {
            const double phase = 2.0 * kPi * static_cast<double>((i * k) % cols) / cols;
            h_hat[i] += est.values[s] * std::polar(1.0 / std::sqrt(static_cast<double>(n)), phase);
        }
    }
    return {std::move(h_hat), std::move(est)};
}

ComplexVector omp_oversampled(const ComplexVector& y, const std::vector<ComplexVector>& beams,
                              int oversampling, const Sector& sector, int max_sparsity,
                              double residual_tol) {
    return omp_oversampled_atoms(y, beams, oversampling, sector, max_sparsity, residual_tol).h_hat;
}

} // namespace insector
