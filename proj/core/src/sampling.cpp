// SPDX-License-Identifier: Apache-2.0
#include "insector/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>

#include "insector/dft.hpp"

namespace insector {

ShiftSet::ShiftSet(std::vector<int> shifts, int ambient)
    : shifts_(std::move(shifts)), ambient_(ambient) {
    if (ambient < 1) throw ConfigError("shift set: N must be positive");
    if (static_cast<int>(shifts_.size()) > ambient) throw ConfigError("shift set: M > N");
    std::vector<bool> seen(static_cast<std::size_t>(ambient), false);
    for (int c : shifts_) {
        if (c < 0 || c >= ambient)
            throw IndexError("shift set: shift " + std::to_string(c) + " outside [0, N)");
        if (seen[c]) throw ConfigError("shift set: duplicate shift " + std::to_string(c));
        seen[c] = true;
    }
}

std::string_view to_string(ShiftScheme scheme) {
    return scheme == ShiftScheme::pcs ? "pcs" : "rcs";
}

namespace {

void require_divisor(int n, int n_sec) {
    if (n_sec < 1 || n % n_sec != 0)
        throw ConfigError("N_sec = " + std::to_string(n_sec) + " does not divide N = " +
                          std::to_string(n));
}

ShiftSet sample_subset(const std::vector<int>& parent, int n, int m, Rng& rng) {
    std::vector<int> picked;
    picked.reserve(static_cast<std::size_t>(m));
    std::sample(parent.begin(), parent.end(), std::back_inserter(picked), m, rng);
    return ShiftSet(std::move(picked), n);
}

} // namespace

ShiftSet uniform_shifts(int n, int n_sec) {
    require_divisor(n, n_sec);
    const int rho = n / n_sec;
    std::vector<int> shifts(static_cast<std::size_t>(n_sec));
    for (int k = 0; k < n_sec; ++k) shifts[k] = k * rho;
    return ShiftSet(std::move(shifts), n);
}

ShiftSet pcs_shifts(int n, int n_sec, int m, Rng& rng) {
    require_divisor(n, n_sec);
    if (m < 1 || m > n_sec)
        throw ConfigError("pcs: M = " + std::to_string(m) + " must lie in [1, N_sec = " +
                          std::to_string(n_sec) + "]");
    return sample_subset(uniform_shifts(n, n_sec).shifts(), n, m, rng);
}

ShiftSet rcs_shifts(int n, int m, Rng& rng) {
    if (m < 1 || m > n)
        throw ConfigError("rcs: M = " + std::to_string(m) + " must lie in [1, N = " +
                          std::to_string(n) + "]");
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return sample_subset(all, n, m, rng);
}

ShiftSet draw_shifts(ShiftScheme scheme, int n, int n_sec, int m, Rng& rng) {
    return scheme == ShiftScheme::pcs ? pcs_shifts(n, n_sec, m, rng) : rcs_shifts(n, m, rng);
}

ComplexVector indicator(const ShiftSet& shifts) {
    ComplexVector b = ComplexVector::Zero(shifts.ambient());
    for (int c : shifts.shifts()) b[c] = 1.0;
    return b;
}

ComplexVector psf(const ComplexVector& b) {
    return idft(b) / std::sqrt(static_cast<double>(b.size()));
}

PsfReport psf_report(const ShiftSet& shifts, const Sector& sector) {
    if (shifts.ambient() != sector.ambient())
        throw DimensionError("coherence: shift set and sector use different N");
    PsfReport report;
    report.psf = psf(indicator(shifts));
    report.mu = -1.0;
    for (int i = 1; i <= sector.last() - sector.first(); ++i) {
        const double mag = std::abs(report.psf[i]);
        if (mag > report.mu) {
            report.mu = mag;
            report.argmax_index = i;
        }
    }
    return report;
}

double coherence(const ShiftSet& shifts, const Sector& sector) {
    return psf_report(shifts, sector).mu;
}

double normalized_coherence(const ShiftSet& shifts, const Sector& sector) {
    const double column_energy = static_cast<double>(shifts.size()) / shifts.ambient();
    return coherence(shifts, sector) / column_energy;
}

std::vector<double> coherence_cdf(ShiftScheme scheme, int n, int n_sec, int m, int trials,
                                  std::uint64_t base_seed) {
    if (trials < 1) throw ConfigError("coherence_cdf: trials must be positive");
    // Sector placement does not change mu; the first tile is representative.
    const Sector sector(0, n_sec - 1, n);
    std::vector<double> mus;
    mus.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        Rng rng(base_seed + static_cast<std::uint64_t>(t));
        mus.push_back(coherence(draw_shifts(scheme, n, n_sec, m, rng), sector));
    }
    std::sort(mus.begin(), mus.end());
    return mus;
}

double gram_coherence(const ComplexMatrix& a) {
    const ComplexMatrix gram = a.adjoint() * a;
    double mu = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = 0; j < gram.cols(); ++j)
            if (i != j) mu = std::max(mu, std::abs(gram(i, j)));
    return mu;
}

} // namespace insector
