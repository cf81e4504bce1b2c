// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "insector/sector.hpp"
#include "insector/types.hpp"

namespace insector {

// M distinct circulant shifts in [0, N).
class ShiftSet {
public:
    ShiftSet(std::vector<int> shifts, int ambient);

    const std::vector<int>& shifts() const { return shifts_; }
    int ambient() const { return ambient_; }
    int size() const { return static_cast<int>(shifts_.size()); }
    int operator[](std::size_t m) const { return shifts_[m]; }

private:
    std::vector<int> shifts_;
    int ambient_;
};

enum class ShiftScheme { pcs, rcs };

std::string_view to_string(ShiftScheme scheme);

struct PsfReport {
    ComplexVector psf;
    double mu = 0.0;
    int argmax_index = 1; // within {1, ..., d2 - d1}
};

// {0, rho, 2 rho, ..., (N_sec - 1) rho}
ShiftSet uniform_shifts(int n, int n_sec);

// M-subset of uniform_shifts(n, n_sec), drawn without replacement.
ShiftSet pcs_shifts(int n, int n_sec, int m, Rng& rng);

// M-subset of [0, N), drawn without replacement.
ShiftSet rcs_shifts(int n, int m, Rng& rng);

ShiftSet draw_shifts(ShiftScheme scheme, int n, int n_sec, int m, Rng& rng);

// b[i] = 1 iff i in the shift set.
ComplexVector indicator(const ShiftSet& shifts);

// First row of the Gram matrix U_N^* Diag(b) U_N, i.e. U_N b / sqrt(N).
ComplexVector psf(const ComplexVector& b);

PsfReport psf_report(const ShiftSet& shifts, const Sector& sector);

// max_{i in {1..d2-d1}} |PSF[i]|; raw inner products of columns with
// squared norm M/N.
double coherence(const ShiftSet& shifts, const Sector& sector);

// coherence / (M/N), the cosine form.
double normalized_coherence(const ShiftSet& shifts, const Sector& sector);

// Sorted mu over `trials` draws; draw t uses seed base_seed + t.
std::vector<double> coherence_cdf(ShiftScheme scheme, int n, int n_sec, int m, int trials,
                                  std::uint64_t base_seed);

// Max off-diagonal magnitude of the Gram matrix of the columns of `a`.
double gram_coherence(const ComplexMatrix& a);

} // namespace insector
