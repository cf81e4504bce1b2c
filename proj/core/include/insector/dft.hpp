// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "insector/types.hpp"

namespace insector {

// Unitary DFT convention used throughout the library:
//   U_N[n][k] = exp(+j 2 pi n k / N) / sqrt(N)
// so the columns of U_N are on-grid steering vectors scaled by 1/sqrt(N).
//   dft(v)  = U_N^* v   (analysis, beamspace)
//   idft(v) = U_N v     (synthesis)
// Any length is accepted; transforms go through Eigen's FFT module.

ComplexVector dft(const ComplexVector& v);
ComplexVector idft(const ComplexVector& v);

// (a (*) b)[n] = sum_k a[k] b[<n-k>_N]
ComplexVector circular_convolve(const ComplexVector& a, const ComplexVector& b);

// out[i] = v[<i - c>_N], 0 <= c < N
ComplexVector circulant_shift(const ComplexVector& v, long c);

// out[i] = conj(v[<-i>_N])
ComplexVector flip_conjugate(const ComplexVector& v);

inline long positive_mod(long i, long n) {
    const long r = i % n;
    return r < 0 ? r + n : r;
}

} // namespace insector
