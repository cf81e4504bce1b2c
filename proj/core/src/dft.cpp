// SPDX-License-Identifier: Apache-2.0
#include "insector/dft.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/FFT>

namespace insector {

namespace {

void require_nonempty(const ComplexVector& v, const char* op) {
    if (v.size() < 1) throw DimensionError(std::string(op) + ": empty vector");
}

// Plans are cached inside the FFT object, one per thread.
Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

} // namespace

ComplexVector dft(const ComplexVector& v) {
    require_nonempty(v, "dft");
    if (v.size() == 1) return v;
    ComplexVector out(v.size());
    fft_engine().fwd(out, v);
    return out / std::sqrt(static_cast<double>(v.size()));
}

ComplexVector idft(const ComplexVector& v) {
    require_nonempty(v, "idft");
    if (v.size() == 1) return v;
    ComplexVector out(v.size());
    fft_engine().inv(out, v); // includes the 1/N factor
    return out * std::sqrt(static_cast<double>(v.size()));
}

ComplexVector circular_convolve(const ComplexVector& a, const ComplexVector& b) {
    require_nonempty(a, "circular_convolve");
    if (a.size() != b.size())
        throw DimensionError("circular_convolve: length mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    // dft(a (*) b) = sqrt(N) dft(a) .* dft(b)
    const double root_n = std::sqrt(static_cast<double>(a.size()));
    return idft(root_n * dft(a).cwiseProduct(dft(b)));
}

ComplexVector circulant_shift(const ComplexVector& v, long c) {
    const long n = v.size();
    if (c < 0 || c >= n)
        throw IndexError("circulant_shift: shift " + std::to_string(c) + " outside [0, " +
                         std::to_string(n) + ")");
    ComplexVector out(n);
    for (long i = 0; i < n; ++i) out[i] = v[positive_mod(i - c, n)];
    return out;
}

ComplexVector flip_conjugate(const ComplexVector& v) {
    const long n = v.size();
    ComplexVector out(n);
    for (long i = 0; i < n; ++i) out[i] = std::conj(v[positive_mod(-i, n)]);
    return out;
}

} // namespace insector
