// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "insector/types.hpp"

namespace insector {

Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

Complex complex_normal(Rng& rng, double variance) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
    const double re = gauss(rng);
    const double im = gauss(rng);
    return {re, im};
}

} // namespace insector
