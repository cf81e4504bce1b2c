// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace insector {

using Complex = std::complex<double>;

// Length-N complex signal: channels, beams, masks, spectra.
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

using Rng = std::mt19937_64;

inline constexpr double kPi = 3.14159265358979323846;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Division by zero, singular masks, undefined metrics.
class NumericError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Independent stream for (seed, stream, index); used to give every trial and
// every random component of a trial its own reproducible source.
Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

// Zero-mean circularly-symmetric complex Gaussian with E|z|^2 = variance.
Complex complex_normal(Rng& rng, double variance);

} // namespace insector
