// SPDX-License-Identifier: Apache-2.0
#include "insector/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "insector/dft.hpp"

namespace insector {

void ChannelScenarioConfig::validate() const {
    if (n_antennas < 1) throw ConfigError("channel: n_antennas must be positive");
    if (k_rays < 1) throw ConfigError("channel: k_rays must be positive");
    if (k_rays > n_antennas) throw ConfigError("channel: k_rays exceeds n_antennas");
    if (band && band->ambient() != n_antennas)
        throw ConfigError("channel: band defined for a different N");
    if (grid_mode == GridMode::on_grid && band && k_rays > band->size())
        throw ConfigError("channel: more on-grid rays than grid points in the band");
}

ComplexVector steering_vector(int n, double theta) {
    const double s = std::sin(theta);
    ComplexVector a(n);
    for (int i = 0; i < n; ++i) a[i] = std::polar(1.0, kPi * i * s);
    return a;
}

double grid_angle(int n, double grid_index) {
    double s = 2.0 * grid_index / n;
    s -= 2.0 * std::floor((s + 1.0) / 2.0); // wrap into [-1, 1)
    return std::asin(s);
}

ComplexVector synthesize_channel(const RaySet& rays, int n) {
    ComplexVector h = ComplexVector::Zero(n);
    for (const Ray& r : rays.rays) h += r.gain * steering_vector(n, r.aod);
    return h;
}

ComplexVector beamspace(const ComplexVector& h) { return dft(h); }

RaySet sample_scenario(const ChannelScenarioConfig& config, Rng& rng) {
    config.validate();
    const int n = config.n_antennas;
    const int lo = config.band ? config.band->first() : 0;
    const int hi = config.band ? config.band->last() + 1 : n; // exclusive
    const double variance = config.power_normalization ? 1.0 / config.k_rays : 1.0;

    std::vector<double> grid_positions;
    if (config.grid_mode == GridMode::on_grid) {
        std::vector<int> pool(static_cast<std::size_t>(hi - lo));
        std::iota(pool.begin(), pool.end(), lo);
        std::vector<int> picked;
        std::sample(pool.begin(), pool.end(), std::back_inserter(picked), config.k_rays, rng);
        std::shuffle(picked.begin(), picked.end(), rng);
        grid_positions.assign(picked.begin(), picked.end());
    } else {
        std::uniform_real_distribution<double> position(lo, hi);
        for (int k = 0; k < config.k_rays; ++k) grid_positions.push_back(position(rng));
    }

    RaySet out;
    for (double u : grid_positions) out.rays.push_back({grid_angle(n, u), complex_normal(rng, variance)});
    return out;
}

RaySet sample_scenario(const ChannelScenarioConfig& config) {
    Rng rng(config.rng_seed);
    return sample_scenario(config, rng);
}

} // namespace insector
