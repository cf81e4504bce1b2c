// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "insector/sector.hpp"
#include "insector/types.hpp"

namespace insector {

struct Ray {
    double aod = 0.0; // radians
    Complex gain{0.0, 0.0};
};

struct RaySet {
    std::vector<Ray> rays;

    std::size_t size() const { return rays.size(); }
};

enum class GridMode { on_grid, off_grid };

struct ChannelScenarioConfig {
    int n_antennas = 256;
    int k_rays = 4;
    GridMode grid_mode = GridMode::off_grid;
    // Gains CN(0, 1/K) when set so that E[h^* h] = N; CN(0, 1) otherwise.
    bool power_normalization = true;
    std::uint64_t rng_seed = 0;
    // Restrict AoDs to this beamspace band (in-sector scenarios).
    std::optional<Sector> band;

    void validate() const;
};

// a(N, theta)[n] = exp(j n pi sin(theta))
ComplexVector steering_vector(int n, double theta);

// AoD whose spatial frequency sin(theta) sits on beamspace grid point i,
// i.e. sin(theta) = 2i/N wrapped into [-1, 1).
double grid_angle(int n, double grid_index);

// h = sum_k alpha_k a(N, theta_k)
ComplexVector synthesize_channel(const RaySet& rays, int n);

// g = U_N^* h
ComplexVector beamspace(const ComplexVector& h);

RaySet sample_scenario(const ChannelScenarioConfig& config, Rng& rng);

// Convenience overload seeded from config.rng_seed.
RaySet sample_scenario(const ChannelScenarioConfig& config);

} // namespace insector
