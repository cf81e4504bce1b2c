// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "insector/config.hpp"
#include "insector/serialize.hpp"
#include "oracles.hpp"

namespace insector {
namespace {

TEST(Config, ParsesEveryKey) {
    const ExperimentConfig c = parse_config(R"(
# full grid
N = 128
n_sectors = 4
M = 12          # trailing comment
snr_db = -2.5
trials = 30
scheme = rcs
seed = 42
n_mask_candidates = 100
pool_factor = 10
m_values = 4, 8,12
snr_values = -5, 0, inf
channel.n_antennas = 128
channel.k_rays = 2
channel.grid_mode = on_grid
channel.power_normalization = false
channel.rng_seed = 7
channel.in_sector = no
omp.max_sparsity = 3
omp.residual_tol = 1e-4
omp.oversampling = 4
)");
    EXPECT_EQ(c.n, 128);
    EXPECT_EQ(c.n_sectors, 4);
    EXPECT_EQ(c.m, 12);
    EXPECT_EQ(c.snr_db, -2.5);
    EXPECT_EQ(c.trials, 30);
    EXPECT_EQ(c.scheme, Scheme::rcs);
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.n_mask_candidates, 100);
    EXPECT_EQ(c.pool_factor, 10);
    EXPECT_EQ(c.m_values, (std::vector<int>{4, 8, 12}));
    ASSERT_EQ(c.snr_values.size(), 3u);
    EXPECT_TRUE(std::isinf(c.snr_values[2]));
    EXPECT_EQ(c.channel.n_antennas, 128);
    EXPECT_EQ(c.channel.k_rays, 2);
    EXPECT_EQ(c.channel.grid_mode, GridMode::on_grid);
    EXPECT_FALSE(c.channel.power_normalization);
    EXPECT_EQ(c.channel.rng_seed, 7u);
    EXPECT_FALSE(c.in_sector);
    EXPECT_EQ(c.omp.max_sparsity, 3);
    EXPECT_EQ(c.omp.residual_tol, 1e-4);
    EXPECT_EQ(c.omp.oversampling, 4);
}

TEST(Config, EmptyTextGivesDefaults) {
    const ExperimentConfig c = parse_config("# nothing\n\n");
    EXPECT_EQ(c.n, 256);
    EXPECT_EQ(c.n_sec(), 64);
    EXPECT_EQ(c.n_mask_candidates, 5000);
    EXPECT_EQ(c.pool_factor, 30);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("bogus = 1"), ConfigError);
    EXPECT_THROW(parse_config("M = 4\nM = 5"), ConfigError);
    EXPECT_THROW(parse_config("M = "), ConfigError);
    EXPECT_THROW(parse_config("M 4"), ConfigError);
    EXPECT_THROW(parse_config("M = 4x"), ConfigError);
    EXPECT_THROW(parse_config("trials = 2.5"), ConfigError);
    EXPECT_THROW(parse_config("scheme = spread"), ConfigError);
    EXPECT_THROW(parse_config("channel.grid_mode = sometimes"), ConfigError);
    EXPECT_THROW(parse_config("channel.n_antennas = 64"), ConfigError);
    EXPECT_THROW(parse_config("N = 100\nn_sectors = 3"), ConfigError);
    EXPECT_THROW(parse_config("M = 80"), ConfigError);
    EXPECT_THROW(parse_config("m_values = 4,,8"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/insector.cfg"), ConfigError);
}

TEST(Config, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "insector_test_config.cfg";
    {
        std::ofstream out(path);
        out << "N = 64\nM = 8\n";
    }
    const ExperimentConfig c = load_config(path);
    EXPECT_EQ(c.n, 64);
    EXPECT_EQ(c.m, 8);
    std::filesystem::remove(path);
}

TEST(Serialize, DoubleRoundTrip) {
    for (double x : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 1.0}) {
        const std::string s = format_double(x);
        EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
    }
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Serialize, ComplexVectorRoundTrip) {
    Rng rng(1);
    const ComplexVector v = oracle::random_vector(rng, 9);
    const std::string text = format_complex_vector(v);
    EXPECT_EQ(parse_complex_vector(text), v);
    ComplexVector w(2);
    w << Complex(1.5, -2.0), Complex(0.0, 0.25);
    EXPECT_EQ(format_complex_vector(w), "1.5:-2,0:0.25");
    EXPECT_THROW(parse_complex_vector("1:2,3"), ConfigError);
    EXPECT_THROW(parse_complex_vector("1:nan"), ConfigError);
}

TEST(Serialize, SweepAndCdfRows) {
    std::ostringstream os;
    write_sweep_header(os);
    ExperimentSummary s;
    s.scheme = Scheme::greedy;
    s.n = 256;
    s.n_sec = 64;
    s.m = 10;
    s.snr_db = 5.0;
    s.trials = 200;
    s.nmse = 0.5;
    s.mean_rate_bits = 3.25;
    s.mean_mu = 0.125;
    write_sweep_row(os, s);
    EXPECT_EQ(os.str(),
              "scheme,N,N_sec,M,snr_db,trials,nmse,mean_rate_bits,mean_mu\n"
              "greedy,256,64,10,5,200,0.5,3.25,0.125\n");

    std::ostringstream cdf;
    write_cdf_header(cdf);
    write_cdf_row(cdf, {3, ShiftScheme::rcs, 256, 64, 25, 0.0625});
    EXPECT_EQ(cdf.str(), "trial,scheme,N,N_sec,M,mu\n3,rcs,256,64,25,0.0625\n");
}

} // namespace
} // namespace insector
