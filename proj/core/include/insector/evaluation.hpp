// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "insector/beam_design.hpp"
#include "insector/channel.hpp"
#include "insector/sampling.hpp"
#include "insector/sector.hpp"
#include "insector/types.hpp"

namespace insector {

enum class Scheme { pcs, rcs, greedy, genie };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

struct OmpSettings {
    int max_sparsity = 0;       // 0: number of rays in the scenario
    double residual_tol = -1.0; // < 0: 1e-6 when noiseless, disabled otherwise
    int oversampling = 1;
};

struct ExperimentConfig {
    int n = 256;
    int n_sectors = 4;
    int m = 25;
    double snr_db = 5.0; // +inf for noiseless measurements
    int trials = 100;
    Scheme scheme = Scheme::pcs;
    ChannelScenarioConfig channel;
    // Confine every channel to one sector drawn uniformly per trial.
    bool in_sector = true;
    OmpSettings omp;
    int n_mask_candidates = 5000;
    int pool_factor = 30;
    std::uint64_t seed = 1;
    // Sweep grids; empty means {m} / {snr_db}.
    std::vector<int> m_values;
    std::vector<double> snr_values;

    int n_sec() const { return n / n_sectors; }
    bool noiseless() const { return snr_db == std::numeric_limits<double>::infinity(); }
    void validate() const;
};

struct TrialRecord {
    int trial_index = 0;
    int selected_sector = 0;
    int true_sector = -1; // -1 when the channel is not confined to a sector
    double nmse_numerator = 0.0;
    double nmse_denominator = 0.0;
    double rate_bits = 0.0;
    double mu = 0.0;
    bool degenerate = false; // zero channel estimate

    bool mis_selected() const { return true_sector >= 0 && true_sector != selected_sector; }
};

struct ExperimentSummary {
    Scheme scheme = Scheme::pcs;
    int n = 0;
    int n_sec = 0;
    int m = 0;
    double snr_db = 0.0;
    int trials = 0;
    double nmse = 0.0;
    double mean_rate_bits = 0.0;
    double mean_mu = 0.0;
    double noise_std = 0.0;
    int mis_selections = 0;
    int degenerate_estimates = 0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;
    ExperimentSummary summary;
};

// One lowest-PAPR base beam per equal-width sector.
struct SectorDesign {
    std::vector<Sector> sectors;
    std::vector<BaseBeam> beams;
};

SectorDesign design_sectors(int n, int n_sectors, int n_candidates, Rng& rng);

// Deterministic in config.seed.
SectorDesign design_sectors(const ExperimentConfig& config);

// argmax_s |<h, f_b,s>|^2, lowest index on ties.
int sls_select_sector(const ComplexVector& h, const std::vector<BaseBeam>& sector_beams);

// sigma with sigma^2 = mean_h ||F h||^2 / (M 10^(snr_db / 10)).
double noise_std_for_snr(const std::vector<ComplexVector>& beams,
                         const std::vector<ComplexVector>& channels, double snr_db);

// sum of numerators over sum of denominators.
double nmse(std::span<const TrialRecord> records);

// log2(1 + |<h, h_hat / ||h_hat||>|^2 / noise_var); 0 for a zero estimate.
double achievable_rate(const ComplexVector& h_hat, const ComplexVector& h, double noise_var);

// Top-M of pool_factor * M random unit-norm vectors by in-sector energy.
std::vector<ComplexVector> greedy_benchmark_beams(const Sector& sector, int m, int pool_factor,
                                                  Rng& rng);

// Directional DFT beams covering the sector (exhaustive scan reference).
std::vector<ComplexVector> genie_beams(const Sector& sector);

struct EstimatorSettings {
    Scheme scheme = Scheme::pcs;
    int m = 25;
    double noise_std = 0.0;
    int max_sparsity = 1;
    double residual_tol = 0.0;
    int oversampling = 1;
    int pool_factor = 30;
};

struct InSectorEstimate {
    ComplexVector g_hat_l; // beamspace estimate on the sector, length N_sec
    ComplexVector h_hat;   // channel estimate, length N
    std::vector<int> support; // selected atom indices (grid or oversampled)
    double mu = 0.0;
    int measurements = 0;
};

// The scheme-specific training set of one trial: circulant shifts for PCS/RCS,
// explicit beams for GREEDY and the genie scan.
struct MeasurementDesign {
    Scheme scheme = Scheme::pcs;
    std::optional<ShiftSet> shifts;
    std::vector<ComplexVector> beams;
    double mu = 0.0;

    int size() const { return shifts ? shifts->size() : static_cast<int>(beams.size()); }
};

MeasurementDesign draw_measurement_design(Scheme scheme, const Sector& sector, const BaseBeam& base,
                                          int m, int pool_factor, Rng& rng);

// Measures h with the design, adds noise from noise_rng and recovers the
// channel inside `sector`.
InSectorEstimate estimate_with_design(const ComplexVector& h, const Sector& sector,
                                      const BaseBeam& base, const MeasurementDesign& design,
                                      const EstimatorSettings& settings, Rng& noise_rng);

// draw_measurement_design from design_rng, then estimate_with_design.
InSectorEstimate estimate_in_sector(const ComplexVector& h, const Sector& sector,
                                    const BaseBeam& base, const EstimatorSettings& settings,
                                    Rng& design_rng, Rng& noise_rng);

// Settings with the automatic OMP defaults resolved for this config.
EstimatorSettings estimator_settings(const ExperimentConfig& config, double noise_std);

ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 1);
ExperimentResult run_experiment(const ExperimentConfig& config, const SectorDesign& design,
                                int threads = 1);

// One result per SNR in `snrs`, sharing channels, sector selection, beams /
// shifts and noise shapes across the SNR points (config.snr_db is ignored).
std::vector<ExperimentResult> run_snr_points(const ExperimentConfig& config,
                                             const SectorDesign& design,
                                             const std::vector<double>& snrs, int threads = 1);

// One summary per (scheme, M, snr) over the config grids.
std::vector<ExperimentSummary> run_sweep(const ExperimentConfig& config,
                                         const std::vector<Scheme>& schemes, int threads = 1);

struct SingleShot {
    ComplexVector h;
    int true_sector = -1;
    int selected_sector = 0;
    double noise_std = 0.0;
    InSectorEstimate estimate;
    double nmse = 0.0; // on the selected sector
    double rate_bits = 0.0;
};

// One estimate of `h`, or of trial 0's channel from config.seed when h is
// empty. The SNR is calibrated on this single channel.
SingleShot run_single_shot(const ExperimentConfig& config, const SectorDesign& design,
                           const std::optional<ComplexVector>& h = std::nullopt);

struct FullBandResult {
    ComplexVector g_hat; // length N
    std::vector<std::vector<int>> supports; // global grid indices per sector
    int measurements = 0;
};

// Runs the in-sector pipeline on every sector and concatenates the estimates.
FullBandResult run_full_band(const ComplexVector& h, const ExperimentConfig& config,
                             const SectorDesign& design, double noise_std);

struct FullBandRun {
    ComplexVector h;
    FullBandResult estimate;
};

// Samples an unrestricted channel from config.seed and estimates every sector.
FullBandRun run_full_band(const ExperimentConfig& config);

} // namespace insector
