// SPDX-License-Identifier: Apache-2.0
#include "insector/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "insector/dft.hpp"
#include "insector/recovery.hpp"
#include "insector/sampling.hpp"

namespace insector {

namespace {

// Independent random streams of an experiment.
enum Stream : std::uint64_t {
    kDesignStream = 1,
    kChannelStream = 2,
    kBeamStream = 3,
    kNoiseStream = 4,
};

double snr_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

double noise_std_from_power(double mean_power_per_measurement, double snr_db) {
    if (mean_power_per_measurement <= 0.0)
        throw NumericError("SNR calibration: channels produce no received power");
    return std::sqrt(mean_power_per_measurement / snr_linear(snr_db));
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& body) {
    threads = std::clamp(threads, 1, std::max(count, 1));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (int w = 0; w < threads; ++w)
            workers.emplace_back([&] {
                for (int i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<ComplexVector> reference_beams(const BaseBeam& base) {
    const int n = static_cast<int>(base.f_b.size());
    return beam_ensemble(base, uniform_shifts(n, base.mask.sector.size()));
}

} // namespace

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::pcs: return "pcs";
    case Scheme::rcs: return "rcs";
    case Scheme::greedy: return "greedy";
    case Scheme::genie: return "genie";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "pcs" || name == "PCS") return Scheme::pcs;
    if (name == "rcs" || name == "RCS") return Scheme::rcs;
    if (name == "greedy" || name == "GREEDY") return Scheme::greedy;
    if (name == "genie" || name == "GENIE") return Scheme::genie;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    if (n < 2) throw ConfigError("N must be at least 2");
    if (n_sectors < 1 || n % n_sectors != 0)
        throw ConfigError("N = " + std::to_string(n) + " is not divisible by n_sectors = " +
                          std::to_string(n_sectors));
    if (n_sec() < 2) throw ConfigError("sectors must span at least two beamspace bins");
    if (trials < 1) throw ConfigError("trials must be positive");
    if (n_mask_candidates < 1) throw ConfigError("n_mask_candidates must be positive");
    if (pool_factor < 1) throw ConfigError("pool_factor must be positive");
    if (omp.oversampling < 1) throw ConfigError("omp.oversampling must be positive");
    if (omp.max_sparsity < 0) throw ConfigError("omp.max_sparsity must be nonnegative");
    if (std::isnan(snr_db)) throw ConfigError("snr_db is NaN");

    std::vector<int> ms = m_values.empty() ? std::vector<int>{m} : m_values;
    for (int mm : ms) {
        if (mm < 1) throw ConfigError("M must be positive");
        if (scheme == Scheme::pcs && mm > n_sec())
            throw ConfigError("PCS requires M <= N_sec (M = " + std::to_string(mm) + ")");
        if (mm > n) throw ConfigError("M exceeds N");
    }
    ChannelScenarioConfig scenario = channel;
    scenario.n_antennas = n;
    if (in_sector) scenario.band = Sector::tile(n, n_sectors, 0);
    scenario.validate();
}

SectorDesign design_sectors(int n, int n_sectors, int n_candidates, Rng& rng) {
    SectorDesign design;
    for (int s = 0; s < n_sectors; ++s) {
        design.sectors.push_back(Sector::tile(n, n_sectors, s));
        design.beams.push_back(select_base_beam(design.sectors.back(), n_candidates, rng));
    }
    return design;
}

SectorDesign design_sectors(const ExperimentConfig& config) {
    Rng rng = derive_rng(config.seed, kDesignStream);
    return design_sectors(config.n, config.n_sectors, config.n_mask_candidates, rng);
}

int sls_select_sector(const ComplexVector& h, const std::vector<BaseBeam>& sector_beams) {
    if (sector_beams.empty()) throw ConfigError("sls: no sector beams");
    int best = 0;
    double best_power = -1.0;
    for (std::size_t s = 0; s < sector_beams.size(); ++s) {
        if (sector_beams[s].f_b.size() != h.size()) throw DimensionError("sls: beam length != N");
        const double power = std::norm(sector_beams[s].f_b.dot(h));
        if (power > best_power) {
            best_power = power;
            best = static_cast<int>(s);
        }
    }
    return best;
}

double noise_std_for_snr(const std::vector<ComplexVector>& beams,
                         const std::vector<ComplexVector>& channels, double snr_db) {
    if (channels.empty()) throw ConfigError("noise_std_for_snr: empty channel sample");
    if (beams.empty()) throw ConfigError("noise_std_for_snr: no beams");
    double total = 0.0;
    for (const ComplexVector& h : channels) total += measure(h, beams).squaredNorm();
    const double mean = total / static_cast<double>(channels.size());
    return noise_std_from_power(mean / static_cast<double>(beams.size()), snr_db);
}

double nmse(std::span<const TrialRecord> records) {
    if (records.empty()) throw NumericError("nmse: no trials");
    double num = 0.0;
    double den = 0.0;
    for (const TrialRecord& r : records) {
        num += r.nmse_numerator;
        den += r.nmse_denominator;
    }
    if (den <= 0.0) throw NumericError("nmse: in-sector channel energy is zero");
    return num / den;
}

double achievable_rate(const ComplexVector& h_hat, const ComplexVector& h, double noise_var) {
    if (h_hat.size() != h.size()) throw DimensionError("achievable_rate: length mismatch");
    if (!(noise_var > 0.0)) throw NumericError("achievable_rate: noise variance must be positive");
    const double norm = h_hat.norm();
    if (norm == 0.0) return 0.0;
    // |f_mrt h|^2 with f_mrt = h_hat^* / ||h_hat||
    const double gain = std::norm(h_hat.dot(h)) / (norm * norm);
    return std::log2(1.0 + gain / noise_var);
}

std::vector<ComplexVector> greedy_benchmark_beams(const Sector& sector, int m, int pool_factor,
                                                  Rng& rng) {
    if (m < 1 || pool_factor < 1) throw ConfigError("greedy: M and pool_factor must be positive");
    const int n = sector.ambient();
    const int pool_size = pool_factor * m;
    const int width = sector.size();
    // Each pool vector is f = idft(z) / ||z|| with z ~ CN(0, I), so f is uniform on the
    // unit sphere and its in-sector energy is ||z_L||^2 / ||z||^2. The two block
    // energies are independent Gamma(|L|, 1) and Gamma(N - |L|, 1) variates and the
    // block directions are independent of them, so only the selected beams need
    // their directions drawn.
    std::gamma_distribution<double> in_energy(static_cast<double>(width), 1.0);
    std::gamma_distribution<double> out_energy(static_cast<double>(n - width), 1.0);
    std::vector<double> e_in(static_cast<std::size_t>(pool_size));
    std::vector<double> e_out(static_cast<std::size_t>(pool_size));
    std::vector<double> score(static_cast<std::size_t>(pool_size));
    for (int p = 0; p < pool_size; ++p) {
        e_in[p] = in_energy(rng);
        e_out[p] = n > width ? out_energy(rng) : 0.0;
        score[p] = e_in[p] / (e_in[p] + e_out[p]);
    }
    std::vector<int> order(static_cast<std::size_t>(pool_size));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score[a] > score[b]; });

    auto random_direction = [&](int len) {
        ComplexVector v(len);
        for (int i = 0; i < len; ++i) v[i] = complex_normal(rng, 1.0);
        return ComplexVector(v.normalized());
    };
    std::vector<ComplexVector> beams;
    for (int i = 0; i < m; ++i) {
        const int p = order[i];
        ComplexVector z = ComplexVector::Zero(n);
        z.segment(sector.first(), width) = std::sqrt(e_in[p]) * random_direction(width);
        if (n > width) {
            const ComplexVector rest = std::sqrt(e_out[p]) * random_direction(n - width);
            for (int k = 0; k < n - width; ++k)
                z[(sector.last() + 1 + k) % n] = rest[k];
        }
        beams.push_back(idft(z / z.norm()));
    }
    return beams;
}

std::vector<ComplexVector> genie_beams(const Sector& sector) {
    const int n = sector.ambient();
    std::vector<ComplexVector> beams;
    for (int l = sector.first(); l <= sector.last(); ++l) {
        ComplexVector e = ComplexVector::Zero(n);
        e[l] = 1.0;
        beams.push_back(idft(e)); // column l of U_N
    }
    return beams;
}

EstimatorSettings estimator_settings(const ExperimentConfig& config, double noise_std) {
    EstimatorSettings s;
    s.scheme = config.scheme;
    s.m = config.m;
    s.noise_std = noise_std;
    s.max_sparsity = config.omp.max_sparsity > 0 ? config.omp.max_sparsity : config.channel.k_rays;
    if (config.omp.residual_tol >= 0.0)
        s.residual_tol = config.omp.residual_tol;
    else
        s.residual_tol = noise_std == 0.0 ? 1e-6 : 0.0;
    s.oversampling = config.omp.oversampling;
    s.pool_factor = config.pool_factor;
    return s;
}

MeasurementDesign draw_measurement_design(Scheme scheme, const Sector& sector, const BaseBeam& base,
                                          int m, int pool_factor, Rng& rng) {
    const int n = sector.ambient();
    if (base.f_b.size() != n) throw DimensionError("measurement design: beam length != N");
    MeasurementDesign d;
    d.scheme = scheme;
    switch (scheme) {
    case Scheme::pcs:
    case Scheme::rcs:
        d.shifts = draw_shifts(scheme == Scheme::pcs ? ShiftScheme::pcs : ShiftScheme::rcs, n,
                               sector.size(), m, rng);
        d.mu = coherence(*d.shifts, sector);
        break;
    case Scheme::greedy:
    case Scheme::genie:
        d.beams = scheme == Scheme::greedy ? greedy_benchmark_beams(sector, m, pool_factor, rng)
                                           : genie_beams(sector);
        d.mu = gram_coherence(
            beam_dictionary_product(d.beams, 1).middleCols(sector.first(), sector.size()));
        break;
    }
    return d;
}

InSectorEstimate estimate_with_design(const ComplexVector& h, const Sector& sector,
                                      const BaseBeam& base, const MeasurementDesign& design,
                                      const EstimatorSettings& settings, Rng& noise_rng) {
    if (h.size() != sector.ambient()) throw DimensionError("estimate: channel length != N");
    InSectorEstimate out;
    out.mu = design.mu;
    out.measurements = design.size();
    auto sparsity_for = [&](int columns) {
        return std::min({settings.max_sparsity, design.size(), columns});
    };

    if (design.shifts && settings.oversampling == 1) {
        const SensingMatrix a = build_sensing_matrix(*design.shifts, sector);
        const ComplexVector y =
            simulate_measurements(h, base, *design.shifts, settings.noise_std, noise_rng);
        const SparseEstimate x_hat = omp(y, a.a_l, sparsity_for(sector.size()), settings.residual_tol);
        out.g_hat_l = demask(x_hat, base, sector);
        out.h_hat = reconstruct_channel(out.g_hat_l, sector);
        for (int j : x_hat.support) out.support.push_back(sector.first() + j);
        return out;
    }

    const std::vector<ComplexVector> beams =
        design.shifts ? beam_ensemble(base, *design.shifts) : design.beams;
    ComplexVector y = measure(h, beams);
    add_noise(y, settings.noise_std, noise_rng);
    OversampledEstimate est =
        omp_oversampled_atoms(y, beams, settings.oversampling, sector,
                              sparsity_for(settings.oversampling * sector.size()), settings.residual_tol);
    out.h_hat = std::move(est.h_hat);
    out.g_hat_l = dft(out.h_hat).segment(sector.first(), sector.size());
    out.support = std::move(est.atoms.support);
    return out;
}

InSectorEstimate estimate_in_sector(const ComplexVector& h, const Sector& sector,
                                    const BaseBeam& base, const EstimatorSettings& settings,
                                    Rng& design_rng, Rng& noise_rng) {
    const MeasurementDesign design = draw_measurement_design(settings.scheme, sector, base,
                                                             settings.m, settings.pool_factor, design_rng);
    return estimate_with_design(h, sector, base, design, settings, noise_rng);
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
    config.validate();
    return run_experiment(config, design_sectors(config), threads);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const SectorDesign& design,
                                int threads) {
    return std::move(run_snr_points(config, design, {config.snr_db}, threads).front());
}

std::vector<ExperimentResult> run_snr_points(const ExperimentConfig& config,
                                             const SectorDesign& design,
                                             const std::vector<double>& snrs, int threads) {
    config.validate();
    if (snrs.empty()) throw ConfigError("run_snr_points: no SNR values");
    if (static_cast<int>(design.beams.size()) != config.n_sectors)
        throw ConfigError("run_experiment: sector design does not match n_sectors");
    const int trials = config.trials;
    const auto points = snrs.size();

    // Pass 1: channel population and sector selection.
    std::vector<ComplexVector> channels(static_cast<std::size_t>(trials));
    std::vector<TrialRecord> base_records(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](int t) {
        Rng rng = derive_rng(config.seed, kChannelStream, static_cast<std::uint64_t>(t));
        ChannelScenarioConfig scenario = config.channel;
        scenario.n_antennas = config.n;
        TrialRecord& rec = base_records[t];
        rec.trial_index = t;
        if (config.in_sector) {
            std::uniform_int_distribution<int> pick(0, config.n_sectors - 1);
            rec.true_sector = pick(rng);
            scenario.band = design.sectors[rec.true_sector];
        }
        channels[t] = synthesize_channel(sample_scenario(scenario, rng), config.n);
        rec.selected_sector = sls_select_sector(channels[t], design.beams);
    });

    // SNR calibration over the population, with each trial's full circulant
    // ensemble (uniform shifts, M = N_sec) as the reference measurement set.
    double reference_power = 0.0;
    {
        std::vector<std::vector<ComplexVector>> refs;
        for (const BaseBeam& b : design.beams) refs.push_back(reference_beams(b));
        for (int t = 0; t < trials; ++t) {
            const auto& beams = refs[base_records[t].selected_sector];
            reference_power += measure(channels[t], beams).squaredNorm() / static_cast<double>(beams.size());
        }
        reference_power /= trials;
    }
    std::vector<double> noise_std(points, 0.0);
    std::vector<EstimatorSettings> settings;
    for (std::size_t p = 0; p < points; ++p) {
        if (std::isnan(snrs[p])) throw ConfigError("snr_db is NaN");
        if (snrs[p] != std::numeric_limits<double>::infinity())
            noise_std[p] = noise_std_from_power(reference_power, snrs[p]);
        ExperimentConfig c = config;
        c.snr_db = snrs[p];
        settings.push_back(estimator_settings(c, noise_std[p]));
    }

    // Pass 2: one measurement design per trial, reused at every SNR point.
    std::vector<std::vector<TrialRecord>> records(points, base_records);
    parallel_for(trials, threads, [&](int t) {
        try {
            const TrialRecord& base_rec = base_records[t];
            const Sector& sector = design.sectors[base_rec.selected_sector];
            const BaseBeam& base = design.beams[base_rec.selected_sector];
            Rng beam_rng = derive_rng(config.seed, kBeamStream, static_cast<std::uint64_t>(t));
            const MeasurementDesign md = draw_measurement_design(config.scheme, sector, base, config.m,
                                                                 config.pool_factor, beam_rng);
            const ComplexVector g_l = dft(channels[t]).segment(sector.first(), sector.size());

            for (std::size_t p = 0; p < points; ++p) {
                Rng noise_rng = derive_rng(config.seed, kNoiseStream, static_cast<std::uint64_t>(t));
                const InSectorEstimate est =
                    estimate_with_design(channels[t], sector, base, md, settings[p], noise_rng);
                TrialRecord& rec = records[p][t];
                rec.nmse_numerator = (g_l - est.g_hat_l).squaredNorm();
                rec.nmse_denominator = g_l.squaredNorm();
                rec.mu = est.mu;
                rec.degenerate = est.h_hat.norm() == 0.0;
                if (noise_std[p] > 0.0)
                    rec.rate_bits = achievable_rate(est.h_hat, channels[t], noise_std[p] * noise_std[p]);
                else
                    rec.rate_bits = rec.degenerate ? 0.0 : std::numeric_limits<double>::infinity();
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(t) + ": " + e.what());
        }
    });

    std::vector<ExperimentResult> results(points);
    for (std::size_t p = 0; p < points; ++p) {
        ExperimentSummary& s = results[p].summary;
        s.scheme = config.scheme;
        s.n = config.n;
        s.n_sec = config.n_sec();
        s.m = config.scheme == Scheme::genie ? config.n_sec() : config.m;
        s.snr_db = snrs[p];
        s.trials = trials;
        s.noise_std = noise_std[p];
        s.nmse = nmse(records[p]);
        double rate = 0.0;
        double mu = 0.0;
        for (const TrialRecord& r : records[p]) {
            rate += r.rate_bits;
            mu += r.mu;
            s.mis_selections += r.mis_selected() ? 1 : 0;
            s.degenerate_estimates += r.degenerate ? 1 : 0;
        }
        s.mean_rate_bits = rate / trials;
        s.mean_mu = mu / trials;
        results[p].records = std::move(records[p]);
    }
    return results;
}

SingleShot run_single_shot(const ExperimentConfig& config, const SectorDesign& design,
                           const std::optional<ComplexVector>& h) {
    config.validate();
    if (static_cast<int>(design.beams.size()) != config.n_sectors)
        throw ConfigError("single shot: sector design does not match n_sectors");
    SingleShot out;
    if (h) {
        if (h->size() != config.n) throw DimensionError("single shot: channel length != N");
        out.h = *h;
    } else {
        Rng rng = derive_rng(config.seed, kChannelStream, 0);
        ChannelScenarioConfig scenario = config.channel;
        scenario.n_antennas = config.n;
        if (config.in_sector) {
            std::uniform_int_distribution<int> pick(0, config.n_sectors - 1);
            out.true_sector = pick(rng);
            scenario.band = design.sectors[out.true_sector];
        }
        out.h = synthesize_channel(sample_scenario(scenario, rng), config.n);
    }
    out.selected_sector = sls_select_sector(out.h, design.beams);
    const Sector& sector = design.sectors[out.selected_sector];
    const BaseBeam& base = design.beams[out.selected_sector];
    if (!config.noiseless()) {
        const auto ref = reference_beams(base);
        out.noise_std = noise_std_from_power(
            measure(out.h, ref).squaredNorm() / static_cast<double>(ref.size()), config.snr_db);
    }
    Rng beam_rng = derive_rng(config.seed, kBeamStream, 0);
    Rng noise_rng = derive_rng(config.seed, kNoiseStream, 0);
    out.estimate = estimate_in_sector(out.h, sector, base, estimator_settings(config, out.noise_std),
                                      beam_rng, noise_rng);
    const ComplexVector g_l = dft(out.h).segment(sector.first(), sector.size());
    const double energy = g_l.squaredNorm();
    out.nmse = energy > 0.0 ? (g_l - out.estimate.g_hat_l).squaredNorm() / energy
                            : std::numeric_limits<double>::quiet_NaN();
    if (out.noise_std > 0.0)
        out.rate_bits = achievable_rate(out.estimate.h_hat, out.h, out.noise_std * out.noise_std);
    else
        out.rate_bits = out.estimate.h_hat.norm() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return out;
}

std::vector<ExperimentSummary> run_sweep(const ExperimentConfig& config,
                                         const std::vector<Scheme>& schemes, int threads) {
    const SectorDesign design = design_sectors(config);
    const std::vector<int> ms = config.m_values.empty() ? std::vector<int>{config.m} : config.m_values;
    const std::vector<double> snrs =
        config.snr_values.empty() ? std::vector<double>{config.snr_db} : config.snr_values;
    std::vector<ExperimentSummary> out;
    for (Scheme scheme : schemes)
        for (int m : ms) {
            ExperimentConfig c = config;
            c.scheme = scheme;
            c.m = m;
            c.m_values.clear();
            c.snr_values.clear();
            for (ExperimentResult& r : run_snr_points(c, design, snrs, threads))
                out.push_back(r.summary);
            if (scheme == Scheme::genie) break; // M is fixed to N_sec
        }
    return out;
}

FullBandResult run_full_band(const ComplexVector& h, const ExperimentConfig& config,
                             const SectorDesign& design, double noise_std) {
    config.validate();
    if (h.size() != config.n) throw DimensionError("run_full_band: channel length != N");
    const EstimatorSettings settings = estimator_settings(config, noise_std);
    FullBandResult out;
    out.g_hat = ComplexVector::Zero(config.n);
    for (std::size_t s = 0; s < design.sectors.size(); ++s) {
        const Sector& sector = design.sectors[s];
        Rng beam_rng = derive_rng(config.seed, kBeamStream, s);
        Rng noise_rng = derive_rng(config.seed, kNoiseStream, s);
        InSectorEstimate est =
            estimate_in_sector(h, sector, design.beams[s], settings, beam_rng, noise_rng);
        out.g_hat.segment(sector.first(), sector.size()) = est.g_hat_l;
        out.supports.push_back(std::move(est.support));
        out.measurements += est.measurements;
    }
    return out;
}

FullBandRun run_full_band(const ExperimentConfig& config) {
    config.validate();
    const SectorDesign design = design_sectors(config);
    ChannelScenarioConfig scenario = config.channel;
    scenario.n_antennas = config.n;
    scenario.band.reset();
    Rng rng = derive_rng(config.seed, kChannelStream);
    FullBandRun run;
    run.h = synthesize_channel(sample_scenario(scenario, rng), config.n);

    double noise_std = 0.0;
    if (!config.noiseless()) {
        double total = 0.0;
        for (const BaseBeam& b : design.beams) {
            const auto beams = reference_beams(b);
            total += measure(run.h, beams).squaredNorm() / static_cast<double>(beams.size());
        }
        noise_std = noise_std_from_power(total / static_cast<double>(design.beams.size()), config.snr_db);
    }
    run.estimate = run_full_band(run.h, config, design, noise_std);
    return run;
}

} // namespace insector
