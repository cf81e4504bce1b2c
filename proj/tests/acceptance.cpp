// SPDX-License-Identifier: Apache-2.0
//
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails (including its runtime budget).
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "insector/insector.hpp"
#include "oracles.hpp"

using namespace insector;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

int worker_threads() {
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

Outcome uniform_shift_exactness() {
    double worst_mu = 0.0;
    double worst_psf = 0.0;
    int cases = 0;
    for (int n : {32, 64, 256}) {
        for (int n_sec = 2; n_sec <= n; ++n_sec) {
            if (n % n_sec != 0) continue;
            const int rho = n / n_sec;
            const ShiftSet s = uniform_shifts(n, n_sec);
            for (int index = 0; index < rho; ++index) {
                worst_mu = std::max(worst_mu, coherence(s, Sector::tile(n, rho, index)));
                ++cases;
            }
            const ComplexVector p = psf(indicator(s));
            for (int i = 0; i < n; ++i) {
                const double expected = i % n_sec == 0 ? 1.0 / rho : 0.0;
                worst_psf = std::max(worst_psf, std::abs(p[i] - Complex(expected, 0.0)));
            }
        }
    }
    return {worst_mu <= 1e-12 && worst_psf <= 1e-12,
            fmt("%d sector placements, max mu %.3g, max PSF error %.3g", cases, worst_mu, worst_psf)};
}

Outcome brute_force_optimality() {
    bool pass = true;
    std::uint64_t subsets = 0;
    std::string ties;
    for (int n = 4; n <= 20; ++n) {
        for (int n_sec = 2; n_sec < n; ++n_sec) {
            if (n % n_sec != 0) continue;
            const double uniform_mu = coherence(uniform_shifts(n, n_sec), Sector(0, n_sec - 1, n));
            const oracle::EnumerationResult r = oracle::enumerate_min_coherence(n, n_sec, n_sec, 1e-12);
            subsets += r.subsets;
            // nothing strictly below the uniform pattern, and the uniform pattern is a tie at zero
            pass = pass && uniform_mu <= 1e-12 && r.best_mu >= uniform_mu - 1e-12 && r.ties_at_zero >= 1;
            ties += fmt(" %d/%d:%llu", n, n_sec, static_cast<unsigned long long>(r.ties_at_zero));
        }
    }
    return {pass, fmt("%llu subsets enumerated, none below mu=0; zero-mu ties (N/N_sec:count)",
                      static_cast<unsigned long long>(subsets)) + ties};
}

Outcome psf_gram_equivalence() {
    const int n = 64;
    Rng rng(derive_rng(3, 0));
    std::uniform_int_distribution<int> pick_m(1, n);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ShiftSet s = rcs_shifts(n, pick_m(rng), rng);
        const ComplexVector p = psf(indicator(s));
        const ComplexMatrix a = oracle::subsampled_dft(s.shifts(), n);
        const ComplexMatrix gram = a.adjoint() * a;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst, std::abs(gram(i, j) - p[positive_mod(j - i, n)]));
    }
    return {worst <= 1e-10, fmt("50 shift sets at N=64, max |A*A - circ(PSF)| = %.3g", worst)};
}

Outcome cdf_dominance() {
    const auto pcs = coherence_cdf(ShiftScheme::pcs, 256, 64, 25, 1000, 1);
    const auto rcs = coherence_cdf(ShiftScheme::rcs, 256, 64, 25, 1000, 1);
    int violations = 0;
    for (std::size_t q = 0; q < pcs.size(); ++q) violations += pcs[q] > rcs[q] ? 1 : 0;
    const std::size_t median = pcs.size() / 2;
    const bool strict = pcs[median - 1] < rcs[median - 1] && pcs[median] < rcs[median];
    return {violations == 0 && strict,
            fmt("median mu PCS %.5f vs RCS %.5f, quantiles with PCS above RCS: %d/1000", pcs[median],
                rcs[median], violations)};
}

Outcome exact_recovery() {
    ExperimentConfig c;
    c.m = c.n_sec();
    c.trials = 1;
    c.snr_db = std::numeric_limits<double>::infinity();
    c.channel.grid_mode = GridMode::on_grid;
    const SectorDesign design = design_sectors(c);
    double worst = 0.0;
    for (int seed = 1; seed <= 100; ++seed) {
        c.seed = static_cast<std::uint64_t>(seed);
        c.channel.k_rays = 1 + (seed - 1) % 8;
        worst = std::max(worst, run_experiment(c, design).summary.nmse);
    }
    return {worst < 1e-18, fmt("100 seeds, K=1..8, M=N_sec=64, max NMSE %.3g", worst)};
}

Outcome measurement_paths() {
    const int n = 256;
    Rng rng(derive_rng(6, 0));
    double worst = 0.0;
    std::uniform_int_distribution<int> pick_sector(0, 3);
    std::uniform_int_distribution<int> pick_m(1, n);
    for (int trial = 0; trial < 100; ++trial) {
        const BaseBeam base = mask_to_base_beam(random_mask(Sector::tile(n, 4, pick_sector(rng)), rng));
        const ShiftSet s = rcs_shifts(n, pick_m(rng), rng);
        const ComplexVector h = oracle::random_vector(rng, n);
        const ComplexVector y4 = measure_inner_product(h, base, s);
        worst = std::max(worst, (y4 - measure_convolution(h, base, s)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (y4 - measure_masked_dft(h, base, s)).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-10, fmt("100 (h, mask, shifts) triples at N=256, max path disagreement %.3g", worst)};
}

ExperimentConfig trend_config() {
    ExperimentConfig c;
    c.snr_db = 5.0;
    c.channel.k_rays = 4;
    c.channel.grid_mode = GridMode::off_grid;
    c.omp.oversampling = 4;
    return c;
}

Outcome nmse_trend() {
    ExperimentConfig c = trend_config();
    c.trials = 5000;
    c.m_values = {10, 20, 30, 40, 50, 60};
    const auto rows = run_sweep(c, {Scheme::pcs, Scheme::rcs, Scheme::greedy}, worker_threads());
    bool pass = true;
    std::string detail = fmt("%d trials, NMSE pcs/rcs/greedy:", c.trials);
    for (std::size_t i = 0; i < 6; ++i) {
        const double pcs = rows[i].nmse;
        const double rcs = rows[6 + i].nmse;
        const double greedy = rows[12 + i].nmse;
        pass = pass && pcs <= rcs && (rows[i].m < 20 || pcs < greedy);
        detail += fmt(" M=%d %.4f/%.4f/%.4f", rows[i].m, pcs, rcs, greedy);
    }
    return {pass, detail};
}

Outcome rate_ordering() {
    ExperimentConfig c = trend_config();
    c.trials = 10000;
    c.m = 10;
    c.snr_values = {-5.0, 0.0, 5.0, 10.0};
    const auto rows = run_sweep(c, {Scheme::pcs, Scheme::rcs, Scheme::greedy, Scheme::genie}, worker_threads());
    bool pass = true;
    std::string detail = fmt("%d trials, M=10, rate pcs/rcs/greedy/genie:", c.trials);
    for (std::size_t i = 0; i < 4; ++i) {
        const double pcs = rows[i].mean_rate_bits;
        const double rcs = rows[4 + i].mean_rate_bits;
        const double greedy = rows[8 + i].mean_rate_bits;
        const double genie = rows[12 + i].mean_rate_bits;
        pass = pass && pcs >= rcs && rcs >= greedy && std::max({pcs, rcs, greedy}) < genie;
        detail += fmt(" %gdB %.4f/%.4f/%.4f/%.4f", rows[i].snr_db, pcs, rcs, greedy, genie);
    }
    return {pass, detail};
}

Outcome normalization_audit() {
    ExperimentConfig c;
    const SectorDesign design = design_sectors(c);
    Rng rng(derive_rng(9, 0));
    double norm_error = 0.0;
    double leakage = 0.0;
    int beams_checked = 0;
    auto audit = [&](const std::vector<ComplexVector>& beams) {
        for (const ComplexVector& f : beams) {
            norm_error = std::max(norm_error, std::abs(f.norm() - 1.0));
            ++beams_checked;
        }
    };
    auto audit_leakage = [&](const std::vector<ComplexVector>& beams, const Sector& sector) {
        for (const ComplexVector& f : beams) {
            const ComplexVector spectrum = dft(f);
            double outside = 0.0;
            for (int i = 0; i < sector.ambient(); ++i)
                if (!sector.contains(i)) outside += std::norm(spectrum[i]);
            leakage = std::max(leakage, outside);
        }
    };
    for (std::size_t s = 0; s < design.sectors.size(); ++s) {
        const Sector& sector = design.sectors[s];
        const BaseBeam& base = design.beams[s];
        audit({base.f_b});
        const auto uniform = beam_ensemble(base, uniform_shifts(c.n, c.n_sec()));
        audit(uniform);
        audit_leakage(uniform, sector);
        for (int m : {10, 25, 60}) {
            const auto pcs = beam_ensemble(base, pcs_shifts(c.n, c.n_sec(), m, rng));
            audit(pcs);
            audit_leakage(pcs, sector);
            audit(beam_ensemble(base, rcs_shifts(c.n, m, rng)));
            audit(greedy_benchmark_beams(sector, m, c.pool_factor, rng));
        }
        audit(genie_beams(sector));
    }

    ChannelScenarioConfig scenario = c.channel;
    scenario.n_antennas = c.n;
    Rng channel_rng(derive_rng(9, 1));
    double power = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
        power += synthesize_channel(sample_scenario(scenario, channel_rng), c.n).squaredNorm();
    power /= draws;
    const bool pass = norm_error <= 1e-12 && leakage <= 1e-18 && std::abs(power / c.n - 1.0) <= 0.05;
    return {pass, fmt("%d beams, max | ||f|| - 1 | %.3g, max out-of-sector energy %.3g, mean h*h / N = %.4f",
                      beams_checked, norm_error, leakage, power / c.n)};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "uniform-shift exactness", 1.0, uniform_shift_exactness},
        {2, "brute-force optimality at toy scale", 120.0, brute_force_optimality},
        {3, "PSF/Gram oracle equivalence", 10.0, psf_gram_equivalence},
        {4, "coherence CDF dominance", 30.0, cdf_dominance},
        {5, "exact noiseless recovery", 30.0, exact_recovery},
        {6, "measurement-path equivalence", 10.0, measurement_paths},
        {7, "NMSE trend", 600.0, nmse_trend},
        {8, "rate ordering", 600.0, rate_ordering},
        {9, "normalization audit", std::numeric_limits<double>::infinity(), normalization_audit},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = elapsed < c.budget_s;
        const bool pass = outcome.pass && in_budget;
        failures += pass ? 0 : 1;
        std::printf("criterion %d (%s): %s [%.2f s of %.0f s] %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    elapsed, c.budget_s, outcome.detail.c_str(), in_budget ? "" : " (over runtime budget)");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
