// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef INSECTOR_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "insector/insector.hpp"

namespace {

using insector::ComplexVector;
using json = nlohmann::ordered_json;

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format = "csv";
    std::string scheme;
    int threads = 1;
};

void add_common(CLI::App* cmd, Common& opts, bool with_scheme, bool with_threads) {
    cmd->add_option("--config", opts.config_path, "experiment config file (key = value)");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
    cmd->add_option("--format", opts.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    if (with_scheme)
        cmd->add_option("--scheme", opts.scheme, "measurement scheme")
            ->check(CLI::IsMember({"pcs", "rcs", "greedy", "genie"}));
    if (with_threads) cmd->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
}

insector::ExperimentConfig load(const Common& opts) {
    insector::ExperimentConfig config =
        opts.config_path.empty() ? insector::ExperimentConfig{} : insector::load_config(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (!opts.scheme.empty()) config.scheme = insector::parse_scheme(opts.scheme);
    config.validate();
    return config;
}

// JSON has no infinity; emit it as a string the config parser also accepts.
json number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return nullptr;
    return x;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void emit(const Common& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw std::runtime_error("cannot write " + opts.out_path);
    out << text;
}

std::string run_design(const Common& opts) {
    const insector::ExperimentConfig config = load(opts);
    const insector::SectorDesign design = insector::design_sectors(config);
    std::ostringstream os;
    if (opts.format == "json") {
        json doc = {{"N", config.n}, {"n_sectors", config.n_sectors}, {"n_mask_candidates", config.n_mask_candidates},
                    {"seed", config.seed}, {"sectors", json::array()}};
        for (std::size_t s = 0; s < design.sectors.size(); ++s) {
            const auto& beam = design.beams[s];
            doc["sectors"].push_back({{"sector", s},
                                      {"d1", design.sectors[s].first()},
                                      {"d2", design.sectors[s].last()},
                                      {"papr", beam.papr},
                                      {"norm_factor", beam.norm_factor},
                                      {"mask", insector::format_complex_vector(beam.mask.p)},
                                      {"f_b", insector::format_complex_vector(beam.f_b)}});
        }
        os << doc.dump(2) << "\n";
        return os.str();
    }
    os << "sector,d1,d2,papr,norm_factor,mask,f_b\n";
    for (std::size_t s = 0; s < design.sectors.size(); ++s) {
        const auto& beam = design.beams[s];
        os << s << ',' << design.sectors[s].first() << ',' << design.sectors[s].last() << ','
           << insector::format_double(beam.papr) << ',' << insector::format_double(beam.norm_factor) << ','
           << quoted(insector::format_complex_vector(beam.mask.p)) << ','
           << quoted(insector::format_complex_vector(beam.f_b)) << '\n';
    }
    return os.str();
}

std::string run_psf(const Common& opts, const std::string& table) {
    const insector::ExperimentConfig config = load(opts);
    std::vector<insector::ShiftScheme> schemes;
    if (opts.scheme.empty() || opts.scheme == "pcs") schemes.push_back(insector::ShiftScheme::pcs);
    if (opts.scheme.empty() || opts.scheme == "rcs") schemes.push_back(insector::ShiftScheme::rcs);
    if (schemes.empty()) throw insector::ConfigError("psf: --scheme must be pcs or rcs");
    const int n = config.n;
    const int n_sec = config.n_sec();
    const insector::Sector sector(0, n_sec - 1, n);

    // Draw t uses seed + t, matching coherence_cdf.
    auto draw = [&](insector::ShiftScheme scheme, int t) {
        insector::Rng rng(config.seed + static_cast<std::uint64_t>(t));
        return insector::draw_shifts(scheme, n, n_sec, config.m, rng);
    };

    std::ostringstream os;
    if (opts.format == "json") {
        json doc = {{"N", n}, {"N_sec", n_sec}, {"M", config.m}, {"trials", config.trials},
                    {"uniform_psf", insector::format_complex_vector(
                                        insector::psf(insector::indicator(insector::uniform_shifts(n, n_sec))))},
                    {"schemes", json::array()}};
        for (auto scheme : schemes) {
            const insector::ShiftSet first = draw(scheme, 0);
            const insector::PsfReport report = insector::psf_report(first, sector);
            json mus = json::array();
            for (int t = 0; t < config.trials; ++t) mus.push_back(insector::coherence(draw(scheme, t), sector));
            doc["schemes"].push_back({{"scheme", insector::to_string(scheme)},
                                      {"trial0_shifts", first.shifts()},
                                      {"trial0_psf", insector::format_complex_vector(report.psf)},
                                      {"trial0_mu", report.mu},
                                      {"trial0_argmax", report.argmax_index},
                                      {"mu", mus}});
        }
        os << doc.dump(2) << "\n";
        return os.str();
    }
    if (table == "psf") {
        os << "scheme,index,psf,abs\n";
        for (auto scheme : schemes) {
            const ComplexVector p = insector::psf(insector::indicator(draw(scheme, 0)));
            for (int i = 0; i < n; ++i)
                os << insector::to_string(scheme) << ',' << i << ',' << insector::format_double(p[i].real()) << ':'
                   << insector::format_double(p[i].imag()) << ',' << insector::format_double(std::abs(p[i])) << '\n';
        }
        return os.str();
    }
    insector::write_cdf_header(os);
    for (auto scheme : schemes)
        for (int t = 0; t < config.trials; ++t)
            insector::write_cdf_row(os, {t, scheme, n, n_sec, config.m, insector::coherence(draw(scheme, t), sector)});
    return os.str();
}

std::string run_estimate(const Common& opts, const std::string& channel_path) {
    const insector::ExperimentConfig config = load(opts);
    std::optional<ComplexVector> h;
    if (!channel_path.empty()) {
        std::ifstream in(channel_path);
        if (!in) throw insector::ConfigError("cannot open channel file " + channel_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
        h = insector::parse_complex_vector(text);
    }
    const insector::SectorDesign design = insector::design_sectors(config);
    const insector::SingleShot shot = insector::run_single_shot(config, design, h);
    const auto& est = shot.estimate;

    std::ostringstream os;
    if (opts.format == "json") {
        json doc = {{"scheme", insector::to_string(config.scheme)},
                    {"N", config.n},
                    {"N_sec", config.n_sec()},
                    {"M", est.measurements},
                    {"snr_db", number(config.snr_db)},
                    {"true_sector", shot.true_sector},
                    {"selected_sector", shot.selected_sector},
                    {"noise_std", shot.noise_std},
                    {"nmse", number(shot.nmse)},
                    {"rate_bits", number(shot.rate_bits)},
                    {"mu", est.mu},
                    {"support", est.support},
                    {"h", insector::format_complex_vector(shot.h)},
                    {"h_hat", insector::format_complex_vector(est.h_hat)}};
        os << doc.dump(2) << "\n";
        return os.str();
    }
    os << "scheme,N,N_sec,M,snr_db,true_sector,selected_sector,noise_std,nmse,rate_bits,mu,h,h_hat\n";
    os << insector::to_string(config.scheme) << ',' << config.n << ',' << config.n_sec() << ',' << est.measurements
       << ',' << insector::format_double(config.snr_db) << ',' << shot.true_sector << ',' << shot.selected_sector
       << ',' << insector::format_double(shot.noise_std) << ',' << insector::format_double(shot.nmse) << ','
       << insector::format_double(shot.rate_bits) << ',' << insector::format_double(est.mu) << ','
       << quoted(insector::format_complex_vector(shot.h)) << ','
       << quoted(insector::format_complex_vector(est.h_hat)) << '\n';
    return os.str();
}

std::string run_sweep_command(const Common& opts) {
    const insector::ExperimentConfig config = load(opts);
    std::vector<insector::Scheme> schemes;
    if (opts.scheme.empty())
        schemes = {insector::Scheme::pcs, insector::Scheme::rcs, insector::Scheme::greedy, insector::Scheme::genie};
    else
        schemes = {config.scheme};
    const auto rows = insector::run_sweep(config, schemes, opts.threads);

    std::ostringstream os;
    if (opts.format == "json") {
        json doc = json::array();
        for (const auto& r : rows)
            doc.push_back({{"scheme", insector::to_string(r.scheme)},
                           {"N", r.n},
                           {"N_sec", r.n_sec},
                           {"M", r.m},
                           {"snr_db", number(r.snr_db)},
                           {"trials", r.trials},
                           {"nmse", r.nmse},
                           {"mean_rate_bits", number(r.mean_rate_bits)},
                           {"mean_mu", r.mean_mu},
                           {"noise_std", r.noise_std},
                           {"mis_selections", r.mis_selections},
                           {"degenerate_estimates", r.degenerate_estimates}});
        os << doc.dump(2) << "\n";
        return os.str();
    }
    insector::write_sweep_header(os);
    for (const auto& r : rows) insector::write_sweep_row(os, r);
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-sector compressed beam training: design, coherence analysis and Monte-Carlo evaluation"};
    app.require_subcommand(1);

    Common design_opts;
    CLI::App* design = app.add_subcommand("design", "lowest-PAPR base beam and mask per sector");
    add_common(design, design_opts, false, false);

    Common psf_opts;
    std::string psf_table = "cdf";
    CLI::App* psf = app.add_subcommand("psf", "coherence per draw (CDF rows) or the PSF of draw 0");
    add_common(psf, psf_opts, true, false);
    psf->add_option("--table", psf_table, "csv table to emit")->check(CLI::IsMember({"cdf", "psf"}));

    Common estimate_opts;
    std::string channel_path;
    CLI::App* estimate = app.add_subcommand("estimate", "single-shot in-sector channel estimate");
    add_common(estimate, estimate_opts, true, false);
    estimate->add_option("--channel", channel_path, "channel vector file (re:im,re:im,...) instead of sampling one");

    Common sweep_opts;
    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over M and SNR");
    add_common(sweep, sweep_opts, true, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) emit(design_opts, run_design(design_opts));
        if (psf->parsed()) emit(psf_opts, run_psf(psf_opts, psf_table));
        if (estimate->parsed()) emit(estimate_opts, run_estimate(estimate_opts, channel_path));
        if (sweep->parsed()) emit(sweep_opts, run_sweep_command(sweep_opts));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
