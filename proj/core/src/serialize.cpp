// SPDX-License-Identifier: Apache-2.0
#include "insector/serialize.hpp"

#include <charconv>
#include <cstdio>

namespace insector {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex_vector(const ComplexVector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i].real());
        out += ':';
        out += format_double(v[i].imag());
    }
    return out;
}

ComplexVector parse_complex_vector(const std::string& text) {
    std::vector<Complex> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("complex vector: expected re:im, got '" + item + "'");
        double re = 0.0;
        double im = 0.0;
        const auto r1 = std::from_chars(item.data(), item.data() + colon, re);
        const auto r2 = std::from_chars(item.data() + colon + 1, item.data() + item.size(), im);
        if (r1.ec != std::errc{} || r1.ptr != item.data() + colon || r2.ec != std::errc{} ||
            r2.ptr != item.data() + item.size())
            throw ConfigError("complex vector: malformed entry '" + item + "'");
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ConfigError("complex vector: non-finite entry '" + item + "'");
        values.emplace_back(re, im);
        pos = comma + 1;
    }
    ComplexVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Eigen::Index>(i)] = values[i];
    return v;
}

void write_sweep_header(std::ostream& os) {
    os << "scheme,N,N_sec,M,snr_db,trials,nmse,mean_rate_bits,mean_mu\n";
}

void write_sweep_row(std::ostream& os, const ExperimentSummary& s) {
    os << to_string(s.scheme) << ',' << s.n << ',' << s.n_sec << ',' << s.m << ','
       << format_double(s.snr_db) << ',' << s.trials << ',' << format_double(s.nmse) << ','
       << format_double(s.mean_rate_bits) << ',' << format_double(s.mean_mu) << '\n';
}

void write_cdf_header(std::ostream& os) { os << "trial,scheme,N,N_sec,M,mu\n"; }

void write_cdf_row(std::ostream& os, const CdfRow& row) {
    os << row.trial << ',' << to_string(row.scheme) << ',' << row.n << ',' << row.n_sec << ','
       << row.m << ',' << format_double(row.mu) << '\n';
}

void write_trial_header(std::ostream& os) {
    os << "trial,selected_sector,true_sector,nmse_numerator,nmse_denominator,rate_bits,mu\n";
}

void write_trial_row(std::ostream& os, const TrialRecord& r) {
    os << r.trial_index << ',' << r.selected_sector << ',' << r.true_sector << ','
       << format_double(r.nmse_numerator) << ',' << format_double(r.nmse_denominator) << ','
       << format_double(r.rate_bits) << ',' << format_double(r.mu) << '\n';
}

} // namespace insector
