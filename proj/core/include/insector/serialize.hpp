// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "insector/evaluation.hpp"
#include "insector/sampling.hpp"
#include "insector/types.hpp"

namespace insector {

// 17 significant digits, enough to round-trip a double.
std::string format_double(double x);

// "re:im,re:im,..."
std::string format_complex_vector(const ComplexVector& v);
ComplexVector parse_complex_vector(const std::string& text);

void write_sweep_header(std::ostream& os);
void write_sweep_row(std::ostream& os, const ExperimentSummary& s);

struct CdfRow {
    int trial = 0;
    ShiftScheme scheme = ShiftScheme::pcs;
    int n = 0;
    int n_sec = 0;
    int m = 0;
    double mu = 0.0;
};

void write_cdf_header(std::ostream& os);
void write_cdf_row(std::ostream& os, const CdfRow& row);

void write_trial_header(std::ostream& os);
void write_trial_row(std::ostream& os, const TrialRecord& r);

} // namespace insector
