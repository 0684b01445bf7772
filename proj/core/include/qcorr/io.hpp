// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/frontier.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/source.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tomography.hpp"

namespace qcorr {

/// Shortest form with at most 12 significant digits, locale independent; -0 prints as 0.
std::string format_number(double x);
/// x rounded to 12 significant digits.
double round12(double x);

// State files: {"dim": 4, "entries": [[re, im], ...]} in row-major order. Entries are
// written with round-trip precision so a state survives save/load bit-exactly.
std::string matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(std::string_view text);
std::string state_to_json(const DensityMatrix &rho);
/// Parses and validates; InvalidInput names the violated invariant.
DensityMatrix state_from_json(std::string_view text);

std::string report_to_json(const CorrelationReport &report);

std::string records_to_json(const std::vector<SweepRecord> &records);
/// Columns: family, one column per parameter, S, D_left, D_right, D_sym, I_c, A.
std::string records_to_csv(const std::vector<SweepRecord> &records);

std::string mncms_to_csv(const std::vector<MncmsBin> &bins);
std::string amid_bounds_to_csv(const std::vector<AmidBin> &bins);
std::string spread_to_json(std::string_view family, const std::vector<std::pair<std::string, double>> &params,
                           const std::vector<double> &sigmas, std::uint64_t seed, const Spread &spread);

std::string source_config_to_json(const SourceConfig &config);
SourceConfig source_config_from_json(std::string_view text);

std::string dataset_to_json(const TomographyDataset &data);
TomographyDataset dataset_from_json(std::string_view text);

std::string reconstruction_to_json(const ComplexMatrix &rho_linear, const MleResult &mle,
                                   std::optional<double> fidelity_vs_reference);

/// Whole-file read; throws InvalidInput when the file cannot be opened.
std::string read_text_file(const std::string &path);
/// Writes through a temporary sibling file and renames it into place.
void write_text_file(const std::string &path, std::string_view text);

}  // namespace qcorr
