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

#include "qcorr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

json parse_json(std::string_view text, const char *what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw InvalidInput(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

double get_number(const json &j, const char *key, const char *what) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw InvalidInput(std::string(what) + ": missing numeric field '" + key + "'");
    }
    return j.at(key).get<double>();
}

std::uint64_t get_unsigned(const json &j, const char *key, const char *what) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
        throw InvalidInput(std::string(what) + ": field '" + key + "' must be a non-negative integer");
    }
    return j.at(key).get<std::uint64_t>();
}

ordered_json basis_json(const MeasurementBasis &b) {
    ordered_json j;
    j["theta"] = round12(b.theta);
    j["phi"] = round12(b.phi);
    return j;
}

ordered_json report_json(const CorrelationReport &r) {
    ordered_json j;
    j["S"] = round12(r.S);
    j["S_A"] = round12(r.S_A);
    j["S_B"] = round12(r.S_B);
    j["I"] = round12(r.I);
    j["J_left"] = round12(r.J_left);
    j["J_right"] = round12(r.J_right);
    j["D_left"] = round12(r.D_left);
    j["D_right"] = round12(r.D_right);
    j["D_sym"] = round12(r.D_sym);
    j["I_c"] = round12(r.I_c);
    j["A"] = round12(r.A);
    j["basis_left"] = basis_json(r.basis_left);
    j["basis_right"] = basis_json(r.basis_right);
    j["basis_bilocal"] = {{"a", basis_json(r.basis_bilocal.a)}, {"b", basis_json(r.basis_bilocal.b)}};
    j["optimizer_evals"] = r.optimizer_evals;
    j["converged"] = r.converged;
    return j;
}

std::string dump(const ordered_json &j) {
    return j.dump(2) + "\n";
}

}  // namespace

std::string format_number(double x) {
    if (x == 0.0) {
        return "0";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, round12(x));
    return std::string(buf, res.ptr);
}

double round12(double x) {
    if (x == 0.0 || !std::isfinite(x)) {
        return x == 0.0 ? 0.0 : x;
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 11);
    double out = 0.0;
    std::from_chars(buf, res.ptr, out);
    return out;
}

std::string matrix_to_json(const ComplexMatrix &m) {
    ordered_json j;
    j["dim"] = m.dim();
    json entries = json::array();
    for (const Complex &z : m.entries()) {
        entries.push_back({z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()});
    }
    j["entries"] = std::move(entries);
    return j.dump() + "\n";
}

ComplexMatrix matrix_from_json(std::string_view text) {
    const json j = parse_json(text, "state");
    if (!j.is_object()) {
        throw InvalidInput("state JSON must be an object with 'dim' and 'entries'");
    }
    const std::uint64_t dim = get_unsigned(j, "dim", "state");
    if (dim != 4) {
        throw InvalidInput("state dimension must be 4, got " + std::to_string(dim));
    }
    if (!j.contains("entries") || !j.at("entries").is_array()) {
        throw InvalidInput("state: missing 'entries' array");
    }
    const json &e = j.at("entries");
    if (e.size() != dim * dim) {
        throw InvalidInput("state: expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(e.size()));
    }
    std::vector<Complex> values;
    values.reserve(e.size());
    for (const json &z : e) {
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
            throw InvalidInput("state: each entry must be a [re, im] pair of numbers");
        }
        values.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
    return ComplexMatrix(dim, std::move(values));
}

std::string state_to_json(const DensityMatrix &rho) {
    return matrix_to_json(rho.matrix());
}

DensityMatrix state_from_json(std::string_view text) {
    const ComplexMatrix m = matrix_from_json(text);
    const StateCheck check = check_density_matrix(m);
    if (!check.ok) {
        throw InvalidInput("invalid density matrix: " + check.message);
    }
    return DensityMatrix(m);
}

std::string report_to_json(const CorrelationReport &report) {
    return dump(report_json(report));
}

std::string records_to_json(const std::vector<SweepRecord> &records) {
    ordered_json arr = ordered_json::array();
    for (const SweepRecord &r : records) {
        ordered_json item;
        item["family"] = r.family;
        ordered_json params = ordered_json::object();
        for (const auto &[name, value] : r.params) {
            params[name] = round12(value);
        }
        item["params"] = std::move(params);
        item["report"] = report_json(r.report);
        arr.push_back(std::move(item));
    }
    return dump(arr);
}

std::string records_to_csv(const std::vector<SweepRecord> &records) {
    std::ostringstream os;
    os << "family";
    if (!records.empty()) {
        for (const auto &p : records.front().params) {
            os << ',' << p.first;
        }
    }
    os << ",S,D_left,D_right,D_sym,I_c,A\n";
    for (const SweepRecord &r : records) {
        if (r.params.size() != records.front().params.size()) {
            throw InvalidInput("CSV rows must share one parameter layout");
        }
        os << r.family;
        for (const auto &p : r.params) {
            os << ',' << format_number(p.second);
        }
        const CorrelationReport &c = r.report;
        for (double v : {c.S, c.D_left, c.D_right, c.D_sym, c.I_c, c.A}) {
            os << ',' << format_number(v);
        }
        os << '\n';
    }
    return os.str();
}

std::string mncms_to_csv(const std::vector<MncmsBin> &bins) {
    std::ostringstream os;
    os << "bin_lower,bin_upper,present,S,D_sym,rho11,rho22,rho33,rho44,rho14,rho23\n";
    for (const MncmsBin &b : bins) {
        os << format_number(b.lower) << ',' << format_number(b.upper) << ',' << (b.present ? 1 : 0);
        if (b.present) {
            const XStateParams &x = b.argmax;
            for (double v : {b.S, b.D_sym, x.rho11, x.rho22, x.rho33, x.rho44, x.rho14.real(), x.rho23.real()}) {
                os << ',' << format_number(v);
            }
        } else {
            os << ",,,,,,,,";
        }
        os << '\n';
    }
    return os.str();
}

std::string amid_bounds_to_csv(const std::vector<AmidBin> &bins) {
    std::ostringstream os;
    os << "bin_lower,bin_upper,present,min_A,D_at_min,argmin_family,max_A,D_at_max,argmax_eps,argmax_p\n";
    for (const AmidBin &b : bins) {
        os << format_number(b.lower) << ',' << format_number(b.upper) << ',' << (b.present ? 1 : 0);
        if (b.present) {
            os << ',' << format_number(b.min_A) << ',' << format_number(b.D_at_min) << ',' << b.argmin_family << ','
               << format_number(b.max_A) << ',' << format_number(b.D_at_max);
            for (const auto &p : b.argmax) {
                os << ',' << format_number(p.second);
            }
            for (std::size_t k = b.argmax.size(); k < 2; ++k) {
                os << ',';
            }
        } else {
            os << ",,,,,,,";
        }
        os << '\n';
    }
    return os.str();
}

std::string spread_to_json(std::string_view family, const std::vector<std::pair<std::string, double>> &params,
                           const std::vector<double> &sigmas, std::uint64_t seed, const Spread &spread) {
    ordered_json j;
    j["family"] = std::string(family);
    ordered_json p = ordered_json::object();
    ordered_json s = ordered_json::object();
    for (std::size_t i = 0; i < params.size(); ++i) {
        p[params[i].first] = round12(params[i].second);
        s[params[i].first] = round12(i < sigmas.size() ? sigmas[i] : 0.0);
    }
    j["params"] = std::move(p);
    j["sigmas"] = std::move(s);
    j["seed"] = seed;
    j["samples"] = spread.samples;
    auto ms = [](const MeanStd &m) {
        ordered_json o;
        o["mean"] = round12(m.mean);
        o["std"] = round12(m.stddev);
        return o;
    };
    j["S"] = ms(spread.S);
    j["D_sym"] = ms(spread.D_sym);
    j["A"] = ms(spread.A);
    return dump(j);
}

std::string source_config_to_json(const SourceConfig &c) {
    ordered_json j;
    j["recipe"] = std::string(recipe_name(c.recipe));
    j["eps"] = round12(c.eps);
    j["p"] = round12(c.p);
    j["path_phase_gamma"] = round12(c.path_phase_gamma);
    j["quartz_C"] = round12(c.quartz_C);
    return dump(j);
}

SourceConfig source_config_from_json(std::string_view text) {
    const json j = parse_json(text, "source config");
    if (!j.is_object() || !j.contains("recipe") || !j.at("recipe").is_string()) {
        throw InvalidInput("source config: missing string field 'recipe'");
    }
    SourceConfig c;
    c.recipe = parse_recipe(j.at("recipe").get<std::string>());
    c.eps = j.contains("eps") ? get_number(j, "eps", "source config") : c.eps;
    c.p = j.contains("p") ? get_number(j, "p", "source config") : c.p;
    c.path_phase_gamma =
        j.contains("path_phase_gamma") ? get_number(j, "path_phase_gamma", "source config") : c.path_phase_gamma;
    c.quartz_C = j.contains("quartz_C") ? get_number(j, "quartz_C", "source config") : c.quartz_C;
    validate(c);
    return c;
}

std::string dataset_to_json(const TomographyDataset &data) {
    ordered_json j;
    j["n_nominal"] = data.n_nominal;
    j["seed"] = data.seed;
    ordered_json counts = ordered_json::object();
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        const double n = data.counts[s];
        if (n < 0.0 || n != std::floor(n) || n > 9.0e15) {
            throw InvalidInput("dataset counts must be non-negative integers to serialize");
        }
        counts[setting_label(s)] = static_cast<std::uint64_t>(n);
    }
    j["counts"] = std::move(counts);
    return dump(j);
}

TomographyDataset dataset_from_json(std::string_view text) {
    const json j = parse_json(text, "dataset");
    if (!j.is_object()) {
        throw InvalidInput("dataset JSON must be an object");
    }
    TomographyDataset d;
    d.n_nominal = get_unsigned(j, "n_nominal", "dataset");
    d.seed = get_unsigned(j, "seed", "dataset");
    if (!j.contains("counts") || !j.at("counts").is_object()) {
        throw InvalidInput("dataset: missing 'counts' object");
    }
    std::array<bool, kNumSettings> seen{};
    for (const auto &[key, value] : j.at("counts").items()) {
        const std::size_t s = setting_index(key);
        if (!value.is_number_unsigned()) {
            throw InvalidInput("dataset: count for " + key + " must be a non-negative integer");
        }
        d.counts[s] = static_cast<double>(value.get<std::uint64_t>());
        seen[s] = true;
    }
    for (std::size_t s = 0; s < kNumSettings; ++s) {
        if (!seen[s]) {
            throw InvalidInput("dataset: missing setting " + setting_label(s) + " (all 36 are required)");
        }
    }
    return d;
}

std::string reconstruction_to_json(const ComplexMatrix &rho_linear, const MleResult &mle,
                                   std::optional<double> fidelity_vs_reference) {
    ordered_json j;
    j["rho_linear"] = json::parse(matrix_to_json(rho_linear));
    j["rho_physical"] = json::parse(state_to_json(mle.rho));
    j["log_likelihood"] = round12(mle.log_likelihood);
    j["initial_log_likelihood"] = round12(mle.initial_log_likelihood);
    if (fidelity_vs_reference) {
        j["fidelity_vs_reference"] = round12(*fidelity_vs_reference);
    }
    j["evaluations"] = mle.evaluations;
    j["converged"] = mle.converged;
    return dump(j);
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "' for reading");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string &path, std::string_view text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InvalidInput("cannot open '" + path + "' for writing");
        }
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) {
            throw ComputationError("write to '" + tmp + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ComputationError("cannot move output into '" + path + "'");
    }
}

}  // namespace qcorr
