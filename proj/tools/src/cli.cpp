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

#include "qcorr_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/frontier.hpp"
#include "qcorr/io.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/source.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tomography.hpp"

namespace qcorr::cli {

namespace {

/// Bad flags or flag values; reported with exit code 2 before any output is written.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Fn>
auto as_usage(Fn &&fn) {
    try {
        return fn();
    } catch (const InvalidInput &e) {
        throw UsageError(e.what());
    }
}

void check_writable(const std::string &path) {
    if (path.empty()) {
        return;
    }
    namespace fs = std::filesystem;
    const fs::path p(path);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
        throw UsageError("--out '" + path + "' is a directory");
    }
    const fs::path parent = p.has_parent_path() ? p.parent_path() : fs::path(".");
    if (!fs::is_directory(parent, ec)) {
        throw UsageError("--out directory '" + parent.string() + "' does not exist");
    }
    const std::string probe = path + ".tmp";
    {
        std::ofstream f(probe, std::ios::binary | std::ios::app);
        if (!f) {
            throw UsageError("--out '" + path + "' is not writable");
        }
    }
    fs::remove(probe, ec);
}

void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

// Family parameters given on the command line, keyed by parameter name.
struct ParamFlags {
    std::map<std::string, std::optional<double>> values{{"eps", {}}, {"p", {}}, {"a", {}}, {"r", {}}, {"q", {}}};

    void attach(CLI::App *app, const std::string &suffix_help) {
        for (auto &[name, slot] : values) {
            app->add_option("--" + name, slot, name + " parameter" + suffix_help);
        }
    }

    /// Values for every parameter of `f` in constructor order; rejects missing or foreign flags.
    std::vector<double> collect(Family f, const std::string &optional_name = {}) const {
        const auto names = family_parameters(f);
        for (const auto &[name, slot] : values) {
            if (slot && std::find(names.begin(), names.end(), name) == names.end()) {
                throw UsageError("--" + name + " does not apply to family " + std::string(family_name(f)));
            }
        }
        std::vector<double> out;
        for (const auto &name : names) {
            const auto &slot = values.at(name);
            if (name == optional_name) {
                out.push_back(slot.value_or(0.0));
                continue;
            }
            if (!slot) {
                throw UsageError("family " + std::string(family_name(f)) + " requires --" + name);
            }
            out.push_back(*slot);
        }
        return out;
    }
};

std::vector<std::pair<std::string, double>> named(Family f, const std::vector<double> &values) {
    const auto names = family_parameters(f);
    std::vector<std::pair<std::string, double>> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace_back(names[i], values[i]);
    }
    return out;
}

std::pair<double, double> default_range(Family f, const std::string &name, const std::vector<double> &values) {
    if (name == "a") {
        return {0.0, 1.0 / 3.0};
    }
    if (name == "q") {
        return {0.0, 0.5};
    }
    if (name == "r" && f == Family::MemsRee) {
        return {0.0, 1.0 - values[0]};
    }
    return {0.0, 1.0};
}

std::size_t jobs_from(int flag) {
    if (flag < 0) {
        throw UsageError("--jobs must be positive");
    }
    return resolve_jobs(static_cast<std::size_t>(flag));
}

struct Options {
    std::string out;
    int jobs = 0;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";

    // measure
    std::string state_path;
    bool discord_only = false;

    // family / sweep / spread
    std::string family;
    ParamFlags params;
    std::string vary;
    std::optional<double> from;
    std::optional<double> to;
    std::size_t points = 21;
    std::string plane;
    std::size_t bins = 40;
    std::size_t samples = 50;

    // scatter / spread
    std::optional<std::size_t> count;
    std::map<std::string, std::optional<double>> sigmas{
        {"eps", {}}, {"p", {}}, {"a", {}}, {"r", {}}, {"q", {}}};
    std::optional<int> table_point;

    // source
    std::string config_path;
    std::optional<std::string> recipe;
    std::optional<double> gamma;
    std::optional<double> quartz_C;
    bool print_config = false;

    // tomography
    std::optional<std::uint64_t> counts_per_setting;
    std::string data_path;
    std::string reference_path;
    std::size_t max_evals = 100000;
};

std::uint64_t require_seed(const Options &o) {
    if (!o.seed) {
        throw UsageError("--seed is required for this command");
    }
    return *o.seed;
}

int cmd_measure(const Options &o, std::ostream &out) {
    check_writable(o.out);
    const DensityMatrix rho = state_from_json(read_text_file(o.state_path));
    const CorrelationReport report = o.discord_only ? discord_report(rho) : correlation_report(rho);
    emit(o.out, report_to_json(report), out);
    return kExitOk;
}

int cmd_family(const Options &o, std::ostream &out) {
    const Family f = as_usage([&] { return parse_family(o.family); });
    const auto values = o.params.collect(f);
    const DensityMatrix rho = as_usage([&] { return make_family_state(f, values); });
    check_writable(o.out);
    emit(o.out, state_to_json(rho), out);
    return kExitOk;
}

int cmd_sweep(const Options &o, std::ostream &out) {
    const std::size_t jobs = jobs_from(o.jobs);
    if (o.format != "csv" && o.format != "json") {
        throw UsageError("--format must be csv or json");
    }
    if (!o.plane.empty()) {
        if (!o.family.empty()) {
            throw UsageError("--plane and --family are mutually exclusive");
        }
        if (o.format != "csv") {
            throw UsageError("--plane output is CSV only");
        }
        if (o.bins == 0 || o.samples == 0) {
            throw UsageError("--bins and --samples must be positive");
        }
        EnvelopeConfig cfg;
        cfg.bin_count = o.bins;
        cfg.samples_per_bin = o.samples;
        cfg.jobs = jobs;
        if (o.plane == "mncms") {
            cfg.seed = require_seed(o);
            check_writable(o.out);
            emit(o.out, mncms_to_csv(mncms_envelope(cfg)), out);
        } else if (o.plane == "amid") {
            cfg.bin_axis = BinAxis::Discord;
            check_writable(o.out);
            emit(o.out, amid_bounds_to_csv(amid_plane_bounds(cfg)), out);
        } else {
            throw UsageError("--plane must be mncms or amid");
        }
        return kExitOk;
    }
    if (o.family.empty()) {
        throw UsageError("sweep needs --family or --plane");
    }
    const Family f = as_usage([&] { return parse_family(o.family); });
    const auto names = family_parameters(f);
    const std::string vary = o.vary.empty() ? names.front() : o.vary;
    const auto it = std::find(names.begin(), names.end(), vary);
    if (it == names.end()) {
        throw UsageError("--vary " + vary + " is not a parameter of family " + std::string(family_name(f)));
    }
    const std::size_t k = static_cast<std::size_t>(it - names.begin());
    const auto base = o.params.collect(f, vary);
    const auto [lo, hi] = default_range(f, vary, base);
    if (o.points == 0) {
        throw UsageError("--points must be positive");
    }
    std::vector<std::vector<double>> grid;
    for (double v : linspace(o.from.value_or(lo), o.to.value_or(hi), o.points)) {
        std::vector<double> point = base;
        point[k] = v;
        as_usage([&] { return make_family_state(f, point); });
        grid.push_back(std::move(point));
    }
    check_writable(o.out);
    const auto records = sweep_family(f, grid, jobs);
    emit(o.out, o.format == "csv" ? records_to_csv(records) : records_to_json(records), out);
    return kExitOk;
}

int cmd_scatter(const Options &o, std::ostream &out) {
    const std::size_t jobs = jobs_from(o.jobs);
    const std::uint64_t seed = require_seed(o);
    if (!o.count || *o.count == 0) {
        throw UsageError("--n must be a positive sample count");
    }
    if (o.format != "csv" && o.format != "json") {
        throw UsageError("--format must be csv or json");
    }
    check_writable(o.out);
    const auto records = scatter_random(*o.count, seed, jobs);
    emit(o.out, o.format == "csv" ? records_to_csv(records) : records_to_json(records), out);
    return kExitOk;
}

int cmd_source(const Options &o, std::ostream &out) {
    SourceConfig cfg;
    const bool any_flag = o.recipe || o.params.values.at("eps") || o.params.values.at("p") || o.gamma || o.quartz_C;
    if (!o.config_path.empty()) {
        if (any_flag) {
            throw UsageError("--config cannot be combined with --recipe, --eps, --p, --gamma or --C");
        }
        cfg = source_config_from_json(read_text_file(o.config_path));
    } else {
        if (!o.recipe) {
            throw UsageError("source needs --recipe or --config");
        }
        as_usage([&] {
            cfg.recipe = parse_recipe(*o.recipe);
            cfg.eps = o.params.values.at("eps").value_or(cfg.eps);
            cfg.p = o.params.values.at("p").value_or(cfg.p);
            cfg.path_phase_gamma = o.gamma.value_or(0.0);
            cfg.quartz_C = o.quartz_C.value_or(0.0);
            validate(cfg);
            return 0;
        });
    }
    check_writable(o.out);
    emit(o.out, o.print_config ? source_config_to_json(cfg) : state_to_json(engineer(cfg)), out);
    return kExitOk;
}

int cmd_tomo_sim(const Options &o, std::ostream &out) {
    const std::uint64_t seed = require_seed(o);
    if (!o.counts_per_setting || *o.counts_per_setting == 0) {
        throw UsageError("--n must be a positive mean count per setting");
    }
    check_writable(o.out);
    const DensityMatrix rho = state_from_json(read_text_file(o.state_path));
    emit(o.out, dataset_to_json(simulate_counts(rho, *o.counts_per_setting, seed)), out);
    return kExitOk;
}

int cmd_tomo_fit(const Options &o, std::ostream &out) {
    if (o.max_evals == 0) {
        throw UsageError("--max-evals must be positive");
    }
    check_writable(o.out);
    const TomographyDataset data = dataset_from_json(read_text_file(o.data_path));
    std::optional<DensityMatrix> reference;
    if (!o.reference_path.empty()) {
        reference = state_from_json(read_text_file(o.reference_path));
    }
    MleOptions mo;
    mo.max_evaluations = o.max_evals;
    const ComplexMatrix linear = linear_inversion(data);
    const MleResult mle = mle_reconstruct(data, mo);
    std::optional<double> f;
    if (reference) {
        f = fidelity(mle.rho, *reference);
    }
    emit(o.out, reconstruction_to_json(linear, mle, f), out);
    return kExitOk;
}

int cmd_spread(const Options &o, std::ostream &out) {
    const std::size_t jobs = jobs_from(o.jobs);
    const std::uint64_t seed = require_seed(o);
    const std::size_t n = o.count.value_or(200);
    if (n < 2) {
        throw UsageError("--n must be at least 2");
    }
    Family f = Family::RhoUp;
    std::vector<double> values;
    std::vector<double> sigmas;
    if (o.table_point) {
        const auto &table = rho_up_table_points();
        if (!o.family.empty() && o.family != "rho_up") {
            throw UsageError("--table-point selects a rho_up state; drop --family or use rho_up");
        }
        if (*o.table_point < 1 || static_cast<std::size_t>(*o.table_point) > table.size()) {
            throw UsageError("--table-point must lie in 1.." + std::to_string(table.size()));
        }
        const TablePoint &t = table[static_cast<std::size_t>(*o.table_point - 1)];
        values = {t.eps, t.p};
        sigmas = {t.eps_sigma, t.p_sigma};
    } else {
        if (o.family.empty()) {
            throw UsageError("spread needs --family or --table-point");
        }
        f = as_usage([&] { return parse_family(o.family); });
        values = o.params.collect(f);
        for (const auto &name : family_parameters(f)) {
            sigmas.push_back(o.sigmas.at(name).value_or(0.0));
        }
    }
    for (double s : sigmas) {
        if (!(s >= 0.0)) {
            throw UsageError("sigmas must be non-negative");
        }
    }
    as_usage([&] { return make_family_state(f, values); });
    check_writable(o.out);
    const Spread spread = monte_carlo_spread(f, values, sigmas, n, seed, jobs);
    emit(o.out, spread_to_json(family_name(f), named(f, values), sigmas, seed, spread), out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Quantum correlation measures, frontier sweeps, source simulation and tomography for two-qubit states",
                 "qcorr"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    auto add_out = [&](CLI::App *sub) { sub->add_option("--out", o.out, "Output file (default: stdout)"); };
    auto add_jobs = [&](CLI::App *sub) {
        sub->add_option("--jobs", o.jobs, "Worker threads (default: QCORR_JOBS or 1)");
    };
    auto add_seed = [&](CLI::App *sub, const char *help = "Random seed (required)") {
        sub->add_option("--seed", o.seed, help);
    };

    CLI::App *measure = app.add_subcommand("measure", "Correlation report of a state file");
    measure->add_option("--state", o.state_path, "State JSON file")->required();
    measure->add_flag("--discord-only", o.discord_only, "Skip the bi-local (I_c, A) search");
    add_out(measure);

    CLI::App *family = app.add_subcommand("family", "Write a family state as JSON");
    family->add_option("name", o.family, "werner | mems_ree | rho_down | rho_up | bell_phi")->required();
    o.params.attach(family, "");
    add_out(family);

    CLI::App *sweep = app.add_subcommand("sweep", "Sweep a family parameter or trace a frontier plane");
    sweep->add_option("--family", o.family, "Family to sweep");
    sweep->add_option("--vary", o.vary, "Parameter to sweep (default: first parameter)");
    sweep->add_option("--from", o.from, "Sweep start (default: domain lower bound)");
    sweep->add_option("--to", o.to, "Sweep end (default: domain upper bound)");
    sweep->add_option("--points", o.points, "Grid points (default 21)");
    sweep->add_option("--plane", o.plane, "mncms (D_sym vs S envelope) or amid (A vs D_sym bounds)");
    sweep->add_option("--bins", o.bins, "Bins for --plane (default 40)");
    sweep->add_option("--samples", o.samples, "Random X-state seeds per bin for --plane mncms (default 50)");
    sweep->add_option("--format", o.format, "csv | json (default csv)");
    o.params.attach(sweep, " (fixed value)");
    add_seed(sweep, "Random seed (required with --plane mncms)");
    add_jobs(sweep);
    add_out(sweep);

    CLI::App *scatter = app.add_subcommand("scatter", "Reports for Hilbert-Schmidt random states");
    scatter->add_option("--n", o.count, "Number of states")->required();
    scatter->add_option("--format", o.format, "csv | json (default csv)");
    add_seed(scatter);
    add_jobs(scatter);
    add_out(scatter);

    CLI::App *source = app.add_subcommand("source", "Simulate the photonic source and write the state");
    source->add_option("--config", o.config_path, "Source config JSON (instead of flags)");
    source->add_option("--recipe", o.recipe, "up | down | werner | mems_ree");
    source->add_option("--eps", o.params.values["eps"], "Weight of the |l r> branch");
    source->add_option("--p", o.params.values["p"], "Unbalancing of phi+(p) (default 0.5)");
    source->add_option("--gamma", o.gamma, "Path phase of the |l r> branch (default 0)");
    source->add_option("--C", o.quartz_C, "Quartz dephasing strength (default 0)");
    source->add_flag("--print-config", o.print_config, "Write the config JSON instead of the state");
    add_out(source);

    CLI::App *tomo_sim = app.add_subcommand("tomo-sim", "Simulate 36-setting tomography counts");
    tomo_sim->add_option("--state", o.state_path, "State JSON file")->required();
    tomo_sim->add_option("--n", o.counts_per_setting, "Mean counts per setting")->required();
    add_seed(tomo_sim);
    add_out(tomo_sim);

    CLI::App *tomo_fit = app.add_subcommand("tomo-fit", "Reconstruct a state from tomography counts");
    tomo_fit->add_option("--data", o.data_path, "Dataset JSON file")->required();
    tomo_fit->add_option("--reference", o.reference_path, "Reference state JSON for the fidelity");
    tomo_fit->add_option("--max-evals", o.max_evals, "Likelihood evaluation budget (default 100000)");
    add_out(tomo_fit);

    CLI::App *spread = app.add_subcommand("spread", "Monte-Carlo spread of S, D_sym and A under parameter noise");
    spread->add_option("--family", o.family, "Family of the nominal state");
    spread->add_option("--table-point", o.table_point, "Use experimental rho_up point 1..6 with its uncertainties");
    o.params.attach(spread, " (nominal value)");
    for (auto &[name, slot] : o.sigmas) {
        spread->add_option("--sigma-" + name, slot, "1-sigma of " + name + " (default 0)");
    }
    spread->add_option("--n", o.count, "Samples (default 200)");
    add_seed(spread);
    add_jobs(spread);
    add_out(spread);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (measure->parsed()) {
            return cmd_measure(o, out);
        }
        if (family->parsed()) {
            return cmd_family(o, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(o, out);
        }
        if (scatter->parsed()) {
            return cmd_scatter(o, out);
        }
        if (source->parsed()) {
            return cmd_source(o, out);
        }
        if (tomo_sim->parsed()) {
            return cmd_tomo_sim(o, out);
        }
        if (tomo_fit->parsed()) {
            return cmd_tomo_fit(o, out);
        }
        if (spread->parsed()) {
            return cmd_spread(o, out);
        }
        throw UsageError("no subcommand given");
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}

}  // namespace qcorr::cli
