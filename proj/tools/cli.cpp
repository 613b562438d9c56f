// Copyright 2026 The purify Authors
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <stdexcept>

#include "purify/basin.hpp"
#include "purify/complexdyn.hpp"
#include "purify/fano.hpp"
#include "purify/random_states.hpp"

namespace purify::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string &path, const std::string &bytes, std::ostream &out) {
    if (path.empty() || path == "-") {
        out << bytes;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

json fano_json(const DensityMatrix2Q &rho) {
    FanoVector v = to_fano(rho);
    return json(std::vector<double>(v.r.begin(), v.r.end()));
}

json amplitudes_json(const PureState2Q &psi) {
    std::vector<double> flat;
    for (int i = 0; i < 4; i++) {
        flat.push_back(psi[i].real());
        flat.push_back(psi[i].imag());
    }
    return flat;
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

// ---------------------------------------------------------------- iterate

struct IterateOptions {
    std::string zeta = "0";
    double lambda = 1.0;
    int steps = 10;
    std::string out_path;
};

int cmd_iterate(const IterateOptions &opt, std::ostream &out) {
    RiemannPoint zeta = parse_riemann_point(opt.zeta);
    if (opt.steps < 0) {
        throw std::invalid_argument("--steps must be non-negative");
    }
    json records = json::array();
    LocalUnitary u;
    if (opt.lambda == 1.0) {
        for (const auto &r : run_trajectory(state_from_zeta(zeta), u, opt.steps)) {
            records.push_back({{"step", r.step},
                               {"representation", "amplitudes"},
                               {"state", amplitudes_json(r.state)},
                               {"entropy", r.entropy},
                               {"purity", r.purity},
                               {"success_probability", r.success_probability},
                               {"cumulative_yield", r.cumulative_yield}});
        }
    } else {
        for (const auto &r : run_trajectory(werner_mix(zeta, opt.lambda), u, opt.steps)) {
            records.push_back({{"step", r.step},
                               {"representation", "fano"},
                               {"state", fano_json(r.state)},
                               {"entropy", r.entropy},
                               {"purity", r.purity},
                               {"success_probability", r.success_probability},
                               {"cumulative_yield", r.cumulative_yield}});
        }
    }
    write_output(opt.out_path, records.dump(2) + "\n", out);
    return kOk;
}

// ---------------------------------------------------------------- basin

struct BasinCliOptions {
    std::vector<double> viewport = {-2.0, 2.0, -2.0, 2.0};
    int resolution = 512;
    int width = 0;
    int height = 0;
    double lambda = 1.0;
    int max_iters = 0;
    double tol = 1e-4;
    std::string ppm_path;
    std::string csv_path;
    int threads = 0;
    bool supersample = false;
    bool progress = false;
};

int cmd_basin(const BasinCliOptions &opt, std::ostream &out, std::ostream &err) {
    if (opt.viewport.size() != 4) {
        throw std::invalid_argument("--viewport takes re_min re_max im_min im_max");
    }
    GridSpec spec;
    spec.re_min = opt.viewport[0];
    spec.re_max = opt.viewport[1];
    spec.im_min = opt.viewport[2];
    spec.im_max = opt.viewport[3];
    spec.width = opt.width > 0 ? opt.width : opt.resolution;
    spec.height = opt.height > 0 ? opt.height : opt.resolution;
    spec.lambda = opt.lambda;
    spec.max_iters = opt.max_iters > 0 ? opt.max_iters : (opt.lambda < 1.0 ? 400 : 200);
    spec.tol = opt.tol;
    spec.supersample = opt.supersample;
    spec.validate();

    BasinOptions run;
    run.threads = opt.threads;
    std::mutex progress_mutex;
    int last_percent = -1;
    if (opt.progress) {
        run.on_row_done = [&](int rows) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            int percent = static_cast<int>(100LL * rows / spec.height);
            if (percent > last_percent) {
                last_percent = percent;
                err << "\r" << percent << "%" << (percent == 100 ? "\n" : "") << std::flush;
            }
        };
    }
    BasinGrid grid = compute_basin(spec, run);
    if (!opt.ppm_path.empty()) {
        write_output(opt.ppm_path, render_ppm(grid), out);
    }
    if (!opt.csv_path.empty()) {
        write_output(opt.csv_path, render_csv(grid), out);
    }
    auto c = grid.counts();
    out << "cells=" << grid.labels.size() << " bell=" << c[0] << " separable=" << c[1] << " mixed=" << c[2]
        << " unresolved=" << c[3] << "\n";
    return kOk;
}

// ---------------------------------------------------------------- cycles

struct CyclesCliOptions {
    std::vector<double> lambdas;
    int max_period = 4;
    int seeds = 64;
    int seed = 0;
    bool include_unstable = false;
    int threads = 0;
    std::string out_path;
};

int cmd_cycles(const CyclesCliOptions &opt, std::ostream &out) {
    MixedCycleSearchOptions search;
    if (!opt.lambdas.empty()) {
        search.lambdas = opt.lambdas;
    }
    search.max_period = opt.max_period;
    search.seeds_per_lambda = opt.seeds;
    search.seed_offset = opt.seed;
    search.include_unstable = opt.include_unstable;
    search.threads = opt.threads;
    MixedCycleSearchResult result = find_mixed_cycles(search);

    json cycles = json::array();
    for (const StabilityReport &r : result.cycles) {
        json states = json::array();
        json purities = json::array();
        for (const auto &m : r.cycle) {
            states.push_back(fano_json(m));
            purities.push_back(purity(m));
        }
        json entry = {{"period", r.period},
                      {"kind", to_string(r.kind)},
                      {"stable", r.stable},
                      {"eigenvalue_magnitudes", r.eigenvalue_magnitudes},
                      {"closure", r.closure},
                      {"purities", purities},
                      {"first_seed", r.first_seed},
                      {"seed_hits", r.seed_hits},
                      {"states_fano", states}};
        if (r.period == 2 && r.kind == AttractorKind::MixedCycle) {
            PartnerDiagnostics d = partner_diagnostics(r);
            entry["partner_diagnostics"] = {{"distance_to_rho1", d.distance_to_rho1},
                                            {"partner_fano", fano_json(d.partner)},
                                            {"distance_to_incoherent_rho2", d.distance_to_incoherent_rho2},
                                            {"diagonal_deviation", d.diagonal_deviation},
                                            {"cross_block_deviation", d.cross_block_deviation},
                                            {"coherence_00_11", complex_json(d.coherence_00_11)}};
        }
        cycles.push_back(entry);
    }
    json unresolved = json::array();
    for (const SeedFailure &f : result.unresolved) {
        unresolved.push_back({{"seed", f.seed}, {"lambda", f.lambda}, {"zeta", f.zeta.str()}});
    }
    json doc = {{"seeds", result.seeds}, {"cycles", cycles}, {"unresolved_seeds", unresolved}};
    write_output(opt.out_path, doc.dump(2) + "\n", out);
    return kOk;
}

// ---------------------------------------------------------------- constants

int cmd_constants(const std::string &out_path, std::ostream &out) {
    Constants c = compute_constants();
    double a = c.zeta_A;
    double cubic = a * a * a + a * a + a - 1.0;
    double f_b = eval_f(RiemannPoint(c.zeta_B)).value().real();
    double r = c.zeta_C;
    double fixed_real = fixed_points_f().front().points.front().value().real();
    json doc = {{"a", c.a},
                {"zeta_A", c.zeta_A},
                {"zeta_B", c.zeta_B},
                {"zeta_C", c.zeta_C},
                {"residuals",
                 {{"zeta_A_cubic", cubic},
                  {"f_zeta_B_plus_zeta_A", f_b + c.zeta_A},
                  {"zeta_A_times_zeta_B_minus_1", c.zeta_A * c.zeta_B - 1.0},
                  {"zeta_C_quartic", r * r * r * r + 2.0 * r - 1.0}}},
                {"cross_checks",
                 {{"zeta_A_newton", fixed_real},
                  {"f_prime_zeta_A", derivative_f(RiemannPoint(c.zeta_A)).real()}}}};
    write_output(out_path, doc.dump(2) + "\n", out);
    return kOk;
}

// ---------------------------------------------------------------- oracle-check

struct OracleCliOptions {
    int samples = 1000;
    std::uint64_t seed = 1;
    std::string kind = "all";
};

int cmd_oracle_check(const OracleCliOptions &opt, std::ostream &out) {
    if (opt.samples < 1) {
        throw std::invalid_argument("--samples must be at least 1");
    }
    std::mt19937_64 rng(opt.seed);
    std::vector<std::string> kinds;
    if (opt.kind == "all") {
        kinds = {"pure", "mixed", "adversarial"};
    } else {
        kinds = {opt.kind};
    }
    bool ok = true;
    for (const std::string &kind : kinds) {
        double worst_entry = 0.0;
        double worst_p = 0.0;
        bool finite = true;
        for (int s = 0; s < opt.samples; s++) {
            DensityMatrix2Q rho = kind == "pure"    ? density_from_state(random_pure_state(rng))
                                  : kind == "mixed" ? random_mixed_state(rng)
                                                    : random_near_diagonal_state(rng);
            auto formula = selection_step(rho);
            auto oracle = circuit_oracle(rho);
            finite = finite && formula.state.matrix().allFinite() && oracle.state.matrix().allFinite();
            worst_entry = std::max(worst_entry, (formula.state.matrix() - oracle.state.matrix()).cwiseAbs().maxCoeff());
            worst_p = std::max(worst_p, std::abs(formula.success_probability - oracle.success_probability));
        }
        bool pass = finite && worst_entry < 1e-10 && worst_p < 1e-12;
        ok = ok && pass;
        out << kind << ": samples=" << opt.samples << " max_entry_deviation=" << worst_entry
            << " max_probability_deviation=" << worst_p << " " << (pass ? "PASS" : "FAIL") << "\n";
    }
    return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- probe

struct ProbeCliOptions {
    std::string center = "0";
    double radius = 1e-3;
    double lambda = 1.0;
    int samples = 256;
    std::uint64_t seed = 1;
    int max_iters = 0;
    double tol = 1e-4;
    std::string out_path;
};

int cmd_probe(const ProbeCliOptions &opt, std::ostream &out) {
    RiemannPoint center = parse_riemann_point(opt.center);
    int iters = opt.max_iters > 0 ? opt.max_iters : (opt.lambda < 1.0 ? 400 : 200);
    SensitivityResult r = sensitivity_probe(center, opt.radius, opt.lambda, opt.samples, opt.seed, iters, opt.tol);
    json doc = {{"center", center.str()},
                {"radius", opt.radius},
                {"lambda", opt.lambda},
                {"samples", opt.samples},
                {"distinct_labels", r.distinct_labels},
                {"counts",
                 {{"bell", r.counts[0]}, {"separable", r.counts[1]}, {"mixed", r.counts[2]}, {"unresolved", r.counts[3]}}}};
    if (r.distinct_labels > 1) {
        doc["min_separation_with_distinct_labels"] = r.min_separation_with_distinct_labels;
    } else {
        doc["min_separation_with_distinct_labels"] = nullptr;
    }
    write_output(opt.out_path, doc.dump(2) + "\n", out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Iterated two-qubit purification dynamics: trajectories, basins, cycles"};
    app.name(args.empty() ? "purify" : args.front());
    app.require_subcommand(1);

    IterateOptions iterate_opt;
    auto *iterate = app.add_subcommand("iterate", "Run the protocol from rho(zeta, lambda) and dump a JSON trajectory");
    iterate->add_option("--zeta", iterate_opt.zeta, "Initial parameter, e.g. 0.5+0.1i or inf")->required();
    iterate->add_option("--lambda", iterate_opt.lambda, "Mixing parameter in [0, 1]")->check(CLI::Range(0.0, 1.0));
    iterate->add_option("--steps", iterate_opt.steps, "Number of protocol steps")->check(CLI::NonNegativeNumber);
    iterate->add_option("--out", iterate_opt.out_path, "Output path (default stdout)");

    BasinCliOptions basin_opt;
    auto *basin = app.add_subcommand("basin", "Render a basin-of-attraction chart over the zeta-plane");
    basin->add_option("--viewport", basin_opt.viewport, "re_min re_max im_min im_max")->expected(4);
    basin->add_option("--resolution", basin_opt.resolution, "Square grid size")->check(CLI::PositiveNumber);
    basin->add_option("--width", basin_opt.width, "Grid width (overrides --resolution)")->check(CLI::PositiveNumber);
    basin->add_option("--height", basin_opt.height, "Grid height (overrides --resolution)")->check(CLI::PositiveNumber);
    basin->add_option("--lambda", basin_opt.lambda, "Mixing parameter in [0, 1]")->check(CLI::Range(0.0, 1.0));
    basin->add_option("--max-iters", basin_opt.max_iters, "Iteration cap (default 200 pure, 400 mixed)")
        ->check(CLI::PositiveNumber);
    basin->add_option("--tol", basin_opt.tol, "Trace-distance convergence tolerance")->check(CLI::PositiveNumber);
    basin->add_option("--ppm", basin_opt.ppm_path, "PPM output path");
    basin->add_option("--csv", basin_opt.csv_path, "CSV output path");
    basin->add_option("--threads", basin_opt.threads, "Worker count (default: all cores)")
        ->check(CLI::NonNegativeNumber);
    basin->add_flag("--supersample", basin_opt.supersample, "2x2 majority vote per cell");
    basin->add_flag("--progress", basin_opt.progress, "Print a percentage counter to stderr");

    CyclesCliOptions cycles_opt;
    auto *cycles = app.add_subcommand("cycles", "Search for stable cycles from Werner-family seeds");
    cycles->add_option("--lambda", cycles_opt.lambdas, "Seed mixing parameter(s); default 0.1..1.0")
        ->check(CLI::Range(0.0, 1.0));
    cycles->add_option("--max-period", cycles_opt.max_period, "Longest period to detect")->check(CLI::Range(1, 16));
    cycles->add_option("--seeds", cycles_opt.seeds, "zeta seeds per lambda")->check(CLI::PositiveNumber);
    cycles->add_option("--seed", cycles_opt.seed, "Offset into the quasi-random seed sequence")
        ->check(CLI::NonNegativeNumber);
    cycles->add_flag("--include-unstable", cycles_opt.include_unstable,
                     "Report unstable cycles too and seed the fixed point 1/4");
    cycles->add_option("--threads", cycles_opt.threads, "Worker count")->check(CLI::NonNegativeNumber);
    cycles->add_option("--out", cycles_opt.out_path, "Output path (default stdout)");

    std::string constants_out;
    auto *constants = app.add_subcommand("constants", "Print the analytic basin constants as JSON");
    constants->add_option("--out", constants_out, "Output path (default stdout)");

    OracleCliOptions oracle_opt;
    auto *oracle = app.add_subcommand("oracle-check", "Compare the selection step with the circuit simulation");
    oracle->add_option("--samples", oracle_opt.samples, "Random states per kind")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", oracle_opt.seed, "RNG seed");
    oracle->add_option("--kind", oracle_opt.kind, "pure, mixed, adversarial or all")
        ->check(CLI::IsMember({"pure", "mixed", "adversarial", "all"}));

    ProbeCliOptions probe_opt;
    auto *probe = app.add_subcommand("probe", "Classify random points in a small disk");
    probe->add_option("--zeta", probe_opt.center, "Disk center")->required();
    probe->add_option("--radius", probe_opt.radius, "Disk radius")->check(CLI::PositiveNumber);
    probe->add_option("--lambda", probe_opt.lambda, "Mixing parameter in [0, 1]")->check(CLI::Range(0.0, 1.0));
    probe->add_option("--samples", probe_opt.samples, "Number of points")->check(CLI::Range(2, 100000));
    probe->add_option("--seed", probe_opt.seed, "RNG seed");
    probe->add_option("--max-iters", probe_opt.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
    probe->add_option("--tol", probe_opt.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    probe->add_option("--out", probe_opt.out_path, "Output path (default stdout)");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*iterate) {
            return cmd_iterate(iterate_opt, out);
        }
        if (*basin) {
            return cmd_basin(basin_opt, out, err);
        }
        if (*cycles) {
            return cmd_cycles(cycles_opt, out);
        }
        if (*constants) {
            return cmd_constants(constants_out, out);
        }
        if (*oracle) {
            return cmd_oracle_check(oracle_opt, out);
        }
        if (*probe) {
            return cmd_probe(probe_opt, out);
        }
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace purify::cli
