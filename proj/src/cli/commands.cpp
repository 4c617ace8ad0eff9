#include "adiaphase/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "adiaphase/analytic_spin.hpp"
#include "adiaphase/errors.hpp"
#include "adiaphase/observables.hpp"

namespace adiaphase::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string format_double(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
        : out_(file, std::ios::binary | std::ios::trunc) {
        if (!out_)
            throw Error("cannot write " + file.string());
        write_fields(header);
    }

    void row(const std::vector<double>& values) {
        std::vector<std::string> fields;
        fields.reserve(values.size());
        for (double v : values)
            fields.push_back(format_double(v));
        write_fields(fields);
    }

    void write_fields(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0)
                out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

void write_json(const std::filesystem::path& file, const ordered_json& document) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + file.string());
    out << document.dump(2) << '\n';
}

ordered_json checked(double value, double threshold) {
    ordered_json node;
    node["value"] = value;
    node["threshold"] = threshold;
    node["pass"] = value < threshold;
    return node;
}

std::vector<ObservableOp> observables_for(const RunConfig& config, Eigen::Index dimension) {
    std::vector<ObservableOp> observables = config.observables;
    if (!config.observables_given && dimension == 2)
        observables = {sigma_x_observable(), sigma_y_observable(), sigma_z_observable()};
    for (const auto& op : observables)
        if (op.dimension() != dimension)
            throw ConfigError("observable " + op.name() + " has dimension " + std::to_string(op.dimension()) +
                              ", model has " + std::to_string(dimension));
    return observables;
}

InitialDecomposition initial_decomposition(const InitialSpec& spec, const SpectralFrame& frame0) {
    const Eigen::Index d = frame0.levels();
    switch (spec.kind) {
    case InitialSpec::Kind::Amplitudes:
        if (spec.values.size() != d)
            throw ConfigError("initial.amplitudes has " + std::to_string(spec.values.size()) +
                              " entries, model dimension is " + std::to_string(d));
        return decompose_initial(StateVector(spec.values), frame0);
    case InitialSpec::Kind::Levels: {
        if (spec.values.size() > d)
            throw ConfigError("initial.levels has more entries than the model has levels");
        CVector padded = CVector::Zero(d);
        padded.head(spec.values.size()) = spec.values;
        return InitialDecomposition(padded);
    }
    case InitialSpec::Kind::Level: {
        if (static_cast<Eigen::Index>(spec.level) >= d)
            throw ConfigError("initial.level exceeds the number of levels");
        CVector unit = CVector::Zero(d);
        unit(static_cast<Eigen::Index>(spec.level)) = 1.0;
        return InitialDecomposition(unit);
    }
    }
    throw ConfigError("initial: unsupported kind");
}

struct Pipeline {
    ResolvedRun run;
    SpectralTrajectory trajectory;
    PhaseLedger ledger;
    InitialDecomposition decomposition;
};

Pipeline build_pipeline(const RunConfig& config) {
    ResolvedRun run = resolve(config);
    SpectralTrajectory trajectory = spectral_trajectory(run.family, run.grid);
    PhaseLedger ledger = build_ledger(trajectory);
    InitialDecomposition decomposition = initial_decomposition(config.initial, trajectory.frames.front());
    return {std::move(run), std::move(trajectory), std::move(ledger), std::move(decomposition)};
}

std::optional<GaugeFunction> configured_gauge(const RunConfig& config, const SpectralTrajectory& trajectory) {
    if (config.gauge.empty())
        return std::nullopt;
    if (config.gauge.size() != static_cast<std::size_t>(trajectory.levels()))
        throw ConfigError("gauge.levels has " + std::to_string(config.gauge.size()) + " entries, model has " +
                          std::to_string(trajectory.levels()) + " levels");
    return sample_gauge(config.gauge, trajectory.grid);
}

double tolerance_or(const CommandOptions& options, double configured) {
    return options.tolerance ? *options.tolerance : configured;
}

ordered_json grid_json(const TimeGrid& grid) {
    ordered_json node;
    node["T"] = grid.duration();
    node["N"] = grid.steps();
    node["h"] = grid.step();
    return node;
}

double max_of(const std::vector<double>& xs) {
    return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
}

} // namespace

std::filesystem::path output_directory(const RunConfig& config, const CommandOptions& options) {
    if (options.out_dir)
        return *options.out_dir;
    if (const char* env = std::getenv("ADIAPHASE_OUT"); env != nullptr && *env != '\0')
        return env;
    if (config.output_dir)
        return *config.output_dir;
    return ".";
}

SimulationResult simulate(const RunConfig& config) {
    Pipeline p = build_pipeline(config);
    const StateVector psi0 = reconstruct(p.decomposition, p.trajectory.frames.front());
    auto exact = exact_propagate(p.run.family, psi0, p.run.grid);
    auto adiabatic = adiabatic_series(p.decomposition, p.trajectory, p.ledger);
    auto deviation = adiabatic_deviation(exact, adiabatic);
    const double drift = max_norm_drift(exact);

    SimulationResult result{std::move(p.run),    std::move(p.trajectory), std::move(p.ledger),
                            p.decomposition,     std::move(exact),        std::move(adiabatic),
                            std::move(deviation), drift,                  std::nullopt,
                            std::nullopt,         std::nullopt};

    const auto& run = result.run;
    if (run.spin && run.precessing && run.spin->coupling > 0.0) {
        const double T = run.grid.duration();
        result.rotating_frame_error =
            (result.exact.back().amplitudes() - rotating_frame_exact(*run.precessing, *run.spin, psi0, T).amplitudes())
                .norm();
        // The closed-form basis is singular on the poles.
        const double theta = run.precessing->polar_angle;
        if (theta > 0.0 && theta < M_PI) {
            const auto reference = analytic_trajectory(*run.precessing, *run.spin, SpinGauge{}, run.grid);
            result.reference_phases =
                transport_phases(geometric_phase(result.trajectory), relative_gauge(reference, result.trajectory));
            const auto closed = analytic_phases(*run.precessing, SpinGauge{}, T);
            result.phase_error = std::max(std::abs(result.reference_phases->at(0).back() - closed.lower),
                                          std::abs(result.reference_phases->at(1).back() - closed.upper));
        }
    }
    return result;
}

int cmd_simulate(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
    const auto started = std::chrono::steady_clock::now();
    const SimulationResult result = simulate(config);
    const auto dir = output_directory(config, options);
    std::filesystem::create_directories(dir);

    const auto& grid = result.run.grid;
    const auto levels = static_cast<std::size_t>(result.trajectory.levels());
    const auto dimension = result.trajectory.dimension();
    const auto observables = observables_for(config, dimension);
    const auto gauge = configured_gauge(config, result.trajectory);
    const double gauge_tolerance = tolerance_or(options, config.tolerances.gauge_discrepancy);
    const double phase_tolerance = tolerance_or(options, config.tolerances.phase_law);

    {
        std::vector<std::string> header{"t"};
        for (std::size_t j = 1; j <= levels; ++j) {
            const auto n = std::to_string(j);
            header.insert(header.end(), {"gamma_" + n, "mean_energy_" + n, "dynamical_phase_" + n});
        }
        if (result.reference_phases)
            for (std::size_t j = 1; j <= levels; ++j)
                header.push_back("gamma_closed_form_basis_" + std::to_string(j));
        CsvWriter csv(dir / "phases.csv", header);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<double> row{grid.time(k)};
            for (std::size_t j = 0; j < levels; ++j)
                row.insert(row.end(), {result.ledger.geometric[j][k], result.ledger.average_energy[j][k],
                                       result.ledger.dynamical_argument[j][k]});
            if (result.reference_phases)
                for (std::size_t j = 0; j < levels; ++j)
                    row.push_back((*result.reference_phases)[j][k]);
            csv.row(row);
        }
    }

    {
        std::vector<std::string> header{"t"};
        for (const char* which : {"exact", "adiabatic"})
            for (Eigen::Index i = 1; i <= dimension; ++i) {
                header.push_back(std::string(which) + "_re_" + std::to_string(i));
                header.push_back(std::string(which) + "_im_" + std::to_string(i));
            }
        header.push_back("deviation");
        CsvWriter csv(dir / "states.csv", header);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<double> row{grid.time(k)};
            for (const auto* series : {&result.exact, &result.adiabatic})
                for (Eigen::Index i = 0; i < dimension; ++i)
                    row.insert(row.end(), {(*series)[k].amplitudes()(i).real(), (*series)[k].amplitudes()(i).imag()});
            row.push_back(result.deviation[k]);
            csv.row(row);
        }
    }

    double max_discrepancy = 0.0;
    double max_decomposition = 0.0;
    double max_phase_law = 0.0;
    {
        std::optional<GaugeComparison> comparison;
        if (gauge)
            comparison.emplace(result.decomposition, result.trajectory, result.ledger, *gauge);
        std::vector<std::string> header{"t"};
        for (const auto& op : observables) {
            header.insert(header.end(), {op.name() + "_exact", op.name() + "_adiabatic", op.name() + "_interference_sum"});
            if (comparison)
                header.insert(header.end(), {op.name() + "_gauge_interference_sum", op.name() + "_gauge_discrepancy"});
        }
        CsvWriter csv(dir / "expectations.csv", header);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double t = grid.time(k);
            std::vector<double> row{t};
            for (const auto& op : observables) {
                row.push_back(expectation_value(result.exact[k], op, t));
                row.push_back(expectation_value(result.adiabatic[k], op, t));
                row.push_back(interference_sum(result.decomposition, result.ledger, result.trajectory, op, k).real());
                if (comparison) {
                    const auto report = comparison->report(op, k);
                    row.insert(row.end(), {report.sum_transformed, report.max_discrepancy});
                    max_discrepancy = std::max(max_discrepancy, report.max_discrepancy);
                    max_decomposition = std::max(max_decomposition, report.decomposition_residual);
                    max_phase_law = std::max(max_phase_law, report.phase_law_residual);
                }
            }
            csv.row(row);
        }
    }

    ordered_json report;
    report["command"] = "simulate";
    report["model"] = config.model.kind == ModelSpec::Kind::SpinHalf ? "spin_half" : "matrix";
    report["levels"] = levels;
    report["grid"] = grid_json(grid);
    ordered_json phases = ordered_json::array();
    std::optional<SpinPhases> closed;
    if (result.reference_phases)
        closed = analytic_phases(*result.run.precessing, SpinGauge{}, grid.duration());
    for (std::size_t j = 0; j < levels; ++j) {
        ordered_json level;
        level["level"] = j + 1;
        level["geometric_phase"] = result.ledger.geometric[j].back();
        level["average_energy"] = result.ledger.average_energy[j].back();
        level["dynamical_phase"] = result.ledger.dynamical_argument[j].back();
        if (result.reference_phases) {
            level["geometric_phase_closed_form_basis"] = (*result.reference_phases)[j].back();
            level["closed_form"] = j == 0 ? closed->lower : closed->upper;
        }
        phases.push_back(level);
    }
    report["final_phases"] = phases;
    if (result.phase_error)
        report["phase_error_vs_closed_form"] = *result.phase_error;
    report["adiabatic_deviation"] = {{"max", max_of(result.deviation)}, {"final", result.deviation.back()}};
    ordered_json integrator;
    integrator["method"] = "midpoint_exponential";
    integrator["steps"] = grid.steps();
    integrator["step"] = grid.step();
    integrator["max_norm_drift"] = checked(result.norm_drift, config.tolerances.norm_drift);
    if (result.rotating_frame_error)
        integrator["rotating_frame_error"] = *result.rotating_frame_error;
    report["integrator"] = integrator;
    bool pass = result.norm_drift < config.tolerances.norm_drift;
    if (gauge) {
        ordered_json g;
        g["max_discrepancy"] = checked(max_discrepancy, gauge_tolerance);
        g["decomposition_residual"] = checked(max_decomposition, gauge_tolerance);
        g["phase_law_residual"] = checked(max_phase_law, phase_tolerance);
        report["gauge"] = g;
        pass = pass && max_discrepancy < gauge_tolerance && max_decomposition < gauge_tolerance &&
               max_phase_law < phase_tolerance;
    }
    report["warnings"] = config.warnings;
    report["pass"] = pass;
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_json(dir / "report.json", report);

    for (std::size_t j = 0; j < levels; ++j)
        out << "level " << j + 1 << ": gamma = " << format_double(result.ledger.geometric[j].back())
            << (result.reference_phases
                    ? ", gamma (closed-form basis) = " + format_double((*result.reference_phases)[j].back())
                    : std::string())
            << ", <E> = " << format_double(result.ledger.average_energy[j].back()) << '\n';
    out << "max adiabatic deviation " << format_double(max_of(result.deviation)) << ", outputs in " << dir.string()
        << '\n';
    return pass ? kSuccess : kToleranceFailure;
}

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
    const auto started = std::chrono::steady_clock::now();
    const Pipeline p = build_pipeline(config);
    const std::size_t random_count = options.random_gauges.value_or(config.random_gauges);
    const std::uint64_t seed = options.seed.value_or(config.seed);
    const auto levels = static_cast<std::size_t>(p.trajectory.levels());
    auto observables = observables_for(config, p.trajectory.dimension());
    if (observables.empty())
        throw ConfigError("verify needs at least one observable for a " + std::to_string(levels) + "-level model");

    std::vector<std::pair<std::string, GaugeFunction>> gauges;
    if (auto gauge = configured_gauge(config, p.trajectory))
        gauges.emplace_back("config", std::move(*gauge));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_count; ++i)
        gauges.emplace_back("random", random_fourier_gauge(rng, levels, p.trajectory.grid));
    if (gauges.empty())
        throw ConfigError("verify needs a gauge in the config or --random-gauges K > 0");

    const double gauge_tolerance = tolerance_or(options, config.tolerances.gauge_discrepancy);
    const double phase_tolerance = tolerance_or(options, config.tolerances.phase_law);
    const auto dir = output_directory(config, options);
    std::filesystem::create_directories(dir);

    CsvWriter csv(dir / "verify.csv",
                  {"gauge", "max_discrepancy", "decomposition_residual", "phase_law_residual", "pass"});
    ordered_json per_gauge = ordered_json::array();
    bool all_pass = true;
    double overall = 0.0;
    for (std::size_t g = 0; g < gauges.size(); ++g) {
        const GaugeComparison comparison(p.decomposition, p.trajectory, p.ledger, gauges[g].second);
        double discrepancy = 0.0, decomposition = 0.0, phase_law = 0.0;
        for (std::size_t k = 0; k < p.trajectory.frames.size(); ++k)
            for (const auto& op : observables) {
                const auto report = comparison.report(op, k);
                discrepancy = std::max(discrepancy, report.max_discrepancy);
                decomposition = std::max(decomposition, report.decomposition_residual);
                phase_law = std::max(phase_law, report.phase_law_residual);
            }
        const bool pass =
            discrepancy < gauge_tolerance && decomposition < gauge_tolerance && phase_law < phase_tolerance;
        all_pass = all_pass && pass;
        overall = std::max(overall, discrepancy);
        csv.row({static_cast<double>(g + 1), discrepancy, decomposition, phase_law, pass ? 1.0 : 0.0});

        ordered_json entry;
        entry["gauge"] = g + 1;
        entry["source"] = gauges[g].first;
        entry["max_discrepancy"] = checked(discrepancy, gauge_tolerance);
        entry["decomposition_residual"] = checked(decomposition, gauge_tolerance);
        entry["phase_law_residual"] = checked(phase_law, phase_tolerance);
        per_gauge.push_back(entry);

        out << "gauge " << g + 1 << " (" << gauges[g].first << "): max discrepancy " << format_double(discrepancy)
            << ", decomposition residual " << format_double(decomposition) << ", phase-law residual "
            << format_double(phase_law) << " [threshold " << format_double(gauge_tolerance) << "] "
            << (pass ? "PASS" : "FAIL") << '\n';
    }

    ordered_json report;
    report["command"] = "verify";
    report["levels"] = levels;
    report["grid"] = grid_json(p.trajectory.grid);
    report["seed"] = seed;
    report["observables"] = ordered_json::array();
    for (const auto& op : observables)
        report["observables"].push_back(op.name());
    report["gauges"] = per_gauge;
    report["max_discrepancy"] = checked(overall, gauge_tolerance);
    report["warnings"] = config.warnings;
    report["pass"] = all_pass;
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_json(dir / "report.json", report);
    return all_pass ? kSuccess : kToleranceFailure;
}

int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
    const auto started = std::chrono::steady_clock::now();
    if (!config.sweep)
        throw ConfigError("sweep: config has no \"sweep\" section");
    const SweepSpec& sweep = *config.sweep;
    if (sweep.values.empty())
        throw ConfigError("sweep.values is empty");

    // Validate every point up front so config errors surface before any work.
    std::vector<RunConfig> points;
    for (double value : sweep.values) {
        points.push_back(with_parameter(config, sweep.parameter, value));
        resolve(points.back());
    }

    struct Row {
        double max_deviation = 0.0;
        double final_deviation = 0.0;
        double phase_error = std::nan("");
        double rotating_frame_error = std::nan("");
        double norm_drift = 0.0;
        std::size_t steps = 0;
    };
    std::vector<Row> rows(points.size());
    std::vector<std::exception_ptr> failures(points.size());

    std::size_t workers = options.workers.value_or(config.workers);
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, points.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                const SimulationResult r = simulate(points[i]);
                Row& row = rows[i];
                row.max_deviation = max_of(r.deviation);
                row.final_deviation = r.deviation.back();
                if (r.phase_error)
                    row.phase_error = *r.phase_error;
                if (r.rotating_frame_error)
                    row.rotating_frame_error = *r.rotating_frame_error;
                row.norm_drift = r.norm_drift;
                row.steps = r.run.grid.steps();
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto& thread : pool)
        thread.join();
    for (const auto& failure : failures)
        if (failure)
            std::rethrow_exception(failure);

    const auto dir = output_directory(config, options);
    std::filesystem::create_directories(dir);
    CsvWriter csv(dir / "sweep.csv", {sweep.parameter, "max_deviation", "final_deviation", "phase_error",
                                      "rotating_frame_error", "norm_drift", "steps"});
    ordered_json entries = ordered_json::array();
    bool pass = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        csv.row({sweep.values[i], row.max_deviation, row.final_deviation, row.phase_error, row.rotating_frame_error,
                 row.norm_drift, static_cast<double>(row.steps)});
        ordered_json entry;
        entry[sweep.parameter] = sweep.values[i];
        entry["max_deviation"] = row.max_deviation;
        entry["final_deviation"] = row.final_deviation;
        if (!std::isnan(row.phase_error))
            entry["phase_error"] = row.phase_error;
        if (!std::isnan(row.rotating_frame_error))
            entry["rotating_frame_error"] = row.rotating_frame_error;
        entry["norm_drift"] = checked(row.norm_drift, config.tolerances.norm_drift);
        entry["steps"] = row.steps;
        entries.push_back(entry);
        pass = pass && row.norm_drift < config.tolerances.norm_drift;
        out << sweep.parameter << " = " << format_double(sweep.values[i]) << ": max deviation "
            << format_double(row.max_deviation) << ", final deviation " << format_double(row.final_deviation)
            << ", phase error " << format_double(row.phase_error) << '\n';
    }

    ordered_json report;
    report["command"] = "sweep";
    report["parameter"] = sweep.parameter;
    report["workers"] = workers;
    report["points"] = entries;
    report["warnings"] = config.warnings;
    report["pass"] = pass;
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_json(dir / "report.json", report);
    return pass ? kSuccess : kToleranceFailure;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"adiaphase: geometric and dynamical phases under noncyclic adiabatic evolution"};
    app.require_subcommand(1);

    std::string config_path;
    CommandOptions options;
    std::string out_dir;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::size_t random_gauges = 0;
    std::size_t workers = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "JSON run configuration")->required();
        sub->add_option("--out-dir", out_dir, "output directory (overrides ADIAPHASE_OUT and the config)");
        sub->add_option("--tolerance", tolerance, "override the gauge-invariance tolerances");
        sub->add_option("--seed", seed, "seed for random gauges");
    };
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run the pipeline and write phases/states/expectations");
    CLI::App* verify_cmd = app.add_subcommand("verify", "check observable gauge invariance over random gauges");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(simulate_cmd);
    add_common(verify_cmd);
    add_common(sweep_cmd);
    verify_cmd->add_option("--random-gauges", random_gauges, "number of seeded random Fourier gauges");
    sweep_cmd->add_option("--workers", workers, "concurrent sweep points (0: hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kConfigError;
    }

    auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
    CLI::App* active = app.get_subcommands().front();
    if (given(active, "--out-dir"))
        options.out_dir = out_dir;
    if (given(active, "--tolerance"))
        options.tolerance = tolerance;
    if (given(active, "--seed"))
        options.seed = seed;
    if (active == verify_cmd && given(active, "--random-gauges"))
        options.random_gauges = random_gauges;
    if (active == sweep_cmd && given(active, "--workers"))
        options.workers = workers;

    try {
        const RunConfig config = load_config(config_path);
        for (const auto& warning : config.warnings)
            err << "warning: " << warning << '\n';
        if (active == simulate_cmd)
            return cmd_simulate(config, options, out);
        if (active == verify_cmd)
            return cmd_verify(config, options, out);
        return cmd_sweep(config, options, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const PhysicsError& e) {
        err << "physics precondition violated at t = " << format_double(e.time()) << ": " << e.what() << '\n';
        return kPhysicsViolation;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kToleranceFailure;
    }
}

} // namespace adiaphase::cli
