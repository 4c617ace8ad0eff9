#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "adiaphase/cli/config.hpp"
#include "adiaphase/phases.hpp"
#include "adiaphase/spectral.hpp"

namespace adiaphase::cli {

enum ExitCode : int {
    kSuccess = 0,
    kToleranceFailure = 1,
    kConfigError = 2,
    kPhysicsViolation = 3,
};

// Flag-level overrides applied on top of the config file.
struct CommandOptions {
    std::optional<std::filesystem::path> out_dir;
    std::optional<double> tolerance;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> random_gauges;
    std::optional<std::size_t> workers;
};

// One pipeline run: spectra, phases, adiabatic and exact states, plus the
// closed-form comparisons when the run is the precessing spin-1/2 model.
struct SimulationResult {
    ResolvedRun run;
    SpectralTrajectory trajectory;
    PhaseLedger ledger;
    InitialDecomposition decomposition;
    std::vector<StateVector> exact;
    std::vector<StateVector> adiabatic;
    std::vector<double> deviation;
    double norm_drift = 0.0;
    std::optional<PhaseSeries> reference_phases; // transported to the f = g = 0 closed-form basis
    std::optional<double> phase_error;           // final-time max |gamma_ref - closed form|
    std::optional<double> rotating_frame_error;  // final-time |psi_exact - rotating-frame oracle|
};

SimulationResult simulate(const RunConfig& config);

// flag > ADIAPHASE_OUT > config "output_dir" > current directory
std::filesystem::path output_directory(const RunConfig& config, const CommandOptions& options);

int cmd_simulate(const RunConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& out);

// Full command line entry point; maps exceptions to exit codes.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace adiaphase::cli
