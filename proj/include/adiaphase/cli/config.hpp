#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adiaphase/evolution.hpp"
#include "adiaphase/field_path.hpp"
#include "adiaphase/gauge.hpp"
#include "adiaphase/hamiltonian.hpp"
#include "adiaphase/observables.hpp"

namespace adiaphase::cli {

struct ModelSpec {
    enum class Kind { SpinHalf, Matrix };
    Kind kind = Kind::SpinHalf;
    double mu = 1.0;
    std::vector<FieldTerm> terms;
};

struct PathSpec {
    enum class Kind { Precessing, Piecewise };
    Kind kind = Kind::Precessing;
    PrecessingFieldParams precessing;
    std::vector<Knot> knots;
};

// Exactly one of duration/periods and one of steps/step_size is set.
struct GridSpec {
    std::optional<double> duration;
    std::optional<double> periods; // multiples of 2 pi / omega
    std::optional<long long> steps;
    std::optional<double> step_size;
};

struct InitialSpec {
    enum class Kind { Amplitudes, Levels, Level };
    Kind kind = Kind::Level;
    CVector values;         // Amplitudes / Levels
    std::size_t level = 0;  // Level, 0-based
};

struct Tolerances {
    double gauge_discrepancy = 1e-10;
    double phase_law = 1e-10;
    double norm_drift = 1e-12;
};

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
};

struct RunConfig {
    ModelSpec model;
    PathSpec path;
    GridSpec grid;
    InitialSpec initial;
    std::vector<ScalarFunction> gauge; // empty: none configured
    std::vector<ObservableOp> observables;
    bool observables_given = false;
    std::optional<SweepSpec> sweep;
    std::optional<std::filesystem::path> output_dir;
    Tolerances tolerances;
    std::uint64_t seed = 0;
    std::size_t random_gauges = 0;
    std::size_t workers = 0; // 0: hardware concurrency
    std::vector<std::string> warnings;
};

// Throws ConfigError with a path-qualified message on schema violations.
RunConfig parse_config(const nlohmann::json& document);
RunConfig load_config(const std::filesystem::path& file);

// Everything needed to run the pipeline once.
struct ResolvedRun {
    HamiltonianFamily family;
    TimeGrid grid;
    std::optional<PrecessingFieldParams> precessing; // precessing path
    std::optional<SpinModelParams> spin;             // spin-1/2 model
};

ResolvedRun resolve(const RunConfig& config);

// Copy of `config` with the sweep parameter set to `value`.
RunConfig with_parameter(const RunConfig& config, const std::string& parameter, double value);

} // namespace adiaphase::cli
