#include "adiaphase/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "adiaphase/errors.hpp"

namespace adiaphase::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

const json& require(const json& object, const std::string& key, const std::string& where) {
    if (!object.is_object() || !object.contains(key))
        fail(where, "missing required key \"" + key + "\"");
    return object.at(key);
}

double number(const json& value, const std::string& where) {
    if (!value.is_number())
        fail(where, "expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x))
        fail(where, "expected a finite number");
    return x;
}

double number_or(const json& object, const std::string& key, double fallback, const std::string& where) {
    return object.contains(key) ? number(object.at(key), where + "." + key) : fallback;
}

Complex complex_number(const json& value, const std::string& where) {
    if (value.is_number())
        return {number(value, where), 0.0};
    if (value.is_array() && value.size() == 2)
        return {number(value[0], where + "[0]"), number(value[1], where + "[1]")};
    fail(where, "expected a number or a [re, im] pair");
}

CVector complex_vector(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty())
        fail(where, "expected a non-empty array");
    CVector v(static_cast<Eigen::Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = complex_number(value[i], where + "[" + std::to_string(i) + "]");
    return v;
}

CMatrix complex_matrix(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty())
        fail(where, "expected a non-empty array of rows");
    const auto d = static_cast<Eigen::Index>(value.size());
    CMatrix m(d, d);
    for (std::size_t i = 0; i < value.size(); ++i) {
        const CVector row = complex_vector(value[i], where + "[" + std::to_string(i) + "]");
        if (row.size() != d)
            fail(where, "matrix must be square");
        m.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    if (hermiticity_defect(m) > kHermiticityTolerance)
        fail(where, "matrix is not Hermitian");
    return m;
}

ModelSpec parse_model(const json& node) {
    const std::string where = "model";
    ModelSpec spec;
    const std::string kind = require(node, "model", where).get<std::string>();
    if (kind == "spin_half") {
        spec.kind = ModelSpec::Kind::SpinHalf;
        spec.mu = number(require(node, "mu", where), where + ".mu");
        if (spec.mu == 0.0)
            fail(where + ".mu", "coupling must be nonzero");
    } else if (kind == "matrix") {
        spec.kind = ModelSpec::Kind::Matrix;
        const json& terms = require(node, "terms", where);
        if (!terms.is_array() || terms.empty())
            fail(where + ".terms", "expected a non-empty array");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const std::string at = where + ".terms[" + std::to_string(i) + "]";
            const json& component = require(terms[i], "component", at);
            if (!component.is_number_integer() || component.get<long long>() < 0)
                fail(at + ".component", "expected a non-negative integer");
            spec.terms.push_back({component.get<std::size_t>(), complex_matrix(require(terms[i], "matrix", at), at + ".matrix")});
        }
    } else {
        fail(where + ".model", "unknown model \"" + kind + "\" (expected spin_half or matrix)");
    }
    return spec;
}

PathSpec parse_path(const json& node) {
    const std::string where = "path";
    PathSpec spec;
    const std::string kind = require(node, "type", where).get<std::string>();
    if (kind == "precessing") {
        spec.kind = PathSpec::Kind::Precessing;
        spec.precessing.modulus = number(require(node, "B", where), where + ".B");
        spec.precessing.polar_angle = number(require(node, "theta", where), where + ".theta");
        spec.precessing.angular_frequency = number(require(node, "omega", where), where + ".omega");
    } else if (kind == "piecewise") {
        spec.kind = PathSpec::Kind::Piecewise;
        const json& knots = require(node, "knots", where);
        if (!knots.is_array())
            fail(where + ".knots", "expected an array of [t, [x, ...]] pairs");
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const std::string at = where + ".knots[" + std::to_string(i) + "]";
            if (!knots[i].is_array() || knots[i].size() != 2 || !knots[i][1].is_array() || knots[i][1].empty())
                fail(at, "expected [t, [x, ...]]");
            RVector value(static_cast<Eigen::Index>(knots[i][1].size()));
            for (std::size_t c = 0; c < knots[i][1].size(); ++c)
                value(static_cast<Eigen::Index>(c)) = number(knots[i][1][c], at + "[1]");
            spec.knots.push_back({number(knots[i][0], at + "[0]"), std::move(value)});
        }
    } else {
        fail(where + ".type", "unknown path type \"" + kind + "\" (expected precessing or piecewise)");
    }
    return spec;
}

GridSpec parse_grid(const json& node) {
    const std::string where = "grid";
    if (!node.is_object())
        fail(where, "expected an object");
    GridSpec spec;
    if (node.contains("T"))
        spec.duration = number(node.at("T"), where + ".T");
    if (node.contains("periods"))
        spec.periods = number(node.at("periods"), where + ".periods");
    if (node.contains("N")) {
        if (!node.at("N").is_number_integer())
            fail(where + ".N", "expected an integer");
        spec.steps = node.at("N").get<long long>();
    }
    if (node.contains("dt"))
        spec.step_size = number(node.at("dt"), where + ".dt");
    if (spec.duration && spec.periods)
        fail(where, "give either T or periods, not both");
    if (spec.steps.has_value() == spec.step_size.has_value())
        fail(where, "give exactly one of N or dt");
    return spec;
}

CVector normalized_with_warning(CVector v, const std::string& where, std::vector<std::string>& warnings) {
    const double defect = std::abs(v.squaredNorm() - 1.0);
    if (defect >= 1e-6)
        fail(where, "amplitudes are not normalized (|sum |a|^2 - 1| = " + std::to_string(defect) + ")");
    if (defect > 0.0) {
        std::ostringstream message;
        message << where << ": renormalized amplitudes (norm defect " << defect << ")";
        warnings.push_back(message.str());
        v /= v.norm();
    }
    return v;
}

InitialSpec parse_initial(const json& node, std::vector<std::string>& warnings) {
    const std::string where = "initial";
    if (!node.is_object())
        fail(where, "expected an object");
    InitialSpec spec;
    int kinds = 0;
    if (node.contains("amplitudes")) {
        ++kinds;
        spec.kind = InitialSpec::Kind::Amplitudes;
        spec.values = normalized_with_warning(complex_vector(node.at("amplitudes"), where + ".amplitudes"),
                                              where + ".amplitudes", warnings);
    }
    if (node.contains("levels")) {
        ++kinds;
        spec.kind = InitialSpec::Kind::Levels;
        spec.values = normalized_with_warning(complex_vector(node.at("levels"), where + ".levels"), where + ".levels",
                                              warnings);
    }
    if (node.contains("level")) {
        ++kinds;
        spec.kind = InitialSpec::Kind::Level;
        const json& level = node.at("level");
        if (!level.is_number_integer() || level.get<long long>() < 1)
            fail(where + ".level", "expected a 1-based level index");
        spec.level = level.get<std::size_t>() - 1;
    }
    if (kinds != 1)
        fail(where, "give exactly one of amplitudes, levels or level");
    return spec;
}

ScalarFunction parse_scalar_function(const json& node, const std::string& where) {
    const std::string kind = require(node, "type", where).get<std::string>();
    if (kind == "constant")
        return constant_function(number_or(node, "value", 0.0, where));
    if (kind == "linear")
        return linear_function(number_or(node, "offset", 0.0, where), number_or(node, "slope", 0.0, where));
    if (kind == "sinusoidal")
        return sinusoidal_function(number_or(node, "amplitude", 0.0, where), number_or(node, "frequency", 0.0, where),
                                   number_or(node, "phase", 0.0, where), number_or(node, "offset", 0.0, where));
    fail(where + ".type", "unknown gauge function \"" + kind + "\" (expected constant, linear or sinusoidal)");
}

std::vector<ScalarFunction> parse_gauge(const json& node) {
    const std::string where = "gauge";
    const json& levels = require(node, "levels", where);
    if (!levels.is_array() || levels.empty())
        fail(where + ".levels", "expected a non-empty array");
    std::vector<ScalarFunction> fns;
    for (std::size_t i = 0; i < levels.size(); ++i)
        fns.push_back(parse_scalar_function(levels[i], where + ".levels[" + std::to_string(i) + "]"));
    return fns;
}

ObservableOp parse_observable(const json& node, const std::string& where) {
    if (node.is_string()) {
        const auto name = node.get<std::string>();
        if (name == "sigma_x")
            return sigma_x_observable();
        if (name == "sigma_y")
            return sigma_y_observable();
        if (name == "sigma_z")
            return sigma_z_observable();
        fail(where, "unknown observable \"" + name + "\"");
    }
    const std::string name = require(node, "name", where).get<std::string>();
    return ObservableOp(name, HermitianOperator(complex_matrix(require(node, "matrix", where), where + ".matrix")));
}

} // namespace

RunConfig parse_config(const json& document) {
    if (!document.is_object())
        throw ConfigError("config: expected a JSON object");
    RunConfig config;
    try {
        config.model = parse_model(require(document, "model", "config"));
        config.path = parse_path(require(document, "path", "config"));
        config.grid = parse_grid(require(document, "grid", "config"));
        config.initial = parse_initial(require(document, "initial", "config"), config.warnings);
        if (document.contains("gauge"))
            config.gauge = parse_gauge(document.at("gauge"));
        if (document.contains("observables")) {
            const json& list = document.at("observables");
            if (!list.is_array())
                fail("observables", "expected an array");
            for (std::size_t i = 0; i < list.size(); ++i)
                config.observables.push_back(parse_observable(list[i], "observables[" + std::to_string(i) + "]"));
            config.observables_given = true;
        }
        if (document.contains("sweep")) {
            const json& sweep = document.at("sweep");
            SweepSpec spec;
            spec.parameter = require(sweep, "parameter", "sweep").get<std::string>();
            const json& values = require(sweep, "values", "sweep");
            if (!values.is_array() || values.empty())
                fail("sweep.values", "expected a non-empty array");
            for (std::size_t i = 0; i < values.size(); ++i)
                spec.values.push_back(number(values[i], "sweep.values[" + std::to_string(i) + "]"));
            if (sweep.contains("workers")) {
                if (!sweep.at("workers").is_number_unsigned())
                    fail("sweep.workers", "expected a non-negative integer");
                config.workers = sweep.at("workers").get<std::size_t>();
            }
            config.sweep = std::move(spec);
        }
        if (document.contains("output_dir"))
            config.output_dir = document.at("output_dir").get<std::string>();
        if (document.contains("tolerances")) {
            const json& tol = document.at("tolerances");
            config.tolerances.gauge_discrepancy =
                number_or(tol, "gauge_discrepancy", config.tolerances.gauge_discrepancy, "tolerances");
            config.tolerances.phase_law = number_or(tol, "phase_law", config.tolerances.phase_law, "tolerances");
            config.tolerances.norm_drift = number_or(tol, "norm_drift", config.tolerances.norm_drift, "tolerances");
        }
        if (document.contains("seed")) {
            if (!document.at("seed").is_number_unsigned())
                fail("seed", "expected a non-negative integer");
            config.seed = document.at("seed").get<std::uint64_t>();
        }
        if (document.contains("random_gauges")) {
            if (!document.at("random_gauges").is_number_unsigned())
                fail("random_gauges", "expected a non-negative integer");
            config.random_gauges = document.at("random_gauges").get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ConfigError("cannot open config file " + file.string());
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(file.string() + ": invalid JSON: " + e.what());
    }
    return parse_config(document);
}

ResolvedRun resolve(const RunConfig& config) {
    try {
        std::optional<PrecessingFieldParams> precessing;
        std::optional<FieldPath> path;
        if (config.path.kind == PathSpec::Kind::Precessing)
            precessing = config.path.precessing;

        double duration = 0.0;
        if (config.grid.duration) {
            duration = *config.grid.duration;
        } else if (config.grid.periods) {
            if (!precessing || !(precessing->angular_frequency > 0.0))
                fail("grid.periods", "needs a precessing path with omega > 0");
            duration = *config.grid.periods * 2.0 * M_PI / precessing->angular_frequency;
        } else if (config.path.kind == PathSpec::Kind::Piecewise && !config.path.knots.empty()) {
            duration = config.path.knots.back().time;
        } else {
            fail("grid", "missing T (or periods)");
        }
        if (!(duration > 0.0))
            fail("grid", "duration must be positive");

        long long steps = 0;
        if (config.grid.steps) {
            steps = *config.grid.steps;
        } else {
            if (!(*config.grid.step_size > 0.0))
                fail("grid.dt", "must be positive");
            steps = static_cast<long long>(std::ceil(duration / *config.grid.step_size - 1e-9));
        }
        if (steps < 2)
            fail("grid.N", "need N >= 2 (got " + std::to_string(steps) + ")");

        path = precessing ? precessing_path(*precessing, duration) : piecewise_linear_path(config.path.knots);
        if (path->duration() + 1e-12 * duration < duration)
            fail("grid.T", "exceeds the piecewise path's last knot time");

        std::optional<SpinModelParams> spin;
        std::optional<HamiltonianFamily> family;
        if (config.model.kind == ModelSpec::Kind::SpinHalf) {
            spin = SpinModelParams{config.model.mu};
            family = spin_half_family(*spin, *path);
        } else {
            family = matrix_family(config.model.terms, *path);
        }
        return ResolvedRun{*family, TimeGrid(duration, static_cast<std::size_t>(steps)), precessing, spin};
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig with_parameter(const RunConfig& config, const std::string& parameter, double value) {
    RunConfig out = config;
    const bool precessing = config.path.kind == PathSpec::Kind::Precessing;
    auto need_precessing = [&] {
        if (!precessing)
            fail("sweep.parameter", "\"" + parameter + "\" needs a precessing path");
    };
    if (parameter == "omega") {
        need_precessing();
        out.path.precessing.angular_frequency = value;
    } else if (parameter == "theta") {
        need_precessing();
        out.path.precessing.polar_angle = value;
    } else if (parameter == "B") {
        need_precessing();
        out.path.precessing.modulus = value;
    } else if (parameter == "mu") {
        if (config.model.kind != ModelSpec::Kind::SpinHalf)
            fail("sweep.parameter", "\"mu\" needs the spin_half model");
        out.model.mu = value;
    } else if (parameter == "N") {
        if (value < 2 || value != std::floor(value))
            fail("sweep.values", "N must be an integer >= 2");
        out.grid.steps = static_cast<long long>(value);
        out.grid.step_size.reset();
    } else if (parameter == "dt") {
        out.grid.step_size = value;
        out.grid.steps.reset();
    } else if (parameter == "T") {
        out.grid.duration = value;
        out.grid.periods.reset();
    } else if (parameter == "periods") {
        need_precessing();
        out.grid.periods = value;
        out.grid.duration.reset();
    } else {
        fail("sweep.parameter", "unknown parameter \"" + parameter +
                                    "\" (expected omega, theta, B, mu, N, dt, T or periods)");
    }
    return out;
}

} // namespace adiaphase::cli
