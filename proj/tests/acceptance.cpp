// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "adiaphase/analytic_spin.hpp"
#include "adiaphase/evolution.hpp"
#include "adiaphase/observables.hpp"
#include "adiaphase/phases.hpp"
#include "oracles.hpp"

using namespace adiaphase;

namespace {

const std::vector<double> kThetas{M_PI / 6, M_PI / 3, M_PI / 2, 2 * M_PI / 3};

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, format, a, b, c);
    return buffer;
}

SpectralTrajectory spin_trajectory(const PrecessingFieldParams& p, double duration, std::size_t steps) {
    return spectral_trajectory(spin_half_family({1.0}, precessing_path(p, duration)), TimeGrid(duration, steps));
}

HamiltonianFamily four_level_family(std::mt19937_64& rng, double duration) {
    CMatrix base = CMatrix::Zero(4, 4);
    base.diagonal() << 0.0, 2.0, 4.0, 6.0;
    std::vector<FieldTerm> terms{{0, base},
                                 {1, 0.3 * oracle::random_hermitian(rng, 4)},
                                 {2, 0.3 * oracle::random_hermitian(rng, 4)}};
    const FieldPath path(3, duration, [](double t) {
        RVector r(3);
        r << 1.0, std::sin(0.7 * t), std::cos(1.3 * t);
        return r;
    });
    return matrix_family(std::move(terms), path);
}

Verdict closed_form_phases() {
    const auto start = std::chrono::steady_clock::now();
    const double omega = 0.01;
    double worst = 0.0;
    for (double theta : kThetas)
        for (double cycles : {0.5, 1.0, 2.0, 3.0}) {
            const PrecessingFieldParams p{1.0, theta, omega};
            const double T = cycles * M_PI / omega;
            const auto traj = spin_trajectory(p, T, 10000);
            const auto reference = analytic_trajectory(p, {1.0}, SpinGauge{}, traj.grid);
            const auto gamma = transport_phases(geometric_phase(traj), relative_gauge(reference, traj));
            for (std::size_t k = 0; k < traj.grid.size(); ++k) {
                const double wt = omega * traj.grid.time(k);
                worst = std::max(worst, std::abs(gamma[0][k] + std::pow(std::cos(theta / 2), 2) * wt));
                worst = std::max(worst, std::abs(gamma[1][k] + std::pow(std::sin(theta / 2), 2) * wt));
            }
        }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst < 1e-6 && seconds < 5.0,
            fmt("max |gamma - closed form| = %.3e rad (tol 1e-6), runtime %.2f s (limit 5 s)", worst, seconds)};
}

Verdict gauge_identity() {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    const auto spin = spin_trajectory({1.0, M_PI / 3, 0.05}, 2 * M_PI / 0.05, 2000);
    const auto multi = spectral_trajectory(four_level_family(rng, 10.0), TimeGrid(10.0, 2000));
    for (const SpectralTrajectory* traj : {&spin, &multi}) {
        const auto base = geometric_phase(*traj);
        for (int g = 0; g < 20; ++g) {
            const auto alpha = random_fourier_gauge(rng, static_cast<std::size_t>(traj->levels()), traj->grid);
            const auto moved = geometric_phase(apply_gauge(*traj, alpha));
            for (std::size_t n = 0; n < base.size(); ++n)
                for (std::size_t k = 0; k < traj->grid.size(); ++k) {
                    const double expected = -(alpha.value(n, k) - alpha.value(n, 0));
                    worst = std::max(worst, std::abs(moved[n][k] - base[n][k] - expected));
                }
        }
    }
    return {worst < 1e-10, fmt("max |delta gamma + (alpha(t) - alpha(0))| = %.3e rad (tol 1e-10)", worst)};
}

Verdict observable_invariance() {
    std::mt19937_64 rng(77);
    const auto traj = spin_trajectory({1.0, M_PI / 3, 0.05}, 2 * M_PI / 0.05, 2000);
    const auto ledger = build_ledger(traj);
    const std::vector<ObservableOp> observables{sigma_x_observable(), sigma_y_observable(), sigma_z_observable()};
    double discrepancy = 0.0, pair_law = 0.0;
    for (int g = 0; g < 20; ++g) {
        const InitialDecomposition a(oracle::random_unit_vector(rng, 2));
        const auto alpha = random_fourier_gauge(rng, 2, traj.grid);
        const GaugeComparison comparison(a, traj, ledger, alpha);
        const auto& moved = comparison.transformed_ledger();
        for (std::size_t s = 0; s < 50; ++s) {
            const std::size_t k = s * (traj.grid.size() - 1) / 49;
            for (const auto& op : observables)
                discrepancy = std::max(discrepancy, comparison.report(op, k).max_discrepancy);
            const double original = ledger.geometric[0][k] - ledger.geometric[1][k];
            const double transformed = moved.geometric[0][k] - moved.geometric[1][k];
            const double shift = -(alpha.value(0, k) - alpha.value(0, 0)) + (alpha.value(1, k) - alpha.value(1, 0));
            pair_law = std::max(pair_law, std::abs(transformed - original - shift));
        }
    }
    return {discrepancy < 1e-10 && pair_law < 1e-10,
            fmt("max expectation discrepancy = %.3e, max pair phase-law residual = %.3e (tol 1e-10)", discrepancy,
                pair_law)};
}

Verdict adiabatic_scaling() {
    std::vector<double> deviations;
    for (double omega : {1e-2, 5e-3, 2.5e-3}) {
        const PrecessingFieldParams p{1.0, M_PI / 3, omega};
        const double T = 2 * M_PI / omega;
        const auto steps = static_cast<std::size_t>(std::ceil(T / 0.02));
        const auto family = spin_half_family({1.0}, precessing_path(p, T));
        const auto traj = spectral_trajectory(family, TimeGrid(T, steps));
        const auto ledger = build_ledger(traj);
        const InitialDecomposition ground(CVector::Unit(2, 0));
        const auto exact = exact_propagate(family, reconstruct(ground, traj.frames.front()), traj.grid);
        const auto deviation = adiabatic_deviation(exact, adiabatic_series(ground, traj, ledger));
        deviations.push_back(*std::max_element(deviation.begin(), deviation.end()));
    }
    const double r1 = deviations[0] / deviations[1];
    const double r2 = deviations[1] / deviations[2];
    const bool pass = r1 >= 1.6 && r1 <= 2.4 && r2 >= 1.6 && r2 <= 2.4;
    return {pass, fmt("max deviation %.3e", deviations[0]) + fmt(" -> %.3e -> %.3e", deviations[1], deviations[2]) +
                      fmt(", ratios %.3f, %.3f (band [1.6, 2.4])", r1, r2)};
}

Verdict integrator_order() {
    const PrecessingFieldParams p{1.0, M_PI / 3, 0.05};
    const SpinModelParams spin{1.0};
    const double T = 2 * M_PI / p.angular_frequency;
    CVector amplitudes(2);
    amplitudes << 0.6, Complex(0.0, 0.8);
    const StateVector psi0(amplitudes);
    const auto family = spin_half_family(spin, precessing_path(p, T));
    std::vector<double> errors;
    double drift = 0.0;
    for (std::size_t steps : {2500, 5000, 10000}) {
        const TimeGrid grid(T, steps);
        const auto exact = exact_propagate(family, psi0, grid);
        double worst = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k)
            worst = std::max(worst, (exact[k].amplitudes() -
                                     rotating_frame_exact(p, spin, psi0, grid.time(k)).amplitudes())
                                        .norm());
        errors.push_back(worst);
        drift = std::max(drift, max_norm_drift(exact));
    }
    const double r1 = errors[0] / errors[1];
    const double r2 = errors[1] / errors[2];
    const bool pass = r1 >= 3.5 && r1 <= 4.5 && r2 >= 3.5 && r2 <= 4.5 && drift < 1e-12;
    return {pass, fmt("errors %.3e", errors[0]) + fmt(" -> %.3e -> %.3e", errors[1], errors[2]) +
                      fmt(", ratios %.3f, %.3f (band [3.5, 4.5])", r1, r2) +
                      fmt(", max norm drift %.3e (tol 1e-12)", drift)};
}

Verdict cyclic_sanity() {
    std::mt19937_64 rng(99);
    const double omega = 0.01;
    double worst = 0.0, spread = 0.0;
    for (double theta : kThetas) {
        const auto traj = spin_trajectory({1.0, theta, omega}, 2 * M_PI / omega, 10000);
        const double gamma = closed_loop_phase(traj, 0);
        worst = std::max(worst, oracle::angle_distance(gamma, -M_PI * (1 + std::cos(theta))));
        for (int g = 0; g < 5; ++g) {
            const auto moved = apply_gauge(traj, random_fourier_gauge(rng, 2, traj.grid));
            spread = std::max(spread, oracle::angle_distance(closed_loop_phase(moved, 0), gamma));
        }
    }
    return {worst < 1e-6 && spread < 1e-6,
            fmt("max |gamma_1 - (-pi(1 + cos theta))| mod 2pi = %.3e, spread across gauges = %.3e (tol 1e-6)", worst,
                spread)};
}

Verdict state_independence() {
    std::mt19937_64 rng(5);
    double worst = 0.0;
    const auto spin = spin_trajectory({1.0, M_PI / 3, 0.05}, 2 * M_PI / 0.05, 2000);
    const auto multi = spectral_trajectory(four_level_family(rng, 10.0), TimeGrid(10.0, 2000));
    for (const SpectralTrajectory* traj : {&spin, &multi}) {
        const auto ledger = build_ledger(*traj);
        for (int g = 0; g < 5; ++g) {
            const InitialDecomposition a(oracle::random_unit_vector(rng, traj->levels()));
            const auto alpha = random_fourier_gauge(rng, static_cast<std::size_t>(traj->levels()), traj->grid);
            const auto moved = apply_gauge(*traj, alpha);
            const auto moved_ledger = build_ledger(moved);
            const auto moved_a = transform_coefficients(a, alpha);
            for (std::size_t k = 0; k < traj->grid.size(); k += 10) {
                const CVector diff = adiabatic_state(a, *traj, ledger, k).amplitudes() -
                                     adiabatic_state(moved_a, moved, moved_ledger, k).amplitudes();
                worst = std::max(worst, diff.cwiseAbs().maxCoeff());
            }
        }
    }
    return {worst < 1e-10, fmt("max componentwise state difference = %.3e (tol 1e-10)", worst)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 closed-form phases", closed_form_phases},
        {"2 gauge identity", gauge_identity},
        {"3 observable gauge invariance", observable_invariance},
        {"4 adiabatic scaling", adiabatic_scaling},
        {"5 integrator order", integrator_order},
        {"6 cyclic sanity", cyclic_sanity},
        {"7 state basis-independence", state_independence},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("[%s] criterion %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
