#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "toruswell/integrator.hpp"

using namespace toruswell;
using wells::euler_residual;
using wells::gradient_consistency;
using wells::hamiltonian;
using wells::homogeneous_extension;
using wells::integrate;
using wells::PhaseState;
using wells::Potential;
using wells::quadratic_potential;
using wells::symplectic_identity_check;
using wells::Trajectory;
using wells::TrajectoryStatus;

namespace {

constexpr double kPi = std::numbers::pi;

Potential harmonic_1d() { return quadratic_potential({1.0}, 1); }

}  // namespace

TEST_CASE("euler residual: quadratic potentials are degree 2") {
    const auto V = quadratic_potential({1.0, 0.0, 0.0, 1.0}, 2);
    CHECK(euler_residual(V, 2.0, 100, {0.1, 10.0}) < 1e-12);

    // additive constants break homogeneity by roughly 2/(1+|V|)
    auto shifted = wells::closed_form_potential(
        1,
        [](std::span<const double> q) { return 0.5 * q[0] * q[0] + 1.0; },
        [](std::span<const double> q) { return std::vector<double>{q[0]}; },
        "q^2/2 + 1", {});
    const double res = euler_residual(shifted, 2.0, 100, {0.1, 10.0});
    CHECK(res > 0.1);
}

TEST_CASE("homogeneous extension of the constant sphere function is |x|^k") {
    const auto V = homogeneous_extension(
        3, 3.0, [](std::span<const double>) { return 1.0; });
    const double xs[3] = {0.3, -1.2, 0.4};
    const double r = std::sqrt(0.3 * 0.3 + 1.2 * 1.2 + 0.4 * 0.4);
    CHECK(V.value(xs) == doctest::Approx(r * r * r).epsilon(1e-12));
    CHECK(euler_residual(V, 3.0, 100, {0.2, 8.0}) < 1e-9);

    const auto V2 = homogeneous_extension(
        3, 2.0, [](std::span<const double>) { return 1.0; });
    const auto g = V2.gradient(xs);
    for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(2.0 * xs[i]).epsilon(1e-9));
}

TEST_CASE("homogeneous extension of s1^2 at degree 2 is x1^2") {
    const auto V = homogeneous_extension(
        3, 2.0, [](std::span<const double> s) { return s[0] * s[0]; });
    const double xs[3] = {0.7, 0.4, -0.9};
    CHECK(V.value(xs) == doctest::Approx(0.7 * 0.7).epsilon(1e-10));
    const auto g = V.gradient(xs);
    CHECK(g[0] == doctest::Approx(1.4).epsilon(1e-6));
    CHECK(std::abs(g[1]) < 1e-6);
    CHECK(std::abs(g[2]) < 1e-6);
    CHECK(gradient_consistency(V, 100, 3.0) < 1e-5);
}

TEST_CASE("homogeneous extensions satisfy Euler by construction") {
    // smooth sphere data with no closed form
    const auto V = homogeneous_extension(4, 2.5, [](std::span<const double> s) {
        return 1.5 + std::sin(s[0] + 2.0 * s[1]) * std::cos(s[2]) + 0.3 * s[3];
    });
    CHECK(euler_residual(V, 2.5, 100, {0.15, 6.0}) < 1e-9);
    CHECK(gradient_consistency(V, 60, 2.0) < 1e-5);

    CHECK_THROWS_AS(homogeneous_extension(2, 0.0, [](std::span<const double>) { return 1.0; }),
                    std::invalid_argument);
}

TEST_CASE("homogeneity relation V(tx) = t^k V(x) for t >= 1 outside epsilon") {
    const auto V = homogeneous_extension(3, 1.5, [](std::span<const double> s) {
        return 2.0 + s[0] * s[1] + 0.5 * s[2];
    });
    for (double t : {1.0, 1.7, 3.5, 9.0}) {
        const double x[3] = {0.4, -0.2, 0.5};  // |x| > epsilon = 0.1
        double tx[3] = {t * x[0], t * x[1], t * x[2]};
        const double lhs = V.value(tx);
        const double rhs = std::pow(t, 1.5) * V.value(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("harmonic oscillator returns to start after one exact period") {
    // dt is snapped so that steps * dt = 2 pi exactly; a literal dt of 1e-3
    // cannot land on the period and the phase offset would dominate.
    const long steps = static_cast<long>(std::ceil(2.0 * kPi / 1e-3));
    const double dt = 2.0 * kPi / static_cast<double>(steps);
    const auto traj = integrate(harmonic_1d(), {{1.0}, {0.0}}, dt, steps);
    REQUIRE(traj.status == TrajectoryStatus::completed);
    REQUIRE(traj.states.size() == static_cast<std::size_t>(steps) + 1);
    const auto& last = traj.states.back();
    CHECK(std::hypot(last.q[0] - 1.0, last.p[0]) < 1e-5);
}

TEST_CASE("energy drift is second order: halving dt gains 4x") {
    const long steps = 20000;
    const auto drift_at = [&](double dt) {
        const auto traj = integrate(harmonic_1d(), {{1.0}, {0.0}}, dt, steps);
        return traj.max_energy_drift();
    };
    const double d1 = drift_at(2e-3);
    const double d2 = drift_at(1e-3);
    const double ratio = d1 / d2;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("time reversibility of bounded trajectories") {
    const long steps = 3000;
    const double dt = 1e-3;
    const auto fwd = integrate(harmonic_1d(), {{1.0}, {0.0}}, dt, steps);
    REQUIRE(fwd.status == TrajectoryStatus::completed);
    // integrate backwards by flipping momentum twice
    PhaseState back{fwd.states.back().q, {-fwd.states.back().p[0]}};
    const auto rev = integrate(harmonic_1d(), back, dt, steps);
    const auto& s = rev.states.back();
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() * steps;
    CHECK(std::abs(s.q[0] - 1.0) < tol);
    CHECK(std::abs(-s.p[0] - 0.0) < tol);
}

TEST_CASE("V = -q^4 escapes in finite time and flags blowup") {
    auto V = wells::closed_form_potential(
        1,
        [](std::span<const double> q) { return -q[0] * q[0] * q[0] * q[0]; },
        [](std::span<const double> q) {
            return std::vector<double>{-4.0 * q[0] * q[0] * q[0]};
        },
        "-q^4", {});
    const auto traj = integrate(V, {{1.0}, {0.0}}, 1e-3, 2000000, 1e6);
    CHECK(traj.blowup_flag);
    CHECK(traj.status == TrajectoryStatus::blowup);
    CHECK(traj.states.size() < 2000001);
}

TEST_CASE("symplectic identity residuals") {
    // harmonic oscillator: both residuals are O(dt^2)
    const auto traj = integrate(harmonic_1d(), {{1.0}, {0.0}}, 1e-3, 10000);
    const auto id = symplectic_identity_check(traj, harmonic_1d());
    CHECK(id.kinetic_pairing_residual < 1e-5);
    CHECK(id.energy_residual < 1e-6);

    // free motion: both residuals vanish to roundoff
    auto V0 = wells::closed_form_potential(
        2, [](std::span<const double>) { return 1.0; },
        [](std::span<const double>) { return std::vector<double>{0.0, 0.0}; }, "const", {});
    const auto free_traj = integrate(V0, {{0.0, 0.0}, {0.3, -0.4}}, 1e-2, 1000);
    const auto free_id = symplectic_identity_check(free_traj, V0);
    // roundoff only: the discrete quotient (q_{i+1} - q_i)/dt reintroduces
    // eps * |q| / dt noise, no dt^2 term
    CHECK(free_id.kinetic_pairing_residual < 1e-12);
    CHECK(free_id.energy_residual < 1e-14);
}

TEST_CASE("energy is recomputable from states") {
    const auto V = harmonic_1d();
    const auto traj = integrate(V, {{0.7}, {0.2}}, 1e-3, 500);
    for (std::size_t i = 0; i < traj.states.size(); i += 100)
        CHECK(traj.energy[i] == doctest::Approx(hamiltonian(V, traj.states[i])).epsilon(1e-15));
}

TEST_CASE("csv export shape and header") {
    const auto traj = integrate(harmonic_1d(), {{1.0}, {0.0}}, 1e-3, 10);
    std::ostringstream out;
    wells::write_csv(traj, out);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "t,q1,p1,E");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 11);
}

TEST_CASE("gradient self-consistency for every potential kind") {
    CHECK(gradient_consistency(quadratic_potential({2.0, 0.3, 0.3, 1.0}, 2), 100, 5.0) < 1e-5);
    auto closed = wells::closed_form_potential(
        2,
        [](std::span<const double> q) { return std::exp(q[0]) * std::cos(q[1]); },
        [](std::span<const double> q) {
            return std::vector<double>{std::exp(q[0]) * std::cos(q[1]),
                                       -std::exp(q[0]) * std::sin(q[1])};
        },
        "exp cos", {});
    CHECK(gradient_consistency(closed, 100, 1.5) < 1e-5);
}
