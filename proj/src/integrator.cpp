#include "toruswell/integrator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace toruswell::wells {

namespace {

bool finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

const char* to_string(TrajectoryStatus s) {
    switch (s) {
        case TrajectoryStatus::completed: return "completed";
        case TrajectoryStatus::blowup: return "blowup";
        case TrajectoryStatus::non_finite: return "non_finite";
    }
    return "?";
}

double Trajectory::max_energy_drift() const {
    if (energy.empty()) return 0.0;
    double d = 0.0;
    for (double e : energy) d = std::max(d, std::abs(e - energy.front()));
    return d;
}

double hamiltonian(const Potential& V, const PhaseState& s) {
    double kin = 0.0;
    for (double p : s.p) kin += p * p;
    return 0.5 * kin + V.value(s.q);
}

Trajectory integrate(const Potential& V, PhaseState s0, double dt, long steps,
                     double escape_radius) {
    if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be > 0");
    if (steps < 1) throw std::invalid_argument("integrate: steps must be >= 1");
    if (s0.q.size() != s0.p.size() ||
        s0.q.size() != static_cast<std::size_t>(V.dimension))
        throw std::invalid_argument("integrate: state dimension mismatch");

    Trajectory traj;
    traj.dt = dt;
    traj.escape_radius = escape_radius;
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    traj.energy.reserve(static_cast<std::size_t>(steps) + 1);

    std::vector<double> q = s0.q;
    std::vector<double> p = s0.p;
    traj.states.push_back(s0);
    traj.energy.push_back(hamiltonian(V, s0));

    std::vector<double> g = V.gradient(q);
    const std::size_t m = q.size();
    for (long i = 0; i < steps; ++i) {
        for (std::size_t j = 0; j < m; ++j) p[j] -= 0.5 * dt * g[j];
        for (std::size_t j = 0; j < m; ++j) q[j] += dt * p[j];
        g = V.gradient(q);
        for (std::size_t j = 0; j < m; ++j) p[j] -= 0.5 * dt * g[j];

        if (!finite(q) || !finite(p) || !finite(g)) {
            traj.status = TrajectoryStatus::non_finite;
            return traj;
        }
        PhaseState s{q, p};
        traj.energy.push_back(hamiltonian(V, s));
        traj.states.push_back(std::move(s));
        if (norm(q) > escape_radius) {
            traj.blowup_flag = true;
            traj.status = TrajectoryStatus::blowup;
            return traj;
        }
    }
    return traj;
}

SymplecticIdentityResult symplectic_identity_check(const Trajectory& traj, const Potential&) {
    SymplecticIdentityResult res;
    const auto& st = traj.states;
    for (std::size_t i = 0; i + 1 < st.size(); ++i) {
        const std::size_t m = st[i].q.size();
        double dot = 0.0;
        double p2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double pm = 0.5 * (st[i].p[j] + st[i + 1].p[j]);
            const double qdot = (st[i + 1].q[j] - st[i].q[j]) / traj.dt;
            dot += pm * qdot;
            p2 += pm * pm;
        }
        res.kinetic_pairing_residual =
            std::max(res.kinetic_pairing_residual, std::abs(dot - p2));
    }
    res.energy_residual = traj.max_energy_drift();
    return res;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    if (traj.states.empty()) return;
    const std::size_t m = traj.states.front().q.size();
    out << "t";
    for (std::size_t j = 1; j <= m; ++j) out << ",q" << j;
    for (std::size_t j = 1; j <= m; ++j) out << ",p" << j;
    out << ",E\n";
    char buf[64];
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(i) * traj.dt);
        out << buf;
        for (std::size_t j = 0; j < m; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", traj.states[i].q[j]);
            out << ',' << buf;
        }
        for (std::size_t j = 0; j < m; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", traj.states[i].p[j]);
            out << ',' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g", traj.energy[i]);
        out << ',' << buf << '\n';
    }
}

}  // namespace toruswell::wells
