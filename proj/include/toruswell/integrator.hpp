#pragma once

// Fixed-step Stormer-Verlet integration of q' = p, p' = -grad V(q), with
// energy bookkeeping, escape detection and CSV export.

#include <iosfwd>
#include <vector>

#include "toruswell/potential.hpp"

namespace toruswell::wells {

struct PhaseState {
    std::vector<double> q;
    std::vector<double> p;
};

enum class TrajectoryStatus { completed, blowup, non_finite };

const char* to_string(TrajectoryStatus s);

struct Trajectory {
    double dt = 0.0;
    std::vector<PhaseState> states;  // states[0] is the initial state
    std::vector<double> energy;      // |p|^2/2 + V(q) per recorded state
    bool blowup_flag = false;
    double escape_radius = 1e6;
    TrajectoryStatus status = TrajectoryStatus::completed;

    double max_energy_drift() const;
};

double hamiltonian(const Potential& V, const PhaseState& s);

/// Leapfrog (kick-drift-kick) steps; stops early with blowup_flag when
/// |q| exceeds escape_radius, or with non_finite status when the state
/// stops being finite.
Trajectory integrate(const Potential& V, PhaseState s0, double dt, long steps,
                     double escape_radius = 1e6);

struct SymplecticIdentityResult {
    /// max_i |<p_mid, (q_{i+1}-q_i)/dt> - |p_mid|^2|, the discrete proxy for
    /// the symplectic potential pairing theta . X = |p|^2.
    double kinetic_pairing_residual = 0.0;
    /// max_i |E_i - E_0|, the proxy for iota_X dTheta = -dH.
    double energy_residual = 0.0;
};

SymplecticIdentityResult symplectic_identity_check(const Trajectory& traj, const Potential& V);

/// Header t,q1..qm,p1..pm,E; one row per recorded state; 17 significant
/// digits.
void write_csv(const Trajectory& traj, std::ostream& out);

}  // namespace toruswell::wells
