#pragma once

// Radial shooting oracle for the semilinear (identity-transform) control
//   -v'' - (N-1)/r v' + V0 v = mu v^{q-1} + v^{2*-1},  v'(0) = 0,
// on [0, R]. Standalone: fixed-step RK4 plus bisection on the shooting
// parameter, fully independent of the library's energy/descent machinery.

namespace shooting {

struct Problem {
    int dimension = 3;
    double v0 = 1.0;   // constant potential
    double mu = 10.0;  // subcritical coupling
    double q = 5.0;    // subcritical exponent
    double radius = 40.0;
};

struct Result {
    double beta = 0.0;    // center value v(0) of the separatrix
    double energy = 0.0;  // I evaluated along the shot trajectory
    double energy_coarse = 0.0;  // same at twice the step (Richardson check)
};

// Finds the ground-state separatrix between "crosses zero" and "turns back
// up", then integrates the energy density along it.
Result solve(const Problem& problem);

}  // namespace shooting
