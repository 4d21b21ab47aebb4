#pragma once

#include "mzs/grid.hpp"
#include "mzs/time_integrals.hpp"

#include <string>
#include <vector>

namespace mzs::bench {

struct Problem {
  Wavefunction u0;
  PotentialModel pot;
};

// Double well V(x) = x^4/5 - 2 x^2 driven by the chirped pulse
// f(t) = 10 exp(-10 (t-1)^2) sin(500 (t-1)^4 + 10) coupled through f(t) x,
// on [-5, 5]; the initial state is a normalized Gaussian of width
// sqrt(delta), delta = 1e-2, sitting in the left well at x0 = -2.5.
Problem preset_double_well_chirp(double eps, Index n_grid);

// Same double well with the laser off (time-independent potential).
Problem preset_double_well_static(double eps, Index n_grid);

// Smooth, oscillation-free V(x,t) = sin(x)(1+t) on [-pi, pi]; the initial
// state is a normalized semiclassical coherent state.
Problem preset_smooth(double eps, Index n_grid);

// V = 0 on [-pi, pi]; exactly solvable (free flight).
Problem preset_free(double eps, Index n_grid);

Problem make_preset(const std::string& name, double eps, Index n_grid);
const std::vector<std::string>& preset_names();

// The chirp amplitude f(t) alone (used in tests).
double chirp_f(double t);

// Exact free evolution by time dt (spectral phases), for the V = 0 preset.
Wavefunction free_evolution(const Wavefunction& u0, double eps, double dt);

} // namespace mzs::bench
