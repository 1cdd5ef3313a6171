#pragma once

namespace qss {

// Default tolerances used by validation and iterative routines. Callers that
// need looser or tighter behaviour pass their own record.
struct NumericPolicy {
  double state_norm = 1e-12;      // | sum |amp|^2 - 1 |
  double hermiticity = 1e-12;     // density matrix self-adjointness
  double trace_one = 1e-12;       // | tr(rho) - 1 |
  double psd_floor = -1e-10;      // smallest admissible eigenvalue of rho
  double unit_vector = 1e-9;      // | |a| - 1 | for Bloch vectors
  double obs_hermiticity = 1e-10; // observables passed to expectation()
  double imag_residue = 1e-10;    // imaginary part discarded from Tr(rho*obs)
  double symmetry = 1e-10;        // 3x3 eigensolver input check
  double jacobi_convergence = 1e-14;
  double eig_reconstruction = 1e-9;
  double scalar_identity = 1e-9;  // residual for "W is proportional to 1"
  double bell_cap_slack = 1e-6;   // S_M <= 2^{(M+1)/2} + slack
};

}  // namespace qss
