#pragma once

namespace ionnet {

inline constexpr double kSecondsPerYear = 31'557'600.0;  // Julian year

// P_ap = p_e p_c p_t.
double atom_photon_success(double p_e, double p_c, double p_t);

// Mean time to a heralded success at repetition period tau_rep: tau_rep / P
// (mean of the geometric attempt count, which the asymptotic ~1/P statement
// matches exactly).
double deterministic_gate_time(double tau_rep, double p);

// t_N = (tau_rep / P) log2(N) for entanglement swapping over N nodes.
double repeater_time(int n_nodes, double tau_rep, double p);

// Time to build an n-qubit 2D cluster with gate success P and overall
// failure budget epsilon:
// tau_rep [ (1/P)^{log2(4/P-3)} + (1/P) log2(4(ln(2n/eps)-1)/P)
//           + (1/P) ln(2n/eps) ].
// n is a scale parameter and need not be integral.
double cluster_time(double n, double p, double epsilon, double tau_rep);

// Space-like separation floor: c * t_detect.
double bell_separation(double t_detect);

double seconds_to_years(double seconds);

}  // namespace ionnet
