#pragma once

#include <utility>
#include <vector>

namespace ionnet {

// N ions in a linear harmonic trap. Frequencies are stored as ratios to the
// axial center-of-mass frequency; positions are in units of the Coulomb
// length d = (e^2 / m omega_a^2)^(1/3), so eta_lambda = |k| d carries the
// optical scale. The per-mode Lamb-Dicke parameters and thermal occupations
// feed the Debye-Waller factors; doppler_crystal() fills them for the
// Doppler-cooled case.
struct IonCrystal {
    int n_ions = 1;
    double omega_axial = 1.0;       // axial COM angular frequency (sets units)
    double omega_transverse = 10.0; // transverse COM, same units
    double eta_lambda = 0.0;        // |k| d
    std::vector<double> lamb_dicke_axial;       // eta_a^m, one per mode
    std::vector<double> lamb_dicke_transverse;  // eta_t^m
    std::vector<double> nbar_axial;             // nbar_a^m (>= -1/2)
    std::vector<double> nbar_transverse;
};

struct EquilibriumSolution {
    std::vector<double> positions;  // ascending, units of d, sum zero
};

struct NormalModes {
    // Frequencies in units of the axial COM frequency, ascending. Matrix
    // row m is the orthonormal eigenvector of mode m over ion indices.
    std::vector<double> axial_freqs;
    std::vector<double> transverse_freqs;
    std::vector<std::vector<double>> axial_vectors;
    std::vector<std::vector<double>> transverse_vectors;
};

// Newton iteration on the harmonic + Coulomb potential from a
// uniform-spacing guess; deterministic, residual below 1e-12.
EquilibriumSolution equilibrium_positions(int n);

// Eigen-decomposition of the dimensionless Hessians at equilibrium. The
// lowest axial mode is the center of mass at exactly the trap frequency; an
// imaginary transverse frequency (zig-zag instability) is an error naming
// the offending mode.
NormalModes normal_modes(const IonCrystal& crystal);

// In-plane elastic scattering geometry. The crystal axis is x, the in-plane
// transverse direction y, the quantization axis out of plane; angles are
// measured from x.
struct ScatterGeometry {
    double theta_in = 0.0;
    double theta_out = 0.0;
};

// Precomputed evaluator for the N-ion elastic cross-section: the double sum
// over ion pairs of lattice phase factors times per-mode Debye-Waller
// exponentials. raw() is N^2 in the forward direction; normalized() divides
// that out.
class ScatterPattern {
public:
    explicit ScatterPattern(const IonCrystal& crystal);
    double raw(const ScatterGeometry& geom) const;
    double normalized(const ScatterGeometry& geom) const;
    int n_ions() const { return n_; }

private:
    struct PairTerm {
        double phase_coeff;       // eta_lambda * (U_p - U_p')
        double axial_coeff;       // sum_m (dA eta_a^m)^2 (nbar+1/2)
        double transverse_coeff;  // sum_m (dT eta_t^m)^2 (nbar+1/2)
    };
    int n_;
    std::vector<PairTerm> pairs_;
};

// One-shot evaluation (builds the pattern internally).
double cross_section(const IonCrystal& crystal, const ScatterGeometry& geom,
                     bool normalized = false);

// Normalized intensity sampled on `grid` angles theta_out in [-pi, pi).
std::vector<std::pair<double, double>> radiation_pattern(const IonCrystal& crystal,
                                                         double theta_in, int grid);

// Doppler-limit parameter bundle reproducing the reference radiation
// pattern: thermal occupations nbar_m = Gamma_eff / (2 omega_m) with the
// scale fixed by s_norm = sqrt(hbar k^2 Gamma / (2 m omega_t^2)) at the
// transverse COM frequency. linewidth_ratio = Gamma_eff / omega_t fixes the
// split between eta and nbar; the pattern is nearly insensitive to it.
IonCrystal doppler_crystal(int n, double eta_lambda, double anisotropy,
                           double s_norm = 1.0, double linewidth_ratio = 48.0);

// Fidelity of the two-ion heralded state against recoil in an isotropic
// trap: integral of e^{-tau} e^{-4 eta^2 (nbar+1/2)[1 - cos(chi) cos(nu
// tau/Gamma)]}, Gauss-Laguerre to rel_tol. chi is the angle between
// excitation beam and emission direction.
double cabrillo_fidelity(double eta, double nbar, double nu_over_gamma, double chi,
                         double rel_tol = 1e-8);

// Weak-confinement closed form e^{-4 eta^2 (nbar+1/2)(1-cos chi)}.
double cabrillo_fidelity_weak(double eta, double nbar, double chi);

struct SpotMetrics {
    double delta_theta;    // half-width of the forward spot, radians
    double fraction;       // in-plane photon fraction inside the spot
    double witness_floor;  // (N-1)/N fidelity bound
};

// Forward-spot size at the witness threshold f = (N-1)/N:
// 2 delta_theta = 2 * 1.7 (1-f)^{1/4} eta_lambda^{-1/2} N^{-0.21};
// fraction = 0.55 eta_lambda^{-1/2} N^{-0.46}.
SpotMetrics spot_metrics(int n, double eta_lambda);

// Sum over ion pairs of squared equilibrium separations, units d^2.
double pairwise_spread(const EquilibriumSolution& eq);

struct SpreadFit {
    double prefactor;
    double exponent;
    double r_squared;
};

// Log-log least-squares fit of the pairwise spread against N.
SpreadFit spread_fit(const std::vector<int>& n_values);

}  // namespace ionnet
