#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ringdeco/model.hpp"

namespace ringdeco {

// Cat state (|alpha> + |beta>)/Xi of the centre of mass. gamma enters the field as gamma/N^4.
struct CatParameters {
    std::complex<double> alpha;
    std::complex<double> beta;
    double sigma = 1;
    double gamma = 0;
    double n = 10;

    // gamma from the ring: 9 N hbar^4 / (128 sigma^4 m^4 c^4), m the particle mass.
    static CatParameters from_physics(const RingConfig& cfg, const CatState& state);

    double scaled_gamma() const { return gamma / (n * n * n * n); }
    void validate() const;
};

double default_gamma(const RingConfig& cfg, double sigma);

// <P|alpha> = (2 sigma^2/pi hbar^2)^{1/4} exp(-(sigma/hbar)^2 (P - hbar Im a/sigma)^2)
//             exp(-2i (sigma/hbar) Re a P).
std::complex<double> coherent_momentum_amplitude(double p, std::complex<double> alpha, double sigma,
                                                 double hbar);

// int dP <alpha|P><P|beta> for the amplitudes above.
std::complex<double> coherent_overlap(std::complex<double> alpha, std::complex<double> beta);

// |Xi|^2 = 2 + 2 Re <alpha|beta>.
double normalization_sq(std::complex<double> alpha, std::complex<double> beta);

struct WignerComponents {
    double alpha = 0;
    double beta = 0;
    double interference = 0;

    double total() const { return alpha + beta + interference; }
};

// Direct and interference terms at CM momentum p and position q; time enters through
// 1 - J0(4 omega t) with omega = cfg.coupling.
WignerComponents wigner_components(double p, double q, double t, const CatParameters& params,
                                   const RingConfig& cfg);

struct GridSpec {
    int np = 512;
    int nq = 512;
    double p_min = 0;
    double p_max = 1;
    double q_min = 0;
    double q_max = 1;
};

// Box spanning both packets plus `widths` packet widths on each side.
GridSpec default_grid(const CatParameters& params, const RingConfig& cfg, int resolution = 512,
                      double widths = 6.0);

struct WignerField {
    std::vector<double> p_grid;
    std::vector<double> q_grid;
    // Row-major with p as the row index: value(ip, iq) = w[ip * q_grid.size() + iq].
    std::vector<double> w_alpha;
    std::vector<double> w_beta;
    std::vector<double> w_interference;
    std::vector<double> w_total;
    double time = 0;
    double boundary = 0;      // boundary_mass of w_total
    bool tails_grow = false;  // widening raised the boundary mass; the box is the best found

    std::size_t index(std::size_t ip, std::size_t iq) const { return ip * q_grid.size() + iq; }
};

WignerField evaluate_field(const GridSpec& grid, double t, const CatParameters& params, const RingConfig& cfg);

// Default grid, widened by two packet widths per side while the boundary mass exceeds 1e-8.
// When widening raises the boundary mass the previous box is returned with tails_grow set;
// otherwise failing to reach 1e-8 throws NumericError.
WignerField wigner_field(double t, const CatParameters& params, const RingConfig& cfg, int resolution = 512);

inline constexpr double boundary_mass_limit = 1e-8;

// Trapezoid integral of one component over the grid.
double field_integral(const WignerField& field, const std::vector<double>& values);

// |W_total| integrated over the outermost ring of cells.
double boundary_mass(const WignerField& field);

struct GridPeak {
    double p = 0;
    double q = 0;
    double value = 0;
    std::size_t ip = 0;
    std::size_t iq = 0;
};

GridPeak grid_maximum(const WignerField& field, const std::vector<double>& values);

struct StabilityReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Conditions for stationary peaks, with "<<" read as a factor `strictness`.
StabilityReport peak_stability(double t, const CatParameters& params, const RingConfig& cfg,
                               double strictness = 10.0);

struct PeakValues {
    double alpha = 0;
    double beta = 0;
    double interference = 0;
    StabilityReport stability;
};

PeakValues wigner_peaks(double t, const CatParameters& params, const RingConfig& cfg);

// 1/2 W^I_peak / sqrt(W^alpha_peak W^beta_peak).
double fringe_visibility(double t, const CatParameters& params, const RingConfig& cfg);

double visibility_ratio(double t, const CatParameters& params, const RingConfig& cfg);

struct VisibilityLimits {
    double small_t_rate = 0;      // coefficient of t^2 in -ln F(t)/F(0), 1/s^2
    double plateau_exponent = 0;  // -ln F(inf)/F(0)
    // The same limits written through dE_ab / (M c^2); equal to the above when gamma
    // takes its default value.
    double energy_gap_ratio = 0;
    double energy_form_rate = 0;
    double energy_form_plateau = 0;
};

VisibilityLimits visibility_limits(const CatParameters& params, const RingConfig& cfg);

}  // namespace ringdeco
