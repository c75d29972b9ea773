#pragma once

#include <cstdint>
#include <string>

#include "hybesov/euler.hpp"
#include "hybesov/pme.hpp"

namespace hybesov {

// Nearest retained grid wavenumber index (along axis 0) to a target |ξ|, at least 1.
int nearest_mode(const Grid& g, double xi);

// a·cos(ξ_k x) (or sin) along axis 0.
GridField single_mode(const Grid& g, int k, double amplitude, bool sine = false);

// Random real field with modes in the band xi_lo ≤ |ξ| ≤ xi_hi, scaled to
// max|f| = amplitude. Coefficients are drawn in a canonical mode order
// (by |k|, then lexicographically), so a seed defines the same function on
// any grid that resolves the band.
GridField random_band_limited(const Grid& g, double xi_lo, double xi_hi, std::uint64_t seed, double amplitude);

enum class Placement { threshold, fixed };

Placement parse_placement(const std::string& s);
std::string to_string(Placement p);

struct DataSpec {
    std::string family = "well-prepared";  // well-prepared | generic | perturbed
    double amplitude = 1e-2;
    std::uint64_t seed = 1;
    Placement placement = Placement::threshold;
    double theta = 0.4;      // ξ0 = θ/ε for threshold placement
    double xi_fixed = 2.0;   // ξ0 for fixed placement
    double p = 6.0;          // Besov exponent used to keep ‖c0‖_{Ḃ^{d/p}_{p,1}} fixed across ε
    double eps_ref = 0.2;    // ε at which `amplitude` applies
};

// Data wavenumber ξ0 for a given ε.
double data_wavenumber(const Grid& g, const DataSpec& spec, double eps);

// c0 for the sweep: a single cosine mode at ξ0(ε). With threshold placement its
// amplitude is set so that ‖c0‖_{Ḃ^{d/p}_{p,1}} equals the value at eps_ref.
GridField sweep_c0(const Grid& g, const DataSpec& spec, double eps);

// Families: well-prepared (𝒲0 = 0), generic (random c0 and independent random v0),
// and perturbed (well-prepared Euler data; the companion PME datum differs, see
// perturbed_pme_datum).
EulerState initial_state(const Grid& g, const DataSpec& spec, const EulerParams& params);

// 𝒩0 = ρ0 + a sine mode at ξ0 calibrated so ‖𝒩0 − ρ0‖_{Ḃ^{d/p−δ}_{p,1}} = size.
PMEState perturbed_pme_datum(const GridField& rho0, double xi0, double delta, double p, double size);

// Horizon: ln(1/tol)/λ₋ of the slowest data mode, capped at T_max.
double decay_horizon(const GridField& c0, const EulerParams& params, double tol = 1e-3, double T_max = 2.0);

}  // namespace hybesov
