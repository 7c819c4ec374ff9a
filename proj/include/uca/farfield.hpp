// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_FARFIELD_HPP
#define UCA_FARFIELD_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "uca/element.hpp"
#include "uca/excitation.hpp"
#include "uca/geometry.hpp"
#include "uca/types.hpp"

namespace uca {

// Sorted direction axes; phi excludes the duplicate 2*pi endpoint.
struct DirectionGrid {
    std::vector<double> theta; // radians, ascending, within [0, pi]
    std::vector<double> phi;   // radians, ascending, within [0, 2*pi)

    // Full sphere at uniform step (degrees): theta 0..180, phi 0..360-step.
    static DirectionGrid regular(double step_deg);
    // Forward hemisphere: theta 0..90, phi 0..360-step.
    static DirectionGrid forward_hemisphere(double step_deg);

    std::size_t rows() const { return theta.size(); }
    std::size_t cols() const { return phi.size(); }
    std::size_t index(std::size_t i, std::size_t j) const { return i * phi.size() + j; }
    bool covers_full_sphere() const;
    void validate() const;
};

// Complex E_theta/E_phi samples (global spherical basis) on a grid.
struct FarFieldPattern {
    DirectionGrid grid;
    std::vector<cplx> e_theta; // row-major, theta-major
    std::vector<cplx> e_phi;
    std::string excitation_desc;
};

// Directivity field in dBi plus the peak and its direction.
struct Directivity {
    std::vector<double> dbi;
    double peak_dbi = 0.0;
    std::size_t peak_itheta = 0;
    std::size_t peak_iphi = 0;
    double peak_theta = 0.0; // radians
    double peak_phi = 0.0;   // radians
};

// Azimuth cut at fixed theta (or any 1-D angular sweep when circular=false).
struct Cut {
    double theta = 0.0;      // radians, cut latitude (azimuth cuts)
    std::vector<double> phi; // radians, sample angles
    std::vector<cplx> e_theta;
    std::vector<cplx> e_phi;
    bool circular = true;
};

struct Lobe {
    double center_deg = 0.0; // in [0, 360)
    double level_db = 0.0;   // relative to the cut peak
    double width_deg = 0.0;  // -3 dB (half-power) width
};

// Eq-style ring-array sum: sum_n w_n * exp(j*k*R*sin(theta)*cos(phi - phi_n)),
// element index ascending.
cplx array_factor(const ArrayGeometry& geometry, const ExcitationVector& excitation, double theta,
                  double phi);

// Same sum via precomputed per-element tables (the hot-loop path used by the
// grid synthesizer); agrees with array_factor to floating-point rounding.
class ArrayFactorEvaluator {
  public:
    ArrayFactorEvaluator(const ArrayGeometry& geometry, const ExcitationVector& excitation);
    cplx operator()(double theta, double phi) const;

  private:
    double kr_;
    std::vector<cplx> weights_;
    std::vector<double> cos_phin_, sin_phin_;
};

// Evaluate the array pattern on a grid.  With the isotropic element this
// reduces exactly to array_factor in the e_theta channel.
FarFieldPattern synthesize_pattern(const ArrayGeometry& geometry, const ElementPattern& element,
                                   const ExcitationVector& excitation, const DirectionGrid& grid);

// Single-direction global-frame field of one element (geometry frame n),
// used by both far-field synthesis and near-field sampling.
FieldVec element_field_global(const ElementPattern& element, const ElementFrame& frame,
                              const Vec3& direction);

// Far field at a single direction: (E_theta, E_phi) in the global basis.
// Equals the corresponding synthesize_pattern node.
struct FieldSample {
    cplx e_theta;
    cplx e_phi;
};
FieldSample field_at(const ArrayGeometry& geometry, const ElementPattern& element,
                     const ExcitationVector& excitation, double theta, double phi);

// D = 4*pi*U/P_rad, trapezoidal quadrature with sin(theta) weight; requires a
// full-sphere grid with uniform phi.
Directivity directivity(const FarFieldPattern& pattern);

// Radiated power of the covered grid region (same quadrature as directivity).
double radiated_power(const FarFieldPattern& pattern);

// Full 0..2*pi cut at fixed theta, linear interpolation between theta rows.
Cut azimuth_cut(const FarFieldPattern& pattern, double theta);

// Local maxima above (peak - threshold_db), merged within one grid step,
// sorted by level descending.
std::vector<Lobe> find_lobes(const Cut& cut, double threshold_db);

// Half-power width around the unique global maximum of the cut, degrees.
double hpbw(const Cut& cut);

// new(theta, phi) = old(theta, phi - delta_phi); pure column re-indexing when
// delta_phi is a multiple of the phi step.
FarFieldPattern rotate_pattern(const FarFieldPattern& pattern, double delta_phi);

// CSV: theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi,directivity_dbi.
// For partial-sphere grids the last column normalizes over the covered region.
void export_pattern_csv(const FarFieldPattern& pattern, const std::string& path);
// JSON: grid axes plus flattened arrays.
void export_pattern_json(const FarFieldPattern& pattern, const std::string& path);
// CSV: phi_deg,mag_db,phase_deg (magnitude relative to the cut peak; phase of
// the dominant polarization component).
void export_cut_csv(const Cut& cut, const std::string& path);

} // namespace uca

#endif
