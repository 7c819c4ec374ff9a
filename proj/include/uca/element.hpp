// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_ELEMENT_HPP
#define UCA_ELEMENT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "uca/types.hpp"

namespace uca {

enum class ElementVariant { isotropic, cos_power, analytic_patch, tabulated };

// Polarized field components in the element's local spherical basis
// (theta' from the boresight axis, phi' = 0 along the vertical axis).
struct LocalField {
    cplx e_theta{};
    cplx e_phi{};
};

// Polarized directional gain of a single radiator.  Immutable after
// construction; evaluation is pure.
struct ElementPattern {
    ElementVariant variant = ElementVariant::isotropic;

    // cos-power / analytic-patch: principal-plane POWER exponents, i.e. the
    // co-polarized power follows cos^q(alpha) so that cos^q(hpbw/2) = 1/2.
    double q_e = 0.0;
    double q_h = 0.0;
    // Floor of the radiated power relative to boresight (models the finite
    // backlobe; avoids hard zeros in directivity integrals).
    double floor_power = 0.01;

    // analytic-patch only:
    double cross_pol = 0.08;         // Ludwig-III cross-pol mixing coefficient
    double q_azimuth = 7.0;          // in-plane exponent of the outward lobe
    double up_gain = 0.80;           // amplitude of the broadside (+z') lobe
    double up_exponent_scale = 5.0;  // exponent multiplier of the broadside lobe

    // tabulated only: regular local-frame grid, row-major in theta' then phi'.
    std::vector<double> tab_theta; // radians, ascending, covers [0, pi]
    std::vector<double> tab_phi;   // radians, ascending, covers [0, 2*pi)
    std::vector<cplx> tab_e_theta;
    std::vector<cplx> tab_e_phi;

    static ElementPattern isotropic();
    static ElementPattern cos_power(double q_e, double q_h, double floor_power = 0.01);
    static ElementPattern analytic_patch(double q_e, double q_h);
};

// Evaluate toward a unit direction expressed in the element's local frame
// (x = vertical/polarization axis, z = boresight axis).
LocalField eval_element(const ElementPattern& pattern, const Vec3& local_direction);

// Exponents q = ln(1/2) / ln(cos(hpbw/2)) per principal plane.
ElementPattern fit_cos_power(double hpbw_e_deg, double hpbw_h_deg);

// Analytic patch with exponents fitted to the principal-plane beamwidths and
// the default polarization/backlobe parameters.
ElementPattern fit_analytic_patch(double hpbw_e_deg, double hpbw_h_deg);

// Build a tabulated pattern from a regular grid (degrees in, radians stored).
ElementPattern import_tabulated(const std::vector<double>& theta_deg,
                                const std::vector<double>& phi_deg,
                                const std::vector<cplx>& e_theta,
                                const std::vector<cplx>& e_phi);

// CSV exchange: header theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi,
// row-major in theta then phi.
ElementPattern load_tabulated_csv(const std::string& path);
void save_tabulated_csv(const ElementPattern& pattern, const std::string& path);

} // namespace uca

#endif
