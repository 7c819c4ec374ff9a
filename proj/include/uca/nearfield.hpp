// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_NEARFIELD_HPP
#define UCA_NEARFIELD_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "uca/farfield.hpp"
#include "uca/oam.hpp"
#include "uca/types.hpp"

namespace uca {

// Planar scan geometry, dimensions in wavelengths (resolved via the scan's
// frequency).  The plane is parallel to the array at z = standoff.
struct PlaneSpec {
    double standoff_wl = 4.0;
    double width_x_wl = 4.0;
    double width_y_wl = 4.0;
    std::size_t points_x = 61;
    std::size_t points_y = 61;

    void validate() const;
};

// Complex co-/cross-polarized samples on the plane; co is the field component
// along the plane's x axis, cross along y.  Row-major: y rows, x columns.
struct NearFieldScan {
    PlaneSpec plane;
    double frequency = 0.0;
    std::vector<cplx> co;
    std::vector<cplx> cross;

    std::size_t index(std::size_t iy, std::size_t ix) const { return iy * plane.points_x + ix; }
    double x_at(std::size_t ix) const;
    double y_at(std::size_t iy) const;
};

// Spherical-wave superposition field at an arbitrary point:
// sum_n w_n * G_n(direction) * exp(-j*k*r_n)/r_n with exact distances r_n.
FieldVec near_field_at(const ArrayGeometry& geometry, const ElementPattern& element,
                       const ExcitationVector& excitation, const Vec3& point);

NearFieldScan synthesize_near_field(const ArrayGeometry& geometry, const ElementPattern& element,
                                    const ExcitationVector& excitation, const PlaneSpec& plane);

// Plane-wave-spectrum transform of the scan to the forward hemisphere.
// Production path: zero-padded FFT (padding_factor, rounded up to a power of
// two) with bilinear spectral interpolation.
FarFieldPattern nf2ff(const NearFieldScan& scan, double step_deg = 1.0,
                      std::size_t padding_factor = 4);

// Reference path: direct evaluation of the aperture Fourier integral at each
// output direction (no padding/interpolation).  Slow; used as an oracle.
FarFieldPattern nf2ff_direct(const NearFieldScan& scan, double step_deg = 1.0);

// CSV x_mm,y_mm,re_co,im_co,re_cross,im_cross plus a JSON sidecar (same path
// with ".json" appended) holding the PlaneSpec and frequency.
void export_scan_csv(const NearFieldScan& scan, const std::string& path);
NearFieldScan import_scan_csv(const std::string& path);

// Best-fit global azimuth rotation aligning ring b onto ring a (e.g. phase
// spirals from measurement vs. synthesis).  Reported, never applied silently.
struct RingAlignment {
    double rotation = 0.0;    // radians: b rotated by this best matches a
    double correlation = 0.0; // normalized peak correlation magnitude, 0..1
};
RingAlignment best_fit_rotation(const RingSamples& a, const RingSamples& b);

} // namespace uca

#endif
