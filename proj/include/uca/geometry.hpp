// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_GEOMETRY_HPP
#define UCA_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "uca/types.hpp"

namespace uca {

// Rigid frame of a single element: origin on the array circle, boresight
// pointing radially outward, vertical axis along global +z.
struct ElementFrame {
    Vec3 origin;
    Vec3 boresight; // local z' axis
    Vec3 vertical;  // local x' axis (polarization reference)
};

// Uniform circular array in the z = 0 plane, centered at the origin.
// Immutable after construction.
class ArrayGeometry {
  public:
    // N elements on a circle of `radius` meters, operating at `frequency` Hz.
    ArrayGeometry(std::size_t element_count, double radius, double frequency);

    std::size_t element_count() const { return n_; }
    double radius() const { return radius_; }
    double frequency() const { return frequency_; }
    double wavelength() const;
    double wavenumber() const;

    // Azimuth phi_n = n * 2*pi / N of element n.
    double element_azimuth(std::size_t n) const;
    const ElementFrame& element_frame(std::size_t n) const;
    const std::vector<ElementFrame>& element_frames() const { return frames_; }

  private:
    std::size_t n_;
    double radius_;
    double frequency_;
    std::vector<ElementFrame> frames_;
};

// phi_n = n * 2*pi / N for n = 0..N-1, strictly increasing in [0, 2*pi).
std::vector<double> element_azimuths(std::size_t n);

// k = 2*pi*f / c with the exact SI speed of light.
double wavenumber(double frequency);

} // namespace uca

#endif
