// SPDX-License-Identifier: Apache-2.0

#include "uca/geometry.hpp"

#include <string>

#include "uca/errors.hpp"

namespace uca {

std::vector<double> element_azimuths(std::size_t n) {
    if (n == 0)
        throw invalid_argument("element_azimuths: element count must be at least 1");
    std::vector<double> az(n);
    for (std::size_t i = 0; i < n; ++i)
        az[i] = static_cast<double>(i) * 2.0 * kPi / static_cast<double>(n);
    return az;
}

double wavenumber(double frequency) {
    if (!(frequency > 0.0))
        throw invalid_argument("wavenumber: frequency must be positive");
    return 2.0 * kPi * frequency / kSpeedOfLight;
}

ArrayGeometry::ArrayGeometry(std::size_t element_count, double radius, double frequency)
    : n_(element_count), radius_(radius), frequency_(frequency) {
    if (n_ == 0)
        throw invalid_argument("ArrayGeometry: element count must be at least 1");
    if (!(radius > 0.0))
        throw invalid_argument("ArrayGeometry: radius must be positive");
    if (!(frequency > 0.0))
        throw invalid_argument("ArrayGeometry: frequency must be positive");
    frames_.resize(n_);
    const std::vector<double> az = element_azimuths(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const double c = std::cos(az[i]);
        const double s = std::sin(az[i]);
        frames_[i].origin = {radius_ * c, radius_ * s, 0.0};
        frames_[i].boresight = {c, s, 0.0};
        frames_[i].vertical = {0.0, 0.0, 1.0};
    }
}

double ArrayGeometry::wavelength() const { return kSpeedOfLight / frequency_; }

double ArrayGeometry::wavenumber() const { return uca::wavenumber(frequency_); }

double ArrayGeometry::element_azimuth(std::size_t n) const {
    if (n >= n_)
        throw invalid_argument("element_azimuth: index " + std::to_string(n) +
                               " out of range for N=" + std::to_string(n_));
    return static_cast<double>(n) * 2.0 * kPi / static_cast<double>(n_);
}

const ElementFrame& ArrayGeometry::element_frame(std::size_t n) const {
    if (n >= n_)
        throw invalid_argument("element_frame: index " + std::to_string(n) +
                               " out of range for N=" + std::to_string(n_));
    return frames_[n];
}

} // namespace uca
