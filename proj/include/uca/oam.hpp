// SPDX-License-Identifier: Apache-2.0

#ifndef UCA_OAM_HPP
#define UCA_OAM_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "uca/farfield.hpp"
#include "uca/types.hpp"

namespace uca {

enum class RingComponent { e_theta, e_phi, total };

// M complex field samples on a constant-theta ring at equally spaced azimuths
// phi_q = q * 2*pi / M.
struct RingSamples {
    double theta = 0.0;
    RingComponent component = RingComponent::e_theta;
    std::vector<cplx> samples;
};

// Azimuthal Fourier coefficients a_q of a ring, q centered on zero.
struct OamSpectrum {
    int q_min = 0; // coefficients run q_min .. q_min + coefficients.size() - 1
    std::vector<cplx> coefficients;

    cplx at(int q) const;
    // |a_l|^2 / sum_q |a_q|^2.
    double purity(int l) const;
};

// Sample a synthesized pattern (via its interpolation) on a ring.
RingSamples ring_samples(const FarFieldPattern& pattern, double theta, std::size_t m,
                         RingComponent component);

// Sample an analytic field function phi -> value on a ring.
RingSamples ring_samples(const std::function<cplx(double)>& field, double theta, std::size_t m,
                         RingComponent component = RingComponent::total);

// a_q = (1/M) * sum_p samples[p] * exp(-j*q*phi_p) for q in [-floor(M/2), ...].
OamSpectrum azimuthal_spectrum(const RingSamples& ring);

// (1/2*pi) * sum of wrapped phase increments around the ring.
int winding_number(const RingSamples& ring);

// Row l = normalized ring power spectrum of the field excited with
// oam_weights(N, l), evaluated at the columns' azimuthal indices.
struct CrosstalkMatrix {
    std::vector<int> l_set;
    std::vector<std::vector<double>> rows; // rows[i][j]: excite l_set[i], read l_set[j]
};

CrosstalkMatrix crosstalk_matrix(const ArrayGeometry& geometry, const ElementPattern& element,
                                 const std::vector<int>& l_set, double theta_ring, std::size_t m);

// CSV with row/column headers l=<int>; values are linear power fractions.
void export_crosstalk_csv(const CrosstalkMatrix& matrix, const std::string& path);

} // namespace uca

#endif
