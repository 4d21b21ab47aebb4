#pragma once

#include "mzs/grid.hpp"

#include <cstdint>

namespace mzs {

// Thin wrapper over FFTW's 1-D complex transforms.
//
// Conventions (fixed project-wide):
//   forward:  (F u)[m] = sum_j u[j] exp(-2*pi*i*j*m/n)   (unnormalized)
//   inverse:  (Finv U)[j] = (1/n) sum_m U[m] exp(+2*pi*i*j*m/n)
//
// Plans are cached per size and shared between threads; plan creation is
// serialized (FFTW requirement), execution uses the re-entrant new-array
// interface. Plans are created FFTW_ESTIMATE|FFTW_UNALIGNED so results do
// not depend on buffer alignment or planning-time measurements.
ArrayXcd fft_forward(const ArrayXcd& u);
ArrayXcd fft_inverse(const ArrayXcd& U);

// Number of transforms executed so far on this thread (forward + inverse).
// Used by tests to pin the transform count of operator applications.
std::uint64_t fft_call_count();

} // namespace mzs
