#pragma once

#include <cstddef>
#include <span>

#include "gtsim/grid.hpp"

namespace gt::fft {

/// In-place unnormalized multidimensional DFT over a row-major array.
/// sign = -1 is the forward transform, +1 the backward one.
///
/// Plans are created once per (shape, sign) and shared; execution is safe
/// from several threads on distinct buffers.
void transform(std::span<cplx> data, std::span<const std::size_t> shape, int sign);

inline void forward(std::span<cplx> data, std::span<const std::size_t> shape) {
  transform(data, shape, -1);
}
inline void backward(std::span<cplx> data, std::span<const std::size_t> shape) {
  transform(data, shape, +1);
}

}  // namespace gt::fft
