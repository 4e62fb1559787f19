#pragma once

#include <span>

#include "nlslab/field.hpp"

namespace nlslab::detail {

/// In-place unitary DFT over the grid's lattice. forward uses the e^{-i k x}
/// kernel. Plans are cached per thread.
void fft_inplace(const Grid& grid, std::span<cplx> data, bool forward);

}  // namespace nlslab::detail
