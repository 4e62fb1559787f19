#pragma once

#include <string>

namespace nlslab {

/// Library version, "major.minor.patch".
std::string version();

/// Version string reported by the linked FFT library.
std::string fft_library_version();

}  // namespace nlslab
