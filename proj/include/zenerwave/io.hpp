#ifndef ZENERWAVE_IO_HPP
#define ZENERWAVE_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "zenerwave/inversion.hpp"
#include "zenerwave/modulus.hpp"
#include "zenerwave/simulate.hpp"

namespace zenerwave {

inline constexpr const char* kLibraryVersion = "0.1.0";

// CSV emitters. All floating point is written with 17 significant digits so
// round-trips are bit-faithful.

/// Header: omega,re_E,im_E,re_M,im_M
std::string frequency_response_csv(const FrequencyResponse& fr);

/// Header: x,t,K
std::string kernel_grid_csv(const KernelGrid& grid);

/// Plot-data layout: one block per x, blank-line separated, `t K` rows.
std::string kernel_grid_plotdata(const KernelGrid& grid);

/// Header: x,t,u
std::string wave_field_csv(const WaveField& field);

std::string format_double(double v);

/// Writes via a temp file in the same directory followed by rename.
void write_file_atomic(const std::string& path, std::string_view content);

/// FNV-1a 64-bit content digest, hex-encoded (manifest entries).
std::uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

}  // namespace zenerwave

#endif
