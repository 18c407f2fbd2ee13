#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mrhs::kern {

// dst[i] ^= src[i] for i in [0, nwords). This is the inner loop of every
// bit-packed GF(2) elimination in the project.
using XorRowsFn = void (*)(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);

struct Kernels {
    const char* name;
    XorRowsFn xor_rows;
};

// Portable reference implementation.
const Kernels& scalar();

// Variant chosen for this machine, resolved once at first use. The
// environment variable MRHS_KERNEL (scalar|avx2|neon) forces a specific
// variant; unknown names fall back to scalar.
const Kernels& active();

// Every variant runnable on this CPU, scalar first.
std::vector<Kernels> available();

}  // namespace mrhs::kern
