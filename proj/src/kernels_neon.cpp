#include "mrhs/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace mrhs::kern {

namespace {

void xor_rows_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 2 <= nwords; i += 2) {
        uint64x2_t a = vld1q_u64(dst + i);
        uint64x2_t b = vld1q_u64(src + i);
        vst1q_u64(dst + i, veorq_u64(a, b));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

const Kernels kNeon{"neon", &xor_rows_neon};

}  // namespace

const Kernels* neon_kernels() { return &kNeon; }

}  // namespace mrhs::kern

#endif
