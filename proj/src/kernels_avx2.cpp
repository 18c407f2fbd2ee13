#include "mrhs/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace mrhs::kern {

namespace {

__attribute__((target("avx2"))) void xor_rows_avx2(std::uint64_t* dst, const std::uint64_t* src,
                                                   std::size_t nwords) {
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
    }
    for (; i < nwords; ++i) dst[i] ^= src[i];
}

const Kernels kAvx2{"avx2", &xor_rows_avx2};

}  // namespace

const Kernels* avx2_kernels() { return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr; }

}  // namespace mrhs::kern

#endif
