#include "mrhs/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace mrhs::kern {

namespace {

void xor_rows_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) dst[i] ^= src[i];
}

const Kernels kScalar{"scalar", &xor_rows_scalar};

}  // namespace

const Kernels& scalar() { return kScalar; }

#if defined(__x86_64__) || defined(__i386__)
const Kernels* avx2_kernels();
#endif
#if defined(__aarch64__)
const Kernels* neon_kernels();
#endif

std::vector<Kernels> available() {
    std::vector<Kernels> out{kScalar};
#if defined(__x86_64__) || defined(__i386__)
    if (const Kernels* k = avx2_kernels()) out.push_back(*k);
#endif
#if defined(__aarch64__)
    if (const Kernels* k = neon_kernels()) out.push_back(*k);
#endif
    return out;
}

const Kernels& active() {
    static const Kernels chosen = [] {
        std::vector<Kernels> all = available();
        if (const char* force = std::getenv("MRHS_KERNEL")) {
            for (const Kernels& k : all)
                if (std::strcmp(k.name, force) == 0) return k;
            return all.front();
        }
        return all.back();
    }();
    return chosen;
}

}  // namespace mrhs::kern
