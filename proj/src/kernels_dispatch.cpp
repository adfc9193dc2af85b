#include "dfm/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dfm::kern {

namespace {

const Kernels& pick() {
    const char* want = std::getenv("DFM_SIMD");
    if (want != nullptr && std::strcmp(want, "scalar") == 0) return scalar::table();
#if defined(__x86_64__) || defined(_M_X64)
    if (want != nullptr && std::strcmp(want, "avx2") == 0) return avx2::table();
    if ((want == nullptr || std::strcmp(want, "auto") == 0) && avx2::supported())
        return avx2::table();
#endif
#if defined(__aarch64__)
    if (want != nullptr && std::strcmp(want, "neon") == 0) return neon::table();
    if ((want == nullptr || std::strcmp(want, "auto") == 0) && neon::supported())
        return neon::table();
#endif
    return scalar::table();
}

}  // namespace

const Kernels& active() {
    static const Kernels& k = pick();
    return k;
}

}  // namespace dfm::kern
