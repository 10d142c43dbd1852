#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qcorr/kernels.hpp"

namespace qcorr::kernels {

#ifdef QCORR_AVX2_TU
const Ops* avx2_ops_impl();
#endif

const Ops* avx2_ops() {
#ifdef QCORR_AVX2_TU
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return avx2_ops_impl();
#endif
    return nullptr;
}

const Ops& active() {
    static const Ops& picked = []() -> const Ops& {
        const char* env = std::getenv("QCORR_KERNELS");
        const std::string want = env ? env : "";
        if (want == "scalar") return scalar_ops();
        if (want == "avx2") {
            const Ops* ops = avx2_ops();
            if (!ops) throw std::runtime_error("QCORR_KERNELS=avx2 but AVX2 is unavailable");
            return *ops;
        }
        const Ops* ops = avx2_ops();
        return ops ? *ops : scalar_ops();
    }();
    return picked;
}

}  // namespace qcorr::kernels
