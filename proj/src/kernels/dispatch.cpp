#include "phqm/kernels.hpp"

namespace phqm::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool avx2_available() {
#if defined(PHQM_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

const KernelTable& table_for(Isa isa) {
    static const KernelTable scalar_table{Isa::scalar, &scalar::dotc, &scalar::dotu,
                                          &scalar::gemv, &scalar::gemm};
    static const KernelTable avx2_table{Isa::avx2, &avx2::dotc, &avx2::dotu,
                                        &avx2::gemv, &avx2::gemm};
    if (isa == Isa::avx2 && avx2_available()) return avx2_table;
    return scalar_table;
}

const KernelTable& active() {
    static const KernelTable& table = table_for(avx2_available() ? Isa::avx2 : Isa::scalar);
    return table;
}

}  // namespace phqm::kernels
