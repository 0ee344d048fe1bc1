#pragma once

#include <cstddef>

#include "modn/common.hpp"

namespace modn::kernels {

// Inner loops of every transform and exponential sum reduce to accumulating
// table entries addressed by phase indices: sum_i w[i] * roots[idx[i]].
// A scalar reference implementation always exists; an AVX2 gather variant is
// selected at runtime when the CPU supports it. MODN_KERNEL=scalar|avx2
// overrides the choice; force() overrides everything (used by the
// equivalence tests).

enum class Impl { Scalar, Avx2 };

Impl active();
void force(Impl impl);
bool avx2_available();

cd phase_sum(const u32* idx, std::size_t count, const cd* roots);
cd weighted_phase_sum(const cd* w, const u32* idx, std::size_t count, const cd* roots);

cd phase_sum_scalar(const u32* idx, std::size_t count, const cd* roots);
cd weighted_phase_sum_scalar(const cd* w, const u32* idx, std::size_t count, const cd* roots);

#if defined(__x86_64__)
cd phase_sum_avx2(const u32* idx, std::size_t count, const cd* roots);
cd weighted_phase_sum_avx2(const cd* w, const u32* idx, std::size_t count, const cd* roots);
#endif

}  // namespace modn::kernels
