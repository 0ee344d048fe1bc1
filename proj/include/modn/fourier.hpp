#pragma once

#include <vector>

#include "modn/group_function.hpp"

namespace modn {

// Root-of-unity table for a fixed modulus: w[k] = exp(+2*pi*i*k/N). Shared
// and cached per N; phase evaluation everywhere goes through index
// arithmetic mod N against this table so no phase error accumulates.
struct RootTable {
    u64 N;
    std::vector<cd> w;
};

const RootTable& root_table(u64 N);

// out[j] = sum_t in[t] e^{sign*2*pi*i*j*t/L}. Direct summation for short
// lengths, Bluestein's chirp transform otherwise; both paths are equivalent
// to the reference transform below and are tested against it.
std::vector<cd> dft1d(const std::vector<cd>& in, int sign);

// F on the group with counting measure -> F̂ on the dual:
//   F̂(ξ) = sum_x F(x) e^{-2πi x·ξ/N}
GroupFunction dft(const GroupFunction& f);

// G on the dual -> Ǧ on the group:
//   Ǧ(x) = N^{-n} sum_ξ G(ξ) e^{+2πi x·ξ/N}
GroupFunction inverse_dft(const GroupFunction& g);

// Direct O(N^{2n}) summation; the correctness oracle for the fast paths.
GroupFunction dft_reference(const GroupFunction& f);
GroupFunction inverse_dft_reference(const GroupFunction& g);

// Cyclic convolution under the side's measure: counting on the group,
// normalized counting on the dual. Satisfies dft(F*G) = dft(F)·dft(G).
GroupFunction convolve(const GroupFunction& a, const GroupFunction& b);

}  // namespace modn
