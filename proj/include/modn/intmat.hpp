#pragma once

#include <span>
#include <vector>

#include "modn/ring.hpp"

namespace modn {

// Dense integer matrix, interpreted mod N when paired with a context.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<i64> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix diag(std::span<const i64> d) {
        IntMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// D = V A U with U, V unimodular over Z and D diagonal with the divisibility
// chain d_1 | d_2 | ... (nonnegative).
struct SmithForm {
    std::vector<i64> diag;
    IntMatrix V;  // row transform
    IntMatrix U;  // column transform
};

SmithForm smith_normal_form(const IntMatrix& A);

i64 det(const IntMatrix& A);

struct LinearSolutionCount {
    u64 count = 0;                  // exact number of solutions mod N
    u64 det_norm = 0;               // |det A| = N/gcd(det A, N)
    bool dichotomy_asserted = false;  // count known to be 0 or N/|det A|
};

// Exact number of x⃗ in [Z/NZ]^n with A x⃗ ≡ b⃗, computed by diagonalizing A
// over Z (never brute force). Throws when det A ≡ 0 mod N. The 0-or-N/|det A|
// dichotomy is asserted when det A stays nonzero modulo every prime-power
// part of N; the exact count is returned either way.
LinearSolutionCount count_linear_solutions(const IntMatrix& A, std::span<const u64> b,
                                           const RingContext& ctx);

// Oracle-grade brute force over all N^n points.
u64 count_linear_solutions_brute(const IntMatrix& A, std::span<const u64> b,
                                 const RingContext& ctx);

}  // namespace modn
