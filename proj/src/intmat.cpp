#include "modn/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace modn {

namespace {

i64 checked_mul(i64 a, i64 b) {
    __int128 p = (__int128)a * b;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("IntMatrix overflow");
    return static_cast<i64>(p);
}

i64 checked_sub(i64 a, i64 b) {
    __int128 p = (__int128)a - b;
    if (p > INT64_MAX || p < INT64_MIN) throw std::overflow_error("IntMatrix overflow");
    return static_cast<i64>(p);
}

void row_axpy(IntMatrix& M, int dst, int src, i64 q) {
    for (int c = 0; c < M.cols; ++c) M.at(dst, c) = checked_sub(M.at(dst, c), checked_mul(q, M.at(src, c)));
}

void col_axpy(IntMatrix& M, int dst, int src, i64 q) {
    for (int r = 0; r < M.rows; ++r) M.at(r, dst) = checked_sub(M.at(r, dst), checked_mul(q, M.at(r, src)));
}

void swap_rows(IntMatrix& M, int i, int j) {
    for (int c = 0; c < M.cols; ++c) std::swap(M.at(i, c), M.at(j, c));
}

void swap_cols(IntMatrix& M, int i, int j) {
    for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
    IntMatrix D = A;
    IntMatrix V = IntMatrix::identity(A.rows);
    IntMatrix U = IntMatrix::identity(A.cols);
    const int m = std::min(A.rows, A.cols);

    for (int s = 0; s < m; ++s) {
        for (;;) {
            // Pivot: smallest nonzero |entry| in the trailing block.
            int pr = -1, pc = -1;
            i64 best = 0;
            for (int r = s; r < D.rows; ++r)
                for (int c = s; c < D.cols; ++c) {
                    i64 v = std::llabs(D.at(r, c));
                    if (v != 0 && (pr < 0 || v < best)) {
                        best = v;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) break;  // trailing block is zero
            if (pr != s) {
                swap_rows(D, pr, s);
                swap_rows(V, pr, s);
            }
            if (pc != s) {
                swap_cols(D, pc, s);
                swap_cols(U, pc, s);
            }
            bool reduced = true;
            for (int r = s + 1; r < D.rows; ++r) {
                if (D.at(r, s) == 0) continue;
                i64 q = D.at(r, s) / D.at(s, s);
                row_axpy(D, r, s, q);
                row_axpy(V, r, s, q);
                if (D.at(r, s) != 0) reduced = false;
            }
            for (int c = s + 1; c < D.cols; ++c) {
                if (D.at(s, c) == 0) continue;
                i64 q = D.at(s, c) / D.at(s, s);
                col_axpy(D, c, s, q);
                col_axpy(U, c, s, q);
                if (D.at(s, c) != 0) reduced = false;
            }
            if (reduced) {
                // Fold any entry the pivot does not divide into its column and
                // retry; this enforces the divisibility chain.
                bool divides_all = true;
                for (int r = s + 1; r < D.rows && divides_all; ++r)
                    for (int c = s + 1; c < D.cols; ++c)
                        if (D.at(r, c) % D.at(s, s) != 0) {
                            col_axpy(D, s, c, -1);
                            col_axpy(U, s, c, -1);
                            divides_all = false;
                            break;
                        }
                if (divides_all) break;
            }
        }
    }

    SmithForm out;
    out.diag.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) out.diag[static_cast<size_t>(i)] = std::llabs(D.at(i, i));
    out.V = std::move(V);
    out.U = std::move(U);
    return out;
}

i64 det(const IntMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("det: square matrix required");
    if (A.rows == 1) return A.at(0, 0);
    if (A.rows == 2) return checked_sub(checked_mul(A.at(0, 0), A.at(1, 1)), checked_mul(A.at(0, 1), A.at(1, 0)));
    // Fraction-free Gaussian elimination (Bareiss).
    IntMatrix M = A;
    i64 sign = 1, prev = 1;
    const int n = A.rows;
    for (int k = 0; k < n - 1; ++k) {
        if (M.at(k, k) == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (M.at(r, k) != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0) return 0;
            swap_rows(M, k, swap);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                i64 v = checked_sub(checked_mul(M.at(i, j), M.at(k, k)), checked_mul(M.at(i, k), M.at(k, j)));
                M.at(i, j) = v / prev;
            }
        prev = M.at(k, k);
    }
    return checked_mul(sign, M.at(n - 1, n - 1));
}

LinearSolutionCount count_linear_solutions(const IntMatrix& A, std::span<const u64> b,
                                           const RingContext& ctx) {
    if (A.rows != A.cols) throw std::invalid_argument("count_linear_solutions: square matrix required");
    if (static_cast<size_t>(A.rows) != b.size())
        throw std::invalid_argument("count_linear_solutions: dimension mismatch");
    const u64 N = ctx.N;
    const i64 dA = det(A);
    const u64 det_mod = static_cast<u64>(mod_floor(dA, static_cast<i64>(N)));
    if (det_mod == 0)
        throw std::invalid_argument("count_linear_solutions: det A ≡ 0 mod N");

    SmithForm snf = smith_normal_form(A);
    // b' = V b; coordinate i demands d_i x ≡ b'_i, solvable iff gcd(d_i,N) | b'_i
    // with gcd(d_i,N) solutions.
    u64 count = 1;
    for (int i = 0; i < A.rows; ++i) {
        __int128 bi = 0;
        for (int j = 0; j < A.cols; ++j) bi += (__int128)snf.V.at(i, j) * static_cast<i64>(b[static_cast<size_t>(j)]);
        const u64 bi_mod = static_cast<u64>(mod_floor(static_cast<i64>(bi % static_cast<i64>(N)), static_cast<i64>(N)));
        const u64 g = std::gcd(static_cast<u64>(snf.diag[static_cast<size_t>(i)]) % N, N);
        if (bi_mod % g != 0) {
            count = 0;
            break;
        }
        count *= g;
    }

    LinearSolutionCount out;
    out.count = count;
    out.det_norm = gcd_norm(det_mod, N);
    out.dichotomy_asserted = true;
    for (auto [p, e] : ctx.prime_factors) {
        const u64 q = pow_u64(p, static_cast<unsigned>(e));
        if (mod_floor(dA, static_cast<i64>(q)) == 0) out.dichotomy_asserted = false;
    }
    return out;
}

u64 count_linear_solutions_brute(const IntMatrix& A, std::span<const u64> b,
                                 const RingContext& ctx) {
    const u64 N = ctx.N;
    const int n = A.rows;
    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= N;
        check_cap(total, "count_linear_solutions_brute");
    }
    u64 count = 0;
    std::vector<u64> x(static_cast<size_t>(n));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, N, x);
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) {
            __int128 acc = 0;
            for (int c = 0; c < n; ++c) acc += (__int128)A.at(r, c) * static_cast<i64>(x[static_cast<size_t>(c)]);
            i64 lhs = mod_floor(static_cast<i64>(acc % static_cast<i64>(N)), static_cast<i64>(N));
            ok = (static_cast<u64>(lhs) == b[static_cast<size_t>(r)] % N);
        }
        if (ok) ++count;
    }
    return count;
}

}  // namespace modn
