#include "modn/fourier.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "modn/kernels.hpp"

namespace modn {

namespace {

constexpr size_t kDirectDftLimit = 128;  // direct O(L^2) below, Bluestein above

std::mutex g_root_mutex;
std::map<u64, std::unique_ptr<RootTable>> g_root_tables;

void fft_pow2(std::vector<cd>& a, bool invert) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2 * std::numbers::pi / static_cast<double>(len) * (invert ? 1 : -1);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cd u = a[i + j];
                cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert)
        for (cd& x : a) x /= static_cast<double>(n);
}

// Chirp transform plan for one (length, sign) pair.
struct BluesteinPlan {
    size_t L;
    size_t M;
    std::vector<cd> chirp;     // c[k] = e^{sign*pi*i*k^2/L}
    std::vector<cd> filter_ft;  // FFT of conj-chirp kernel, length M

    BluesteinPlan(size_t length, int sign) : L(length) {
        M = 1;
        while (M < 2 * L - 1) M <<= 1;
        chirp.resize(L);
        const double base = std::numbers::pi / static_cast<double>(L) * sign;
        for (size_t k = 0; k < L; ++k) {
            const u64 k2 = (static_cast<u64>(k) * k) % (2 * L);
            const double ang = base * static_cast<double>(k2);
            chirp[k] = cd(std::cos(ang), std::sin(ang));
        }
        std::vector<cd> b(M, cd{0.0, 0.0});
        for (size_t k = 0; k < L; ++k) {
            b[k] = std::conj(chirp[k]);
            if (k > 0) b[M - k] = std::conj(chirp[k]);
        }
        fft_pow2(b, false);
        filter_ft = std::move(b);
    }

    std::vector<cd> run(const std::vector<cd>& in) const {
        std::vector<cd> a(M, cd{0.0, 0.0});
        for (size_t t = 0; t < L; ++t) a[t] = in[t] * chirp[t];
        fft_pow2(a, false);
        for (size_t i = 0; i < M; ++i) a[i] *= filter_ft[i];
        fft_pow2(a, true);
        std::vector<cd> out(L);
        for (size_t j = 0; j < L; ++j) out[j] = chirp[j] * a[j];
        return out;
    }
};

std::mutex g_plan_mutex;
std::map<std::pair<size_t, int>, std::unique_ptr<BluesteinPlan>> g_plans;

const BluesteinPlan& bluestein_plan(size_t L, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& slot = g_plans[{L, sign}];
    if (!slot) slot = std::make_unique<BluesteinPlan>(L, sign);
    return *slot;
}

std::vector<cd> dft1d_direct(const std::vector<cd>& in, int sign, const RootTable& rt) {
    const size_t L = in.size();
    std::vector<cd> out(L);
    std::vector<u32> idx(L);
    for (size_t j = 0; j < L; ++j) {
        const u64 step = (sign > 0) ? j : (L - j) % L;
        u64 phase = 0;
        for (size_t t = 0; t < L; ++t) {
            idx[t] = static_cast<u32>(phase);
            phase += step;
            if (phase >= L) phase -= L;
        }
        out[j] = kernels::weighted_phase_sum(in.data(), idx.data(), L, rt.w.data());
    }
    return out;
}

// Transform every axis of an n-dimensional table in place.
void transform_axes(std::vector<cd>& values, u64 N, int dim, int sign) {
    const size_t total = values.size();
    const size_t L = static_cast<size_t>(N);
    std::vector<cd> line(L);
    size_t stride = 1;
    for (int axis = 0; axis < dim; ++axis) {
        const size_t block = stride * L;
        for (size_t base = 0; base < total; base += block) {
            for (size_t off = 0; off < stride; ++off) {
                for (size_t t = 0; t < L; ++t) line[t] = values[base + off + t * stride];
                std::vector<cd> transformed = dft1d(line, sign);
                for (size_t t = 0; t < L; ++t) values[base + off + t * stride] = transformed[t];
            }
        }
        stride *= L;
    }
}

}  // namespace

const RootTable& root_table(u64 N) {
    std::lock_guard<std::mutex> lock(g_root_mutex);
    auto& slot = g_root_tables[N];
    if (!slot) {
        auto rt = std::make_unique<RootTable>();
        rt->N = N;
        rt->w.resize(N);
        for (u64 k = 0; k < N; ++k) {
            const double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
            rt->w[k] = cd(std::cos(ang), std::sin(ang));
        }
        slot = std::move(rt);
    }
    return *slot;
}

std::vector<cd> dft1d(const std::vector<cd>& in, int sign) {
    const size_t L = in.size();
    if (L == 0) return {};
    if (L == 1) return in;
    if (L <= kDirectDftLimit) return dft1d_direct(in, sign, root_table(L));
    return bluestein_plan(L, sign).run(in);
}

GroupFunction dft(const GroupFunction& f) {
    if (f.side() != Side::Group) throw std::invalid_argument("dft: expected group-side input");
    GroupFunction out = f.with_side(Side::Dual);
    transform_axes(out.values(), f.modulus(), f.dim(), -1);
    return out;
}

GroupFunction inverse_dft(const GroupFunction& g) {
    if (g.side() != Side::Dual) throw std::invalid_argument("inverse_dft: expected dual-side input");
    GroupFunction out = g.with_side(Side::Group);
    transform_axes(out.values(), g.modulus(), g.dim(), +1);
    const double scale = 1.0 / std::pow(static_cast<double>(g.modulus()), g.dim());
    for (cd& v : out.values()) v *= scale;
    return out;
}

GroupFunction dft_reference(const GroupFunction& f) {
    if (f.side() != Side::Group) throw std::invalid_argument("dft_reference: expected group-side input");
    const u64 N = f.modulus();
    const int n = f.dim();
    const RootTable& rt = root_table(N);
    GroupFunction out(N, n, Side::Dual);
    std::vector<u64> x(static_cast<size_t>(n)), xi(static_cast<size_t>(n));
    for (size_t j = 0; j < out.size(); ++j) {
        decode_point(j, N, xi);
        cd acc{0.0, 0.0};
        for (size_t i = 0; i < f.size(); ++i) {
            decode_point(i, N, x);
            u64 dot = 0;
            for (int c = 0; c < n; ++c) dot = (dot + x[static_cast<size_t>(c)] * xi[static_cast<size_t>(c)]) % N;
            acc += f[i] * rt.w[(N - dot) % N];
        }
        out[j] = acc;
    }
    return out;
}

GroupFunction inverse_dft_reference(const GroupFunction& g) {
    if (g.side() != Side::Dual) throw std::invalid_argument("inverse_dft_reference: expected dual-side input");
    const u64 N = g.modulus();
    const int n = g.dim();
    const RootTable& rt = root_table(N);
    GroupFunction out(N, n, Side::Group);
    const double scale = 1.0 / std::pow(static_cast<double>(N), n);
    std::vector<u64> x(static_cast<size_t>(n)), xi(static_cast<size_t>(n));
    for (size_t i = 0; i < out.size(); ++i) {
        decode_point(i, N, x);
        cd acc{0.0, 0.0};
        for (size_t j = 0; j < g.size(); ++j) {
            decode_point(j, N, xi);
            u64 dot = 0;
            for (int c = 0; c < n; ++c) dot = (dot + x[static_cast<size_t>(c)] * xi[static_cast<size_t>(c)]) % N;
            acc += g[j] * rt.w[dot % N];
        }
        out[i] = acc * scale;
    }
    return out;
}

GroupFunction convolve(const GroupFunction& a, const GroupFunction& b) {
    if (a.modulus() != b.modulus() || a.dim() != b.dim() || a.side() != b.side())
        throw std::invalid_argument("convolve: shape or side mismatch");
    const u64 N = a.modulus();
    const int n = a.dim();
    GroupFunction out(N, n, a.side());
    const double w = a.point_mass();
    std::vector<u64> x(static_cast<size_t>(n)), y(static_cast<size_t>(n)), d(static_cast<size_t>(n));
    for (size_t ix = 0; ix < out.size(); ++ix) {
        decode_point(ix, N, x);
        cd acc{0.0, 0.0};
        for (size_t iy = 0; iy < a.size(); ++iy) {
            decode_point(iy, N, y);
            for (int c = 0; c < n; ++c)
                d[static_cast<size_t>(c)] = (x[static_cast<size_t>(c)] + N - y[static_cast<size_t>(c)]) % N;
            acc += a[iy] * b[encode_point(d, N)];
        }
        out[ix] = acc * w;
    }
    return out;
}

}  // namespace modn
