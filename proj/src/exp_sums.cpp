#include "modn/exp_sums.hpp"

#include <cmath>
#include <numeric>

#include "modn/kernels.hpp"

namespace modn {

GaussSumValue gauss_sum(u64 a, u64 b, const RingContext& ctx) {
    const u64 N = ctx.N;
    const RootTable& rt = root_table(N);
    a %= N;
    b %= N;
    // phase(t) = a t + b t^2; increment a + b(2t+1) keeps everything mod N.
    std::vector<u32> idx(N);
    u64 cur = 0;
    u64 delta = (a + b) % N;
    const u64 step = (2 * b) % N;
    for (u64 t = 0; t < N; ++t) {
        idx[t] = static_cast<u32>(cur);
        cur += delta;
        if (cur >= N) cur -= N;
        delta += step;
        if (delta >= N) delta -= N;
    }
    GaussSumValue out;
    out.value = kernels::phase_sum(idx.data(), N, rt.w.data()) / static_cast<double>(N);
    if (ctx.is_odd()) out.closed_form_magnitude = gauss_closed_form_magnitude(a, b, N);
    return out;
}

double gauss_closed_form_magnitude(u64 a, u64 b, u64 N) {
    const u64 g = std::gcd(b % N, N);
    if ((a % N) % g != 0) return 0.0;
    return std::sqrt(static_cast<double>(g) / static_cast<double>(N));
}

std::vector<cd> gauss_table(const RingContext& ctx) {
    const u64 N = ctx.N;
    check_cap(N * N, "gauss_table");
    const RootTable& rt = root_table(N);
    std::vector<cd> table(static_cast<size_t>(N) * N);
    parallel_for(0, N, [&](u64 b) {
        std::vector<cd> f(N);
        u64 phase = 0;                 // b t^2
        u64 delta = b % N;             // b(2t+1)
        const u64 step = (2 * b) % N;
        for (u64 t = 0; t < N; ++t) {
            f[t] = rt.w[phase];
            phase += delta;
            if (phase >= N) phase -= N;
            delta += step;
            if (delta >= N) delta -= N;
        }
        // N G(a,b) = sum_t f[t] e^{+2 pi i a t / N}
        std::vector<cd> row = dft1d(f, +1);
        for (u64 a = 0; a < N; ++a) table[a + b * N] = row[a] / static_cast<double>(N);
    });
    return table;
}

GroupFunction weighted_graph_sum(const Surface& surface, const RingContext& ctx,
                                 std::span<const cd> weights) {
    const u64 N = ctx.N;
    const int n = surface.n;
    const u64 params = surface.parameter_count(N);
    if (weights.size() != params)
        throw std::invalid_argument("weighted_graph_sum: weight table size mismatch");
    GroupFunction out(N, n, Side::Group);
    check_cap(params * static_cast<u64>(n), "weighted_graph_sum");
    const auto coords = surface.gamma_coordinate_tables(N);
    const RootTable& rt = root_table(N);

    // Phase indices x.Gamma(w) maintained incrementally while x walks the
    // lattice in flat order: every coordinate that changes on a step (the
    // incremented digit and each wrapped digit) shifts the phase by exactly
    // +Gamma_j(w) mod N, so the update is a prefix-sum table add.
    std::vector<std::vector<u32>> prefix(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) {
        prefix[static_cast<size_t>(c)].resize(params);
        for (u64 i = 0; i < params; ++i) {
            u64 acc = (c == 0) ? 0 : prefix[static_cast<size_t>(c - 1)][i];
            acc += coords[static_cast<size_t>(c)][i];
            if (acc >= N) acc -= N;
            prefix[static_cast<size_t>(c)][i] = static_cast<u32>(acc);
        }
    }

    const u64 total = out.size();
    // Parallel over outer slabs (the last coordinate); each worker rebuilds
    // its slab-start index buffer and then walks incrementally.
    const u64 slab = total / N;
    parallel_for(0, N, [&](u64 outer) {
        std::vector<u32> idx(params);
        std::vector<u64> x(static_cast<size_t>(n));
        const u64 base = outer * slab;
        decode_point(base, N, x);
        for (u64 i = 0; i < params; ++i) {
            u64 dot = 0;
            for (int c = 0; c < n; ++c)
                dot = (dot + x[static_cast<size_t>(c)] * coords[static_cast<size_t>(c)][i]) % N;
            idx[i] = static_cast<u32>(dot);
        }
        for (u64 flat = base; flat < base + slab; ++flat) {
            out[flat] = kernels::weighted_phase_sum(weights.data(), idx.data(), params, rt.w.data());
            if (flat + 1 == base + slab) break;
            // digits wrapping on flat -> flat+1 within the slab
            u64 rem = flat + 1 - base;
            int c = 0;
            while (c + 1 < n && rem % N == 0) {
                rem /= N;
                ++c;
            }
            const auto& pre = prefix[static_cast<size_t>(c)];
            for (u64 i = 0; i < params; ++i) {
                u32 v = idx[i] + pre[i];
                if (v >= N) v -= static_cast<u32>(N);
                idx[i] = v;
            }
        }
    });
    return out;
}

GroupFunction surface_measure_ft(const Surface& surface, const RingContext& ctx) {
    const u64 params = surface.parameter_count(ctx.N);
    std::vector<cd> ones(params, cd{1.0, 0.0});
    GroupFunction out = weighted_graph_sum(surface, ctx, ones);
    const double scale = 1.0 / static_cast<double>(params);
    for (cd& v : out.values()) v *= scale;
    return out;
}

DecayReport check_hua_decay(int n, const RingContext& ctx, double B) {
    const Surface curve = Surface::moment_curve(n);
    const GroupFunction mu = surface_measure_ft(curve, ctx);
    DecayReport rep;
    rep.bound = B;
    std::vector<u64> x(static_cast<size_t>(n));
    for (size_t flat = 1; flat < mu.size(); ++flat) {
        decode_point(flat, ctx.N, x);
        const double nrm = static_cast<double>(gcd_norm(x, ctx.N));
        const double ratio = std::abs(mu[flat]) * std::pow(nrm, 1.0 / n);
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_flat = flat;
        }
        if (ratio > B + 1e-9) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

DecayReport check_parabola_decay(int n, const RingContext& ctx) {
    const u64 N = ctx.N;
    const auto gtab = gauss_table(ctx);
    DecayReport rep;
    rep.bound = 1.0;
    u64 total = 1;
    for (int i = 0; i < n; ++i) total *= N;
    check_cap(total, "check_parabola_decay");
    std::vector<u64> x(static_cast<size_t>(n));
    for (u64 flat = 1; flat < total; ++flat) {
        decode_point(flat, N, x);
        double mag = 1.0;
        for (int j = 0; j + 1 < n; ++j)
            mag *= std::abs(gtab[x[static_cast<size_t>(j)] + x[static_cast<size_t>(n - 1)] * N]);
        const double nrm = static_cast<double>(gcd_norm(x, N));
        const double ratio = mag * std::pow(nrm, (n - 1) / 2.0);
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_flat = flat;
        }
        if (ratio > 1.0 + 1e-9) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

namespace {

// Coordinates of the members of B_rho, plus prefix sums for the incremental
// frequency walk (same scheme as weighted_graph_sum, roles swapped).
GroupFunction ball_ft_table(double rho, const RingContext& ctx, int n, std::vector<u64>* members_out) {
    const u64 N = ctx.N;
    const auto members = nested_ball_members(rho, n, ctx);
    if (members_out) *members_out = members;
    const u64 m = members.size();
    const RootTable& rt = root_table(N);
    GroupFunction out(N, n, Side::Dual);
    // prefix[c][i] = (x_0 + ... + x_c) mod N for member i
    std::vector<std::vector<u32>> prefix(static_cast<size_t>(n), std::vector<u32>(m));
    {
        std::vector<u64> x(static_cast<size_t>(n));
        for (int c = 0; c < n; ++c) {
            for (u64 i = 0; i < m; ++i) {
                decode_point(members[i], N, x);
                u64 a = (c == 0) ? 0 : prefix[static_cast<size_t>(c - 1)][i];
                a += x[static_cast<size_t>(c)];
                if (a >= N) a -= N;
                prefix[static_cast<size_t>(c)][i] = static_cast<u32>(a);
            }
        }
    }
    const u64 total = out.size();
    const u64 slab = total / N;
    parallel_for(0, N, [&](u64 outer) {
        std::vector<u32> idx(m);
        std::vector<u64> xi(static_cast<size_t>(n)), x(static_cast<size_t>(n));
        const u64 base = outer * slab;
        decode_point(base, N, xi);
        for (u64 i = 0; i < m; ++i) {
            decode_point(members[i], N, x);
            u64 dot = 0;
            for (int c = 0; c < n; ++c) dot = (dot + x[static_cast<size_t>(c)] * xi[static_cast<size_t>(c)]) % N;
            idx[i] = static_cast<u32>((N - dot) % N);  // e^{-2 pi i x.xi/N}
        }
        for (u64 flat = base; flat < base + slab; ++flat) {
            out[flat] = kernels::phase_sum(idx.data(), m, rt.w.data());
            if (flat + 1 == base + slab) break;
            u64 rem = flat + 1 - base;
            int c = 0;
            while (c + 1 < n && rem % N == 0) {
                rem /= N;
                ++c;
            }
            // xi_c increments by 1: phase -x.xi drops by x_c (and wrapped
            // digits likewise), i.e. subtract the prefix sum mod N.
            const auto& pre = prefix[static_cast<size_t>(c)];
            for (u64 i = 0; i < m; ++i) {
                u32 v = idx[i] + static_cast<u32>(N) - pre[i];
                if (v >= N) v -= static_cast<u32>(N);
                idx[i] = v;
            }
        }
    });
    return out;
}

}  // namespace

GroupFunction ball_multiplier_ft(double rho, const RingContext& ctx, int n) {
    return ball_ft_table(rho, ctx, n, nullptr);
}

ConditionFReport ball_multiplier_condition_f(double rho, const RingContext& ctx, int n) {
    const u64 N = ctx.N;
    std::vector<u64> members;
    const GroupFunction hat = ball_ft_table(rho, ctx, n, &members);
    ConditionFReport rep;
    rep.rho = rho;
    rep.ball_size = members.size();
    const double tau = static_cast<double>(ctx.divisors.size());
    std::vector<u64> xi(static_cast<size_t>(n));
    for (u64 e : ctx.divisors) {
        if (e == 1 || static_cast<double>(e) > rho) continue;
        ConditionFRow row;
        row.e = e;
        row.scale_power = std::pow(static_cast<double>(e), n);
        for (size_t flat = 0; flat < hat.size(); ++flat) {
            decode_point(flat, N, xi);
            u64 g = N;
            for (u64 c : xi) g = std::gcd(g, c);
            g = std::gcd(g, N);
            if (g >= e) continue;  // -xi inside the dual ball at scale 1/e
            const double mag = std::abs(hat[flat]);
            if (mag > row.max_abs) {
                row.max_abs = mag;
                row.argmax_flat = flat;
            }
        }
        row.required_constant = row.max_abs / row.scale_power;
        row.pass = row.max_abs <= tau * row.scale_power + 1e-9;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

cd partial_sum_SNd(std::span<const u64> xi, u64 d, const RingContext& ctx, int n) {
    if (!ctx.divides(d)) throw std::invalid_argument("partial_sum_SNd: d must divide N");
    const u64 N = ctx.N;
    const u64 M = N / d;  // x = d y with gcd(y, M) = 1
    const RootTable& rt = root_table(M == 0 ? 1 : M);
    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= M;
        check_cap(total, "partial_sum_SNd");
    }
    cd acc{0.0, 0.0};
    std::vector<u64> y(static_cast<size_t>(n));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, M, y);
        u64 g = M;
        for (u64 c : y) g = std::gcd(g, c);
        if (g != 1 && M != 1) continue;
        u64 dot = 0;
        for (int c = 0; c < n; ++c) dot = (dot + (xi[static_cast<size_t>(c)] % M) * y[static_cast<size_t>(c)]) % M;
        acc += rt.w[dot];
    }
    return acc;
}

u64 coprime_tuple_count_formula(int m, u64 p, int L) {
    const u64 pm = pow_u64(p, static_cast<unsigned>(m));
    return pow_u64(p, static_cast<unsigned>(L * m)) / pm * (pm - 1);
}

u64 coprime_tuple_count_brute(int m, u64 p, int L) {
    const u64 q = pow_u64(p, static_cast<unsigned>(L));
    u64 total = 1;
    for (int i = 0; i < m; ++i) {
        total *= q;
        check_cap(total, "coprime_tuple_count_brute");
    }
    u64 count = 0;
    std::vector<u64> x(static_cast<size_t>(m));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, q, x);
        bool coprime = false;
        for (u64 c : x)
            if (c % p != 0) {
                coprime = true;
                break;
            }
        if (coprime) ++count;
    }
    return count;
}

}  // namespace modn
