#include "modn/kakeya.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "modn/intmat.hpp"

namespace modn {

namespace {

std::vector<u64> unit_group(const RingContext& ctx) {
    std::vector<u64> units;
    units.reserve(euler_phi(ctx.N));
    for (u64 u = 1; u < ctx.N; ++u)
        if (std::gcd(u, ctx.N) == 1) units.push_back(u);
    if (ctx.N == 1) units.push_back(0);
    return units;
}

u64 mod_inverse(u64 a, u64 N) {
    i64 t = 0, newt = 1, r = static_cast<i64>(N), newr = static_cast<i64>(a % N);
    while (newr != 0) {
        const i64 q = r / newr;
        std::swap(t, newt);
        newt -= q * t;
        std::swap(r, newr);
        newr -= q * r;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return static_cast<u64>(mod_floor(t, static_cast<i64>(N)));
}

}  // namespace

bool has_invertible_coordinate(std::span<const u64> w, const RingContext& ctx) {
    for (u64 c : w)
        if (std::gcd(c % ctx.N, ctx.N) == 1) return true;
    return ctx.N == 1;
}

std::vector<u64> canonical_direction(std::span<const u64> w, const RingContext& ctx) {
    if (!has_invertible_coordinate(w, ctx))
        throw std::invalid_argument("canonical_direction: no invertible coordinate");
    const u64 N = ctx.N;
    std::vector<u64> best;
    std::vector<u64> cand(w.size());
    for (u64 u = 1; u < std::max<u64>(N, 2); ++u) {
        if (N > 1 && std::gcd(u, N) != 1) continue;
        for (size_t i = 0; i < w.size(); ++i) cand[i] = (w[i] % N) * u % N;
        if (best.empty() || std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
            best = cand;
    }
    if (best.empty()) best.assign(w.begin(), w.end());
    return best;
}

DirectionCensus enumerate_directions(const RingContext& ctx, int n) {
    const u64 N = ctx.N;
    DirectionCensus census;
    const auto units = unit_group(ctx);
    census.unit_count = units.size();
    census.unit_formula = euler_phi(N);
    // |P^{n-1}| per prime power p^e: p^{(e-1)(n-1)} (1 + p + ... + p^{n-1})
    census.projective_formula = 1;
    for (auto [p, e] : ctx.prime_factors) {
        u64 geom = 0, pk = 1;
        for (int j = 0; j < n; ++j) {
            geom += pk;
            pk *= p;
        }
        census.projective_formula *= pow_u64(p, static_cast<unsigned>((e - 1) * (n - 1))) * geom;
    }

    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= N;
        check_cap(total * std::max<u64>(census.unit_count, 1), "enumerate_directions");
    }
    std::set<std::vector<u64>> seen;
    std::vector<u64> w(static_cast<size_t>(n)), cand(static_cast<size_t>(n));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, N, w);
        bool sphere = false;
        for (u64 c : w)
            if (std::gcd(c, N) == 1) sphere = true;
        if (!sphere) continue;
        ++census.sphere_count;
        std::vector<u64> best = w;
        for (u64 u : units) {
            for (size_t i = 0; i < w.size(); ++i) cand[i] = w[i] * u % N;
            if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end()))
                best = cand;
        }
        seen.insert(best);
    }
    for (auto& rep : seen) census.directions.push_back(Direction{rep});
    return census;
}

u64 angle(std::span<const u64> w, std::span<const u64> wp, const RingContext& ctx) {
    const u64 N = ctx.N;
    u64 best = 1;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j) {
            const u64 m = (w[i] % N) * (wp[j] % N) % N;
            const u64 s = (w[j] % N) * (wp[i] % N) % N;
            best = std::max(best, gcd_norm((m + N - s) % N, N));
        }
    return best;
}

u64 angle_minmax_form(std::span<const u64> w, std::span<const u64> wp, const RingContext& ctx) {
    const u64 N = ctx.N;
    const auto units = unit_group(ctx);
    u64 best = N;
    for (u64 u : units)
        for (u64 up : units) {
            u64 worst = 1;
            for (size_t j = 0; j < w.size(); ++j) {
                const u64 a = w[j] * u % N;
                const u64 b = wp[j] * up % N;
                worst = std::max(worst, gcd_norm((a + N - b) % N, N));
            }
            best = std::min(best, worst);
        }
    return best;
}

std::vector<u64> Line::point(u64 t, u64 N) const {
    std::vector<u64> x(dir.size());
    for (size_t i = 0; i < dir.size(); ++i) x[i] = (dir[i] * t + base[i]) % N;
    return x;
}

Line make_line(std::span<const u64> dir, std::span<const u64> base, const RingContext& ctx) {
    Line line;
    line.dir = canonical_direction(dir, ctx);
    const u64 N = ctx.N;
    // canonical base: the line point with the smallest flat encoding
    std::vector<u64> best;
    u64 best_flat = 0;
    std::vector<u64> x(dir.size());
    for (u64 t = 0; t < N; ++t) {
        for (size_t i = 0; i < dir.size(); ++i) x[i] = (line.dir[i] * t + base[i] % N) % N;
        const u64 flat = encode_point(x, N);
        if (best.empty() || flat < best_flat) {
            best = x;
            best_flat = flat;
        }
    }
    line.base = best;
    return line;
}

bool line_contains(const Line& line, std::span<const u64> x, const RingContext& ctx) {
    const u64 N = ctx.N;
    size_t piv = line.dir.size();
    for (size_t i = 0; i < line.dir.size(); ++i)
        if (std::gcd(line.dir[i], N) == 1) {
            piv = i;
            break;
        }
    const u64 inv = mod_inverse(line.dir[piv], N);
    const u64 t = (x[piv] + N - line.base[piv]) % N * inv % N;
    for (size_t i = 0; i < line.dir.size(); ++i)
        if ((line.dir[i] * t + line.base[i]) % N != x[i] % N) return false;
    return true;
}

IntersectionReport line_intersection_count(const Line& a, const Line& b, const RingContext& ctx) {
    const u64 N = ctx.N;
    IntersectionReport rep;
    rep.angle = angle(a.dir, b.dir, ctx);
    rep.bound = N / rep.angle;

    if (rep.angle == 1) {
        // same direction: translates are equal or disjoint
        rep.count = line_contains(a, b.base, ctx) ? N : 0;
    } else if (a.dir.size() == 2) {
        // t a.dir - t' b.dir = b.base - a.base, counted by Smith reduction
        IntMatrix A(2, 2);
        A.at(0, 0) = static_cast<i64>(a.dir[0]);
        A.at(0, 1) = -static_cast<i64>(b.dir[0]);
        A.at(1, 0) = static_cast<i64>(a.dir[1]);
        A.at(1, 1) = -static_cast<i64>(b.dir[1]);
        std::vector<u64> rhs{(b.base[0] + N - a.base[0]) % N, (b.base[1] + N - a.base[1]) % N};
        rep.count = count_linear_solutions(A, rhs, ctx).count;
    } else {
        u64 count = 0;
        std::vector<u64> x(a.dir.size());
        for (u64 t = 0; t < N; ++t) {
            for (size_t i = 0; i < x.size(); ++i) x[i] = (a.dir[i] * t + a.base[i]) % N;
            if (line_contains(b, x, ctx)) ++count;
        }
        rep.count = count;
    }
    rep.within_bound = rep.count <= rep.bound;
    return rep;
}

MaximalReport maximal_functional(std::span<const Line> lines, double q, const RingContext& ctx, int n) {
    const u64 N = ctx.N;
    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= N;
        check_cap(total, "maximal_functional");
    }
    std::vector<u32> field(static_cast<size_t>(total), 0);
    for (const Line& line : lines)
        for (u64 t = 0; t < N; ++t) field[encode_point(line.point(t, N), N)] += 1;
    MaximalReport rep;
    rep.q = q;
    double sum = 0;
    for (u32 c : field)
        if (c) sum += std::pow(static_cast<double>(c), q);
    rep.lhs = std::pow(sum, 1.0 / q);
    rep.rhs = std::pow(static_cast<double>(lines.size()) * static_cast<double>(N),
                       (n - 1.0) / n);
    return rep;
}

CordobaReport cordoba_l2(std::span<const Line> lines, const RingContext& ctx, int n) {
    const u64 N = ctx.N;
    u64 total = 1;
    for (int i = 0; i < n; ++i) {
        total *= N;
        check_cap(total, "cordoba_l2");
    }
    CordobaReport rep;
    rep.line_count = lines.size();
    std::vector<u32> field(static_cast<size_t>(total), 0);
    for (const Line& line : lines)
        for (u64 t = 0; t < N; ++t) field[encode_point(line.point(t, N), N)] += 1;
    for (u32 c : field) rep.l2_squared += static_cast<u64>(c) * c;

    // angle-class decomposition: worst count of directions at each angle
    std::map<u64, u64> worst;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::map<u64, u64> per;
        for (size_t j = 0; j < lines.size(); ++j) {
            if (i == j) continue;
            ++per[angle(lines[i].dir, lines[j].dir, ctx)];
        }
        for (auto [d, c] : per) worst[d] = std::max(worst[d], c);
    }
    for (auto [d, c] : worst) rep.angle_class_max.emplace_back(d, c);

    if (ctx.is_prime()) {
        std::set<std::vector<u64>> dirs;
        for (const Line& line : lines) dirs.insert(line.dir);
        const u64 P = dirs.size();
        rep.pair_bound = P * (P + ctx.N - 1);
    }
    return rep;
}

namespace {

std::vector<u64> sawyer_twist_table(u64 p, u64 s, u64 alpha, u64 q) {
    // twist(w) = sum_j floor(j/s) w_j p^j mod p^alpha
    std::vector<u64> twist(static_cast<size_t>(q), 0);
    for (u64 w = 0; w < q; ++w) {
        u64 acc = 0, rem = w, pj = 1;
        for (u64 j = 0; j < alpha; ++j) {
            const u64 digit = rem % p;
            rem /= p;
            acc = (acc + (j / s) % q * pj % q * digit) % q;
            pj = pj * p % q;
        }
        twist[w] = acc;
    }
    return twist;
}

}  // namespace

SawyerReport sawyer_construct(u64 p, u64 s, bool verify_line_membership) {
    SawyerReport rep;
    rep.p = p;
    rep.s = s;
    rep.alpha = s * pow_u64(p, static_cast<unsigned>(s));
    const u64 q = pow_u64(p, static_cast<unsigned>(rep.alpha));
    rep.modulus = q;
    check_cap(q * q, "sawyer_construct");
    rep.slice_bound = pow_u64(p, static_cast<unsigned>(rep.alpha - s));
    rep.density_bound = std::pow(static_cast<double>(p), -static_cast<double>(s));

    const auto twist = sawyer_twist_table(p, s, rep.alpha, q);
    std::vector<u64> slice_sizes(q, 0);
    parallel_for(0, q, [&](u64 t) {
        std::vector<char> hit(static_cast<size_t>(q), 0);
        u64 count = 0;
        for (u64 w = 0; w < q; ++w) {
            const u64 y = (t * w + twist[w]) % q;
            if (!hit[y]) {
                hit[y] = 1;
                ++count;
            }
        }
        slice_sizes[t] = count;
    });
    rep.max_slice_image = *std::max_element(slice_sizes.begin(), slice_sizes.end());
    rep.set_size = std::accumulate(slice_sizes.begin(), slice_sizes.end(), u64{0});
    rep.density = static_cast<double>(rep.set_size) / (static_cast<double>(q) * static_cast<double>(q));
    rep.pass = rep.max_slice_image <= rep.slice_bound &&
               rep.density <= rep.density_bound + 1e-15;

    if (verify_line_membership) {
        // each line {(t, phi_w(t))} lies in the slice union by construction;
        // spot check the identity phi_w(t) = t w + twist(w)
        for (u64 w = 0; w < std::min<u64>(q, 64); ++w)
            for (u64 t = 0; t < std::min<u64>(q, 64); ++t)
                if ((t * w + twist[w]) % q != (w * t + twist[w]) % q)
                    rep.pass = false;
    }
    return rep;
}

std::vector<char> sawyer_completed_set(u64 p, u64 s) {
    const u64 alpha = s * pow_u64(p, static_cast<unsigned>(s));
    const u64 q = pow_u64(p, static_cast<unsigned>(alpha));
    check_cap(q * q, "sawyer_completed_set");
    const auto twist = sawyer_twist_table(p, s, alpha, q);
    std::vector<char> K(static_cast<size_t>(q) * q, 0);
    for (u64 w = 0; w < q; ++w)
        for (u64 t = 0; t < q; ++t) {
            const u64 y = (t * w + twist[w]) % q;
            K[t + y * q] = 1;      // (t, phi_w(t))
            K[y + t * q] = 1;      // rotated copy
        }
    return K;
}

SeparatedPointsReport separated_points_check(const RingContext& ctx, int n, u64 sample_budget,
                                             u64 seed) {
    const u64 N = ctx.N;
    SeparatedPointsReport rep;
    const auto census = enumerate_directions(ctx, n);
    std::mt19937_64 rng(seed);

    u64 lattice = 1;
    for (int i = 0; i < n; ++i) lattice *= N;

    auto try_pair = [&](const Line& a, const Line& b) {
        // collect common points, look for a fully separated pair
        std::vector<std::vector<u64>> common;
        for (u64 t = 0; t < N; ++t) {
            auto x = a.point(t, N);
            if (line_contains(b, x, ctx)) common.push_back(std::move(x));
        }
        for (size_t i = 0; i < common.size(); ++i)
            for (size_t j = i + 1; j < common.size(); ++j) {
                std::vector<u64> diff(static_cast<size_t>(n));
                for (int c = 0; c < n; ++c)
                    diff[static_cast<size_t>(c)] = (common[i][static_cast<size_t>(c)] + N -
                                                    common[j][static_cast<size_t>(c)]) % N;
                if (gcd_norm(diff, N) == N) {
                    ++rep.pairs_checked;
                    if (!(a == b)) ++rep.counterexamples;
                }
            }
    };

    const u64 dir_count = census.directions.size();
    const u64 exhaustive_cost = dir_count * dir_count * lattice * lattice / (N * N);
    if (exhaustive_cost <= sample_budget) {
        // all line pairs: every (direction, base) with bases from the lattice
        std::vector<Line> lines;
        std::set<std::pair<std::vector<u64>, std::vector<u64>>> seen;
        std::vector<u64> base(static_cast<size_t>(n));
        for (const auto& dir : census.directions)
            for (u64 flat = 0; flat < lattice; ++flat) {
                decode_point(flat, N, base);
                Line line = make_line(dir.rep, base, ctx);
                if (seen.insert({line.dir, line.base}).second) lines.push_back(std::move(line));
            }
        for (size_t i = 0; i < lines.size(); ++i)
            for (size_t j = i; j < lines.size(); ++j) try_pair(lines[i], lines[j]);
    } else {
        std::vector<u64> base(static_cast<size_t>(n));
        for (u64 trial = 0; trial < sample_budget; ++trial) {
            const auto& d1 = census.directions[rng() % dir_count].rep;
            const auto& d2 = census.directions[rng() % dir_count].rep;
            for (auto& c : base) c = rng() % N;
            Line a = make_line(d1, base, ctx);
            for (auto& c : base) c = rng() % N;
            Line b = make_line(d2, base, ctx);
            try_pair(a, b);
        }
    }
    return rep;
}

KakeyaCheck is_kakeya(const PointSet& K, const RingContext& ctx) {
    const u64 N = ctx.N;
    const int n = K.n;
    KakeyaCheck out;
    const auto census = enumerate_directions(ctx, n);
    u64 lattice = 1;
    for (int i = 0; i < n; ++i) lattice *= N;
    check_cap(census.directions.size() * lattice, "is_kakeya");

    std::vector<u64> v(static_cast<size_t>(n)), x(static_cast<size_t>(n));
    for (const auto& dir : census.directions) {
        bool found = false;
        for (u64 flat = 0; flat < lattice && !found; ++flat) {
            decode_point(flat, N, v);
            bool inside = true;
            for (u64 t = 0; t < N && inside; ++t) {
                for (int c = 0; c < n; ++c)
                    x[static_cast<size_t>(c)] = (dir.rep[static_cast<size_t>(c)] * t + v[static_cast<size_t>(c)]) % N;
                inside = K.contains(x);
            }
            if (inside) {
                out.witnesses.push_back(make_line(dir.rep, v, ctx));
                found = true;
            }
        }
        if (!found) {
            out.failing_direction = dir;
            out.is_kakeya = false;
            return out;
        }
    }
    out.is_kakeya = true;
    return out;
}

}  // namespace modn
