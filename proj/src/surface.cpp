#include "modn/surface.hpp"

namespace modn {

Poly Poly::monomial(int nvars, i64 coef, std::vector<int> exps) {
    Poly p;
    p.nvars = nvars;
    p.terms.push_back({coef, std::move(exps)});
    return p;
}

Poly Poly::sum_of_squares(int nvars) {
    Poly p;
    p.nvars = nvars;
    for (int v = 0; v < nvars; ++v) {
        std::vector<int> e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(v)] = 2;
        p.terms.push_back({1, std::move(e)});
    }
    return p;
}

Poly Poly::power_of_single(int nvars, int var, int degree) {
    std::vector<int> e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(var)] = degree;
    return monomial(nvars, 1, std::move(e));
}

u64 Poly::eval_mod(std::span<const u64> w, u64 N) const {
    u64 acc = 0;
    for (const Term& t : terms) {
        u64 val = static_cast<u64>(mod_floor(t.coef, static_cast<i64>(N)));
        for (int v = 0; v < nvars; ++v) {
            const u64 base = w[static_cast<size_t>(v)] % N;
            for (int k = 0; k < t.exps[static_cast<size_t>(v)]; ++k) val = (val * base) % N;
        }
        acc = (acc + val) % N;
    }
    return acc;
}

Poly Poly::derivative(int v) const {
    Poly out;
    out.nvars = nvars;
    for (const Term& t : terms) {
        const int e = t.exps[static_cast<size_t>(v)];
        if (e == 0) continue;
        Term dt = t;
        dt.coef *= e;
        dt.exps[static_cast<size_t>(v)] = e - 1;
        out.terms.push_back(std::move(dt));
    }
    return out;
}

Surface Surface::paraboloid(int n) {
    Surface s;
    s.n = n;
    s.d = n - 1;
    s.polys.push_back(Poly::sum_of_squares(n - 1));
    s.name = "paraboloid";
    return s;
}

Surface Surface::moment_curve(int n) {
    Surface s;
    s.n = n;
    s.d = 1;
    for (int j = 2; j <= n; ++j) s.polys.push_back(Poly::power_of_single(1, 0, j));
    s.name = "moment-curve";
    return s;
}

Surface Surface::graph(int n, Poly h, std::string name) {
    Surface s;
    s.n = n;
    s.d = n - 1;
    s.polys.push_back(std::move(h));
    s.name = std::move(name);
    return s;
}

std::vector<u64> Surface::gamma_mod(std::span<const u64> w, u64 N) const {
    std::vector<u64> out(static_cast<size_t>(n));
    for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] % N;
    for (size_t j = 0; j < polys.size(); ++j) out[static_cast<size_t>(d) + j] = polys[j].eval_mod(w, N);
    return out;
}

u64 Surface::parameter_count(u64 N) const {
    u64 total = 1;
    for (int i = 0; i < d; ++i) {
        total *= N;
        check_cap(total, "Surface::parameter_count");
    }
    return total;
}

std::vector<std::vector<u32>> Surface::gamma_coordinate_tables(u64 N) const {
    const u64 total = parameter_count(N);
    std::vector<std::vector<u32>> coords(static_cast<size_t>(n), std::vector<u32>(static_cast<size_t>(total)));
    std::vector<u64> w(static_cast<size_t>(d));
    for (u64 flat = 0; flat < total; ++flat) {
        decode_point(flat, N, w);
        const auto g = gamma_mod(w, N);
        for (int j = 0; j < n; ++j) coords[static_cast<size_t>(j)][flat] = static_cast<u32>(g[static_cast<size_t>(j)]);
    }
    return coords;
}

}  // namespace modn
