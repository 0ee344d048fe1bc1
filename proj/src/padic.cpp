#include "modn/padic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace modn {

u64 TruncatedFunction::grid_size() const {
    u64 total = 1;
    for (int i = 0; i < n; ++i) total *= grid_modulus();
    return total;
}

TruncatedFunction TruncatedFunction::zero(u64 p, int k, int l, int n) {
    TruncatedFunction f{p, k, l, n, {}};
    f.values.assign(f.grid_size(), cd{0.0, 0.0});
    return f;
}

TruncatedFunction TruncatedFunction::random(u64 p, int k, int l, int n, u64 seed) {
    TruncatedFunction f = zero(p, k, l, n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (auto& v : f.values) v = cd{uni(rng), uni(rng)};
    return f;
}

TruncatedFunction TruncatedFunction::indicator_unit_ball(u64 p, int k, int l, int n) {
    // chi_{Z_p^n}: the point p^{-l} y lies in Z_p^n iff p^l | y coordinatewise
    TruncatedFunction f = zero(p, k, l, n);
    const u64 M = f.grid_modulus();
    const u64 step = pow_u64(p, static_cast<unsigned>(l));
    std::vector<u64> y(static_cast<size_t>(n));
    for (u64 flat = 0; flat < f.grid_size(); ++flat) {
        decode_point(flat, M, y);
        bool in = true;
        for (u64 c : y) in = in && (c % step == 0);
        if (in) f.values[flat] = 1.0;
    }
    return f;
}

double TruncatedFunction::haar_lr_norm(double r) const {
    const double cell = std::pow(static_cast<double>(p), -static_cast<double>(k) * n);
    if (std::isinf(r)) {
        double m = 0;
        for (const cd& v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0;
    for (const cd& v : values) sum += std::pow(std::abs(v), r);
    return std::pow(cell * sum, 1.0 / r);
}

u64 padic_fractional_numerator(u64 m, int j, u64 p) {
    // digits of m below p^j, assembled back into sum d_i p^i
    u64 num = 0, pw = 1, rem = m;
    for (int i = 0; i < j; ++i) {
        num += (rem % p) * pw;
        rem /= p;
        pw *= p;
    }
    return num;
}

GroupFunction lift_down_F(const TruncatedFunction& f) {
    const u64 M = f.grid_modulus();
    GroupFunction F(M, f.n, Side::Group);
    const double scale = std::pow(static_cast<double>(f.p), -static_cast<double>(f.k) * f.n);
    for (size_t i = 0; i < F.size(); ++i) F[i] = scale * f.values[i];
    return F;
}

TruncatedFunction lift_up_F(const GroupFunction& F, u64 p, int k, int l) {
    TruncatedFunction f = TruncatedFunction::zero(p, k, l, F.dim());
    if (F.size() != f.grid_size()) throw std::invalid_argument("lift_up_F: grid mismatch");
    const double scale = std::pow(static_cast<double>(p), static_cast<double>(k) * F.dim());
    for (size_t i = 0; i < F.size(); ++i) f.values[i] = scale * F[i];
    return f;
}

GroupFunction lift_down_Fhat(const TruncatedFunction& g) {
    const u64 M = g.grid_modulus();
    GroupFunction G(M, g.n, Side::Dual);
    for (size_t i = 0; i < G.size(); ++i) G[i] = g.values[i];
    return G;
}

TruncatedFunction lift_up_Fhat(const GroupFunction& G, u64 p, int k, int l) {
    TruncatedFunction g = TruncatedFunction::zero(p, l, k, G.dim());
    if (G.size() != g.grid_size()) throw std::invalid_argument("lift_up_Fhat: grid mismatch");
    for (size_t i = 0; i < G.size(); ++i) g.values[i] = G[i];
    return g;
}

TruncatedFunction padic_fourier(const TruncatedFunction& f) {
    // f_hat(p^{-k} eta) = p^{-kn} sum_y f(p^{-l} y) e(-p^{-(k+l)} y.eta)
    // with the character built from the fractional part of the rational
    // -(y.eta)/p^{k+l}. The character factors over coordinates, so the
    // transform runs axis by axis; each 1-d pass stays a direct double loop
    // independent of the fast DFT machinery it is later tested against.
    const u64 M = f.grid_modulus();
    const int j = f.k + f.l;
    TruncatedFunction out = TruncatedFunction::zero(f.p, f.l, f.k, f.n);
    const RootTable& rt = root_table(M);

    // 1-d character table: chr[m] = e({-m/p^{k+l}}_p)
    std::vector<cd> chr(M);
    for (u64 m = 0; m < M; ++m) chr[m] = rt.w[padic_fractional_numerator((M - m) % M, j, f.p)];

    std::vector<cd> work = f.values;
    const u64 total = f.grid_size();
    std::vector<cd> line(M), transformed(M);
    u64 stride = 1;
    for (int axis = 0; axis < f.n; ++axis) {
        const u64 block = stride * M;
        for (u64 base = 0; base < total; base += block) {
            for (u64 off = 0; off < stride; ++off) {
                for (u64 t = 0; t < M; ++t) line[t] = work[base + off + t * stride];
                for (u64 eta = 0; eta < M; ++eta) {
                    cd acc{0.0, 0.0};
                    u64 phase = 0;
                    for (u64 t = 0; t < M; ++t) {
                        acc += line[t] * chr[phase];
                        phase += eta;
                        if (phase >= M) phase -= M;
                    }
                    transformed[eta] = acc;
                }
                for (u64 t = 0; t < M; ++t) work[base + off + t * stride] = transformed[t];
            }
        }
        stride *= M;
    }
    const double scale = std::pow(static_cast<double>(f.p), -static_cast<double>(f.k) * f.n);
    for (u64 i = 0; i < total; ++i) out.values[i] = work[i] * scale;
    return out;
}

std::vector<NormIdentityReport> verify_norm_identities(const TruncatedFunction& f,
                                                       std::span<const double> rs) {
    const double kn = static_cast<double>(f.k) * f.n;
    const double ln = static_cast<double>(f.l) * f.n;
    const double p = static_cast<double>(f.p);

    const GroupFunction F = lift_down_F(f);
    const TruncatedFunction g = padic_fourier(f);  // in S(l, k)
    const GroupFunction G = lift_down_Fhat(g);

    std::vector<NormIdentityReport> out;
    out.reserve(rs.size());
    for (double r : rs) {
        NormIdentityReport rep;
        rep.r = r;
        const double rconj = std::isinf(r) ? 1.0 : r / (r - 1.0);
        rep.lhs_a = F.lp_norm(r);
        rep.rhs_a = std::pow(p, -kn / rconj) * f.haar_lr_norm(r);

        // counting-measure quotient norm: the convention under which the
        // printed identity b) is exact
        double counting = 0;
        if (std::isinf(r)) {
            counting = G.sup_norm();
        } else {
            double sum = 0;
            for (size_t i = 0; i < G.size(); ++i) sum += std::pow(std::abs(G[i]), r);
            counting = std::pow(sum, 1.0 / r);
        }
        rep.lhs_b_counting = counting;
        // g sits in S(l, k), so its cells carry mass p^{-ln}
        const double g_haar = [&] {
            const double cell = std::pow(p, -static_cast<double>(f.l) * f.n);
            if (std::isinf(r)) {
                double m = 0;
                for (const cd& v : g.values) m = std::max(m, std::abs(v));
                return m;
            }
            double sum = 0;
            for (const cd& v : g.values) sum += std::pow(std::abs(v), r);
            return std::pow(cell * sum, 1.0 / r);
        }();
        rep.rhs_b_counting = (std::isinf(r) ? 1.0 : std::pow(p, ln / r)) * g_haar;
        rep.lhs_b_normalized = G.lp_norm(r);
        rep.rhs_b_normalized = (std::isinf(r) ? 1.0 : std::pow(p, -kn / r)) * g_haar;

        const double tol = 1e-10;
        auto close = [&](double a, double b) {
            return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
        };
        rep.pass = close(rep.lhs_a, rep.rhs_a) && close(rep.lhs_b_counting, rep.rhs_b_counting) &&
                   close(rep.lhs_b_normalized, rep.rhs_b_normalized);
        out.push_back(rep);
    }
    return out;
}

NormIdentityReport verify_norm_identities(const TruncatedFunction& f, double r) {
    const double rs[] = {r};
    return verify_norm_identities(f, std::span<const double>(rs))[0];
}

CommutationReport verify_ft_commutation(const TruncatedFunction& f) {
    CommutationReport rep;
    const GroupFunction via_discrete = dft(lift_down_F(f));
    const GroupFunction via_padic = lift_down_Fhat(padic_fourier(f));
    rep.max_error = max_abs_difference(via_discrete, via_padic);
    rep.pass = rep.max_error < 1e-9;
    return rep;
}

SetCorrespondenceReport set_correspondence(std::span<const u64> cells, u64 p, int alpha, int n) {
    SetCorrespondenceReport rep;
    std::set<u64> distinct(cells.begin(), cells.end());
    rep.cell_count = distinct.size();
    const Rational cell_mass = Rational(1) / Rational(static_cast<i64>(pow_u64(p, static_cast<unsigned>(alpha)))).pow(n);
    rep.neighborhood_measure = Rational(static_cast<i64>(distinct.size())) * cell_mass;
    rep.quotient_density = Rational(static_cast<i64>(distinct.size())) * cell_mass;
    rep.equal = rep.neighborhood_measure == rep.quotient_density;

    // reformulated indicator identity: Fhat_{alpha,0}[chi_{N(E)}] = chi_{pi(E)}
    TruncatedFunction chi = TruncatedFunction::zero(p, alpha, 0, n);
    for (u64 c : distinct) chi.values[c] = 1.0;
    const GroupFunction lifted = lift_down_Fhat(chi);
    double err = 0;
    for (size_t i = 0; i < lifted.size(); ++i) {
        const double expect = distinct.count(i) ? 1.0 : 0.0;
        err = std::max(err, std::abs(lifted[i] - cd{expect, 0.0}));
    }
    rep.indicator_error = err;
    return rep;
}

namespace {

std::set<u64> surface_image_mod(const Surface& surface, u64 modulus) {
    RingContext ctx(modulus);
    const u64 params = surface.parameter_count(modulus);
    std::set<u64> image;
    std::vector<u64> w(static_cast<size_t>(surface.d));
    for (u64 flat = 0; flat < params; ++flat) {
        decode_point(flat, modulus, w);
        image.insert(encode_point(surface.gamma_mod(w, modulus), modulus));
    }
    return image;
}

}  // namespace

QuotientRestrictionReport quotient_restriction_equivalence(u64 p, int k, int l,
                                                           const Surface& surface, double r,
                                                           double s, int batch, u64 seed) {
    QuotientRestrictionReport rep;
    rep.p = p;
    rep.k = k;
    rep.l = l;
    rep.n = surface.n;
    const u64 Ml = pow_u64(p, static_cast<unsigned>(l));
    const u64 Mkl = pow_u64(p, static_cast<unsigned>(k + l));
    const int n = surface.n;
    const double rconj = r / (r - 1.0);

    // pi_l(Sigma) and pi_{k+l}(p^k Sigma); delta_k should biject them.
    const auto sigma_l = surface_image_mod(surface, Ml);
    std::set<u64> dilated;
    {
        std::vector<u64> xi(static_cast<size_t>(n)), up(static_cast<size_t>(n));
        for (u64 flat : sigma_l) {
            decode_point(flat, Ml, xi);
            for (int c = 0; c < n; ++c) up[static_cast<size_t>(c)] = xi[static_cast<size_t>(c)] * pow_u64(p, static_cast<unsigned>(k)) % Mkl;
            dilated.insert(encode_point(up, Mkl));
        }
    }
    std::set<u64> sigma_kl_scaled;
    {
        RingContext ctx(Mkl);
        const u64 params = surface.parameter_count(Mkl);
        std::vector<u64> w(static_cast<size_t>(surface.d)), g(static_cast<size_t>(n));
        const u64 pk = pow_u64(p, static_cast<unsigned>(k));
        for (u64 flat = 0; flat < params; ++flat) {
            decode_point(flat, Mkl, w);
            auto gm = surface.gamma_mod(w, Mkl);
            for (int c = 0; c < n; ++c) g[static_cast<size_t>(c)] = gm[static_cast<size_t>(c)] * pk % Mkl;
            sigma_kl_scaled.insert(encode_point(g, Mkl));
        }
    }
    rep.dilation_bijects = (dilated == sigma_kl_scaled) && (dilated.size() == sigma_l.size());

    std::mt19937_64 rng(seed);
    double fold_err = 0, avg_err = 0, holder_slack = 1e300, nb_err = 0;
    for (int trial = 0; trial < batch; ++trial) {
        GroupFunction F = GroupFunction::random(Mkl, n, Side::Group, rng());
        const GroupFunction Fhat = dft(F);

        // folded function F_l on [Z/p^l]^n
        GroupFunction Fl(Ml, n, Side::Group);
        {
            std::vector<u64> x(static_cast<size_t>(n)), z(static_cast<size_t>(n));
            for (size_t flat = 0; flat < F.size(); ++flat) {
                decode_point(flat, Mkl, x);
                for (int c = 0; c < n; ++c) z[static_cast<size_t>(c)] = x[static_cast<size_t>(c)] % Ml;
                Fl.at(z) += F[flat];
            }
        }
        const GroupFunction Flhat = dft(Fl);

        // Fhat(delta_k xi) = Flhat(xi)
        {
            std::vector<u64> xi(static_cast<size_t>(n)), up(static_cast<size_t>(n));
            const u64 pk = pow_u64(p, static_cast<unsigned>(k));
            for (size_t flat = 0; flat < Flhat.size(); ++flat) {
                decode_point(flat, Ml, xi);
                for (int c = 0; c < n; ++c) up[static_cast<size_t>(c)] = xi[static_cast<size_t>(c)] * pk % Mkl;
                fold_err = std::max(fold_err, std::abs(Fhat.at(up) - Flhat[flat]));
            }
        }

        // averaged identity over the two frequency sets
        double lhs_avg = 0, rhs_avg = 0;
        for (u64 flat : sigma_kl_scaled) lhs_avg += std::pow(std::abs(Fhat[flat]), s);
        lhs_avg /= static_cast<double>(sigma_kl_scaled.size());
        for (u64 flat : sigma_l) rhs_avg += std::pow(std::abs(Flhat[flat]), s);
        rhs_avg /= static_cast<double>(sigma_l.size());
        avg_err = std::max(avg_err, std::abs(std::pow(lhs_avg, 1.0 / s) - std::pow(rhs_avg, 1.0 / s)));

        // Hoelder step
        const double slack = std::pow(static_cast<double>(p), k * n / rconj) * F.lp_norm(r) - Fl.lp_norm(r);
        holder_slack = std::min(holder_slack, slack);

        // continuous side: f in S(k, l) with F_{k,l}[f] = F
        const TruncatedFunction f = lift_up_F(F, p, k, l);
        const TruncatedFunction fhat = padic_fourier(f);
        // averaged neighborhood norm of f_hat over N_{p^{-l}}(Sigma):
        // cells at level l indexed by pi_l(Sigma), value at delta_k-embedded
        // grid points, cell mass p^{-ln}, |N| = p^{-l(n-d)}
        double integral = 0;
        {
            std::vector<u64> xi(static_cast<size_t>(n)), up(static_cast<size_t>(n));
            const u64 pk = pow_u64(p, static_cast<unsigned>(k));
            for (u64 flat : sigma_l) {
                decode_point(flat, Ml, xi);
                for (int c = 0; c < n; ++c) up[static_cast<size_t>(c)] = xi[static_cast<size_t>(c)] * pk % Mkl;
                integral += std::pow(std::abs(fhat.values[encode_point(up, Mkl)]), s) *
                            std::pow(static_cast<double>(p), -static_cast<double>(l) * n);
            }
        }
        const double nb_measure = std::pow(static_cast<double>(p), -static_cast<double>(l) * (n - surface.d));
        const double continuous = std::pow(integral / nb_measure, 1.0 / s);
        const double quotient = std::pow(lhs_avg, 1.0 / s);
        nb_err = std::max(nb_err, std::abs(continuous - quotient));
    }
    rep.fold_identity_error = fold_err;
    rep.average_identity_error = avg_err;
    rep.holder_min_slack = holder_slack;
    rep.neighborhood_error = nb_err;
    rep.pass = rep.dilation_bijects && fold_err < 1e-9 && avg_err < 1e-9 &&
               holder_slack > -1e-9 && nb_err < 1e-9;
    return rep;
}

}  // namespace modn
