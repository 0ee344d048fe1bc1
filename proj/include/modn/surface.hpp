#pragma once

#include <string>
#include <vector>

#include "modn/ring.hpp"

namespace modn {

// Integer-coefficient polynomial in several variables, evaluated mod N.
struct Poly {
    struct Term {
        i64 coef;
        std::vector<int> exps;  // one exponent per variable
    };
    int nvars = 0;
    std::vector<Term> terms;

    static Poly monomial(int nvars, i64 coef, std::vector<int> exps);
    static Poly sum_of_squares(int nvars);        // w_1^2 + ... + w_k^2
    static Poly power_of_single(int nvars, int var, int degree);  // x_var^degree

    u64 eval_mod(std::span<const u64> w, u64 N) const;
    // Formal partial derivative with respect to variable v.
    Poly derivative(int v) const;
};

// A d-dimensional polynomial graph w -> (w, P_1(w), ..., P_{n-d}(w)) with
// integer coefficients, instantiable mod any N.
struct Surface {
    int n = 0;  // ambient dimension
    int d = 0;  // parameter dimension
    std::vector<Poly> polys;  // n - d polynomials in d variables
    std::string name;

    static Surface paraboloid(int n);    // d = n-1, h = sum of squares
    static Surface moment_curve(int n);  // d = 1, (t, t^2, ..., t^n)
    static Surface graph(int n, Poly h, std::string name = "graph");  // hypersurface

    bool is_hypersurface() const { return d == n - 1; }

    // Graph point Gamma(w) mod N.
    std::vector<u64> gamma_mod(std::span<const u64> w, u64 N) const;

    // Gamma over all parameter points: table[flat(w)] = encoded image point,
    // plus per-coordinate tables for phase arithmetic.
    // coords[j][flat(w)] = j-th coordinate of Gamma(w) mod N.
    std::vector<std::vector<u32>> gamma_coordinate_tables(u64 N) const;

    u64 parameter_count(u64 N) const;  // N^d, cap checked
};

}  // namespace modn
