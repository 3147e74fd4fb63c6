#pragma once

#include <vector>

#include "rtlens/cyclotomic.hpp"
#include "rtlens/errors.hpp"
#include "rtlens/lattice.hpp"
#include "rtlens/numeric.hpp"
#include "rtlens/root_system.hpp"

namespace rtlens {

/// Quadratic-plus-linear exponential sum over (Z/N)^r:
///   sum over x of q^( scale * x^T form x  +  linear . x ),  q = zeta_N.
struct QuadGaussSpec {
    long order;
    int rank;
    IntMat form;    // symmetric mod N
    IntVec linear;  // length rank
    long long scale = 1;

    void check() const {
        if (order < 3 || order % 2 == 0) throw InvalidOrderError("Gauss sum order must be odd and >= 3");
        if (form.size() != static_cast<std::size_t>(rank) || linear.size() != static_cast<std::size_t>(rank))
            throw DimensionError("QuadGaussSpec: form/linear dimensions do not match rank");
        for (int i = 0; i < rank; ++i) {
            if (form[i].size() != static_cast<std::size_t>(rank))
                throw DimensionError("QuadGaussSpec: form not square");
            for (int j = 0; j < rank; ++j)
                if (mod_floor(form[i][j], order) != mod_floor(form[j][i], order))
                    throw Error("QuadGaussSpec: form not symmetric mod N");
        }
    }
};

/// Direct enumeration of the defining sum.  This is the oracle the closed
/// form is validated against; it refuses to run past the state budget.
inline Cyclotomic gauss_brute(const QuadGaussSpec& spec, long long budget = kDefaultStateBudget) {
    spec.check();
    const long N = spec.order;
    const int r = spec.rank;
    long long total = pow_checked(N, r, budget);
    if (total < 0)
        throw CapacityError("gauss_brute: " + std::to_string(N) + "^" + std::to_string(r) +
                            " terms exceed the budget of " + std::to_string(budget));
    std::vector<long long> counts(N, 0);
    IntVec x(r, 0);
    while (true) {
        long long e = 0;
        for (int i = 0; i < r; ++i) {
            if (x[i] == 0) continue;
            long long row = 0;
            for (int j = 0; j < r; ++j) row += mod_floor(spec.form[i][j], N) * x[j];
            e += x[i] * (row % N);
        }
        e = mod_floor(e, N) * mod_floor(spec.scale, N);
        for (int i = 0; i < r; ++i) e += mod_floor(spec.linear[i], N) * x[i];
        counts[mod_floor(e, N)] += 1;
        int pos = r - 1;
        while (pos >= 0) {
            if (++x[pos] < N) break;
            x[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    Cyclotomic out(N);
    for (long j = 0; j < N; ++j) out.add_rotated(Cyclotomic::from_integer(N, counts[j]), j);
    return out;
}

namespace detail {

inline int val_p(long long x, long long p, int e) {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0 && v < e) {
        x /= p;
        ++v;
    }
    return v;
}

/// Symmetric congruence diagonalization of (form, linear) over Z/p^e, p odd.
/// Returns per-axis quadratic coefficients d and linear coefficients b after
/// a unimodular substitution x = U y, so that the sum splits into
/// prod_i sum_y zeta^(d_i y^2 + b_i y).  Pivots of minimal p-adic valuation;
/// when only off-diagonal entries attain it, a row+column add makes a
/// diagonal pivot (2 is a unit, p odd, so the new diagonal keeps the
/// valuation).
struct LocalAxes {
    std::vector<long long> diag, lin;
};

inline LocalAxes diagonalize_mod_pe(IntMat f, IntVec l, long long p, int e) {
    const long long M = pow_ll(p, e);
    const int r = static_cast<int>(f.size());
    auto red = [&](long long v) { return mod_floor(v, M); };
    for (auto& row : f)
        for (auto& v : row) v = red(v);
    for (auto& v : l) v = red(v);

    auto swap_axes = [&](int i, int j) {
        if (i == j) return;
        std::swap(f[i], f[j]);
        for (int k = 0; k < r; ++k) std::swap(f[k][i], f[k][j]);
        std::swap(l[i], l[j]);
    };
    // substitution x_k = y_k + c * y_j: row_j += c row_k; col_j += c col_k; l_j += c l_k
    auto add_axis = [&](int j, int k, long long c) {
        for (int t = 0; t < r; ++t) f[j][t] = red(f[j][t] + c * f[k][t]);
        for (int t = 0; t < r; ++t) f[t][j] = red(f[t][j] + c * f[t][k]);
        l[j] = red(l[j] + c * l[k]);
    };

    for (int i = 0; i < r; ++i) {
        int vmin = e + 1, bi = -1, bj = -1;
        for (int a = i; a < r; ++a)
            for (int b = a; b < r; ++b) {
                int v = val_p(f[a][b], p, e);
                if (v < vmin) {
                    vmin = v;
                    bi = a;
                    bj = b;
                }
            }
        if (bi < 0 || vmin >= e) break; // remaining block is zero mod p^e
        if (bi != bj) {
            // prefer a diagonal entry at the same valuation if one exists
            int dpick = -1;
            for (int a = i; a < r; ++a)
                if (val_p(f[a][a], p, e) == vmin) { dpick = a; break; }
            if (dpick >= 0) {
                bi = bj = dpick;
            } else {
                add_axis(bi, bj, 1); // f[bi][bi] += 2 f[bi][bj] + f[bj][bj], valuation vmin
                bj = bi;
            }
        }
        swap_axes(i, bi);
        long long d = f[i][i];
        long long pv = pow_ll(p, vmin);
        long long u = (d / pv) % M;
        long long uinv = inv_mod(u, M);
        for (int j = i + 1; j < r; ++j) {
            long long t = f[i][j];
            if (t == 0) continue;
            long long w = t / pv; // val(t) >= vmin
            long long c = red(-(red(w) * uinv % M));
            add_axis(j, i, c);
        }
    }
    LocalAxes out;
    out.diag.resize(r);
    out.lin.resize(r);
    for (int i = 0; i < r; ++i) {
        out.diag[i] = red(f[i][i]);
        out.lin[i] = l[i];
    }
    return out;
}

/// sum over y mod M of zeta_M^(d y^2 + b y), as exponent counts.
inline std::vector<long long> axis_counts(long long d, long long b, long long M) {
    std::vector<long long> c(M, 0);
    for (long long y = 0; y < M; ++y) c[mod_floor(d * y * y + b * y, M)] += 1;
    return c;
}

} // namespace detail

/// Closed-form evaluation: CRT split of N into odd prime powers, symmetric
/// diagonalization of the form over each Z/p^e, per-axis one-dimensional
/// sums by direct O(p^e) summation, then reassembly through the CRT
/// idempotents.  Agrees with gauss_brute wherever the latter can run and has
/// no size precondition (this is the route that reaches E8 at N = 31).
inline Cyclotomic gauss_closed(const QuadGaussSpec& spec) {
    spec.check();
    const long N = spec.order;
    const int r = spec.rank;
    // fold the scale into the form
    IntMat form(r, IntVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            form[i][j] = mod_floor(spec.scale * mod_floor(spec.form[i][j], N), N);

    Cyclotomic result = Cyclotomic::one(N);
    for (auto [p, e] : factorize(N)) {
        const long long M = pow_ll(p, e);
        IntMat fm(r, IntVec(r));
        IntVec lm(r);
        for (int i = 0; i < r; ++i) {
            lm[i] = mod_floor(spec.linear[i], M);
            for (int j = 0; j < r; ++j) fm[i][j] = mod_floor(form[i][j], M);
        }
        auto axes = detail::diagonalize_mod_pe(fm, lm, p, e);
        // multiply the r per-axis count vectors, cyclically mod M
        std::vector<long long> local(M, 0);
        local[0] = 1;
        for (int i = 0; i < r; ++i) {
            auto ax = detail::axis_counts(axes.diag[i], axes.lin[i], M);
            std::vector<long long> next(M, 0);
            for (long long a = 0; a < M; ++a) {
                if (local[a] == 0) continue;
                for (long long b = 0; b < M; ++b) {
                    if (ax[b] == 0) continue;
                    next[(a + b) % M] += local[a] * ax[b];
                }
            }
            local = std::move(next);
        }
        // embed exponents t mod M into exponents mod N via the idempotent
        long long cof = N / M;
        long long idem = mod_floor(cof * inv_mod(cof, M), N);
        Cyclotomic factor(N);
        for (long long t = 0; t < M; ++t) {
            if (local[t] == 0) continue;
            factor.add_rotated(Cyclotomic::from_integer(N, local[t]), mod_floor(idem * t, N));
        }
        result = result * factor;
    }
    return result;
}

/// G_k(q; g) = sum over X_N of q^(k (l,l)) for the Gram form of the datum.
/// Routed through the closed form; k matters only mod N.
inline Cyclotomic g_k(const RootDatum& d, long N, long long k) {
    QuadGaussSpec spec;
    spec.order = N;
    spec.rank = d.rank;
    spec.form = d.gram;
    spec.linear = IntVec(d.rank, 0);
    spec.scale = mod_floor(k, N);
    return gauss_closed(spec);
}

} // namespace rtlens
