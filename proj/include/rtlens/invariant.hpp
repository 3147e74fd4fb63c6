#pragma once

#include <chrono>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtlens/cyclotomic.hpp"
#include "rtlens/errors.hpp"
#include "rtlens/gauss.hpp"
#include "rtlens/lattice.hpp"
#include "rtlens/numeric.hpp"
#include "rtlens/parallel.hpp"
#include "rtlens/root_system.hpp"

namespace rtlens {

// ---------------------------------------------------------------------------
// Surgery data
// ---------------------------------------------------------------------------

/// L(m, n) with m >= 2, 0 < n < m, gcd(m, n) = 1.
struct LensSpec {
    long long m, n;

    void check() const {
        if (m < 2 || n <= 0 || n >= m)
            throw InvalidLensError("lens parameters require m >= 2 and 0 < n < m, got (" +
                                   std::to_string(m) + ", " + std::to_string(n) + ")");
        if (gcd_ll(m, n) != 1)
            throw InvalidLensError("lens parameters must be coprime, got (" + std::to_string(m) + ", " +
                                   std::to_string(n) + ")");
    }
};

/// A chain link given by the framings of its components.
struct ChainLink {
    IntVec framings;

    void check() const {
        if (framings.empty()) throw InvalidLensError("chain link needs at least one component");
    }
};

/// Continued-fraction terms m/n = a_1 - 1/(a_2 - 1/(... - 1/a_s)), all a_i >= 2.
struct HJExpansion {
    IntVec terms;
};

/// Hirzebruch-Jung expansion by repeated ceiling division; the result is
/// verified by exact rational reconstruction before being returned.
inline HJExpansion hj_expand(const LensSpec& spec) {
    spec.check();
    HJExpansion out;
    long long m = spec.m, n = spec.n;
    while (n > 0) {
        long long a = (m + n - 1) / n;
        out.terms.push_back(a);
        long long nm = n, nn = a * n - m;
        m = nm;
        n = nn;
    }
    for (auto a : out.terms)
        if (a < 2) throw Error("hj_expand: term below 2");
    Rational v = to_rat(out.terms.back());
    for (std::size_t i = out.terms.size() - 1; i-- > 0;) v = to_rat(out.terms[i]) - 1 / v;
    if (v != to_rat(spec.m, spec.n)) throw Error("hj_expand: reconstruction mismatch");
    return out;
}

// ---------------------------------------------------------------------------
// Weyl sums and normalization constants
// ---------------------------------------------------------------------------

/// Q(mu) through the Weyl denominator product
///   prod over positive roots a of (q^(a, mu+rho) - q^-(a, mu+rho)),
/// which equals the |W|-term alternating sum (checked against weyl_q_sum in
/// the verify suite).  Accepts any integer lift; the value only depends on
/// the class mod N.
inline Cyclotomic weyl_q(const RootDatum& d, long N, const IntVec& mu_lift) {
    IntVec x(d.rank);
    for (int i = 0; i < d.rank; ++i) x[i] = mu_lift[i] + d.rho[i];
    Cyclotomic cur = Cyclotomic::one(N);
    for (const auto& a : d.positive_roots) {
        long long e = mod_floor(pairing(d, a, x), N);
        if (e == 0) return Cyclotomic::zero(N);
        Cyclotomic next(N);
        next.add_rotated(cur, e);
        next.sub_rotated(cur, N - e);
        cur = std::move(next);
    }
    return cur;
}

/// The alternating-sum definition of Q(mu); oracle for weyl_q.
inline Cyclotomic weyl_q_sum(const RootDatum& d, long N, const IntVec& mu_lift,
                             const std::vector<WeylElement>& group) {
    IntVec x(d.rank);
    for (int i = 0; i < d.rank; ++i) x[i] = mu_lift[i] + d.rho[i];
    Cyclotomic acc(N);
    for (const auto& w : group) {
        IntVec sr = w.apply(d.rho);
        long long e = 2 * pairing(d, sr, x);
        acc.add_rotated(Cyclotomic::from_integer(N, w.det), e);
    }
    return acc;
}

/// S_{lambda mu} = sum over W of det(s) q^(2 (s(lambda+rho), mu+rho)).
/// Off the main computational path; lives here for the verify suite.
inline Cyclotomic s_matrix_entry(const RootDatum& d, long N, const IntVec& lam_lift,
                                 const IntVec& mu_lift, const std::vector<WeylElement>& group) {
    IntVec xl(d.rank), xm(d.rank);
    for (int i = 0; i < d.rank; ++i) {
        xl[i] = lam_lift[i] + d.rho[i];
        xm[i] = mu_lift[i] + d.rho[i];
    }
    Cyclotomic acc(N);
    for (const auto& w : group) {
        IntVec sl = w.apply(xl);
        long long e = 2 * pairing(d, sl, xm);
        acc.add_rotated(Cyclotomic::from_integer(N, w.det), e);
    }
    return acc;
}

/// Omega = (-1)^|Phi+| q^(3 (rho,rho)) / G_1.  The sign is +1 for all three
/// algebras (6, 24 and 120 are even) but is computed, not assumed.
inline Cyclotomic omega_constant(const RootDatum& d, long N) {
    Cyclotomic g1 = g_k(d, N, 1);
    if (g1.is_zero()) throw Error("omega: G_1 vanished, which validate_order should preclude");
    long long rr = pairing(d, d.rho, d.rho);
    Cyclotomic om = Cyclotomic::root_power(N, 3 * rr) * g1.inverse();
    if (d.positive_roots.size() % 2 != 0) om = -om;
    return om.canonical();
}

// ---------------------------------------------------------------------------
// Table engine
// ---------------------------------------------------------------------------

enum class Strategy { Auto, Direct, Dense, Factored };

inline std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Auto: return "auto";
        case Strategy::Direct: return "direct-multisum";
        case Strategy::Dense: return "recursion-dense";
        case Strategy::Factored: return "recursion-factored";
    }
    return "?";
}

namespace detail {

/// Precomputed per-class exponent data for the recursion kernel
///   q^( a (mu+2rho, mu) + 2 (mu+rho, lambda+rho) ).
struct LensCtx {
    const RootDatum& d;
    long N;
    int r;
    long long size;
    long long two_rho_rho;                // 2 (rho, rho) mod N
    std::vector<long long> quad;          // (mu+2rho, mu) mod N
    std::vector<long long> rho_cross;     // 2 (mu, rho) mod N
    std::vector<IntVec> char_row;         // 2 G mu mod N (cross-term row)
    std::vector<long long> char_perm;     // index(2 G mu mod N), a bijection

    LensCtx(const RootDatum& dd, long NN, long long budget, unsigned threads)
        : d(dd), N(NN), r(dd.rank), size(xn_size_checked(dd, NN, budget)) {
        two_rho_rho = mod_floor(2 * pairing(d, d.rho, d.rho), N);
        quad.resize(size);
        rho_cross.resize(size);
        char_row.resize(size);
        char_perm.resize(size);
        parallel_for(static_cast<std::size_t>(size), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                IntVec mu = xn_coords(d, N, static_cast<long long>(idx));
                IntVec m2r(r);
                for (int i = 0; i < r; ++i) m2r[i] = mu[i] + 2 * d.rho[i];
                quad[idx] = mod_floor(pairing(d, m2r, mu), N);
                rho_cross[idx] = mod_floor(2 * pairing(d, mu, d.rho), N);
                IntVec row(r);
                for (int i = 0; i < r; ++i) {
                    long long s = 0;
                    for (int j = 0; j < r; ++j) s += d.gram[i][j] * mu[j];
                    row[i] = mod_floor(2 * s, N);
                }
                // v = 2 G mu mod N as a class; invertible since gcd(2 det G, N) = 1
                char_perm[idx] = xn_index(d, N, row);
                char_row[idx] = std::move(row);
            }
        });
    }
};

using Table = std::vector<Cyclotomic>;

/// Base table: Q(mu) for every class of X_N.
inline Table q_table(const LensCtx& ctx, unsigned threads) {
    Table t(static_cast<std::size_t>(ctx.size), Cyclotomic(ctx.N));
    parallel_for(static_cast<std::size_t>(ctx.size), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx)
            t[idx] = weyl_q(ctx.d, ctx.N, xn_coords(ctx.d, ctx.N, static_cast<long long>(idx)));
    });
    return t;
}

/// One recursion step, dense kernel: out[l] = sum over mu of
/// q^(a quad[mu] + rho_cross[mu] + 2(rho,rho) + 2(mu,l) + rho_cross[l]) in[mu].
/// Cost N^(2r) rotate-adds.  The Omega factor is deferred to normalization.
inline Table step_dense(const LensCtx& ctx, const Table& in, long long a, unsigned threads) {
    const long long n = ctx.size;
    std::vector<long long> base(n);
    for (long long m = 0; m < n; ++m)
        base[m] = mod_floor(mod_floor(a, ctx.N) * ctx.quad[m] + ctx.rho_cross[m] + ctx.two_rho_rho, ctx.N);
    Table out(static_cast<std::size_t>(n), Cyclotomic(ctx.N));
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t l = lo; l < hi; ++l) {
            IntVec lam = xn_coords(ctx.d, ctx.N, static_cast<long long>(l));
            Cyclotomic acc(ctx.N);
            for (long long m = 0; m < n; ++m) {
                long long cross = 0;
                for (int i = 0; i < ctx.r; ++i) cross += ctx.char_row[m][i] * lam[i];
                acc.add_rotated(in[m], base[m] + cross + ctx.rho_cross[l]);
            }
            out[l] = std::move(acc);
        }
    });
    return out;
}

/// One recursion step, factored kernel: diagonal phase, then the bilinear
/// character factor as r one-dimensional transforms after the substitution
/// nu = 2 G mu (a permutation of X_N), then the output phase.
/// Cost O(r N^(r+1)) rotate-adds instead of N^(2r).
inline Table step_factored(const LensCtx& ctx, const Table& in, long long a, unsigned threads) {
    const long long n = ctx.size;
    const long N = ctx.N;
    Table work(static_cast<std::size_t>(n), Cyclotomic(N));
    // diagonal phase + character substitution in one pass
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t m = lo; m < hi; ++m) {
            long long shift =
                mod_floor(mod_floor(a, N) * ctx.quad[m] + ctx.rho_cross[m] + ctx.two_rho_rho, N);
            work[ctx.char_perm[m]] = in[m].rotated(shift);
        }
    });
    // separable transform: axis by axis, out[.., c, ..] = sum_d q^(c d) in[.., d, ..]
    long long lines = n / N;
    for (int ax = 0; ax < ctx.r; ++ax) {
        long long stride = 1;
        for (int i = ctx.r - 1; i > ax; --i) stride *= N;
        Table next(static_cast<std::size_t>(n), Cyclotomic(N));
        parallel_for(static_cast<std::size_t>(lines), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t ln = lo; ln < hi; ++ln) {
                // base index of this line: digits of ln with a zero inserted at axis ax
                long long rest = static_cast<long long>(ln), base = 0;
                long long placevalue = 1;
                for (int i = ctx.r - 1; i >= 0; --i) {
                    if (i == ax) {
                        placevalue *= N;
                        continue;
                    }
                    base += (rest % N) * placevalue;
                    rest /= N;
                    placevalue *= N;
                }
                for (long c = 0; c < N; ++c) {
                    Cyclotomic acc(N);
                    for (long dd = 0; dd < N; ++dd)
                        acc.add_rotated(work[base + dd * stride], static_cast<long long>(c) * dd);
                    next[base + c * stride] = std::move(acc);
                }
            }
        });
        work = std::move(next);
    }
    // output phase
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t l = lo; l < hi; ++l) work[l].rotate(ctx.rho_cross[l]);
    });
    return work;
}

/// Literal evaluation of the chain multisum
///   sum over (mu_1..mu_s) in (X_N)^s of Q(mu_1)
///     q^( sum_i [ a_i (mu_i+2rho, mu_i) + 2 (mu_i+rho, mu_{i+1}+rho) ] ),
/// mu_{s+1} = 0.  Exponents are computed from the definition with fresh
/// pairings; only the Q table is shared with the recursion, so this is the
/// independent oracle for both kernel strategies.
inline Cyclotomic multisum_h0(const RootDatum& d, long N, const IntVec& framings, const Table& qtab,
                              long long budget, unsigned threads) {
    const int s = static_cast<int>(framings.size());
    const long long n = static_cast<long long>(qtab.size());
    long long tuples = pow_checked(n, s, 10 * budget);
    if (tuples < 0)
        throw CapacityError("direct multisum over " + std::to_string(n) + "^" + std::to_string(s) +
                            " tuples exceeds the budget");
    std::vector<IntVec> lifts(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) lifts[i] = xn_coords(d, N, i);
    const IntVec zero(d.rank, 0);

    long long outer = n;
    long long inner = tuples / n;
    std::vector<Cyclotomic> partial(static_cast<std::size_t>(outer), Cyclotomic(N));
    parallel_for(static_cast<std::size_t>(outer), threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<long long> tup(s, 0);
        for (std::size_t first = lo; first < hi; ++first) {
            Cyclotomic acc(N);
            for (long long restIdx = 0; restIdx < inner; ++restIdx) {
                tup[0] = static_cast<long long>(first);
                long long rest = restIdx;
                for (int i = s - 1; i >= 1; --i) {
                    tup[i] = rest % n;
                    rest /= n;
                }
                long long e = 0;
                for (int i = 0; i < s; ++i) {
                    const IntVec& mu = lifts[tup[i]];
                    IntVec m2r(d.rank), mr(d.rank), nr(d.rank);
                    const IntVec& nxt = (i + 1 < s) ? lifts[tup[i + 1]] : zero;
                    for (int c = 0; c < d.rank; ++c) {
                        m2r[c] = mu[c] + 2 * d.rho[c];
                        mr[c] = mu[c] + d.rho[c];
                        nr[c] = nxt[c] + d.rho[c];
                    }
                    e += framings[i] * pairing(d, m2r, mu) + 2 * pairing(d, mr, nr);
                }
                acc.add_rotated(qtab[tup[0]], e);
            }
            partial[first] = std::move(acc);
        }
    });
    Cyclotomic total(N);
    for (auto& p : partial) total += p;
    return total;
}

/// Normalization data shared by every invariant computation at one (g, N).
struct Normalization {
    Cyclotomic omega;
    Cyclotomic q0;
    std::optional<Cyclotomic> inv_q0; // absent iff Q(0) = 0 (degenerate order)

    Normalization(const RootDatum& d, long N)
        : omega(omega_constant(d, N)), q0(weyl_q(d, N, IntVec(d.rank, 0))) {
        if (!q0.is_zero()) inv_q0 = q0.inverse();
    }

    bool degenerate() const { return !inv_q0.has_value(); }

    void require_regular(const RootDatum& d, long N) const {
        if (degenerate())
            throw DegenerateOrderError(
                "Q(0) = 0 at (" + lie_type_name(d.lie_type) + ", N = " + std::to_string(N) +
                "): the normalized invariants F and nabla are undefined at this order");
    }
};

/// Budget-driven strategy choice.  The direct route enumerates N^(r s)
/// tuples, so it is additionally capped by the state budget; the dense
/// kernel costs N^(2r) per step and is only chosen while that stays small
/// (the factored kernel is the one that makes F4 tractable).  Explicit
/// choices are checked against the same feasibility limits.
inline Strategy select_strategy(Strategy req, int r, long N, int s, long long budget) {
    long long states = pow_checked(N, r, budget);
    long long tuple_cap = states < 0 ? -1 : pow_checked(states, s, 10 * budget);
    long long budget_sq = budget > 3'000'000'000LL ? std::numeric_limits<long long>::max() / 2
                                                   : budget * budget;
    const long long dense_time_cap = 50'000'000;
    switch (req) {
        case Strategy::Auto: {
            if (states > 0 && s * states <= budget / 10 && tuple_cap > 0) return Strategy::Direct;
            if (states > 0 && pow_checked(N, 2 * r, std::min(budget_sq, dense_time_cap)) > 0)
                return Strategy::Dense;
            if (states > 0) return Strategy::Factored;
            throw CapacityError("state space " + std::to_string(N) + "^" + std::to_string(r) +
                                " exceeds the budget of " + std::to_string(budget) +
                                "; no strategy can run");
        }
        case Strategy::Direct:
            if (tuple_cap < 0)
                throw CapacityError("direct multisum " + std::to_string(N) + "^" +
                                    std::to_string(r * s) + " exceeds the budget");
            return req;
        case Strategy::Dense:
        case Strategy::Factored:
            if (states < 0)
                throw CapacityError("state space " + std::to_string(N) + "^" + std::to_string(r) +
                                    " exceeds the budget of " + std::to_string(budget));
            return req;
    }
    return req;
}

/// h~ = h / Omega^s: the recursion state before normalization, kept over
/// integer coefficients.
inline Cyclotomic h0_unnormalized(const RootDatum& d, long N, const IntVec& framings, Strategy strat,
                                  long long budget, unsigned threads) {
    LensCtx ctx(d, N, budget, threads);
    Table tab = q_table(ctx, threads);
    if (strat == Strategy::Direct) return multisum_h0(d, N, framings, tab, budget, threads);
    for (auto a : framings)
        tab = strat == Strategy::Dense ? step_dense(ctx, tab, a, threads)
                                       : step_factored(ctx, tab, a, threads);
    return tab[0]; // class of lambda = 0
}

} // namespace detail

// ---------------------------------------------------------------------------
// z and the h tables
// ---------------------------------------------------------------------------

struct ZValues {
    Cyclotomic closed;
    std::optional<Cyclotomic> brute; // absent when the alcove scan is over budget
};

/// z both ways: the closed form (-1)^|Phi+| q^(6 (rho,rho)) G_{N-1} / G_1,
/// and the dominant-alcove sum  sum over the alcove of
/// d_l q^(-(l+2rho, l)) Q(l)/Q(0)  with d_l = Omega Q(l).  The alcove sum is
/// attempted only within budget; an empty alcove yields the empty sum 0
/// without ever forming Q(0)^-1.
inline ZValues z_values(const RootDatum& d, long N, long long budget = kDefaultStateBudget) {
    Cyclotomic g1 = g_k(d, N, 1);
    if (g1.is_zero()) throw Error("z: G_1 vanished");
    long long rr = pairing(d, d.rho, d.rho);
    Cyclotomic closed = Cyclotomic::root_power(N, 6 * rr) * g_k(d, N, N - 1) * g1.inverse();
    if (d.positive_roots.size() % 2 != 0) closed = -closed;
    ZValues out{closed.canonical(), std::nullopt};

    AlcoveSet alc;
    try {
        alc = alcove(d, N, budget);
    } catch (const CapacityError&) {
        return out;
    }
    if (alc.members.empty()) {
        out.brute = Cyclotomic::zero(N);
        return out;
    }
    detail::Normalization norm(d, N);
    if (norm.degenerate())
        throw Error("z: nonempty alcove with Q(0) = 0 should not happen");
    Cyclotomic acc(N);
    for (const auto& lift : alc.members) {
        Cyclotomic ql = weyl_q(d, N, lift);
        IntVec l2r(d.rank);
        for (int i = 0; i < d.rank; ++i) l2r[i] = lift[i] + 2 * d.rho[i];
        long long e = -pairing(d, l2r, lift);
        acc += (ql * ql).rotated(e);
    }
    out.brute = (norm.omega * acc * *norm.inv_q0).canonical();
    return out;
}

/// The full table h_lambda^(s)(a_1..a_s) over X_N, indexed lexicographically,
/// including the Omega^s normalization.  Strategy must be Dense or Factored
/// (Direct only produces the lambda = 0 entry).
inline std::vector<Cyclotomic> h_tables(const RootDatum& d, long N, const IntVec& framings,
                                        Strategy strat = Strategy::Dense,
                                        long long budget = kDefaultStateBudget, unsigned threads = 1) {
    if (framings.empty()) throw InvalidLensError("h_tables: empty framing list");
    if (strat == Strategy::Auto) {
        strat = detail::select_strategy(Strategy::Auto, d.rank, N,
                                        static_cast<int>(framings.size()), budget);
        if (strat == Strategy::Direct) strat = Strategy::Dense; // direct yields only the 0 entry
    }
    if (strat != Strategy::Dense && strat != Strategy::Factored)
        throw Error("h_tables: table output requires the dense or factored strategy");
    detail::select_strategy(strat, d.rank, N, static_cast<int>(framings.size()), budget);
    detail::LensCtx ctx(d, N, budget, threads);
    detail::Table tab = detail::q_table(ctx, threads);
    for (auto a : framings)
        tab = strat == Strategy::Dense ? detail::step_dense(ctx, tab, a, threads)
                                       : detail::step_factored(ctx, tab, a, threads);
    Cyclotomic om_pow = omega_constant(d, N).pow(static_cast<long long>(framings.size()));
    parallel_for(tab.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) tab[i] = (tab[i] * om_pow).canonical();
    });
    return tab;
}

// ---------------------------------------------------------------------------
// Linking-matrix signature
// ---------------------------------------------------------------------------

/// Eigenvalue counts of the tridiagonal linking matrix (diagonal = framings,
/// off-diagonal = 1), exact.  The leading-minor characteristic polynomials
/// form a Sturm sequence; sign variations at x = 0+ and x = 0- (evaluated
/// symbolically, so zero minors never arise) count eigenvalues <= 0 and < 0.
/// A zero eigenvalue counts as nonpositive.
struct SignatureCount {
    int nonpositive; // eigenvalues <= 0; this is the sign() used in F
    int negative;    // eigenvalues < 0
    int zero;        // = nonpositive - negative
};

inline SignatureCount signature_count(const ChainLink& chain) {
    chain.check();
    using Poly = std::vector<BigInt>; // coefficients in x, low degree first
    const int s = static_cast<int>(chain.framings.size());
    std::vector<Poly> minors(s + 1);
    minors[0] = {BigInt(1)};
    for (int k = 1; k <= s; ++k) {
        // d_k = (a_k - x) d_{k-1} - d_{k-2}
        const Poly& p1 = minors[k - 1];
        Poly nk(p1.size() + 1, BigInt(0));
        BigInt ak = to_big(chain.framings[k - 1]);
        for (std::size_t i = 0; i < p1.size(); ++i) {
            nk[i] += ak * p1[i];
            nk[i + 1] -= p1[i];
        }
        if (k >= 2) {
            const Poly& p2 = minors[k - 2];
            for (std::size_t i = 0; i < p2.size(); ++i) nk[i] -= p2[i];
        }
        minors[k] = std::move(nk);
    }
    auto sign_at = [](const Poly& p, bool plus_side) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p[j] == 0) continue;
            int sg = sgn(p[j]);
            if (!plus_side && (j % 2 == 1)) sg = -sg;
            return sg;
        }
        throw Error("signature: identically zero minor polynomial");
    };
    auto variations = [&](bool plus_side) {
        int v = 0, prev = sign_at(minors[0], plus_side);
        for (int k = 1; k <= s; ++k) {
            int cur = sign_at(minors[k], plus_side);
            if (cur != prev) ++v;
            prev = cur;
        }
        return v;
    };
    SignatureCount out{};
    out.nonpositive = variations(true);
    out.negative = variations(false);
    out.zero = out.nonpositive - out.negative;
    return out;
}

// ---------------------------------------------------------------------------
// The invariants
// ---------------------------------------------------------------------------

struct Timings {
    double kernel_ms = 0;
    double normalize_ms = 0;
    double total_ms = 0;
};

struct InvariantResult {
    Cyclotomic sigma;
    Cyclotomic f;
    Cyclotomic nabla;
    int sign_count;
    Strategy strategy;
    HJExpansion hj;
    Timings timings;
};

/// Sigma for an arbitrary chain link: Omega^s h~_0 / Q(0).  Requires a
/// regular order (Q(0) != 0).
inline Cyclotomic chain_sigma(const RootDatum& d, long N, const ChainLink& chain,
                              Strategy strat = Strategy::Auto, long long budget = kDefaultStateBudget,
                              unsigned threads = 1) {
    chain.check();
    validate_order(d, N);
    detail::Normalization norm(d, N);
    norm.require_regular(d, N);
    Strategy chosen =
        detail::select_strategy(strat, d.rank, N, static_cast<int>(chain.framings.size()), budget);
    Cyclotomic h0 = detail::h0_unnormalized(d, N, chain.framings, chosen, budget, threads);
    Cyclotomic om_pow = norm.omega.pow(static_cast<long long>(chain.framings.size()));
    return (om_pow * h0 * *norm.inv_q0).canonical();
}

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline InvariantResult lens_invariant_impl(const RootDatum& d, long N, const LensSpec& spec,
                                           Strategy strat, long long budget, unsigned threads,
                                           const Normalization& norm) {
    auto t0 = std::chrono::steady_clock::now();
    norm.require_regular(d, N);
    HJExpansion hj = hj_expand(spec);
    ChainLink chain{hj.terms};
    SignatureCount sig = signature_count(chain);
    if (sig.nonpositive != 0)
        throw Error("lens chain linking matrix unexpectedly not positive definite");
    Strategy chosen = select_strategy(strat, d.rank, N, static_cast<int>(hj.terms.size()), budget);
    Cyclotomic h0 = h0_unnormalized(d, N, hj.terms, chosen, budget, threads);
    double kern = ms_since(t0);
    auto t1 = std::chrono::steady_clock::now();
    Cyclotomic om_pow = norm.omega.pow(static_cast<long long>(hj.terms.size()));
    Cyclotomic sigma = (om_pow * h0 * *norm.inv_q0).canonical();
    // sign count is zero, so F = z^0 * Sigma = Sigma
    Cyclotomic f = sigma;
    Cyclotomic nabla = (f * f.conj()).canonical();
    InvariantResult out{std::move(sigma), std::move(f), std::move(nabla), sig.nonpositive,
                        chosen,           std::move(hj), Timings{}};
    out.timings.kernel_ms = kern;
    out.timings.normalize_ms = ms_since(t1);
    out.timings.total_ms = ms_since(t0);
    return out;
}

} // namespace detail

/// F, Sigma and nabla of L(m, n) from the Hirzebruch-Jung chain presentation.
inline InvariantResult lens_invariant(const RootDatum& d, long N, const LensSpec& spec,
                                      Strategy strat = Strategy::Auto,
                                      long long budget = kDefaultStateBudget, unsigned threads = 1) {
    spec.check();
    validate_order(d, N);
    detail::Normalization norm(d, N);
    return detail::lens_invariant_impl(d, N, spec, strat, budget, threads, norm);
}

// ---------------------------------------------------------------------------
// Homeomorphism regression suite
// ---------------------------------------------------------------------------

struct HomeoCheck {
    long long m, n, n_partner;
    std::string relation; // "F: n' = n^-1 mod m" or "nabla: n' = m - n"
    bool pass;
};

struct HomeoReport {
    bool all_pass = true;
    std::vector<HomeoCheck> checks;
};

/// For all coprime pairs up to m_max, asserts the homeomorphism identities
/// F(L(m,n)) = F(L(m,n')) for n n' = 1 mod m, and
/// nabla(L(m,n)) = nabla(L(m,m-n)).
inline HomeoReport homeo_suite(const RootDatum& d, long N, long long m_max,
                               Strategy strat = Strategy::Auto, long long budget = kDefaultStateBudget,
                               unsigned threads = 1) {
    validate_order(d, N);
    detail::Normalization norm(d, N);
    norm.require_regular(d, N);
    HomeoReport rep;
    std::map<std::pair<long long, long long>, InvariantResult> cache;
    auto get = [&](long long m, long long n) -> const InvariantResult& {
        auto key = std::make_pair(m, n);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, detail::lens_invariant_impl(d, N, LensSpec{m, n}, strat, budget,
                                                                threads, norm))
                     .first;
        return it->second;
    };
    for (long long m = 2; m <= m_max; ++m) {
        for (long long n = 1; n < m; ++n) {
            if (gcd_ll(m, n) != 1) continue;
            long long ninv = inv_mod(n, m);
            bool f_ok = get(m, n).f == get(m, ninv).f;
            rep.checks.push_back({m, n, ninv, "F: n' = n^-1 mod m", f_ok});
            long long nrev = m - n;
            bool nab_ok = get(m, n).nabla == get(m, nrev).nabla;
            rep.checks.push_back({m, n, nrev, "nabla: n' = m - n", nab_ok});
            rep.all_pass = rep.all_pass && f_ok && nab_ok;
        }
    }
    return rep;
}

} // namespace rtlens
