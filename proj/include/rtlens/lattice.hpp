#pragma once

#include <utility>
#include <vector>

#include "rtlens/errors.hpp"
#include "rtlens/numeric.hpp"
#include "rtlens/root_system.hpp"

namespace rtlens {

inline constexpr long long kDefaultStateBudget = 2'000'000;

/// Admissibility of the order N for a given algebra: N odd, N greater than
/// the dual Coxeter number, not divisible by 3 for G2; gcd(det G, N) = 1 is
/// implied by these but checked anyway since the Gauss engine relies on it.
/// Throws InvalidOrderError naming the violated condition.
inline void validate_order(const RootDatum& d, long N) {
    if (N % 2 == 0)
        throw InvalidOrderError("order " + std::to_string(N) + " must be odd");
    if (N <= d.dual_coxeter)
        throw InvalidOrderError("order " + std::to_string(N) + " must exceed the dual Coxeter number " +
                                std::to_string(d.dual_coxeter) + " of " + lie_type_name(d.lie_type));
    if (d.lie_type == LieType::G2 && N % 3 == 0)
        throw InvalidOrderError("order divisible by 3 forbidden for G2");
    BigInt g = gcd(d.gram_det, BigInt(N));
    if (g != 1)
        throw InvalidOrderError("order " + std::to_string(N) + " shares a factor with det(G) = " +
                                d.gram_det.get_str());
}

/// An element of X_N = X/NX: residue coordinates in [0, N) in the simple-root
/// basis.  All derived pairings are taken from lifts and reduced mod N; the
/// Gram matrix is integral, so the residues do not depend on the lift.
struct WeightClass {
    const RootDatum* datum;
    long order;
    IntVec coords;
};

/// |X_N| = N^rank, guarded by the state budget (E8 always exceeds it).
inline long long xn_size_checked(const RootDatum& d, long N, long long budget = kDefaultStateBudget) {
    long long sz = pow_checked(N, d.rank, budget);
    if (sz < 0)
        throw CapacityError("state space too large: " + std::to_string(N) + "^" + std::to_string(d.rank) +
                            " classes exceed the budget of " + std::to_string(budget));
    return sz;
}

/// Lexicographic index codecs: coords[0] is the most significant digit, the
/// last coordinate varies fastest.  Pinned so recursion state is reproducible.
inline IntVec xn_coords(const RootDatum& d, long N, long long index) {
    IntVec c(d.rank);
    for (int i = d.rank; i-- > 0;) {
        c[i] = index % N;
        index /= N;
    }
    return c;
}

inline long long xn_index(const RootDatum& d, long N, const IntVec& coords) {
    long long idx = 0;
    for (int i = 0; i < d.rank; ++i) idx = idx * N + mod_floor(coords[i], N);
    return idx;
}

/// Forward range over all of X_N in lexicographic order.
class XnRange {
public:
    XnRange(const RootDatum& d, long N, long long budget = kDefaultStateBudget)
        : datum_(&d), order_(N), size_(xn_size_checked(d, N, budget)) {}

    class iterator {
    public:
        iterator(const RootDatum* d, long N, long long i) : datum_(d), order_(N), index_(i) {}
        WeightClass operator*() const { return {datum_, order_, xn_coords(*datum_, order_, index_)}; }
        iterator& operator++() {
            ++index_;
            return *this;
        }
        bool operator!=(const iterator& o) const { return index_ != o.index_; }

    private:
        const RootDatum* datum_;
        long order_;
        long long index_;
    };

    iterator begin() const { return {datum_, order_, 0}; }
    iterator end() const { return {datum_, order_, size_}; }
    long long size() const { return size_; }

private:
    const RootDatum* datum_;
    long order_;
    long long size_;
};

/// {(l,l) mod N, (l+2rho, l) mod N} computed from any lift of the class.
inline std::pair<long long, long long> quad_forms(const WeightClass& w) {
    const RootDatum& d = *w.datum;
    long long ll = pairing(d, w.coords, w.coords);
    IntVec shifted = w.coords;
    for (int i = 0; i < d.rank; ++i) shifted[i] += 2 * d.rho[i];
    long long l2r = pairing(d, shifted, w.coords);
    return {mod_floor(ll, w.order), mod_floor(l2r, w.order)};
}

/// The dominant open alcove F: integer lifts with
/// 0 < 2(l+rho, a)/(a,a) < N for every positive root a.  Stored as true
/// integer lifts because the defining inequalities live in X, not X_N.
struct AlcoveSet {
    std::vector<IntVec> members;
};

inline bool in_alcove(const RootDatum& d, long N, const IntVec& lift) {
    IntVec x = lift;
    for (int i = 0; i < d.rank; ++i) x[i] += d.rho[i];
    for (const auto& a : d.positive_roots) {
        long long t = 2 * pairing(d, a, x);
        long long s = pairing(d, a, a);
        if (!(t > 0 && t < N * s)) return false;
    }
    return true;
}

/// Enumerates the alcove through strictly dominant shifted weights: with
/// n = A(l+rho) the simple-root conditions say exactly n in [1, N-1]^r, and
/// the Cartan matrices here are unimodular, so l = A^{-1} n - rho scans every
/// candidate; the remaining positive-root conditions filter.
inline AlcoveSet alcove(const RootDatum& d, long N, long long budget = kDefaultStateBudget) {
    long long scan = pow_checked(N - 1, d.rank, budget);
    if (scan < 0)
        throw CapacityError("alcove enumeration too large: (" + std::to_string(N - 1) + ")^" +
                            std::to_string(d.rank) + " exceeds the budget of " + std::to_string(budget));
    AlcoveSet out;
    IntVec n(d.rank, 1);
    while (true) {
        IntVec x(d.rank, 0);
        for (int i = 0; i < d.rank; ++i)
            for (int j = 0; j < d.rank; ++j) x[i] += d.cartan_inverse[i][j] * n[j];
        IntVec lift(d.rank);
        for (int i = 0; i < d.rank; ++i) lift[i] = x[i] - d.rho[i];
        if (in_alcove(d, N, lift)) out.members.push_back(lift);
        int pos = d.rank - 1;
        while (pos >= 0) {
            if (++n[pos] <= N - 1) break;
            n[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
    }
    // members must map to distinct classes in X_N
    std::set<IntVec> classes;
    for (const auto& m : out.members) {
        IntVec c(d.rank);
        for (int i = 0; i < d.rank; ++i) c[i] = mod_floor(m[i], N);
        if (!classes.insert(c).second) throw Error("alcove: representatives not distinct mod N");
    }
    return out;
}

} // namespace rtlens
