#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rtlens/errors.hpp"
#include "rtlens/numeric.hpp"

namespace rtlens {

enum class LieType { G2, F4, E8 };

inline std::string lie_type_name(LieType t) {
    switch (t) {
        case LieType::G2: return "G2";
        case LieType::F4: return "F4";
        case LieType::E8: return "E8";
    }
    return "?";
}

inline LieType parse_lie_type(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(c));
    if (s == "g2") return LieType::G2;
    if (s == "f4") return LieType::F4;
    if (s == "e8") return LieType::E8;
    throw Error("unknown algebra '" + s + "' (expected g2, f4 or e8)");
}

using IntVec = std::vector<long long>;
using IntMat = std::vector<IntVec>;

/// Root-system data for one of G2, F4, E8 in the simple-root basis, with the
/// inner product normalized so the short simple roots have squared length 2
/// ((theta,theta) = 6, 4, 2 respectively).  Simple roots follow Bourbaki
/// numbering; for G2, alpha_1 is the short root.
struct RootDatum {
    LieType lie_type;
    int rank;
    IntMat cartan;           // A[i][j] = 2 (a_i, a_j) / (a_i, a_i)
    IntVec norms;            // (a_i, a_i), even positive integers
    IntMat gram;             // G[i][j] = (a_i, a_j)
    IntMat positive_roots;   // coordinates in the simple-root basis
    IntVec highest_root;     // theta
    IntVec rho;              // half-sum of positive roots
    long long dual_coxeter;  // 1 + 2 (rho, theta) / (theta, theta)
    BigInt gram_det;
    IntMat cartan_inverse;   // exact (the Cartan matrices here are unimodular)
};

/// Symmetric bilinear form x^T G y on simple-root coordinates.
inline long long pairing(const RootDatum& d, const IntVec& x, const IntVec& y) {
    if (x.size() != static_cast<std::size_t>(d.rank) || y.size() != static_cast<std::size_t>(d.rank))
        throw DimensionError("pairing: expected vectors of length " + std::to_string(d.rank));
    long long s = 0;
    for (int i = 0; i < d.rank; ++i) {
        if (x[i] == 0) continue;
        long long row = 0;
        for (int j = 0; j < d.rank; ++j) row += d.gram[i][j] * y[j];
        s += x[i] * row;
    }
    return s;
}

namespace detail {

inline BigInt det_bigint(const IntMat& m) {
    // fraction-free Bareiss elimination
    int n = static_cast<int>(m.size());
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = to_big(m[i][j]);
    BigInt prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return BigInt(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

inline IntMat invert_unimodular(const IntMat& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = to_rat(m[i][j]);
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw Error("invert_unimodular: singular matrix");
        std::swap(a[c], a[p]);
        Rational piv = a[c][c];
        for (int j = 0; j < 2 * n; ++j) a[c][j] /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (int j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMat out(n, IntVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational e = a[i][n + j];
            e.canonicalize();
            if (e.get_den() != 1) throw Error("invert_unimodular: non-integer inverse entry");
            out[i][j] = e.get_num().get_si();
        }
    return out;
}

} // namespace detail

/// Builds the root datum for the requested algebra.  Positive roots come from
/// reflection closure of the simple roots, so the tables cannot drift from
/// the Cartan matrix; every structural identity is checked on the way out.
inline RootDatum build_root_datum(LieType type) {
    RootDatum d;
    d.lie_type = type;
    switch (type) {
        case LieType::G2:
            d.rank = 2;
            d.cartan = {{2, -3}, {-1, 2}};
            d.norms = {2, 6};
            break;
        case LieType::F4:
            d.rank = 4;
            d.cartan = {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
            d.norms = {4, 4, 2, 2};
            break;
        case LieType::E8: {
            d.rank = 8;
            d.cartan.assign(8, IntVec(8, 0));
            for (int i = 0; i < 8; ++i) d.cartan[i][i] = 2;
            auto link = [&](int i, int j) { d.cartan[i][j] = d.cartan[j][i] = -1; };
            link(0, 2);
            link(2, 3);
            link(3, 4);
            link(4, 5);
            link(5, 6);
            link(6, 7);
            link(1, 3);
            d.norms.assign(8, 2);
            break;
        }
    }
    const int r = d.rank;
    d.gram.assign(r, IntVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if ((d.cartan[i][j] * d.norms[i]) % 2 != 0) throw Error("root datum: odd Gram entry");
            d.gram[i][j] = d.cartan[i][j] * d.norms[i] / 2;
        }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (d.gram[i][j] != d.gram[j][i]) throw Error("root datum: Gram not symmetric");
            if (d.cartan[i][j] * d.gram[i][i] != 2 * d.gram[i][j])
                throw Error("root datum: Cartan/Gram mismatch");
        }

    // reflection closure of the simple roots
    std::set<IntVec> all;
    std::vector<IntVec> frontier;
    for (int i = 0; i < r; ++i) {
        IntVec e(r, 0);
        e[i] = 1;
        all.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        IntVec b = frontier.back();
        frontier.pop_back();
        for (int i = 0; i < r; ++i) {
            long long c = 0;
            for (int j = 0; j < r; ++j) c += d.cartan[i][j] * b[j];
            IntVec nb = b;
            nb[i] -= c;
            if (all.insert(nb).second) frontier.push_back(nb);
        }
    }
    for (const auto& v : all) {
        bool nonneg = true, nonzero = false;
        for (auto c : v) {
            if (c < 0) nonneg = false;
            if (c != 0) nonzero = true;
        }
        if (nonneg && nonzero) d.positive_roots.push_back(v);
    }
    std::sort(d.positive_roots.begin(), d.positive_roots.end());

    std::size_t expected_pos = type == LieType::G2 ? 6 : type == LieType::F4 ? 24 : 120;
    if (d.positive_roots.size() != expected_pos)
        throw Error("root datum: positive root count " + std::to_string(d.positive_roots.size()));
    if (all.size() != 2 * expected_pos) throw Error("root datum: closure count mismatch");

    // highest root: maximal height, must dominate (theta + alpha_i never a root)
    d.highest_root = d.positive_roots.front();
    auto height = [](const IntVec& v) {
        long long h = 0;
        for (auto c : v) h += c;
        return h;
    };
    for (const auto& v : d.positive_roots)
        if (height(v) > height(d.highest_root)) d.highest_root = v;

    long long theta2 = pairing(d, d.highest_root, d.highest_root);
    long long expected_theta2 = type == LieType::G2 ? 6 : type == LieType::F4 ? 4 : 2;
    if (theta2 != expected_theta2) throw Error("root datum: (theta,theta) = " + std::to_string(theta2));

    d.rho.assign(r, 0);
    for (const auto& v : d.positive_roots)
        for (int i = 0; i < r; ++i) d.rho[i] += v[i];
    for (int i = 0; i < r; ++i) {
        if (d.rho[i] % 2 != 0) throw Error("root datum: 2*rho not even");
        d.rho[i] /= 2;
        if (d.rho[i] <= 0) throw Error("root datum: rho coordinate not positive");
    }

    long long rt = pairing(d, d.rho, d.highest_root);
    if ((2 * rt) % theta2 != 0) throw Error("root datum: dual Coxeter number not integral");
    d.dual_coxeter = 1 + 2 * rt / theta2;

    d.gram_det = detail::det_bigint(d.gram);
    BigInt expected_det = type == LieType::G2 ? 3 : type == LieType::F4 ? 4 : 1;
    if (d.gram_det != expected_det) throw Error("root datum: det(G) unexpected");

    if (detail::det_bigint(d.cartan) != 1) throw Error("root datum: Cartan matrix not unimodular");
    d.cartan_inverse = detail::invert_unimodular(d.cartan);
    return d;
}

/// One Weyl-group element as an integer matrix on simple-root coordinates,
/// with its determinant.
struct WeylElement {
    IntMat mat;
    int det;

    IntVec apply(const IntVec& x) const {
        int n = static_cast<int>(mat.size());
        IntVec y(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += mat[i][j] * x[j];
        return y;
    }
};

/// Full Weyl group by closure of the simple reflections.  Refused for E8
/// (order 696729600); everything on the E8 path uses the denominator product
/// instead of group sums.
inline std::vector<WeylElement> weyl_group(const RootDatum& d) {
    if (d.lie_type == LieType::E8)
        throw CapacityError("E8 Weyl group has order 696729600: too large to enumerate; "
                            "use the denominator product form");
    const int r = d.rank;
    std::vector<IntMat> gens(r, IntMat(r, IntVec(r, 0)));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < r; ++j) gens[i][k][j] = (k == j ? 1 : 0) - (k == i ? d.cartan[i][j] : 0);

    auto mul = [r](const IntMat& a, const IntMat& b) {
        IntMat c(r, IntVec(r, 0));
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k) {
                if (a[i][k] == 0) continue;
                for (int j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
            }
        return c;
    };

    IntMat id(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i) id[i][i] = 1;

    std::set<IntMat> seen;
    std::vector<WeylElement> out;
    std::vector<std::size_t> frontier;
    seen.insert(id);
    out.push_back({id, 1});
    frontier.push_back(0);
    while (!frontier.empty()) {
        std::size_t cur = frontier.back();
        frontier.pop_back();
        for (int i = 0; i < r; ++i) {
            IntMat nm = mul(gens[i], out[cur].mat);
            if (seen.insert(nm).second) {
                out.push_back({std::move(nm), -out[cur].det});
                frontier.push_back(out.size() - 1);
            }
        }
    }
    return out;
}

/// Plain-text dump of the structural data (used by documentation tests).
inline std::string debug_dump(const RootDatum& d) {
    std::ostringstream os;
    os << lie_type_name(d.lie_type) << ": rank " << d.rank << ", " << d.positive_roots.size()
       << " positive roots, h_vee = " << d.dual_coxeter << ", det(G) = " << d.gram_det.get_str() << "\n";
    os << "gram:\n";
    for (const auto& row : d.gram) {
        for (auto v : row) os << " " << v;
        os << "\n";
    }
    os << "rho:";
    for (auto v : d.rho) os << " " << v;
    os << "\ntheta:";
    for (auto v : d.highest_root) os << " " << v;
    os << "\n";
    return os.str();
}

} // namespace rtlens
