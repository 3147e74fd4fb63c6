// Acceptance suite: one criterion per runner, each printing a single
// [PASS]/[FAIL] verdict line (details indented beneath).  Exit code 0 iff
// every selected criterion passes.
//
// Criteria involving the normalized invariant F at (G2, N=5) or (F4, N=11)
// cannot pass: Q(0) = 0 there (the Weyl denominator has a factor with
// exponent divisible by N), the dominant alcove is empty, and F = h_0/Q(0)
// is 0/0.  Those runners execute the stated configuration anyway, report the
// exact witness, and additionally run the nearest regular order as clearly
// labelled supplementary evidence that the machinery itself is sound.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rtlens/gauss.hpp"
#include "rtlens/invariant.hpp"
#include "rtlens/lattice.hpp"
#include "rtlens/root_system.hpp"
#include "rtlens/verify.hpp"

using namespace rtlens;

namespace {

struct Ctx {
    std::ostringstream detail;
    bool pass = true;

    void expect(bool ok, const std::string& what) {
        detail << "    " << (ok ? "ok  " : "FAIL") << "  " << what << "\n";
        pass = pass && ok;
    }
    void note(const std::string& what) { detail << "    note  " << what << "\n"; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RootDatum& datum(LieType t) {
    static RootDatum g2 = build_root_datum(LieType::G2);
    static RootDatum f4 = build_root_datum(LieType::F4);
    static RootDatum e8 = build_root_datum(LieType::E8);
    switch (t) {
        case LieType::G2: return g2;
        case LieType::F4: return f4;
        default: return e8;
    }
}

std::string cfg(LieType t, long N) {
    return lie_type_name(t) + " N=" + std::to_string(N);
}

// F(S^3) through the chains [+1] and [-1] with the z-normalization.
// Stated time bounds: under 1 s at G2, under 5 min at F4 (factored).
void s3_chains(Ctx& c, LieType t, long N, Strategy strat, unsigned threads, bool supplementary) {
    RootDatum& d = datum(t);
    std::string tag = (supplementary ? "[supplementary] " : "") + cfg(t, N);
    auto t0 = std::chrono::steady_clock::now();
    try {
        Cyclotomic z = z_values(d, N).closed;
        Cyclotomic f_plus = chain_sigma(d, N, ChainLink{{1}}, strat, kDefaultStateBudget, threads);
        Cyclotomic sm = chain_sigma(d, N, ChainLink{{-1}}, strat, kDefaultStateBudget, threads);
        Cyclotomic f_minus = (z.inverse() * sm).canonical();
        bool ok = f_plus == Cyclotomic::one(N) && f_minus == Cyclotomic::one(N);
        double secs = seconds_since(t0);
        ok = ok && secs < (t == LieType::G2 ? 1.0 : 300.0);
        std::string timed = " (" + std::to_string(secs) + " s)";
        if (supplementary)
            c.note(tag + (ok ? ": F(S^3) = 1 via both chains" : ": MISMATCH") + timed);
        else
            c.expect(ok, tag + ": F(S^3) = 1 via chains [+1] and [-1], within the time bound" + timed);
    } catch (const DegenerateOrderError& e) {
        if (supplementary)
            c.note(tag + ": " + e.what());
        else
            c.expect(false, tag + ": " + e.what());
    }
}

bool c1(Ctx& c) {
    s3_chains(c, LieType::G2, 5, Strategy::Auto, 1, false);
    s3_chains(c, LieType::G2, 7, Strategy::Auto, 1, false);
    s3_chains(c, LieType::G2, 11, Strategy::Auto, 1, false);
    s3_chains(c, LieType::F4, 11, Strategy::Factored, 2, false);
    s3_chains(c, LieType::F4, 13, Strategy::Factored, 2, true);
    return c.pass;
}

bool c2(Ctx& c) {
    auto kirby = [&](LieType t, long N, Strategy strat, unsigned threads, bool supp) {
        RootDatum& d = datum(t);
        std::string tag = (supp ? "[supplementary] " : "") + cfg(t, N);
        auto t0 = std::chrono::steady_clock::now();
        try {
            Cyclotomic z = z_values(d, N).closed;
            Cyclotomic sm = chain_sigma(d, N, ChainLink{{-1}}, strat, kDefaultStateBudget, threads);
            bool ok = sm == z;
            double secs = seconds_since(t0);
            if (t == LieType::G2) ok = ok && secs < 1.0;
            if (supp)
                c.note(tag + (ok ? ": Sigma([-1]) = z" : ": MISMATCH"));
            else
                c.expect(ok, tag + ": Sigma([-1]) = z exactly (" + std::to_string(secs) + " s)");
        } catch (const DegenerateOrderError& e) {
            if (supp)
                c.note(tag + ": " + e.what());
            else
                c.expect(false, tag + ": " + e.what());
        }
    };
    kirby(LieType::G2, 5, Strategy::Auto, 1, false);
    kirby(LieType::G2, 7, Strategy::Auto, 1, false);
    kirby(LieType::G2, 11, Strategy::Auto, 1, false);
    kirby(LieType::F4, 11, Strategy::Factored, 2, false);
    kirby(LieType::F4, 13, Strategy::Factored, 2, true);
    return c.pass;
}

bool c3(Ctx& c) {
    auto unit = [&](LieType t, long N) {
        auto t0 = std::chrono::steady_clock::now();
        RootDatum& d = datum(t);
        Cyclotomic z = z_values(d, N).closed;
        bool ok = (z * z.conj()) == Cyclotomic::one(N);
        double secs = seconds_since(t0);
        c.expect(ok, cfg(t, N) + ": z * conj(z) = 1 exactly (" + std::to_string(secs) + " s)");
        if (t == LieType::E8) c.expect(secs < 10.0, "E8 case under 10 s");
    };
    for (long N : {5L, 7L, 11L, 13L}) unit(LieType::G2, N);
    for (long N : {11L, 13L}) unit(LieType::F4, N);
    unit(LieType::E8, 31);
    return c.pass;
}

bool c4(Ctx& c) {
    for (long N : {5L, 7L}) {
        RootDatum& d = datum(LieType::G2);
        ZValues z = z_values(d, N);
        if (!z.brute.has_value()) {
            c.expect(false, cfg(LieType::G2, N) + ": alcove sum unavailable");
            continue;
        }
        bool ok = *z.brute == z.closed;
        std::string what = cfg(LieType::G2, N) + ": product formula equals the alcove-sum definition";
        if (!ok)
            what += " [witness: alcove sum = " + z.brute->to_string() +
                    " (alcove size " + std::to_string(alcove(d, N).members.size()) +
                    "), closed form = " + z.closed.to_string() + "]";
        c.expect(ok, what);
    }
    return c.pass;
}

bool c5(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto equivalence = [&](long N, bool supp) {
        RootDatum& d = datum(LieType::G2);
        auto specs = lens_specs_up_to(12, 3);
        bool all = true;
        bool nonzero = false;
        for (const auto& spec : specs) {
            auto hj = hj_expand(spec);
            auto tw = h0_three_ways(d, N, hj.terms, kDefaultStateBudget, 1);
            all = all && tw.direct == tw.dense && tw.dense == tw.factored;
            nonzero = nonzero || !tw.direct.is_zero();
        }
        std::string what = "G2 N=" + std::to_string(N) + ": direct multisum = dense = factored on " +
                           std::to_string(specs.size()) + " lens chains (s <= 3, m <= 12)" +
                           (nonzero ? "" : " [all state sums are identically zero at this order]");
        if (supp)
            c.note(std::string("[supplementary] ") + what + (all ? "" : " MISMATCH"));
        else
            c.expect(all, what);
    };
    equivalence(5, false);
    equivalence(7, true);
    c.expect(seconds_since(t0) < 30.0, "completed under 30 s");
    return c.pass;
}

bool c6(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto engine = [&](LieType t, long N) {
        RootDatum& d = datum(t);
        SuiteReport rep = verify_gauss(d, N, kDefaultStateBudget, 50);
        for (const auto& chk : rep.checks)
            c.expect(chk.pass, cfg(t, N) + ": " + chk.name + (chk.detail.empty() ? "" : " [" + chk.detail + "]"));
    };
    for (long N : {5L, 7L, 11L, 13L}) engine(LieType::G2, N);
    engine(LieType::F4, 11);
    c.expect(seconds_since(t0) < 120.0, "completed under 2 min");
    return c.pass;
}

bool c7(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0x5EED);
    auto ident = [&](LieType t, long N, int samples) {
        RootDatum& d = datum(t);
        auto group = weyl_group(d);
        std::uniform_int_distribution<long long> dist(-2LL * N, 2LL * N);
        bool all = true;
        for (int i = 0; i < samples; ++i) {
            IntVec mu(d.rank);
            for (auto& v : mu) v = dist(rng);
            all = all && weyl_q(d, N, mu) == weyl_q_sum(d, N, mu, group);
        }
        c.expect(all, cfg(t, N) + ": denominator product = " + std::to_string(group.size()) +
                          "-term alternating sum at " + std::to_string(samples) + " random weights");
    };
    ident(LieType::G2, 11, 20);
    ident(LieType::F4, 13, 5);
    c.expect(seconds_since(t0) < 60.0, "completed under 1 min");
    return c.pass;
}

bool c8(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    RootDatum& d = datum(LieType::G2);
    for (long N : {5L, 7L}) {
        try {
            HomeoReport rep = homeo_suite(d, N, 9, Strategy::Auto, kDefaultStateBudget, 1);
            std::string what = "G2 N=" + std::to_string(N) + ": " + std::to_string(rep.checks.size()) +
                               " homeomorphism identities up to m = 9";
            if (N == 7) what += " (single color at this order, every F is 1)";
            if (!rep.all_pass)
                for (const auto& chk : rep.checks)
                    if (!chk.pass)
                        what += " [L(" + std::to_string(chk.m) + "," + std::to_string(chk.n) + ") vs " +
                                std::to_string(chk.n_partner) + "]";
            c.expect(rep.all_pass, what);
        } catch (const DegenerateOrderError& e) {
            c.expect(false, "G2 N=" + std::to_string(N) + ": " + e.what());
        }
    }
    HomeoReport sup = homeo_suite(d, 11, 7, Strategy::Auto, kDefaultStateBudget, 1);
    c.note("[supplementary] G2 N=11 (5 colors, invariants vary): " +
           std::to_string(sup.checks.size()) + " identities up to m = 7: " +
           (sup.all_pass ? "all hold" : "MISMATCH"));
    c.expect(seconds_since(t0) < 120.0, "completed under 2 min");
    return c.pass;
}

bool c9(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0xA11CE);
    std::uniform_int_distribution<long long> framing(-5, 7);
    auto antisym = [&](long N, bool supp) {
        RootDatum& d = datum(LieType::G2);
        auto group = weyl_group(d);
        bool all = true, nonzero = false;
        for (int trial = 0; trial < 3; ++trial) {
            IntVec fr{framing(rng), framing(rng)};
            auto table = h_tables(d, N, fr, Strategy::Dense);
            for (const auto& v : table) nonzero = nonzero || !v.is_zero();
            for (const auto& w : group) {
                for (long long idx = 0; idx < static_cast<long long>(table.size()); ++idx) {
                    IntVec lam = xn_coords(d, N, idx);
                    IntVec x(d.rank);
                    for (int i = 0; i < d.rank; ++i) x[i] = lam[i] + d.rho[i];
                    IntVec wx = w.apply(x);
                    IntVec lam2(d.rank);
                    for (int i = 0; i < d.rank; ++i) lam2[i] = wx[i] - d.rho[i];
                    Cyclotomic rhs = table[idx];
                    if (w.det < 0) rhs = -rhs;
                    all = all && table[xn_index(d, N, lam2)] == rhs;
                }
                if (!all) break;
            }
        }
        std::string what = "G2 N=" + std::to_string(N) +
                           ": h_{s(l+r)-r} = det(s) h_l for all 12 group elements, all classes, "
                           "3 random 2-term chains" +
                           (nonzero ? "" : " [tables identically zero at this order]");
        if (supp)
            c.note(std::string("[supplementary] ") + what + (all ? "" : " MISMATCH"));
        else
            c.expect(all, what);
    };
    antisym(5, false);
    antisym(7, true);
    c.expect(seconds_since(t0) < 10.0, "completed under 10 s");
    return c.pass;
}

int run_cli(const std::string& args, std::string& output) {
    std::string cmd = std::string(RTLENS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    std::array<char, 4096> buf;
    output.clear();
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) output.append(buf.data(), n);
    return WEXITSTATUS(pclose(pipe));
}

bool c10(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    std::string out;
    int rc = run_cli("invariant --algebra e8 --order 31 --lens 5 1", out);
    c.expect(rc == 3, "E8 lens request exits with the capacity code 3 (got " + std::to_string(rc) + ")");
    c.expect(out.find("31^8") != std::string::npos, "capacity message names 31^8");
    c.expect(out.find("F =") == std::string::npos && out.find("\"f\"") == std::string::npos,
             "no approximate value is returned");
    RootDatum& e8 = datum(LieType::E8);
    c.expect(e8.positive_roots.size() == 120, "E8 has 120 positive roots");
    c.expect(e8.gram_det == 1, "det(G) = 1");
    c.expect(e8.dual_coxeter == 30, "dual Coxeter number 30");
    c.expect(seconds_since(t0) < 1.0, "completed under 1 s");
    return c.pass;
}

bool c11(Ctx& c) {
    std::string a, b;
    int ra = run_cli("table --algebra g2 --order 5 --mmax 8 --threads 1", a);
    int rb = run_cli("table --algebra g2 --order 5 --mmax 8 --threads 3", b);
    bool produced_table = ra == 0 && rb == 0 && a.rfind("m,n,", 0) == 0;
    c.expect(produced_table,
             "G2 N=5: table runs produce CSV [witness: exit code " + std::to_string(ra) +
                 ", Q(0) = 0 at this order, no table exists]");
    if (produced_table) c.expect(a == b, "byte-identical across thread counts");

    std::string sa, sb;
    int sra = run_cli("table --algebra g2 --order 7 --mmax 8 --threads 1", sa);
    int srb = run_cli("table --algebra g2 --order 7 --mmax 8 --threads 3", sb);
    c.note("[supplementary] G2 N=7 m_max=8: exit codes " + std::to_string(sra) + "/" +
           std::to_string(srb) + ", byte-identical across threads 1 vs 3: " +
           (sa == sb && sra == 0 && srb == 0 && !sa.empty() ? "yes" : "NO"));
    return c.pass;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(Ctx&)> run;
};

const std::vector<Criterion>& criteria() {
    static std::vector<Criterion> list = {
        {1, "f-s3-equals-one (G2 N=5,7,11; F4 N=11)", c1},
        {2, "kirby-minus-multiplicativity Sigma([-1])=z", c2},
        {3, "z-unit-modulus (incl. E8 N=31)", c3},
        {4, "z-closed-form-vs-definition (G2 N=5,7)", c4},
        {5, "eq-H-oracle-equivalence (G2 N=5, s<=3)", c5},
        {6, "gauss-closed-vs-brute (G2 N<=13; F4 N=11; random specs)", c6},
        {7, "weyl-denominator-identity (20 G2 + 5 F4 samples)", c7},
        {8, "homeomorphism-invariance (G2 N=5,7; m<=9)", c8},
        {9, "h-table-weyl-anti-symmetry (G2, X_5 exhaustive)", c9},
        {10, "e8-capacity-honesty", c10},
        {11, "table-determinism (G2 N=5, m_max=8)", c11},
    };
    return list;
}

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) selected = std::atoi(argv[++i]);
    }
    bool all_pass = true;
    for (const auto& cr : criteria()) {
        if (selected != 0 && cr.id != selected) continue;
        Ctx ctx;
        bool pass = false;
        try {
            pass = cr.run(ctx);
        } catch (const std::exception& e) {
            ctx.detail << "    unexpected exception: " << e.what() << "\n";
            pass = false;
        }
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << "C" << cr.id << " " << cr.name << "\n"
                  << ctx.detail.str();
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}
