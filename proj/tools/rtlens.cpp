// Command-line front end: exact Reshetikhin-Turaev invariants of lens spaces
// for the quantum groups of G2, F4 and E8 at odd roots of unity.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 capacity exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rtlens/errors.hpp"
#include "rtlens/gauss.hpp"
#include "rtlens/invariant.hpp"
#include "rtlens/lattice.hpp"
#include "rtlens/root_system.hpp"
#include "rtlens/serialize.hpp"
#include "rtlens/verify.hpp"

namespace {

using namespace rtlens;

struct CommonOpts {
    std::string algebra = "g2";
    long order = 7;
    long embedding = 1;
    std::string strategy = "auto";
    long long budget = kDefaultStateBudget;
    unsigned threads = 1;
    std::string format = "text";
    bool timings = false;
};

Strategy parse_strategy(const std::string& s) {
    if (s == "auto") return Strategy::Auto;
    if (s == "direct") return Strategy::Direct;
    if (s == "dense") return Strategy::Dense;
    if (s == "factored") return Strategy::Factored;
    throw Error("unknown strategy '" + s + "' (expected auto, direct, dense or factored)");
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_strategy = true) {
    cmd->add_option("--algebra", o.algebra, "Lie algebra: g2, f4 or e8")->capture_default_str();
    cmd->add_option("--order", o.order, "odd order N of the root of unity")->capture_default_str();
    cmd->add_option("--embedding", o.embedding, "embedding index c, gcd(c, N) = 1")
        ->capture_default_str();
    if (with_strategy)
        cmd->add_option("--strategy", o.strategy, "auto, direct, dense or factored")
            ->capture_default_str();
    cmd->add_option("--budget", o.budget, "state-space budget (env RT_LENS_BUDGET overrides default)")
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads (results are thread-count independent)")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "text or json (csv for table)")->capture_default_str();
}

long long env_budget() {
    const char* v = std::getenv("RT_LENS_BUDGET");
    if (!v) return kDefaultStateBudget;
    try {
        return std::stoll(v);
    } catch (...) {
        throw Error("RT_LENS_BUDGET is not an integer");
    }
}

std::string invariant_text(const InvariantResult& r, const std::string& algebra, long N,
                           const LensSpec& spec, long c, bool with_timings) {
    std::ostringstream os;
    os << "L(" << spec.m << "," << spec.n << ")  algebra=" << algebra << "  N=" << N << "\n";
    os << "hj_terms:";
    for (auto a : r.hj.terms) os << " " << a;
    os << "\nstrategy: " << strategy_name(r.strategy) << "\nsign_count: " << r.sign_count << "\n";
    os << "F     = " << r.f.to_string() << "\n";
    auto fe = r.f.embed(c);
    os << "F(emb)= (" << format_double(fe.real()) << ", " << format_double(fe.imag()) << ")\n";
    os << "nabla = " << r.nabla.to_string() << "\n";
    auto ne = r.nabla.embed(c);
    os << "nabla(emb) = " << format_double(ne.real()) << "\n";
    if (with_timings)
        os << "timings_ms: kernel=" << r.timings.kernel_ms << " normalize=" << r.timings.normalize_ms
           << " total=" << r.timings.total_ms << "\n";
    return os.str();
}

int cmd_invariant(const CommonOpts& o, long long m, long long n) {
    RootDatum d = build_root_datum(parse_lie_type(o.algebra));
    validate_order(d, o.order);
    RootOfUnitySpec emb(o.order, o.embedding);
    LensSpec spec{m, n};
    InvariantResult r =
        lens_invariant(d, o.order, spec, parse_strategy(o.strategy), o.budget, o.threads);
    if (o.format == "json") {
        auto j = invariant_to_json(r, lie_type_name(d.lie_type), o.order, spec, o.embedding, o.timings);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << invariant_text(r, lie_type_name(d.lie_type), o.order, spec, o.embedding,
                                    o.timings);
    }
    return 0;
}

int cmd_table(const CommonOpts& o, long long m_max) {
    RootDatum d = build_root_datum(parse_lie_type(o.algebra));
    validate_order(d, o.order);
    RootOfUnitySpec emb(o.order, o.embedding);
    // refuse degenerate orders before emitting anything
    detail::Normalization norm(d, o.order);
    norm.require_regular(d, o.order);
    std::ostringstream out;
    nlohmann::json rows = nlohmann::json::array();
    bool as_json = o.format == "json";
    if (!as_json) out << "m,n,hj_terms,f_real,f_imag,nabla,exact_f_json\n";
    for (long long m = 2; m <= m_max; ++m) {
        for (long long n = 1; n < m; ++n) {
            if (gcd_ll(m, n) != 1) continue;
            LensSpec spec{m, n};
            InvariantResult r = detail::lens_invariant_impl(d, o.order, spec,
                                                            parse_strategy(o.strategy), o.budget,
                                                            o.threads, norm);
            auto fe = r.f.embed(emb);
            auto ne = r.nabla.embed(emb);
            if (as_json) {
                rows.push_back({{"m", m},
                                {"n", n},
                                {"hj_terms", r.hj.terms},
                                {"f_embed", complex_to_json(fe)},
                                {"nabla", format_double(ne.real())},
                                {"f", cyc_to_json(r.f)}});
            } else {
                std::ostringstream hj;
                for (std::size_t i = 0; i < r.hj.terms.size(); ++i)
                    hj << (i ? ";" : "") << r.hj.terms[i];
                out << m << "," << n << "," << hj.str() << "," << format_double(fe.real()) << ","
                    << format_double(fe.imag()) << "," << format_double(ne.real()) << ","
                    << csv_quote(cyc_to_json(r.f).dump()) << "\n";
            }
        }
    }
    if (as_json) {
        nlohmann::json j;
        j["schema"] = kSchemaTag;
        j["command"] = "table";
        j["algebra"] = lie_type_name(d.lie_type);
        j["order"] = o.order;
        j["m_max"] = m_max;
        j["rows"] = std::move(rows);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << out.str();
    }
    return 0;
}

int cmd_gauss(const CommonOpts& o, long long k, bool check_brute) {
    RootDatum d = build_root_datum(parse_lie_type(o.algebra));
    validate_order(d, o.order);
    RootOfUnitySpec emb(o.order, o.embedding);
    Cyclotomic g = g_k(d, o.order, k);
    bool brute_match = true, brute_ran = false;
    if (check_brute) {
        QuadGaussSpec spec{o.order, d.rank, d.gram, IntVec(d.rank, 0), k};
        brute_match = g == gauss_brute(spec, o.budget);
        brute_ran = true;
    }
    auto ge = g.embed(emb);
    double mag2 = ge.real() * ge.real() + ge.imag() * ge.imag();
    if (o.format == "json") {
        nlohmann::json j;
        j["schema"] = kSchemaTag;
        j["command"] = "gauss";
        j["algebra"] = lie_type_name(d.lie_type);
        j["order"] = o.order;
        j["k"] = k;
        j["g_k"] = cyc_to_json(g);
        j["embedded"] = complex_to_json(ge);
        j["abs_squared"] = format_double(mag2);
        if (brute_ran) j["brute_match"] = brute_match;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "G_" << k << "(" << lie_type_name(d.lie_type) << ", N=" << o.order
                  << ") = " << g.to_string() << "\n|G|^2 (numeric) = " << format_double(mag2) << "\n";
        if (brute_ran) std::cout << "brute_match: " << (brute_match ? "yes" : "NO") << "\n";
    }
    return brute_ran && !brute_match ? 1 : 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, long long m_max, int samples) {
    LieType type = parse_lie_type(o.algebra);
    SuiteReport rep;
    if (suite == "root") {
        rep = verify_root(type);
    } else {
        RootDatum d = build_root_datum(type);
        validate_order(d, o.order);
        if (suite == "gauss")
            rep = verify_gauss(d, o.order, o.budget);
        else if (suite == "weyl")
            rep = verify_weyl(d, o.order, samples);
        else if (suite == "z")
            rep = verify_z(d, o.order, o.budget);
        else if (suite == "lens")
            rep = verify_lens(d, o.order, o.budget, o.threads);
        else if (suite == "kirby")
            rep = verify_kirby(d, o.order, o.budget, o.threads);
        else if (suite == "homeo")
            rep = verify_homeo(d, o.order, m_max, o.budget, o.threads);
        else
            throw Error("unknown suite '" + suite +
                        "' (expected root, gauss, weyl, z, lens, kirby or homeo)");
    }
    if (o.format == "json") {
        nlohmann::json j;
        j["schema"] = kSchemaTag;
        j["command"] = "verify";
        j["suite"] = rep.suite;
        j["algebra"] = o.algebra;
        j["order"] = o.order;
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["checks"] = std::move(checks);
        j["pass"] = rep.all_pass();
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << rep.suite << "." << c.name
                      << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Reshetikhin-Turaev lens-space invariants for G2, F4 and E8 quantum groups "
                 "at odd roots of unity"};
    app.require_subcommand(1);

    CommonOpts inv_o, tab_o, ver_o, gau_o;
    std::vector<long long> lens_mn;
    long long table_mmax = 8, verify_mmax = 7, gauss_k = 1;
    int verify_samples = 20;
    bool gauss_brute_flag = false;
    std::string verify_suite = "z";

    auto* inv = app.add_subcommand("invariant", "compute Sigma, F and nabla of one lens space");
    add_common(inv, inv_o);
    inv->add_flag("--timings", inv_o.timings, "include wall-clock timings in the output");
    inv->add_option("--lens", lens_mn, "lens parameters m n")->expected(2)->required();

    auto* tab = app.add_subcommand("table", "F and nabla for all coprime (m, n) up to m_max (CSV)");
    add_common(tab, tab_o);
    tab->add_option("--mmax", table_mmax, "largest m")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "run a property-verification suite");
    add_common(ver, ver_o, false);
    ver->add_option("--suite", verify_suite, "root, gauss, weyl, z, lens, kirby or homeo")
        ->capture_default_str();
    ver->add_option("--mmax", verify_mmax, "largest m for the homeo suite")->capture_default_str();
    ver->add_option("--samples", verify_samples, "random samples for the weyl suite")
        ->capture_default_str();

    auto* gau = app.add_subcommand("gauss", "evaluate the lattice Gauss sum G_k in closed form");
    add_common(gau, gau_o, false);
    gau->add_option("--k", gauss_k, "exponent scale k")->capture_default_str();
    gau->add_flag("--check-brute", gauss_brute_flag, "cross-check against direct summation");

    // environment default for the budget, applied before flag parsing
    try {
        long long eb = env_budget();
        inv_o.budget = tab_o.budget = ver_o.budget = gau_o.budget = eb;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // help/version exit 0, any parse problem is invalid input
    }

    try {
        if (inv->parsed()) return cmd_invariant(inv_o, lens_mn.at(0), lens_mn.at(1));
        if (tab->parsed()) return cmd_table(tab_o, table_mmax);
        if (ver->parsed()) return cmd_verify(ver_o, verify_suite, verify_mmax, verify_samples);
        if (gau->parsed()) return cmd_gauss(gau_o, gauss_k, gauss_brute_flag);
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
