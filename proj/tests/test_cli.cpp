#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + std::string(RTLENS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("invariant command, JSON output") {
    auto r = run("invariant --algebra g2 --order 7 --lens 7 2 --format json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["schema"] == "rt-lens/1");
    CHECK(j["hj_terms"] == nlohmann::json({4, 2}));
    CHECK(j["order"] == 7);
    CHECK(j["f"]["order"] == 7);
    CHECK(!j.contains("timings"));
}

TEST_CASE("invalid inputs exit 2") {
    auto r = run("invariant --algebra g2 --order 9 --lens 7 2");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("3") != std::string::npos);

    auto bad_lens = run("invariant --algebra g2 --order 7 --lens 4 2");
    CHECK(bad_lens.exit_code == 2);

    auto degenerate = run("invariant --algebra g2 --order 5 --lens 7 2");
    CHECK(degenerate.exit_code == 2);
    CHECK(degenerate.output.find("Q(0) = 0") != std::string::npos);

    auto bad_embedding = run("invariant --algebra g2 --order 7 --lens 7 2 --embedding 7");
    CHECK(bad_embedding.exit_code == 2);
}

TEST_CASE("capacity exits 3 and names the state space") {
    auto r = run("invariant --algebra e8 --order 31 --lens 5 1");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("31^8") != std::string::npos);
}

TEST_CASE("table command emits deterministic CSV") {
    auto r = run("table --algebra g2 --order 7 --mmax 6");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 12); // header + 11 coprime pairs
    CHECK(r.output.rfind("m,n,hj_terms,f_real,f_imag,nabla,exact_f_json", 0) == 0);

    auto header_only = run("table --algebra g2 --order 7 --mmax 1");
    CHECK(header_only.exit_code == 0);
    CHECK(count_lines(header_only.output) == 1);

    auto again = run("table --algebra g2 --order 7 --mmax 6 --threads 2");
    CHECK(again.output == r.output);

    auto degenerate = run("table --algebra g2 --order 5 --mmax 6");
    CHECK(degenerate.exit_code == 2);
}

TEST_CASE("homeomorphic pairs share their F columns in the table") {
    auto r = run("table --algebra g2 --order 7 --mmax 8");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::vector<std::string> row72, row74;
    while (std::getline(in, line)) {
        if (line.rfind("7,2,", 0) == 0) row72 = split_csv_line(line);
        if (line.rfind("7,4,", 0) == 0) row74 = split_csv_line(line);
    }
    REQUIRE(row72.size() == 7);
    REQUIRE(row74.size() == 7);
    // 2 * 4 = 1 mod 7: same F, same nabla, same exact form
    CHECK(row72[3] == row74[3]);
    CHECK(row72[4] == row74[4]);
    CHECK(row72[5] == row74[5]);
    CHECK(row72[6] == row74[6]);
}

TEST_CASE("RT_LENS_BUDGET environment variable caps the state space") {
    auto r = run("invariant --algebra g2 --order 7 --lens 7 2", "RT_LENS_BUDGET=10 ");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("7^2") != std::string::npos);

    auto bad = run("invariant --algebra g2 --order 7 --lens 7 2", "RT_LENS_BUDGET=abc ");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("verify command") {
    auto z = run("verify --suite z --algebra e8 --order 31");
    CHECK(z.exit_code == 0);
    CHECK(z.output.find("[ok]") != std::string::npos);

    auto kirby = run("verify --suite kirby --algebra g2 --order 7 --format json");
    CHECK(kirby.exit_code == 0);
    auto j = nlohmann::json::parse(kirby.output);
    CHECK(j["pass"] == true);

    auto unknown = run("verify --suite nonsense --algebra g2 --order 7");
    CHECK(unknown.exit_code == 2);
}

TEST_CASE("gauss command with brute cross-check") {
    auto r = run("gauss --algebra g2 --order 7 --k 3 --check-brute");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("brute_match: yes") != std::string::npos);

    auto e8 = run("gauss --algebra e8 --order 31 --k 1 --format json");
    CHECK(e8.exit_code == 0);
    auto j = nlohmann::json::parse(e8.output);
    CHECK(j["schema"] == "rt-lens/1");
    CHECK(j["g_k"]["order"] == 31);
}
