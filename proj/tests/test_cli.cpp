#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    Run r;
    const std::string cmd = std::string(WEILMONO_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("vtest exit codes") {
    CHECK(run("vtest --variant tau-trivial --q 2 --n 3 --m 1 --modulus 7").code == 0);
    const Run w = run("vtest --variant W1 --q 2 --n 4 --s 5 --t 1/7 --modulus 105");
    CHECK(w.code == 2);
    CHECK(w.out.find("\"x\": \"1/15\"") != std::string::npos);
    CHECK(w.out.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("family output") {
    const Run r = run("--format human family --q 3 --n 3 --m 1 --b 1 --c 3 --j 1 --kind Hj");
    CHECK(r.code == 0);
    CHECK(r.out.find("upstairs (13)") != std::string::npos);
    CHECK(r.out.find("downstairs (5)") != std::string::npos);
    const Run bad = run("family --q 2 --n 3 --m 1 --b 1 --c 1");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("bC - cB") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run("").code != 0);
    CHECK(run("vtest --bogus 1").code != 0);
    CHECK(run("trace --q 2 --n 3 --m 1 --b 1 --c 2 --field 2^3").code == 1);  // neither --u nor --sweep
    CHECK(run("--ceiling 64 trace --q 2 --n 3 --m 1 --b 1 --c 2 --field 2^7 --u 1").code == 1);
}

TEST_CASE("trace, audit and trinomial") {
    const Run csv = run("--format csv trace --q 2 --n 3 --m 1 --b 1 --c 2 --field 2^3 --sweep");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("u_index,j,value\n", 0) == 0);
    CHECK(csv.out.find("1,0,\"0\"") != std::string::npos);  // u = alpha has trace 0

    const Run a1 = run("audit --q 2 --n 3 --m 1 --b 1 --c 2 --fields 2^1,2^3,2^6");
    const Run a2 = run("audit --q 2 --n 3 --m 1 --b 1 --c 2 --fields 2^1,2^3,2^6");
    CHECK(a1.code == 0);
    CHECK(a1.out == a2.out);
    CHECK(run("trinomial --q 2 --n 3 --m 1 --x 0 --y 0 --r 1 --s 1 --fields 2^3,2^6").code == 0);
}

TEST_CASE("acceptance gates") {
    const Run na = run("--format human acceptance --q 2 --criteria 9 --audit-case 2,3,1,1,1");
    CHECK(na.code == 0);
    CHECK(na.out.find("[N/A ]") != std::string::npos);
    const Run sub = run("acceptance --q 2 --criteria 2 4");
    CHECK(sub.code == 0);
    CHECK(sub.out.find("\"status\": \"FAIL\"") == std::string::npos);
}
