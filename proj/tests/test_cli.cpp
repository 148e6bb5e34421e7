#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
std::string g_dir;

struct RunResult {
    int code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    std::string log = g_dir + "/run.log";
    std::string cmd = g_cli + " " + args + " > " + log + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = -1;
#ifdef _WIN32
    code = status;
#else
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
#endif
    return {code, slurp(log)};
}

const std::string kOgawa = "--scheme ogawa --field 2^2/1,1,1 --n 3 --k 2 --L 1 --alphas 2,3,1";
const std::string kZm = "--scheme zm --field 7^1 --n 4 --k 3 --L 2 --alphas 6,2,4,5 --betas 1,3";

}  // namespace

TEST_CASE("encode writes a four-ket state") {
    RunResult r = run(kOgawa + " --out " + g_dir + "/enc4.qramp encode --secret 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("kets=4") != std::string::npos);
    CHECK(r.out.find("scale_exp=1") != std::string::npos);
    std::string file = slurp(g_dir + "/enc4.qramp");
    CHECK(file.rfind("qramp-state v1", 0) == 0);
}

TEST_CASE("two-phase flow reproduces the direct encoding byte for byte") {
    REQUIRE(run(kOgawa + " --out " + g_dir + "/direct.qramp encode --secret 1").code == 0);
    RunResult adv = run(kOgawa + " --advanced 1 --out " + g_dir + "/sess.qramp advance");
    CHECK(adv.code == 0);
    CHECK(adv.out.find("distributed=1") != std::string::npos);
    RunResult cmp = run(kOgawa + " --out " + g_dir + "/completed.qramp complete --session " +
                        g_dir + "/sess.qramp --secret 1");
    CHECK(cmp.code == 0);
    CHECK(slurp(g_dir + "/completed.qramp") == slurp(g_dir + "/direct.qramp"));
}

TEST_CASE("empty advanced set still completes to the direct encoding") {
    REQUIRE(run(kZm + " --out " + g_dir + "/zdirect.qramp encode --secret 3,5").code == 0);
    REQUIRE(run(kZm + " --out " + g_dir + "/zsess.qramp advance").code == 0);
    RunResult cmp = run(kZm + " --out " + g_dir + "/zcompleted.qramp complete --session " +
                        g_dir + "/zsess.qramp --secret 3,5");
    CHECK(cmp.code == 0);
    CHECK(slurp(g_dir + "/zcompleted.qramp") == slurp(g_dir + "/zdirect.qramp"));
}

TEST_CASE("oversized advanced subset is rejected") {
    RunResult r = run(kOgawa + " --advanced 1,2 --out " + g_dir + "/bad.qramp advance");
    CHECK(r.code == 2);
    CHECK(r.out.find("forbidden set") != std::string::npos);
}

TEST_CASE("reconstruct prints the basis secret") {
    REQUIRE(run(kOgawa + " --out " + g_dir + "/r4.qramp encode --secret 1").code == 0);
    RunResult r = run(kOgawa + " reconstruct --state " + g_dir + "/r4.qramp --subset 2,3");
    CHECK(r.code == 0);
    CHECK(r.out.find("secret=1") != std::string::npos);

    REQUIRE(run(kZm + " --out " + g_dir + "/r7.qramp encode --secret 3,5").code == 0);
    RunResult z = run(kZm + " reconstruct --state " + g_dir + "/r7.qramp --subset 1,2,3");
    CHECK(z.code == 0);
    CHECK(z.out.find("secret=3,5") != std::string::npos);
}

TEST_CASE("reconstruct needs at least k shares") {
    RunResult r = run(kOgawa + " reconstruct --state " + g_dir + "/r4.qramp --subset 1");
    CHECK(r.code == 2);
    CHECK(r.out.find("need >= k") != std::string::npos);
}

TEST_CASE("invalid configurations exit with code 2") {
    RunResult dup = run("--scheme ogawa --field 2^2/1,1,1 --n 3 --k 2 --L 1 --alphas 2,2,1 "
                        "--out x encode --secret 1");
    CHECK(dup.code == 2);
    RunResult zero = run("--scheme ogawa --field 2^2/1,1,1 --n 3 --k 2 --L 1 --alphas 0,3,1 "
                         "--out x encode --secret 1");
    CHECK(zero.code == 2);
    CHECK(zero.out.find("nonzero alphas") != std::string::npos);
    RunResult len = run(kOgawa + " encode --secret 1,2");
    CHECK(len.code == 2);
    RunResult none = run(kOgawa + " encode");
    CHECK(none.code == 2);
}

TEST_CASE("verification suite passes on both worked configurations") {
    RunResult a = run(kOgawa + " --seed 7 verify --which all");
    CHECK(a.code == 0);
    CHECK(a.out.find("CHECK equivalence") != std::string::npos);
    CHECK(a.out.find("CHECK access-structure") != std::string::npos);
    CHECK(a.out.find("CHECK max-advance") != std::string::npos);
    CHECK(a.out.find("FAIL") == std::string::npos);

    RunResult z = run(kZm + " --seed 7 verify --which all");
    CHECK(z.code == 0);
    CHECK(z.out.find("CHECK strong-security") != std::string::npos);
    CHECK(z.out.find("FAIL") == std::string::npos);
}

TEST_CASE("identical config and seed give identical bytes") {
    RunResult a = run(kOgawa + " --seed 11 verify --which equivalence");
    RunResult b = run(kOgawa + " --seed 11 verify --which equivalence");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    REQUIRE(run(kZm + " --out " + g_dir + "/d1.qramp encode --secret 2,6").code == 0);
    REQUIRE(run(kZm + " --out " + g_dir + "/d2.qramp encode --secret 2,6").code == 0);
    CHECK(slurp(g_dir + "/d1.qramp") == slurp(g_dir + "/d2.qramp"));
}

TEST_CASE("config file supplies the flags") {
    std::string cfg = g_dir + "/run.ini";
    {
        std::ofstream out(cfg);
        // comma-containing values must be quoted or the ini parser splits them
        out << "scheme=ogawa\nfield=\"2^2/1,1,1\"\nn=3\nk=2\nL=1\nalphas=\"2,3,1\"\n";
    }
    RunResult r = run("--config " + cfg + " --out " + g_dir + "/cfg.qramp encode --secret 1");
    CHECK(r.code == 0);
    CHECK(slurp(g_dir + "/cfg.qramp") == slurp(g_dir + "/enc4.qramp"));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
        return 1;
    }
    g_cli = argv[1];
    char tmpl[] = "/tmp/qramp-cli-XXXXXX";
    if (!mkdtemp(tmpl)) {
        std::fprintf(stderr, "cannot create temp dir\n");
        return 1;
    }
    g_dir = tmpl;
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
