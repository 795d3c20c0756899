#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SDG_BINARY) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "sdg-cli-tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("square reports sizes and thresholds") {
    fs::path k6 = write_file("k6.set",
                             "group: zd(2)\n"
                             "# K6\n"
                             "(0,0)\n(1,0)\n(2,0)\n(0,1)\n(0,2)\n(1,1)\n");
    RunResult r = run("square " + k6.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("|S|=6 |S^2|=15") != std::string::npos);
    CHECK(r.out.find("3k-3=hit") != std::string::npos);

    fs::path prog = write_file("prog.set",
                               "group: bs12\nB(0;-1)\nB(1/2^1;-1)\nB(1;-1)\nB(3/2^1;-1)\n");
    RunResult p = run("square " + prog.string());
    CHECK(p.exit_code == 0);
    CHECK(p.out.find("|S|=4 |S^2|=10") != std::string::npos);
    CHECK(p.out.find("3k-2=hit") != std::string::npos);

    fs::path one = write_file("one.set", "group: fib\nF(2,-1;1)\n");
    RunResult q = run("square " + one.string());
    CHECK(q.exit_code == 0);
    CHECK(q.out.find("|S|=1 |S^2|=1") != std::string::npos);

    RunResult full = run("square --full " + one.string());
    CHECK(full.out.find("F(") != std::string::npos);
}

TEST_CASE("square rejects bad input with exit 2") {
    fs::path bad = write_file("bad.set", "group: heis\nH(1,2)\n");
    CHECK(run("square " + bad.string()).exit_code == 2);
    fs::path dup = write_file("dup.set", "group: heis\nH(1,2,3)\nH(1,2,3)\n");
    RunResult r = run("square " + dup.string());
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("duplicate") != std::string::npos);
    fs::path headerless = write_file("nohdr.set", "H(1,2,3)\n");
    CHECK(run("square " + headerless.string()).exit_code == 2);
    CHECK(run("square " + (scratch() / "missing.set").string()).exit_code == 2);
}

TEST_CASE("classify reports cases and exit codes") {
    fs::path casei = write_file("casei.set",
                                "group: heis\nH(1,0,0)\nH(1,0,1)\nH(0,1,0)\nH(0,1,1)\n");
    RunResult r = run("classify " + casei.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("CASE_I") != std::string::npos);

    fs::path lemma = write_file("lemma.set",
                                "group: fib\nF(0,0;1)\nF(-1,1;1)\nF(1,0;1)\nF(0,1;1)\n");
    RunResult l = run("classify " + lemma.string());
    CHECK(l.exit_code == 0);
    CHECK(l.out.find("CASE_III_A") != std::string::npos);

    fs::path ab = write_file("ab.set", "group: zd(1)\n(0)\n(1)\n(3)\n(7)\n");
    RunResult a = run("classify " + ab.string());
    CHECK(a.exit_code == 0);
    CHECK(a.out.find("ABELIAN") != std::string::npos);

    fs::path small = write_file("small.set", "group: zd(1)\n(0)\n(1)\n(2)\n");
    RunResult s = run("classify " + small.string());
    CHECK(s.exit_code == 3);
    CHECK(s.out.find("precondition") != std::string::npos);

    fs::path ap = write_file("ap.set", "group: zd(1)\n(0)\n(1)\n(2)\n(3)\n");
    CHECK(run("classify " + ap.string()).exit_code == 3);  // |S^2| = 7, not 10
}

TEST_CASE("construct emits set files that round trip") {
    RunResult r = run("construct case-ii --group bs12 --x \"B(0;-1)\" --c \"B(1;0)\" --k 6 --check");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("group: bs12") != std::string::npos);
    CHECK(r.out.find("|S^2|=16") != std::string::npos);
    CHECK(r.out.find(" ok") != std::string::npos);

    // round trip through classify ("# check" line parses as a comment)
    fs::path out = write_file("roundtrip.set", r.out);
    RunResult c = run("classify " + out.string());
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("CASE_II") != std::string::npos);

    RunResult h = run("construct case-i --group heis --i 1 --j 1");
    CHECK(h.exit_code == 0);
    CHECK(h.out.find("group: heis") != std::string::npos);

    RunResult bad = run("construct case-ii --group bs12 --x \"B(0;-1)\" --c \"B(0;0)\" --k 4");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("verify runs configs with the documented exit codes") {
    fs::path ok = write_file("ok.cfg",
                             "timing = none\n"
                             "task = theorem_d\n"
                             "group = heis\n"
                             "ball = 1,1\n"
                             "k = 3\n");
    RunResult r = run("verify " + ok.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("task,group,ball,k,subsets_examined,findings,seconds") != std::string::npos);
    CHECK(r.out.find("theorem_d,heis,1;1,3,2925,0,0.000") != std::string::npos);

    fs::path absurd = write_file("absurd.cfg",
                                 "timing = none\n"
                                 "task = theorem_d\n"
                                 "group = heis\n"
                                 "ball = 1,1\n"
                                 "k = 3\n"
                                 "absurd = true\n");
    RunResult a = run("verify " + absurd.string());
    CHECK(a.exit_code == 1);
    CHECK(a.out.find("\"outcome\"") != std::string::npos);  // findings streamed as JSONL

    fs::path bad = write_file("bad.cfg", "task = theorem_q\n");
    CHECK(run("verify " + bad.string()).exit_code == 2);

    fs::path empty = write_file("empty.cfg", "# nothing\n");
    RunResult e = run("verify " + empty.string());
    CHECK(e.exit_code == 0);
    CHECK(e.out == "task,group,ball,k,subsets_examined,findings,seconds\n");

    // output redirection to files
    fs::path csv = scratch() / "sum.csv";
    fs::path jsonl = scratch() / "find.jsonl";
    fs::path redirected = write_file("redir.cfg",
                                     "timing = none\n"
                                     "summary = " + csv.string() + "\n"
                                     "findings = " + jsonl.string() + "\n"
                                     "task = converses\n");
    CHECK(run("verify " + redirected.string()).exit_code == 0);
    std::ifstream cf(csv.string());
    std::string header;
    std::getline(cf, header);
    CHECK(header == "task,group,ball,k,subsets_examined,findings,seconds");
}

TEST_CASE("enumerate dumps balls") {
    RunResult r = run("enumerate --group heis --ball 1,1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("group: heis") != std::string::npos);
    // 27 elements + header
    int lines = 0;
    for (char ch : r.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 28);
}
