#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sd/search.hpp"

using namespace sd;

namespace {

const GroupTag kZ1{Group::Zd, 1};
const GroupTag kHeis{Group::Heis};
const GroupTag kFib{Group::Fib};
const GroupTag kBs{Group::Bs12};

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(27, 4) == 17550);
    CHECK(binomial(73, 3) == 62196);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(60, 5) == 5461512);
}

TEST_CASE("combination cursor ranks lexicographically") {
    // walk all C(7,3) combinations and check against at_rank
    CombinationCursor cur = CombinationCursor::at_rank(7, 3, 0);
    std::uint64_t rank = 0;
    do {
        CombinationCursor probe = CombinationCursor::at_rank(7, 3, rank);
        CHECK(probe.idx == cur.idx);
        ++rank;
    } while (cur.advance());
    CHECK(rank == binomial(7, 3));
    CHECK(CombinationCursor::at_rank(7, 3, 0).idx == std::vector<std::size_t>{0, 1, 2});
    CHECK(CombinationCursor::at_rank(7, 3, binomial(7, 3) - 1).idx ==
          std::vector<std::size_t>{4, 5, 6});
}

TEST_CASE("ball enumeration sizes and normal forms") {
    CHECK(enumerate_ball(BallSpec{kZ1, {{0, 12}}, 0, 0, 0}).size() == 13);
    CHECK(enumerate_ball(BallSpec{kHeis, {}, 1, 1, 0}).size() == 27);
    CHECK(enumerate_ball(BallSpec{kFib, {}, 1, 1, 1}).size() == 27);
    // BS12 (2,1,1): p in -2..2 at e=0, odd p at e=1 -> 7 dyadics, 3 values of n
    FiniteSubset B = enumerate_ball(BallSpec{kBs, {}, 2, 1, 1});
    CHECK(B.size() == 21);
    for (const Element& g : B.elements()) {
        if (g.bs().e > 0) CHECK(g.bs().p % 2 != 0);
    }
    GroupTag z2{Group::Zd, 2};
    CHECK(enumerate_ball(BallSpec{z2, {{-1, 1}, {0, 2}}, 0, 0, 0}).size() == 9);
}

TEST_CASE("ball spec parsing round trips") {
    BallSpec b1 = parse_ball_spec(kZ1, "0..12");
    CHECK(b1.zd_windows == std::vector<std::pair<long long, long long>>{{0, 12}});
    CHECK(b1.describe() == "0..12");
    BallSpec b2 = parse_ball_spec(kHeis, "1,1");
    CHECK(b2.r1 == 1);
    CHECK(b2.describe() == "1;1");
    BallSpec b3 = parse_ball_spec(kFib, "2,2,1");
    CHECK(b3.r3 == 1);
    BallSpec b4 = parse_ball_spec(kBs, "2,1,1");
    CHECK(b4.r2 == 1);
    CHECK_THROWS(parse_ball_spec(kHeis, "1,2,3"));
}

TEST_CASE("task kinds round trip") {
    for (TaskKind kind : {TaskKind::TheoremC, TaskKind::TheoremD, TaskKind::Theorem1,
                          TaskKind::LemmaExt, TaskKind::Prop11Cert, TaskKind::TripleProps,
                          TaskKind::Converses})
        CHECK(parse_task_kind(to_string(kind)) == kind);
    CHECK(!parse_task_kind("theorem_x").has_value());
}

TEST_CASE("run config parsing") {
    RunConfig c = parse_run_config(
        "# comment\n"
        "workers = 4\n"
        "timing = none\n"
        "task = theorem_d\n"
        "group = heis\n"
        "ball = 1,1\n"
        "k = 3,4\n"
        "task = converses\n");
    CHECK(c.workers == 4);
    CHECK(!c.report_timing);
    REQUIRE(c.tasks.size() == 2);
    CHECK(c.tasks[0].kind == TaskKind::TheoremD);
    CHECK(c.tasks[0].ks == std::vector<int>{3, 4});
    REQUIRE(c.tasks[0].ball.has_value());
    CHECK(c.tasks[0].ball->r1 == 1);
    CHECK(c.tasks[1].kind == TaskKind::Converses);

    CHECK(parse_run_config("").tasks.empty());
    CHECK_THROWS_AS(parse_run_config("task = theorem_d\ngroup = heis\nball = 1,1\nfrob = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config("group = heis\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_run_config("task = theorem_d\n"), std::invalid_argument);  // no ball
    CHECK_THROWS_AS(parse_run_config("task = nonsense\ngroup = heis\nball = 1,1\n"),
                    std::invalid_argument);
    // certificate literals parse under the task's group
    RunConfig d = parse_run_config(
        "task = prop11_cert\ngroup = fib\nball = 2,2,1\ncertificate = F(0,0;1) F(-1,1;1)\n");
    REQUIRE(d.tasks.size() == 1);
    CHECK(d.tasks[0].certificate.size() == 2);
    CHECK(d.tasks[0].ks == std::vector<int>{5});  // default
}

TEST_CASE("theorem D holds on a small ball, absurd control does not") {
    VerificationTask task{TaskKind::TheoremD, BallSpec{kHeis, {}, 1, 1, 0}, {3}, {}, {}};
    VerificationSummary s = verify_theorem_D(task, 2);
    CHECK(s.subsets_examined == binomial(27, 3));
    CHECK(s.findings.empty());
    task.options["absurd"] = "true";
    VerificationSummary t = verify_theorem_D(task, 2);
    CHECK(!t.findings.empty());
    CHECK(t.findings.front().task == "theorem_d");
}

TEST_CASE("theorem C on the integer window") {
    VerificationTask task{TaskKind::TheoremC, BallSpec{kZ1, {{0, 8}}, 0, 0, 0}, {3, 4}, {}, {}};
    VerificationSummary s = verify_theorem_C(task, 2);
    CHECK(s.subsets_examined == binomial(9, 3) + binomial(9, 4));
    CHECK(s.findings.empty());
    CHECK(s.k == "3+4");
}

TEST_CASE("theorem 1 classifier on HEIS expects case (i) hits") {
    VerificationTask task{TaskKind::Theorem1, BallSpec{kHeis, {}, 1, 1, 0}, {4}, {}, {}};
    task.options["expect_case"] = "CASE_I";
    VerificationSummary s = verify_theorem_1(task, 4);
    CHECK(s.subsets_examined == binomial(27, 4));
    CHECK(s.findings.empty());
    // demanding the wrong case everywhere must produce findings
    task.options["expect_case"] = "CASE_II";
    CHECK(!verify_theorem_1(task, 4).findings.empty());
}

TEST_CASE("lemma extension sweeps") {
    // T = {b, ba, b a^b}: unique completion b a a^b
    VerificationTask near{TaskKind::LemmaExt, BallSpec{kFib, {}, 2, 2, 2}, {},
                          {Element(FibCoords{0, 0, 1}), Element(FibCoords{-1, 1, 1}),
                           Element(FibCoords{1, 0, 1})},
                          {}};
    VerificationSummary s = verify_lemma_extension(near);
    CHECK(s.findings.empty());
    CHECK(s.subsets_examined > 0);
    // T = {b, ba, b a^{b^2}}: no completion reaches 10
    VerificationTask far = near;
    far.certificate[2] = Element(FibCoords{0, 1, 1});
    CHECK(verify_lemma_extension(far).findings.empty());
    // a triple that matches neither shape is rejected
    VerificationTask bad = near;
    bad.certificate[2] = Element(FibCoords{2, 2, 1});
    CHECK_THROWS_AS(verify_lemma_extension(bad), std::invalid_argument);
}

TEST_CASE("prop 11 certificates") {
    CHECK(default_certificate(kFib) ==
          std::vector<Element>{Element(FibCoords{0, 0, 1}), Element(FibCoords{-1, 1, 1})});
    CHECK(default_certificate(kBs) ==
          std::vector<Element>{Element(BsCoords{0, 0, -1}), Element(BsCoords{1, 1, -1})});
    CHECK_THROWS_AS(default_certificate(kHeis), std::invalid_argument);

    VerificationTask task{TaskKind::Prop11Cert, BallSpec{kBs, {}, 3, 2, 1}, {5}, {}, {}};
    VerificationSummary s = verify_prop11_certificate(task, 4);
    CHECK(s.findings.empty());
    CHECK(s.subsets_examined > 0);
    // ball too small to hold the certificate: zero subsets
    VerificationTask tiny{TaskKind::Prop11Cert, BallSpec{kBs, {}, 1, 0, 0}, {5}, {}, {}};
    CHECK(verify_prop11_certificate(tiny, 1).subsets_examined == 0);
}

TEST_CASE("triple props on small balls") {
    VerificationTask task{TaskKind::TripleProps, BallSpec{kFib, {}, 1, 1, 1}, {3}, {}, {}};
    CHECK(verify_triple_props(task, 4).findings.empty());
    VerificationTask bs{TaskKind::TripleProps, BallSpec{kBs, {}, 2, 1, 1}, {3}, {}, {}};
    CHECK(verify_triple_props(bs, 4).findings.empty());
}

TEST_CASE("converse constructions all hit 3k-2") {
    VerificationTask task{TaskKind::Converses, {}, {}, {}, {}};
    VerificationSummary s = verify_converses(task);
    CHECK(s.findings.empty());
    CHECK(s.subsets_examined == 36 + 16 + 2 + 1);
    CHECK(s.group == "all");
    CHECK(s.ball == "-");
}

TEST_CASE("run_tasks aggregates, reports errors, stays deterministic") {
    CHECK(run_tasks(RunConfig{}).empty());

    RunConfig cfg = parse_run_config(
        "timing = none\n"
        "task = theorem_1\n"
        "group = heis\n"
        "ball = 1,1\n"
        "k = 4\n"
        "expect_case = CASE_I\n"
        "task = theorem_d\n"
        "group = bs12\n"
        "ball = 2,1,1\n"
        "k = 3\n"
        "absurd = true\n");
    cfg.workers = 1;
    auto one = run_tasks(cfg);
    cfg.workers = 8;
    auto eight = run_tasks(cfg);
    CHECK(summaries_to_csv(one, false) == summaries_to_csv(eight, false));
    CHECK(findings_to_jsonl(one) == findings_to_jsonl(eight));
    REQUIRE(one.size() == 2);
    CHECK(one[0].findings.empty());
    CHECK(!one[1].findings.empty());

    // a task error lands in the summary without aborting the batch
    RunConfig broken;
    broken.tasks.push_back(VerificationTask{TaskKind::LemmaExt, BallSpec{kFib, {}, 1, 1, 1},
                                            {}, {identity(kFib)}, {}});
    broken.tasks.push_back(VerificationTask{TaskKind::Converses, {}, {}, {}, {}});
    auto sums = run_tasks(broken);
    REQUIRE(sums.size() == 2);
    CHECK(sums[0].error.has_value());
    CHECK(!sums[1].error.has_value());
}

TEST_CASE("CSV and JSONL formats") {
    VerificationSummary s;
    s.task = "theorem_d";
    s.group = "heis";
    s.ball = "1;1";
    s.k = "3";
    s.subsets_examined = 42;
    s.seconds = 1.5;
    std::string with = summaries_to_csv({s}, true);
    CHECK(with == "task,group,ball,k,subsets_examined,findings,seconds\n"
                  "theorem_d,heis,1;1,3,42,0,1.500\n");
    std::string without = summaries_to_csv({s}, false);
    CHECK(without.find("0.000") != std::string::npos);

    Finding f{"theorem_d", {"H(0,0,1)", "H(1,0,0)"}, 7, "abelian", "non-commuting pair"};
    CHECK(f.to_json() ==
          R"x({"task":"theorem_d","subset":["H(0,0,1)","H(1,0,0)"],"square_size":7,)x"
          R"x("expected":"abelian","outcome":"non-commuting pair"})x");
    s.findings.push_back(f);
    CHECK(findings_to_jsonl({s}) == f.to_json() + "\n");
}
