#include "sd/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sd {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::vector<std::string> literals(const FiniteSubset& S) {
    std::vector<std::string> out;
    out.reserve(S.size());
    for (const Element& g : S.elements()) out.push_back(format_element(g));
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

std::string BallSpec::describe() const {
    std::ostringstream out;
    if (tag.kind == Group::Zd) {
        for (std::size_t i = 0; i < zd_windows.size(); ++i) {
            if (i) out << ';';
            out << zd_windows[i].first << ".." << zd_windows[i].second;
        }
    } else if (tag.kind == Group::Heis) {
        out << r1 << ';' << r2;  // ';' keeps the CSV ball column unquoted
    } else {
        out << r1 << ';' << r2 << ';' << r3;
    }
    return out.str();
}

FiniteSubset enumerate_ball(const BallSpec& spec) {
    std::vector<Element> elems;
    switch (spec.tag.kind) {
        case Group::Zd: {
            if (static_cast<int>(spec.zd_windows.size()) != spec.tag.dim)
                throw std::invalid_argument("ZD ball needs one window per coordinate");
            std::vector<Int> cur(spec.zd_windows.size());
            std::function<void(std::size_t)> rec = [&](std::size_t d) {
                if (d == cur.size()) {
                    elems.push_back(Element(spec.tag, ZdCoords{cur}));
                    return;
                }
                for (long long v = spec.zd_windows[d].first; v <= spec.zd_windows[d].second; ++v) {
                    cur[d] = v;
                    rec(d + 1);
                }
            };
            rec(0);
            break;
        }
        case Group::Heis:
            for (long long i = -spec.r1; i <= spec.r1; ++i)
                for (long long j = -spec.r1; j <= spec.r1; ++j)
                    for (long long k = -spec.r2; k <= spec.r2; ++k)
                        elems.push_back(Element(HeisCoords{i, j, k}));
            break;
        case Group::Fib:
            for (long long u = -spec.r1; u <= spec.r1; ++u)
                for (long long v = -spec.r2; v <= spec.r2; ++v)
                    for (long long n = -spec.r3; n <= spec.r3; ++n)
                        elems.push_back(Element(FibCoords{u, v, n}));
            break;
        case Group::Bs12:
            for (long long p = -spec.r1; p <= spec.r1; ++p)
                for (long long e = 0; e <= spec.r2; ++e) {
                    if (e > 0 && (p % 2 == 0)) continue;  // not a normal form
                    for (long long n = -spec.r3; n <= spec.r3; ++n)
                        elems.push_back(Element(BsCoords{p, e, n}));
                }
            break;
    }
    return FiniteSubset::from_elements(std::move(elems));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at each step
    }
    return r;
}

CombinationCursor CombinationCursor::at_rank(std::size_t n, std::size_t k, std::uint64_t rank) {
    CombinationCursor c;
    c.n = n;
    c.idx.resize(k);
    std::size_t v = 0;
    for (std::size_t i = 0; i < k; ++i) {
        while (true) {
            std::uint64_t block = binomial(n - v - 1, k - i - 1);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        c.idx[i] = v++;
    }
    return c;
}

bool CombinationCursor::advance() {
    std::size_t k = idx.size();
    if (k == 0) return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::string to_string(TaskKind kind) {
    switch (kind) {
        case TaskKind::TheoremC: return "theorem_c";
        case TaskKind::TheoremD: return "theorem_d";
        case TaskKind::Theorem1: return "theorem_1";
        case TaskKind::LemmaExt: return "lemma_ext";
        case TaskKind::Prop11Cert: return "prop11_cert";
        case TaskKind::TripleProps: return "triple_props";
        case TaskKind::Converses: return "converses";
    }
    return "?";
}

std::optional<TaskKind> parse_task_kind(const std::string& name) {
    for (TaskKind kind : {TaskKind::TheoremC, TaskKind::TheoremD, TaskKind::Theorem1,
                          TaskKind::LemmaExt, TaskKind::Prop11Cert, TaskKind::TripleProps,
                          TaskKind::Converses})
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

std::string Finding::to_json() const {
    OrderedJson j;
    j["task"] = task;
    j["subset"] = subset;
    j["square_size"] = square_size;
    j["expected"] = expected;
    j["outcome"] = outcome;
    return j.dump();
}

std::vector<Element> default_certificate(const GroupTag& tag) {
    switch (tag.kind) {
        case Group::Fib: {
            Element b = Element(FibCoords{0, 0, 1});
            Element a = Element(FibCoords{1, 0, 0});
            return {b, mul(b, a)};
        }
        case Group::Bs12: {
            Element b = Element(BsCoords{0, 0, -1});
            Element a = Element(BsCoords{1, 0, 0});
            return {b, mul(b, a)};
        }
        default:
            throw std::invalid_argument("no generation certificate for this group");
    }
}

namespace {

// Streams every k-subset of the universe that contains all fixed elements,
// statically partitioned over workers; findings come back in subset-index
// order, so results do not depend on the worker count.
std::uint64_t scan_subsets(const FiniteSubset& universe, std::size_t k,
                           const std::vector<Element>& fixed, int workers,
                           const std::function<std::optional<Finding>(const FiniteSubset&)>& check,
                           std::vector<Finding>& findings) {
    std::vector<Element> fixed_sorted = fixed;
    for (const Element& g : fixed_sorted)
        if (!universe.contains(g)) return 0;  // ball too small for the certificate
    std::vector<Element> free_elems;
    for (const Element& g : universe.elements())
        if (std::find(fixed_sorted.begin(), fixed_sorted.end(), g) == fixed_sorted.end())
            free_elems.push_back(g);
    if (k < fixed_sorted.size()) return 0;
    std::size_t t = k - fixed_sorted.size();
    if (t > free_elems.size()) return 0;

    std::uint64_t total = binomial(free_elems.size(), t);
    int w = std::max(1, std::min<int>(workers, static_cast<int>(std::min<std::uint64_t>(
                                                   total, 1u << 10))));
    std::vector<std::vector<Finding>> local(static_cast<std::size_t>(w));
    auto run_range = [&](int wi, std::uint64_t begin, std::uint64_t end) {
        if (begin >= end) return;
        CombinationCursor cur = CombinationCursor::at_rank(free_elems.size(), t, begin);
        std::vector<Element> buf;
        for (std::uint64_t r = begin; r < end; ++r) {
            buf.assign(fixed_sorted.begin(), fixed_sorted.end());
            for (std::size_t i : cur.idx) buf.push_back(free_elems[i]);
            FiniteSubset S = FiniteSubset::from_elements(buf);
            if (auto f = check(S)) local[static_cast<std::size_t>(wi)].push_back(std::move(*f));
            cur.advance();
        }
    };
    if (w == 1) {
        run_range(0, 0, total);
    } else {
        std::vector<std::thread> threads;
        for (int wi = 0; wi < w; ++wi) {
            std::uint64_t begin = total * static_cast<std::uint64_t>(wi) / static_cast<std::uint64_t>(w);
            std::uint64_t end = total * static_cast<std::uint64_t>(wi + 1) / static_cast<std::uint64_t>(w);
            threads.emplace_back(run_range, wi, begin, end);
        }
        for (auto& th : threads) th.join();
    }
    for (auto& chunk : local)
        for (auto& f : chunk) findings.push_back(std::move(f));
    return total;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

VerificationSummary make_summary(const VerificationTask& task) {
    VerificationSummary s;
    s.task = to_string(task.kind);
    s.group = task.ball ? to_string(task.ball->tag) : "all";
    s.ball = task.ball ? task.ball->describe() : "-";
    if (task.ks.empty()) {
        s.k = "-";
    } else {
        std::ostringstream out;
        for (std::size_t i = 0; i < task.ks.size(); ++i) {
            if (i) out << '+';
            out << task.ks[i];
        }
        s.k = out.str();
    }
    return s;
}

void require_ball(const VerificationTask& task) {
    if (!task.ball) throw std::invalid_argument("task requires a ball");
}

}  // namespace

VerificationSummary verify_theorem_C(const VerificationTask& task, int workers) {
    require_ball(task);
    Timer timer;
    VerificationSummary s = make_summary(task);
    FiniteSubset ball = enumerate_ball(*task.ball);
    for (int k : task.ks) {
        if (k < 3) throw std::invalid_argument("theorem C check requires k >= 3");
        s.subsets_examined += scan_subsets(
            ball, static_cast<std::size_t>(k), {}, workers,
            [&](const FiniteSubset& S) -> std::optional<Finding> {
                long long sq = static_cast<long long>(square(S).size());
                long long kk = static_cast<long long>(S.size());
                if (sq > 3 * kk - 4) return std::nullopt;
                if (!pairwise_commuting(S))
                    return Finding{s.task, literals(S), sq, "<S> abelian when |S^2| <= 3k-4",
                                   "non-commuting pair"};
                auto prog = minimal_covering_progression(S);
                if (!prog)
                    return Finding{s.task, literals(S), sq,
                                   "covered by a geometric progression", "no covering progression"};
                if (prog->length > sq - kk + 1)
                    return Finding{s.task, literals(S), sq,
                                   "covering progression of length <= |S^2|-|S|+1",
                                   "length " + std::to_string(prog->length)};
                return std::nullopt;
            },
            s.findings);
    }
    s.seconds = timer.seconds();
    return s;
}

VerificationSummary verify_theorem_D(const VerificationTask& task, int workers) {
    require_ball(task);
    Timer timer;
    VerificationSummary s = make_summary(task);
    bool absurd = task.options.count("absurd") && task.options.at("absurd") == "true";
    FiniteSubset ball = enumerate_ball(*task.ball);
    for (int k : task.ks) {
        if (k < 3) throw std::invalid_argument("theorem D check requires k >= 3");
        s.subsets_examined += scan_subsets(
            ball, static_cast<std::size_t>(k), {}, workers,
            [&](const FiniteSubset& S) -> std::optional<Finding> {
                long long sq = static_cast<long long>(square(S).size());
                long long kk = static_cast<long long>(S.size());
                if (absurd) {
                    // Deliberate negative control: claims |S^2| <= 3k-3 always.
                    if (sq > 3 * kk - 3)
                        return Finding{s.task, literals(S), sq, "|S^2| <= 3k-3 (absurd control)",
                                       "|S^2| = " + std::to_string(sq)};
                    return std::nullopt;
                }
                if (sq <= 3 * kk - 3 && !pairwise_commuting(S))
                    return Finding{s.task, literals(S), sq, "<S> abelian when |S^2| <= 3k-3",
                                   "non-commuting pair"};
                return std::nullopt;
            },
            s.findings);
    }
    s.seconds = timer.seconds();
    return s;
}

VerificationSummary verify_theorem_1(const VerificationTask& task, int workers) {
    require_ball(task);
    Timer timer;
    VerificationSummary s = make_summary(task);
    std::string expect_case =
        task.options.count("expect_case") ? task.options.at("expect_case") : "";
    FiniteSubset ball = enumerate_ball(*task.ball);
    for (int k : task.ks) {
        if (k < 4) throw std::invalid_argument("theorem 1 check requires k >= 4");
        s.subsets_examined += scan_subsets(
            ball, static_cast<std::size_t>(k), {}, workers,
            [&](const FiniteSubset& S) -> std::optional<Finding> {
                long long sq = static_cast<long long>(square(S).size());
                long long kk = static_cast<long long>(S.size());
                if (sq != 3 * kk - 2 || pairwise_commuting(S)) return std::nullopt;
                ClassificationResult res = classify_small_doubling(S);
                if (res.tag == CaseTag::Unclassified)
                    return Finding{s.task, literals(S), sq, "one of the theorem's cases",
                                   "UNCLASSIFIED"};
                if (!expect_case.empty() && to_string(res.tag) != expect_case)
                    return Finding{s.task, literals(S), sq, expect_case, to_string(res.tag)};
                return std::nullopt;
            },
            s.findings);
    }
    s.seconds = timer.seconds();
    return s;
}

VerificationSummary verify_lemma_extension(const VerificationTask& task) {
    require_ball(task);
    if (task.certificate.size() != 3)
        throw std::invalid_argument("lemma extension needs a 3-element triple");
    Timer timer;
    VerificationSummary s = make_summary(task);
    FiniteSubset T = FiniteSubset::from_elements(task.certificate);
    if (T.size() != 3) throw std::invalid_argument("triple elements are not distinct");

    const Element& t = T[0];
    Element c = mul(inv(t), T[1]);
    bool near_shape = false;   // T = {t, tc, tc^w}: unique completion t c^{w^2}
    bool shape_found = false;
    Element expected = t;
    for (const Element& w : {t, inv(t)}) {
        Element cw = conjugate(c, w);
        Element cww = conjugate(cw, w);
        if (cww != mul(c, cw) || cww != mul(cw, c)) continue;
        if (T[2] == mul(t, cw)) {
            shape_found = true;
            near_shape = true;
            expected = mul(t, cww);
            break;
        }
        if (T[2] == mul(t, cww)) {
            shape_found = true;
            near_shape = false;
            break;
        }
    }
    if (!shape_found)
        throw std::invalid_argument("triple does not match a lemma shape with c^{t^2} = c c^t");

    FiniteSubset ball = enumerate_ball(*task.ball);
    for (const Element& x4 : ball.elements()) {
        if (compare(x4, T.max()) != Ordering::GT) continue;
        ++s.subsets_examined;
        std::vector<Element> ext(T.elements().begin(), T.elements().end());
        ext.push_back(x4);
        FiniteSubset S = FiniteSubset::from_elements(std::move(ext));
        long long sq = static_cast<long long>(square(S).size());
        if (near_shape) {
            if (sq == 10 && x4 != expected)
                s.findings.push_back(Finding{s.task, literals(S), sq,
                                             "only " + format_element(expected) + " attains 10",
                                             format_element(x4) + " attains 10"});
            if (x4 == expected && sq != 10)
                s.findings.push_back(Finding{s.task, literals(S), sq,
                                             format_element(expected) + " attains 10",
                                             "|S^2| = " + std::to_string(sq)});
        } else {
            if (sq == 10)
                s.findings.push_back(Finding{s.task, literals(S), sq, "|S^2| > 10",
                                             format_element(x4) + " attains 10"});
        }
    }
    s.seconds = timer.seconds();
    return s;
}

VerificationSummary verify_prop11_certificate(const VerificationTask& task, int workers) {
    require_ball(task);
    Timer timer;
    VerificationSummary s = make_summary(task);
    const GroupTag& tag = task.ball->tag;
    std::vector<Element> cert =
        task.certificate.empty() ? default_certificate(tag) : task.certificate;
    FiniteSubset ball = enumerate_ball(*task.ball);
    s.subsets_examined = scan_subsets(
        ball, 5, cert, workers,
        [&](const FiniteSubset& S) -> std::optional<Finding> {
            long long sq = static_cast<long long>(square(S).size());
            if (tag.kind == Group::Fib) {
                if (sq <= 13)
                    return Finding{s.task, literals(S), sq, "|S^2| >= 14",
                                   "|S^2| = " + std::to_string(sq)};
                return std::nullopt;
            }
            // BS12: every certified 5-subset at the boundary must be a
            // doubling-relation progression.
            if (sq < 13)
                return Finding{s.task, literals(S), sq, "|S^2| >= 13",
                               "|S^2| = " + std::to_string(sq)};
            if (sq == 13) {
                auto prog = detect_geometric_progression(S);
                if (!prog || relation_doubling(prog->ratio, prog->head) == DoublingRelation::Neither)
                    return Finding{s.task, literals(S), sq,
                                   "geometric progression with doubling relation",
                                   "no matching progression"};
            }
            return std::nullopt;
        },
        s.findings);
    s.seconds = timer.seconds();
    return s;
}

VerificationSummary verify_triple_props(const VerificationTask& task, int workers) {
    require_ball(task);
    Timer timer;
    VerificationSummary s = make_summary(task);
    const GroupTag tag = task.ball->tag;
    bool check_derived = tag.kind == Group::Fib || tag.kind == Group::Bs12;
    FiniteSubset ball = enumerate_ball(*task.ball);
    s.subsets_examined = scan_subsets(
        ball, 3, {}, workers,
        [&](const FiniteSubset& S) -> std::optional<Finding> {
            long long sq = static_cast<long long>(square(S).size());
            if (sq != 7 || pairwise_commuting(S)) return std::nullopt;
            TripleShape shape = detect_triple_shape(S);
            if (shape == TripleShape::None)
                return Finding{s.task, literals(S), sq, "one of the |S^2| = 7 shapes", "NONE"};
            if (check_derived) {
                int in_derived = 0;
                bool nontrivial_derived = false;
                for (const Element& g : S.elements())
                    if (derived_part_test(g)) {
                        ++in_derived;
                        if (!is_identity(g)) nontrivial_derived = true;
                    }
                bool side = !nontrivial_derived || in_derived == 2;
                if (!side)
                    return Finding{s.task, literals(S), sq,
                                   "S cap G' in {1} or |S cap G'| = 2",
                                   "|S cap G'| = " + std::to_string(in_derived)};
            }
            return std::nullopt;
        },
        s.findings);
    s.seconds = timer.seconds();
    return s;
}

VerificationSummary verify_converses(const VerificationTask& task) {
    Timer timer;
    VerificationSummary s = make_summary(task);
    auto check = [&](const FiniteSubset& S, const std::string& what) {
        ++s.subsets_examined;
        long long sq = static_cast<long long>(square(S).size());
        long long kk = static_cast<long long>(S.size());
        if (sq != 3 * kk - 2)
            s.findings.push_back(Finding{s.task, literals(S), sq,
                                         what + ": |S^2| = 3|S|-2",
                                         "|S^2| = " + std::to_string(sq)});
    };

    // Case (i) in HEIS over i,j in 0..5.
    Element ha = Element(HeisCoords{1, 0, 0});
    Element hb = Element(HeisCoords{0, 1, 0});
    Element hc = Element(HeisCoords{0, 0, 1});
    for (long long i = 0; i <= 5; ++i)
        for (long long j = 0; j <= 5; ++j)
            check(construct_case_i(ha, hb, hc, i, j, CaseIWitness::Orientation::AbEqBac),
                  "case i");

    // Case (ii) in BS12 over k in 3..10, both orientations.
    Element ba = Element(BsCoords{1, 0, 0});
    Element bb = Element(BsCoords{0, 0, -1});
    for (long long k = 3; k <= 10; ++k) {
        check(construct_case_ii(bb, ba, k), "case ii (c^x = c^2)");
        check(construct_case_ii(inv(bb), ba, k), "case ii ((c^2)^x = c)");
    }

    // Case (iii)(a) in FIB, both head variants.
    Element fa = Element(FibCoords{1, 0, 0});
    Element fb = Element(FibCoords{0, 0, 1});
    check(construct_case_iii_a(fb, fa, CaseIIIaWitness::Variant::X), "case iii(a)");
    check(construct_case_iii_a(fb, fa, CaseIIIaWitness::Variant::XInv), "case iii(a)");

    // Case (iii)(b) in BS12.
    check(construct_case_iii_b(ba, bb), "case iii(b)");

    s.seconds = timer.seconds();
    return s;
}

std::vector<VerificationSummary> run_tasks(const RunConfig& config) {
    std::vector<VerificationSummary> out;
    for (const VerificationTask& task : config.tasks) {
        try {
            switch (task.kind) {
                case TaskKind::TheoremC: out.push_back(verify_theorem_C(task, config.workers)); break;
                case TaskKind::TheoremD: out.push_back(verify_theorem_D(task, config.workers)); break;
                case TaskKind::Theorem1: out.push_back(verify_theorem_1(task, config.workers)); break;
                case TaskKind::LemmaExt: out.push_back(verify_lemma_extension(task)); break;
                case TaskKind::Prop11Cert:
                    out.push_back(verify_prop11_certificate(task, config.workers));
                    break;
                case TaskKind::TripleProps:
                    out.push_back(verify_triple_props(task, config.workers));
                    break;
                case TaskKind::Converses: out.push_back(verify_converses(task)); break;
            }
        } catch (const std::exception& e) {
            VerificationSummary s = make_summary(task);
            s.error = e.what();
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::string summaries_to_csv(const std::vector<VerificationSummary>& summaries,
                             bool report_timing) {
    std::ostringstream out;
    out << "task,group,ball,k,subsets_examined,findings,seconds\n";
    for (const auto& s : summaries) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.3f", report_timing ? s.seconds : 0.0);
        out << s.task << ',' << s.group << ',' << s.ball << ',' << s.k << ','
            << s.subsets_examined << ',' << (s.error ? std::string("error") : std::to_string(s.findings.size()))
            << ',' << secs << '\n';
    }
    return out.str();
}

std::string findings_to_jsonl(const std::vector<VerificationSummary>& summaries) {
    std::ostringstream out;
    for (const auto& s : summaries)
        for (const Finding& f : s.findings) out << f.to_json() << '\n';
    return out.str();
}

BallSpec parse_ball_spec(const GroupTag& tag, const std::string& text) {
    BallSpec spec;
    spec.tag = tag;
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == ',' || ch == ';') {
                parts.push_back(trim(cur));
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        parts.push_back(trim(cur));
    }
    auto as_ll = [](const std::string& s) { return std::stoll(s); };
    if (tag.kind == Group::Zd) {
        // windows "lo..hi" or a radius r meaning -r..r; one per coordinate,
        // or a single entry reused across coordinates.
        std::vector<std::pair<long long, long long>> windows;
        for (const std::string& p : parts) {
            auto dots = p.find("..");
            if (dots == std::string::npos) {
                long long r = as_ll(p);
                windows.emplace_back(-r, r);
            } else {
                windows.emplace_back(as_ll(p.substr(0, dots)), as_ll(p.substr(dots + 2)));
            }
        }
        if (windows.size() == 1 && tag.dim > 1)
            windows.assign(static_cast<std::size_t>(tag.dim), windows.front());
        spec.zd_windows = std::move(windows);
        return spec;
    }
    std::vector<long long> rs;
    for (const std::string& p : parts) rs.push_back(as_ll(p));
    switch (tag.kind) {
        case Group::Heis:
            if (rs.size() != 2) throw std::invalid_argument("heis ball needs r1,r2");
            spec.r1 = rs[0];
            spec.r2 = rs[1];
            break;
        case Group::Fib:
            if (rs.size() == 2) {
                spec.r1 = spec.r2 = rs[0];
                spec.r3 = rs[1];
            } else if (rs.size() == 3) {
                spec.r1 = rs[0];
                spec.r2 = rs[1];
                spec.r3 = rs[2];
            } else {
                throw std::invalid_argument("fib ball needs r1,r2 or ru,rv,rn");
            }
            break;
        case Group::Bs12:
            if (rs.size() != 3) throw std::invalid_argument("bs12 ball needs r1,r2,r3");
            spec.r1 = rs[0];
            spec.r2 = rs[1];
            spec.r3 = rs[2];
            break;
        default:
            break;
    }
    return spec;
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig config;
    VerificationTask* current = nullptr;
    std::optional<GroupTag> current_group;
    std::string pending_ball;

    auto flush_ball = [&]() {
        if (pending_ball.empty()) return;
        if (!current_group)
            throw std::invalid_argument("config: 'ball' needs a preceding 'group' key");
        current->ball = parse_ball_spec(*current_group, pending_ball);
        pending_ball.clear();
    };

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "workers") {
            config.workers = std::stoi(value);
            if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
            continue;
        }
        if (key == "findings") { config.findings_path = value; continue; }
        if (key == "summary") { config.summary_path = value; continue; }
        if (key == "timing") {
            if (value == "none") config.report_timing = false;
            else if (value == "wall") config.report_timing = true;
            else throw std::invalid_argument("timing must be 'wall' or 'none'");
            continue;
        }
        if (key == "task") {
            if (current) flush_ball();
            auto kind = parse_task_kind(value);
            if (!kind)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unknown task kind '" + value + "'");
            config.tasks.push_back(VerificationTask{*kind, {}, {}, {}, {}});
            current = &config.tasks.back();
            current_group.reset();
            continue;
        }
        if (!current)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": key '" +
                                        key + "' outside a task block");
        if (key == "group") {
            current_group = parse_group_tag(value);
            continue;
        }
        if (key == "ball") {
            pending_ball = value;
            flush_ball();
            continue;
        }
        if (key == "k") {
            std::istringstream ks(value);
            std::string piece;
            while (std::getline(ks, piece, ',')) current->ks.push_back(std::stoi(trim(piece)));
            continue;
        }
        if (key == "certificate") {
            if (!current_group)
                throw std::invalid_argument("config: 'certificate' needs a preceding 'group' key");
            std::istringstream cs(value);
            std::string lit;
            while (cs >> lit) current->certificate.push_back(parse_element(*current_group, lit));
            continue;
        }
        if (key == "expect_case" || key == "absurd") {
            current->options[key] = value;
            continue;
        }
        throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" +
                                    key + "'");
    }
    for (const VerificationTask& task : config.tasks) {
        if (task.kind != TaskKind::Converses && !task.ball)
            throw std::invalid_argument("task '" + to_string(task.kind) + "' needs group and ball");
    }
    // Default subset sizes where the task leaves them open.
    for (VerificationTask& task : config.tasks) {
        if (!task.ks.empty()) continue;
        switch (task.kind) {
            case TaskKind::TheoremC:
            case TaskKind::TheoremD: task.ks = {3, 4}; break;
            case TaskKind::Theorem1: task.ks = {4}; break;
            case TaskKind::TripleProps: task.ks = {3}; break;
            case TaskKind::Prop11Cert: task.ks = {5}; break;
            default: break;
        }
    }
    return config;
}

}  // namespace sd
