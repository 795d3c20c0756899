// sdg — small-doubling sets in ordered groups: square / classify / construct /
// verify / enumerate.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sd/classify.hpp"
#include "sd/core.hpp"
#include "sd/search.hpp"

namespace {

// Exit codes shared by square/classify; verify has its own set.
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitUnclassified = 4;

struct SetFile {
    sd::GroupTag tag;
    std::vector<sd::Element> elements;
};

SetFile read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::optional<sd::GroupTag> tag;
    std::vector<sd::Element> elements;
    std::map<std::string, std::vector<std::size_t>> seen;  // literal -> line numbers
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        auto b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        if (!tag) {
            if (line.rfind("group:", 0) != 0)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected 'group: <zd(d)|heis|fib|bs12>' header");
            std::string name = line.substr(6);
            auto c = name.find_first_not_of(" \t");
            tag = sd::parse_group_tag(c == std::string::npos ? "" : name.substr(c));
            continue;
        }
        try {
            elements.push_back(sd::parse_element(*tag, line));
        } catch (const sd::ParseError& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        seen[sd::format_element(elements.back())].push_back(lineno);
    }
    if (!tag) throw std::runtime_error(path + ": missing group header");
    if (elements.empty()) throw std::runtime_error(path + ": no elements");
    bool dupes = false;
    for (const auto& [lit, lines] : seen) {
        if (lines.size() < 2) continue;
        dupes = true;
        std::cerr << "warning: duplicate element " << lit << " on lines";
        for (std::size_t n : lines) std::cerr << ' ' << n;
        std::cerr << '\n';
    }
    if (dupes) throw std::runtime_error(path + ": duplicate elements rejected");
    return {*tag, std::move(elements)};
}

void print_set_file(std::ostream& out, const sd::FiniteSubset& S) {
    out << "group: " << sd::to_string(S.tag()) << '\n';
    for (const sd::Element& g : S.elements()) out << sd::format_element(g) << '\n';
}

int cmd_square(const std::string& path, bool full) {
    SetFile file;
    try {
        file = read_set_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    sd::FiniteSubset S = sd::FiniteSubset::from_elements(std::move(file.elements));
    sd::DoublingReport r = sd::doubling_report(S);
    std::cout << "|S|=" << r.k << " |S^2|=" << r.square_size;
    if (r.meets_3k_minus_4) std::cout << " 3k-4=hit";
    if (r.exactly_3k_minus_3) std::cout << " 3k-3=hit";
    if (r.exactly_3k_minus_2) std::cout << " 3k-2=hit";
    std::cout << (r.pairwise_commuting ? " commuting" : " non-commuting") << '\n';
    if (full) {
        sd::FiniteSubset sq = sd::square(S);
        for (const sd::Element& g : sq.elements()) std::cout << sd::format_element(g) << '\n';
    }
    return 0;
}

int cmd_classify(const std::string& path) {
    SetFile file;
    try {
        file = read_set_file(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    sd::FiniteSubset S = sd::FiniteSubset::from_elements(std::move(file.elements));
    if (S.size() < 4) {
        std::cerr << "precondition failed: |S| = " << S.size() << " < 4\n";
        return kExitPrecondition;
    }
    long long sq = static_cast<long long>(sd::square(S).size());
    long long k = static_cast<long long>(S.size());
    if (sq != 3 * k - 2) {
        std::cerr << "precondition failed: |S^2| = " << sq << ", need 3|S|-2 = " << 3 * k - 2
                  << '\n';
        return kExitPrecondition;
    }
    sd::ClassificationResult res = sd::classify_small_doubling(S);
    std::cout << res.to_json() << '\n';
    if (res.tag == sd::CaseTag::Unclassified) {
        std::cerr << "UNCLASSIFIED: no case of the classification matches — "
                     "potential counterexample, please report this set\n";
        return kExitUnclassified;
    }
    return 0;
}

struct ConstructArgs {
    std::string group;
    std::string a, b, c, x, y;
    long long i = 1, j = 1, k = 4;
    std::string orientation = "AB_BAC";  // case i: AB_BAC | BA_ABC; iii(c): XY_C | YX_C2
    std::string variant = "X";           // case iii(a): X | X_INV
    bool check = false;
};

int cmd_construct(const std::string& kase, const ConstructArgs& args) {
    sd::GroupTag tag = sd::parse_group_tag(args.group);
    auto elem = [&](const std::string& text, const char* flag) {
        if (text.empty())
            throw std::invalid_argument(std::string("case ") + kase + " needs --" + flag);
        return sd::parse_element(tag, text);
    };
    sd::FiniteSubset S = [&] {
        if (kase == "case-i") {
            sd::Element a = args.a.empty() ? sd::parse_element(tag, "H(1,0,0)") : elem(args.a, "a");
            sd::Element b = args.b.empty() ? sd::parse_element(tag, "H(0,1,0)") : elem(args.b, "b");
            sd::Element c = args.c.empty() ? sd::parse_element(tag, "H(0,0,1)") : elem(args.c, "c");
            auto orient = args.orientation == "BA_ABC" ? sd::CaseIWitness::Orientation::BaEqAbc
                                                       : sd::CaseIWitness::Orientation::AbEqBac;
            return sd::construct_case_i(a, b, c, args.i, args.j, orient);
        }
        if (kase == "case-ii")
            return sd::construct_case_ii(elem(args.x, "x"), elem(args.c, "c"), args.k);
        if (kase == "case-iii-a") {
            auto variant = args.variant == "X_INV" ? sd::CaseIIIaWitness::Variant::XInv
                                                   : sd::CaseIIIaWitness::Variant::X;
            return sd::construct_case_iii_a(elem(args.x, "x"), elem(args.c, "c"), variant);
        }
        if (kase == "case-iii-b")
            return sd::construct_case_iii_b(elem(args.c, "c"), elem(args.x, "x"));
        if (kase == "case-iii-c") {
            auto orient = args.orientation == "YX_C2" ? sd::CaseIIIcWitness::Orientation::YxEqC2
                                                      : sd::CaseIIIcWitness::Orientation::XyEqC;
            return sd::construct_case_iii_c(elem(args.x, "x"), elem(args.c, "c"),
                                            elem(args.y, "y"), orient);
        }
        if (kase == "case-iii-d")
            return sd::construct_case_iii_d(elem(args.x, "x"), elem(args.c, "c"),
                                            elem(args.y, "y"));
        throw std::invalid_argument("unknown case '" + kase + "'");
    }();
    print_set_file(std::cout, S);
    if (args.check && (kase == "case-i" || kase == "case-ii" || kase == "case-iii-b")) {
        long long sq = static_cast<long long>(sd::square(S).size());
        long long k = static_cast<long long>(S.size());
        std::cout << "# check: |S^2|=" << sq << " 3|S|-2=" << 3 * k - 2
                  << (sq == 3 * k - 2 ? " ok" : " MISMATCH") << '\n';
        if (sq != 3 * k - 2) return 1;
    }
    return 0;
}

int cmd_verify(const std::string& config_path) {
    sd::RunConfig config;
    try {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error(config_path + ": cannot open");
        std::ostringstream buf;
        buf << in.rdbuf();
        config = sd::parse_run_config(buf.str());
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    std::vector<sd::VerificationSummary> summaries = sd::run_tasks(config);

    std::string csv = sd::summaries_to_csv(summaries, config.report_timing);
    std::string jsonl = sd::findings_to_jsonl(summaries);
    auto emit = [](const std::string& path, const std::string& text) {
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(path);
            out << text;
        }
    };
    emit(config.findings_path, jsonl);
    emit(config.summary_path, csv);

    bool failed = false;
    for (const auto& s : summaries) {
        if (s.error) {
            std::cerr << "task " << s.task << " error: " << *s.error << '\n';
            failed = true;
        }
        if (!s.findings.empty()) failed = true;
    }
    return failed ? 1 : 0;
}

int cmd_enumerate(const std::string& group, const std::string& ball) {
    sd::GroupTag tag = sd::parse_group_tag(group);
    sd::FiniteSubset B = sd::enumerate_ball(sd::parse_ball_spec(tag, ball));
    print_set_file(std::cout, B);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"small-doubling sets in ordered groups"};
    app.require_subcommand(1);

    std::string set_path;
    bool full = false;
    auto* square = app.add_subcommand("square", "report |S|, |S^2| and threshold flags");
    square->add_option("setfile", set_path)->required();
    square->add_flag("--full", full, "also print the sorted S^2");

    std::string classify_path;
    auto* classify = app.add_subcommand("classify", "classify a |S^2| = 3|S|-2 set");
    classify->add_option("setfile", classify_path)->required();

    std::string kase;
    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "build a set attaining |S^2| = 3|S|-2");
    construct->add_option("case", kase, "case-i | case-ii | case-iii-{a,b,c,d}")->required();
    construct->add_option("--group", cargs.group)->required();
    construct->add_option("--a", cargs.a);
    construct->add_option("--b", cargs.b);
    construct->add_option("--c", cargs.c);
    construct->add_option("--x", cargs.x);
    construct->add_option("--y", cargs.y);
    construct->add_option("--i", cargs.i);
    construct->add_option("--j", cargs.j);
    construct->add_option("--k", cargs.k);
    construct->add_option("--orientation", cargs.orientation, "AB_BAC|BA_ABC or XY_C|YX_C2");
    construct->add_option("--variant", cargs.variant, "X|X_INV");
    construct->add_flag("--check", cargs.check, "verify |S^2| = 3|S|-2 (cases i, ii, iii-b)");

    std::string config_path;
    auto* verify = app.add_subcommand("verify", "run a verification config");
    verify->add_option("config", config_path)->required();

    std::string enum_group, enum_ball;
    auto* enumerate = app.add_subcommand("enumerate", "dump a ball as a set file");
    enumerate->add_option("--group", enum_group)->required();
    enumerate->add_option("--ball", enum_ball)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (square->parsed()) return cmd_square(set_path, full);
        if (classify->parsed()) return cmd_classify(classify_path);
        if (construct->parsed()) return cmd_construct(kase, cargs);
        if (verify->parsed()) return cmd_verify(config_path);
        if (enumerate->parsed()) return cmd_enumerate(enum_group, enum_ball);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return 0;
}
