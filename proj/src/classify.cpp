#include "sd/classify.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

namespace sd {

namespace {

using OrderedJson = nlohmann::ordered_json;

const char* relation_name(DoublingRelation rel) {
    switch (rel) {
        case DoublingRelation::CxEqC2: return "CX_C2";
        case DoublingRelation::C2xEqC: return "C2X_C";
        case DoublingRelation::Neither: return "NEITHER";
    }
    return "?";
}

}  // namespace

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::Abelian: return "ABELIAN";
        case CaseTag::CaseI: return "CASE_I";
        case CaseTag::CaseII: return "CASE_II";
        case CaseTag::CaseIIIa: return "CASE_III_A";
        case CaseTag::CaseIIIb: return "CASE_III_B";
        case CaseTag::CaseIIIc: return "CASE_III_C";
        case CaseTag::CaseIIId: return "CASE_III_D";
        case CaseTag::Unclassified: return "UNCLASSIFIED";
    }
    return "?";
}

DoublingRelation relation_doubling(const Element& c, const Element& x) {
    require_same_tag(c, x);
    Element c2 = mul(c, c);
    if (conjugate(c, x) == c2) return DoublingRelation::CxEqC2;
    if (conjugate(c2, x) == c) return DoublingRelation::C2xEqC;
    return DoublingRelation::Neither;
}

std::optional<ProgressionWitness> detect_geometric_progression(const FiniteSubset& S) {
    if (S.size() < 2) throw std::invalid_argument("progression detection requires |S| >= 2");
    const Element& x = S.min();
    Element c = mul(inv(x), S[1]);  // c > 1 since S is sorted
    Element cur = S[1];
    for (std::size_t i = 2; i < S.size(); ++i) {
        cur = mul(cur, c);
        if (cur != S[i]) return std::nullopt;
    }
    return ProgressionWitness{x, c, static_cast<long long>(S.size())};
}

std::optional<ProgressionWitness> minimal_covering_progression(const FiniteSubset& S) {
    if (S.size() < 2) throw std::invalid_argument("covering progression requires |S| >= 2");
    if (!pairwise_commuting(S))
        throw std::invalid_argument("covering progression requires a commuting set");

    const Element& x = S.min();
    Element xinv = inv(x);
    std::vector<Element> ratios;
    for (std::size_t i = 1; i < S.size(); ++i) ratios.push_back(mul(xinv, S[i]));

    // One linear functional per ambient group, additive on <ratios>; it
    // proposes exponents which are then verified by exact powering, so a
    // ratio lattice of rank > 1 always fails below.
    std::vector<Int> m(ratios.size());
    switch (S.tag().kind) {
        case Group::Zd: {
            std::size_t idx = 0;
            bool found = false;
            for (std::size_t d = 0; d < ratios.front().zd().c.size() && !found; ++d)
                for (const Element& r : ratios)
                    if (r.zd().c[d] != 0) {
                        idx = d;
                        found = true;
                        break;
                    }
            for (std::size_t i = 0; i < ratios.size(); ++i) m[i] = ratios[i].zd().c[idx];
            break;
        }
        case Group::Heis: {
            auto any = [&](auto proj) {
                return std::any_of(ratios.begin(), ratios.end(),
                                   [&](const Element& r) { return proj(r.heis()) != 0; });
            };
            if (any([](const HeisCoords& h) { return h.i; }))
                for (std::size_t i = 0; i < ratios.size(); ++i) m[i] = ratios[i].heis().i;
            else if (any([](const HeisCoords& h) { return h.j; }))
                for (std::size_t i = 0; i < ratios.size(); ++i) m[i] = ratios[i].heis().j;
            else
                for (std::size_t i = 0; i < ratios.size(); ++i) m[i] = ratios[i].heis().k;
            break;
        }
        case Group::Fib: {
            bool any_n = std::any_of(ratios.begin(), ratios.end(),
                                     [](const Element& r) { return r.fib().n != 0; });
            bool any_u = std::any_of(ratios.begin(), ratios.end(),
                                     [](const Element& r) { return r.fib().u != 0; });
            for (std::size_t i = 0; i < ratios.size(); ++i)
                m[i] = any_n ? Int(ratios[i].fib().n)
                             : (any_u ? ratios[i].fib().u : ratios[i].fib().v);
            break;
        }
        case Group::Bs12: {
            bool any_n = std::any_of(ratios.begin(), ratios.end(),
                                     [](const Element& r) { return r.bs().n != 0; });
            if (any_n) {
                for (std::size_t i = 0; i < ratios.size(); ++i) m[i] = ratios[i].bs().n;
            } else {
                long long E = 0;
                for (const Element& r : ratios) E = std::max(E, r.bs().e);
                for (std::size_t i = 0; i < ratios.size(); ++i)
                    m[i] = ratios[i].bs().p << static_cast<unsigned>(E - ratios[i].bs().e);
            }
            break;
        }
    }
    for (const Int& v : m)
        if (v == 0) return std::nullopt;

    // Extended-gcd combination of the ratios; all of them commute.
    Int g = m[0];
    Element c = ratios[0];
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        Egcd eg = egcd(g, m[i]);
        c = mul(power(c, eg.x.convert_to<long long>()),
                power(ratios[i], eg.y.convert_to<long long>()));
        g = eg.g;
    }
    long long flip = 1;
    if (!positive(c)) {
        c = inv(c);
        flip = -1;
    }
    long long max_exp = 0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        Int q = m[i] / g;
        long long t = flip * q.convert_to<long long>();
        if (t <= 0 || power(c, t) != ratios[i]) return std::nullopt;
        max_exp = std::max(max_exp, t);
    }
    return ProgressionWitness{x, c, max_exp + 1};
}

std::optional<CaseIWitness> detect_case_i(const FiniteSubset& S) {
    if (S.size() < 4 || pairwise_commuting(S)) return std::nullopt;
    auto el = S.elements();

    std::vector<Element> candidates;
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j)
            candidates.push_back(mul(inv(el[i]), el[j]));
    std::sort(candidates.begin(), candidates.end(), element_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Element& c : candidates) {
        // Decompose S into maximal chains under right-multiplication by c.
        Element cinv = inv(c);
        std::vector<Element> heads;
        for (const Element& s : el)
            if (!S.contains(mul(s, cinv))) heads.push_back(s);
        if (heads.size() != 2) continue;

        auto chain_length = [&](const Element& h) {
            long long len = 1;
            Element cur = mul(h, c);
            while (S.contains(cur)) {
                ++len;
                cur = mul(cur, c);
            }
            return len;
        };
        const Element& a = heads[0];
        const Element& b = heads[1];
        long long la = chain_length(a);
        long long lb = chain_length(b);
        if (la + lb != static_cast<long long>(S.size())) continue;
        if (!commute(a, c) || !commute(b, c)) continue;

        CaseIWitness w{a, b, c, la - 1, lb - 1, CaseIWitness::Orientation::AbEqBac};
        if (mul(a, b) == mul(mul(b, a), c))
            w.orientation = CaseIWitness::Orientation::AbEqBac;
        else if (mul(b, a) == mul(mul(a, b), c))
            w.orientation = CaseIWitness::Orientation::BaEqAbc;
        else
            continue;
        return w;
    }
    return std::nullopt;
}

std::optional<ClassificationResult> detect_case_iii(const FiniteSubset& S) {
    if (S.size() != 4) return std::nullopt;
    auto el = S.elements();
    const GroupTag& tag = S.tag();

    // (a) {h, hc, hc^x, hc^{x^2}} with h = x or h = x^{-1}.
    {
        const Element& h = el[0];
        Element c = mul(inv(h), el[1]);
        for (auto variant : {CaseIIIaWitness::Variant::X, CaseIIIaWitness::Variant::XInv}) {
            Element w = variant == CaseIIIaWitness::Variant::X ? h : inv(h);
            Element cw = conjugate(c, w);
            Element cww = conjugate(cw, w);
            if (positive(c) && el[2] == mul(h, cw) && el[3] == mul(h, cww) &&
                cww == mul(c, cw) && cww == mul(cw, c))
                return ClassificationResult{CaseTag::CaseIIIa, CaseIIIaWitness{w, c, variant}};
        }
    }

    // (b) {1, c, c^2, x}.
    if (S.contains(identity(tag))) {
        for (const Element& y : el) {
            if (is_identity(y)) continue;
            std::vector<Element> rest;
            for (const Element& s : el)
                if (!is_identity(s) && s != y) rest.push_back(s);
            for (const Element& c : rest) {
                const Element& other = rest[0] == c ? rest[1] : rest[0];
                if (mul(c, c) != other) continue;
                DoublingRelation rel = relation_doubling(c, y);
                if (rel != DoublingRelation::Neither)
                    return ClassificationResult{CaseTag::CaseIIIb, CaseIIIbWitness{c, y, rel}};
            }
        }
    }

    // (c) and (d): {x, xc, xc^2, y}.
    auto progression_part = [&](std::size_t yi,
                                Element& x, Element& c) {
        std::vector<Element> t;
        for (std::size_t i = 0; i < 4; ++i)
            if (i != yi) t.push_back(el[i]);
        x = t[0];
        c = mul(inv(x), t[1]);
        return t[2] == mul(t[1], c);
    };
    for (std::size_t yi = 0; yi < 4; ++yi) {
        Element x, c;
        if (!progression_part(yi, x, c)) continue;
        const Element& y = el[yi];
        if (!commute(c, x)) continue;
        Element c2 = mul(c, c);
        if (commutator(x, y) == c && conjugate(c2, y) == c)
            return ClassificationResult{
                CaseTag::CaseIIIc, CaseIIIcWitness{x, c, y, CaseIIIcWitness::Orientation::XyEqC}};
        if (commutator(y, x) == c2 && conjugate(c, y) == c2)
            return ClassificationResult{
                CaseTag::CaseIIIc, CaseIIIcWitness{x, c, y, CaseIIIcWitness::Orientation::YxEqC2}};
    }
    for (std::size_t yi = 0; yi < 4; ++yi) {
        Element x, c;
        if (!progression_part(yi, x, c)) continue;
        const Element& y = el[yi];
        if (!commute(c, x) || !commute(x, y)) continue;
        DoublingRelation rel = relation_doubling(c, y);
        if (rel != DoublingRelation::Neither)
            return ClassificationResult{CaseTag::CaseIIId, CaseIIIdWitness{x, c, y, rel}};
    }
    return std::nullopt;
}

ClassificationResult classify_small_doubling(const FiniteSubset& S) {
    DoublingReport rep = doubling_report(S);
    if (rep.k < 4 || !rep.exactly_3k_minus_2)
        throw std::invalid_argument("classification requires |S| >= 4 and |S^2| = 3|S|-2");
    if (rep.pairwise_commuting) return {CaseTag::Abelian, {}};
    if (auto w = detect_case_i(S)) return {CaseTag::CaseI, *w};
    if (auto p = detect_geometric_progression(S)) {
        DoublingRelation rel = relation_doubling(p->ratio, p->head);
        if (rel != DoublingRelation::Neither)
            return {CaseTag::CaseII, CaseIIWitness{p->head, p->ratio, p->length, rel}};
    }
    if (auto r = detect_case_iii(S)) return *r;
    return {CaseTag::Unclassified, {}};
}

FiniteSubset construct_case_i(const Element& a, const Element& b, const Element& c,
                              long long i, long long j,
                              CaseIWitness::Orientation orientation) {
    require_same_tag(a, c);
    require_same_tag(b, c);
    if (is_identity(c)) throw std::invalid_argument("degenerate ratio c = identity");
    if (!positive(c)) throw std::invalid_argument("ratio c must exceed the identity");
    if (!commute(a, c)) throw std::invalid_argument("relation [a,c] = 1 fails");
    if (!commute(b, c)) throw std::invalid_argument("relation [b,c] = 1 fails");
    bool ok = orientation == CaseIWitness::Orientation::AbEqBac
                  ? mul(a, b) == mul(mul(b, a), c)
                  : mul(b, a) == mul(mul(a, b), c);
    if (!ok) throw std::invalid_argument("orientation relation fails");
    if (i < 0 || j < 0) throw std::invalid_argument("progression lengths must be non-negative");

    std::vector<Element> elems;
    for (long long t = 0; t <= i; ++t) elems.push_back(mul(a, power(c, t)));
    for (long long t = 0; t <= j; ++t) elems.push_back(mul(b, power(c, t)));
    FiniteSubset S = FiniteSubset::from_elements(std::move(elems));
    if (S.size() != static_cast<std::size_t>(i + j + 2))
        throw std::invalid_argument("progressions overlap");
    return S;
}

FiniteSubset construct_case_ii(const Element& x, const Element& c, long long k) {
    require_same_tag(x, c);
    if (k < 3) throw std::invalid_argument("case (ii) requires k >= 3");
    if (!positive(c)) throw std::invalid_argument("ratio c must exceed the identity");
    if (relation_doubling(c, x) == DoublingRelation::Neither)
        throw std::invalid_argument("neither c^x = c^2 nor (c^2)^x = c holds");
    std::vector<Element> elems;
    for (long long t = 0; t < k; ++t) elems.push_back(mul(x, power(c, t)));
    FiniteSubset S = FiniteSubset::from_elements(std::move(elems));
    if (S.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("progression elements are not distinct");
    return S;
}

FiniteSubset construct_case_iii_a(const Element& x, const Element& c,
                                  CaseIIIaWitness::Variant variant) {
    require_same_tag(x, c);
    if (!positive(c)) throw std::invalid_argument("ratio c must exceed the identity");
    Element cx = conjugate(c, x);
    Element cxx = conjugate(cx, x);
    if (cxx != mul(c, cx) || cxx != mul(cx, c))
        throw std::invalid_argument("relation c^{x^2} = c c^x = c^x c fails");
    Element h = variant == CaseIIIaWitness::Variant::X ? x : inv(x);
    FiniteSubset S = FiniteSubset::from_elements(
        {h, mul(h, c), mul(h, cx), mul(h, cxx)});
    if (S.size() != 4) throw std::invalid_argument("set elements are not distinct");
    return S;
}

FiniteSubset construct_case_iii_b(const Element& c, const Element& x) {
    require_same_tag(c, x);
    if (relation_doubling(c, x) == DoublingRelation::Neither)
        throw std::invalid_argument("neither c^x = c^2 nor (c^2)^x = c holds");
    FiniteSubset S = FiniteSubset::from_elements(
        {identity(c.tag()), c, mul(c, c), x});
    if (S.size() != 4) throw std::invalid_argument("set elements are not distinct");
    return S;
}

FiniteSubset construct_case_iii_c(const Element& x, const Element& c, const Element& y,
                                  CaseIIIcWitness::Orientation orientation) {
    require_same_tag(x, c);
    require_same_tag(y, c);
    if (!commute(c, x)) throw std::invalid_argument("relation [c,x] = 1 fails");
    Element c2 = mul(c, c);
    bool ok = orientation == CaseIIIcWitness::Orientation::XyEqC
                  ? commutator(x, y) == c && conjugate(c2, y) == c
                  : commutator(y, x) == c2 && conjugate(c, y) == c2;
    if (!ok) throw std::invalid_argument("case (iii)(c) relation fails");
    FiniteSubset S = FiniteSubset::from_elements({x, mul(x, c), mul(x, c2), y});
    if (S.size() != 4) throw std::invalid_argument("set elements are not distinct");
    return S;
}

FiniteSubset construct_case_iii_d(const Element& x, const Element& c, const Element& y) {
    require_same_tag(x, c);
    require_same_tag(y, c);
    if (!commute(c, x)) throw std::invalid_argument("relation [c,x] = 1 fails");
    if (!commute(x, y)) throw std::invalid_argument("relation [x,y] = 1 fails");
    if (relation_doubling(c, y) == DoublingRelation::Neither)
        throw std::invalid_argument("neither c^y = c^2 nor (c^2)^y = c holds");
    FiniteSubset S = FiniteSubset::from_elements({x, mul(x, c), mul(x, mul(c, c)), y});
    if (S.size() != 4) throw std::invalid_argument("set elements are not distinct");
    return S;
}

FiniteSubset reconstruct(const ClassificationResult& result, const FiniteSubset& original) {
    switch (result.tag) {
        case CaseTag::CaseI: {
            const auto& w = std::get<CaseIWitness>(result.witness);
            return construct_case_i(w.a, w.b, w.c, w.i, w.j, w.orientation);
        }
        case CaseTag::CaseII: {
            const auto& w = std::get<CaseIIWitness>(result.witness);
            return construct_case_ii(w.x, w.c, w.k);
        }
        case CaseTag::CaseIIIa: {
            const auto& w = std::get<CaseIIIaWitness>(result.witness);
            return construct_case_iii_a(w.x, w.c, w.variant);
        }
        case CaseTag::CaseIIIb: {
            const auto& w = std::get<CaseIIIbWitness>(result.witness);
            return construct_case_iii_b(w.c, w.x);
        }
        case CaseTag::CaseIIIc: {
            const auto& w = std::get<CaseIIIcWitness>(result.witness);
            return construct_case_iii_c(w.x, w.c, w.y, w.orientation);
        }
        case CaseTag::CaseIIId: {
            const auto& w = std::get<CaseIIIdWitness>(result.witness);
            return construct_case_iii_d(w.x, w.c, w.y);
        }
        default:
            return original;
    }
}

std::string to_string(TripleShape shape) {
    switch (shape) {
        case TripleShape::Prop4I: return "PROP4_I";
        case TripleShape::Prop4II: return "PROP4_II";
        case TripleShape::Prop4III: return "PROP4_III";
        case TripleShape::Prop3Center: return "PROP3_CENTER";
        case TripleShape::Prop3Aab: return "PROP3_AAB";
        case TripleShape::None: return "NONE";
    }
    return "?";
}

TripleShape detect_triple_shape(const FiniteSubset& S) {
    if (S.size() != 3) throw std::invalid_argument("triple shape requires |S| = 3");
    auto el = S.elements();
    bool c01 = commute(el[0], el[1]);
    bool c12 = commute(el[1], el[2]);
    bool c02 = commute(el[0], el[2]);
    if (c01 && c12 && c02) return TripleShape::None;

    if (c01 || c12 || c02) {
        // One element commuting with both others stands in for S meeting the
        // center of <S>.
        if ((c01 && c02) || (c01 && c12) || (c02 && c12)) return TripleShape::Prop3Center;
        // {a, a^b, b} with a a^b = a^b a.
        for (std::size_t bi = 0; bi < 3; ++bi)
            for (std::size_t ai = 0; ai < 3; ++ai) {
                if (ai == bi) continue;
                std::size_t ti = 3 - ai - bi;
                if (conjugate(el[ai], el[bi]) == el[ti] && commute(el[ai], el[ti]))
                    return TripleShape::Prop3Aab;
            }
        return TripleShape::None;
    }

    const Element& h = el[0];
    Element c = mul(inv(h), el[1]);
    bool derived_ok = true;
    if (S.tag().kind != Group::Zd) derived_ok = derived_part_test(c);
    for (const Element& w : {h, inv(h)}) {
        Element cw = conjugate(c, w);
        Element cww = conjugate(cw, w);
        bool rel = positive(c) && derived_ok && cww == mul(c, cw) && cww == mul(cw, c);
        if (rel && el[2] == mul(h, cw)) return TripleShape::Prop4I;
        if (rel && el[2] == mul(h, mul(c, cw))) return TripleShape::Prop4II;
    }
    if (el[2] == mul(el[1], c) && relation_doubling(c, h) != DoublingRelation::Neither)
        return TripleShape::Prop4III;
    return TripleShape::None;
}

bool freiman_isomorphic(const FiniteSubset& A, const FiniteSubset& B) {
    if (A.tag().kind != Group::Zd || B.tag().kind != Group::Zd)
        throw std::invalid_argument("Freiman isomorphism supports ZD sets only");
    if (A.size() != B.size()) throw std::invalid_argument("size mismatch");
    if (A.size() > 8) throw std::invalid_argument("sets larger than 8 are not supported");

    const std::size_t n = A.size();
    auto sum = [](const Element& g, const Element& h) { return zd_mul(g.zd(), h.zd()); };
    std::vector<std::vector<ZdCoords>> sa(n, std::vector<ZdCoords>(n));
    std::vector<std::vector<ZdCoords>> sb(n, std::vector<ZdCoords>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            sa[i][j] = sum(A[i], A[j]);
            sb[i][j] = sum(B[i], B[j]);
        }

    std::vector<std::size_t> img(n);
    std::vector<bool> used(n, false);

    // Assign images one by one; only quadruples whose four indices are all
    // assigned need checking, and each new assignment introduces exactly the
    // quadruples that mention it.
    auto consistent = [&](std::size_t m) {
        for (std::size_t i = 0; i <= m; ++i)
            for (std::size_t j = 0; j <= m; ++j)
                for (std::size_t k = 0; k <= m; ++k)
                    for (std::size_t l = 0; l <= m; ++l) {
                        if (i != m && j != m && k != m && l != m) continue;
                        bool lhs = sa[i][j] == sa[k][l];
                        bool rhs = sb[img[i]][img[j]] == sb[img[k]][img[l]];
                        if (lhs != rhs) return false;
                    }
        return true;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t m) {
        if (m == n) return true;
        for (std::size_t cand = 0; cand < n; ++cand) {
            if (used[cand]) continue;
            img[m] = cand;
            used[cand] = true;
            if (consistent(m) && assign(m + 1)) return true;
            used[cand] = false;
        }
        return false;
    };
    return assign(0);
}

std::string ClassificationResult::to_json() const {
    OrderedJson j;
    j["case"] = sd::to_string(tag);
    switch (tag) {
        case CaseTag::CaseI: {
            const auto& w = std::get<CaseIWitness>(witness);
            j["a"] = format_element(w.a);
            j["b"] = format_element(w.b);
            j["c"] = format_element(w.c);
            j["i"] = w.i;
            j["j"] = w.j;
            j["orientation"] =
                w.orientation == CaseIWitness::Orientation::AbEqBac ? "AB_BAC" : "BA_ABC";
            break;
        }
        case CaseTag::CaseII: {
            const auto& w = std::get<CaseIIWitness>(witness);
            j["x"] = format_element(w.x);
            j["c"] = format_element(w.c);
            j["k"] = w.k;
            j["orientation"] = relation_name(w.relation);
            break;
        }
        case CaseTag::CaseIIIa: {
            const auto& w = std::get<CaseIIIaWitness>(witness);
            j["x"] = format_element(w.x);
            j["c"] = format_element(w.c);
            j["variant"] = w.variant == CaseIIIaWitness::Variant::X ? "X" : "X_INV";
            break;
        }
        case CaseTag::CaseIIIb: {
            const auto& w = std::get<CaseIIIbWitness>(witness);
            j["c"] = format_element(w.c);
            j["x"] = format_element(w.x);
            j["orientation"] = relation_name(w.relation);
            break;
        }
        case CaseTag::CaseIIIc: {
            const auto& w = std::get<CaseIIIcWitness>(witness);
            j["x"] = format_element(w.x);
            j["c"] = format_element(w.c);
            j["y"] = format_element(w.y);
            j["orientation"] =
                w.orientation == CaseIIIcWitness::Orientation::XyEqC ? "XY_C" : "YX_C2";
            break;
        }
        case CaseTag::CaseIIId: {
            const auto& w = std::get<CaseIIIdWitness>(witness);
            j["x"] = format_element(w.x);
            j["c"] = format_element(w.c);
            j["y"] = format_element(w.y);
            j["orientation"] =
                w.relation == DoublingRelation::CxEqC2 ? "CY_C2" : "C2Y_C";
            break;
        }
        default:
            break;
    }
    return j.dump();
}

}  // namespace sd
