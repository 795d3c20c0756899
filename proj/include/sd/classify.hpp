#pragma once

#include <optional>
#include <string>
#include <variant>

#include "sd/core.hpp"

namespace sd {

/// {x, xc, ..., xc^{length-1}}, ratio normalized so that c > identity.
struct ProgressionWitness {
    Element head;
    Element ratio;
    long long length = 0;
};

enum class DoublingRelation { CxEqC2, C2xEqC, Neither };

/// Tests c^x = c^2 and (c^2)^x = c by exact arithmetic.
DoublingRelation relation_doubling(const Element& c, const Element& x);

enum class CaseTag {
    Abelian,
    CaseI,
    CaseII,
    CaseIIIa,
    CaseIIIb,
    CaseIIIc,
    CaseIIId,
    Unclassified,
};

std::string to_string(CaseTag tag);

/// S = {a, ac, ..., ac^i, b, bc, ..., bc^j}, [a,c] = [b,c] = 1, c > 1,
/// and ab = bac (AbEqBac) or ba = abc (BaEqAbc).
struct CaseIWitness {
    Element a, b, c;
    long long i = 0, j = 0;
    enum class Orientation { AbEqBac, BaEqAbc } orientation;
};

/// S = {x, xc, ..., xc^{k-1}}, c > 1, with a doubling relation between c and x.
struct CaseIIWitness {
    Element x, c;
    long long k = 0;
    DoublingRelation relation;
};

/// S = {h, hc, hc^x, hc^{x^2}} with h = x (VariantX) or h = x^{-1}
/// (VariantXInv), c > 1 and c^{x^2} = c c^x = c^x c.
struct CaseIIIaWitness {
    Element x, c;
    enum class Variant { X, XInv } variant;
};

/// S = {1, c, c^2, x} with a doubling relation between c and x.
struct CaseIIIbWitness {
    Element c, x;
    DoublingRelation relation;
};

/// S = {x, xc, xc^2, y}, [c,x] = 1, and either [x,y] = c = (c^2)^y
/// (XyEqC) or [y,x] = c^2 = c^y (YxEqC2).
struct CaseIIIcWitness {
    Element x, c, y;
    enum class Orientation { XyEqC, YxEqC2 } orientation;
};

/// S = {x, xc, xc^2, y}, [c,x] = [x,y] = 1, with a doubling relation
/// between c and y.
struct CaseIIIdWitness {
    Element x, c, y;
    DoublingRelation relation;
};

struct ClassificationResult {
    CaseTag tag = CaseTag::Unclassified;
    std::variant<std::monostate, CaseIWitness, CaseIIWitness, CaseIIIaWitness,
                 CaseIIIbWitness, CaseIIIcWitness, CaseIIIdWitness>
        witness;

    /// Single JSON object: case tag plus witness element literals.
    std::string to_json() const;
};

/// Succeeds iff S = {x, xc, ..., xc^{k-1}} with x = min S; c > identity by
/// construction. Requires |S| >= 2.
std::optional<ProgressionWitness> detect_geometric_progression(const FiniteSubset& S);

/// Shortest single progression containing a pairwise-commuting S, or empty
/// when the ratios of S do not lie in a cyclic subgroup.
std::optional<ProgressionWitness> minimal_covering_progression(const FiniteSubset& S);

std::optional<CaseIWitness> detect_case_i(const FiniteSubset& S);

/// Tries subcases (a), (b), (c), (d) in order; |S| must be 4.
std::optional<ClassificationResult> detect_case_iii(const FiniteSubset& S);

/// Dispatch: abelian, then case (i), then (ii), then (iii).
/// Requires |S| >= 4 and |S^2| = 3|S|-2.
ClassificationResult classify_small_doubling(const FiniteSubset& S);

FiniteSubset construct_case_i(const Element& a, const Element& b, const Element& c,
                              long long i, long long j,
                              CaseIWitness::Orientation orientation);
FiniteSubset construct_case_ii(const Element& x, const Element& c, long long k);
FiniteSubset construct_case_iii_a(const Element& x, const Element& c,
                                  CaseIIIaWitness::Variant variant);
FiniteSubset construct_case_iii_b(const Element& c, const Element& x);
FiniteSubset construct_case_iii_c(const Element& x, const Element& c, const Element& y,
                                  CaseIIIcWitness::Orientation orientation);
FiniteSubset construct_case_iii_d(const Element& x, const Element& c, const Element& y);

/// Reconstructs S from a classification witness; inverse of the detectors.
FiniteSubset reconstruct(const ClassificationResult& result, const FiniteSubset& original);

enum class TripleShape {
    Prop4I,       // {x, xc, xc^x} (or inverse head), c^{x^2} = cc^x = c^xc
    Prop4II,      // {x, xc, xcc^x} (or inverse head), same relation
    Prop4III,     // {x, xc, xc^2} with a doubling relation
    Prop3Center,  // one element commutes with both others
    Prop3Aab,     // {a, a^b, b} with a a^b = a^b a
    None,
};

std::string to_string(TripleShape shape);

/// Shape of a 3-element set with a non-commuting pair; None when all
/// elements commute or no shape matches.
TripleShape detect_triple_shape(const FiniteSubset& S);

/// Exhaustive bijection search for a quadruple-equality-preserving map;
/// both sets must live in ZD groups (dimensions may differ) with
/// |A| = |B| <= 8.
bool freiman_isomorphic(const FiniteSubset& A, const FiniteSubset& B);

}  // namespace sd
