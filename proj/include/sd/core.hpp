#pragma once

#include <span>
#include <vector>

#include "sd/element.hpp"
#include "sd/groups.hpp"

namespace sd {

Element mul(const Element& g, const Element& h);
Element inv(const Element& g);
Element power(const Element& g, long long n);

/// x^{-1} g x.
Element conjugate(const Element& g, const Element& x);

/// [g,h] = g^{-1} h^{-1} g h; identity iff g and h commute.
Element commutator(const Element& g, const Element& h);

inline bool commute(const Element& g, const Element& h) {
    return is_identity(commutator(g, h));
}

enum class Ordering { LT, EQ, GT };

/// Bi-invariant total order: g < h iff g^{-1} h lies in the positive cone.
Ordering compare(const Element& g, const Element& h);

/// g > identity.
bool positive(const Element& g);

inline bool element_less(const Element& g, const Element& h) {
    return compare(g, h) == Ordering::LT;
}

/// Deduplicated list of same-group elements, strictly increasing under the
/// group order. Size >= 1.
class FiniteSubset {
public:
    static FiniteSubset from_elements(std::vector<Element> elems);

    const GroupTag& tag() const { return tag_; }
    std::size_t size() const { return elems_.size(); }
    std::span<const Element> elements() const { return elems_; }
    const Element& operator[](std::size_t i) const { return elems_[i]; }
    const Element& min() const { return elems_.front(); }
    const Element& max() const { return elems_.back(); }
    bool contains(const Element& g) const;

    friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

private:
    FiniteSubset(GroupTag tag, std::vector<Element> elems)
        : tag_(tag), elems_(std::move(elems)) {}

    GroupTag tag_;
    std::vector<Element> elems_;
};

/// {a*b : a in A, b in B}.
FiniteSubset product_set(const FiniteSubset& A, const FiniteSubset& B);
FiniteSubset square(const FiniteSubset& S);

bool pairwise_commuting(const FiniteSubset& S);

struct DoublingReport {
    long long k = 0;
    long long square_size = 0;
    bool meets_3k_minus_4 = false;    // |S^2| <= 3k-4
    bool exactly_3k_minus_3 = false;  // |S^2| == 3k-3
    bool exactly_3k_minus_2 = false;  // |S^2| == 3k-2
    bool pairwise_commuting = false;
};

DoublingReport doubling_report(const FiniteSubset& S);

}  // namespace sd
