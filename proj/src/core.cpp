#include "sd/core.hpp"

#include <algorithm>

namespace sd {

Element mul(const Element& g, const Element& h) {
    require_same_tag(g, h);
    switch (g.tag().kind) {
        case Group::Zd: return Element(g.tag(), zd_mul(g.zd(), h.zd()));
        case Group::Heis: return Element(heis_mul(g.heis(), h.heis()));
        case Group::Fib: return Element(fib_mul(g.fib(), h.fib()));
        case Group::Bs12: return Element(bs_mul(g.bs(), h.bs()));
    }
    throw std::logic_error("bad tag");
}

Element inv(const Element& g) {
    switch (g.tag().kind) {
        case Group::Zd: return Element(g.tag(), zd_inv(g.zd()));
        case Group::Heis: return Element(heis_inv(g.heis()));
        case Group::Fib: return Element(fib_inv(g.fib()));
        case Group::Bs12: return Element(bs_inv(g.bs()));
    }
    throw std::logic_error("bad tag");
}

Element power(const Element& g, long long n) {
    if (n < 0) return power(inv(g), -n);
    Element acc = identity(g.tag());
    Element base = g;
    while (n > 0) {
        if (n & 1) acc = mul(acc, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return acc;
}

Element conjugate(const Element& g, const Element& x) {
    return mul(mul(inv(x), g), x);
}

Element commutator(const Element& g, const Element& h) {
    return mul(mul(inv(g), inv(h)), mul(g, h));
}

bool positive(const Element& g) {
    switch (g.tag().kind) {
        case Group::Zd: return zd_positive(g.zd());
        case Group::Heis: return heis_positive(g.heis());
        case Group::Fib: return fib_positive(g.fib());
        case Group::Bs12: return bs_positive(g.bs());
    }
    throw std::logic_error("bad tag");
}

Ordering compare(const Element& g, const Element& h) {
    require_same_tag(g, h);
    if (g == h) return Ordering::EQ;
    return positive(mul(inv(g), h)) ? Ordering::LT : Ordering::GT;
}

FiniteSubset FiniteSubset::from_elements(std::vector<Element> elems) {
    if (elems.empty()) throw std::invalid_argument("a finite subset must be non-empty");
    GroupTag tag = elems.front().tag();
    for (const Element& g : elems)
        if (!(g.tag() == tag)) throw MixedGroupError{};
    std::sort(elems.begin(), elems.end(), element_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return FiniteSubset(tag, std::move(elems));
}

bool FiniteSubset::contains(const Element& g) const {
    return std::binary_search(elems_.begin(), elems_.end(), g, element_less);
}

FiniteSubset product_set(const FiniteSubset& A, const FiniteSubset& B) {
    if (!(A.tag() == B.tag())) throw MixedGroupError{};
    std::vector<Element> products;
    products.reserve(A.size() * B.size());
    for (const Element& a : A.elements())
        for (const Element& b : B.elements()) products.push_back(mul(a, b));
    return FiniteSubset::from_elements(std::move(products));
}

FiniteSubset square(const FiniteSubset& S) { return product_set(S, S); }

bool pairwise_commuting(const FiniteSubset& S) {
    auto elems = S.elements();
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (mul(elems[i], elems[j]) != mul(elems[j], elems[i])) return false;
    return true;
}

DoublingReport doubling_report(const FiniteSubset& S) {
    DoublingReport r;
    r.k = static_cast<long long>(S.size());
    r.square_size = static_cast<long long>(square(S).size());
    r.meets_3k_minus_4 = r.square_size <= 3 * r.k - 4;
    r.exactly_3k_minus_3 = r.square_size == 3 * r.k - 3;
    r.exactly_3k_minus_2 = r.square_size == 3 * r.k - 2;
    r.pairwise_commuting = pairwise_commuting(S);
    return r;
}

}  // namespace sd
