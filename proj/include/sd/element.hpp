#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sd/ints.hpp"

namespace sd {

enum class Group : std::uint8_t { Zd, Heis, Fib, Bs12 };

struct GroupTag {
    Group kind = Group::Zd;
    int dim = 1;  // Zd only

    friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

std::string to_string(const GroupTag& tag);

/// Parses "zd(d)", "heis", "fib" or "bs12" (case-insensitive).
GroupTag parse_group_tag(const std::string& text);

/// Z^d with componentwise addition, written multiplicatively elsewhere.
struct ZdCoords {
    std::vector<Int> c;
    friend bool operator==(const ZdCoords&, const ZdCoords&) = default;
};

/// a^i b^j c^k with c = [a,b] central.
struct HeisCoords {
    Int i, j, k;
    friend bool operator==(const HeisCoords&, const HeisCoords&) = default;
};

/// a^u (a^b)^v b^n in G = (<a> x <a^b>) x| <b>, with a^{b^2} = a a^b.
struct FibCoords {
    Int u, v;
    long long n = 0;
    friend bool operator==(const FibCoords&, const FibCoords&) = default;
};

/// The affine map x |-> 2^n x + p/2^e on dyadic rationals.
/// Normal form: e >= 0, and p odd whenever e > 0 (so p = 0 forces e = 0).
struct BsCoords {
    Int p;
    long long e = 0;
    long long n = 0;
    friend bool operator==(const BsCoords&, const BsCoords&) = default;
};

class Element {
public:
    Element() : tag_{Group::Zd, 1}, payload_(ZdCoords{{Int(0)}}) {}
    Element(GroupTag tag, ZdCoords z);
    Element(HeisCoords h) : tag_{Group::Heis}, payload_(std::move(h)) {}
    Element(FibCoords f) : tag_{Group::Fib}, payload_(std::move(f)) {}
    Element(BsCoords b);  // normalizes the dyadic part

    const GroupTag& tag() const { return tag_; }

    const ZdCoords& zd() const { return std::get<ZdCoords>(payload_); }
    const HeisCoords& heis() const { return std::get<HeisCoords>(payload_); }
    const FibCoords& fib() const { return std::get<FibCoords>(payload_); }
    const BsCoords& bs() const { return std::get<BsCoords>(payload_); }

    friend bool operator==(const Element&, const Element&) = default;

private:
    GroupTag tag_;
    std::variant<ZdCoords, HeisCoords, FibCoords, BsCoords> payload_;
};

Element identity(const GroupTag& tag);
bool is_identity(const Element& g);

/// Thrown when an operation mixes elements of different groups.
struct MixedGroupError : std::invalid_argument {
    MixedGroupError() : std::invalid_argument("mixed groups") {}
};

inline void require_same_tag(const Element& g, const Element& h) {
    if (!(g.tag() == h.tag())) throw MixedGroupError{};
}

}  // namespace sd
