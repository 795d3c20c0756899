#include "sd/groups.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sd {

// ---------------------------------------------------------------- tags

std::string to_string(const GroupTag& tag) {
    switch (tag.kind) {
        case Group::Zd: return "zd(" + std::to_string(tag.dim) + ")";
        case Group::Heis: return "heis";
        case Group::Fib: return "fib";
        case Group::Bs12: return "bs12";
    }
    return "?";
}

GroupTag parse_group_tag(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (s == "heis") return {Group::Heis};
    if (s == "fib") return {Group::Fib};
    if (s == "bs12") return {Group::Bs12};
    if (s.rfind("zd(", 0) == 0 && s.back() == ')') {
        int d = std::stoi(s.substr(3, s.size() - 4));
        if (d < 1) throw std::invalid_argument("zd dimension must be positive");
        return {Group::Zd, d};
    }
    if (s == "z" || s == "zd") return {Group::Zd, 1};
    throw std::invalid_argument("unknown group: " + text);
}

// ---------------------------------------------------------------- element

Element::Element(GroupTag tag, ZdCoords z) : tag_(tag), payload_(std::move(z)) {
    if (tag_.kind != Group::Zd || static_cast<int>(zd().c.size()) != tag_.dim)
        throw std::invalid_argument("ZD coordinate count does not match dimension");
}

Element::Element(BsCoords b) : tag_{Group::Bs12} {
    bs_normalize(b.p, b.e);
    payload_ = std::move(b);
}

Element identity(const GroupTag& tag) {
    switch (tag.kind) {
        case Group::Zd:
            return Element(tag, ZdCoords{std::vector<Int>(static_cast<std::size_t>(tag.dim))});
        case Group::Heis: return Element(HeisCoords{0, 0, 0});
        case Group::Fib: return Element(FibCoords{0, 0, 0});
        case Group::Bs12: return Element(BsCoords{0, 0, 0});
    }
    throw std::logic_error("bad tag");
}

bool is_identity(const Element& g) { return g == identity(g.tag()); }

// ---------------------------------------------------------------- fibonacci

Int fibonacci(long long n) {
    bool negate = false;
    long long m = n;
    if (m < 0) {
        m = -m;
        negate = (m % 2 == 0);  // f_{-n} = (-1)^{n+1} f_n
    }
    Int a = 0, b = 1;  // f_0, f_1
    for (long long i = 0; i < m; ++i) {
        Int next = a + b;
        a = b;
        b = next;
    }
    return negate ? Int(-a) : a;
}

FibMatrixPower fib_matrix_power(long long n) {
    Int fn = fibonacci(n);
    return {n, fibonacci(n - 1), fn, fn, fibonacci(n + 1)};
}

void apply_fib_matrix(const FibMatrixPower& m, Int& u, Int& v) {
    Int nu = u * m.a + v * m.c;
    Int nv = u * m.b + v * m.d;
    u = std::move(nu);
    v = std::move(nv);
}

Sign fib_sign_rho(const Int& u, const Int& v) {
    // sign(u + v*phi) = sign(A + v*sqrt5) with A = 2u + v.
    Int A = 2 * u + v;
    if (v == 0) return A == 0 ? Sign::Zero : (A > 0 ? Sign::Pos : Sign::Neg);
    if (A == 0 || sgn(A) == sgn(v)) return v > 0 ? Sign::Pos : Sign::Neg;
    // Opposite signs: compare A^2 with 5 v^2 (never equal for v != 0).
    return (A * A > 5 * v * v) == (A > 0) ? Sign::Pos : Sign::Neg;
}

// ---------------------------------------------------------------- laws

ZdCoords zd_mul(const ZdCoords& g, const ZdCoords& h) {
    ZdCoords r = g;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += h.c[i];
    return r;
}

ZdCoords zd_inv(const ZdCoords& g) {
    ZdCoords r = g;
    for (auto& x : r.c) x = -x;
    return r;
}

// (i,j,k)(i',j',k') = (i+i', j+j', k+k'-j i'); then [a,b] = c and ab = ba c.
HeisCoords heis_mul(const HeisCoords& g, const HeisCoords& h) {
    return {g.i + h.i, g.j + h.j, g.k + h.k - g.j * h.i};
}

HeisCoords heis_inv(const HeisCoords& g) {
    return {-g.i, -g.j, -g.k - g.i * g.j};
}

// d1 b^{n1} d2 b^{n2} = d1 (d2 B^{-n1}) b^{n1+n2}; b acts as (u,v) |-> (u,v)B.
FibCoords fib_mul(const FibCoords& g, const FibCoords& h) {
    Int u = h.u, v = h.v;
    apply_fib_matrix(fib_matrix_power(-g.n), u, v);
    return {g.u + u, g.v + v, g.n + h.n};
}

FibCoords fib_inv(const FibCoords& g) {
    Int u = g.u, v = g.v;
    apply_fib_matrix(fib_matrix_power(g.n), u, v);
    return {-u, -v, -g.n};
}

void bs_normalize(Int& p, long long& e) {
    if (e < 0) throw std::invalid_argument("dyadic exponent must be non-negative");
    if (p == 0) {
        e = 0;
        return;
    }
    while (e > 0 && (p & 1) == 0) {
        p >>= 1;
        --e;
    }
}

namespace {

// p1/2^e1 + 2^shift * p2/2^e2, normalized.
BsCoords bs_combine(const Int& p1, long long e1, const Int& p2, long long e2,
                    long long shift, long long n) {
    Int q2 = p2;
    long long f2 = e2;
    if (shift >= 0)
        q2 <<= static_cast<unsigned>(shift);
    else
        f2 += -shift;
    long long e = std::max(e1, f2);
    Int p = (p1 << static_cast<unsigned>(e - e1)) + (q2 << static_cast<unsigned>(e - f2));
    bs_normalize(p, e);
    return {std::move(p), e, n};
}

}  // namespace

// (d1; n1)(d2; n2) = (d1 + 2^{n1} d2; n1 + n2).
BsCoords bs_mul(const BsCoords& g, const BsCoords& h) {
    return bs_combine(g.p, g.e, h.p, h.e, g.n, g.n + h.n);
}

BsCoords bs_inv(const BsCoords& g) {
    // (-2^{-n} d; -n)
    Int p = -g.p;
    long long e = g.e;
    if (g.n >= 0)
        e += g.n;
    else
        p <<= static_cast<unsigned>(-g.n);
    bs_normalize(p, e);
    return {std::move(p), e, -g.n};
}

// ---------------------------------------------------------------- cones

bool zd_positive(const ZdCoords& g) {
    for (const auto& x : g.c) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

bool heis_positive(const HeisCoords& g) {
    if (g.i != 0) return g.i > 0;
    if (g.j != 0) return g.j > 0;
    return g.k > 0;
}

bool fib_positive(const FibCoords& g) {
    if (g.n != 0) return g.n > 0;
    return fib_sign_rho(g.u, g.v) == Sign::Pos;
}

bool bs_positive(const BsCoords& g) {
    if (g.n != 0) return g.n > 0;
    return g.p > 0;
}

// ---------------------------------------------------------------- subgroup tests

bool derived_part_test(const Element& g) {
    switch (g.tag().kind) {
        case Group::Heis: return g.heis().i == 0 && g.heis().j == 0;
        case Group::Fib: return g.fib().n == 0;
        case Group::Bs12: return g.bs().n == 0;
        case Group::Zd: break;
    }
    throw std::invalid_argument("derived_part_test: unsupported group");
}

bool centralizer_triviality_check(const Element& g, const std::vector<Element>& samples) {
    if (g.tag().kind != Group::Fib && g.tag().kind != Group::Bs12)
        throw std::invalid_argument("centralizer check supports FIB and BS12 only");
    if (derived_part_test(g))
        throw std::invalid_argument("centralizer check requires g outside G'");
    for (const Element& s : samples) {
        if (!(s.tag() == g.tag())) throw MixedGroupError{};
        if (is_identity(s) || !derived_part_test(s))
            throw std::invalid_argument("samples must be nontrivial elements of G'");
    }
    for (const Element& s : samples) {
        // commutes with g?
        Element lhs = (g.tag().kind == Group::Fib)
                          ? Element(fib_mul(g.fib(), s.fib()))
                          : Element(bs_mul(g.bs(), s.bs()));
        Element rhs = (g.tag().kind == Group::Fib)
                          ? Element(fib_mul(s.fib(), g.fib()))
                          : Element(bs_mul(s.bs(), g.bs()));
        if (lhs == rhs) return false;
    }
    return true;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Scanner {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(pos, std::string("expected '") + c + "'");
        ++pos;
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
        }
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) throw ParseError(start, "expected integer");
        Int value(std::string(text.substr(digits, pos - digits)));
        return neg ? Int(-value) : value;
    }
    long long small_integer() {
        return integer().convert_to<long long>();
    }
};

}  // namespace

Element parse_element(const GroupTag& tag, std::string_view text) {
    Scanner sc{text};
    Element result = identity(tag);
    switch (tag.kind) {
        case Group::Zd: {
            sc.expect('(');
            std::vector<Int> coords;
            coords.push_back(sc.integer());
            while (sc.accept(',')) coords.push_back(sc.integer());
            sc.expect(')');
            if (static_cast<int>(coords.size()) != tag.dim)
                throw ParseError(sc.pos, "expected " + std::to_string(tag.dim) + " coordinates");
            result = Element(tag, ZdCoords{std::move(coords)});
            break;
        }
        case Group::Heis: {
            sc.expect('H');
            sc.expect('(');
            Int i = sc.integer();
            sc.expect(',');
            Int j = sc.integer();
            sc.expect(',');
            Int k = sc.integer();
            sc.expect(')');
            result = Element(HeisCoords{std::move(i), std::move(j), std::move(k)});
            break;
        }
        case Group::Fib: {
            sc.expect('F');
            sc.expect('(');
            Int u = sc.integer();
            sc.expect(',');
            Int v = sc.integer();
            sc.expect(';');
            long long n = sc.small_integer();
            sc.expect(')');
            result = Element(FibCoords{std::move(u), std::move(v), n});
            break;
        }
        case Group::Bs12: {
            sc.expect('B');
            sc.expect('(');
            Int p = sc.integer();
            long long e = 0;
            if (sc.accept('/')) {
                sc.expect('2');
                sc.expect('^');
                e = sc.small_integer();
                if (e < 0) throw ParseError(sc.pos, "denominator exponent must be non-negative");
            }
            sc.expect(';');
            long long n = sc.small_integer();
            sc.expect(')');
            result = Element(BsCoords{std::move(p), e, n});  // normalizes
            break;
        }
    }
    if (!sc.done()) throw ParseError(sc.pos, "trailing characters");
    return result;
}

std::string format_element(const Element& g) {
    std::ostringstream out;
    switch (g.tag().kind) {
        case Group::Zd: {
            out << '(';
            const auto& c = g.zd().c;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) out << ',';
                out << c[i];
            }
            out << ')';
            break;
        }
        case Group::Heis:
            out << "H(" << g.heis().i << ',' << g.heis().j << ',' << g.heis().k << ')';
            break;
        case Group::Fib:
            out << "F(" << g.fib().u << ',' << g.fib().v << ';' << g.fib().n << ')';
            break;
        case Group::Bs12: {
            const auto& b = g.bs();
            out << "B(" << b.p;
            if (b.e != 0) out << "/2^" << b.e;
            out << ';' << b.n << ')';
            break;
        }
    }
    return out.str();
}

}  // namespace sd
