#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sd/element.hpp"

namespace sd {

/// f_0 = 0, f_1 = 1, f_{n+1} = f_n + f_{n-1}; negative indices via
/// f_{-n} = (-1)^{n+1} f_n.
Int fibonacci(long long n);

/// B^n = [[f_{n-1}, f_n], [f_n, f_{n+1}]] with B = [[0,1],[1,1]];
/// integral for every n since det B = -1.
struct FibMatrixPower {
    long long n = 0;
    Int a, b, c, d;  // row-major [[a,b],[c,d]], b == c

    friend bool operator==(const FibMatrixPower&, const FibMatrixPower&) = default;
};
FibMatrixPower fib_matrix_power(long long n);

/// Row vector times matrix: (u,v) B^n.
void apply_fib_matrix(const FibMatrixPower& m, Int& u, Int& v);

enum class Sign { Neg, Zero, Pos };

/// Exact sign of u + v*phi, phi = (1+sqrt 5)/2, by integer arithmetic only.
Sign fib_sign_rho(const Int& u, const Int& v);

// Group laws on raw coordinates.
ZdCoords zd_mul(const ZdCoords& g, const ZdCoords& h);
ZdCoords zd_inv(const ZdCoords& g);
HeisCoords heis_mul(const HeisCoords& g, const HeisCoords& h);
HeisCoords heis_inv(const HeisCoords& g);
FibCoords fib_mul(const FibCoords& g, const FibCoords& h);
FibCoords fib_inv(const FibCoords& g);
BsCoords bs_mul(const BsCoords& g, const BsCoords& h);
BsCoords bs_inv(const BsCoords& g);

/// Dyadic normal form for p/2^e: e minimal, p = 0 forces e = 0.
void bs_normalize(Int& p, long long& e);

// Positive cones. Each is multiplicatively closed and conjugation invariant,
// so "g < h iff g^{-1} h positive" is a bi-invariant total order.
bool zd_positive(const ZdCoords& g);      // lexicographic
bool heis_positive(const HeisCoords& g);  // lex on (i,j), central k breaks ties
bool fib_positive(const FibCoords& g);    // n first, then sign of u + v*phi
bool bs_positive(const BsCoords& g);      // n first, then sign of the dyadic

/// True iff g lies in the derived subgroup (FIB/BS12: n = 0; HEIS: i = j = 0).
/// Zd has trivial derived subgroup; only the identity qualifies there is not
/// a supported query: tags outside {HEIS, FIB, BS12} are rejected.
bool derived_part_test(const Element& g);

/// Sampling check of C_{G'}(g) = {1} for g outside G' (FIB and BS12 only).
/// Preconditions: g not in G', every sample a nontrivial element of G'.
bool centralizer_triviality_check(const Element& g, const std::vector<Element>& samples);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Literal grammar: ZD(d) "(n1,...,nd)"; HEIS "H(i,j,k)"; FIB "F(u,v;n)";
/// BS12 "B(p/2^e;n)" or "B(p;n)". Whitespace is insignificant.
Element parse_element(const GroupTag& tag, std::string_view text);
std::string format_element(const Element& g);

}  // namespace sd
