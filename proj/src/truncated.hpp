#pragma once

#include <array>
#include <utility>
#include <vector>

#include "indices.hpp"
#include "rational.hpp"

namespace zetakit {

// zeta_p(i): sum over p >= p_1 > ... > p_n > 0 of prod p_i^{-k_i}.
// zeta_p(empty) = 1 for every p >= 0; the empty sum is 0 (so the value
// vanishes whenever p < depth).
Rational zeta_trunc(const Index& i, long p);

// zeta*_p(i): same with non-strict inequalities p >= p_1 >= ... >= p_n >= 1.
Rational zeta_star_trunc(const Index& i, long p);

// C_j(A,B) chain kernels: C_{-1}(A,B) = delta_{A,B} A^2, C_0 = 1, and for
// j >= 1 the sum over A >= a_1 >= ... >= a_j >= B of prod a_i^{-2}.
// Computed by the induction C_j(A,B) = sum_{p=B}^{A} p^{-2} C_{j-1}(p,B)
// with a process-wide memo table. Requires A >= B >= 1, j >= -1.
Rational c_kernel(int j, long A, long B);

// Both sides of the kernel duality
//   sum_{p0=1}^{p} C_j(p,p0) q/(p0(p0+q)) = sum_{q0=1}^{q} C_j(q,q0) p/(q0(q0+p))
// for finite p, q >= 1. The caller asserts equality.
std::pair<Rational, Rational> c_duality_check(int j, long p, long q);

// Bivariate polynomial in formal x, y with rational coefficients, truncated
// to deg_x <= max_x, deg_y <= max_y at every arithmetic step.
class GFPoly {
  public:
    GFPoly(int max_x, int max_y);
    static GFPoly constant(int max_x, int max_y, const Rational& c);

    int max_x() const { return mx_; }
    int max_y() const { return my_; }

    const Rational& coeff(int m, int n) const;
    void set_coeff(int m, int n, const Rational& c);

    GFPoly operator+(const GFPoly& o) const;
    GFPoly operator*(const GFPoly& o) const;

    bool operator==(const GFPoly& o) const = default;

  private:
    int mx_, my_;
    std::vector<Rational> c_;  // (m, n) -> c_[m * (my_+1) + n]
};

// 2x2 matrix of truncated generating-function polynomials.
struct GFMatrix {
    std::array<GFPoly, 4> m;  // row-major

    GFPoly& at(int r, int c) { return m[static_cast<size_t>(2 * r + c)]; }
    const GFPoly& at(int r, int c) const {
        return m[static_cast<size_t>(2 * r + c)];
    }
};

struct GFCaps {
    int max_x;
    int max_y;
};

// One transfer step of the generating-function recursion for the strict
// sums: T_q = [[1 + x/q^a, 1/q^b], [0, 1 + y/q^c]].
GFMatrix gf_step_T(long q, int a, int b, int c, GFCaps caps);

// One transfer step for the star sums (the inverse factors expanded
// geometrically up to the caps):
//   U_q = (1 - x/q^c)^{-1} (1 - y/q^a)^{-1} [[1 - y/q^a, 1/q^b],
//                                            [0,          1 - x/q^c]].
GFMatrix gf_step_U(long q, int a, int b, int c, GFCaps caps);

// T_p T_{p-1} ... T_1 (0,1)^t: returns (F_p, G_p), where the coefficient of
// x^m y^n in F_p is zeta_p({a}^m, b, {c}^n) and in G_p is zeta_p({c}^n).
std::pair<GFPoly, GFPoly> gf_transfer(long p, int a, int b, int c, GFCaps caps);

// U_p ... U_1 (0,1)^t: (F*_p, G*_p) with x^m y^n picking out
// zeta*_p({c}^m, b, {a}^n) and y^n picking out zeta*_p({a}^n).
std::pair<GFPoly, GFPoly> gf_transfer_star(long p, int a, int b, int c,
                                           GFCaps caps);

// LHS - RHS of the coefficient identity
//   zeta*_p({c}^m,b,{a}^n) = sum_{k<=m} sum_{l<=n} (-1)^{k+l}
//       zeta_p({a}^l,b,{c}^k) zeta*_p({c}^{m-k}) zeta*_p({a}^{n-l});
// identically zero.
Rational ccbaa_residual(long p, int m, int n, int a, int b, int c);

// Finite-cap X(k): the product of the two sub-pattern zeta-star values at
// truncation level P. Throws std::domain_error if a sub-pattern is
// non-admissible.
Rational x_trunc(const Pattern& p, int k, long P);

// True when every X(k) sub-pattern of the telescoping sum is admissible.
bool x_factors_admissible(const Pattern& p);

// Boundary terms of the finite-cap telescoping: the k = 0 chain sum with
// coupling q_1/(P+q_1), and the k = n chain sum with coupling p_n/(p_n+P).
Rational boundary_E0(const Pattern& p, long P);
Rational boundary_Fn(const Pattern& p, long P);

// sum_k (-1)^k x_trunc(p,k,P) - boundary_E0(p,P) - (-1)^n boundary_Fn(p,P);
// identically zero for every P >= 1.
Rational telescope_residual(const Pattern& p, long P);

}  // namespace zetakit
