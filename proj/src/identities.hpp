#pragma once

#include <string>
#include <utility>
#include <vector>

#include "indices.hpp"
#include "numeric.hpp"
#include "rational.hpp"

namespace zetakit {

// Structured outcome of one identity check. Exact methods have residual
// literally "0" on pass; numeric methods carry the tolerance they were
// held to.
struct IdentityReport {
    std::string identity;
    std::vector<std::pair<std::string, std::string>> params;
    std::string lhs;
    std::string rhs;
    std::string residual;
    std::string tolerance;
    std::string method;  // "exact" | "numeric"
    std::string status;  // "pass" | "fail" | "unrecognized"
    unsigned precision_bits = 0;
    std::vector<long> ladder;

    bool passed() const { return status == "pass"; }
    std::string to_json() const;
    std::string to_tsv() const;
    static std::string tsv_header();
};

// Centralized policy: max(1e-10, 2^{-bits/3 + weight}).
double identity_tolerance(int weight, unsigned bits);

// zeta*({2}^m,1) zeta*({2}^n,1) = zeta*({2}^m,1,{2}^n,1) + zeta*({2}^n,1,{2}^m,1)
IdentityReport verify_main1(int m, int n, const PrecisionContext& ctx);
// zeta*({2}^m,1) zeta*({2}^n) = zeta*({2}^m,1,{2}^n) + zeta*({2}^{n-1},3,{2}^m)
IdentityReport verify_main2(int m, int n, const PrecisionContext& ctx);
// zeta*({2}^m) zeta*({2}^n) = zeta*({2}^{m-1},3,{2}^{n-1},1) + (m <-> n)
IdentityReport verify_main3(int m, int n, const PrecisionContext& ctx);

// Alternating product sum over 1-insertions; j_1, j_n >= 1.
IdentityReport verify_1ext(const std::vector<int>& jvec,
                           const PrecisionContext& ctx);
// The 3,1-alternating extension; jvec must have even length 2n.
IdentityReport verify_3ext(const std::vector<int>& jvec,
                           const PrecisionContext& ctx);
// General telescoping identity sum_k (-1)^k X(k) = 0 for a 2-3-1 pattern.
IdentityReport verify_thm31_numeric(const Pattern& p,
                                    const PrecisionContext& ctx);

// zeta*({2}^m,1,{2}^n,1) = 4 zeta*(2m+1,2n+1) - 2 zeta(2m+2n+2)
IdentityReport verify_two_one(int m, int n, const PrecisionContext& ctx);
// The zeta*({2}^m,3,{2}^n) evaluation in odd zetas.
IdentityReport verify_22322(int m, int n, const PrecisionContext& ctx);
// The zeta*({2}^{m+1},1,{2}^n) evaluation in odd zetas.
IdentityReport verify_22122(int m, int n, const PrecisionContext& ctx);
// zeta*({2}^{n-1},3) = sum_l zeta*({2}^l,1,{2}^{n-l}) - sum_l zeta*({2}^l,3,{2}^{n-1-l})
IdentityReport verify_prop_m0(int n, const PrecisionContext& ctx);

// Symmetrized-sum instance checkers with rational recognition against the
// matching power of pi. Outcomes are pass or unrecognized, never fail.
IdentityReport conjecture_A_instance(int n, const std::vector<int>& jvec,
                                     const PrecisionContext& ctx,
                                     unsigned long max_den);
IdentityReport conjecture_B_instance(int n, const std::vector<int>& jvec,
                                     const PrecisionContext& ctx,
                                     unsigned long max_den);

// Exact finite-truncation telescoping report (method "exact").
IdentityReport verify_telescope(const Pattern& p, long P);

// Exact finite-p predecessors of the limit identities; identically zero.
Rational main2_finite_p_residual(int m, int n, long p);
Rational main2_m0_finite_p_residual(int n, long p);
Rational prop_m0_finite_p_residual(int n, long p);

}  // namespace zetakit
