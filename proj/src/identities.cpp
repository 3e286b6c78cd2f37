#include "identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "truncated.hpp"

namespace zetakit {

namespace {

std::string format_double(double v, const char* fmt = "%.3e") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string join_params(
    const std::vector<std::pair<std::string, std::string>>& params) {
    std::string s;
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) s += ',';
        s += params[i].first + '=' + params[i].second;
    }
    return s;
}

// Small composition builder for the 2-3-1 index families.
struct Idx {
    std::vector<int> parts;
    Idx& twos(int m) {
        parts.insert(parts.end(), static_cast<size_t>(std::max(m, 0)), 2);
        return *this;
    }
    Idx& part(int k) {
        parts.push_back(k);
        return *this;
    }
    Index done() { return Index(std::move(parts)); }
};

NumericValue Z(const Index& i, const PrecisionContext& ctx) {
    return mzsv_numeric(i, ctx);
}

IdentityReport numeric_report(
    std::string identity,
    std::vector<std::pair<std::string, std::string>> params,
    const NumericValue& lhs, const NumericValue& rhs, int weight,
    const PrecisionContext& ctx) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    double tol = identity_tolerance(weight, ctx.bits);
    Real diff = (lhs.value - rhs.value).abs();
    double mag = diff.to_double();
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
    r.residual = diff.str(3);
    r.tolerance = format_double(tol);
    r.method = "numeric";
    r.status = mag <= tol ? "pass" : "fail";
    r.precision_bits = ctx.bits;
    r.ladder = ctx.ladder;
    return r;
}

std::vector<int> alternating_31(int len) {
    std::vector<int> e(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) e[static_cast<size_t>(i)] = (i % 2 == 0) ? 3 : 1;
    return e;
}

// The alternating sum of Theorem 3.1: even-k terms on one side, odd-k on
// the other. Throws when a sub-pattern diverges.
struct Thm31Sides {
    NumericValue lhs;
    NumericValue rhs;
    int weight = 0;
};

Thm31Sides thm31_sides(const Pattern& p, const PrecisionContext& ctx) {
    if (p.is_empty() || !p.admissible() || !p.reversed().admissible())
        throw std::domain_error(
            "thm31: pattern and its reverse must be admissible");
    const mpfr_prec_t bits = static_cast<mpfr_prec_t>(ctx.bits);
    Thm31Sides s{nv_exact(0, bits), nv_exact(0, bits), 0};
    for (int k = 0; k <= p.length(); ++k) {
        XFactors f = x_factors(p, k);
        if (!f.left.admissible() || !f.right.admissible())
            throw std::domain_error("thm31: divergent sub-pattern at k=" +
                                    std::to_string(k));
        Index li = f.left.to_index(), ri = f.right.to_index();
        s.weight = std::max(s.weight, li.weight() + ri.weight());
        NumericValue x = nv_mul(Z(li, ctx), Z(ri, ctx));
        if (k % 2 == 0)
            s.lhs = nv_add(s.lhs, x);
        else
            s.rhs = nv_add(s.rhs, x);
    }
    return s;
}

std::string vec_to_csv(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

std::string IdentityReport::to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    nlohmann::ordered_json pj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) pj[k] = v;
    j["params"] = pj;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["residual"] = residual;
    j["tolerance"] = tolerance;
    j["method"] = method;
    j["status"] = status;
    j["precision_bits"] = precision_bits;
    j["ladder"] = ladder;
    return j.dump();
}

std::string IdentityReport::to_tsv() const {
    return identity + "\t" + join_params(params) + "\t" + residual + "\t" +
           tolerance + "\t" + status;
}

std::string IdentityReport::tsv_header() {
    return "identity\tparams\tresidual\ttolerance\tstatus";
}

double identity_tolerance(int weight, unsigned bits) {
    double scaled =
        std::exp2(-static_cast<double>(bits) / 3.0 + static_cast<double>(weight));
    return std::max(1e-10, scaled);
}

IdentityReport verify_main1(int m, int n, const PrecisionContext& ctx) {
    if (m < 1 || n < 1)
        throw std::domain_error("main1: requires m, n >= 1");
    NumericValue lhs = nv_mul(Z(Idx{}.twos(m).part(1).done(), ctx),
                              Z(Idx{}.twos(n).part(1).done(), ctx));
    NumericValue rhs =
        nv_add(Z(Idx{}.twos(m).part(1).twos(n).part(1).done(), ctx),
               Z(Idx{}.twos(n).part(1).twos(m).part(1).done(), ctx));
    return numeric_report(
        "main1", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, lhs,
        rhs, 2 * m + 2 * n + 2, ctx);
}

IdentityReport verify_main2(int m, int n, const PrecisionContext& ctx) {
    if (m < 1)
        throw std::domain_error("main2: both sides diverge when m = 0");
    if (n < 1) throw std::domain_error("main2: requires n >= 1");
    NumericValue lhs =
        nv_mul(Z(Idx{}.twos(m).part(1).done(), ctx), Z(Idx{}.twos(n).done(), ctx));
    NumericValue rhs =
        nv_add(Z(Idx{}.twos(m).part(1).twos(n).done(), ctx),
               Z(Idx{}.twos(n - 1).part(3).twos(m).done(), ctx));
    return numeric_report(
        "main2", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, lhs,
        rhs, 2 * m + 2 * n + 1, ctx);
}

IdentityReport verify_main3(int m, int n, const PrecisionContext& ctx) {
    if (m < 1 || n < 1)
        throw std::domain_error("main3: requires m, n >= 1");
    NumericValue lhs =
        nv_mul(Z(Idx{}.twos(m).done(), ctx), Z(Idx{}.twos(n).done(), ctx));
    NumericValue rhs =
        nv_add(Z(Idx{}.twos(m - 1).part(3).twos(n - 1).part(1).done(), ctx),
               Z(Idx{}.twos(n - 1).part(3).twos(m - 1).part(1).done(), ctx));
    return numeric_report(
        "main3", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, lhs,
        rhs, 2 * m + 2 * n, ctx);
}

IdentityReport verify_1ext(const std::vector<int>& jvec,
                           const PrecisionContext& ctx) {
    if (jvec.empty()) throw std::domain_error("1ext: empty j vector");
    if (jvec.front() < 1 || jvec.back() < 1)
        throw std::domain_error("1ext: requires j_1, j_n >= 1");
    Pattern p(jvec, std::vector<int>(jvec.size() - 1, 1));
    Thm31Sides s = thm31_sides(p, ctx);
    return numeric_report("1ext", {{"j", vec_to_csv(jvec)}}, s.lhs, s.rhs,
                          s.weight, ctx);
}

IdentityReport verify_3ext(const std::vector<int>& jvec,
                           const PrecisionContext& ctx) {
    if (jvec.empty() || jvec.size() % 2 != 0)
        throw std::domain_error("3ext: j vector must have even length 2n");
    Pattern p(jvec, alternating_31(static_cast<int>(jvec.size()) - 1));
    Thm31Sides s = thm31_sides(p, ctx);
    return numeric_report("3ext", {{"j", vec_to_csv(jvec)}}, s.lhs, s.rhs,
                          s.weight, ctx);
}

IdentityReport verify_thm31_numeric(const Pattern& p,
                                    const PrecisionContext& ctx) {
    Thm31Sides s = thm31_sides(p, ctx);
    return numeric_report("thm31", {{"pattern", p.to_string()}}, s.lhs, s.rhs,
                          s.weight, ctx);
}

IdentityReport verify_two_one(int m, int n, const PrecisionContext& ctx) {
    if (m < 1 || n < 1)
        throw std::domain_error("two_one: requires m, n >= 1");
    NumericValue lhs = Z(Idx{}.twos(m).part(1).twos(n).part(1).done(), ctx);
    NumericValue depth2 =
        Z(Idx{}.part(2 * m + 1).part(2 * n + 1).done(), ctx);
    NumericValue rhs = nv_sub(nv_scale(depth2, Rational(4)),
                              nv_scale(zeta_int(2 * m + 2 * n + 2, ctx),
                                       Rational(2)));
    return numeric_report(
        "two_one", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, lhs,
        rhs, 2 * m + 2 * n + 2, ctx);
}

IdentityReport verify_22322(int m, int n, const PrecisionContext& ctx) {
    if (m < 0 || n < 0)
        throw std::domain_error("22322: requires m, n >= 0");
    NumericValue lhs = Z(Idx{}.twos(m).part(3).twos(n).done(), ctx);
    NumericValue rhs = nv_exact(0, static_cast<mpfr_prec_t>(ctx.bits));
    for (int r = 1; r <= m + n + 1; ++r) {
        Rational coeff = binomial(2 * r, 2 * n);
        if (r == n) coeff -= 1;
        Rational four_r = rational_pow(Rational(4), static_cast<unsigned long>(r));
        coeff -= (Rational(1) - Rational(1) / four_r) * binomial(2 * r, 2 * m + 1);
        if (coeff == 0) continue;
        NumericValue term = nv_mul(zeta_int(2 * r + 1, ctx),
                                   Z(Idx{}.twos(m + n + 1 - r).done(), ctx));
        rhs = nv_add(rhs, nv_scale(term, coeff));
    }
    rhs = nv_scale(rhs, Rational(-2));
    return numeric_report(
        "22322", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, lhs,
        rhs, 2 * (m + n) + 3, ctx);
}

IdentityReport verify_22122(int m, int n, const PrecisionContext& ctx) {
    if (m < 0 || n < 0)
        throw std::domain_error("22122: requires m, n >= 0");
    NumericValue lhs = Z(Idx{}.twos(m + 1).part(1).twos(n).done(), ctx);
    NumericValue rhs = nv_exact(0, static_cast<mpfr_prec_t>(ctx.bits));
    for (int r = 1; r <= m + n + 1; ++r) {
        Rational four_r = rational_pow(Rational(4), static_cast<unsigned long>(r));
        Rational coeff = binomial(2 * r, 2 * m + 2) -
                         (Rational(1) - Rational(1) / four_r) *
                             binomial(2 * r, 2 * n - 1);
        if (coeff == 0) continue;
        NumericValue term = nv_mul(zeta_int(2 * r + 1, ctx),
                                   Z(Idx{}.twos(m + n + 1 - r).done(), ctx));
        rhs = nv_add(rhs, nv_scale(term, coeff));
    }
    rhs = nv_scale(rhs, Rational(2));
    return numeric_report(
        "22122", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, lhs,
        rhs, 2 * (m + n) + 3, ctx);
}

IdentityReport verify_prop_m0(int n, const PrecisionContext& ctx) {
    if (n < 1) throw std::domain_error("prop_m0: requires n >= 1");
    NumericValue lhs = Z(Idx{}.twos(n - 1).part(3).done(), ctx);
    NumericValue rhs = nv_exact(0, static_cast<mpfr_prec_t>(ctx.bits));
    for (int l = 1; l <= n; ++l)
        rhs = nv_add(rhs, Z(Idx{}.twos(l).part(1).twos(n - l).done(), ctx));
    for (int l = 0; l <= n - 1; ++l)
        rhs = nv_sub(rhs, Z(Idx{}.twos(l).part(3).twos(n - 1 - l).done(), ctx));
    return numeric_report("prop_m0", {{"n", std::to_string(n)}}, lhs, rhs,
                          2 * n + 1, ctx);
}

namespace {

// Symmetrized sum over all arrangements of the j multiset, weighted by the
// number of permutations producing each arrangement.
NumericValue symmetrized_sum(const std::vector<int>& jvec, bool increment,
                             const PrecisionContext& ctx) {
    std::vector<int> arr = jvec;
    std::sort(arr.begin(), arr.end());
    Rational multiplicity(1);
    {
        int run = 1;
        for (size_t i = 1; i <= arr.size(); ++i) {
            if (i < arr.size() && arr[i] == arr[i - 1]) {
                ++run;
            } else {
                mpz_class f;
                mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(run));
                multiplicity *= Rational(f);
                run = 1;
            }
        }
    }
    NumericValue sum = nv_exact(0, static_cast<mpfr_prec_t>(ctx.bits));
    // Base pattern over the arrangement; append_zero / increment_last then
    // realize sigma(j)_+ or sigma(j)^+.
    const std::vector<int> evec = alternating_31(static_cast<int>(jvec.size()) - 1);
    do {
        Pattern base(arr, evec);
        Pattern inst = increment ? base.increment_last() : base.append_zero(1);
        if (!inst.admissible())
            throw std::domain_error("conjecture: divergent instance pattern");
        sum = nv_add(sum, Z(inst.to_index(), ctx));
    } while (std::next_permutation(arr.begin(), arr.end()));
    return nv_scale(sum, multiplicity);
}

IdentityReport recognition_report(
    std::string identity,
    std::vector<std::pair<std::string, std::string>> params,
    const NumericValue& sum, unsigned pi_power, const PrecisionContext& ctx,
    unsigned long max_den) {
    NumericValue pi = const_pi(ctx);
    NumericValue pi_pow = nv_exact(1, static_cast<mpfr_prec_t>(ctx.bits));
    for (unsigned i = 0; i < pi_power; ++i) pi_pow = nv_mul(pi_pow, pi);
    NumericValue ratio = nv_div(sum, pi_pow);

    IdentityReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    r.params.emplace_back("pi_power", std::to_string(pi_power));
    r.params.emplace_back("max_den", std::to_string(max_den));
    r.lhs = ratio.to_string();
    r.method = "numeric";
    r.precision_bits = ctx.bits;
    r.ladder = ctx.ladder;
    double tol = std::max(4.0 * ratio.err,
                          std::ldexp(1.0, -static_cast<int>(ctx.bits) / 2));
    r.tolerance = format_double(tol);
    if (auto found = recognize_rational(ratio, max_den)) {
        r.rhs = rational_to_string(*found);
        Real diff =
            (ratio.value - Real::of(*found, ratio.value.prec())).abs();
        r.residual = diff.str(3);
        r.status = "pass";
    } else {
        r.rhs = "";
        r.residual = "n/a";
        r.status = "unrecognized";
    }
    return r;
}

}  // namespace

IdentityReport conjecture_A_instance(int n, const std::vector<int>& jvec,
                                     const PrecisionContext& ctx,
                                     unsigned long max_den) {
    if (n < 1) throw std::domain_error("conjecture A: requires n >= 1");
    if (jvec.size() != static_cast<size_t>(2 * n))
        throw std::domain_error("conjecture A: j vector must have length 2n");
    int m = 0;
    for (int j : jvec) m += j;
    NumericValue sum = symmetrized_sum(jvec, false, ctx);
    return recognition_report(
        "conjectureA", {{"n", std::to_string(n)}, {"j", vec_to_csv(jvec)}},
        sum, static_cast<unsigned>(2 * m + 4 * n), ctx, max_den);
}

IdentityReport conjecture_B_instance(int n, const std::vector<int>& jvec,
                                     const PrecisionContext& ctx,
                                     unsigned long max_den) {
    if (n < 0) throw std::domain_error("conjecture B: requires n >= 0");
    if (jvec.size() != static_cast<size_t>(2 * n + 1))
        throw std::domain_error(
            "conjecture B: j vector must have length 2n+1");
    int m = 0;
    for (int j : jvec) m += j;
    NumericValue sum = symmetrized_sum(jvec, true, ctx);
    return recognition_report(
        "conjectureB", {{"n", std::to_string(n)}, {"j", vec_to_csv(jvec)}},
        sum, static_cast<unsigned>(2 * m + 4 * n + 2), ctx, max_den);
}

IdentityReport verify_telescope(const Pattern& p, long P) {
    if (!x_factors_admissible(p))
        throw std::domain_error("telescope: divergent sub-pattern");
    const int n = p.length();
    Rational alt(0);
    for (int k = 0; k <= n; ++k) {
        Rational x = x_trunc(p, k, P);
        if (k % 2) x = -x;
        alt += x;
    }
    Rational fn = boundary_Fn(p, P);
    if (n % 2) fn = -fn;
    Rational boundary = boundary_E0(p, P) + fn;
    Rational res = alt - boundary;

    IdentityReport r;
    r.identity = "telescope";
    r.params = {{"pattern", p.to_string()}, {"trunc", std::to_string(P)}};
    r.lhs = rational_to_string(alt);
    r.rhs = rational_to_string(boundary);
    r.residual = rational_to_string(res);
    r.tolerance = "0";
    r.method = "exact";
    r.status = (res == 0) ? "pass" : "fail";
    r.precision_bits = 0;
    return r;
}

Rational main2_finite_p_residual(int m, int n, long p) {
    if (m < 1 || n < 1)
        throw std::domain_error("main2 finite-p: requires m, n >= 1");
    Rational lhs =
        zeta_star_trunc(Idx{}.twos(m).part(1).twos(n).done(), p) +
        zeta_star_trunc(Idx{}.twos(n - 1).part(3).twos(m).done(), p);
    Rational rhs(0);
    Rational star_2n = zeta_star_trunc(Idx{}.twos(n).done(), p);
    for (int k = 0; k <= m; ++k) {
        Rational term = zeta_trunc(Idx{}.part(1).twos(k).done(), p) *
                        zeta_star_trunc(Idx{}.twos(m - k).done(), p) * star_2n;
        if (k % 2) term = -term;
        rhs += term;
    }
    for (int k = 0; k <= m; ++k)
        for (int l = 1; l <= n; ++l) {
            Rational diff =
                zeta_trunc(Idx{}.twos(l).part(1).twos(k).done(), p) -
                zeta_trunc(Idx{}.twos(k).part(3).twos(l - 1).done(), p);
            if (diff == 0) continue;
            Rational term = diff *
                            zeta_star_trunc(Idx{}.twos(m - k).done(), p) *
                            zeta_star_trunc(Idx{}.twos(n - l).done(), p);
            if ((k + l) % 2) term = -term;
            rhs += term;
        }
    return lhs - rhs;
}

Rational main2_m0_finite_p_residual(int n, long p) {
    if (n < 1) throw std::domain_error("main2 m=0 finite-p: requires n >= 1");
    Rational lhs =
        zeta_star_trunc(Idx{}.part(1).twos(n).done(), p) +
        zeta_star_trunc(Idx{}.twos(n - 1).part(3).done(), p);
    Rational rhs = zeta_star_trunc(Idx{}.part(1).done(), p) *
                   zeta_star_trunc(Idx{}.twos(n).done(), p);
    for (int l = 1; l <= n; ++l) {
        Rational diff = zeta_trunc(Idx{}.twos(l).part(1).done(), p) -
                        zeta_trunc(Idx{}.part(3).twos(l - 1).done(), p);
        if (diff == 0) continue;
        Rational term = diff * zeta_star_trunc(Idx{}.twos(n - l).done(), p);
        if (l % 2) term = -term;
        rhs += term;
    }
    return lhs - rhs;
}

Rational prop_m0_finite_p_residual(int n, long p) {
    if (n < 1) throw std::domain_error("prop_m0 finite-p: requires n >= 1");
    Rational lhs = zeta_star_trunc(Idx{}.twos(n - 1).part(3).done(), p);
    Rational rhs(0);
    for (int l = 1; l <= n; ++l)
        rhs += zeta_star_trunc(Idx{}.twos(l).part(1).twos(n - l).done(), p);
    for (int l = 0; l <= n - 1; ++l)
        rhs -= zeta_star_trunc(Idx{}.twos(l).part(3).twos(n - 1 - l).done(), p);
    for (int l = 1; l <= n; ++l) {
        Rational diff = zeta_trunc(Idx{}.twos(l).part(1).done(), p) -
                        zeta_trunc(Idx{}.part(3).twos(l - 1).done(), p);
        if (diff == 0) continue;
        Rational term = diff * zeta_star_trunc(Idx{}.twos(n - l).done(), p);
        if (l % 2) term = -term;
        rhs += term;
    }
    return lhs - rhs;
}

}  // namespace zetakit
