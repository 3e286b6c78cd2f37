#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace zetakit {

void PrecisionContext::validate() const {
    if (bits < 64) throw std::invalid_argument("context: bits must be >= 64");
    if (ladder.empty() || ladder.front() < 1)
        throw std::invalid_argument("context: ladder must be non-empty");
    for (size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i] <= ladder[i - 1])
            throw std::invalid_argument("context: ladder must be strictly increasing");
    if (order < 1 || static_cast<size_t>(order) >= ladder.size())
        throw std::invalid_argument("context: need 0 < order < ladder length");
}

NumericValue const_pi(const PrecisionContext& ctx) {
    ctx.validate();
    Real pi(static_cast<mpfr_prec_t>(ctx.bits));
    mpfr_const_pi(pi.raw(), MPFR_RNDN);
    double err = std::ldexp(4.0, 2 - static_cast<int>(ctx.bits));
    return {std::move(pi), err};
}

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rational> g_bernoulli;  // B_0, B_1, ...

}  // namespace

Rational bernoulli(int n) {
    if (n < 0 || n > 200)
        throw std::invalid_argument("bernoulli: n must be in [0, 200]");
    if (n > 1 && n % 2 == 1)
        throw std::invalid_argument("bernoulli: odd n > 1 not supported");
    std::lock_guard lock(g_bernoulli_mutex);
    if (g_bernoulli.empty()) g_bernoulli.push_back(Rational(1));
    for (int m = static_cast<int>(g_bernoulli.size()); m <= n; ++m) {
        // sum_{k=0}^{m} binom(m+1, k) B_k = 0
        Rational acc(0);
        for (int k = 0; k < m; ++k)
            acc += binomial(m + 1, k) * g_bernoulli[static_cast<size_t>(k)];
        g_bernoulli.push_back(-acc / Rational(m + 1));
    }
    return g_bernoulli[static_cast<size_t>(n)];
}

namespace {

constexpr int kTailOrder = 8;  // Euler-Maclaurin correction depth for odd s

std::mutex g_zeta_mutex;
std::map<std::pair<int, unsigned>, NumericValue> g_zeta_cache;

NumericValue zeta_even(int s, const PrecisionContext& ctx) {
    // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)
    Rational b = bernoulli(s);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(s));
    Rational coeff = abs(b) / (Rational(2) * Rational(fact));
    mpfr_prec_t wprec = static_cast<mpfr_prec_t>(ctx.bits + 32);
    Real two_pi(wprec);
    mpfr_const_pi(two_pi.raw(), MPFR_RNDN);
    mpfr_mul_ui(two_pi.raw(), two_pi.raw(), 2, MPFR_RNDN);
    Real value = two_pi.pow_ui(static_cast<unsigned long>(s)) *
                 Real::of(coeff, wprec);
    Real out(static_cast<mpfr_prec_t>(ctx.bits));
    mpfr_set(out.raw(), value.raw(), MPFR_RNDN);
    double err = std::ldexp(std::fabs(out.to_double()) * (s + 4),
                            4 - static_cast<int>(ctx.bits));
    return {std::move(out), err};
}

NumericValue zeta_odd(int s, const PrecisionContext& ctx) {
    const mpfr_prec_t wprec = static_cast<mpfr_prec_t>(ctx.bits + 32);
    // First omitted tail term decays like N^{-s-2*kTailOrder-1}; pick N so it
    // drops below the working precision.
    double exponent = static_cast<double>(ctx.bits + 16) /
                      static_cast<double>(s + 2 * kTailOrder + 1);
    long N = static_cast<long>(std::ceil(std::pow(2.0, exponent)));
    N = std::max<long>(N, 64);

    Real sum(wprec), tmp(wprec);
    for (long k = 1; k < N; ++k) {
        mpfr_set_si(tmp.raw(), k, MPFR_RNDN);
        mpfr_pow_si(tmp.raw(), tmp.raw(), -s, MPFR_RNDN);
        mpfr_add(sum.raw(), sum.raw(), tmp.raw(), MPFR_RNDN);
    }
    Real n_real = Real::of(N, wprec);
    // integral term N^{1-s}/(s-1) and half-sample term N^{-s}/2
    mpfr_pow_si(tmp.raw(), n_real.raw(), 1 - s, MPFR_RNDN);
    mpfr_div_ui(tmp.raw(), tmp.raw(), static_cast<unsigned long>(s - 1),
                MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), tmp.raw(), MPFR_RNDN);
    mpfr_pow_si(tmp.raw(), n_real.raw(), -s, MPFR_RNDN);
    mpfr_div_ui(tmp.raw(), tmp.raw(), 2, MPFR_RNDN);
    mpfr_add(sum.raw(), sum.raw(), tmp.raw(), MPFR_RNDN);
    // Bernoulli corrections B_{2i}/(2i)! * s(s+1)...(s+2i-2) * N^{1-s-2i}
    Rational rising(s);
    for (int i = 1; i <= kTailOrder; ++i) {
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * i));
        Rational coeff = bernoulli(2 * i) * rising / Rational(fact);
        mpfr_pow_si(tmp.raw(), n_real.raw(), 1 - s - 2 * i, MPFR_RNDN);
        mpfr_mul_q(tmp.raw(), tmp.raw(), coeff.get_mpq_t(), MPFR_RNDN);
        mpfr_add(sum.raw(), sum.raw(), tmp.raw(), MPFR_RNDN);
        rising *= Rational(s + 2 * i - 1) * Rational(s + 2 * i);
    }
    // error: twice the first omitted correction plus rounding slack
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(),
               static_cast<unsigned long>(2 * (kTailOrder + 1)));
    Rational omitted = abs(bernoulli(2 * (kTailOrder + 1))) * rising /
                       Rational(fact);
    double tail_err = std::fabs(omitted.get_d()) *
                      std::pow(static_cast<double>(N), 1.0 - s - 2.0 * (kTailOrder + 1));
    Real out(static_cast<mpfr_prec_t>(ctx.bits));
    mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
    double err = 2.0 * tail_err +
                 std::ldexp(2.0, 4 - static_cast<int>(ctx.bits));
    return {std::move(out), err};
}

}  // namespace

NumericValue zeta_int(int s, const PrecisionContext& ctx) {
    if (s < 2) throw std::invalid_argument("zeta_int: s must be >= 2");
    ctx.validate();
    auto key = std::make_pair(s, ctx.bits);
    {
        std::lock_guard lock(g_zeta_mutex);
        auto it = g_zeta_cache.find(key);
        if (it != g_zeta_cache.end()) return it->second;
    }
    NumericValue v = (s % 2 == 0) ? zeta_even(s, ctx) : zeta_odd(s, ctx);
    std::lock_guard lock(g_zeta_mutex);
    return g_zeta_cache.emplace(key, std::move(v)).first->second;
}

ExtrapPlan extrapolation_plan(const Index& i, const PrecisionContext& ctx) {
    ctx.validate();
    ExtrapPlan plan;
    plan.log_degree = std::min(i.ones(), 3);
    plan.order = ctx.order;
    // A full log cube needs 4 power levels per degree; keep the point count
    // at 13 by trading one power order.
    if (plan.log_degree == 3) plan.order = std::min(plan.order, 3);
    size_t needed =
        1 + static_cast<size_t>(plan.order) * (static_cast<size_t>(plan.log_degree) + 1);
    plan.points = ctx.ladder;
    if (plan.points.size() > needed) {
        plan.points.erase(plan.points.begin(),
                          plan.points.end() - static_cast<long>(needed));
    } else if (plan.points.size() < needed) {
        long ratio = 2;
        if (plan.points.size() >= 2) {
            long r = plan.points.back() / plan.points[plan.points.size() - 2];
            if (r >= 2) ratio = r;
        }
        while (plan.points.size() < needed)
            plan.points.push_back(plan.points.back() * ratio);
    }
    return plan;
}

namespace {

// Truncated values S(p) at each requested level, one ascending pass.
std::vector<Real> ladder_values(std::span<const int> parts,
                                std::span<const long> points, bool star,
                                mpfr_prec_t prec) {
    const int n = static_cast<int>(parts.size());
    const long pmax = points.back();
    int kmax = 0;
    for (int k : parts) kmax = std::max(kmax, k);

    std::vector<Real> pref(static_cast<size_t>(n), Real(prec));
    std::vector<Real> row(static_cast<size_t>(n), Real(prec));
    std::vector<Real> pw(static_cast<size_t>(kmax + 1), Real(prec));
    Real mt(prec);

    std::vector<Real> out;
    out.reserve(points.size());
    size_t next = 0;
    for (long m = 1; m <= pmax; ++m) {
        mpfr_set_si(mt.raw(), m, MPFR_RNDN);
        mpfr_ui_div(pw[1].raw(), 1, mt.raw(), MPFR_RNDN);
        for (int k = 2; k <= kmax; ++k)
            mpfr_mul(pw[static_cast<size_t>(k)].raw(),
                     pw[static_cast<size_t>(k - 1)].raw(), pw[1].raw(),
                     MPFR_RNDN);
        if (star) {
            for (int d = n - 1; d >= 0; --d) {
                auto& target = pref[static_cast<size_t>(d)];
                if (d + 1 < n) {
                    mpfr_mul(row[static_cast<size_t>(d)].raw(),
                             pw[static_cast<size_t>(parts[d])].raw(),
                             pref[static_cast<size_t>(d + 1)].raw(), MPFR_RNDN);
                    mpfr_add(target.raw(), target.raw(),
                             row[static_cast<size_t>(d)].raw(), MPFR_RNDN);
                } else {
                    mpfr_add(target.raw(), target.raw(),
                             pw[static_cast<size_t>(parts[d])].raw(),
                             MPFR_RNDN);
                }
            }
        } else {
            for (int d = 0; d < n; ++d) {
                if (d + 1 < n)
                    mpfr_mul(row[static_cast<size_t>(d)].raw(),
                             pw[static_cast<size_t>(parts[d])].raw(),
                             pref[static_cast<size_t>(d + 1)].raw(), MPFR_RNDN);
                else
                    mpfr_set(row[static_cast<size_t>(d)].raw(),
                             pw[static_cast<size_t>(parts[d])].raw(),
                             MPFR_RNDN);
            }
            for (int d = 0; d < n; ++d)
                mpfr_add(pref[static_cast<size_t>(d)].raw(),
                         pref[static_cast<size_t>(d)].raw(),
                         row[static_cast<size_t>(d)].raw(), MPFR_RNDN);
        }
        if (next < points.size() && m == points[next]) {
            out.push_back(pref[0]);
            ++next;
        }
    }
    return out;
}

// Solves for the constant term of the model
//   S(p) = A + sum_{i=1..order} sum_{j=0..log_degree} c_ij log^j(p)/p^i
// through exactly as many points as unknowns.
Real extrapolate_constant(std::span<const Real> values,
                          std::span<const long> points, int order,
                          int log_degree, mpfr_prec_t wprec) {
    const size_t K = 1 + static_cast<size_t>(order) *
                             (static_cast<size_t>(log_degree) + 1);
    if (values.size() != K || points.size() != K)
        throw std::logic_error("extrapolate: point/basis mismatch");
    std::vector<std::vector<Real>> M(K);
    std::vector<Real> b(K, Real(wprec));
    for (size_t r = 0; r < K; ++r) {
        Real p = Real::of(points[r], wprec);
        Real logp(wprec);
        mpfr_log(logp.raw(), p.raw(), MPFR_RNDN);
        M[r].reserve(K);
        M[r].push_back(Real::of(1L, wprec));
        for (int i = 1; i <= order; ++i) {
            Real inv_pi(wprec);
            mpfr_pow_si(inv_pi.raw(), p.raw(), -i, MPFR_RNDN);
            Real lj = Real::of(1L, wprec);
            for (int j = 0; j <= log_degree; ++j) {
                M[r].push_back(inv_pi * lj);
                lj = lj * logp;
            }
        }
        mpfr_set(b[r].raw(), values[r].raw(), MPFR_RNDN);
    }
    // Gaussian elimination with partial pivoting.
    std::vector<size_t> perm(K);
    for (size_t i = 0; i < K; ++i) perm[i] = i;
    for (size_t col = 0; col < K; ++col) {
        size_t piv = col;
        Real best = M[col][col].abs();
        for (size_t r = col + 1; r < K; ++r) {
            Real cand = M[r][col].abs();
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best.is_zero()) throw std::runtime_error("extrapolate: singular system");
        std::swap(M[col], M[piv]);
        std::swap(b[col], b[piv]);
        for (size_t r = col + 1; r < K; ++r) {
            Real f = M[r][col] / M[col][col];
            if (f.is_zero()) continue;
            for (size_t c = col; c < K; ++c) M[r][c] = M[r][c] - f * M[col][c];
            b[r] = b[r] - f * b[col];
        }
    }
    std::vector<Real> x(K, Real(wprec));
    for (size_t ri = K; ri-- > 0;) {
        Real acc = b[ri];
        for (size_t c = ri + 1; c < K; ++c) acc = acc - M[ri][c] * x[c];
        x[ri] = acc / M[ri][ri];
    }
    return x[0];
}

std::mutex g_numeric_mutex;
std::map<std::tuple<std::vector<int>, bool, unsigned, std::vector<long>, int>,
         NumericValue>
    g_numeric_cache;

NumericValue limit_numeric(const Index& i, const PrecisionContext& ctx,
                           bool star) {
    ctx.validate();
    if (!i.admissible())
        throw std::domain_error("numeric: index must be admissible");
    const mpfr_prec_t bits = static_cast<mpfr_prec_t>(ctx.bits);
    if (i.depth() == 0) return nv_exact(1, bits);

    ExtrapPlan plan = extrapolation_plan(i, ctx);
    std::vector<int> parts(i.parts().begin(), i.parts().end());
    auto key = std::make_tuple(parts, star, ctx.bits, plan.points, plan.order);
    {
        std::lock_guard lock(g_numeric_mutex);
        auto it = g_numeric_cache.find(key);
        if (it != g_numeric_cache.end()) return it->second;
    }

    const mpfr_prec_t dp_prec = bits + 32;
    const mpfr_prec_t solve_prec = bits + 64;
    std::vector<Real> S = ladder_values(parts, plan.points, star, dp_prec);

    auto sub_extrap = [&](int ord) {
        size_t k = 1 + static_cast<size_t>(ord) *
                           (static_cast<size_t>(plan.log_degree) + 1);
        return extrapolate_constant(std::span(S).first(k),
                                    std::span(plan.points).first(k), ord,
                                    plan.log_degree, solve_prec);
    };
    Real a = sub_extrap(plan.order);
    Real a1 = plan.order >= 2 ? sub_extrap(plan.order - 1) : S.back();
    Real a2 = plan.order >= 3 ? sub_extrap(plan.order - 2) : a1;

    double d2 = (a - a1).abs().to_double();
    double d1 = (a1 - a2).abs().to_double();
    double floor_err = std::ldexp(std::max(1.0, std::fabs(a.to_double())),
                                  8 - static_cast<int>(ctx.bits));
    double err = 2.0 * std::max(d2, d1 / 8.0) + floor_err;

    Real out(bits);
    mpfr_set(out.raw(), a.raw(), MPFR_RNDN);
    NumericValue nv{std::move(out), err};
    std::lock_guard lock(g_numeric_mutex);
    return g_numeric_cache.emplace(std::move(key), std::move(nv))
        .first->second;
}

}  // namespace

NumericValue mzsv_numeric(const Index& i, const PrecisionContext& ctx) {
    return limit_numeric(i, ctx, true);
}

NumericValue mzv_numeric(const Index& i, const PrecisionContext& ctx) {
    return limit_numeric(i, ctx, false);
}

std::optional<Rational> recognize_rational(const NumericValue& v,
                                           unsigned long max_den) {
    if (max_den < 1) return std::nullopt;
    // Exact rational equal to the float, then exact continued fractions.
    Rational x(0);
    if (!v.value.is_zero()) {
        mpz_class mant;
        mpfr_exp_t e2 = mpfr_get_z_2exp(mant.get_mpz_t(), v.value.raw());
        mpz_class sc;
        mpz_ui_pow_ui(sc.get_mpz_t(), 2,
                      static_cast<unsigned long>(e2 >= 0 ? e2 : -e2));
        x = Rational(mant);
        if (e2 >= 0)
            x *= Rational(sc);
        else
            x /= Rational(sc);
    }

    double threshold = std::max(
        4.0 * v.err,
        std::ldexp(1.0, -static_cast<int>(v.value.prec()) / 2));

    Rational rem = x;
    mpz_class h_prev(1), h_prev2(0), k_prev(0), k_prev2(1);
    std::optional<Rational> best;
    for (int iter = 0; iter < 256; ++iter) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rem.get_num_mpz_t(), rem.get_den_mpz_t());
        mpz_class h = a * h_prev + h_prev2;
        mpz_class k = a * k_prev + k_prev2;
        if (mpz_cmp_ui(k.get_mpz_t(), max_den) > 0) break;
        Rational conv(h, k);
        conv.canonicalize();
        best = conv;
        Rational frac = rem - Rational(a);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        if (frac == 0) break;
        rem = Rational(1) / frac;
    }
    if (!best) return std::nullopt;
    Rational dist = abs(x - *best);
    if (dist.get_d() <= threshold) return best;
    return std::nullopt;
}

}  // namespace zetakit
