#include "truncated.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace zetakit {

namespace {

std::mutex g_trunc_mutex;
std::map<std::tuple<std::vector<int>, long, bool>, Rational> g_trunc_memo;

std::mutex g_ckernel_mutex;
std::map<std::tuple<int, long, long>, Rational> g_ckernel_memo;

Rational trunc_dp(std::span<const int> parts, long p, bool star) {
    const int n = static_cast<int>(parts.size());
    if (n == 0) return Rational(1);
    if (p < (star ? 1 : n)) return Rational(0);
    // pref[d] holds the chain sum for the suffix starting at part d with the
    // outer variable at most m (inclusive for the star order, exclusive for
    // the strict order while the current row is being built).
    std::vector<Rational> pref(static_cast<size_t>(n), Rational(0));
    std::vector<Rational> row(static_cast<size_t>(n));
    for (long m = 1; m <= p; ++m) {
        if (star) {
            for (int d = n - 1; d >= 0; --d) {
                Rational t = inv_pow(static_cast<unsigned long>(m),
                                     static_cast<unsigned long>(parts[d]));
                if (d + 1 < n) t *= pref[static_cast<size_t>(d + 1)];
                pref[static_cast<size_t>(d)] += t;
            }
        } else {
            for (int d = 0; d < n; ++d) {
                Rational t = inv_pow(static_cast<unsigned long>(m),
                                     static_cast<unsigned long>(parts[d]));
                if (d + 1 < n) t *= pref[static_cast<size_t>(d + 1)];
                row[static_cast<size_t>(d)] = std::move(t);
            }
            for (int d = 0; d < n; ++d)
                pref[static_cast<size_t>(d)] += row[static_cast<size_t>(d)];
        }
    }
    return pref[0];
}

Rational trunc_memoized(const Index& i, long p, bool star) {
    if (p < 0) throw std::invalid_argument("truncation level must be >= 0");
    std::vector<int> key_parts(i.parts().begin(), i.parts().end());
    auto key = std::make_tuple(std::move(key_parts), p, star);
    {
        std::lock_guard lock(g_trunc_mutex);
        auto it = g_trunc_memo.find(key);
        if (it != g_trunc_memo.end()) return it->second;
    }
    Rational v = trunc_dp(i.parts(), p, star);
    std::lock_guard lock(g_trunc_mutex);
    return g_trunc_memo.emplace(std::move(key), std::move(v)).first->second;
}

}  // namespace

Rational zeta_trunc(const Index& i, long p) { return trunc_memoized(i, p, false); }

Rational zeta_star_trunc(const Index& i, long p) {
    return trunc_memoized(i, p, true);
}

Rational c_kernel(int j, long A, long B) {
    if (j < -1) throw std::invalid_argument("c_kernel: j must be >= -1");
    if (B < 1 || A < B) throw std::domain_error("c_kernel: requires A >= B >= 1");
    if (j == -1) {
        if (A != B) return Rational(0);
        return Rational(A) * Rational(A);
    }
    if (j == 0) return Rational(1);
    auto key = std::make_tuple(j, A, B);
    {
        std::lock_guard lock(g_ckernel_mutex);
        auto it = g_ckernel_memo.find(key);
        if (it != g_ckernel_memo.end()) return it->second;
    }
    Rational sum(0);
    for (long p = B; p <= A; ++p)
        sum += inv_pow(static_cast<unsigned long>(p), 2) * c_kernel(j - 1, p, B);
    std::lock_guard lock(g_ckernel_mutex);
    return g_ckernel_memo.emplace(key, std::move(sum)).first->second;
}

std::pair<Rational, Rational> c_duality_check(int j, long p, long q) {
    if (p < 1 || q < 1)
        throw std::domain_error("c_duality_check: p, q must be >= 1");
    Rational lhs(0);
    for (long p0 = 1; p0 <= p; ++p0)
        lhs += c_kernel(j, p, p0) * Rational(q) / Rational(p0 * (p0 + q));
    Rational rhs(0);
    for (long q0 = 1; q0 <= q; ++q0)
        rhs += c_kernel(j, q, q0) * Rational(p) / Rational(q0 * (q0 + p));
    return {lhs, rhs};
}

GFPoly::GFPoly(int max_x, int max_y) : mx_(max_x), my_(max_y) {
    if (max_x < 0 || max_y < 0)
        throw std::invalid_argument("gfpoly: caps must be >= 0");
    c_.assign(static_cast<size_t>((mx_ + 1) * (my_ + 1)), Rational(0));
}

GFPoly GFPoly::constant(int max_x, int max_y, const Rational& c) {
    GFPoly p(max_x, max_y);
    p.set_coeff(0, 0, c);
    return p;
}

const Rational& GFPoly::coeff(int m, int n) const {
    if (m < 0 || m > mx_ || n < 0 || n > my_)
        throw std::out_of_range("gfpoly: coefficient index");
    return c_[static_cast<size_t>(m * (my_ + 1) + n)];
}

void GFPoly::set_coeff(int m, int n, const Rational& c) {
    if (m < 0 || m > mx_ || n < 0 || n > my_)
        throw std::out_of_range("gfpoly: coefficient index");
    c_[static_cast<size_t>(m * (my_ + 1) + n)] = c;
}

GFPoly GFPoly::operator+(const GFPoly& o) const {
    if (mx_ != o.mx_ || my_ != o.my_)
        throw std::invalid_argument("gfpoly: cap mismatch");
    GFPoly out(mx_, my_);
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] + o.c_[i];
    return out;
}

GFPoly GFPoly::operator*(const GFPoly& o) const {
    if (mx_ != o.mx_ || my_ != o.my_)
        throw std::invalid_argument("gfpoly: cap mismatch");
    GFPoly out(mx_, my_);
    for (int m1 = 0; m1 <= mx_; ++m1)
        for (int n1 = 0; n1 <= my_; ++n1) {
            const Rational& a = coeff(m1, n1);
            if (a == 0) continue;
            for (int m2 = 0; m1 + m2 <= mx_; ++m2)
                for (int n2 = 0; n1 + n2 <= my_; ++n2) {
                    const Rational& b = o.coeff(m2, n2);
                    if (b == 0) continue;
                    out.c_[static_cast<size_t>((m1 + m2) * (my_ + 1) + n1 +
                                               n2)] += a * b;
                }
        }
    return out;
}

namespace {

// Geometric series (1 - v/q^e)^{-1} truncated at the cap of variable v,
// where v is x (axis 0) or y (axis 1).
GFPoly geometric_inverse(int axis, long q, int e, GFCaps caps) {
    GFPoly out(caps.max_x, caps.max_y);
    int cap = axis == 0 ? caps.max_x : caps.max_y;
    Rational term(1);
    Rational step = inv_pow(static_cast<unsigned long>(q),
                            static_cast<unsigned long>(e));
    for (int d = 0; d <= cap; ++d) {
        if (axis == 0)
            out.set_coeff(d, 0, term);
        else
            out.set_coeff(0, d, term);
        term *= step;
    }
    return out;
}

}  // namespace

GFMatrix gf_step_T(long q, int a, int b, int c, GFCaps caps) {
    GFPoly one = GFPoly::constant(caps.max_x, caps.max_y, Rational(1));
    GFPoly t11 = one;
    if (caps.max_x >= 1)
        t11.set_coeff(1, 0, inv_pow(static_cast<unsigned long>(q),
                                    static_cast<unsigned long>(a)));
    GFPoly t12 = GFPoly::constant(
        caps.max_x, caps.max_y,
        inv_pow(static_cast<unsigned long>(q), static_cast<unsigned long>(b)));
    GFPoly t21(caps.max_x, caps.max_y);
    GFPoly t22 = one;
    if (caps.max_y >= 1)
        t22.set_coeff(0, 1, inv_pow(static_cast<unsigned long>(q),
                                    static_cast<unsigned long>(c)));
    return GFMatrix{{std::move(t11), std::move(t12), std::move(t21),
                     std::move(t22)}};
}

GFMatrix gf_step_U(long q, int a, int b, int c, GFCaps caps) {
    GFPoly gx = geometric_inverse(0, q, c, caps);  // (1 - x/q^c)^{-1}
    GFPoly gy = geometric_inverse(1, q, a, caps);  // (1 - y/q^a)^{-1}
    GFPoly u11 = gx;
    GFPoly u12 =
        gx * gy *
        GFPoly::constant(caps.max_x, caps.max_y,
                         inv_pow(static_cast<unsigned long>(q),
                                 static_cast<unsigned long>(b)));
    GFPoly u21(caps.max_x, caps.max_y);
    GFPoly u22 = gy;
    return GFMatrix{{std::move(u11), std::move(u12), std::move(u21),
                     std::move(u22)}};
}

namespace {

std::pair<GFPoly, GFPoly> gf_apply_chain(
    long p, GFCaps caps, const std::function<GFMatrix(long)>& step) {
    GFPoly f(caps.max_x, caps.max_y);
    GFPoly g = GFPoly::constant(caps.max_x, caps.max_y, Rational(1));
    for (long q = 1; q <= p; ++q) {
        GFMatrix s = step(q);
        GFPoly nf = s.at(0, 0) * f + s.at(0, 1) * g;
        GFPoly ng = s.at(1, 0) * f + s.at(1, 1) * g;
        f = std::move(nf);
        g = std::move(ng);
    }
    return {std::move(f), std::move(g)};
}

}  // namespace

std::pair<GFPoly, GFPoly> gf_transfer(long p, int a, int b, int c,
                                      GFCaps caps) {
    return gf_apply_chain(
        p, caps, [&](long q) { return gf_step_T(q, a, b, c, caps); });
}

std::pair<GFPoly, GFPoly> gf_transfer_star(long p, int a, int b, int c,
                                           GFCaps caps) {
    return gf_apply_chain(
        p, caps, [&](long q) { return gf_step_U(q, a, b, c, caps); });
}

namespace {

// ({first}^m, mid, {last}^n) as an index.
Index block_index(int first, int m, int mid, int last, int n) {
    std::vector<int> parts;
    parts.insert(parts.end(), static_cast<size_t>(m), first);
    parts.push_back(mid);
    parts.insert(parts.end(), static_cast<size_t>(n), last);
    return Index(std::move(parts));
}

Index repeat_index(int k, int m) {
    return Index(std::vector<int>(static_cast<size_t>(m), k));
}

}  // namespace

Rational ccbaa_residual(long p, int m, int n, int a, int b, int c) {
    if (m < 0 || n < 0 || a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("ccbaa_residual: bad parameters");
    Rational lhs = zeta_star_trunc(block_index(c, m, b, a, n), p);
    Rational rhs(0);
    for (int k = 0; k <= m; ++k)
        for (int l = 0; l <= n; ++l) {
            Rational term = zeta_trunc(block_index(a, l, b, c, k), p);
            if (term == 0) continue;
            term *= zeta_star_trunc(repeat_index(c, m - k), p);
            term *= zeta_star_trunc(repeat_index(a, n - l), p);
            if ((k + l) % 2) term = -term;
            rhs += term;
        }
    return lhs - rhs;
}

Rational x_trunc(const Pattern& p, int k, long P) {
    XFactors f = x_factors(p, k);
    if (!f.left.admissible() || !f.right.admissible())
        throw std::domain_error("x_trunc: non-admissible sub-pattern");
    return zeta_star_trunc(f.left.to_index(), P) *
           zeta_star_trunc(f.right.to_index(), P);
}

bool x_factors_admissible(const Pattern& p) {
    for (int k = 0; k <= p.length(); ++k) {
        XFactors f = x_factors(p, k);
        if (!f.left.admissible() || !f.right.admissible()) return false;
    }
    return true;
}

namespace {

void require_telescoping_pattern(const Pattern& p, const char* who) {
    if (p.is_empty())
        throw std::domain_error(std::string(who) + ": pattern must be non-empty");
    if (!p.admissible() || !p.reversed().admissible())
        throw std::domain_error(std::string(who) +
                                ": pattern and its reverse must be admissible");
}

// Nested chain sum over cap >= v_n >= ... >= v_1 >= 1 with weights
// C_{j_level}(v_{level+1}, v_level) * v_level^{-e(level-1)} and the boundary
// coupling v_1/(cap + v_1) at the innermost level. jsel/esel map a level to
// the pattern entries; boundary_E0 and boundary_Fn differ only in that map.
Rational chain_sum(int level, long upper, long cap, const Pattern& pat,
                   const std::function<int(int)>& jsel,
                   const std::function<int(int)>& esel,
                   std::vector<std::vector<std::optional<Rational>>>& memo) {
    auto& slot = memo[static_cast<size_t>(level)][static_cast<size_t>(upper)];
    if (slot) return *slot;
    Rational total(0);
    for (long v = 1; v <= upper; ++v) {
        Rational w = c_kernel(jsel(level), upper, v) *
                     inv_pow(static_cast<unsigned long>(v),
                             static_cast<unsigned long>(esel(level)));
        if (w == 0) continue;
        if (level == 1)
            w *= Rational(v) / Rational(cap + v);
        else
            w *= chain_sum(level - 1, v, cap, pat, jsel, esel, memo);
        total += w;
    }
    slot = total;
    return total;
}

Rational boundary_sum(const Pattern& pat, long P, bool from_start) {
    const int n = pat.length();
    std::vector<std::vector<std::optional<Rational>>> memo(
        static_cast<size_t>(n + 1),
        std::vector<std::optional<Rational>>(static_cast<size_t>(P + 1)));
    // E0 sums the q-chain: level beta carries j_beta and e_{beta-1};
    // Fn sums the p-chain: level alpha (counted from the inside, alpha =
    // n+1-level) carries j_alpha and e_alpha.
    auto jsel = [&](int level) {
        return from_start ? pat.jvec()[static_cast<size_t>(level - 1)]
                          : pat.jvec()[static_cast<size_t>(n - level)];
    };
    auto esel = [&](int level) {
        return from_start ? pat.e_at(level - 1) : pat.e_at(n - level + 1);
    };
    return chain_sum(n, P, P, pat, jsel, esel, memo);
}

}  // namespace

Rational boundary_E0(const Pattern& p, long P) {
    require_telescoping_pattern(p, "boundary_E0");
    if (P < 1) throw std::invalid_argument("boundary_E0: P must be >= 1");
    return boundary_sum(p, P, true);
}

Rational boundary_Fn(const Pattern& p, long P) {
    require_telescoping_pattern(p, "boundary_Fn");
    if (P < 1) throw std::invalid_argument("boundary_Fn: P must be >= 1");
    return boundary_sum(p, P, false);
}

Rational telescope_residual(const Pattern& p, long P) {
    require_telescoping_pattern(p, "telescope_residual");
    if (P < 1)
        throw std::invalid_argument("telescope_residual: P must be >= 1");
    const int n = p.length();
    Rational sum(0);
    for (int k = 0; k <= n; ++k) {
        Rational x = x_trunc(p, k, P);
        if (k % 2) x = -x;
        sum += x;
    }
    Rational fn = boundary_Fn(p, P);
    if (n % 2) fn = -fn;
    return sum - boundary_E0(p, P) - fn;
}

}  // namespace zetakit
