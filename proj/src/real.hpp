#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "rational.hpp"

namespace zetakit {

// Value-semantic wrapper around mpfr_t. The precision travels with the
// value; binary operations produce results at the larger operand precision.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(double x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const Rational& q, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    Real operator+(const Real& o) const { return bin(o, mpfr_add); }
    Real operator-(const Real& o) const { return bin(o, mpfr_sub); }
    Real operator*(const Real& o) const { return bin(o, mpfr_mul); }
    Real operator/(const Real& o) const { return bin(o, mpfr_div); }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real pow_ui(unsigned long e) const {
        Real r(prec());
        mpfr_pow_ui(r.v_, v_, e, MPFR_RNDN);
        return r;
    }

    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }
    bool is_zero() const { return mpfr_zero_p(v_); }

    // Scientific notation with the given number of significant digits.
    std::string str(int digits) const {
        if (digits < 1) digits = 1;
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

  private:
    using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    Real bin(const Real& o, BinOp op) const {
        Real r(std::max(prec(), o.prec()));
        op(r.v_, v_, o.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

// A numeric result together with a first-order error estimate. err = 0
// marks exact values (integers, the empty-index value 1).
struct NumericValue {
    Real value;
    double err = 0.0;

    // Decimal rendering; the digit count never exceeds what err supports.
    std::string to_string() const {
        int by_prec = static_cast<int>(
            static_cast<double>(value.prec()) * 0.30103) - 2;
        int digits = by_prec;
        if (err > 0) {
            int by_err = static_cast<int>(std::floor(-std::log10(err)));
            if (by_err < digits) digits = by_err;
        }
        if (digits < 1) digits = 1;
        return value.str(digits);
    }
};

inline NumericValue nv_exact(long x, mpfr_prec_t prec) {
    return {Real::of(x, prec), 0.0};
}

inline NumericValue nv_add(const NumericValue& a, const NumericValue& b) {
    return {a.value + b.value, a.err + b.err};
}

inline NumericValue nv_sub(const NumericValue& a, const NumericValue& b) {
    return {a.value - b.value, a.err + b.err};
}

inline NumericValue nv_mul(const NumericValue& a, const NumericValue& b) {
    double ma = std::fabs(a.value.to_double());
    double mb = std::fabs(b.value.to_double());
    return {a.value * b.value, ma * b.err + mb * a.err + a.err * b.err};
}

inline NumericValue nv_scale(const NumericValue& a, const Rational& c) {
    Real f = Real::of(c, a.value.prec());
    return {a.value * f, std::fabs(f.to_double()) * a.err};
}

inline NumericValue nv_neg(const NumericValue& a) {
    return {-a.value, a.err};
}

inline NumericValue nv_div(const NumericValue& a, const NumericValue& b) {
    double ma = std::fabs(a.value.to_double());
    double mb = std::fabs(b.value.to_double());
    double rel = (mb > 0) ? (a.err / mb + ma * b.err / (mb * mb)) : a.err;
    return {a.value / b.value, rel};
}

}  // namespace zetakit
