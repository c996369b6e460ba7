#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace skewtor {

// Scalar traits.  Everything else in the library is templated on K and only
// talks to the scalar through this struct.
template <class K> struct Field;

template <> struct Field<mpq_class> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    static bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
    static mpq_class from_ratio(long n, long d = 1) {
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }
    static mpq_class from_mpq(const mpq_class& q) { return q; }
    static double to_double(const mpq_class& x) { return x.get_d(); }
    // magnitude used for pivot choice; exact mode takes the first nonzero
    static bool better_pivot(const mpq_class&, const mpq_class&) { return false; }
    static std::string str(const mpq_class& x) { return x.get_str(); }
    static mpq_class abs(const mpq_class& x) { return ::abs(x); }
    static int sign(const mpq_class& x) { return sgn(x); }
};

template <> struct Field<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    static constexpr double tol = 1e-9;
    static bool is_zero(double x) { return std::fabs(x) <= tol; }
    static double from_ratio(long n, long d = 1) { return double(n) / double(d); }
    static double from_mpq(const mpq_class& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
    static bool better_pivot(double cand, double cur) { return std::fabs(cand) > std::fabs(cur); }
    static std::string str(double x) {
        if (is_zero(x)) return "0";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return buf;
    }
    static double abs(double x) { return std::fabs(x); }
    static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
};

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return Field<double>::is_zero(x); }
template <class K> K kq(long n, long d = 1) { return Field<K>::from_ratio(n, d); }

// "p/q", "p", "-3/4" or a decimal like "0.25" (decimals are read exactly)
inline mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty scalar");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar '" + s + "'");
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad scalar '" + s + "'");
    mpz_class num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
        throw std::invalid_argument("bad scalar '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

template <class K> K parse_scalar(const std::string& s) { return Field<K>::from_mpq(parse_rational(s)); }

} // namespace skewtor
