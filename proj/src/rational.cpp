#include "whitney/rational.hpp"

#include <cmath>
#include <ostream>

#include "whitney/error.hpp"

namespace whitney {

Rational::Rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text, bool strict) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_integer_literal(den)))
        throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
    if (num[0] == '+') num.remove_prefix(1);
    mpz_class n(std::string(num), 10);
    mpz_class d(1);
    if (slash != std::string_view::npos) {
        if (den[0] == '+' || den[0] == '-')
            throw Error(ErrorKind::InvalidArgument, "signed denominator in '" + std::string(text) + "'");
        d = mpz_class(std::string(den), 10);
        if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    }
    Rational r(mpq_class(n, d));
    if (strict && r.str() != text)
        throw Error(ErrorKind::InvalidArgument,
                    "rational '" + std::string(text) + "' is not in lowest terms (expected '" + r.str() + "')");
    return r;
}

Rational Rational::from_double(double value, long denominator_cap) {
    if (!std::isfinite(value)) throw Error(ErrorKind::InvalidArgument, "cannot rationalize a non-finite value");
    if (denominator_cap < 1) throw Error(ErrorKind::InvalidArgument, "denominator cap must be positive");
    // Work on the exact binary value so the expansion itself is exact.
    mpq_class x(value);
    mpz_class cap(denominator_cap);
    // Convergents p_k/q_k.
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpq_class rest = x;
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        mpz_class p2 = a * p1 + p0;
        mpz_class q2 = a * q1 + q0;
        if (q2 > cap) {
            // Best semiconvergent within the cap, if it beats the last convergent.
            mpz_class t = (cap - q0) / q1;
            mpq_class semi(mpz_class(t * p1 + p0), mpz_class(t * q1 + q0));
            semi.canonicalize();
            mpq_class conv(p1, q1);
            conv.canonicalize();
            mpq_class ds = abs(semi - x), dc = abs(conv - x);
            return Rational(ds < dc ? semi : conv);
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        mpq_class frac = rest - mpq_class(a);
        if (sgn(frac) == 0) break;
        rest = 1 / frac;
    }
    return Rational(mpq_class(p1, q1));
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

mpz_class binomial(long n, long r) {
    if (r < 0 || n < 0 || r > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

mpz_class factorial(long n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "factorial of a negative number");
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

}  // namespace whitney
