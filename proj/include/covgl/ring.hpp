#pragma once

// Exact coefficient algebra: Laurent monomials over Q in u (= q^{1/2}) and
// named invertible variables, together with formal Gauss symbols g(c),
// c in (Z/n) \ {0}, modulo the pairing relation g(c)*g(n-c) = u^{-2}.
// Plus truncated power series in T (= q^{-s}) and exact specialization
// to rational sample points.

#include "covgl/ints.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace covgl {

struct Monomial {
    Int u_exp;                    // exponent of u = q^{1/2}
    std::map<std::string, Int> vars; // named invertible variables, nonzero exponents
    std::map<int, Int> gauss;     // residue c in [1, n-1] -> positive exponent, reduced

    bool operator<(const Monomial& o) const;
    bool operator==(const Monomial& o) const;
};

class RingElement {
public:
    RingElement() = default; // zero
    static RingElement zero() { return RingElement(); }
    static RingElement one();
    static RingElement scalar(const Rational& c);
    static RingElement u_pow(const Int& k);
    static RingElement variable(const std::string& name, const Int& exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    int modulus() const { return modulus_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Monomial inverse; g(c)^{-1} = u^2 g(n-c). Errors on non-monomials.
    RingElement inverse() const;

    // Integer power; negative powers require a monomial.
    RingElement pow(const Int& k) const;

    // Coefficients fixed, u fixed, g(c) -> g(n-c), variables mapped through
    // `pairing` (an involution; every occurring variable must be declared).
    RingElement conjugate(const std::map<std::string, std::string>& pairing) const;

    // |u| = u, |g(c)| = u^{-1}, multiplicative; defined for single terms
    // with coefficient +-1 and no named variables.
    RingElement modulus_value() const;

    // Deterministic canonical rendering (sorted monomials).
    std::string str() const;

    static RingElement gauss_monomial(int n, int residue, const Int& exp);

private:
    void insert_term(Monomial m, Rational c, int mod);
    static void reduce_gauss(Monomial& m, Int& du, int n);

    std::map<Monomial, Rational> terms_;
    int modulus_ = 0; // n of the Gauss-symbol family; 0 when no symbol occurs
};

// g_{psi^{-1}}(k) as a ring element: the scalar -u^{-2} when n | k,
// otherwise the formal symbol g(k mod n).
RingElement gauss_symbol(int n, const Int& k);

RingElement operator*(const Rational& c, const RingElement& x);

template <class S>
struct SeriesT {
    int order = 0;                 // truncation order N
    std::vector<S> coeffs;         // indexed by T-exponent 0..N

    SeriesT() = default;
    explicit SeriesT(int n) : order(n), coeffs(n + 1) {}

    static SeriesT constant(const S& c, int n) {
        SeriesT s(n);
        s.coeffs[0] = c;
        return s;
    }

    SeriesT operator+(const SeriesT& o) const {
        check(o);
        SeriesT out(order);
        for (int i = 0; i <= order; ++i) out.coeffs[i] = coeffs[i] + o.coeffs[i];
        return out;
    }
    SeriesT operator-(const SeriesT& o) const {
        check(o);
        SeriesT out(order);
        for (int i = 0; i <= order; ++i) out.coeffs[i] = coeffs[i] - o.coeffs[i];
        return out;
    }
    SeriesT operator*(const SeriesT& o) const {
        check(o);
        SeriesT out(order);
        for (int i = 0; i <= order; ++i)
            for (int j = 0; i + j <= order; ++j)
                out.coeffs[i + j] = out.coeffs[i + j] + coeffs[i] * o.coeffs[j];
        return out;
    }
    SeriesT scalar_mul(const S& c) const {
        SeriesT out(order);
        for (int i = 0; i <= order; ++i) out.coeffs[i] = c * coeffs[i];
        return out;
    }
    bool operator==(const SeriesT& o) const { return order == o.order && coeffs == o.coeffs; }

    // Smallest exponent where the two series differ.
    std::optional<int> first_mismatch(const SeriesT& o) const {
        check(o);
        for (int i = 0; i <= order; ++i)
            if (!(coeffs[i] == o.coeffs[i])) return i;
        return std::nullopt;
    }

    void add_term(int exp, const S& c) {
        if (exp <= order) coeffs[exp] = coeffs[exp] + c;
    }

private:
    void check(const SeriesT& o) const {
        if (order != o.order) throw std::invalid_argument("series order mismatch");
    }
};

using TruncatedSeries = SeriesT<RingElement>;
using RationalSeries = SeriesT<Rational>;

// sum_{k >= 0, k*step <= N} z^k T^{k*step}; the expansion of (1 - z T^step)^{-1}.
template <class S>
SeriesT<S> geometric(const S& z, int step, int order, const S& one_value) {
    if (step < 1) throw std::invalid_argument("geometric step must be >= 1");
    SeriesT<S> out(order);
    S cur = one_value;
    for (int e = 0; e <= order; e += step) {
        out.coeffs[e] = cur;
        cur = cur * z;
    }
    return out;
}

TruncatedSeries geometric(const RingElement& z, int step, int order);
RationalSeries geometric_rational(const Rational& z, int step, int order);

// Exact rational sample point: u^2 specializes to q_value (with an optional
// square root for odd u-exponents), named variables and a transversal of the
// Gauss pairing get nonzero rationals, partner values are forced as
// g(n-c) = 1/(q_value * g(c)).
class Specialization {
public:
    Specialization(int n, Rational q_value, std::optional<Rational> u_value,
                   std::map<std::string, Rational> var_values,
                   std::map<int, Rational> gauss_transversal);

    Rational eval(const RingElement& x) const;
    RationalSeries eval(const TruncatedSeries& s) const;

    const Rational& q() const { return q_value_; }
    const std::optional<Rational>& u() const { return u_value_; }

private:
    int n_;
    Rational q_value_;
    std::optional<Rational> u_value_;
    std::map<std::string, Rational> vars_;
    std::map<int, Rational> gauss_;
};

// Numerator/denominator pair; no reduction is attempted (comparisons
// cross-multiply, which only needs exact ring arithmetic).
template <class S>
struct Frac {
    S num;
    S den;

    Frac() = default;
    Frac(S n, S d) : num(std::move(n)), den(std::move(d)) {}

    Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
    Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
    Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
    Frac operator*(const S& c) const { return Frac(num * c, den); }

    bool same_value(const Frac& o) const { return num * o.den == o.num * den; }
};

} // namespace covgl
