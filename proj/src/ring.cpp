#include "covgl/ring.hpp"

#include <sstream>

namespace covgl {

bool Monomial::operator<(const Monomial& o) const {
    if (u_exp != o.u_exp) return u_exp < o.u_exp;
    if (vars != o.vars) return vars < o.vars;
    return gauss < o.gauss;
}

bool Monomial::operator==(const Monomial& o) const {
    return u_exp == o.u_exp && vars == o.vars && gauss == o.gauss;
}

RingElement RingElement::one() { return scalar(Rational(1)); }

RingElement RingElement::scalar(const Rational& c) {
    RingElement x;
    if (c != 0) x.terms_[Monomial{0, {}, {}}] = c;
    return x;
}

RingElement RingElement::u_pow(const Int& k) {
    RingElement x;
    x.terms_[Monomial{k, {}, {}}] = 1;
    return x;
}

RingElement RingElement::variable(const std::string& name, const Int& exp) {
    RingElement x;
    Monomial m{0, {}, {}};
    if (exp != 0) m.vars[name] = exp;
    x.terms_[m] = 1;
    return x;
}

RingElement RingElement::gauss_monomial(int n, int residue, const Int& exp) {
    if (n < 1) throw std::invalid_argument("modulus must be >= 1");
    RingElement x;
    Monomial m{0, {}, {}};
    Int du = 0;
    if (exp != 0) {
        m.gauss[residue] = exp;
        reduce_gauss(m, du, n);
        m.u_exp += du;
        x.modulus_ = n;
    }
    x.terms_[m] = 1;
    return x;
}

// Reduce Gauss exponents so that for each pair {c, n-c} at most one member
// keeps a positive exponent; every cancelled pair contributes u^{-2}.
void RingElement::reduce_gauss(Monomial& m, Int& du, int n) {
    std::map<int, Int> reduced;
    for (auto& [c, e] : m.gauss) {
        if (e == 0) continue;
        if (e < 0) throw std::logic_error("negative gauss exponent");
        reduced[c] += e;
    }
    std::map<int, Int> out;
    for (auto it = reduced.begin(); it != reduced.end(); ++it) {
        int c = it->first;
        Int e = it->second;
        if (e == 0) continue;
        int partner = n - c;
        if (partner == c) {
            Int pairs = e / 2;
            du -= 2 * pairs;
            if (e % 2 != 0) out[c] = 1;
        } else if (partner > c) {
            auto jt = reduced.find(partner);
            Int f = (jt == reduced.end()) ? Int(0) : jt->second;
            Int matched = e < f ? e : f;
            du -= 2 * matched;
            if (e - matched > 0) out[c] = e - matched;
            if (jt != reduced.end()) jt->second = f - matched;
        } else {
            if (e > 0) out[c] = e;
        }
    }
    m.gauss = std::move(out);
}

void RingElement::insert_term(Monomial m, Rational c, int mod) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(std::move(m), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    if (mod != 0) {
        if (modulus_ != 0 && modulus_ != mod)
            throw std::invalid_argument("mixed Gauss-symbol moduli");
        modulus_ = mod;
    }
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement out = *this;
    if (o.modulus_ != 0) {
        if (out.modulus_ != 0 && out.modulus_ != o.modulus_)
            throw std::invalid_argument("mixed Gauss-symbol moduli");
        out.modulus_ = o.modulus_;
    }
    for (const auto& [m, c] : o.terms_) out.insert_term(m, c, 0);
    bool has_gauss = false;
    for (const auto& [m, c] : out.terms_)
        if (!m.gauss.empty()) has_gauss = true;
    if (!has_gauss) out.modulus_ = 0;
    return out;
}

RingElement RingElement::operator-() const {
    RingElement out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
    int mod = modulus_;
    if (o.modulus_ != 0) {
        if (mod != 0 && mod != o.modulus_)
            throw std::invalid_argument("mixed Gauss-symbol moduli");
        mod = o.modulus_;
    }
    RingElement out;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m;
            m.u_exp = m1.u_exp + m2.u_exp;
            m.vars = m1.vars;
            for (const auto& [v, e] : m2.vars) {
                auto it = m.vars.find(v);
                if (it == m.vars.end()) m.vars[v] = e;
                else {
                    it->second += e;
                    if (it->second == 0) m.vars.erase(it);
                }
            }
            m.gauss = m1.gauss;
            for (const auto& [g, e] : m2.gauss) m.gauss[g] += e;
            Int du = 0;
            if (!m.gauss.empty()) reduce_gauss(m, du, mod);
            m.u_exp += du;
            out.insert_term(std::move(m), c1 * c2, 0);
        }
    }
    bool has_gauss = false;
    for (const auto& [m, c] : out.terms_)
        if (!m.gauss.empty()) has_gauss = true;
    out.modulus_ = has_gauss ? mod : 0;
    return out;
}

bool RingElement::operator==(const RingElement& o) const { return terms_ == o.terms_; }

RingElement RingElement::inverse() const {
    if (terms_.size() != 1) throw std::invalid_argument("non-invertible element");
    const auto& [m, c] = *terms_.begin();
    RingElement out;
    Monomial inv;
    inv.u_exp = -m.u_exp;
    for (const auto& [v, e] : m.vars) inv.vars[v] = -e;
    for (const auto& [g, e] : m.gauss) {
        // g(c)^{-1} = u^2 * g(n-c)
        inv.gauss[modulus_ - g] += e;
        inv.u_exp += 2 * e;
    }
    out.terms_[inv] = Rational(1) / c;
    out.modulus_ = inv.gauss.empty() ? 0 : modulus_;
    return out;
}

RingElement RingElement::pow(const Int& k) const {
    if (k == 0) return one();
    RingElement base = *this;
    Int e = k;
    if (e < 0) {
        base = inverse();
        e = -e;
    }
    RingElement acc = one();
    RingElement sq = base;
    while (e > 0) {
        if (e % 2 == 1) acc = acc * sq;
        e /= 2;
        if (e > 0) sq = sq * sq;
    }
    return acc;
}

RingElement RingElement::conjugate(const std::map<std::string, std::string>& pairing) const {
    RingElement out;
    out.modulus_ = modulus_;
    for (const auto& [m, c] : terms_) {
        Monomial cm;
        cm.u_exp = m.u_exp;
        for (const auto& [v, e] : m.vars) {
            auto it = pairing.find(v);
            if (it == pairing.end())
                throw std::invalid_argument("undeclared conjugation partner for variable " + v);
            cm.vars[it->second] += e;
        }
        for (auto it = cm.vars.begin(); it != cm.vars.end();) {
            if (it->second == 0) it = cm.vars.erase(it);
            else ++it;
        }
        for (const auto& [g, e] : m.gauss) cm.gauss[modulus_ - g] += e;
        out.insert_term(std::move(cm), c, 0);
    }
    return out;
}

RingElement RingElement::modulus_value() const {
    if (terms_.size() != 1) throw std::invalid_argument("modulus of a non-monomial");
    const auto& [m, c] = *terms_.begin();
    if (!m.vars.empty()) throw std::invalid_argument("modulus undefined with named variables");
    if (c != 1 && c != -1) throw std::invalid_argument("modulus undefined for this coefficient");
    Int e = m.u_exp;
    for (const auto& [g, k] : m.gauss) e -= k;
    return u_pow(e);
}

RingElement gauss_symbol(int n, const Int& k) {
    if (n < 1) throw std::invalid_argument("modulus must be >= 1");
    Int r = floor_mod(k, n);
    if (r == 0) return Rational(-1) * RingElement::u_pow(-2);
    return RingElement::gauss_monomial(n, static_cast<int>(r), 1);
}

RingElement operator*(const Rational& c, const RingElement& x) {
    return RingElement::scalar(c) * x;
}

std::string RingElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        std::vector<std::string> factors;
        if (m.u_exp != 0) {
            std::ostringstream f;
            f << "u";
            if (m.u_exp != 1) f << "^" << m.u_exp;
            factors.push_back(f.str());
        }
        for (const auto& [v, e] : m.vars) {
            std::ostringstream f;
            f << v;
            if (e != 1) f << "^" << e;
            factors.push_back(f.str());
        }
        for (const auto& [g, e] : m.gauss) {
            std::ostringstream f;
            f << "g(" << g << ")";
            if (e != 1) f << "^" << e;
            factors.push_back(f.str());
        }
        if (factors.empty()) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) os << "*";
                os << factors[i];
            }
        }
        first = false;
    }
    return os.str();
}

TruncatedSeries geometric(const RingElement& z, int step, int order) {
    return geometric<RingElement>(z, step, order, RingElement::one());
}

RationalSeries geometric_rational(const Rational& z, int step, int order) {
    return geometric<Rational>(z, step, order, Rational(1));
}

namespace {

Rational rational_pow(const Rational& base, const Int& k) {
    if (k == 0) return 1;
    if (base == 0) throw std::invalid_argument("bad sample, resample");
    Rational b = base;
    Int e = k;
    if (e < 0) {
        b = Rational(1) / b;
        e = -e;
    }
    Rational acc = 1;
    Rational sq = b;
    while (e > 0) {
        if (e % 2 == 1) acc *= sq;
        e /= 2;
        if (e > 0) sq *= sq;
    }
    return acc;
}

} // namespace

Specialization::Specialization(int n, Rational q_value, std::optional<Rational> u_value,
                               std::map<std::string, Rational> var_values,
                               std::map<int, Rational> gauss_transversal)
    : n_(n), q_value_(std::move(q_value)), u_value_(std::move(u_value)),
      vars_(std::move(var_values)) {
    if (q_value_ == 0) throw std::invalid_argument("q must be nonzero");
    if (u_value_ && (*u_value_) * (*u_value_) != q_value_)
        throw std::invalid_argument("u_value^2 must equal q_value");
    for (const auto& [v, val] : vars_)
        if (val == 0) throw std::invalid_argument("bad sample, resample");
    for (const auto& [c, val] : gauss_transversal) {
        if (c < 1 || c >= n_) throw std::invalid_argument("gauss residue out of range");
        if (val == 0) throw std::invalid_argument("bad sample, resample");
        int partner = n_ - c;
        if (partner == c) {
            if (val * val * q_value_ != 1)
                throw std::invalid_argument("self-paired gauss value must square to 1/q");
            gauss_[c] = val;
        } else {
            gauss_[c] = val;
            gauss_[partner] = Rational(1) / (q_value_ * val); // forced partner
        }
    }
}

Rational Specialization::eval(const RingElement& x) const {
    if (x.modulus() != 0 && x.modulus() != n_)
        throw std::invalid_argument("uncovered symbol: modulus mismatch");
    Rational total = 0;
    for (const auto& [m, c] : x.terms()) {
        Rational t = c;
        Int ue = m.u_exp;
        if (floor_mod(ue, 2) == 0) {
            t *= rational_pow(q_value_, ue / 2);
        } else {
            if (!u_value_) throw std::invalid_argument("needs square sample");
            t *= rational_pow(*u_value_, ue);
        }
        for (const auto& [v, e] : m.vars) {
            auto it = vars_.find(v);
            if (it == vars_.end()) throw std::invalid_argument("uncovered symbol: " + v);
            t *= rational_pow(it->second, e);
        }
        for (const auto& [g, e] : m.gauss) {
            auto it = gauss_.find(g);
            if (it == gauss_.end())
                throw std::invalid_argument("uncovered symbol: g(" + std::to_string(g) + ")");
            t *= rational_pow(it->second, e);
        }
        total += t;
    }
    return total;
}

RationalSeries Specialization::eval(const TruncatedSeries& s) const {
    RationalSeries out(s.order);
    for (int i = 0; i <= s.order; ++i) out.coeffs[i] = eval(s.coeffs[i]);
    return out;
}

} // namespace covgl
