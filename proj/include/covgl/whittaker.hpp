#pragma once

// Orbit combinatorics and Whittaker data: free-orbit enumeration and the
// dimension count, t-values, coefficient functions supported on a twisted
// Weyl orbit, local coefficient matrices for simple reflections and reduced
// words, and principal-series Whittaker values.
//
// The matrix machinery is templated on the scalar so the same formulas run
// both in the formal Gauss-sum ring and at exact rational sample points.

#include "covgl/covering.hpp"

#include <map>
#include <vector>

namespace covgl {

struct OrbitClass {
    Coweight representative; // canonical: lex-smallest quotient representative
    int size;                // orbit size inside Y / Y_{Q,n}
    bool free;               // size == r!
};

// Partition of Y / Y_{Q,n} into orbits of the descended twisted Weyl action.
std::vector<OrbitClass> orbit_classes(const CoveringDescriptor& d);

// Number of free classes; when Y_{Q,n} = n_alpha * Y the binomial closed
// form binom(n_alpha, r) is asserted.
int dim_whittaker_theta(const CoveringDescriptor& d);

// t(w_alpha, y) = q^{k-1} * g((⟨y,alpha⟩-1) Q(alpha^vee))^{-1},
// k = ceil(⟨y,alpha⟩ / n_alpha).
RingElement t_value(const CoveringDescriptor& d, int alpha, const Coweight& y);

// t(w, y) along a reduced word (rightmost letter acts first).
RingElement t_word(const CoveringDescriptor& d, const std::vector<int>& word,
                   const Coweight& y);

// The function c supported on the twisted orbit of `base`: value t(w, base)
// at s_{w[base]}, extended by the character off the orbit points. When the
// character is flagged conjugated the stored t-values are conjugated too,
// so the object evaluates the conjugate coefficient function.
class CoefficientFunction {
public:
    CoefficientFunction(const CoveringDescriptor& d, const Coweight& base,
                        UnramifiedCharacter chi);

    // Value at s_z; zero off the support.
    RingElement eval(const Coweight& z) const;

    const UnramifiedCharacter& character() const { return chi_; }
    const Coweight& base() const { return base_; }
    const QuotientStructure& quotient_structure() const { return quot_; }

    // Orbit point and stored value for the coset of z, if supported there.
    std::optional<std::pair<Coweight, RingElement>> support_at(const Coweight& z) const;

private:
    CoveringDescriptor d_;
    QuotientStructure quot_;
    UnramifiedCharacter chi_;
    Coweight base_;
    std::map<int, std::pair<Coweight, RingElement>> support_;
};

CoefficientFunction coefficient_function(const CoveringDescriptor& d,
                                         const OrbitClass& orbit,
                                         const UnramifiedCharacter& chi);

// Normalized theta Whittaker value: 0 unless y_1 >= ... >= y_r, otherwise
// delta_B^{1/2}(s_y) * c(s_{w0(y)})  (the value of W_c(s_y) / W_c(1)).
RingElement whittaker_theta_value(const CoveringDescriptor& d,
                                  const CoefficientFunction& c, const Coweight& y);

// Scalar contexts for the matrix machinery.
struct FormalOps {
    using Scalar = RingElement;
    int n;
    RingElement one() const { return RingElement::one(); }
    RingElement q_pow(const Int& k) const { return RingElement::u_pow(2 * k); }
    RingElement gauss(const Int& arg) const { return gauss_symbol(n, arg); }
    RingElement inv(const RingElement& x) const { return x.inverse(); }
    bool is_zero(const RingElement& x) const { return x.is_zero(); }
};

struct SampledOps {
    using Scalar = Rational;
    int n;
    const Specialization* sp;
    Rational one() const { return 1; }
    Rational q_pow(const Int& k) const { return sp->eval(RingElement::u_pow(2 * k)); }
    Rational gauss(const Int& arg) const { return sp->eval(gauss_symbol(n, arg)); }
    Rational inv(const Rational& x) const {
        if (x == 0) throw std::invalid_argument("bad sample, resample");
        return Rational(1) / x;
    }
    bool is_zero(const Rational& x) const { return x == 0; }
};

template <class S>
struct SlcmMatrixT {
    int size = 0;
    std::vector<std::vector<Frac<S>>> entries; // [row gamma][col gamma']

    static SlcmMatrixT identity(int size, const S& one, const S& zero) {
        SlcmMatrixT m;
        m.size = size;
        m.entries.assign(size, std::vector<Frac<S>>(size, Frac<S>(zero, one)));
        for (int i = 0; i < size; ++i) m.entries[i][i] = Frac<S>(one, one);
        return m;
    }
};

using SlcmMatrix = SlcmMatrixT<RingElement>;

// Gindikin-Karpelevich coefficient for w: product over the positive roots
// alpha with w(alpha) < 0 of (1 - q^{-1} chi_alpha) / (1 - chi_alpha).
template <class S, class Ops>
Frac<S> cgk(const CoveringDescriptor& d, const CharOnLattice<S>& chi,
            const WeylElement& w, const Ops& ops) {
    Frac<S> out(ops.one(), ops.one());
    for (int i = 1; i <= d.r; ++i) {
        for (int j = i + 1; j <= d.r; ++j) {
            if (w.apply(i) <= w.apply(j)) continue;
            S chi_a = char_coroot_value(d, chi, i, j);
            S den = ops.one() - chi_a;
            if (ops.is_zero(den)) throw std::invalid_argument("pole");
            out = out * Frac<S>(ops.one() - ops.q_pow(-1) * chi_a, den);
        }
    }
    return out;
}

template <class S, class Ops>
S power_of(const S& base, const Int& k, const Ops& ops) {
    if (k == 0) return ops.one();
    S b = base;
    Int e = k;
    if (e < 0) {
        b = ops.inv(b);
        e = -e;
    }
    S acc = ops.one();
    while (e > 0) {
        if (e % 2 == 1) acc = acc * b;
        e /= 2;
        if (e > 0) b = b * b;
    }
    return acc;
}

// Local coefficient matrix of a simple reflection for the character chi,
// over the canonical transversal of Y / Y_{Q,n}. Row index is the source
// functional gamma, column the target gamma'. Each column carries the
// tau^1 cell at gamma = gamma' and the tau^2 cell at gamma = w_alpha[gamma'],
// with equivariance shifts through the character.
template <class S, class Ops>
SlcmMatrixT<S> slcm_simple(const CoveringDescriptor& d, const QuotientStructure& quot,
                           const CharOnLattice<S>& chi, int alpha, const Ops& ops) {
    const auto& reps = quot.representatives();
    int size = static_cast<int>(reps.size());
    S zero = ops.one() - ops.one();
    SlcmMatrixT<S> m;
    m.size = size;
    m.entries.assign(size, std::vector<Frac<S>>(size, Frac<S>(zero, ops.one())));

    S chi_alpha = char_coroot_value(d, chi, alpha, alpha + 1);
    S den = ops.one() - chi_alpha;
    if (ops.is_zero(den)) throw std::invalid_argument("pole");
    auto w_alpha = WeylElement::simple_reflection(alpha, d.r);

    for (int col = 0; col < size; ++col) {
        const Coweight& b = reps[col];
        Int k = ceil_div(simple_pairing(b, alpha), d.n_alpha);
        S tau1_num = (ops.one() - ops.q_pow(-1)) * power_of(chi_alpha, k, ops);
        m.entries[col][col] = m.entries[col][col] + Frac<S>(tau1_num, den);

        Coweight wab = twisted_act(w_alpha, b);
        int row = quot.rep_index(wab);
        Coweight shift = cw_sub(wab, quot.reduce(wab));
        // gamma-side equivariance through ^{w_alpha} of the matrix character,
        // which is the untwisted source character chi composed with w_alpha.
        S coeff = chi.eval(act(w_alpha, shift));
        S tau2 = coeff * ops.gauss((simple_pairing(b, alpha) - 1) * d.q_coroot);
        m.entries[row][col] = m.entries[row][col] + Frac<S>(tau2, ops.one());
    }
    return m;
}

template <class S>
SlcmMatrixT<S> slcm_mul(const SlcmMatrixT<S>& a, const SlcmMatrixT<S>& b, const S& zero,
                        const S& one) {
    SlcmMatrixT<S> out;
    out.size = a.size;
    out.entries.assign(a.size, std::vector<Frac<S>>(a.size, Frac<S>(zero, one)));
    for (int i = 0; i < a.size; ++i)
        for (int k = 0; k < a.size; ++k) {
            if (a.entries[i][k].num == zero) continue;
            for (int j = 0; j < a.size; ++j) {
                if (b.entries[k][j].num == zero) continue;
                out.entries[i][j] = out.entries[i][j] + a.entries[i][k] * b.entries[k][j];
            }
        }
    return out;
}

// Matrix of tau(w, ^{w^{-1}}chi, gamma, gamma') for w given by a reduced
// word (leftmost letter peeled first); composes simple-step matrices with
// the twisted characters threaded through the cocycle relation.
template <class S, class Ops>
SlcmMatrixT<S> slcm_word(const CoveringDescriptor& d, const QuotientStructure& quot,
                         const CharOnLattice<S>& chi, const std::vector<int>& word,
                         const Ops& ops) {
    S zero = ops.one() - ops.one();
    if (word.empty())
        return SlcmMatrixT<S>::identity(static_cast<int>(quot.representatives().size()),
                                        ops.one(), zero);
    auto w_first = WeylElement::simple_reflection(word[0], d.r);
    auto twisted = char_weyl_twist(chi, w_first);
    auto head = slcm_simple(d, quot, twisted, word[0], ops);
    std::vector<int> rest(word.begin() + 1, word.end());
    auto tail = slcm_word(d, quot, twisted, rest, ops);
    return slcm_mul(head, tail, zero, ops.one());
}

// Principal-series Whittaker values via the full Weyl sum
//   W_gamma(s_y) / delta^{1/2}(s_y)
//     = sum_w cgk(w0 w^{-1}, chi) tau(w, ^{w^{-1}}chi, gamma, s_{w0(y)}).
// Matrices and cgk factors are precomputed per Weyl element.
template <class S, class Ops>
class PsWhittakerEvaluator {
public:
    PsWhittakerEvaluator(const CoveringDescriptor& d, const CharOnLattice<S>& chi,
                         const Ops& ops)
        : d_(d), quot_(quotient(d.r, d.yqn)), chi_(chi), ops_(ops) {
        auto w0 = WeylElement::longest(d.r);
        for (const auto& w : all_weyl_elements(d.r)) {
            PerW data{w,
                      slcm_word(d_, quot_, chi_, a_reduced_word(w), ops_),
                      cgk(d_, chi_, w0 * w.inverse(), ops_),
                      char_weyl_twist(chi_, w.inverse())};
            per_w_.push_back(std::move(data));
        }
    }

    // gamma_y indexes the functional. The Weyl sum is evaluated as stated;
    // it equals the Whittaker value divided by delta^{1/2} for dominant y.
    Frac<S> evaluate(const Coweight& gamma_y, const Coweight& y) const {
        auto w0 = WeylElement::longest(d_.r);
        int row = quot_.rep_index(gamma_y);
        S row_fac = ops_.inv(chi_.eval(cw_sub(gamma_y, quot_.reduce(gamma_y))));
        Coweight col_y = act(w0, y);
        int col = quot_.rep_index(col_y);
        Coweight col_shift = cw_sub(col_y, quot_.reduce(col_y));
        S zero = ops_.one() - ops_.one();
        Frac<S> total(zero, ops_.one());
        for (const auto& data : per_w_) {
            S col_fac = data.target_chi.eval(col_shift);
            total = total + data.cgk_factor * data.matrix.entries[row][col] * row_fac * col_fac;
        }
        return total;
    }

    const QuotientStructure& quotient_structure() const { return quot_; }

private:
    struct PerW {
        WeylElement w;
        SlcmMatrixT<S> matrix;
        Frac<S> cgk_factor;
        CharOnLattice<S> target_chi; // ^{w^{-1}} chi, for column shifts
    };
    CoveringDescriptor d_;
    QuotientStructure quot_;
    CharOnLattice<S> chi_;
    Ops ops_;
    std::vector<PerW> per_w_;
};

// One-off principal-series value in the formal ring.
Frac<RingElement> whittaker_ps_value(const CoveringDescriptor& d,
                                     const UnramifiedCharacter& chi,
                                     const Coweight& gamma_y, const Coweight& y);

} // namespace covgl
