#pragma once

// Covering-group descriptor for GL_r: the Weyl-invariant quadratic and
// bilinear forms parametrized by (p, q), the bisector D, the lattices
// Y_{Q,n} and Y^sc_{Q,n}, fundamental-pair classification, and unramified
// characters on sublattices of the cocharacter lattice.

#include "covgl/lattice.hpp"
#include "covgl/ring.hpp"
#include "covgl/rootdata.hpp"

#include <optional>

namespace covgl {

struct CoveringDescriptor {
    int r;          // rank
    int n;          // covering degree >= 1
    Int p, q;       // B_Q(e_i, e_i) = 2p, B_Q(e_i, e_j) = q (i != j)
    Int q_coroot;   // Q(alpha^vee) = 2p - q, shared by all coroots
    int n_alpha;    // n / gcd(n, Q(alpha^vee))
    LatticeBasis yqn;     // Y_{Q,n}
    LatticeBasis yqn_sc;  // Y^sc_{Q,n}, spanned by n_alpha * alpha^vee

    CoveringDescriptor(int r, int n, Int p, Int q);

    // Q(y) = p * sum y_i^2 + q * sum_{i<j} y_i y_j.
    Int q_value(const Coweight& y) const;

    // B_Q(y, z).
    Int bilinear(const Coweight& y, const Coweight& z) const;

    // Bisector D: D(e_i, e_j) = 0 (i<j), Q(e_i) (i=j), B_Q(e_i, e_j) (i>j).
    Int bisector(const Coweight& y1, const Coweight& y2) const;

    // Whether n | p * n_alpha (splits n_alpha*Y multiplicatively).
    bool splitting_hypothesis() const;

    // The section cocycle (pi, pi)_n^{D(y1, y2)} entering s_{y1} * s_{y2}
    // = cocycle * s_{y1+y2}. The symbol (pi, pi)_n is 1 under the standing
    // hypothesis that the 2n-th roots of unity lie in the base field; the
    // exponent is still computed so the bookkeeping stays auditable.
    RingElement section_cocycle(const Coweight& y1, const Coweight& y2) const;

    // delta_B^{1/2}(s_y) as the monomial u^{-sum y_i (r+1-2i)}.
    RingElement half_delta(const Coweight& y) const;
};

// Y_{Q,n} = {y : Q(alpha^vee) y_j + q * (sum y_i) in nZ for all j},
// computed as the kernel lattice of the congruence matrix mod n.
LatticeBasis build_yqn(int r, int n, const Int& p, const Int& q);

// Sublattice spanned by n_alpha * (e_i - e_{i+1}).
LatticeBasis build_yqn_sc(int r, int n, const Int& p, const Int& q);

// R = n_alpha when the covering fits into a fundamental pair
// (n_alpha > r and n | q * n_alpha), absent otherwise. When present, the
// defining lattice equality at rank R is asserted.
std::optional<int> fits_fundamental_pair(int r, int n, const Int& p, const Int& q);

// Multiplicative character on a sublattice, one value per HNF basis row.
// Values must be invertible (monomials, or nonzero scalars for sampled
// characters). The `conjugated` flag only records bookkeeping intent.
template <class S>
struct CharOnLattice {
    LatticeBasis domain;
    std::vector<S> values;
    bool conjugated = false;

    CharOnLattice(LatticeBasis dom, std::vector<S> vals, bool conj = false)
        : domain(std::move(dom)), values(std::move(vals)), conjugated(conj) {
        if (static_cast<int>(values.size()) != domain.num_rows())
            throw std::invalid_argument("one value per basis row required");
    }

    S eval(const Coweight& y) const {
        auto coords = domain.coordinates(y);
        if (!coords) throw std::invalid_argument("not in character domain");
        S out = power(values.empty() ? S() : values[0], 0); // one
        for (size_t i = 0; i < values.size(); ++i)
            out = out * power(values[i], (*coords)[i]);
        return out;
    }

    bool defined_at(const Coweight& y) const { return domain.contains(y); }

private:
    static S power(const S& base, const Int& k);
};

template <>
inline RingElement CharOnLattice<RingElement>::power(const RingElement& base, const Int& k) {
    if (k == 0) return RingElement::one();
    return base.pow(k);
}

template <>
inline Rational CharOnLattice<Rational>::power(const Rational& base, const Int& k) {
    Rational acc = 1;
    Rational b = base;
    Int e = k;
    if (e < 0) {
        if (b == 0) throw std::invalid_argument("bad sample, resample");
        b = Rational(1) / b;
        e = -e;
    }
    while (e > 0) {
        if (e % 2 == 1) acc *= b;
        e /= 2;
        if (e > 0) b *= b;
    }
    return acc;
}

using UnramifiedCharacter = CharOnLattice<RingElement>;
using SampledCharacter = CharOnLattice<Rational>;

// Exceptional character on n_alpha * Z^r: value u^{-(r+1-2i)} * v on
// n_alpha * e_i, where v is a fresh invertible variable (q^{-nu}).
// Requires n | p * n_alpha.
UnramifiedCharacter exceptional_character(const CoveringDescriptor& d,
                                          const std::string& nu_var, bool conjugated);

// chi(s_{n_alpha alpha^vee}) for the coroot alpha^vee = e_i - e_j.
template <class S>
S char_coroot_value(const CoveringDescriptor& d, const CharOnLattice<S>& chi, int i, int j) {
    Coweight y(d.r, Int(0));
    y[i - 1] = d.n_alpha;
    y[j - 1] = -Int(d.n_alpha);
    return chi.eval(y);
}

// Whether chi(s_{n_alpha alpha^vee}) = u^{-2} for every simple alpha.
bool is_exceptional(const CoveringDescriptor& d, const UnramifiedCharacter& chi);

// (^w chi)(s_y) = chi(s_{w^{-1}(y)}); the domain must be W-stable.
template <class S>
CharOnLattice<S> char_weyl_twist(const CharOnLattice<S>& chi, const WeylElement& w) {
    auto winv = w.inverse();
    for (const auto& row : chi.domain.rows())
        if (!chi.domain.contains(act(w, row)) || !chi.domain.contains(act(winv, row)))
            throw std::invalid_argument("character domain is not Weyl-stable");
    std::vector<S> vals;
    for (const auto& row : chi.domain.rows()) vals.push_back(chi.eval(act(winv, row)));
    return CharOnLattice<S>(chi.domain, std::move(vals), chi.conjugated);
}

} // namespace covgl
