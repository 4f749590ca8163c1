#include "covgl/covering.hpp"

namespace covgl {

CoveringDescriptor::CoveringDescriptor(int r_, int n_, Int p_, Int q_)
    : r(r_), n(n_), p(std::move(p_)), q(std::move(q_)), q_coroot(2 * p - q),
      n_alpha(1),
      yqn(build_yqn(r_, n_, p, q)),
      yqn_sc(build_yqn_sc(r_, n_, p, q)) {
    if (n < 1) throw std::invalid_argument("covering degree must be >= 1");
    if (r < 1) throw std::invalid_argument("rank must be >= 1");
    Int g = gcd_int(Int(n), q_coroot);
    n_alpha = static_cast<int>(Int(n) / g);
    // n_alpha * Q(alpha^vee) is divisible by n by construction.
    if (floor_mod(q_coroot * n_alpha, n) != 0)
        throw std::logic_error("n_alpha invariant violated");
    for (const auto& row : yqn_sc.rows())
        if (!yqn.contains(row))
            throw std::logic_error("Y^sc_{Q,n} is not contained in Y_{Q,n}");
}

Int CoveringDescriptor::q_value(const Coweight& y) const {
    if (static_cast<int>(y.size()) != r) throw std::invalid_argument("dimension mismatch");
    Int s = 0;
    for (int i = 0; i < r; ++i) s += y[i] * y[i];
    Int cross = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) cross += y[i] * y[j];
    return p * s + q * cross;
}

Int CoveringDescriptor::bilinear(const Coweight& y, const Coweight& z) const {
    return q_value(cw_add(y, z)) - q_value(y) - q_value(z);
}

Int CoveringDescriptor::bisector(const Coweight& y1, const Coweight& y2) const {
    if (static_cast<int>(y1.size()) != r || static_cast<int>(y2.size()) != r)
        throw std::invalid_argument("dimension mismatch");
    Int out = 0;
    for (int i = 0; i < r; ++i) out += p * y1[i] * y2[i];
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j) out += q * y1[i] * y2[j];
    return out;
}

bool CoveringDescriptor::splitting_hypothesis() const {
    return floor_mod(p * n_alpha, n) == 0;
}

RingElement CoveringDescriptor::section_cocycle(const Coweight& y1, const Coweight& y2) const {
    bisector(y1, y2); // the exponent; any value is admissible when the symbol is 1
    return RingElement::one();
}

RingElement CoveringDescriptor::half_delta(const Coweight& y) const {
    Int e = 0;
    for (int i = 1; i <= r; ++i) e += y[i - 1] * (r + 1 - 2 * i);
    return RingElement::u_pow(-e);
}

LatticeBasis build_yqn(int r, int n, const Int& p, const Int& q) {
    if (n < 1) throw std::invalid_argument("covering degree must be >= 1");
    // Kernel of y -> (Q(alpha^vee) y_j + q * sum_i y_i)_j over Z/n:
    // stack the congruence matrix with n * identity and project.
    Int qc = 2 * p - q;
    std::vector<std::vector<Int>> m(r, std::vector<Int>(2 * r, Int(0)));
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < r; ++i) m[j][i] = q + (i == j ? qc : Int(0));
        m[j][r + j] = n;
    }
    // Solutions (y, z) of M y + n z = 0; the y-part is the lattice.
    LatticeBasis ker = kernel_lattice(m, 2 * r);
    std::vector<Coweight> projected;
    for (const auto& row : ker.rows())
        projected.emplace_back(row.begin(), row.begin() + r);
    return hnf_basis(projected, r);
}

LatticeBasis build_yqn_sc(int r, int n, const Int& p, const Int& q) {
    if (n < 1) throw std::invalid_argument("covering degree must be >= 1");
    Int qc = 2 * p - q;
    Int g = gcd_int(Int(n), qc);
    Int na = Int(n) / g;
    std::vector<Coweight> gens;
    for (int i = 0; i + 1 < r; ++i) {
        Coweight v(r, Int(0));
        v[i] = na;
        v[i + 1] = -na;
        gens.push_back(v);
    }
    return hnf_basis(gens, r);
}

std::optional<int> fits_fundamental_pair(int r, int n, const Int& p, const Int& q) {
    Int qc = 2 * p - q;
    Int g = gcd_int(Int(n), qc);
    int na = static_cast<int>(Int(n) / g);
    if (na <= r) return std::nullopt;
    if (floor_mod(q * na, n) != 0) return std::nullopt;
    // The defining property of the big member: Y_{Q,n} at rank n_alpha is
    // exactly n_alpha * Z^{n_alpha}.
    if (build_yqn(na, n, p, q) != scaled_standard_lattice(na, na))
        throw std::logic_error("fundamental-pair lattice identity failed");
    return na;
}

UnramifiedCharacter exceptional_character(const CoveringDescriptor& d,
                                          const std::string& nu_var, bool conjugated) {
    if (!d.splitting_hypothesis())
        throw std::invalid_argument("splitting hypothesis violated");
    LatticeBasis dom = scaled_standard_lattice(d.r, d.n_alpha);
    std::vector<RingElement> vals;
    for (int i = 1; i <= d.r; ++i)
        vals.push_back(RingElement::u_pow(-(d.r + 1 - 2 * i)) * RingElement::variable(nu_var));
    return UnramifiedCharacter(std::move(dom), std::move(vals), conjugated);
}

bool is_exceptional(const CoveringDescriptor& d, const UnramifiedCharacter& chi) {
    for (int i = 1; i < d.r; ++i) {
        if (!(char_coroot_value(d, chi, i, i + 1) == RingElement::u_pow(-2))) return false;
    }
    return true;
}

} // namespace covgl
