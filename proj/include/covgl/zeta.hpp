#pragma once

// Rankin-Selberg truncated zeta series for a fundamental pair, the tau
// exponent calculus, L-series expansion, and the verifiers: the theta-theta
// factorization, the rank-2 case at exact rational sample points, and the
// rank-(1,2) non-example with its residual term.

#include "covgl/report.hpp"
#include "covgl/whittaker.hpp"

#include <cstdint>

namespace covgl {

// A pair of coverings with shared (n, p, q), big rank R = n_alpha of the
// small one, big lattice equal to n_alpha * Z^R, and n | p * n_alpha.
// Coweights embed by zero padding. Variable names fix the exceptional
// characters: `a` = q^{-nu_r} on the small group, `b` = q^{-nu_R-bar} on
// the big group (carried by the conjugated character).
struct FundamentalPairInstance {
    CoveringDescriptor small;
    CoveringDescriptor big;
    std::string small_var = "a";
    std::string big_var = "b";

    FundamentalPairInstance(int r, int n, const Int& p, const Int& q);

    int n_alpha() const { return small.n_alpha; }
    int R() const { return big.r; }
};

// Membership of a rank-r coweight in the support set attached to w in W_R:
// y_1 >= ... >= y_r >= 0 and hat(phi(y)) - hat(w)[0] in Y_{R,Q,n}.
bool support_membership(const FundamentalPairInstance& inst, const WeylElement& w_big,
                        const Coweight& y);

// The minimal support element for w in W_r: -w[0] + sum_{k in I_w}
// n_alpha (e_1 + ... + e_k).
Coweight y_w(const FundamentalPairInstance& inst, const WeylElement& w);

// Affine exponent data of tau(w) = l(w) + sum_{k in I_w} k (n_alpha s
// - (R+r)/2 + nu_r + nu_R-bar + k). Rendered, q^{-tau(w)} is the monomial
// T^{n_alpha * s_coeff} u^{-const2} a^{nu_mult} b^{nu_mult}.
struct TauExponent {
    Int s_coeff;  // coefficient of n_alpha * s
    Int const2;   // doubled constant term 2 l(w) + sum k (2k - (R+r))
    Int nu_mult;  // multiplicity of nu_r, equal to that of nu_R-bar

    Int t_exponent(int n_alpha) const { return s_coeff * n_alpha; }
    RingElement monomial(const FundamentalPairInstance& inst) const;
};

TauExponent tau(const FundamentalPairInstance& inst, const WeylElement& w);

// Exponents (i_2, ..., i_r) of the unique factorization
// w = sigma_2^{i_2} ... sigma_r^{i_r}, 0 <= i_j <= j-1.
std::vector<int> cycle_factorization(const WeylElement& w);

// Direct truncated sum of the normalized theta-theta zeta series:
// sum over dominant y with y_r >= 0 of
//   conj(c^R(s_{hat phi(y)})) * c^r(s_{hat y}) * T^{sum y}.
TruncatedSeries zeta_theta_series(const FundamentalPairInstance& inst, int order);

// prod_{i=1}^r geometric(a b u^{(R-1)-(r+1)+2i}, n_alpha, order).
TruncatedSeries l_series(const FundamentalPairInstance& inst, int order);

// L-series with one shift exponent off by one (mutation control).
TruncatedSeries l_series_tampered(const FundamentalPairInstance& inst, int order);

// Exact coefficient-by-coefficient comparison of the two sides.
VerificationReport verify_theta(const FundamentalPairInstance& inst, int order);

// Closed forms used as cross-checks: sum_w q^{-tau(w)} as a polynomial and
// the product form prod_{j=2}^r (1 + x_j + ... + x_j^{j-1}).
TruncatedSeries sum_w_tau_series(const FundamentalPairInstance& inst, int order);
TruncatedSeries sum_w_tau_closed_form(const FundamentalPairInstance& inst, int order);

// Dagger sum over dominant nonnegative multiples of n_alpha and its
// product closed form prod_{j=1}^r zeta(j tau(sigma_j)).
TruncatedSeries dagger_sum_direct(const FundamentalPairInstance& inst, int order);
TruncatedSeries dagger_sum_closed_form(const FundamentalPairInstance& inst, int order);

// Rank-2 verification at exact rational sample points.
enum class Rank2Gamma { Zero, W1Zero };

struct Rank2Options {
    int order;           // truncation
    int samples = 20;
    std::uint64_t seed = 1;
};

VerificationReport verify_rank2(const FundamentalPairInstance& inst, Rank2Gamma gamma,
                                const Rank2Options& opts);

// The (r, R) = (1, 2), n = 3, p = q = -1 pair: the zeta series, the
// factorized candidate L * W(1) * W-bar(1), and the nonzero residual.
struct CounterexampleResult {
    TruncatedSeries zeta;
    TruncatedSeries factorized;
    TruncatedSeries residual;
    TruncatedSeries id_branch;
    TruncatedSeries w_branch;
    VerificationReport report;
};

CounterexampleResult counterexample_series(int order);

} // namespace covgl
