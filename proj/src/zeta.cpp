#include "covgl/zeta.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace covgl {

namespace {

int env_threads() {
    const char* val = std::getenv("CBH_THREADS");
    if (!val) return 1;
    int t = std::atoi(val);
    return t < 1 ? 1 : t;
}

// Runs fn(i) for i in [0, count); results land in caller-owned slots, so
// the output order never depends on scheduling.
void parallel_for(int count, const std::function<void(int)>& fn) {
    int width = std::min(env_threads(), count);
    if (width <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < width; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

// All dominant y of the given rank with y_r >= 0 and sum <= bound.
std::vector<Coweight> dominant_cone(int rank, int bound) {
    std::vector<Coweight> out;
    Coweight cur(rank, Int(0));
    // Entries are weakly decreasing and nonnegative, so position pos can use
    // at most min(previous entry, remaining budget).
    std::function<void(int, long)> walk = [&](int pos, long remaining) {
        if (pos == rank) {
            out.push_back(cur);
            return;
        }
        long prev = pos == 0 ? remaining : to_long(cur[pos - 1]);
        for (long v = std::min(remaining, prev); v >= 0; --v) {
            cur[pos] = v;
            walk(pos + 1, remaining - v);
        }
        cur[pos] = 0;
    };
    walk(0, bound);
    // Deterministic order: sort by (sum, lexicographic).
    std::sort(out.begin(), out.end(), [](const Coweight& a, const Coweight& b) {
        Int sa = cw_sum(a), sb = cw_sum(b);
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

} // namespace

FundamentalPairInstance::FundamentalPairInstance(int r, int n, const Int& p, const Int& q)
    : small(r, n, p, q), big(1, 1, 0, 0) {
    auto res = fits_fundamental_pair(r, n, p, q);
    if (!res) throw std::invalid_argument("descriptor does not fit a fundamental pair");
    big = CoveringDescriptor(*res, n, p, q);
    if (big.yqn != scaled_standard_lattice(big.r, big.n_alpha))
        throw std::logic_error("big lattice is not the scaled standard one");
    if (!small.splitting_hypothesis())
        throw std::invalid_argument("splitting hypothesis violated");
}

bool support_membership(const FundamentalPairInstance& inst, const WeylElement& w_big,
                        const Coweight& y) {
    int r = inst.small.r;
    int R = inst.R();
    if (static_cast<int>(y.size()) != r) throw std::invalid_argument("dimension mismatch");
    bool coordinate_form = y[r - 1] >= 0;
    for (int i = 1; i < r; ++i)
        if (simple_pairing(y, i) < 0) coordinate_form = false;
    bool pairing_form = true;
    Coweight embedded = embed_coweight(y, R);
    for (int i = 1; i < R; ++i)
        if (simple_pairing(embedded, i) < 0) pairing_form = false;
    if (coordinate_form != pairing_form)
        throw std::logic_error("dominance conditions disagree");
    if (!coordinate_form) return false;
    Coweight zero_big(R, Int(0));
    Coweight target = twisted_act(hat(w_big), zero_big);
    Coweight diff = cw_sub(hat_coweight(embedded), target);
    return inst.big.yqn.contains(diff);
}

Coweight y_w(const FundamentalPairInstance& inst, const WeylElement& w) {
    int r = inst.small.r;
    if (w.rank() != r) throw std::invalid_argument("expected an element of the small Weyl group");
    Coweight zero(r, Int(0));
    Coweight out = cw_neg(twisted_act(w, zero));
    for (int k : descent_set(w))
        for (int i = 0; i < k; ++i) out[i] += inst.n_alpha();
    if (!support_membership(inst, embed_weyl(w, inst.R()), out))
        throw std::logic_error("minimal support element fails membership");
    for (int i = 0; i < r; ++i) {
        Coweight dec = out;
        dec[i] -= inst.n_alpha();
        if (support_membership(inst, embed_weyl(w, inst.R()), dec))
            throw std::logic_error("support element is not minimal");
    }
    return out;
}

RingElement TauExponent::monomial(const FundamentalPairInstance& inst) const {
    return RingElement::u_pow(-const2) * RingElement::variable(inst.small_var, nu_mult) *
           RingElement::variable(inst.big_var, nu_mult);
}

TauExponent tau(const FundamentalPairInstance& inst, const WeylElement& w) {
    if (w.rank() != inst.small.r)
        throw std::invalid_argument("expected an element of the small Weyl group");
    int R = inst.R(), r = inst.small.r;
    TauExponent out{0, 2 * length(w), 0};
    for (int k : descent_set(w)) {
        out.s_coeff += k;
        out.nu_mult += k;
        out.const2 += Int(k) * (2 * k - (R + r));
    }
    return out;
}

std::vector<int> cycle_factorization(const WeylElement& w) {
    int r = w.rank();
    std::vector<int> exps(r >= 2 ? r - 1 : 0, 0);
    std::function<bool(int, WeylElement)> walk = [&](int j, WeylElement acc) {
        if (j > r) return acc == w;
        auto cur = acc;
        for (int e = 0; e <= j - 1; ++e) {
            exps[j - 2] = e;
            if (walk(j + 1, cur)) return true;
            cur = cur * cycle(j, r);
        }
        return false;
    };
    if (r >= 2) {
        if (!walk(2, WeylElement::identity(r)))
            throw std::logic_error("cycle factorization not found");
    } else if (!w.is_identity()) {
        throw std::logic_error("cycle factorization not found");
    }
    return exps;
}

TruncatedSeries zeta_theta_series(const FundamentalPairInstance& inst, int order) {
    const auto& small = inst.small;
    const auto& big = inst.big;
    auto mu = exceptional_character(small, inst.small_var, false);
    auto chibar = exceptional_character(big, inst.big_var, true);
    Coweight zero_small(small.r, Int(0));
    Coweight zero_big(big.r, Int(0));
    CoefficientFunction big_c(big, zero_big, chibar);
    CoefficientFunction small_c(small, zero_small, mu);

    TruncatedSeries z(order);
    for (const auto& y : dominant_cone(small.r, order)) {
        RingElement big_val = big_c.eval(hat_coweight(embed_coweight(y, big.r)));
        if (big_val.is_zero()) continue;
        RingElement small_val = small_c.eval(hat_coweight(y));
        z.add_term(static_cast<int>(to_long(cw_sum(y))), big_val * small_val);
    }
    return z;
}

TruncatedSeries l_series(const FundamentalPairInstance& inst, int order) {
    int R = inst.R(), r = inst.small.r;
    auto ab = RingElement::variable(inst.small_var) * RingElement::variable(inst.big_var);
    TruncatedSeries out = TruncatedSeries::constant(RingElement::one(), order);
    for (int i = 1; i <= r; ++i)
        out = out * geometric(ab * RingElement::u_pow((R - 1) - (r + 1) + 2 * i),
                              inst.n_alpha(), order);
    return out;
}

TruncatedSeries l_series_tampered(const FundamentalPairInstance& inst, int order) {
    int R = inst.R(), r = inst.small.r;
    auto ab = RingElement::variable(inst.small_var) * RingElement::variable(inst.big_var);
    TruncatedSeries out = TruncatedSeries::constant(RingElement::one(), order);
    for (int i = 1; i <= r; ++i) {
        int shift = i == 1 ? 2 : 0; // one exponent off by one
        out = out * geometric(ab * RingElement::u_pow((R - 1) - (r + 1) + 2 * i + shift),
                              inst.n_alpha(), order);
    }
    return out;
}

VerificationReport verify_theta(const FundamentalPairInstance& inst, int order) {
    VerificationReport rep;
    std::ostringstream name;
    name << "verify-theta r=" << inst.small.r << " R=" << inst.R() << " n=" << inst.small.n
         << " p=" << inst.small.p << " q=" << inst.small.q << " trunc=" << order;
    rep.name = name.str();

    auto zeta = zeta_theta_series(inst, order);
    auto lhs_ok = zeta.coeffs[0] == RingElement::one();
    rep.add("zeta-normalization", lhs_ok, "coefficient of T^0 is " + zeta.coeffs[0].str());

    auto lser = l_series(inst, order);
    auto mismatch = zeta.first_mismatch(lser);
    if (mismatch) {
        std::ostringstream detail;
        detail << "first mismatch at T^" << *mismatch << ": zeta has "
               << zeta.coeffs[*mismatch].str() << ", L-side has " << lser.coeffs[*mismatch].str();
        rep.add("theta-zeta-factorization", false, detail.str());
    } else {
        std::ostringstream detail;
        detail << "all coefficients equal through T^" << order;
        rep.add("theta-zeta-factorization", true, detail.str());
    }
    return rep;
}

TruncatedSeries sum_w_tau_series(const FundamentalPairInstance& inst, int order) {
    TruncatedSeries out(order);
    for (const auto& w : all_weyl_elements(inst.small.r)) {
        auto te = tau(inst, w);
        out.add_term(static_cast<int>(to_long(te.t_exponent(inst.n_alpha()))),
                     te.monomial(inst));
    }
    return out;
}

TruncatedSeries sum_w_tau_closed_form(const FundamentalPairInstance& inst, int order) {
    TruncatedSeries out = TruncatedSeries::constant(RingElement::one(), order);
    for (int j = 2; j <= inst.small.r; ++j) {
        auto te = tau(inst, cycle(j, inst.small.r));
        auto z = te.monomial(inst);
        int step = static_cast<int>(to_long(te.t_exponent(inst.n_alpha())));
        TruncatedSeries factor(order);
        for (int m = 0; m < j; ++m)
            factor.add_term(m * step, z.pow(m));
        out = out * factor;
    }
    return out;
}

TruncatedSeries dagger_sum_direct(const FundamentalPairInstance& inst, int order) {
    const auto& small = inst.small;
    const auto& big = inst.big;
    auto mu = exceptional_character(small, inst.small_var, false);
    auto chibar = exceptional_character(big, inst.big_var, true);
    TruncatedSeries out(order);
    int na = inst.n_alpha();
    for (const auto& k : dominant_cone(small.r, order / na)) {
        Coweight y_dag = cw_scale(na, k);
        int t_exp = static_cast<int>(to_long(cw_sum(y_dag)));
        if (t_exp > order) continue;
        auto big_part = chibar.eval(hat_coweight(embed_coweight(y_dag, big.r)));
        auto small_part = mu.eval(hat_coweight(y_dag));
        out.add_term(t_exp, big_part * small_part);
    }
    return out;
}

TruncatedSeries dagger_sum_closed_form(const FundamentalPairInstance& inst, int order) {
    TruncatedSeries out = TruncatedSeries::constant(RingElement::one(), order);
    int na = inst.n_alpha();
    int R = inst.R(), r = inst.small.r;
    auto ab = RingElement::variable(inst.small_var) * RingElement::variable(inst.big_var);
    for (int j = 1; j <= r; ++j) {
        auto z = ab * RingElement::u_pow(R + r - 2 * j);
        out = out * geometric(z.pow(j), j * na, order);
    }
    return out;
}

namespace {

Rational draw_rational(std::mt19937_64& rng, long bound = 1000) {
    std::uniform_int_distribution<long> mag(1, bound);
    std::uniform_int_distribution<int> sign(0, 1);
    Rational out(mag(rng), mag(rng));
    return sign(rng) ? out : -out;
}

struct Rank2Sample {
    Specialization sp;
    SampledCharacter mu;
    Rational b_value;
};

Rank2Sample draw_rank2_sample(const FundamentalPairInstance& inst, std::mt19937_64& rng) {
    int n = inst.small.n;
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rational t = draw_rational(rng);
        if (t < 0) t = -t;
        if (t == 1 || t == 0) continue;
        Rational qv = t * t;
        std::map<int, Rational> gauss;
        for (int c = 1; 2 * c < n; ++c) gauss[c] = draw_rational(rng);
        if (n % 2 == 0) {
            std::uniform_int_distribution<int> sign(0, 1);
            gauss[n / 2] = (sign(rng) ? Rational(1) : Rational(-1)) / t;
        }
        Rational bv = draw_rational(rng);
        std::vector<Rational> mu_values;
        for (int i = 0; i < inst.small.yqn.num_rows(); ++i)
            mu_values.push_back(draw_rational(rng));
        try {
            Specialization sp(n, qv, t, {{inst.big_var, bv}}, gauss);
            SampledCharacter mu(inst.small.yqn, mu_values, false);
            // The Weyl sum needs mu_alpha != 1 to avoid the simple-root pole.
            if (char_coroot_value(inst.small, mu, 1, 2) == 1) continue;
            return Rank2Sample{std::move(sp), std::move(mu), bv};
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    throw std::runtime_error("could not draw a pole-free sample");
}

} // namespace

VerificationReport verify_rank2(const FundamentalPairInstance& inst, Rank2Gamma gamma,
                                const Rank2Options& opts) {
    if (inst.small.r != 2) throw std::invalid_argument("rank-2 verification needs r = 2");
    if (opts.samples < 1) throw std::invalid_argument("need at least one sample");
    if (opts.order < 1) throw std::invalid_argument("need a positive truncation order");
    int order = opts.order;
    VerificationReport rep;
    {
        std::ostringstream name;
        name << "verify-rank2 gamma=" << (gamma == Rank2Gamma::Zero ? "0" : "w1[0]")
             << " n=" << inst.small.n << " p=" << inst.small.p << " q=" << inst.small.q
             << " trunc=" << order << " samples=" << opts.samples << " seed=" << opts.seed;
        rep.name = name.str();
    }

    Coweight gamma_cw(2, Int(0));
    if (gamma == Rank2Gamma::W1Zero)
        gamma_cw = twisted_act(WeylElement::simple_reflection(1, 2), gamma_cw);

    // Sample-independent data: the conjugated big coefficient function and
    // the enumeration of candidate lattice points.
    auto chibar = exceptional_character(inst.big, inst.big_var, true);
    Coweight zero_big(inst.big.r, Int(0));
    CoefficientFunction big_c(inst.big, zero_big, chibar);
    auto ys = dominant_cone(2, order);

    std::vector<std::string> failures(opts.samples);
    std::vector<bool> ok(opts.samples, false);
    parallel_for(opts.samples, [&](int idx) {
        std::mt19937_64 rng(opts.seed + 0x9e3779b97f4a7c15ULL * (idx + 1));
        for (int attempt = 0; attempt < 50; ++attempt) {
            try {
                auto sample = draw_rank2_sample(inst, rng);
                SampledOps ops{inst.small.n, &sample.sp};
                PsWhittakerEvaluator<Rational, SampledOps> eval(inst.small, sample.mu, ops);

                auto frac_value = [&](const Frac<Rational>& f) {
                    if (f.den == 0) throw std::invalid_argument("bad sample, resample");
                    return f.num / f.den;
                };
                Coweight zero2(2, Int(0));
                Rational w_at_one = frac_value(eval.evaluate(gamma_cw, zero2));

                RationalSeries lhs(order);
                for (const auto& y : ys) {
                    RingElement big_val =
                        big_c.eval(hat_coweight(embed_coweight(y, inst.big.r)));
                    if (big_val.is_zero()) continue;
                    Rational bv = sample.sp.eval(big_val);
                    Rational wv = frac_value(eval.evaluate(gamma_cw, y));
                    lhs.add_term(static_cast<int>(to_long(cw_sum(y))), bv * wv);
                }

                RationalSeries rhs =
                    RationalSeries::constant(w_at_one, order);
                Rational u_pow_R1 = sample.sp.eval(RingElement::u_pow(inst.big.r - 1));
                for (int i = 1; i <= 2; ++i) {
                    Coweight nae(2, Int(0));
                    nae[i - 1] = inst.n_alpha();
                    Rational m_ei = sample.mu.eval(nae);
                    rhs = rhs * geometric_rational(m_ei * u_pow_R1 * sample.b_value,
                                                   inst.n_alpha(), order);
                }

                auto mism = lhs.first_mismatch(rhs);
                if (mism) {
                    std::ostringstream msg;
                    msg << "sample " << idx << " disagrees at T^" << *mism;
                    failures[idx] = msg.str();
                } else {
                    // Cross-check the Whittaker normalization at 1.
                    if (gamma == Rank2Gamma::Zero && w_at_one != 1) {
                        failures[idx] = "W(1) != 1 on the spherical branch";
                    } else if (gamma == Rank2Gamma::W1Zero &&
                               w_at_one !=
                                   sample.sp.eval(gauss_symbol(inst.small.n,
                                                               -inst.small.q_coroot))) {
                        failures[idx] = "W(1) != g(-Q(coroot)) on the shifted branch";
                    } else {
                        ok[idx] = true;
                    }
                }
                return;
            } catch (const std::invalid_argument&) {
                continue; // pole at this sample; redraw
            }
        }
        failures[idx] = "no pole-free sample found";
    });

    int agreed = 0;
    std::string first_failure;
    for (int i = 0; i < opts.samples; ++i) {
        if (ok[i]) ++agreed;
        else if (first_failure.empty()) first_failure = failures[i];
    }
    std::ostringstream detail;
    detail << agreed << "/" << opts.samples << " exact sample agreements";
    if (!first_failure.empty()) detail << "; " << first_failure;
    rep.add("rank2-zeta-factorization", agreed == opts.samples, detail.str());
    return rep;
}

CounterexampleResult counterexample_series(int order) {
    CoveringDescriptor small(1, 3, -1, -1);
    CoveringDescriptor big(2, 3, -1, -1);
    CounterexampleResult res{TruncatedSeries(order), TruncatedSeries(order),
                             TruncatedSeries(order), TruncatedSeries(order),
                             TruncatedSeries(order), {}};
    res.report.name = "counterexample r=1 R=2 n=3 p=-1 q=-1";

    // Conjugated character on the full big lattice {k1 = k2 mod 3}, basis
    // {(1,1),(0,3)}: values u^{-2} x^2 and u^{-2} x^3 satisfy the
    // exceptionality constraint chi(s_{3 alpha^vee}) = u^{-2}.
    auto xvar = RingElement::variable("x");
    UnramifiedCharacter chibar(big.yqn,
                               {RingElement::u_pow(-2) * xvar.pow(2),
                                RingElement::u_pow(-2) * xvar.pow(3)},
                               true);
    {
        Coweight coroot = {Int(3), Int(-3)};
        bool exc = chibar.eval(coroot) == RingElement::u_pow(-2);
        res.report.add("counterexample-chi-exceptional", exc,
                       "chi(s_{3 coroot}) = " + chibar.eval(coroot).str());
    }
    Coweight zero_big(2, Int(0));
    CoefficientFunction big_c(big, zero_big, chibar);

    // The unramified GL_1 data: mu(s_{3 e_1}) = m, and the functional's
    // three free values l0, l1, l2 on the cosets of 3Z.
    auto m = RingElement::variable("m");
    std::vector<RingElement> lambda = {RingElement::variable("l0"),
                                       RingElement::variable("l1"),
                                       RingElement::variable("l2")};

    for (int k = 0; k <= order; ++k) {
        Coweight y = {Int(k)};
        RingElement big_val = big_c.eval(hat_coweight(embed_coweight(y, 2)));
        if (big_val.is_zero()) continue;
        RingElement w_small = m.pow(k / 3) * lambda[k % 3];
        RingElement term = big_val * w_small;
        res.zeta.add_term(k, term);
        if (k % 3 == 0) res.id_branch.add_term(k, term);
        else res.w_branch.add_term(k, term);
    }

    // Factorized candidate: 1/(1 - chibar_{e2} m T^3) * l0, the closed form
    // of the branch through the identity.
    Coweight three_e2 = {Int(0), Int(3)};
    auto chibar_e2 = chibar.eval(three_e2);
    res.factorized = geometric(chibar_e2 * m, 3, order).scalar_mul(lambda[0]);
    res.residual = res.zeta - res.factorized;

    res.report.add("counterexample-id-branch-closed-form",
                   res.id_branch == res.factorized,
                   "identity-branch sum matches the geometric closed form times l0");

    bool exponents_ok = true;
    for (int k = 0; k <= order; ++k) {
        if (res.w_branch.coeffs[k].is_zero()) continue;
        if (k % 3 != 1) exponents_ok = false;
    }
    res.report.add("counterexample-w-branch-exponents", exponents_ok,
                   "reflected branch supported on T-exponents 3k-2");

    // Residual at T^1: q^{-s-1} * g(Q(coroot))^{-1} (post-conjugation)
    // * chibar(s_{-e1+2e2}) * (the coset-1 lambda value).
    Coweight shift = {Int(-1), Int(2)};
    RingElement expected = RingElement::u_pow(-2) *
                           gauss_symbol(3, small.q_coroot).inverse() * chibar.eval(shift) *
                           lambda[1];
    bool residual_ok = !res.residual.coeffs[1].is_zero() &&
                       res.residual.coeffs[1] == expected;
    res.report.add("counterexample-residual-term", residual_ok,
                   "residual coefficient of T^1 is " + res.residual.coeffs[1].str());

    auto mism = res.zeta.first_mismatch(res.factorized);
    res.report.add("counterexample-not-factorizable", mism && *mism == 1,
                   mism ? "zeta differs from the factorized form first at T^" +
                              std::to_string(*mism)
                        : "zeta unexpectedly equals the factorized form");
    return res;
}

} // namespace covgl
