#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covgl/covering.hpp"

#include <random>

using namespace covgl;

namespace {

Coweight cw(std::initializer_list<long> xs) {
    Coweight out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

// Congruence-based membership in Y_{Q,n}, independent of the lattice code:
// Q(alpha^vee) y_j + q * (sum y_i) = 0 mod n for all j.
bool yqn_member_oracle(int n, const Int& p, const Int& q, const Coweight& y) {
    Int qc = 2 * p - q;
    Int s = cw_sum(y);
    for (const auto& yj : y)
        if (floor_mod(qc * yj + q * s, n) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("quadratic form and bisector") {
    CoveringDescriptor d(3, 4, 2, -1);
    SUBCASE("Q on basis vectors and coroots") {
        CHECK(d.q_value(cw({1, 0, 0})) == d.p);
        CHECK(d.q_value(cw({1, -1, 0})) == d.q_coroot);
        CHECK(d.q_value(cw({0, 0, 0})) == 0);
        CHECK(d.q_coroot == 2 * d.p - d.q);
    }
    SUBCASE("bisector table") {
        CHECK(d.bisector(cw({1, 0, 0}), cw({0, 1, 0})) == 0);
        CHECK(d.bisector(cw({0, 1, 0}), cw({1, 0, 0})) == d.q);
        CHECK(d.bisector(cw({1, 0, 0}), cw({1, 0, 0})) == d.p);
    }
    SUBCASE("D(y+z, y+z) - D(y,y) - D(z,z) = B_Q(y,z) on random inputs") {
        std::mt19937 rng(3);
        std::uniform_int_distribution<long> u(-5, 5);
        for (int t = 0; t < 100; ++t) {
            Coweight y = {u(rng), u(rng), u(rng)};
            Coweight z = {u(rng), u(rng), u(rng)};
            auto sum = cw_add(y, z);
            CHECK(d.bisector(sum, sum) - d.bisector(y, y) - d.bisector(z, z) ==
                  d.bilinear(y, z));
        }
    }
    SUBCASE("bisector bilinearity") {
        std::mt19937 rng(4);
        std::uniform_int_distribution<long> u(-5, 5);
        for (int t = 0; t < 100; ++t) {
            Coweight y = {u(rng), u(rng), u(rng)};
            Coweight y2 = {u(rng), u(rng), u(rng)};
            Coweight z = {u(rng), u(rng), u(rng)};
            CHECK(d.bisector(cw_add(y, y2), z) == d.bisector(y, z) + d.bisector(y2, z));
            CHECK(d.bisector(y, cw_add(y2, z)) == d.bisector(y, y2) + d.bisector(y, z));
        }
    }
}

TEST_CASE("Y_{Q,n} lattices") {
    SUBCASE("Savin (p,q)=(-1,0), n=5, r=2 gives 5 Z^2") {
        CHECK(build_yqn(2, 5, -1, 0) == scaled_standard_lattice(2, 5));
    }
    SUBCASE("KP (p,q)=(-1,-1), n=3, r=2 gives {k1 = k2 mod 3}") {
        auto basis = build_yqn(2, 3, -1, -1);
        CHECK(basis == hnf_basis({cw({1, 1}), cw({0, 3})}));
    }
    SUBCASE("n=1 gives the full lattice") {
        CHECK(build_yqn(3, 1, 7, -2) == scaled_standard_lattice(3, 1));
    }
    SUBCASE("agrees with the congruence oracle on a box") {
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (int n : {1, 2, 3, 4, 6}) {
                    auto basis = build_yqn(2, n, p, q);
                    for (long a = -6; a <= 6; ++a)
                        for (long b = -6; b <= 6; ++b)
                            CHECK(basis.contains(cw({a, b})) ==
                                  yqn_member_oracle(n, p, q, cw({a, b})));
                }
    }
    SUBCASE("KP closed form: k_i all congruent mod n and n | (qr-1)k_i") {
        for (long p : {-1L, 0L, 1L}) {
            long q = 2 * p + 1; // Q(alpha^vee) = -1
            for (int n : {2, 3, 4}) {
                int r = 3;
                auto basis = build_yqn(r, n, p, q);
                std::vector<Coweight> members;
                for (long a = -4; a <= 4; ++a)
                    for (long b = -4; b <= 4; ++b)
                        for (long c = -4; c <= 4; ++c) {
                            Coweight y = cw({a, b, c});
                            bool closed_form = floor_mod(Int(a - b), n) == 0 &&
                                               floor_mod(Int(b - c), n) == 0;
                            for (long k : {a, b, c})
                                if (floor_mod(Int((q * r - 1) * k), n) != 0) closed_form = false;
                            CHECK(basis.contains(y) == closed_form);
                        }
            }
        }
    }
}

TEST_CASE("Y^sc_{Q,n}") {
    SUBCASE("single coroot at n_alpha = 3") {
        CoveringDescriptor d(2, 3, 0, 1);
        CHECK(d.n_alpha == 3);
        CHECK(d.yqn_sc == hnf_basis({cw({3, -3})}));
    }
    SUBCASE("rank 1 has the zero lattice") {
        CHECK(build_yqn_sc(1, 5, -1, 0).num_rows() == 0);
    }
    SUBCASE("contained in Y_{Q,n} over a parameter box") {
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (int n : {1, 2, 3, 5})
                    for (int r : {1, 2, 3}) {
                        CoveringDescriptor d(r, n, p, q);
                        for (const auto& row : d.yqn_sc.rows())
                            CHECK(d.yqn.contains(row));
                    }
    }
    SUBCASE("Y^sc_{Q,n} equals Y_{Q,n} intersected with the sum-zero lattice") {
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (int n : {2, 3, 4}) {
                    CoveringDescriptor d(3, n, p, q);
                    for (long a = -4; a <= 4; ++a)
                        for (long b = -4; b <= 4; ++b) {
                            Coweight y = cw({a, b, -a - b});
                            CHECK(d.yqn_sc.contains(y) == d.yqn.contains(y));
                        }
                }
    }
    SUBCASE("W-stability of Y_{Q,n}") {
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (int n : {2, 3, 4})
                    for (int r = 2; r <= 4; ++r) {
                        CoveringDescriptor d(r, n, p, q);
                        for (const auto& w : all_weyl_elements(r))
                            for (const auto& row : d.yqn.rows())
                                CHECK(d.yqn.contains(act(w, row)));
                    }
    }
}

TEST_CASE("fundamental pair classification") {
    SUBCASE("KP (0,1), n=3, r=2 fits with R=3") {
        auto res = fits_fundamental_pair(2, 3, 0, 1);
        REQUIRE(res.has_value());
        CHECK(*res == 3);
    }
    SUBCASE("Savin (-1,0), n=5, r=2 fits with R=5") {
        auto res = fits_fundamental_pair(2, 5, -1, 0);
        REQUIRE(res.has_value());
        CHECK(*res == 5);
    }
    SUBCASE("twistor coverings never fit") {
        for (int n : {1, 2, 3, 4, 5})
            for (int r : {1, 2, 3}) {
                CHECK_FALSE(fits_fundamental_pair(r, n, 1, 2).has_value());
            }
    }
    SUBCASE("agreement with the direct lattice test over a small box") {
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (int n = 1; n <= 5; ++n)
                    for (int r = 1; r <= 3; ++r) {
                        Int qc = 2 * p - q;
                        int na = static_cast<int>(Int(n) / gcd_int(Int(n), qc));
                        bool direct = na > r &&
                                      build_yqn(na, n, p, q) == scaled_standard_lattice(na, na);
                        CHECK(fits_fundamental_pair(r, n, p, q).has_value() == direct);
                    }
    }
    SUBCASE("when it fits, n | q * n_alpha and the inclusion chain holds") {
        for (long p = -2; p <= 2; ++p)
            for (long q = -2; q <= 2; ++q)
                for (int n = 1; n <= 6; ++n)
                    for (int r = 1; r <= 3; ++r) {
                        auto res = fits_fundamental_pair(r, n, p, q);
                        if (!res) continue;
                        CoveringDescriptor d(r, n, p, q);
                        CHECK(floor_mod(Int(q) * d.n_alpha, n) == 0);
                        auto mid = scaled_standard_lattice(r, d.n_alpha);
                        for (const auto& row : d.yqn_sc.rows()) CHECK(mid.contains(row));
                        for (const auto& row : mid.rows()) CHECK(d.yqn.contains(row));
                    }
    }
}

TEST_CASE("characters") {
    CoveringDescriptor d(2, 5, -1, 0); // Savin, n_alpha = 5
    auto chi = exceptional_character(d, "v", false);
    SUBCASE("chi(0) = 1") {
        CHECK(chi.eval(cw({0, 0})) == RingElement::one());
    }
    SUBCASE("values on the scaled basis") {
        CHECK(chi.eval(cw({5, 0})) == RingElement::u_pow(-1) * RingElement::variable("v"));
        CHECK(chi.eval(cw({0, 5})) == RingElement::u_pow(1) * RingElement::variable("v"));
    }
    SUBCASE("exceptional constraint on the coroot") {
        CHECK(chi.eval(cw({5, -5})) == RingElement::u_pow(-2));
        CHECK(is_exceptional(d, chi));
    }
    SUBCASE("multiplicativity") {
        auto x = chi.eval(cw({5, 5}));
        CHECK(x == chi.eval(cw({5, 0})) * chi.eval(cw({0, 5})));
    }
    SUBCASE("outside the domain is an error") {
        CHECK_THROWS_WITH(chi.eval(cw({1, 0})), "not in character domain");
    }
    SUBCASE("rank 1 has the single value v") {
        CoveringDescriptor d1(1, 5, -1, 0);
        auto chi1 = exceptional_character(d1, "v", false);
        CHECK(chi1.eval(cw({5})) == RingElement::variable("v"));
    }
    SUBCASE("splitting hypothesis is enforced") {
        // n = 4, p = 1, q = 2 has Q(alpha^vee) = 0, n_alpha = 1, and 4 does not divide p*n_alpha.
        CoveringDescriptor bad(2, 4, 1, 2);
        CHECK_FALSE(bad.splitting_hypothesis());
        CHECK_THROWS_WITH(exceptional_character(bad, "v", false),
                          "splitting hypothesis violated");
    }
}

TEST_CASE("Weyl twist of characters") {
    CoveringDescriptor d(2, 5, -1, 0);
    auto chi = exceptional_character(d, "v", false);
    auto w1 = WeylElement::simple_reflection(1, 2);
    SUBCASE("identity twist") {
        auto same = char_weyl_twist(chi, WeylElement::identity(2));
        CHECK(same.eval(cw({5, 0})) == chi.eval(cw({5, 0})));
    }
    SUBCASE("w1 swaps the two values") {
        auto tw = char_weyl_twist(chi, w1);
        CHECK(tw.eval(cw({5, 0})) == chi.eval(cw({0, 5})));
        CHECK(tw.eval(cw({0, 5})) == chi.eval(cw({5, 0})));
    }
    SUBCASE("twist inverts the coroot value") {
        auto tw = char_weyl_twist(chi, w1);
        CHECK(char_coroot_value(d, tw, 1, 2) == char_coroot_value(d, chi, 1, 2).inverse());
    }
    SUBCASE("non-stable domains are rejected") {
        UnramifiedCharacter narrow(hnf_basis({cw({1, 0})}), {RingElement::variable("v")},
                                   false);
        CHECK_THROWS_WITH(char_weyl_twist(narrow, w1), "character domain is not Weyl-stable");
    }
    SUBCASE("half-delta monomial") {
        CHECK(d.half_delta(cw({1, 0})) == RingElement::u_pow(-1));
        CHECK(d.half_delta(cw({0, 0})) == RingElement::one());
        CHECK(d.half_delta(cw({2, 1})) == RingElement::u_pow(-1));
    }
    SUBCASE("section cocycle is the trivial unit for any exponent") {
        std::mt19937 rng(6);
        std::uniform_int_distribution<long> u(-9, 9);
        for (int t = 0; t < 30; ++t) {
            Coweight y = {u(rng), u(rng)};
            Coweight z = {u(rng), u(rng)};
            CHECK(d.section_cocycle(y, z) == RingElement::one());
        }
    }
}
