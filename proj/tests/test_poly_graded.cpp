#include <gtest/gtest.h>

#include "support.hpp"

using namespace neron;
using namespace neron::poly;
using namespace testing_support;

namespace {

Polynomial P(const std::string &text, std::size_t s) {
    return Polynomial::parse(text, s);
}

GradedPolyModule free_module(std::size_t s, std::vector<int> degrees, int D = 6) {
    PolyMatrix A(degrees.size());
    return make_module(s, A, degrees.size(), 0, degrees, D);
}

std::size_t choose(long n, long k) {
    if (k < 0 || n < k) {
        return 0;
    }
    std::size_t r = 1;
    for (long i = 1; i <= k; ++i) {
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    }
    return r;
}

// Hilbert function by brute force: enumerate monomials per component and rank
// the images of monomial multiples of the relation columns.
std::size_t oracle_hilbert(const GradedPolyModule &M, int d) {
    std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
    for (std::size_t i = 0; i < M.gen_degrees.size(); ++i) {
        for (const auto &m : monomials(M.s, d - M.gen_degrees[i])) {
            index.emplace(std::make_pair(i, m), index.size());
        }
    }
    std::vector<Vec<Rational>> rows;
    for (std::size_t j = 0; j < M.rel_degrees.size(); ++j) {
        for (const auto &mult : monomials(M.s, d - M.rel_degrees[j])) {
            Vec<Rational> row(index.size(), Rational(0));
            for (std::size_t i = 0; i < M.gen_degrees.size(); ++i) {
                for (const auto &[m, c] : M.A[i][j].terms()) {
                    Monomial e = m;
                    for (std::size_t v = 0; v < e.size(); ++v) {
                        e[v] += mult[v];
                    }
                    row[index.at({i, e})] += c;
                }
            }
            rows.push_back(row);
        }
    }
    if (rows.empty()) {
        return index.size();
    }
    return index.size() - rank(Matrix<Rational>::from_rows(rows, index.size()));
}

Subspace<Rational> span_of(const FreeModule &F, const std::vector<PolyVec> &v, int d) {
    Generators g;
    for (const auto &x : v) {
        g.elements.push_back(x);
        g.degrees.push_back(d);
    }
    return span_at(F, g, d);
}

} // namespace

TEST(Polynomial, ParseAndPrint) {
    EXPECT_EQ(P("t1*t2 - t2*t1", 2), Polynomial(2));
    EXPECT_EQ(P("2*t1^2 t2 + 1/2", 2).to_string(), "2*t1^2*t2 + 1/2");
    EXPECT_EQ(P("-t3", 3).to_string(), "-t3");
    EXPECT_EQ(P("t1 t1", 1), P("t1^2", 1));
    EXPECT_EQ((P("t1 + t2", 2) * P("t1 - t2", 2)), P("t1^2 - t2^2", 2));
    EXPECT_EQ(P("t1 t2^2", 2).degree(), 3);
    EXPECT_FALSE(Polynomial(2).degree().has_value());
    EXPECT_THROW(P("t1 + t1^2", 1).degree(), not_homogeneous);
}

TEST(Polynomial, ParseRejectsMalformed) {
    for (const char *bad : {"", "t", "t4", "t1 +", "x1", "t1 ** t2", "1/0 t1"}) {
        EXPECT_THROW(P(bad, 3), parse_error) << bad;
    }
}

TEST(Hilbert, FreeRingInTwoVariables) {
    const auto R = free_module(2, {0});
    for (int d = 0; d <= 6; ++d) {
        EXPECT_EQ(hilbert_function(R, d), static_cast<std::size_t>(d + 1));
    }
    EXPECT_EQ(hilbert_function(R, -1), 0u);
}

TEST(Hilbert, MaximalIdeal) {
    const auto I0 = maximal_ideal_I0();
    EXPECT_EQ(hilbert_function(I0, 0), 0u);
    for (int d = 1; d <= 6; ++d) {
        EXPECT_EQ(hilbert_function(I0, d), static_cast<std::size_t>(d + 1));
    }
}

TEST(Hilbert, KoszulQuotient) {
    const auto M = koszul_quotient();
    EXPECT_EQ(hilbert_series(M, 0, 2), (std::vector<std::size_t>{3, 8, 15}));
    for (int d = 0; d <= 6; ++d) {
        EXPECT_EQ(hilbert_function(M, d), 3 * choose(d + 2, 2) - choose(d + 1, 2)) << d;
    }
}

TEST(Hilbert, DegreeBoundIsEnforced) {
    EXPECT_THROW(hilbert_function(koszul_quotient(4), 5), degree_out_of_range);
}

TEST(Hilbert, MatchesBruteForceOnRandomPresentations) {
    Rng rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t s = static_cast<std::size_t>(uniform(rng, 1, 3));
        const std::size_t q = static_cast<std::size_t>(uniform(rng, 1, 3));
        const std::size_t p = static_cast<std::size_t>(uniform(rng, 0, 3));
        std::vector<int> g(q);
        for (auto &x : g) {
            x = static_cast<int>(uniform(rng, 0, 1));
        }
        PolyMatrix A(q, PolyVec(p, Polynomial(s)));
        std::vector<int> r(p);
        for (std::size_t j = 0; j < p; ++j) {
            r[j] = 2;
            for (std::size_t i = 0; i < q; ++i) {
                for (const auto &m : monomials(s, r[j] - g[i])) {
                    A[i][j] = A[i][j] + Polynomial::monomial(m, Rational(uniform(rng, -2, 2)));
                }
            }
        }
        GradedPolyModule M;
        M.s = s;
        M.gen_degrees = g;
        M.rel_degrees = r;
        M.A = A;
        M.D = 5;
        for (int d = 0; d <= 5; ++d) {
            EXPECT_EQ(hilbert_function(M, d), oracle_hilbert(M, d));
        }
    }
}

TEST(Presentation, GradingIsInferred) {
    const auto M = pullback_cokernel();
    EXPECT_EQ(M.gen_degrees, (std::vector<int>{0, -1}));
    EXPECT_EQ(M.rel_degrees, (std::vector<int>{1}));
}

TEST(Presentation, InconsistentGradingIsRejected) {
    const std::size_t s = 1;
    PolyMatrix A{{P("t1", s), P("t1", s)}, {P("t1", s), P("t1^2", s)}};
    EXPECT_THROW(make_module(s, A, 2, 2), not_homogeneous);
    EXPECT_THROW(make_module(s, {{P("t1", s)}}, 2, 1), parse_error);
}

TEST(Presentation, MaximalIdealHasOneKoszulRelation) {
    const std::size_t s = 2;
    const FreeModule R{s, {0}};
    Generators g{{{P("t1", s)}, {P("t2", s)}}, {1, 1}};
    const auto pres = present_submodule(R, g, 6);
    ASSERT_EQ(pres.rel_degrees.size(), 1u);
    EXPECT_EQ(pres.rel_degrees[0], 2);
    const Polynomial a = pres.A[0][0], b = pres.A[1][0];
    // proportional to (-t2, t1): x1 t1 = x2 t2 up to sign
    EXPECT_TRUE(a * P("t1", s) + b * P("t2", s) == Polynomial(s));
    EXPECT_EQ(a.terms().size(), 1u);
    EXPECT_EQ(a.terms().begin()->first, (Monomial{0, 1}));
    const auto I0 = maximal_ideal_I0();
    EXPECT_EQ(I0.A, (PolyMatrix{{-P("t2", s)}, {P("t1", s)}}));
}

TEST(Dual, OfTheRing) {
    const auto R = free_module(2, {0});
    const auto d = dual_module(R, 6);
    EXPECT_EQ(hilbert_series(d.module, 0, 6), hilbert_series(R, 0, 6));
    ASSERT_EQ(d.generators.elements.size(), 1u);
    EXPECT_EQ(d.generators.degrees[0], 0);
}

TEST(Dual, OfTheMaximalIdealIsFreeOfRankOne) {
    const auto d = dual_module(maximal_ideal_I0(), 6);
    ASSERT_EQ(d.generators.elements.size(), 1u);
    EXPECT_EQ(d.generators.degrees[0], 0);
    EXPECT_EQ(d.generators.elements[0], (PolyVec{P("t1", 2), P("t2", 2)}));
    EXPECT_TRUE(d.module.rel_degrees.empty());
    for (int e = 0; e <= 6; ++e) {
        EXPECT_EQ(hilbert_function(d.module, e), static_cast<std::size_t>(e + 1));
    }
}

TEST(Dual, KoszulQuotientIsSelfDualUpToShift) {
    const std::size_t s = 3;
    const auto M = koszul_quotient();
    const auto d = dual_module(M, 6);
    ASSERT_EQ(d.generators.elements.size(), 3u);
    for (int dg : d.generators.degrees) {
        EXPECT_EQ(dg, 1);
    }
    const FreeModule Fd{s, {0, 0, 0}};
    const std::vector<PolyVec> koszul{{P("t2", s), -P("t1", s), Polynomial(s)},
                                      {P("t3", s), Polynomial(s), -P("t1", s)},
                                      {Polynomial(s), P("t3", s), -P("t2", s)}};
    EXPECT_EQ(span_at(Fd, d.generators, 1), span_of(Fd, koszul, 1));
    for (int e = 1; e <= 6; ++e) {
        EXPECT_EQ(hilbert_function(d.module, e), hilbert_function(M, e - 1)) << e;
    }
    // every dual element kills the relation (t1, t2, t3)
    for (const auto &g : d.generators.elements) {
        EXPECT_EQ(g[0] * P("t1", s) + g[1] * P("t2", s) + g[2] * P("t3", s), Polynomial(s));
    }
}

TEST(Dual, DegreeBoundTooLowIsReported) {
    EXPECT_THROW(dual_module(koszul_quotient(1), 1), generators_not_found);
}

TEST(Dual, TwiceOnFreeModulesRecoversThem) {
    for (const auto &degs : {std::vector<int>{0}, std::vector<int>{0, 0}, std::vector<int>{0, 2}, std::vector<int>{1, -1, 0}}) {
        for (std::size_t s : {1u, 2u, 3u}) {
            const auto F = free_module(s, degs);
            const auto dd = dual_module(dual_module(F, 6).module, 6);
            EXPECT_TRUE(dd.module.rel_degrees.empty());
            auto got = dd.module.gen_degrees, want = degs;
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            EXPECT_EQ(got, want);
            // the generators are unit vectors up to order and scale: an explicit isomorphism
            for (const auto &g : dd.generators.elements) {
                std::size_t nonzero = 0;
                for (const auto &x : g) {
                    if (!x.is_zero()) {
                        ++nonzero;
                        EXPECT_EQ(x.degree(), 0);
                    }
                }
                EXPECT_EQ(nonzero, 1u);
            }
            for (int d = -1; d <= 5; ++d) {
                EXPECT_EQ(hilbert_function(dd.module, d), hilbert_function(F, d));
            }
        }
    }
}

TEST(Reflexivity, FreeModules) {
    const auto rep = reflexivity_report(free_module(2, {0, 0, 1}), 6);
    EXPECT_TRUE(rep.free_evidence);
    EXPECT_TRUE(rep.reflexive_evidence);
    EXPECT_EQ(rep.details, "evidence up to degree 6");
}

TEST(Reflexivity, MaximalIdealIsNotReflexive) {
    const auto rep = reflexivity_report(maximal_ideal_I0(), 6);
    EXPECT_FALSE(rep.reflexive_evidence);
    EXPECT_FALSE(rep.free_evidence);
    ASSERT_EQ(rep.from, 0);
    EXPECT_EQ(rep.hilbert[0], 0u);
    EXPECT_EQ(rep.double_dual[0], 1u);
    for (std::size_t i = 1; i < rep.hilbert.size(); ++i) {
        EXPECT_EQ(rep.hilbert[i], rep.double_dual[i]);
    }
}

TEST(Reflexivity, KoszulQuotientIsReflexiveNotFree) {
    const auto rep = reflexivity_report(koszul_quotient(), 6);
    EXPECT_TRUE(rep.reflexive_evidence);
    EXPECT_FALSE(rep.free_evidence);
    EXPECT_EQ(rep.min_generators, (std::map<int, std::size_t>{{0, 3}}));
    EXPECT_EQ(rep.hilbert, (std::vector<std::size_t>{3, 8, 15, 24, 35, 48, 63}));
    EXPECT_EQ(rep.free_hilbert[1], 9u);
}

TEST(Torsion, KoszulSyzygyModuleHasNone) {
    const std::size_t s = 2;
    const auto M = make_module(s, {{P("t1", s)}, {P("t2", s)}}, 2, 1);
    EXPECT_FALSE(torsion_check(M, P("t1", s), 6).has_value());
    EXPECT_FALSE(torsion_check(M, P("t2", s), 6).has_value());
    EXPECT_FALSE(torsion_check(M, Polynomial(s, Rational(1)), 6).has_value());
}

TEST(Torsion, PullbackCokernelHasT1Torsion) {
    const std::size_t s = 2;
    const auto M = pullback_cokernel();
    const auto w = torsion_check(M, P("t1", s), 6);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->degree, 0);
    // the witness is nonzero in M and t1 times it is a relation
    const auto F = M.free();
    const auto rel = M.relations();
    EXPECT_FALSE(span_at(F, rel, w->degree).contains(F.coords(w->element, w->degree)));
    EXPECT_TRUE(span_at(F, rel, w->degree + 1).contains(F.coords(scale(P("t1", s), w->element), w->degree + 1)));
    EXPECT_EQ(w->element, (PolyVec{Polynomial(s, Rational(1)), P("t2", s)}));
}

// t1 (t2, -1) = (t1 t2, -t1) is not a multiple c (t1, t1 t2): the first entry forces c = t2.
TEST(Torsion, TheOtherCandidateIsNotKilled) {
    const std::size_t s = 2;
    const PolyVec x{P("t2", s), P("-1", s)};
    const PolyVec col{P("t1", s), P("t1 t2", s)};
    const auto tx = scale(P("t1", s), x);
    const auto forced = scale(P("t2", s), col);
    EXPECT_EQ(forced[0], tx[0]);
    EXPECT_FALSE(forced[1] == tx[1]);
}

TEST(Torsion, UnitHasNoWitness) {
    EXPECT_FALSE(torsion_check(pullback_cokernel(), Polynomial(2, Rational(1)), 6).has_value());
    EXPECT_FALSE(torsion_check(koszul_quotient(), Polynomial(3, Rational(1)), 6).has_value());
}

TEST(Koszul, SmallCases) {
    const auto K1 = koszul_complex(1);
    ASSERT_EQ(K1.maps.size(), 1u);
    EXPECT_EQ(K1.maps[0], (PolyMatrix{{P("t1", 1)}}));

    const auto K2 = koszul_complex(2);
    ASSERT_EQ(K2.maps.size(), 2u);
    EXPECT_EQ(K2.maps[1], (PolyMatrix{{-P("t2", 2)}, {P("t1", 2)}}));
}

TEST(Koszul, SquaresVanishAndMiddleIsExact) {
    for (std::size_t s = 1; s <= 4; ++s) {
        const auto K = koszul_complex(s);
        const auto c = check_koszul(K, s == 4 ? 4 : 6);
        EXPECT_TRUE(c.squares_vanish) << s;
        EXPECT_TRUE(c.middle_exact) << s;
        EXPECT_TRUE(c.failures.empty());
        for (std::size_t k = 0; k <= s; ++k) {
            EXPECT_EQ(K.bases[k].size(), choose(static_cast<long>(s), static_cast<long>(k)));
        }
    }
}

TEST(Koszul, BrokenComplexIsDetected) {
    auto K = koszul_complex(3);
    K.maps[1][0][0] = K.maps[1][0][0] + P("t1", 3);
    const auto c = check_koszul(K, 3);
    EXPECT_FALSE(c.squares_vanish);
}
