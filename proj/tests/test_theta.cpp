#include "moment_fiber/theta.hpp"
#include "oracle/oracle.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

namespace mf = moment_fiber;
namespace th = moment_fiber::theta;
using th::CartanType;
using th::Family;
using th::KacDiagram;

namespace {

std::vector<CartanType> supported_types() {
    std::vector<CartanType> out;
    for (int n = 1; n <= 8; ++n) out.push_back({Family::A, n});
    for (int n = 2; n <= 8; ++n) out.push_back({Family::B, n});
    for (int n = 2; n <= 8; ++n) out.push_back({Family::C, n});
    for (int n = 4; n <= 8; ++n) out.push_back({Family::D, n});
    for (int n = 6; n <= 8; ++n) out.push_back({Family::E, n});
    out.push_back({Family::F, 4});
    out.push_back({Family::G, 2});
    return out;
}

// Classical root counts and Coxeter numbers, written out independently of
// the library tables.
std::size_t root_count(CartanType t) {
    const std::size_t n = static_cast<std::size_t>(t.rank);
    switch (t.family) {
        case Family::A: return n * (n + 1);
        case Family::B:
        case Family::C: return 2 * n * n;
        case Family::D: return 2 * n * (n - 1);
        case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
        case Family::F: return 48;
        case Family::G: return 12;
    }
    return 0;
}

int coxeter(CartanType t) {
    const int n = t.rank;
    switch (t.family) {
        case Family::A: return n + 1;
        case Family::B:
        case Family::C: return 2 * n;
        case Family::D: return 2 * n - 2;
        case Family::E: return n == 6 ? 12 : n == 7 ? 18 : 30;
        case Family::F: return 12;
        case Family::G: return 6;
    }
    return 0;
}

// Dimension of the graded Lie algebra for the twisted diagrams.
std::size_t twisted_lie_dim(CartanType t) {
    const std::size_t n = static_cast<std::size_t>(t.rank);
    if (t.family == Family::A) return (n + 1) * (n + 1) - 1;
    if (t.family == Family::D) return n * (2 * n - 1);
    return 78;  // E6
}

const CartanType E6{Family::E, 6}, E7{Family::E, 7}, E8{Family::E, 8};

KacDiagram stable_e6() { return th::diagram_from_user_labels(E6, 1, {1, 1, 0, 1, 1, 1, 1}); }
KacDiagram stable_e7() { return th::diagram_from_user_labels(E7, 1, {1, 1, 0, 1, 1, 1, 1, 1}); }
KacDiagram stable_e8a() { return th::diagram_from_user_labels(E8, 1, {1, 1, 0, 1, 1, 1, 1, 1, 1}); }
KacDiagram stable_e8b() { return th::diagram_from_user_labels(E8, 1, {1, 1, 0, 1, 0, 1, 1, 1, 1}); }
KacDiagram stable_e8c() { return th::diagram_from_user_labels(E8, 1, {1, 0, 1, 0, 1, 0, 1, 0, 1}); }
KacDiagram stable_g2() { return {{Family::G, 2}, 1, {0, 1, 1}}; }
KacDiagram stable_f4() { return {{Family::F, 4}, 1, {1, 1, 0, 1, 1}}; }
KacDiagram stable_e6_twisted() { return {E6, 2, {1, 0, 1, 1, 1}}; }

th::VinbergClassicalInput vin(th::VinbergCase c, std::vector<int> k, std::array<int, 2> eta) {
    th::VinbergClassicalInput in;
    in.kase = c;
    in.m0 = static_cast<int>(k.size());
    in.k = std::move(k);
    in.eta = eta;
    in.eps = th::case_epsilon(c);
    return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// Root systems

TEST(RootSystem, SmallExamples) {
    EXPECT_EQ(th::build_root_system(Family::A, 2).roots.size(), 6u);
    EXPECT_EQ(th::build_root_system(Family::E, 8).roots.size(), 240u);
    EXPECT_EQ(th::build_root_system(Family::G, 2).roots.size(), 12u);
}

TEST(RootSystem, EverySupportedTypeMatchesCountsAndMarks) {
    for (const auto t : supported_types()) {
        const auto rs = th::build_root_system(t);
        EXPECT_EQ(rs.roots.size(), root_count(t)) << th::type_name(t);
        EXPECT_EQ(rs.highest_root, rs.marks) << th::type_name(t);
        EXPECT_EQ(std::accumulate(rs.marks.begin(), rs.marks.end(), 1), coxeter(t)) << th::type_name(t);
        // Every root is a positive or a negative combination of simple roots.
        for (const auto& r : rs.roots) {
            const bool pos = std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; });
            const bool neg = std::all_of(r.begin(), r.end(), [](int c) { return c <= 0; });
            EXPECT_TRUE(pos != neg);
        }
    }
}

TEST(RootSystem, InvalidTypesRejected) {
    EXPECT_THROW(th::build_root_system(Family::E, 5), mf::InputError);
    EXPECT_THROW(th::build_root_system(Family::A, 9), mf::InputError);
    EXPECT_THROW(th::build_root_system(Family::D, 3), mf::InputError);
    EXPECT_THROW(th::parse_type("X3"), mf::InputError);
    EXPECT_THROW(th::parse_type("E"), mf::InputError);
}

TEST(RootSystem, ParseTypeNames) {
    const auto t = th::parse_type("F4");
    EXPECT_EQ(t.family, Family::F);
    EXPECT_EQ(t.rank, 4);
    EXPECT_EQ(th::type_name(th::parse_type("e7")), "E7");
}

// ---------------------------------------------------------------------------
// Orders and graded dimensions

TEST(KacOrder, ExceptionalDiagramOrders) {
    EXPECT_EQ(th::kac_order(stable_e6()), 9);
    EXPECT_EQ(th::kac_order(stable_e7()), 14);
    EXPECT_EQ(th::kac_order(stable_e8a()), 24);
    EXPECT_EQ(th::kac_order(stable_e8b()), 20);
    EXPECT_EQ(th::kac_order(stable_e8c()), 15);
}

TEST(KacOrder, AllOnesIsCoxeterNumber) {
    EXPECT_EQ(th::kac_order(th::all_ones({Family::A, 2}, 1)), 3);
    for (const auto t : supported_types()) EXPECT_EQ(th::kac_order(th::all_ones(t, 1)), coxeter(t)) << th::type_name(t);
}

TEST(KacOrder, InvalidLabelsRejected) {
    EXPECT_THROW(th::kac_order({{Family::A, 2}, 1, {0, 0, 0}}), mf::InputError);
    EXPECT_THROW(th::kac_order({{Family::A, 2}, 1, {1, 1}}), mf::InputError);
    EXPECT_THROW(th::kac_order({{Family::A, 2}, 1, {1, -1, 1}}), mf::InputError);
}

TEST(GradedDims, A2AllOnes) {
    const auto g = th::graded_dims(th::all_ones({Family::A, 2}, 1));
    EXPECT_EQ(g.m, 3);
    EXPECT_EQ(g.dims, (std::vector<long>{2, 3, 3}));
}

TEST(GradedDims, AllOnesGivesRankAndRankPlusOne) {
    for (const auto t : supported_types()) {
        const auto g = th::graded_dims(th::all_ones(t, 1));
        EXPECT_EQ(g[0], t.rank) << th::type_name(t);
        EXPECT_EQ(g[1], t.rank + 1) << th::type_name(t);
    }
}

TEST(GradedDims, StableDiagramsHaveDeltaOne) {
    for (const auto& d : {stable_e6(), stable_e7(), stable_e8a(), stable_e8b(), stable_e8c(), stable_g2(), stable_f4()}) {
        EXPECT_EQ(th::graded_dims(d).delta(), 1) << th::diagram_name(d.base, d.twist);
    }
    const auto g2 = th::graded_dims(stable_g2());
    EXPECT_EQ(g2.m, 3);
    EXPECT_EQ(g2[0], 4);
    EXPECT_EQ(g2[1], 5);
    EXPECT_EQ(th::kac_order(stable_f4()), 8);
}

TEST(GradedDims, TwistedDiagramNeedsCapability) {
    EXPECT_THROW(th::graded_dims(stable_e6_twisted()), mf::CapabilityError);
    const auto g = th::graded_dims(stable_e6_twisted(), {true});
    EXPECT_EQ(g.m, 12);
    EXPECT_EQ(g.delta(), 1);
    EXPECT_EQ(std::accumulate(g.dims.begin(), g.dims.end(), 0L), 78);
}

TEST(GradedDims, SumAndDualitySymmetryForEveryUntwistedLabeling) {
    for (const auto t : {CartanType{Family::A, 4}, {Family::B, 3}, {Family::C, 4}, {Family::D, 5}, {Family::G, 2},
                         {Family::F, 4}, E6}) {
        const auto rs = th::build_root_system(t);
        for (const auto& e : th::scan_labelings(t, 1, [](long) { return true; })) {
            const auto g = th::graded_dims(e.diagram);
            EXPECT_EQ(static_cast<std::size_t>(std::accumulate(g.dims.begin(), g.dims.end(), 0L)), rs.dimension());
            for (int j = 0; j < g.m; ++j) EXPECT_EQ(g[j], g[-j]);
            EXPECT_GE(g[0], t.rank);
        }
    }
}

TEST(GradedDims, LoopEngineAgreesWithFiniteRoots) {
    for (const auto t : {CartanType{Family::A, 3}, {Family::B, 4}, {Family::C, 3}, {Family::D, 4}, {Family::G, 2},
                         {Family::F, 4}}) {
        for (const auto& e : th::scan_labelings(t, 1, [](long) { return true; })) {
            EXPECT_EQ(th::loop_graded_dims(e.diagram), th::finite_graded_dims(e.diagram));
        }
    }
}

TEST(GradedDims, TwistedAllOnesIsCartanThenSimpleRoots) {
    const std::vector<std::pair<CartanType, int>> twisted = {
        {{Family::A, 2}, 2}, {{Family::A, 4}, 2}, {{Family::A, 6}, 2}, {{Family::A, 3}, 2}, {{Family::A, 5}, 2},
        {{Family::A, 7}, 2}, {{Family::D, 4}, 2}, {{Family::D, 6}, 2}, {E6, 2},            {{Family::D, 4}, 3}};
    for (const auto& [t, tw] : twisted) {
        const auto d = th::all_ones(t, tw);
        const auto g = th::graded_dims(d);
        const long nodes = static_cast<long>(d.labels.size());
        EXPECT_EQ(g[0], nodes - 1) << th::diagram_name(t, tw);
        EXPECT_EQ(g[1], nodes) << th::diagram_name(t, tw);
        EXPECT_EQ(static_cast<std::size_t>(std::accumulate(g.dims.begin(), g.dims.end(), 0L)), twisted_lie_dim(t));
    }
}

TEST(GradedDims, GeneralTwistedLabelingsSumToDimension) {
    for (const auto& [t, tw] : std::vector<std::pair<CartanType, int>>{{{Family::A, 4}, 2}, {{Family::D, 5}, 2},
                                                                        {E6, 2}, {{Family::D, 4}, 3}}) {
        for (const auto& e : th::scan_labelings(t, tw, [](long) { return true; }, {true})) {
            const auto g = th::graded_dims(e.diagram, {true});
            EXPECT_EQ(static_cast<std::size_t>(std::accumulate(g.dims.begin(), g.dims.end(), 0L)), twisted_lie_dim(t));
            for (int j = 0; j < g.m; ++j) EXPECT_EQ(g[j], g[-j]);
        }
    }
}

// ---------------------------------------------------------------------------
// Scans

namespace {

bool contains(const std::vector<KacDiagram>& list, const KacDiagram& d) {
    return std::find(list.begin(), list.end(), d) != list.end();
}

}  // namespace

TEST(Rank1DimFilter, E6ContainsAllOnesAndOrderNine) {
    const auto list = th::rank1_dim_filter(E6, 1);
    EXPECT_TRUE(contains(list, th::all_ones(E6, 1)));
    EXPECT_TRUE(contains(list, stable_e6()));
    EXPECT_LE(list.size(), 8u);
}

TEST(Rank1DimFilter, A2AndG2) {
    EXPECT_TRUE(contains(th::rank1_dim_filter({Family::A, 2}, 1), th::all_ones({Family::A, 2}, 1)));
    const auto g2 = th::rank1_dim_filter({Family::G, 2}, 1);
    EXPECT_TRUE(contains(g2, stable_g2()));
    EXPECT_TRUE(contains(th::rank1_dim_filter({Family::F, 4}, 1), stable_f4()));
}

TEST(Rank1DimFilter, ExceptionalListsContainDeltaOneDiagrams) {
    EXPECT_TRUE(contains(th::rank1_dim_filter(E7, 1), stable_e7()));
    const auto e8 = th::rank1_dim_filter(E8, 1);
    for (const auto& d : {stable_e8a(), stable_e8b(), stable_e8c(), th::all_ones(E8, 1)}) EXPECT_TRUE(contains(e8, d));
    EXPECT_LE(e8.size(), 16u);
}

TEST(Rank1DimFilter, JobsDoNotChangeTheResult) {
    EXPECT_EQ(th::rank1_dim_filter(E7, 1, {}, 1), th::rank1_dim_filter(E7, 1, {}, 3));
}

TEST(LeviOrderScan, NoOrderDivisibleByNineOrFourteen) {
    for (const auto t : {E7, E8}) {
        const auto list = th::levi_order_scan(t);
        EXPECT_FALSE(list.empty());
        for (const auto& e : list) {
            EXPECT_GE(e.delta, 2);
            EXPECT_NE(e.m % 9, 0) << th::type_name(t) << " m=" << e.m;
            EXPECT_NE(e.m % 14, 0) << th::type_name(t) << " m=" << e.m;
            EXPECT_EQ(e.m, th::kac_order(e.diagram));
        }
    }
}

TEST(LeviOrderScan, DeltaOneScanIsTheDimensionFilter) {
    std::vector<KacDiagram> ones;
    for (const auto& e : th::scan_labelings(E7, 1, [](long d) { return d == 1; })) ones.push_back(e.diagram);
    EXPECT_EQ(ones, th::rank1_dim_filter(E7, 1));
}

TEST(LeviOrderScan, OnlyE7AndE8) { EXPECT_THROW(th::levi_order_scan(E6), mf::InputError); }

// ---------------------------------------------------------------------------
// Node orders

TEST(NodeOrder, DisplayOrderForE6) {
    const auto d = stable_e6();
    // alpha_4 is the branch-adjacent node; alpha_2 and alpha_0 carry 1.
    EXPECT_EQ(d.labels, (std::vector<int>{1, 1, 1, 0, 1, 1, 1}));
    EXPECT_EQ(th::user_labels(d), (std::vector<int>{1, 1, 0, 1, 1, 1, 1}));
    EXPECT_EQ(th::user_labels(d, th::NodeOrder::Bourbaki), d.labels);
}

TEST(NodeOrder, RoundTripsForEveryType) {
    for (const auto t : supported_types()) {
        const auto aff = th::affine_diagram(t, 1);
        std::vector<int> labels(aff.nodes());
        for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 3);
        labels[0] = 1;
        for (auto order : {th::NodeOrder::Display, th::NodeOrder::Bourbaki}) {
            EXPECT_EQ(th::user_labels(th::diagram_from_user_labels(t, 1, labels, order), order), labels);
        }
    }
    EXPECT_THROW(th::diagram_from_user_labels(E6, 1, {1, 1}), mf::InputError);
}

// ---------------------------------------------------------------------------
// Vinberg's classical formulas

TEST(Vinberg, FirstCaseExamples) {
    for (int m0 = 2; m0 <= 7; ++m0) EXPECT_EQ(th::vinberg_delta(vin(th::VinbergCase::First, std::vector<int>(m0, 1), {1, 1})), 1);
    EXPECT_EQ(th::vinberg_delta(vin(th::VinbergCase::First, {2, 1, 1}, {1, 1})), 0);
}

TEST(Vinberg, SecondCaseDoubledFirstBlock) {
    EXPECT_EQ(th::vinberg_delta(vin(th::VinbergCase::Second, {2, 1, 1, 1}, {1, 1})), 1);
    EXPECT_EQ(th::vinberg_delta(vin(th::VinbergCase::Second, {2, 1, 1, 1, 1, 1}, {1, 1})), 1);
}

TEST(Vinberg, InvalidInputsRejected) {
    EXPECT_THROW(th::vinberg_delta(vin(th::VinbergCase::First, {1}, {1, 1})), mf::InputError);
    EXPECT_THROW(th::vinberg_delta(vin(th::VinbergCase::Second, {2, 1, 3, 3}, {1, 1})), mf::InputError);
    EXPECT_THROW(th::vinberg_delta(vin(th::VinbergCase::Second, {1, 1, 1}, {1, 1})), mf::InputError);
    auto bad_eps = vin(th::VinbergCase::Third, {1, 1}, {-1, -1});
    bad_eps.eps = {1, 1};
    EXPECT_THROW(th::vinberg_delta(bad_eps), mf::InputError);
    auto short_k = vin(th::VinbergCase::First, {1, 1}, {1, 1});
    short_k.m0 = 3;
    EXPECT_THROW(th::vinberg_delta(short_k), mf::InputError);
}

namespace {

// All k in [lo, hi]^m0 satisfying the duality of the given eta.
std::vector<std::vector<int>> symmetric_vectors(int m0, int eta1, int lo, int hi) {
    std::vector<std::vector<int>> out;
    std::vector<int> k(static_cast<std::size_t>(m0), lo);
    for (;;) {
        bool sym = true;
        for (int j = 0; j < m0 && sym; ++j) sym = k[j] == k[th::conjugate_index(j, m0, eta1)];
        if (sym) out.push_back(k);
        int p = 0;
        while (p < m0 && k[p] == hi) k[p++] = lo;
        if (p == m0) break;
        ++k[p];
    }
    return out;
}

}  // namespace

TEST(Vinberg, FirstCaseSweepMatchesEigenModel) {
    for (int m0 = 2; m0 <= 10; ++m0) {
        std::vector<int> k(static_cast<std::size_t>(m0), 0);
        for (;;) {
            if (std::any_of(k.begin(), k.end(), [](int v) { return v > 0; })) {
                const auto in = vin(th::VinbergCase::First, k, {1, 1});
                const long d = th::vinberg_delta(in);
                ASSERT_EQ(d, mf::oracle::vinberg_delta_eigen(in)) << "m0=" << m0;
                ASSERT_EQ(d, mf::oracle::vinberg_delta_sums(in)) << "m0=" << m0;
            }
            int p = 0;
            while (p < m0 && k[p] == 3) k[p++] = 0;
            if (p == m0) break;
            ++k[p];
        }
    }
}

TEST(Vinberg, FirstCaseIsCyclicallyInvariant) {
    mf::oracle::Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const int m0 = static_cast<int>(rng.uniform(2, 9));
        std::vector<int> k(static_cast<std::size_t>(m0));
        for (auto& v : k) v = static_cast<int>(rng.uniform(1, 4));
        auto rotated = k;
        std::rotate(rotated.begin(), rotated.begin() + rng.uniform(0, m0 - 1), rotated.end());
        EXPECT_EQ(th::vinberg_delta(vin(th::VinbergCase::First, k, {1, 1})),
                  th::vinberg_delta(vin(th::VinbergCase::First, rotated, {1, 1})));
    }
}

TEST(Vinberg, SymmetricCasesSweepMatchesModels) {
    for (auto c : {th::VinbergCase::Second, th::VinbergCase::Third, th::VinbergCase::Fourth}) {
        for (int m0 = 2; m0 <= 10; ++m0) {
            for (bool one : {true, false}) {
                const auto eta = th::consistent_eta(m0, one);
                for (const auto& k : symmetric_vectors(m0, eta[0], 0, 3)) {
                    if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; })) continue;
                    const auto in = vin(c, k, eta);
                    const long d = th::vinberg_delta(in);
                    ASSERT_EQ(d, mf::oracle::vinberg_delta_sums(in));
                    if (c != th::VinbergCase::Fourth) { ASSERT_EQ(d, mf::oracle::vinberg_delta_eigen(in)); }
                }
            }
        }
    }
}

TEST(Vinberg, DeltaIsInvariantUnderConjugation) {
    for (auto c : {th::VinbergCase::Second, th::VinbergCase::Third, th::VinbergCase::Fourth}) {
        for (int m0 = 2; m0 <= 8; ++m0) {
            for (bool one : {true, false}) {
                const auto eta = th::consistent_eta(m0, one);
                for (const auto& k : symmetric_vectors(m0, eta[0], 1, 3)) {
                    std::vector<int> bar(k.size());
                    for (int j = 0; j < m0; ++j) bar[j] = k[th::conjugate_index(j, m0, eta[0])];
                    EXPECT_EQ(th::vinberg_delta(vin(c, k, eta)), th::vinberg_delta(vin(c, bar, eta)));
                }
            }
        }
    }
}

TEST(Vinberg, DeltaBoundedByTheSmallestBlock) {
    for (auto c : {th::VinbergCase::Second, th::VinbergCase::Third, th::VinbergCase::Fourth}) {
        const auto eps = th::case_epsilon(c);
        for (int m0 = 2; m0 <= 12; ++m0) {
            for (bool one : {true, false}) {
                const auto eta = th::consistent_eta(m0, one);
                if (eps[0] * eta[0] != 1 || eps[1] * eta[1] != 1) continue;
                for (const auto& k : symmetric_vectors(m0, eta[0], 1, 3)) {
                    EXPECT_LE(th::vinberg_delta(vin(c, k, eta)), *std::min_element(k.begin(), k.end()));
                }
            }
        }
    }
}

namespace {

using Pattern = std::vector<int>;

// Rank one (smallest block 1), delta = 1, stable (no two cyclically adjacent
// blocks of size >= 2).
std::set<Pattern> rank_one_solutions(th::VinbergCase c, int m0, std::array<int, 2> eta) {
    std::set<Pattern> out;
    const auto keep = [&](const Pattern& k) {
        if (*std::min_element(k.begin(), k.end()) != 1) return false;
        for (int j = 0; j < m0; ++j)
            if (k[j] >= 2 && k[(j + 1) % m0] >= 2) return false;
        return th::vinberg_delta(vin(c, k, eta)) == 1;
    };
    if (c == th::VinbergCase::First) {
        Pattern k(static_cast<std::size_t>(m0), 1);
        for (;;) {
            if (keep(k)) out.insert(k);
            int p = 0;
            while (p < m0 && k[p] == 3) k[p++] = 1;
            if (p == m0) break;
            ++k[p];
        }
        return out;
    }
    for (const auto& k : symmetric_vectors(m0, eta[0], 1, 3))
        if (keep(k)) out.insert(k);
    return out;
}

Pattern with_twos(int m0, std::initializer_list<int> at) {
    Pattern k(static_cast<std::size_t>(m0), 1);
    for (int j : at) k[j] = 2;
    return k;
}

}  // namespace

TEST(Vinberg, RankOneSolutionPatterns) {
    for (int m0 = 2; m0 <= 10; ++m0) {
        EXPECT_EQ(rank_one_solutions(th::VinbergCase::First, m0, {1, 1}), (std::set<Pattern>{with_twos(m0, {})}));
        for (bool one : {true, false}) {
            const auto eta = th::consistent_eta(m0, one);
            const bool even = m0 % 2 == 0;
            std::set<Pattern> second, third, fourth;
            if (even && eta[0] == 1) {
                // B (k_0 = 2), D (all ones), twisted D (k_0 = k_{m0/2} = 2);
                // k_{m0/2} = 2 alone is B again after a -> -a.
                second = {with_twos(m0, {}), with_twos(m0, {0}), with_twos(m0, {m0 / 2})};
                if (m0 > 2) second.insert(with_twos(m0, {0, m0 / 2}));
            }
            if (even && eta[0] == -1) third = {with_twos(m0, {})};
            if (!even && eta[0] == 1) fourth = {with_twos(m0, {}), with_twos(m0, {0})};
            EXPECT_EQ(rank_one_solutions(th::VinbergCase::Second, m0, eta), second) << "m0=" << m0;
            EXPECT_EQ(rank_one_solutions(th::VinbergCase::Third, m0, eta), third) << "m0=" << m0;
            EXPECT_EQ(rank_one_solutions(th::VinbergCase::Fourth, m0, eta), fourth) << "m0=" << m0;
        }
    }
}
