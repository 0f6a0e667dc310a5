#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "mantel/entropy.hpp"
#include "mantel/extremal.hpp"
#include "mantel/families.hpp"
#include "mantel/lagrangian.hpp"
#include "mantel/util.hpp"

using namespace mantel;

TEST_SUITE_BEGIN("entropy");

namespace {

RGraph random_graph(int n, int r, std::mt19937_64& rng) {
    std::vector<Edge> pool = RGraph::complete(n, r).edges();
    std::vector<Edge> es;
    for (const Edge& e : pool) {
        if (rng() % 2 == 0) es.push_back(e);
    }
    if (es.empty()) es.push_back(pool.front());
    return RGraph(n, r, std::move(es));
}

SimplexVector random_positive_point(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> x(n);
    double s = 0.0;
    for (double& v : x) {
        v = 0.05 + unif(rng);
        s += v;
    }
    for (double& v : x) v /= s;
    return SimplexVector(std::move(x), 1e-9);
}

}  // namespace

TEST_CASE("build_distribution basics") {
    RGraph one(3, 3, {{1, 2, 3}});
    OrderedEdgeDistribution d = build_distribution(one, SimplexVector::uniform(3));
    CHECK(d.joint.atoms.size() == 6);  // r! orderings
    for (const auto& [tup, p] : d.joint.atoms) CHECK(p == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(d.beta == doctest::Approx(6.0 / 27).epsilon(1e-12));

    // weights supported off every edge: beta = 0
    RGraph pair(4, 2, {{1, 2}});
    std::vector<double> off(4, 0.0);
    off[2] = off[3] = 0.5;
    CHECK_THROWS_AS(build_distribution(pair, SimplexVector(off)), std::domain_error);

    // T_{3,1} restricted to its 5 live vertices under uniform weights:
    // 3 edges x 3! orderings, every monomial 1/125, beta = 18/125
    RGraph t31 = drop_isolated(gen_T(3, 1));
    OrderedEdgeDistribution dt = build_distribution(t31, SimplexVector::uniform(5));
    CHECK(dt.joint.atoms.size() == 18);
    CHECK(dt.beta == doctest::Approx(18.0 / 125).epsilon(1e-12));
    for (const auto& [tup, p] : dt.joint.atoms) CHECK(p == doctest::Approx(1.0 / 18).epsilon(1e-12));
}

TEST_CASE("atom probabilities sum to one") {
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution d = build_distribution(h, random_positive_point(n, rng));
        double s = 0.0;
        for (const auto& [tup, p] : d.joint.atoms) s += p;
        CHECK(std::abs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("exchangeability") {
    std::mt19937_64 rng(223);
    RGraph h = random_graph(6, 3, rng);
    OrderedEdgeDistribution d = build_distribution(h, random_positive_point(6, rng));
    std::map<std::vector<Vertex>, double> probs(d.joint.atoms.begin(), d.joint.atoms.end());
    // permuting atom coordinates by a fixed sigma leaves the law unchanged
    const int sigma[3] = {2, 0, 1};
    for (const auto& [tup, p] : d.joint.atoms) {
        std::vector<Vertex> permuted(3);
        for (int k = 0; k < 3; ++k) permuted[k] = tup[sigma[k]];
        auto it = probs.find(permuted);
        REQUIRE(it != probs.end());
        CHECK(it->second == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("marginals: identity at j = r, formula agreement") {
    std::mt19937_64 rng(227);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution d = build_distribution(h, random_positive_point(n, rng));
        CHECK(marginal(d, r).atoms == d.joint.atoms);
        for (int j = 1; j <= r; ++j) {
            TupleDistribution direct = marginal(d, j);
            TupleDistribution formula = marginal_via_links(d, j);
            REQUIRE(direct.atoms.size() == formula.atoms.size());
            for (std::size_t k = 0; k < direct.atoms.size(); ++k) {
                CHECK(direct.atoms[k].first == formula.atoms[k].first);
                CHECK(std::abs(direct.atoms[k].second - formula.atoms[k].second) <= 1e-12);
            }
        }
    }
}

TEST_CASE("marginal of a single edge is uniform on its vertices") {
    RGraph one(4, 4, {{1, 2, 3, 4}});
    OrderedEdgeDistribution d = build_distribution(one, SimplexVector::uniform(4));
    TupleDistribution m1 = marginal(d, 1);
    CHECK(m1.atoms.size() == 4);
    for (const auto& [tup, p] : m1.atoms) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("entropy basics") {
    // uniform over k outcomes and a point mass
    TupleDistribution unif{1, {{{1}, 0.25}, {{2}, 0.25}, {{3}, 0.25}, {{4}, 0.25}}};
    CHECK(entropy_bits(unif) == doctest::Approx(2.0).epsilon(1e-12));
    TupleDistribution point{1, {{{1}, 1.0}}};
    CHECK(entropy_bits(point) == 0.0);

    // single edge uniform joint: log2 r!
    RGraph one(3, 3, {{1, 2, 3}});
    OrderedEdgeDistribution d = build_distribution(one, SimplexVector::uniform(3));
    CHECK(entropy_bits(d.joint) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("entropy gap identity") {
    // j = r: both sides vanish
    RGraph one(3, 3, {{1, 2, 3}});
    OrderedEdgeDistribution d = build_distribution(one, SimplexVector::uniform(3));
    GapReport jr = entropy_gap(d, 3);
    CHECK(std::abs(jr.lhs) <= 1e-12);
    CHECK(jr.residual <= 1e-12);

    // single edge uniform, j = 1: both sides equal log2 beta
    GapReport j1 = entropy_gap(d, 1);
    CHECK(j1.lhs == doctest::Approx(std::log2(6.0 / 27)).epsilon(1e-12));
    CHECK(j1.residual <= 1e-12);

    // randomized instances, all prefix lengths
    std::mt19937_64 rng(229);
    for (int trial = 0; trial < 100; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution dd = build_distribution(h, random_positive_point(n, rng));
        for (int j = 1; j <= r; ++j) {
            CHECK(entropy_gap(dd, j).residual <= 1e-9);
        }
    }
}

TEST_CASE("entropy gap lower bound via the ordered shadow") {
    RGraph one(3, 3, {{1, 2, 3}});
    OrderedEdgeDistribution d = build_distribution(one, SimplexVector::uniform(3));
    // j = 1: the shadow polynomial is 3 * (1/3) = 1, equality at log2 beta
    GapBoundReport b1 = entropy_gap_bound(d, 1);
    CHECK(b1.ok);
    CHECK(b1.bound == doctest::Approx(std::log2(6.0 / 27)).epsilon(1e-12));
    CHECK(b1.gap == doctest::Approx(b1.bound).epsilon(1e-12));
    // j = r: both sides vanish
    GapBoundReport br = entropy_gap_bound(d, 3);
    CHECK(br.ok);
    CHECK(std::abs(br.gap - br.bound) <= 1e-12);

    std::mt19937_64 rng(233);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution dd = build_distribution(h, random_positive_point(n, rng));
        for (int j = 1; j <= r; ++j) CHECK(entropy_gap_bound(dd, j).ok);
    }
}

TEST_CASE("entropy identity at certified optima") {
    CHECK(optimal_entropy_identity(RGraph(3, 3, {{1, 2, 3}})).residual <= 1e-12);

    OptimalEntropyReport fano = optimal_entropy_identity(gen_sts(7));
    CHECK(fano.residual <= 1e-8);
    CHECK(fano.logbeta == doctest::Approx(std::log2(2.0 / 9)).epsilon(1e-9));

    OptimalEntropyReport k4 = optimal_entropy_identity(RGraph::complete(4, 2));
    CHECK(k4.residual <= 1e-8);
    CHECK(k4.logbeta == doctest::Approx(std::log2(0.75)).epsilon(1e-9));
}

TEST_CASE("alpha vector") {
    // single edge uniform: alpha_i = i/r exactly
    for (int r = 2; r <= 4; ++r) {
        RGraph one = RGraph::complete(r, r);
        OrderedEdgeDistribution d = build_distribution(one, SimplexVector::uniform(r));
        std::vector<double> a = alphas(d);
        REQUIRE(static_cast<int>(a.size()) == r);
        for (int i = 1; i <= r; ++i) {
            CHECK(a[i - 1] == doctest::Approx(static_cast<double>(i) / r).epsilon(1e-9));
        }
    }

    // alpha_r = 1 for arbitrary distributions
    std::mt19937_64 rng(239);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution d = build_distribution(h, random_positive_point(n, rng));
        std::vector<double> a = alphas(d);
        CHECK(a.back() == doctest::Approx(1.0).epsilon(1e-9));
    }

    // at the Fano optimum the distribution sits uniformly on one line
    OptResult opt = maximize(gen_sts(7));
    REQUIRE(opt.certified);
    OrderedEdgeDistribution d = build_distribution(gen_sts(7), opt.maximizer);
    std::vector<double> a = alphas(d);
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(a[i - 1] - i / 3.0) <= 1e-6);
    CHECK(alpha_superadditivity(a).ok);
}

TEST_CASE("alpha superadditivity") {
    CHECK(alpha_superadditivity({1.0 / 3, 2.0 / 3, 1.0}).ok);
    CHECK(alpha_superadditivity({0.5, 1.0}).ok);          // r = 2: alpha_1 <= 1/2
    CHECK_FALSE(alpha_superadditivity({0.6, 1.0}).ok);    // 0.6 + 0.6 > 1
    AlphaSuperadditivityReport rep = alpha_superadditivity({0.6, 1.0});
    CHECK(rep.worst_violation == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("chain rule consistency") {
    std::mt19937_64 rng(241);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution d = build_distribution(h, random_positive_point(n, rng));
        std::vector<double> pre(r + 1, 0.0);
        for (int k = 1; k <= r; ++k) pre[k] = entropy_bits(marginal(d, k));
        for (int j = 1; j <= r; ++j) {
            // telescoping sum of conditional-minus-marginal terms
            double lhs = 0.0;
            for (int i = j; i <= r; ++i) {
                lhs += (pre[r - i + 1] - pre[r - i]) - pre[1];
            }
            double rhs = pre[r - j + 1] - (r - j + 1) * pre[1];
            CHECK(std::abs(lhs - rhs) <= 1e-9);
        }
    }
}

TEST_CASE("joint entropy at most the sum of marginals") {
    std::mt19937_64 rng(251);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        int n = r + 1 + static_cast<int>(rng() % 3);
        RGraph h = random_graph(n, r, rng);
        OrderedEdgeDistribution d = build_distribution(h, random_positive_point(n, rng));
        double hr = entropy_bits(d.joint);
        CHECK(hr >= -1e-12);
        CHECK(hr <= r * entropy_bits(marginal(d, 1)) + 1e-9);
    }
}

TEST_CASE("entropy density equals r! times the Lagrangian at the optimum") {
    for (const RGraph& g : {RGraph(3, 3, {{1, 2, 3}}), gen_sts(7), RGraph::complete(4, 2)}) {
        OptResult opt = maximize(g);
        REQUIRE(opt.certified);
        OrderedEdgeDistribution d = build_distribution(g, opt.maximizer);
        double hr = entropy_bits(d.joint);
        double h1 = entropy_bits(marginal(d, 1));
        double density = std::exp2(hr - g.r() * h1);
        double rfact = 1.0;
        for (int i = 2; i <= g.r(); ++i) rfact *= i;
        CHECK(std::abs(density - rfact * opt.value) <= 1e-7);
    }
}

TEST_CASE("partial Steiner prefixes extend uniquely") {
    RGraph fano = gen_sts(7);
    std::mt19937_64 rng(257);
    SimplexVector x = random_positive_point(7, rng);
    OrderedEdgeDistribution d = build_distribution(fano, x);
    // group joint atoms by their (r-1)-prefix: one completion each
    std::map<std::vector<Vertex>, std::vector<Vertex>> completions;
    for (const auto& [tup, p] : d.joint.atoms) {
        std::vector<Vertex> prefix(tup.begin(), tup.end() - 1);
        completions[prefix].push_back(tup.back());
    }
    TupleDistribution m = marginal(d, 2);
    std::map<std::vector<Vertex>, double> mprobs(m.atoms.begin(), m.atoms.end());
    for (const auto& [prefix, last] : completions) {
        CHECK(last.size() == 1);
        // y_{i_1..i_{r-1}} = xprod * x_psi / beta
        double xprod = 1.0;
        for (Vertex v : prefix) xprod *= x.at(v);
        double expect = xprod * x.at(last.front()) / d.beta;
        auto it = mprobs.find(prefix);
        REQUIRE(it != mprobs.end());
        CHECK(it->second == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("log-uniform check") {
    // (1/r,...,1/r,0,...): hypothesis and conclusion hold
    std::vector<double> good(6, 0.0);
    for (int i = 0; i < 3; ++i) good[i] = 1.0 / 3;
    UniformCheckReport ok = entropy_log_uniform_check(SimplexVector(good), 3);
    CHECK(ok.verdict == UniformCheckVerdict::Holds);

    // an entry strictly inside (0, 1/r) pushes the entropy sum below -log r
    std::vector<double> mid = {0.2, 1.0 / 3, 1.0 / 3, 0.4 / 3.0};
    UniformCheckReport na = entropy_log_uniform_check(SimplexVector::normalized(mid), 3);
    CHECK(na.verdict == UniformCheckVerdict::NotApplicable);
    CHECK_FALSE(na.entropy_hypothesis);

    // point mass: max exceeds 1/r
    std::vector<double> pm(4, 0.0);
    pm[0] = 1.0;
    UniformCheckReport point = entropy_log_uniform_check(SimplexVector(pm), 3);
    CHECK(point.verdict == UniformCheckVerdict::NotApplicable);
    CHECK_FALSE(point.max_hypothesis);

    // sweep: under the max hypothesis the entropy sum only reaches -log r at
    // the uniform-on-r-coordinates points
    std::mt19937_64 rng(263);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 4 + static_cast<int>(rng() % 3);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> x(n);
        double s = 0.0;
        for (double& v : x) {
            v = unif(rng);
            s += v;
        }
        for (double& v : x) v /= s;
        double mx = *std::max_element(x.begin(), x.end());
        if (mx > 1.0 / 3) continue;
        double esum = 0.0;
        for (double v : x) {
            if (v > 0) esum += v * std::log2(v);
        }
        bool uniform_on_three = true;
        int on = 0;
        for (double v : x) {
            if (std::abs(v - 1.0 / 3) <= 1e-9) {
                ++on;
            } else if (v > 1e-9) {
                uniform_on_three = false;
            }
        }
        uniform_on_three = uniform_on_three && on == 3;
        if (!uniform_on_three) CHECK(esum < -std::log2(3.0) - 1e-12);
    }
}

TEST_CASE("scale guard on atom count") {
    RGraph big = RGraph::complete(13, 6);
    CHECK(big.size() * 720.0 > 1e6);
    CHECK_THROWS_AS(build_distribution(big, SimplexVector::uniform(13)), scale_guard_error);
}

TEST_SUITE_END();
