#include "mantel/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mantel/util.hpp"

namespace mantel {

namespace {

double log2_safe(double v) { return std::log2(v); }

double factorial_d(int r) {
    double f = 1.0;
    for (int i = 2; i <= r; ++i) f *= i;
    return f;
}

}  // namespace

OrderedEdgeDistribution build_distribution(const RGraph& h, const SimplexVector& x) {
    if (x.dim() != h.n()) throw std::invalid_argument("dimension mismatch");
    int r = h.r();
    double rfact = factorial_d(r);
    if (h.size() * static_cast<double>(rfact) > 1e6) {
        throw scale_guard_error("distribution would exceed 1e6 atoms");
    }
    double beta = rfact * eval_P(h, x);
    if (!(beta > 0.0)) {
        throw std::domain_error("beta = r! * P_H(x) is zero; distribution undefined");
    }

    OrderedEdgeDistribution d{h, x, beta, {r, {}}};
    for (const Edge& e : h.edges()) {
        double mono = 1.0;
        for (Vertex v : e) mono *= x.at(v);
        if (!(mono > 0.0)) continue;
        std::vector<Vertex> tup(e);
        std::sort(tup.begin(), tup.end());
        do {
            d.joint.atoms.emplace_back(tup, mono / beta);
        } while (std::next_permutation(tup.begin(), tup.end()));
    }
    std::sort(d.joint.atoms.begin(), d.joint.atoms.end());
    return d;
}

TupleDistribution marginal(const OrderedEdgeDistribution& d, int j) {
    if (j < 1 || j > d.graph.r()) throw std::invalid_argument("prefix length out of range");
    if (j == d.graph.r()) return d.joint;
    std::map<std::vector<Vertex>, KahanSum> acc;
    for (const auto& [tup, p] : d.joint.atoms) {
        std::vector<Vertex> prefix(tup.begin(), tup.begin() + j);
        acc[std::move(prefix)].add(p);
    }
    TupleDistribution out{j, {}};
    for (const auto& [tup, s] : acc) out.atoms.emplace_back(tup, s.value());
    return out;
}

TupleDistribution marginal_via_links(const OrderedEdgeDistribution& d, int j) {
    if (j < 1 || j > d.graph.r()) throw std::invalid_argument("prefix length out of range");
    const RGraph& h = d.graph;
    const auto& x = d.weights;
    int r = h.r();

    // ordered j-prefixes with positive mass: ordered tuples over j-subsets of
    // edges whose completion has positive weight
    std::map<std::vector<Vertex>, double> out;
    std::set<std::vector<Vertex>> prefix_sets;
    for (const Edge& e : h.edges()) {
        for_each_combination(r, j, [&](const std::vector<int>& c) {
            std::vector<Vertex> sub(j);
            for (int t = 0; t < j; ++t) sub[t] = e[c[t]];
            prefix_sets.insert(std::move(sub));
        });
    }
    double comp_fact = factorial_d(r - j);
    for (const std::vector<Vertex>& sub : prefix_sets) {
        double xprod = 1.0;
        for (Vertex v : sub) xprod *= x.at(v);
        if (!(xprod > 0.0)) continue;
        // ordered-link sum: completions of the prefix set to an edge
        KahanSum linksum;
        for (const Edge& e : h.edges()) {
            if (!std::includes(e.begin(), e.end(), sub.begin(), sub.end())) continue;
            double p = 1.0;
            for (Vertex v : e) {
                if (!std::binary_search(sub.begin(), sub.end(), v)) p *= x.at(v);
            }
            linksum.add(comp_fact * p);
        }
        if (!(linksum.value() > 0.0)) continue;
        double y = xprod / d.beta * linksum.value();
        std::vector<Vertex> tup(sub);
        std::sort(tup.begin(), tup.end());
        do {
            out[tup] = y;
        } while (std::next_permutation(tup.begin(), tup.end()));
    }
    TupleDistribution dist{j, {}};
    for (const auto& [tup, p] : out) dist.atoms.emplace_back(tup, p);
    return dist;
}

double entropy_bits(const TupleDistribution& dist) {
    KahanSum s;
    for (const auto& [tup, p] : dist.atoms) {
        if (p > 0.0) s.add(-p * log2_safe(p));
    }
    return s.value();
}

GapReport entropy_gap(const OrderedEdgeDistribution& d, int j) {
    if (j < 1 || j > d.graph.r()) throw std::invalid_argument("prefix length out of range");
    int r = d.graph.r();
    double hr = entropy_bits(d.joint);
    double hj = entropy_bits(marginal(d, j));
    GapReport rep;
    rep.lhs = hr - static_cast<double>(r) / j * hj;

    TupleDistribution formula = marginal_via_links(d, j);
    KahanSum corr;
    for (const auto& [tup, y] : formula.atoms) {
        if (!(y > 0.0)) continue;
        double xprod = 1.0;
        for (Vertex v : tup) xprod *= d.weights.at(v);
        corr.add(y * log2_safe(xprod / y));
    }
    rep.rhs = log2_safe(d.beta) - static_cast<double>(r) / j * corr.value();
    rep.residual = std::abs(rep.lhs - rep.rhs);
    return rep;
}

GapBoundReport entropy_gap_bound(const OrderedEdgeDistribution& d, int j) {
    if (j < 1 || j > d.graph.r()) throw std::invalid_argument("prefix length out of range");
    int r = d.graph.r();
    GapBoundReport rep;
    double hr = entropy_bits(d.joint);
    double hj = entropy_bits(marginal(d, j));
    rep.gap = hr - static_cast<double>(r) / j * hj;

    double shadow_poly;
    if (j == r) {
        shadow_poly = d.beta;  // the ordered 0-shadow polynomial is beta itself
    } else {
        RGraph sh = shadow(d.graph, r - j);
        KahanSum s;
        double jfact = factorial_d(j);
        for (const Edge& e : sh.edges()) {
            double p = 1.0;
            for (Vertex v : e) p *= d.weights.at(v);
            s.add(jfact * p);
        }
        shadow_poly = s.value();
    }
    rep.bound = log2_safe(d.beta) - static_cast<double>(r) / j * log2_safe(shadow_poly);
    rep.ok = rep.gap >= rep.bound - 1e-9;
    return rep;
}

OptimalEntropyReport optimal_entropy_identity(const RGraph& h, const MaximizeConfig& cfg) {
    OptResult opt = maximize(h, cfg);
    if (!opt.certified) {
        throw std::runtime_error("optimal_entropy_identity needs a certified optimum");
    }
    OrderedEdgeDistribution d = build_distribution(h, opt.maximizer);
    OptimalEntropyReport rep;
    double hr = entropy_bits(d.joint);
    double h1 = entropy_bits(marginal(d, 1));
    rep.diff = hr - h.r() * h1;
    rep.logbeta = log2_safe(d.beta);
    rep.residual = std::abs(rep.diff - rep.logbeta);
    return rep;
}

std::vector<double> alphas(const OrderedEdgeDistribution& d) {
    int r = d.graph.r();
    // prefix entropies H_0..H_r; H(X_i..X_r) = H_{r-i+1} by exchangeability
    std::vector<double> pre(r + 1, 0.0);
    for (int k = 1; k <= r; ++k) pre[k] = entropy_bits(marginal(d, k));
    double h1 = pre[1];
    std::vector<double> a(r);
    for (int i = 1; i <= r; ++i) {
        a[i - 1] = std::exp2((pre[r - i + 1] - pre[r - i]) - h1);
    }
    return a;
}

AlphaSuperadditivityReport alpha_superadditivity(const std::vector<double>& alpha, double tol) {
    AlphaSuperadditivityReport rep;
    int r = static_cast<int>(alpha.size());
    rep.ok = true;
    for (int i = 1; i <= r; ++i) {
        for (int j = i; i + j <= r; ++j) {
            double v = alpha[i - 1] + alpha[j - 1] - alpha[i + j - 1];
            rep.worst_violation = std::max(rep.worst_violation, v);
            if (v > tol) rep.ok = false;
        }
    }
    if (r >= 1 && std::abs(alpha[r - 1] - 1.0) > tol) rep.ok = false;
    return rep;
}

UniformCheckReport entropy_log_uniform_check(const SimplexVector& x, int r, double tol) {
    if (r < 1) throw std::invalid_argument("r must be positive");
    UniformCheckReport rep;
    double mx = 0.0;
    for (double v : x.values()) mx = std::max(mx, v);
    rep.max_hypothesis = mx <= 1.0 / r + tol;

    KahanSum s;
    for (double v : x.values()) {
        if (v > 0.0) s.add(v * log2_safe(v));
    }
    rep.entropy_hypothesis = std::abs(s.value() + log2_safe(static_cast<double>(r))) <= tol;

    int on = 0;
    bool clean = true;
    for (double v : x.values()) {
        if (std::abs(v - 1.0 / r) <= tol) {
            ++on;
        } else if (v > tol) {
            clean = false;
        }
    }
    rep.conclusion = clean && on == r;

    if (!rep.max_hypothesis || !rep.entropy_hypothesis) {
        rep.verdict = UniformCheckVerdict::NotApplicable;
    } else {
        rep.verdict = rep.conclusion ? UniformCheckVerdict::Holds : UniformCheckVerdict::Violated;
    }
    return rep;
}

}  // namespace mantel
