#include "mantel/extremal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "mantel/iso.hpp"
#include "mantel/lagrangian.hpp"
#include "mantel/util.hpp"

namespace mantel {

namespace {

std::vector<Edge> potential_edges(int n, int r) {
    std::vector<Edge> pe;
    for_each_combination(n, r, [&](const std::vector<int>& c) {
        Edge e(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) e[i] = c[i] + 1;
        pe.push_back(std::move(e));
    });
    return pe;
}

std::vector<RGraph> dedup_by_isomorphism(std::vector<RGraph> graphs) {
    std::vector<RGraph> reps;
    for (RGraph& g : graphs) {
        bool fresh = true;
        for (const RGraph& rep : reps) {
            if (is_isomorphic(g, rep)) {
                fresh = false;
                break;
            }
        }
        if (fresh) reps.push_back(std::move(g));
    }
    return reps;
}

}  // namespace

RGraph gen_turan(int n, int r) {
    if (n < r) throw std::invalid_argument("Turan graph needs n >= r");
    std::vector<int> sizes(r, n / r);
    for (int i = 0; i < n % r; ++i) ++sizes[i];
    RGraph pattern = RGraph::complete(r, r);  // single edge on r vertices
    return blowup(pattern, sizes);
}

RGraph gen_sts(int k) {
    if (k == 3) return RGraph(3, 3, {{1, 2, 3}});
    if (k == 7) {
        std::vector<Edge> lines;
        for (int s = 0; s < 7; ++s) {
            lines.push_back({s % 7 + 1, (s + 1) % 7 + 1, (s + 3) % 7 + 1});
        }
        return RGraph(7, 3, std::move(lines));
    }
    if (k == 9) {
        // affine plane AG(2,3): point (a,b) -> 3a + b + 1
        std::vector<Edge> lines;
        const int dirs[4][2] = {{0, 1}, {1, 0}, {1, 1}, {1, 2}};
        for (const auto& d : dirs) {
            std::vector<char> used(9, 0);
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    if (used[3 * a + b]) continue;
                    Edge line;
                    for (int t = 0; t < 3; ++t) {
                        int pa = (a + t * d[0]) % 3;
                        int pb = (b + t * d[1]) % 3;
                        used[3 * pa + pb] = 1;
                        line.push_back(3 * pa + pb + 1);
                    }
                    lines.push_back(std::move(line));
                }
            }
        }
        return RGraph(9, 3, std::move(lines));
    }
    throw std::invalid_argument("gen_sts supports k in {3, 7, 9}");
}

namespace {

struct SearchContext {
    std::vector<Edge> pe;
    // for each edge index k: masks of pairs {i, j} with i, j < k such that
    // {pe[i], pe[j], pe[k]} matches the pattern
    std::vector<std::vector<std::uint32_t>> bad_pairs;
    int total = 0;
    int best = -1;
    std::vector<std::uint32_t> best_masks;
    std::uint64_t nodes = 0;
};

void dfs(SearchContext& ctx, int idx, std::uint32_t chosen, int cnt) {
    ++ctx.nodes;
    if (cnt + (ctx.total - idx) < ctx.best) return;
    if (idx == ctx.total) {
        if (cnt > ctx.best) {
            ctx.best = cnt;
            ctx.best_masks.assign(1, chosen);
        } else if (cnt == ctx.best) {
            ctx.best_masks.push_back(chosen);
        }
        return;
    }
    bool can_add = true;
    for (std::uint32_t pm : ctx.bad_pairs[idx]) {
        if ((pm & chosen) == pm) {
            can_add = false;
            break;
        }
    }
    if (can_add) dfs(ctx, idx + 1, chosen | (std::uint32_t(1) << idx), cnt + 1);
    dfs(ctx, idx + 1, chosen, cnt);
}

}  // namespace

ExtremalReport ex_search(int n, int r, const TrianglePattern& pattern, const ExtremalConfig& cfg) {
    if (n < r) throw std::invalid_argument("ex_search needs n >= r");
    TrianglePattern p = pattern;
    if (p.r == 0) p.r = r;
    if (p.r != r) throw std::invalid_argument("pattern uniformity mismatch");

    auto t0 = std::chrono::steady_clock::now();
    ExtremalReport rep;
    rep.n = n;
    rep.r = r;
    rep.pattern = p;

    std::vector<Edge> pe = potential_edges(n, r);
    int total = static_cast<int>(pe.size());

    if (total > 24) {
        if (!cfg.incomplete) {
            throw scale_guard_error(
                "complete search needs C(n,r) <= 24; pass incomplete for a lower bound");
        }
        // greedy lower bound over random edge orders
        std::mt19937_64 rng(cfg.seed);
        std::vector<int> order(total);
        std::iota(order.begin(), order.end(), 0);
        std::vector<Edge> best_set;
        for (int it = 0; it < cfg.heuristic_iters; ++it) {
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<Edge> chosen;
            for (int k : order) {
                bool ok = true;
                for (std::size_t a = 0; a < chosen.size() && ok; ++a) {
                    for (std::size_t b = a + 1; b < chosen.size() && ok; ++b) {
                        if (triple_violates(chosen[a], chosen[b], pe[k], p)) ok = false;
                    }
                }
                if (ok) chosen.push_back(pe[k]);
                ++rep.nodes_explored;
            }
            if (chosen.size() > best_set.size()) best_set = std::move(chosen);
        }
        rep.max_edges = static_cast<int>(best_set.size());
        rep.complete = false;
        rep.witnesses.push_back(RGraph(n, r, std::move(best_set)));
        rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    SearchContext ctx;
    ctx.pe = pe;
    ctx.total = total;
    ctx.bad_pairs.assign(total, {});
    for (int k = 0; k < total; ++k) {
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (triple_violates(pe[i], pe[j], pe[k], p)) {
                    ctx.bad_pairs[k].push_back((std::uint32_t(1) << i) | (std::uint32_t(1) << j));
                }
            }
        }
    }
    dfs(ctx, 0, 0, 0);

    rep.max_edges = ctx.best;
    rep.complete = true;
    rep.nodes_explored = ctx.nodes;
    std::vector<RGraph> leaves;
    for (std::uint32_t mask : ctx.best_masks) {
        std::vector<Edge> es;
        for (int k = 0; k < total; ++k) {
            if (mask >> k & 1) es.push_back(pe[k]);
        }
        leaves.push_back(RGraph(n, r, std::move(es)));
    }
    rep.witnesses = dedup_by_isomorphism(std::move(leaves));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

EdgeBoundReport edge_bound_check(const RGraph& h) {
    EdgeBoundReport rep;
    rep.applicable = is_free(h, TrianglePattern::tfam()).free;
    if (!rep.applicable) return rep;
    long long lhs = static_cast<long long>(h.size()) * ipow_checked(h.r(), h.r());
    long long rhs = ipow_checked(h.n(), h.r());
    rep.ok = lhs <= rhs;
    rep.equality = lhs == rhs;
    if (rep.equality) {
        rep.iso_turan = (h.n() % h.r() == 0) &&
                        is_isomorphic(h, gen_turan(h.n(), h.r())).has_value();
    }
    return rep;
}

SymmetrizationResult symmetrize_decompose(const RGraph& h) {
    int n = h.n();
    std::vector<std::vector<Edge>> links(n + 1);
    for (Vertex v = 1; v <= n; ++v) {
        if (h.r() >= 2) links[v] = link(h, v).edges();
    }
    auto adjacent = [&](Vertex u, Vertex w) {
        for (const Edge& f : links[w]) {
            if (std::binary_search(f.begin(), f.end(), u)) return true;
        }
        return false;
    };

    std::vector<std::vector<Vertex>> classes;
    for (Vertex v = 1; v <= n; ++v) {
        bool placed = false;
        for (auto& cls : classes) {
            Vertex rep = cls.front();
            if (links[v] == links[rep] && !adjacent(v, rep)) {
                cls.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({v});
    }

    int m = static_cast<int>(classes.size());
    std::vector<int> class_of(n + 1, 0);
    for (int c = 0; c < m; ++c) {
        for (Vertex v : classes[c]) class_of[v] = c + 1;
    }
    std::vector<Edge> pes;
    for (const Edge& e : h.edges()) {
        Edge f;
        for (Vertex v : e) f.push_back(class_of[v]);
        pes.push_back(std::move(f));
    }
    SymmetrizationResult res{RGraph(m, h.r(), std::move(pes)), {}, false, classes};
    for (const auto& cls : classes) res.sizes.push_back(static_cast<int>(cls.size()));
    res.is_symmetrized = is_2_covered(res.pattern_graph);
    return res;
}

namespace {

double degree_threshold(int n, int r, double eps) {
    double nr1 = std::pow(static_cast<double>(n), r - 1);
    return nr1 / std::pow(static_cast<double>(r), r - 1) - eps * nr1;
}

ScenarioStatus classify(bool premises, bool conclusion) {
    if (!premises) return ScenarioStatus::Vacuous;
    return conclusion ? ScenarioStatus::Holds : ScenarioStatus::CounterexampleLogged;
}

}  // namespace

StabilityReport degree_stability_check(const RGraph& h, double eps) {
    StabilityReport rep;
    rep.freeness = is_free(h, TrianglePattern::delta());
    rep.pattern_free = rep.freeness.free;
    rep.min_degree = degree_profile(h).min;
    rep.threshold = degree_threshold(h.n(), h.r(), eps);
    rep.degree_ok = rep.min_degree >= rep.threshold - 1e-12;
    rep.r_partite = find_r_partition(h).has_value();
    rep.status = classify(rep.pattern_free && rep.degree_ok, rep.r_partite);
    return rep;
}

ExtendabilityReport vertex_extendability_check(const RGraph& h, Vertex v, double eps) {
    if (v < 1 || v > h.n()) throw std::invalid_argument("vertex out of range");
    ExtendabilityReport rep;
    rep.freeness = is_free(h, TrianglePattern::single(h.r(), 1));
    rep.t1_free = rep.freeness.free;
    rep.min_degree = degree_profile(h).min;
    rep.threshold = degree_threshold(h.n(), h.r(), eps);
    rep.degree_ok = rep.min_degree >= rep.threshold - 1e-12;
    rep.minus_v_partite = find_r_partition(remove_vertex(h, v)).has_value();
    rep.h_partite = find_r_partition(h).has_value();
    rep.status = classify(rep.t1_free && rep.degree_ok && rep.minus_v_partite, rep.h_partite);
    return rep;
}

bool is_sts(const RGraph& s) {
    if (s.r() != 3) throw std::invalid_argument("Steiner triple systems have uniformity 3");
    int n = s.n();
    if (n < 3) return false;
    std::vector<int> cover(static_cast<std::size_t>(n) * n, 0);
    for (const Edge& e : s.edges()) {
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (std::size_t b = a + 1; b < e.size(); ++b) {
                ++cover[static_cast<std::size_t>(e[a] - 1) * n + (e[b] - 1)];
            }
        }
    }
    for (int u = 1; u <= n; ++u) {
        for (int w = u + 1; w <= n; ++w) {
            if (cover[static_cast<std::size_t>(u - 1) * n + (w - 1)] != 1) return false;
        }
    }
    return true;
}

long long count_copies(const RGraph& h, const RGraph& s) {
    if (h.r() != s.r()) throw std::invalid_argument("uniformity mismatch");
    if (s.n() > 12) throw scale_guard_error("count_copies is limited to patterns on <= 12 vertices");
    if (s.n() > h.n()) return 0;
    if (binomial(h.n(), s.n()) > 5'000'000ULL) {
        throw scale_guard_error("count_copies subset space too large");
    }
    long long count = 0;
    for_each_combination(h.n(), s.n(), [&](const std::vector<int>& c) {
        std::vector<Vertex> w(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] + 1;
        if (spans_copy(h, w, s)) ++count;
    });
    return count;
}

RGraph aux_kgraph(const RGraph& h, const RGraph& s) {
    if (h.r() != s.r()) throw std::invalid_argument("uniformity mismatch");
    if (s.n() > 12) throw scale_guard_error("aux_kgraph is limited to patterns on <= 12 vertices");
    if (s.n() > h.n()) return RGraph(h.n(), s.n(), {});
    if (binomial(h.n(), s.n()) > 5'000'000ULL) {
        throw scale_guard_error("aux_kgraph subset space too large");
    }
    std::vector<Edge> edges;
    for_each_combination(h.n(), s.n(), [&](const std::vector<int>& c) {
        std::vector<Vertex> w(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] + 1;
        if (spans_copy(h, w, s)) edges.push_back(w);
    });
    return RGraph(h.n(), s.n(), std::move(edges));
}

bool l_intersect_check(const RGraph& h, const std::vector<int>& l) {
    std::vector<char> allowed(h.r() + 1, 0);
    for (int v : l) {
        if (v < 0 || v > h.r()) throw std::invalid_argument("L entries must lie in 0..r");
        allowed[v] = 1;
    }
    const auto& es = h.edges();
    for (std::size_t a = 0; a < es.size(); ++a) {
        for (std::size_t b = a + 1; b < es.size(); ++b) {
            Edge common;
            std::set_intersection(es[a].begin(), es[a].end(), es[b].begin(), es[b].end(),
                                  std::back_inserter(common));
            if (!allowed[common.size()]) return false;
        }
    }
    return true;
}

namespace {

// Bron-Kerbosch with pivoting over the edge-compatibility graph.
void bron_kerbosch(const std::vector<std::uint64_t>& adj, std::uint64_t r_set,
                   std::uint64_t p_set, std::uint64_t x_set,
                   std::vector<std::uint64_t>& out, std::size_t cap) {
    if (out.size() > cap) throw scale_guard_error("survey: too many maximal graphs");
    if (p_set == 0 && x_set == 0) {
        out.push_back(r_set);
        return;
    }
    std::uint64_t px = p_set | x_set;
    int pivot = __builtin_ctzll(px);
    int best_cnt = -1;
    std::uint64_t iter = px;
    while (iter) {
        int u = __builtin_ctzll(iter);
        iter &= iter - 1;
        int cnt = __builtin_popcountll(p_set & adj[u]);
        if (cnt > best_cnt) {
            best_cnt = cnt;
            pivot = u;
        }
    }
    std::uint64_t cand = p_set & ~adj[pivot];
    while (cand) {
        int v = __builtin_ctzll(cand);
        cand &= cand - 1;
        std::uint64_t vb = std::uint64_t(1) << v;
        bron_kerbosch(adj, r_set | vb, p_set & adj[v], x_set & adj[v], out, cap);
        p_set &= ~vb;
        x_set |= vb;
    }
}

}  // namespace

SurveyReport l_intersect_lagrangian_survey(int r, const std::vector<int>& l, int n_max) {
    if (r < 2) throw std::invalid_argument("survey needs r >= 2");
    if (n_max < r) throw std::invalid_argument("survey needs n_max >= r");
    if (n_max > 14) throw scale_guard_error("survey: exact maximization is limited to n_max <= 14");
    std::vector<Edge> pe = potential_edges(n_max, r);
    if (pe.size() > 40) throw scale_guard_error("survey: C(n_max, r) must be <= 40");

    std::vector<char> allowed(r + 1, 0);
    for (int v : l) {
        if (v < 0 || v > r) throw std::invalid_argument("L entries must lie in 0..r");
        allowed[v] = 1;
    }

    int total = static_cast<int>(pe.size());
    std::vector<std::uint64_t> adj(total, 0);
    for (int a = 0; a < total; ++a) {
        for (int b = a + 1; b < total; ++b) {
            Edge common;
            std::set_intersection(pe[a].begin(), pe[a].end(), pe[b].begin(), pe[b].end(),
                                  std::back_inserter(common));
            if (allowed[common.size()]) {
                adj[a] |= std::uint64_t(1) << b;
                adj[b] |= std::uint64_t(1) << a;
            }
        }
    }

    std::vector<std::uint64_t> cliques;
    bron_kerbosch(adj, 0, total >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << total) - 1, 0,
                  cliques, 200000);

    SurveyReport rep;
    rep.r = r;
    rep.l = l;
    rep.n_max = n_max;
    rep.best_value = 0.0;
    std::vector<RGraph> best_graphs;
    MaximizeConfig mcfg;
    mcfg.restarts = 10;
    for (std::uint64_t cm : cliques) {
        std::vector<Edge> es;
        for (int k = 0; k < total; ++k) {
            if (cm >> k & 1) es.push_back(pe[k]);
        }
        if (es.empty()) continue;
        RGraph g(n_max, r, std::move(es));
        OptResult opt = maximize(g, mcfg);
        ++rep.graphs_evaluated;
        if (opt.value > rep.best_value + 1e-12) {
            rep.best_value = opt.value;
            best_graphs.assign(1, g);
        } else if (opt.value >= rep.best_value - 1e-12) {
            best_graphs.push_back(g);
        }
    }
    rep.witnesses = dedup_by_isomorphism(std::move(best_graphs));
    rep.matches_one_over_rr =
        std::abs(rep.best_value - std::pow(1.0 / r, r)) <= 1e-9;
    return rep;
}

}  // namespace mantel
