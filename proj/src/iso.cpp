#include "mantel/iso.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_set>

#include "mantel/util.hpp"

namespace mantel {

namespace {

constexpr int kMaskLimit = 64;

void require_mask_scale(const RGraph& g) {
    if (g.n() > kMaskLimit) {
        throw scale_guard_error("structural solvers are limited to 64 vertices");
    }
}

std::uint64_t edge_mask(const Edge& e) {
    std::uint64_t m = 0;
    for (Vertex v : e) m |= std::uint64_t(1) << (v - 1);
    return m;
}

// Vertex order that keeps the partial map connected: next vertex is the one
// touching the most already-ordered vertices, ties by degree then index.
std::vector<Vertex> connected_order(const RGraph& g, bool skip_isolated) {
    std::vector<Vertex> order;
    std::vector<char> placed(g.n() + 1, 0);
    int total = 0;
    for (Vertex v = 1; v <= g.n(); ++v) {
        if (!skip_isolated || g.degree(v) > 0) ++total;
    }
    while (static_cast<int>(order.size()) < total) {
        Vertex best = 0;
        long best_touch = -1, best_deg = -1;
        for (Vertex v = 1; v <= g.n(); ++v) {
            if (placed[v]) continue;
            if (skip_isolated && g.degree(v) == 0) continue;
            long touch = 0;
            for (const Edge& e : g.edges()) {
                if (!std::binary_search(e.begin(), e.end(), v)) continue;
                for (Vertex u : e) {
                    if (placed[u]) ++touch;
                }
            }
            long deg = g.degree(v);
            if (touch > best_touch || (touch == best_touch && deg > best_deg)) {
                best = v;
                best_touch = touch;
                best_deg = deg;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

struct EdgeState {
    std::uint64_t img = 0;
    int assigned = 0;
};

class MapSearch {
public:
    MapSearch(const RGraph& g, const RGraph& h, bool injective)
        : g_(g), h_(h), injective_(injective) {
        require_mask_scale(g);
        require_mask_scale(h);
        for (const Edge& e : h.edges()) {
            hmasks_.push_back(edge_mask(e));
            hset_.insert(hmasks_.back());
        }
        states_.resize(g.size());
        edges_of_.assign(g.n() + 1, {});
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (Vertex v : g.edges()[i]) edges_of_[v].push_back(static_cast<int>(i));
        }
        map_.assign(g.n() + 1, 0);
        used_ = 0;
    }

    // Vertices in no edge of g are unconstrained; they are mapped afterwards.
    std::optional<std::vector<Vertex>> run(const std::vector<Vertex>& order) {
        if (search(order, 0)) {
            std::vector<Vertex> out(g_.n());
            finish_unconstrained();
            for (Vertex v = 1; v <= g_.n(); ++v) out[v - 1] = map_[v];
            return out;
        }
        return std::nullopt;
    }

private:
    bool candidate_ok(Vertex u, Vertex w) {
        if (injective_ && (used_ >> (w - 1) & 1)) return false;
        if (injective_ && g_.degree(u) != h_.degree(w)) return false;
        std::uint64_t wbit = std::uint64_t(1) << (w - 1);
        for (int ei : edges_of_[u]) {
            const EdgeState& st = states_[ei];
            if (st.img & wbit) return false;  // edge image must have r distinct vertices
            std::uint64_t img = st.img | wbit;
            if (st.assigned + 1 == g_.r()) {
                if (!hset_.count(img)) return false;
            } else {
                bool extendable = false;
                for (std::uint64_t hm : hmasks_) {
                    if ((img & hm) == img) {
                        extendable = true;
                        break;
                    }
                }
                if (!extendable) return false;
            }
        }
        return true;
    }

    bool search(const std::vector<Vertex>& order, std::size_t pos) {
        if (pos == order.size()) return true;
        Vertex u = order[pos];
        for (Vertex w = 1; w <= h_.n(); ++w) {
            if (!candidate_ok(u, w)) continue;
            assign(u, w);
            if (search(order, pos + 1)) return true;
            unassign(u, w);
        }
        return false;
    }

    void assign(Vertex u, Vertex w) {
        map_[u] = w;
        used_ |= std::uint64_t(1) << (w - 1);
        for (int ei : edges_of_[u]) {
            states_[ei].img |= std::uint64_t(1) << (w - 1);
            ++states_[ei].assigned;
        }
    }

    void unassign(Vertex u, Vertex w) {
        map_[u] = 0;
        used_ &= ~(std::uint64_t(1) << (w - 1));
        for (int ei : edges_of_[u]) {
            states_[ei].img &= ~(std::uint64_t(1) << (w - 1));
            --states_[ei].assigned;
        }
    }

    void finish_unconstrained() {
        for (Vertex v = 1; v <= g_.n(); ++v) {
            if (map_[v] != 0) continue;
            if (injective_) {
                for (Vertex w = 1; w <= h_.n(); ++w) {
                    if (!(used_ >> (w - 1) & 1) && g_.degree(v) == h_.degree(w)) {
                        map_[v] = w;
                        used_ |= std::uint64_t(1) << (w - 1);
                        break;
                    }
                }
            } else {
                map_[v] = 1;  // any vertex works, h is nonempty here
            }
        }
    }

    const RGraph& g_;
    const RGraph& h_;
    bool injective_;
    std::vector<std::uint64_t> hmasks_;
    std::unordered_set<std::uint64_t> hset_;
    std::vector<EdgeState> states_;
    std::vector<std::vector<int>> edges_of_;
    std::vector<Vertex> map_;
    std::uint64_t used_;
};

}  // namespace

std::optional<std::vector<Vertex>> is_isomorphic(const RGraph& g, const RGraph& h) {
    if (g.n() != h.n() || g.r() != h.r() || g.size() != h.size()) return std::nullopt;
    std::vector<int> dg, dh;
    for (Vertex v = 1; v <= g.n(); ++v) dg.push_back(g.degree(v));
    for (Vertex v = 1; v <= h.n(); ++v) dh.push_back(h.degree(v));
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return std::nullopt;
    if (g.n() == 0) return std::vector<Vertex>{};

    MapSearch search(g, h, /*injective=*/true);
    return search.run(connected_order(g, /*skip_isolated=*/true));
}

std::optional<std::vector<Vertex>> find_homomorphism(const RGraph& g, const RGraph& h) {
    if (g.r() != h.r()) throw std::invalid_argument("uniformity mismatch");
    if (g.n() == 0) return std::vector<Vertex>{};
    if (h.n() == 0) return std::nullopt;
    if (g.size() > 0 && h.size() == 0) return std::nullopt;

    MapSearch search(g, h, /*injective=*/false);
    return search.run(connected_order(g, /*skip_isolated=*/true));
}

namespace {

// Proper coloring with at most r colors of the conflict graph whose edges are
// vertex pairs sharing a hyperedge; equivalent to transversal r-partiteness.
bool color_search(const std::vector<std::uint64_t>& adj, const std::vector<Vertex>& order,
                  std::size_t pos, int r, std::vector<int>& color, int used) {
    if (pos == order.size()) return true;
    Vertex v = order[pos];
    int limit = std::min(r, used + 1);
    for (int c = 1; c <= limit; ++c) {
        bool clash = false;
        std::uint64_t a = adj[v];
        while (a) {
            int u = __builtin_ctzll(a) + 1;
            a &= a - 1;
            if (color[u] == c) {
                clash = true;
                break;
            }
        }
        if (clash) continue;
        color[v] = c;
        if (color_search(adj, order, pos + 1, r, color, std::max(used, c))) return true;
        color[v] = 0;
    }
    return false;
}

}  // namespace

std::optional<Partition> find_r_partition(const RGraph& h) {
    require_mask_scale(h);
    std::vector<std::uint64_t> adj(h.n() + 1, 0);
    for (const Edge& e : h.edges()) {
        std::uint64_t m = edge_mask(e);
        for (Vertex v : e) adj[v] |= m & ~(std::uint64_t(1) << (v - 1));
    }

    std::vector<Vertex> order;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (adj[v] != 0) order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        int da = __builtin_popcountll(adj[a]), db = __builtin_popcountll(adj[b]);
        return da != db ? da > db : a < b;
    });

    std::vector<int> color(h.n() + 1, 0);
    if (!color_search(adj, order, 0, h.r(), color, 0)) return std::nullopt;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (color[v] == 0) color[v] = 1;  // vertices in no edge go to the first part
    }

    Partition p;
    p.parts.assign(h.r(), {});
    for (Vertex v = 1; v <= h.n(); ++v) p.parts[color[v] - 1].push_back(v);
    std::erase_if(p.parts, [](const std::vector<Vertex>& part) { return part.empty(); });

    // re-validate transversality
    for (const Edge& e : h.edges()) {
        std::uint64_t seen = 0;
        for (Vertex v : e) {
            if (seen >> color[v] & 1) throw std::logic_error("partition violates an edge");
            seen |= std::uint64_t(1) << color[v];
        }
    }
    return p;
}

bool spans_copy(const RGraph& h, const std::vector<Vertex>& subset, const RGraph& s) {
    if (h.r() != s.r()) throw std::invalid_argument("uniformity mismatch");
    require_mask_scale(h);
    if (static_cast<int>(subset.size()) != s.n()) return false;

    std::uint64_t wmask = 0;
    for (Vertex v : subset) wmask |= std::uint64_t(1) << (v - 1);

    std::vector<Edge> inside;
    for (const Edge& e : h.edges()) {
        if ((edge_mask(e) & ~wmask) == 0) inside.push_back(e);
    }
    if (inside.size() < s.size()) return false;
    RGraph restricted(h.n(), h.r(), std::move(inside));

    // Relabel the subset to 1..k and search for an injective map of s onto it.
    std::vector<int> relabel(h.n() + 1, 0);
    for (std::size_t i = 0; i < subset.size(); ++i) relabel[subset[i]] = static_cast<int>(i) + 1;
    std::vector<Edge> redges;
    for (const Edge& e : restricted.edges()) {
        Edge f(e);
        for (Vertex& v : f) v = relabel[v];
        redges.push_back(std::move(f));
    }
    RGraph target(static_cast<int>(subset.size()), h.r(), std::move(redges));

    if (s.size() == 0) return true;

    // Degrees in the target may exceed degrees in s (subgraph, not induced),
    // so the injective iso search is not applicable; run a hom search and
    // check injectivity afterwards for each found map. Simpler: backtrack
    // with a used-set, targets 1..k.
    std::vector<Vertex> order;
    for (Vertex v = 1; v <= s.n(); ++v) order.push_back(v);
    std::sort(order.begin(), order.end(),
              [&](Vertex a, Vertex b) { return s.degree(a) > s.degree(b); });

    std::vector<std::uint64_t> tmasks;
    for (const Edge& e : target.edges()) tmasks.push_back(edge_mask(e));
    std::unordered_set<std::uint64_t> tset(tmasks.begin(), tmasks.end());

    std::vector<std::vector<int>> edges_of(s.n() + 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (Vertex v : s.edges()[i]) edges_of[v].push_back(static_cast<int>(i));
    }
    std::vector<std::uint64_t> img(s.size(), 0);
    std::vector<int> filled(s.size(), 0);
    std::vector<int> map(s.n() + 1, 0);
    std::uint64_t used = 0;

    std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        Vertex u = order[pos];
        for (int w = 1; w <= target.n(); ++w) {
            std::uint64_t wbit = std::uint64_t(1) << (w - 1);
            if (used & wbit) continue;
            bool ok = true;
            for (int ei : edges_of[u]) {
                std::uint64_t m = img[ei] | wbit;
                if (filled[ei] + 1 == s.r()) {
                    if (!tset.count(m)) {
                        ok = false;
                        break;
                    }
                } else {
                    bool ext = false;
                    for (std::uint64_t tm : tmasks) {
                        if ((m & tm) == m) {
                            ext = true;
                            break;
                        }
                    }
                    if (!ext) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            map[u] = w;
            used |= wbit;
            for (int ei : edges_of[u]) {
                img[ei] |= wbit;
                ++filled[ei];
            }
            if (rec(pos + 1)) return true;
            map[u] = 0;
            used &= ~wbit;
            for (int ei : edges_of[u]) {
                img[ei] &= ~wbit;
                --filled[ei];
            }
        }
        return false;
    };
    return rec(0);
}

}  // namespace mantel
