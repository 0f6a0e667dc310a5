#include "mantel/families.hpp"

#include <algorithm>
#include <cstdint>

#include "mantel/iso.hpp"
#include "mantel/util.hpp"

namespace mantel {

namespace {

std::uint64_t mask_of(const Edge& e) {
    std::uint64_t m = 0;
    for (Vertex v : e) {
        if (v < 1 || v > 64) throw scale_guard_error("triple predicates are limited to vertex labels <= 64");
        m |= std::uint64_t(1) << (v - 1);
    }
    return m;
}

void require_same_arity(const Edge& a, const Edge& b, const Edge& c) {
    if (a.size() != b.size() || b.size() != c.size()) {
        throw std::invalid_argument("triple predicates need three r-sets of equal arity");
    }
}

int popcnt(std::uint64_t m) { return __builtin_popcountll(m); }

bool single_T_roles(std::uint64_t A, std::uint64_t B, std::uint64_t C, int r, int i) {
    // Role pattern read off gen_T(r,i) with A = {1..r}:
    //   |A&B| = i, C&A&B = 0, A\B subset of C, |C&(B\A)| = 1, |C\(A|B)| = i-1.
    if (popcnt(A & B) != i) return false;
    if ((C & A & B) != 0) return false;
    std::uint64_t AnotB = A & ~B;
    if ((AnotB & ~C) != 0) return false;
    if (popcnt(C & (B & ~A)) != 1) return false;
    if (popcnt(C & ~(A | B)) != i - 1) return false;
    (void)r;
    return true;
}

}  // namespace

TrianglePattern TrianglePattern::single(int r, int i) {
    if (r < 2) throw std::invalid_argument("pattern uniformity must be >= 2");
    if (i < 1 || i > r - 1) throw std::invalid_argument("pattern index must be in 1..r-1");
    if (i > (r + 1) / 2) i = r - i;  // T_{r,i} and T_{r,r-i} are isomorphic
    return {PatternKind::Single, r, i};
}

TrianglePattern TrianglePattern::parse(const std::string& name) {
    if (name == "delta") return delta();
    if (name == "cfam") return cfam();
    if (name == "tfam") return tfam();
    if (name == "weak") return weak();
    if (name.rfind("t:", 0) == 0) {
        std::size_t colon = name.find(':', 2);
        if (colon != std::string::npos) {
            try {
                int r = std::stoi(name.substr(2, colon - 2));
                int i = std::stoi(name.substr(colon + 1));
                return single(r, i);
            } catch (const std::invalid_argument&) {
            } catch (const std::out_of_range&) {
            }
        }
    }
    throw std::invalid_argument("unknown pattern name: " + name);
}

std::string TrianglePattern::name() const {
    switch (kind) {
        case PatternKind::Delta: return "delta";
        case PatternKind::CFamily: return "cfam";
        case PatternKind::TFamily: return "tfam";
        case PatternKind::Weak: return "weak";
        case PatternKind::Single:
            return "t:" + std::to_string(r) + ":" + std::to_string(i);
    }
    return "?";
}

RGraph gen_T(int r, int i) {
    if (r < 2) throw std::invalid_argument("gen_T needs r >= 2");
    if (i < 1 || i > r - 1) throw std::invalid_argument("gen_T index must be in 1..r-1");
    Edge e1, e2, e3;
    for (int v = 1; v <= r; ++v) e1.push_back(v);
    for (int v = 1; v <= i; ++v) e2.push_back(v);
    for (int v = r + 1; v <= 2 * r - i; ++v) e2.push_back(v);
    for (int v = i + 1; v <= r; ++v) e3.push_back(v);
    e3.push_back(r + 1);
    for (int v = 2 * r - i + 1; v <= 2 * r - 1; ++v) e3.push_back(v);
    return RGraph(2 * r + 1, r, {e1, e2, e3});
}

bool is_C_triple(const Edge& a, const Edge& b, const Edge& c) {
    require_same_arity(a, b, c);
    std::uint64_t A = mask_of(a), B = mask_of(b), C = mask_of(c);
    return ((A ^ B) & ~C) == 0;
}

bool is_T_triple(const Edge& a, const Edge& b, const Edge& c) {
    require_same_arity(a, b, c);
    std::uint64_t A = mask_of(a), B = mask_of(b), C = mask_of(c);
    return (A & ~(B | C)) == 0 && ((B & C) & ~A) != 0;
}

bool is_weak_triple(const Edge& a, const Edge& b, const Edge& c) {
    require_same_arity(a, b, c);
    std::uint64_t A = mask_of(a), B = mask_of(b), C = mask_of(c);
    std::uint64_t diff = A ^ B;
    return 2 * popcnt(C & diff) > popcnt(diff);
}

bool is_single_T_triple(const Edge& a, const Edge& b, const Edge& c, int i) {
    require_same_arity(a, b, c);
    int r = static_cast<int>(a.size());
    if (i < 1 || i > r - 1) throw std::invalid_argument("index must be in 1..r-1");
    std::uint64_t A = mask_of(a), B = mask_of(b), C = mask_of(c);
    if (A == B || B == C || A == C) return false;
    const std::uint64_t m[3] = {A, B, C};
    static constexpr int roles[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& ro : roles) {
        if (single_T_roles(m[ro[0]], m[ro[1]], m[ro[2]], r, i)) return true;
    }
    return false;
}

bool triple_violates(const Edge& a, const Edge& b, const Edge& c, const TrianglePattern& p) {
    if (a == b || b == c || a == c) return false;
    switch (p.kind) {
        case PatternKind::CFamily:
            // condition is symmetric in the first two roles
            return is_C_triple(a, b, c) || is_C_triple(a, c, b) || is_C_triple(b, c, a);
        case PatternKind::TFamily:
            return is_T_triple(a, b, c) || is_T_triple(b, a, c) || is_T_triple(c, a, b);
        case PatternKind::Weak:
            return is_weak_triple(a, b, c) || is_weak_triple(a, c, b) || is_weak_triple(b, c, a);
        case PatternKind::Single:
            return is_single_T_triple(a, b, c, p.i);
        case PatternKind::Delta: {
            int r = static_cast<int>(a.size());
            for (int i = 1; i <= (r + 1) / 2; ++i) {
                if (is_single_T_triple(a, b, c, i)) return true;
            }
            return false;
        }
    }
    return false;
}

FreenessResult is_free(const RGraph& h, const TrianglePattern& p) {
    if (p.r != 0 && p.r != h.r()) throw std::invalid_argument("pattern uniformity mismatch");
    TrianglePattern q = p;
    q.r = h.r();
    const auto& es = h.edges();
    std::size_t m = es.size();
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
            for (std::size_t z = y + 1; z < m; ++z) {
                if (triple_violates(es[x], es[y], es[z], q)) {
                    return {false, {es[x], es[y], es[z]}};
                }
            }
        }
    }
    return {true, {}};
}

bool is_T_free_via_hom(const RGraph& h) {
    if (h.r() < 2) throw std::invalid_argument("T-freeness needs uniformity >= 2");
    for (int i = 1; i <= (h.r() + 1) / 2; ++i) {
        RGraph pattern = drop_isolated(gen_T(h.r(), i));
        if (find_homomorphism(pattern, h)) return false;
    }
    return true;
}

}  // namespace mantel
