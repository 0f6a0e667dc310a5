#pragma once

#include "mantel/lagrangian.hpp"
#include "mantel/rgraph.hpp"

namespace mantel {

// A distribution over ordered vertex tuples; atoms sorted lexicographically.
struct TupleDistribution {
    int length = 0;
    std::vector<std::pair<std::vector<Vertex>, double>> atoms;
};

// The random edge with uniform ordering induced by a weight vector:
// P[(X_1..X_r) = (i_1..i_r)] = x_{i_1}...x_{i_r} / beta over ordered edge
// tuples, with beta = r! * P_H(x). Exchangeable by construction.
struct OrderedEdgeDistribution {
    RGraph graph;
    SimplexVector weights;
    double beta = 0.0;
    TupleDistribution joint;
};

// Requires beta > 0; at most 1e6 atoms.
OrderedEdgeDistribution build_distribution(const RGraph& h, const SimplexVector& x);

// Marginal of the first j coordinates by direct summation of joint atoms.
TupleDistribution marginal(const OrderedEdgeDistribution& d, int j);

// The same marginal via the ordered-link formula
//   y_{i_1..i_j} = (x_{i_1}...x_{i_j}/beta) * sum over ordered completions;
// independent code path used for cross-checks.
TupleDistribution marginal_via_links(const OrderedEdgeDistribution& d, int j);

// Shannon entropy in bits; zero-probability atoms are skipped.
double entropy_bits(const TupleDistribution& dist);

struct GapReport {
    double lhs = 0.0;       // H(X_1..X_r) - (r/j) H(X_1..X_j)
    double rhs = 0.0;       // log2 beta - (r/j) sum y log2(xprod/y)
    double residual = 0.0;  // |lhs - rhs|
};

GapReport entropy_gap(const OrderedEdgeDistribution& d, int j);

struct GapBoundReport {
    double gap = 0.0;
    double bound = 0.0;  // log2 beta - (r/j) log2 P_{ordered (r-j)-shadow}(x)
    bool ok = false;
};

GapBoundReport entropy_gap_bound(const OrderedEdgeDistribution& d, int j);

struct OptimalEntropyReport {
    double diff = 0.0;  // H(X_1..X_r) - r H(X_1)
    double logbeta = 0.0;
    double residual = 0.0;
};

// Builds the distribution at a certified maximizer and checks the identity
// H(joint) - r H(X_1) = log2 beta. Throws when maximize fails to certify.
OptimalEntropyReport optimal_entropy_identity(const RGraph& h, const MaximizeConfig& cfg = {});

// alpha_i = 2^{H(X_i | X_{i+1..r}) - H(X_i)}, computed from suffix-joint
// entropies via the chain rule; alpha_r = 1 always.
std::vector<double> alphas(const OrderedEdgeDistribution& d);

struct AlphaSuperadditivityReport {
    bool ok = false;
    double worst_violation = 0.0;  // max over checks of alpha_i+alpha_j-alpha_{i+j}
};

// Checks alpha_i + alpha_j <= alpha_{i+j} <= alpha_r = 1 within tol.
AlphaSuperadditivityReport alpha_superadditivity(const std::vector<double>& alpha,
                                                 double tol = 1e-9);

enum class UniformCheckVerdict { Holds, Violated, NotApplicable };

struct UniformCheckReport {
    bool max_hypothesis = false;      // max_i x_i <= 1/r
    bool entropy_hypothesis = false;  // sum x_i log2 x_i = -log2 r
    bool conclusion = false;          // x is 1/r on exactly r coordinates
    UniformCheckVerdict verdict = UniformCheckVerdict::NotApplicable;
};

UniformCheckReport entropy_log_uniform_check(const SimplexVector& x, int r, double tol = 1e-9);

}  // namespace mantel
