#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tnet/graph.hpp"
#include "tnet/persistence.hpp"  // Point2

namespace tnet {

struct Embedding {
    double alpha = 0.0;
    std::vector<Point2> positions;
    bool converged = false;
    double final_grad_norm = 0.0;
    double log_lik = 0.0;
};

struct FitConfig {
    double tol_grad = 1e-5;
    int max_iter = 2000;
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    double alpha_max = 30.0;     // clamp for degenerate graphs
    double min_distance = 1e-8;  // pairwise distance floor
};

struct LogLikGradient {
    double d_alpha = 0.0;
    std::vector<Point2> d_pos;
    int coincident_pairs = 0;  // pairs inside the distance floor
};

// log-likelihood of the distance model: sum over pairs of
// A_ij * eta - log(1 + exp(eta)) with eta = alpha - |z_i - z_j|.
double log_likelihood(const Graph& g, const Embedding& e,
                      double min_distance = 1e-8);

LogLikGradient log_lik_gradient(const Graph& g, const Embedding& e,
                                double min_distance = 1e-8);

// Classical MDS of BFS hop distances (unreachable pairs imputed as the
// largest finite hop count + 1) into the plane.
std::vector<Point2> mds_init(const Graph& g);

// Two-stage maximum likelihood: MDS start, then joint gradient ascent on
// (alpha, positions) with backtracking line search. Degenerate graphs
// (density 0 or 1) return immediately with alpha clamped and converged=false.
Embedding fit_lsm(const Graph& g, const FitConfig& cfg = {});

// CSV: header "alpha=<v>,loglik=<v>,converged=<0|1>", then one "x,y" row per
// node.
void write_embedding_csv(std::ostream& out, const Embedding& e);
Embedding read_embedding_csv(std::istream& in);

}  // namespace tnet
