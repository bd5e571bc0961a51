#include "tnet/lsm.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tnet/linalg.hpp"

namespace tnet {

namespace {

// log(1 + exp(x)) without overflow
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
    if (x >= 0.0) {
        const double z = std::exp(-x);
        return 1.0 / (1.0 + z);
    }
    const double z = std::exp(x);
    return z / (1.0 + z);
}

std::vector<char> dense_adjacency(const Graph& g) {
    const int n = g.n();
    std::vector<char> adj(static_cast<size_t>(n) * n, 0);
    for (const auto& [i, j] : g.edges()) {
        adj[static_cast<size_t>(i) * n + j] = 1;
        adj[static_cast<size_t>(j) * n + i] = 1;
    }
    return adj;
}

// positions as flat xy pairs
double ll_flat(const std::vector<char>& adj, int n, double alpha, const double* pos,
               double min_distance) {
    double ll = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = pos[2 * i] - pos[2 * j];
            const double dy = pos[2 * i + 1] - pos[2 * j + 1];
            const double dist = std::max(std::sqrt(dx * dx + dy * dy), min_distance);
            const double eta = alpha - dist;
            if (adj[static_cast<size_t>(i) * n + j])
                ll += eta - softplus(eta);
            else
                ll -= softplus(eta);
        }
    return ll;
}

int grad_flat(const std::vector<char>& adj, int n, double alpha, const double* pos,
              double min_distance, double& d_alpha, double* d_pos) {
    d_alpha = 0.0;
    std::fill(d_pos, d_pos + 2 * n, 0.0);
    int coincident = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = pos[2 * i] - pos[2 * j];
            const double dy = pos[2 * i + 1] - pos[2 * j + 1];
            const double dist = std::sqrt(dx * dx + dy * dy);
            const double aij = adj[static_cast<size_t>(i) * n + j] ? 1.0 : 0.0;
            if (dist < min_distance) {
                // inside the distance floor the likelihood is flat in the
                // positions; only alpha still moves
                ++coincident;
                d_alpha += aij - sigmoid(alpha - min_distance);
                continue;
            }
            const double resid = aij - sigmoid(alpha - dist);
            d_alpha += resid;
            const double coef = -resid / dist;  // d eta / d z_i = -(z_i - z_j)/dist
            d_pos[2 * i] += coef * dx;
            d_pos[2 * i + 1] += coef * dy;
            d_pos[2 * j] -= coef * dx;
            d_pos[2 * j + 1] -= coef * dy;
        }
    return coincident;
}

}  // namespace

double log_likelihood(const Graph& g, const Embedding& e, double min_distance) {
    const int n = g.n();
    if (static_cast<int>(e.positions.size()) != n)
        throw std::invalid_argument("log_likelihood: position count != node count");
    const auto adj = dense_adjacency(g);
    return ll_flat(adj, n, e.alpha, &e.positions[0][0], min_distance);
}

LogLikGradient log_lik_gradient(const Graph& g, const Embedding& e, double min_distance) {
    const int n = g.n();
    if (static_cast<int>(e.positions.size()) != n)
        throw std::invalid_argument("log_lik_gradient: position count != node count");
    const auto adj = dense_adjacency(g);
    LogLikGradient grad;
    grad.d_pos.assign(n, {0.0, 0.0});
    grad.coincident_pairs =
        grad_flat(adj, n, e.alpha, &e.positions[0][0], min_distance, grad.d_alpha,
                  &grad.d_pos[0][0]);
    return grad;
}

std::vector<Point2> mds_init(const Graph& g) {
    const int n = g.n();
    if (n == 1) return {{0.0, 0.0}};
    if (n == 2) return {{0.0, 0.0}, {1.0, 0.0}};

    const auto hops = g.shortest_paths();
    int max_hop = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) max_hop = std::max(max_hop, hops[i][j]);

    SymMatrix dist(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int h = hops[i][j];
            dist.at(i, j) = h >= 0 ? h : max_hop + 1;  // unreachable imputed
        }
    const auto coords = classical_mds(dist, 2);
    std::vector<Point2> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = {coords[i][0], coords[i][1]};
    return pts;
}

Embedding fit_lsm(const Graph& g, const FitConfig& cfg) {
    const int n = g.n();
    if (n < 3) throw std::invalid_argument("fit_lsm: need at least 3 nodes");

    Embedding e;
    e.positions = mds_init(g);
    const auto adj = dense_adjacency(g);

    const double density = g.density();
    if (density <= 0.0 || density >= 1.0) {
        // likelihood unbounded in alpha; report the clamped endpoint
        e.alpha = density <= 0.0 ? -cfg.alpha_max : cfg.alpha_max;
        e.converged = false;
        e.log_lik = ll_flat(adj, n, e.alpha, &e.positions[0][0], cfg.min_distance);
        const auto grad = log_lik_gradient(g, e, cfg.min_distance);
        double gmax = std::abs(grad.d_alpha);
        for (const auto& p : grad.d_pos) gmax = std::max({gmax, std::abs(p[0]), std::abs(p[1])});
        e.final_grad_norm = gmax;
        return e;
    }

    const double pairs = 0.5 * n * (n - 1);
    const double floor_p = 1.0 / (2.0 * pairs);
    const double p0 = std::clamp(density, floor_p, 1.0 - floor_p);
    e.alpha = std::clamp(std::log(p0 / (1.0 - p0)), -cfg.alpha_max, cfg.alpha_max);

    // flat parameter vector [alpha, z_00, z_01, z_10, ...]
    const int dim = 1 + 2 * n;
    std::vector<double> x(dim);
    x[0] = e.alpha;
    for (int i = 0; i < n; ++i) {
        x[1 + 2 * i] = e.positions[i][0];
        x[2 + 2 * i] = e.positions[i][1];
    }

    auto ll_at = [&](const std::vector<double>& v) {
        return ll_flat(adj, n, v[0], v.data() + 1, cfg.min_distance);
    };
    auto grad_at = [&](const std::vector<double>& v, std::vector<double>& out) {
        grad_flat(adj, n, v[0], v.data() + 1, cfg.min_distance, out[0], out.data() + 1);
    };

    // L-BFGS ascent with Armijo backtracking; plain gradient ascent converged
    // too slowly to be usable at n ~ 100
    const int memory = 8;
    std::vector<std::vector<double>> s_hist, y_hist;
    std::vector<double> rho_hist;

    std::vector<double> grad(dim), x_new(dim), grad_new(dim), direction(dim);
    double ll = ll_at(x);
    grad_at(x, grad);

    // stall window: stop when 20 iterations move the likelihood by less than
    // rounding-scale amounts (the kinked distance floor can pin the gradient
    // sup-norm above tol while nothing improves)
    const int window = 20;
    double window_ll = ll;

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        double gmax = 0.0;
        for (const double v : grad) gmax = std::max(gmax, std::abs(v));
        e.final_grad_norm = gmax;
        if (gmax < cfg.tol_grad) {
            e.converged = true;
            break;
        }
        if (iter > 0 && iter % window == 0) {
            if (ll - window_ll < 1e-10 * (1.0 + std::abs(ll))) break;
            window_ll = ll;
        }

        // two-loop recursion on the ascent direction
        direction = grad;
        const int hist = static_cast<int>(s_hist.size());
        std::vector<double> alpha_coeff(hist);
        for (int h = hist - 1; h >= 0; --h) {
            double dot = 0.0;
            for (int t = 0; t < dim; ++t) dot += s_hist[h][t] * direction[t];
            alpha_coeff[h] = rho_hist[h] * dot;
            for (int t = 0; t < dim; ++t) direction[t] -= alpha_coeff[h] * y_hist[h][t];
        }
        if (hist > 0) {
            double sy = 0.0, yy = 0.0;
            for (int t = 0; t < dim; ++t) {
                sy += s_hist[hist - 1][t] * y_hist[hist - 1][t];
                yy += y_hist[hist - 1][t] * y_hist[hist - 1][t];
            }
            if (yy > 0.0 && sy > 0.0)
                for (int t = 0; t < dim; ++t) direction[t] *= sy / yy;
        }
        for (int h = 0; h < hist; ++h) {
            double dot = 0.0;
            for (int t = 0; t < dim; ++t) dot += y_hist[h][t] * direction[t];
            const double beta = rho_hist[h] * dot;
            for (int t = 0; t < dim; ++t) direction[t] += s_hist[h][t] * (alpha_coeff[h] - beta);
        }

        double slope = 0.0;
        for (int t = 0; t < dim; ++t) slope += grad[t] * direction[t];
        if (!(slope > 0.0)) {
            // not an ascent direction: drop the memory, fall back to steepest
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            direction = grad;
            slope = 0.0;
            for (const double v : grad) slope += v * v;
        }

        bool accepted = false;
        double step = 1.0;
        double ll_new = ll;
        for (int ls = 0; ls < 40; ++ls) {
            for (int t = 0; t < dim; ++t) x_new[t] = x[t] + step * direction[t];
            ll_new = ll_at(x_new);
            // strict gain required: near the plateau the Armijo offset
            // underflows and would otherwise accept no-op steps forever
            if (ll_new >= ll + cfg.armijo_c * step * slope && ll_new > ll) {
                accepted = true;
                break;
            }
            step *= cfg.backtrack;
        }
        if (!accepted) break;  // no representable improvement left

        grad_at(x_new, grad_new);
        std::vector<double> s(dim), y(dim);
        double sy = 0.0;
        for (int t = 0; t < dim; ++t) {
            s[t] = x_new[t] - x[t];
            y[t] = grad[t] - grad_new[t];  // minimization convention for -ll
            sy += s[t] * y[t];
        }
        if (sy > 1e-12) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > memory) {
                s_hist.erase(s_hist.begin());
                y_hist.erase(y_hist.begin());
                rho_hist.erase(rho_hist.begin());
            }
        }
        x.swap(x_new);
        grad.swap(grad_new);
        ll = ll_new;
    }

    e.alpha = x[0];
    for (int i = 0; i < n; ++i) e.positions[i] = {x[1 + 2 * i], x[2 + 2 * i]};
    e.log_lik = ll;
    return e;
}

void write_embedding_csv(std::ostream& out, const Embedding& e) {
    out.precision(17);
    out << "alpha=" << e.alpha << ",loglik=" << e.log_lik
        << ",converged=" << (e.converged ? 1 : 0) << '\n';
    for (const auto& p : e.positions) out << p[0] << ',' << p[1] << '\n';
}

Embedding read_embedding_csv(std::istream& in) {
    Embedding e;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_embedding_csv: empty input");
    std::istringstream hs(line);
    std::string field;
    while (std::getline(hs, field, ',')) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw std::runtime_error("read_embedding_csv: bad header");
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        if (key == "alpha")
            e.alpha = std::stod(val);
        else if (key == "loglik")
            e.log_lik = std::stod(val);
        else if (key == "converged")
            e.converged = val == "1";
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string x, y;
        std::getline(ls, x, ',');
        std::getline(ls, y, ',');
        e.positions.push_back({std::stod(x), std::stod(y)});
    }
    return e;
}

}  // namespace tnet
