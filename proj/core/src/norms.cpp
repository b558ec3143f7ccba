#include "paraprod/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace paraprod {

Rat moment(int n, int alpha) {
    if (n < 0) throw std::invalid_argument("moment: n must be >= 0");
    if (alpha == -1) return Rat(1);
    if (alpha < -1) throw std::invalid_argument("moment: alpha must be an integer >= -1");
    // (alpha+1)! n! / (n+alpha+1)!  ==  prod_{i=1..n} i / (alpha+1+i)
    Rat m = 1;
    for (int i = 1; i <= n; ++i) m *= Rat(i, alpha + 1 + i);
    return m;
}

namespace {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Radial panel edges in t = r^2: [0, 1/2], then geometric refinement toward 1.
std::vector<double> panel_edges(int levels) {
    std::vector<double> e;
    e.push_back(0.0);
    for (int j = 1; j <= levels; ++j) e.push_back(1.0 - std::pow(2.0, -j));
    e.push_back(1.0);
    return e;
}

double angular_mean_p(const PointFn& f, double r, double p, int K) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) {
        double th = 2.0 * std::numbers::pi * k / K;
        s += std::pow(std::abs(f(Cplx(r * std::cos(th), r * std::sin(th)))), p);
    }
    return s / K;
}

} // namespace

double bergman_norm_fn(const PointFn& f, double alpha, double p, const QuadConfig& cfg) {
    if (alpha <= -1.0) throw std::invalid_argument("bergman_norm: alpha must be > -1");
    std::vector<double> xs, ws;
    gauss_legendre(std::max(cfg.radial_nodes, 8), xs, ws);
    const int K = std::max(cfg.angular_nodes, 8);
    double total = 0.0;
    auto edges = panel_edges(cfg.boundary_levels);
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        double a = edges[e], b = edges[e + 1];
        for (size_t i = 0; i < xs.size(); ++i) {
            double t = 0.5 * (b - a) * xs[i] + 0.5 * (a + b);
            double w = 0.5 * (b - a) * ws[i];
            total += w * std::pow(1.0 - t, alpha) * angular_mean_p(f, std::sqrt(t), p, K);
        }
    }
    return std::pow((alpha + 1.0) * total, 1.0 / p);
}

double bergman_norm(const CSeries& f, double alpha, double p, const QuadConfig& cfg) {
    return bergman_norm_fn([&f](Cplx z) { return series_eval(f, z); }, alpha, p, cfg);
}

double hardy_norm_fn(const PointFn& f, double p, int K) {
    return std::pow(angular_mean_p(f, 1.0, p, std::max(K, 8)), 1.0 / p);
}

double hardy_norm(const CSeries& f, double p, int K) {
    return hardy_norm_fn([&f](Cplx z) { return series_eval(f, z); }, p, K);
}

double bloch_seminorm_fn(const PointFn& f_deriv, std::span<const Cplx> grid) {
    double best = 0.0;
    for (Cplx z : grid) best = std::max(best, (1.0 - std::norm(z)) * std::abs(f_deriv(z)));
    return best;
}

double bloch_seminorm(const CSeries& f, std::span<const Cplx> grid) {
    return bloch_seminorm_fn([&f](Cplx z) { return series_eval_deriv(f, z); }, grid);
}

double sup_norm(const CSeries& f, std::span<const Cplx> grid) {
    double best = 0.0;
    for (Cplx z : grid) best = std::max(best, std::abs(series_eval(f, z)));
    return best;
}

double garsia_bmoa(const CSeries& f, std::span<const Cplx> a_grid, int K) {
    K = std::max(K, 2 * (f.order() + 1));
    std::vector<double> f2(K);
    std::vector<Cplx> circle(K);
    for (int k = 0; k < K; ++k) {
        double th = 2.0 * std::numbers::pi * k / K;
        circle[k] = Cplx(std::cos(th), std::sin(th));
        f2[k] = std::norm(series_eval(f, circle[k]));
    }
    double best = 0.0;
    for (Cplx a : a_grid) {
        double s = 0.0;
        double one_m = 1.0 - std::norm(a);
        for (int k = 0; k < K; ++k) s += f2[k] * one_m / std::norm(1.0 - std::conj(a) * circle[k]);
        double val = s / K - std::norm(series_eval(f, a));
        best = std::max(best, val);
    }
    return std::sqrt(std::max(best, 0.0));
}

std::vector<Cplx> boundary_ladder_grid(int levels, int rays) {
    std::vector<Cplx> g;
    g.push_back(0.0);
    for (int j = 1; j <= levels; ++j) {
        double r = 1.0 - std::pow(10.0, -j);
        for (int q = 0; q < rays; ++q) {
            double th = 2.0 * std::numbers::pi * q / rays;
            g.push_back(Cplx(r * std::cos(th), r * std::sin(th)));
        }
    }
    return g;
}

OperatorMatrix operator_matrix(const ExprPtr& e, const Poly& g, int alpha, int n_columns) {
    if (n_columns < 1) throw std::invalid_argument("operator_matrix: need at least one column");
    // Exact column images first; the matrix is column-finite for polynomial g,
    // with bandwidth at most letter-count * deg g for plain letter words.
    std::vector<Poly> images(n_columns);
    int max_deg = n_columns - 1;
    for (int j = 0; j < n_columns; ++j) {
        images[j] = evaluate_exact(e, Poly::monomial(Scalar(1), j), g);
        max_deg = std::max(max_deg, images[j].degree());
    }

    OperatorMatrix m;
    m.alpha = alpha;
    m.cols = n_columns;
    m.rows = max_deg + 1;
    m.a.assign(static_cast<size_t>(m.rows) * m.cols, Cplx(0.0));

    // sqrt-moments for the orthonormal basis e_n = z^n / sqrt(m_n)
    std::vector<double> sm(m.rows);
    for (int i = 0; i < m.rows; ++i) sm[i] = std::sqrt(static_cast<double>(moment(i, alpha)));

    for (int j = 0; j < n_columns; ++j) {
        for (int i = 0; i <= images[j].degree(); ++i) {
            Scalar c = images[j].coeff(i);
            if (c.is_zero()) continue;
            m.at(i, j) = c.to_complex() * (sm[i] / sm[j]);
        }
    }
    return m;
}

double operator_norm_trunc(const OperatorMatrix& m, double tol, int max_iterations) {
    const int n = m.cols, rows = m.rows;
    std::vector<Cplx> v(n), av(rows), w(n);
    for (int i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * i; // deterministic, non-degenerate start
    double nv = 0.0;
    for (auto& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;

    double sigma2 = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        // w = A^H (A v)
        std::fill(av.begin(), av.end(), Cplx(0.0));
        for (int j = 0; j < n; ++j) {
            if (v[j] == Cplx(0.0)) continue;
            const Cplx* col = &m.a[static_cast<size_t>(j) * rows];
            for (int i = 0; i < rows; ++i) av[i] += col[i] * v[j];
        }
        for (int j = 0; j < n; ++j) {
            const Cplx* col = &m.a[static_cast<size_t>(j) * rows];
            Cplx s = 0.0;
            for (int i = 0; i < rows; ++i) s += std::conj(col[i]) * av[i];
            w[j] = s;
        }
        double lambda = 0.0;
        for (int j = 0; j < n; ++j) lambda += (std::conj(v[j]) * w[j]).real();
        double nw = 0.0;
        for (const auto& x : w) nw += std::norm(x);
        nw = std::sqrt(nw);
        if (nw == 0.0) return 0.0; // zero operator
        for (int j = 0; j < n; ++j) v[j] = w[j] / nw;
        if (it > 0 && std::abs(lambda - sigma2) <= tol * std::max(lambda, 1e-300)) {
            sigma2 = lambda;
            return std::sqrt(std::max(sigma2, 0.0));
        }
        sigma2 = lambda;
    }
    throw PowerIterationError("operator_norm_trunc: power iteration did not converge");
}

} // namespace paraprod
