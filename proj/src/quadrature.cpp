#include "mould/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mould::quad {

namespace {

// P_0..P_{n} at x
std::vector<double> legendre_values(int n, double x) {
    std::vector<double> p(n + 1);
    p[0] = 1;
    if (n >= 1) p[1] = x;
    for (int k = 2; k <= n; ++k) p[k] = ((2 * k - 1) * x * p[k - 1] - (k - 1) * p[k - 2]) / k;
    return p;
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussLegendre g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like guess; roots come out descending, store ascending
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            auto p = legendre_values(n, x);
            dp = n * (x * p[n] - p[n - 1]) / (x * x - 1);
            double dx = p[n] / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        auto p = legendre_values(n, x);
        dp = n * (x * p[n] - p[n - 1]) / (x * x - 1);
        g.nodes[n - 1 - i] = x;
        g.weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
    }
    return g;
}

Eigen::MatrixXd cumulative_matrix(const GaussLegendre& g) {
    const int n = static_cast<int>(g.nodes.size());
    Eigen::MatrixXd v(n, n), w(n, n);
    for (int i = 0; i < n; ++i) {
        double x = g.nodes[i];
        auto p = legendre_values(n, x);
        for (int j = 0; j < n; ++j) {
            v(i, j) = p[j];
            // int_{-1}^x P_j = (P_{j+1} - P_{j-1}) / (2j + 1), and x + 1 for j = 0
            w(i, j) = j == 0 ? x + 1 : (p[j + 1] - p[j - 1]) / (2 * j + 1);
        }
    }
    // samples -> Legendre coefficients -> cumulative integrals at the nodes
    return w * v.partialPivLu().inverse();
}

SegmentGrid::SegmentGrid(int nodes_per_panel, int geometric_panels)
    : n_(nodes_per_panel), gl_(gauss_legendre(nodes_per_panel)), q_(cumulative_matrix(gl_).cast<std::complex<double>>()) {
    if (geometric_panels < 1) throw std::invalid_argument("SegmentGrid: need at least one geometric panel");
    // panels given by their s = 1 - t range [s_hi, s_lo]
    std::vector<std::pair<double, double>> ranges{{1.0, 0.75}, {0.75, 0.5}};
    double s_hi = 0.5;
    for (int k = 1; k <= geometric_panels; ++k) {
        ranges.emplace_back(s_hi, s_hi / 2);
        s_hi /= 2;
    }
    end_gap_ = s_hi;
    for (const auto& [hi, lo] : ranges) {
        panels_.push_back({t_.size(), (hi - lo) / 2});
        for (int j = 0; j < n_; ++j) {
            double s = hi - (hi - lo) * (gl_.nodes[j] + 1) / 2;
            s_.push_back(s);
            t_.push_back(1.0 - s);
        }
    }
}

std::complex<double> SegmentGrid::cumulative(const Eigen::VectorXcd& f, Eigen::VectorXcd& out) const {
    out.resize(static_cast<Eigen::Index>(t_.size()));
    std::complex<double> acc = 0;
    for (const auto& p : panels_) {
        auto seg = f.segment(static_cast<Eigen::Index>(p.first), n_);
        out.segment(static_cast<Eigen::Index>(p.first), n_) =
            (q_ * seg * p.half_width).array() + acc;
        std::complex<double> total = 0;
        for (int j = 0; j < n_; ++j) total += gl_.weights[j] * seg(j);
        acc += total * p.half_width;
    }
    return acc;
}

}  // namespace mould::quad
