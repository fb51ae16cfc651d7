#pragma once

// Composite Gauss-Legendre grid on t in [0, 1) with panels shrinking geometrically toward
// t = 1, and spectral cumulative integration t -> int_0^t f.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace mould::quad {

struct GaussLegendre {
    std::vector<double> nodes, weights;  // on [-1, 1], ascending
};

GaussLegendre gauss_legendre(int n);

// Q(i, j) = int_{-1}^{x_i} l_j(x) dx for the Lagrange basis l_j on the Gauss nodes.
Eigen::MatrixXd cumulative_matrix(const GaussLegendre& g);

class SegmentGrid {
public:
    // Panels [0,1/4], [1/4,1/2], then [1-2^-k, 1-2^-(k+1)] for k = 1..geometric_panels.
    SegmentGrid(int nodes_per_panel, int geometric_panels);

    std::size_t size() const { return t_.size(); }
    const std::vector<double>& t() const { return t_; }
    // 1 - t, kept to full relative precision near t = 1
    const std::vector<double>& s() const { return s_; }
    double end() const { return 1.0 - end_gap_; }
    double end_gap() const { return end_gap_; }

    // out(i) = int_0^{t_i} f dt from samples of f at the nodes; returns int_0^{end} f dt.
    std::complex<double> cumulative(const Eigen::VectorXcd& f, Eigen::VectorXcd& out) const;

private:
    struct Panel {
        std::size_t first;
        double half_width;
    };
    int n_;
    GaussLegendre gl_;
    Eigen::MatrixXcd q_;
    std::vector<Panel> panels_;
    std::vector<double> t_, s_;
    double end_gap_ = 0;
};

}  // namespace mould::quad
