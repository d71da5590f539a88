#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace eqtk {

/// Q(x_1, ..., x_n, y) = x_1^2 + ... + x_n^2 - y^2 on R^{n+1}.
double lorentz_form(const Eigen::VectorXd& p);

/// Geodesic flow block diag(I_{n-1}, [[cosh t, sinh t], [sinh t, cosh t]]), size (n+1) x (n+1).
Eigen::MatrixXd a_t_matrix(std::size_t n, double t);

/// Horospherical element u_v for v in R^{n-1}; size (n+1) x (n+1).
Eigen::MatrixXd u_v_matrix(const Eigen::VectorXd& v);

/// max |g^T diag(1, ..., 1, -1) g - diag(1, ..., 1, -1)|, relative to max(1, |g|^2).
double lorentz_defect(const Eigen::MatrixXd& g);

/// Hyperboloid {Q = -1, y > 0} to the upper half-space model; throws DomainError off the sheet.
Eigen::VectorXd hyperboloid_to_halfspace(const Eigen::VectorXd& p, double tolerance = 1e-12);

/// Closed form of the image of a_t u_v (0, ..., 0, 1) in the upper half-space.
Eigen::VectorXd sheared_orbit_point(double t, const Eigen::VectorXd& v);

/// Same point computed by applying the matrices and the hyperboloid map.
Eigen::VectorXd sheared_orbit_point_by_action(double t, const Eigen::VectorXd& v);

struct ShearGridReport {
    std::size_t cells = 0;
    double max_difference = 0;  // closed form vs matrix action, sup norm
    double max_lorentz_defect = 0;
};

/// (t, v) grid with v = s * direction: t in [t_lo, t_hi], s in [s_lo, s_hi], `steps` points per axis.
ShearGridReport shear_grid_check(const Eigen::VectorXd& direction, double t_lo, double t_hi, double s_lo,
                                 double s_hi, std::size_t steps, unsigned threads = 1);

struct ShearConfig {
    std::size_t n = 2;
    Eigen::VectorXd v;  // length n - 1, nonzero
    double lambda = 1;
    std::vector<double> k_list;

    void validate() const;
};

struct ShearRow {
    double k = 0;
    double norm_vk = 0;
    double t_k = 0;
    double deviation = 0;  // ||u_{-v^k} a_{t_k} u_{v^k} - u_{lambda v^k/|v^k|}||_F
};

struct ShearReport {
    std::vector<ShearRow> rows;
    bool decreasing = false;  // each deviation below the previous one
};

ShearReport conjugation_limit_check(const ShearConfig& cfg);

}  // namespace eqtk
