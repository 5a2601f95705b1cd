#pragma once

namespace divlab::tol {

// Scale-relative predicate tolerances. Matrix predicates multiply these by
// the Frobenius norm (or the largest eigenvalue) of the operand so that the
// predicates stay meaningful across magnitudes.
inline constexpr double herm_rel = 1e-10;     // hermiticity, x ||M||_F
inline constexpr double psd_rel = 1e-9;       // PSD slack, x ||M||_F
inline constexpr double support_rel = 1e-9;   // support cut, x lambda_max
inline constexpr double eig_rel = 1e-9;       // eigh reconstruction, x ||M||_F
inline constexpr double comm_rel = 1e-8;      // commutator norm, x max ||rho_k||_F

inline constexpr double norm_tol = 1e-9;      // norm-vector equality
inline constexpr double param_tol = 1e-9;     // simplex/zero-sum parameter sums
inline constexpr double denom_tol = 1e-9;     // reference normalization denominators
inline constexpr double dpi_tol = 1e-7;       // data-processing slack
inline constexpr double strict_tol = 1e-9;    // large-sample strictness margin
inline constexpr double class_tol = 1e-6;     // half-mixture probe buckets

inline constexpr double feas_tol = 1e-8;      // LP witness residual
inline constexpr double lp_tol = 1e-9;        // phase-I objective zero test
inline constexpr double pivot_tol = 1e-11;    // simplex pivot magnitude floor
inline constexpr double kkt_tol = 1e-8;       // NNLS stationarity
inline constexpr double weight_floor = 1e-10; // fit weights below this are dropped

inline constexpr double karcher_tol = 1e-10;  // fixed-point step norm
inline constexpr int karcher_max_iter = 200;

inline constexpr double choi_tol = 1e-7;      // Dykstra combined residual
inline constexpr int choi_max_iter = 5000;

}  // namespace divlab::tol
