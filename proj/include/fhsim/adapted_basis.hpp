// adapted_basis.hpp — the basis (u_k) adapted to P(B_w).
//
// For an admissible P (|lambda_1| > sum_{i>=2} |lambda_i|) there are
// polynomials u_0 = e_0, u_k = sum_{l=1}^k beta_{l,k} e_l with
//   P(B_w) u_k = u_{k-1},  beta_{0,k} = 0,  beta_{k,k} != 0,
//   |beta_{l,k}| <= rho^k / |W_l|,   ||u_k||_p <= C_w rho^k,
// where rho = 1/(|lambda_1| - sum_{i>=2}|lambda_i|). In this basis P(B_w)
// acts as the plain backward shift, which is what makes polynomial orbits
// computable without catastrophic cancellation.
//
// Columns are solved by matching e_t-coefficients of P(B_w)u_k = u_{k-1},
// descending t from k-1 to 0:
//   beta_{t+1,k} = (beta_{t,k-1}
//                   - sum_{i=2..d, t+i<=k} lambda_i beta_{t+i,k} w_{t+1}..w_{t+i})
//                  / (lambda_1 w_{t+1}).
// The table is kept in log-magnitude form; weight products like e^{log^2 n}
// leave double range long before the table does.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fhsim/core.hpp"
#include "fhsim/shift_ops.hpp"
#include "fhsim/weights.hpp"

namespace fhsim {

class AdaptedBasis {
  public:
    // family must be FHC (fhc_constant converges) unless cw_override is given,
    // in which case that bound is used for the norm inequality instead.
    AdaptedBasis(PolynomialSpec poly, WeightFamily family, std::size_t K,
                 const SpaceConfig& space, std::optional<double> cw_override = {});

    void extend(std::size_t K_new);  // append-only

    std::size_t K() const { return cols_.size() - 1; }
    double rho() const { return rho_; }
    double cw() const { return cw_; }
    const PolynomialSpec& poly() const { return poly_; }
    const WeightFamily& family() const { return family_; }
    const SpaceConfig& space() const { return space_; }

    // beta_{l,k}; zero outside 1 <= l <= k except beta_{0,0} = 1 (u_0 = e_0)
    LogMag beta(std::uint64_t l, std::uint64_t k) const;

    // u_k as a dense coefficient array (index 0..k), log domain
    std::vector<LogMag> u_log(std::uint64_t k) const;
    // double-precision rendering; throws if any coefficient leaves double range
    SparseVec u(std::uint64_t k) const;

    // log ||u_k||_p
    double log_norm(std::uint64_t k) const;

    // triangular CSV "k,l,beta_log_abs,beta_phase"
    std::string export_csv() const;

  private:
    void solve_column(std::size_t k);

    PolynomialSpec poly_;
    WeightFamily family_;
    SpaceConfig space_;
    double rho_;
    double cw_;
    std::vector<std::vector<LogMag>> cols_;  // cols_[k] holds beta_{1..k,k}
};

AdaptedBasis build_adapted_basis(const PolynomialSpec& P, const WeightFamily& family,
                                 std::size_t K, const SpaceConfig& space,
                                 std::optional<double> cw_override = {});

struct BasisVerifyRow {
    std::uint64_t k = 0;
    double residual_rel = 0.0;     // ||P(B_w)u_k - u_{k-1}|| / max(1, ||u_{k-1}||)
    double beta_excess = 0.0;      // max_l |beta_{l,k}| W_l / rho^k  (<= 1 expected)
    double norm_excess = 0.0;      // ||u_k|| / (C_w rho^k)           (<= 1 expected)
    bool pass = false;
};

struct BasisVerifyReport {
    bool all_pass = false;
    double worst_residual = 0.0;
    std::vector<BasisVerifyRow> rows;
};

// Checks, for each k = 1..K:
//  (a) the defining recursion, through the independent operator-application
//      path: ||P(B_w)u_k - u_{k-1}||_p <= tol * max(1, ||u_{k-1}||_p),
//  (b) |beta_{l,k}| <= rho^k / |W_l| within factor (1+tol),
//  (c) ||u_k||_p <= C_w rho^k within factor (1+tol).
BasisVerifyReport verify_basis(const AdaptedBasis& basis, double tol);

// Triangular back-substitution: coefficients h~ with sum h~_k u_k = h.
std::vector<Scalar> expand_in_basis(const SparseVec& h, const AdaptedBasis& basis);

// T_n over the adapted basis: sum_{k=0}^n X_{k+n} u_k (double rendering).
SparseVec truncated_apply_adapted(const std::vector<Scalar>& X, std::uint64_t n,
                                  const AdaptedBasis& basis);

}  // namespace fhsim
