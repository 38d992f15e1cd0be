#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hanoi/permutation.hpp"

namespace hanoi {

/// Exact fraction with a positive denominator in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational inverse() const { return Rational(den, num); }
  std::string to_string() const; // "8/11", or "2" when integral

  bool operator==(const Rational &) const = default;
};

/// Regular k-simplex in R^{k-1}: unit edges, centroid at the origin.
struct SimplexGeometry {
  int k = 0;
  std::vector<Eigen::VectorXd> p; // vertices
  std::vector<Eigen::VectorXd> q; // q_i = centroid of the p_j with j != i
};

/// Projects the standard basis of R^k onto the coordinate-sum-zero
/// hyperplane (Helmert basis) and scales to unit edge. Requires k >= 3.
SimplexGeometry build_simplex(int k);

/// Barycentric coordinates of x with respect to the simplex vertices.
Eigen::VectorXd barycentric(const SimplexGeometry &geom, const Eigen::VectorXd &x);

struct AffineMap {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;

  Eigen::VectorXd operator()(const Eigen::VectorXd &x) const { return A * x + b; }
  double operator_norm() const;
  Eigen::VectorXd singular_values() const;
  /// Solves (I - A) x = b.
  Eigen::VectorXd fixed_point() const;
};

/// F_i(p_i) = p_i and F_i(p_j) = q_j for j != i.
struct AffineIFS {
  SimplexGeometry geom;
  std::vector<AffineMap> maps;

  int k() const { return geom.k; }
  /// F_w = F_{w_1} o ... o F_{w_m} applied to x.
  Eigen::VectorXd apply(const Word &w, const Eigen::VectorXd &x) const;
};

/// Throws std::runtime_error if a constraint residual exceeds 1e-12 or a map
/// fails to contract.
AffineIFS build_ifs(const SimplexGeometry &geom);

/// The point F_w(p_l).
struct Address {
  Word w;
  Letter l = 0;
  auto operator<=>(const Address &) const = default;
};

/// Unique name of F_w(p_l): trailing copies of l are dropped (F_l fixes p_l),
/// then a remaining last letter is replaced by the smallest letter other than
/// l (every F_i with i != l sends p_l to q_l).
Address canonical_address(int k, Address a);
std::string address_string(const Address &a); // "w:l"

/// V_m with addresses, plus the k^m cells F_w(V_0) as vertex index lists.
struct LevelPoints {
  int k = 0;
  int m = 0;
  std::vector<Address> addresses;
  std::vector<Eigen::VectorXd> coords;
  std::vector<std::vector<std::size_t>> cells; // cells[w][l] = index of F_w(p_l)

  std::map<Address, std::size_t> index; // canonical address -> point

  /// Canonicalizes `a` first; throws std::out_of_range if it is not in V_m.
  std::size_t index_of(const Address &a) const;
};

inline constexpr std::size_t default_cell_bound = std::size_t{1} << 20;

/// Throws std::length_error past `bound` cells.
LevelPoints attractor_points(const AffineIFS &ifs, int m, std::size_t bound = default_cell_bound);
LevelPoints attractor_points_serial(const AffineIFS &ifs, int m,
                                    std::size_t bound = default_cell_bound);

/// |V_m| from the recursion |V_m| = k |V_{m-1}| - k(k-2), |V_0| = k.
std::size_t level_point_count(int k, int m);

struct CellIntersection {
  Letter i = 0;
  Letter j = 0;
  std::vector<Eigen::VectorXd> points;
  bool matches = false; // equals { q_l : l != i, j } within tolerance
};

struct IntersectionReport {
  std::vector<CellIntersection> pairs;
  std::vector<std::string> critical;      // "...(l)i" for i != l
  std::vector<std::string> post_critical; // "...(l)"
  bool ok = false;
};

/// Compares F_i(V_{m-1}) and F_j(V_{m-1}) for every i < j, and checks that
/// the critical addresses ...lli land on q_l and the fixed points of the F_l
/// are the k distinct vertices p_l.
IntersectionReport verify_cell_intersections(const AffineIFS &ifs, int m, double tol = 1e-9);

/// Conductances c_ij = 1 on V_0, energy E(u) = -u^T D u.
struct HarmonicStructure {
  int k = 0;
  Eigen::MatrixXd D;
  Rational r;          // k(k-2)/(k^2-k-1), with lambda = 1
  Rational lambda_raw; // (k^2-k-1)/(k(k-2)), with r_i = 1
  double lambda = 1.0;
  double lambda_numeric = 0; // D = lambda_numeric (T - J^T X^-1 J)
  Eigen::MatrixXd schur;     // T - J^T X^-1 J from the unscaled level-1 form

  bool regular() const { return lambda > r.value(); }
};

/// Builds the unscaled level-1 form, takes its Schur complement onto V_0 and
/// checks proportionality to D (throws std::runtime_error beyond 1e-10).
HarmonicStructure renormalize(int k);

/// Unscaled level-1 form: k copies of D on the cells, vertices ordered
/// p_0..p_{k-1}, q_0..q_{k-1}.
Eigen::MatrixXd level1_form(int k);

struct LevelGraph {
  LevelPoints points;
  Eigen::MatrixXd H; // r^-m times the integer cell-count form
};

/// Per-cell accumulation of D into the level-m form. Rows are split between
/// threads, every entry sums integers, so the result is exact.
Eigen::MatrixXd assemble_cell_counts(int k, const std::vector<std::vector<std::size_t>> &cells,
                                     std::size_t n);
Eigen::MatrixXd assemble_cell_counts_serial(int k,
                                            const std::vector<std::vector<std::size_t>> &cells,
                                            std::size_t n);

LevelGraph level_energy(const HarmonicStructure &hs, int m, std::size_t bound = default_cell_bound);

/// E(u) = -u^T H u.
double energy(const Eigen::MatrixXd &H, const Eigen::VectorXd &u);

/// Minimizes the energy with u fixed on `boundary`; returns the full vector.
Eigen::VectorXd harmonic_extension(const Eigen::MatrixXd &H, const std::vector<std::size_t> &boundary,
                                   const Eigen::VectorXd &values);

/// Effective resistance by grounding y and solving the reduced Laplacian.
double effective_resistance(const Eigen::MatrixXd &H, std::size_t x, std::size_t y);
/// Same quantity as 1 / min E(u) over u(x) = 0, u(y) = 1.
double effective_resistance_dirichlet(const Eigen::MatrixXd &H, std::size_t x, std::size_t y);
/// All pairwise resistances from one grounded inverse.
Eigen::MatrixXd resistance_matrix(const Eigen::MatrixXd &H);

double effective_resistance(const HarmonicStructure &hs, int m, const Address &x, const Address &y);

struct DiameterRow {
  int m = 0;
  double diameter = 0; // max over m-cells of the largest boundary-pair resistance
  double ratio = 0;    // diameter(m) / diameter(m-1), 0 for m = 0
};
std::vector<DiameterRow> cell_diameter_scaling(const HarmonicStructure &hs, int m_max);

double hausdorff_dimension(int k);
double spectral_dimension(int k);
/// Root of sum_i gamma_i^d = 1 with gamma_i = sqrt(r mu_i / lambda), mu_i = 1/k.
double spectral_dimension_bisection(int k, double tol = 1e-14);

struct DimensionRow {
  int k = 0;
  Rational r;
  Rational lambda_raw;
  double d_hausdorff = 0;
  double d_spectral = 0;
};
DimensionRow dimension_row(int k);

} // namespace hanoi
