#include "hanoi/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hanoi {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0)
    throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = n / (g ? g : 1);
  den = d / (g ? g : 1);
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

// Geometry -----------------------------------------------------------------------

SimplexGeometry build_simplex(int k) {
  if (k < 3)
    throw std::invalid_argument("simplex geometry needs k >= 3");
  const int d = k - 1;
  SimplexGeometry g;
  g.k = k;
  // Helmert rows h_j = (1, ..., 1, -j, 0, ..., 0) / sqrt(j (j + 1)), j = 1..k-1
  Eigen::MatrixXd helmert = Eigen::MatrixXd::Zero(d, k);
  for (int j = 1; j <= d; ++j) {
    const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (int t = 0; t < j; ++t)
      helmert(j - 1, t) = s;
    helmert(j - 1, j) = -j * s;
  }
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < k; ++i)
    g.p.push_back(helmert.col(i) * scale);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  for (const auto &v : g.p)
    sum += v;
  for (int i = 0; i < k; ++i)
    g.q.push_back((sum - g.p[i]) / static_cast<double>(k - 1));
  return g;
}

Eigen::VectorXd barycentric(const SimplexGeometry &geom, const Eigen::VectorXd &x) {
  const int k = geom.k;
  Eigen::MatrixXd M(k, k);
  Eigen::VectorXd rhs(k);
  for (int i = 0; i < k; ++i) {
    M.block(0, i, k - 1, 1) = geom.p[i];
    M(k - 1, i) = 1.0;
  }
  rhs.head(k - 1) = x;
  rhs(k - 1) = 1.0;
  return M.fullPivLu().solve(rhs);
}

double AffineMap::operator_norm() const { return singular_values().maxCoeff(); }

Eigen::VectorXd AffineMap::singular_values() const {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
}

Eigen::VectorXd AffineMap::fixed_point() const {
  const auto n = A.rows();
  return (Eigen::MatrixXd::Identity(n, n) - A).fullPivLu().solve(b);
}

Eigen::VectorXd AffineIFS::apply(const Word &w, const Eigen::VectorXd &x) const {
  Eigen::VectorXd y = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    y = maps.at(*it)(y);
  return y;
}

AffineIFS build_ifs(const SimplexGeometry &geom) {
  const int k = geom.k;
  const int d = k - 1;
  // [A | b] * M = targets, with M's columns (p_j, 1)
  Eigen::MatrixXd M(k, k);
  for (int j = 0; j < k; ++j) {
    M.block(0, j, d, 1) = geom.p[j];
    M(d, j) = 1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw std::runtime_error("simplex vertices are not affinely independent");
  const Eigen::MatrixXd Minv = lu.inverse();
  AffineIFS ifs;
  ifs.geom = geom;
  for (int i = 0; i < k; ++i) {
    Eigen::MatrixXd targets(d, k);
    for (int j = 0; j < k; ++j)
      targets.col(j) = j == i ? geom.p[j] : geom.q[j];
    Eigen::MatrixXd Ab = targets * Minv;
    AffineMap f{Ab.leftCols(d), Ab.col(d)};
    for (int j = 0; j < k; ++j)
      if ((f(geom.p[j]) - targets.col(j)).norm() > 1e-12)
        throw std::runtime_error("affine constraint residual above tolerance");
    if (f.operator_norm() >= 1.0)
      throw std::runtime_error("map F_" + std::to_string(i) + " is not contractive");
    ifs.maps.push_back(std::move(f));
  }
  return ifs;
}

// Addresses and level points --------------------------------------------------------

Address canonical_address(int k, Address a) {
  while (!a.w.empty() && a.w.back() == a.l)
    a.w.pop_back();
  if (!a.w.empty())
    a.w.back() = a.l == 0 ? (k > 1 ? 1 : 0) : 0;
  return a;
}

std::string address_string(const Address &a) {
  std::string s;
  for (Letter x : a.w)
    s += std::to_string(x);
  return s + ":" + std::to_string(a.l);
}

std::size_t LevelPoints::index_of(const Address &a) const {
  auto it = index.find(canonical_address(k, a));
  if (it == index.end())
    throw std::out_of_range("address " + address_string(a) + " is not a level-" +
                            std::to_string(m) + " point");
  return it->second;
}

std::size_t level_point_count(int k, int m) {
  std::size_t count = static_cast<std::size_t>(k);
  for (int t = 0; t < m; ++t)
    count = static_cast<std::size_t>(k) * count - static_cast<std::size_t>(k * (k - 2));
  return count;
}

namespace {

std::size_t cell_count(int k, int m, std::size_t bound) {
  std::size_t n = 1;
  for (int t = 0; t < m; ++t) {
    if (n > bound / static_cast<std::size_t>(k))
      throw std::length_error("level exceeds the cell bound");
    n *= static_cast<std::size_t>(k);
  }
  return n;
}

Word cell_word(int k, int m, std::size_t index) {
  Word w(m);
  for (int t = m - 1; t >= 0; --t) {
    w[t] = static_cast<Letter>(index % k);
    index /= k;
  }
  return w;
}

// Assigns point indices in order of first appearance over (cell, l).
void index_points(LevelPoints &lp, const std::vector<Address> &canon, std::size_t cells) {
  const auto k = static_cast<std::size_t>(lp.k);
  lp.cells.assign(cells, std::vector<std::size_t>(k));
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t l = 0; l < k; ++l) {
      const auto &a = canon[c * k + l];
      auto [it, fresh] = lp.index.emplace(a, lp.addresses.size());
      if (fresh)
        lp.addresses.push_back(a);
      lp.cells[c][l] = it->second;
    }
}

} // namespace

LevelPoints attractor_points_serial(const AffineIFS &ifs, int m, std::size_t bound) {
  if (m < 0)
    throw std::invalid_argument("level must be >= 0");
  const int k = ifs.k();
  const std::size_t cells = cell_count(k, m, bound);
  std::vector<Address> canon(cells * k);
  for (std::size_t c = 0; c < cells; ++c) {
    const Word w = cell_word(k, m, c);
    for (int l = 0; l < k; ++l)
      canon[c * k + l] = canonical_address(k, Address{w, l});
  }
  LevelPoints lp;
  lp.k = k;
  lp.m = m;
  index_points(lp, canon, cells);
  lp.coords.resize(lp.addresses.size());
  for (std::size_t i = 0; i < lp.addresses.size(); ++i)
    lp.coords[i] = ifs.apply(lp.addresses[i].w, ifs.geom.p[lp.addresses[i].l]);
  return lp;
}

LevelPoints attractor_points(const AffineIFS &ifs, int m, std::size_t bound) {
  if (m < 0)
    throw std::invalid_argument("level must be >= 0");
  const int k = ifs.k();
  const std::size_t cells = cell_count(k, m, bound);
  std::vector<Address> canon(cells * k);
  const auto total = static_cast<std::int64_t>(cells);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < total; ++c) {
    const Word w = cell_word(k, m, static_cast<std::size_t>(c));
    for (int l = 0; l < k; ++l)
      canon[c * k + l] = canonical_address(k, Address{w, l});
  }
  LevelPoints lp;
  lp.k = k;
  lp.m = m;
  index_points(lp, canon, cells);
  lp.coords.resize(lp.addresses.size());
  const auto points = static_cast<std::int64_t>(lp.addresses.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < points; ++i)
    lp.coords[i] = ifs.apply(lp.addresses[i].w, ifs.geom.p[lp.addresses[i].l]);
  return lp;
}

// Cell intersections ------------------------------------------------------------------

IntersectionReport verify_cell_intersections(const AffineIFS &ifs, int m, double tol) {
  if (m < 1)
    throw std::invalid_argument("cell intersections need m >= 1");
  const int k = ifs.k();
  const auto &geom = ifs.geom;
  const auto base = attractor_points(ifs, m - 1);
  auto near = [&](const Eigen::VectorXd &a, const Eigen::VectorXd &b) { return (a - b).norm() <= tol; };

  IntersectionReport report;
  report.ok = true;
  std::vector<std::vector<Eigen::VectorXd>> images(k);
  for (int i = 0; i < k; ++i)
    for (const auto &x : base.coords)
      images[i].push_back(ifs.maps[i](x));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      CellIntersection ci{i, j, {}, true};
      for (const auto &a : images[i]) {
        bool shared = std::any_of(images[j].begin(), images[j].end(),
                                  [&](const Eigen::VectorXd &b) { return near(a, b); });
        bool seen = std::any_of(ci.points.begin(), ci.points.end(),
                                [&](const Eigen::VectorXd &b) { return near(a, b); });
        if (shared && !seen)
          ci.points.push_back(a);
      }
      std::size_t expected = 0;
      for (int l = 0; l < k; ++l) {
        if (l == i || l == j)
          continue;
        ++expected;
        if (std::none_of(ci.points.begin(), ci.points.end(),
                         [&](const Eigen::VectorXd &x) { return near(x, geom.q[l]); }))
          ci.matches = false;
      }
      if (ci.points.size() != expected)
        ci.matches = false;
      report.ok = report.ok && ci.matches;
      report.pairs.push_back(std::move(ci));
    }

  for (int l = 0; l < k; ++l) {
    if (!near(ifs.maps[l].fixed_point(), geom.p[l]))
      report.ok = false;
    report.post_critical.push_back("...(" + std::to_string(l) + ")");
    for (int i = 0; i < k; ++i) {
      if (i == l)
        continue;
      if (!near(ifs.maps[i](geom.p[l]), geom.q[l]))
        report.ok = false;
      report.critical.push_back("...(" + std::to_string(l) + ")" + std::to_string(i));
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (near(geom.p[a], geom.p[b]))
        report.ok = false;
  return report;
}

// Energy ----------------------------------------------------------------------------

namespace {

Eigen::MatrixXd boundary_form(int k) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Ones(k, k);
  D.diagonal().setConstant(-(k - 1));
  return D;
}

void add_cell(Eigen::MatrixXd &H, const std::vector<std::size_t> &v) {
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      H(v[a], v[b]) += 1;
      H(v[b], v[a]) += 1;
      H(v[a], v[a]) -= 1;
      H(v[b], v[b]) -= 1;
    }
}

} // namespace

Eigen::MatrixXd level1_form(int k) {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    std::vector<std::size_t> cell;
    for (int l = 0; l < k; ++l)
      cell.push_back(l == i ? static_cast<std::size_t>(i) : static_cast<std::size_t>(k + l));
    add_cell(H, cell);
  }
  return H;
}

HarmonicStructure renormalize(int k) {
  if (k < 3)
    throw std::invalid_argument("renormalization needs k >= 3");
  HarmonicStructure hs;
  hs.k = k;
  hs.D = boundary_form(k);
  const std::int64_t kk = k;
  hs.r = Rational(kk * (kk - 2), kk * kk - kk - 1);
  hs.lambda_raw = hs.r.inverse();

  const Eigen::MatrixXd H = level1_form(k);
  const Eigen::MatrixXd T = H.topLeftCorner(k, k);
  const Eigen::MatrixXd J = H.bottomLeftCorner(k, k);
  const Eigen::MatrixXd X = H.bottomRightCorner(k, k);
  hs.schur = T - J.transpose() * X.ldlt().solve(J);
  hs.lambda_numeric = hs.D(0, 1) / hs.schur(0, 1);
  const double residual = (hs.D - hs.lambda_numeric * hs.schur).cwiseAbs().maxCoeff();
  if (residual > 1e-10)
    throw std::runtime_error("Schur complement is not proportional to D");
  if (std::abs(hs.lambda_numeric - hs.lambda_raw.value()) > 1e-10)
    throw std::runtime_error("renormalization constant disagrees with the closed form");
  return hs;
}

Eigen::MatrixXd assemble_cell_counts_serial(int k, const std::vector<std::vector<std::size_t>> &cells,
                                            std::size_t n) {
  (void)k;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (const auto &cell : cells)
    add_cell(C, cell);
  return C;
}

Eigen::MatrixXd assemble_cell_counts(int k, const std::vector<std::vector<std::size_t>> &cells,
                                     std::size_t n) {
  (void)k;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
#pragma omp parallel
  {
    std::size_t threads = 1, id = 0;
#ifdef _OPENMP
    threads = static_cast<std::size_t>(omp_get_num_threads());
    id = static_cast<std::size_t>(omp_get_thread_num());
#endif
    const std::size_t lo = n * id / threads, hi = n * (id + 1) / threads;
    auto mine = [&](std::size_t row) { return row >= lo && row < hi; };
    for (const auto &v : cells)
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
          if (mine(v[a])) {
            C(v[a], v[b]) += 1;
            C(v[a], v[a]) -= 1;
          }
          if (mine(v[b])) {
            C(v[b], v[a]) += 1;
            C(v[b], v[b]) -= 1;
          }
        }
  }
  return C;
}

LevelGraph level_energy(const HarmonicStructure &hs, int m, std::size_t bound) {
  const auto ifs = build_ifs(build_simplex(hs.k));
  LevelGraph lg;
  lg.points = attractor_points(ifs, m, bound);
  lg.H = assemble_cell_counts(hs.k, lg.points.cells, lg.points.addresses.size());
  lg.H *= std::pow(hs.r.inverse().value(), m);
  return lg;
}

double energy(const Eigen::MatrixXd &H, const Eigen::VectorXd &u) { return -u.dot(H * u); }

Eigen::VectorXd harmonic_extension(const Eigen::MatrixXd &H, const std::vector<std::size_t> &boundary,
                                   const Eigen::VectorXd &values) {
  const auto n = static_cast<std::size_t>(H.rows());
  if (boundary.size() != static_cast<std::size_t>(values.size()))
    throw std::invalid_argument("boundary values do not match the boundary set");
  std::vector<char> fixed(n, 0);
  for (auto b : boundary) {
    if (b >= n)
      throw std::out_of_range("boundary vertex outside the form");
    fixed[b] = 1;
  }
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed[i])
      interior.push_back(i);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  for (std::size_t t = 0; t < boundary.size(); ++t)
    u(boundary[t]) = values(t);
  if (interior.empty())
    return u;
  const auto ni = static_cast<Eigen::Index>(interior.size());
  Eigen::MatrixXd L(ni, ni);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
  for (Eigen::Index a = 0; a < ni; ++a) {
    for (Eigen::Index b = 0; b < ni; ++b)
      L(a, b) = -H(interior[a], interior[b]);
    for (std::size_t t = 0; t < boundary.size(); ++t)
      rhs(a) += H(interior[a], boundary[t]) * values(t);
  }
  const Eigen::VectorXd x = L.ldlt().solve(rhs);
  for (Eigen::Index a = 0; a < ni; ++a)
    u(interior[a]) = x(a);
  return u;
}

double effective_resistance(const Eigen::MatrixXd &H, std::size_t x, std::size_t y) {
  const auto n = static_cast<std::size_t>(H.rows());
  if (x >= n || y >= n)
    throw std::out_of_range("vertex outside the form");
  if (x == y)
    return 0.0;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (i != y)
      keep.push_back(i);
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd L(m, m);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b)
      L(a, b) = -H(keep[a], keep[b]);
    if (keep[a] == x)
      e(a) = 1.0;
  }
  const Eigen::VectorXd v = L.ldlt().solve(e);
  const auto xi = static_cast<Eigen::Index>(x < y ? x : x - 1);
  return v(xi);
}

double effective_resistance_dirichlet(const Eigen::MatrixXd &H, std::size_t x, std::size_t y) {
  if (x == y)
    return 0.0;
  Eigen::VectorXd values(2);
  values << 0.0, 1.0;
  const auto u = harmonic_extension(H, {x, y}, values);
  return 1.0 / energy(H, u);
}

Eigen::MatrixXd resistance_matrix(const Eigen::MatrixXd &H) {
  const auto n = H.rows();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) {
    const Eigen::MatrixXd L = -H.bottomRightCorner(n - 1, n - 1);
    G.bottomRightCorner(n - 1, n - 1) = L.ldlt().solve(Eigen::MatrixXd::Identity(n - 1, n - 1));
  }
  Eigen::MatrixXd R(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      R(a, b) = a == b ? 0.0 : G(a, a) + G(b, b) - 2 * G(a, b);
  return R;
}

double effective_resistance(const HarmonicStructure &hs, int m, const Address &x, const Address &y) {
  const auto lg = level_energy(hs, m);
  return effective_resistance(lg.H, lg.points.index_of(x), lg.points.index_of(y));
}

std::vector<DiameterRow> cell_diameter_scaling(const HarmonicStructure &hs, int m_max) {
  if (m_max < 0)
    throw std::invalid_argument("m_max must be >= 0");
  const int k = hs.k;
  const auto lg = level_energy(hs, m_max);
  const Eigen::MatrixXd R = resistance_matrix(lg.H);
  std::vector<DiameterRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    const std::size_t cells = cell_count(k, m, default_cell_bound);
    double diam = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      const Word w = cell_word(k, m, c);
      std::vector<std::size_t> v;
      for (int l = 0; l < k; ++l)
        v.push_back(lg.points.index_of(Address{w, l}));
      for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b)
          diam = std::max(diam, R(v[a], v[b]));
    }
    DiameterRow row{m, diam, 0.0};
    if (!rows.empty())
      row.ratio = diam / rows.back().diameter;
    rows.push_back(row);
  }
  return rows;
}

// Dimensions --------------------------------------------------------------------------

double hausdorff_dimension(int k) {
  if (k < 3)
    throw std::invalid_argument("dimension formulas need k >= 3");
  const double kd = k;
  return std::log(kd) / (std::log(kd * kd - kd - 1) - std::log(kd * (kd - 2)));
}

double spectral_dimension(int k) {
  if (k < 3)
    throw std::invalid_argument("dimension formulas need k >= 3");
  const double kd = k;
  return 2 * std::log(kd) / (std::log(kd * kd - kd - 1) - std::log(kd - 2));
}

double spectral_dimension_bisection(int k, double tol) {
  if (k < 3)
    throw std::invalid_argument("dimension formulas need k >= 3");
  const double r = static_cast<double>(k) * (k - 2) / (static_cast<double>(k) * k - k - 1);
  const double mu = 1.0 / k, lambda = 1.0;
  const double gamma = std::sqrt(r * mu / lambda);
  auto f = [&](double d) { return k * std::pow(gamma, d) - 1.0; }; // decreasing in d
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0)
    hi *= 2;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi)
      break;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DimensionRow dimension_row(int k) {
  const std::int64_t kk = k;
  Rational r(kk * (kk - 2), kk * kk - kk - 1);
  return DimensionRow{k, r, r.inverse(), hausdorff_dimension(k), spectral_dimension(k)};
}

} // namespace hanoi
