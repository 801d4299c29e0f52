#include "centering/opnorm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "centering/constants.hpp"
#include "centering/errors.hpp"
#include "parallel.hpp"

namespace centering {
namespace {

using Vec = Eigen::VectorXcd;
using Index = Eigen::Index;

constexpr double kTiny = 1e-300;
constexpr int kVertexStartDim = 10;

// Work is done on the unweighted problem B = D A D^{-1} with D = diag(w^{1/p}),
// so that ||A x||_{w,p} / ||x||_{w,p} = ||B y||_p / ||y||_p for y = D x.
Eigen::VectorXd weight_scale(std::span<const double> w, Exponent p) {
  Eigen::VectorXd d(static_cast<Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    d(static_cast<Index>(i)) = p.is_infinite() ? 1.0 : std::pow(w[i], 1.0 / p.value());
  }
  return d;
}

Matrix scaled(const Matrix& a, const Eigen::VectorXd& d) {
  return d.cast<Complex>().asDiagonal() * a * d.cwiseInverse().cast<Complex>().asDiagonal();
}

double plain_norm(const Vec& v, double r) {
  double peak = 0.0;
  for (Index i = 0; i < v.size(); ++i) peak = std::max(peak, std::abs(v(i)));
  if (peak == 0.0 || std::isinf(r)) return peak;
  double sum = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double u = std::abs(v(i)) / peak;
    if (u > 0.0) sum += std::pow(u, r);
  }
  return peak * std::pow(sum, 1.0 / r);
}

Complex phase(Complex z) {
  const double m = std::abs(z);
  return m < kTiny ? Complex(0.0) : z / m;
}

// Unit vector of the dual norm with <v, g> = ||v||_r (a subgradient of the
// r-norm at v). Coordinates below 1e-300 in modulus contribute nothing.
Vec norm_gradient(const Vec& v, double r) {
  Vec g = Vec::Zero(v.size());
  double peak = 0.0;
  Index arg = 0;
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > peak) {
      peak = m;
      arg = i;
    }
  }
  if (peak < kTiny) return g;
  if (std::isinf(r)) {
    g(arg) = phase(v(arg));
    return g;
  }
  if (r == 1.0) {
    for (Index i = 0; i < v.size(); ++i) g(i) = phase(v(i));
    return g;
  }
  double sum = 0.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double u = std::abs(v(i)) / peak;
    if (u * peak < kTiny) continue;
    sum += std::pow(u, r);
    g(i) = phase(v(i)) * std::pow(u, r - 1.0);
  }
  return g / std::pow(sum, (r - 1.0) / r);
}

std::mt19937_64 start_rng(std::uint64_t seed, std::uint64_t salt, std::uint64_t start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(start)};
  return std::mt19937_64(seq);
}

Vec gaussian_start(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec x(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    x(i) = Complex(re, im);
  }
  return x;
}

Vec subset_start(Index n, Index k, std::mt19937_64& rng) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  Vec x = Vec::Zero(n);
  for (Index i = 0; i < k; ++i) x(order[static_cast<std::size_t>(i)]) = 1.0;
  return x;
}

// Start s in x-coordinates: even s draw a complex Gaussian, odd s the
// indicator of a random subset whose size cycles through 1..n. The subset
// starts reach the two-valued extremals that Gaussian starts tend to miss.
Vec random_start(Index n, int s, std::uint64_t seed, std::uint64_t salt) {
  auto rng = start_rng(seed, salt, static_cast<std::uint64_t>(s));
  if (s % 2 == 0) return gaussian_start(n, rng);
  const Index k = 1 + static_cast<Index>((s - 1) / 2) % n;
  return subset_start(n, k, rng);
}

struct Ascent {
  Vec y;
  double value = 0.0;
  bool converged = false;
};

// Dual-vector fixed-point iteration y <- J_q(B* J_p(B y)). The ratio is
// nondecreasing along the iteration.
Ascent ascend(const Matrix& b, const Matrix& bh, Vec y, double p, const OptimizerOptions& opts) {
  const double q = p / (p - 1.0);
  Ascent out;
  const double start_norm = plain_norm(y, p);
  if (start_norm == 0.0) {
    out.y = y;
    out.converged = true;
    return out;
  }
  y /= start_norm;
  double value = plain_norm(b * y, p);
  for (int it = 0; it < opts.max_iters; ++it) {
    const Vec v = b * y;
    const Vec z = bh * norm_gradient(v, p);
    if (plain_norm(z, q) < kTiny) {
      out.converged = true;
      break;
    }
    Vec next_y = norm_gradient(z, q);
    const double next = plain_norm(b * next_y, p);
    const bool settled = std::abs(next - value) <= opts.tol * std::max(1.0, next);
    if (next >= value) {
      y = std::move(next_y);
      value = next;
    }
    if (settled || next < value) {
      out.converged = true;
      break;
    }
  }
  out.y = std::move(y);
  out.value = value;
  return out;
}

struct Candidate {
  Vec y;
  double value = 0.0;
  bool converged = true;
  int starts = 0;
};

// ||B||_p on plain l^p, n >= 1. Starts are drawn in the original
// coordinates x and mapped to y = D x with D = diag(start_scale).
Candidate plain_operator_norm(const Matrix& b, double p, const OptimizerOptions& opts,
                              std::uint64_t salt, const Eigen::VectorXd& start_scale) {
  const Index n = b.rows();
  Candidate best;
  if (p == 1.0) {
    // attained at a basis vector: the largest column sum
    for (Index j = 0; j < n; ++j) {
      const double s = b.col(j).cwiseAbs().sum();
      if (j == 0 || s > best.value) {
        best.value = s;
        best.y = Vec::Unit(n, j);
      }
    }
    best.starts = static_cast<int>(n);
    return best;
  }
  if (std::isinf(p)) {
    // attained at the phase pattern of the heaviest row
    for (Index i = 0; i < n; ++i) {
      const double s = b.row(i).cwiseAbs().sum();
      if (i == 0 || s > best.value) {
        best.value = s;
        Vec y(n);
        for (Index j = 0; j < n; ++j) {
          const Complex c = std::conj(b(i, j));
          y(j) = std::abs(c) < kTiny ? Complex(1.0) : phase(c);
        }
        best.y = std::move(y);
      }
    }
    best.starts = static_cast<int>(n);
    return best;
  }

  const int random_starts = opts.starts;
  const int vertex_starts =
      n <= kVertexStartDim ? (1 << static_cast<int>(n - 1)) - 1 : 0;
  const int total = random_starts + vertex_starts;
  const Matrix bh = b.adjoint();
  std::vector<Ascent> runs(static_cast<std::size_t>(total));

  detail::parallel_for(runs.size(), opts.workers, [&](std::size_t s) {
    Vec x;
    if (static_cast<int>(s) < random_starts) {
      x = random_start(n, static_cast<int>(s), opts.seed, salt);
    } else {
      const auto mask = static_cast<unsigned>(static_cast<int>(s) - random_starts + 1);
      x = Vec::Zero(n);
      for (Index i = 0; i + 1 < n; ++i) {
        if (mask & (1u << i)) x(i) = 1.0;
      }
    }
    runs[s] = ascend(b, bh, start_scale.cast<Complex>().cwiseProduct(x), p, opts);
  });

  best.value = -1.0;
  best.converged = true;
  for (auto& run : runs) {
    best.converged = best.converged && run.converged;
    if (run.value > best.value) {
      best.value = run.value;
      best.y = run.y;
    }
  }
  best.starts = total;
  return best;
}

// Connected components of the graph with an edge wherever a_ij or a_ji != 0.
std::vector<std::vector<Index>> components(const Matrix& a) {
  const Index n = a.rows();
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      auto& pi = parent[static_cast<std::size_t>(i)];
      pi = parent[static_cast<std::size_t>(pi)];
      i = pi;
    }
    return i;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (a(i, j) != Complex(0.0) || a(j, i) != Complex(0.0)) {
        parent[static_cast<std::size_t>(find(i))] = find(j);
      }
    }
  }
  std::vector<std::vector<Index>> groups;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index r = find(i);
    auto& s = slot[static_cast<std::size_t>(r)];
    if (s < 0) {
      s = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(s)].push_back(i);
  }
  return groups;
}

void require_square(const Matrix& a, const FiniteProbSpace& sp) {
  if (a.rows() != a.cols()) throw DomainError("operator matrix must be square");
  if (static_cast<std::size_t>(a.rows()) != sp.size()) {
    throw DomainError("operator dimension " + std::to_string(a.rows()) +
                      " does not match the " + std::to_string(sp.size()) + "-atom space");
  }
}

double p_value(Exponent p) { return p.is_infinite() ? INFINITY : p.value(); }

// Converts an unweighted maximizer back to a unit witness on the space.
OptReport finish(const Matrix& a, const FiniteProbSpace& sp, Exponent p, Vec x,
                 bool converged, int starts) {
  OptReport report;
  report.converged = converged;
  report.starts_used = starts;
  double norm = lp_norm(x, sp.weights(), p);
  if (norm == 0.0) {
    x = Vec::Ones(a.rows());
    norm = lp_norm(x, sp.weights(), p);
  }
  x /= norm;
  report.value = lp_norm(Vec(a * x), sp.weights(), p);
  report.witness = RandVar(std::vector<Complex>(x.data(), x.data() + x.size()));
  return report;
}

}  // namespace

void OptimizerOptions::validate() const {
  if (starts < 1) throw DomainError("optimizer needs at least one start");
  if (max_iters < 1) throw DomainError("optimizer needs max_iters >= 1");
  if (!(tol > 0.0)) throw DomainError("optimizer tolerance must be positive");
}

Matrix identity_minus(const Eigen::MatrixXd& m) {
  return (Eigen::MatrixXd::Identity(m.rows(), m.cols()) - m).cast<Complex>();
}

OptReport operator_norm(const Matrix& a, const FiniteProbSpace& sp, Exponent p,
                        const OptimizerOptions& opts) {
  opts.validate();
  require_square(a, sp);
  const double pv = p_value(p);
  const Eigen::VectorXd d = weight_scale(sp.weights(), p);
  const Index n = a.rows();

  std::vector<std::vector<Index>> groups;
  if (opts.split_components) {
    groups = components(a);
  } else {
    groups.emplace_back(static_cast<std::size_t>(n));
    std::iota(groups.front().begin(), groups.front().end(), Index{0});
  }

  Vec best_y = Vec::Zero(n);
  double best = -1.0;
  bool converged = true;
  int starts = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& idx = groups[g];
    const auto m = static_cast<Index>(idx.size());
    Matrix block(m, m);
    Eigen::VectorXd dd(m);
    for (Index i = 0; i < m; ++i) {
      dd(i) = d(idx[static_cast<std::size_t>(i)]);
      for (Index j = 0; j < m; ++j) {
        block(i, j) = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
    }
    const Candidate c = plain_operator_norm(scaled(block, dd), pv, opts, g, dd);
    converged = converged && c.converged;
    starts += c.starts;
    if (c.value > best) {
      best = c.value;
      best_y.setZero();
      for (Index i = 0; i < m; ++i) best_y(idx[static_cast<std::size_t>(i)]) = c.y(i);
    }
  }
  const Vec x = d.cwiseInverse().cast<Complex>().asDiagonal() * best_y;
  return finish(a, sp, p, x, converged, starts);
}

OptReport lower_norm(const Matrix& a, const FiniteProbSpace& sp, Exponent p,
                     const OptimizerOptions& opts) {
  opts.validate();
  require_square(a, sp);
  const double pv = p_value(p);
  const Eigen::VectorXd d = weight_scale(sp.weights(), p);
  const Matrix b = scaled(a, d);
  const Matrix bh = b.adjoint();
  const Index n = b.rows();

  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullV);
  const double sigma_max = svd.singularValues()(0);
  const double sigma_min = svd.singularValues()(n - 1);

  Vec best_y = svd.matrixV().col(n - 1);
  double best = plain_norm(b * best_y, pv) / plain_norm(best_y, pv);
  bool converged = true;
  int starts = 1;

  auto consider = [&](Vec y, double value) {
    if (value < best) {
      best = value;
      best_y = std::move(y);
    }
  };

  const double zero_level = 1e-14 * std::max(1.0, sigma_max);
  if (best > zero_level && sigma_min > 1e-12 * sigma_max) {
    // For invertible B, inf ||B u|| / ||u|| = 1 / ||B^{-1}||.
    const Matrix inv = b.inverse();
    const Candidate c = plain_operator_norm(inv, pv, opts, 0x1f, Eigen::VectorXd::Ones(n));
    starts += c.starts;
    converged = converged && c.converged;
    Vec u = inv * c.y;
    const double value = plain_norm(b * u, pv) / plain_norm(u, pv);
    consider(std::move(u), value);
  }

  if (best > zero_level) {
    // Projected gradient descent on the unit sphere with Armijo backtracking.
    std::vector<Candidate> runs(static_cast<std::size_t>(opts.starts) + 1);
    detail::parallel_for(runs.size(), opts.workers, [&](std::size_t s) {
      Vec u;
      if (s == 0) {
        u = svd.matrixV().col(n - 1);
      } else {
        auto rng = start_rng(opts.seed, 0x2f, s);
        u = gaussian_start(n, rng);
      }
      u /= plain_norm(u, pv);
      double f = plain_norm(b * u, pv);
      double step = 1.0;
      bool done = false;
      for (int it = 0; it < opts.max_iters && !done; ++it) {
        const Vec v = b * u;
        if (plain_norm(v, pv) < kTiny) {
          f = 0.0;
          done = true;
          break;
        }
        const Vec grad = bh * norm_gradient(v, pv) - f * norm_gradient(u, pv);
        const double g2 = grad.squaredNorm();
        if (g2 < 1e-30) {
          done = true;
          break;
        }
        bool accepted = false;
        while (step > 1e-20) {
          Vec trial = u - step * grad;
          const double tn = plain_norm(trial, pv);
          if (tn > 0.0) {
            trial /= tn;
            const double ft = plain_norm(b * trial, pv);
            if (ft <= f - 1e-4 * step * g2) {
              const double drop = f - ft;
              u = std::move(trial);
              f = ft;
              step *= 2.0;
              accepted = true;
              done = drop <= opts.tol * std::max(1.0, f);
              break;
            }
          }
          step *= 0.5;
        }
        if (!accepted) done = true;
      }
      runs[s] = {std::move(u), f, done, 1};
    });
    for (auto& run : runs) {
      converged = converged && run.converged;
      consider(std::move(run.y), run.value);
      ++starts;
    }
  }

  const Vec x = d.cwiseInverse().cast<Complex>().asDiagonal() * best_y;
  OptReport report = finish(a, sp, p, x, converged, starts);
  if (pv == 2.0) report.cross_check = sigma_min;
  return report;
}

OptReport cp_of_space(const FiniteProbSpace& sp, const Partition& part, Exponent p,
                      const OptimizerOptions& opts) {
  const Matrix a = identity_minus(cond_exp_matrix(part, sp));
  OptimizerOptions whole = opts;
  whole.split_components = false;
  OptReport report = operator_norm(a, sp, p, whole);

  // Independent route: I - E^G acts block by block, so its norm is the
  // largest two-sided centering constant of a renormalized block. The
  // unsplit ascent can crawl when two blocks have nearly equal constants
  // (mass drifts between them geometrically slowly), so convergence is
  // judged on the block route plus agreement of the two routes.
  bool blocks_converged = true;
  double blockwise = 0.0;
  for (const auto& block : part.blocks()) {
    if (block.size() < 2) continue;
    std::vector<double> w;
    w.reserve(block.size());
    for (std::size_t i : block) w.push_back(sp.weight(i));
    const auto sub = FiniteProbSpace::normalize(std::move(w));
    const Matrix sub_a = identity_minus(cond_exp_matrix(Partition::trivial(sub.size()), sub));
    const OptReport r = operator_norm(sub_a, sub, p, whole);
    report.starts_used += r.starts_used;
    blocks_converged = blocks_converged && r.converged;
    blockwise = std::max(blockwise, r.value);
  }
  report.cross_check = blockwise;
  report.converged = blocks_converged && std::abs(report.value - blockwise) <= 1e-6;
  return report;
}

TwoValueBound two_value_oracle(const FiniteProbSpace& sp, Exponent p) {
  if (!p.is_interior()) throw DomainError("two-value oracle needs a finite exponent p > 1");
  const std::size_t n = sp.size();
  if (n > 24) throw DomainError("two-value oracle enumerates at most 24 atoms");

  // Splits up to complement: subsets of the first n-1 atoms, in Gray order.
  TwoValueBound best{0.0, 0.5};
  const std::uint32_t count = 1u << (n - 1);
  double mass = 0.0;
  std::uint32_t prev = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const std::uint32_t gray = i ^ (i >> 1);
    const std::uint32_t flipped = gray ^ prev;
    const int bit = std::countr_zero(flipped);
    mass += (gray & flipped) ? sp.weight(static_cast<std::size_t>(bit))
                             : -sp.weight(static_cast<std::size_t>(bit));
    prev = gray;
    const double alpha = std::clamp(mass, 1e-300, 1.0 - 1e-16);
    const double v = cp_alpha(p, alpha);
    if (v > best.value) best = {v, std::min(alpha, 1.0 - alpha)};
  }
  return best;
}

}  // namespace centering
