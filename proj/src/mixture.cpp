#include "centering/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "centering/errors.hpp"

namespace centering {
namespace {

constexpr double kResidue = 1e-14;
constexpr double kMeanTol = 1e-10;

// index of the heaviest live atom, first one on ties; npos if none
std::size_t heaviest(const std::vector<Atom>& pool) {
  std::size_t best = pool.size();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].mass <= 0.0) continue;
    if (best == pool.size() || pool[i].mass > pool[best].mass) best = i;
  }
  return best;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  double total = 0.0;
  for (const Atom& a : atoms_) {
    if (!std::isfinite(a.value)) throw DomainError("atom values must be finite");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw DomainError("atom masses must be positive");
    }
    total += a.mass;
  }
  if (atoms_.empty() || std::abs(total - 1.0) > 1e-12) {
    throw DomainError("atom masses must sum to 1");
  }
  std::vector<double> vals;
  vals.reserve(atoms_.size());
  for (const Atom& a : atoms_) vals.push_back(a.value);
  std::sort(vals.begin(), vals.end());
  if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) {
    throw DomainError("atom values must be distinct");
  }
}

double DiscreteDistribution::mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.mass * a.value;
  return m;
}

DiscreteDistribution strip_zero_atoms(const DiscreteDistribution& d) {
  std::vector<Atom> kept;
  double total = 0.0;
  for (const Atom& a : d.atoms()) {
    if (a.value != 0.0) {
      kept.push_back(a);
      total += a.mass;
    }
  }
  if (kept.empty()) throw DomainError("distribution is a point mass at 0");
  for (Atom& a : kept) a.mass /= total;
  return DiscreteDistribution(std::move(kept));
}

double MixtureDecomposition::marginal(double value) const {
  double m = 0.0;
  for (const MixtureComponent& c : components) {
    if (c.dist.value1.real() == value) m += c.weight * c.dist.mass1;
    if (c.dist.value2.real() == value) m += c.weight * c.dist.mass2;
  }
  return m;
}

MixtureDecomposition decompose_zero_mean(const DiscreteDistribution& d) {
  if (d.atoms().size() < 2) throw DomainError("mixture needs at least 2 atoms");
  if (std::abs(d.mean()) > kMeanTol) {
    throw DomainError("distribution mean is " + std::to_string(d.mean()) + ", not 0");
  }
  std::vector<Atom> neg, pos;
  for (const Atom& a : d.atoms()) {
    if (a.value == 0.0) throw DomainError("zero-valued atom; strip it first");
    (a.value < 0.0 ? neg : pos).push_back(a);
  }

  MixtureDecomposition out;
  for (;;) {
    const std::size_t i = heaviest(neg);
    const std::size_t j = heaviest(pos);
    if (i == neg.size() || j == pos.size()) break;
    Atom& lo = neg[i];
    Atom& hi = pos[j];
    const double gap = hi.value - lo.value;
    const double m_lo = hi.value / gap;  // zero mean: m_lo*lo + m_hi*hi = 0
    const double m_hi = -lo.value / gap;
    const double w_lo = lo.mass / m_lo;
    const double w_hi = hi.mass / m_hi;
    const double w = std::min(w_lo, w_hi);

    MixtureComponent c;
    c.weight = w;
    c.dist = TwoPointDistribution{lo.value, m_lo, hi.value, m_hi};
    out.components.push_back(c);

    // the binding atom is exhausted exactly; the other keeps its remainder
    if (w_lo <= w_hi) {
      lo.mass = 0.0;
      hi.mass -= w * m_hi;
    } else {
      hi.mass = 0.0;
      lo.mass -= w * m_lo;
    }
    if (lo.mass < kResidue) lo.mass = 0.0;
    if (hi.mass < kResidue) hi.mass = 0.0;
  }
  return out;
}

MixtureRatioCheck verify_ratio_via_mixture(const RandVar& xi, const FiniteProbSpace& sp,
                                           Exponent p) {
  if (!p.is_interior()) throw DomainError("mixture check needs finite p > 1");
  if (xi.size() != sp.size()) throw DomainError("random variable length mismatch");
  if (!xi.is_real()) throw DomainError("mixture check needs a real random variable");

  const double mean = expectation(xi, sp).real();
  double scale = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    scale = std::max(scale, std::abs(xi[i].real() - mean));
  }
  if (!(scale > 0.0)) throw DomainError("constant xi");

  // eta = (xi - E xi) / scale as a distribution: merge equal values, drop 0
  std::vector<Atom> raw;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    raw.push_back({(xi[i].real() - mean) / scale, sp.weight(i)});
  }
  std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  for (const Atom& a : raw) {
    if (!merged.empty() && std::abs(a.value - merged.back().value) <= 1e-12) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back(a);
    }
  }
  std::vector<Atom> nonzero;
  double total = 0.0;
  for (const Atom& a : merged) {
    if (std::abs(a.value) > 1e-12) {
      nonzero.push_back(a);
      total += a.mass;
    }
  }
  if (nonzero.size() < 2) throw DomainError("constant xi");
  double drift = 0.0;
  for (Atom& a : nonzero) {
    a.mass /= total;
    drift += a.mass * a.value;
  }
  // rounding leaves a tiny mean; push it back onto the atoms
  for (Atom& a : nonzero) a.value -= drift;

  MixtureRatioCheck out;
  out.mixture = decompose_zero_mean(DiscreteDistribution(std::move(nonzero)));
  out.ratio = centering_ratio(xi, Partition::trivial(sp.size()), sp, p);

  const double shift = mean / scale;
  const double pv = p.value();
  for (const MixtureComponent& c : out.mixture.components) {
    const auto& t = c.dist;
    const double a = std::min(t.mass1, t.mass2);
    out.component_max = std::max(out.component_max, cp_alpha(p, a));
    const double v1 = t.value1.real(), v2 = t.value2.real();
    const double eta = t.mass1 * std::pow(std::abs(v1), pv) + t.mass2 * std::pow(std::abs(v2), pv);
    const double full = t.mass1 * std::pow(std::abs(v1 + shift), pv) +
                        t.mass2 * std::pow(std::abs(v2 + shift), pv);
    out.component_ratios.push_back(std::pow(eta / full, 1.0 / pv));
  }
  return out;
}

}  // namespace centering
