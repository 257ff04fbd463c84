#include "toral/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>

namespace toral {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_prime(const Integer& x) {
  Integer r = x % Integer(kPrime);
  if (r < 0) r += Integer(kPrime);
  return r.convert_to<std::uint64_t>();
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kPrime) + static_cast<std::uint64_t>(p >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kPrime) r -= kPrime;
  return r;
}

void require_dual_input(const IntMatrix& a, const IntVector& m) {
  if (a.rows() != a.cols()) throw std::invalid_argument("dual orbit: matrix is not square");
  if (m.size() != a.rows()) throw std::invalid_argument("dual orbit: vector size does not match the matrix");
}

// Fractional part of x as a 64-bit fixed-point fraction.
std::uint64_t fixed_point_fraction(const Real& x) {
  Real f = x - mp::floor(x);
  const Real two32 = mp::ldexp(Real(1), 32);
  f *= two32;
  const Real hi = mp::floor(f);
  const Real lo = mp::floor(Real((f - hi) * two32));
  return (hi.convert_to<std::uint64_t>() << 32) | lo.convert_to<std::uint64_t>();
}

}  // namespace

DualOrbitResult dual_orbit_test(const IntMatrix& a, const IntVector& m, std::size_t max_iter) {
  require_dual_input(a, m);
  if (m.isZero()) throw std::invalid_argument("dual_orbit_test: m = 0 has a trivial orbit");
  const Eigen::Index n = a.rows();
  const IntMatrix at = a.transpose();

  std::vector<std::uint64_t> t(static_cast<std::size_t>(n * n)), start(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    start[static_cast<std::size_t>(i)] = mod_prime(m(i));
    for (Eigen::Index j = 0; j < n; ++j) t[static_cast<std::size_t>(i * n + j)] = mod_prime(at(i, j));
  }

  DualOrbitResult result{m, std::nullopt, max_iter};
  std::vector<std::uint64_t> v = start, next(v.size());
  for (std::size_t k = 1; k <= max_iter; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      std::uint64_t s = 0;
      for (Eigen::Index j = 0; j < n; ++j)
        s = add_mod(s, mul_mod(t[static_cast<std::size_t>(i * n + j)], v[static_cast<std::size_t>(j)]));
      next[static_cast<std::size_t>(i)] = s;
    }
    std::swap(v, next);
    if (v != start) continue;
    if (IntVector(power(at, k) * m) == m) {
      result.period = k;
      break;
    }
  }
  return result;
}

IntVector dual_orbit_iterate(const IntMatrix& a, const IntVector& m, std::size_t steps) {
  require_dual_input(a, m);
  const IntMatrix at = a.transpose();
  IntVector v = m;
  for (std::size_t k = 0; k < steps; ++k) v = (at * v).eval();
  return v;
}

std::optional<Integer> periodic_point_count(const IntMatrix& a, unsigned n) {
  if (n == 0) throw std::invalid_argument("periodic_point_count: n must be >= 1");
  const IntMatrix d = power(a, n) - identity<Integer>(a.rows());
  Integer c = abs_value(determinant(d));
  if (c == 0) return std::nullopt;
  return c;
}

std::vector<WeylReport> leaf_equidistribution(const EigenData& ed, const ResonanceLattice& rl,
                                              const EquidistributionConfig& cfg) {
  if (cfg.samples < 1000) throw std::invalid_argument("leaf_equidistribution: need at least 1000 samples");
  if (cfg.mode_box < 1) throw std::invalid_argument("leaf_equidistribution: mode box must be >= 1");
  if (!ed.real()) throw std::domain_error("leaf_equidistribution: eigenvector is not real");

  std::uint64_t w[4];
  {
    PrecisionScope scope(ed.digits + 20);
    const Real delta(cfg.step);
    for (int j = 0; j < 4; ++j) w[j] = fixed_point_fraction(Real(delta * ed.gamma[static_cast<std::size_t>(j)].re));
  }

  const int box = cfg.mode_box;
  const int side = 2 * box + 1;
  const std::size_t pairs = static_cast<std::size_t>(side * side);
  const std::size_t n_modes = pairs * pairs;

  // Pair index p = (m_a + box) * side + (m_b + box); mode index = p12 * pairs + p34.
  std::vector<double> total_re(n_modes, 0.0), total_im(n_modes, 0.0);
  std::vector<double> comp_re(n_modes, 0.0), comp_im(n_modes, 0.0);

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(pairs));

  auto worker = [&](std::size_t row_begin, std::size_t row_end) {
    constexpr std::size_t kBlock = 1024;
    const std::size_t rows = row_end - row_begin;
    std::vector<double> block_re(rows * pairs), block_im(rows * pairs);
    std::vector<double> pw_re(4 * static_cast<std::size_t>(side)), pw_im(4 * static_cast<std::size_t>(side));
    std::vector<double> p12_re(pairs), p12_im(pairs), p34_re(pairs), p34_im(pairs);
    const double scale = 2.0 * std::numbers::pi / 18446744073709551616.0;

    for (std::size_t k0 = 0; k0 < cfg.samples; k0 += kBlock) {
      std::fill(block_re.begin(), block_re.end(), 0.0);
      std::fill(block_im.begin(), block_im.end(), 0.0);
      const std::size_t k1 = std::min(cfg.samples, k0 + kBlock);
      for (std::size_t k = k0; k < k1; ++k) {
        for (int j = 0; j < 4; ++j) {
          const std::uint64_t x = static_cast<std::uint64_t>(k) * w[j];  // k * w_j mod 1, exact
          const double angle = scale * static_cast<double>(x);
          const double c = std::cos(angle), s = std::sin(angle);
          double* re = &pw_re[static_cast<std::size_t>(j * side)];
          double* im = &pw_im[static_cast<std::size_t>(j * side)];
          re[box] = 1.0;
          im[box] = 0.0;
          for (int e = 1; e <= box; ++e) {
            re[box + e] = re[box + e - 1] * c - im[box + e - 1] * s;
            im[box + e] = re[box + e - 1] * s + im[box + e - 1] * c;
            re[box - e] = re[box + e];
            im[box - e] = -im[box + e];
          }
        }
        for (int u = 0; u < side; ++u)
          for (int v = 0; v < side; ++v) {
            const std::size_t p = static_cast<std::size_t>(u * side + v);
            const double ar = pw_re[static_cast<std::size_t>(u)], ai = pw_im[static_cast<std::size_t>(u)];
            const double br = pw_re[static_cast<std::size_t>(side + v)], bi = pw_im[static_cast<std::size_t>(side + v)];
            p12_re[p] = ar * br - ai * bi;
            p12_im[p] = ar * bi + ai * br;
            const double cr = pw_re[static_cast<std::size_t>(2 * side + u)], ci = pw_im[static_cast<std::size_t>(2 * side + u)];
            const double dr = pw_re[static_cast<std::size_t>(3 * side + v)], di = pw_im[static_cast<std::size_t>(3 * side + v)];
            p34_re[p] = cr * dr - ci * di;
            p34_im[p] = cr * di + ci * dr;
          }
        for (std::size_t r = 0; r < rows; ++r) {
          const double ar = p12_re[row_begin + r], ai = p12_im[row_begin + r];
          double* bre = &block_re[r * pairs];
          double* bim = &block_im[r * pairs];
          for (std::size_t q = 0; q < pairs; ++q) {
            bre[q] += ar * p34_re[q] - ai * p34_im[q];
            bim[q] += ar * p34_im[q] + ai * p34_re[q];
          }
        }
      }
      // Kahan accumulation of the block partial sums.
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t q = 0; q < pairs; ++q) {
          const std::size_t idx = (row_begin + r) * pairs + q;
          double y = block_re[r * pairs + q] - comp_re[idx];
          double t = total_re[idx] + y;
          comp_re[idx] = (t - total_re[idx]) - y;
          total_re[idx] = t;
          y = block_im[r * pairs + q] - comp_im[idx];
          t = total_im[idx] + y;
          comp_im[idx] = (t - total_im[idx]) - y;
          total_im[idx] = t;
        }
    }
  };

  std::vector<std::thread> pool;
  const std::size_t chunk = (pairs + threads - 1) / threads;
  for (std::size_t b = 0; b < pairs; b += chunk) pool.emplace_back(worker, b, std::min(pairs, b + chunk));
  for (auto& th : pool) th.join();

  std::vector<WeylReport> out;
  out.reserve(n_modes - 1);
  for (std::size_t p12 = 0; p12 < pairs; ++p12)
    for (std::size_t p34 = 0; p34 < pairs; ++p34) {
      IntVector m(4);
      m << static_cast<int>(p12) / side - box, static_cast<int>(p12) % side - box, static_cast<int>(p34) / side - box,
          static_cast<int>(p34) % side - box;
      if (m.isZero()) continue;
      const std::size_t idx = p12 * pairs + p34;
      WeylReport r;
      r.m = m;
      r.N = cfg.samples;
      r.S_N = std::hypot(total_re[idx], total_im[idx]) / static_cast<double>(cfg.samples);
      r.resonant_predicted = is_resonant(ed, m);
      if (r.resonant_predicted != rl.lattice.contains(m))
        throw InvariantViolation("leaf_equidistribution: resonance lattice and c-coordinates disagree");
      out.push_back(std::move(r));
    }
  return out;
}

}  // namespace toral
