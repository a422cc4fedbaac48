#include "gtlab/randgen.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace gtlab {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& s : s_) s = sm.next();
}

RandomStream RandomStream::for_trial(std::uint64_t master_seed, std::uint64_t salt,
                                     std::uint64_t index) {
  // Two rounds of SplitMix mixing keep distinct (salt, index) pairs decorrelated.
  SplitMix64 mix(master_seed);
  std::uint64_t derived = mix.next() ^ (0x9e3779b97f4a7c15ULL * (salt + 1)) ^
                          (0xd1b54a32d192ed03ULL * (index + 1));
  return RandomStream(SplitMix64(derived).next());
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomStream::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double RandomStream::uniform_pos() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

double RandomStream::uniform_range(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int RandomStream::uniform_int(int lo, int hi) {
  if (hi < lo) throw ValidationError("uniform_int: empty range");
  const int span = hi - lo + 1;
  int v = lo + static_cast<int>(uniform() * span);
  return v > hi ? hi : v;
}

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_pos();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex RandomStream::cnormal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

void GenConfig::validate() const {
  if (n.lo < 1 || n.hi < n.lo || m.lo < 1 || m.hi < m.lo || k.lo < 1 || k.hi < k.lo)
    throw ValidationError("GenConfig: ranges must be non-empty with positive bounds");
  if (!(min_singular > 0.0 && min_singular <= 1.0))
    throw ValidationError("GenConfig: min_singular must lie in (0,1]");
  if (scale < 0.0) throw ValidationError("GenConfig: scale must be >= 0");
}

int draw_dim(const DimRange& range, RandomStream& stream) {
  return stream.uniform_int(range.lo, range.hi);
}

ComplexMatrix gaussian_matrix(int rows, int cols, RandomStream& stream) {
  if (rows < 1 || cols < 1) throw ValidationError("gaussian_matrix: dims must be >= 1");
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)  // row-major fill order is part of the contract
    for (int j = 0; j < cols; ++j) g(i, j) = stream.cnormal();
  return g;
}

ComplexMatrix orthonormal_columns(const ComplexMatrix& g) {
  if (g.rows() < g.cols())
    throw ValidationError("orthonormal_columns: need rows >= cols");
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;  // makes the R diagonal real non-negative
  }
  return q;
}

HermitianMatrix rand_hermitian(int n, double scale, RandomStream& stream) {
  if (scale < 0.0) throw ValidationError("rand_hermitian: scale must be >= 0");
  ComplexMatrix g = gaussian_matrix(n, n, stream);
  ComplexMatrix h = 0.5 * (g + g.adjoint().eval());
  const double norm = operator_norm(h);
  if (norm > scale) h *= (norm > 0.0 ? scale / norm : 0.0);
  return HermitianMatrix(h);
}

PositiveDefiniteMatrix rand_pd(int n, double cond_cap, RandomStream& stream) {
  if (cond_cap < 1.0) throw ValidationError("rand_pd: cond_cap must be >= 1");
  const double log_cap = std::log(cond_cap);
  HermitianMatrix h = rand_hermitian(n, 0.5 * log_cap, stream);
  const double magnitude = std::exp(stream.uniform_range(std::log(0.5), std::log(2.0)));
  SpectralDecomposition d = hermitian_eig(h);
  const double floor_eig = d.eigenvalues(n - 1) - log_cap;
  RealVector lam(n);
  for (int i = 0; i < n; ++i)
    lam(i) = magnitude * std::exp(std::max(d.eigenvalues(i), floor_eig));
  return PositiveDefiniteMatrix::from_eigenpairs(std::move(d.unitary), std::move(lam));
}

ContractionTuple rand_contraction_tuple(int k, int n, int m, bool exact, RandomStream& stream) {
  if (k < 1 || n < 1 || m < 1)
    throw ValidationError("rand_contraction_tuple: k, n, m must be >= 1");
  if (k * n < m)
    throw ValidationError("rand_contraction_tuple: infeasible, k*n = " +
                          std::to_string(k * n) + " < m = " + std::to_string(m) +
                          " (no orthonormal (kn) x m stack exists)");
  ComplexMatrix q = orthonormal_columns(gaussian_matrix(k * n, m, stream));
  if (!exact) q *= stream.uniform_range(0.3, 1.0);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) blocks.push_back(q.middleRows(i * n, n));
  return ContractionTuple(std::move(blocks), exact ? Resolution::exact : Resolution::sub);
}

ComplexMatrix rand_invertible_contraction(int n, double min_singular, RandomStream& stream) {
  if (!(min_singular > 0.0 && min_singular <= 1.0))
    throw ValidationError("rand_invertible_contraction: min_singular must lie in (0,1]");
  ComplexMatrix u = orthonormal_columns(gaussian_matrix(n, n, stream));
  ComplexMatrix v = orthonormal_columns(gaussian_matrix(n, n, stream));
  RealVector s(n);
  for (int i = 0; i < n; ++i) s(i) = stream.uniform_range(min_singular, 1.0);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix rand_unitary(int n, RandomStream& stream) {
  return orthonormal_columns(gaussian_matrix(n, n, stream));
}

std::pair<PositiveDefiniteMatrix, PositiveDefiniteMatrix> rand_commuting_pair(
    int n, double scale, RandomStream& stream) {
  if (scale < 0.0) throw ValidationError("rand_commuting_pair: scale must be >= 0");
  ComplexMatrix u = rand_unitary(n, stream);
  RealVector la(n), lb(n);
  for (int i = 0; i < n; ++i) la(i) = std::exp(stream.uniform_range(-scale, scale));
  for (int i = 0; i < n; ++i) lb(i) = std::exp(stream.uniform_range(-scale, scale));
  return {PositiveDefiniteMatrix::from_eigenpairs(u, la),
          PositiveDefiniteMatrix::from_eigenpairs(u, lb)};
}

}  // namespace gtlab
