#include "hnls/radial_field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "hnls/errors.hpp"

namespace hnls {

const char* to_string(Geometry g) {
  return g == Geometry::Hyperbolic ? "hyperbolic" : "euclidean";
}

Geometry geometry_from_string(const std::string& s) {
  if (s == "hyperbolic") return Geometry::Hyperbolic;
  if (s == "euclidean") return Geometry::Euclidean;
  throw ConfigParse("unknown geometry '" + s + "'");
}

RadialGrid::RadialGrid(double r_max_, int n_) : r_max(r_max_), n(n_) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw GridMismatch("r_max must be positive");
  if (n < 16) throw GridMismatch("grid needs at least 16 interior nodes");
}

double RadialGrid::lambda(int m) const { return (m + 1) * std::numbers::pi / r_max; }
double RadialGrid::dlambda() const { return std::numbers::pi / r_max; }

std::shared_ptr<const WeightTable> weight_table(const RadialGrid& grid, Geometry geom) {
  static std::mutex mutex;
  static std::map<std::tuple<double, int, int>, std::shared_ptr<const WeightTable>> cache;
  const auto key = std::make_tuple(grid.r_max, grid.n, static_cast<int>(geom));
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto table = std::make_shared<WeightTable>();
  const std::size_t n = grid.size();
  table->r.resize(n);
  table->inv_w.resize(n);
  table->log_w.resize(n);
  table->dlog_w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid.r(static_cast<int>(j));
    table->r[j] = r;
    if (geom == Geometry::Hyperbolic) {
      // log sinh r = r + log((1 - e^{-2r}) / 2), stable for all r > 0
      const double lw = r + std::log(-std::expm1(-2.0 * r) * 0.5);
      table->log_w[j] = lw;
      table->inv_w[j] = std::exp(-lw);
      table->dlog_w[j] = 1.0 / std::tanh(r);
    } else {
      table->log_w[j] = std::log(r);
      table->inv_w[j] = 1.0 / r;
      table->dlog_w[j] = 1.0 / r;
    }
  }
  cache.emplace(key, table);
  return table;
}

void require_same_grid(const RadialGrid& a, const RadialGrid& b, const char* where) {
  if (a != b) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

RadialField::RadialField(const RadialGrid& grid, Geometry geom)
    : grid_(grid), geom_(geom), h_(grid.size(), cplx{0.0, 0.0}),
      weights_(weight_table(grid, geom)) {}

RadialField::RadialField(const RadialGrid& grid, Geometry geom, std::vector<cplx> h)
    : grid_(grid), geom_(geom), h_(std::move(h)), weights_(weight_table(grid, geom)) {
  if (h_.size() != grid.size()) throw GridMismatch("profile length does not match grid");
}

RadialField RadialField::from_function(const RadialGrid& grid, Geometry geom,
                                       const std::function<cplx(double)>& u) {
  RadialField f(grid, geom);
  const auto& w = f.weights();
  for (std::size_t j = 0; j < f.h_.size(); ++j) {
    const cplx value = u(w.r[j]);
    const double mag = std::abs(value);
    f.h_[j] = (mag == 0.0) ? cplx{0.0, 0.0}
                           : (value / mag) * std::exp(std::log(mag) + w.log_w[j]);
  }
  return f;
}

cplx RadialField::u(int j) const {
  const auto idx = static_cast<std::size_t>(j);
  return h_[idx] * weights_->inv_w[idx];
}

std::vector<cplx> RadialField::u_values() const {
  std::vector<cplx> out(h_.size());
  for (std::size_t j = 0; j < h_.size(); ++j) out[j] = h_[j] * weights_->inv_w[j];
  return out;
}

RadialField RadialField::conj() const {
  RadialField out = *this;
  for (auto& v : out.h_) v = std::conj(v);
  return out;
}

RadialField& RadialField::operator+=(const RadialField& o) {
  require_same_grid(grid_, o.grid_, "operator+=");
  if (geom_ != o.geom_) throw GridMismatch("operator+=: geometry mismatch");
  for (std::size_t j = 0; j < h_.size(); ++j) h_[j] += o.h_[j];
  return *this;
}

RadialField& RadialField::operator-=(const RadialField& o) {
  require_same_grid(grid_, o.grid_, "operator-=");
  if (geom_ != o.geom_) throw GridMismatch("operator-=: geometry mismatch");
  for (std::size_t j = 0; j < h_.size(); ++j) h_[j] -= o.h_[j];
  return *this;
}

RadialField& RadialField::operator*=(cplx s) {
  for (auto& v : h_) v *= s;
  return *this;
}

bool RadialField::all_finite() const {
  for (const auto& v : h_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace hnls
