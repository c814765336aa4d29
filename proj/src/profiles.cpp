#include "hnls/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "hnls/errors.hpp"
#include "hnls/euclidean_comparison.hpp"
#include "hnls/field.hpp"
#include "hnls/radial_transform.hpp"

namespace hnls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t tail_start(std::size_t K) { return K / 2; }

// Least-squares line y = a + b x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  const double b = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  return {(sy - b * sx) / n, b};
}

// max_j |u_j| of the field with spectrum G, and its node.
std::pair<double, int> sup_of_spectrum(const SpectralField& G) {
  const RadialField f = helgason_inverse(G);
  const auto& w = f.weights();
  double best = 0.0;
  int arg = 0;
  const auto h = f.h();
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double v = std::abs(h[j]) * w.inv_w[j];
    if (v > best) {
      best = v;
      arg = static_cast<int>(j);
    }
  }
  return {best, arg};
}

// One scan value N^{-1/2} |P_N e^{it Delta} g| maximized over r.
Concentration probe(const SpectralField& F, double N, double t) {
  SpectralField G = F;
  for (int m = 0; m < F.grid.n; ++m) {
    const double sym = laplacian_symbol(F.geometry, F.grid.lambda(m));
    G.coeffs[static_cast<std::size_t>(m)] *=
        littlewood_paley_symbol(N, sym) * std::polar(1.0, -t * sym);
  }
  const auto [value, j] = sup_of_spectrum(G);
  return {value / std::sqrt(N), N, t, F.grid.r(j)};
}

RadialField filtered(const RadialField& f, const std::function<double(double)>& m) {
  return apply_multiplier([&](double l) { return cplx{m(l), 0.0}; }, f);
}

}  // namespace

const char* to_string(FrameKind k) { return k == FrameKind::Euclidean ? "euclidean" : "hyperbolic"; }

Frame Frame::hyperbolic(std::vector<double> times) {
  Frame f;
  f.kind = FrameKind::Hyperbolic;
  f.N.assign(times.size(), 1.0);
  f.t = std::move(times);
  f.h.assign(f.t.size(), geometry::GroupElement::identity());
  return f;
}

Frame Frame::euclidean(std::vector<double> scales, std::vector<double> times) {
  if (scales.size() != times.size()) throw LengthMismatch("scales and times differ in length");
  Frame f;
  f.kind = FrameKind::Euclidean;
  f.N = std::move(scales);
  f.t = std::move(times);
  f.h.assign(f.t.size(), geometry::GroupElement::identity());
  return f;
}

std::vector<double> frame_discrepancy(const Frame& a, const Frame& b) {
  if (a.size() != b.size() || a.t.size() != b.t.size() || a.h.size() != b.h.size() ||
      a.t.size() != a.size()) {
    throw LengthMismatch("frames have different lengths");
  }
  std::vector<double> d(a.size());
  const auto o = geometry::Point::origin();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double M = std::max(a.N[k], b.N[k]);
    const double dist = geometry::distance(geometry::apply_isometry(a.h[k], o),
                                           geometry::apply_isometry(b.h[k], o));
    d[k] = std::abs(std::log(a.N[k] / b.N[k])) + M * M * std::abs(a.t[k] - b.t[k]) + M * dist;
  }
  return d;
}

bool frames_equivalent(const Frame& a, const Frame& b, double bound) {
  const std::vector<double> d = frame_discrepancy(a, b);
  if (d.empty()) return true;
  if (*std::max_element(d.begin(), d.end()) > bound) return false;
  std::vector<double> k(d.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<double>(i + 1);
  const auto [c0, c1] = fit_line(k, d);
  return c0 + c1 * 4.0 * static_cast<double>(d.size()) <= bound;
}

ConcentrationGrid ConcentrationGrid::standard(double n_max, int per_octave, double T, double dt) {
  ConcentrationGrid g;
  const int count = static_cast<int>(std::round(std::log2(n_max) * per_octave));
  for (int i = 0; i <= count; ++i) g.N.push_back(std::pow(2.0, static_cast<double>(i) / per_octave));
  const int steps = static_cast<int>(std::round(2.0 * T / dt));
  for (int i = 0; i <= steps; ++i) g.t.push_back(-T + i * dt);
  return g;
}

Concentration concentration_delta(const RadialField& g, const ConcentrationGrid& grid) {
  return concentration_delta(g, grid, 0.0, kInf);
}

Concentration concentration_delta(const RadialField& g, const ConcentrationGrid& grid, double n_lo,
                                  double n_hi) {
  const SpectralField F = helgason_forward(g, kInf);
  Concentration best;
  best.value = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < grid.N.size(); ++i) {
    const double N = grid.N[i];
    if (N < n_lo || N > n_hi) continue;
    for (double t : grid.t) {
      const Concentration c = probe(F, N, t);
      if (c.value > best.value) {
        best = c;
        best_idx = i;
      }
    }
  }
  if (best.value < 0.0) return {};
  if (grid.refine_time) {
    const std::size_t lo = best_idx > 0 ? best_idx - 1 : 0;
    const std::size_t hi = std::min(best_idx + 1, grid.N.size() - 1);
    const double step = 0.05 / (best.N * best.N);
    const Concentration center = best;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (grid.N[i] < n_lo || grid.N[i] > n_hi) continue;
      for (int s = -10; s <= 10; ++s) {
        const Concentration c = probe(F, grid.N[i], center.t + s * step);
        if (c.value > best.value) best = c;
      }
    }
  }
  return best;
}

namespace {

std::vector<Concentration> scan_elements(const std::vector<RadialField>& seq, std::size_t first,
                                         const ConcentrationGrid& grid,
                                         const std::vector<std::pair<double, double>>& bands) {
  std::vector<std::future<Concentration>> jobs;
  for (std::size_t k = first; k < seq.size(); ++k) {
    const auto band = bands.empty() ? std::pair<double, double>{0.0, kInf} : bands[k];
    jobs.push_back(std::async(std::launch::async, [&seq, &grid, k, band] {
      return concentration_delta(seq[k], grid, band.first, band.second);
    }));
  }
  std::vector<Concentration> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace

double sequence_delta(const std::vector<RadialField>& seq, const ConcentrationGrid& grid) {
  if (seq.empty()) return 0.0;
  double best = 0.0;
  for (const auto& c : scan_elements(seq, tail_start(seq.size()), grid, {})) best = std::max(best, c.value);
  return best;
}

ExtractedProfile extract_profile(const std::vector<RadialField>& seq, double delta_threshold,
                                 std::vector<RadialField>& remainder,
                                 const ExtractionOptions& opts) {
  if (seq.empty()) throw NoConcentration("empty sequence");
  const std::size_t K = seq.size();
  const std::size_t k0 = tail_start(K);
  const RadialGrid& hgrid = seq.front().grid();

  const std::vector<Concentration> tail = scan_elements(seq, k0, opts.grid, {});
  std::size_t top = 0;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i].value > tail[top].value) top = i;
  }
  ExtractedProfile out;
  out.delta = tail[top].value;
  if (!(out.delta >= delta_threshold)) {
    throw NoConcentration("sequence delta " + std::to_string(out.delta) + " below threshold " +
                          std::to_string(delta_threshold));
  }

  // Decide the frame kind from the scale trend of the high-frequency argmax along the tail.
  bool euclidean = false;
  double fit_a = 0.0, fit_b = 0.0;
  if (tail[top].N > opts.hyperbolic_scale_max) {
    std::vector<std::pair<double, double>> bands(K, {opts.hyperbolic_scale_max * 1.0001, kInf});
    const std::vector<Concentration> high = scan_elements(seq, k0, opts.grid, bands);
    std::vector<double> ks, logs;
    for (std::size_t i = 0; i < high.size(); ++i) {
      ks.push_back(static_cast<double>(k0 + i));
      logs.push_back(std::log(high[i].N));
    }
    std::tie(fit_a, fit_b) = fit_line(ks, logs);
    const double growth = std::exp(fit_b * static_cast<double>(high.size() - 1));
    euclidean = growth >= 2.0;
  }

  std::vector<double> times(K, 0.0);
  if (euclidean) {
    std::vector<double> scales(K);
    std::vector<std::pair<double, double>> bands(K);
    for (std::size_t k = 0; k < K; ++k) {
      scales[k] = std::max(1.0, std::exp(fit_a + fit_b * static_cast<double>(k)));
      bands[k] = {scales[k] / 2.0, scales[k] * 2.0};
    }
    const std::vector<Concentration> located = scan_elements(seq, 0, opts.grid, bands);
    for (std::size_t k = 0; k < K; ++k) times[k] = located[k].t;

    // Localized rescalings g^R_k(v) = eta(v/R) N_k^{-1/2} (Pi_{-t_k} g_k)(Psi_I(v/N_k)),
    // high-passed at N_k / ratio, averaged over the tail.
    const RadialGrid& eg = opts.euclidean_grid;
    std::vector<cplx> acc(eg.size(), cplx{0.0, 0.0});
    for (std::size_t k = k0; k < K; ++k) {
      const double Nk = scales[k];
      const double cut = Nk / opts.euclidean_highpass_ratio;
      const RadialField w = filtered(time_translate(seq[k], -times[k]),
                                     [cut](double l) { return 1.0 - cutoff_eta(l / cut); });
      std::vector<double> radii(eg.size());
      for (int j = 0; j < eg.n; ++j) radii[static_cast<std::size_t>(j)] = std::asinh(eg.r(j) / Nk);
      const std::vector<cplx> vals = evaluate_u(w, radii);
      for (int j = 0; j < eg.n; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        acc[idx] += cutoff_eta(eg.r(j) / opts.localization_radius) * vals[idx] / std::sqrt(Nk);
      }
    }
    std::vector<cplx> h(eg.size());
    const double inv = 1.0 / static_cast<double>(K - k0);
    for (int j = 0; j < eg.n; ++j) {
      const auto idx = static_cast<std::size_t>(j);
      h[idx] = acc[idx] * inv * eg.r(j);
    }
    out.profile = RadialField(eg, Geometry::Euclidean, std::move(h));
    out.frame = Frame::euclidean(scales, times);
    for (std::size_t k = 0; k < K; ++k) {
      out.placed.push_back(time_translate(transplant(out.profile, scales[k], kInf, hgrid), times[k]));
    }
  } else {
    const double n_hi = std::max(opts.hyperbolic_scale_max, 2.0 * tail[top].N);
    std::vector<std::pair<double, double>> bands(K, {0.0, n_hi});
    const std::vector<Concentration> located = scan_elements(seq, 0, opts.grid, bands);
    for (std::size_t k = 0; k < K; ++k) times[k] = located[k].t;
    RadialField avg(hgrid, seq.front().geometry());
    for (std::size_t k = k0; k < K; ++k) avg += time_translate(seq[k], -times[k]);
    avg *= cplx{1.0 / static_cast<double>(K - k0), 0.0};
    const double lowpass = std::max(opts.hyperbolic_lowpass, 2.0 * tail[top].N);
    out.profile = filtered(avg, [lowpass](double l) { return cutoff_eta(l / lowpass); });
    out.frame = Frame::hyperbolic(times);
    for (std::size_t k = 0; k < K; ++k) out.placed.push_back(time_translate(out.profile, times[k]));
  }

  remainder.clear();
  for (std::size_t k = 0; k < K; ++k) remainder.push_back(seq[k] - out.placed[k]);
  out.free_energy = gradient_norm2(out.placed.back());
  return out;
}

ProfileDecomposition full_decomposition(const std::vector<RadialField>& seq, double delta_threshold,
                                        int j_max, const ExtractionOptions& opts) {
  ProfileDecomposition dec;
  dec.remainder = seq;
  for (const auto& f : seq) dec.energy_budget = std::max(dec.energy_budget, gradient_norm2(f));
  double current = sequence_delta(dec.remainder, opts.grid);
  dec.delta_history.push_back(current);
  for (int j = 0; j < j_max && current >= delta_threshold; ++j) {
    std::vector<RadialField> next;
    ExtractedProfile p = extract_profile(dec.remainder, delta_threshold, next, opts);
    const double after = sequence_delta(next, opts.grid);
    if (!(after < current)) break;  // no progress; keep the previous state
    dec.profiles.push_back(std::move(p));
    dec.remainder = std::move(next);
    current = after;
    dec.delta_history.push_back(current);
  }
  return dec;
}

DecouplingReport decoupling_audit(const ProfileDecomposition& dec,
                                  const std::vector<RadialField>& seq) {
  DecouplingReport rep;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    double g = gradient_norm2(seq[k]) - gradient_norm2(dec.remainder[k]);
    double e = compute_energy(seq[k]).energy - compute_energy(dec.remainder[k]).energy;
    for (const auto& p : dec.profiles) {
      g -= gradient_norm2(p.placed[k]);
      e -= compute_energy(p.placed[k]).energy;
    }
    rep.gradient_residual.push_back(std::abs(g));
    rep.energy_residual.push_back(std::abs(e));
  }
  if (!seq.empty()) {
    rep.total_energy = gradient_norm2(seq.back());
    rep.relative_last = rep.total_energy > 0.0 ? rep.gradient_residual.back() / rep.total_energy : 0.0;
  }
  rep.pass = rep.relative_last <= 0.05;
  return rep;
}

CrossTerms cross_terms(const RadialField& a, const RadialField& b) {
  require_same_grid(a.grid(), b.grid(), "cross_terms");
  CrossTerms c;
  c.h1_inner = std::abs(h1_inner(a, b));
  RadialField prod(a.grid(), a.geometry());
  auto h = prod.h_mut();
  const auto& w = a.weights();
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = a.h()[j] * b.h()[j] * w.inv_w[j];
  c.l3_product = lp_norm(prod, 3.0);
  return c;
}

std::vector<RadialField> hyperbolic_profile_sequence(const RadialField& psi,
                                                     const std::vector<double>& times) {
  std::vector<RadialField> out;
  for (double t : times) out.push_back(time_translate(psi, t));
  return out;
}

std::vector<RadialField> euclidean_profile_sequence(const RadialField& phi,
                                                    const std::vector<double>& scales,
                                                    const std::vector<double>& times,
                                                    const RadialGrid& target) {
  if (scales.size() != times.size()) throw LengthMismatch("scales and times differ in length");
  std::vector<RadialField> out;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    out.push_back(time_translate(transplant(phi, scales[k], kInf, target), times[k]));
  }
  return out;
}

}  // namespace hnls
