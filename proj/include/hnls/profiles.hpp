#pragma once

// Finitary profile decomposition for sequences of radial fields on H^3.
//
// Frames are finite sequences (N_k, t_k, h_k); translations stay at the
// identity in the radial sector. Limits over k are replaced by statements on
// the tail half of the sequence, and weak limits by averages over that tail
// after separating the frame's frequency band (see extract_profile).

#include <optional>
#include <vector>

#include "hnls/geometry.hpp"
#include "hnls/radial_field.hpp"

namespace hnls {

enum class FrameKind { Euclidean, Hyperbolic };

const char* to_string(FrameKind k);

struct Frame {
  FrameKind kind = FrameKind::Hyperbolic;
  std::vector<double> N;
  std::vector<double> t;
  std::vector<geometry::GroupElement> h;

  std::size_t size() const { return N.size(); }
  /// Hyperbolic frame with unit scales and identity translations.
  static Frame hyperbolic(std::vector<double> times);
  /// Euclidean frame with identity translations.
  static Frame euclidean(std::vector<double> scales, std::vector<double> times);
};

/// Per-k discrepancy |ln(N_k/N'_k)| + M_k^2 |t_k - t'_k| + M_k d(h_k 0, h'_k 0),
/// M_k = max(N_k, N'_k). Throws LengthMismatch.
std::vector<double> frame_discrepancy(const Frame& a, const Frame& b);

/// Finite-k surrogate of a bounded limsup: every discrepancy is at most `bound`
/// and the least-squares linear trend of the discrepancies, extrapolated to
/// four times the sequence length, stays at most `bound` as well.
bool frames_equivalent(const Frame& a, const Frame& b, double bound = 10.0);

struct ConcentrationGrid {
  std::vector<double> N;  // scales >= 1
  std::vector<double> t;  // times
  bool refine_time = true;  // local rescan around the best time with step ~ 0.05 / N^2

  /// Log-spaced scales 1..n_max (`per_octave` per doubling) and uniform times in [-T, T].
  static ConcentrationGrid standard(double n_max = 1024.0, int per_octave = 4, double T = 2.0,
                                    double dt = 0.125);
};

struct Concentration {
  double value = 0.0;  // max N^{-1/2} |P_N e^{it Delta} g|(r)
  double N = 1.0;
  double t = 0.0;
  double r = 0.0;
};

Concentration concentration_delta(const RadialField& g, const ConcentrationGrid& grid);
/// Same, with the scale restricted to [n_lo, n_hi].
Concentration concentration_delta(const RadialField& g, const ConcentrationGrid& grid, double n_lo,
                                   double n_hi);

struct ExtractionOptions {
  ConcentrationGrid grid = ConcentrationGrid::standard();
  /// Argmax scales at or below this bound (along the tail) mean a hyperbolic frame.
  double hyperbolic_scale_max = 4.0;
  /// Hyperbolic profiles keep frequencies lambda <= cutoff (smoothly to 2 * cutoff).
  double hyperbolic_lowpass = 8.0;
  /// Euclidean localizations drop frequencies below N_k / ratio.
  double euclidean_highpass_ratio = 4.0;
  /// Euclidean localization radius R of eta(v / R).
  double localization_radius = 16.0;
  /// Grid carrying extracted Euclidean profiles.
  RadialGrid euclidean_grid{48.0, 4096};
};

struct ExtractedProfile {
  Frame frame;
  /// Hyperbolic profile psi (hyperbolic grid) or Euclidean profile phi (Euclidean grid).
  RadialField profile;
  /// The profile placed along the frame: Pi_{t_k} psi or Pi_{t_k} T_{N_k} phi.
  std::vector<RadialField> placed;
  double delta = 0.0;             // concentration of the input sequence
  double free_energy = 0.0;       // ||grad placed_K||^2 at the last element
};

/// delta of a sequence: max of the per-element concentration over the tail half.
double sequence_delta(const std::vector<RadialField>& seq, const ConcentrationGrid& grid);

/// One greedy extraction round. Throws NoConcentration if the sequence delta is
/// below `delta_threshold`. `remainder` receives seq - placed.
ExtractedProfile extract_profile(const std::vector<RadialField>& seq, double delta_threshold,
                                 std::vector<RadialField>& remainder,
                                 const ExtractionOptions& opts = {});

struct ProfileDecomposition {
  std::vector<ExtractedProfile> profiles;
  std::vector<RadialField> remainder;
  std::vector<double> delta_history;  // sequence delta before each round and at the end
  double energy_budget = 0.0;         // sup_k ||grad f_k||^2
};

ProfileDecomposition full_decomposition(const std::vector<RadialField>& seq, double delta_threshold,
                                        int j_max, const ExtractionOptions& opts = {});

struct DecouplingReport {
  /// |‖grad f_k‖^2 - sum ‖grad profile_k‖^2 - ‖grad r_k‖^2| per k.
  std::vector<double> gradient_residual;
  /// Same with E^1 in place of ‖grad .‖^2.
  std::vector<double> energy_residual;
  double total_energy = 0.0;        // ‖grad f_K‖^2 at the last element
  double relative_last = 0.0;       // gradient_residual.back() / total_energy
  bool pass = false;                // relative_last <= 5%
};

DecouplingReport decoupling_audit(const ProfileDecomposition& dec,
                                  const std::vector<RadialField>& seq);

struct CrossTerms {
  double h1_inner = 0.0;    // |int grad a . conj(grad b) d mu|
  double l3_product = 0.0;  // ||a b||_{L^3}
};

CrossTerms cross_terms(const RadialField& a, const RadialField& b);

/// Synthetic sequence builders: Pi_{t_k} psi, and Pi_{t_k} of N_k^{1/2} phi(N_k sinh r)
/// (no Q_N, so every element carries the same profile exactly).
std::vector<RadialField> hyperbolic_profile_sequence(const RadialField& psi,
                                                     const std::vector<double>& times);
std::vector<RadialField> euclidean_profile_sequence(const RadialField& phi,
                                                    const std::vector<double>& scales,
                                                    const std::vector<double>& times,
                                                    const RadialGrid& target);

}  // namespace hnls
