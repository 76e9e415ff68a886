// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_CHANNEL_HPP
#define RISIM_CHANNEL_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "risim/complexlin.hpp"
#include "risim/rng.hpp"
#include "risim/units.hpp"

namespace risim {

// Physical layout: BS at the origin with an M-antenna ULA, L RIS panels on a
// quarter circle of radius bs_ris_distance_m, UEs scattered ris_ue_distance_m
// from their serving RIS. UE slot k is served by the RIS whose slot block
// contains k; presence within the slots is decided by the environment.
struct Topology {
  std::size_t num_bs_antennas = 16;  // M
  std::size_t num_ris = 4;           // L
  std::size_t ris_elements_x = 4;    // N_x
  std::size_t ris_elements_y = 4;    // N_y
  std::vector<std::size_t> ue_slots_per_ris = {4, 4, 4, 4};
  double bs_ris_distance_m = 100.0;
  double ris_ue_distance_m = 2.0;

  std::size_t elements_per_ris() const { return ris_elements_x * ris_elements_y; }
  std::size_t total_ue_slots() const;
  std::size_t serving_ris(std::size_t ue_slot) const;
  // Panels sit at angles (l + 1/2) * (pi/2) / L on the quarter circle, so the
  // arc spacing between neighbours is bs_ris_distance_m * (pi/2) / L.
  std::array<double, 2> ris_position(std::size_t ris_index) const;
  void validate() const;
};

// Cluster geometry of one link class. num_clusters counts scattering (NLOS)
// clusters; include_los prepends a zeroth cluster whose paths all use the
// deterministic line-of-sight geometry angles and the LOS path-loss exponent.
struct ClusterParams {
  std::size_t num_clusters = 4;
  std::size_t paths_per_cluster = 5;
  bool include_los = true;
  double angle_spread_rad = deg_to_rad(7.5);  // per-path spread around a cluster centre

  void validate() const;
};

// Log-distance path loss PL(dB) = reference_loss_db + 10*exponent*log10(d)
// with separate LOS/NLOS exponents, plus array geometry constants. ris_gain
// is a per-surface linear gain compensation applied once per RIS hop.
struct PathLossModel {
  double reference_loss_db = 61.34;  // at 1 m
  double exponent_los = 2.0;
  double exponent_nlos = 2.92;
  double carrier_wavelength_m = kSpeedOfLight / 28.0e9;
  double antenna_spacing_m = kSpeedOfLight / 28.0e9 / 2.0;
  double ris_gain = 1.0;

  double spacing_ratio() const { return antenna_spacing_m / carrier_wavelength_m; }
  void validate() const;
};

// Cluster settings for the three link classes plus the shared loss model.
// The direct BS->UE link defaults to NLOS-only (blocked direct path); both
// RIS links keep their zeroth LOS cluster.
struct ChannelParams {
  ClusterParams direct{4, 5, false, deg_to_rad(7.5)};
  ClusterParams bs_ris{4, 5, true, deg_to_rad(7.5)};
  ClusterParams ris_ue{4, 5, true, deg_to_rad(7.5)};
  PathLossModel path_loss;

  void validate() const;
};

// One draw of every link for a fixed topology. ris_to_ue is indexed
// ris_index * K + ue_slot with K = total_ue_slots().
struct ChannelRealization {
  std::vector<ComplexMatrix> direct;     // K entries, each 1 x M
  std::vector<ComplexMatrix> bs_to_ris;  // L entries, each N x M
  std::vector<ComplexMatrix> ris_to_ue;  // L*K entries, each 1 x N
  std::vector<std::array<double, 2>> ue_positions;  // K planar coordinates

  const ComplexMatrix& ris_ue(std::size_t ris_index, std::size_t ue_slot,
                              std::size_t total_ues) const {
    return ris_to_ue[ris_index * total_ues + ue_slot];
  }
};

// ULA response a_M(theta): m-th entry exp(j*2*pi*spacing_ratio*m*sin(theta)).
std::vector<cplx> ula_response(std::size_t num_antennas, double angle, double spacing_ratio);

// UPA response over an nx * ny grid: entry (p, q) (flattened p*ny + q) is
// exp(j*2*pi*spacing_ratio*(p*sin(azimuth)*sin(elevation) + q*cos(elevation))).
std::vector<cplx> upa_response(std::size_t nx, std::size_t ny, double azimuth, double elevation,
                               double spacing_ratio);

// Linear power gain of the log-distance model; throws DomainError for
// distance <= 0.
double path_loss_gain(const PathLossModel& model, double distance_m, bool los);

namespace detail {

// One term of a clustered-channel sum for a reflected link:
// coeff * a_ris * a_bs^H (element [n][m] = coeff * a_ris[n] * conj(a_bs[m])).
ComplexMatrix steering_outer(cplx coeff, std::span<const cplx> a_ris, std::span<const cplx> a_bs);

// One term of a row-channel sum: coeff * a^H laid out as a 1 x len row.
ComplexMatrix steering_conj_row(cplx coeff, std::span<const cplx> a);

// UE positions drawn at ris_ue_distance_m from the serving RIS, uniformly
// random direction.
std::vector<std::array<double, 2>> draw_ue_positions(Rng& rng, const Topology& topology);

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b);

ComplexMatrix draw_direct_row(Rng& rng, const Topology& topology, const ClusterParams& clusters,
                              const PathLossModel& model, const std::array<double, 2>& ue_pos);
ComplexMatrix draw_bs_ris_matrix(Rng& rng, const Topology& topology, const ClusterParams& clusters,
                                 const PathLossModel& model, std::size_t ris_index);
ComplexMatrix draw_ris_ue_row(Rng& rng, const Topology& topology, const ClusterParams& clusters,
                              const PathLossModel& model, std::size_t ris_index,
                              const std::array<double, 2>& ue_pos);

}  // namespace detail

// Clustered-channel draw of the 1 x M direct row for one UE slot (the UE
// position is drawn from rng). Throws ConfigError on invalid cluster counts.
ComplexMatrix draw_direct_channel(Rng& rng, const Topology& topology,
                                  const ClusterParams& clusters, const PathLossModel& model,
                                  std::size_t ue_slot);

// Draws the bs_to_ris and ris_to_ue parts (UE positions drawn internally;
// direct rows left empty).
ChannelRealization draw_ris_channels(Rng& rng, const Topology& topology,
                                     const ClusterParams& bs_ris_clusters,
                                     const ClusterParams& ris_ue_clusters,
                                     const PathLossModel& model);

// Full realization with one consistent set of UE positions across all links.
ChannelRealization draw_channel_realization(Rng& rng, const Topology& topology,
                                            const ChannelParams& params);

// Effective rows h_k = h_direct,k + sum_l h_ris_ue(l,k) * diag(reflections[l])
// * H_bs_ris(l). reflections must hold num_ris diagonals of length N.
std::vector<ComplexMatrix> effective_channel(const ChannelRealization& realization,
                                             const std::vector<std::vector<cplx>>& reflections);

}  // namespace risim

#endif
