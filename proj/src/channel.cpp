// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/channel.hpp"

#include <cmath>
#include <string>

#include "risim/errors.hpp"

namespace risim {

namespace {

// The BS ULA boresight points at the middle of the quarter circle.
constexpr double kBsBoresight = kPi / 4.0;

double bs_departure_angle(const std::array<double, 2>& target) {
  return wrap_angle(std::atan2(target[1], target[0]) - kBsBoresight);
}

double ris_boresight(const std::array<double, 2>& ris_pos) {
  // Panels face the BS at the origin.
  return std::atan2(-ris_pos[1], -ris_pos[0]);
}

double ris_relative_azimuth(const std::array<double, 2>& ris_pos,
                            const std::array<double, 2>& target) {
  const double global = std::atan2(target[1] - ris_pos[1], target[0] - ris_pos[0]);
  return wrap_angle(global - ris_boresight(ris_pos));
}

struct PathAngles {
  double bs_aod = 0.0;
  double ris_azimuth = 0.0;
  double ris_elevation = kPi / 2.0;  // planar geometry: LOS rays in the horizontal plane
};

}  // namespace

std::size_t Topology::total_ue_slots() const {
  std::size_t total = 0;
  for (std::size_t g : ue_slots_per_ris) total += g;
  return total;
}

std::size_t Topology::serving_ris(std::size_t ue_slot) const {
  std::size_t cursor = 0;
  for (std::size_t l = 0; l < ue_slots_per_ris.size(); ++l) {
    cursor += ue_slots_per_ris[l];
    if (ue_slot < cursor) return l;
  }
  throw ShapeError("serving_ris: UE slot " + std::to_string(ue_slot) + " out of range");
}

std::array<double, 2> Topology::ris_position(std::size_t ris_index) const {
  const double angle = (static_cast<double>(ris_index) + 0.5) * (kPi / 2.0) /
                       static_cast<double>(num_ris);
  return {bs_ris_distance_m * std::cos(angle), bs_ris_distance_m * std::sin(angle)};
}

void Topology::validate() const {
  if (num_bs_antennas == 0) throw ConfigError("topology: need at least one BS antenna");
  if (num_ris == 0) throw ConfigError("topology: need at least one RIS");
  if (ris_elements_x == 0 || ris_elements_y == 0) {
    throw ConfigError("topology: RIS element grid dimensions must be >= 1");
  }
  if (ue_slots_per_ris.size() != num_ris) {
    throw ConfigError("topology: ue_slots_per_ris length must equal num_ris");
  }
  if (total_ue_slots() == 0) throw ConfigError("topology: need at least one UE slot");
  if (bs_ris_distance_m <= 0.0 || ris_ue_distance_m <= 0.0) {
    throw ConfigError("topology: distances must be positive");
  }
}

void ClusterParams::validate() const {
  if (num_clusters < 1) throw ConfigError("clusters: num_clusters must be >= 1");
  if (paths_per_cluster < 1) throw ConfigError("clusters: paths_per_cluster must be >= 1");
  if (angle_spread_rad < 0.0) throw ConfigError("clusters: angle spread must be >= 0");
}

void PathLossModel::validate() const {
  if (exponent_los <= 0.0 || exponent_nlos <= 0.0) {
    throw ConfigError("path loss: exponents must be positive");
  }
  if (carrier_wavelength_m <= 0.0) throw ConfigError("path loss: wavelength must be positive");
  if (antenna_spacing_m <= 0.0) throw ConfigError("path loss: antenna spacing must be positive");
  if (ris_gain <= 0.0) throw ConfigError("path loss: ris_gain must be positive");
}

void ChannelParams::validate() const {
  direct.validate();
  bs_ris.validate();
  ris_ue.validate();
  path_loss.validate();
}

std::vector<cplx> ula_response(std::size_t num_antennas, double angle, double spacing_ratio) {
  std::vector<cplx> a(num_antennas);
  const double step = 2.0 * kPi * spacing_ratio * std::sin(angle);
  for (std::size_t m = 0; m < num_antennas; ++m) {
    const double phase = step * static_cast<double>(m);
    a[m] = {std::cos(phase), std::sin(phase)};
  }
  return a;
}

std::vector<cplx> upa_response(std::size_t nx, std::size_t ny, double azimuth, double elevation,
                               double spacing_ratio) {
  std::vector<cplx> a(nx * ny);
  const double horiz = 2.0 * kPi * spacing_ratio * std::sin(azimuth) * std::sin(elevation);
  const double vert = 2.0 * kPi * spacing_ratio * std::cos(elevation);
  for (std::size_t p = 0; p < nx; ++p) {
    for (std::size_t q = 0; q < ny; ++q) {
      const double phase = horiz * static_cast<double>(p) + vert * static_cast<double>(q);
      a[p * ny + q] = {std::cos(phase), std::sin(phase)};
    }
  }
  return a;
}

double path_loss_gain(const PathLossModel& model, double distance_m, bool los) {
  if (distance_m <= 0.0) {
    throw DomainError("path_loss_gain: distance must be positive, got " +
                      std::to_string(distance_m));
  }
  const double exponent = los ? model.exponent_los : model.exponent_nlos;
  const double loss_db = model.reference_loss_db + 10.0 * exponent * std::log10(distance_m);
  return std::pow(10.0, -loss_db / 10.0);
}

namespace detail {

ComplexMatrix steering_outer(cplx coeff, std::span<const cplx> a_ris, std::span<const cplx> a_bs) {
  ComplexMatrix out(a_ris.size(), a_bs.size());
  for (std::size_t n = 0; n < a_ris.size(); ++n) {
    const cplx left = coeff * a_ris[n];
    for (std::size_t m = 0; m < a_bs.size(); ++m) {
      out(n, m) = left * std::conj(a_bs[m]);
    }
  }
  return out;
}

ComplexMatrix steering_conj_row(cplx coeff, std::span<const cplx> a) {
  ComplexMatrix out(1, a.size());
  for (std::size_t m = 0; m < a.size(); ++m) out(0, m) = coeff * std::conj(a[m]);
  return out;
}

std::vector<std::array<double, 2>> draw_ue_positions(Rng& rng, const Topology& topology) {
  const std::size_t total = topology.total_ue_slots();
  std::vector<std::array<double, 2>> positions(total);
  for (std::size_t k = 0; k < total; ++k) {
    const auto ris = topology.ris_position(topology.serving_ris(k));
    const double direction = rng.uniform(0.0, 2.0 * kPi);
    positions[k] = {ris[0] + topology.ris_ue_distance_m * std::cos(direction),
                    ris[1] + topology.ris_ue_distance_m * std::sin(direction)};
  }
  return positions;
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

// Shared cluster loop. The normalization divides by the NLOS cluster/path
// counts; the LOS cluster, when present, is an extra zeroth term whose paths
// reuse the deterministic geometry angles and the LOS exponent.
template <typename EmitTerm>
void for_each_path(Rng& rng, const ClusterParams& clusters, const PathAngles& los_geometry,
                   bool planar_rx, EmitTerm&& emit) {
  const std::size_t first = clusters.include_los ? 0 : 1;
  for (std::size_t i = first; i <= clusters.num_clusters; ++i) {
    const bool los = (i == 0);
    PathAngles centre = los_geometry;
    if (!los) {
      centre.bs_aod = rng.uniform(-kPi / 2.0, kPi / 2.0);
      if (planar_rx) {
        centre.ris_azimuth = rng.uniform(-kPi / 2.0, kPi / 2.0);
        centre.ris_elevation = rng.uniform(0.0, kPi);
      }
    }
    for (std::size_t q = 0; q < clusters.paths_per_cluster; ++q) {
      const cplx gain = rng.cn_unit();
      PathAngles path = centre;
      if (!los && clusters.angle_spread_rad > 0.0) {
        path.bs_aod = centre.bs_aod + rng.gaussian(clusters.angle_spread_rad);
        if (planar_rx) {
          path.ris_azimuth = centre.ris_azimuth + rng.gaussian(clusters.angle_spread_rad);
          path.ris_elevation = centre.ris_elevation + rng.gaussian(clusters.angle_spread_rad);
        }
      }
      emit(los, gain, path);
    }
  }
}

}  // namespace

ComplexMatrix draw_direct_row(Rng& rng, const Topology& topology, const ClusterParams& clusters,
                              const PathLossModel& model, const std::array<double, 2>& ue_pos) {
  clusters.validate();
  const double dist = distance({0.0, 0.0}, ue_pos);
  const double norm = static_cast<double>(clusters.num_clusters * clusters.paths_per_cluster);
  const double pl_los = path_loss_gain(model, dist, true);
  const double pl_nlos = path_loss_gain(model, dist, false);

  PathAngles geometry;
  geometry.bs_aod = bs_departure_angle(ue_pos);

  ComplexMatrix row(1, topology.num_bs_antennas);
  for_each_path(rng, clusters, geometry, /*planar_rx=*/false,
                [&](bool los, cplx gain, const PathAngles& path) {
                  const double pl = los ? pl_los : pl_nlos;
                  const cplx coeff = gain * std::sqrt(pl / norm);
                  const auto a = ula_response(topology.num_bs_antennas, path.bs_aod,
                                              model.spacing_ratio());
                  for (std::size_t m = 0; m < a.size(); ++m) {
                    row(0, m) += coeff * std::conj(a[m]);
                  }
                });
  return row;
}

ComplexMatrix draw_bs_ris_matrix(Rng& rng, const Topology& topology, const ClusterParams& clusters,
                                 const PathLossModel& model, std::size_t ris_index) {
  clusters.validate();
  const auto ris_pos = topology.ris_position(ris_index);
  const double dist = distance({0.0, 0.0}, ris_pos);
  const double norm = static_cast<double>(clusters.num_clusters * clusters.paths_per_cluster);
  const double pl_los = path_loss_gain(model, dist, true) * model.ris_gain;
  const double pl_nlos = path_loss_gain(model, dist, false) * model.ris_gain;

  PathAngles geometry;
  geometry.bs_aod = bs_departure_angle(ris_pos);
  geometry.ris_azimuth = 0.0;  // panel faces the BS

  ComplexMatrix mat(topology.elements_per_ris(), topology.num_bs_antennas);
  for_each_path(rng, clusters, geometry, /*planar_rx=*/true,
                [&](bool los, cplx gain, const PathAngles& path) {
                  const double pl = los ? pl_los : pl_nlos;
                  const cplx coeff = gain * std::sqrt(pl / norm);
                  const auto a_bs = ula_response(topology.num_bs_antennas, path.bs_aod,
                                                 model.spacing_ratio());
                  const auto a_ris = upa_response(topology.ris_elements_x, topology.ris_elements_y,
                                                  path.ris_azimuth, path.ris_elevation,
                                                  model.spacing_ratio());
                  for (std::size_t n = 0; n < a_ris.size(); ++n) {
                    const cplx left = coeff * a_ris[n];
                    for (std::size_t m = 0; m < a_bs.size(); ++m) {
                      mat(n, m) += left * std::conj(a_bs[m]);
                    }
                  }
                });
  return mat;
}

ComplexMatrix draw_ris_ue_row(Rng& rng, const Topology& topology, const ClusterParams& clusters,
                              const PathLossModel& model, std::size_t ris_index,
                              const std::array<double, 2>& ue_pos) {
  clusters.validate();
  const auto ris_pos = topology.ris_position(ris_index);
  const double dist = distance(ris_pos, ue_pos);
  const double norm = static_cast<double>(clusters.num_clusters * clusters.paths_per_cluster);
  const double pl_los = path_loss_gain(model, dist, true) * model.ris_gain;
  const double pl_nlos = path_loss_gain(model, dist, false) * model.ris_gain;

  PathAngles geometry;
  geometry.ris_azimuth = ris_relative_azimuth(ris_pos, ue_pos);

  ComplexMatrix row(1, topology.elements_per_ris());
  for_each_path(rng, clusters, geometry, /*planar_rx=*/true,
                [&](bool los, cplx gain, const PathAngles& path) {
                  const double pl = los ? pl_los : pl_nlos;
                  const cplx coeff = gain * std::sqrt(pl / norm);
                  const auto a = upa_response(topology.ris_elements_x, topology.ris_elements_y,
                                              path.ris_azimuth, path.ris_elevation,
                                              model.spacing_ratio());
                  for (std::size_t n = 0; n < a.size(); ++n) {
                    row(0, n) += coeff * std::conj(a[n]);
                  }
                });
  return row;
}

}  // namespace detail

ComplexMatrix draw_direct_channel(Rng& rng, const Topology& topology,
                                  const ClusterParams& clusters, const PathLossModel& model,
                                  std::size_t ue_slot) {
  topology.validate();
  if (ue_slot >= topology.total_ue_slots()) {
    throw ShapeError("draw_direct_channel: UE slot out of range");
  }
  const auto ris = topology.ris_position(topology.serving_ris(ue_slot));
  const double direction = rng.uniform(0.0, 2.0 * kPi);
  const std::array<double, 2> pos = {ris[0] + topology.ris_ue_distance_m * std::cos(direction),
                                     ris[1] + topology.ris_ue_distance_m * std::sin(direction)};
  return detail::draw_direct_row(rng, topology, clusters, model, pos);
}

ChannelRealization draw_ris_channels(Rng& rng, const Topology& topology,
                                     const ClusterParams& bs_ris_clusters,
                                     const ClusterParams& ris_ue_clusters,
                                     const PathLossModel& model) {
  topology.validate();
  ChannelRealization out;
  out.ue_positions = detail::draw_ue_positions(rng, topology);
  const std::size_t total = topology.total_ue_slots();
  out.bs_to_ris.reserve(topology.num_ris);
  for (std::size_t l = 0; l < topology.num_ris; ++l) {
    out.bs_to_ris.push_back(detail::draw_bs_ris_matrix(rng, topology, bs_ris_clusters, model, l));
  }
  out.ris_to_ue.reserve(topology.num_ris * total);
  for (std::size_t l = 0; l < topology.num_ris; ++l) {
    for (std::size_t k = 0; k < total; ++k) {
      out.ris_to_ue.push_back(
          detail::draw_ris_ue_row(rng, topology, ris_ue_clusters, model, l, out.ue_positions[k]));
    }
  }
  return out;
}

ChannelRealization draw_channel_realization(Rng& rng, const Topology& topology,
                                            const ChannelParams& params) {
  topology.validate();
  params.validate();
  ChannelRealization out;
  out.ue_positions = detail::draw_ue_positions(rng, topology);
  const std::size_t total = topology.total_ue_slots();

  out.direct.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    out.direct.push_back(
        detail::draw_direct_row(rng, topology, params.direct, params.path_loss,
                                out.ue_positions[k]));
  }
  out.bs_to_ris.reserve(topology.num_ris);
  for (std::size_t l = 0; l < topology.num_ris; ++l) {
    out.bs_to_ris.push_back(
        detail::draw_bs_ris_matrix(rng, topology, params.bs_ris, params.path_loss, l));
  }
  out.ris_to_ue.reserve(topology.num_ris * total);
  for (std::size_t l = 0; l < topology.num_ris; ++l) {
    for (std::size_t k = 0; k < total; ++k) {
      out.ris_to_ue.push_back(detail::draw_ris_ue_row(rng, topology, params.ris_ue,
                                                      params.path_loss, l, out.ue_positions[k]));
    }
  }
  return out;
}

std::vector<ComplexMatrix> effective_channel(const ChannelRealization& realization,
                                             const std::vector<std::vector<cplx>>& reflections) {
  const std::size_t num_ris = realization.bs_to_ris.size();
  const std::size_t total = realization.direct.size();
  if (reflections.size() != num_ris) {
    throw ShapeError("effective_channel: expected " + std::to_string(num_ris) +
                     " reflection diagonals, got " + std::to_string(reflections.size()));
  }
  if (realization.ris_to_ue.size() != num_ris * total) {
    throw ShapeError("effective_channel: inconsistent realization");
  }

  std::vector<ComplexMatrix> rows;
  rows.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    ComplexMatrix h = realization.direct[k];
    const std::size_t m_dim = h.cols();
    for (std::size_t l = 0; l < num_ris; ++l) {
      const ComplexMatrix& bs_ris = realization.bs_to_ris[l];
      const ComplexMatrix& ris_ue = realization.ris_ue(l, k, total);
      const std::vector<cplx>& diag = reflections[l];
      const std::size_t n_dim = bs_ris.rows();
      if (diag.size() != n_dim || ris_ue.cols() != n_dim || bs_ris.cols() != m_dim) {
        throw ShapeError("effective_channel: reflection or link dimensions mismatch");
      }
      for (std::size_t n = 0; n < n_dim; ++n) {
        const cplx weighted = ris_ue(0, n) * diag[n];
        if (weighted == cplx{0.0, 0.0}) continue;
        for (std::size_t m = 0; m < m_dim; ++m) {
          h(0, m) += weighted * bs_ris(n, m);
        }
      }
    }
    rows.push_back(std::move(h));
  }
  return rows;
}

}  // namespace risim
