// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risim/channel.hpp"
#include "risim/errors.hpp"

using namespace risim;

namespace {

Topology small_topology() {
  Topology t;
  t.num_bs_antennas = 3;
  t.num_ris = 2;
  t.ris_elements_x = 2;
  t.ris_elements_y = 2;
  t.ue_slots_per_ris = {1, 2};
  t.bs_ris_distance_m = 100.0;
  t.ris_ue_distance_m = 2.0;
  return t;
}

double norm_sq(const ComplexMatrix& m) {
  const double f = frobenius_norm(m);
  return f * f;
}

}  // namespace

TEST_CASE("ula response at broadside is all ones") {
  for (std::size_t m_dim : {1, 4, 9}) {
    const auto a = ula_response(m_dim, 0.0, 0.5);
    REQUIRE(a.size() == m_dim);
    for (const cplx& e : a) CHECK(std::abs(e - cplx{1.0, 0.0}) < 1e-15);
  }
}

TEST_CASE("ula response hand evaluation at endfire") {
  // sin(pi/2) = 1 and half-wavelength spacing give exp(j*pi*m) = (-1)^m.
  const auto a = ula_response(4, kPi / 2.0, 0.5);
  const double expected[] = {1.0, -1.0, 1.0, -1.0};
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(a[m].real() == doctest::Approx(expected[m]).epsilon(1e-12));
    CHECK(std::abs(a[m].imag()) < 1e-12);
  }
}

TEST_CASE("ula entries have unit modulus") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto a = ula_response(8, rng.uniform(-kPi, kPi), 0.5);
    for (const cplx& e : a) CHECK(std::abs(e) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("upa response first entry is one") {
  Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    const auto a = upa_response(3, 2, rng.uniform(-kPi, kPi), rng.uniform(0.0, kPi), 0.5);
    CHECK(std::abs(a[0] - cplx{1.0, 0.0}) < 1e-15);
    for (const cplx& e : a) CHECK(std::abs(e) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("upa 1x1 is the scalar one") {
  const auto a = upa_response(1, 1, 0.7, 1.1, 0.5);
  REQUIRE(a.size() == 1);
  CHECK(std::abs(a[0] - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("upa hand evaluation with vanishing angle terms") {
  // azimuth 0 kills the horizontal term, elevation pi/2 kills the vertical one.
  const auto a = upa_response(2, 2, 0.0, kPi / 2.0, 0.5);
  for (const cplx& e : a) CHECK(std::abs(e - cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("path loss at one meter is the reference loss") {
  PathLossModel model;
  model.reference_loss_db = 61.34;
  CHECK(path_loss_gain(model, 1.0, true) ==
        doctest::Approx(std::pow(10.0, -6.134)).epsilon(1e-12));
}

TEST_CASE("path loss doubling law with exponent two") {
  PathLossModel model;
  model.exponent_los = 2.0;
  const double g1 = path_loss_gain(model, 50.0, true);
  const double g2 = path_loss_gain(model, 100.0, true);
  CHECK(g2 == doctest::Approx(g1 / 4.0).epsilon(1e-12));
}

TEST_CASE("path loss hand evaluation") {
  PathLossModel model;
  model.reference_loss_db = 60.0;
  model.exponent_los = 2.0;
  CHECK(path_loss_gain(model, 100.0, true) == doctest::Approx(1e-10).epsilon(1e-12));
}

TEST_CASE("path loss rejects non-positive distances") {
  PathLossModel model;
  CHECK_THROWS_AS(path_loss_gain(model, 0.0, true), DomainError);
  CHECK_THROWS_AS(path_loss_gain(model, -2.0, false), DomainError);
}

TEST_CASE("ris positions sit on the quarter circle with the stated arc spacing") {
  Topology t;
  t.num_ris = 4;
  t.bs_ris_distance_m = 100.0;
  double previous_angle = 0.0;
  for (std::size_t l = 0; l < 4; ++l) {
    const auto pos = t.ris_position(l);
    const double radius = std::sqrt(pos[0] * pos[0] + pos[1] * pos[1]);
    CHECK(radius == doctest::Approx(100.0).epsilon(1e-12));
    const double angle = std::atan2(pos[1], pos[0]);
    CHECK(angle > 0.0);
    CHECK(angle < kPi / 2.0);
    if (l > 0) {
      CHECK(100.0 * (angle - previous_angle) == doctest::Approx(39.2699081699).epsilon(1e-9));
    }
    previous_angle = angle;
  }
}

TEST_CASE("steering outer product matches the one-term hand formula") {
  const auto a_ris = upa_response(2, 2, 0.4, 1.2, 0.5);
  const auto a_bs = ula_response(3, 0.3, 0.5);
  const double pl_gain = 2.5e-9;
  const cplx coeff = std::sqrt(pl_gain);
  const ComplexMatrix h = detail::steering_outer(coeff, a_ris, a_bs);
  REQUIRE(h.rows() == 4);
  REQUIRE(h.cols() == 3);
  for (std::size_t n = 0; n < 4; ++n) {
    for (std::size_t m = 0; m < 3; ++m) {
      CHECK(std::abs(h(n, m) - coeff * a_ris[n] * std::conj(a_bs[m])) < 1e-15);
    }
  }
  // Rank-1: every 2x2 minor vanishes.
  CHECK(std::abs(h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)) < 1e-18);
}

TEST_CASE("single deterministic path gives sqrt(PL) times the conjugate steering row") {
  const auto a = ula_response(4, 0.0, 0.5);
  const double pl_gain = 1e-6;
  const ComplexMatrix row = detail::steering_conj_row(std::sqrt(pl_gain), a);
  REQUIRE(row.rows() == 1);
  REQUIRE(row.cols() == 4);
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(std::abs(row(0, m) - cplx{1e-3, 0.0}) < 1e-15);
  }
}

TEST_CASE("draw_direct_channel shape and error paths") {
  const Topology t = small_topology();
  ClusterParams clusters{2, 3, false, deg_to_rad(7.5)};
  PathLossModel model;
  Rng rng(33);
  const ComplexMatrix h = draw_direct_channel(rng, t, clusters, model, 0);
  CHECK(h.rows() == 1);
  CHECK(h.cols() == t.num_bs_antennas);

  ClusterParams bad = clusters;
  bad.num_clusters = 0;
  Rng rng2(34);
  CHECK_THROWS_AS(draw_direct_channel(rng2, t, bad, model, 0), ConfigError);
  Rng rng3(35);
  CHECK_THROWS_AS(draw_direct_channel(rng3, t, clusters, model, 99), ShapeError);
}

TEST_CASE("direct channel mean squared norm matches M times the path loss") {
  Topology t;
  t.num_bs_antennas = 4;
  t.num_ris = 1;
  t.ris_elements_x = 1;
  t.ris_elements_y = 1;
  t.ue_slots_per_ris = {1};
  t.bs_ris_distance_m = 100.0;
  t.ris_ue_distance_m = 1e-3;  // pins the BS-UE distance to ~100 m

  ClusterParams clusters{3, 2, false, deg_to_rad(7.5)};
  PathLossModel model;
  model.reference_loss_db = 0.0;
  model.exponent_nlos = 2.0;

  const double pl = path_loss_gain(model, 100.0, false);
  Rng rng(36);
  double acc = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    acc += norm_sq(draw_direct_channel(rng, t, clusters, model, 0));
  }
  const double mean = acc / draws;
  const double expected = static_cast<double>(t.num_bs_antennas) * pl;
  CHECK(mean == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("ris channel shapes") {
  const Topology t = small_topology();
  ClusterParams clusters{2, 2, true, deg_to_rad(7.5)};
  PathLossModel model;
  Rng rng(37);
  const ChannelRealization real = draw_ris_channels(rng, t, clusters, clusters, model);
  REQUIRE(real.bs_to_ris.size() == t.num_ris);
  REQUIRE(real.ris_to_ue.size() == t.num_ris * t.total_ue_slots());
  for (const auto& h : real.bs_to_ris) {
    CHECK(h.rows() == t.elements_per_ris());
    CHECK(h.cols() == t.num_bs_antennas);
  }
  for (const auto& h : real.ris_to_ue) {
    CHECK(h.rows() == 1);
    CHECK(h.cols() == t.elements_per_ris());
  }
  CHECK(real.direct.empty());
}

TEST_CASE("bs-ris mean squared Frobenius norm, NLOS-only clusters") {
  Topology t;
  t.num_bs_antennas = 3;
  t.num_ris = 1;
  t.ris_elements_x = 2;
  t.ris_elements_y = 2;
  t.ue_slots_per_ris = {1};
  t.bs_ris_distance_m = 40.0;

  ClusterParams clusters{3, 2, false, deg_to_rad(7.5)};
  PathLossModel model;
  model.reference_loss_db = 10.0;
  model.exponent_nlos = 2.0;
  model.ris_gain = 2.5;

  const double pl = path_loss_gain(model, 40.0, false);
  Rng rng(38);
  double acc = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    acc += norm_sq(detail::draw_bs_ris_matrix(rng, t, clusters, model, 0));
  }
  const double mean = acc / draws;
  const double expected = 3.0 * 4.0 * pl * model.ris_gain;
  CHECK(mean == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("bs-ris mean squared Frobenius norm with the LOS cluster included") {
  Topology t;
  t.num_bs_antennas = 2;
  t.num_ris = 1;
  t.ris_elements_x = 2;
  t.ris_elements_y = 1;
  t.ue_slots_per_ris = {1};
  t.bs_ris_distance_m = 60.0;

  ClusterParams clusters{4, 3, true, deg_to_rad(7.5)};
  PathLossModel model;
  model.reference_loss_db = 20.0;
  model.exponent_los = 2.0;
  model.exponent_nlos = 2.6;
  model.ris_gain = 1.7;

  // Independent gains make the expectation additive over paths: the LOS
  // cluster contributes PL_los/num_clusters, the others PL_nlos.
  const double pl_los = path_loss_gain(model, 60.0, true);
  const double pl_nlos = path_loss_gain(model, 60.0, false);
  const double expected = 2.0 * 2.0 * model.ris_gain *
                          (pl_los / static_cast<double>(clusters.num_clusters) + pl_nlos);

  Rng rng(39);
  double acc = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    acc += norm_sq(detail::draw_bs_ris_matrix(rng, t, clusters, model, 0));
  }
  CHECK(acc / draws == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("channel realization is deterministic given the seed") {
  const Topology t = small_topology();
  ChannelParams params;
  Rng rng_a(40);
  Rng rng_b(40);
  const ChannelRealization a = draw_channel_realization(rng_a, t, params);
  const ChannelRealization b = draw_channel_realization(rng_b, t, params);
  REQUIRE(a.direct.size() == b.direct.size());
  for (std::size_t k = 0; k < a.direct.size(); ++k) {
    for (std::size_t i = 0; i < a.direct[k].size(); ++i) {
      CHECK(a.direct[k].entries()[i] == b.direct[k].entries()[i]);
    }
  }
  for (std::size_t l = 0; l < a.bs_to_ris.size(); ++l) {
    for (std::size_t i = 0; i < a.bs_to_ris[l].size(); ++i) {
      CHECK(a.bs_to_ris[l].entries()[i] == b.bs_to_ris[l].entries()[i]);
    }
  }
  for (std::size_t l = 0; l < a.ris_to_ue.size(); ++l) {
    for (std::size_t i = 0; i < a.ris_to_ue[l].size(); ++i) {
      CHECK(a.ris_to_ue[l].entries()[i] == b.ris_to_ue[l].entries()[i]);
    }
  }
}

TEST_CASE("effective channel with zero reflections reduces to the direct rows") {
  const Topology t = small_topology();
  ChannelParams params;
  Rng rng(41);
  const ChannelRealization real = draw_channel_realization(rng, t, params);
  const std::vector<std::vector<cplx>> zeros(t.num_ris,
                                             std::vector<cplx>(t.elements_per_ris(), 0.0));
  const auto rows = effective_channel(real, zeros);
  REQUIRE(rows.size() == t.total_ue_slots());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      CHECK(rows[k].entries()[i] == real.direct[k].entries()[i]);
    }
  }
}

TEST_CASE("effective channel scalar case matches the hand formula") {
  ChannelRealization real;
  real.direct.push_back(ComplexMatrix(1, 1, {cplx{0.3, -0.2}}));
  real.bs_to_ris.push_back(ComplexMatrix(1, 1, {cplx{1.5, 0.5}}));
  real.ris_to_ue.push_back(ComplexMatrix(1, 1, {cplx{-0.4, 0.9}}));
  const cplx theta{0.6, 0.8};
  const auto rows = effective_channel(real, {{theta}});
  const cplx expected = cplx{0.3, -0.2} + cplx{-0.4, 0.9} * theta * cplx{1.5, 0.5};
  CHECK(std::abs(rows[0](0, 0) - expected) < 1e-15);
}

TEST_CASE("effective channel is affine in the reflection diagonal") {
  const Topology t = small_topology();
  ChannelParams params;
  Rng rng(42);
  const ChannelRealization real = draw_channel_realization(rng, t, params);

  std::vector<std::vector<cplx>> refl(t.num_ris, std::vector<cplx>(t.elements_per_ris()));
  Rng coeff_rng(43);
  for (auto& surface : refl) {
    for (cplx& c : surface) c = coeff_rng.cn_unit();
  }
  std::vector<std::vector<cplx>> doubled = refl;
  for (auto& surface : doubled) {
    for (cplx& c : surface) c *= 2.0;
  }
  const std::vector<std::vector<cplx>> zeros(t.num_ris,
                                             std::vector<cplx>(t.elements_per_ris(), 0.0));

  const auto base = effective_channel(real, zeros);
  const auto once = effective_channel(real, refl);
  const auto twice = effective_channel(real, doubled);
  for (std::size_t k = 0; k < base.size(); ++k) {
    for (std::size_t i = 0; i < base[k].size(); ++i) {
      const cplx lhs = twice[k].entries()[i] - base[k].entries()[i];
      const cplx rhs = 2.0 * (once[k].entries()[i] - base[k].entries()[i]);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("effective channel rejects mismatched reflection lists") {
  const Topology t = small_topology();
  ChannelParams params;
  Rng rng(44);
  const ChannelRealization real = draw_channel_realization(rng, t, params);
  CHECK_THROWS_AS(effective_channel(real, {}), ShapeError);
  std::vector<std::vector<cplx>> bad(t.num_ris, std::vector<cplx>(t.elements_per_ris() + 1, 0.0));
  CHECK_THROWS_AS(effective_channel(real, bad), ShapeError);
}

TEST_CASE("topology validation") {
  Topology t = small_topology();
  t.ue_slots_per_ris = {1};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t = small_topology();
  t.num_bs_antennas = 0;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}
