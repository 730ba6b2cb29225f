// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The twl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twl/fim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "twl/error.hpp"

namespace twl {
namespace {

using cd = std::complex<double>;

// Which vectors a spatial parameter perturbs on each side of the link.
enum Vec { kA = 0, kDTheta = 1, kDPhi = 2 };

struct Perturbation {
  Vec rx;
  Vec tx;
  bool angle;  // scale by beta (angles) or by 1 (the amplitude itself)
};

}  // namespace

const std::vector<std::string>& channel_param_labels() {
  static const std::vector<std::string> labels = {"theta1", "phi1", "theta2", "phi2",
                                                  "beta",   "psi",  "tau"};
  return labels;
}

ChannelFim channel_fim(LinkDirection direction, const ArrayGeometry& tx_geom,
                       const ArrayGeometry& rx_geom, const Beamformer& tx_beams,
                       const Beamformer& rx_beams, const ChannelGeometry& cg,
                       const SignalConfig& sig) {
  if (tx_beams.antennas() != tx_geom.size() || rx_beams.antennas() != rx_geom.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "beamformer rows must match the array size");
  }
  if (rx_beams.role() != BeamRole::kReceive) {
    throw Error(ErrorCode::kInvalidArgument, "combiner must have the receive role");
  }
  if (!(cg.beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "path amplitude must be positive");
  }

  const bool forward = direction == LinkDirection::kForward;
  const Direction tx_dir = forward ? cg.d1() : cg.d2();
  const Direction rx_dir = forward ? cg.d2() : cg.d1();

  const SteeringBundle tx = steering(tx_geom, tx_dir);
  const SteeringBundle rx = steering(rx_geom, rx_dir);

  // t_v = F^T v and w_v = W^H v for v in {a, da/dtheta, da/dphi}.
  const Eigen::MatrixXcd& f = tx_beams.matrix();
  const Eigen::MatrixXcd& w = rx_beams.matrix();
  const std::array<Eigen::VectorXcd, 3> t = {f.transpose() * tx.a, f.transpose() * tx.da_dtheta,
                                             f.transpose() * tx.da_dphi};
  const std::array<Eigen::VectorXcd, 3> wv = {w.adjoint() * rx.a, w.adjoint() * rx.da_dtheta,
                                              w.adjoint() * rx.da_dphi};
  std::array<Eigen::VectorXcd, 3> gw;
  for (int i = 0; i < 3; ++i) gw[i] = rx_beams.gram_inverse() * wv[i];

  // r_x^H P_W r_y and t_y^T F F^H t_x^*.
  auto rx_form = [&](Vec x, Vec y) -> cd { return wv[x].dot(gw[y]); };
  auto tx_form = [&](Vec y, Vec x) -> cd { return t[x].dot(t[y]); };

  const double gamma = static_cast<double>(tx_geom.size()) * static_cast<double>(rx_geom.size()) *
                       sig.n_symbols * sig.energy_per_symbol / sig.noise_psd;
  const double beta = cg.beta;

  const double gain = (rx_form(kA, kA) * tx_form(kA, kA)).real();
  if (!(gain > 0.0)) {
    throw Error(ErrorCode::kNoIllumination, "beams deliver zero gain on this link");
  }

  // Spatial parameters in the fixed slot order theta1, phi1, theta2, phi2, beta.
  const Perturbation rx_theta{kDTheta, kA, true};
  const Perturbation rx_phi{kDPhi, kA, true};
  const Perturbation tx_theta{kA, kDTheta, true};
  const Perturbation tx_phi{kA, kDPhi, true};
  const Perturbation amp{kA, kA, false};
  const std::array<Perturbation, 5> spatial =
      forward ? std::array<Perturbation, 5>{tx_theta, tx_phi, rx_theta, rx_phi, amp}
              : std::array<Perturbation, 5>{rx_theta, rx_phi, tx_theta, tx_phi, amp};

  ChannelFim out;
  out.direction = direction;
  out.gamma = gamma;
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      const Perturbation& x = spatial[i];
      const Perturbation& y = spatial[j];
      const double scale = gamma * (x.angle ? beta : 1.0) * (y.angle ? beta : 1.0);
      const double v = scale * (rx_form(x.rx, y.rx) * tx_form(y.tx, x.tx)).real();
      out.matrix(i, j) = v;
      out.matrix(j, i) = v;
    }
  }
  out.matrix(kPsi, kPsi) = gamma * beta * beta * gain;
  out.matrix(kTau, kTau) =
      4.0 * std::numbers::pi * std::numbers::pi * sig.weff2 * gamma * beta * beta * gain;
  return out;
}

Eigen::MatrixXd transform_fim(const Eigen::MatrixXd& fim, const Eigen::MatrixXd& ups) {
  if (fim.rows() != fim.cols() || ups.cols() != fim.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "Jacobian columns must match the FIM size");
  }
  Eigen::MatrixXd out = ups * fim * ups.transpose();
  return 0.5 * (out + out.transpose());
}

Efim efim(const Eigen::MatrixXd& fim, std::span<const int> keep,
          std::span<const std::string> labels) {
  const auto n = static_cast<int>(fim.rows());
  if (fim.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "FIM must be square");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch, "label count must match the FIM size");
  }
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n || kept[static_cast<std::size_t>(k)]) {
      throw Error(ErrorCode::kInvalidArgument, "keep indices must be distinct and in range");
    }
    kept[static_cast<std::size_t>(k)] = true;
  }
  std::vector<int> nuisance;
  for (int i = 0; i < n; ++i) {
    if (!kept[static_cast<std::size_t>(i)]) nuisance.push_back(i);
  }

  const auto nk = static_cast<Eigen::Index>(keep.size());
  const auto nn = static_cast<Eigen::Index>(nuisance.size());
  Eigen::MatrixXd j11(nk, nk);
  Eigen::MatrixXd j12(nk, nn);
  Eigen::MatrixXd j22(nn, nn);
  for (Eigen::Index i = 0; i < nk; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) j11(i, j) = fim(keep[i], keep[j]);
    for (Eigen::Index j = 0; j < nn; ++j) j12(i, j) = fim(keep[i], nuisance[j]);
  }
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j < nn; ++j) j22(i, j) = fim(nuisance[i], nuisance[j]);
  }

  Efim out;
  out.matrix = j11;
  if (nn > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(j22);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    if (eig.info() != Eigen::Success || !(ev.minCoeff() > 1e-14 * scale)) {
      throw Error(ErrorCode::kUnidentifiableNuisance, "nuisance parameters unidentifiable");
    }
    const Eigen::MatrixXd inv =
        eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    out.matrix -= j12 * inv * j12.transpose();
    out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  }
  out.kept_parameters.reserve(keep.size());
  for (int k : keep) {
    out.kept_parameters.push_back(labels.empty() ? "p" + std::to_string(k)
                                                 : labels[static_cast<std::size_t>(k)]);
  }
  return out;
}

Efim angle_efim(const ChannelFim& fim) {
  const double jb = fim.matrix(kBeta, kBeta);
  if (!(jb > 0.0)) {
    throw Error(ErrorCode::kUnidentifiableNuisance, "path amplitude carries no information");
  }
  const Eigen::Matrix4d ja = fim.matrix.topLeftCorner<4, 4>();
  const Eigen::Vector4d jab = fim.matrix.block<4, 1>(0, kBeta);
  Efim out;
  out.matrix = ja - jab * jab.transpose() / jb;
  const auto& labels = channel_param_labels();
  out.kept_parameters.assign(labels.begin(), labels.begin() + 4);
  return out;
}

double delay_info(const ChannelFim& fim) { return fim.matrix(kTau, kTau); }

Efim efim_additivity(const Efim& a, const Efim& b) {
  if (a.kept_parameters != b.kept_parameters) {
    throw Error(ErrorCode::kLabelMismatch, "EFIMs describe different parameter lists");
  }
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "EFIM sizes differ");
  }
  return Efim{a.matrix + b.matrix, a.kept_parameters};
}

bool is_symmetric_psd(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.norm();
  if (scale == 0.0) return true;
  if ((m - m.transpose()).norm() > 1e-12 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol * scale;
}

}  // namespace twl
