#include "hoco/certify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hoco {

double c_of_p(double p) {
  if (!(p > 1.0) || !(p <= 2.0)) throw std::invalid_argument("c_of_p: p must lie in (1,2]");
  return std::pow(4.0 * p - 4.0, p - 1.0) / std::pow(p, p);
}

Bound ogd_step_bound(const Eigen::VectorXd& x_t, const Eigen::VectorXd& x_next,
                     const Eigen::VectorXd& g, const Eigen::VectorXd& noise, double eta,
                     const Eigen::VectorXd& x, double diam, double G, double p) {
  Bound b;
  b.lhs = g.dot(x_t - x);
  const double dist = (x_t - x).squaredNorm() - (x_next - x).squaredNorm();
  const double eps = noise.norm();
  b.rhs = dist / (2.0 * eta) + eta * G * G +
          c_of_p(p) * std::pow(eta, p - 1.0) * std::pow(eps, p) * std::pow(diam, 2.0 - p);
  return b;
}

namespace {
void require_rounds(const RunTrace& tr) {
  const std::size_t T = static_cast<std::size_t>(tr.T);
  if (tr.T < 1 || tr.xs.size() != T + 1 || tr.gs.size() != T || tr.noises.size() != T ||
      tr.etas.size() != T)
    throw std::invalid_argument("certify: malformed trace");
}
}  // namespace

Bound da_run_bound(const RunTrace& tr, const Eigen::VectorXd& x, double G) {
  if (tr.algo != Algo::DA) throw std::invalid_argument("da_run_bound: not a da trace");
  require_rounds(tr);
  const double diam = tr.domain.diameter();
  const double cp = c_of_p(tr.p);
  Bound b;
  double noise_terms = 0.0;
  for (long t = 0; t < tr.T; ++t) {
    const std::size_t i = static_cast<std::size_t>(t);
    b.lhs += tr.gs[i].dot(tr.xs[i] - x);
    const double eta_prev = t == 0 ? tr.etas[0] : tr.etas[i - 1];
    if (t > 0 && tr.etas[i] > tr.etas[i - 1] * (1.0 + 1e-12))
      throw std::invalid_argument("da_run_bound: stepsizes must be nonincreasing");
    noise_terms += eta_prev * G * G +
                   cp * std::pow(eta_prev, tr.p - 1.0) * std::pow(tr.noises[i].norm(), tr.p) *
                       std::pow(diam, 2.0 - tr.p);
  }
  b.rhs = (x - tr.xs[0]).squaredNorm() / (2.0 * tr.etas.back()) + noise_terms;
  return b;
}

namespace {
double regret_lhs(const RunTrace& tr, const Eigen::VectorXd& x) {
  double lhs = 0.0;
  for (long t = 0; t < tr.T; ++t) {
    const std::size_t i = static_cast<std::size_t>(t);
    lhs += tr.gs[i].dot(tr.xs[i] - x);
  }
  return lhs;
}
}  // namespace

Bound adagrad_run_bound_tight(const RunTrace& tr, const Eigen::VectorXd& x) {
  if (tr.algo != Algo::AdaGrad) throw std::invalid_argument("adagrad_run_bound: not an adagrad trace");
  require_rounds(tr);
  double V = 0.0;
  for (const auto& g : tr.gs) V += g.squaredNorm();
  const double diam = tr.domain.diameter();
  const double eta = tr.sched.eta;
  Bound b;
  b.lhs = regret_lhs(tr, x);
  b.rhs = (diam * diam / (2.0 * eta) + eta) * std::sqrt(V);
  return b;
}

Bound adagrad_run_bound_split(const RunTrace& tr, const Eigen::VectorXd& x) {
  if (tr.algo != Algo::AdaGrad) throw std::invalid_argument("adagrad_run_bound: not an adagrad trace");
  require_rounds(tr);
  if (tr.true_grads.size() != static_cast<std::size_t>(tr.T))
    throw std::invalid_argument("adagrad_run_bound_split: missing exact gradients");
  double S_true = 0.0, S_noise = 0.0;
  for (long t = 0; t < tr.T; ++t) {
    const std::size_t i = static_cast<std::size_t>(t);
    S_true += tr.true_grads[i].squaredNorm();
    S_noise += std::pow(tr.noises[i].norm(), tr.p);
  }
  const double diam = tr.domain.diameter();
  const double eta = tr.sched.eta;
  Bound b;
  b.lhs = regret_lhs(tr, x);
  b.rhs = std::sqrt(2.0) * (diam * diam / (2.0 * eta) + eta) *
          (std::sqrt(S_true) + std::pow(S_noise, 1.0 / tr.p));
  return b;
}

std::vector<double> gammas_from_schedule(const Schedule& sched, long T) {
  if (sched.kind != ScheduleKind::OAdaRule)
    throw std::invalid_argument("gammas_from_schedule: not an oada schedule");
  const double cap = gamma_cap(sched, sched.gamma_rule == GammaRule::HolderCap ? sched.H : 0.0);
  return std::vector<double>(static_cast<std::size_t>(T), cap);
}

Bound oada_run_bound(const RunTrace& tr, const Eigen::VectorXd& x, const std::vector<double>& gammas) {
  if (tr.algo != Algo::OAda) throw std::invalid_argument("oada_run_bound: not an oada trace");
  require_rounds(tr);
  if (tr.hints.size() != static_cast<std::size_t>(tr.T) + 1)
    throw std::invalid_argument("oada_run_bound: hint record must cover h_1..h_{T+1}");
  if (gammas.size() != static_cast<std::size_t>(tr.T))
    throw std::invalid_argument("oada_run_bound: need one gamma per round");
  double V = 0.0;
  for (long t = 0; t < tr.T; ++t) {
    const std::size_t i = static_cast<std::size_t>(t);
    if (t > 0 && gammas[i] > gammas[i - 1] * (1.0 + 1e-12))
      throw std::invalid_argument("oada_run_bound: caps must be nonincreasing");
    V += (tr.gs[i] - tr.hints[i]).squaredNorm();
  }
  const double diam = tr.domain.diameter();
  const double eta = tr.sched.eta;
  double penalty = 0.0;
  for (long t = 0; t + 1 < tr.T; ++t) {
    const std::size_t i = static_cast<std::size_t>(t);
    if (std::isfinite(gammas[i]))
      penalty += (tr.xs[i + 1] - tr.xs[i]).squaredNorm() / (4.0 * gammas[i]);
  }
  const double head = std::isfinite(gammas.back()) ? diam * diam / (2.0 * gammas.back()) : 0.0;
  Bound b;
  b.lhs = regret_lhs(tr, x);
  b.rhs = head + (diam * diam / (2.0 * eta) + 2.0 * eta) * std::sqrt(V) - penalty +
          tr.hints.front().dot(tr.xs.front() - x) -
          tr.hints.back().dot(tr.xs.back() - x);
  return b;
}

ChunkBounds oadar_chunk_bounds(const RunTrace& tr, const std::vector<Eigen::VectorXd>& vks) {
  if (tr.algo != Algo::OAdaR) throw std::invalid_argument("oadar_chunk_bounds: not an oadar trace");
  require_rounds(tr);
  if (tr.chunk < 1 || tr.T % tr.chunk != 0)
    throw std::invalid_argument("oadar_chunk_bounds: horizon must be a whole number of chunks");
  const long K = tr.T / tr.chunk;
  if (vks.size() != static_cast<std::size_t>(K))
    throw std::invalid_argument("oadar_chunk_bounds: need one comparator per chunk");
  const double D = tr.domain.radius();
  ChunkBounds out;
  Eigen::VectorXd g_prev = Eigen::VectorXd::Zero(tr.dim());
  for (long k = 0; k < K; ++k) {
    const Eigen::VectorXd& v = vks[static_cast<std::size_t>(k)];
    double lhs = 0.0, Vc = 0.0;
    for (long j = 0; j < tr.chunk; ++j) {
      const std::size_t i = static_cast<std::size_t>(k * tr.chunk + j);
      lhs += tr.gs[i].dot(tr.xs[i] - v);
      Vc += (tr.gs[i] - g_prev).squaredNorm();
      g_prev = tr.gs[i];
    }
    // carry-over through the restart point; g_0 = 0 makes the first one vanish
    double bk = 0.0;
    if (k > 0) {
      const std::size_t prev_end = static_cast<std::size_t>(k * tr.chunk);
      bk = tr.gs[prev_end - 1].dot(tr.xs[prev_end] - v);
    }
    Bound b;
    b.lhs = lhs;
    b.rhs = bk + 3.0 * std::sqrt(2.0) * D * std::sqrt(Vc);
    out.chunk.push_back(b);
    out.boundary.push_back(bk);
  }
  return out;
}

namespace {
void fold(CertCheck& c, const Bound& b) {
  ++c.count;
  c.min_rel_slack = std::min(c.min_rel_slack, b.rel_slack());
}
void finish(CertReport& r, CertCheck c) {
  c.pass = c.min_rel_slack >= -kCertTol;
  r.min_rel_slack = std::min(r.min_rel_slack, c.min_rel_slack);
  r.pass = r.pass && c.pass;
  r.checks.push_back(std::move(c));
}
}  // namespace

CertReport certify_trace(const RunTrace& tr, const std::vector<Eigen::VectorXd>& comparators,
                         double G) {
  require_rounds(tr);
  if (comparators.empty()) throw std::invalid_argument("certify_trace: no comparators");
  if (G < 0.0) G = tr.observed_G();
  CertReport report;
  switch (tr.algo) {
    case Algo::OGD: {
      CertCheck c{"ogd-step"};
      const double diam = tr.domain.diameter();
      for (const auto& x : comparators)
        for (long t = 0; t < tr.T; ++t) {
          const std::size_t i = static_cast<std::size_t>(t);
          fold(c, ogd_step_bound(tr.xs[i], tr.xs[i + 1], tr.gs[i], tr.noises[i], tr.etas[i], x,
                                 diam, G, tr.p));
        }
      finish(report, std::move(c));
      break;
    }
    case Algo::DA: {
      CertCheck c{"da-run"};
      for (const auto& x : comparators) fold(c, da_run_bound(tr, x, G));
      finish(report, std::move(c));
      break;
    }
    case Algo::AdaGrad: {
      CertCheck tight{"adagrad-run-tight"}, split{"adagrad-run-split"};
      for (const auto& x : comparators) {
        fold(tight, adagrad_run_bound_tight(tr, x));
        fold(split, adagrad_run_bound_split(tr, x));
      }
      finish(report, std::move(tight));
      finish(report, std::move(split));
      break;
    }
    case Algo::OAda: {
      CertCheck c{"oada-run"};
      const std::vector<double> gammas = gammas_from_schedule(tr.sched, tr.T);
      for (const auto& x : comparators) fold(c, oada_run_bound(tr, x, gammas));
      finish(report, std::move(c));
      break;
    }
    case Algo::DAAdaptive:
      throw std::invalid_argument("certify_trace: no certificate for da-ada runs");
    case Algo::OAdaR:
      throw std::invalid_argument("certify_trace: oadar needs per-chunk comparators");
  }
  return report;
}

CertReport certify_oadar_trace(const RunTrace& tr,
                               const std::vector<std::vector<Eigen::VectorXd>>& comparator_tuples) {
  if (comparator_tuples.empty()) throw std::invalid_argument("certify_oadar_trace: no comparators");
  CertReport report;
  CertCheck chunk{"oadar-chunk"}, boundary{"oadar-boundary"};
  for (const auto& vks : comparator_tuples) {
    const ChunkBounds cb = oadar_chunk_bounds(tr, vks);
    for (const auto& b : cb.chunk) fold(chunk, b);
    for (double bk : cb.boundary) {
      // the carry-over must be nonpositive on its own
      Bound b;
      b.lhs = bk;
      b.rhs = 0.0;
      fold(boundary, b);
    }
  }
  finish(report, std::move(chunk));
  finish(report, std::move(boundary));
  return report;
}

std::string format_report(const CertReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  checks=" << c.count
       << "  min_rel_slack=" << c.min_rel_slack << "\n";
  }
  os << (report.pass ? "PASS" : "FAIL") << "  overall  min_rel_slack=" << report.min_rel_slack
     << "\n";
  return os.str();
}

}  // namespace hoco
