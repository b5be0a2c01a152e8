#include "hoco/learners.hpp"

#include <cmath>
#include <stdexcept>

namespace hoco {

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::OGD: return "ogd";
    case Algo::DA: return "da";
    case Algo::AdaGrad: return "adagrad";
    case Algo::DAAdaptive: return "da-ada";
    case Algo::OAda: return "oada";
    case Algo::OAdaR: return "oadar";
  }
  throw std::logic_error("algo_name");
}

Algo algo_from_name(const std::string& s) {
  if (s == "ogd") return Algo::OGD;
  if (s == "da") return Algo::DA;
  if (s == "adagrad") return Algo::AdaGrad;
  if (s == "da-ada") return Algo::DAAdaptive;
  if (s == "oada") return Algo::OAda;
  if (s == "oadar") return Algo::OAdaR;
  throw std::invalid_argument("unknown algorithm: " + s);
}

std::string schedule_kind_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::OGDConvex: return "ogd-convex";
    case ScheduleKind::OGDStrong: return "ogd-strong";
    case ScheduleKind::SmoothFixed: return "smooth-fixed";
    case ScheduleKind::AdaGradScale: return "adagrad-scale";
    case ScheduleKind::DAAdaptiveScale: return "da-adaptive-scale";
    case ScheduleKind::OAdaRule: return "oada-rule";
  }
  throw std::logic_error("schedule_kind_name");
}

ScheduleKind schedule_kind_from_name(const std::string& s) {
  if (s == "ogd-convex") return ScheduleKind::OGDConvex;
  if (s == "ogd-strong") return ScheduleKind::OGDStrong;
  if (s == "smooth-fixed") return ScheduleKind::SmoothFixed;
  if (s == "adagrad-scale") return ScheduleKind::AdaGradScale;
  if (s == "da-adaptive-scale") return ScheduleKind::DAAdaptiveScale;
  if (s == "oada-rule") return ScheduleKind::OAdaRule;
  throw std::invalid_argument("unknown schedule kind: " + s);
}

Schedule Schedule::ogd_convex(double D, double G, double sigma, double p) {
  if (!(D > 0.0)) throw std::invalid_argument("ogd_convex: D must be positive");
  if (G < 0.0 || sigma < 0.0) throw std::invalid_argument("ogd_convex: G, sigma must be >= 0");
  if (!(p > 1.0) || !(p <= 2.0)) throw std::invalid_argument("ogd_convex: p must lie in (1,2]");
  Schedule s;
  s.kind = ScheduleKind::OGDConvex;
  s.D = D; s.G = G; s.sigma = sigma; s.p = p;
  return s;
}

Schedule Schedule::ogd_strong(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("ogd_strong: mu must be positive");
  Schedule s;
  s.kind = ScheduleKind::OGDStrong;
  s.mu = mu;
  return s;
}

Schedule Schedule::smooth_fixed(double H, double gamma, double D, double sigma, double p) {
  if (!(H > 0.0) || !(gamma > 0.0) || !(D > 0.0))
    throw std::invalid_argument("smooth_fixed: H, gamma, D must be positive");
  if (sigma < 0.0) throw std::invalid_argument("smooth_fixed: sigma must be >= 0");
  if (!(p > 1.0) || !(p <= 2.0)) throw std::invalid_argument("smooth_fixed: p must lie in (1,2]");
  Schedule s;
  s.kind = ScheduleKind::SmoothFixed;
  s.H = H; s.gamma = gamma; s.D = D; s.sigma = sigma; s.p = p;
  return s;
}

Schedule Schedule::adagrad_scale(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("adagrad_scale: eta must be positive");
  Schedule s;
  s.kind = ScheduleKind::AdaGradScale;
  s.eta = eta;
  return s;
}

Schedule Schedule::da_adaptive_scale(double D) {
  if (!(D > 0.0)) throw std::invalid_argument("da_adaptive_scale: D must be positive");
  Schedule s;
  s.kind = ScheduleKind::DAAdaptiveScale;
  s.D = D;
  return s;
}

Schedule Schedule::oada_rule(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("oada_rule: eta must be positive");
  Schedule s;
  s.kind = ScheduleKind::OAdaRule;
  s.eta = eta;
  s.gamma_rule = GammaRule::Infinite;
  return s;
}

Schedule Schedule::oada_rule_capped(double eta, double D, double nu, double H0) {
  if (!(eta > 0.0) || !(D > 0.0)) throw std::invalid_argument("oada_rule_capped: eta, D must be positive");
  if (!(nu > 0.0) || !(nu <= 1.0)) throw std::invalid_argument("oada_rule_capped: nu must lie in (0,1]");
  if (H0 < 0.0) throw std::invalid_argument("oada_rule_capped: H0 must be >= 0");
  Schedule s;
  s.kind = ScheduleKind::OAdaRule;
  s.eta = eta; s.D = D; s.nu = nu; s.H = H0;
  s.gamma_rule = GammaRule::HolderCap;
  return s;
}

double gamma_cap(const Schedule& s, double h_max) {
  if (s.gamma_rule == GammaRule::Infinite || h_max <= 0.0) return kInf;
  return std::pow(s.D, 1.0 - s.nu) / h_max;
}

double stepsize(const Schedule& s, long t, double V, double h_max) {
  if (t < 1) throw std::invalid_argument("stepsize: t must be >= 1");
  const double td = static_cast<double>(t);
  switch (s.kind) {
    case ScheduleKind::OGDConvex: {
      const double a = s.G > 0.0 ? s.D / (s.G * std::sqrt(td)) : kInf;
      const double b = s.sigma > 0.0 ? s.D / (s.sigma * std::pow(td, 1.0 / s.p)) : kInf;
      return std::min(a, b);
    }
    case ScheduleKind::OGDStrong:
      return 1.0 / (s.mu * td);
    case ScheduleKind::SmoothFixed: {
      const double a = 1.0 / (4.0 * s.H);
      const double b = s.gamma * s.D;
      const double c = s.sigma > 0.0 ? s.D / (s.sigma * std::pow(td, 1.0 / s.p)) : kInf;
      return std::min(std::min(a, b), c);
    }
    case ScheduleKind::AdaGradScale:
      return V > 0.0 ? s.eta / std::sqrt(V) : kInf;
    case ScheduleKind::DAAdaptiveScale:
      return V > 0.0 ? 2.0 * s.D / std::sqrt(V) : kInf;
    case ScheduleKind::OAdaRule: {
      const double base = V > 0.0 ? s.eta / std::sqrt(V) : kInf;
      return std::min(base, gamma_cap(s, h_max));
    }
  }
  throw std::logic_error("stepsize: unknown kind");
}

void ogd_step(OgdState& s, const BallDomain& dom, const Eigen::VectorXd& g, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("ogd_step: eta must be positive and finite");
  s.x = dom.project(s.x - eta * g);
}

void da_step(DaState& s, const BallDomain& dom, const Eigen::VectorXd& g, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("da_step: eta must be positive and finite");
  s.grad_sum += g;
  s.x = dom.project(s.x1 - eta * s.grad_sum);
}

double adagrad_step(AdaGradState& s, const BallDomain& dom, const Eigen::VectorXd& g, double eta_scale) {
  s.V += g.squaredNorm();
  if (s.V <= 0.0) return kInf;  // all-zero gradients so far: stand still
  const double eta = eta_scale / std::sqrt(s.V);
  s.x = dom.project(s.x - eta * g);
  return eta;
}

double da_adaptive_step(DaAdaptiveState& s, const BallDomain& dom, const Eigen::VectorXd& g, double D) {
  s.V += g.squaredNorm();
  s.grad_sum += g;
  if (s.V <= 0.0) return kInf;
  const double eta = 2.0 * D / std::sqrt(s.V);
  s.x = dom.project(s.x1 - eta * s.grad_sum);
  return eta;
}

Eigen::VectorXd oada_combined(const Eigen::VectorXd& g, const Eigen::VectorXd& h_next,
                              const Eigen::VectorXd& h) {
  return g + h_next - h;
}

double oada_step(OAdaState& s, const BallDomain& dom, const Eigen::VectorXd& g,
                 const Eigen::VectorXd& h_next, const Schedule& sched) {
  s.V += (g - s.h).squaredNorm();
  const double eta = std::min(s.V > 0.0 ? sched.eta / std::sqrt(s.V) : kInf,
                              gamma_cap(sched, s.h_max));
  const Eigen::VectorXd dir = oada_combined(g, h_next, s.h);
  if (!std::isfinite(eta)) {
    if (dir.norm() > 0.0)
      throw std::domain_error("oada_step: infinite stepsize with a nonzero update direction");
    // hints matched every gradient so far and nothing points anywhere: stay
    s.h = h_next;
    return kInf;
  }
  s.x = dom.project(s.x - eta * dir);
  s.h = h_next;
  return eta;
}

double oadar_step(OAdaRState& s, const Eigen::VectorXd& g) {
  if (s.chunk < 1) throw std::invalid_argument("oadar_step: chunk must be >= 1");
  if (g.size() != s.x.size()) throw std::invalid_argument("oadar_step: dimension mismatch");
  s.n += 1;
  const long n = s.n;
  if (n % s.chunk == 1) s.V = 0.0;  // fresh chunk: the accumulator restarts
  s.V += (g - s.g_prev).squaredNorm();
  const double eta = s.V > 0.0 ? std::sqrt(2.0) * s.D / std::sqrt(s.V) : kInf;
  const Eigen::VectorXd dir = oada_combined(g, g, s.g_prev);  // 2 g_n - g_{n-1}
  if (std::isfinite(eta)) {
    // argmin over the ball of <dir, x> + ||x - x_n||^2 / (2 eta)
    Eigen::VectorXd cand = s.x - eta * dir;
    const double nrm = cand.norm();
    s.x = nrm <= s.D ? cand : Eigen::VectorXd((s.D / nrm) * cand);
  } else if (dir.norm() > 0.0) {
    // limit of the argmin as the quadratic term vanishes
    s.x = -(s.D / dir.norm()) * dir;
  }
  if ((n + 1) % s.chunk == 1 && s.chunk > 1) {
    const double gn = g.norm();
    s.x = gn > 0.0 ? Eigen::VectorXd(-(s.D / gn) * g) : Eigen::VectorXd(Eigen::VectorXd::Zero(g.size()));
  }
  s.g_prev = g;
  return eta;
}

OnlineLearner::OnlineLearner(BallDomain domain)
    : algo_(Algo::OAdaR), domain_(std::move(domain)) {}

OnlineLearner::OnlineLearner(Algo algo, const Schedule& sched, BallDomain domain,
                             Eigen::VectorXd x1, std::optional<Eigen::VectorXd> h1)
    : algo_(algo), sched_(sched), domain_(std::move(domain)) {
  if (!domain_.contains(x1)) throw std::invalid_argument("OnlineLearner: x1 must be feasible");
  const bool t_based = sched.kind == ScheduleKind::OGDConvex ||
                       sched.kind == ScheduleKind::OGDStrong ||
                       sched.kind == ScheduleKind::SmoothFixed;
  switch (algo) {
    case Algo::OGD:
    case Algo::DA:
      if (!t_based) throw std::invalid_argument("OnlineLearner: ogd/da need a t-indexed schedule");
      break;
    case Algo::AdaGrad:
      if (sched.kind != ScheduleKind::AdaGradScale)
        throw std::invalid_argument("OnlineLearner: adagrad needs the adagrad-scale schedule");
      break;
    case Algo::DAAdaptive:
      if (sched.kind != ScheduleKind::DAAdaptiveScale)
        throw std::invalid_argument("OnlineLearner: da-ada needs the da-adaptive-scale schedule");
      break;
    case Algo::OAda:
      if (sched.kind != ScheduleKind::OAdaRule)
        throw std::invalid_argument("OnlineLearner: oada needs the oada-rule schedule");
      break;
    case Algo::OAdaR:
      throw std::invalid_argument("OnlineLearner: use make_restarting for oadar");
  }
  ogd_.x = x1;
  da_.x1 = x1; da_.x = x1; da_.grad_sum = Eigen::VectorXd::Zero(x1.size());
  ada_.x = x1;
  daada_.x1 = x1; daada_.x = x1; daada_.grad_sum = Eigen::VectorXd::Zero(x1.size());
  oada_.x = x1;
  oada_.h = h1 ? *h1 : Eigen::VectorXd::Zero(x1.size());
  if (oada_.h.size() != x1.size()) throw std::invalid_argument("OnlineLearner: h1 dimension mismatch");
  oada_.h_max = sched.gamma_rule == GammaRule::HolderCap ? sched.H : 0.0;
}

OnlineLearner OnlineLearner::make_restarting(double D, int d, long chunk,
                                             std::optional<Eigen::VectorXd> x1) {
  if (!(D > 0.0) || d <= 0 || chunk < 1)
    throw std::invalid_argument("make_restarting: need D > 0, d > 0, chunk >= 1");
  OnlineLearner lrn(BallDomain(Eigen::VectorXd::Zero(d), D));
  lrn.oadar_.x = x1 ? *x1 : Eigen::VectorXd::Zero(d);
  if (!lrn.domain_.contains(lrn.oadar_.x))
    throw std::invalid_argument("make_restarting: x1 must be feasible");
  lrn.oadar_.g_prev = Eigen::VectorXd::Zero(d);
  lrn.oadar_.chunk = chunk;
  lrn.oadar_.D = D;
  return lrn;
}

const Eigen::VectorXd& OnlineLearner::iterate() const {
  switch (algo_) {
    case Algo::OGD: return ogd_.x;
    case Algo::DA: return da_.x;
    case Algo::AdaGrad: return ada_.x;
    case Algo::DAAdaptive: return daada_.x;
    case Algo::OAda: return oada_.x;
    case Algo::OAdaR: return oadar_.x;
  }
  throw std::logic_error("iterate");
}

double OnlineLearner::step(const Eigen::VectorXd& g) {
  if (algo_ == Algo::OAda) return step_with_hint(g, g);  // default hint: last gradient
  ++t_;
  switch (algo_) {
    case Algo::OGD: {
      const double eta = stepsize(sched_, t_);
      ogd_step(ogd_, domain_, g, eta);
      return eta;
    }
    case Algo::DA: {
      const double eta = stepsize(sched_, t_);
      da_step(da_, domain_, g, eta);
      return eta;
    }
    case Algo::AdaGrad:
      return adagrad_step(ada_, domain_, g, sched_.eta);
    case Algo::DAAdaptive:
      return da_adaptive_step(daada_, domain_, g, sched_.D);
    case Algo::OAdaR:
      return oadar_step(oadar_, g);
    default:
      throw std::logic_error("step");
  }
}

double OnlineLearner::step_with_hint(const Eigen::VectorXd& g, const Eigen::VectorXd& h_next) {
  if (algo_ != Algo::OAda) throw std::invalid_argument("step_with_hint: hints are an oada feature");
  ++t_;
  return oada_step(oada_, domain_, g, h_next, sched_);
}

void OnlineLearner::observe_smoothness(double H_s) {
  if (algo_ != Algo::OAda) throw std::invalid_argument("observe_smoothness: oada only");
  if (H_s > oada_.h_max) oada_.h_max = H_s;
}

double OnlineLearner::V() const {
  switch (algo_) {
    case Algo::AdaGrad: return ada_.V;
    case Algo::DAAdaptive: return daada_.V;
    case Algo::OAda: return oada_.V;
    case Algo::OAdaR: return oadar_.V;
    default: return 0.0;
  }
}

const Eigen::VectorXd& OnlineLearner::hint() const {
  if (algo_ != Algo::OAda) throw std::invalid_argument("hint: oada only");
  return oada_.h;
}

}  // namespace hoco
