#include "hoco/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hoco/learners.hpp"

namespace hoco {

std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::logic_error("format_shortest: buffer too small");
  return std::string(buf, res.ptr);
}

double parse_exact(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("parse_exact: bad number '" + std::string(s) + "'");
  return v;
}

namespace {

std::string format_vector(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_shortest(v[i]);
  }
  return out;
}

Eigen::VectorXd parse_vector(std::string_view s, int d) {
  Eigen::VectorXd v(d);
  int k = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos >= s.size()) break;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ') ++end;
    if (k >= d) throw std::invalid_argument("trace: too many vector components");
    v[k++] = parse_exact(s.substr(pos, end - pos));
    pos = end;
  }
  if (k != d) throw std::invalid_argument("trace: wrong vector length");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t nxt = s.find(sep, pos);
    if (nxt == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, nxt - pos));
    pos = nxt + 1;
  }
  return out;
}

std::map<std::string, std::string> parse_kv(std::string_view s) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    std::size_t end = pos;
    // values may hold spaces (vectors); a value runs to the next " key=" spot
    const std::size_t eq = s.find('=', pos);
    if (eq == std::string_view::npos) break;
    const std::string key(s.substr(pos, eq - pos));
    std::size_t vend = s.size();
    std::size_t scan = eq + 1;
    while (scan < s.size()) {
      const std::size_t sp = s.find(' ', scan);
      if (sp == std::string_view::npos) break;
      std::size_t probe = sp + 1;
      while (probe < s.size() && s[probe] == ' ') ++probe;
      std::size_t word_end = probe;
      while (word_end < s.size() && s[word_end] != ' ' && s[word_end] != '=') ++word_end;
      if (word_end < s.size() && s[word_end] == '=') {
        vend = sp;
        break;
      }
      scan = sp + 1;
    }
    kv[key] = std::string(s.substr(eq + 1, vend - (eq + 1)));
    pos = vend;
    (void)end;
  }
  return kv;
}

const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("trace: missing header field " + key);
  return it->second;
}

}  // namespace

void write_trace(const RunTrace& tr, std::ostream& os) {
  const std::size_t T = static_cast<std::size_t>(tr.T);
  if (tr.T < 1 || tr.xs.size() != T + 1 || tr.gs.size() != T || tr.true_grads.size() != T ||
      tr.noises.size() != T || tr.etas.size() != T)
    throw std::invalid_argument("write_trace: malformed trace");
  os << "# oco-trace v1\n";
  os << "# run algo=" << algo_name(tr.algo) << " problem=" << tr.problem << " T=" << tr.T
     << " seed=" << tr.seed << " chunk=" << tr.chunk << "\n";
  os << "# domain d=" << tr.dim() << " radius=" << format_shortest(tr.domain.radius())
     << " center=" << format_vector(tr.domain.center()) << "\n";
  os << "# noise p=" << format_shortest(tr.p) << " sigma=" << format_shortest(tr.sigma) << "\n";
  const Schedule& s = tr.sched;
  os << "# schedule kind=" << schedule_kind_name(s.kind) << " D=" << format_shortest(s.D)
     << " G=" << format_shortest(s.G) << " sigma=" << format_shortest(s.sigma)
     << " p=" << format_shortest(s.p) << " mu=" << format_shortest(s.mu)
     << " H=" << format_shortest(s.H) << " gamma=" << format_shortest(s.gamma)
     << " eta=" << format_shortest(s.eta) << " nu=" << format_shortest(s.nu)
     << " cap=" << (s.gamma_rule == GammaRule::Infinite ? "inf" : "holder") << "\n";
  os << "t, x_t, g_t, true_grad, noise, eta_t\n";
  for (std::size_t i = 0; i < T; ++i) {
    os << (i + 1) << ", " << format_vector(tr.xs[i]) << ", " << format_vector(tr.gs[i]) << ", "
       << format_vector(tr.true_grads[i]) << ", " << format_vector(tr.noises[i]) << ", "
       << format_shortest(tr.etas[i]) << "\n";
  }
}

namespace {

// one replayed update from x_T with the recorded stepsize: bitwise the same
// arithmetic the live learner performed
Eigen::VectorXd replay_last_step(const RunTrace& tr) {
  const std::size_t T = static_cast<std::size_t>(tr.T);
  const Eigen::VectorXd& xT = tr.xs[T - 1];
  const Eigen::VectorXd& gT = tr.gs[T - 1];
  const double eta = tr.etas[T - 1];
  switch (tr.algo) {
    case Algo::OGD: {
      OgdState st{xT};
      ogd_step(st, tr.domain, gT, eta);
      return st.x;
    }
    case Algo::AdaGrad: {
      if (!std::isfinite(eta)) return xT;  // no-op round
      OgdState st{xT};
      ogd_step(st, tr.domain, gT, eta);  // same projected-step expression
      return st.x;
    }
    case Algo::DA:
    case Algo::DAAdaptive: {
      if (!std::isfinite(eta)) return xT;
      DaState st;
      st.x1 = tr.xs[0];
      st.x = xT;
      st.grad_sum = Eigen::VectorXd::Zero(tr.dim());
      for (std::size_t i = 0; i + 1 < T; ++i) st.grad_sum += tr.gs[i];
      da_step(st, tr.domain, gT, eta);
      return st.x;
    }
    case Algo::OAda: {
      const Eigen::VectorXd hT = T >= 2 ? tr.gs[T - 2] : Eigen::VectorXd::Zero(tr.dim());
      const Eigen::VectorXd dir = oada_combined(gT, gT, hT);
      if (!std::isfinite(eta)) return xT;
      return tr.domain.project(xT - eta * dir);
    }
    case Algo::OAdaR: {
      const Eigen::VectorXd g_prev = T >= 2 ? tr.gs[T - 2] : Eigen::VectorXd::Zero(tr.dim());
      const double D = tr.domain.radius();
      const Eigen::VectorXd dir = oada_combined(gT, gT, g_prev);
      Eigen::VectorXd x = xT;
      if (std::isfinite(eta)) {
        Eigen::VectorXd cand = x - eta * dir;
        const double nrm = cand.norm();
        x = nrm <= D ? cand : Eigen::VectorXd((D / nrm) * cand);
      } else if (dir.norm() > 0.0) {
        x = -(D / dir.norm()) * dir;
      }
      if (tr.chunk > 1 && (tr.T + 1) % tr.chunk == 1) {
        const double gn = gT.norm();
        x = gn > 0.0 ? Eigen::VectorXd(-(D / gn) * gT)
                     : Eigen::VectorXd(Eigen::VectorXd::Zero(tr.dim()));
      }
      return x;
    }
  }
  throw std::logic_error("replay_last_step");
}

}  // namespace

RunTrace read_trace(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# oco-trace v1")
    throw std::invalid_argument("read_trace: not a trace file");
  std::map<std::string, std::string> run_kv, dom_kv, noise_kv, sched_kv;
  while (is.peek() == '#') {
    std::getline(is, line);
    const std::string_view lv(line);
    if (lv.rfind("# run ", 0) == 0) run_kv = parse_kv(lv.substr(6));
    else if (lv.rfind("# domain ", 0) == 0) dom_kv = parse_kv(lv.substr(9));
    else if (lv.rfind("# noise ", 0) == 0) noise_kv = parse_kv(lv.substr(8));
    else if (lv.rfind("# schedule ", 0) == 0) sched_kv = parse_kv(lv.substr(11));
    else throw std::invalid_argument("read_trace: unknown header line: " + line);
  }
  if (!std::getline(is, line) || line.rfind("t, x_t", 0) != 0)
    throw std::invalid_argument("read_trace: missing column header");

  RunTrace tr;
  tr.algo = algo_from_name(need(run_kv, "algo"));
  tr.problem = need(run_kv, "problem");
  tr.T = std::stol(need(run_kv, "T"));
  tr.seed = std::stoull(need(run_kv, "seed"));
  tr.chunk = std::stol(need(run_kv, "chunk"));
  const int d = std::stoi(need(dom_kv, "d"));
  tr.domain = BallDomain(parse_vector(need(dom_kv, "center"), d),
                         parse_exact(need(dom_kv, "radius")));
  tr.p = parse_exact(need(noise_kv, "p"));
  tr.sigma = parse_exact(need(noise_kv, "sigma"));
  Schedule s;
  s.kind = schedule_kind_from_name(need(sched_kv, "kind"));
  s.D = parse_exact(need(sched_kv, "D"));
  s.G = parse_exact(need(sched_kv, "G"));
  s.sigma = parse_exact(need(sched_kv, "sigma"));
  s.p = parse_exact(need(sched_kv, "p"));
  s.mu = parse_exact(need(sched_kv, "mu"));
  s.H = parse_exact(need(sched_kv, "H"));
  s.gamma = parse_exact(need(sched_kv, "gamma"));
  s.eta = parse_exact(need(sched_kv, "eta"));
  s.nu = parse_exact(need(sched_kv, "nu"));
  s.gamma_rule = need(sched_kv, "cap") == "holder" ? GammaRule::HolderCap : GammaRule::Infinite;
  tr.sched = s;

  if (tr.T < 1) throw std::invalid_argument("read_trace: T must be >= 1");
  for (long t = 1; t <= tr.T; ++t) {
    if (!std::getline(is, line)) throw std::invalid_argument("read_trace: truncated round data");
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw std::invalid_argument("read_trace: bad round line: " + line);
    if (std::stol(std::string(fields[0])) != t)
      throw std::invalid_argument("read_trace: rounds out of order");
    tr.xs.push_back(parse_vector(fields[1], d));
    tr.gs.push_back(parse_vector(fields[2], d));
    tr.true_grads.push_back(parse_vector(fields[3], d));
    tr.noises.push_back(parse_vector(fields[4], d));
    tr.etas.push_back(parse_exact(fields[5]));
  }
  tr.xs.push_back(replay_last_step(tr));
  if (tr.algo == Algo::OAda) {
    tr.hints.push_back(Eigen::VectorXd::Zero(d));
    for (const auto& g : tr.gs) tr.hints.push_back(g);
  }
  return tr;
}

void write_trace_file(const RunTrace& tr, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_trace_file: cannot open " + path);
  write_trace(tr, os);
}

RunTrace read_trace_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_trace_file: cannot open " + path);
  return read_trace(is);
}

}  // namespace hoco
