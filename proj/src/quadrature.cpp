#include "vacspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "vacspec/spectra.hpp"

namespace vacspec {

namespace {

// Gauss-Kronrod 7-15 abscissae (positive half) and weights, QUADPACK values.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// 7-point Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0.0;   // K15
  double error = 0.0;   // QUADPACK-style scaled |K15 - G7|
  double resabs = 0.0;  // K15 of |f|
};

PanelEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a,
                               double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  const double fc = f(center);
  fv[14] = fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    fv[2 * i] = f(center - dx);
    fv[2 * i + 1] = f(center + dx);
  }

  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double sum = fv[2 * i] + fv[2 * i + 1];
    resk += kWgk[i] * sum;
    resabs += kWgk[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
    if (i % 2 == 1) resg += kWg[i / 2] * sum;
  }

  // Difference between the rules, saturated by the variation of f on the panel
  // (QUADPACK's resasc correction).
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  resasc *= std::abs(half);

  PanelEstimate out;
  out.value = resk * half;
  out.resabs = resabs * std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (out.resabs > std::numeric_limits<double>::min() / eps50)
    err = std::max(err, eps50 * out.resabs);
  out.error = err;
  return out;
}

struct Panel {
  double a = 0.0, b = 0.0;
  PanelEstimate est;
  long id = 0;  // insertion order; breaks error ties deterministically
};

struct LowerError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.est.error != rhs.est.error) return lhs.est.error < rhs.est.error;
    return lhs.id > rhs.id;
  }
};

double compensated_sum(std::vector<double>& xs) {
  double sum = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Adaptive G7K15 with a per-panel width cap and incremental running totals; the
// final answer is re-accumulated compensated over the surviving panels in
// left-to-right order, so it does not depend on heap internals.
class AdaptiveIntegrator {
 public:
  AdaptiveIntegrator(const std::function<double(double)>& f, double rel_tol,
                     const AdaptiveOptions& opts)
      : f_(f), opts_(opts), rel_tol_(rel_tol) {}

  QuadratureResult run(double a, double b) {
    std::vector<double> edges{a, b};
    for (double p : opts_.seed_points)
      if (p > a && p < b) edges.push_back(p);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) emit(edges[i], edges[i + 1]);

    while (run_error_ > tolerance_target() && !active_.empty()) {
      Panel worst = active_.top();
      active_.pop();
      const double mid = 0.5 * (worst.a + worst.b);
      if (mid <= worst.a || mid >= worst.b) {
        settled_.push_back(worst);  // machine-resolution interval
        continue;
      }
      retire(worst);
      emit(worst.a, mid);
      emit(mid, worst.b);
    }
    return finish();
  }

 private:
  double tolerance_target() const {
    const double eps100 = 100.0 * std::numeric_limits<double>::epsilon();
    return std::max(
        {rel_tol_ * std::abs(run_value_), opts_.abs_tol, eps100 * run_resabs_});
  }

  double cap_at(double lo, double hi) const {
    return opts_.panel_width_cap ? opts_.panel_width_cap(0.5 * (lo + hi))
                                 : std::numeric_limits<double>::infinity();
  }

  // Evaluate [lo, hi], splitting first if it exceeds the width cap.
  void emit(double lo, double hi) {
    if (hi - lo > cap_at(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (mid > lo && mid < hi) {
        emit(lo, mid);
        emit(mid, hi);
        return;
      }
    }
    if (evaluated_ >= opts_.max_panels)
      throw NonConvergenceError("integrate_adaptive: panel budget exhausted", finish());
    Panel p{lo, hi, gauss_kronrod_15(f_, lo, hi), next_id_++};
    ++evaluated_;
    run_value_ += p.est.value;
    run_error_ += p.est.error;
    run_resabs_ += p.est.resabs;
    active_.push(p);
  }

  void retire(const Panel& p) {
    run_value_ -= p.est.value;
    run_error_ -= p.est.error;
    run_resabs_ -= p.est.resabs;
  }

  QuadratureResult finish() {
    std::vector<Panel> all = settled_;
    auto heap = active_;
    while (!heap.empty()) {
      all.push_back(heap.top());
      heap.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<double> vs(all.size()), es(all.size());
    QuadratureResult r;
    for (std::size_t i = 0; i < all.size(); ++i) {
      vs[i] = all[i].est.value;
      es[i] = all[i].est.error;
      r.max_panel_width = std::max(r.max_panel_width, all[i].b - all[i].a);
    }
    r.value = compensated_sum(vs);
    r.error_estimate = compensated_sum(es);
    r.panels = static_cast<int>(all.size());
    return r;
  }

  const std::function<double(double)>& f_;
  const AdaptiveOptions& opts_;
  double rel_tol_ = 0.0;
  double run_value_ = 0.0, run_error_ = 0.0, run_resabs_ = 0.0;
  int evaluated_ = 0;
  long next_id_ = 0;
  std::priority_queue<Panel, std::vector<Panel>, LowerError> active_;
  std::vector<Panel> settled_;
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol,
                                    const AdaptiveOptions& opts) {
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("integrate_adaptive: rel_tol must be > 0");
  if (!(b > a)) throw std::invalid_argument("integrate_adaptive: requires b > a");
  return AdaptiveIntegrator(f, rel_tol, opts).run(a, b);
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a, double rel_tol,
                                       const AdaptiveOptions& opts) {
  // omega = a + t/(1-t), d omega = dt/(1-t)^2; Kronrod nodes are interior, so the
  // t = 1 endpoint is never evaluated.
  const auto mapped = [&](double t) {
    const double om = 1.0 - t;
    return f(a + t / om) / (om * om);
  };
  AdaptiveOptions inner = opts;
  inner.panel_width_cap = nullptr;  // width caps are meaningless in mapped coordinates
  inner.seed_points.clear();
  return integrate_adaptive(mapped, 0.0, 1.0, rel_tol, inner);
}

QuadratureResult principal_value(const std::function<double(double)>& f, double x0,
                                 double a, double b, double rel_tol) {
  if (!(a < x0 && x0 < b))
    throw std::invalid_argument("principal_value: pole must lie strictly inside (a, b)");

  const auto run = [&](double delta) {
    // Pole window as the paired integrand f(x0+t) + f(x0-t): the pole terms cancel
    // pointwise and the quadrature never touches t = 0.
    const auto paired = [&](double t) { return f(x0 + t) + f(x0 - t); };
    QuadratureResult total;
    const auto add = [&](const QuadratureResult& r) {
      total.value += r.value;
      total.error_estimate += r.error_estimate;
      total.panels += r.panels;
    };
    if (x0 - delta > a) add(integrate_adaptive(f, a, x0 - delta, rel_tol));
    if (b > x0 + delta) add(integrate_adaptive(f, x0 + delta, b, rel_tol));
    add(integrate_adaptive(paired, 0.0, delta, rel_tol));
    return total;
  };

  const double delta = 0.5 * std::min(x0 - a, b - x0);
  const QuadratureResult coarse = run(delta);
  const QuadratureResult fine = run(0.5 * delta);
  const double disagreement = std::abs(coarse.value - fine.value);
  const double allowance =
      10.0 * (coarse.error_estimate + fine.error_estimate) +
      1e3 * std::numeric_limits<double>::epsilon() * std::abs(fine.value);
  if (disagreement > std::max(allowance, 1e-14))
    throw NonConvergenceError(
        "principal_value: excision-radius refinement did not converge; the "
        "singularity is not cancelling",
        fine);

  QuadratureResult out = fine;
  out.error_estimate = std::max(fine.error_estimate, disagreement);
  out.panels += coarse.panels;
  return out;
}

QuadratureResult integrate_spectrum(const MaterialModel& m, double L,
                                    SpectrumKind kind, double rel_tol) {
  if (!(L > 0.0)) throw std::invalid_argument("integrate_spectrum: L must be > 0");
  if (kind != SpectrumKind::TotalCasimir)
    throw std::invalid_argument("integrate_spectrum: unknown kind");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("integrate_spectrum: rel_tol must be > 0");
  m.validate();

  const auto w_c = [&](double omega) {
    return spectral_energy(response_sample(m, omega), L).W_C;
  };
  // An eighth of the local oscillation period of exp(2 i n k0 L) in omega; Re n is
  // evaluated lazily per panel since it varies strongly near resonances.
  const auto width_cap = [&](double omega) {
    const double re_n = std::max(response_sample(m, omega).n.real(), 1e-3);
    return 0.125 * M_PI / (re_n * L);
  };

  // The integrand vanishes toward omega = 0 (like sqrt(omega) for a Drude metal,
  // linearly for a bound resonance) but develops structure where the skin depth
  // crosses L, well below 1e-3 eV for metals. Integrate from 1e-9 eV with
  // log-spaced seeds; the remaining sliver is bounded by |W_C(floor)| * floor and
  // folded into tail_estimate.
  const double omega_floor = 1e-9;

  QuadratureResult total;
  const auto absorb = [&](const QuadratureResult& r) {
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.panels += r.panels;
    total.max_panel_width = std::max(total.max_panel_width, r.max_panel_width);
  };

  {
    AdaptiveOptions low;
    low.panel_width_cap = width_cap;
    for (double d = omega_floor * 10.0; d < 1e-3 * 0.99; d *= 10.0)
      low.seed_points.push_back(d);
    absorb(integrate_adaptive(w_c, omega_floor, 1e-3, rel_tol, low));
  }

  // March upward in octaves; stop once the fitted |W_C| envelope at the frontier
  // predicts a tail below rel_tol * |value|.
  double resabs_proxy = std::abs(total.value);
  double lo = 1e-3;
  double hi = 64.0;
  double envelope_c = 0.0;  // C in |W_C| <= C / omega^2 near the frontier
  const double omega_max_cap = 1.0e7;
  bool converged = false;
  while (!converged) {
    if (hi > omega_max_cap)
      throw NonConvergenceError("integrate_spectrum: envelope criterion unreachable",
                                total);
    AdaptiveOptions seg;
    seg.panel_width_cap = width_cap;
    absorb(integrate_adaptive(w_c, lo, hi, rel_tol, seg));
    resabs_proxy += std::abs(total.value);

    envelope_c = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double w = hi * (0.5 + 0.5 * (i + 0.5) / 64.0);
      envelope_c = std::max(envelope_c, std::abs(w_c(w)) * w * w);
    }
    const double scale = std::max(std::abs(total.value), 1e-3 * resabs_proxy);
    converged = envelope_c / (hi * hi) <= rel_tol * scale;
    if (!converged) {
      lo = hi;
      hi *= 2.0;
    }
  }

  // Tail above the truncation point under the omega^-2 envelope, plus the omitted
  // low-frequency sliver.
  const double sliver = std::abs(w_c(omega_floor)) * omega_floor;
  total.tail_estimate = envelope_c / hi + sliver;
  return total;
}

}  // namespace vacspec
