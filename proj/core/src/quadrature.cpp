#include "overdamp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "overdamp/errors.hpp"

namespace overdamp::num {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7]
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double magnitude; // integral of |f|, sets the roundoff floor
};

struct PanelOrder {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "quadrature: integrand is not finite at x = " << x;
    throw NumericalError(msg.str());
  }
  return v;
}

// QUADPACK qk15 rule with its error heuristic.
Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f(center), center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double resabs = std::abs(kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f(center - dx), center - dx);
    f2[j] = checked(f(center + dx), center + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * (f1[j] + f2[j]);
    }
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double abs_half = std::abs(half);
  resasc *= abs_half;
  resabs *= abs_half;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {a, b, kronrod * half, err, resabs};
}

QuadratureResult adaptive_finite(const RealFunction& f, double a, double b, double rel_tol,
                                 double abs_tol, int max_panels,
                                 const std::function<double(double)>& to_x) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  Panel first = gauss_kronrod(f, a, b);
  double total = first.value;
  double total_err = first.error;
  double total_mag = first.magnitude;
  heap.push(first);
  int panels = 1;
  // Below 100 eps int|f| the error estimate is roundoff and cannot shrink further.
  constexpr double kRoundoff = 100.0 * std::numeric_limits<double>::epsilon();
  while (total_err > std::max({abs_tol, rel_tol * std::abs(total), kRoundoff * total_mag})) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    const bool exhausted = panels >= max_panels;
    const bool unsplittable = !(worst.a < mid && mid < worst.b);
    if (exhausted || unsplittable) {
      std::ostringstream msg;
      msg << "adaptive_quadrature: tolerance " << rel_tol << " not reached after " << panels
          << " panels (estimate " << total << " +/- " << total_err << "); worst panel ["
          << to_x(worst.a) << ", " << to_x(worst.b) << "] with error " << worst.error;
      throw NumericalError(msg.str());
    }
    heap.pop();
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_mag += left.magnitude + right.magnitude - worst.magnitude;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum from scratch so the result does not carry running-sum drift.
  std::vector<double> values;
  std::vector<double> errors;
  values.reserve(heap.size());
  errors.reserve(heap.size());
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : all) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  return {pairwise_sum(values), pairwise_sum(errors), panels};
}

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(std::span<const double> seq) {
  const std::size_t n = seq.size();
  std::vector<double> prev(n + 1, 0.0);    // column e_{-1}
  std::vector<double> cur(seq.begin(), seq.end()); // column e_0
  double best = seq.back();
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> next(n - col);
    for (std::size_t k = 0; k + col < n; ++k) {
      const double diff = cur[k + 1] - cur[k];
      if (diff == 0.0) {
        return cur[k + 1];
      }
      next[k] = prev[k + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) {
      best = cur.back();
    }
  }
  return best;
}

} // namespace

QuadratureResult adaptive_quadrature(const RealFunction& f, double a, double b, double rel_tol,
                                     double abs_tol, int max_panels) {
  if (std::isnan(a) || std::isnan(b)) {
    throw DomainError("adaptive_quadrature: NaN bound");
  }
  if (a == b) {
    return {0.0, 0.0, 0};
  }
  if (a > b) {
    QuadratureResult r = adaptive_quadrature(f, b, a, rel_tol, abs_tol, max_panels);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) {
    return adaptive_finite(f, a, b, rel_tol, abs_tol, max_panels, [](double x) { return x; });
  }
  if (!lo_inf && hi_inf) {
    auto to_x = [a](double u) { return a + u / (1.0 - u); };
    auto g = [&f, a](double u) {
      const double s = 1.0 - u;
      return f(a + u / s) / (s * s);
    };
    return adaptive_finite(g, 0.0, 1.0, rel_tol, abs_tol, max_panels, to_x);
  }
  if (lo_inf && !hi_inf) {
    auto to_x = [b](double u) { return b - u / (1.0 - u); };
    auto g = [&f, b](double u) {
      const double s = 1.0 - u;
      return f(b - u / s) / (s * s);
    };
    return adaptive_finite(g, 0.0, 1.0, rel_tol, abs_tol, max_panels, to_x);
  }
  auto to_x = [](double u) { return u / (1.0 - u * u); };
  auto g = [&f](double u) {
    const double s = 1.0 - u * u;
    return f(u / s) * (1.0 + u * u) / (s * s);
  };
  return adaptive_finite(g, -1.0, 1.0, rel_tol, abs_tol, max_panels, to_x);
}

QuadratureResult fourier_integral(const RealFunction& f, double a, double freq, Trig kind,
                                  double head_end, double rel_tol) {
  if (!std::isfinite(a)) {
    throw DomainError("fourier_integral: lower bound must be finite");
  }
  double sign = 1.0;
  if (freq < 0.0) {
    freq = -freq;
    sign = (kind == Trig::Sin) ? -1.0 : 1.0;
  }
  if (freq == 0.0) {
    if (kind == Trig::Sin) {
      return {0.0, 0.0, 0};
    }
    return adaptive_quadrature(f, a, kInf, rel_tol);
  }
  auto integrand = [&f, freq, kind](double x) {
    const double w = (kind == Trig::Cos) ? std::cos(freq * x) : std::sin(freq * x);
    return f(x) * w;
  };

  QuadratureResult head{};
  const double x0 = std::max(a, head_end);
  if (x0 > a) {
    head = adaptive_quadrature(integrand, a, x0, 0.1 * rel_tol);
  }
  const double period = std::numbers::pi / freq;
  // Align panel boundaries with zeros of the trig factor so panel sums alternate.
  const double phase0 = (kind == Trig::Cos) ? 0.5 : 0.0;
  const double k_start = std::ceil(x0 / period - phase0);
  double edge = (k_start + phase0) * period;
  double running = head.value;
  double err = head.error;
  int panels = head.panels;
  if (edge > x0) {
    const QuadratureResult lead = adaptive_quadrature(integrand, x0, edge, 0.1 * rel_tol);
    running += lead.value;
    err += lead.error;
    panels += lead.panels;
  }

  constexpr int kMaxTailPanels = 2000;
  constexpr std::size_t kWindow = 24;
  std::vector<double> partial{running};
  double last_estimate = running;
  int stable = 0;
  for (int j = 0; j < kMaxTailPanels; ++j) {
    const double abs_tol = 1e-3 * rel_tol * std::max(std::abs(running), 1e-300);
    const QuadratureResult piece =
        adaptive_quadrature(integrand, edge, edge + period, 0.1 * rel_tol, abs_tol);
    edge += period;
    running += piece.value;
    err += piece.error;
    panels += piece.panels;
    partial.push_back(running);
    if (std::abs(piece.value) <= 1e-3 * rel_tol * std::abs(running)) {
      return {sign * running, err + std::abs(piece.value), panels};
    }
    if (partial.size() < 5) {
      continue;
    }
    const std::size_t from = partial.size() > kWindow ? partial.size() - kWindow : 0;
    const double estimate =
        wynn_epsilon(std::span<const double>(partial).subspan(from));
    const double delta = std::abs(estimate - last_estimate);
    last_estimate = estimate;
    if (delta <= 0.1 * rel_tol * std::abs(estimate)) {
      if (++stable >= 2) {
        return {sign * estimate, err + delta, panels};
      }
    } else {
      stable = 0;
    }
  }
  std::ostringstream msg;
  msg << "fourier_integral: tail did not converge after " << kMaxTailPanels
      << " half-periods (freq " << freq << ", last estimate " << last_estimate << ")";
  throw NumericalError(msg.str());
}

double pv_integral(const RealFunction& f, std::span<const double> poles, double a, double b,
                   double rel_tol) {
  if (!(a < b)) {
    throw DomainError("pv_integral: requires a < b");
  }
  std::vector<double> p(poles.begin(), poles.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  for (double x : p) {
    if (!(x > a && x < b)) {
      std::ostringstream msg;
      msg << "pv_integral: pole " << x << " is not strictly inside (" << a << ", " << b << ")";
      throw DomainError(msg.str());
    }
  }
  if (p.empty()) {
    return adaptive_quadrature(f, a, b, rel_tol).value;
  }

  std::vector<double> half(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double gap = kInf;
    if (i > 0) gap = std::min(gap, 0.5 * (p[i] - p[i - 1]));
    if (i + 1 < p.size()) gap = std::min(gap, 0.5 * (p[i + 1] - p[i]));
    if (std::isfinite(a)) gap = std::min(gap, 0.5 * (p[i] - a));
    if (std::isfinite(b)) gap = std::min(gap, 0.5 * (b - p[i]));
    half[i] = std::isfinite(gap) ? gap : std::max(1.0, 0.5 * std::abs(p[i]));
  }

  std::vector<double> pieces;
  double lo = a;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double left = p[i] - half[i];
    if (left > lo) {
      pieces.push_back(adaptive_quadrature(f, lo, left, rel_tol).value);
    }
    const double pole = p[i];
    auto folded = [&f, pole](double u) { return f(pole + u) + f(pole - u); };
    pieces.push_back(adaptive_quadrature(folded, 0.0, half[i], rel_tol).value);
    lo = p[i] + half[i];
  }
  if (b > lo) {
    pieces.push_back(adaptive_quadrature(f, lo, b, rel_tol).value);
  }
  return pairwise_sum(pieces);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

} // namespace overdamp::num
