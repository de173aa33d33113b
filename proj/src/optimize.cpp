#include "qcause/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "qcause/error.hpp"

namespace qcause {

namespace {

double checked(double v) {
  if (!std::isfinite(v)) {
    throw Error(Errc::non_finite, "optimizer: objective returned a non-finite value");
  }
  return v;
}

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

/// Higher value first; ties to the lexicographically smaller point.
bool better(const Vertex& l, const Vertex& r) {
  if (l.f != r.f) return l.f > r.f;
  return l.x < r.x;
}

}  // namespace

std::vector<double> evaluate_serial(const ObjectiveN& f,
                                    const std::vector<std::vector<double>>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(f(p));
  return out;
}

OptResult brent_max(const Objective1& f, double lo, double hi, double tol, int max_iter) {
  if (!(lo < hi)) throw Error(Errc::domain, "brent_max: requires lo < hi");
  OptResult res;
  auto g = [&](double x) {
    ++res.evaluations;
    return -checked(f(x));
  };

  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  constexpr double kRelEps = 1e-10;
  double a = lo, b = hi;
  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = g(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = kRelEps * std::abs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
      res.converged = true;
      break;
    }
    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = g(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }

  res.argmax = {x};
  res.value = -fx;
  // Guard against a bracket whose interior search lost to a sampled point.
  for (double probe : {lo, 0.5 * (lo + hi), hi}) {
    const double fp = -g(probe);
    if (fp > res.value) {
      res.value = fp;
      res.argmax = {probe};
    }
  }
  return res;
}

namespace {

OptResult nelder_mead_once(const ObjectiveN& f, const std::vector<double>& start,
                           const std::vector<double>& scale, double tol, int max_iter,
                           int& evaluations, int& iterations) {
  const std::size_t n = start.size();
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return checked(f(x));
  };

  std::vector<Vertex> simplex;
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = start;
    x[i] += scale[i];
    simplex.push_back({x, eval(x)});
  }

  constexpr double kXTol = 1e-8;
  OptResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    std::sort(simplex.begin(), simplex.end(), better);
    double x_spread = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        x_spread = std::max(x_spread, std::abs(simplex[i].x[k] - simplex[0].x[k]));
    if (simplex[0].f - simplex[n].f <= tol && x_spread <= kXTol) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = centroid[k] + t * (simplex[n].x[k] - centroid[k]);
      return x;
    };

    Vertex reflected{along(-1.0), 0.0};
    reflected.f = eval(reflected.x);
    if (reflected.f > simplex[0].f) {
      Vertex expanded{along(-2.0), 0.0};
      expanded.f = eval(expanded.x);
      simplex[n] = expanded.f > reflected.f ? expanded : reflected;
      continue;
    }
    if (reflected.f > simplex[n - 1].f) {
      simplex[n] = reflected;
      continue;
    }
    const bool outside = reflected.f > simplex[n].f;
    Vertex contracted{along(outside ? -0.5 : 0.5), 0.0};
    contracted.f = eval(contracted.x);
    if (outside ? contracted.f >= reflected.f : contracted.f > simplex[n].f) {
      simplex[n] = contracted;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k)
        simplex[i].x[k] = simplex[0].x[k] + 0.5 * (simplex[i].x[k] - simplex[0].x[k]);
      simplex[i].f = eval(simplex[i].x);
    }
  }
  std::sort(simplex.begin(), simplex.end(), better);
  res.argmax = simplex[0].x;
  res.value = simplex[0].f;
  iterations += iter;
  return res;
}

}  // namespace

OptResult nelder_mead_max(const ObjectiveN& f, std::vector<double> start,
                          std::vector<double> scale, double tol, int max_iter) {
  const std::size_t n = start.size();
  if (n == 0 || n > 6) throw Error(Errc::domain, "nelder_mead_max: dimension must be 1..6");
  if (scale.size() == 1 && n > 1) scale.assign(n, scale.front());
  if (scale.size() != n) throw Error(Errc::dimension_mismatch, "nelder_mead_max: scale size");

  int evaluations = 0;
  int iterations = 0;
  OptResult best = nelder_mead_once(f, start, scale, tol, max_iter, evaluations, iterations);
  constexpr int kMaxRestarts = 8;
  for (int restart = 0; restart < kMaxRestarts && best.converged; ++restart) {
    const int iterations_left = max_iter - iterations;
    if (iterations_left <= 0) {
      best.converged = false;
      break;
    }
    OptResult again =
        nelder_mead_once(f, best.argmax, scale, tol, iterations_left, evaluations, iterations);
    const bool improved = again.value > best.value + tol;
    if (again.value > best.value || (again.value == best.value && again.argmax < best.argmax)) {
      const bool conv = again.converged;
      best = std::move(again);
      best.converged = conv;
    }
    if (!improved) break;
  }
  best.evaluations = evaluations;
  return best;
}

OptResult multi_start_max(const ObjectiveN& f, const std::vector<std::vector<double>>& starts,
                          std::vector<double> scale, double tol, int max_iter) {
  if (starts.empty()) throw Error(Errc::domain, "multi_start_max: no starting points");
  OptResult best;
  int evaluations = 0;
  bool first = true;
  for (const auto& s : starts) {
    auto r = nelder_mead_max(f, s, scale, tol, max_iter);
    evaluations += r.evaluations;
    if (first || r.value > best.value || (r.value == best.value && r.argmax < best.argmax)) {
      best = std::move(r);
      first = false;
    }
  }
  best.evaluations = evaluations;
  return best;
}

OptResult grid_refine(const ObjectiveN& f, std::vector<std::pair<double, double>> box,
                      int coarse_steps, int refine_rounds, const BatchEvaluator& evaluate) {
  const std::size_t dim = box.size();
  if (dim == 0) throw Error(Errc::domain, "grid_refine: empty box");
  if (coarse_steps < 2) throw Error(Errc::domain, "grid_refine: coarse_steps must be >= 2");
  for (const auto& [lo, hi] : box)
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw Error(Errc::domain, "grid_refine: box must be bounded with lo <= hi");
    }
  const auto outer = box;

  OptResult res;
  Vertex incumbent;
  incumbent.x.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) incumbent.x[k] = 0.5 * (box[k].first + box[k].second);
  incumbent.f = checked(f(incumbent.x));
  res.evaluations = 1;

  for (int round = 0; round <= refine_rounds; ++round) {
    std::vector<std::vector<double>> points;
    std::vector<int> idx(dim, 0);
    while (true) {
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        const double t = static_cast<double>(idx[k]) / (coarse_steps - 1);
        p[k] = box[k].first + t * (box[k].second - box[k].first);
      }
      points.push_back(std::move(p));
      bool wrapped = true;
      for (std::size_t k = dim; k-- > 0;) {
        if (++idx[k] < coarse_steps) {
          wrapped = false;
          break;
        }
        idx[k] = 0;
      }
      if (wrapped) break;
    }
    const auto values = evaluate(f, points);
    res.evaluations += static_cast<int>(values.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      if (checked(values[i]) > incumbent.f) incumbent = {points[i], values[i]};

    for (std::size_t k = 0; k < dim; ++k) {
      const double width = (box[k].second - box[k].first) / 4.0;
      double lo = incumbent.x[k] - 0.5 * width;
      double hi = incumbent.x[k] + 0.5 * width;
      if (lo < outer[k].first) { hi += outer[k].first - lo; lo = outer[k].first; }
      if (hi > outer[k].second) { lo -= hi - outer[k].second; hi = outer[k].second; }
      box[k] = {std::max(lo, outer[k].first), hi};
    }
  }
  res.argmax = incumbent.x;
  res.value = incumbent.f;
  res.converged = true;
  return res;
}

}  // namespace qcause
