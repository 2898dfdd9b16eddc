#include "shockspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace shockspec {

namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1], positive
// abscissae in descending order. Computed at 50-digit precision (Laurie's
// algorithm); agrees with the QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
    0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
    0.207784955007898468, 0.000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
    0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
    0.204432940075298892, 0.209482141084727828,
};
// Gauss-7 weights for the embedded nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr double kWg[4] = {
    0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
    0.417959183673469388,
};

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double abs_value = 0.0;  // integral of |f| estimate, for the error floor
    double error = 0.0;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

constexpr int kMaxPanels = 4000;

}  // namespace

QuadratureResult integrate_weighted(const std::function<double(double)>& f, double rel_tol,
                                    const std::vector<double>& interior_breaks) {
    if (!(rel_tol >= 1e-12 && rel_tol <= 1e-3)) {
        throw DomainError("integrate_weighted: rel_tol outside [1e-12, 1e-3]");
    }

    long evaluations = 0;
    auto g = [&](double u) {
        const double y = u * u * u * u;
        const double v = 4.0 * f(y);
        ++evaluations;
        if (!std::isfinite(v)) {
            throw NonFiniteIntegrandError("integrate_weighted: integrand not finite at y = " +
                                          std::to_string(y));
        }
        return v;
    };

    auto rate = [&](double lo, double hi) {
        Panel p;
        p.lo = lo;
        p.hi = hi;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double kron = 0.0, gauss = 0.0, resabs = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double fp = (i < 7) ? g(mid + half * kXgk[i]) : 0.0;
            const double fm = g(mid - half * kXgk[i]);
            const double pair = (i < 7) ? fp + fm : fm;  // center node counted once
            kron += kWgk[i] * pair;
            resabs += kWgk[i] * ((i < 7) ? std::fabs(fp) + std::fabs(fm) : std::fabs(fm));
            if (i % 2 == 1 || i == 7) {
                gauss += kWg[i / 2] * pair;
            }
        }
        p.value = half * kron;
        p.abs_value = half * resabs;
        const double floor = 50.0 * std::numeric_limits<double>::epsilon() * p.abs_value;
        p.error = std::max(std::fabs(half * (kron - gauss)), floor);
        return p;
    };

    const double u_max = std::pow(1.0 - 1e-14, 0.25);
    std::vector<double> edges{0.0};
    for (double yb : interior_breaks) {
        if (yb > 0.0 && yb < 1.0) {
            edges.push_back(std::pow(yb, 0.25));
        }
    }
    edges.push_back(u_max);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
    double run_value = 0.0, run_err = 0.0, run_l1 = 0.0;
    auto push = [&](const Panel& p) {
        run_value += p.value;
        run_err += p.error;
        run_l1 += std::fabs(p.value);
        queue.push(p);
    };
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] > edges[i]) {
            push(rate(edges[i], edges[i + 1]));
        }
    }

    // deterministic final total: panels summed left to right
    auto finalize = [&]() {
        std::vector<Panel> panels;
        panels.reserve(queue.size());
        while (!queue.empty()) {
            panels.push_back(queue.top());
            queue.pop();
        }
        std::sort(panels.begin(), panels.end(),
                  [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
        QuadratureResult r;
        for (const Panel& p : panels) {
            r.value += p.value;
            r.abs_error_estimate += p.error;
        }
        r.evaluations = evaluations;
        return r;
    };

    while (run_err > rel_tol * std::max(run_l1, 1e-300)) {
        if (static_cast<int>(queue.size()) >= kMaxPanels) {
            QuadratureResult best = finalize();
            throw ToleranceError("integrate_weighted: tolerance not met after " +
                                     std::to_string(kMaxPanels) + " panels",
                                 best);
        }
        Panel worst = queue.top();
        queue.pop();
        run_value -= worst.value;
        run_err -= worst.error;
        run_l1 -= std::fabs(worst.value);
        const double mid = 0.5 * (worst.lo + worst.hi);
        push(rate(worst.lo, mid));
        push(rate(mid, worst.hi));
    }
    return finalize();
}

}  // namespace shockspec
