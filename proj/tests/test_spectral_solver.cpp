#include <cmath>
#include <sstream>

#include <doctest.h>

#include "oracles/reference_values.hpp"
#include "shockspec/eigenbasis.hpp"
#include "shockspec/quadrature.hpp"
#include "shockspec/specfun.hpp"
#include "shockspec/spectral_solver.hpp"

using namespace shockspec;
namespace sf = shockspec::specfun;

namespace {

const ProblemSpec kSpecA{0.4, 0.9};  // source near the base
const ProblemSpec kSpecB{4.0, 0.4};  // strong absorption, upstream source

double rel(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
}

}  // namespace

TEST_CASE("problem-spec validation") {
    CHECK_NOTHROW(validate(kSpecA));
    CHECK_THROWS_AS(validate(ProblemSpec{-0.1, 0.5}), DomainError);
    CHECK_THROWS_AS(validate(ProblemSpec{1.0, 1e-8}), DomainError);
    CHECK_THROWS_AS(validate(ProblemSpec{1.0, 1.0}), DomainError);
}

TEST_CASE("eigen residual") {
    // beta = 0: residual is the Wronskian, zero exactly at 4n^2 + 9n + 4
    const ProblemSpec b0{0.0, 0.5};
    for (int n : {0, 1, 2, 5}) {
        CHECK(eigen_residual(lambda_of_nu(n), b0) == 0.0);
    }
    // sign change brackets the first eigenvalue of spec A
    CHECK(eigen_residual(4.1, kSpecA) * eigen_residual(4.4, kSpecA) < 0.0);
    // continuity between degenerate points: no throws, finite values
    for (double lam = 4.3; lam < 16.5; lam += 0.7) {
        CHECK(std::isfinite(eigen_residual(lam, kSpecA)));
    }
}

TEST_CASE("find_eigenvalues reproduces the reference configurations") {
    const auto la = find_eigenvalues(kSpecA, 1);
    CHECK(std::fabs(la[0] - 4.231) < 1e-3);
    CHECK(rel(la[0], refvals::lambda0_beta04_y09) < 1e-10);

    const auto lb = find_eigenvalues(kSpecB, 1);
    CHECK(std::fabs(lb[0] - 6.325) < 1e-3);
    CHECK(rel(lb[0], refvals::lambda0_beta4_y04) < 1e-10);

    const auto l3 = find_eigenvalues(ProblemSpec{0.0, 0.5}, 3);
    CHECK(l3[0] == 4.0);
    CHECK(l3[1] == 17.0);
    CHECK(l3[2] == 38.0);
}

TEST_CASE("beta = 0 spectrum recovered without the shortcut") {
    RootSearchOptions opts;
    opts.beta0_shortcut = false;
    const auto lams = find_eigenvalues(ProblemSpec{0.0, 0.5}, 11, opts);
    for (int n = 0; n <= 10; ++n) {
        CHECK(std::fabs(lams[n] - lambda_of_nu(n)) <= 1e-6);
    }
}

TEST_CASE("eigenvalues increase and windows hold one root each") {
    const auto lams = find_eigenvalues(kSpecA, 30);
    for (int n = 0; n < 30; ++n) {
        CHECK(lams[n] > lambda_of_nu(n));
        CHECK(lams[n] < lambda_of_nu(n + 1));
        if (n > 0) {
            CHECK(lams[n] > lams[n - 1]);
        }
    }
}

TEST_CASE("window heuristic flags clustered roots at extreme absorption") {
    // for very large beta the spectrum approaches the union of two split-domain
    // spectra and windows can hold several roots; the scan must refuse rather
    // than return a wrong count
    CHECK_THROWS_AS(find_eigenvalues(ProblemSpec{400.0, 0.9}, 30), MissedRootError);
}

TEST_CASE("lambda0 is monotone in beta") {
    double prev = 4.0;  // the beta = 0 limit
    for (double beta : {0.4, 1.0, 2.0, 4.0}) {
        const double lam0 = find_eigenvalues(ProblemSpec{beta, 0.7}, 1).front();
        CHECK(lam0 > prev);
        prev = lam0;
    }
}

TEST_CASE("eigenfunction continuity, limits, and jump condition") {
    const GreensEvaluator ev = build_evaluator(kSpecA, 4);
    const EigenMode& m0 = ev.modes[0];

    SUBCASE("continuity at the source") {
        const double left = eigenfunction_g(m0, kSpecA, kSpecA.y0 - 1e-11);
        const double right = eigenfunction_g(m0, kSpecA, kSpecA.y0 + 1e-11);
        CHECK(rel(left, right) < 1e-9);
    }

    SUBCASE("upstream slope") {
        CHECK(rel(eigenfunction_g(m0, kSpecA, 1e-6) / 1e-6, 1.0) < 1e-5);
    }

    SUBCASE("downstream value equals the phi2 limit") {
        // g(1) = B_0 phi2(lambda_0, 1)
        const double expect = m0.B_n * phi2(m0.lambda_n, 1.0);
        CHECK(rel(eigenfunction_g(m0, kSpecA, 1.0), expect) < 1e-10);
    }

    SUBCASE("derivative jump at y0") {
        // second-order one-sided stencils on each side of the kink
        const double h = 1e-6;
        const double y0 = kSpecA.y0;
        for (const EigenMode& m : ev.modes) {
            auto g = [&](double y) { return eigenfunction_g(m, kSpecA, y); };
            const double dplus =
                (-3.0 * g(y0) + 4.0 * g(y0 + h) - g(y0 + 2.0 * h)) / (2.0 * h);
            const double dminus =
                (3.0 * g(y0) - 4.0 * g(y0 - h) + g(y0 - 2.0 * h)) / (2.0 * h);
            const double jump = dplus - dminus;
            const double expect = 3.0 * kSpecA.beta / (4.0 * y0) * g(y0);
            CHECK(rel(jump, expect) < 1e-5);
        }
    }
}

TEST_CASE("normalization closed form") {
    SUBCASE("beta = 0 Jacobi values") {
        const ProblemSpec b0{0.0, 0.5};
        CHECK(rel(normalization(4.0, b0), 4.0 / 9.0) < 1e-14);
        CHECK(rel(normalization(17.0, b0), 64.0 / 1377.0) < 1e-14);
    }
    SUBCASE("matches quadrature of the defining integral") {
        const GreensEvaluator ev = build_evaluator(kSpecA, 1);
        const EigenMode& m0 = ev.modes[0];
        CHECK(rel(m0.C_n, refvals::c0_beta04_y09) < 1e-9);
        auto f = [&](double y) {
            const double g = eigenfunction_g(m0, kSpecA, y);
            return g * g;
        };
        const auto q = integrate_weighted(f, 1e-9, {kSpecA.y0});
        CHECK(rel(m0.C_n, q.value) < 1e-6);
    }
}

TEST_CASE("build_evaluator populates consistent modes") {
    const GreensEvaluator ev = build_evaluator(kSpecA, 20);
    CHECK(ev.n_terms == 20);
    CHECK(ev.modes.size() == 20);
    CHECK(rel(ev.modes[1].lambda_n, refvals::lambda1_beta04_y09) < 1e-10);
    for (int n = 0; n < 20; ++n) {
        const EigenMode& m = ev.modes[n];
        CHECK(m.n == n);
        CHECK(m.C_n > 0.0);
        CHECK(rel(m.A_hat_n, std::pow(kSpecA.y0, -0.75) * phi1(m.lambda_n, kSpecA.y0) / m.C_n) <
              1e-13);
        if (n > 0) {
            CHECK(m.lambda_n > ev.modes[n - 1].lambda_n);
        }
    }

    SUBCASE("beta = 0 coefficients collapse to the Jacobi form") {
        const ProblemSpec b0{0.0, 0.7};
        const GreensEvaluator e0 = build_evaluator(b0, 6);
        for (const EigenMode& m : e0.modes) {
            const int n = m.n;
            const double ratio = sf::pochhammer(2.25, n) / sf::pochhammer(1.0, n);
            const double expect = std::pow(b0.y0, -0.75) * phi1(m.lambda_n, b0.y0) *
                                  (2.0 * n + 2.25) * ratio * ratio;
            CHECK(rel(m.A_hat_n, expect) < 1e-11);
        }
    }
}

TEST_CASE("greens_function behavior") {
    const GreensEvaluator ev = build_evaluator(kSpecA, 20);
    CHECK(greens_function(ev, 0.5, 0.5) == 0.0);
    CHECK(greens_function(ev, 0.5, 0.999999) == 0.0);

    SUBCASE("tail slope approaches -lambda_0") {
        // least-squares log-log slope over the last decade of [1e2, 1e3]
        const double lam0 = ev.modes[0].lambda_n;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double r = 1e2; r <= 1e3; r *= 1.2) {
            const double x = std::log(r);
            const double f = greens_function(ev, 0.5, r);
            REQUIRE(f > 0.0);
            const double yv = std::log(f);
            sx += x;
            sy += yv;
            sxx += x * x;
            sxy += x * yv;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(std::fabs(slope + lam0) / lam0 < 1e-4);
    }

    SUBCASE("finite at the injection energy at the source point") {
        CHECK(std::isfinite(greens_function(ev, kSpecA.y0, 1.0)));
        // attenuation far upstream relative to the source point
        CHECK(greens_function(ev, 0.05, 3.0) < greens_function(ev, kSpecA.y0, 3.0));
    }
}

TEST_CASE("delta completeness") {
    const GreensEvaluator ev = build_evaluator(kSpecA, 20);
    CHECK(std::fabs(delta_completeness_check(ev, 0)) <= 1e-6);

    const GreensEvaluator e0 = build_evaluator(ProblemSpec{0.0, 0.9}, 20);
    CHECK(std::fabs(delta_completeness_check(e0, 3)) <= 1e-6);
}

TEST_CASE("orthogonality of low modes (both reference specs)") {
    for (const ProblemSpec& spec : {kSpecA, kSpecB}) {
        const GreensEvaluator ev = build_evaluator(spec, 5);
        for (int n = 0; n < 5; ++n) {
            for (int m = n + 1; m < 5; ++m) {
                auto f = [&](double y) {
                    return eigenfunction_g(ev.modes[n], spec, y) *
                           eigenfunction_g(ev.modes[m], spec, y);
                };
                const auto q = integrate_weighted(f, 1e-9, {spec.y0});
                CHECK(std::fabs(q.value) <=
                      1e-6 * std::sqrt(ev.modes[n].C_n * ev.modes[m].C_n));
            }
        }
    }
}

TEST_CASE("source spectrum parsing") {
    const std::string good = "# comment line\n"
                             "1.0 2.0\n"
                             "2.0 1.5  # trailing comment\n"
                             "\n"
                             "4.0 0.5\n";
    const SourceSpectrum src = parse_source_spectrum(good);
    CHECK(src.epsilon0.size() == 3);
    CHECK(src.j[1] == 1.5);

    CHECK_THROWS_AS(parse_source_spectrum("1.0 2.0\n0.5 1.0\n"), GridError);  // not increasing
    CHECK_THROWS_AS(parse_source_spectrum("1.0 -2.0\n2.0 1.0\n"), GridError); // negative j
    CHECK_THROWS_AS(parse_source_spectrum("1.0\n2.0 1.0\n"), GridError);      // one column
    CHECK_THROWS_AS(parse_source_spectrum("1.0 2.0 3.0\n2.0 1.0\n"), GridError);
    CHECK_THROWS_AS(parse_source_spectrum("1.0 2.0\n"), GridError);           // single point
}

TEST_CASE("convolution") {
    const GreensEvaluator ev = build_evaluator(kSpecA, 12);

    SUBCASE("causality: output vanishes below the source band") {
        SourceSpectrum src;
        src.epsilon0 = {2.0, 2.5, 3.0};
        src.j = {1.0, 1.0, 1.0};
        CHECK(convolve_spectrum(ev, src, 0.5, 1.5) == 0.0);
    }

    SUBCASE("delta-like single bin recovers the Green's function scaling") {
        // a tall narrow bin around eps0 = 1: f ~ j0 * width * fG(eps/1)
        const double width = 1e-4;
        SourceSpectrum src;
        src.epsilon0 = {1.0 - width / 2.0, 1.0 + width / 2.0};
        src.j = {1.0 / width, 1.0 / width};
        const double eps = 7.0;
        const double direct = greens_function(ev, 0.5, eps) / 3.14159265358979323846;
        CHECK(rel(convolve_spectrum(ev, src, 0.5, eps), direct) < 1e-3);
    }

    SUBCASE("planck source against a Romberg oracle") {
        const SourceSpectrum src = make_planck_source(1.0, 0.1, 5.0, 257);
        const double y = 0.6;
        const double eps = 12.0;  // above the whole band: full grid contributes
        const double got = convolve_spectrum(ev, src, y, eps);

        // Romberg on the same integrand over [0.1, 5]
        auto f = [&](double e0) {
            return e0 * e0 / std::expm1(e0) * greens_function(ev, y, eps / e0) /
                   (3.14159265358979323846 * e0 * e0 * e0);
        };
        const int levels = 9;
        double R[levels][levels];
        const double a = 0.1, b = 5.0;
        R[0][0] = 0.5 * (b - a) * (f(a) + f(b));
        for (int i = 1; i < levels; ++i) {
            const long nseg = 1L << i;
            const double h = (b - a) / nseg;
            double s = 0.0;
            for (long k = 1; k < nseg; k += 2) {
                s += f(a + k * h);
            }
            R[i][0] = 0.5 * R[i - 1][0] + h * s;
            double pow4 = 1.0;
            for (int j = 1; j <= i; ++j) {
                pow4 *= 4.0;
                R[i][j] = (pow4 * R[i][j - 1] - R[i - 1][j - 1]) / (pow4 - 1.0);
            }
        }
        const double oracle = R[levels - 1][levels - 1];
        CHECK(rel(got, oracle) < 1e-3);

        // trapezoid on a refined grid converges toward the oracle
        const SourceSpectrum fine = make_planck_source(1.0, 0.1, 5.0, 4097);
        CHECK(rel(convolve_spectrum(ev, fine, y, eps), oracle) < 1e-6);
    }

    SUBCASE("spec-signature overload builds its own evaluator") {
        SourceSpectrum src;
        src.epsilon0 = {1.0, 2.0};
        src.j = {1.0, 1.0};
        const double v = convolve_spectrum(kSpecA, src, 0.5, 10.0, 12);
        CHECK(rel(v, convolve_spectrum(ev, src, 0.5, 10.0)) < 1e-12);
    }
}

TEST_CASE("truncation convergence of the expansion (reduced)") {
    // the full 20-vs-60 sweep lives in the acceptance suite; spot-check here
    const GreensEvaluator e20 = build_evaluator(kSpecA, 20);
    const GreensEvaluator e40 = build_evaluator(kSpecA, 40);
    for (double r : {1.05, 3.7, 120.0}) {
        const double f20 = greens_function(e20, 0.5, r);
        const double f40 = greens_function(e40, 0.5, r);
        CHECK(rel(f20, f40) < 1e-5);
    }
}
