#include "cohlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>

#include "cohlab/bases.hpp"
#include "cohlab/bounds.hpp"
#include "cohlab/diag_sdp.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/experiments.hpp"
#include "cohlab/haar.hpp"
#include "cohlab/hermlin.hpp"
#include "cohlab/measures.hpp"

namespace cohlab {
namespace {

using Clock = std::chrono::steady_clock;

// Disjoint sample-index regions per criterion, so no stream is reused.
constexpr std::uint64_t kIdxMaxima = 0;
constexpr std::uint64_t kIdxDominance = 1u << 24;
constexpr std::uint64_t kIdxGap = 2u << 24;
constexpr std::uint64_t kIdxQutrit = 3u << 24;
constexpr std::uint64_t kIdxSolver = 4u << 24;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double sample_stddev(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / (n - 1.0));
}

// ---- brute-force oracles for the diagonal programs (criterion 10) ----
//
// These share nothing with the barrier solver: feasibility comes from
// principal minors, optima from grid refinement and bisection.

double oracle_dominating_2x2(const ComplexMatrix& rho) {
    const double c = std::abs(rho(0, 1));
    if (c < 1e-12) return rho.trace().real();
    // minimize (s00 + s11) with s00*s11 >= c^2 over s00 = t; grid-zoomed
    double lo = 1e-9, hi = 2.0 * c + 1.0;
    double best_t = c;
    for (int round = 0; round < 8; ++round) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 400; ++i) {
            const double t = lo + (hi - lo) * i / 400.0;
            if (t <= 0.0) continue;
            const double f = t + c * c / t;
            if (f < best) {
                best = f;
                best_t = t;
            }
        }
        const double span = (hi - lo) / 100.0;
        lo = std::max(1e-12, best_t - span);
        hi = best_t + span;
    }
    return rho.trace().real() + best_t + c * c / best_t;
}

double oracle_dominated_2x2(const ComplexMatrix& rho) {
    const double r00 = rho(0, 0).real(), r11 = rho(1, 1).real();
    const double c2 = std::norm(rho(0, 1));
    auto feasible = [&](double x0, double x1) {
        const double u = r00 - x0, v = r11 - x1;
        return u >= 0.0 && v >= 0.0 && u * v >= c2 - 1e-15;
    };
    double cx0 = 0.0, cx1 = 0.0, span0 = r00, span1 = r11;
    double best_sum = 0.0;
    for (int round = 0; round < 8; ++round) {
        double bx0 = cx0, bx1 = cx1;
        double best = -1.0;
        for (int i = 0; i <= 80; ++i) {
            for (int j = 0; j <= 80; ++j) {
                const double x0 = std::clamp(cx0 - span0 + 2.0 * span0 * i / 80.0, 0.0, r00);
                const double x1 = std::clamp(cx1 - span1 + 2.0 * span1 * j / 80.0, 0.0, r11);
                if (!feasible(x0, x1)) continue;
                if (x0 + x1 > best) {
                    best = x0 + x1;
                    bx0 = x0;
                    bx1 = x1;
                }
            }
        }
        best_sum = std::max(best_sum, best);
        cx0 = bx0;
        cx1 = bx1;
        span0 = std::max(span0 / 20.0, 1e-12);
        span1 = std::max(span1 / 20.0, 1e-12);
    }
    return best_sum;
}

// All seven principal minors of a real symmetric 3x3 must be nonnegative.
bool psd3(const double m[3][3]) {
    const double tol = -1e-13;
    if (m[0][0] < tol || m[1][1] < tol || m[2][2] < tol) return false;
    if (m[0][0] * m[1][1] - m[0][1] * m[0][1] < tol) return false;
    if (m[0][0] * m[2][2] - m[0][2] * m[0][2] < tol) return false;
    if (m[1][1] * m[2][2] - m[1][2] * m[1][2] < tol) return false;
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[1][2]) -
                       m[0][1] * (m[0][1] * m[2][2] - m[1][2] * m[0][2]) +
                       m[0][2] * (m[0][1] * m[1][2] - m[1][1] * m[0][2]);
    return det >= tol;
}

// Smallest x2 making diag(x) - rho PSD at fixed (x0, x1); PSD is monotone
// in x2, so bisection applies.
double oracle_dominating_3x3(const double rho[3][3]) {
    auto min_x2 = [&](double x0, double x1) {
        auto ok = [&](double x2) {
            double s[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) s[i][j] = -rho[i][j];
            s[0][0] += x0;
            s[1][1] += x1;
            s[2][2] += x2;
            return psd3(s);
        };
        double hi = rho[2][2] + 3.0;
        if (!ok(hi)) return std::numeric_limits<double>::infinity();
        double lo = rho[2][2] - 1e-12;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ok(mid) ? hi : lo) = mid;
        }
        return hi;
    };
    double c0 = rho[0][0] + 1.0, c1 = rho[1][1] + 1.0;
    double span = 1.5;
    double best = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 8; ++round) {
        double b0 = c0, b1 = c1;
        for (int i = 0; i <= 48; ++i) {
            for (int j = 0; j <= 48; ++j) {
                const double x0 = std::max(rho[0][0] - 1e-12, c0 - span + 2.0 * span * i / 48.0);
                const double x1 = std::max(rho[1][1] - 1e-12, c1 - span + 2.0 * span * j / 48.0);
                const double f = x0 + x1 + min_x2(x0, x1);
                if (f < best) {
                    best = f;
                    b0 = x0;
                    b1 = x1;
                }
            }
        }
        c0 = b0;
        c1 = b1;
        span = std::max(span / 12.0, 1e-10);
    }
    return best;
}

double oracle_dominated_3x3(const double rho[3][3]) {
    auto max_x2 = [&](double x0, double x1) {
        auto ok = [&](double x2) {
            double s[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) s[i][j] = rho[i][j];
            s[0][0] -= x0;
            s[1][1] -= x1;
            s[2][2] -= x2;
            return psd3(s);
        };
        if (!ok(0.0)) return -std::numeric_limits<double>::infinity();
        double lo = 0.0, hi = rho[2][2] + 1e-12;
        if (ok(hi)) return hi;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ok(mid) ? lo : hi) = mid;
        }
        return lo;
    };
    double c0 = 0.0, c1 = 0.0;
    double span0 = rho[0][0], span1 = rho[1][1];
    double best = 0.0;
    for (int round = 0; round < 8; ++round) {
        double b0 = c0, b1 = c1;
        for (int i = 0; i <= 48; ++i) {
            for (int j = 0; j <= 48; ++j) {
                const double x0 = std::clamp(c0 - span0 + 2.0 * span0 * i / 48.0, 0.0, rho[0][0]);
                const double x1 = std::clamp(c1 - span1 + 2.0 * span1 * j / 48.0, 0.0, rho[1][1]);
                const double x2 = max_x2(x0, x1);
                if (x2 < 0.0) continue;
                const double f = x0 + x1 + x2;
                if (f > best) {
                    best = f;
                    b0 = x0;
                    b1 = x1;
                }
            }
        }
        c0 = b0;
        c1 = b1;
        span0 = std::max(span0 / 12.0, 1e-10);
        span1 = std::max(span1 / 12.0, 1e-10);
    }
    return best;
}

// Random real symmetric trace-one PSD 3x3 from a random spectrum and Euler
// rotations, independent of the Haar machinery under test elsewhere.
void random_symmetric_3x3(std::uint64_t seed, std::uint64_t index, double out[3][3]) {
    const std::vector<double> lambda = random_spectrum(3, seed, index);
    CounterRng rng(seed, index, 0x3a3au);
    const double a = rng.uniform() * 6.283185307179586;
    const double b = rng.uniform() * 3.141592653589793;
    const double c = rng.uniform() * 6.283185307179586;
    const double ca = std::cos(a), sa = std::sin(a);
    const double cb = std::cos(b), sb = std::sin(b);
    const double cc = std::cos(c), sc = std::sin(c);
    // R = Rz(a) Ry(b) Rz(c)
    const double r[3][3] = {
        {ca * cb * cc - sa * sc, -ca * cb * sc - sa * cc, ca * sb},
        {sa * cb * cc + ca * sc, -sa * cb * sc + ca * cc, sa * sb},
        {-sb * cc, sb * sc, cb},
    };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += r[i][k] * lambda[static_cast<size_t>(k)] * r[j][k];
            out[i][j] = s;
        }
    }
}

struct Harness {
    const AcceptanceConfig& cfg;
    std::ostream* progress;
    std::vector<CriterionResult> results;

    bool wanted(int id) const {
        if (cfg.criteria.empty()) return true;
        return std::find(cfg.criteria.begin(), cfg.criteria.end(), id) != cfg.criteria.end();
    }

    void run(int id, const std::string& name,
             const std::function<std::pair<bool, std::string>()>& body) {
        if (!wanted(id)) return;
        const auto t0 = Clock::now();
        CriterionResult res;
        res.id = id;
        res.name = name;
        try {
            auto [ok, detail] = body();
            res.passed = ok;
            res.detail = std::move(detail);
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        if (progress) {
            *progress << (res.passed ? "[PASS]" : "[FAIL]") << " criterion " << id << " ("
                      << name << "): " << res.detail << "  [" << num(res.seconds) << " s]"
                      << std::endl;
        }
        results.push_back(std::move(res));
    }
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg, std::ostream* progress) {
    Harness h{cfg, progress, {}};
    const std::uint64_t seed = cfg.seed;

    h.run(1, "maxima attained by the contradiagonal rotation", [&] {
        double worst_solver = 0.0, worst_closed = 0.0;
        for (int d = 2; d <= 7; ++d) {
            for (int s = 0; s < cfg.maxima_spectra_per_dim; ++s) {
                const std::uint64_t idx =
                    kIdxMaxima + static_cast<std::uint64_t>(d - 2) * cfg.maxima_spectra_per_dim + s;
                const std::vector<double> lambda = random_spectrum(d, seed, idx);
                const DensityMatrix diag = density_from_probabilities(lambda);
                const Spectrum spectrum = spectral_decompose(diag);
                const TheoremMaxima mx = theorem_maxima(spectrum);
                const DensityMatrix rot = conjugate(diag, maximizing_rotation(spectrum));
                worst_solver = std::max(
                    worst_solver, std::abs(robustness_of_coherence(rot) - mx.robustness));
                worst_solver =
                    std::max(worst_solver, std::abs(coherence_weight(rot) - mx.weight));
                worst_closed = std::max(
                    worst_closed,
                    std::abs(skew_information_coherence(rot) - mx.skew_information));
                worst_closed = std::max(
                    worst_closed,
                    std::abs(relative_entropy_coherence(rot) - mx.relative_entropy));
            }
        }
        const bool ok = worst_solver <= 1e-5 && worst_closed <= 1e-9;
        return std::pair(ok, "worst solver err " + num(worst_solver) + " (tol 1e-05), worst closed-form err " +
                                 num(worst_closed) + " (tol 1e-09)");
    });

    h.run(2, "no sampled basis beats any maximum", [&] {
        double worst_solver = -1.0, worst_closed = -1.0;  // excess over the maxima
        for (int d = 2; d <= 5; ++d) {
            for (int s = 0; s < cfg.dominance_spectra_per_dim; ++s) {
                const std::uint64_t block =
                    static_cast<std::uint64_t>(d - 2) * cfg.dominance_spectra_per_dim + s;
                const std::vector<double> lambda =
                    random_spectrum(d, seed, kIdxDominance + block);
                const DensityMatrix diag = density_from_probabilities(lambda);
                const TheoremMaxima mx = theorem_maxima(spectral_decompose(diag));
                for (std::uint64_t i = 0; i < cfg.dominance_samples; ++i) {
                    const UnitaryMatrix u = haar_unitary_at(
                        d, seed, kIdxDominance + block * cfg.dominance_samples + i);
                    const DensityMatrix rho = conjugate(diag, u);
                    worst_solver = std::max(
                        worst_solver, robustness_of_coherence(rho) - mx.robustness);
                    worst_solver =
                        std::max(worst_solver, coherence_weight(rho) - mx.weight);
                    worst_closed = std::max(
                        worst_closed, skew_information_coherence(rho) - mx.skew_information);
                    worst_closed = std::max(
                        worst_closed, relative_entropy_coherence(rho) - mx.relative_entropy);
                }
            }
        }
        const bool ok = worst_solver <= 1e-5 && worst_closed <= 1e-9;
        return std::pair(ok, "largest solver excess " + num(worst_solver) +
                                 ", largest closed-form excess " + num(worst_closed));
    });

    h.run(3, "pinned Fourier-contradiagonal bound values", [&] {
        const struct {
            Fig2Family family;
            double pinned;
        } cases[] = {{Fig2Family::D4, 0.848528},
                     {Fig2Family::D5, 1.488135},
                     {Fig2Family::D6, 1.961348}};
        double worst = 0.0;
        for (const auto& c : cases) {
            std::vector<double> lambda = fig2_spectrum(c.family, 0.4);
            std::sort(lambda.begin(), lambda.end(), std::greater<>());
            worst = std::max(worst, std::abs(bound_o(lambda) - c.pinned));
        }
        return std::pair(worst <= 1e-6, "worst deviation from pinned values " + num(worst));
    });

    h.run(4, "closed-form value of r^2 - b^2", [&] {
        double min_margin = std::numeric_limits<double>::infinity();
        double worst_diff = 0.0;
        for (int d = 2; d <= 8; ++d) {
            for (int s = 0; s < cfg.gap_spectra_per_dim; ++s) {
                const std::uint64_t idx =
                    kIdxGap + static_cast<std::uint64_t>(d - 2) * cfg.gap_spectra_per_dim + s;
                const std::vector<double> lambda = random_spectrum(d, seed, idx);
                double pur = 0.0;
                for (double v : lambda) pur += v * v;
                const double b2 = (d - 1.0) * (d * pur - 1.0);
                const double r = bound_r(lambda);
                min_margin = std::min(min_margin, r - std::sqrt(std::max(b2, 0.0)));
                worst_diff = std::max(worst_diff, std::abs(bound_gap_rb(lambda) - (r * r - b2)));
            }
        }
        const bool ok = min_margin >= -1e-10 && worst_diff <= 1e-9;
        return std::pair(ok, "min r-b margin " + num(min_margin) + ", worst identity error " +
                                 num(worst_diff));
    });

    h.run(5, "qutrit contradiagonal saturates the purity bound", [&] {
        double worst = 0.0;
        for (int s = 0; s < cfg.qutrit_spectra; ++s) {
            const std::vector<double> lambda = random_spectrum(3, seed, kIdxQutrit + s);
            double pur = 0.0;
            for (double v : lambda) pur += v * v;
            const double b = bound_b_from_purity(3, pur);
            worst = std::max(worst, std::abs(l1_coherence(contradiagonal_state(lambda)) - b));
        }
        return std::pair(worst <= 1e-9, "worst saturation error " + num(worst));
    });

    h.run(6, "phase-closure crossings sit at the two admissible radii", [&] {
        const auto records = fig1_scan(0.125, 0.25, cfg.fig1_points);
        const double a_low = 0.25 / std::sqrt(3.0);
        const double window = 1e-3, tol = 1e-3;
        bool found_same_end = false, found_diff_low = false;
        double worst_stray = 0.0;  // closest admissible distance of any stray hit
        auto check_branch = [&](size_t value_index, bool same_branch) {
            double prev = std::numeric_limits<double>::quiet_NaN();
            double prev_a = 0.0;
            for (const auto& rec : records) {
                const double a = rec.parameters[0].second;
                const double rhs = rec.values[value_index].second;
                if (!std::isfinite(rhs)) continue;
                const bool near_one = std::abs(rhs - 1.0) <= tol;
                const bool bracket = std::isfinite(prev) && (prev - 1.0) * (rhs - 1.0) < 0.0;
                if (near_one || bracket) {
                    const double where = bracket ? 0.5 * (prev_a + a) : a;
                    const double dist_end = std::abs(where - 0.25);
                    const double dist_low = std::abs(where - a_low);
                    if (same_branch) {
                        if (dist_end <= window) {
                            found_same_end = true;
                        } else {
                            worst_stray = std::max(worst_stray, std::min(dist_end, dist_low));
                        }
                    } else {
                        if (dist_low <= window) {
                            found_diff_low = true;
                        } else if (dist_end > window) {
                            worst_stray = std::max(worst_stray, std::min(dist_end, dist_low));
                        }
                    }
                }
                prev = rhs;
                prev_a = a;
            }
        };
        check_branch(1, true);   // values: cos_theta1, rhs_same, rhs_diff
        check_branch(2, false);
        const bool ok = found_same_end && found_diff_low && worst_stray == 0.0;
        return std::pair(ok, std::string("crossings at 1/4: ") + (found_same_end ? "yes" : "no") +
                                 ", at 1/(4 sqrt 3): " + (found_diff_low ? "yes" : "no") +
                                 ", stray hits off by up to " + num(worst_stray));
    });

    // Criteria 7 and 8 share one Monte Carlo grid; computed once on first use.
    std::vector<ExperimentRecord> fig2_records;
    const auto ensure_fig2 = [&] {
        if (!fig2_records.empty()) return;
        const std::vector<double> p_grid = {0.2, 0.4, 0.6};
        for (Fig2Family family : {Fig2Family::D4, Fig2Family::D5, Fig2Family::D6}) {
            const Fig2Result res = fig2_run(family, p_grid, cfg.fig2_n, seed, cfg.threads);
            fig2_records.insert(fig2_records.end(), res.records.begin(), res.records.end());
        }
    };
    h.run(7, "exceedance fractions at p = 0.4", [&] {
        ensure_fig2();
        const double pinned[3] = {0.5765, 0.1086, 0.2030};
        double worst = 0.0;
        for (const auto& rec : fig2_records) {
            if (std::abs(rec.parameters[1].second - 0.4) > 1e-12) continue;
            const int d = static_cast<int>(rec.parameters[0].second);
            const double exceed = rec.values[4].second;
            worst = std::max(worst, std::abs(exceed - pinned[d - 4]));
        }
        return std::pair(worst <= 0.02,
                         "largest |fraction - pinned| = " + num(worst) + " (tol 0.02)");
    });

    h.run(8, "bound deviations small and nonincreasing in n", [&] {
        ensure_fig2();
        double worst_dev = 0.0;
        double dev_d4_p04 = 0.0;
        for (const auto& rec : fig2_records) {
            const double dev = rec.values[3].second;
            worst_dev = std::max(worst_dev, dev);
            if (static_cast<int>(rec.parameters[0].second) == 4 &&
                std::abs(rec.parameters[1].second - 0.4) < 1e-12) {
                dev_d4_p04 = dev;
            }
        }
        if (fig2_records.empty()) return std::pair(false, std::string("no grid data"));
        std::vector<double> lambda = fig2_spectrum(Fig2Family::D4, 0.4);
        std::sort(lambda.begin(), lambda.end(), std::greater<>());
        const DensityMatrix rho = density_from_probabilities(lambda);
        const StreamingStats spot = scan_max(
            rho, cfg.fig2_spot_n, seed, [](const DensityMatrix& s) { return l1_coherence(s); },
            false, 0.0, {.bins = 200, .threads = cfg.threads});
        const double dev_spot = relative_deviation(spot.max_value(), bound_b(rho));
        const bool ok = worst_dev <= 0.05 && dev_spot <= dev_d4_p04 + 1e-15;
        return std::pair(ok, "worst deviation " + num(worst_dev) + " (tol 0.05); spot check " +
                                 num(dev_d4_p04) + " -> " + num(dev_spot) + " at 10x n");
    });

    h.run(9, "rank-2 spectrum stays clear of the purity bound", [&] {
        const std::vector<double> lambda = {0.6, 0.4, 0.0, 0.0};
        const DensityMatrix rho = density_from_probabilities(lambda);
        const double b = bound_b(rho);
        const int blocks = 10;  // block maxima give the run's statistical resolution
        const std::uint64_t per_block = cfg.rank2_n / blocks;
        std::vector<double> block_max(blocks, 0.0);
        double global_max = 0.0;
        for (std::uint64_t i = 0; i < per_block * blocks; ++i) {
            const double v =
                l1_coherence(conjugate(rho, haar_unitary_at(4, seed, i)));
            auto& cell = block_max[static_cast<size_t>(i / per_block)];
            cell = std::max(cell, v);
            global_max = std::max(global_max, v);
        }
        const double resolution = sample_stddev(block_max);
        const double margin = b - global_max;
        const bool ok = margin > 0.0 && margin >= 10.0 * resolution;
        return std::pair(ok, "bound - max = " + num(margin) + ", resolution " + num(resolution) +
                                 ", ratio " + num(margin / std::max(resolution, 1e-300)));
    });

    h.run(10, "barrier solver matches brute-force oracles", [&] {
        double worst = 0.0;
        for (int t = 0; t < cfg.sdp_instances; ++t) {
            const std::uint64_t idx = kIdxSolver + static_cast<std::uint64_t>(t);
            {  // complex 2x2
                const std::vector<double> lambda = random_spectrum(2, seed, idx);
                const DensityMatrix rho =
                    conjugate(density_from_probabilities(lambda), haar_unitary_at(2, seed, idx));
                const DiagSdpSolution mn = solve({rho, SdpSense::MinimizeTraceDominating, 1e-8});
                worst = std::max(worst,
                                 std::abs(mn.objective - oracle_dominating_2x2(rho.matrix())));
                const DiagSdpSolution mx = solve({rho, SdpSense::MaximizeTraceDominated, 1e-8});
                worst = std::max(worst,
                                 std::abs(mx.objective - oracle_dominated_2x2(rho.matrix())));
            }
            {  // real symmetric 3x3
                double m[3][3];
                random_symmetric_3x3(seed, idx, m);
                ComplexMatrix cm(3);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) cm(i, j) = m[i][j];
                const DensityMatrix rho = validate_density(cm);
                const DiagSdpSolution mn = solve({rho, SdpSense::MinimizeTraceDominating, 1e-8});
                worst = std::max(worst, std::abs(mn.objective - oracle_dominating_3x3(m)));
                const DiagSdpSolution mx = solve({rho, SdpSense::MaximizeTraceDominated, 1e-8});
                worst = std::max(worst, std::abs(mx.objective - oracle_dominated_3x3(m)));
            }
        }
        return std::pair(worst <= 1e-6, "worst |solver - oracle| = " + num(worst) + " (tol 1e-06)");
    });

    h.run(11, "repeated runs emit byte-identical tables", [&] {
        namespace fs = std::filesystem;
        const fs::path base = fs::temp_directory_path();
        const fs::path dirs[2] = {base / "cohlab_accept_det_a", base / "cohlab_accept_det_b"};
        std::vector<std::vector<std::string>> paths(2);
        for (int run = 0; run < 2; ++run) {
            fs::remove_all(dirs[run]);
            fs::create_directories(dirs[run]);
            // The second run uses a different worker count; results must not care.
            const int threads = (run == 0) ? 1 : 3;
            std::vector<ExperimentRecord> records = fig1_scan(0.125, 0.25, 500);
            const Fig2Result f2 = fig2_run(Fig2Family::D4, {0.4}, 2000, seed, threads);
            records.insert(records.end(), f2.records.begin(), f2.records.end());
            const auto r2 = rank2_scan(4, 0.25, 1000, seed, threads);
            records.insert(records.end(), r2.begin(), r2.end());
            const auto ids = identity_checks(3, seed);
            records.insert(records.end(), ids.begin(), ids.end());
            paths[run] = write_experiment_csvs(dirs[run].string(), records);
            for (const auto& [label, stats] : f2.histograms) {
                const std::string p = (dirs[run] / (label + ".csv")).string();
                write_histogram_csv(p, stats);
                paths[run].push_back(p);
            }
        }
        bool identical = paths[0].size() == paths[1].size();
        std::string mismatch;
        for (size_t i = 0; identical && i < paths[0].size(); ++i) {
            std::ifstream fa(paths[0][i], std::ios::binary);
            std::ifstream fb(paths[1][i], std::ios::binary);
            std::stringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            if (sa.str() != sb.str()) {
                identical = false;
                mismatch = fs::path(paths[0][i]).filename().string();
            }
        }
        fs::remove_all(dirs[0]);
        fs::remove_all(dirs[1]);
        return std::pair(identical, identical ? std::string("all tables identical across runs "
                                                            "and worker counts")
                                              : "first mismatch in " + mismatch);
    });

    return h.results;
}

bool accepted(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace cohlab
