#include "cohlab/diag_sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cohlab/errors.hpp"

namespace cohlab {
namespace {

constexpr double kInnerTol = 1e-10;     // Newton decrement^2 / 2 threshold
constexpr double kMuShrink = 0.2;
constexpr int kMaxOuter = 80;
constexpr double kRankTol = 1e-10;      // eigenvalue cutoff for the range of rho
constexpr double kSupportTol = 1e-9;    // kernel-mass cutoff for freezing a coordinate

// In-place Cholesky A = L L^dagger for Hermitian positive definite A.
// Returns false (leaving l unspecified) when a pivot is not strictly positive.
bool cholesky(const ComplexMatrix& a, ComplexMatrix& l) {
    const int d = a.dim();
    l = ComplexMatrix(d);
    for (int j = 0; j < d; ++j) {
        double diag = a(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(l(j, k));
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (int i = j + 1; i < d; ++i) {
            Cx s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return true;
}

double logdet_from_cholesky(const ComplexMatrix& l) {
    double acc = 0.0;
    for (int j = 0; j < l.dim(); ++j) acc += std::log(l(j, j).real());
    return 2.0 * acc;
}

// Inverse of the original matrix given its Cholesky factor, column by column.
ComplexMatrix inverse_from_cholesky(const ComplexMatrix& l) {
    const int d = l.dim();
    ComplexMatrix inv(d);
    std::vector<Cx> y(d);
    for (int col = 0; col < d; ++col) {
        for (int i = 0; i < d; ++i) {
            Cx s = (i == col) ? Cx(1.0) : Cx(0.0);
            for (int k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i).real();
        }
        for (int i = d - 1; i >= 0; --i) {
            Cx s = y[i];
            for (int k = i + 1; k < d; ++k) s -= std::conj(l(k, i)) * inv(k, col);
            inv(i, col) = s / l(i, i).real();
        }
    }
    return inv;
}

// Solves the real symmetric positive definite system h * dx = -g, with a
// ridge fallback when rounding pushes h to the edge of definiteness.
bool newton_direction(std::vector<double> h, const std::vector<double>& g,
                      std::vector<double>& dx, int n) {
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(h[i * n + i]));
    double ridge = 0.0;
    for (int attempt = 0; attempt < 7; ++attempt) {
        std::vector<double> l(h);
        if (ridge > 0.0) {
            for (int i = 0; i < n; ++i) l[i * n + i] += ridge;
        }
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            double diag = l[j * n + j];
            for (int k = 0; k < j; ++k) diag -= l[j * n + k] * l[j * n + k];
            if (!(diag > 0.0)) {
                ok = false;
                break;
            }
            l[j * n + j] = std::sqrt(diag);
            for (int i = j + 1; i < n; ++i) {
                double s = l[i * n + j];
                for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
                l[i * n + j] = s / l[j * n + j];
            }
        }
        if (ok) {
            dx.assign(n, 0.0);
            std::vector<double> y(n);
            for (int i = 0; i < n; ++i) {
                double s = -g[i];
                for (int k = 0; k < i; ++k) s -= l[i * n + k] * y[k];
                y[i] = s / l[i * n + i];
            }
            for (int i = n - 1; i >= 0; --i) {
                double s = y[i];
                for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * dx[k];
                dx[i] = s / l[i * n + i];
            }
            return true;
        }
        ridge = (ridge == 0.0) ? 1e-14 * std::max(max_diag, 1.0) : ridge * 100.0;
    }
    return false;
}

struct BudgetTracker {
    int used = 0;
    int limit = 500;
    std::vector<double> best_x;
    double best_gap = std::numeric_limits<double>::infinity();

    void note(const std::vector<double>& x, double gap) {
        if (gap < best_gap) {
            best_gap = gap;
            best_x = x;
        }
    }
    [[noreturn]] void fail(const char* what) const {
        throw SolverFailure(what, best_x, best_gap);
    }
};

DiagSdpSolution solve_dominating(const DensityMatrix& rho, double tol, BudgetTracker& budget) {
    const int d = rho.dim();
    const ComplexMatrix& r = rho.matrix();
    const double lambda_max = eigh_hermitian(r).eigenvalues.front();

    std::vector<double> x(d, lambda_max + 1.0);
    auto constraint = [&](const std::vector<double>& xs) {
        ComplexMatrix s = ComplexMatrix::diagonal(xs) - r;
        return s;
    };

    double mu = 1.0;
    DiagSdpSolution out;
    for (int outer = 0; outer < kMaxOuter; ++outer) {
        // Center for the current barrier weight.
        for (;;) {
            ComplexMatrix l;
            ComplexMatrix s = constraint(x);
            if (!cholesky(s, l)) throw InfeasibleStart("lost strict feasibility while centering");
            const ComplexMatrix sinv = inverse_from_cholesky(l);
            std::vector<double> g(d), h(static_cast<size_t>(d) * d);
            for (int i = 0; i < d; ++i) {
                g[i] = 1.0 - mu * sinv(i, i).real();
                for (int j = 0; j < d; ++j) h[i * d + j] = mu * std::norm(sinv(i, j));
            }
            std::vector<double> dx;
            if (!newton_direction(h, g, dx, d)) budget.fail("Newton system singular");
            const double slope = std::inner_product(g.begin(), g.end(), dx.begin(), 0.0);
            if (-slope * 0.5 <= kInnerTol) break;

            const double f0 = std::accumulate(x.begin(), x.end(), 0.0) - mu * logdet_from_cholesky(l);
            double t = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                std::vector<double> xt(d);
                for (int i = 0; i < d; ++i) xt[i] = x[i] + t * dx[i];
                ComplexMatrix lt;
                if (cholesky(constraint(xt), lt)) {
                    const double ft = std::accumulate(xt.begin(), xt.end(), 0.0) -
                                      mu * logdet_from_cholesky(lt);
                    if (std::isfinite(ft) && ft <= f0 + 0.25 * t * slope) {
                        x = std::move(xt);
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if (!accepted) break;  // stalled at rounding level: accept current center
            if (++budget.used >= budget.limit) budget.fail("Newton step budget exhausted");
        }

        // Duality gap via the scaled dual certificate Z' = D^-1/2 (mu S^-1) D^-1/2,
        // which has unit diagonal and is therefore dual feasible.
        ComplexMatrix l;
        const ComplexMatrix s = constraint(x);
        if (!cholesky(s, l)) throw InfeasibleStart("lost strict feasibility after centering");
        const ComplexMatrix sinv = inverse_from_cholesky(l);
        std::vector<double> zd(d);
        for (int i = 0; i < d; ++i) zd[i] = mu * sinv(i, i).real();
        double dual = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const Cx zij = mu * sinv(i, j) / std::sqrt(zd[i] * zd[j]);
                dual += (zij * r(j, i)).real();
            }
        }
        const double primal = std::accumulate(x.begin(), x.end(), 0.0);
        const double gap = primal - dual;
        budget.note(x, gap);
        if (gap <= tol) {
            out.x = x;
            out.objective = primal;
            out.gap = gap;
            out.iterations = budget.used;
            out.certificate = min_eigenvalue(s);
            return out;
        }
        mu *= kMuShrink;
    }
    budget.fail("barrier stages exhausted");
}

DiagSdpSolution solve_dominated(const DensityMatrix& rho, double tol, BudgetTracker& budget) {
    const int d = rho.dim();
    const ComplexMatrix& r = rho.matrix();
    const EighResult eig = eigh_hermitian(r);  // eigenvalues descending

    int rank = 0;
    while (rank < d && eig.eigenvalues[rank] > kRankTol) ++rank;

    // Coordinates carrying kernel mass are frozen at zero: any feasible x_i
    // there is bounded by the Rayleigh quotient of a near-null eigenvector.
    std::vector<int> active;
    double leak_sum = 0.0;
    for (int i = 0; i < d; ++i) {
        double support = 0.0;
        for (int k = rank; k < d; ++k) support += std::norm(eig.vectors(i, k));
        if (support <= kSupportTol) {
            active.push_back(i);
            continue;
        }
        const double threshold = kSupportTol / d;
        double leak = r(i, i).real();  // x_i can never exceed the diagonal entry
        for (int k = rank; k < d; ++k) {
            const double w2 = std::norm(eig.vectors(i, k));
            if (w2 >= threshold) {
                leak = std::min(leak, std::max(eig.eigenvalues[k], 0.0) / w2);
            }
        }
        leak_sum += std::max(leak, 0.0);
    }

    DiagSdpSolution out;
    if (active.empty()) {
        out.x.assign(d, 0.0);
        out.objective = 0.0;
        out.gap = leak_sum;
        out.iterations = 0;
        out.certificate = eig.eigenvalues[d - 1];
        if (out.gap > tol) {
            budget.note(out.x, out.gap);
            budget.fail("kernel leak exceeds tolerance");
        }
        return out;
    }

    const int n = static_cast<int>(active.size());
    // Compressed problem on the range of rho: M(x) = diag(lambda) - sum x_j w_j w_j^dagger
    // with w_j the j-th frozen-frame row of the eigenvector matrix.
    std::vector<std::vector<Cx>> w(n, std::vector<Cx>(rank));
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < rank; ++a) w[j][a] = std::conj(eig.vectors(active[j], a));
    }
    auto build_m = [&](const std::vector<double>& xs) {
        ComplexMatrix m(rank);
        for (int a = 0; a < rank; ++a) m(a, a) = eig.eigenvalues[a];
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < rank; ++a) {
                for (int b = 0; b < rank; ++b) {
                    m(a, b) -= xs[j] * w[j][a] * std::conj(w[j][b]);
                }
            }
        }
        return m;
    };

    std::vector<double> x(n, 0.5 * eig.eigenvalues[rank - 1]);
    auto barrier_value = [&](const std::vector<double>& xs, double mu, const ComplexMatrix& l) {
        double f = -std::accumulate(xs.begin(), xs.end(), 0.0) - mu * logdet_from_cholesky(l);
        for (double v : xs) f -= mu * std::log(v);
        return f;
    };
    auto embed = [&](const std::vector<double>& xs) {
        std::vector<double> full(d, 0.0);
        for (int j = 0; j < n; ++j) full[active[j]] = std::max(xs[j], 0.0);
        return full;
    };

    double mu = 1.0;
    double dual_upper = std::numeric_limits<double>::infinity();
    for (int outer = 0; outer < kMaxOuter; ++outer) {
        for (;;) {
            ComplexMatrix l;
            if (!cholesky(build_m(x), l)) {
                throw InfeasibleStart("lost strict feasibility while centering");
            }
            const ComplexMatrix minv = inverse_from_cholesky(l);
            // G = W^dagger M^-1 W restricted to the active coordinates.
            std::vector<std::vector<Cx>> t(n, std::vector<Cx>(rank));
            for (int j = 0; j < n; ++j) {
                for (int a = 0; a < rank; ++a) {
                    Cx s = 0.0;
                    for (int b = 0; b < rank; ++b) s += minv(a, b) * w[j][b];
                    t[j][a] = s;
                }
            }
            std::vector<double> g(n), h(static_cast<size_t>(n) * n);
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    Cx gjk = 0.0;
                    for (int a = 0; a < rank; ++a) gjk += std::conj(w[j][a]) * t[k][a];
                    h[j * n + k] = mu * std::norm(gjk);
                    if (j == k) {
                        g[j] = -1.0 + mu * gjk.real() - mu / x[j];
                        h[j * n + k] += mu / (x[j] * x[j]);
                    }
                }
            }
            std::vector<double> dx;
            if (!newton_direction(h, g, dx, n)) budget.fail("Newton system singular");
            const double slope = std::inner_product(g.begin(), g.end(), dx.begin(), 0.0);
            if (-slope * 0.5 <= kInnerTol) break;

            const double f0 = barrier_value(x, mu, l);
            double step = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                std::vector<double> xt(n);
                bool positive = true;
                for (int j = 0; j < n; ++j) {
                    xt[j] = x[j] + step * dx[j];
                    positive = positive && xt[j] > 0.0;
                }
                ComplexMatrix lt;
                if (positive && cholesky(build_m(xt), lt)) {
                    const double ft = barrier_value(xt, mu, lt);
                    if (std::isfinite(ft) && ft <= f0 + 0.25 * step * slope) {
                        x = std::move(xt);
                        accepted = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if (!accepted) break;
            if (++budget.used >= budget.limit) budget.fail("Newton step budget exhausted");
        }

        // Dual certificate Z = c * mu * W M^-1 W^dagger: positive semidefinite by
        // construction, and c is chosen so Z_ii >= 1 on every active coordinate.
        ComplexMatrix l;
        if (!cholesky(build_m(x), l)) {
            throw InfeasibleStart("lost strict feasibility after centering");
        }
        const ComplexMatrix minv = inverse_from_cholesky(l);
        double zmin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            Cx gjj = 0.0;
            for (int a = 0; a < rank; ++a) {
                Cx s = 0.0;
                for (int b = 0; b < rank; ++b) s += minv(a, b) * w[j][b];
                gjj += std::conj(w[j][a]) * s;
            }
            zmin = std::min(zmin, mu * gjj.real());
        }
        double trace_term = 0.0;
        for (int a = 0; a < rank; ++a) trace_term += eig.eigenvalues[a] * minv(a, a).real();
        const double scale = std::max(1.0, 1.0 / zmin);
        dual_upper = scale * mu * trace_term + leak_sum;
        const double primal = std::accumulate(x.begin(), x.end(), 0.0);
        const double gap = dual_upper - primal;
        budget.note(embed(x), gap);
        if (gap <= tol) break;
        mu *= kMuShrink;
        if (outer == kMaxOuter - 1) budget.fail("barrier stages exhausted");
    }

    // Feasibility repair on the full-dimensional constraint: shrink toward zero
    // until the smallest eigenvalue clears rounding level. The dual bound is
    // unaffected, so the reported gap absorbs whatever the repair gives up.
    std::vector<double> full = embed(x);
    auto full_constraint = [&](const std::vector<double>& xs) {
        return r - ComplexMatrix::diagonal(xs);
    };
    double cert = min_eigenvalue(full_constraint(full));
    for (int repair = 0; repair < 200 && cert < -1e-12; ++repair) {
        for (double& v : full) v *= 0.995;
        cert = min_eigenvalue(full_constraint(full));
    }
    const double primal = std::accumulate(full.begin(), full.end(), 0.0);
    const double gap = dual_upper - primal;
    budget.note(full, gap);
    if (cert < -1e-12 || gap > tol) budget.fail("feasibility repair did not converge");

    out.x = std::move(full);
    out.objective = primal;
    out.gap = gap;
    out.iterations = budget.used;
    out.certificate = cert;
    return out;
}

}  // namespace

DiagSdpSolution solve(const DiagSdpProblem& problem, const DiagSdpSolver& solver) {
    BudgetTracker budget;
    budget.limit = solver.max_newton_steps;
    const double tol = std::min(problem.tol, solver.tol);
    if (problem.sense == SdpSense::MinimizeTraceDominating) {
        return solve_dominating(problem.rho, tol, budget);
    }
    return solve_dominated(problem.rho, tol, budget);
}

bool verify(const DiagSdpSolution& solution, const DiagSdpProblem& problem) {
    const int d = problem.rho.dim();
    if (static_cast<int>(solution.x.size()) != d) return false;
    const double tol2 = 2.0 * problem.tol;
    double sum = 0.0;
    for (double v : solution.x) {
        if (!(v >= -tol2)) return false;
        sum += v;
    }
    if (std::abs(sum - solution.objective) > 1e-9 * std::max(1.0, std::abs(sum))) return false;
    ComplexMatrix s = (problem.sense == SdpSense::MinimizeTraceDominating)
                          ? ComplexMatrix::diagonal(solution.x) - problem.rho.matrix()
                          : problem.rho.matrix() - ComplexMatrix::diagonal(solution.x);
    return min_eigenvalue(s) >= -tol2;
}

}  // namespace cohlab
