#include "icg/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "icg/errors.hpp"

namespace icg {

LinearizationData LinearizationData::at(const MultiObjective& mo, const Vector& x) {
    const int m = mo.size();
    const int n = mo.dim();
    if (m == 0) throw DimensionMismatch("objective map has no objectives");
    LinearizationData data;
    data.sum.resize(m, n);
    data.width.resize(m, n);
    for (int i = 0; i < m; ++i) {
        const GHGradient g = gh_gradient(mo.objectives[i], x);
        data.sum.row(i) = (g.lo + g.hi).transpose();
        data.width.row(i) = (g.hi - g.lo).transpose();
    }
    return data;
}

double g_upper(const LinearizationData& data, int i, const Vector& v) {
    return 0.5 * data.sum.row(i).dot(v) + 0.5 * data.width.row(i).dot(v.cwiseAbs());
}

double g_lower(const LinearizationData& data, int i, const Vector& v) {
    return 0.5 * data.sum.row(i).dot(v) - 0.5 * data.width.row(i).dot(v.cwiseAbs());
}

double psi_phi(const LinearizationData& data, const Vector& v) {
    const Vector av = v.cwiseAbs();
    double value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < data.objectives(); ++i) {
        value = std::max(value, 0.5 * data.sum.row(i).dot(v) + 0.5 * data.width.row(i).dot(av));
    }
    return value;
}

QPInstance direction_qp(const LinearizationData& data) {
    const int m = data.objectives();
    const int n = data.dim();
    const int d = 2 * n + 1;  // (v, u, tau)

    QPInstance inst;
    inst.Q = Matrix::Zero(d, d);
    inst.Q.topLeftCorner(n, n).setIdentity();
    inst.c = Vector::Zero(d);
    inst.c[d - 1] = 1.0;

    inst.A = Matrix::Zero(m + 2 * n, d);
    inst.b = Vector::Zero(m + 2 * n);
    for (int i = 0; i < m; ++i) {
        inst.A.block(i, 0, 1, n) = data.sum.row(i);
        inst.A.block(i, n, 1, n) = data.width.row(i);
        inst.A(i, d - 1) = -2.0;
    }
    for (int j = 0; j < n; ++j) {
        inst.A(m + j, j) = 1.0;       //  v_j - u_j <= 0
        inst.A(m + j, n + j) = -1.0;
        inst.A(m + n + j, j) = -1.0;  // -v_j - u_j <= 0
        inst.A(m + n + j, n + j) = -1.0;
    }
    return inst;
}

DirectionResult solve_direction(const LinearizationData& data, const QPSolver& qp) {
    const int m = data.objectives();
    const int n = data.dim();

    // The direction problem is 2-homogeneous in the gradient data: scaling
    // the data by kappa scales the minimizer by kappa exactly. Solve at unit
    // scale so the quadratic program sees order-one coefficients, then map
    // the minimizer back.
    const double kappa = std::max(data.sum.lpNorm<Eigen::Infinity>(),
                                  data.width.lpNorm<Eigen::Infinity>());
    LinearizationData unit;
    const LinearizationData* solve_data = &data;
    if (kappa > 0 && kappa != 1.0) {
        unit.sum = data.sum / kappa;
        unit.width = data.width / kappa;
        solve_data = &unit;
    }

    const QPInstance inst = direction_qp(*solve_data);
    const QPSolution sol = qp.solve(inst);
    if (sol.status == QPStatus::Infeasible) {
        throw QPInfeasible("direction problem reported infeasible; v=u=0, tau=0 is feasible");
    }
    if (sol.status != QPStatus::Solved) {
        throw QPNotConverged("direction problem not solved to tolerance");
    }

    DirectionResult res;
    res.v = solve_data == &data ? sol.z.head(n) : (kappa * sol.z.head(n)).eval();
    res.psi_at_v = psi_phi(data, res.v);
    res.xi = res.psi_at_v + 0.5 * res.v.squaredNorm();

    Vector lam = sol.duals.head(m);
    const double mass = lam.sum();
    if (mass > 1e-12) {
        res.multipliers = lam / mass;
    } else {
        res.multipliers = Vector::Constant(m, 1.0 / m);
        res.multipliers_degenerate = true;
    }
    return res;
}

DirectionResult solve_direction(const MultiObjective& mo, const Vector& x, const QPSolver& qp) {
    return solve_direction(LinearizationData::at(mo, x), qp);
}

bool is_pareto_critical(const DirectionResult& res, double eps) {
    return res.xi > -eps;
}

namespace {

// Weighted soft-threshold minimizer and the associated dual value for
// simplex weights lambda.
struct DualPoint {
    Vector v;
    double value;
};

DualPoint dual_eval(const LinearizationData& data, const Vector& lambda) {
    const Vector a = 0.5 * data.sum.transpose() * lambda;
    const Vector cv = 0.5 * data.width.transpose() * lambda;
    DualPoint out;
    out.v.resize(a.size());
    double value = 0.0;
    for (int j = 0; j < a.size(); ++j) {
        const double shrink = std::max(std::abs(a[j]) - cv[j], 0.0);
        out.v[j] = a[j] >= 0 ? -shrink : shrink;
        value -= 0.5 * shrink * shrink;
    }
    out.value = value;
    return out;
}

// Enumerate integer compositions (k_1,...,k_m) with sum N, yielding the grid
// lambda = k / N over the simplex.
template <typename Fn>
void for_each_grid_point(int m, int density, Fn&& fn) {
    std::vector<int> k(m, 0);
    Vector lambda(m);
    // Odometer over the first m-1 coordinates; the last takes the remainder.
    int idx = 0;
    k[0] = -1;
    while (idx >= 0) {
        if (idx == m - 1) {
            int used = 0;
            for (int i = 0; i < m - 1; ++i) used += k[i];
            k[m - 1] = density - used;
            for (int i = 0; i < m; ++i) lambda[i] = double(k[i]) / density;
            fn(lambda);
            --idx;
            continue;
        }
        int used = 0;
        for (int i = 0; i < idx; ++i) used += k[i];
        if (++k[idx] > density - used) {
            k[idx] = -1;
            --idx;
        } else {
            ++idx;
            if (idx < m - 1) k[idx] = -1;
        }
    }
}

}  // namespace

DirectionResult oracle_direction(const LinearizationData& data, int grid_density,
                                 bool* dual_unique) {
    if (grid_density < 1) throw std::invalid_argument("oracle grid density must be positive");
    const int m = data.objectives();

    Vector best_lambda = Vector::Zero(m);
    double best_value = -std::numeric_limits<double>::infinity();
    Vector best_v;

    // Candidates tied with the base-grid maximum, for the uniqueness report.
    std::vector<DualPoint> ties;
    for_each_grid_point(m, grid_density, [&](const Vector& lambda) {
        const DualPoint pt = dual_eval(data, lambda);
        if (pt.value > best_value) {
            best_value = pt.value;
            best_lambda = lambda;
            best_v = pt.v;
        }
    });
    if (dual_unique != nullptr) {
        bool unique = true;
        for_each_grid_point(m, grid_density, [&](const Vector& lambda) {
            if (!unique) return;
            const DualPoint pt = dual_eval(data, lambda);
            if (pt.value >= best_value - 1e-9 &&
                (pt.v - best_v).lpNorm<Eigen::Infinity>() > 1e-6) {
                unique = false;
            }
        });
        *dual_unique = unique;
    }

    // Local grid refinement around the incumbent. The box radius halves only
    // when the incumbent stays interior to the local grid, which keeps the
    // maximizer of the concave dual inside the search region.
    const int local_steps = 8;
    double radius = m > 1 ? 4.0 / grid_density : 0.0;
    Vector lambda(m);
    for (int level = 0; level < 300 && radius > 1e-13; ++level) {
        Vector center = best_lambda;
        bool on_boundary = false;
        const int points = 2 * local_steps + 1;
        std::vector<int> idx(m - 1, 0);
        while (true) {
            double tail = 1.0;
            bool feasible = true;
            for (int i = 0; i < m - 1; ++i) {
                double li = center[i] + radius * (idx[i] - local_steps) / local_steps;
                if (li < 0.0) li = 0.0;
                if (li > 1.0) li = 1.0;
                lambda[i] = li;
                tail -= li;
            }
            if (tail < -1e-15) feasible = false;
            if (feasible) {
                lambda[m - 1] = std::max(tail, 0.0);
                const DualPoint pt = dual_eval(data, lambda);
                if (pt.value > best_value) {
                    best_value = pt.value;
                    best_lambda = lambda;
                    best_v = pt.v;
                    for (int i = 0; i < m - 1; ++i) {
                        if (idx[i] == 0 || idx[i] == points - 1) on_boundary = true;
                    }
                }
            }
            int carry = 0;
            while (carry < m - 1 && ++idx[carry] == points) {
                idx[carry] = 0;
                ++carry;
            }
            if (carry == m - 1) break;
        }
        if (!on_boundary) radius *= 0.5;
    }

    DirectionResult res;
    res.v = best_v;
    res.xi = best_value;
    res.psi_at_v = best_value - 0.5 * best_v.squaredNorm();
    res.multipliers = best_lambda;
    return res;
}

}  // namespace icg
