#include "icg/qp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "icg/errors.hpp"

namespace icg {

namespace {

struct Residuals {
    double stationarity;
    double feasibility;
    double complementarity;
    // Magnitudes of the terms entering each residual, for relative scoring.
    double stat_scale = 1.0;
    double feas_scale = 1.0;

    // Worst KKT residual, each measured relative to the size of the
    // quantities it is a difference of. Absolute thresholds are unreachable
    // in double precision once the instance data grow large.
    double worst(double objective) const {
        return std::max({stationarity / stat_scale, feasibility / feas_scale,
                         complementarity / (1.0 + std::abs(objective))});
    }
};

double objective_value(const QPInstance& inst, const Vector& z) {
    return 0.5 * z.dot(inst.Q * z) + inst.c.dot(z);
}

Residuals kkt_residuals(const QPInstance& inst, const Vector& z, const Vector& duals) {
    Residuals r{};
    const Vector qz = inst.Q * z;
    const Vector atl = inst.A.transpose() * duals;
    r.stationarity = (qz + inst.c + atl).lpNorm<Eigen::Infinity>();
    r.stat_scale = 1.0 + std::max({qz.lpNorm<Eigen::Infinity>(),
                                   inst.c.lpNorm<Eigen::Infinity>(),
                                   atl.lpNorm<Eigen::Infinity>()});
    if (inst.constraints() > 0) {
        const Vector az = inst.A * z;
        const Vector slack = az - inst.b;
        r.feasibility = std::max(0.0, slack.maxCoeff());
        r.feas_scale = 1.0 + std::max(az.lpNorm<Eigen::Infinity>(),
                                      inst.b.lpNorm<Eigen::Infinity>());
        r.complementarity = std::abs(duals.dot(slack));
    } else {
        r.feasibility = 0.0;
        r.complementarity = 0.0;
    }
    return r;
}

// Equality-constrained solve on the rows in `active`, with iterative
// refinement against the unregularized KKT system. Returns false when the
// factorization is unusable.
bool solve_active_kkt(const QPInstance& inst, const std::vector<int>& active, double reg,
                      Vector& z_out, Vector& nu_out) {
    const int d = inst.dim();
    const int na = static_cast<int>(active.size());
    const int dim = d + na;

    Matrix K0 = Matrix::Zero(dim, dim);
    K0.topLeftCorner(d, d) = inst.Q;
    for (int r = 0; r < na; ++r) {
        K0.block(0, d + r, d, 1) = inst.A.row(active[r]).transpose();
        K0.block(d + r, 0, 1, d) = inst.A.row(active[r]);
    }
    Vector rhs(dim);
    rhs.head(d) = -inst.c;
    for (int r = 0; r < na; ++r) rhs[d + r] = inst.b[active[r]];

    Matrix K = K0;
    K.topLeftCorner(d, d).diagonal().array() += reg;
    K.bottomRightCorner(na, na).diagonal().array() -= reg;

    Eigen::PartialPivLU<Matrix> lu(K);
    Vector sol = lu.solve(rhs);
    if (!sol.allFinite()) return false;
    for (int pass = 0; pass < 3; ++pass) {
        const Vector resid = rhs - K0 * sol;
        sol += lu.solve(resid);
    }
    if (!sol.allFinite()) return false;

    z_out = sol.head(d);
    nu_out = sol.tail(na);
    return true;
}

// Active-set polish: detect the working set from duals and slacks, solve the
// equality-constrained subproblem, and iterate a few passes dropping rows
// with negative multipliers and adding newly violated rows.
bool polish(const QPInstance& inst, double reg, double tol, Vector& z, Vector& duals) {
    const int p = inst.constraints();
    Vector slack = inst.b - inst.A * z;
    std::vector<char> in_set(p, 0);
    for (int i = 0; i < p; ++i) {
        if (duals[i] > 10 * tol || slack[i] < 10 * tol * (1.0 + std::abs(inst.b[i]))) {
            in_set[i] = 1;
        }
    }

    Vector z_try, nu;
    for (int pass = 0; pass < 6; ++pass) {
        std::vector<int> active;
        for (int i = 0; i < p; ++i) {
            if (in_set[i]) active.push_back(i);
        }
        if (!solve_active_kkt(inst, active, reg, z_try, nu)) return false;

        bool changed = false;
        for (int r = 0; r < static_cast<int>(active.size()); ++r) {
            if (nu[r] < -1e-11) {
                in_set[active[r]] = 0;
                changed = true;
            }
        }
        const Vector viol = inst.A * z_try - inst.b;
        for (int i = 0; i < p; ++i) {
            if (!in_set[i] && viol[i] > tol) {
                in_set[i] = 1;
                changed = true;
            }
        }
        if (!changed) {
            duals.setZero(p);
            for (int r = 0; r < static_cast<int>(active.size()); ++r) {
                duals[active[r]] = std::max(nu[r], 0.0);
            }
            z = z_try;
            return true;
        }
    }
    return false;
}

}  // namespace

void QPInstance::validate() const {
    const int d = dim();
    if (c.size() != d || Q.cols() != d) {
        throw DimensionMismatch("qp: Q/c dimensions disagree");
    }
    if (A.rows() != b.size() || (A.rows() > 0 && A.cols() != d)) {
        throw DimensionMismatch("qp: A/b dimensions disagree");
    }
    if (!Q.allFinite() || !c.allFinite() || !A.allFinite() || !b.allFinite()) {
        throw NumericalBreakdown("qp: non-finite instance data");
    }
    if ((Q - Q.transpose()).lpNorm<Eigen::Infinity>() > 1e-12) {
        throw NumericalBreakdown("qp: Q is not symmetric");
    }
}

QPSolution QPSolver::solve(const QPInstance& inst) const {
    inst.validate();
    const int d = inst.dim();
    const int p = inst.constraints();
    const double tol = opts_.tol;

    QPSolution best;
    best.z = Vector::Zero(d);
    best.duals = Vector::Zero(p);
    best.status = QPStatus::MaxIter;

    if (p == 0) {
        Matrix Qr = inst.Q;
        Qr.diagonal().array() += opts_.reg;
        const Eigen::LDLT<Matrix> chol(Qr);
        best.z = chol.solve(-inst.c);
        // One refinement pass against the unregularized system.
        best.z += chol.solve(-inst.c - inst.Q * best.z);
        const Residuals r = kkt_residuals(inst, best.z, best.duals);
        best.objective = objective_value(inst, best.z);
        best.stationarity = r.stationarity;
        best.status =
            r.worst(best.objective) <= tol ? QPStatus::Solved : QPStatus::MaxIter;
        return best;
    }

    // Row equilibration: constraint rows of very different magnitude make
    // A'A badly conditioned and stall the splitting iteration. The solve
    // runs on row-normalized constraints; duals are unscaled for every
    // residual check, so all acceptance decisions use the true system.
    Vector row_scale(p);
    for (int i = 0; i < p; ++i) {
        const double norm_i = inst.A.row(i).lpNorm<Eigen::Infinity>();
        row_scale[i] = norm_i > 1e-30 ? norm_i : 1.0;
    }
    QPInstance work;
    work.Q = inst.Q;
    work.c = inst.c;
    work.A = row_scale.cwiseInverse().asDiagonal() * inst.A;
    work.b = inst.b.cwiseQuotient(row_scale);

    double rho = opts_.rho;
    const double alpha = opts_.over_relax;
    const Matrix AtA = work.A.transpose() * work.A;

    auto factor = [&](double penalty) {
        Matrix M = work.Q + penalty * AtA;
        M.diagonal().array() += opts_.reg;
        return Eigen::LDLT<Matrix>(M);
    };
    Eigen::LDLT<Matrix> ldlt = factor(rho);

    Vector z = Vector::Zero(d);
    Vector y = work.b.cwiseMin(0.0);
    Vector u = Vector::Zero(p);
    Vector u_prev_check = u;
    double best_score = std::numeric_limits<double>::infinity();

    for (int it = 1; it <= opts_.max_iter; ++it) {
        const Vector rhs = -work.c + rho * (work.A.transpose() * (y - u));
        z = ldlt.solve(rhs);
        const Vector Az = work.A * z;
        const Vector z_hat = alpha * Az + (1.0 - alpha) * y;
        const Vector w = z_hat + u;
        const Vector y_next = w.cwiseMin(work.b);
        u = w - y_next;

        if (it % opts_.rescale_every == 0 || it == opts_.max_iter) {
            Vector duals = (rho * u).cwiseQuotient(row_scale);
            Residuals res = kkt_residuals(inst, z, duals);
            const double obj = objective_value(inst, z);
            const double score = res.worst(obj);
            if (!z.allFinite() || !duals.allFinite()) {
                throw NumericalBreakdown("qp: iterate diverged to non-finite values");
            }
            if (score < best_score) {
                best_score = score;
                best.z = z;
                best.duals = duals;
                best.objective = obj;
                best.iterations = it;
                best.stationarity = res.stationarity;
                best.feasibility = res.feasibility;
                best.complementarity = res.complementarity;
            }

            // Try to finish early with a polish once the iterate is close,
            // and periodically on stubborn instances.
            if (score <= std::max(1e-4, tol) || it % 500 == 0) {
                Vector zp = z, dp = duals;
                if (polish(inst, opts_.reg, tol, zp, dp)) {
                    const Residuals rp = kkt_residuals(inst, zp, dp);
                    const double op = objective_value(inst, zp);
                    if (rp.worst(op) < best_score) {
                        best_score = rp.worst(op);
                        best.z = zp;
                        best.duals = dp;
                        best.objective = op;
                        best.iterations = it;
                        best.stationarity = rp.stationarity;
                        best.feasibility = rp.feasibility;
                        best.complementarity = rp.complementarity;
                    }
                }
            }
            if (best_score <= tol) {
                best.status = QPStatus::Solved;
                return best;
            }

            // Infeasibility certificate: a nonnegative direction in the dual
            // with A'v ~ 0 and b'v < 0 proves Az <= b has no solution.
            const Vector du = (u - u_prev_check).cwiseMax(0.0).cwiseQuotient(row_scale);
            const double du_norm = du.lpNorm<Eigen::Infinity>();
            if (du_norm > 1e-12) {
                const Vector v = du / du_norm;
                if ((inst.A.transpose() * v).lpNorm<Eigen::Infinity>() <= 1e-9 &&
                    inst.b.dot(v) < -1e-9) {
                    best.status = QPStatus::Infeasible;
                    best.iterations = it;
                    return best;
                }
            }
            u_prev_check = u;

            // Penalty rescale from the residual ratio; the scaled dual u
            // must be rescaled along with rho.
            const double r_prim = (Az - y_next).norm();
            const double r_dual = res.stationarity;
            if (r_prim > 10 * r_dual && rho < 1e6) {
                rho *= 2;
                u *= 0.5;
                ldlt = factor(rho);
            } else if (r_dual > 10 * r_prim && rho > 1e-6) {
                rho *= 0.5;
                u *= 2.0;
                ldlt = factor(rho);
            }
        }
        y = y_next;
    }

    best.status = best_score <= tol ? QPStatus::Solved : QPStatus::MaxIter;
    return best;
}

void QPSolver::dump(const QPInstance& inst, std::ostream& os) {
    const Eigen::IOFormat fmt(17, 0, " ", "\n", "", "", "", "");
    os << "# d " << inst.dim() << " p " << inst.constraints() << "\n";
    os << "Q\n" << inst.Q.format(fmt) << "\n";
    os << "c\n" << inst.c.transpose().format(fmt) << "\n";
    os << "A\n" << inst.A.format(fmt) << "\n";
    os << "b\n" << inst.b.transpose().format(fmt) << "\n";
}

}  // namespace icg
