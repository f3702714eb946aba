#include "graftlab/qp.hpp"

#include <cmath>
#include <limits>

namespace graftlab {

namespace {

bool add_constraint(Mat& R, Mat& J, Vec& d, int& iq, double& rnorm) {
    const int n = static_cast<int>(J.rows());
    for (int j = n - 1; j >= iq + 1; --j) {
        double cc = d(j - 1), ss = d(j);
        double h = std::hypot(cc, ss);
        if (h == 0.0) continue;
        d(j) = 0.0;
        ss /= h;
        cc /= h;
        if (cc < 0.0) {
            cc = -cc;
            ss = -ss;
            d(j - 1) = -h;
        } else {
            d(j - 1) = h;
        }
        double xny = ss / (1.0 + cc);
        for (int k = 0; k < n; ++k) {
            double t1 = J(k, j - 1), t2 = J(k, j);
            J(k, j - 1) = t1 * cc + t2 * ss;
            J(k, j) = xny * (t1 + J(k, j - 1)) - t2;
        }
    }
    ++iq;
    for (int i = 0; i < iq; ++i) R(i, iq - 1) = d(i);
    if (std::abs(d(iq - 1)) <= std::numeric_limits<double>::epsilon() * rnorm) return false;
    rnorm = std::max(rnorm, std::abs(d(iq - 1)));
    return true;
}

void delete_constraint(Mat& R, Mat& J, std::vector<int>& A, std::vector<double>& u, int& iq, int l) {
    const int n = static_cast<int>(J.rows());
    for (int i = l; i < iq - 1; ++i) {
        A[i] = A[i + 1];
        u[i] = u[i + 1];
        R.col(i) = R.col(i + 1);
    }
    A.pop_back();
    u.pop_back();
    --iq;
    R.col(iq).setZero();
    for (int j = l; j < iq; ++j) {
        double cc = R(j, j), ss = R(j + 1, j);
        double h = std::hypot(cc, ss);
        if (h == 0.0) continue;
        cc /= h;
        ss /= h;
        R(j + 1, j) = 0.0;
        if (cc < 0.0) {
            R(j, j) = -h;
            cc = -cc;
            ss = -ss;
        } else {
            R(j, j) = h;
        }
        double xny = ss / (1.0 + cc);
        for (int k = j + 1; k < iq; ++k) {
            double t1 = R(j, k), t2 = R(j + 1, k);
            R(j, k) = t1 * cc + t2 * ss;
            R(j + 1, k) = xny * (t1 + R(j, k)) - t2;
        }
        for (int k = 0; k < n; ++k) {
            double t1 = J(k, j), t2 = J(k, j + 1);
            J(k, j) = t1 * cc + t2 * ss;
            J(k, j + 1) = xny * (J(k, j) + t1) - t2;
        }
    }
}

}  // namespace

QpResult project_onto_polytope(const Mat& Ain, const Vec& bin, const Vec& target, int maxIterations) {
    const int n = static_cast<int>(target.size());
    const int m = static_cast<int>(Ain.rows());
    if (Ain.cols() != n || bin.size() != m) throw DimensionError("project_onto_polytope: shape mismatch");

    // constraints as N^T x + c >= 0 with unit normals
    Mat N(n, m);
    Vec c(m);
    for (int i = 0; i < m; ++i) {
        double nr = Ain.row(i).norm();
        if (nr == 0.0) {
            N.col(i).setZero();
            c(i) = std::max(bin(i), 0.0);
            continue;
        }
        N.col(i) = -Ain.row(i).transpose() / nr;
        c(i) = bin(i) / nr;
    }
    const double scale = 1.0 + target.cwiseAbs().maxCoeff() + c.cwiseAbs().maxCoeff();
    const double feasTol = 1e-13 * scale;

    QpResult res;
    Vec x = target;
    Mat J = Mat::Identity(n, n);
    Mat R = Mat::Zero(n, n);
    Vec d(n), z(n), r(n);
    std::vector<int> A;
    std::vector<double> u;
    int iq = 0;
    double rnorm = 1.0;
    int iter = 0;

    auto slack = [&](int i) { return N.col(i).dot(x) + c(i); };

    while (true) {
        int p = -1;
        double worst = -feasTol;
        for (int i = 0; i < m; ++i) {
            double s = slack(i);
            if (s < worst) {
                worst = s;
                p = i;
            }
        }
        if (p < 0) break;
        double up = 0.0;
        double sp = worst;

        while (true) {
            if (++iter > maxIterations) throw NumericalError("project_onto_polytope: iteration cap reached");
            d = J.transpose() * N.col(p);
            z.setZero();
            for (int j = iq; j < n; ++j) z += J.col(j) * d(j);
            for (int i = iq - 1; i >= 0; --i) {
                double s = d(i);
                for (int j = i + 1; j < iq; ++j) s -= R(i, j) * r(j);
                r(i) = s / R(i, i);
            }
            double t1 = std::numeric_limits<double>::infinity();
            int l = -1;
            for (int k = 0; k < iq; ++k) {
                if (r(k) > 0.0 && u[k] / r(k) < t1) {
                    t1 = u[k] / r(k);
                    l = k;
                }
            }
            double zn = N.col(p).dot(z);
            double t2 = std::numeric_limits<double>::infinity();
            if (z.squaredNorm() > 1e-28 && zn > 0.0) t2 = -sp / zn;
            double t = std::min(t1, t2);
            if (!std::isfinite(t)) throw DomainError("project_onto_polytope: infeasible constraint set");

            if (!std::isfinite(t2)) {
                for (int k = 0; k < iq; ++k) u[k] -= t * r(k);
                up += t;
                delete_constraint(R, J, A, u, iq, l);
                continue;
            }
            x += t * z;
            for (int k = 0; k < iq; ++k) u[k] -= t * r(k);
            up += t;
            if (t == t2) {
                if (!add_constraint(R, J, d, iq, rnorm)) {
                    --iq;
                    throw NumericalError("project_onto_polytope: degenerate active set");
                }
                A.push_back(p);
                u.push_back(up);
                break;
            }
            delete_constraint(R, J, A, u, iq, l);
            sp = slack(p);
        }
    }
    res.x = x;
    res.iterations = iter;
    res.active = A;
    return res;
}

}  // namespace graftlab
