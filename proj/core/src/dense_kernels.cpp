#include "prnk/dense_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace prnk {

namespace {

double pythag(double a, double b) {
    double absa = std::abs(a), absb = std::abs(b);
    if (absa > absb) {
        double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

double sign_like(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

void require_finite(const Matrix& m, const char* who) {
    for (double v : m.data())
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite entry");
}

// Robust complex division (cr + i*ci) = (xr + i*xi) / (yr + i*yi).
void cdiv(double xr, double xi, double yr, double yi, double& cr, double& ci) {
    if (std::abs(yr) > std::abs(yi)) {
        double t = yi / yr;
        double d = yr + t * yi;
        cr = (xr + t * xi) / d;
        ci = (xi - t * xr) / d;
    } else {
        double t = yr / yi;
        double d = yi + t * yr;
        cr = (t * xr + xi) / d;
        ci = (t * xi - xr) / d;
    }
}

} // namespace

Svd svd(const Matrix& mat) {
    require_finite(mat, "svd");
    const std::size_t m = mat.rows();
    const std::size_t n = mat.cols();
    if (n == 0 || m == 0) throw std::invalid_argument("svd: empty matrix");
    if (m < n) throw std::invalid_argument("svd: requires rows >= cols");

    Matrix a = mat; // becomes U
    Matrix v(n, n);
    std::vector<double> w(n, 0.0), rv1(n, 0.0);

    // Householder bidiagonalization.
    double g = 0.0, scale = 0.0, anorm = 0.0;
    std::size_t l = 0;
    for (std::size_t i = 0; i < n; ++i) {
        l = i + 1;
        rv1[i] = scale * g;
        g = scale = 0.0;
        double s = 0.0;
        for (std::size_t k = i; k < m; ++k) scale += std::abs(a(k, i));
        if (scale != 0.0) {
            for (std::size_t k = i; k < m; ++k) {
                a(k, i) /= scale;
                s += a(k, i) * a(k, i);
            }
            double f = a(i, i);
            g = -sign_like(std::sqrt(s), f);
            double h = f * g - s;
            a(i, i) = f - g;
            for (std::size_t j = l; j < n; ++j) {
                double sum = 0.0;
                for (std::size_t k = i; k < m; ++k) sum += a(k, i) * a(k, j);
                double fac = sum / h;
                for (std::size_t k = i; k < m; ++k) a(k, j) += fac * a(k, i);
            }
            for (std::size_t k = i; k < m; ++k) a(k, i) *= scale;
        }
        w[i] = scale * g;
        g = scale = 0.0;
        s = 0.0;
        if (i + 1 != n) {
            for (std::size_t k = l; k < n; ++k) scale += std::abs(a(i, k));
            if (scale != 0.0) {
                for (std::size_t k = l; k < n; ++k) {
                    a(i, k) /= scale;
                    s += a(i, k) * a(i, k);
                }
                double f = a(i, l);
                g = -sign_like(std::sqrt(s), f);
                double h = f * g - s;
                a(i, l) = f - g;
                for (std::size_t k = l; k < n; ++k) rv1[k] = a(i, k) / h;
                for (std::size_t j = l; j < m; ++j) {
                    double sum = 0.0;
                    for (std::size_t k = l; k < n; ++k) sum += a(j, k) * a(i, k);
                    for (std::size_t k = l; k < n; ++k) a(j, k) += sum * rv1[k];
                }
                for (std::size_t k = l; k < n; ++k) a(i, k) *= scale;
            }
        }
        anorm = std::max(anorm, std::abs(w[i]) + std::abs(rv1[i]));
    }

    // Accumulate right-hand transformations.
    for (std::size_t ip1 = n; ip1-- > 0;) {
        std::size_t i = ip1;
        if (i + 1 < n) {
            if (g != 0.0) {
                for (std::size_t j = l; j < n; ++j) v(j, i) = (a(i, j) / a(i, l)) / g;
                for (std::size_t j = l; j < n; ++j) {
                    double sum = 0.0;
                    for (std::size_t k = l; k < n; ++k) sum += a(i, k) * v(k, j);
                    for (std::size_t k = l; k < n; ++k) v(k, j) += sum * v(k, i);
                }
            }
            for (std::size_t j = l; j < n; ++j) v(i, j) = v(j, i) = 0.0;
        }
        v(i, i) = 1.0;
        g = rv1[i];
        l = i;
    }

    // Accumulate left-hand transformations.
    for (std::size_t ip1 = std::min(m, n); ip1-- > 0;) {
        std::size_t i = ip1;
        l = i + 1;
        g = w[i];
        for (std::size_t j = l; j < n; ++j) a(i, j) = 0.0;
        if (g != 0.0) {
            g = 1.0 / g;
            for (std::size_t j = l; j < n; ++j) {
                double sum = 0.0;
                for (std::size_t k = l; k < m; ++k) sum += a(k, i) * a(k, j);
                double fac = (sum / a(i, i)) * g;
                for (std::size_t k = i; k < m; ++k) a(k, j) += fac * a(k, i);
            }
            for (std::size_t j = i; j < m; ++j) a(j, i) *= g;
        } else {
            for (std::size_t j = i; j < m; ++j) a(j, i) = 0.0;
        }
        a(i, i) += 1.0;
    }

    // Diagonalize the bidiagonal form: implicit-shift QR.
    constexpr int kMaxIts = 75;
    for (std::size_t kp1 = n; kp1-- > 0;) {
        std::size_t k = kp1;
        for (int its = 0;; ++its) {
            bool flag = true;
            std::size_t ll = k + 1, nm = 0;
            while (ll-- > 0) {
                if (std::abs(rv1[ll]) + anorm == anorm) {
                    flag = false;
                    break;
                }
                nm = ll - 1;
                if (std::abs(w[ll - 1]) + anorm == anorm) break;
            }
            if (flag) {
                // Cancel rv1[ll] with Givens rotations from the left.
                double c = 0.0, s = 1.0;
                for (std::size_t i = ll; i <= k; ++i) {
                    double f = s * rv1[i];
                    rv1[i] = c * rv1[i];
                    if (std::abs(f) + anorm == anorm) break;
                    g = w[i];
                    double h = pythag(f, g);
                    w[i] = h;
                    h = 1.0 / h;
                    c = g * h;
                    s = -f * h;
                    for (std::size_t j = 0; j < m; ++j) {
                        double y = a(j, nm), z = a(j, i);
                        a(j, nm) = y * c + z * s;
                        a(j, i) = z * c - y * s;
                    }
                }
            }
            double z = w[k];
            if (ll == k) {
                if (z < 0.0) {
                    w[k] = -z;
                    for (std::size_t j = 0; j < n; ++j) v(j, k) = -v(j, k);
                }
                break;
            }
            if (its == kMaxIts)
                throw std::runtime_error("svd: implicit-shift QR failed to converge");
            double x = w[ll];
            std::size_t nm2 = k - 1;
            double y = w[nm2];
            g = rv1[nm2];
            double h = rv1[k];
            double f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
            g = pythag(f, 1.0);
            f = ((x - z) * (x + z) + h * ((y / (f + sign_like(g, f))) - h)) / x;
            double c = 1.0, s = 1.0;
            for (std::size_t j = ll; j <= nm2; ++j) {
                std::size_t i = j + 1;
                g = rv1[i];
                y = w[i];
                h = s * g;
                g = c * g;
                z = pythag(f, h);
                rv1[j] = z;
                c = f / z;
                s = h / z;
                f = x * c + g * s;
                g = g * c - x * s;
                h = y * s;
                y *= c;
                for (std::size_t jj = 0; jj < n; ++jj) {
                    double xx = v(jj, j), zz = v(jj, i);
                    v(jj, j) = xx * c + zz * s;
                    v(jj, i) = zz * c - xx * s;
                }
                z = pythag(f, h);
                w[j] = z;
                if (z != 0.0) {
                    z = 1.0 / z;
                    c = f * z;
                    s = h * z;
                }
                f = c * g + s * y;
                x = c * y - s * g;
                for (std::size_t jj = 0; jj < m; ++jj) {
                    double yy = a(jj, j), zz = a(jj, i);
                    a(jj, j) = yy * c + zz * s;
                    a(jj, i) = zz * c - yy * s;
                }
            }
            rv1[ll] = 0.0;
            rv1[k] = f;
            w[k] = x;
        }
    }

    // Sort descending (stable) and fix right-vector signs.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return w[i] > w[j]; });

    Svd out;
    out.u = Matrix(m, n);
    out.v = Matrix(n, n);
    out.sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = order[j];
        out.sigma[j] = w[src];
        double flip = 1.0;
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double mag = std::abs(v(i, src));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (v(arg, src) < 0.0) flip = -1.0;
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = flip * v(i, src);
        for (std::size_t i = 0; i < m; ++i) out.u(i, j) = flip * a(i, src);
    }
    return out;
}

SingularTriplet smallest_singular_triplet(const Matrix& m) {
    Svd dec = svd(m);
    const std::size_t last = m.cols() - 1; // descending order: minimum, largest index on ties
    SingularTriplet t;
    t.sigma = dec.sigma[last];
    t.u.assign(dec.u.col(last).begin(), dec.u.col(last).end());
    t.v.assign(dec.v.col(last).begin(), dec.v.col(last).end());
    double s = 0.0;
    for (double x : t.v) s += x;
    if (s < 0.0) {
        for (double& x : t.u) x = -x;
        for (double& x : t.v) x = -x;
    }
    return t;
}

namespace {

// Householder reduction of a general square matrix to upper Hessenberg
// form, accumulating the orthogonal transformation in v.
void orthes(Matrix& h, Matrix& v) {
    const std::size_t nn = h.rows();
    if (nn < 3) {
        v = Matrix::identity(nn);
        return;
    }
    const std::size_t low = 0, high = nn - 1;
    std::vector<double> ort(nn, 0.0);

    for (std::size_t m = low + 1; m <= high - 1; ++m) {
        double sc = 0.0;
        for (std::size_t i = m; i <= high; ++i) sc += std::abs(h(i, m - 1));
        if (sc != 0.0) {
            double hh = 0.0;
            for (std::size_t i = high + 1; i-- > m;) {
                ort[i] = h(i, m - 1) / sc;
                hh += ort[i] * ort[i];
            }
            double g = std::sqrt(hh);
            if (ort[m] > 0) g = -g;
            hh -= ort[m] * g;
            ort[m] -= g;

            for (std::size_t j = m; j < nn; ++j) {
                double f = 0.0;
                for (std::size_t i = high + 1; i-- > m;) f += ort[i] * h(i, j);
                f /= hh;
                for (std::size_t i = m; i <= high; ++i) h(i, j) -= f * ort[i];
            }
            for (std::size_t i = 0; i <= high; ++i) {
                double f = 0.0;
                for (std::size_t j = high + 1; j-- > m;) f += ort[j] * h(i, j);
                f /= hh;
                for (std::size_t j = m; j <= high; ++j) h(i, j) -= f * ort[j];
            }
            ort[m] *= sc;
            h(m, m - 1) = sc * g;
        }
    }

    v = Matrix::identity(nn);
    for (std::size_t m = high - 1; m >= low + 1; --m) {
        if (h(m, m - 1) != 0.0) {
            for (std::size_t i = m + 1; i <= high; ++i) ort[i] = h(i, m - 1);
            for (std::size_t j = m; j <= high; ++j) {
                double g = 0.0;
                for (std::size_t i = m; i <= high; ++i) g += ort[i] * v(i, j);
                g = (g / ort[m]) / h(m, m - 1);
                for (std::size_t i = m; i <= high; ++i) v(i, j) += g * ort[i];
            }
        }
        if (m == low + 1) break;
    }
    // Householder leftovers below the subdiagonal are dead storage.
    for (std::size_t j = 0; j + 2 < nn; ++j)
        for (std::size_t i = j + 2; i < nn; ++i) h(i, j) = 0.0;
}

// Francis double-shift QR on a real upper Hessenberg matrix with
// accumulation of the transformation and eigenvector back-substitution.
// Follows the classical hqr2 routine.
void hqr2(Matrix& h, Matrix& v, std::vector<double>& d, std::vector<double>& e) {
    const int nn = static_cast<int>(h.rows());
    d.assign(h.rows(), 0.0);
    e.assign(h.rows(), 0.0);

    int n = nn - 1;
    const int low = 0, high = nn - 1;
    const double eps = std::numeric_limits<double>::epsilon();
    double exshift = 0.0;
    double p = 0, q = 0, r = 0, s = 0, z = 0, t = 0, w = 0, x = 0, y = 0;

    double norm = 0.0;
    for (int i = 0; i < nn; ++i)
        for (int j = std::max(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));
    if (norm == 0.0) return; // zero matrix: d = e = 0, eigenvectors = columns of v

    const long max_total = 100L * std::max(nn, 1);
    long total_iter = 0;
    int iter = 0;
    while (n >= low) {
        int l = n;
        while (l > low) {
            s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == 0.0) s = norm;
            if (std::abs(h(l, l - 1)) < eps * s) break;
            --l;
        }

        if (l == n) {
            h(n, n) += exshift;
            d[n] = h(n, n);
            e[n] = 0.0;
            --n;
            iter = 0;
        } else if (l == n - 1) {
            w = h(n, n - 1) * h(n - 1, n);
            p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
            q = p * p + w;
            z = std::sqrt(std::abs(q));
            h(n, n) += exshift;
            h(n - 1, n - 1) += exshift;
            x = h(n, n);
            if (q >= 0) {
                z = (p >= 0) ? p + z : p - z;
                d[n - 1] = x + z;
                d[n] = d[n - 1];
                if (z != 0.0) d[n] = x - w / z;
                e[n - 1] = 0.0;
                e[n] = 0.0;
                x = h(n, n - 1);
                s = std::abs(x) + std::abs(z);
                if (s == 0.0) {
                    n -= 2;
                    iter = 0;
                    continue; // block already diagonal
                }
                p = x / s;
                q = z / s;
                r = std::sqrt(p * p + q * q);
                p /= r;
                q /= r;
                for (int j = n - 1; j < nn; ++j) {
                    z = h(n - 1, j);
                    h(n - 1, j) = q * z + p * h(n, j);
                    h(n, j) = q * h(n, j) - p * z;
                }
                for (int i = 0; i <= n; ++i) {
                    z = h(i, n - 1);
                    h(i, n - 1) = q * z + p * h(i, n);
                    h(i, n) = q * h(i, n) - p * z;
                }
                for (int i = low; i <= high; ++i) {
                    z = v(i, n - 1);
                    v(i, n - 1) = q * z + p * v(i, n);
                    v(i, n) = q * v(i, n) - p * z;
                }
            } else {
                d[n - 1] = x + p;
                d[n] = x + p;
                e[n - 1] = z;
                e[n] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            x = h(n, n);
            y = 0.0;
            w = 0.0;
            if (l < n) {
                y = h(n - 1, n - 1);
                w = h(n, n - 1) * h(n - 1, n);
            }
            if (iter == 10 || iter == 20) {
                exshift += x;
                for (int i = low; i <= n; ++i) h(i, i) -= x;
                s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
                x = y = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++iter;
            if (++total_iter > max_total) {
                std::ostringstream msg;
                msg << "hessenberg_eig: QR iteration failed to converge after " << max_total
                    << " sweeps on matrix:";
                for (int i = 0; i < nn; ++i) {
                    msg << '\n';
                    for (int j = 0; j < nn; ++j) msg << ' ' << h(i, j);
                }
                throw std::runtime_error(msg.str());
            }

            int m = n - 2;
            while (m >= l) {
                z = h(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - r - s;
                r = h(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
                    eps * (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) +
                                          std::abs(h(m + 1, m + 1)))))
                    break;
                --m;
            }
            for (int i = m + 2; i <= n; ++i) {
                h(i, i - 2) = 0.0;
                if (i > m + 2) h(i, i - 3) = 0.0;
            }

            for (int k = m; k <= n - 1; ++k) {
                bool notlast = (k != n - 1);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = std::sqrt(p * p + q * q + r * r);
                if (p < 0) s = -s;
                if (s != 0) {
                    if (k != m)
                        h(k, k - 1) = -s * x;
                    else if (l != m)
                        h(k, k - 1) = -h(k, k - 1);
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    for (int j = k; j < nn; ++j) {
                        p = h(k, j) + q * h(k + 1, j);
                        if (notlast) {
                            p += r * h(k + 2, j);
                            h(k + 2, j) -= p * z;
                        }
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                    }
                    for (int i = 0; i <= std::min(n, k + 3); ++i) {
                        p = x * h(i, k) + y * h(i, k + 1);
                        if (notlast) {
                            p += z * h(i, k + 2);
                            h(i, k + 2) -= p * r;
                        }
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                    }
                    for (int i = low; i <= high; ++i) {
                        p = x * v(i, k) + y * v(i, k + 1);
                        if (notlast) {
                            p += z * v(i, k + 2);
                            v(i, k + 2) -= p * r;
                        }
                        v(i, k) -= p;
                        v(i, k + 1) -= p * q;
                    }
                }
            }
        }
    }

    // Back-substitute the quasi-triangular form for right eigenvectors.
    for (n = nn - 1; n >= 0; --n) {
        p = d[n];
        q = e[n];
        if (q == 0.0) {
            int l = n;
            h(n, n) = 1.0;
            for (int i = n - 1; i >= 0; --i) {
                w = h(i, i) - p;
                r = 0.0;
                for (int j = l; j <= n; ++j) r += h(i, j) * h(j, n);
                if (e[i] < 0.0) {
                    z = w;
                    s = r;
                } else {
                    l = i;
                    if (e[i] == 0.0) {
                        h(i, n) = (w != 0.0) ? -r / w : -r / (eps * norm);
                    } else {
                        x = h(i, i + 1);
                        y = h(i + 1, i);
                        q = (d[i] - p) * (d[i] - p) + e[i] * e[i];
                        t = (x * s - z * r) / q;
                        h(i, n) = t;
                        h(i + 1, n) = (std::abs(x) > std::abs(z)) ? (-r - w * t) / x : (-s - y * t) / z;
                    }
                    t = std::abs(h(i, n));
                    if ((eps * t) * t > 1)
                        for (int j = i; j <= n; ++j) h(j, n) /= t;
                }
            }
        } else if (q < 0.0) {
            int l = n - 1;
            if (std::abs(h(n, n - 1)) > std::abs(h(n - 1, n))) {
                h(n - 1, n - 1) = q / h(n, n - 1);
                h(n - 1, n) = -(h(n, n) - p) / h(n, n - 1);
            } else {
                double cr, ci;
                cdiv(0.0, -h(n - 1, n), h(n - 1, n - 1) - p, q, cr, ci);
                h(n - 1, n - 1) = cr;
                h(n - 1, n) = ci;
            }
            h(n, n - 1) = 0.0;
            h(n, n) = 1.0;
            for (int i = n - 2; i >= 0; --i) {
                double ra = 0.0, sa = 0.0;
                for (int j = l; j <= n; ++j) {
                    ra += h(i, j) * h(j, n - 1);
                    sa += h(i, j) * h(j, n);
                }
                w = h(i, i) - p;
                if (e[i] < 0.0) {
                    z = w;
                    r = ra;
                    s = sa;
                } else {
                    l = i;
                    if (e[i] == 0.0) {
                        double cr, ci;
                        cdiv(-ra, -sa, w, q, cr, ci);
                        h(i, n - 1) = cr;
                        h(i, n) = ci;
                    } else {
                        x = h(i, i + 1);
                        y = h(i + 1, i);
                        double vr = (d[i] - p) * (d[i] - p) + e[i] * e[i] - q * q;
                        double vi = (d[i] - p) * 2.0 * q;
                        if (vr == 0.0 && vi == 0.0)
                            vr = eps * norm *
                                 (std::abs(w) + std::abs(q) + std::abs(x) + std::abs(y) + std::abs(z));
                        double cr, ci;
                        cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi, cr, ci);
                        h(i, n - 1) = cr;
                        h(i, n) = ci;
                        if (std::abs(x) > (std::abs(z) + std::abs(q))) {
                            h(i + 1, n - 1) = (-ra - w * h(i, n - 1) + q * h(i, n)) / x;
                            h(i + 1, n) = (-sa - w * h(i, n) - q * h(i, n - 1)) / x;
                        } else {
                            cdiv(-r - y * h(i, n - 1), -s - y * h(i, n), z, q, cr, ci);
                            h(i + 1, n - 1) = cr;
                            h(i + 1, n) = ci;
                        }
                    }
                    t = std::max(std::abs(h(i, n - 1)), std::abs(h(i, n)));
                    if ((eps * t) * t > 1)
                        for (int j = i; j <= n; ++j) {
                            h(j, n - 1) /= t;
                            h(j, n) /= t;
                        }
                }
            }
        }
    }

    // Transform back to the original coordinates.
    for (int j = nn - 1; j >= low; --j) {
        for (int i = low; i <= high; ++i) {
            z = 0.0;
            for (int k = low; k <= std::min(j, high); ++k) z += v(i, k) * h(k, j);
            v(i, j) = z;
        }
    }
}

std::vector<Eigenpair> extract_eigenpairs(const Matrix& v, const std::vector<double>& d,
                                          const std::vector<double>& e) {
    const std::size_t n = v.rows();
    std::vector<Eigenpair> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].value = {d[i], e[i]};
        out[i].vec.resize(n);
        if (e[i] == 0.0) {
            for (std::size_t r = 0; r < n; ++r) out[i].vec[r] = v(r, i);
        } else if (e[i] > 0.0) {
            for (std::size_t r = 0; r < n; ++r) out[i].vec[r] = {v(r, i), v(r, i + 1)};
        } else {
            for (std::size_t r = 0; r < n; ++r) out[i].vec[r] = {v(r, i - 1), -v(r, i)};
        }
        double nrm = 0.0;
        for (const auto& c : out[i].vec) nrm += std::norm(c);
        nrm = std::sqrt(nrm);
        if (nrm > 0.0)
            for (auto& c : out[i].vec) c /= nrm;
    }
    return out;
}

} // namespace

std::vector<Eigenpair> hessenberg_eig(const Matrix& hin) {
    require_finite(hin, "hessenberg_eig");
    if (hin.rows() != hin.cols()) throw std::invalid_argument("hessenberg_eig: square matrix required");
    const std::size_t n = hin.rows();
    if (n == 0) return {};
    if (n == 1) {
        Eigenpair p;
        p.value = hin(0, 0);
        p.vec = {1.0};
        return {p};
    }
    Matrix h = hin;
    for (std::size_t j = 0; j + 2 < n; ++j)
        for (std::size_t i = j + 2; i < n; ++i) h(i, j) = 0.0;
    Matrix v = Matrix::identity(n);
    std::vector<double> d, e;
    hqr2(h, v, d, e);
    return extract_eigenpairs(v, d, e);
}

std::vector<Eigenpair> dense_eig(const Matrix& ain) {
    require_finite(ain, "dense_eig");
    if (ain.rows() != ain.cols()) throw std::invalid_argument("dense_eig: square matrix required");
    const std::size_t n = ain.rows();
    if (n == 0) return {};
    if (n == 1) {
        Eigenpair p;
        p.value = ain(0, 0);
        p.vec = {1.0};
        return {p};
    }
    Matrix h = ain;
    Matrix v;
    orthes(h, v);
    std::vector<double> d, e;
    hqr2(h, v, d, e);
    return extract_eigenpairs(v, d, e);
}

Qr qr_reduced(const Matrix& lmat) {
    require_finite(lmat, "qr_reduced");
    const std::size_t m = lmat.rows();
    const std::size_t n = lmat.cols();
    if (m < n) throw std::invalid_argument("qr_reduced: requires rows >= cols");
    const double lnorm = frobenius_norm(lmat);

    Matrix a = lmat;
    std::vector<std::vector<double>> reflectors(n);

    for (std::size_t k = 0; k < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k; i < m; ++i) colnorm += a(i, k) * a(i, k);
        colnorm = std::sqrt(colnorm);

        std::vector<double> vk(m - k, 0.0);
        if (colnorm > 0.0) {
            double alpha = a(k, k) >= 0 ? -colnorm : colnorm;
            for (std::size_t i = k; i < m; ++i) vk[i - k] = a(i, k);
            vk[0] -= alpha;
            double vn = 0.0;
            for (double x : vk) vn += x * x;
            vn = std::sqrt(vn);
            if (vn > 0.0) {
                for (double& x : vk) x /= vn;
                for (std::size_t j = k; j < n; ++j) {
                    double proj = 0.0;
                    for (std::size_t i = k; i < m; ++i) proj += vk[i - k] * a(i, j);
                    proj *= 2.0;
                    for (std::size_t i = k; i < m; ++i) a(i, j) -= proj * vk[i - k];
                }
            }
        }
        reflectors[k] = std::move(vk);
    }

    Qr out;
    out.r = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) out.r(i, j) = a(i, j);

    for (std::size_t j = 0; j < n; ++j)
        if (std::abs(out.r(j, j)) <= 1e-12 * lnorm)
            throw std::runtime_error("qr_reduced: rank deficient input");

    // Thin Q: apply reflectors in reverse to the leading columns of I.
    out.q = Matrix(m, n);
    for (std::size_t j = 0; j < n; ++j) out.q(j, j) = 1.0;
    for (std::size_t k = n; k-- > 0;) {
        const auto& vk = reflectors[k];
        if (vk.empty()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            double proj = 0.0;
            for (std::size_t i = k; i < m; ++i) proj += vk[i - k] * out.q(i, j);
            proj *= 2.0;
            for (std::size_t i = k; i < m; ++i) out.q(i, j) -= proj * vk[i - k];
        }
    }

    // Positive-diagonal convention.
    for (std::size_t j = 0; j < n; ++j) {
        if (out.r(j, j) < 0.0) {
            for (std::size_t k2 = j; k2 < n; ++k2) out.r(j, k2) = -out.r(j, k2);
            for (std::size_t i = 0; i < m; ++i) out.q(i, j) = -out.q(i, j);
        }
    }
    return out;
}

} // namespace prnk
