#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heiscone {

// Margin kept between evaluation points and the r = 0 / rho = 0 walls.
inline constexpr double kDomainGuard = 1e-9;

enum class Manifold {
    Heisenberg,    // (x, y, t)
    Cone,          // (x, y, t, r), r > 0
    Siegel,        // (Re z1, Im z1, Re z2, Im z2), rho > 0
    HalfPlane,     // (t, r), r > 0
    ComplexPlane,  // (x, y)
    HalfSpace,     // (x, y, r), r > 0
};

constexpr int dimension(Manifold m) {
    switch (m) {
        case Manifold::Heisenberg: return 3;
        case Manifold::Cone: return 4;
        case Manifold::Siegel: return 4;
        case Manifold::HalfPlane: return 2;
        case Manifold::ComplexPlane: return 2;
        case Manifold::HalfSpace: return 3;
    }
    return 0;
}

// Index of the radial coordinate, -1 if the manifold has none.
constexpr int radial_index(Manifold m) {
    switch (m) {
        case Manifold::Cone: return 3;
        case Manifold::HalfPlane: return 1;
        case Manifold::HalfSpace: return 2;
        default: return -1;
    }
}

inline std::string_view manifold_name(Manifold m) {
    switch (m) {
        case Manifold::Heisenberg: return "heisenberg";
        case Manifold::Cone: return "cone";
        case Manifold::Siegel: return "siegel";
        case Manifold::HalfPlane: return "half-plane";
        case Manifold::ComplexPlane: return "complex-plane";
        case Manifold::HalfSpace: return "half-space";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Dense vectors and matrices of dimension <= 4.  Everything here is a value
// type; sizes are runtime but bounded, so no allocation anywhere.
// ---------------------------------------------------------------------------

class Vec {
  public:
    Vec() = default;
    explicit Vec(int n) : n_(check_size(n)) {}
    Vec(std::initializer_list<double> xs) : n_(check_size(static_cast<int>(xs.size()))) {
        int i = 0;
        for (double x : xs) a_[i++] = x;
    }

    int size() const { return n_; }
    double& operator[](int i) { return a_[i]; }
    double operator[](int i) const { return a_[i]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n_; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Vec& operator*=(double c) {
        for (int i = 0; i < n_; ++i) a_[i] *= c;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double c, Vec a) { return a *= c; }
    friend Vec operator*(Vec a, double c) { return a *= c; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    double dot(const Vec& o) const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += a_[i] * o.a_[i];
        return s;
    }
    double norm() const { return std::sqrt(dot(*this)); }
    double max_abs() const {
        double m = 0;
        for (int i = 0; i < n_; ++i) m = std::max(m, std::abs(a_[i]));
        return m;
    }
    bool finite() const {
        for (int i = 0; i < n_; ++i)
            if (!std::isfinite(a_[i])) return false;
        return true;
    }

    static Vec zero(int n) { return Vec(n); }
    static Vec basis(int n, int i) {
        Vec e(n);
        e[i] = 1.0;
        return e;
    }

  private:
    static int check_size(int n) {
        if (n < 0 || n > 4) throw std::invalid_argument("Vec: size out of range");
        return n;
    }
    std::array<double, 4> a_{};
    int n_ = 0;
};

class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols) {
        if (rows < 0 || rows > 4 || cols < 0 || cols > 4)
            throw std::invalid_argument("Mat: size out of range");
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    double& operator()(int i, int j) { return a_[4 * i + j]; }
    double operator()(int i, int j) const { return a_[4 * i + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    Mat& operator+=(const Mat& o) {
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) (*this)(i, j) += o(i, j);
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) (*this)(i, j) -= o(i, j);
        return *this;
    }
    Mat& operator*=(double s) {
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) (*this)(i, j) *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(double s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const double aik = a(i, k);
                for (int j = 0; j < b.c_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend Vec operator*(const Mat& a, const Vec& v) {
        Vec w(a.r_);
        for (int i = 0; i < a.r_; ++i) {
            double s = 0;
            for (int j = 0; j < a.c_; ++j) s += a(i, j) * v[j];
            w[i] = s;
        }
        return w;
    }

    Mat transposed() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    // Gauss-Jordan inverse with partial pivoting; square matrices only.
    Mat inverse() const {
        if (r_ != c_) throw std::invalid_argument("Mat::inverse: not square");
        const int n = r_;
        Mat a = *this, inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int i = col + 1; i < n; ++i)
                if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
            if (a(piv, col) == 0.0) throw std::domain_error("Mat::inverse: singular");
            if (piv != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(a(col, j), a(piv, j));
                    std::swap(inv(col, j), inv(piv, j));
                }
            const double d = 1.0 / a(col, col);
            for (int j = 0; j < n; ++j) {
                a(col, j) *= d;
                inv(col, j) *= d;
            }
            for (int i = 0; i < n; ++i) {
                if (i == col) continue;
                const double f = a(i, col);
                if (f == 0.0) continue;
                for (int j = 0; j < n; ++j) {
                    a(i, j) -= f * a(col, j);
                    inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    // Lower-triangular Cholesky factor; returns false if not positive definite.
    bool cholesky(Mat& lower) const {
        if (r_ != c_) return false;
        const int n = r_;
        lower = zero(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = (*this)(i, j);
                for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
                if (i == j) {
                    if (s <= 0.0) return false;
                    lower(i, i) = std::sqrt(s);
                } else {
                    lower(i, j) = s / lower(j, j);
                }
            }
        }
        return true;
    }

    double frobenius() const {
        double s = 0;
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) s += (*this)(i, j) * (*this)(i, j);
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0;
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m = std::max(m, std::abs((*this)(i, j)));
        return m;
    }

  private:
    std::array<double, 16> a_{};
    int r_ = 0, c_ = 0;
};

inline Mat outer(const Vec& u, const Vec& v) {
    Mat m(u.size(), v.size());
    for (int i = 0; i < u.size(); ++i)
        for (int j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    return m;
}

// ---------------------------------------------------------------------------
// Points and tangent vectors
// ---------------------------------------------------------------------------

// Defining function of the Siegel domain, rho = -2 Re(z1) - |z2|^2.
// Positive inside, zero on the boundary.
inline double rho(double z1re, double z1im, double z2re, double z2im) {
    (void)z1im;
    return -2.0 * z1re - z2re * z2re - z2im * z2im;
}

class Point {
  public:
    Point(Manifold m, Vec coords) : manifold_(m), coords_(coords) { validate(); }

    Manifold manifold() const { return manifold_; }
    const Vec& coords() const { return coords_; }
    double operator[](int i) const { return coords_[i]; }
    int dim() const { return coords_.size(); }

    // Radial coordinate where one exists.
    double radius() const {
        const int i = radial_index(manifold_);
        if (i < 0) throw std::invalid_argument("Point::radius: manifold has no radial coordinate");
        return coords_[i];
    }

    Point displaced(int axis, double delta) const {
        Vec c = coords_;
        c[axis] += delta;
        return Point(manifold_, c);
    }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.manifold_ != b.manifold_) return false;
        for (int i = 0; i < a.dim(); ++i)
            if (a.coords_[i] != b.coords_[i]) return false;
        return true;
    }

  private:
    void validate() const {
        if (coords_.size() != dimension(manifold_))
            throw std::invalid_argument("Point: coordinate count does not match manifold");
        if (!coords_.finite()) throw std::invalid_argument("Point: non-finite coordinate");
        const int ri = radial_index(manifold_);
        if (ri >= 0 && coords_[ri] <= 0.0)
            throw std::domain_error("Point: radial coordinate must be positive");
        if (manifold_ == Manifold::Siegel) {
            // The closure is allowed: boundary points arise as images of the
            // boundary map.  Metric evaluation enforces strict interiority.
            if (rho(coords_[0], coords_[1], coords_[2], coords_[3]) < -1e-12)
                throw std::domain_error("Point: outside the closure of the Siegel domain");
        }
    }

    Manifold manifold_;
    Vec coords_;
};

inline Point heis_point(double x, double y, double t) {
    return Point(Manifold::Heisenberg, {x, y, t});
}
inline Point cone_point(double x, double y, double t, double r) {
    return Point(Manifold::Cone, {x, y, t, r});
}
inline Point siegel_point(double z1re, double z1im, double z2re, double z2im) {
    return Point(Manifold::Siegel, {z1re, z1im, z2re, z2im});
}
inline Point half_plane_point(double t, double r) { return Point(Manifold::HalfPlane, {t, r}); }
inline Point complex_plane_point(double x, double y) {
    return Point(Manifold::ComplexPlane, {x, y});
}
inline Point half_space_point(double x, double y, double r) {
    return Point(Manifold::HalfSpace, {x, y, r});
}

inline double rho(const Point& p) {
    if (p.manifold() != Manifold::Siegel)
        throw std::invalid_argument("rho: point is not in the Siegel domain");
    return rho(p[0], p[1], p[2], p[3]);
}

class Tangent {
  public:
    Tangent(Point base, Vec components) : base_(base), components_(components) {
        if (components_.size() != base_.dim())
            throw std::invalid_argument("Tangent: component count does not match manifold");
    }

    const Point& base() const { return base_; }
    const Vec& components() const { return components_; }
    double operator[](int i) const { return components_[i]; }
    int dim() const { return components_.size(); }

    friend Tangent operator+(const Tangent& a, const Tangent& b) {
        require_same_base(a, b);
        return Tangent(a.base_, a.components_ + b.components_);
    }
    friend Tangent operator-(const Tangent& a, const Tangent& b) {
        require_same_base(a, b);
        return Tangent(a.base_, a.components_ - b.components_);
    }
    friend Tangent operator*(double c, const Tangent& v) {
        return Tangent(v.base_, c * v.components_);
    }
    friend Tangent operator-(const Tangent& v) { return Tangent(v.base_, -v.components_); }

    static void require_same_base(const Tangent& a, const Tangent& b) {
        if (!(a.base_ == b.base_))
            throw std::invalid_argument("Tangent: vectors based at different points");
    }

  private:
    Point base_;
    Vec components_;
};

inline Tangent coordinate_tangent(const Point& p, int axis) {
    return Tangent(p, Vec::basis(p.dim(), axis));
}

}  // namespace heiscone
