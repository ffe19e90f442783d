#pragma once

// Forward-mode derivative scalar used to differentiate horizon rollouts
// with respect to the jerk sequence.  The gradient part has a fixed
// capacity so no heap traffic happens inside the optimizer loop; the
// active width is carried per value and propagated through arithmetic.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace speedopt {

inline constexpr int kMaxSeeds = 64;

class Dual {
  public:
    Dual() : val_(0.0), n_(0) {}
    Dual(double v) : val_(v), n_(0) {}  // NOLINT: implicit by design

    static Dual seeded(double v, int index, int n) {
        if (n > kMaxSeeds || index < 0 || index >= n)
            throw std::invalid_argument("Dual::seeded: seed index out of range");
        Dual d(v);
        d.n_ = n;
        for (int i = 0; i < n; ++i) d.grad_[i] = 0.0;
        d.grad_[index] = 1.0;
        return d;
    }

    double value() const { return val_; }
    int width() const { return n_; }
    double deriv(int i) const { return i < n_ ? grad_[i] : 0.0; }

    Dual operator-() const {
        Dual r(-val_);
        r.n_ = n_;
        for (int i = 0; i < n_; ++i) r.grad_[i] = -grad_[i];
        return r;
    }

    friend Dual operator+(const Dual& a, const Dual& b) {
        Dual r(a.val_ + b.val_);
        r.combine(a, b, 1.0, 1.0);
        return r;
    }
    friend Dual operator-(const Dual& a, const Dual& b) {
        Dual r(a.val_ - b.val_);
        r.combine(a, b, 1.0, -1.0);
        return r;
    }
    friend Dual operator*(const Dual& a, const Dual& b) {
        Dual r(a.val_ * b.val_);
        r.combine(a, b, b.val_, a.val_);
        return r;
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        const double inv = 1.0 / b.val_;
        Dual r(a.val_ * inv);
        r.combine(a, b, inv, -a.val_ * inv * inv);
        return r;
    }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    Dual& operator/=(const Dual& o) { return *this = *this / o; }

    friend bool operator<(const Dual& a, const Dual& b) { return a.val_ < b.val_; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.val_ > b.val_; }
    friend bool operator<=(const Dual& a, const Dual& b) { return a.val_ <= b.val_; }
    friend bool operator>=(const Dual& a, const Dual& b) { return a.val_ >= b.val_; }

    friend Dual sqrt(const Dual& a) {
        const double s = std::sqrt(a.val_);
        Dual r(s);
        r.chain(a, 0.5 / s);
        return r;
    }
    friend Dual exp(const Dual& a) {
        const double e = std::exp(a.val_);
        Dual r(e);
        r.chain(a, e);
        return r;
    }
    friend Dual abs(const Dual& a) { return a.val_ < 0.0 ? -a : a; }

  private:
    void combine(const Dual& a, const Dual& b, double wa, double wb) {
        n_ = a.n_ > b.n_ ? a.n_ : b.n_;
        for (int i = 0; i < n_; ++i)
            grad_[i] = wa * (i < a.n_ ? a.grad_[i] : 0.0) + wb * (i < b.n_ ? b.grad_[i] : 0.0);
    }
    void chain(const Dual& a, double w) {
        n_ = a.n_;
        for (int i = 0; i < n_; ++i) grad_[i] = w * a.grad_[i];
    }

    double val_;
    int n_;
    std::array<double, kMaxSeeds> grad_;
};

// Uniform value access so numeric code can be written once for double and Dual.
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.value(); }

template <class T>
T max_with(const T& a, double b) {
    return value_of(a) >= b ? a : T(b);
}

}  // namespace speedopt
