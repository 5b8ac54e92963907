#pragma once

#include "error.hpp"
#include "rational.hpp"

namespace jl {

// Element x + y*s of the quadratic algebra Q[s]/(s^2 - d). The square d
// travels with the element; purely rational values carry the wildcard d = 0
// so that generic code can build constants without knowing d.
class QuadExt {
public:
    QuadExt() : x_(0), y_(0), d_(0) {}
    QuadExt(int v) : x_(v), y_(0), d_(0) {}
    explicit QuadExt(Rat v) : x_(std::move(v)), y_(0), d_(0) {}
    QuadExt(Rat x, Rat y, Rat d) : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
        if (y_ != 0 && d_ == 0) throw PreconditionError("quadratic part requires a nonzero square d");
        if (y_ == 0) d_ = 0;
    }
    static QuadExt sqrt_of(const Rat& d) { return QuadExt(0, 1, d); }

    const Rat& rational_part() const { return x_; }
    const Rat& quadratic_part() const { return y_; }
    const Rat& square() const { return d_; }
    bool is_rational() const { return y_ == 0; }

    QuadExt conj() const { return QuadExt(x_, -y_, d_); }

    friend QuadExt operator+(const QuadExt& a, const QuadExt& b) {
        return QuadExt(a.x_ + b.x_, a.y_ + b.y_, merged(a, b));
    }
    friend QuadExt operator-(const QuadExt& a, const QuadExt& b) {
        return QuadExt(a.x_ - b.x_, a.y_ - b.y_, merged(a, b));
    }
    QuadExt operator-() const { return QuadExt(-x_, -y_, d_); }
    friend QuadExt operator*(const QuadExt& a, const QuadExt& b) {
        Rat d = merged(a, b);
        return QuadExt(a.x_ * b.x_ + d * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_, d);
    }
    friend QuadExt operator/(const QuadExt& a, const QuadExt& b) {
        Rat d = merged(a, b);
        Rat nrm = b.x_ * b.x_ - d * b.y_ * b.y_;
        if (nrm == 0) throw PreconditionError("division by a non-invertible quadratic element");
        QuadExt inv(b.x_ / nrm, -b.y_ / nrm, d);
        return a * inv;
    }
    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        if (a.x_ != b.x_ || a.y_ != b.y_) return false;
        return a.y_ == 0 || a.d_ == b.d_;
    }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

private:
    static Rat merged(const QuadExt& a, const QuadExt& b) {
        if (a.y_ == 0) return b.d_;
        if (b.y_ == 0) return a.d_;
        if (a.d_ != b.d_) throw ShapeMismatch("mixing distinct quadratic extensions");
        return a.d_;
    }
    Rat x_, y_, d_;
};

} // namespace jl
