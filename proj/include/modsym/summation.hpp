#pragma once

#include <complex>

namespace modsym {

// Kahan-Babuska (Neumaier) compensated accumulator.
template <typename T>
class CompensatedSum {
public:
    void add(T x) {
        const T t = sum_ + x;
        if (magnitude(sum_) >= magnitude(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other) {
        add(other.sum_);
        add(other.compensation_);
    }
    T value() const { return sum_ + compensation_; }

private:
    static double magnitude(double x) { return x < 0 ? -x : x; }
    static double magnitude(const std::complex<double>& x) { return std::abs(x.real()) + std::abs(x.imag()); }

    T sum_{};
    T compensation_{};
};

// Componentwise compensation for complex values.
template <>
class CompensatedSum<std::complex<double>> {
public:
    void add(std::complex<double> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    void add(const CompensatedSum& other) {
        re_.add(other.re_);
        im_.add(other.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

}  // namespace modsym
