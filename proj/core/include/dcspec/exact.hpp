#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dcspec {

// A dyadic rational num / 2^exp kept in lowest terms (num odd or exp == 0).
// Every arithmetic operation checks for int64 overflow and throws
// std::overflow_error instead of silently wrapping.
class Dyadic {
public:
    constexpr Dyadic() = default;
    Dyadic(std::int64_t num, int exp = 0);

    std::int64_t num() const { return num_; }
    int exp() const { return exp_; }
    bool is_zero() const { return num_ == 0; }
    double to_double() const;

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    friend bool operator==(const Dyadic& a, const Dyadic& b) = default;

    Dyadic half() const { return Dyadic(num_, exp_ + 1); }
    std::string str() const;

private:
    void normalize();
    std::int64_t num_ = 0;
    int exp_ = 0;
};

// a + b*sqrt(2) with dyadic a, b.
struct Surd {
    Dyadic a, b;

    Surd() = default;
    Surd(Dyadic a_, Dyadic b_ = Dyadic{}) : a(a_), b(b_) {}
    Surd(std::int64_t v) : a(v) {}

    static Surd inv_sqrt2() { return Surd(Dyadic{}, Dyadic(1, 1)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    double to_double() const;

    Surd operator-() const { return {-a, -b}; }
    friend Surd operator+(const Surd& x, const Surd& y) { return {x.a + y.a, x.b + y.b}; }
    friend Surd operator-(const Surd& x, const Surd& y) { return {x.a - y.a, x.b - y.b}; }
    friend Surd operator*(const Surd& x, const Surd& y);
    friend bool operator==(const Surd& x, const Surd& y) = default;
    std::string str() const;
};

struct ExactComplex {
    Surd re, im;

    ExactComplex() = default;
    ExactComplex(Surd r, Surd i = Surd{}) : re(r), im(i) {}
    ExactComplex(std::int64_t r) : re(r) {}

    static ExactComplex i() { return {Surd{}, Surd{1}}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
    double abs() const { return std::abs(to_complex()); }
    ExactComplex conj() const { return {re, -im}; }

    ExactComplex operator-() const { return {-re, -im}; }
    friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend bool operator==(const ExactComplex& x, const ExactComplex& y) = default;
    std::string str() const;
};

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols);
    ExactMatrix(int rows, int cols, std::initializer_list<ExactComplex> rowMajor);

    static ExactMatrix identity(int n);
    static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    ExactComplex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const ExactComplex& operator()(int r, int c) const {
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    ExactMatrix transpose() const;
    ExactMatrix adjoint() const;
    bool is_hermitian() const;
    bool is_zero() const;

    ExactMatrix operator-() const;
    ExactMatrix scaled(const ExactComplex& s) const;
    friend ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y);
    friend ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y);
    friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
    friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) = default;

    // Largest |entry| of (this - other), evaluated in floating point after the
    // exact subtraction. Zero exactly when the matrices are equal.
    double max_abs_deviation(const ExactMatrix& other) const;

    std::vector<std::complex<double>> to_row_major() const;
    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<ExactComplex> data_;
};

ExactMatrix kron(const ExactMatrix& x, const ExactMatrix& y);
ExactMatrix direct_sum(const ExactMatrix& x, const ExactMatrix& y);

}  // namespace dcspec
