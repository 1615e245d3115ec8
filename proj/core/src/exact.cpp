#include "dcspec/exact.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dcspec {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("dyadic addition overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("dyadic multiplication overflow");
    return r;
}

std::int64_t checked_shift(std::int64_t a, int s) {
    if (s >= 62) {
        if (a == 0) return 0;
        throw std::overflow_error("dyadic shift overflow");
    }
    return checked_mul(a, std::int64_t{1} << s);
}

}  // namespace

Dyadic::Dyadic(std::int64_t num, int exp) : num_(num), exp_(exp) {
    if (exp < 0) {
        num_ = checked_shift(num, -exp);
        exp_ = 0;
    }
    normalize();
}

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && (num_ % 2 == 0)) {
        num_ /= 2;
        --exp_;
    }
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

Dyadic Dyadic::operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("dyadic negation overflow");
    return Dyadic(-num_, exp_);
}

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    const int e = std::max(x.exp_, y.exp_);
    return Dyadic(checked_add(checked_shift(x.num_, e - x.exp_), checked_shift(y.num_, e - y.exp_)), e);
}

Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }

Dyadic operator*(const Dyadic& x, const Dyadic& y) {
    return Dyadic(checked_mul(x.num_, y.num_), x.exp_ + y.exp_);
}

std::string Dyadic::str() const {
    std::ostringstream os;
    os << num_;
    if (exp_ > 0) os << "/" << (std::int64_t{1} << exp_);
    return os.str();
}

double Surd::to_double() const { return a.to_double() + b.to_double() * std::sqrt(2.0); }

Surd operator*(const Surd& x, const Surd& y) {
    // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r, r = sqrt(2)
    const Dyadic bd = x.b * y.b;
    return {x.a * y.a + bd + bd, x.a * y.b + x.b * y.a};
}

std::string Surd::str() const {
    if (b.is_zero()) return a.str();
    if (a.is_zero()) return b.str() + "*r2";
    return "(" + a.str() + " + " + b.str() + "*r2)";
}

std::string ExactComplex::str() const {
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return im.str() + "i";
    return re.str() + " + " + im.str() + "i";
}

ExactMatrix::ExactMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("ExactMatrix dimensions must be positive");
}

ExactMatrix::ExactMatrix(int rows, int cols, std::initializer_list<ExactComplex> rowMajor)
    : ExactMatrix(rows, cols) {
    if (rowMajor.size() != data_.size())
        throw std::invalid_argument("ExactMatrix initializer has wrong number of entries");
    std::copy(rowMajor.begin(), rowMajor.end(), data_.begin());
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ExactComplex(1);
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

ExactMatrix ExactMatrix::adjoint() const {
    ExactMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
    return t;
}

bool ExactMatrix::is_hermitian() const { return rows_ == cols_ && *this == adjoint(); }

bool ExactMatrix::is_zero() const {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix r(*this);
    for (auto& e : r.data_) e = -e;
    return r;
}

ExactMatrix ExactMatrix::scaled(const ExactComplex& s) const {
    ExactMatrix r(*this);
    for (auto& e : r.data_) e = s * e;
    return r;
}

ExactMatrix operator+(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("ExactMatrix size mismatch in +");
    ExactMatrix r(x);
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = x.data_[i] + y.data_[i];
    return r;
}

ExactMatrix operator-(const ExactMatrix& x, const ExactMatrix& y) { return x + (-y); }

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("ExactMatrix size mismatch in *");
    ExactMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
        for (int k = 0; k < x.cols_; ++k) {
            const ExactComplex& a = x(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < y.cols_; ++j) {
                const ExactComplex& b = y(k, j);
                if (!b.is_zero()) r(i, j) = r(i, j) + a * b;
            }
        }
    return r;
}

double ExactMatrix::max_abs_deviation(const ExactMatrix& other) const {
    const ExactMatrix d = *this - other;
    double m = 0.0;
    for (const auto& e : d.data_) m = std::max(m, e.abs());
    return m;
}

std::vector<std::complex<double>> ExactMatrix::to_row_major() const {
    std::vector<std::complex<double>> out;
    out.reserve(data_.size());
    for (const auto& e : data_) out.push_back(e.to_complex());
    return out;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < rows_; ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).str();
    }
    os << "]";
    return os.str();
}

ExactMatrix kron(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r(x.rows() * y.rows(), x.cols() * y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            if (x(i, j).is_zero()) continue;
            for (int k = 0; k < y.rows(); ++k)
                for (int l = 0; l < y.cols(); ++l) r(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
        }
    return r;
}

ExactMatrix direct_sum(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r(x.rows() + y.rows(), x.cols() + y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = x(i, j);
    for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) r(x.rows() + i, x.cols() + j) = y(i, j);
    return r;
}

}  // namespace dcspec
