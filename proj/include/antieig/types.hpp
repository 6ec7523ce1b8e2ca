#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace antieig {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

// Error taxonomy. The CLI maps these onto its exit codes:
// InputError -> 2, NumericalError -> 3, PreconditionError -> 4.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Complex> a;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Complex& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Complex& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols && rows > 0; }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix diag(const ComplexVector& d) {
        ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }
};

// Dense row-major real matrix.
struct RealMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const double& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool square() const { return rows == cols && rows > 0; }

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

void require_finite(const ComplexMatrix& m, const std::string& what);
void require_finite(const RealMatrix& m, const std::string& what);
void require_finite(const ComplexVector& v, const std::string& what);
void require_square(const ComplexMatrix& m, const std::string& what);

}  // namespace antieig
