#pragma once

// Small deterministic numeric kernel: a dense row-major float64 matrix,
// elementwise helpers, a seeded generator, and central finite differences.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace hssl {

/// Dense row-major float64 matrix. Batches run along rows (batch x features).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Takes ownership of `data`; throws ShapeError on a length mismatch and
    /// NumericError if any entry is not finite.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix row_vector(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }
    const std::vector<double>& storage() const noexcept { return data_; }

    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    /// Debug validator: throws NumericError naming `what` on a NaN/Inf entry.
    void check_finite(const char* what = "matrix") const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
/// aᵀ·b without materialising the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
/// a·bᵀ without materialising the transpose.
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);
Matrix hadamard(const Matrix& a, const Matrix& b);
void add_in_place(Matrix& acc, const Matrix& term);
/// Adds the 1 x cols row vector `bias` to every row of `m`.
void add_row_broadcast(Matrix& m, const Matrix& bias);
/// Column sums as a 1 x cols matrix.
Matrix column_sums(const Matrix& m);
double sum(const Matrix& m);
double frobenius_norm(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Gathers the listed rows of `m` into a new matrix, preserving order.
Matrix select_rows(const Matrix& m, std::span<const std::size_t> indices);
/// Stacks `top` above `bottom`; column counts must agree.
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// Row-wise softmax with per-row max subtraction.
Matrix softmax_rows(const Matrix& m);
std::vector<std::size_t> argmax_rows(const Matrix& m);

/// Central-difference gradient of a scalar function of a matrix.
Matrix finite_diff_grad(const std::function<double(const Matrix&)>& f, const Matrix& at, double eps);

/// xoshiro256** seeded through splitmix64. The stream depends only on the
/// seed, so it is identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n) noexcept;
    /// Standard normal via the Box-Muller transform (cached pair).
    double gaussian() noexcept;
    /// Independent child generator for stream `stream_id`; does not advance *this.
    Rng split(std::uint64_t stream_id) const noexcept;

    template <typename T>
    void shuffle(std::vector<T>& v) noexcept {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::uint64_t s_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

Matrix rng_gaussian(Rng& rng, std::size_t rows, std::size_t cols, double mean, double std);
Matrix rng_uniform(Rng& rng, std::size_t rows, std::size_t cols, double lo, double hi);
/// {0,1} mask with P(1) = p_keep.
Matrix rng_bernoulli(Rng& rng, std::size_t rows, std::size_t cols, double p_keep);

} // namespace hssl
