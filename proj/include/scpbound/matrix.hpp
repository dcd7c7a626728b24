#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scpbound {

/**
 * Immutable m x n 0-1 matrix with rows packed into 64-bit words.
 *
 * Row i occupies words [i * stride, (i + 1) * stride). Bits past column n-1 in
 * the last word of each row are always zero, so row-wise AND + popcount never
 * needs masking. Indices are 0-based.
 */
class BinaryMatrix {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    /// Zero matrix. Both dimensions must be positive.
    BinaryMatrix(std::size_t rows, std::size_t cols);

    /// Matrix whose row i has ones exactly at the 0-based columns in ones[i].
    static BinaryMatrix from_row_sets(std::size_t cols, const std::vector<std::vector<std::size_t>>& ones);

    /// Convenience for literals such as {"1100", "0110"}.
    static BinaryMatrix from_strings(std::initializer_list<std::string_view> rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t stride() const noexcept { return stride_; }

    [[nodiscard]] bool at(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::span<const Word> row(std::size_t i) const;
    [[nodiscard]] std::size_t row_ones(std::size_t i) const;
    [[nodiscard]] std::size_t total_ones() const;

    /// Column-major copy: row j of the result is column j of this matrix.
    [[nodiscard]] BinaryMatrix transposed() const;

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    friend class MatrixBuilder;

    std::size_t rows_;
    std::size_t cols_;
    std::size_t stride_;
    std::vector<Word> words_;
};

/// Write-once construction of a BinaryMatrix.
class MatrixBuilder {
public:
    MatrixBuilder(std::size_t rows, std::size_t cols) : matrix_(rows, cols) {}

    void set(std::size_t i, std::size_t j, bool value = true);
    [[nodiscard]] std::size_t rows() const noexcept { return matrix_.rows(); }
    [[nodiscard]] std::size_t cols() const noexcept { return matrix_.cols(); }

    [[nodiscard]] BinaryMatrix build() && { return std::move(matrix_); }

private:
    BinaryMatrix matrix_;
};

/// Per-row ones counts d_i. Densities d_i / n are derived on demand.
class RowProfile {
public:
    explicit RowProfile(const BinaryMatrix& matrix);

    [[nodiscard]] std::size_t rows() const noexcept { return ones_.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] std::span<const std::size_t> ones() const noexcept { return ones_; }
    [[nodiscard]] std::size_t ones(std::size_t i) const { return ones_.at(i); }
    [[nodiscard]] double density(std::size_t i) const;

    [[nodiscard]] std::size_t max_ones() const noexcept { return max_ones_; }
    [[nodiscard]] std::size_t min_ones() const noexcept { return min_ones_; }
    [[nodiscard]] double max_density() const noexcept;
    [[nodiscard]] double min_density() const noexcept;
    [[nodiscard]] double mean_density() const noexcept;

    /// First row with no ones, if any.
    [[nodiscard]] std::optional<std::size_t> first_zero_row() const noexcept;

    /// (ones count, multiplicity) pairs in ascending ones count.
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& histogram() const noexcept {
        return histogram_;
    }

private:
    std::size_t cols_;
    std::vector<std::size_t> ones_;
    std::size_t max_ones_ = 0;
    std::size_t min_ones_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> histogram_;
};

[[nodiscard]] inline RowProfile row_profile(const BinaryMatrix& matrix) { return RowProfile(matrix); }

/// |Gamma_ij| for all unordered row pairs, stored as an upper triangle.
class OverlapTable {
public:
    explicit OverlapTable(const BinaryMatrix& matrix);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    /// Symmetric in (i, j); i == j yields the row's ones count.
    [[nodiscard]] std::size_t pair(std::size_t i, std::size_t j) const;

private:
    [[nodiscard]] std::size_t slot(std::size_t i, std::size_t j) const noexcept;

    std::size_t rows_;
    std::vector<std::size_t> diag_;
    std::vector<std::uint32_t> upper_;
};

/// popcount(row_i AND row_j).
[[nodiscard]] std::size_t pair_overlap(const BinaryMatrix& matrix, std::size_t i, std::size_t j);
/// popcount(row_i AND row_j AND row_k).
[[nodiscard]] std::size_t triple_overlap(const BinaryMatrix& matrix, std::size_t i, std::size_t j, std::size_t k);

/// M'[i][j] = M[row_perm[i]][col_perm[j]].
[[nodiscard]] BinaryMatrix permute(const BinaryMatrix& matrix, std::span<const std::size_t> row_perm,
                                   std::span<const std::size_t> col_perm);

enum class MatrixFormat { dense, sparse };

/// Dense or sparse instance text; the format is detected from the first row line.
[[nodiscard]] BinaryMatrix parse_matrix(std::string_view text);
[[nodiscard]] std::string serialize_matrix(const BinaryMatrix& matrix, MatrixFormat format);

/// "-" reads standard input.
[[nodiscard]] BinaryMatrix read_matrix(const std::string& path);
void write_matrix(const std::filesystem::path& path, const BinaryMatrix& matrix, MatrixFormat format);

}  // namespace scpbound
