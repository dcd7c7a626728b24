#include "scpbound/matrix.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "scpbound/error.hpp"

namespace scpbound {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + BinaryMatrix::word_bits - 1) / BinaryMatrix::word_bits; }

void check_index(std::size_t index, std::size_t bound, const char* what) {
    if (index >= bound) {
        throw ArgumentError(std::string(what) + " index " + std::to_string(index + 1) + " out of range 1.." +
                            std::to_string(bound));
    }
}

void check_permutation(std::span<const std::size_t> perm, std::size_t size, const char* what) {
    if (perm.size() != size) {
        throw ArgumentError(std::string(what) + " permutation has length " + std::to_string(perm.size()) +
                            ", expected " + std::to_string(size));
    }
    std::vector<bool> seen(size, false);
    for (std::size_t p : perm) {
        if (p >= size || seen[p]) {
            throw ArgumentError(std::string(what) + " permutation is not a permutation of 1.." + std::to_string(size));
        }
        seen[p] = true;
    }
}

}  // namespace

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), words_() {
    if (rows == 0 || cols == 0) {
        throw ArgumentError("matrix dimensions must be positive");
    }
    words_.assign(rows_ * stride_, 0);
}

BinaryMatrix BinaryMatrix::from_row_sets(std::size_t cols, const std::vector<std::vector<std::size_t>>& ones) {
    MatrixBuilder builder(ones.size(), cols);
    for (std::size_t i = 0; i < ones.size(); ++i) {
        for (std::size_t j : ones[i]) builder.set(i, j);
    }
    return std::move(builder).build();
}

BinaryMatrix BinaryMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    if (rows.size() == 0) throw ArgumentError("matrix dimensions must be positive");
    const std::size_t cols = rows.begin()->size();
    MatrixBuilder builder(rows.size(), cols);
    std::size_t i = 0;
    for (std::string_view row : rows) {
        if (row.size() != cols) throw ArgumentError("ragged matrix literal");
        for (std::size_t j = 0; j < cols; ++j) {
            if (row[j] == '1') {
                builder.set(i, j);
            } else if (row[j] != '0') {
                throw ArgumentError("matrix literal may only contain 0 and 1");
            }
        }
        ++i;
    }
    return std::move(builder).build();
}

bool BinaryMatrix::at(std::size_t i, std::size_t j) const {
    check_index(i, rows_, "row");
    check_index(j, cols_, "column");
    return (words_[i * stride_ + j / word_bits] >> (j % word_bits)) & 1U;
}

std::span<const BinaryMatrix::Word> BinaryMatrix::row(std::size_t i) const {
    check_index(i, rows_, "row");
    return {words_.data() + i * stride_, stride_};
}

std::size_t BinaryMatrix::row_ones(std::size_t i) const {
    std::size_t count = 0;
    for (Word w : row(i)) count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

std::size_t BinaryMatrix::total_ones() const {
    std::size_t count = 0;
    for (Word w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

BinaryMatrix BinaryMatrix::transposed() const {
    MatrixBuilder builder(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Word* r = words_.data() + i * stride_;
        for (std::size_t w = 0; w < stride_; ++w) {
            for (Word bits = r[w]; bits != 0; bits &= bits - 1) {
                builder.set(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)), i);
            }
        }
    }
    return std::move(builder).build();
}

void MatrixBuilder::set(std::size_t i, std::size_t j, bool value) {
    check_index(i, matrix_.rows_, "row");
    check_index(j, matrix_.cols_, "column");
    auto& word = matrix_.words_[i * matrix_.stride_ + j / BinaryMatrix::word_bits];
    const auto mask = BinaryMatrix::Word{1} << (j % BinaryMatrix::word_bits);
    word = value ? (word | mask) : (word & ~mask);
}

RowProfile::RowProfile(const BinaryMatrix& matrix) : cols_(matrix.cols()), ones_(matrix.rows()) {
    for (std::size_t i = 0; i < matrix.rows(); ++i) ones_[i] = matrix.row_ones(i);
    auto [lo, hi] = std::minmax_element(ones_.begin(), ones_.end());
    min_ones_ = *lo;
    max_ones_ = *hi;

    std::vector<std::size_t> sorted = ones_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t d : sorted) {
        if (histogram_.empty() || histogram_.back().first != d) {
            histogram_.emplace_back(d, 1);
        } else {
            ++histogram_.back().second;
        }
    }
}

double RowProfile::density(std::size_t i) const {
    return static_cast<double>(ones_.at(i)) / static_cast<double>(cols_);
}

double RowProfile::max_density() const noexcept {
    return static_cast<double>(max_ones_) / static_cast<double>(cols_);
}

double RowProfile::min_density() const noexcept {
    return static_cast<double>(min_ones_) / static_cast<double>(cols_);
}

double RowProfile::mean_density() const noexcept {
    const auto total = std::accumulate(ones_.begin(), ones_.end(), std::size_t{0});
    return static_cast<double>(total) / (static_cast<double>(cols_) * static_cast<double>(ones_.size()));
}

std::optional<std::size_t> RowProfile::first_zero_row() const noexcept {
    auto it = std::find(ones_.begin(), ones_.end(), std::size_t{0});
    if (it == ones_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ones_.begin());
}

OverlapTable::OverlapTable(const BinaryMatrix& matrix) : rows_(matrix.rows()), diag_(matrix.rows()) {
    upper_.resize(rows_ * (rows_ - 1) / 2);
    for (std::size_t i = 0; i < rows_; ++i) {
        diag_[i] = matrix.row_ones(i);
        const auto ri = matrix.row(i);
        for (std::size_t j = i + 1; j < rows_; ++j) {
            const auto rj = matrix.row(j);
            std::size_t count = 0;
            for (std::size_t w = 0; w < ri.size(); ++w) count += static_cast<std::size_t>(std::popcount(ri[w] & rj[w]));
            upper_[slot(i, j)] = static_cast<std::uint32_t>(count);
        }
    }
}

std::size_t OverlapTable::slot(std::size_t i, std::size_t j) const noexcept {
    // row-major upper triangle without the diagonal
    return i * (2 * rows_ - i - 1) / 2 + (j - i - 1);
}

std::size_t OverlapTable::pair(std::size_t i, std::size_t j) const {
    check_index(i, rows_, "row");
    check_index(j, rows_, "row");
    if (i == j) return diag_[i];
    if (i > j) std::swap(i, j);
    return upper_[slot(i, j)];
}

std::size_t pair_overlap(const BinaryMatrix& matrix, std::size_t i, std::size_t j) {
    const auto ri = matrix.row(i);
    const auto rj = matrix.row(j);
    std::size_t count = 0;
    for (std::size_t w = 0; w < ri.size(); ++w) count += static_cast<std::size_t>(std::popcount(ri[w] & rj[w]));
    return count;
}

std::size_t triple_overlap(const BinaryMatrix& matrix, std::size_t i, std::size_t j, std::size_t k) {
    const auto ri = matrix.row(i);
    const auto rj = matrix.row(j);
    const auto rk = matrix.row(k);
    std::size_t count = 0;
    for (std::size_t w = 0; w < ri.size(); ++w) {
        count += static_cast<std::size_t>(std::popcount(ri[w] & rj[w] & rk[w]));
    }
    return count;
}

BinaryMatrix permute(const BinaryMatrix& matrix, std::span<const std::size_t> row_perm,
                     std::span<const std::size_t> col_perm) {
    check_permutation(row_perm, matrix.rows(), "row");
    check_permutation(col_perm, matrix.cols(), "column");
    MatrixBuilder builder(matrix.rows(), matrix.cols());
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            if (matrix.at(row_perm[i], col_perm[j])) builder.set(i, j);
        }
    }
    return std::move(builder).build();
}

namespace {

struct Line {
    std::size_t number;
    std::string_view text;
};

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

/// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto eol = text.find('\n');
        std::string_view raw = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        lines.push_back({number, line});
    }
    return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        const auto start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
        if (pos > start) tokens.push_back(s.substr(start, pos - start));
    }
    return tokens;
}

std::optional<std::size_t> to_size(std::string_view token) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

void parse_dense_row(MatrixBuilder& builder, std::size_t i, const Line& line) {
    if (line.text.size() != builder.cols()) {
        throw ParseError(line.number, "row length " + std::to_string(line.text.size()) + " does not match n = " +
                                          std::to_string(builder.cols()));
    }
    for (std::size_t j = 0; j < line.text.size(); ++j) {
        const char c = line.text[j];
        if (c == '1') {
            builder.set(i, j);
        } else if (c != '0') {
            throw ParseError(line.number, std::string("invalid character '") + c + "' (expected 0 or 1)");
        }
    }
}

void parse_sparse_row(MatrixBuilder& builder, std::size_t i, const Line& line) {
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos) throw ParseError(line.number, "sparse row is missing ':'");
    const auto label = to_size(trim(line.text.substr(0, colon)));
    if (!label || *label != i + 1) {
        throw ParseError(line.number, "expected row label " + std::to_string(i + 1));
    }
    std::size_t previous = 0;
    for (std::string_view token : split_ws(line.text.substr(colon + 1))) {
        const auto col = to_size(token);
        if (!col) throw ParseError(line.number, "invalid column index '" + std::string(token) + "'");
        if (*col < 1 || *col > builder.cols()) {
            throw ParseError(line.number, "column index " + std::to_string(*col) + " out of range 1.." +
                                              std::to_string(builder.cols()));
        }
        if (*col <= previous) throw ParseError(line.number, "column indices must be strictly increasing");
        previous = *col;
        builder.set(i, *col - 1);
    }
}

}  // namespace

BinaryMatrix parse_matrix(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header line \"m n\"");

    const auto& header = lines.front();
    const auto tokens = split_ws(header.text);
    std::optional<std::size_t> m, n;
    if (tokens.size() == 2) {
        m = to_size(tokens[0]);
        n = to_size(tokens[1]);
    }
    if (!m || !n || *m == 0 || *n == 0) {
        throw ParseError(header.number, "malformed header, expected two positive integers \"m n\"");
    }

    const std::size_t body = lines.size() - 1;
    if (body != *m) {
        const auto where = body < *m ? lines.back().number : lines[*m + 1].number;
        throw ParseError(where, "expected " + std::to_string(*m) + " rows, found " + std::to_string(body));
    }

    MatrixBuilder builder(*m, *n);
    const bool sparse = lines[1].text.find(':') != std::string_view::npos;
    for (std::size_t i = 0; i < *m; ++i) {
        if (sparse) {
            parse_sparse_row(builder, i, lines[i + 1]);
        } else {
            parse_dense_row(builder, i, lines[i + 1]);
        }
    }
    return std::move(builder).build();
}

std::string serialize_matrix(const BinaryMatrix& matrix, MatrixFormat format) {
    std::string out = std::to_string(matrix.rows()) + " " + std::to_string(matrix.cols()) + "\n";
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        if (format == MatrixFormat::dense) {
            for (std::size_t j = 0; j < matrix.cols(); ++j) out += matrix.at(i, j) ? '1' : '0';
        } else {
            out += std::to_string(i + 1) + ":";
            for (std::size_t j = 0; j < matrix.cols(); ++j) {
                if (matrix.at(i, j)) out += " " + std::to_string(j + 1);
            }
        }
        out += '\n';
    }
    return out;
}

BinaryMatrix read_matrix(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorKind::input, "cannot open '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return parse_matrix(text);
}

void write_matrix(const std::filesystem::path& path, const BinaryMatrix& matrix, MatrixFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::input, "cannot write '" + path.string() + "'");
    out << serialize_matrix(matrix, format);
    if (!out) throw Error(ErrorKind::input, "write failed for '" + path.string() + "'");
}

}  // namespace scpbound
