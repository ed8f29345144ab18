#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qra/error.hpp"

namespace qra {

using Point = std::size_t;
using Permutation = std::vector<Point>;

/// Binary relation over the carrier {0..n-1}, stored as a dense bit matrix
/// with one 64-bit word per row. Carriers are limited to 64 points.
class BinRel {
public:
    static constexpr std::size_t max_points = 64;

    BinRel() = default;

    explicit BinRel(std::size_t n) : n_(n), rows_(n, 0) {
        if (n > max_points) {
            throw MalformedInput("carrier of " + std::to_string(n) + " points exceeds limit of 64");
        }
    }

    static BinRel identity(std::size_t n) {
        BinRel r(n);
        for (Point i = 0; i < n; ++i) r.rows_[i] = bit(i);
        return r;
    }

    static BinRel full(std::size_t n) {
        BinRel r(n);
        for (auto& row : r.rows_) row = r.row_mask();
        return r;
    }

    static BinRel from_pairs(std::size_t n, std::span<const std::pair<Point, Point>> pairs) {
        BinRel r(n);
        for (auto [x, y] : pairs) r.insert(x, y);
        return r;
    }

    /// Graph {(x, f(x))} of a function on the carrier.
    static BinRel graph(std::span<const Point> f) {
        BinRel r(f.size());
        for (Point x = 0; x < f.size(); ++x) r.insert(x, f[x]);
        return r;
    }

    std::size_t points() const noexcept { return n_; }

    bool contains(Point x, Point y) const {
        check_point(x);
        check_point(y);
        return (rows_[x] >> y) & 1U;
    }

    void insert(Point x, Point y) {
        check_point(x);
        check_point(y);
        rows_[x] |= bit(y);
    }

    void erase(Point x, Point y) {
        check_point(x);
        check_point(y);
        rows_[x] &= ~bit(y);
    }

    std::uint64_t row(Point x) const { return rows_.at(x); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto row : rows_) c += static_cast<std::size_t>(std::popcount(row));
        return c;
    }

    bool empty() const noexcept {
        return std::all_of(rows_.begin(), rows_.end(), [](std::uint64_t r) { return r == 0; });
    }

    std::vector<std::pair<Point, Point>> pairs() const {
        std::vector<std::pair<Point, Point>> out;
        for (Point x = 0; x < n_; ++x) {
            for (Point y = 0; y < n_; ++y) {
                if ((rows_[x] >> y) & 1U) out.emplace_back(x, y);
            }
        }
        return out;
    }

    /// R;S = {(x,y) | exists z: (x,z) in R and (z,y) in S}.
    friend BinRel compose(const BinRel& r, const BinRel& s) {
        r.check_same(s);
        BinRel out(r.n_);
        for (Point x = 0; x < r.n_; ++x) {
            std::uint64_t acc = 0;
            std::uint64_t mid = r.rows_[x];
            while (mid != 0) {
                const auto z = static_cast<Point>(std::countr_zero(mid));
                acc |= s.rows_[z];
                mid &= mid - 1;
            }
            out.rows_[x] = acc;
        }
        return out;
    }

    BinRel converse() const {
        BinRel out(n_);
        for (Point x = 0; x < n_; ++x) {
            std::uint64_t row = rows_[x];
            while (row != 0) {
                const auto y = static_cast<Point>(std::countr_zero(row));
                out.rows_[y] |= bit(x);
                row &= row - 1;
            }
        }
        return out;
    }

    /// Complement relative to `universe`: {(x,y) in universe | (x,y) not in R}.
    BinRel complement_in(const BinRel& universe) const {
        check_same(universe);
        BinRel out(n_);
        for (Point x = 0; x < n_; ++x) out.rows_[x] = universe.rows_[x] & ~rows_[x];
        return out;
    }

    friend BinRel operator|(const BinRel& r, const BinRel& s) {
        r.check_same(s);
        BinRel out(r.n_);
        for (Point x = 0; x < r.n_; ++x) out.rows_[x] = r.rows_[x] | s.rows_[x];
        return out;
    }

    friend BinRel operator&(const BinRel& r, const BinRel& s) {
        r.check_same(s);
        BinRel out(r.n_);
        for (Point x = 0; x < r.n_; ++x) out.rows_[x] = r.rows_[x] & s.rows_[x];
        return out;
    }

    bool subset_of(const BinRel& s) const {
        check_same(s);
        for (Point x = 0; x < n_; ++x) {
            if ((rows_[x] & ~s.rows_[x]) != 0) return false;
        }
        return true;
    }

    bool disjoint_from(const BinRel& s) const {
        check_same(s);
        for (Point x = 0; x < n_; ++x) {
            if ((rows_[x] & s.rows_[x]) != 0) return false;
        }
        return true;
    }

    /// Image of the relation under a relabelling of points: {(f(x), f(y))}.
    /// `f` may map onto a smaller carrier of `target_points` points.
    BinRel image(std::span<const Point> f, std::size_t target_points) const {
        if (f.size() != n_) throw MalformedInput("point map does not cover the carrier");
        BinRel out(target_points);
        for (auto [x, y] : pairs()) out.insert(f[x], f[y]);
        return out;
    }

    friend bool operator==(const BinRel&, const BinRel&) = default;
    friend auto operator<=>(const BinRel& a, const BinRel& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.rows_ <=> b.rows_;
    }

    std::size_t hash() const noexcept {
        std::size_t h = n_;
        for (auto row : rows_) h = h * 0x9E3779B97F4A7C15ULL + row + (h >> 29);
        return h;
    }

private:
    static constexpr std::uint64_t bit(Point i) { return std::uint64_t{1} << i; }

    std::uint64_t row_mask() const { return n_ == 64 ? ~std::uint64_t{0} : (bit(n_) - 1); }

    void check_point(Point x) const {
        if (x >= n_) throw MalformedInput("point " + std::to_string(x) + " outside carrier of size " + std::to_string(n_));
    }

    void check_same(const BinRel& s) const {
        if (n_ != s.n_) {
            throw MalformedInput("relations over different carriers (" + std::to_string(n_) + " vs " +
                                 std::to_string(s.n_) + ")");
        }
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> rows_;
};

struct BinRelHash {
    std::size_t operator()(const BinRel& r) const noexcept { return r.hash(); }
};

}  // namespace qra
