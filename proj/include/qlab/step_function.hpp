#pragma once

#include "qlab/dyadic.hpp"

#include <map>
#include <string>
#include <vector>

namespace qlab {

using Coord = std::vector<ExactScalar>;

/// Finite step function on [0, 2^K) with vector values over ExactScalar,
/// constant on cells of length 2^-resolution. Only nonzero cells are stored.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(int resolution, int support_bound, int dim, std::string space_tag = "")
        : res_(resolution), support_(support_bound), dim_(dim), space_(std::move(space_tag)) {
        if (res_ < -support_) throw std::invalid_argument("StepFunction: resolution below ambient scale");
    }

    int resolution() const { return res_; }
    int support_bound() const { return support_; }
    int dim() const { return dim_; }
    const std::string& space_tag() const { return space_; }
    void set_space_tag(std::string t) { space_ = std::move(t); }

    long long cell_count() const { return 1LL << (support_ + res_); }
    DyadicInterval cell_interval(long long i) const { return {i, -res_}; }

    const std::map<long long, Coord>& cells() const { return cells_; }

    void set_cell(long long i, Coord v) {
        if (i < 0 || i >= cell_count()) throw std::out_of_range("StepFunction::set_cell");
        bool zero = true;
        for (const auto& c : v) if (!c.is_zero()) { zero = false; break; }
        if (zero) cells_.erase(i); else cells_[i] = std::move(v);
    }

    Coord value_at_cell(long long i) const {
        auto it = cells_.find(i);
        return it != cells_.end() ? it->second : Coord(dim_);
    }

    /// Value at the cell containing the dyadic point x (half-open cells).
    Coord value_at(const DyadicRational& x) const {
        DyadicRational idx = x.scaled(res_);
        BigInt n = idx.numerator();
        int s = idx.scale();
        long long i = s <= 0 ? static_cast<long long>(n << (-s)) : static_cast<long long>(n >> s);
        if (i < 0 || i >= cell_count()) return Coord(dim_);
        return value_at_cell(i);
    }

    bool is_zero() const { return cells_.empty(); }

    StepFunction refined(int new_res) const {
        if (new_res < res_) throw std::invalid_argument("refined: coarser than current resolution");
        if (new_res == res_) return *this;
        StepFunction out(new_res, support_, dim_, space_);
        int shift = new_res - res_;
        for (const auto& [i, v] : cells_)
            for (long long k = 0; k < (1LL << shift); ++k)
                out.cells_[(i << shift) | k] = v;
        return out;
    }

    StepFunction with_support_bound(int new_K) const {
        if (new_K < support_) throw std::invalid_argument("with_support_bound: would truncate");
        StepFunction out(res_, new_K, dim_, space_);
        out.cells_ = cells_;
        return out;
    }

    StepFunction operator+(const StepFunction& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("StepFunction+: dimension mismatch");
        int r = std::max(res_, o.res_), K = std::max(support_, o.support_);
        StepFunction a = refined(r).with_support_bound(K);
        StepFunction b = o.refined(r).with_support_bound(K);
        for (const auto& [i, v] : b.cells_) {
            Coord cur = a.value_at_cell(i);
            for (int d = 0; d < dim_; ++d) cur[d] += v[d];
            a.set_cell(i, std::move(cur));
        }
        return a;
    }
    StepFunction operator-(const StepFunction& o) const { return *this + o.scaled(ExactScalar(-1)); }

    StepFunction scaled(const ExactScalar& c) const {
        StepFunction out(res_, support_, dim_, space_);
        if (c.is_zero()) return out;
        for (const auto& [i, v] : cells_) {
            Coord w(dim_);
            for (int d = 0; d < dim_; ++d) w[d] = v[d] * c;
            out.set_cell(i, std::move(w));
        }
        return out;
    }

    /// Pointwise product with a scalar-valued step function.
    StepFunction times(const StepFunction& g) const {
        if (g.dim_ != 1) throw std::invalid_argument("times: multiplier must be scalar-valued");
        int r = std::max(res_, g.res_), K = std::max(support_, g.support_);
        StepFunction a = refined(r).with_support_bound(K);
        StepFunction b = g.refined(r).with_support_bound(K);
        StepFunction out(r, K, dim_, space_);
        for (const auto& [i, v] : a.cells_) {
            auto it = b.cells_.find(i);
            if (it == b.cells_.end()) continue;
            Coord w(dim_);
            for (int d = 0; d < dim_; ++d) w[d] = v[d] * it->second[0];
            out.set_cell(i, std::move(w));
        }
        return out;
    }

    StepFunction restricted(const DyadicInterval& I) const {
        StepFunction out(res_, support_, dim_, space_);
        for (const auto& [i, v] : cells_)
            if (I.contains(cell_interval(i))) out.cells_[i] = v;
        return out;
    }

    Coord integral() const {
        Coord sum(dim_);
        ExactScalar h(DyadicRational::pow2(-res_));
        for (const auto& [i, v] : cells_)
            for (int d = 0; d < dim_; ++d) sum[d] += v[d] * h;
        return sum;
    }

    Coord integral_over(const DyadicInterval& I) const {
        Coord sum(dim_);
        if (I.log_len < -res_) {
            // Interval finer than a cell: f is constant there.
            Coord v = value_at(I.left());
            ExactScalar len(I.length());
            for (int d = 0; d < dim_; ++d) sum[d] = v[d] * len;
            return sum;
        }
        ExactScalar h(DyadicRational::pow2(-res_));
        for (const auto& [i, v] : cells_)
            if (I.contains(cell_interval(i)))
                for (int d = 0; d < dim_; ++d) sum[d] += v[d] * h;
        return sum;
    }

    /// <f>_I, exact.
    Coord average(const DyadicInterval& I) const {
        Coord sum = integral_over(I);
        ExactScalar inv(DyadicRational::pow2(-I.log_len));
        for (auto& c : sum) c *= inv;
        return sum;
    }

    bool operator==(const StepFunction& o) const {
        if (dim_ != o.dim_) return false;
        int r = std::max(res_, o.res_);
        return refined(r).cells_ == o.refined(r).cells_;
    }

private:
    int res_ = 0;
    int support_ = 0;
    int dim_ = 1;
    std::string space_;
    std::map<long long, Coord> cells_;
};

}  // namespace qlab
