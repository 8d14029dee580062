#pragma once

#include "qlab/phase_plane_types.hpp"
#include "qlab/step_function.hpp"

#include <map>
#include <vector>

namespace qlab {

/// Rademacher function r_i at a dyadic point, via the bit of x at weight
/// 2^{-(i+1)}: +1 when floor(2^{i+1} x) is even.
int rademacher_eval(int i, const DyadicRational& x);

/// Walsh function w_n = prod r_i^{n_i} over the binary digits of n.
int walsh_eval(unsigned long long n, const DyadicRational& x);

enum class PacketNorm { L2, LInf };

/// Wave packet of a tile P = I x |I|^{-1}[n, n+1), materialized on the grid.
/// L2 normalization multiplies the +-1 profile by |I|^{-1/2}.
StepFunction wave_packet(const Tile& P, PacketNorm norm);

/// Haar function h_I = w_{I,1}.
StepFunction haar_function(const DyadicInterval& I);

/// Exact integral of f * g for scalar g, one coordinate per component of f.
Coord inner_product(const StepFunction& f, const StepFunction& g);

/// All coefficients <f, w_{I,k}>, k < |I| * 2^resolution, for f supported in
/// I, via the fast Walsh-Hadamard butterfly. Exact.
std::vector<Coord> walsh_transform(const StepFunction& f, const DyadicInterval& I);

/// Memo for materialized L2 wave packets, shared across size/decomposition loops.
class PacketCache {
public:
    const StepFunction& l2(const Tile& t) {
        auto it = l2_.find(t);
        if (it == l2_.end()) it = l2_.emplace(t, wave_packet(t, PacketNorm::L2)).first;
        return it->second;
    }

private:
    std::map<Tile, StepFunction> l2_;
};

}  // namespace qlab
