#include "qlab/walsh.hpp"

#include <bit>
#include <stdexcept>

namespace qlab {

namespace {

// Bit of x >= 0 at weight 2^{-(i+1)}, i.e. floor(2^{i+1} x) mod 2.
int frac_bit(int i, const DyadicRational& x) {
    const BigInt& n = x.numerator();
    int shift = x.scale() - (i + 1);
    BigInt fl = shift >= 0 ? BigInt(n >> shift) : BigInt(n << (-shift));
    return static_cast<int>(fl & 1);
}

}  // namespace

int rademacher_eval(int i, const DyadicRational& x) {
    if (x.sign() < 0) throw std::domain_error("rademacher_eval: x < 0");
    return frac_bit(i, x) ? -1 : 1;
}

int walsh_eval(unsigned long long n, const DyadicRational& x) {
    if (x.sign() < 0) throw std::domain_error("walsh_eval: x < 0");
    int parity = 0;
    for (int i = 0; n >> i; ++i)
        if ((n >> i) & 1) parity ^= frac_bit(i, x);
    return parity ? -1 : 1;
}

StepFunction wave_packet(const Tile& P, PacketNorm norm) {
    long long n = P.freq;
    if (n < 0) throw std::domain_error("wave_packet: negative frequency index");
    int j = P.time.log_len;
    int bits = std::bit_width(static_cast<unsigned long long>(n));
    // w_n(./|I|) is constant on subcells of length |I| / 2^bits.
    int res = std::max(0, bits - j);
    int K = std::max(0, P.time.log_len +
                            64 - std::countl_zero(static_cast<unsigned long long>(P.time.pos)));
    StepFunction out(res, K, 1);
    ExactScalar amp = norm == PacketNorm::L2 ? ExactScalar::sqrt_pow2(-j) : ExactScalar(1);
    long long first = P.time.pos << (res + j);
    long long count = 1LL << (res + j);
    for (long long k = 0; k < count; ++k) {
        // x / |I| at the cell's left endpoint.
        DyadicRational t(BigInt(first + k), res + j);
        int s = walsh_eval(static_cast<unsigned long long>(n), t);
        out.set_cell(first + k, {s > 0 ? amp : -amp});
    }
    return out;
}

StepFunction haar_function(const DyadicInterval& I) {
    return wave_packet(Tile{I, 1}, PacketNorm::L2);
}

Coord inner_product(const StepFunction& f, const StepFunction& g) {
    if (g.dim() != 1) throw std::invalid_argument("inner_product: g must be scalar");
    int r = std::max(f.resolution(), g.resolution());
    StepFunction a = f.refined(r), b = g.refined(r);
    Coord sum(f.dim());
    ExactScalar h(DyadicRational::pow2(-r));
    for (const auto& [i, v] : a.cells()) {
        auto it = b.cells().find(i);
        if (it == b.cells().end()) continue;
        ExactScalar w = it->second[0] * h;
        for (int d = 0; d < f.dim(); ++d) sum[d] += v[d] * w;
    }
    return sum;
}

std::vector<Coord> walsh_transform(const StepFunction& f, const DyadicInterval& I) {
    int res = f.resolution();
    int B = res + I.log_len;
    if (B < 0) throw std::invalid_argument("walsh_transform: interval below resolution");
    for (const auto& [i, v] : f.cells())
        if (!I.contains(f.cell_interval(i)))
            throw std::invalid_argument("walsh_transform: f not supported in I");
    long long M = 1LL << B;
    long long first = I.pos << B;
    // Load cell values with bit-reversed offsets, then run the standard
    // +-1 butterfly; coefficient k then equals <f, w_{I,k}>.
    std::vector<Coord> buf(M, Coord(f.dim()));
    for (long long i = 0; i < M; ++i) {
        long long r = 0;
        for (int b = 0; b < B; ++b) r |= ((i >> b) & 1) << (B - 1 - b);
        buf[i] = f.value_at_cell(first + r);
    }
    for (long long h = 1; h < M; h <<= 1)
        for (long long i = 0; i < M; i += h << 1)
            for (long long k = i; k < i + h; ++k)
                for (int d = 0; d < f.dim(); ++d) {
                    ExactScalar x = buf[k][d], y = buf[k + h][d];
                    buf[k][d] = x + y;
                    buf[k + h][d] = x - y;
                }
    ExactScalar scale = ExactScalar(DyadicRational::pow2(-res)) * ExactScalar::sqrt_pow2(-I.log_len);
    for (auto& c : buf)
        for (auto& v : c) v *= scale;
    return buf;
}

}  // namespace qlab
