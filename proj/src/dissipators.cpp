#include "tasaki/dissipators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tasaki {

JumpChannel build_jump(int j, int l, double alpha, int N, double rate) {
    if (j < 1 || j % 2 == 0)
        throw std::invalid_argument("build_jump: site index j must be odd and >= 1");
    if (l < 1) throw std::invalid_argument("build_jump: range l must be >= 1");
    if (j + l > N)
        throw std::invalid_argument("build_jump: pair (" + std::to_string(j) + ", " +
                                    std::to_string(j + l) + ") exceeds N=" + std::to_string(N));
    if (rate <= 0.0) throw std::invalid_argument("build_jump: rate must be positive");

    const std::complex<double> phase = std::polar(1.0, alpha);
    JumpChannel ch;
    ch.rate = rate;
    ch.kind = ChannelKind::two_site;
    ch.j = j;
    ch.l = l;
    ch.alpha = alpha;
    ch.col = Eigen::VectorXcd::Zero(N);
    ch.row = Eigen::VectorXcd::Zero(N);
    ch.col(j - 1) = 1.0;
    ch.col(j + l - 1) = phase;
    ch.row(j - 1) = 1.0;
    ch.row(j + l - 1) = -phase;
    ch.col_norm2 = 2.0;
    ch.matrix = ch.col * ch.row.transpose();
    return ch;
}

JumpSet build_jump_set(int N, int l, double alpha, double rate) {
    JumpSet set;
    set.N = N;
    for (int j = 1; j + l <= N; j += 2) set.channels.push_back(build_jump(j, l, alpha, N, rate));
    if (set.channels.empty())
        throw std::invalid_argument("build_jump_set: no admissible pair for l=" + std::to_string(l) +
                                    ", N=" + std::to_string(N));
    set.pair_count = static_cast<int>(set.channels.size());
    return set;
}

JumpSet build_dephasing_set(int N, double rate) {
    if (N < 1) throw std::invalid_argument("build_dephasing_set: N must be >= 1");
    if (rate <= 0.0) throw std::invalid_argument("build_dephasing_set: rate must be positive");

    JumpSet set;
    set.N = N;
    set.pair_count = 0;
    for (int j = 1; j <= N; ++j) {
        JumpChannel ch;
        ch.rate = rate;
        ch.kind = ChannelKind::dephasing;
        ch.j = j;
        ch.col = Eigen::VectorXcd::Zero(N);
        ch.col(j - 1) = 1.0;
        ch.row = ch.col;
        ch.col_norm2 = 1.0;
        ch.matrix = ch.col * ch.row.transpose();
        set.channels.push_back(std::move(ch));
    }
    return set;
}

JumpSet merge(const JumpSet& a, const JumpSet& b) {
    if (a.N != b.N) throw std::invalid_argument("merge: dimension mismatch");
    JumpSet set = a;
    set.channels.insert(set.channels.end(), b.channels.begin(), b.channels.end());
    set.pair_count = a.pair_count + b.pair_count;
    return set;
}

}  // namespace tasaki
