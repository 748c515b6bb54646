#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace tasaki {

enum class ChannelKind { two_site, dephasing };

// Rank-1 jump operator, matrix = col * row.transpose().
// two_site: col = e_j + e^{i alpha} e_{j+l}, row = e_j - e^{i alpha} e_{j+l}
// (site indices 1-based). dephasing: col = row = e_j, the site projector.
struct JumpChannel {
    Eigen::MatrixXcd matrix;
    double rate = 1.0;
    ChannelKind kind = ChannelKind::two_site;
    int j = 1;
    int l = 0;           // two_site only
    double alpha = 0.0;  // two_site only

    // rank-1 factors; O^dag O = col_norm2 * conj(row) * row.transpose()
    Eigen::VectorXcd col, row;
    double col_norm2 = 0.0;
};

struct JumpSet {
    std::vector<JumpChannel> channels;
    int N = 0;
    int pair_count = 0;  // number of two_site channels (N_t)
};

// throws std::invalid_argument for even j, j < 1, l < 1, or j + l > N
JumpChannel build_jump(int j, int l, double alpha, int N, double rate = 1.0);

// one channel per odd j with j + l <= N, uniform rate; empty enumeration rejected
JumpSet build_jump_set(int N, int l, double alpha, double rate);

// N dephasing channels (site projectors) with uniform rate
JumpSet build_dephasing_set(int N, double rate);

// concatenate channel lists (dimensions must match)
JumpSet merge(const JumpSet& a, const JumpSet& b);

}  // namespace tasaki
