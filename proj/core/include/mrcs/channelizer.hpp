#pragma once

#include <complex>
#include <vector>

namespace mrcs {

using cplx = std::complex<double>;

// Polyphase DFT filter bank: splits a wideband stream into M uniformly
// spaced channels, each decimated by M. Sample n of the input feeds
// polyphase branch (-n) mod M; a frame completes on every M-th sample and
// yields one output sample per channel via an (unnormalized) inverse DFT
// across the branch outputs.
class Dftfb {
public:
    // prototype.size() must be a multiple of num_channels (ShapeError).
    Dftfb(const std::vector<double>& prototype, int num_channels);

    int num_channels() const { return M_; }

    // Consumes samples and returns one row per completed frame; each row
    // holds the M channel outputs for that frame. Streaming: state carries
    // over between calls.
    std::vector<std::vector<cplx>> process(const std::vector<cplx>& x);

    void reset();

private:
    int M_;
    std::vector<std::vector<double>> branches_;  // branches_[p][q] = h[q*M + p]
    std::vector<std::vector<cplx>> delay_;       // per-branch history, newest first
    long long n_ = 0;                            // absolute input sample index
};

// Digital channelized receiver for a single channel: complex bandpass filter
// (prototype modulated to the channel center) followed by decimation by M.
// Its output matches the corresponding Dftfb channel sample for sample.
class Dcm {
public:
    Dcm(const std::vector<double>& prototype, int num_channels, int channel);

    int channel() const { return channel_; }
    int num_channels() const { return M_; }

    // Re-centers the bandpass on another channel. Input history is kept, so
    // the retune takes effect on the next emitted frame.
    void retune(int channel);

    // One output sample per completed frame (same framing as Dftfb).
    std::vector<cplx> process(const std::vector<cplx>& x);

    void reset();

private:
    void make_taps();

    std::vector<double> proto_;
    std::vector<cplx> taps_;
    std::vector<cplx> delay_;  // newest first, proto_.size() entries
    int M_;
    int channel_;
    long long n_ = 0;
};

// Direct per-definition evaluation y_m[k] = sum_j h[j] e^{i 2 pi m j / M}
// x[kM - j]. Quadratic in the frame count; reference for tests.
std::vector<std::vector<cplx>> channelize_reference(const std::vector<double>& prototype,
                                                    int num_channels,
                                                    const std::vector<cplx>& x);

}  // namespace mrcs
