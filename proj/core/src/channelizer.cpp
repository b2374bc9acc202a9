#include "mrcs/channelizer.hpp"

#include <cmath>
#include <numbers>

#include "mrcs/errors.hpp"

namespace mrcs {

namespace {
constexpr double kPi = std::numbers::pi;

void check_bank(const std::vector<double>& prototype, int M) {
    if (M < 1) throw ConfigError("channelizer: num_channels must be positive");
    if (prototype.empty() || prototype.size() % static_cast<size_t>(M) != 0)
        throw ShapeError("channelizer: prototype length must be a nonzero multiple of M");
}
}  // namespace

Dftfb::Dftfb(const std::vector<double>& prototype, int num_channels) : M_(num_channels) {
    check_bank(prototype, num_channels);
    const size_t L = prototype.size() / M_;
    branches_.assign(M_, std::vector<double>(L));
    for (int p = 0; p < M_; ++p)
        for (size_t q = 0; q < L; ++q)
            branches_[p][q] = prototype[q * M_ + p];
    delay_.assign(M_, std::vector<cplx>(L, cplx(0.0, 0.0)));
}

void Dftfb::reset() {
    for (auto& d : delay_) std::fill(d.begin(), d.end(), cplx(0.0, 0.0));
    n_ = 0;
}

std::vector<std::vector<cplx>> Dftfb::process(const std::vector<cplx>& x) {
    std::vector<std::vector<cplx>> out;
    const size_t L = branches_[0].size();
    for (const cplx& s : x) {
        const int p = static_cast<int>(((-n_) % M_ + M_) % M_);
        auto& d = delay_[p];
        for (size_t q = L - 1; q > 0; --q) d[q] = d[q - 1];
        d[0] = s;
        if (p == 0) {
            // Frame complete: branch FIRs, then inverse DFT across branches.
            std::vector<cplx> u(M_);
            for (int b = 0; b < M_; ++b) {
                cplx acc(0.0, 0.0);
                for (size_t q = 0; q < L; ++q) acc += branches_[b][q] * delay_[b][q];
                u[b] = acc;
            }
            std::vector<cplx> y(M_);
            for (int m = 0; m < M_; ++m) {
                cplx acc(0.0, 0.0);
                for (int b = 0; b < M_; ++b)
                    acc += u[b] * std::polar(1.0, 2.0 * kPi * m * b / M_);
                y[m] = acc;
            }
            out.push_back(std::move(y));
        }
        ++n_;
    }
    return out;
}

Dcm::Dcm(const std::vector<double>& prototype, int num_channels, int channel)
    : proto_(prototype), M_(num_channels), channel_(channel) {
    check_bank(prototype, num_channels);
    if (channel < 0 || channel >= num_channels)
        throw ConfigError("dcm: channel out of range");
    make_taps();
    delay_.assign(proto_.size(), cplx(0.0, 0.0));
}

void Dcm::make_taps() {
    taps_.resize(proto_.size());
    for (size_t j = 0; j < proto_.size(); ++j)
        taps_[j] = proto_[j] * std::polar(1.0, 2.0 * kPi * channel_ * static_cast<double>(j) / M_);
}

void Dcm::retune(int channel) {
    if (channel < 0 || channel >= M_) throw ConfigError("dcm: channel out of range");
    channel_ = channel;
    make_taps();
}

void Dcm::reset() {
    std::fill(delay_.begin(), delay_.end(), cplx(0.0, 0.0));
    n_ = 0;
}

std::vector<cplx> Dcm::process(const std::vector<cplx>& x) {
    std::vector<cplx> out;
    const size_t N = taps_.size();
    for (const cplx& s : x) {
        for (size_t j = N - 1; j > 0; --j) delay_[j] = delay_[j - 1];
        delay_[0] = s;
        if (n_ % M_ == 0) {
            cplx acc(0.0, 0.0);
            for (size_t j = 0; j < N; ++j) acc += taps_[j] * delay_[j];
            out.push_back(acc);
        }
        ++n_;
    }
    return out;
}

std::vector<std::vector<cplx>> channelize_reference(const std::vector<double>& prototype,
                                                    int num_channels,
                                                    const std::vector<cplx>& x) {
    check_bank(prototype, num_channels);
    const int M = num_channels;
    const long long frames =
        x.empty() ? 0 : static_cast<long long>((x.size() - 1) / M) + 1;
    std::vector<std::vector<cplx>> y;
    y.reserve(frames);
    for (long long k = 0; k * M < static_cast<long long>(x.size()); ++k) {
        std::vector<cplx> row(M, cplx(0.0, 0.0));
        for (int m = 0; m < M; ++m) {
            cplx acc(0.0, 0.0);
            for (size_t j = 0; j < prototype.size(); ++j) {
                const long long idx = k * M - static_cast<long long>(j);
                if (idx < 0) break;
                if (idx >= static_cast<long long>(x.size())) continue;
                acc += prototype[j] *
                       std::polar(1.0, 2.0 * kPi * m * static_cast<double>(j) / M) * x[idx];
            }
            row[m] = acc;
        }
        y.push_back(std::move(row));
    }
    return y;
}

}  // namespace mrcs
